//! Factorization of univariate polynomials over ℚ.
//!
//! Squarefree parts are factored modulo a small prime, the modular factors
//! are lifted q-adically past twice the Landau–Mignotte bound, and true
//! factors are recovered by exhaustive subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intpoly::{self, IntPoly};
use super::modp::{odd_primes, Field, ModPoly};
use super::FactorList;
use crate::exactalg::{BigRational, UniPoly};

/// How many good primes are tried before the one with fewest factors is used.
const PRIMES_TO_COMPARE: usize = 5;

/// Primes tried by [`is_squarefree`] before falling back to an exact gcd.
const SQUAREFREE_PRIMES: usize = 8;

/// Squarefreeness over ℚ. A squarefree image modulo a prime not dividing
/// the leading coefficient settles the question; otherwise an exact gcd
/// with the derivative decides.
pub fn is_squarefree(f: &UniPoly) -> bool {
    if f.degree().unwrap_or(0) == 0 {
        return true;
    }
    let (_, prim) = f.primitive_part();
    let ints = intpoly::from_uni(&prim).expect("primitive part is integral");
    let lc = ints.last().expect("nonzero");
    for q in odd_primes().take(SQUAREFREE_PRIMES) {
        if (lc % BigInt::from(q)).is_zero() {
            continue;
        }
        let fld = Field::new(q);
        if fld.is_squarefree(&fld.monic(&reduce_mod(&ints, &fld))) {
            return true;
        }
    }
    f.is_squarefree()
}

/// Yun's squarefree decomposition: monic `a_i` with `f = lc · ∏ a_i^i`,
/// omitting trivial `a_i`.
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    if is_squarefree(f) {
        return vec![(f.monic(), 1)];
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn reduce_mod(f: &IntPoly, fld: &Field) -> ModPoly {
    let q = BigInt::from(fld.q);
    let mut out: ModPoly = f
        .iter()
        .map(|c| c.mod_floor(&q).try_into().expect("reduced below q"))
        .collect();
    Field::trim(&mut out);
    out
}

fn lift_mod(f: &ModPoly) -> IntPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Chooses a prime `q ∤ lc(f)` with `f mod q` squarefree, preferring the
/// fewest modular factors among the first few such primes.
fn choose_prime(f: &IntPoly) -> (Field, ModPoly) {
    let lc = f.last().expect("nonzero");
    let mut best: Option<(usize, Field, ModPoly)> = None;
    let mut good = 0;
    for q in odd_primes() {
        let fld = Field::new(q);
        if (lc % BigInt::from(q)).is_zero() {
            continue;
        }
        let fq = fld.monic(&reduce_mod(f, &fld));
        if !fld.is_squarefree(&fq) {
            continue;
        }
        let count = fld.count_factors(&fq);
        if best.as_ref().map_or(true, |b| count < b.0) {
            best = Some((count, fld, fq));
        }
        good += 1;
        if count == 1 || good >= PRIMES_TO_COMPARE {
            break;
        }
    }
    let (_, fld, fq) = best.expect("a squarefree polynomial has good primes");
    (fld, fq)
}

/// Lifts `lc^{-1} f ≡ ∏ u_i (mod q)` to `mod q^k` with monic factors.
pub fn hensel_lift(f: &IntPoly, fld: &Field, factors: &[ModPoly], k: u32) -> Vec<IntPoly> {
    let q = BigInt::from(fld.q);
    let modulus = num_traits::pow(q.clone(), k as usize);
    let lc_inv = mod_inverse(f.last().expect("nonzero"), &modulus);
    let target = intpoly::reduce(&intpoly::scale(f, &lc_inv), &modulus);
    let total = factors.iter().fold(vec![1u64], |acc, u| fld.mul(&acc, u));
    // s_i = (U/u_i)^{-1} mod u_i, so that Σ s_i U/u_i = 1.
    let bezout: Vec<ModPoly> = factors
        .iter()
        .map(|u| {
            let cofactor = fld.divrem(&total, u).0;
            let (g, s, _) = fld.ext_gcd(&cofactor, u);
            debug_assert_eq!(g, vec![1]);
            s
        })
        .collect();
    let mut lifted: Vec<IntPoly> = factors.iter().map(lift_mod).collect();
    let mut power = q.clone();
    for _ in 1..k {
        let next = &power * &q;
        let prod = lifted.iter().fold(vec![BigInt::one()], |acc, u| intpoly::reduce(&intpoly::mul(&acc, u), &next));
        let err = intpoly::reduce(&intpoly::sub(&target, &prod), &next);
        let err: IntPoly = err.iter().map(|c| c / &power).collect();
        let err = reduce_mod(&err, fld);
        if !err.is_empty() {
            for (u, (s, lift)) in factors.iter().zip(bezout.iter().zip(lifted.iter_mut())) {
                let corr = fld.rem(&fld.mul(s, &err), u);
                *lift = intpoly::add(lift, &intpoly::scale(&lift_mod(&corr), &power));
            }
        }
        power = next;
    }
    lifted
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a primitive squarefree integer polynomial of
/// positive degree, each primitive with positive leading coefficient.
pub fn factor_squarefree_primitive(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![intpoly::primitive(f)];
    }
    // Powers of the variable first; they would make f(0) useless for pruning.
    if f[0].is_zero() {
        let rest: IntPoly = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_primitive(&rest));
        return out;
    }
    let (fld, fq) = choose_prime(f);
    let modular = fld.factor_squarefree(&fq);
    if modular.len() == 1 {
        return vec![intpoly::primitive(f)];
    }
    let lc = f.last().expect("nonzero").clone();
    let bound = intpoly::mignotte_bound(f, n);
    let needed: BigInt = BigInt::from(2) * lc.abs() * &bound;
    let q = BigInt::from(fld.q);
    let mut k = 1u32;
    let mut modulus = q.clone();
    while modulus <= needed {
        modulus *= &q;
        k += 1;
    }
    let mut remaining = hensel_lift(f, &fld, &modular, k);
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let lc_cur = current.last().expect("nonzero").clone();
        let c0 = &lc_cur * &current[0];
        for subset in subsets(remaining.len(), size) {
            // Constant-term test before forming the whole product.
            let t0 = subset.iter().fold(lc_cur.clone(), |acc, &i| (acc * &remaining[i][0]).mod_floor(&modulus));
            let t0 = intpoly::symmetric(&vec![t0], &modulus);
            match t0.first() {
                Some(v) if (&c0 % v).is_zero() => {}
                _ => continue,
            }
            let cand = subset
                .iter()
                .fold(vec![lc_cur.clone()], |acc, &i| intpoly::reduce(&intpoly::mul(&acc, &remaining[i]), &modulus));
            let cand = intpoly::primitive(&intpoly::symmetric(&cand, &modulus));
            if let Some(quot) = intpoly::div_exact(&current, &cand) {
                assert!(intpoly::max_norm(&cand) <= bound, "factor exceeds the Landau-Mignotte bound");
                found.push(cand);
                current = quot;
                let mut idx = subset;
                idx.reverse();
                for i in idx {
                    remaining.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    found.push(intpoly::primitive(&current));
    found
}

/// Canonical ordering key: degree, then coefficients from the top down.
pub fn sort_key(f: &UniPoly) -> (usize, Vec<BigRational>) {
    (f.degree().unwrap_or(0), f.coeffs().iter().rev().cloned().collect())
}

/// Complete factorization over ℚ into primitive integer factors with
/// positive leading coefficients. The zero polynomial yields content 0 and
/// no factors.
pub fn factor_univariate(f: &UniPoly) -> FactorList<UniPoly> {
    let var = f.var();
    if f.is_zero() {
        return FactorList { content: BigRational::zero(), factors: Vec::new() };
    }
    let (content, prim) = f.primitive_part();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&prim) {
        let (_, part) = part.primitive_part();
        let ints = intpoly::from_uni(&part).expect("primitive part is integral");
        for g in factor_squarefree_primitive(&ints) {
            factors.push((intpoly::to_uni(&g, var), mult));
        }
    }
    factors.sort_by(|a, b| sort_key(&a.0).cmp(&sort_key(&b.0)).then(a.1.cmp(&b.1)));
    FactorList { content, factors }
}
