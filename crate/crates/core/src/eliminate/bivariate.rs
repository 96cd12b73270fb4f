//! Factorization of bivariate polynomials over ℚ by specialization of the
//! second variable, Hensel lifting in `ℚ[x][[y]]` and subset recombination.
//!
//! The first variable of a [`BiPoly`] plays the role of `x` throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::intpoly::{self, IntPoly};
use super::modp::{odd_primes, Field, ModPoly};
use super::univariate::{factor_univariate, is_squarefree};
use super::{EliminateError, FactorList};
use crate::exactalg::{BiPoly, BigRational, UniPoly};

/// Specialization candidates `0, 1, −1, 2, −2, …` tried in order.
pub const MAX_SPECIALIZATIONS: usize = 100;
/// How many good specializations are compared before picking the one with
/// fewest univariate factors.
const SPECIALIZATIONS_TO_COMPARE: usize = 3;

pub fn specialization_candidates() -> impl Iterator<Item = BigRational> {
    (0..MAX_SPECIALIZATIONS as i64).map(|i| {
        let v = (i + 1) / 2;
        BigRational::from_integer(if i % 2 == 1 { v } else { -v }.into())
    })
}

/// Leading coefficient in the first variable, as a polynomial in the second.
pub fn lc_first(f: &BiPoly) -> UniPoly {
    f.coeffs_in_first().pop().unwrap_or_else(|| UniPoly::zero(f.vars().1))
}

/// Content in ℚ[v] of `f` viewed in `(ℚ[v])[u]`, made monic.
pub fn content_in_first(f: &BiPoly) -> UniPoly {
    f.coeffs_in_first()
        .iter()
        .fold(UniPoly::zero(f.vars().1), |g, c| g.gcd(c))
}

/// `f` divided by its ℚ[v]-content, then made primitive over ℤ.
pub fn primitive_in_first(f: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in_first(f);
    let coeffs: Vec<UniPoly> = f
        .coeffs_in_first()
        .iter()
        .map(|a| a.div_exact(&c).expect("content divides"))
        .collect();
    BiPoly::from_coeffs_in_first(&coeffs, f.vars()).primitive_part().1
}

/// `lc(b)^{deg a − deg b + 1} · a mod b` in `(ℚ[v])[u]`.
fn pseudo_remainder(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r: Vec<UniPoly> = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let top = r[k].clone();
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (j, bj) in b.iter().enumerate() {
            let idx = k - db + j;
            r[idx] = &r[idx] - &(&top * bj);
        }
        while r.last().is_some_and(UniPoly::is_zero) {
            r.pop();
        }
    }
    r
}

/// Gcd in ℚ[u, v] by the primitive pseudo-remainder sequence, normalized
/// to be primitive over ℤ with positive graded-lex leading coefficient.
pub fn gcd_bivariate(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let vars = a.vars();
    if a.is_zero() {
        return b.primitive_part().1;
    }
    if b.is_zero() {
        return a.primitive_part().1;
    }
    let ca = content_in_first(a);
    let cb = content_in_first(b);
    let c = ca.gcd(&cb);
    let (mut p, mut q) = (primitive_in_first(a), primitive_in_first(b));
    if p.degree_first() < q.degree_first() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = pseudo_remainder(&p.coeffs_in_first(), &q.coeffs_in_first());
        p = q;
        q = primitive_in_first(&BiPoly::from_coeffs_in_first(&r, vars));
    }
    (&p * &BiPoly::from_second(&c, vars)).primitive_part().1
}

fn is_squarefree_at(f: &BiPoly, y0: &BigRational) -> bool {
    let lc = lc_first(f);
    !lc.eval(y0).is_zero() && is_squarefree(&f.eval_second(y0))
}

/// Squarefree decomposition of a polynomial with no factor free of the
/// first variable: primitive factors `a_i` with `f = c · ∏ a_i^i`.
pub fn squarefree_bivariate(f: &BiPoly) -> Vec<(BiPoly, usize)> {
    if f.degree_first().unwrap_or(0) == 0 {
        return vec![(f.primitive_part().1, 1)];
    }
    if specialization_candidates().any(|y0| is_squarefree_at(f, &y0)) {
        return vec![(f.primitive_part().1, 1)];
    }
    // Yun over ℚ(v)[u]; every divisor is primitive so divisions are exact in ℚ[u, v].
    let mut out = Vec::new();
    let df = f.derivative_first();
    let a0 = gcd_bivariate(f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut d = &df.div_exact(&a0).expect("gcd divides") - &b.derivative_first();
    let mut i = 1;
    while b.degree_first().unwrap_or(0) > 0 {
        let a = gcd_bivariate(&b, &d);
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative_first();
        if a.degree_first().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Truncated series in `v` over `(ℤ/M)[u]`: entry `k` is the coefficient of
/// `v^k`, each reduced into `[0, M)`.
type Series = Vec<IntPoly>;

fn series_mul(a: &Series, b: &Series, prec: usize, m: &BigInt) -> Series {
    let mut out: Series = vec![Vec::new(); prec];
    for (i, ai) in a.iter().enumerate().take(prec) {
        if ai.is_empty() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(prec - i) {
            if !bj.is_empty() {
                out[i + j] = intpoly::add(&out[i + j], &intpoly::mul(ai, bj));
            }
        }
    }
    out.iter().map(|c| intpoly::reduce(c, m)).collect()
}

/// `a mod u` in `(ℤ/M)[u]` for monic `u`.
fn rem_monic(a: &IntPoly, u: &IntPoly, m: &BigInt) -> IntPoly {
    let du = u.len() - 1;
    let mut r = a.clone();
    while r.len() > du {
        let k = r.len() - 1;
        let top = r[k].clone();
        if !top.is_zero() {
            for (j, uj) in u.iter().enumerate() {
                r[k - du + j] -= &top * uj;
            }
        }
        r.pop();
    }
    let mut r = intpoly::reduce(&r, m);
    intpoly::trim(&mut r);
    r
}

fn rational_mod(c: &BigRational, m: &BigInt) -> BigInt {
    let inv = c.denom().modinv(m).expect("denominator is a unit");
    (c.numer() * inv).mod_floor(m)
}

fn uni_mod(f: &UniPoly, m: &BigInt) -> IntPoly {
    let mut out: IntPoly = f.coeffs().iter().map(|c| rational_mod(c, m)).collect();
    intpoly::trim(&mut out);
    out
}

fn norm2_ceil(coeffs: impl Iterator<Item = BigInt>) -> BigInt {
    let sq: BigInt = coeffs.map(|c| &c * &c).sum();
    sq.sqrt() + 1
}

/// Bound on the coefficients of `lc_u(h)·k` for any factor `k` of `g` and
/// any factor `h` of `g` divisible by `k`: the Mahler measure of
/// `lc_u(g)·g` bounds both, and binomial coefficients do the rest.
fn factor_coefficient_bound(g: &BiPoly) -> BigInt {
    let lc = lc_first(g);
    let dx = g.degree_first().unwrap_or(0);
    let dy = g.degree_second().unwrap_or(0);
    let ng = norm2_ceil(g.terms().map(|(_, c)| c.to_integer()));
    let nl = norm2_ceil(lc.coeffs().iter().map(BigRational::to_integer));
    (ng * nl) << (dx + 2 * dy)
}

/// The modulus used for lifting: a prime `q` and `M = q^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftModulus {
    pub q: u64,
    pub modulus: BigInt,
}

fn to_field(p: &IntPoly) -> ModPoly {
    p.iter().map(|c| u64::try_from(c).expect("reduced below q")).collect()
}

/// `s_i` with `Σ s_i ∏_{j≠i} u_j = 1` over `𝔽_q`, or `None` when the
/// factors are not pairwise coprime modulo `q`.
fn bezout_mod_q(fld: &Field, us: &[ModPoly]) -> Option<Vec<ModPoly>> {
    let total = us.iter().fold(vec![1u64], |acc, u| fld.mul(&acc, u));
    us.iter()
        .map(|u| {
            let cofactor = fld.divrem(&total, u).0;
            let (g, s, _) = fld.ext_gcd(&cofactor, u);
            (g == vec![1]).then_some(s)
        })
        .collect()
}

/// Newton iteration lifting the Bezout coefficients from `𝔽_q` to `ℤ/M`:
/// with error `e = 1 − Σ s_i U/u_i`, the update `s_i ← s_i(1 + e) mod u_i`
/// squares the error.
fn lift_bezout(us: &[IntPoly], base: Vec<ModPoly>, q: &BigInt, m: &BigInt) -> Vec<IntPoly> {
    let total = us.iter().fold(vec![BigInt::one()], |acc, u| intpoly::reduce(&intpoly::mul(&acc, u), m));
    let cofactors: Vec<IntPoly> = us
        .iter()
        .map(|u| {
            let mut others = vec![BigInt::one()];
            for v in us.iter().filter(|v| !std::ptr::eq(*v, u)) {
                others = intpoly::reduce(&intpoly::mul(&others, v), m);
            }
            others
        })
        .collect();
    let mut ss: Vec<IntPoly> = base.iter().map(|s| s.iter().map(|&c| BigInt::from(c)).collect()).collect();
    let mut precision = q.clone();
    while &precision < m {
        let sum = ss
            .iter()
            .zip(&cofactors)
            .fold(Vec::new(), |acc, (s, c)| intpoly::add(&acc, &intpoly::mul(s, c)));
        let mut e = intpoly::reduce(&intpoly::sub(&vec![BigInt::one()], &rem_monic(&sum, &total, m)), m);
        intpoly::trim(&mut e);
        if e.is_empty() {
            break;
        }
        let one_plus_e = intpoly::add(&vec![BigInt::one()], &e);
        ss = ss.iter().zip(us).map(|(s, u)| rem_monic(&intpoly::mul(s, &one_plus_e), u, m)).collect();
        precision = &precision * &precision;
    }
    ss
}

/// Lifts the coprime factorization `g(u, 0) = lc · ∏ factors` to monic
/// factors of `g / lc_u(g)` in `(ℤ/M)[u][[v]]` modulo `v^prec`.
///
/// `g` must have integer coefficients and `factors` must be primitive
/// integer polynomials whose product is `g(u, 0)` up to a constant.
pub fn hensel_lift_modular(g: &BiPoly, factors: &[UniPoly], prec: usize) -> (LiftModulus, Vec<Series>) {
    let monic: Vec<UniPoly> = factors.iter().map(UniPoly::monic).collect();
    let lc = lc_first(g);
    let lc0 = lc.coeff(0).to_integer();
    let denominators: Vec<BigInt> =
        monic.iter().flat_map(|p| p.coeffs().iter().map(|c| c.denom().clone())).collect();
    let (q, bezout_q) = odd_primes()
        .filter(|&q| {
            let q = BigInt::from(q);
            !(&lc0 % &q).is_zero() && denominators.iter().all(|d| !(d % &q).is_zero())
        })
        .find_map(|q| {
            let fld = Field::new(q);
            let qb = BigInt::from(q);
            let us: Vec<ModPoly> = monic.iter().map(|u| to_field(&uni_mod(u, &qb))).collect();
            bezout_mod_q(&fld, &us).map(|b| (q, b))
        })
        .expect("finitely many primes are excluded");
    let qb = BigInt::from(q);
    let needed = factor_coefficient_bound(g) * 2;
    let mut m = qb.clone();
    while m <= needed {
        m *= &qb;
    }
    let us: Vec<IntPoly> = monic.iter().map(|u| uni_mod(u, &m)).collect();
    let ss = lift_bezout(&us, bezout_q, &qb, &m);
    let inv_lc: Vec<BigInt> = {
        let c: Vec<BigInt> = (0..prec).map(|k| rational_mod(&lc.coeff(k), &m)).collect();
        let inv0 = c[0].modinv(&m).expect("unit");
        let mut out = vec![BigInt::zero(); prec];
        out[0] = inv0.clone();
        for k in 1..prec {
            let acc: BigInt = (1..=k).map(|i| &c[i] * &out[k - i]).sum();
            out[k] = (-acc * &inv0).mod_floor(&m);
        }
        out
    };
    let by_v: Vec<IntPoly> = g.coeffs_in_second().iter().map(|c| uni_mod(c, &m)).collect();
    let target: Series = (0..prec)
        .map(|k| {
            let acc = (0..=k).fold(Vec::new(), |acc, j| match by_v.get(j) {
                Some(c) if !inv_lc[k - j].is_zero() => intpoly::add(&acc, &intpoly::scale(c, &inv_lc[k - j])),
                _ => acc,
            });
            intpoly::reduce(&acc, &m)
        })
        .collect();
    let r = us.len();
    let mut lifted: Vec<Series> = us
        .iter()
        .map(|u| {
            let mut s: Series = vec![Vec::new(); prec];
            s[0] = u.clone();
            s
        })
        .collect();
    // partial[j][k]: coefficient of v^k in lifted[0]·…·lifted[j]
    let mut partial: Vec<Series> = vec![vec![Vec::new(); prec]; r];
    let mut acc: IntPoly = vec![BigInt::one()];
    for j in 0..r {
        acc = intpoly::reduce(&intpoly::mul(&acc, &us[j]), &m);
        partial[j][0] = acc.clone();
    }
    let update = |partial: &mut Vec<Series>, lifted: &Vec<Series>, k: usize| {
        partial[0][k] = lifted[0][k].clone();
        for j in 1..r {
            let mut c: IntPoly = Vec::new();
            for a in 0..=k {
                let (p, l) = (&partial[j - 1][a], &lifted[j][k - a]);
                if !p.is_empty() && !l.is_empty() {
                    c = intpoly::add(&c, &intpoly::mul(p, l));
                }
            }
            let mut c = intpoly::reduce(&c, &m);
            intpoly::trim(&mut c);
            partial[j][k] = c;
        }
    };
    for k in 1..prec {
        update(&mut partial, &lifted, k);
        let mut err = intpoly::reduce(&intpoly::sub(&target[k], &partial[r - 1][k]), &m);
        intpoly::trim(&mut err);
        if err.is_empty() {
            continue;
        }
        for i in 0..r {
            lifted[i][k] = rem_monic(&intpoly::mul(&ss[i], &err), &us[i], &m);
        }
        update(&mut partial, &lifted, k);
    }
    (LiftModulus { q, modulus: m }, lifted)
}

fn series_to_bipoly(s: &Series, m: &BigInt, vars: (char, char)) -> BiPoly {
    let coeffs: Vec<UniPoly> = s.iter().map(|c| intpoly::to_uni(&intpoly::symmetric(c, m), vars.0)).collect();
    BiPoly::from_coeffs_in_second(&coeffs, vars)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
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
    rec(0, n, k, &mut cur, &mut out);
    out
}

type Term = ((usize, usize), BigRational);

/// Canonical ordering key for bivariate factors.
pub fn bi_sort_key(f: &BiPoly) -> (usize, usize, Vec<Term>) {
    let mut terms: Vec<Term> = f.terms().map(|(e, c)| (*e, c.clone())).collect();
    terms.sort_by(|a, b| crate::exactalg::bipoly::graded_lex(&b.0, &a.0));
    (f.degree_first().unwrap_or(0), f.degree_second().unwrap_or(0), terms)
}

fn finish(f: &BiPoly, mut factors: Vec<BiPoly>) -> FactorList<BiPoly> {
    factors.sort_by_key(bi_sort_key);
    let product = factors.iter().fold(BiPoly::from_int_terms(&[((0, 0), 1)], f.vars()), |acc, g| &acc * g);
    let (lead, c) = f.leading_term().expect("nonzero");
    let content = c / product.coeff(lead.0, lead.1);
    FactorList { content, factors: factors.into_iter().map(|g| (g, 1)).collect() }
}

/// Factors a squarefree primitive `f` using the specialization `v = y0`,
/// which must preserve the degree in `u` and leave a squarefree image.
pub fn factor_bivariate_at(f: &BiPoly, y0: &BigRational) -> Result<FactorList<BiPoly>, EliminateError> {
    if !is_squarefree_at(f, y0) {
        return Err(EliminateError::BadSpecialization(crate::exactalg::format_rational(y0)));
    }
    let image = factor_univariate(&f.eval_second(y0));
    Ok(lift_and_recombine(f, y0, &image))
}

fn lift_and_recombine(f: &BiPoly, y0: &BigRational, image: &FactorList<UniPoly>) -> FactorList<BiPoly> {
    let vars = f.vars();
    if image.factors.len() <= 1 {
        return finish(f, vec![f.primitive_part().1]);
    }
    let g = f.shift_second(y0).primitive_part().1;
    let prec = g.degree_second().unwrap_or(0) + 1;
    let factors: Vec<UniPoly> = image.factors.iter().map(|(u, _)| u.clone()).collect();
    let (lm, mut remaining) = hensel_lift_modular(&g, &factors, prec);
    let m = &lm.modulus;
    let mut current = g.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let lc = lc_first(&current);
        let lc_series: Series = (0..prec)
            .map(|k| {
                let c = lc.coeff(k).to_integer().mod_floor(m);
                if c.is_zero() {
                    Vec::new()
                } else {
                    vec![c]
                }
            })
            .collect();
        for subset in subsets(remaining.len(), size) {
            let prod = subset
                .iter()
                .fold(lc_series.clone(), |acc, &i| series_mul(&acc, &remaining[i], prec, m));
            let cand = primitive_in_first(&series_to_bipoly(&prod, m, vars));
            if cand.degree_first().unwrap_or(0) == 0 {
                continue;
            }
            if let Some(q) = current.div_exact(&cand) {
                found.push(cand);
                current = q.primitive_part().1;
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
    found.push(current.primitive_part().1);
    let minus = -y0.clone();
    let factors = found.iter().map(|h| h.shift_second(&minus).primitive_part().1).collect();
    finish(f, factors)
}

/// Irreducible factorization of a primitive squarefree polynomial over ℚ.
///
/// The specialization is chosen among the candidates `0, ±1, ±2, …` that
/// keep the degree in the first variable and give a squarefree image;
/// among the first few such, the one with fewest univariate factors wins.
pub fn factor_bivariate(f: &BiPoly) -> Result<FactorList<BiPoly>, EliminateError> {
    let vars = f.vars();
    if f.is_zero() {
        return Ok(FactorList { content: BigRational::zero(), factors: Vec::new() });
    }
    if f.degree_first() == Some(0) {
        let fl = factor_univariate(&f.coeffs_in_first()[0]);
        let factors = fl.factors.into_iter().map(|(g, m)| (BiPoly::from_second(&g, vars), m)).collect();
        return Ok(FactorList { content: fl.content, factors });
    }
    if f.degree_second() == Some(0) {
        let fl = factor_univariate(&f.coeffs_in_second()[0]);
        let factors = fl.factors.into_iter().map(|(g, m)| (BiPoly::from_first(&g, vars), m)).collect();
        return Ok(FactorList { content: fl.content, factors });
    }
    let mut best: Option<(BigRational, FactorList<UniPoly>)> = None;
    let mut good = 0;
    let mut tried = Vec::new();
    for y0 in specialization_candidates() {
        tried.push(y0.clone());
        if !is_squarefree_at(f, &y0) {
            continue;
        }
        let image = factor_univariate(&f.eval_second(&y0));
        let count = image.factors.len();
        if best.as_ref().map_or(true, |b| count < b.1.factors.len()) {
            best = Some((y0, image));
        }
        good += 1;
        if count == 1 || good >= SPECIALIZATIONS_TO_COMPARE {
            break;
        }
    }
    let Some((y0, image)) = best else {
        return Err(EliminateError::NoSpecialization(
            tried.iter().map(crate::exactalg::format_rational).collect(),
        ));
    };
    Ok(lift_and_recombine(f, &y0, &image))
}

/// Factors an arbitrary nonzero polynomial: integer content, factors free of
/// one variable, squarefree decomposition, then [`factor_bivariate`].
pub fn factor_bivariate_full(f: &BiPoly) -> Result<FactorList<BiPoly>, EliminateError> {
    let vars = f.vars();
    if f.is_zero() {
        return Ok(FactorList { content: BigRational::zero(), factors: Vec::new() });
    }
    let split = super::strip_content(f);
    let mut factors: Vec<(BiPoly, usize)> = Vec::new();
    for (g, m) in factor_univariate(&split.first_content).factors {
        factors.push((BiPoly::from_first(&g, vars), m));
    }
    for (g, m) in factor_univariate(&split.second_content).factors {
        factors.push((BiPoly::from_second(&g, vars), m));
    }
    for (part, m) in squarefree_bivariate(&split.core) {
        for (g, _) in factor_bivariate(&part)?.factors {
            factors.push((g, m));
        }
    }
    factors.sort_by(|a, b| bi_sort_key(&a.0).cmp(&bi_sort_key(&b.0)).then(a.1.cmp(&b.1)));
    let product = factors
        .iter()
        .fold(BiPoly::from_int_terms(&[((0, 0), 1)], vars), |acc, (g, m)| &acc * &g.pow(*m as u32));
    let (lead, c) = f.leading_term().expect("nonzero");
    let content = c / product.coeff(lead.0, lead.1);
    Ok(FactorList { content, factors })
}
