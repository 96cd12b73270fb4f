//! Dense integer polynomials and the few operations the factorizers need on them.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactalg::rational::to_integer;
use crate::exactalg::{BigRational, UniPoly};

/// Coefficients ascending, trimmed.
pub type IntPoly = Vec<BigInt>;

pub fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn from_uni(f: &UniPoly) -> Option<IntPoly> {
    f.coeffs().iter().map(to_integer).collect()
}

pub fn to_uni(f: &IntPoly, var: char) -> UniPoly {
    UniPoly::new(f.iter().map(|c| BigRational::from_integer(c.clone())).collect(), var)
}

pub fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.len().max(b.len());
    let mut out: IntPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

pub fn add(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.len().max(b.len());
    let mut out: IntPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

pub fn scale(a: &IntPoly, c: &BigInt) -> IntPoly {
    let mut out: IntPoly = a.iter().map(|v| v * c).collect();
    trim(&mut out);
    out
}

/// Coefficients reduced into `[0, m)`.
pub fn reduce(a: &IntPoly, m: &BigInt) -> IntPoly {
    let mut out: IntPoly = a.iter().map(|v| v.mod_floor(m)).collect();
    trim(&mut out);
    out
}

/// Coefficients reduced into `(−m/2, m/2]`.
pub fn symmetric(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m >> 1;
    let mut out: IntPoly = a
        .iter()
        .map(|v| {
            let r = v.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Exact quotient over ℤ, `None` unless `b` divides `a` with integral quotient.
pub fn div_exact(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

pub fn content(a: &IntPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &IntPoly) -> IntPoly {
    let mut g = content(a);
    if g.is_zero() {
        return a.clone();
    }
    if a.last().is_some_and(|c| c.sign() == Sign::Minus) {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

/// Euclidean norm squared.
pub fn norm2_squared(a: &IntPoly) -> BigInt {
    a.iter().map(|c| c * c).sum()
}

/// Largest absolute coefficient.
pub fn max_norm(a: &IntPoly) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// Landau–Mignotte bound `2^n ⌈‖f‖₂⌉` on the coefficients of any divisor
/// of `f` of degree at most `n`.
pub fn mignotte_bound(f: &IntPoly, n: usize) -> BigInt {
    let root = norm2_squared(f).sqrt() + 1u32;
    root << n
}
