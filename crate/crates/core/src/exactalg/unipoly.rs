//! Dense univariate polynomials over ℚ.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, gcd_all, BigRational, DisplayRational};
use super::ExactError;

/// Dense polynomial `c_0 + c_1 v + … + c_n v^n` over ℚ.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector. The variable tag only affects display; equality and
/// hashing look at coefficients alone.
#[derive(Clone, Debug)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
    var: char,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl Hash for UniPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>, var: char) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs, var }
    }

    pub fn zero(var: char) -> Self {
        UniPoly { coeffs: Vec::new(), var }
    }

    pub fn one(var: char) -> Self {
        Self::constant(BigRational::one(), var)
    }

    pub fn constant(c: BigRational, var: char) -> Self {
        Self::new(vec![c], var)
    }

    /// The polynomial `v`.
    pub fn var_poly(var: char) -> Self {
        Self::monomial(BigRational::one(), 1, var)
    }

    pub fn monomial(c: BigRational, degree: usize, var: char) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs, var)
    }

    /// `v - root`.
    pub fn linear_root(root: &BigRational, var: char) -> Self {
        Self::new(vec![-root.clone(), BigRational::one()], var)
    }

    pub fn from_ints(coeffs: &[i64], var: char) -> Self {
        Self::new(
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
            var,
        )
    }

    pub fn from_bigints(coeffs: &[BigInt], var: char) -> Self {
        Self::new(
            coeffs.iter().cloned().map(BigRational::from_integer).collect(),
            var,
        )
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// Coefficient of `v^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            var: self.var,
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs, var: self.var }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect();
        Self::new(coeffs, self.var)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.var);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f(v + c)`, by repeated synthetic division.
    pub fn taylor_shift(&self, c: &BigRational) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Self::new(a, self.var)
    }

    /// `f(g(v))`.
    pub fn compose(&self, g: &UniPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(g.var), |acc, c| &(&acc * g) + &Self::constant(c.clone(), g.var))
    }

    /// Reverses the coefficient list as a polynomial of formal degree `n`: `v^n f(1/v)`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::new(coeffs, self.var)
    }

    pub fn divrem(&self, b: &UniPoly) -> Result<(UniPoly, UniPoly), ExactError> {
        let db = b.degree().ok_or(ExactError::DivisionByZero)?;
        let lc_inv = b.coeffs[db].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(self.var), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &lc_inv;
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    let t = &c * bj;
                    r[k + j] -= t;
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((Self::new(q, self.var), Self::new(r, self.var)))
    }

    /// Exact quotient, or `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &UniPoly) -> Option<UniPoly> {
        match self.divrem(b) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn rem(&self, b: &UniPoly) -> Result<UniPoly, ExactError> {
        Ok(self.divrem(b)?.1)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    ///
    /// Runs the primitive pseudo-remainder sequence over ℤ, which keeps
    /// coefficient growth in check where the rational Euclidean algorithm
    /// does not.
    pub fn gcd(&self, b: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return self.monic();
        }
        let integral = |p: &UniPoly| -> Vec<BigInt> {
            p.primitive_part().1.coeffs.iter().map(|c| c.to_integer()).collect()
        };
        let (mut a, mut b) = (integral(self), integral(b));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive_ints(pseudo_rem_ints(&a, &b));
            a = b;
            b = r;
        }
        UniPoly::new(a.into_iter().map(BigRational::from_integer).collect(), self.var).monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn ext_gcd(&self, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let var = self.var;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(var), Self::zero(var));
        let (mut t0, mut t1) = (Self::zero(var), Self::one(var));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("divisor is nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Monic least common multiple.
    pub fn lcm(&self, b: &UniPoly) -> UniPoly {
        if self.is_zero() || b.is_zero() {
            return Self::zero(self.var);
        }
        let g = self.gcd(b);
        (&self.div_exact(&g).expect("gcd divides") * b).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Splits `self = c · p` with `p` integral, primitive and with positive
    /// leading coefficient. The zero polynomial gives `(0, 0)`.
    pub fn primitive_part(&self) -> (BigRational, UniPoly) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let den = common_denominator(&self.coeffs);
        let nums: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = gcd_all(&nums);
        if nums.last().expect("nonzero").is_negative() {
            g = -g;
        }
        let p = UniPoly::new(
            nums.into_iter()
                .map(|n| BigRational::from_integer(n / &g))
                .collect(),
            self.var,
        );
        (BigRational::new(g, den), p)
    }

    /// Integer coefficient vector; `None` if a coefficient is not an integer.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                self.$m(&rhs)
            }
        }
    };
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        UniPoly::new(coeffs, self.var)
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigRational::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        UniPoly::new(coeffs, self.var)
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs, self.var)
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            var: self.var,
        }
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// Writes `3*t^4 - 119*t^3 + 10368`, highest degree first.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{}", DisplayRational(&mag))?,
                (_, true) => {}
                (_, false) => write!(f, "{}*", DisplayRational(&mag))?,
            }
            match i {
                0 => {}
                1 => write!(f, "{}", self.var)?,
                _ => write!(f, "{}^{}", self.var, i)?,
            }
        }
        Ok(())
    }
}

/// `lc(b)^{deg a − deg b + 1} · a mod b` over ℤ, trimmed.
fn pseudo_rem_ints(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let k = r.len() - 1;
        let top = r[k].clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] -= &top * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn primitive_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = gcd_all(&v);
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}
