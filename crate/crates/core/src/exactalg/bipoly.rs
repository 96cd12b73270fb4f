//! Sparse bivariate polynomials over ℚ.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, gcd_all, BigRational, DisplayRational};
use super::unipoly::UniPoly;

/// A polynomial `Σ c_ij u^i v^j` in two tagged variables `(u, v)`.
///
/// Terms are keyed by the exponent pair `(i, j)`; zero coefficients are
/// never stored. Equality ignores the variable tags.
#[derive(Clone, Debug)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), BigRational>,
    vars: (char, char),
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BiPoly {}

/// Graded-lex order on exponent pairs: total degree first, then the first
/// variable's exponent.
pub fn graded_lex(a: &(usize, usize), b: &(usize, usize)) -> Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

impl BiPoly {
    pub fn zero(vars: (char, char)) -> Self {
        BiPoly { terms: BTreeMap::new(), vars }
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = ((usize, usize), BigRational)>,
        vars: (char, char),
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_int_terms(terms: &[((usize, usize), i64)], vars: (char, char)) -> Self {
        Self::from_terms(
            terms.iter().map(|&(e, c)| (e, BigRational::from_integer(c.into()))),
            vars,
        )
    }

    /// `Σ_i coeffs[i](v) · u^i`.
    pub fn from_coeffs_in_first(coeffs: &[UniPoly], vars: (char, char)) -> Self {
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                p.add_term((i, j), a.clone());
            }
        }
        p
    }

    /// `Σ_j coeffs[j](u) · v^j`.
    pub fn from_coeffs_in_second(coeffs: &[UniPoly], vars: (char, char)) -> Self {
        let mut p = Self::zero(vars);
        for (j, c) in coeffs.iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                p.add_term((i, j), a.clone());
            }
        }
        p
    }

    /// Embeds a polynomial in the first variable.
    pub fn from_first(f: &UniPoly, vars: (char, char)) -> Self {
        Self::from_coeffs_in_second(std::slice::from_ref(f), vars)
    }

    /// Embeds a polynomial in the second variable.
    pub fn from_second(f: &UniPoly, vars: (char, char)) -> Self {
        Self::from_coeffs_in_first(std::slice::from_ref(f), vars)
    }

    pub fn add_term(&mut self, e: (usize, usize), c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> (char, char) {
        self.vars
    }

    pub fn with_vars(mut self, vars: (char, char)) -> Self {
        self.vars = vars;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in the first variable.
    pub fn degree_first(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.0).max()
    }

    /// Degree in the second variable.
    pub fn degree_second(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.1).max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    /// Leading term under [`graded_lex`].
    pub fn leading_term(&self) -> Option<((usize, usize), &BigRational)> {
        self.terms
            .iter()
            .max_by(|a, b| graded_lex(a.0, b.0))
            .map(|(e, c)| (*e, c))
    }

    /// Coefficients of `u^i` as polynomials in `v`, for `i = 0..=deg_u`.
    pub fn coeffs_in_first(&self) -> Vec<UniPoly> {
        let n = self.degree_first().map_or(0, |d| d + 1);
        let mut rows: Vec<Vec<BigRational>> = vec![Vec::new(); n];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[i];
            if row.len() <= j {
                row.resize(j + 1, BigRational::zero());
            }
            row[j] = c.clone();
        }
        rows.into_iter().map(|r| UniPoly::new(r, self.vars.1)).collect()
    }

    /// Coefficients of `v^j` as polynomials in `u`, for `j = 0..=deg_v`.
    pub fn coeffs_in_second(&self) -> Vec<UniPoly> {
        self.swap().coeffs_in_first().into_iter().map(|p| p.with_var(self.vars.0)).collect()
    }

    /// Exchanges the roles of the two variables.
    pub fn swap(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
            vars: (self.vars.1, self.vars.0),
        }
    }

    /// Substitutes `v = value`, leaving a polynomial in `u`.
    pub fn eval_second(&self, value: &BigRational) -> UniPoly {
        let n = self.degree_first().map_or(0, |d| d + 1);
        let mut out = vec![BigRational::zero(); n];
        let mut powers: Vec<BigRational> = vec![BigRational::one()];
        for (&(i, j), c) in &self.terms {
            while powers.len() <= j {
                let next = powers.last().expect("nonempty") * value;
                powers.push(next);
            }
            out[i] += c * &powers[j];
        }
        UniPoly::new(out, self.vars.0)
    }

    /// Substitutes `u = value`, leaving a polynomial in `v`.
    pub fn eval_first(&self, value: &BigRational) -> UniPoly {
        self.swap().eval_second(value)
    }

    pub fn eval(&self, u: &BigRational, v: &BigRational) -> BigRational {
        self.eval_second(v).eval(u)
    }

    /// `P(u, u)` as a polynomial in `u`.
    pub fn diagonal(&self) -> UniPoly {
        let n = self.total_degree().map_or(0, |d| d + 1);
        let mut out = vec![BigRational::zero(); n];
        for (&(i, j), c) in &self.terms {
            out[i + j] += c;
        }
        UniPoly::new(out, self.vars.0)
    }

    /// `P(u, v + shift)`.
    pub fn shift_second(&self, shift: &BigRational) -> Self {
        let coeffs: Vec<UniPoly> = self
            .coeffs_in_first()
            .iter()
            .map(|c| c.taylor_shift(shift))
            .collect();
        Self::from_coeffs_in_first(&coeffs, self.vars)
    }

    pub fn derivative_first(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * BigRational::from_integer(i.into()))),
            self.vars,
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        BiPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
            vars: self.vars,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int_terms(&[((0, 0), 1)], self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in ℚ[u, v].
    ///
    /// Long division in `u` over ℚ[v]; every leading-coefficient division
    /// must be exact in ℚ[v].
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let dd = d.degree_first()?;
        if self.is_zero() {
            return Some(Self::zero(self.vars));
        }
        if self.degree_first()? < dd || self.degree_second()? < d.degree_second()? {
            return None;
        }
        let dcoeffs = d.coeffs_in_first();
        let lc = &dcoeffs[dd];
        let mut r = self.coeffs_in_first();
        let mut q = vec![UniPoly::zero(self.vars.1); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let c = top.div_exact(lc)?;
            for (j, dj) in dcoeffs.iter().enumerate() {
                if !dj.is_zero() {
                    r[k + j] = &r[k + j] - &(&c * dj);
                }
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs_in_first(&q, self.vars))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Splits `self = c · p` with `p` integral, primitive over ℤ and with a
    /// positive graded-lex leading coefficient.
    pub fn primitive_part(&self) -> (BigRational, BiPoly) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let den = common_denominator(self.terms.values());
        let scaled: BTreeMap<(usize, usize), BigInt> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, (c * BigRational::from_integer(den.clone())).to_integer()))
            .collect();
        let mut g = gcd_all(scaled.values());
        let lead = scaled
            .iter()
            .max_by(|a, b| graded_lex(a.0, b.0))
            .expect("nonzero");
        if lead.1.is_negative() {
            g = -g;
        }
        let p = BiPoly {
            terms: scaled
                .into_iter()
                .map(|(e, n)| (e, BigRational::from_integer(n / &g)))
                .collect(),
            vars: self.vars,
        };
        (BigRational::new(g, den), p)
    }

    /// Integer content of an integral polynomial (sign follows the graded-lex
    /// leading coefficient).
    pub fn integer_content(&self) -> BigRational {
        self.primitive_part().0
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero(self.vars);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-BigRational::one())
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

/// Grouped by powers of the first variable, highest first:
/// `(2*x^2 + 1)*z^2 + (-x)*z + 3`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rows = self.coeffs_in_first();
        let mut first = true;
        for (i, c) in rows.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let single = c.coeffs().iter().filter(|a| !a.is_zero()).count() == 1;
            match (i, single) {
                (0, _) => write!(f, "{c}")?,
                (_, true) if c.is_constant() => {
                    write!(f, "{}*", DisplayRational(&c.coeff(0)))?;
                }
                (_, true) => write!(f, "{c}*")?,
                (_, false) => write!(f, "({c})*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "{}", self.vars.0)?,
                _ => write!(f, "{}^{}", self.vars.0, i)?,
            }
        }
        Ok(())
    }
}
