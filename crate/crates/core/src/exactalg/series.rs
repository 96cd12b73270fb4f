//! Truncated power series with a rational leading exponent.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{BigRational, DisplayRational};
use super::ExactError;

/// `s^ρ · (c_0 + c_1 s + … + c_N s^N + O(s^{N+1}))` in an expansion variable `s`.
///
/// `coeffs` always holds exactly `N + 1` entries. A nonzero series is kept
/// with `c_0 ≠ 0` by moving leading zeros into the offset; the zero series
/// has all coefficients zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxSeries {
    offset: BigRational,
    coeffs: Vec<BigRational>,
    var: String,
}

impl PuiseuxSeries {
    /// Builds `var^offset · Σ coeffs[n] var^n`, truncated after the last given coefficient.
    ///
    /// Panics if `coeffs` is empty.
    pub fn new(offset: BigRational, coeffs: Vec<BigRational>, var: impl Into<String>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        let mut s = PuiseuxSeries { offset, coeffs, var: var.into() };
        s.normalize();
        s
    }

    pub fn zero(order: usize, var: impl Into<String>) -> Self {
        PuiseuxSeries {
            offset: BigRational::zero(),
            coeffs: vec![BigRational::zero(); order + 1],
            var: var.into(),
        }
    }

    pub fn one(order: usize, var: impl Into<String>) -> Self {
        let mut s = Self::zero(order, var);
        s.coeffs[0] = BigRational::one();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None | Some(0) => {}
            Some(k) => {
                // Dropping k leading zeros moves the known range, not its end.
                self.coeffs.drain(..k);
                self.offset += BigRational::from_integer(k.into());
            }
        }
    }

    pub fn offset(&self) -> &BigRational {
        &self.offset
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Truncation order `N`: coefficients `c_0..c_N` are exact.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Absolute exponent up to which the series is known: `ρ + N`.
    pub fn precision(&self) -> BigRational {
        &self.offset + BigRational::from_integer(self.order().into())
    }

    /// Coefficient of `s^exponent`, `None` if the exponent lies beyond the
    /// truncation or is not on this series' exponent lattice.
    pub fn coeff_at(&self, exponent: &BigRational) -> Option<BigRational> {
        let rel = exponent - &self.offset;
        if !rel.is_integer() {
            return None;
        }
        if rel.is_negative() {
            return Some(BigRational::zero());
        }
        let k: usize = rel.to_integer().try_into().ok()?;
        self.coeffs.get(k).cloned()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        PuiseuxSeries {
            offset: self.offset.clone(),
            coeffs: self.coeffs[..=n].to_vec(),
            var: self.var.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order(), self.var.clone());
        }
        PuiseuxSeries {
            offset: self.offset.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            var: self.var.clone(),
        }
    }

    /// Product; offsets add and the result keeps the smaller truncation order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(&self.offset + &rhs.offset, coeffs, self.var.clone())
    }

    /// Multiplicative inverse to the same order; the offset is negated.
    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ReciprocalOfZeroSeries);
        }
        let n = self.order();
        let c0_inv = self.coeffs[0].recip();
        let mut inv = vec![BigRational::zero(); n + 1];
        inv[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &inv[k - i];
            }
            inv[k] = -acc * &c0_inv;
        }
        Ok(Self::new(-&self.offset, inv, self.var.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order(), self.var.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Sum of two series whose offsets differ by an integer. The result is
    /// known up to the smaller of the two precisions.
    pub fn add(&self, rhs: &Self) -> Result<Self, ExactError> {
        if self.is_zero() && rhs.is_zero() {
            let n = self.order().min(rhs.order());
            return Ok(Self::zero(n, self.var.clone()));
        }
        let diff = &rhs.offset - &self.offset;
        if !diff.is_integer() {
            return Err(ExactError::IncompatibleOffsets);
        }
        let offset = if diff.is_negative() { rhs.offset.clone() } else { self.offset.clone() };
        let precision = {
            let (a, b) = (self.precision(), rhs.precision());
            if a < b { a } else { b }
        };
        let span = &precision - &offset;
        if span.is_negative() {
            // Nothing is known on the common lattice beyond the truncation.
            return Ok(Self::zero(0, self.var.clone()));
        }
        let len: usize = span.to_integer().try_into().expect("small order") ;
        let mut coeffs = vec![BigRational::zero(); len + 1];
        for s in [self, rhs] {
            let shift: usize = (&s.offset - &offset).to_integer().try_into().expect("aligned");
            for (k, c) in s.coeffs.iter().enumerate() {
                if shift + k <= len {
                    coeffs[shift + k] += c;
                }
            }
        }
        Ok(Self::new(offset, coeffs, self.var.clone()))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    /// Term-by-term derivative with respect to the expansion variable.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<BigRational> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * (&self.offset + BigRational::from_integer(n.into())))
            .collect();
        let offset = &self.offset - BigRational::one();
        if coeffs.iter().all(Zero::is_zero) {
            return Self::zero(self.order(), self.var.clone());
        }
        Self::new(offset, coeffs, self.var.clone())
    }
}

/// `s^(1/3)*(1 - 10/81*s + O(s^2))`.
impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.var;
        if !self.offset.is_zero() {
            write!(f, "{s}^({})*", DisplayRational(&self.offset))?;
        }
        write!(f, "(")?;
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
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
            match n {
                0 => write!(f, "{}", DisplayRational(&mag))?,
                1 => write!(f, "{}*{s}", DisplayRational(&mag))?,
                _ => write!(f, "{}*{s}^{n}", DisplayRational(&mag))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({s}^{}))", self.order() + 1)
    }
}
