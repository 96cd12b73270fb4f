//! Small dense square matrices over ℚ.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::rational::{BigRational, DisplayRational};
use super::unipoly::UniPoly;
use super::ExactError;

/// Square matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    side: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(side: usize) -> Self {
        RatMatrix { side, entries: vec![BigRational::zero(); side * side] }
    }

    pub fn identity(side: usize) -> Self {
        let mut m = Self::zero(side);
        for i in 0..side {
            m.entries[i * side + i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, ExactError> {
        let side = rows.len();
        if rows.iter().any(|r| r.len() != side) {
            return Err(ExactError::NotSquare);
        }
        Ok(RatMatrix { side, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, ExactError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.side + j]
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.side..(i + 1) * self.side]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigRational]> {
        self.entries.chunks(self.side.max(1)).take(self.side)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatMatrix { side: self.side, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn trace(&self) -> BigRational {
        (0..self.side).map(|i| self.get(i, i).clone()).sum()
    }

    /// `f(M)` by Horner's rule.
    pub fn eval_poly(&self, f: &UniPoly) -> Self {
        let id = Self::identity(self.side);
        f.coeffs()
            .iter()
            .rev()
            .fold(Self::zero(self.side), |acc, c| &(&acc * self) + &id.scale(c))
    }

    /// Monic characteristic polynomial `det(v·I − M)` via Faddeev–LeVerrier.
    pub fn charpoly(&self, var: char) -> UniPoly {
        let n = self.side;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = Self::zero(n);
        let id = Self::identity(n);
        for k in 1..=n {
            m = &(self * &m) + &id.scale(&coeffs[n - k + 1]);
            let am = self * &m;
            coeffs[n - k] = -am.trace() / BigRational::from_integer(k.into());
        }
        UniPoly::new(coeffs, var)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self * other == other * self
    }
}

impl Mul<&RatMatrix> for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.side, rhs.side, "matrix sides differ");
        let n = self.side;
        let mut out = RatMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl Add<&RatMatrix> for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.side, rhs.side, "matrix sides differ");
        RatMatrix {
            side: self.side,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", DisplayRational(c))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    #[test]
    fn charpoly_of_2x2() {
        let a = RatMatrix::from_int_rows(&[&[468, -98], &[-1728, 136]]).unwrap();
        // x^2 - 604x + (468*136 - 98*1728)
        assert_eq!(a.charpoly('x'), UniPoly::from_ints(&[468 * 136 - 98 * 1728, -604, 1], 'x'));
    }

    #[test]
    fn cayley_hamilton_3x3() {
        let a = RatMatrix::from_int_rows(&[
            &[227772, -272244, 14406],
            &[-388800, -258192, 12250],
            &[2985984, 711936, -199556],
        ])
        .unwrap();
        assert_eq!(a.eval_poly(&a.charpoly('x')), RatMatrix::zero(3));
    }

    #[test]
    fn horner_identity_polynomial() {
        let a = RatMatrix::from_int_rows(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(a.eval_poly(&UniPoly::from_ints(&[0, 1], 'a')), a);
        assert_eq!(a.eval_poly(&UniPoly::from_ints(&[5], 'a')), RatMatrix::identity(2).scale(&int(5)));
    }

    #[test]
    fn rejects_ragged_rows() {
        let rows = vec![vec![int(1), int(2)], vec![int(3)]];
        assert_eq!(RatMatrix::from_rows(rows), Err(ExactError::NotSquare));
    }
}
