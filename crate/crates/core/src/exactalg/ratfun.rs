//! Univariate rational functions over ℚ in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, gcd_all, BigRational};
use super::unipoly::UniPoly;
use super::ExactError;

/// `num / den` with `gcd(num, den) = 1`, both integral, jointly primitive over ℤ,
/// and `den` with positive leading coefficient. Zero is `0 / 1`.
///
/// The normal form is unique, so structural equality is equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let var = p.var();
        Self::normalize(p, UniPoly::one(var))
    }

    pub fn constant(c: BigRational, var: char) -> Self {
        Self::from_poly(UniPoly::constant(c, var))
    }

    pub fn zero(var: char) -> Self {
        RationalFunction { num: UniPoly::zero(var), den: UniPoly::one(var) }
    }

    pub fn one(var: char) -> Self {
        Self::constant(BigRational::one(), var)
    }

    fn normalize(num: UniPoly, den: UniPoly) -> Self {
        let var = num.var();
        if num.is_zero() {
            return Self::zero(var);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let den_lcm = common_denominator(num.coeffs().iter().chain(den.coeffs()));
        let scale = BigRational::from_integer(den_lcm);
        let ints = |p: &UniPoly| -> Vec<BigInt> {
            p.coeffs().iter().map(|c| (c * &scale).to_integer()).collect()
        };
        let (ni, di) = (ints(&num), ints(&den));
        let mut g = gcd_all(ni.iter().chain(&di));
        if di.last().expect("nonzero denominator").is_negative() {
            g = -g;
        }
        let back = |v: Vec<BigInt>| -> UniPoly {
            UniPoly::from_bigints(&v.into_iter().map(|c| c / &g).collect::<Vec<_>>(), var)
        };
        RationalFunction { num: back(ni), den: back(di) }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn var(&self) -> char {
        self.num.var()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Equality through `a·d = b·c`, independent of the normal form.
    pub fn equals_by_cross_multiplication(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::normalize(self.num.scale(c), self.den.clone())
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        // Coprime inputs stay coprime under powers; only the scaling needs fixing.
        Self::normalize(self.num.pow(e), self.den.pow(e))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational, ExactError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn with_var(self, var: char) -> Self {
        RationalFunction { num: self.num.with_var(var), den: self.den.with_var(var) }
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else if self.den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
            write!(f, "({})/{}", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, 'x')
    }

    #[test]
    fn cancels_common_factor() {
        let r = RationalFunction::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r.numerator(), &p(&[1, 1]));
        assert_eq!(r.denominator(), &p(&[1]));
    }

    #[test]
    fn scales_to_jointly_primitive_integers() {
        let r = RationalFunction::new(p(&[0, 2]), p(&[4])).unwrap();
        assert_eq!(r.numerator(), &p(&[0, 1]));
        assert_eq!(r.denominator(), &p(&[2]));
        assert_eq!(r.to_string(), "(x)/2");
    }

    #[test]
    fn power_sum_shape() {
        // 7^-5 (305856 t^-1 + 36428)
        let t = 't';
        let inner = RationalFunction::new(
            UniPoly::from_ints(&[305856, 36428], t),
            UniPoly::from_ints(&[0, 1], t),
        )
        .unwrap();
        let r = inner.scale(&rat(1, 16807));
        assert_eq!(r.numerator(), &UniPoly::from_ints(&[305856, 36428], t));
        assert_eq!(r.denominator(), &UniPoly::from_ints(&[0, 16807], t));
    }

    #[test]
    fn denominator_sign_is_positive() {
        let r = RationalFunction::new(p(&[1]), p(&[3, -2])).unwrap();
        assert_eq!(r.numerator(), &p(&[-1]));
        assert_eq!(r.denominator(), &p(&[-3, 2]));
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(RationalFunction::new(p(&[1]), p(&[])), Err(ExactError::ZeroDenominator));
        let z = RationalFunction::zero('x');
        assert!(z.recip().is_err());
        assert_eq!(RationalFunction::one('x').div(&z), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn field_operations() {
        let a = RationalFunction::new(p(&[1]), p(&[0, 1])).unwrap();
        let b = RationalFunction::new(p(&[1]), p(&[1, 1])).unwrap();
        // 1/x - 1/(x+1) = 1/(x(x+1))
        let d = &a - &b;
        assert_eq!(d, RationalFunction::new(p(&[1]), p(&[0, 1, 1])).unwrap());
        assert_eq!(d.eval(&int(1)).unwrap(), rat(1, 2));
        assert_eq!(&(&a * &b) * &d.recip().unwrap(), RationalFunction::one('x'));
    }
}
