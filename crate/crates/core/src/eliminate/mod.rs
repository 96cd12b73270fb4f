//! Elimination of `z` from `Ψ(z, x)` and its reversal, factorization of the
//! resultant over ℚ and selection of the modular polynomial.

pub mod bivariate;
pub mod intpoly;
pub mod modp;
pub mod resultant;
pub mod select;
pub mod univariate;

pub use bivariate::{factor_bivariate, factor_bivariate_at, factor_bivariate_full, squarefree_bivariate};
pub use resultant::{resultant_univariate, resultant_z};
pub use select::{
    select_modular_factor, singular_moduli, symmetry, CandidateReport, ModularPolynomial, Selection,
    SingularModuliReport, SingularModulus, SymmetryRelation,
};
pub use univariate::{factor_univariate, squarefree_decomposition};

use crate::exactalg::{BiPoly, BigRational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EliminateError {
    #[error("resultant input has degree 0 in the eliminated variable")]
    ZeroDegree,
    #[error("no valid specialization among {}", .0.join(", "))]
    NoSpecialization(Vec<String>),
    #[error("specialization at {0} drops the degree or is not squarefree")]
    BadSpecialization(String),
    #[error("no factor satisfies CM criterion")]
    NoCandidate,
    #[error("ambiguous; {0} factors satisfy the CM criterion, supply cm_hints")]
    Ambiguous(usize),
}

/// `content · ∏ f_i^{m_i}`, with each `f_i` primitive over ℤ and of positive
/// graded-lex leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList<P> {
    pub content: BigRational,
    pub factors: Vec<(P, usize)>,
}

impl FactorList<UniPoly> {
    pub fn product(&self, var: char) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.content.clone(), var), |acc, (f, m)| &acc * &f.pow(*m as u32))
    }

    pub fn degrees(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|(f, m)| (f.degree().unwrap_or(0), *m)).collect()
    }
}

impl FactorList<BiPoly> {
    pub fn product(&self, vars: (char, char)) -> BiPoly {
        self.factors.iter().fold(
            BiPoly::from_terms([((0, 0), self.content.clone())], vars),
            |acc, (f, m)| &acc * &f.pow(*m as u32),
        )
    }
}

/// `f = integer · first_content(u) · second_content(v) · core`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentSplit {
    pub integer: BigRational,
    /// Content of `f` as a polynomial in `v` over ℤ[u].
    pub first_content: UniPoly,
    /// Content of `f` as a polynomial in `u` over ℤ[v].
    pub second_content: UniPoly,
    pub core: BiPoly,
}

/// Separates the integer content and the factors depending on only one
/// variable. Both polynomial contents are primitive with positive leading
/// coefficient; the core is primitive with positive graded-lex leading
/// coefficient.
pub fn strip_content(f: &BiPoly) -> ContentSplit {
    let (u, v) = f.vars();
    let first = f.coeffs_in_second().iter().fold(UniPoly::zero(u), |g, c| g.gcd(c));
    let second = f.coeffs_in_first().iter().fold(UniPoly::zero(v), |g, c| g.gcd(c));
    let first = if first.is_zero() { UniPoly::one(u) } else { first.primitive_part().1 };
    let second = if second.is_zero() { UniPoly::one(v) } else { second.primitive_part().1 };
    let core = f
        .div_exact(&BiPoly::from_first(&first, (u, v)))
        .and_then(|g| g.div_exact(&BiPoly::from_second(&second, (u, v))))
        .expect("contents divide");
    let (integer, core) = core.primitive_part();
    ContentSplit { integer, first_content: first, second_content: second, core }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    #[test]
    fn strip_power_of_x() {
        // x^2 (x - y)
        let f = BiPoly::from_int_terms(&[((3, 0), 1), ((2, 1), -1)], ('x', 'y'));
        let s = strip_content(&f);
        assert_eq!(s.first_content, UniPoly::from_ints(&[0, 0, 1], 'x'));
        assert_eq!(s.second_content, UniPoly::one('y'));
        assert_eq!(s.core, BiPoly::from_int_terms(&[((1, 0), 1), ((0, 1), -1)], ('x', 'y')));
        assert_eq!(s.integer, int(1));
    }

    #[test]
    fn strip_integer_content() {
        let f = BiPoly::from_int_terms(&[((1, 0), 6), ((0, 1), -6)], ('x', 'y'));
        let s = strip_content(&f);
        assert_eq!(s.integer, int(6));
        let g = BiPoly::from_int_terms(&[((1, 0), -6), ((0, 1), 6)], ('x', 'y'));
        assert_eq!(strip_content(&g).integer, int(-6));
    }
}
