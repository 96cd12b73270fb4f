//! Choosing the modular polynomial among the resultant's factors and
//! reading off singular moduli from its diagonal.

use num_traits::Zero;

use super::univariate::factor_univariate;
use super::{EliminateError, FactorList};
use crate::exactalg::{BiPoly, BigRational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularPolynomial {
    /// Primitive over ℤ with positive graded-lex leading coefficient.
    pub phi: BiPoly,
    pub level: u64,
    pub curve: String,
    /// Factorization of `Φ(x, x)`.
    pub evidence: FactorList<UniPoly>,
}

/// How one bivariate factor fared under the selection criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateReport {
    pub factor: BiPoly,
    pub diagonal: FactorList<UniPoly>,
    pub linear_split: bool,
    pub hints_satisfied: bool,
}

impl CandidateReport {
    pub fn passes(&self) -> bool {
        self.linear_split && self.hints_satisfied
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub modular: ModularPolynomial,
    pub candidates: Vec<CandidateReport>,
}

impl FactorList<UniPoly> {
    /// True when the polynomial is nonconstant and every factor is linear.
    pub fn is_linear_split(&self) -> bool {
        !self.content.is_zero() && !self.factors.is_empty() && self.factors.iter().all(|(f, _)| f.degree() == Some(1))
    }
}

/// Runs the diagonal test on one factor.
pub fn examine_candidate(factor: &BiPoly, cm_hints: Option<&[BigRational]>) -> CandidateReport {
    let diag = factor.diagonal();
    let diagonal = factor_univariate(&diag);
    let hints_satisfied = cm_hints.map_or(true, |hints| hints.iter().all(|h| diag.eval(h).is_zero()));
    CandidateReport {
        factor: factor.clone(),
        linear_split: diagonal.is_linear_split(),
        diagonal,
        hints_satisfied,
    }
}

/// Picks the unique factor of `y`-degree `p + 1` whose diagonal splits into
/// linear factors over ℚ and vanishes at every hinted coordinate.
pub fn select_modular_factor(
    factors: &FactorList<BiPoly>,
    p: u64,
    curve: &str,
    cm_hints: Option<&[BigRational]>,
) -> Result<Selection, EliminateError> {
    let degree = p as usize + 1;
    let candidates: Vec<CandidateReport> = factors
        .factors
        .iter()
        .filter(|(f, _)| f.degree_second() == Some(degree))
        .map(|(f, _)| examine_candidate(f, cm_hints))
        .collect();
    let passing: Vec<&CandidateReport> = candidates.iter().filter(|c| c.passes()).collect();
    match passing.len() {
        0 => Err(EliminateError::NoCandidate),
        1 => {
            let chosen = passing[0];
            let modular = ModularPolynomial {
                phi: chosen.factor.primitive_part().1,
                level: p,
                curve: curve.to_string(),
                evidence: chosen.diagonal.clone(),
            };
            Ok(Selection { modular, candidates })
        }
        n => Err(EliminateError::Ambiguous(n)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularModulus {
    pub factor: UniPoly,
    pub multiplicity: usize,
    /// `(−1)^deg · (constant term)/(leading coefficient)`.
    pub norm: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularModuliReport {
    pub content: BigRational,
    pub entries: Vec<SingularModulus>,
}

pub fn norm(f: &UniPoly) -> BigRational {
    let deg = f.degree().unwrap_or(0);
    let lc = f.leading().cloned().unwrap_or_else(BigRational::zero);
    let n = f.coeff(0) / lc;
    if deg % 2 == 1 {
        -n
    } else {
        n
    }
}

/// Irreducible factors of `Φ(x, x)` with multiplicities and norms, ordered by
/// degree and then by coefficients from the top down.
pub fn singular_moduli(phi: &BiPoly) -> SingularModuliReport {
    let fl = factor_univariate(&phi.diagonal());
    let entries = fl
        .factors
        .iter()
        .map(|(f, m)| SingularModulus { factor: f.clone(), multiplicity: *m, norm: norm(f) })
        .collect();
    SingularModuliReport { content: fl.content, entries }
}

/// Relation between `Φ(x, y)` and `Φ(y, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryRelation {
    Symmetric,
    Antisymmetric,
    Unrelated,
}

pub fn symmetry(phi: &BiPoly) -> SymmetryRelation {
    let swapped = phi.swap();
    if &swapped == phi {
        SymmetryRelation::Symmetric
    } else if swapped == -phi {
        SymmetryRelation::Antisymmetric
    } else {
        SymmetryRelation::Unrelated
    }
}
