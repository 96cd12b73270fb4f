//! Spaces of automorphic forms on a genus-zero curve, Hecke tables and the
//! power sums `Σ_j (F_j/F)^m` they determine.
//!
//! A basis of weight-`k` forms is `f_{k,j} = t'^{k/2} t^{j−1} ∏ (t − a_i)^{−m_i(k)}`,
//! `j = 1..d_k`, with `m_i(k) = ⌊k(1 − 1/e_i)/2⌋` over the finite elliptic
//! points. Hecke matrices act on the column `(f_{k,1}, …, f_{k,d_k})ᵀ`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactalg::rational::DisplayRational;
use crate::exactalg::{BigRational, ExactError, RatMatrix, RationalFunction, UniPoly};
use crate::schwarzian::{CurveData, HAUPTMODUL_VAR};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error("weight {0} is not an even integer >= 4")]
    BadWeight(u32),
    #[error("weight {weight}: matrix side {found} does not match dimension {expected}")]
    DimensionMismatch { weight: u32, expected: i64, found: usize },
    #[error("weight {weight}: eigenvalue map has degree {degree}, dimension is {dimension}")]
    MapDegreeTooLarge { weight: u32, degree: usize, dimension: i64 },
    #[error("no weight {0} in the table")]
    MissingWeight(u32),
    #[error("weight {weight}: the Hecke matrix has repeated eigenvalues")]
    RepeatedEigenvalues { weight: u32 },
    #[error(
        "F^{power} at point {point}: floor({weight_m}(1-1/{order})/2) - {power}*floor({weight}(1-1/{order})/2) = {delta} is negative"
    )]
    NegativeDelta { point: String, order: u32, weight: u32, weight_m: u32, power: u32, delta: i64 },
    #[error("F^{power} needs {needed} basis elements of weight {weight_m}, dimension is {dimension}")]
    EmbeddingOverflow { power: u32, weight_m: u32, needed: usize, dimension: i64 },
    #[error("no weight up to {0} has positive dimension")]
    NoSeedWeight(u32),
    #[error("tables are for prime {found}, expected {expected}")]
    PrimeMismatch { expected: u64, found: u64 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Matrices of one Hecke operator, indexed by weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeTable {
    prime: u64,
    matrices: BTreeMap<u32, RatMatrix>,
}

impl HeckeTable {
    pub fn new(prime: u64) -> Self {
        HeckeTable { prime, matrices: BTreeMap::new() }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Replaces any matrix already stored at weight `k`.
    pub fn insert(&mut self, k: u32, m: RatMatrix) {
        self.matrices.insert(k, m);
    }

    pub fn get(&self, k: u32) -> Result<&RatMatrix, HeckeError> {
        self.matrices.get(&k).ok_or(HeckeError::MissingWeight(k))
    }

    pub fn weights(&self) -> impl Iterator<Item = u32> + '_ {
        self.matrices.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &RatMatrix)> {
        self.matrices.iter().map(|(k, m)| (*k, m))
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Checks every matrix side against the dimension formula.
    pub fn validate(&self, curve: &CurveData) -> Result<(), HeckeError> {
        for (k, m) in self.iter() {
            let d = dimension(curve, k)?;
            if d != m.side() as i64 {
                return Err(HeckeError::DimensionMismatch { weight: k, expected: d, found: m.side() });
            }
        }
        Ok(())
    }
}

/// Polynomials `g_k` with `μ = g_k(λ)`, sending `T_{p0}`-eigenvalues to
/// `T_p`-eigenvalues weight by weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenTransferMap {
    base: u64,
    target: u64,
    maps: BTreeMap<u32, UniPoly>,
}

impl EigenTransferMap {
    pub fn new(base: u64, target: u64) -> Self {
        EigenTransferMap { base, target, maps: BTreeMap::new() }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn insert(&mut self, k: u32, g: UniPoly) {
        self.maps.insert(k, g);
    }

    pub fn get(&self, k: u32) -> Result<&UniPoly, HeckeError> {
        self.maps.get(&k).ok_or(HeckeError::MissingWeight(k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &UniPoly)> {
        self.maps.iter().map(|(k, g)| (*k, g))
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Checks `deg g_k < d_k` at every weight.
    pub fn validate(&self, curve: &CurveData) -> Result<(), HeckeError> {
        for (k, g) in self.iter() {
            let d = dimension(curve, k)?;
            let degree = g.degree().unwrap_or(0);
            if degree as i64 >= d.max(1) {
                return Err(HeckeError::MapDegreeTooLarge { weight: k, degree, dimension: d });
            }
        }
        Ok(())
    }
}

/// Denominator exponents of the weight-`k` basis and its dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisExponents {
    pub weight: u32,
    /// `(a_i, m_i(k))` for each finite elliptic point, in curve order.
    pub exponents: Vec<(BigRational, u32)>,
    pub dimension: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSums {
    pub prime: u64,
    pub seed_weight: u32,
    /// `p_1, …, p_{p+1}`.
    pub sums: Vec<RationalFunction>,
}

fn check_weight(k: u32) -> Result<(), HeckeError> {
    if k < 4 || k % 2 != 0 {
        return Err(HeckeError::BadWeight(k));
    }
    Ok(())
}

/// `⌊(k/2)(1 − 1/e)⌋`.
fn floor_exponent(k: u32, e: u32) -> u32 {
    (k * (e - 1)) / (2 * e)
}

/// `d_k = 1 − k + Σ_j ⌊(k/2)(1 − 1/e_j)⌋`, summed over all elliptic points.
pub fn dimension(curve: &CurveData, k: u32) -> Result<i64, HeckeError> {
    check_weight(k)?;
    let s: i64 = curve.points().iter().map(|p| i64::from(floor_exponent(k, p.order))).sum();
    Ok(1 - i64::from(k) + s)
}

pub fn basis_exponents(curve: &CurveData, k: u32) -> Result<BasisExponents, HeckeError> {
    let dimension = dimension(curve, k)?;
    let exponents = curve.finite_points().map(|(a, p)| (a.clone(), floor_exponent(k, p.order))).collect();
    Ok(BasisExponents { weight: k, exponents, dimension })
}

/// Smallest even weight `k >= 4` with `d_k >= 1`.
pub fn seed_weight(curve: &CurveData) -> Result<u32, HeckeError> {
    const LIMIT: u32 = 256;
    (4..=LIMIT)
        .step_by(2)
        .find(|&k| dimension(curve, k).map(|d| d >= 1).unwrap_or(false))
        .ok_or(HeckeError::NoSeedWeight(LIMIT))
}

/// Coefficients `β` with `F^m = Σ_s β_s f_{km,s+1}` for `F = f_{k,1}`.
///
/// `Σ β_s t^s = ∏ (t − a_i)^{δ_i}` with `δ_i = m_i(km) − m·m_i(k)`.
pub fn power_embedding(curve: &CurveData, k: u32, m: u32) -> Result<Vec<BigRational>, HeckeError> {
    check_weight(k)?;
    let km = k * m;
    let dim = dimension(curve, km)?;
    let mut poly = UniPoly::one(HAUPTMODUL_VAR);
    for (a, p) in curve.finite_points() {
        let delta = i64::from(floor_exponent(km, p.order)) - i64::from(m) * i64::from(floor_exponent(k, p.order));
        if delta < 0 {
            return Err(HeckeError::NegativeDelta {
                point: DisplayRational(a).to_string(),
                order: p.order,
                weight: k,
                weight_m: km,
                power: m,
                delta,
            });
        }
        poly = &poly * &UniPoly::linear_root(a, HAUPTMODUL_VAR).pow(delta as u32);
    }
    let needed = poly.degree().unwrap_or(0) + 1;
    if needed as i64 > dim {
        return Err(HeckeError::EmbeddingOverflow { power: m, weight_m: km, needed, dimension: dim });
    }
    let mut beta = poly.into_coeffs();
    beta.resize(dim as usize, BigRational::zero());
    Ok(beta)
}

/// `B_k = g_k(A_k)`, refusing matrices with repeated eigenvalues.
pub fn hecke_transfer(a: &RatMatrix, g: &UniPoly, weight: u32) -> Result<RatMatrix, HeckeError> {
    let chi = a.charpoly('a');
    if !chi.is_squarefree() {
        return Err(HeckeError::RepeatedEigenvalues { weight });
    }
    Ok(a.eval_poly(g))
}

/// Applies [`hecke_transfer`] at every weight of the eigenvalue map.
pub fn transfer_table(a: &HeckeTable, maps: &EigenTransferMap) -> Result<HeckeTable, HeckeError> {
    if a.prime() != maps.base() {
        return Err(HeckeError::PrimeMismatch { expected: maps.base(), found: a.prime() });
    }
    let mut out = HeckeTable::new(maps.target());
    for (k, g) in maps.iter() {
        out.insert(k, hecke_transfer(a.get(k)?, g, k)?);
    }
    Ok(out)
}

/// `p_m = p^{1−km/2} (βᵀ B_{km} v)/(βᵀ v)` for `m = 1..p+1`, with
/// `v = (1, t, …, t^{d−1})`.
pub fn power_sums(curve: &CurveData, p: u64, k: u32, b: &HeckeTable) -> Result<PowerSums, HeckeError> {
    check_weight(k)?;
    if b.prime() != p {
        return Err(HeckeError::PrimeMismatch { expected: p, found: b.prime() });
    }
    let t = HAUPTMODUL_VAR;
    let prime = BigRational::from_integer(p.into());
    let mut sums = Vec::new();
    for m in 1..=(p as u32 + 1) {
        let km = k * m;
        let mat = b.get(km)?;
        let beta = power_embedding(curve, k, m)?;
        if beta.len() != mat.side() {
            return Err(HeckeError::DimensionMismatch { weight: km, expected: beta.len() as i64, found: mat.side() });
        }
        let mut row = vec![BigRational::zero(); mat.side()];
        for (s, bs) in beta.iter().enumerate() {
            if bs.is_zero() {
                continue;
            }
            for (r, entry) in mat.row(s).iter().enumerate() {
                row[r] += bs * entry;
            }
        }
        let exponent = 1 - i64::from(km / 2);
        let factor = if exponent >= 0 {
            num_traits::pow(prime.clone(), exponent as usize)
        } else {
            num_traits::pow(prime.clone(), (-exponent) as usize).recip()
        };
        let num = UniPoly::new(row, t).scale(&factor);
        let den = UniPoly::new(beta, t);
        sums.push(RationalFunction::new(num, den)?);
    }
    Ok(PowerSums { prime: p, seed_weight: k, sums })
}

impl PowerSums {
    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }
}

/// `1/p^n` as a rational, convenient for comparing with printed power sums.
pub fn inverse_prime_power(p: u64, n: u32) -> BigRational {
    num_traits::pow(BigRational::from_integer(p.into()), n as usize).recip()
}
