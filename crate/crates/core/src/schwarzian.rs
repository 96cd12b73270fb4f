//! The Schwarzian differential equation `F'' + Q(t) F = 0` of a Hauptmodul
//! `t` on a genus-zero Shimura curve, its accessory parameters, and
//! Frobenius expansions of its solutions at elliptic points.
//!
//! `Q(t) = Σ ¼(1 − 1/e_j²)/(t − a_j)² + Σ B_j/(t − a_j)`, summed over the
//! elliptic points with finite value `a_j`. A point sitting at `t = ∞` only
//! enters through the linear relations the `B_j` must satisfy.

use std::fmt;

use num_traits::{One, Zero};

use crate::exactalg::rational::{rat, DisplayRational};
use crate::exactalg::{BigRational, ExactError, PuiseuxSeries, RationalFunction, UniPoly};

/// Variable tag used for the Hauptmodul.
pub const HAUPTMODUL_VAR: char = 't';

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchwarzianError {
    #[error("elliptic point value {0} appears more than once")]
    DuplicatePoint(String),
    #[error("elliptic point order {0} is below 2")]
    OrderTooSmall(u32),
    #[error("more than one elliptic point at infinity")]
    MultipleInfinitePoints,
    #[error("finite elliptic point {0} has no accessory parameter")]
    MissingAccessory(String),
    #[error("the elliptic point at infinity cannot carry an accessory parameter")]
    AccessoryAtInfinity,
    #[error("Q has a pole of order {found} at {point}, expected 2")]
    PoleOrderMismatch { point: String, found: i64 },
    #[error("double-pole coefficient of Q at {point} is {found}, expected {expected}")]
    DoublePoleMismatch { point: String, expected: String, found: String },
    #[error("Q has poles outside the listed elliptic points")]
    UnexpectedPole,
    #[error("{0} is not a finite elliptic point of the curve")]
    NotElliptic(String),
    #[error("{branch} is not a local exponent at a point of order {order}")]
    NotAnExponent { branch: String, order: u32 },
    #[error("Frobenius recurrence is resonant at n = {0}")]
    Resonance(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Where an elliptic point sits on the `t`-line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointValue {
    Finite(BigRational),
    Infinity,
}

impl PointValue {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            PointValue::Finite(a) => Some(a),
            PointValue::Infinity => None,
        }
    }
}

impl fmt::Display for PointValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointValue::Finite(a) => write!(f, "{}", DisplayRational(a)),
            PointValue::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticPoint {
    pub value: PointValue,
    pub order: u32,
    /// `B_j`; present exactly when the point is finite.
    pub accessory: Option<BigRational>,
    /// CM discriminant of the point, kept for documentation.
    pub disc: Option<i64>,
}

impl EllipticPoint {
    pub fn finite(a: BigRational, order: u32, accessory: BigRational) -> Self {
        EllipticPoint { value: PointValue::Finite(a), order, accessory: Some(accessory), disc: None }
    }

    pub fn infinite(order: u32) -> Self {
        EllipticPoint { value: PointValue::Infinity, order, accessory: None, disc: None }
    }

    pub fn with_disc(mut self, disc: i64) -> Self {
        self.disc = Some(disc);
        self
    }

    /// `¼(1 − 1/e²)`, the double-pole coefficient of `Q` at this point.
    pub fn local_weight(&self) -> BigRational {
        local_weight(self.order)
    }
}

/// `¼(1 − 1/e²)`.
pub fn local_weight(e: u32) -> BigRational {
    let e2 = BigRational::from_integer((u64::from(e) * u64::from(e)).into());
    (BigRational::one() - e2.recip()) / BigRational::from_integer(4.into())
}

/// A genus-zero curve described by its elliptic points on the `t`-line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveData {
    pub name: String,
    points: Vec<EllipticPoint>,
    /// Discriminant of the quaternion algebra, when declared.
    pub discriminant: Option<u64>,
}

impl CurveData {
    /// Checks the structural invariants: orders at least 2, distinct values,
    /// at most one point at infinity, accessory parameters exactly on finite points.
    pub fn new(name: impl Into<String>, points: Vec<EllipticPoint>) -> Result<Self, SchwarzianError> {
        let mut infinite = 0;
        for (i, p) in points.iter().enumerate() {
            if p.order < 2 {
                return Err(SchwarzianError::OrderTooSmall(p.order));
            }
            match (&p.value, &p.accessory) {
                (PointValue::Infinity, Some(_)) => return Err(SchwarzianError::AccessoryAtInfinity),
                (PointValue::Infinity, None) => infinite += 1,
                (PointValue::Finite(a), None) => {
                    return Err(SchwarzianError::MissingAccessory(DisplayRational(a).to_string()))
                }
                (PointValue::Finite(_), Some(_)) => {}
            }
            if p.value != PointValue::Infinity && points[..i].iter().any(|q| q.value == p.value) {
                return Err(SchwarzianError::DuplicatePoint(p.value.to_string()));
            }
        }
        if infinite > 1 {
            return Err(SchwarzianError::MultipleInfinitePoints);
        }
        Ok(CurveData { name: name.into(), points, discriminant: None })
    }

    pub fn with_discriminant(mut self, d: u64) -> Self {
        self.discriminant = Some(d);
        self
    }

    pub fn points(&self) -> &[EllipticPoint] {
        &self.points
    }

    pub fn finite_points(&self) -> impl Iterator<Item = (&BigRational, &EllipticPoint)> {
        self.points.iter().filter_map(|p| p.value.finite().map(|a| (a, p)))
    }

    pub fn infinite_point(&self) -> Option<&EllipticPoint> {
        self.points.iter().find(|p| p.value == PointValue::Infinity)
    }

    pub fn point_at(&self, a: &BigRational) -> Option<&EllipticPoint> {
        self.points.iter().find(|p| p.value.finite() == Some(a))
    }
}

/// One linear relation among the accessory parameters with its exact residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessoryRelation {
    pub description: &'static str,
    pub residual: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessoryReport {
    pub relations: Vec<AccessoryRelation>,
}

impl AccessoryReport {
    pub fn is_valid(&self) -> bool {
        self.relations.iter().all(|r| r.residual.is_zero())
    }
}

impl fmt::Display for AccessoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: residual {}", r.description, DisplayRational(&r.residual))?;
        }
        Ok(())
    }
}

/// Evaluates the linear relations the accessory parameters must satisfy.
///
/// With every point finite there are three relations; with one point at
/// infinity there are two, and the infinite point's local weight appears
/// on the right-hand side.
pub fn validate_accessory(curve: &CurveData) -> AccessoryReport {
    let zero = BigRational::zero;
    let (mut s0, mut s1, mut s2) = (zero(), zero(), zero());
    for (a, p) in curve.finite_points() {
        let b = p.accessory.clone().unwrap_or_else(zero);
        let w = p.local_weight();
        s0 += &b;
        s1 += a * &b + &w;
        s2 += a * a * &b + a * &w * BigRational::from_integer(2.into());
    }
    let relations = match curve.infinite_point() {
        None => vec![
            AccessoryRelation { description: "sum B_j = 0", residual: s0 },
            AccessoryRelation { description: "sum (a_j B_j + w_j) = 0", residual: s1 },
            AccessoryRelation { description: "sum (a_j^2 B_j + 2 a_j w_j) = 0", residual: s2 },
        ],
        Some(inf) => vec![
            AccessoryRelation { description: "sum B_j = 0", residual: s0 },
            AccessoryRelation {
                description: "sum (a_j B_j + w_j) = w_inf",
                residual: s1 - inf.local_weight(),
            },
        ],
    };
    AccessoryReport { relations }
}

/// Partial-fraction data of `Q` at one finite elliptic point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFraction {
    pub point: BigRational,
    pub double_pole: BigRational,
    pub simple_pole: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchwarzianOde {
    q: RationalFunction,
    partial_fractions: Vec<PartialFraction>,
    curve: CurveData,
}

impl SchwarzianOde {
    pub fn q(&self) -> &RationalFunction {
        &self.q
    }

    pub fn partial_fractions(&self) -> &[PartialFraction] {
        &self.partial_fractions
    }

    pub fn curve(&self) -> &CurveData {
        &self.curve
    }
}

/// Assembles `Q(t)` from the curve data.
///
/// The accessory relations are not enforced here; run [`validate_accessory`]
/// first when the curve is meant to be a Shimura curve.
pub fn build_q(curve: &CurveData) -> Result<SchwarzianOde, SchwarzianError> {
    let curve = CurveData::new(curve.name.clone(), curve.points.clone())?;
    let t = HAUPTMODUL_VAR;
    let mut q = RationalFunction::zero(t);
    let mut partial_fractions = Vec::new();
    for (a, p) in curve.finite_points() {
        let lin = UniPoly::linear_root(a, t);
        let w = p.local_weight();
        let b = p.accessory.clone().expect("checked by CurveData::new");
        let double = RationalFunction::new(UniPoly::constant(w.clone(), t), lin.pow(2))?;
        let simple = RationalFunction::new(UniPoly::constant(b.clone(), t), lin)?;
        q = &(&q + &double) + &simple;
        partial_fractions.push(PartialFraction { point: a.clone(), double_pole: w, simple_pole: b });
    }
    let curve = CurveData { discriminant: curve.discriminant, ..curve };
    Ok(SchwarzianOde { q, partial_fractions, curve })
}

/// Recovers the simple-pole coefficients `B_j` of `Q` at the finite points,
/// checking that each pole is exactly double with coefficient `¼(1 − 1/e_j²)`
/// and that `Q` has no other poles.
pub fn extract_accessory(
    q: &RationalFunction,
    points: &[EllipticPoint],
) -> Result<Vec<BigRational>, SchwarzianError> {
    let t = q.var();
    let mut expected_den = UniPoly::one(t);
    let mut out = Vec::new();
    for p in points {
        let Some(a) = p.value.finite() else { continue };
        let name = DisplayRational(a).to_string();
        let s = laurent_expand(q, a, 2)?;
        if s.is_zero() || s.offset() != &BigRational::from_integer((-2).into()) {
            let found = if s.is_zero() { 0 } else { -(s.offset().to_integer().try_into().unwrap_or(0i64)) };
            return Err(SchwarzianError::PoleOrderMismatch { point: name, found });
        }
        let w = p.local_weight();
        if s.coeffs()[0] != w {
            return Err(SchwarzianError::DoublePoleMismatch {
                point: name,
                expected: DisplayRational(&w).to_string(),
                found: DisplayRational(&s.coeffs()[0]).to_string(),
            });
        }
        out.push(s.coeffs()[1].clone());
        expected_den = &expected_den * &UniPoly::linear_root(a, t).pow(2);
    }
    if q.denominator().monic() != expected_den {
        return Err(SchwarzianError::UnexpectedPole);
    }
    Ok(out)
}

/// Local exponents `((1 − 1/e)/2, (1 + 1/e)/2)` at an elliptic point of
/// order `e`: the roots of `ρ(ρ − 1) + ¼(1 − 1/e²) = 0`, ascending.
pub fn indicial_exponents(e: u32) -> Result<(BigRational, BigRational), SchwarzianError> {
    if e < 2 {
        return Err(SchwarzianError::OrderTooSmall(e));
    }
    let inv = rat(1, i64::from(e));
    let half = rat(1, 2);
    let one = BigRational::one();
    Ok(((&one - &inv) * &half, (&one + &inv) * &half))
}

/// Laurent expansion of `f` in `s = t − center` through `s^{offset + order}`.
///
/// The offset is the valuation of `f` at `center` (negative at a pole).
pub fn laurent_expand(
    f: &RationalFunction,
    center: &BigRational,
    order: usize,
) -> Result<PuiseuxSeries, SchwarzianError> {
    let var = if center.is_zero() {
        f.var().to_string()
    } else {
        format!("({} - {})", f.var(), DisplayRational(center))
    };
    if f.is_zero() {
        return Ok(PuiseuxSeries::zero(order, var));
    }
    let num = f.numerator().taylor_shift(center);
    let den = f.denominator().taylor_shift(center);
    let valuation = |p: &UniPoly| p.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero");
    let (vn, vd) = (valuation(&num), valuation(&den));
    let window = |p: &UniPoly, v: usize| -> Vec<BigRational> {
        (0..=order).map(|k| p.coeff(v + k)).collect()
    };
    let n = PuiseuxSeries::new(BigRational::zero(), window(&num, vn), var.clone());
    let d = PuiseuxSeries::new(BigRational::zero(), window(&den, vd), var);
    let offset = BigRational::from_integer((vn as i64 - vd as i64).into());
    let s = n.mul(&d.recip()?);
    Ok(PuiseuxSeries::new(offset, s.coeffs().to_vec(), s.var().to_string()))
}

/// Frobenius solution `s^ρ (1 + c_1 s + … + c_N s^N)` of `F'' + Q F = 0`
/// at a finite elliptic point, `s = t − a`.
///
/// With `q_m` the Laurent coefficients of `Q` at the point,
/// `c_n [(n + ρ)(n + ρ − 1) + q_{−2}] = −Σ_{i=1..n} q_{i−2} c_{n−i}`.
pub fn frobenius_series(
    ode: &SchwarzianOde,
    point: &BigRational,
    branch: &BigRational,
    order: usize,
) -> Result<PuiseuxSeries, SchwarzianError> {
    let name = DisplayRational(point).to_string();
    let p = ode.curve.point_at(point).ok_or_else(|| SchwarzianError::NotElliptic(name.clone()))?;
    let (r1, r2) = indicial_exponents(p.order)?;
    if branch != &r1 && branch != &r2 {
        return Err(SchwarzianError::NotAnExponent {
            branch: DisplayRational(branch).to_string(),
            order: p.order,
        });
    }
    let q = laurent_expand(&ode.q, point, order)?;
    if q.offset() != &BigRational::from_integer((-2).into()) {
        let found = -(q.offset().to_integer().try_into().unwrap_or(0i64));
        return Err(SchwarzianError::PoleOrderMismatch { point: name, found });
    }
    let qc = q.coeffs();
    let mut c = vec![BigRational::one()];
    for n in 1..=order {
        let nr = BigRational::from_integer(n.into()) + branch;
        let multiplier = &nr * (&nr - BigRational::one()) + &qc[0];
        if multiplier.is_zero() {
            return Err(SchwarzianError::Resonance(n));
        }
        let mut acc = BigRational::zero();
        for i in 1..=n {
            acc += &qc[i] * &c[n - i];
        }
        c.push(-acc / multiplier);
    }
    Ok(PuiseuxSeries::new(branch.clone(), c, q.var().to_string()))
}

/// `F'' + Q F` expanded at `point`, for checking a computed solution.
pub fn ode_residual(
    ode: &SchwarzianOde,
    point: &BigRational,
    solution: &PuiseuxSeries,
) -> Result<PuiseuxSeries, SchwarzianError> {
    let q = laurent_expand(&ode.q, point, solution.order())?;
    let second = solution.derivative().derivative();
    Ok(second.add(&q.mul(solution))?)
}
