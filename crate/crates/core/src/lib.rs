//! Exact computation of modular equations for genus-zero Shimura curves.
//!
//! The pipeline starts from the Schwarzian differential equation of a
//! Hauptmodul and tables of Hecke operators on the associated spaces of
//! automorphic forms, and ends with the modular polynomial `Φ_p(x, y)`:
//!
//! 1. [`heckeforms`] turns `T_{p0}` tables and eigenvalue maps into `T_p`
//!    tables and power sums `Σ (F_j/F)^m` as rational functions of the Hauptmodul.
//! 2. [`symmetric`] converts power sums into `Ψ(z, x) = ∏ (z − F_j/F)`.
//! 3. [`eliminate`] takes the resultant of `Ψ` and its reversal in `z`,
//!    factors it over ℚ and selects the factor whose diagonal splits into
//!    rational singular moduli.
//!
//! [`schwarzian`] covers the differential equation itself: building `Q(t)`,
//! checking accessory parameters and Frobenius expansions at elliptic points.
//! Everything is exact; there is no floating point anywhere.

pub mod eliminate;
pub mod exactalg;
pub mod heckeforms;
pub mod schwarzian;
pub mod symmetric;
