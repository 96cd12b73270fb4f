//! Newton's identities and the polynomial `Ψ(z, x) = ∏_j (z − F_j/F)`.

use num_traits::{One, Zero};

use crate::exactalg::rational::{common_denominator, gcd_all, to_integer};
use crate::exactalg::{BiPoly, BigRational, RationalFunction, UniPoly};

/// Variable pair of `ψ(z, x)`.
pub const PSI_VARS: (char, char) = ('z', 'x');
/// Variable pair of the reversal `ψ'(z, y)`.
pub const REVERSED_VARS: (char, char) = ('z', 'y');

/// Elementary symmetric functions `e_0 = 1, e_1, …, e_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricData {
    pub prime: u64,
    pub elementary: Vec<RationalFunction>,
}

/// `Ψ = ψ(z, x)/D(x)` with `ψ` integral and `D` integral in `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiFunction {
    pub numerator: BiPoly,
    pub denominator: UniPoly,
    pub prime: u64,
}

impl PsiFunction {
    /// `p + 1`.
    pub fn degree_z(&self) -> usize {
        self.prime as usize + 1
    }
}

fn signed(i: usize) -> BigRational {
    if i % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `m·e_m = Σ_{i=1..m} (−1)^{i−1} e_{m−i} p_i`.
pub fn newton_to_elementary(power_sums: &[RationalFunction], prime: u64) -> SymmetricData {
    let var = power_sums.first().map_or('x', RationalFunction::var);
    let mut e = vec![RationalFunction::one(var)];
    for m in 1..=power_sums.len() {
        let mut acc = RationalFunction::zero(var);
        for i in 1..=m {
            let term = &e[m - i] * &power_sums[i - 1];
            acc = &acc + &term.scale(&signed(i - 1));
        }
        e.push(acc.scale(&BigRational::from_integer(m.into()).recip()));
    }
    SymmetricData { prime, elementary: e }
}

/// Inverse of [`newton_to_elementary`]: power sums `p_1..p_n` from `e_0..e_n`.
pub fn elementary_to_newton(elementary: &[RationalFunction]) -> Vec<RationalFunction> {
    let mut p: Vec<RationalFunction> = Vec::new();
    for m in 1..elementary.len() {
        let mut acc = elementary[m].scale(&BigRational::from_integer(m.into()));
        for i in 1..m {
            let term = (&elementary[m - i] * &p[i - 1]).scale(&signed(i - 1));
            acc = &acc - &term;
        }
        p.push(acc.scale(&signed(m - 1)));
    }
    p
}

/// `Ψ(z, x) = Σ_m (−1)^m e_m(x) z^{p+1−m}`, cleared to integer coefficients.
///
/// The common denominator is the monic lcm of the `e_m` denominators times
/// the lcm of the remaining rational denominators; the integer content shared
/// by `ψ` and `D` is then removed.
pub fn build_psi(sym: &SymmetricData) -> PsiFunction {
    let x = PSI_VARS.1;
    let n = sym.elementary.len() - 1;
    let mut lcm = UniPoly::one(x);
    for e in &sym.elementary {
        lcm = lcm.lcm(&e.denominator().clone().with_var(x));
    }
    let lcm = lcm.monic();
    let mut columns: Vec<UniPoly> = Vec::with_capacity(n + 1);
    for (m, e) in sym.elementary.iter().enumerate() {
        let num = e.numerator().clone().with_var(x);
        let den = e.denominator().clone().with_var(x);
        let cofactor = lcm.div_exact(&den).expect("lcm is a multiple of each denominator");
        columns.push((&num * &cofactor).scale(&signed(m)));
    }
    let all: Vec<&BigRational> = columns.iter().flat_map(|c| c.coeffs()).chain(lcm.coeffs()).collect();
    let scale = BigRational::from_integer(common_denominator(all.iter().copied()));
    let columns: Vec<UniPoly> = columns.iter().map(|c| c.scale(&scale)).collect();
    let denominator = lcm.scale(&scale);
    let ints: Vec<_> = columns
        .iter()
        .flat_map(|c| c.coeffs())
        .chain(denominator.coeffs())
        .map(|c| to_integer(c).expect("cleared"))
        .collect();
    let g = BigRational::from_integer(gcd_all(ints.iter()));
    let g_inv = if g.is_zero() { BigRational::one() } else { g.recip() };
    // coefficient of z^{n-m} is column m
    let by_z: Vec<UniPoly> = columns.iter().rev().map(|c| c.scale(&g_inv)).collect();
    PsiFunction {
        numerator: BiPoly::from_coeffs_in_first(&by_z, PSI_VARS),
        denominator: denominator.scale(&g_inv),
        prime: sym.prime,
    }
}

/// `z^n f(1/z, ·)` with the second variable renamed.
pub fn reverse_first(f: &BiPoly, n: usize, second: char) -> BiPoly {
    let mut out = BiPoly::zero((f.vars().0, second));
    for (&(i, j), c) in f.terms() {
        assert!(i <= n, "degree in the first variable exceeds the reversal length");
        out.add_term((n - i, j), c.clone());
    }
    out
}

/// `ψ'(z, y) = z^{p+1} ψ(1/z, y)`.
pub fn reverse_psi(psi: &PsiFunction) -> BiPoly {
    reverse_first(&psi.numerator, psi.degree_z(), REVERSED_VARS.1)
}
