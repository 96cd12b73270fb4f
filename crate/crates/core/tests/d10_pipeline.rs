mod common;

use std::time::Instant;

use common::*;
use modeq_core::eliminate::{
    factor_bivariate, factor_bivariate_at, resultant_z, select_modular_factor, squarefree_bivariate, strip_content, symmetry,
};
use modeq_core::exactalg::rational::int;
use modeq_core::exactalg::{BiPoly, RationalFunction, UniPoly};
use modeq_core::heckeforms::{dimension, inverse_prime_power, power_sums, seed_weight, transfer_table};
use modeq_core::symmetric::{build_psi, newton_to_elementary, reverse_psi, PSI_VARS};

#[test]
fn dimensions_match_matrix_sides() {
    let curve = d10_curve();
    for (k, m) in t3().iter() {
        assert_eq!(dimension(&curve, k).unwrap(), m.side() as i64, "weight {k}");
    }
    t3().validate(&curve).unwrap();
    eigenmap().validate(&curve).unwrap();
    assert_eq!(seed_weight(&curve).unwrap(), 4);
}

#[test]
fn transfer_reproduces_printed_t7() {
    let b = transfer_table(&t3(), &eigenmap()).unwrap();
    assert_eq!(b, t7_printed());
}

#[test]
fn transfer_commutes_and_maps_eigenvalues() {
    let (a, maps) = (t3(), eigenmap());
    let b = transfer_table(&a, &maps).unwrap();
    for (k, ak) in a.iter() {
        let bk = b.get(k).unwrap();
        assert!(ak.commutes_with(bk), "weight {k}");
        // Res_λ(χ_A(λ), x − g(λ)) = ±χ_B(x)
        let chi_a = BiPoly::from_coeffs_in_first(
            &ak.charpoly('a').coeffs().iter().map(|c| UniPoly::constant(c.clone(), 'x')).collect::<Vec<_>>(),
            ('a', 'w'),
        );
        let g = maps.get(k).unwrap();
        let mut shifted = BiPoly::from_terms([((0, 1), int(1))], ('a', 'x'));
        for (i, c) in g.coeffs().iter().enumerate() {
            shifted.add_term((i, 0), -c.clone());
        }
        if g.degree().unwrap_or(0) == 0 {
            // g constant: χ_B = (x − g)^d
            let want = UniPoly::linear_root(&g.coeff(0), 'x').pow(ak.side() as u32);
            assert_eq!(bk.charpoly('x'), want);
            continue;
        }
        let res = resultant_z(&shifted, &chi_a).unwrap().eval_second(&int(0));
        let chi_b = bk.charpoly('x');
        assert!(res == chi_b || res == -&chi_b, "weight {k}");
    }
}

#[test]
fn power_sums_match_printout() {
    let transferred = transfer_table(&t3(), &eigenmap()).unwrap();
    let sums = power_sums(&d10_curve(), 7, 4, &transferred).unwrap().sums;
    let t = 't';
    // (c_0 + c_1 t + c_2 t^2) / (7^n t^s)
    let expected = |n: u32, s: usize, c: &[i64]| {
        let num = UniPoly::from_ints(c, t).scale(&inverse_prime_power(7, n));
        let mut den = vec![0; s + 1];
        den[s] = 1;
        RationalFunction::new(num, UniPoly::from_ints(&den, t)).unwrap()
    };
    let printed = [
        expected(1, 0, &[-4]),
        expected(3, 0, &[104]),
        expected(5, 1, &[305856, 36428]),
        expected(7, 1, &[14618880, -1613416]),
        expected(9, 1, &[136909440, 33553436]),
        expected(11, 2, &[27509870592, 52096359168, 934073672]),
        expected(13, 2, &[15396166471680, -2162558865600, -111965170324]),
        expected(15, 2, &[18304356630528, 78355740427776, 4460404162424]),
    ];
    assert_eq!(sums.len(), 8);
    for (m, (got, want)) in sums.iter().zip(printed.iter()).enumerate() {
        assert_eq!(got, want, "power sum {}", m + 1);
    }
}

fn printed_psi() -> BiPoly {
    let rows: [(usize, &[i64]); 9] = [
        (8, &[0, 0, 678223072849]),
        (7, &[0, 0, 387556041628]),
        (6, &[0, 0, 7909306972]),
        (5, &[0, -4114130940864, -527663765132]),
        (4, &[0, -5360751039168, 46199115214]),
        (3, &[0, -2228082208128, 72916497220]),
        (2, &[10905601867776, -75419213184, 90698975500]),
        (1, &[9093300682752, 2516798571840, -72866748500]),
        (0, &[10905601867776, -487484222400, 13624725625]),
    ];
    let mut out = BiPoly::zero(PSI_VARS);
    for (zi, c) in rows {
        for (xi, v) in c.iter().enumerate() {
            out.add_term((zi, xi), int(*v));
        }
    }
    out
}

#[test]
fn psi_matches_printout() {
    let sums = power_sums(&d10_curve(), 7, 4, &t7_printed()).unwrap().sums;
    let psi = build_psi(&newton_to_elementary(&sums, 7));
    assert_eq!(psi.numerator, printed_psi());
    assert_eq!(psi.denominator, UniPoly::from_ints(&[0, 0, 678223072849], 'x'));
    assert_eq!(num_traits::pow(num_bigint::BigInt::from(7), 14), 678223072849u64.into());
}

#[test]
fn end_to_end_phi7() {
    let start = Instant::now();
    let sums = power_sums(&d10_curve(), 7, 4, &t7_printed()).unwrap().sums;
    let psi = build_psi(&newton_to_elementary(&sums, 7));
    let res = resultant_z(&psi.numerator, &reverse_psi(&psi)).unwrap();
    eprintln!("resultant: {:?}", start.elapsed());
    let split = strip_content(&res);
    assert_eq!((split.core.degree_first(), split.core.degree_second()), (Some(16), Some(16)));
    let sq = squarefree_bivariate(&split.core);
    assert_eq!(sq.len(), 1);
    let factors = factor_bivariate(&sq[0].0).unwrap();
    eprintln!("factored: {:?}", start.elapsed());
    assert_eq!(factors.factors.len(), 2);
    let chosen = select_modular_factor(&factors, 7, "X0(10)/W10", None).unwrap();
    let phi = phi_fixture(D10_PHI7);
    assert!(chosen.modular.phi == phi || chosen.modular.phi == -&phi);
    assert_eq!(chosen.candidates.iter().filter(|c| c.linear_split).count(), 1);
    // a second, independent specialization must not split either factor
    for (h, _) in &factors.factors {
        let y1 = (2..).map(int).find(|y| factor_bivariate_at(h, y).is_ok()).unwrap();
        assert_eq!(factor_bivariate_at(h, &y1).unwrap().factors.len(), 1);
    }
    eprintln!("symmetry: {:?}", symmetry(&phi));
}
