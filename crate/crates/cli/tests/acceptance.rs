//! Acceptance run over the D=10 and D=6 data. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use modeq_cli::config::JobConfig;
use modeq_cli::formats::{parse_curve, parse_eigenmap, parse_hecke_table, parse_phi};
use modeq_cli::jobs::{run_modeq, run_verify};
use modeq_core::eliminate::resultant::{bareiss_determinant, sylvester_matrix};
use modeq_core::eliminate::{factor_bivariate_full, factor_univariate, resultant_univariate, resultant_z};
use modeq_core::exactalg::rational::{int, rat};
use modeq_core::exactalg::{BiPoly, BigRational, RationalFunction, UniPoly};
use modeq_core::heckeforms::{dimension, hecke_transfer, power_sums, HeckeTable};
use modeq_core::schwarzian::{
    build_q, extract_accessory, frobenius_series, indicial_exponents, ode_residual, validate_accessory, CurveData,
    EllipticPoint,
};
use modeq_core::symmetric::{build_psi, elementary_to_newton, newton_to_elementary, PSI_VARS};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestError, TestRunner};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn read(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

fn d10_curve() -> CurveData {
    parse_curve(&read("d10/curve.txt")).expect("curve fixture")
}

fn table(rel: &str) -> HeckeTable {
    parse_hecke_table(&read(rel)).expect("table fixture")
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

const T: char = 't';

/// Printed Q(t) for D=10.
fn printed_q() -> RationalFunction {
    let num = UniPoly::from_ints(&[10368, -7296, 3157, -119, 3], T);
    let den = UniPoly::from_ints(&[0, 0, 46656, -50112, 15184, -928, 16], T);
    RationalFunction::new(num, den).unwrap()
}

fn criterion_1() -> Outcome {
    let ode = build_q(&d10_curve()).map_err(|e| e.to_string())?;
    let printed = [
        (rat(1, 3), [rat(-10, 81), rat(-18539, 839808), rat(-168605, 25509168), rat(-107269219465, 46548313473024)]),
        (rat(2, 3), [rat(-5, 81), rat(-99095, 5878656), rat(-8353325, 1428513408), rat(-851170821485, 385081502367744)]),
    ];
    for (rho, coeffs) in printed {
        let f = frobenius_series(&ode, &int(0), &rho, 4).map_err(|e| e.to_string())?;
        check(f.offset() == &rho, || format!("offset {} for exponent {rho}", f.offset()))?;
        check(f.coeffs()[0] == int(1) && f.coeffs()[1..] == coeffs[..], || {
            format!("exponent {rho}: got {:?}", f.coeffs())
        })?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let curve = d10_curve();
    let b = extract_accessory(&printed_q(), curve.points()).map_err(|e| e.to_string())?;
    check(b == [rat(20, 243), rat(-29, 400), rat(-953, 97200)], || format!("extracted {b:?}"))?;
    let rebuilt = CurveData::new(
        "from printed Q",
        vec![
            EllipticPoint::finite(int(0), 3, b[0].clone()),
            EllipticPoint::finite(int(2), 2, b[1].clone()),
            EllipticPoint::finite(int(27), 2, b[2].clone()),
            EllipticPoint::infinite(2),
        ],
    )
    .map_err(|e| e.to_string())?;
    let report = validate_accessory(&rebuilt);
    check(!report.relations.is_empty() && report.relations.iter().all(|r| r.residual.is_zero()), || report.to_string())?;
    let ode = build_q(&rebuilt).map_err(|e| e.to_string())?;
    check(ode.q() == &printed_q(), || format!("rebuilt Q = {}", ode.q()))?;
    for (pf, e) in ode.partial_fractions().iter().zip([3i64, 2, 2]) {
        let want = rat(1, 4) * (BigRational::one() - rat(1, e * e));
        check(pf.double_pole == want, || format!("double pole at {} is {}", pf.point, pf.double_pole))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let curve = d10_curve();
    let expected = [1, 1, 2, 2, 2, 3, 3, 3];
    for (i, k) in (4..=32).step_by(4).enumerate() {
        let d = dimension(&curve, k).map_err(|e| e.to_string())?;
        check(d == expected[i], || format!("d_{k} = {d}"))?;
        for rel in ["d10/hecke_t3.txt", "d10/hecke_t7_printed.txt"] {
            let side = table(rel).get(k).map_err(|e| e.to_string())?.side();
            check(side as i64 == d, || format!("{rel} weight {k} has side {side}"))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let (a, b) = (table("d10/hecke_t3.txt"), table("d10/hecke_t7_printed.txt"));
    let maps = parse_eigenmap(&read("d10/eigenmap_3_7.txt")).map_err(|e| e.to_string())?;
    check(maps.len() == 8, || format!("{} maps", maps.len()))?;
    for (k, g) in maps.iter() {
        let got = hecke_transfer(a.get(k).unwrap(), g, k).map_err(|e| e.to_string())?;
        check(&got == b.get(k).unwrap(), || format!("weight {k}: {got}"))?;
    }
    Ok(())
}

/// `(c_0 + c_1 t + c_2 t^2) / (7^n t^s)` as printed.
fn printed_power_sum(n: u32, s: usize, c: &[i64]) -> RationalFunction {
    let mut den = vec![BigInt::zero(); s + 1];
    den[s] = num_traits::pow(BigInt::from(7), n as usize);
    let den = UniPoly::new(den.into_iter().map(BigRational::from_integer).collect(), T);
    RationalFunction::new(UniPoly::from_ints(c, T), den).unwrap()
}

fn criterion_5() -> Outcome {
    let sums = power_sums(&d10_curve(), 7, 4, &table("d10/hecke_t7_printed.txt")).map_err(|e| e.to_string())?.sums;
    let printed = [
        printed_power_sum(1, 0, &[-4]),
        printed_power_sum(3, 0, &[104]),
        printed_power_sum(5, 1, &[305856, 36428]),
        printed_power_sum(7, 1, &[14618880, -1613416]),
        printed_power_sum(9, 1, &[136909440, 33553436]),
        printed_power_sum(11, 2, &[27509870592, 52096359168, 934073672]),
        printed_power_sum(13, 2, &[15396166471680, -2162558865600, -111965170324]),
        printed_power_sum(15, 2, &[18304356630528, 78355740427776, 4460404162424]),
    ];
    check(sums.len() == printed.len(), || format!("{} sums", sums.len()))?;
    for (m, (got, want)) in sums.iter().zip(&printed).enumerate() {
        check(got == want, || format!("power sum {}: {got}", m + 1))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let sums = power_sums(&d10_curve(), 7, 4, &table("d10/hecke_t7_printed.txt")).map_err(|e| e.to_string())?.sums;
    let psi = build_psi(&newton_to_elementary(&sums, 7));
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
    let printed = BiPoly::from_terms(
        rows.iter().flat_map(|(z, c)| c.iter().enumerate().map(move |(x, v)| ((*z, x), int(*v)))),
        PSI_VARS,
    );
    check(psi.numerator == printed, || format!("numerator {}", psi.numerator))?;
    let seven14 = num_traits::pow(BigInt::from(7), 14);
    check(seven14 == BigInt::from(678223072849u64), || "7^14".into())?;
    let d = UniPoly::new(vec![int(0), int(0), BigRational::from_integer(seven14)], 'x');
    check(psi.denominator == d, || format!("denominator {}", psi.denominator))
}

fn d10_modeq() -> Result<modeq_cli::jobs::ModeqOutcome, String> {
    let f = |rel: &str| fixture(rel).to_string_lossy().into_owned();
    let argv = [
        "modeq".to_string(),
        "--mode=modeq".into(),
        format!("--curve={}", f("d10/curve.txt")),
        format!("--hecke={}", f("d10/hecke_t3.txt")),
        format!("--eigenmap={}", f("d10/eigenmap_3_7.txt")),
        "--prime=7".into(),
        "--base-prime=3".into(),
    ];
    let config = JobConfig::parse_from(argv).map_err(|e| e.to_string())?;
    run_modeq(&config).map_err(|e| e.to_string())
}

fn criterion_7() -> Outcome {
    let out = d10_modeq()?;
    check(out.factors.factors.len() == 2, || format!("{} factors", out.factors.factors.len()))?;
    let printed = parse_phi(&read("d10/phi7.txt")).map_err(|e| e.to_string())?.phi;
    let got = &out.phi.phi;
    let (a, b) = (got.coeffs_in_second(), printed.coeffs_in_second());
    check(a.len() == 9 && b.len() == 9, || format!("deg_y {} vs {}", a.len() - 1, b.len() - 1))?;
    let sign = if a[8] == b[8] { int(1) } else { int(-1) };
    for (i, (x, y)) in a.iter().zip(&b).enumerate() {
        check(x == &y.scale(&sign), || format!("a_{i}(x) differs"))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let out = d10_modeq()?;
    let split: Vec<_> = out.candidates.iter().filter(|c| c.linear_split).collect();
    check(out.candidates.len() == 2 && split.len() == 1, || format!("{} of {} split", split.len(), out.candidates.len()))?;
    check(split[0].factor == out.phi.phi || split[0].factor == -&out.phi.phi, || "selected factor is not the split one".into())?;
    let rejected = out.candidates.iter().find(|c| !c.linear_split).unwrap();
    let diag = factor_univariate(&rejected.factor.diagonal());
    check(diag.factors.iter().any(|(g, _)| g.degree() != Some(1)), || "rejected diagonal splits".into())
}

fn criterion_9() -> Outcome {
    let argv = ["modeq".to_string(), "--mode=verify".into(), format!("--phi={}", fixture("d6/phi7.txt").display())];
    let config = JobConfig::parse_from(argv).map_err(|e| e.to_string())?;
    let report = run_verify(&config).map_err(|e| e.to_string())?;
    for name in ["primitive", "degree", "irreducible"] {
        let c = report.check(name).ok_or_else(|| format!("no {name} check"))?;
        check(c.passed == Some(true), || format!("{name}: {}", c.detail))?;
    }
    let expected = UniPoly::from_ints(&[-4097152081, 3024000000], 'x').pow(6);
    check(report.leading_in_y.product('x') == expected, || "y^8 coefficient".into())?;
    check(report.leading_in_y.factors.len() == 1 && report.leading_in_y.factors[0].1 == 6, || {
        format!("{:?}", report.leading_in_y.degrees())
    })
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: 128,
        rng_seed: RngSeed::Fixed(0x6163_6365_7074),
        failure_persistence: None,
        ..Config::default()
    })
}

fn nonconstant(max_degree: usize) -> impl Strategy<Value = UniPoly> {
    (prop::collection::vec(-9i64..10, 1..=max_degree), prop_oneof![1i64..5, -4i64..0]).prop_map(|(mut c, lc)| {
        c.push(lc);
        UniPoly::from_ints(&c, 'x')
    })
}

fn bivariate(vars: (char, char)) -> impl Strategy<Value = BiPoly> {
    (prop::collection::vec(((0usize..3, 0usize..3), -5i64..6), 0..5), 1usize..3, 0usize..3, 1i64..4)
        .prop_map(move |(mut terms, dx, dy, lc)| {
            terms.push(((dx, dy), lc));
            BiPoly::from_int_terms(&terms, vars)
        })
        .prop_filter("positive degree in the first variable", |p| p.degree_first().unwrap_or(0) > 0)
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-12i64..13, 1i64..6).prop_map(|(n, d)| rat(n, d))
}

fn criterion_10() -> Outcome {
    fn fail<T: std::fmt::Debug>(name: &'static str) -> impl Fn(TestError<T>) -> String {
        move |e| format!("{name}: {e}")
    }

    runner()
        .run(&(nonconstant(3), nonconstant(3), nonconstant(2)), |(a, b, c)| {
            let f = &(&a * &b) * &c;
            prop_assert_eq!(factor_univariate(&f).product('x'), f);
            Ok(())
        })
        .map_err(fail("univariate factorization"))?;

    runner()
        .run(&(bivariate(('x', 'y')), bivariate(('x', 'y'))), |(a, b)| {
            let f = &a * &b;
            prop_assert_eq!(factor_bivariate_full(&f).unwrap().product(('x', 'y')), f);
            Ok(())
        })
        .map_err(fail("bivariate factorization"))?;

    runner()
        .run(&(nonconstant(3), nonconstant(3), nonconstant(3)), |(f, g, h)| {
            let fg = &f * &g;
            prop_assert_eq!(resultant_univariate(&fg, &h), resultant_univariate(&f, &h) * resultant_univariate(&g, &h));
            Ok(())
        })
        .map_err(fail("resultant multiplicativity"))?;

    runner()
        .run(&(bivariate(('z', 'x')), bivariate(('z', 'y')), -20i64..21, -20i64..21), |(f, g, x0, y0)| {
            let r = resultant_z(&f, &g).unwrap();
            let at = |p: &BiPoly, v: i64| -> Vec<BigInt> {
                p.coeffs_in_first().iter().map(|c| c.eval(&int(v)).to_integer()).collect()
            };
            let det = bareiss_determinant(sylvester_matrix(&at(&f, x0), &at(&g, y0)));
            prop_assert_eq!(r.eval(&int(x0), &int(y0)), BigRational::from_integer(det));
            Ok(())
        })
        .map_err(fail("resultant specialization"))?;

    let rational_function = (prop::collection::vec(-6i64..7, 1..4), prop::collection::vec(-3i64..4, 0..3))
        .prop_map(|(num, mut den)| {
            den.push(1);
            RationalFunction::new(UniPoly::from_ints(&num, 'x'), UniPoly::from_ints(&den, 'x')).unwrap()
        });
    runner()
        .run(&prop::collection::vec(rational_function, 1..=8), |sums| {
            let back = elementary_to_newton(&newton_to_elementary(&sums, 7).elementary);
            for (got, want) in back.iter().zip(&sums) {
                prop_assert!(got.equals_by_cross_multiplication(want));
            }
            Ok(())
        })
        .map_err(fail("Newton round trip"))?;

    let ode_case = (
        prop::collection::vec(2u32..9, 3),
        prop::collection::vec(small_rational(), 3),
        0usize..8,
        0usize..3,
        any::<bool>(),
    );
    runner()
        .run(&ode_case, |(orders, accessory, order, which, upper)| {
            let points: Vec<EllipticPoint> = [0i64, 1, -3]
                .iter()
                .zip(orders.iter().zip(&accessory))
                .map(|(&a, (&e, b))| EllipticPoint::finite(int(a), e, b.clone()))
                .collect();
            let (a, e) = (points[which].value.finite().unwrap().clone(), points[which].order);
            let ode = build_q(&CurveData::new("random", points).unwrap()).unwrap();
            let (r1, r2) = indicial_exponents(e).unwrap();
            let f = frobenius_series(&ode, &a, if upper { &r2 } else { &r1 }, order).unwrap();
            prop_assert!(ode_residual(&ode, &a, &f).unwrap().is_zero());
            Ok(())
        })
        .map_err(fail("ODE residual"))?;
    Ok(())
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 10] = [
        ("Frobenius series at t=0", criterion_1, secs(1)),
        ("accessory relations", criterion_2, secs(1)),
        ("dimension formula", criterion_3, secs(1)),
        ("Hecke transfer", criterion_4, secs(1)),
        ("power sums", criterion_5, secs(1)),
        ("Psi assembly", criterion_6, secs(1)),
        ("end-to-end Phi_7", criterion_7, secs(300)),
        ("selection criterion", criterion_8, secs(300)),
        ("verify mode on D=6", criterion_9, secs(60)),
        ("property suites", criterion_10, secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| check(elapsed <= *limit, || format!("took {elapsed:?}, limit {limit:?}")));
        match result {
            Ok(()) => println!("criterion {:>2} PASS {name} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
