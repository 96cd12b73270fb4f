use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use modeq_cli::formats::{
    parse_curve, parse_eigenmap, parse_hecke_table, parse_phi, write_curve, write_eigenmap, write_hecke_table,
    write_phi,
};
use modeq_core::exactalg::rational::rat;
use modeq_core::exactalg::RatMatrix;
use modeq_core::heckeforms::HeckeTable;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel).to_string_lossy().into_owned()
}

fn modeq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modeq")).args(args).output().expect("run modeq")
}

fn d10_args<'a>(curve: &'a str, t3: &'a str, map: &'a str) -> Vec<&'a str> {
    vec!["--mode", "modeq", "--curve", curve, "--hecke", t3, "--eigenmap", map, "--prime", "7", "--base-prime", "3"]
}

#[test]
fn fixtures_survive_a_write_and_reparse() {
    for rel in ["d10/curve.txt", "d6/curve.txt"] {
        let c = parse_curve(&fs::read_to_string(fixture(rel)).unwrap()).unwrap();
        assert_eq!(parse_curve(&write_curve(&c)).unwrap(), c, "{rel}");
    }
    for rel in ["d10/hecke_t3.txt", "d10/hecke_t7_printed.txt"] {
        let t = parse_hecke_table(&fs::read_to_string(fixture(rel)).unwrap()).unwrap();
        assert_eq!(parse_hecke_table(&write_hecke_table(&t)).unwrap(), t, "{rel}");
    }
    let m = parse_eigenmap(&fs::read_to_string(fixture("d10/eigenmap_3_7.txt")).unwrap()).unwrap();
    assert_eq!(parse_eigenmap(&write_eigenmap(&m)).unwrap(), m);
    for rel in ["d10/phi7.txt", "d6/phi7.txt", "d6/phi7_as_printed.txt"] {
        let text = fs::read_to_string(fixture(rel)).unwrap();
        let p = parse_phi(&text).unwrap();
        assert_eq!(parse_phi(&write_phi(&p)).unwrap(), p, "{rel}");
    }
}

#[test]
fn modeq_run_writes_the_fixture_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (curve, t3, map) = (fixture("d10/curve.txt"), fixture("d10/hecke_t3.txt"), fixture("d10/eigenmap_3_7.txt"));
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("phi{run}.txt"));
        let log = dir.path().join(format!("log{run}.txt"));
        let (out_s, log_s) = (out.to_string_lossy().into_owned(), log.to_string_lossy().into_owned());
        let mut args = d10_args(&curve, &t3, &map);
        args.extend(["--out", &out_s, "--log", &log_s]);
        let result = modeq(&args);
        assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
        let moduli = fs::read_to_string(dir.path().join(format!("phi{run}.txt.moduli"))).unwrap();
        outputs.push((fs::read_to_string(&out).unwrap(), fs::read_to_string(&log).unwrap(), moduli));
    }
    assert_eq!(outputs[0], outputs[1]);
    let (phi, log, moduli) = &outputs[0];
    assert_eq!(parse_phi(phi).unwrap(), parse_phi(&fs::read_to_string(fixture("d10/phi7.txt")).unwrap()).unwrap());
    assert!(log.contains("2 irreducible factors"));
    assert!(log.contains("symmetric"));
    assert_eq!(moduli.lines().filter(|l| l.starts_with("factor deg=1")).count(), 9);
}

#[test]
fn missing_weight_fails_at_the_labelled_step() {
    let dir = tempfile::tempdir().unwrap();
    let t3 = fs::read_to_string(fixture("d10/hecke_t3.txt")).unwrap();
    let mut cut = HeckeTable::new(3);
    for (k, m) in parse_hecke_table(&t3).unwrap().iter().filter(|(k, _)| *k != 20) {
        cut.insert(k, m.clone());
    }
    let path = dir.path().join("t3.txt");
    fs::write(&path, write_hecke_table(&cut)).unwrap();
    let (curve, map) = (fixture("d10/curve.txt"), fixture("d10/eigenmap_3_7.txt"));
    let result = modeq(&d10_args(&curve, path.to_str().unwrap(), &map));
    assert_eq!(result.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&result.stderr).contains("(b)"));
}

#[test]
fn validation_failures_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_curve = dir.path().join("curve.txt");
    let text = fs::read_to_string(fixture("d10/curve.txt")).unwrap().replace("B=20/243", "B=21/243");
    fs::write(&bad_curve, text).unwrap();
    let (t3, map) = (fixture("d10/hecke_t3.txt"), fixture("d10/eigenmap_3_7.txt"));
    let result = modeq(&d10_args(bad_curve.to_str().unwrap(), &t3, &map));
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("accessory"));

    let curve = fixture("d10/curve.txt");
    let mut args = d10_args(&curve, &t3, &map);
    args[9] = "5";
    let result = modeq(&args);
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("divides the discriminant"));

    let result = modeq(&["--mode", "verify"]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn verify_and_series_modes() {
    let result = modeq(&["--mode", "verify", "--phi", &fixture("d6/phi7_as_printed.txt")]);
    assert!(result.status.success());
    let text = String::from_utf8_lossy(&result.stdout);
    assert!(text.contains("PASS irreducible"));
    assert!(text.contains("FAIL diagonal splits"));

    let result = modeq(&["--mode", "series", "--curve", &fixture("d10/curve.txt"), "--point", "0", "--branch", "1/3"]);
    assert!(result.status.success());
    assert!(String::from_utf8_lossy(&result.stdout).contains("1 - 10/81*t - 18539/839808*t^2"));
}

/// The fuzz targets' round-trip property, replayed over their seed corpora.
#[test]
fn fuzz_seeds_round_trip() {
    fn replay<T: PartialEq + std::fmt::Debug, E>(target: &str, parse: fn(&str) -> Result<T, E>, write: fn(&T) -> String) {
        let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
        let mut parsed = 0;
        for entry in fs::read_dir(&dir).unwrap() {
            let text = fs::read_to_string(entry.unwrap().path()).unwrap();
            if let Ok(v) = parse(&text) {
                parsed += 1;
                assert_eq!(parse(&write(&v)).ok().unwrap(), v);
            }
        }
        assert!(parsed > 0, "{target}");
    }
    replay("curve_file", parse_curve, write_curve);
    replay("hecke_file", parse_hecke_table, write_hecke_table);
    replay("eigenmap_file", parse_eigenmap, write_eigenmap);
    replay("phi_file", parse_phi, write_phi);
}

fn small_table() -> impl Strategy<Value = HeckeTable> {
    prop::collection::btree_map(
        (1u32..20).prop_map(|k| 2 * k),
        (1usize..4).prop_flat_map(|n| prop::collection::vec((-50i64..50, 1i64..9), n * n).prop_map(move |v| (n, v))),
        1..5,
    )
    .prop_map(|blocks| {
        let mut t = HeckeTable::new(5);
        for (k, (n, v)) in blocks {
            let rows = v.chunks(n).map(|r| r.iter().map(|&(a, b)| rat(a, b)).collect()).collect();
            t.insert(k, RatMatrix::from_rows(rows).unwrap());
        }
        t
    })
}

proptest! {
    #![proptest_config(Config { cases: 128, rng_seed: RngSeed::Fixed(0x666d_7473), failure_persistence: None, ..Config::default() })]

    #[test]
    fn hecke_tables_round_trip(t in small_table()) {
        prop_assert_eq!(parse_hecke_table(&write_hecke_table(&t)).unwrap(), t);
    }

    #[test]
    fn parsers_never_panic(text in "[ -~\n]{0,200}") {
        let _ = parse_curve(&text);
        let _ = parse_hecke_table(&text);
        let _ = parse_eigenmap(&text);
        let _ = parse_phi(&text);
    }
}
