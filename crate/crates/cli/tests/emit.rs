use std::fs;

use fcstat_cli::emit::{
    emit_distribution, emit_report, emit_report_json, format_float, read_distribution,
    read_report_json, REPORT_HEADER,
};
use fcstat_cli::{parse_config, run_experiment, RunReport};
use fcstat_core::fcs::Atom;
use fcstat_core::FcsDistribution;
use proptest::prelude::*;

fn xy_report(t_values: &str) -> RunReport {
    let text = format!(
        "t_values = {t_values}\ns_points = 11\nc_grid_points = 3\nC = 1.0\n\
         [model]\nkind = \"xy_lattice\"\nhalf_width = 1\ncoupling = 1.0\nboundary_strength = 0.5\n"
    );
    let cfg = parse_config(&text, std::path::Path::new("inline.toml")).unwrap();
    run_experiment(&cfg, None).unwrap().report
}

#[test]
fn point_mass_is_a_two_line_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    emit_distribution(&FcsDistribution::point_mass(0.0), &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        vec!["delta_e,prob", "0.0000000000000000e0,1.0000000000000000e0"]
    );
}

#[test]
fn three_atoms_give_four_lines_with_unit_mass() {
    let atoms = vec![
        Atom {
            delta_e: -4.0,
            prob: 0.1,
        },
        Atom {
            delta_e: 0.0,
            prob: 0.7,
        },
        Atom {
            delta_e: 4.0,
            prob: 0.2,
        },
    ];
    let d = FcsDistribution::new(atoms, 1e-9).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    emit_distribution(&d, &path).unwrap();
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 4);
    let back = read_distribution(&path).unwrap();
    let total: f64 = back.iter().map(|a| a.prob).sum();
    assert!((total - 1.0).abs() <= 1e-12);
    assert!(back.windows(2).all(|w| w[0].delta_e < w[1].delta_e));
}

#[test]
fn floats_keep_seventeen_significant_digits() {
    for x in [
        0.1,
        1.0 / 3.0,
        -2.5e-300,
        6.02214076e23,
        f64::MIN_POSITIVE,
        f64::MAX,
    ] {
        let s = format_float(x);
        let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(
            mantissa.chars().filter(|c| c.is_ascii_digit()).count(),
            17,
            "{s}"
        );
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distribution_round_trip_is_exact(
        raw in prop::collection::vec((-50.0f64..50.0, 1e-6f64..1.0), 1..12)
    ) {
        let mut raw = raw;
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        raw.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-6);
        let total: f64 = raw.iter().map(|r| r.1).sum();
        let atoms: Vec<Atom> = raw.iter().map(|&(e, p)| Atom { delta_e: e, prob: p / total }).collect();
        let d = FcsDistribution::new(atoms, 1e-9).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        emit_distribution(&d, &path).unwrap();
        prop_assert_eq!(read_distribution(&path).unwrap(), d.atoms().to_vec());
    }
}

#[test]
fn single_time_report_is_a_two_line_csv() {
    let report = xy_report("[1.0]");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    emit_report(&report, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], REPORT_HEADER.join(","));
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields.len(), REPORT_HEADER.len());
    assert_eq!(fields[5], "true");
    assert_eq!(fields[8], "true");
}

#[test]
fn report_fields_reparse_to_the_in_memory_values() {
    let report = xy_report("[0.5, 2.0]");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    emit_report(&report, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    for (line, r) in text.lines().skip(1).zip(&report.records) {
        let f: Vec<&str> = line.split(',').collect();
        let expected = [
            r.t,
            r.mean,
            r.mean_over_t,
            r.exp_moment,
            r.theorem_bound,
            f64::NAN,
            r.tail.empirical,
            r.tail.bound,
        ];
        for (k, x) in expected.iter().enumerate() {
            if k == 5 {
                assert!(f[k] == "true" || f[k] == "false");
                continue;
            }
            let y: f64 = f[k].parse().unwrap();
            assert!((y - x).abs() <= 1e-15 * x.abs(), "column {k}: {y} vs {x}");
        }
    }
}

#[test]
fn false_flags_are_lowercase() {
    let mut report = xy_report("[1.0]");
    report.records[0].theorem_pass = false;
    report.records[0].tail.pass = false;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    emit_report(&report, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!((row[5], row[8]), ("false", "false"));
}

#[test]
fn json_report_round_trips() {
    let report = xy_report("[0.1, 1.0, 10.0]");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    emit_report_json(&report, &path).unwrap();
    assert_eq!(read_report_json(&path).unwrap(), report);
}
