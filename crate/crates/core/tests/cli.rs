use std::fs;
use std::path::PathBuf;

use nlfkpp::cli::{self, Cell, CliError, Command, Report, Value};

fn args(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nlfkpp-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn parses_documented_invocations() {
    let cfg = cli::parse_config(&args("evolve --D 0.001 --scheme u --L 10 --n 1000")).unwrap();
    assert_eq!(cfg.command, Command::Evolve);
    assert_eq!(cfg.real("D"), Some(0.001));
    assert_eq!(cfg.text("scheme"), Some("u"));
    assert_eq!(cfg.real("L"), Some(10.0));
    assert_eq!(cfg.int("n"), Some(1000));
    assert_eq!(cfg.real("max_change"), Some(0.01));

    let cfg = cli::parse_config(&args("steady --lambda=0.75 --D 1e-4")).unwrap();
    assert_eq!(cfg.command, Command::Steady);
    assert_eq!(cfg.real("lambda"), Some(0.75));
    assert_eq!(cfg.real("D"), Some(1e-4));
    assert_eq!(cfg.output_dir, PathBuf::from("out").join("steady"));

    let cfg = cli::parse_config(&args("dispersion --out /tmp/x --k_max 12")).unwrap();
    assert_eq!(cfg.output_dir, PathBuf::from("/tmp/x"));
    assert_eq!(cfg.real("k_max"), Some(12.0));

    let cfg = cli::parse_config(&args("evolve --snapshots 1,2.5,4")).unwrap();
    assert_eq!(cfg.list("snapshots"), Some(&[1.0, 2.5, 4.0][..]));
}

#[test]
fn rejects_invalid_input_as_usage_error() {
    for bad in [
        "evolve --D -1",
        "evolve --D 0",
        "evolve --D abc",
        "evolve --scheme v",
        "evolve --n 3",
        "evolve --bogus 1",
        "evolve --D",
        "evolve D 1",
        "frobnicate",
    ] {
        match cli::parse_config(&args(bad)) {
            Err(e @ CliError::Usage(_)) => assert_eq!(e.exit_code(), 2, "{bad}"),
            other => panic!("{bad}: expected usage error, got {other:?}"),
        }
    }
    assert_eq!(cli::main_with_args(args("evolve --D -1")), 2);
    assert_eq!(cli::main_with_args(Vec::new()), 2);
    assert_eq!(cli::main_with_args(args("--help")), 0);
    assert!(cli::usage_text().contains("evolve"));
}

#[test]
fn flags_override_config_file() {
    let dir = scratch_dir("config");
    let file = dir.join("run.cfg");
    fs::write(
        &file,
        "# comment\nD = 0.002\nk_max = 20  # trailing\nsamples = 50\n",
    )
    .unwrap();
    let argv = vec![
        "dispersion".to_string(),
        "--config".into(),
        file.display().to_string(),
        "--samples".into(),
        "7".into(),
    ];
    let cfg = cli::parse_config(&argv).unwrap();
    assert_eq!(cfg.real("D"), Some(0.002));
    assert_eq!(cfg.real("k_max"), Some(20.0));
    assert_eq!(cfg.int("samples"), Some(7));

    fs::write(&file, "D 0.002\n").unwrap();
    assert!(matches!(cli::parse_config(&argv), Err(CliError::Usage(_))));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn csv_round_trip_is_exact() {
    let dir = scratch_dir("csv");
    let values = [
        0.1,
        -1.0 / 3.0,
        std::f64::consts::PI,
        1e-300,
        6.02214076e23,
        0.0,
        f64::MIN_POSITIVE,
    ];
    let rows: Vec<Vec<Cell>> = values
        .iter()
        .map(|&v| vec![Cell::F(v), Cell::I(3), Cell::Empty])
        .collect();
    let path = dir.join("t.csv");
    cli::write_csv(&path, &["a", "b", "c"], &rows).unwrap();
    let (header, back) = cli::read_csv(&path).unwrap();
    assert_eq!(header, ["a", "b", "c"]);
    for (v, row) in values.iter().zip(&back) {
        assert_eq!(row[0].unwrap().to_bits(), v.to_bits());
        assert_eq!(row[1], Some(3.0));
        assert_eq!(row[2], None);
    }
    for v in values {
        assert_eq!(
            cli::fmt_f64(v).parse::<f64>().unwrap().to_bits(),
            v.to_bits()
        );
    }
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn runs_are_deterministic_and_echo_parameters() {
    let run = |tag: &str| {
        let dir = scratch_dir(tag);
        let mut cfg = cli::parse_config(&args(
            "evolve --D 0.003 --L 5 --n 200 --t_end 5 --snapshots 2.5",
        ))
        .unwrap();
        cfg.output_dir = dir.clone();
        cli::execute(&mut cfg).unwrap();
        dir
    };
    let (a, b) = (run("det-a"), run("det-b"));
    for name in ["diagnostics.csv", "final.csv", "snapshot_000.csv"] {
        let fa = fs::read(a.join(name)).unwrap();
        assert!(!fa.is_empty());
        assert_eq!(fa, fs::read(b.join(name)).unwrap(), "{name}");
    }
    let manifest = fs::read_to_string(a.join("manifest.txt")).unwrap();
    for line in [
        "command = evolve",
        "D = ",
        "L = ",
        "n = 200",
        "scheme = u",
        "init = bump",
        "output_interval = ",
    ] {
        assert!(
            manifest.lines().any(|l| l.starts_with(line)),
            "missing {line}"
        );
    }
    let (header, rows) = cli::read_csv(&a.join("diagnostics.csv")).unwrap();
    assert_eq!(header, ["time", "front", "wavelength", "u_max", "mass"]);
    assert!(rows.len() > 100);
    for dir in [a, b] {
        let _ = fs::remove_dir_all(dir);
    }
}

#[test]
fn derived_values_are_recorded() {
    let dir = scratch_dir("derived");
    let mut cfg = cli::parse_config(&args("tongues --i_max 2 --samples 20")).unwrap();
    cfg.output_dir = dir.clone();
    cli::execute(&mut cfg).unwrap();
    let (header, rows) = cli::read_csv(&dir.join("tongues.csv")).unwrap();
    assert_eq!(header[0], "i");
    assert!(rows.iter().all(|r| r[2].unwrap() < r[3].unwrap()));

    let mut cfg = cli::parse_config(&args("tw --D 0.01 --n_max 1 --d_samples 10")).unwrap();
    cfg.output_dir = dir.clone();
    cli::execute(&mut cfg).unwrap();
    assert_eq!(cfg.params.get("v"), Some(&Value::Real(0.2)));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn constants_preset_passes() {
    let dir = scratch_dir("repro");
    let mut report = Report::default();
    cli::run_repro("TABLE_CONSTANTS", &dir, &mut report).unwrap();
    assert_eq!(report.failures, 0, "{:#?}", report.lines);
    let (_, rows) = cli::read_csv(&dir.join("constants.csv")).unwrap();
    assert!(rows.len() >= 7);
    assert!(matches!(
        cli::run_repro("NOPE", &dir, &mut report),
        Err(CliError::Usage(_))
    ));
    let _ = fs::remove_dir_all(&dir);
}
