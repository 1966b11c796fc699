//! Command-line front end: argument and config-file parsing, subcommands,
//! preset reproductions and CSV output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use crate::asymptote;
use crate::dispersion;
use crate::error::Error;
use crate::evolve::{self, EvolveConfig, EvolveOutput, InitialData, Scheme};
use crate::steady;
use crate::travwave;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Evolve,
    Dispersion,
    Tongues,
    Steady,
    Asymptote,
    Tw,
    Repro,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Evolve,
        Command::Dispersion,
        Command::Tongues,
        Command::Steady,
        Command::Asymptote,
        Command::Tw,
        Command::Repro,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Evolve => "evolve",
            Command::Dispersion => "dispersion",
            Command::Tongues => "tongues",
            Command::Steady => "steady",
            Command::Asymptote => "asymptote",
            Command::Tw => "tw",
            Command::Repro => "repro",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    fn schema(self) -> &'static [Param] {
        match self {
            Command::Evolve => EVOLVE,
            Command::Dispersion => DISPERSION,
            Command::Tongues => TONGUES,
            Command::Steady => STEADY,
            Command::Asymptote => ASYMPTOTE,
            Command::Tw => TW,
            Command::Repro => REPRO,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    /// Real number strictly greater than zero.
    Positive,
    /// Integer no smaller than the bound.
    Count(i64),
    Choice(&'static [&'static str]),
    /// Comma-separated reals, possibly empty.
    List,
}

struct Param {
    key: &'static str,
    kind: Kind,
    /// `None` marks a value derived from the others when absent.
    default: Option<&'static str>,
    help: &'static str,
}

const fn p(
    key: &'static str,
    kind: Kind,
    default: Option<&'static str>,
    help: &'static str,
) -> Param {
    Param {
        key,
        kind,
        default,
        help,
    }
}

const EVOLVE: &[Param] = &[
    p("D", Kind::Positive, Some("0.001"), "diffusivity"),
    p(
        "scheme",
        Kind::Choice(&["u", "w"]),
        Some("u"),
        "u: half-line in u; w: periodic in log u",
    ),
    p(
        "L",
        Kind::Positive,
        None,
        "half-length (u) or period (w); 10 or 40",
    ),
    p("n", Kind::Count(8), None, "grid nodes; 1000 or 8192"),
    p("t_end", Kind::Positive, None, "final time; 4.5/sqrt(D)"),
    p(
        "init",
        Kind::Choice(&["bump", "gaussian"]),
        None,
        "initial data; bump (u) or gaussian (w)",
    ),
    p("A", Kind::Positive, Some("0.01"), "initial amplitude"),
    p("w", Kind::Positive, Some("0.1"), "gaussian width"),
    p(
        "max_change",
        Kind::Positive,
        Some("0.01"),
        "bound on the per-step change",
    ),
    p("dt_max", Kind::Positive, Some("0.05"), "largest time step"),
    p(
        "output_interval",
        Kind::Positive,
        None,
        "diagnostic spacing; t_end/200",
    ),
    p(
        "snapshots",
        Kind::List,
        Some(""),
        "times of full-field snapshots",
    ),
];

const DISPERSION: &[Param] = &[
    p("D", Kind::Positive, Some("0.001"), "diffusivity"),
    p("k_max", Kind::Positive, Some("40"), "largest wavenumber"),
    p(
        "samples",
        Kind::Count(2),
        Some("800"),
        "number of wavenumbers",
    ),
];

const TONGUES: &[Param] = &[
    p("i_max", Kind::Count(1), Some("4"), "number of tongues"),
    p("samples", Kind::Count(2), Some("200"), "points per tongue"),
];

const STEADY: &[Param] = &[
    p("lambda", Kind::Positive, Some("0.75"), "wavelength"),
    p("D", Kind::Positive, Some("0.0001"), "diffusivity"),
    p(
        "n",
        Kind::Count(0),
        Some("0"),
        "half-period nodes; 0 picks a default",
    ),
    p(
        "branch",
        Kind::Count(0),
        Some("0"),
        "tongue index to continue across; 0 solves one point",
    ),
    p(
        "steps",
        Kind::Count(2),
        Some("40"),
        "continuation steps across the tongue",
    ),
];

const ASYMPTOTE: &[Param] = &[
    p(
        "problem",
        Kind::Choice(&["transition", "spike", "region1"]),
        Some("transition"),
        "reference problem",
    ),
    p(
        "x_left",
        Kind::Positive,
        Some("8"),
        "transition layer: left extent",
    ),
    p(
        "x_right",
        Kind::Positive,
        Some("6"),
        "transition layer: right extent",
    ),
    p(
        "n",
        Kind::Count(2000),
        Some("4000"),
        "transition layer: nodes",
    ),
    p(
        "lambda_bar",
        Kind::Positive,
        Some("1"),
        "spike: rescaled wavelength excess",
    ),
    p(
        "lambda",
        Kind::Positive,
        Some("0.75"),
        "region I: wavelength",
    ),
    p("i", Kind::Count(1), Some("1"), "region I: tongue index"),
];

const TW: &[Param] = &[
    p("D", Kind::Positive, Some("0.003"), "diffusivity"),
    p("v", Kind::Positive, None, "wave speed; 2 sqrt(D)"),
    p(
        "n_max",
        Kind::Count(0),
        Some("3"),
        "root paths for 1 ≤ |n| ≤ n_max",
    ),
    p(
        "d_min",
        Kind::Positive,
        Some("1e-6"),
        "smallest D on the root-path grid",
    ),
    p(
        "d_max",
        Kind::Positive,
        Some("10"),
        "largest D on the root-path grid",
    ),
    p(
        "d_samples",
        Kind::Count(2),
        Some("400"),
        "points on the root-path grid",
    ),
];

const REPRO: &[Param] = &[p(
    "target",
    Kind::Choice(&[
        "FIG1",
        "FIG2",
        "FIG4",
        "FIG5",
        "FIG6",
        "FIG5_1",
        "FIG5_5",
        "FIG5_8",
        "TABLE_CONSTANTS",
    ]),
    Some("TABLE_CONSTANTS"),
    "preset to reproduce",
)];

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Int(i64),
    Text(String),
    List(Vec<f64>),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Real(x) => fmt_f64(*x),
            Value::Int(i) => i.to_string(),
            Value::Text(s) => s.clone(),
            Value::List(v) => v.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(","),
        }
    }
}

/// Fully parsed invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: BTreeMap<String, Value>,
    pub output_dir: PathBuf,
}

impl RunConfig {
    pub fn real(&self, key: &str) -> Option<f64> {
        match self.params.get(key) {
            Some(Value::Real(x)) => Some(*x),
            _ => None,
        }
    }

    pub fn int(&self, key: &str) -> Option<i64> {
        match self.params.get(key) {
            Some(Value::Int(x)) => Some(*x),
            _ => None,
        }
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        match self.params.get(key) {
            Some(Value::Text(s)) => Some(s),
            _ => None,
        }
    }

    pub fn list(&self, key: &str) -> Option<&[f64]> {
        match self.params.get(key) {
            Some(Value::List(v)) => Some(v),
            _ => None,
        }
    }

    /// Value of a derived parameter, recorded so the manifest shows it.
    fn real_or(&mut self, key: &str, f: impl FnOnce(&Self) -> f64) -> f64 {
        if let Some(x) = self.real(key) {
            return x;
        }
        let x = f(self);
        self.params.insert(key.to_string(), Value::Real(x));
        x
    }

    fn int_or(&mut self, key: &str, f: impl FnOnce(&Self) -> i64) -> i64 {
        if let Some(x) = self.int(key) {
            return x;
        }
        let x = f(self);
        self.params.insert(key.to_string(), Value::Int(x));
        x
    }

    fn text_or(&mut self, key: &str, f: impl FnOnce(&Self) -> &'static str) -> String {
        if let Some(x) = self.text(key) {
            return x.to_string();
        }
        let x = f(self).to_string();
        self.params.insert(key.to_string(), Value::Text(x.clone()));
        x
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) => CliError::Usage(m),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_value(param: &Param, raw: &str) -> Result<Value, CliError> {
    let key = param.key;
    let real = |s: &str| -> Result<f64, CliError> {
        let x: f64 = s
            .trim()
            .parse()
            .map_err(|_| usage(format!("--{key}: '{s}' is not a number")))?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(usage(format!("--{key}: value must be finite")))
        }
    };
    match param.kind {
        Kind::Positive => {
            let x = real(raw)?;
            if x > 0.0 {
                Ok(Value::Real(x))
            } else {
                Err(usage(format!("--{key} must be positive, got {raw}")))
            }
        }
        Kind::Count(min) => {
            let i: i64 = raw
                .trim()
                .parse()
                .map_err(|_| usage(format!("--{key}: '{raw}' is not an integer")))?;
            if i >= min {
                Ok(Value::Int(i))
            } else {
                Err(usage(format!("--{key} must be at least {min}, got {i}")))
            }
        }
        Kind::Choice(options) => {
            let v = raw.trim();
            options
                .iter()
                .find(|o| o.eq_ignore_ascii_case(v))
                .map(|o| Value::Text(o.to_string()))
                .ok_or_else(|| {
                    usage(format!(
                        "--{key} must be one of {}, got '{v}'",
                        options.join("|")
                    ))
                })
        }
        Kind::List => {
            let t = raw.trim();
            if t.is_empty() {
                return Ok(Value::List(Vec::new()));
            }
            t.split(',')
                .map(real)
                .collect::<Result<Vec<_>, _>>()
                .map(Value::List)
        }
    }
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn read_config_file(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            usage(format!(
                "{}:{}: expected key = value",
                path.display(),
                no + 1
            ))
        })?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Parses `<command> [--key value]... [--config file] [--out dir]`.
/// Command-line flags override values from the config file.
pub fn parse_config(argv: &[String]) -> Result<RunConfig, CliError> {
    let name = argv.first().ok_or_else(|| usage("missing command"))?;
    let command = Command::parse(name).ok_or_else(|| usage(format!("unknown command '{name}'")))?;
    let mut flags: Vec<(String, String)> = Vec::new();
    let mut config_file: Option<PathBuf> = None;
    let mut output_dir: Option<PathBuf> = None;
    let mut it = argv[1..].iter();
    while let Some(arg) = it.next() {
        let key = arg
            .strip_prefix("--")
            .ok_or_else(|| usage(format!("expected --key, got '{arg}'")))?;
        let (key, inline) = match key.split_once('=') {
            Some((k, v)) => (k, Some(v.to_string())),
            None => (key, None),
        };
        let value = match inline {
            Some(v) => v,
            None => it
                .next()
                .ok_or_else(|| usage(format!("--{key} needs a value")))?
                .clone(),
        };
        match key {
            "config" => config_file = Some(PathBuf::from(value)),
            "out" => output_dir = Some(PathBuf::from(value)),
            _ => flags.push((key.to_string(), value)),
        }
    }
    let mut raw: BTreeMap<String, String> = BTreeMap::new();
    if let Some(path) = &config_file {
        for (k, v) in read_config_file(path)? {
            if k == "out" {
                output_dir.get_or_insert_with(|| PathBuf::from(&v));
            } else {
                raw.insert(k, v);
            }
        }
    }
    for (k, v) in flags {
        raw.insert(k, v);
    }
    let schema = command.schema();
    let mut params = BTreeMap::new();
    for (k, v) in &raw {
        let param = schema
            .iter()
            .find(|p| p.key == k)
            .ok_or_else(|| usage(format!("unknown option '{k}' for {}", command.name())))?;
        params.insert(k.clone(), parse_value(param, v)?);
    }
    for param in schema {
        if let (false, Some(d)) = (params.contains_key(param.key), param.default) {
            params.insert(param.key.to_string(), parse_value(param, d)?);
        }
    }
    let output_dir = output_dir.unwrap_or_else(|| PathBuf::from("out").join(command.name()));
    Ok(RunConfig {
        command,
        params,
        output_dir,
    })
}

pub fn usage_text() -> String {
    let mut s = String::from(
        "usage: nlfkpp <command> [--key value]... [--config file] [--out dir]\n\ncommands:\n",
    );
    for c in Command::ALL {
        let _ = writeln!(s, "  {}", c.name());
        for p in c.schema() {
            let d = p.default.map(|d| {
                if d.is_empty() {
                    "(none)".to_string()
                } else {
                    d.to_string()
                }
            });
            let _ = writeln!(
                s,
                "      --{:<16} {} [default: {}]",
                p.key,
                p.help,
                d.unwrap_or_else(|| "derived".into())
            );
        }
    }
    s.push_str("\nNLFKPP_THREADS caps the number of worker threads.\n");
    s
}

/// Shortest-to-parse 17-significant-digit form; reading it back is exact.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    I(i64),
    S(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::F(x) => fmt_f64(*x),
            Cell::I(i) => i.to_string(),
            Cell::S(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::F(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::F)
    }
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<Cell>]) -> std::io::Result<()> {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.iter().map(Cell::render).collect::<Vec<_>>().join(","));
        s.push('\n');
    }
    fs::write(path, s)
}

/// Header and rows of a CSV; unparsable cells are `None`.
pub type CsvTable = (Vec<String>, Vec<Vec<Option<f64>>>);

/// Parses a CSV written by [`write_csv`] back into rows of optional reals.
pub fn read_csv(path: &Path) -> std::io::Result<CsvTable> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap_or("")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse::<f64>().ok()).collect())
        .collect();
    Ok((header, rows))
}

fn write_manifest(cfg: &RunConfig) -> std::io::Result<()> {
    let stamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let mut s = String::new();
    let _ = writeln!(s, "version = {}", crate::VERSION);
    let _ = writeln!(s, "timestamp = {stamp}");
    let _ = writeln!(s, "command = {}", cfg.command.name());
    let _ = writeln!(s, "out = {}", cfg.output_dir.display());
    for (k, v) in &cfg.params {
        let _ = writeln!(s, "{k} = {}", v.render());
    }
    fs::write(cfg.output_dir.join("manifest.txt"), s)
}

/// Accumulates pass/fail lines for a summary file.
#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub failures: usize,
}

impl Report {
    fn info(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        if !pass {
            self.failures += 1;
        }
        self.lines.push(format!(
            "{} {name}: {}",
            if pass { "PASS" } else { "FAIL" },
            detail.into()
        ));
    }

    fn write(&self, dir: &Path) -> std::io::Result<()> {
        let mut s = self.lines.join("\n");
        s.push('\n');
        fs::write(dir.join("summary.txt"), s)
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("NLFKPP_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args(args: Vec<String>) -> i32 {
    if args.is_empty() || args.iter().any(|a| a == "--help" || a == "-h") {
        print!("{}", usage_text());
        return if args.is_empty() { 2 } else { 0 };
    }
    match parse_config(&args).and_then(|mut cfg| execute(&mut cfg)) {
        Ok(summary) => {
            print!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("nlfkpp: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command, writing its files, and returns the summary text.
pub fn execute(cfg: &mut RunConfig) -> Result<String, CliError> {
    configure_threads();
    fs::create_dir_all(&cfg.output_dir)?;
    let dir = cfg.output_dir.clone();
    let mut report = Report::default();
    let result = match cfg.command {
        Command::Evolve => cmd_evolve(cfg, &dir, &mut report),
        Command::Dispersion => cmd_dispersion(cfg, &dir, &mut report),
        Command::Tongues => cmd_tongues(cfg, &dir, &mut report),
        Command::Steady => cmd_steady(cfg, &dir, &mut report),
        Command::Asymptote => cmd_asymptote(cfg, &dir, &mut report),
        Command::Tw => cmd_tw(cfg, &dir, &mut report),
        Command::Repro => {
            let target = cfg.text("target").unwrap_or("TABLE_CONSTANTS").to_string();
            run_repro(&target, &dir, &mut report)
        }
    };
    write_manifest(cfg)?;
    result?;
    report.write(&dir)?;
    let mut s = report.lines.join("\n");
    s.push('\n');
    Ok(s)
}

fn evolve_config(cfg: &mut RunConfig) -> Result<(InitialData, EvolveConfig), CliError> {
    let d = cfg.real("D").unwrap_or(1e-3);
    let wform = cfg.text("scheme") == Some("w");
    let length = cfg.real_or("L", |_| if wform { 40.0 } else { 10.0 });
    let n = cfg.int_or("n", |_| if wform { 8192 } else { 1000 }) as usize;
    let t_end = cfg.real_or("t_end", |_| 4.5 / d.sqrt());
    let init = cfg.text_or("init", |_| if wform { "gaussian" } else { "bump" });
    let a = cfg.real("A").unwrap_or(0.01);
    let w = cfg.real("w").unwrap_or(0.1);
    let init = if init == "gaussian" {
        InitialData::gaussian(a, w)?
    } else {
        InitialData::compact_bump(a)?
    };
    let mut ec = EvolveConfig::new(
        d,
        length,
        n,
        t_end,
        if wform { Scheme::WForm } else { Scheme::UForm },
    );
    ec.max_change = cfg.real("max_change").unwrap_or(1e-2);
    ec.dt_max = cfg.real("dt_max").unwrap_or(0.05);
    ec.output_interval = cfg.real_or("output_interval", |_| t_end / 200.0);
    ec.snapshot_times = cfg.list("snapshots").unwrap_or(&[]).to_vec();
    ec.validate()?;
    Ok((init, ec))
}

fn field_rows(
    field: &crate::kernel::Field,
    positive_only: bool,
) -> (Vec<&'static str>, Vec<Vec<Cell>>) {
    let x = field.grid.nodes();
    let log = field.representation == crate::kernel::Representation::LogU;
    let rows = x
        .iter()
        .zip(&field.values)
        .filter(|(x, _)| !positive_only || **x >= 0.0)
        .map(|(x, v)| {
            vec![
                Cell::F(*x),
                Cell::F(if log { v / std::f64::consts::LN_10 } else { *v }),
            ]
        })
        .collect();
    (vec!["x", if log { "log10_u" } else { "u" }], rows)
}

fn diagnostics_rows(out: &EvolveOutput) -> Vec<Vec<Cell>> {
    let d = &out.diagnostics;
    (0..d.times.len())
        .map(|k| {
            vec![
                Cell::F(d.times[k]),
                Cell::F(d.front_position[k]),
                d.wavelength[k].into(),
                Cell::F(d.u_max[k]),
                Cell::F(d.mass[k]),
            ]
        })
        .collect()
}

const DIAG_HEADER: [&str; 5] = ["time", "front", "wavelength", "u_max", "mass"];

fn cmd_evolve(cfg: &mut RunConfig, dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let (init, ec) = evolve_config(cfg)?;
    let out = evolve::run(&init, &ec)?;
    write_csv(
        &dir.join("diagnostics.csv"),
        &DIAG_HEADER,
        &diagnostics_rows(&out),
    )?;
    for (k, (t, field)) in out.snapshots.iter().enumerate() {
        let (h, rows) = field_rows(field, false);
        write_csv(&dir.join(format!("snapshot_{k:03}.csv")), &h, &rows)?;
        report.info(format!("snapshot_{k:03}.csv: t = {t}"));
    }
    let (h, rows) = field_rows(&out.final_field, false);
    write_csv(&dir.join("final.csv"), &h, &rows)?;
    let diag = &out.diagnostics;
    let speed = evolve::front_speed(diag, 0.5 * ec.t_end, ec.t_end);
    report.info(format!("steps = {}", out.steps));
    report.info(format!(
        "final front = {}",
        diag.front_position.last().copied().unwrap_or(0.0)
    ));
    report.info(format!(
        "front speed (second half) = {speed:?}; 2 sqrt(D) = {}",
        2.0 * ec.d.sqrt()
    ));
    report.info(format!(
        "final wavelength = {:?}",
        diag.wavelength.last().copied().flatten()
    ));
    Ok(())
}

fn cmd_dispersion(cfg: &mut RunConfig, dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let d = cfg.real("D").unwrap_or(1e-3);
    let k_max = cfg.real("k_max").unwrap_or(40.0);
    let m = cfg.int("samples").unwrap_or(800) as usize;
    let rows: Vec<Vec<Cell>> = (0..m)
        .map(|j| {
            let k = k_max * j as f64 / (m - 1) as f64;
            vec![
                Cell::F(k),
                Cell::F(dispersion::w0(k, d)),
                Cell::F(dispersion::w1(k, d)),
            ]
        })
        .collect();
    write_csv(&dir.join("dispersion.csv"), &["k", "w0", "w1"], &rows)?;
    let (delta1, x1) = dispersion::delta_max(1)?;
    report.info(format!("Delta_1 = {delta1} at X = {x1}"));
    report.info(format!("k_0 = {}", dispersion::k0()));
    match dispersion::most_unstable_k(d) {
        Ok((k, w)) => report.info(format!(
            "k_m = {k}, w1(k_m) = {w}, wavelength = {}",
            2.0 * std::f64::consts::PI / k
        )),
        Err(e) => report.info(format!("u = 1: {e}")),
    }
    Ok(())
}

fn cmd_tongues(cfg: &mut RunConfig, dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let i_max = cfg.int("i_max").unwrap_or(4) as usize;
    let samples = cfg.int("samples").unwrap_or(200) as usize;
    let atlas = dispersion::TongueAtlas::build(i_max, samples)?;
    let mut rows = Vec::new();
    for c in &atlas.tongues {
        for &(d, lm, lp) in &c.samples {
            rows.push(vec![
                Cell::I(c.index as i64),
                Cell::F(d),
                Cell::F(lm),
                Cell::F(lp),
                Cell::F(c.threshold),
                Cell::F(c.peak_location),
            ]);
        }
    }
    let header = [
        "i",
        "D",
        "lambda_minus",
        "lambda_plus",
        "Delta_i",
        "delta_2i_minus_1",
    ];
    write_csv(&dir.join("tongues.csv"), &header, &rows)?;
    let ext = dispersion::delta_extrema(2 * i_max)?;
    let rows: Vec<Vec<Cell>> = ext
        .iter()
        .map(|e| vec![Cell::I(e.n as i64), Cell::F(e.location), Cell::F(e.value)])
        .collect();
    write_csv(&dir.join("extrema.csv"), &["n", "X", "Delta"], &rows)?;
    for i in 1..=i_max {
        report.info(format!("Delta_{i} = {}", dispersion::delta_max(i)?.0));
    }
    Ok(())
}

/// Positivity is judged up to round-off relative to the peak.
fn steady_checks(report: &mut Report, s: &steady::PeriodicState) {
    report.check(
        "B1-B3",
        s.min() > -f64::EPSILON * s.u_max && s.u_max > 1.0 && s.min() < 1.0,
        format!("min = {}, max = {}", s.min(), s.u_max),
    );
}

fn cmd_steady(cfg: &mut RunConfig, dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let lambda = cfg.real("lambda").unwrap_or(0.75);
    let d = cfg.real("D").unwrap_or(1e-4);
    let n = cfg.int("n").unwrap_or(0) as usize;
    let branch = cfg.int("branch").unwrap_or(0) as usize;
    if branch > 0 {
        let steps = cfg.int("steps").unwrap_or(40) as usize;
        let n = if n == 0 { 256 } else { n };
        let pts = steady::continue_branch(branch, d, steps, n)?;
        let rows: Vec<Vec<Cell>> = pts
            .iter()
            .map(|b| {
                vec![
                    Cell::F(b.lambda),
                    Cell::F(b.d),
                    Cell::F(b.alpha),
                    Cell::F(b.u_max),
                    Cell::I(b.converged as i64),
                    Cell::I(b.newton_iters as i64),
                ]
            })
            .collect();
        write_csv(
            &dir.join("branch.csv"),
            &["lambda", "D", "alpha", "u_max", "converged", "newton_iters"],
            &rows,
        )?;
        report.info(format!(
            "{} of {} points converged",
            pts.iter().filter(|b| b.converged).count(),
            pts.len()
        ));
        return Ok(());
    }
    let n = if n == 0 {
        steady::default_nodes(lambda, d)
    } else {
        n.max(64)
    };
    cfg.params.insert("n".into(), Value::Int(n as i64));
    let s = steady::solve_at(lambda, d, n, steady::Seed::WeaklyNonlinear)?;
    let (x, f) = s.full_period();
    let rows: Vec<Vec<Cell>> = x
        .iter()
        .zip(&f)
        .map(|(x, f)| vec![Cell::F(*x), Cell::F(*f)])
        .collect();
    write_csv(&dir.join("profile.csv"), &["x", "F"], &rows)?;
    report.info(format!("u_max = {}", s.u_max));
    report.info(format!("mass = {}", s.mass));
    report.info(format!("alpha = {}", s.alpha));
    report.info(format!(
        "newton iterations = {}, residual = {:e}",
        s.newton_iters, s.residual
    ));
    steady_checks(report, &s);
    Ok(())
}

fn cmd_asymptote(cfg: &mut RunConfig, dir: &Path, report: &mut Report) -> Result<(), CliError> {
    match cfg.text("problem").unwrap_or("transition") {
        "transition" => {
            let xl = cfg.real("x_left").unwrap_or(8.0);
            let xr = cfg.real("x_right").unwrap_or(6.0);
            let n = cfg.int("n").unwrap_or(4000) as usize;
            let layer = asymptote::solve_transition_layer(xl, xr, n)?;
            let rows: Vec<Vec<Cell>> = layer
                .x
                .iter()
                .zip(&layer.psi)
                .map(|(x, p)| vec![Cell::F(-x), Cell::F(*p)])
                .collect();
            write_csv(&dir.join("transition.csv"), &["xbar", "psi"], &rows)?;
            report.info(format!(
                "l* = {} (reference {})",
                layer.l,
                asymptote::L_STAR_REFERENCE
            ));
            if let Some(fit) = layer.psi_inf(0.5 * xr, xr - 0.5) {
                report.info(format!("psi_inf = {} ± {}", fit.value, fit.std_error));
            }
        }
        "spike" => {
            let lb = cfg.real("lambda_bar").unwrap_or(1.0);
            let s = asymptote::solve_spike(lb, None)?;
            let rows: Vec<Vec<Cell>> =
                s.x.iter()
                    .zip(&s.v)
                    .map(|(x, v)| vec![Cell::F(*x), Cell::F(*v)])
                    .collect();
            write_csv(&dir.join("spike.csv"), &["x", "v"], &rows)?;
            report.info(format!("v(0) = {}", s.v0));
            report.info(format!("sigma_inf = {}", s.sigma_inf));
            report.info(format!("I_tot = {}", s.i_tot));
            report.info(format!("tail rate = {:?}", s.tail_rate));
        }
        _ => {
            let lambda = cfg.real("lambda").unwrap_or(0.75);
            let i = cfg.int("i").unwrap_or(1) as usize;
            let prof = asymptote::region1_profile(i, lambda)?;
            let m = 400;
            let rows: Vec<Vec<Cell>> = (0..m)
                .map(|j| {
                    let x = 0.5 * lambda * j as f64 / (m - 1) as f64;
                    vec![Cell::F(x), Cell::F(prof.eval(x))]
                })
                .collect();
            write_csv(&dir.join("region1.csv"), &["x", "F0"], &rows)?;
            report.info(format!("F0(0) = {}", prof.amplitude));
            report.info(format!("support half-width = {}", prof.support_halfwidth));
            report.info(format!("alpha_1 = {}", prof.alpha1));
        }
    }
    Ok(())
}

fn root_rows(paths: &[travwave::ComplexRootPath]) -> Vec<Vec<Cell>> {
    paths
        .iter()
        .flat_map(|p| {
            p.samples.iter().map(move |(d, s)| {
                vec![
                    Cell::I(p.n as i64),
                    Cell::F(*d),
                    Cell::F(s.re),
                    Cell::F(s.im),
                ]
            })
        })
        .collect()
}

fn cmd_tw(cfg: &mut RunConfig, dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let d = cfg.real("D").unwrap_or(3e-3);
    let v = cfg.real_or("v", |_| 2.0 * d.sqrt());
    let prof = travwave::solve_tptw(d, v, &travwave::TwConfig::for_diffusivity(d))?;
    let rows: Vec<Vec<Cell>> = prof
        .z
        .iter()
        .zip(&prof.u)
        .map(|(z, u)| vec![Cell::F(*z), Cell::F(*u)])
        .collect();
    write_csv(&dir.join("profile.csv"), &["z", "u"], &rows)?;
    let n_max = cfg.int("n_max").unwrap_or(3) as i32;
    let grid = travwave::log_grid(
        cfg.real("d_min").unwrap_or(1e-6),
        cfg.real("d_max").unwrap_or(10.0),
        cfg.int("d_samples").unwrap_or(400) as usize,
    );
    let indices: Vec<i32> = (1..=n_max).flat_map(|n| [n, -n]).collect();
    let paths = travwave::sigma_paths(&indices, &grid)?;
    write_csv(
        &dir.join("roots.csv"),
        &["n", "D", "Re_sigma", "Im_sigma"],
        &root_rows(&paths),
    )?;
    let (sp, dp) = travwave::find_oscillation_threshold()?;
    report.info(format!("threshold: sigma_+ = {sp}, D_+ = {dp}"));
    report.info(format!(
        "tail class = {:?}{}",
        prof.tail_class,
        if prof.ambiguous { " (ambiguous)" } else { "" }
    ));
    report.info(format!(
        "rear rate a = {}, frequency b = {}",
        prof.rear_rate, prof.rear_frequency
    ));
    report.info(format!(
        "front rates = {:?}, fitted = {:?}",
        prof.front_rates, prof.fitted_front_rate
    ));
    report.info(format!("min u = {:e}", prof.min_u()));
    Ok(())
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

/// Runs one bundled reproduction, writing CSVs into `dir`.
pub fn run_repro(target: &str, dir: &Path, report: &mut Report) -> Result<(), CliError> {
    report.info(format!("target {target}"));
    match target {
        "TABLE_CONSTANTS" => repro_constants(dir, report),
        "FIG1" => repro_fig1(dir, report),
        "FIG2" => repro_fig2(dir, report),
        "FIG4" => repro_fig4(dir, report),
        "FIG5" => repro_heights(dir, report),
        "FIG6" => repro_wavelength(dir, report),
        "FIG5_1" => repro_bifurcation(dir, report),
        "FIG5_5" => repro_region1(dir, report),
        "FIG5_8" => repro_spike_family(dir, report),
        other => Err(usage(format!("unknown target '{other}'"))),
    }
}

fn repro_constants(dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let mut rows = Vec::new();
    let mut row = |name: &str, value: f64, target: f64, pass: bool| {
        rows.push(vec![
            Cell::S(name.into()),
            Cell::F(value),
            Cell::F(target),
            Cell::I(pass as i64),
        ]);
    };
    let (d1, _) = dispersion::delta_max(1)?;
    let ok = (d1 - 0.00297).abs() <= 2e-5;
    report.check("Delta_1", ok, format!("{d1}"));
    row("Delta_1", d1, 0.00297, ok);
    let k0 = dispersion::k0();
    let res = (0.5 * k0).tan() - 0.5 * k0;
    let ok =
        k0 > 2.0 * std::f64::consts::PI && k0 < 3.0 * std::f64::consts::PI && res.abs() < 1e-10;
    report.check("k_0", ok, format!("{k0}, residual {res:e}"));
    row("k_0", k0, f64::NAN, ok);
    let layer = asymptote::solve_transition_layer(8.0, 6.0, 4000)?;
    let ok = rel(layer.l, asymptote::L_STAR_REFERENCE) < 0.01;
    report.check(
        "l*",
        ok,
        format!("{} vs {}", layer.l, asymptote::L_STAR_REFERENCE),
    );
    row("l_star", layer.l, asymptote::L_STAR_REFERENCE, ok);
    let spike = asymptote::solve_spike(0.25, None)?;
    let dev = asymptote::sech2_deviation(&spike);
    report.check(
        "sech2 spike (0.25)",
        dev <= 0.05,
        format!("relative max-norm deviation {dev}"),
    );
    row("I_tilde", asymptote::sech2_eigenvalue(), 1.0 / 72.0, true);
    row("v_tilde_0", asymptote::sech2_limit(0.0), 1.0 / 48.0, true);
    row("spike_deviation", dev, 0.05, dev <= 0.05);
    let (sp, dp) = travwave::find_oscillation_threshold()?;
    let ok = (sp - 4.437).abs() <= 1e-3 && (dp - 2.824e-2).abs() <= 1e-3;
    report.check("(sigma_+, D_+)", ok, format!("({sp}, {dp})"));
    row("sigma_plus", sp, 4.437, ok);
    row("D_plus", dp, 2.824e-2, ok);
    write_csv(
        &dir.join("constants.csv"),
        &["name", "value", "target", "pass"],
        &rows,
    )?;
    Ok(())
}

const MODERATE_D: [f64; 3] = [0.001, 0.002, 0.003];

fn moderate_runs() -> Result<Vec<(f64, EvolveOutput)>, CliError> {
    MODERATE_D
        .par_iter()
        .map(|&d| {
            let t_end = 4.5 / d.sqrt();
            let cfg = EvolveConfig::new(d, 10.0, 1000, t_end, Scheme::UForm);
            Ok((d, evolve::run(&InitialData::compact_bump(0.01)?, &cfg)?))
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(CliError::from)
}

fn repro_fig1(dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let runs = moderate_runs()?;
    for (d, out) in &runs {
        let x = out.final_field.grid.nodes();
        let u = out.final_field.u_values();
        let front = *out.diagnostics.front_position.last().unwrap_or(&0.0);
        let tw =
            travwave::solve_tptw(*d, 2.0 * d.sqrt(), &travwave::TwConfig::for_diffusivity(*d))?;
        let rows: Vec<Vec<Cell>> = x
            .iter()
            .zip(&u)
            .map(|(x, u)| vec![Cell::F(*x), Cell::F(*u), Cell::F(tw.eval(x - front))])
            .collect();
        write_csv(
            &dir.join(format!("profile_D{d}.csv")),
            &["x", "u", "u_tw"],
            &rows,
        )?;
        let dev = front_shape_deviation(&x, &u, front, &tw);
        if *d == 0.003 {
            report.check(
                "TW vs evolution, D = 0.003",
                dev < 0.05,
                format!("max-norm {dev}"),
            );
        } else {
            report.info(format!("TW vs evolution, D = {d}: max-norm {dev}"));
        }
    }
    Ok(())
}

/// Max-norm between an evolved profile and the wave aligned at `u = ½`,
/// over `[front − 2, front + 1]`.
pub fn front_shape_deviation(x: &[f64], u: &[f64], front: f64, tw: &travwave::TwProfile) -> f64 {
    x.iter()
        .zip(u)
        .filter(|(x, _)| **x >= front - 2.0 && **x <= front + 1.0)
        .map(|(x, u)| (u - tw.eval(x - front)).abs())
        .fold(0.0, f64::max)
}

fn repro_fig2(dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let runs = moderate_runs()?;
    let mut rows = Vec::new();
    for (d, out) in &runs {
        let diag = &out.diagnostics;
        for (t, f) in diag.times.iter().zip(&diag.front_position) {
            rows.push(vec![Cell::F(*d), Cell::F(*t), Cell::F(*f)]);
        }
        let t_end = *diag.times.last().unwrap_or(&0.0);
        let speed = evolve::front_speed(diag, 0.5 * t_end, t_end).unwrap_or(f64::NAN);
        let target = 2.0 * d.sqrt();
        report.check(
            &format!("front speed, D = {d}"),
            rel(speed, target) <= 0.05,
            format!("{speed} vs {target}"),
        );
    }
    write_csv(&dir.join("fronts.csv"), &["D", "t", "front"], &rows)?;
    Ok(())
}

/// W-form run from the Gaussian preset, sized so the front nears the domain edge.
pub fn small_d_run(d: f64) -> Result<(EvolveConfig, EvolveOutput), Error> {
    let length = 40.0;
    let n = if d < 3e-5 { 16384 } else { 8192 };
    let t_end = 0.45 * length / (2.0 * d.sqrt());
    let mut cfg = EvolveConfig::new(d, length, n, t_end, Scheme::WForm);
    cfg.output_interval = t_end / 280.0;
    let out = evolve::run(&InitialData::gaussian(0.01, 0.1)?, &cfg)?;
    Ok((cfg, out))
}

/// Largest relative gap between the front and `x_f(t)` over the final third.
pub fn predictor_deviation(
    diag: &evolve::EvolveDiagnostics,
    d: f64,
    t_end: f64,
) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for (t, f) in diag.times.iter().zip(&diag.front_position) {
        if *t >= 2.0 * t_end / 3.0 {
            worst = worst.max(rel(*f, evolve::front_predictor_xf(*t, 0.01, 0.1, d)?));
        }
    }
    Ok(worst)
}

fn repro_fig4(dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let runs: Vec<(f64, EvolveConfig, EvolveOutput)> = [1e-4, 1e-5]
        .par_iter()
        .map(|&d| small_d_run(d).map(|(c, o)| (d, c, o)))
        .collect::<Result<_, Error>>()?;
    let mut rows = Vec::new();
    for (d, cfg, out) in &runs {
        let diag = &out.diagnostics;
        for (t, f) in diag.times.iter().zip(&diag.front_position) {
            let xf = evolve::front_predictor_xf(*t, 0.01, 0.1, *d).ok();
            rows.push(vec![Cell::F(*d), Cell::F(*t), Cell::F(*f), xf.into()]);
        }
        let dev = predictor_deviation(diag, *d, cfg.t_end)?;
        report.check(
            &format!("front vs x_f, D = {d}"),
            dev <= 0.03,
            format!("largest relative gap over final third {dev}"),
        );
    }
    write_csv(&dir.join("fronts.csv"), &["D", "t", "front", "x_f"], &rows)?;
    Ok(())
}

fn trailing_runs() -> Result<Vec<(f64, EvolveOutput)>, CliError> {
    let moderate = {
        let d = 1e-3;
        let cfg = EvolveConfig::new(d, 10.0, 1000, 4.5 / d.sqrt(), Scheme::UForm);
        (d, evolve::run(&InitialData::compact_bump(0.01)?, &cfg)?)
    };
    let small: Vec<(f64, EvolveOutput)> = [1e-4, 1e-5]
        .par_iter()
        .map(|&d| small_d_run(d).map(|(_, o)| (d, o)))
        .collect::<Result<_, Error>>()?;
    Ok(std::iter::once(moderate).chain(small).collect())
}

/// Largest value behind the front, away from the origin.
fn trailing_height(out: &EvolveOutput) -> f64 {
    let x = out.final_field.grid.nodes();
    let u = out.final_field.u_values();
    let front = *out.diagnostics.front_position.last().unwrap_or(&0.0);
    x.iter()
        .zip(&u)
        .filter(|(x, _)| **x >= 2.0 && **x <= front - 2.0)
        .map(|(_, u)| *u)
        .fold(0.0, f64::max)
}

fn repro_heights(dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let runs = trailing_runs()?;
    let mut rows = Vec::new();
    for (d, out) in &runs {
        let h = trailing_height(out);
        rows.push(vec![
            Cell::F(*d),
            Cell::F(h),
            Cell::F(1.0 / h),
            Cell::F(h * d.sqrt()),
        ]);
        report.info(format!(
            "D = {d}: u_max = {h}, u_max sqrt(D) = {}",
            h * d.sqrt()
        ));
    }
    write_csv(
        &dir.join("heights.csv"),
        &["D", "u_max", "inverse_height", "u_max_sqrt_D"],
        &rows,
    )?;
    Ok(())
}

fn repro_wavelength(dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let runs = trailing_runs()?;
    let mut rows = Vec::new();
    let mut wl = Vec::new();
    for (d, out) in &runs {
        let w = out.diagnostics.wavelength.last().copied().flatten();
        let lin = dispersion::most_unstable_k(*d)
            .ok()
            .map(|(k, _)| 2.0 * std::f64::consts::PI / k);
        rows.push(vec![Cell::F(*d), w.into(), lin.into()]);
        wl.push((*d, w));
    }
    write_csv(
        &dir.join("wavelength.csv"),
        &["D", "wavelength", "most_unstable_wavelength"],
        &rows,
    )?;
    let w3 = wl[0].1.unwrap_or(f64::NAN);
    report.check(
        "wavelength, D = 0.001",
        (w3 - 0.7).abs() <= 0.1,
        format!("{w3}"),
    );
    let w5 = wl[2].1.unwrap_or(f64::NAN);
    report.check(
        "wavelength, D = 1e-5",
        (0.5..=0.62).contains(&w5) && w5 < w3,
        format!("{w5}"),
    );
    Ok(())
}

fn repro_bifurcation(dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let ds = [2e-3, 1e-3, 3e-4, 1e-4];
    let branches: Vec<(f64, Vec<steady::BranchPoint>)> = ds
        .par_iter()
        .map(|&d| steady::continue_branch(1, d, 40, 256).map(|b| (d, b)))
        .collect::<Result<_, Error>>()?;
    let mut rows = Vec::new();
    let mut peaks = Vec::new();
    for (d, pts) in &branches {
        for b in pts {
            rows.push(vec![
                Cell::F(*d),
                Cell::F(b.lambda),
                Cell::F(b.alpha),
                Cell::F(b.u_max),
                Cell::I(b.converged as i64),
            ]);
        }
        let peak = pts
            .iter()
            .filter(|b| b.converged)
            .map(|b| b.alpha)
            .fold(0.0, f64::max);
        report.info(format!("D = {d}: max alpha = {peak}"));
        peaks.push(peak);
    }
    write_csv(
        &dir.join("branches.csv"),
        &["D", "lambda", "alpha", "u_max", "converged"],
        &rows,
    )?;
    report.check(
        "max alpha increases as D decreases",
        peaks.windows(2).all(|w| w[1] > w[0]),
        format!("{peaks:?}"),
    );
    Ok(())
}

fn repro_region1(dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let lambda = 0.75;
    let ds = [1e-3, 1e-4, 1e-5, 1e-6];
    let states: Vec<steady::PeriodicState> = ds
        .par_iter()
        .map(|&d| {
            steady::solve_at(
                lambda,
                d,
                steady::default_nodes(lambda, d),
                steady::Seed::WeaklyNonlinear,
            )
        })
        .collect::<Result<_, Error>>()?;
    let prof = asymptote::region1_profile(1, lambda)?;
    let mut rows = Vec::new();
    for s in &states {
        for (x, f) in s.nodes().iter().zip(&s.half_profile) {
            rows.push(vec![
                Cell::F(s.d),
                Cell::F(*x),
                Cell::F(*f),
                Cell::F(prof.eval(*x)),
            ]);
        }
        steady_checks(report, s);
    }
    write_csv(&dir.join("profiles.csv"), &["D", "x", "F", "F0"], &rows)?;
    let s = &states[3];
    report.check(
        "u_max at D = 1e-6",
        rel(s.u_max, prof.amplitude) <= 0.03,
        format!("{} vs {}", s.u_max, prof.amplitude),
    );
    let target = 1.0 - std::f64::consts::PI.powi(2) * s.d / (lambda - 0.5).powi(2);
    report.check(
        "period mass at D = 1e-6",
        (s.mass - target).abs() <= 5e-5,
        format!("{} vs {target}", s.mass),
    );
    Ok(())
}

fn repro_spike_family(dir: &Path, report: &mut Report) -> Result<(), CliError> {
    let lbs = [0.5, 1.0, 2.0, 4.0, 5.8, 8.0, 10.0, 50.0, 100.0];
    let fam = asymptote::spike_family(&lbs)?;
    let rows: Vec<Vec<Cell>> = fam
        .iter()
        .map(|(lb, v0)| {
            vec![
                Cell::F(*lb),
                Cell::F(*v0),
                Cell::F(lb / 48.0),
                Cell::F(std::f64::consts::PI / (2.0 * lb)),
            ]
        })
        .collect();
    write_csv(
        &dir.join("spike_heights.csv"),
        &["lambda_bar", "v0", "small_asymptote", "large_asymptote"],
        &rows,
    )?;
    let peak = fam
        .iter()
        .cloned()
        .fold((0.0, 0.0), |b, p| if p.1 > b.1 { p } else { b });
    let rises = fam
        .iter()
        .take_while(|p| p.0 <= peak.0)
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[1].1 > w[0].1);
    let falls = fam
        .iter()
        .skip_while(|p| p.0 < peak.0)
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[1].1 < w[0].1);
    report.check(
        "single peak in [4, 8]",
        rises && falls && (4.0..=8.0).contains(&peak.0),
        format!("peak v0 = {} at lambda_bar = {}", peak.1, peak.0),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn documented_evolve_flags() {
        let c = parse_config(&args("evolve --D 0.001 --scheme u --L 10 --n 1000")).unwrap();
        assert_eq!(c.real("D"), Some(0.001));
        assert_eq!(c.int("n"), Some(1000));
        assert_eq!(c.text("scheme"), Some("u"));
    }

    #[test]
    fn negative_diffusivity_is_usage_error() {
        let e = parse_config(&args("evolve --D -1")).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(matches!(
            parse_config(&args("steady --mu 3")),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            parse_config(&args("fly")),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, 6.02e23, -2.5e-300, 5e-324] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }
}
