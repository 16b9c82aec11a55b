//! Command-line surface. Every command renders to a `String`; `main` only
//! prints it and maps errors to exit codes.

use crate::asymptotics::AsymptoticPoint;
use crate::classes::{ClassCountTable, Route};
use crate::decimal::{self, format_exact_ratio, format_significant, GRID_DIGITS, HIGH_DIGITS};
use crate::error::Error;
use crate::oracle::{self, EnumerationCaps};
use crate::spectrum::{self, code_triples_one_based, LengthScheme};
use crate::walks::{closed_walks_complete, is_prime, GraphSpec, OrbitCounting, OrbitCounts};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::Value;
use std::fmt::Write as _;

#[derive(Debug, Parser)]
#[command(name = "orbit-degeneracy", version, about = "Periodic-orbit degeneracy classes on complete metric graphs")]
pub struct Cli {
    /// Output format. Defaults to csv for count/grid/fig3 and json lines for enumerate/spectrum.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for random bond lengths.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest period accepted by brute-force enumeration.
    #[arg(long, global = true, default_value_t = 12)]
    pub n_cap: usize,

    /// Largest vertex count accepted by brute-force enumeration.
    #[arg(long, global = true, default_value_t = 6)]
    pub v_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// A single exact value.
    Count(CountArgs),
    /// A table over an (n, V) rectangle.
    Grid(GridArgs),
    /// Exact against asymptotic paired class counts at even n.
    Fig3(Fig3Args),
    /// Brute-force listing of the degeneracy classes at one period.
    Enumerate(EnumerateArgs),
    /// The degenerate length spectrum up to a period.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Classes,
    Orbits,
    Walks,
    #[value(alias = "mean_degeneracy")]
    MeanDegeneracy,
    #[value(alias = "log10_mean_degeneracy")]
    Log10MeanDegeneracy,
    #[value(alias = "asymptotic_ratio")]
    AsymptoticRatio,
}

impl Quantity {
    fn column(self) -> &'static str {
        match self {
            Quantity::Classes => "classes",
            Quantity::Orbits => "orbits",
            Quantity::Walks => "walks",
            Quantity::MeanDegeneracy => "mean_degeneracy",
            Quantity::Log10MeanDegeneracy => "log10_mean_degeneracy",
            Quantity::AsymptoticRatio => "asymptotic_ratio",
        }
    }

    fn uses_orbits(self) -> bool {
        matches!(
            self,
            Quantity::Orbits | Quantity::MeanDegeneracy | Quantity::Log10MeanDegeneracy
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Log,
    Recursive,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Log => Route::Log,
            RouteArg::Recursive => Route::Recursive,
        }
    }
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[arg(long)]
    pub n: u32,
    #[arg(long = "V")]
    pub v: u32,
    /// Use N(n, V)/n for the orbit count at every n.
    #[arg(long)]
    pub naive_orbits: bool,
    #[arg(long, value_enum, default_value = "recursive")]
    pub route: RouteArg,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 2)]
    pub n_min: u32,
    #[arg(long)]
    pub n_max: u32,
    #[arg(long = "V-min", default_value_t = 2)]
    pub v_min: u32,
    #[arg(long = "V-max")]
    pub v_max: u32,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "classes,orbits,mean-degeneracy")]
    pub quantities: Vec<Quantity>,
    #[arg(long)]
    pub naive_orbits: bool,
}

#[derive(Debug, Args)]
pub struct Fig3Args {
    #[arg(long = "V-list", value_delimiter = ',', default_value = "3,4")]
    pub v_list: Vec<u32>,
    #[arg(long, default_value_t = 2)]
    pub n_min: u32,
    #[arg(long)]
    pub n_max: u32,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "V")]
    pub v: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    SqrtPrimes,
    UniformRandom,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long = "V")]
    pub v: usize,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "sqrt-primes")]
    pub scheme: SchemeArg,
}

/// A failed command: message plus process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDEFINED: i32 = 3;
pub const EXIT_CAP: i32 = 4;

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::MissingBondLength(..) => EXIT_USAGE,
            Error::UndefinedDegeneracy { .. } => EXIT_UNDEFINED,
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Consistency(_) => 1,
        };
        Self { code, message: e.to_string() }
    }
}

type CliResult = std::result::Result<String, CliError>;

pub fn run(cli: &Cli) -> CliResult {
    let caps = EnumerationCaps { n_cap: cli.n_cap, v_cap: cli.v_cap };
    match &cli.command {
        Command::Count(a) => cmd_count(a, cli.format.unwrap_or(Format::Csv)),
        Command::Grid(a) => cmd_grid(a, cli.format.unwrap_or(Format::Csv)),
        Command::Fig3(a) => cmd_fig3(a, cli.format.unwrap_or(Format::Csv)),
        Command::Enumerate(a) => cmd_enumerate(a, cli.format.unwrap_or(Format::Json), &caps),
        Command::Spectrum(a) => {
            cmd_spectrum(a, cli.format.unwrap_or(Format::Json), cli.seed, &caps)
        }
    }
}

/// Ordered fields of one output record.
type Record = Vec<(&'static str, Value)>;

fn text(s: impl Into<String>) -> Value {
    Value::String(s.into())
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(records: &[Record], header: &[&str], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for r in records {
                let row: Vec<String> = r.iter().map(|(_, v)| csv_cell(v)).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        Format::Json => {
            for r in records {
                let fields: Vec<String> = r
                    .iter()
                    .map(|(k, v)| format!("{}:{}", Value::String((*k).to_string()), v))
                    .collect();
                let _ = writeln!(out, "{{{}}}", fields.join(","));
            }
        }
    }
    out
}

fn exact_string(x: &BigRational) -> String {
    if x.is_integer() { x.numer().to_string() } else { format_exact_ratio(x) }
}

fn mode(naive: bool) -> OrbitCounting {
    if naive { OrbitCounting::Naive } else { OrbitCounting::Exact }
}

/// Single-value report: `quantity,n,V,exact,decimal,extension`.
pub fn cmd_count(a: &CountArgs, format: Format) -> CliResult {
    let (n, v) = (a.n, a.v);
    if n == 0 || v == 0 {
        return Err(CliError::usage(format!("need n >= 1 and V >= 1, got n={n}, V={v}")));
    }
    let orbit_mode = mode(a.naive_orbits);
    let extension = a.quantity.uses_orbits() && orbit_mode == OrbitCounting::Exact && !is_prime(n);
    let (exact, value) = match a.quantity {
        Quantity::Walks => {
            let w = closed_walks_complete(n, v);
            (w.to_string(), BigRational::from_integer(w))
        }
        Quantity::Classes => {
            let t = ClassCountTable::build(n as usize, v as usize, a.route.into())?;
            let c = t.count_classes(n as usize, v as usize)?;
            (c.to_string(), BigRational::from_integer(c))
        }
        Quantity::Orbits => {
            let t = ClassCountTable::build(n as usize, v as usize, a.route.into())?;
            let o = OrbitCounts::from_table(&t, n, v, orbit_mode)?;
            (exact_string(&o.orbits), o.orbits)
        }
        Quantity::MeanDegeneracy | Quantity::Log10MeanDegeneracy => {
            let t = ClassCountTable::build(n as usize, v as usize, a.route.into())?;
            let o = OrbitCounts::from_table(&t, n, v, orbit_mode)?;
            let d = o
                .mean_degeneracy
                .ok_or(Error::UndefinedDegeneracy { n: n as u64, v: v as u64 })?;
            if a.quantity == Quantity::MeanDegeneracy {
                (format_exact_ratio(&d), d)
            } else {
                let l = log10_rational(&d);
                (format_significant(&l, GRID_DIGITS), l)
            }
        }
        Quantity::AsymptoticRatio => {
            let p = AsymptoticPoint::compute(n as u64, v as u64)?;
            (format_exact_ratio(&p.ratio), p.ratio)
        }
    };
    let digits = if a.quantity == Quantity::AsymptoticRatio { HIGH_DIGITS } else { GRID_DIGITS };
    let record: Record = vec![
        ("quantity", text(a.quantity.column())),
        ("n", Value::from(n)),
        ("V", Value::from(v)),
        ("exact", text(exact)),
        ("decimal", text(format_significant(&value, digits))),
        ("extension", Value::Bool(extension)),
    ];
    Ok(render(&[record], &["quantity", "n", "V", "exact", "decimal", "extension"], format))
}

fn log10_rational(d: &BigRational) -> BigRational {
    let l = decimal::log10(d).expect("mean degeneracy is positive");
    BigRational::from_float(l).expect("finite")
}

fn grid_cell(
    table: &ClassCountTable,
    n: u32,
    v: u32,
    quantities: &[Quantity],
    orbit_mode: OrbitCounting,
) -> std::result::Result<Record, Error> {
    let counts = OrbitCounts::from_table(table, n, v, orbit_mode)?;
    let mut record: Record = vec![("n", Value::from(n)), ("V", Value::from(v))];
    for &q in quantities {
        let value = match q {
            Quantity::Classes => text(counts.classes.to_string()),
            Quantity::Orbits => text(exact_string(&counts.orbits)),
            Quantity::Walks => text(counts.walks.to_string()),
            Quantity::MeanDegeneracy => counts
                .mean_degeneracy
                .as_ref()
                .map_or(Value::Null, |d| text(format_significant(d, GRID_DIGITS))),
            Quantity::Log10MeanDegeneracy => counts.mean_degeneracy.as_ref().map_or(Value::Null, |d| {
                text(format_significant(&log10_rational(d), GRID_DIGITS))
            }),
            Quantity::AsymptoticRatio => {
                if n % 2 == 0 {
                    let p = AsymptoticPoint::from_table(table, n as u64, v as u64)?;
                    text(format_significant(&p.ratio, GRID_DIGITS))
                } else {
                    Value::Null
                }
            }
        };
        record.push((q.column(), value));
    }
    record.push(("extension", Value::Bool(counts.extension)));
    Ok(record)
}

/// One row per `(n, V)`, `n` outer, `V` inner.
pub fn cmd_grid(a: &GridArgs, format: Format) -> CliResult {
    if a.n_min < 2 || a.v_min < 2 || a.n_min > a.n_max || a.v_min > a.v_max {
        return Err(CliError::usage(format!(
            "need 2 <= n-min <= n-max and 2 <= V-min <= V-max, got n {}..{}, V {}..{}",
            a.n_min, a.n_max, a.v_min, a.v_max
        )));
    }
    if a.quantities.is_empty() {
        return Err(CliError::usage("no quantities requested"));
    }
    let needs_next = a.quantities.contains(&Quantity::AsymptoticRatio);
    let table = ClassCountTable::build(
        a.n_max as usize + needs_next as usize,
        a.v_max as usize,
        Route::Recursive,
    )?;
    let orbit_mode = mode(a.naive_orbits);
    let cells: Vec<(u32, u32)> = (a.n_min..=a.n_max)
        .flat_map(|n| (a.v_min..=a.v_max).map(move |v| (n, v)))
        .collect();
    let records = cells
        .par_iter()
        .map(|&(n, v)| grid_cell(&table, n, v, &a.quantities, orbit_mode))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut header = vec!["n", "V"];
    header.extend(a.quantities.iter().map(|q| q.column()));
    header.push("extension");
    Ok(render(&records, &header, format))
}

/// `V,n,exact_pair,asymptotic_pair,ratio` for even `n`.
pub fn cmd_fig3(a: &Fig3Args, format: Format) -> CliResult {
    let n_min = a.n_min + a.n_min % 2;
    if a.v_list.is_empty() || a.v_list.iter().any(|&v| v < 2) || n_min < 2 || n_min > a.n_max {
        return Err(CliError::usage("need V >= 2 for every listed V and an even n in n-min..=n-max"));
    }
    let v_max = *a.v_list.iter().max().expect("nonempty");
    let table = ClassCountTable::build(a.n_max as usize + 1, v_max as usize, Route::Recursive)?;
    let mut records = Vec::new();
    for &v in &a.v_list {
        for n in (n_min..=a.n_max).step_by(2) {
            let p = AsymptoticPoint::from_table(&table, n as u64, v as u64)?;
            records.push(vec![
                ("V", Value::from(v)),
                ("n", Value::from(n)),
                ("exact_pair", text(p.exact_pair.to_string())),
                ("asymptotic_pair", text(format_significant(&p.asymptotic_pair, HIGH_DIGITS))),
                ("ratio", text(format_significant(&p.ratio, HIGH_DIGITS))),
            ]);
        }
    }
    Ok(render(&records, &["V", "n", "exact_pair", "asymptotic_pair", "ratio"], format))
}

fn join_vertices(vs: &[usize]) -> String {
    vs.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

/// Oracle listing of the classes at one period on `K_V`, sorted by code.
pub fn cmd_enumerate(a: &EnumerateArgs, format: Format, caps: &EnumerationCaps) -> CliResult {
    if a.v < 2 {
        return Err(CliError::usage(format!("need V >= 2, got {}", a.v)));
    }
    let orbits = oracle::enumerate_orbits(&GraphSpec::complete(a.v), a.n, caps)?;
    let records: Vec<Record> = oracle::group_with_examples(&orbits)
        .into_iter()
        .map(|(code, group)| {
            let triples = code_triples_one_based(&code);
            let (code_value, orbit_value) = match format {
                Format::Json => (
                    serde_json::to_value(&triples).expect("serializable"),
                    serde_json::to_value(
                        group.example.vertices().iter().map(|x| x + 1).collect::<Vec<_>>(),
                    )
                    .expect("serializable"),
                ),
                Format::Csv => (
                    text(
                        triples
                            .iter()
                            .map(|[i, j, q]| format!("{i}-{j}:{q}"))
                            .collect::<Vec<_>>()
                            .join(" "),
                    ),
                    text(join_vertices(group.example.vertices())),
                ),
            };
            vec![
                ("period", Value::from(a.n)),
                ("code", code_value),
                ("degeneracy", Value::from(group.degeneracy)),
                ("example_orbit", orbit_value),
            ]
        })
        .collect();
    Ok(render(&records, &["period", "code", "degeneracy", "example_orbit"], format))
}

pub fn cmd_spectrum(a: &SpectrumArgs, format: Format, seed: u64, caps: &EnumerationCaps) -> CliResult {
    let scheme = match a.scheme {
        SchemeArg::SqrtPrimes => LengthScheme::SqrtPrimes,
        SchemeArg::UniformRandom => LengthScheme::UniformRandom { seed },
    };
    caps.check(a.n_max, a.v)?;
    let lengths = spectrum::default_lengths(a.v, scheme)?;
    let entries = spectrum::build_spectrum(&GraphSpec::complete(a.v), a.n_max, &lengths, caps)?;
    Ok(match format {
        Format::Json => spectrum::to_json_lines(&entries),
        Format::Csv => spectrum::to_csv(&entries),
    })
}
