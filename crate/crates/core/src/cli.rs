//! Command-line surface. Output goes to a caller-supplied writer so the same
//! code drives the binary and in-process tests.
//!
//! Exit codes: 0 success, 1 a verification or expectation failed, 2 usage
//! or input error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::characters::{unit_group, CharacterZi, RationalCharacter};
use crate::cyclotomic::Cyclo;
use crate::gaussian::{factor, GaussianInt};
use crate::hecke::{parse_eigenvalue_json, EigenvalueTable};
use crate::lfun::{
    d_star_value, star_prefactor, z_value, CompletionSeries, InnerProductSequence, LFunctionSpec,
};
use crate::series::{dedekind_lattice, l_series, TruncatedSeries};
use crate::verify::{verify_all, Corruption, TwoAdicReading, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "hermitian-lfun",
    version,
    about = "Twisted degree-6 L-functions over Q(i): arithmetic, series and exact identity checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    output: Option<OutputFormat>,
    /// Number of Dirichlet coefficients M.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Largest prime P in truncated Euler products.
    #[arg(long, global = true)]
    prime_cutoff: Option<u64>,
    /// JSON file with default settings; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct CharacterArgs {
    /// Modulus N of the character on Z[i]/N.
    #[arg(long)]
    modulus: Option<u64>,
    /// Character index as listed by `characters`.
    #[arg(long)]
    character: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    /// Riemann zeta.
    Zeta,
    /// `L(s, χ)` for χ restricted to Z.
    Lchi,
    /// `L(s, θχ)`.
    Ltheta,
    /// `L(s, χ²)`.
    Lsquare,
    /// Quarter lattice sum for `χχ̃`.
    Zetak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalKind {
    Zeta,
    Lchi,
    Zetak,
    Zstar,
    Dstar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReadingArg {
    Corrected,
    SquaredCharacter,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor a Gaussian integer such as `5`, `3+4i`, `-2i`.
    Factor {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// List the characters mod N with their generator exponents.
    Characters {
        #[command(flatten)]
        chi: CharacterArgs,
        /// Dump the full value table of one character instead.
        #[arg(long)]
        table: bool,
    },
    /// Export Dirichlet coefficients (CSV: n,re,im; JSON: exact).
    Coeffs {
        #[arg(long, value_enum, default_value = "zeta")]
        what: SeriesKind,
        #[command(flatten)]
        chi: CharacterArgs,
    },
    /// Run every exact identity check for every character mod N.
    Verify {
        #[arg(long)]
        modulus: Option<u64>,
        /// Comma-separated weights for the local checks (default 3..=weight).
        #[arg(long)]
        weights: Option<String>,
        /// Comma-separated primes for the local checks; empty for none.
        #[arg(long)]
        primes: Option<String>,
        #[arg(long, value_enum, default_value = "corrected")]
        reading: ReadingArg,
        /// Perturb the Euler factor at `p:degree` (self-test).
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
    /// Evaluate a series or the completed functions at `s`.
    Eval {
        #[arg(long, value_enum)]
        what: EvalKind,
        /// `re,im` or `re`.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[command(flatten)]
        chi: CharacterArgs,
        #[arg(long)]
        weight: Option<i64>,
        /// Eigenvalue JSON for `zstar`.
        #[arg(long)]
        eigenvalues: Option<PathBuf>,
        /// Inner-product CSV (`m,re,im`) for `dstar`.
        #[arg(long)]
        inner_products: Option<PathBuf>,
        /// Exit 1 unless the value is within tolerance plus the error bound.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
    /// The completion prefactor multiplying the truncated L-function.
    Prefactor {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[command(flatten)]
        chi: CharacterArgs,
        #[arg(long)]
        weight: Option<i64>,
    },
}

/// Settings read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    bound: Option<usize>,
    prime_cutoff: Option<u64>,
    modulus: Option<u64>,
    character: Option<usize>,
    weight: Option<i64>,
    output: Option<OutputFormat>,
    eigenvalues: Option<PathBuf>,
    inner_products: Option<PathBuf>,
    tolerance: Option<f64>,
}

/// Resolved settings: flags over config file over defaults.
#[derive(Debug, Clone)]
pub struct Config {
    pub bound: usize,
    pub prime_cutoff: u64,
    pub modulus: u64,
    pub character: usize,
    pub weight: i64,
    pub output: OutputFormat,
    pub eigenvalues: Option<PathBuf>,
    pub inner_products: Option<PathBuf>,
    pub tolerance: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bound: 100_000,
            prime_cutoff: 10_000,
            modulus: 1,
            character: 0,
            weight: 12,
            output: OutputFormat::Json,
            eigenvalues: None,
            inner_products: None,
            tolerance: 1e-9,
        }
    }
}

impl Config {
    fn load(cli: &Cli) -> Result<Config> {
        let file = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                serde_json::from_str::<ConfigFile>(&text)
                    .with_context(|| format!("parsing {}", path.display()))?
            }
            None => ConfigFile::default(),
        };
        let d = Config::default();
        let cfg = Config {
            bound: cli.bound.or(file.bound).unwrap_or(d.bound),
            prime_cutoff: cli
                .prime_cutoff
                .or(file.prime_cutoff)
                .unwrap_or(d.prime_cutoff),
            modulus: file.modulus.unwrap_or(d.modulus),
            character: file.character.unwrap_or(d.character),
            weight: file.weight.unwrap_or(d.weight),
            output: cli.output.or(file.output).unwrap_or(d.output),
            eigenvalues: file.eigenvalues,
            inner_products: file.inner_products,
            tolerance: file.tolerance.unwrap_or(d.tolerance),
        };
        if cfg.bound == 0 {
            bail!("bound must be positive");
        }
        if cfg.prime_cutoff == 0 {
            bail!("prime cutoff must be positive");
        }
        if cfg.modulus == 0 {
            bail!("modulus must be positive");
        }
        if cfg.tolerance.is_nan() || cfg.tolerance < 0.0 {
            bail!("tolerance must be non-negative");
        }
        Ok(cfg)
    }

    fn with_character(&self, args: &CharacterArgs) -> Config {
        let mut c = self.clone();
        if let Some(n) = args.modulus {
            c.modulus = n;
        }
        if let Some(i) = args.character {
            c.character = i;
        }
        c
    }

    fn resolve_character(&self) -> Result<CharacterZi> {
        if self.modulus == 0 {
            bail!("modulus must be positive");
        }
        Ok(unit_group(self.modulus)?.character(self.character)?)
    }
}

enum Failure {
    Usage(anyhow::Error),
    Failed,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parse `args` (including the program name) and run, writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    // commands write into a buffer so the work can move onto a sized pool
    let mut buf = Vec::new();
    let result = match cli.threads {
        Some(0) => Err(Failure::Usage(anyhow!("--threads must be positive"))),
        Some(n) => with_threads(n, || dispatch(&cli, &mut buf)),
        None => dispatch(&cli, &mut buf),
    };
    if out.write_all(&buf).is_err() {
        return EXIT_USAGE;
    }
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Failed) => EXIT_FAILED,
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

#[cfg(feature = "parallel")]
fn with_threads(n: usize, f: impl FnOnce() -> CmdResult + Send) -> CmdResult {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Failure::Usage(anyhow!("thread pool: {e}")))?;
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn with_threads(_n: usize, f: impl FnOnce() -> CmdResult) -> CmdResult {
    f()
}

/// Entry point for the binary.
pub fn run_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    code
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let cfg = Config::load(cli)?;
    match &cli.command {
        Command::Factor { value } => cmd_factor(&cfg, value, out),
        Command::Characters { chi, table } => cmd_characters(&cfg.with_character(chi), *table, out),
        Command::Coeffs { what, chi } => cmd_coeffs(&cfg.with_character(chi), *what, out),
        Command::Verify {
            modulus,
            weights,
            primes,
            reading,
            corrupt,
        } => {
            let mut c = cfg.clone();
            if let Some(n) = modulus {
                c.modulus = *n;
            }
            let weights = weights.as_deref().map(parse_list::<i64>).transpose()?;
            let primes = primes.as_deref().map(parse_list::<u64>).transpose()?;
            cmd_verify(&c, weights, primes, *reading, corrupt.as_deref(), out)
        }
        Command::Eval {
            what,
            s,
            chi,
            weight,
            eigenvalues,
            inner_products,
            expect,
        } => {
            let mut c = cfg.with_character(chi);
            if let Some(k) = weight {
                c.weight = *k;
            }
            if eigenvalues.is_some() {
                c.eigenvalues = eigenvalues.clone();
            }
            if inner_products.is_some() {
                c.inner_products = inner_products.clone();
            }
            cmd_eval(&c, *what, s, expect.as_deref(), out)
        }
        Command::Prefactor { s, chi, weight } => {
            let mut c = cfg.with_character(chi);
            if let Some(k) = weight {
                c.weight = *k;
            }
            cmd_prefactor(&c, s, out)
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CmdResult {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Usage(anyhow!("writing output: {e}")))
}

fn emit_json(out: &mut dyn Write, v: &Value) -> CmdResult {
    emit(out, &format!("{v}\n"))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn complex(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn parse_complex(text: &str) -> Result<Complex64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |x: &str| {
        x.parse::<f64>()
            .with_context(|| format!("bad number {x:?} in {text:?}"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => bail!("expected `re,im` or `re`, got {text:?}"),
    }
}

fn cmd_factor(cfg: &Config, value: &str, out: &mut dyn Write) -> CmdResult {
    let z: GaussianInt = value.parse().map_err(anyhow::Error::from)?;
    let f = factor(&z).map_err(anyhow::Error::from)?;
    match cfg.output {
        OutputFormat::Json => {
            let primes: Vec<Value> = f
                .primes
                .iter()
                .map(|(p, e)| json!({"prime": p.to_string(), "exponent": e}))
                .collect();
            emit_json(
                out,
                &json!({"input": z.to_string(), "unit": f.unit.to_string(), "primes": primes}),
            )
        }
        OutputFormat::Csv => {
            let mut s = format!("kind,value,exponent\nunit,{},\n", f.unit);
            for (p, e) in &f.primes {
                s.push_str(&format!("prime,{p},{e}\n"));
            }
            emit(out, &s)
        }
    }
}

fn cmd_characters(cfg: &Config, table: bool, out: &mut dyn Write) -> CmdResult {
    let group = unit_group(cfg.modulus).map_err(anyhow::Error::from)?;
    if table {
        let chi = group
            .character(cfg.character)
            .map_err(anyhow::Error::from)?;
        let t = chi.to_table();
        return match cfg.output {
            OutputFormat::Json => {
                emit_json(out, &serde_json::to_value(&t).map_err(anyhow::Error::from)?)
            }
            OutputFormat::Csv => {
                let mut s = "residue,order,exponent\n".to_string();
                for e in &t.entries {
                    s.push_str(&format!(
                        "{},{},{}\n",
                        GaussianInt::new(e.re, e.im),
                        t.order_root,
                        e.exponent
                    ));
                }
                emit(out, &s)
            }
        };
    }
    let labels = group.character_labels();
    let chars = group.characters();
    match cfg.output {
        OutputFormat::Json => {
            let gens: Vec<Value> = group
                .generators()
                .iter()
                .map(|&((a, b), d)| json!({"residue": GaussianInt::new(a, b).to_string(), "order": d}))
                .collect();
            let rows: Vec<Value> = labels
                .iter()
                .zip(&chars)
                .enumerate()
                .map(|(i, (l, c))| {
                    json!({
                        "index": i,
                        "exponents": l,
                        "order": c.order(),
                        "principal": c.is_principal(),
                        "trivial_on_units": c.is_trivial_on_units(),
                    })
                })
                .collect();
            emit_json(
                out,
                &json!({
                    "modulus": cfg.modulus,
                    "group_order": group.order(),
                    "exponent": group.exponent(),
                    "generators": gens,
                    "characters": rows,
                }),
            )
        }
        OutputFormat::Csv => {
            let mut s = String::from("index,exponents,order,principal,trivial_on_units\n");
            for (i, (l, c)) in labels.iter().zip(&chars).enumerate() {
                let exps: Vec<String> = l.iter().map(u32::to_string).collect();
                s.push_str(&format!(
                    "{i},{},{},{},{}\n",
                    exps.join(";"),
                    c.order(),
                    c.is_principal(),
                    c.is_trivial_on_units()
                ));
            }
            emit(out, &s)
        }
    }
}

fn build_series(cfg: &Config, what: SeriesKind) -> Result<TruncatedSeries<Cyclo>> {
    let m = cfg.bound;
    if what == SeriesKind::Zeta {
        return Ok(TruncatedSeries::zeta(m));
    }
    let chi = cfg.resolve_character()?;
    Ok(match what {
        SeriesKind::Zeta => unreachable!(),
        SeriesKind::Lchi => l_series(&chi.restrict_to_z(), m),
        SeriesKind::Ltheta => l_series(&chi.restrict_to_z().mul(&RationalCharacter::theta()), m),
        SeriesKind::Lsquare => l_series(&chi.pow(2).restrict_to_z(), m),
        SeriesKind::Zetak => dedekind_lattice(&chi.mul(&chi.bar_twist())?, m)?,
    })
}

fn cmd_coeffs(cfg: &Config, what: SeriesKind, out: &mut dyn Write) -> CmdResult {
    let series = build_series(cfg, what)?;
    match cfg.output {
        OutputFormat::Csv => emit(out, &series.to_csv()),
        OutputFormat::Json => {
            let v = serde_json::to_value(series.to_exact()).map_err(anyhow::Error::from)?;
            emit_json(out, &v)
        }
    }
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|_| anyhow!("bad list entry {x:?}")))
        .collect()
}

fn parse_corruption(text: &str) -> Result<Corruption> {
    let (p, d) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("corruption must be `prime:degree`"))?;
    Ok(Corruption {
        prime: p.trim().parse().context("corruption prime")?,
        degree: d.trim().parse().context("corruption degree")?,
    })
}

fn cmd_verify(
    cfg: &Config,
    weights: Option<Vec<i64>>,
    primes: Option<Vec<u64>>,
    reading: ReadingArg,
    corrupt: Option<&str>,
    out: &mut dyn Write,
) -> CmdResult {
    let weights = weights.unwrap_or_else(|| (3..=cfg.weight.max(3)).collect());
    let primes = primes.unwrap_or_else(|| vec![2, 3, 5, 7, 13]);
    let options = VerifyOptions {
        reading: match reading {
            ReadingArg::Corrected => TwoAdicReading::Corrected,
            ReadingArg::SquaredCharacter => TwoAdicReading::SquaredCharacter,
        },
        corruption: corrupt.map(parse_corruption).transpose()?,
    };
    let reports = verify_all(cfg.modulus, cfg.bound, &weights, &primes, &options)
        .map_err(anyhow::Error::from)?;
    let mut text = String::new();
    match cfg.output {
        OutputFormat::Json => {
            for r in &reports {
                text.push_str(&r.to_json_line());
                text.push('\n');
            }
        }
        OutputFormat::Csv => {
            text.push_str("identity,modulus,character,bound,prime,weight,chi_p,status,witness\n");
            let opt = |x: Option<String>| x.unwrap_or_default();
            for r in &reports {
                let row = [
                    serde_json::to_value(r.identity)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default(),
                    opt(r.modulus.map(|x| x.to_string())),
                    opt(r.character.map(|x| x.to_string())),
                    opt(r.bound.map(|x| x.to_string())),
                    opt(r.prime.map(|x| x.to_string())),
                    opt(r.weight.map(|x| x.to_string())),
                    opt(r.chi_p.clone()),
                    if r.passed() {
                        "pass".into()
                    } else {
                        "fail".into()
                    },
                    opt(r
                        .witness
                        .as_ref()
                        .map(|w| serde_json::to_string(w).unwrap_or_default())),
                ];
                let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
                text.push_str(&fields.join(","));
                text.push('\n');
            }
        }
    }
    emit(out, &text)?;
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}

fn load_eigenvalues(path: &Path) -> Result<EigenvalueTable> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim().is_empty() {
        return Ok(BTreeMap::new());
    }
    Ok(parse_eigenvalue_json(&text)?)
}

fn value_output(cfg: &Config, s: Complex64, value: Complex64, truncation: Value) -> String {
    match cfg.output {
        OutputFormat::Json => format!(
            "{}\n",
            json!({"s": complex(s), "value": complex(value), "truncation": truncation})
        ),
        OutputFormat::Csv => format!("re,im\n{:e},{:e}\n", value.re, value.im),
    }
}

fn eval_value(cfg: &Config, what: EvalKind, s: Complex64) -> Result<(Complex64, f64, Value)> {
    let m = cfg.bound;
    let p_cut = cfg.prime_cutoff;
    Ok(match what {
        EvalKind::Zeta | EvalKind::Lchi | EvalKind::Zetak => {
            let series = match what {
                EvalKind::Zeta => TruncatedSeries::<Complex64>::zeta(m),
                EvalKind::Lchi => l_series(&cfg.resolve_character()?.restrict_to_z(), m),
                _ => {
                    let chi = cfg.resolve_character()?;
                    dedekind_lattice(&chi.mul(&chi.bar_twist())?, m)?
                }
            };
            if s.re.is_nan() || s.re <= 1.0 {
                bail!(
                    "Re(s) = {} is outside the region of absolute convergence Re(s) > 1",
                    s.re
                );
            }
            let e = series.evaluate(s, s.re, 1.0)?;
            let trunc = json!({"M": m, "heuristic": false, "tail_bound": e.tail_bound, "rounding_bound": e.rounding_bound});
            (e.value, e.error_bound(), trunc)
        }
        EvalKind::Zstar => {
            let chi = cfg.resolve_character()?;
            let series = CompletionSeries::new(&chi, m)?;
            let pre = star_prefactor(&series, cfg.weight, cfg.modulus, s)?;
            let table = match &cfg.eigenvalues {
                Some(path) => load_eigenvalues(path)?,
                None => BTreeMap::new(),
            };
            if table.is_empty() {
                let trunc =
                    json!({"M": m, "P": Value::Null, "heuristic": true, "prefactor_only": true});
                (pre.total.value, f64::INFINITY, trunc)
            } else {
                let spec = LFunctionSpec::new(cfg.weight, chi, &table, p_cut)?;
                let z = z_value(&spec, s)?;
                let trunc = json!({
                    "M": m,
                    "P": p_cut,
                    "heuristic": true,
                    "prefactor_only": false,
                    "last_factor_deviation": z.report.last_factor_deviation,
                });
                (pre.total.value * z.value, f64::INFINITY, trunc)
            }
        }
        EvalKind::Dstar => {
            let chi = cfg.resolve_character()?;
            let path = cfg
                .inner_products
                .as_ref()
                .ok_or_else(|| anyhow!("dstar needs --inner-products <csv>"))?;
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let c = InnerProductSequence::from_csv(&text).map_err(|e| anyhow!(e))?;
            let series = CompletionSeries::new(&chi, m)?;
            let d = d_star_value(&series, cfg.weight, cfg.modulus, &c, s)?;
            let trunc = json!({"M": m, "terms": d.terms, "heuristic": true, "tail": "unbounded"});
            (d.value, f64::INFINITY, trunc)
        }
    })
}

fn cmd_eval(
    cfg: &Config,
    what: EvalKind,
    s_text: &str,
    expect: Option<&str>,
    out: &mut dyn Write,
) -> CmdResult {
    let s = parse_complex(s_text)?;
    let (value, error_bound, truncation) = eval_value(cfg, what, s)?;
    emit(out, &value_output(cfg, s, value, truncation))?;
    if let Some(e) = expect {
        let target = parse_complex(e)?;
        if (value - target).norm() > cfg.tolerance + error_bound {
            return Err(Failure::Failed);
        }
    }
    Ok(())
}

fn cmd_prefactor(cfg: &Config, s_text: &str, out: &mut dyn Write) -> CmdResult {
    let s = parse_complex(s_text)?;
    let chi = cfg.resolve_character()?;
    let series = CompletionSeries::new(&chi, cfg.bound).map_err(anyhow::Error::from)?;
    let pre = star_prefactor(&series, cfg.weight, cfg.modulus, s).map_err(anyhow::Error::from)?;
    let k = cfg.weight;
    let poles: Value = if chi.is_principal() {
        json!([k, k - 1, k - 2, k - 3])
    } else {
        Value::Null
    };
    match cfg.output {
        OutputFormat::Json => emit_json(
            out,
            &json!({
                "s": complex(s),
                "weight": k,
                "modulus": cfg.modulus,
                "character": cfg.character,
                "common": complex(pre.common.value),
                "value": complex(pre.total.value),
                "relative_error": pre.total.relative_error,
                "possible_poles": poles,
            }),
        ),
        OutputFormat::Csv => emit(
            out,
            &format!(
                "re,im,relative_error\n{:e},{:e},{:e}\n",
                pre.total.value.re, pre.total.value.im, pre.total.relative_error
            ),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["hermitian-lfun"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn factor_command() {
        let (code, out, _) = run_args(&["factor", "5"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"input\":\"5\",\"primes\":[{\"exponent\":1,\"prime\":\"2+i\"},{\"exponent\":1,\"prime\":\"1+2i\"}],\"unit\":\"-i\"}\n"
        );
        let (code, out, _) = run_args(&["factor", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"primes\":[]") && out.contains("\"unit\":\"1\""));
        assert_eq!(run_args(&["factor", "0"]).0, 2);
        assert_eq!(run_args(&["factor", "x+y"]).0, 2);
        let (_, csv, _) = run_args(&["--output", "csv", "factor", "-2i"]);
        // (1+i)^2 = 2i
        assert_eq!(csv, "kind,value,exponent\nunit,-1,\nprime,1+i,2\n");
    }

    #[test]
    fn characters_command() {
        for (n, rows) in [(1, 1), (2, 2), (3, 8)] {
            let (code, out, _) =
                run_args(&["--output", "csv", "characters", "--modulus", &n.to_string()]);
            assert_eq!(code, 0);
            assert_eq!(out.lines().count(), rows + 1, "N = {n}");
        }
        let (code, out, _) = run_args(&[
            "characters",
            "--modulus",
            "3",
            "--character",
            "1",
            "--table",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("{\"entries\":"));
        assert_eq!(
            run_args(&[
                "characters",
                "--modulus",
                "3",
                "--character",
                "8",
                "--table"
            ])
            .0,
            2
        );
    }

    #[test]
    fn verify_command() {
        let (code, out, _) = run_args(&[
            "--bound",
            "300",
            "verify",
            "--modulus",
            "2",
            "--weights",
            "3,4",
            "--primes",
            "2,3",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2 * (3 + 4));
        let (code, out, _) = run_args(&[
            "--bound",
            "300",
            "verify",
            "--primes",
            "",
            "--corrupt",
            "13:1",
        ]);
        assert_eq!(code, 1);
        assert!(out.lines().all(|l| l.contains("\"status\":\"fail\"")));
        let (code, out, _) = run_args(&["--bound", "300", "verify", "--primes", ""]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 3);
        let (code, out, _) = run_args(&[
            "--bound",
            "50",
            "--output",
            "csv",
            "verify",
            "--modulus",
            "3",
            "--reading",
            "squared-character",
            "--primes",
            "",
        ]);
        assert_eq!(code, 1);
        assert!(out.contains(",fail,"));
    }

    #[test]
    fn eval_command() {
        let (code, out, _) = run_args(&[
            "eval",
            "--what",
            "zeta",
            "--s",
            "2",
            "--expect",
            "1.6449340668482264",
        ]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["s"], json!({"re": 2.0, "im": 0.0}));
        assert_eq!(v["truncation"]["M"], json!(100_000));
        assert_eq!(run_args(&["eval", "--what", "zeta", "--s", "0.5"]).0, 2);
        assert_eq!(
            run_args(&["eval", "--what", "zeta", "--s", "2", "--expect", "1.7"]).0,
            1
        );
        let (code, out, _) = run_args(&[
            "--bound", "2000", "eval", "--what", "zstar", "--s", "14", "--weight", "10",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("\"prefactor_only\":true"));
        assert_eq!(
            run_args(&["--bound", "2000", "eval", "--what", "dstar", "--s", "14"]).0,
            2
        );
    }

    #[test]
    fn prefactor_command() {
        let (code, out, _) = run_args(&[
            "--bound",
            "2000",
            "prefactor",
            "--s",
            "13",
            "--weight",
            "10",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["possible_poles"], json!([10, 9, 8, 7]));
        assert!(v["value"]["re"].as_f64().unwrap() > 0.0);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&[]).0, 2);
        assert_eq!(run_args(&["--bound", "0", "factor", "3"]).0, 2);
        assert_eq!(run_args(&["--threads", "0", "factor", "3"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
        assert_eq!(
            run_args(&["--config", "/nonexistent.json", "factor", "3"]).0,
            2
        );
    }
}
