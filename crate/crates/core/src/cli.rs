//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::catalog;
use crate::codim::{codim_report, growth_report, proper_codim_report, CodimError};
use crate::freepoly::{aggregates, parse, DegreeComposition, PolyError};
use crate::galgebra::{AlgebraError, GradedAlgebra, NamedParams};
use crate::group::{Elem, Group, GroupError};
use crate::idealkit::{check_identity, direct_sum_identity_check, tg_equivalent_upto, verify_basis, IdealError};
use crate::io::{load_algebra, load_generators, IoError};
use crate::parallel::THREADS_ENV;
use crate::rational::parse_q;
use crate::repn::{cocharacter_multiplicities, ReprError};
use crate::suite::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pigrad", version, about = "Graded codimensions and identities of finite-dimensional graded algebras")]
pub struct Cli {
    /// Worker threads (overrides PIGRAD_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded codimensions c_n, optionally with proper codimensions.
    Codim {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "1..4")]
        n: String,
        /// Also print proper codimensions.
        #[arg(long)]
        proper: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Proper codimensions gamma_n.
    ProperCodim {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "0..4")]
        n: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Proper cocharacter multiplicities per aggregate.
    Cocharacter {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "1..2")]
        n: String,
        /// Slot degrees separated by `;`, e.g. "1,0;0,1". Overrides --n.
        #[arg(long)]
        composition: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tests whether a multilinear polynomial is a graded identity.
    CheckIdentity {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        composition: String,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Certifies an identity basis up to a degree.
    VerifyBasis {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Generator-set JSON; defaults to the known basis of a catalog algebra.
        #[arg(long)]
        generators: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compares the graded identities of two algebras up to a degree.
    Equiv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Checks that a direct sum has exactly the common identities of its parts.
    SumCheck {
        /// Summands as compact specs or JSON paths; repeat the flag.
        #[arg(long = "part", required = true)]
        parts: Vec<String>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// c_n as a polynomial in n with its leading-coefficient bounds.
    Growth {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Runs every formula, table and certification check of the catalog.
    PaperSuite {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Grading group: "2x2" for Z2 x Z2, "3" for Z3.
    #[arg(long, default_value = "2x2")]
    group: String,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct AlgebraArgs {
    /// Algebra JSON file.
    #[arg(long, conflicts_with = "named")]
    algebra: Option<PathBuf>,
    /// Named algebra: F, C2, C3, C_m, K7, G2, Walpha, or a compact spec such as "K7:g,h+G2:g,h".
    #[arg(long)]
    named: Option<String>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Fail(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Fail(_) => EXIT_FAIL,
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}
input_error!(IoError, AlgebraError, GroupError, PolyError, std::io::Error);

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::NotAnIdentity { .. } => CliError::Fail(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CodimError> for CliError {
    fn from(e: CodimError) -> Self {
        match e {
            CodimError::GrowthExceedsT { .. } => CliError::Fail(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ReprError> for CliError {
    fn from(e: ReprError) -> Self {
        match e {
            ReprError::NonIntegral { .. } => CliError::Fail(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// `"2x2"` is `Z2 x Z2`, `"3"` is `Z3`.
pub fn parse_group(spec: &str) -> Result<Group, CliError> {
    let orders = spec
        .split(['x', 'X', '*'])
        .map(|p| p.trim().parse::<usize>().map_err(|_| CliError::Input(format!("bad group spec `{spec}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Group::cyclic_product(&orders)?)
}

/// `"a..b"` (inclusive) or a single degree.
pub fn parse_range(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Input(format!("bad degree range `{text}`"));
    match text.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![text.trim().parse().map_err(|_| bad())?]),
    }
}

/// Slot degrees separated by `;`.
pub fn parse_composition(text: &str, group: &Group) -> Result<DegreeComposition, CliError> {
    let slots = text.split(';').map(|s| group.decode(s.trim())).collect::<Result<Vec<_>, _>>()?;
    Ok(DegreeComposition::new(group.order(), slots))
}

struct Symbols {
    group: Group,
    g: Elem,
    h: Elem,
}

impl Symbols {
    fn new(params: &ParamArgs) -> Result<Self, CliError> {
        let group = parse_group(&params.group)?;
        let orders = group.cyclic_orders().expect("cyclic product").to_vec();
        let unit_vector =
            |i: usize| (0..orders.len()).map(|j| if i == j { "1" } else { "0" }).collect::<Vec<_>>().join(",");
        let g = match &params.g {
            Some(s) => group.decode(s)?,
            None if group.order() > 1 => group.decode(&unit_vector(0))?,
            None => 0,
        };
        let h = match &params.h {
            Some(s) => group.decode(s)?,
            None if orders.len() > 1 => group.decode(&unit_vector(1))?,
            None => group.inverse(g),
        };
        Ok(Symbols { group, g, h })
    }

    /// `g`, `h`, `gh`, `g^-1`, `h^-1`, `e`, or a literal encoding.
    fn element(&self, token: &str) -> Result<Elem, CliError> {
        let t = token.trim().trim_start_matches('(').trim_end_matches(')');
        Ok(match t {
            "g" => self.g,
            "h" => self.h,
            "gh" | "hg" => self.group.mul(self.g, self.h),
            "g^-1" => self.group.inverse(self.g),
            "h^-1" => self.group.inverse(self.h),
            "e" => self.group.identity(),
            _ => self.group.decode(t)?,
        })
    }
}

/// Splits on commas outside parentheses.
fn split_args(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out
}

fn named_params(params: &ParamArgs, sym: &Symbols) -> Result<NamedParams, CliError> {
    let alpha = match &params.alpha {
        Some(a) => Some(parse_q(a).ok_or_else(|| CliError::Input(format!("bad rational `{a}`")))?),
        None => None,
    };
    Ok(NamedParams { m: params.m, g: Some(sym.g), h: Some(sym.h), alpha })
}

/// One summand: `NAME` (parameters from flags) or `NAME:args`.
fn build_summand(spec: &str, params: &ParamArgs, sym: &Symbols) -> Result<GradedAlgebra, CliError> {
    let spec = spec.trim();
    if spec.ends_with(".json") {
        return Ok(load_algebra(Path::new(spec))?);
    }
    let mut named = named_params(params, sym)?;
    let Some((name, args)) = spec.split_once(':') else {
        return Ok(GradedAlgebra::build_named(spec, &sym.group, &named)?);
    };
    let args = split_args(args);
    let elems = |xs: &[String]| xs.iter().map(|x| sym.element(x)).collect::<Result<Vec<_>, _>>();
    let wrong = || CliError::Input(format!("wrong number of arguments in `{spec}`"));
    match name {
        "W_alpha" | "Walpha" | "W" => {
            let [alpha, rest @ ..] = args.as_slice() else { return Err(wrong()) };
            named.alpha = Some(parse_q(alpha).ok_or_else(|| CliError::Input(format!("bad rational `{alpha}`")))?);
            let [g, h] = elems(rest)?[..] else { return Err(wrong()) };
            named.g = Some(g);
            named.h = Some(h);
        }
        "C_m" | "C" => {
            let [m, g] = args.as_slice() else { return Err(wrong()) };
            named.m = Some(m.trim().parse().map_err(|_| wrong())?);
            named.g = Some(sym.element(g)?);
        }
        "F" => {
            if !args.iter().all(|a| a.trim().is_empty()) {
                return Err(wrong());
            }
        }
        _ if name.starts_with('C') => {
            let [g] = elems(&args)?[..] else { return Err(wrong()) };
            named.g = Some(g);
        }
        _ => {
            let [g, h] = elems(&args)?[..] else { return Err(wrong()) };
            named.g = Some(g);
            named.h = Some(h);
        }
    }
    Ok(GradedAlgebra::build_named(name, &sym.group, &named)?)
}

/// A compact spec, possibly a `+`-separated direct sum.
fn build_spec(spec: &str, params: &ParamArgs) -> Result<GradedAlgebra, CliError> {
    let sym = Symbols::new(params)?;
    let mut parts = spec.split('+').map(|s| build_summand(s, params, &sym));
    let mut acc = parts.next().expect("split yields one item")?;
    for p in parts {
        acc = acc.direct_sum(&p?)?;
    }
    Ok(acc)
}

/// Builds an algebra from a compact spec over the group `group` (e.g. "2x2"),
/// with the default meanings of `g` and `h`.
pub fn algebra_from_spec(spec: &str, group: &str) -> Result<GradedAlgebra, CliError> {
    let params = ParamArgs { group: group.to_string(), g: None, h: None, alpha: None, m: None };
    build_spec(spec, &params)
}

fn load(args: &AlgebraArgs) -> Result<GradedAlgebra, CliError> {
    match (&args.algebra, &args.named) {
        (Some(path), _) => Ok(load_algebra(path)?),
        (None, Some(spec)) => build_spec(spec, &args.params),
        (None, None) => Err(CliError::Input("give --algebra PATH or --named NAME".into())),
    }
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value).expect("serializable");
        std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn aggregate_label(group: &Group, agg: &[usize]) -> String {
    DegreeComposition::from_aggregate(agg).describe(group)
}

fn run_command(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Codim { algebra, n, proper, json } => {
            let a = load(&algebra)?;
            let degrees = parse_range(&n)?;
            let reports: Vec<_> = degrees.iter().map(|&n| codim_report(&a, n)).collect();
            let propers: Vec<_> =
                if proper { degrees.iter().map(|&n| proper_codim_report(&a, n)).collect() } else { vec![] };
            for (i, r) in reports.iter().enumerate() {
                match propers.get(i) {
                    Some(p) => writeln!(out, "n={}  c_n={}  gamma_n={}", r.n, r.codim, p.codim)?,
                    None => writeln!(out, "n={}  c_n={}", r.n, r.codim)?,
                }
                for c in r.per_component.iter().filter(|c| c.rank > 0) {
                    writeln!(
                        out,
                        "    {}  rank {}  weight {}",
                        aggregate_label(a.group(), &c.aggregate),
                        c.rank,
                        c.weight
                    )?;
                }
            }
            if proper {
                write_json(&json, &json!({"codim": reports, "proper": propers}))?;
            } else {
                write_json(&json, &reports)?;
            }
            Ok(EXIT_OK)
        }
        Command::ProperCodim { algebra, n, json } => {
            let a = load(&algebra)?;
            let reports: Vec<_> = parse_range(&n)?.into_iter().map(|n| proper_codim_report(&a, n)).collect();
            for r in &reports {
                writeln!(out, "n={}  gamma_n={}", r.n, r.codim)?;
                for c in r.per_component.iter().filter(|c| c.rank > 0) {
                    writeln!(
                        out,
                        "    {}  rank {}  weight {}",
                        aggregate_label(a.group(), &c.aggregate),
                        c.rank,
                        c.weight
                    )?;
                }
            }
            write_json(&json, &reports)?;
            Ok(EXIT_OK)
        }
        Command::Cocharacter { algebra, n, composition, json } => {
            let a = load(&algebra)?;
            let comps: Vec<DegreeComposition> = match composition {
                Some(text) => vec![parse_composition(&text, a.group())?],
                None => parse_range(&n)?
                    .into_iter()
                    .flat_map(|n| aggregates(a.group().order(), n))
                    .map(|agg| DegreeComposition::from_aggregate(&agg))
                    .collect(),
            };
            let mut all = Vec::new();
            for comp in comps {
                let d = cocharacter_multiplicities(&a, &comp)?;
                let label = comp.describe(a.group());
                if d.terms.is_empty() {
                    writeln!(out, "{label}: 0")?;
                } else {
                    let terms: Vec<String> = d
                        .terms
                        .iter()
                        .map(|t| format!("{}*{} (degree {})", t.multiplicity, t.multipartition, t.degree))
                        .collect();
                    writeln!(out, "{label}: {}", terms.join(" + "))?;
                }
                all.push(d);
            }
            write_json(&json, &all)?;
            Ok(EXIT_OK)
        }
        Command::CheckIdentity { algebra, composition, expr, json } => {
            let a = load(&algebra)?;
            let comp = parse_composition(&composition, a.group())?;
            let p = parse(&expr, &comp)?;
            let r = check_identity(&a, &p)?;
            match &r.witness {
                None => writeln!(out, "IDENTITY  {} ({} evaluations)", r.polynomial, r.tuples_checked)?,
                Some(w) => writeln!(out, "NOT AN IDENTITY  {}\n    {w}", r.polynomial)?,
            }
            write_json(&json, &r)?;
            Ok(if r.is_identity { EXIT_OK } else { EXIT_FAIL })
        }
        Command::VerifyBasis { algebra, generators, max_degree, json } => {
            let a = load(&algebra)?;
            let set = match generators {
                Some(path) => load_generators(&path, a.group())?,
                None => {
                    catalog::lookup(&a)
                        .ok_or_else(|| CliError::Input("no known basis for this algebra; pass --generators".into()))?
                        .basis
                }
            };
            let r = verify_basis(&a, &set, max_degree)?;
            for c in &r.components {
                if !c.pass {
                    writeln!(
                        out,
                        "    {}  consequences {}  identities {}",
                        aggregate_label(a.group(), &c.aggregate),
                        c.consequence_rank,
                        c.identity_dim
                    )?;
                }
            }
            if r.pass {
                writeln!(out, "PASS  {} components up to degree {max_degree}", r.components.len())?;
            } else {
                let at = r.failing_component.as_deref().map(|agg| aggregate_label(a.group(), agg)).unwrap_or_default();
                writeln!(out, "FAIL  at {at}; identity not generated: {}", r.witness.clone().unwrap_or_default())?;
            }
            write_json(&json, &r)?;
            Ok(if r.pass { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Equiv { a, b, params, max_degree, json } => {
            let (x, y) = (build_spec(&a, &params)?, build_spec(&b, &params)?);
            let r = tg_equivalent_upto(&x, &y, max_degree)?;
            match &r.divergence {
                None => writeln!(out, "EQUIVALENT up to degree {max_degree}")?,
                Some(d) => writeln!(
                    out,
                    "NOT EQUIVALENT at degree {} {}: {} is an identity of {} only",
                    d.n,
                    aggregate_label(x.group(), &d.aggregate),
                    d.witness,
                    d.identity_of
                )?,
            }
            write_json(&json, &r)?;
            Ok(if r.equivalent { EXIT_OK } else { EXIT_FAIL })
        }
        Command::SumCheck { parts, params, max_degree, json } => {
            let algebras = parts.iter().map(|p| build_spec(p, &params)).collect::<Result<Vec<_>, _>>()?;
            let r = direct_sum_identity_check(&algebras, max_degree)?;
            match &r.failing_component {
                None => writeln!(out, "HOLDS up to degree {max_degree}")?,
                Some(agg) => writeln!(out, "FAILS at {}", aggregate_label(algebras[0].group(), agg))?,
            }
            write_json(&json, &r)?;
            Ok(if r.holds { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Growth { algebra, t, n_max, json } => {
            let a = load(&algebra)?;
            let r = growth_report(&a, t, n_max)?;
            let gammas: Vec<String> = r.gammas.iter().map(ToString::to_string).collect();
            writeln!(out, "gamma_0..gamma_{} = {}", r.n_max, gammas.join(", "))?;
            writeln!(out, "c_n coefficients (n^0 first): {}", r.coefficients.join(", "))?;
            writeln!(
                out,
                "q = {}  bounds [{}, {}]  within: {}",
                r.leading, r.lower_bound, r.upper_bound, r.within_bounds
            )?;
            writeln!(out, "reproduces c_0..c_{}: {}", r.n_max, r.reproduces_codims)?;
            write_json(&json, &r)?;
            Ok(if r.within_bounds && r.reproduces_codims { EXIT_OK } else { EXIT_FAIL })
        }
        Command::PaperSuite { max_degree, json } => {
            let rows = run_suite(max_degree);
            for r in &rows {
                let status = if r.pass { "PASS" } else { "FAIL" };
                writeln!(out, "{status}  {}. {}  ({} checks, {:.2}s)", r.criterion, r.title, r.checks, r.seconds)?;
                for f in &r.failures {
                    writeln!(out, "    {f}")?;
                }
            }
            write_json(&json, &rows)?;
            Ok(if rows.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    if let Some(n) = cli.threads {
        std::env::set_var(THREADS_ENV, n.to_string());
    }
    match run_command(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}
