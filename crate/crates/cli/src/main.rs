use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use geomsig::char_table::CharacterTable;
use geomsig::group::{catalog, Group, Perm, Subgroup};
use geomsig::jacobian::{self, DecompositionReport, Gamma1Row};
use geomsig::report::{self, ExistsReport, Verdict};
use geomsig::signature::{
    self, GeneratingVector, GeometricSignature, SignatureSpec, DEFAULT_BUDGET,
};
use geomsig::Error;

const EXIT_NOT_EXISTS: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_SOFTWARE: u8 = 70;

const ELEMENT_HELP: &str = "\
Elements are written either in cycle notation on points 1..n, e.g. (1,2)(3,4),
or as words in the named generators: juxtaposition or `*` for products, `^k`
for integer powers (negative allowed), e.g. xa^2, x*y*a*b, b^-1. Words are
read left to right with the leftmost factor applied first. `1` is the identity.

Groups: cyclic(n), dihedral(n) (order 2n), symmetric(n), alternating(n),
quaternion8, wc3, or a JSON file
  {\"name\": \"...\", \"degree\": 6, \"generators\": {\"x\": \"(1,2)\", ...}}.

Signatures: inline JSON or a file,
  {\"genus\": 0, \"branches\": [{\"order\": 4, \"class_rep\": \"x\"}, ...]}.
Branches without class_rep are expanded to every matching class.

Exit status: 0 exists / success, 1 no such action, 2 search budget exhausted,
64 malformed input.";

#[derive(Parser, Debug)]
#[command(name = "geomsig", version, about = "Finite group actions on compact Riemann surfaces", after_help = ELEMENT_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct Common {
    /// Catalog name or JSON file describing a permutation group.
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(clap::Args, Debug, Clone)]
struct SigArgs {
    /// Signature as inline JSON or a path to a JSON file.
    #[arg(long)]
    signature: String,
    /// Maximum number of search nodes.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

#[derive(clap::Args, Debug, Clone)]
struct SchurArgs {
    /// Replace the Schur index of a character's Galois class, as IDX=VAL.
    #[arg(long = "schur-override", value_name = "IDX=VAL")]
    schur_override: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether an action with the given signature exists.
    Exists {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Genus, marked points and cycle structure of the intermediate covers.
    Lattice {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sig: SigArgs,
        /// Extra subgroups, `;`-separated, each `LABEL=gen,gen,...` or `gen,gen,...`.
        #[arg(long)]
        subgroups: Option<String>,
        /// Recompute every row from the coset action of a generating vector.
        #[arg(long)]
        cross_check: bool,
        /// Skip the existence search (no cross-check is possible then).
        #[arg(long)]
        assume_realizable: bool,
    },
    /// Isotypical decomposition of the Jacobian.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sig: SigArgs,
        #[command(flatten)]
        schur: SchurArgs,
        #[arg(long)]
        assume_realizable: bool,
    },
    /// Character table with Galois classes and Schur data.
    Chartab {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        schur: SchurArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Engine(Error),
    Verdict(u8, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Engine(e) => match e {
                Error::Parse { .. }
                | Error::UnknownCatalog(_)
                | Error::InvalidSignature(_)
                | Error::NotSubgroup
                | Error::GroupTooLarge { .. }
                | Error::NotBijective { .. }
                | Error::DegreeZero => EXIT_USAGE,
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                Error::RiemannHurwitz { .. } => EXIT_NOT_EXISTS,
                _ => EXIT_SOFTWARE,
            },
            Failure::Verdict(code, _) => *code,
        }
    }
}

#[derive(Deserialize)]
struct GroupFile {
    name: Option<String>,
    degree: usize,
    generators: IndexMap<String, String>,
}

fn read_source(arg: &str, what: &str) -> Result<String, Failure> {
    std::fs::read_to_string(arg)
        .map_err(|e| Failure::Usage(format!("cannot read {what} file `{arg}`: {e}")))
}

fn load_group(arg: &str) -> Result<Group, Failure> {
    if !(Path::new(arg).is_file() || arg.ends_with(".json")) {
        return Ok(catalog(arg)?);
    }
    let text = read_source(arg, "group")?;
    let file: GroupFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("group file `{arg}`: {e}")))?;
    let named = file
        .generators
        .into_iter()
        .map(|(n, c)| Ok((n, Perm::parse_cycles(&c, file.degree)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Group::from_named(file.name, file.degree, named)?)
}

fn load_signature(arg: &str) -> Result<SignatureSpec, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read_source(arg, "signature")?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("signature: {e}")))
}

/// Splits on `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter()
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect()
}

fn parse_subgroups(g: &Group, arg: Option<&str>) -> Result<Vec<(String, Subgroup)>, Failure> {
    let Some(arg) = arg else {
        return Ok(Vec::new());
    };
    split_top(arg, ';')
        .into_iter()
        .map(|item| {
            let (label, gens) = match item.split_once('=') {
                Some((l, r)) => (l.trim().to_string(), r),
                None => (format!("<{item}>"), item),
            };
            let gens = gens.trim().trim_start_matches('<').trim_end_matches('>');
            let elems = split_top(gens, ',')
                .into_iter()
                .map(|w| g.parse_element(w))
                .collect::<Result<Vec<_>, Error>>()?;
            Ok((label, g.subgroup(&elems)))
        })
        .collect()
}

fn parse_overrides(items: &[String]) -> Result<BTreeMap<usize, u64>, Failure> {
    items
        .iter()
        .map(|s| {
            let bad = || Failure::Usage(format!("--schur-override expects IDX=VAL, got `{s}`"));
            let (i, v) = s.split_once('=').ok_or_else(bad)?;
            Ok((
                i.trim().parse().map_err(|_| bad())?,
                v.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

fn table(g: &Group, overrides: &[String]) -> Result<CharacterTable, Failure> {
    let overrides = parse_overrides(overrides)?;
    Ok(CharacterTable::compute(g)?.with_schur_overrides(&overrides)?)
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        ),
        Format::Text => print!("{}", text()),
    }
}

/// Geometric refinements of the input that are realizable, each with a
/// witness when one was searched for.
fn realizable(
    g: &Group,
    spec: &SignatureSpec,
    budget: u64,
    assume: bool,
) -> Result<Vec<(GeometricSignature, Option<GeneratingVector>)>, Failure> {
    let sigs = spec.refinements(g)?;
    if assume {
        for s in &sigs {
            s.surface_genus(g)?;
        }
        return Ok(sigs.into_iter().map(|s| (s, None)).collect());
    }
    let exists: ExistsReport = report::exists_report(g, spec, budget)?;
    match exists.verdict {
        Verdict::Exists => {}
        Verdict::BudgetExhausted => {
            return Err(Failure::Verdict(
                EXIT_BUDGET,
                "search budget exhausted before a decision".into(),
            ))
        }
        Verdict::NotExists => {
            let why = exists
                .failed_condition
                .unwrap_or_else(|| "no generating vector".into());
            return Err(Failure::Verdict(
                EXIT_NOT_EXISTS,
                format!("signature is not realizable: {why}"),
            ));
        }
    }
    let mut out = Vec::new();
    for s in sigs {
        if let Some(v) = signature::find_generating_vector(g, &s, budget)?.vector {
            out.push((s, Some(v)));
        }
    }
    Ok(out)
}

/// A negative or fractional genus or multiplicity can only come from a
/// signature that no action realizes.
fn inconsistent(e: Error) -> Failure {
    match e {
        Error::NotIntegral(what) => Failure::Verdict(
            EXIT_NOT_EXISTS,
            format!("signature is not realizable: {what} is not a nonnegative integer"),
        ),
        e => Failure::Engine(e),
    }
}

#[derive(Serialize)]
struct DecomposeOutput {
    #[serde(flatten)]
    report: DecompositionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma1: Option<Vec<Gamma1Row>>,
}

fn render_gamma1(rows: &[Gamma1Row]) -> String {
    let mut out = String::from("genus-one analysis (dim B = 0 / stabilizers in kernel / unramified / kernel quotient genus 1):\n");
    for r in rows {
        out += &format!(
            "  class {}: {} {} {} {}  degree {}\n",
            r.galois_class,
            r.dim_zero,
            r.stabilizers_in_kernel,
            r.kernel_cover_unramified,
            r.kernel_quotient_genus_one,
            r.degree
        );
    }
    out
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Exists { common, sig } => {
            let g = load_group(&common.group)?;
            let spec = load_signature(&sig.signature)?;
            let r = report::exists_report(&g, &spec, sig.budget)?;
            emit(common.format, &r, || report::render_exists(&r));
            Ok(match r.verdict {
                Verdict::Exists => 0,
                Verdict::NotExists => EXIT_NOT_EXISTS,
                Verdict::BudgetExhausted => EXIT_BUDGET,
            })
        }
        Command::Lattice {
            common,
            sig,
            subgroups,
            cross_check,
            assume_realizable,
        } => {
            let g = load_group(&common.group)?;
            let spec = load_signature(&sig.signature)?;
            let subs = parse_subgroups(&g, subgroups.as_deref())?;
            let mut reports = Vec::new();
            for (s, v) in realizable(&g, &spec, sig.budget, assume_realizable)? {
                let witness = if cross_check { v.as_ref() } else { None };
                reports.push(report::lattice(&g, &s, &subs, witness).map_err(inconsistent)?);
            }
            emit(common.format, &reports, || {
                reports
                    .iter()
                    .map(report::render_lattice)
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            let mismatch = reports
                .iter()
                .flat_map(|r| &r.covers)
                .any(|c| c.oracle.as_ref().is_some_and(|o| !o.agrees));
            Ok(if mismatch { EXIT_SOFTWARE } else { 0 })
        }
        Command::Decompose {
            common,
            sig,
            schur,
            assume_realizable,
        } => {
            let g = load_group(&common.group)?;
            let spec = load_signature(&sig.signature)?;
            let t = table(&g, &schur.schur_override)?;
            let mut outputs = Vec::new();
            for (s, _) in realizable(&g, &spec, sig.budget, assume_realizable)? {
                let report = jacobian::factor_dimensions(&g, &t, &s).map_err(inconsistent)?;
                let gamma1 = if s.genus == 1 {
                    Some(jacobian::gamma1_analysis(&g, &t, &s)?)
                } else {
                    None
                };
                outputs.push(DecomposeOutput { report, gamma1 });
            }
            emit(common.format, &outputs, || {
                outputs
                    .iter()
                    .map(|o| {
                        let mut s = report::render_decomposition(&o.report);
                        if let Some(rows) = &o.gamma1 {
                            s += &render_gamma1(rows);
                        }
                        s
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(0)
        }
        Command::Chartab { common, schur } => {
            let g = load_group(&common.group)?;
            let t = table(&g, &schur.schur_override)?;
            let r = report::chartab_report(&g, &t);
            emit(common.format, &r, || report::render_chartab(&r));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Usage(m) | Failure::Verdict(_, m) => eprintln!("geomsig: {m}"),
                Failure::Engine(e) => eprintln!("geomsig: {e}"),
            }
            ExitCode::from(code)
        }
    }
}
