//! The `eulercat` command line.
//!
//! Exit status: 0 on success, 1 when a domain invariant fails (the message
//! names it), 2 when an input cannot be read or decoded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::category::FiniteCategory;
use crate::definable::Basis;
use crate::error::Error;
use crate::euler;
use crate::integration::{self, ObjectMap, Side};
use crate::io::{
    self, AnyDoc, CategoryDoc, DecompositionDoc, FunctionDoc, LoadError, MapDoc, NetworkDoc,
    ParseError,
};
use crate::rational::{self, Rational};
use crate::sensor;

#[derive(Debug, Parser)]
#[command(
    name = "eulercat",
    version,
    about = "Exact Euler calculus on finite categories"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Euler characteristic of a category.
    Chi { category: PathBuf },
    /// A weighting of a category.
    Weighting { category: PathBuf },
    /// Alternating count of nerve simplices of an acyclic category.
    NerveChi { category: PathBuf },
    /// Euler integral of a definable function.
    Integrate {
        category: PathBuf,
        function: PathBuf,
        #[arg(long, default_value = "filters", value_parser = parse_side)]
        side: Side,
        /// Check every filter and ideal for an Euler characteristic first.
        #[arg(long)]
        strict_measurable: bool,
    },
    /// Coordinates of a definable function in a prime basis.
    Decompose {
        category: PathBuf,
        function: PathBuf,
        #[arg(long, default_value = "prime-filters", value_parser = parse_basis)]
        basis: Basis,
    },
    /// Pushforward of a function along a map document.
    Pushforward { map: PathBuf, function: PathBuf },
    /// Count the targets of a network document from its sensor readings.
    CountTargets { network: PathBuf },
    /// Generate random networks and check the target count.
    Simulate {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        targets: usize,
        /// Edge probability, as `p/q`.
        #[arg(long, value_parser = parse_rational)]
        density: Rational,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// Write the generated network document here (single trial only).
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// List every violated invariant of a document.
    Validate {
        path: PathBuf,
        /// Ambient category for function, object-set and decomposition documents.
        #[arg(long)]
        category: Option<PathBuf>,
    },
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse()
}

fn parse_basis(s: &str) -> Result<Basis, String> {
    s.parse()
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).ok_or_else(|| format!("{s:?} is not a rational"))
}

enum Failure {
    Parse(ParseError),
    Domain(Error),
    /// Already reported; exit with status 1.
    Reported,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(p) => Failure::Parse(p),
            LoadError::Domain(d) => Failure::Domain(d),
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut sink = Sink {
        out,
        err,
        format: cli.output,
    };
    match dispatch(cli.command, &mut sink) {
        Ok(()) => 0,
        Err(Failure::Parse(e)) => {
            let _ = writeln!(sink.err, "error: {e}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(sink.err, "error: {e}");
            1
        }
        Err(Failure::Reported) => 1,
    }
}

struct Sink<'w> {
    out: &'w mut dyn Write,
    err: &'w mut dyn Write,
    format: Output,
}

impl Sink<'_> {
    fn emit(&mut self, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
        let rendered = match self.format {
            Output::Text => text(),
            Output::Json => serde_json::to_string_pretty(&value()).expect("json"),
        };
        if !rendered.is_empty() {
            let _ = writeln!(self.out, "{rendered}");
        }
    }
}

fn load_category(path: &Path) -> Result<FiniteCategory, Failure> {
    let doc: CategoryDoc = io::load(path)?;
    Ok(doc.build()?)
}

fn fmt(r: &Rational) -> String {
    rational::format(r)
}

fn named_lines(cat: &FiniteCategory, values: &[Rational]) -> String {
    cat.objects()
        .iter()
        .zip(values)
        .map(|(name, v)| format!("{name}: {}", fmt(v)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn dispatch(command: Command, sink: &mut Sink<'_>) -> Result<(), Failure> {
    match command {
        Command::Chi { category } => {
            let cat = load_category(&category)?;
            let chi = euler::euler_characteristic(&cat);
            sink.emit(
                || chi.as_ref().map_or("absent".to_string(), fmt),
                || json!({ "chi": chi.as_ref().map(fmt) }),
            );
        }
        Command::Weighting { category } => {
            let cat = load_category(&category)?;
            let w = euler::weighting(&cat);
            sink.emit(
                || match &w {
                    Some(w) => named_lines(&cat, &w.values),
                    None => "absent".to_string(),
                },
                || {
                    json!({
                        "weighting": w.as_ref().map(|w| FunctionDoc::from_values(&cat, &w.values).values)
                    })
                },
            );
        }
        Command::NerveChi { category } => {
            let cat = load_category(&category)?;
            let counts = euler::nerve_simplex_counts(&cat)?;
            let chi = euler::nerve_euler_characteristic(&cat)?;
            sink.emit(
                || fmt(&chi),
                || {
                    json!({
                        "nerve_chi": fmt(&chi),
                        "simplices": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                },
            );
        }
        Command::Integrate {
            category,
            function,
            side,
            strict_measurable,
        } => {
            let cat = load_category(&category)?;
            let doc: FunctionDoc = io::load(&function)?;
            let f = doc.build(&cat)?;
            let value = if strict_measurable {
                integration::integrate_strict(&f, side, euler::DEFAULT_FILTER_CAP)?
            } else {
                integration::integrate(&f, side)?
            };
            sink.emit(
                || fmt(&value),
                || json!({ "integral": fmt(&value), "side": side.as_str() }),
            );
        }
        Command::Decompose {
            category,
            function,
            basis,
        } => {
            let cat = load_category(&category)?;
            let doc: FunctionDoc = io::load(&function)?;
            let f = doc.build(&cat)?;
            let d = DecompositionDoc::from_decomposition(&f.decompose(basis));
            sink.emit(
                || {
                    std::iter::once(format!("basis: {}", d.basis))
                        .chain(d.terms.iter().map(|t| format!("{}: {}", t.rep, t.coef)))
                        .collect::<Vec<_>>()
                        .join("\n")
                },
                || serde_json::to_value(&d).expect("json"),
            );
        }
        Command::Pushforward { map, function } => {
            let doc: MapDoc = io::load(&map)?;
            let (src_path, dst_path) = doc.resolve(&map);
            let source = load_category(&src_path)?;
            let target = load_category(&dst_path)?;
            let m = ObjectMap::from_named(
                &source,
                &target,
                doc.map.iter().map(|(x, y)| (x.as_str(), y.as_str())),
            )?;
            let fdoc: FunctionDoc = io::load(&function)?;
            let f = fdoc.build(&source)?;
            let pushed = integration::pushforward(&m, &f)?;
            sink.emit(
                || named_lines(&target, pushed.values()),
                || serde_json::to_value(FunctionDoc::from_function(&pushed)).expect("json"),
            );
        }
        Command::CountTargets { network } => {
            let doc: NetworkDoc = io::load(&network)?;
            let (net, targets) = doc.build()?;
            let h = net.counting_function(&targets)?;
            let count = net.count_targets(&h)?;
            let levels = if count.monotone {
                Some(net.count_by_level_sets(&h)?)
            } else {
                let _ = writeln!(
                    sink.err,
                    "warning: counting function is not monotone; the count carries no guarantee"
                );
                None
            };
            sink.emit(
                || {
                    let mut lines = vec![fmt(&count.count)];
                    if let Some(l) = &levels {
                        lines.extend(
                            l.levels
                                .iter()
                                .enumerate()
                                .map(|(i, chi)| format!("i={}: {}", i + 1, fmt(chi))),
                        );
                    }
                    lines.join("\n")
                },
                || {
                    json!({
                        "count": fmt(&count.count),
                        "monotone": count.monotone,
                        "h": net.nodes().iter().cloned().zip(h.values.iter().copied())
                            .collect::<indexmap::IndexMap<String, u64>>(),
                        "levels": levels.as_ref().map(|l| l.levels.iter().map(fmt).collect::<Vec<_>>()),
                    })
                },
            );
        }
        Command::Simulate {
            nodes,
            targets,
            density,
            seed,
            trials,
            save,
        } => {
            if nodes == 0 {
                return Err(ParseError("--nodes must be at least 1".to_string()).into());
            }
            if let Some(path) = save {
                if trials != 1 {
                    return Err(ParseError("--save needs --trials 1".to_string()).into());
                }
                let sim = sensor::simulate(nodes, targets, &density, seed);
                let doc = NetworkDoc::from_parts(&sim.network, &sim.targets);
                let text = serde_json::to_string_pretty(&doc).expect("json");
                std::fs::write(&path, text + "\n")
                    .map_err(|e| ParseError(format!("{}: {e}", path.display())))?;
            }
            let reports = sensor::simulate_trials(nodes, targets, &density, seed, trials)?;
            let failed = reports.iter().filter(|r| !r.ok()).count();
            sink.emit(
                || {
                    let mut lines: Vec<String> = reports
                        .iter()
                        .map(|r| {
                            format!(
                                "seed {}: nodes {}, edges {}, targets {}, count {}, levels {}, {}",
                                r.seed,
                                r.nodes,
                                r.edges,
                                r.targets,
                                fmt(&r.count),
                                fmt(&r.level_total),
                                if r.ok() { "ok" } else { "MISMATCH" }
                            )
                        })
                        .collect();
                    lines.push(format!("{}/{} ok", reports.len() - failed, reports.len()));
                    lines.join("\n")
                },
                || {
                    json!({
                        "trials": reports.iter().map(|r| json!({
                            "seed": r.seed,
                            "nodes": r.nodes,
                            "edges": r.edges,
                            "targets": r.targets,
                            "count": fmt(&r.count),
                            "level_total": fmt(&r.level_total),
                            "ok": r.ok(),
                        })).collect::<Vec<_>>(),
                        "ok": reports.len() - failed,
                    })
                },
            );
            if failed > 0 {
                return Err(Failure::Reported);
            }
        }
        Command::Validate { path, category } => {
            let (kind, violations) = validate(&path, category.as_deref())?;
            sink.emit(
                || violations.join("\n"),
                || json!({ "kind": kind, "violations": violations }),
            );
            if !violations.is_empty() {
                return Err(Failure::Reported);
            }
        }
    }
    Ok(())
}

/// Document kind and every violated invariant, one message per entry.
pub fn validate(
    path: &Path,
    category: Option<&Path>,
) -> Result<(&'static str, Vec<String>), ParseError> {
    let doc: AnyDoc = io::load(path)?;
    let ambient = match category {
        Some(p) => {
            let doc: CategoryDoc = io::load(p)?;
            match doc.build() {
                Ok(cat) => Some(cat),
                Err(e) => return Ok(("category", vec![format!("ambient category: {e}")])),
            }
        }
        None => None,
    };
    let strings = |errs: Vec<Error>| errs.iter().map(ToString::to_string).collect::<Vec<_>>();
    let load_err = |e: LoadError| e.to_string();
    Ok(match doc {
        AnyDoc::Category(c) => ("category", strings(c.violations())),
        AnyDoc::Network(n) => ("network", strings(n.violations())),
        AnyDoc::Map(m) => {
            let (src, dst) = m.resolve(path);
            let mut out = Vec::new();
            let mut load = |p: &Path, role: &str| -> Result<Option<FiniteCategory>, ParseError> {
                let doc: CategoryDoc = io::load(p)?;
                let v = doc.violations();
                out.extend(v.iter().map(|e| format!("{role}: {e}")));
                Ok(v.is_empty().then(|| doc.build().expect("no violations")))
            };
            let source = load(&src, "source")?;
            let target = load(&dst, "target")?;
            if let (Some(s), Some(t)) = (source, target) {
                match ObjectMap::from_named(
                    &s,
                    &t,
                    m.map.iter().map(|(x, y)| (x.as_str(), y.as_str())),
                ) {
                    Ok(f) => {
                        if let Err(e) = f.require_measurable() {
                            out.push(e.to_string());
                        }
                    }
                    Err(e) => out.push(e.to_string()),
                }
            }
            ("map", out)
        }
        AnyDoc::Function(f) => {
            let out = match &ambient {
                Some(cat) => f.build(cat).err().map(load_err).into_iter().collect(),
                None => f
                    .parse_values()
                    .err()
                    .map(|e| e.to_string())
                    .into_iter()
                    .collect(),
            };
            ("function", out)
        }
        AnyDoc::Decomposition(d) => {
            let out = match &ambient {
                Some(cat) => d.build(cat).err().map(load_err).into_iter().collect(),
                None => d.syntax_errors().iter().map(ToString::to_string).collect(),
            };
            ("decomposition", out)
        }
        AnyDoc::ObjectSet(s) => {
            let out = match &ambient {
                Some(cat) => s.build(cat).err().iter().map(ToString::to_string).collect(),
                None => Vec::new(),
            };
            ("object-set", out)
        }
    })
}
