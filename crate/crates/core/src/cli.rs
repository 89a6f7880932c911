//! Command-line front end. [`Cli`] is the run configuration; [`execute`]
//! dispatches it and [`run`] handles parsing, output and exit codes.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::assoc::{self, is_witness, AssReport, Method as AssMethod, ProductMembership};
use crate::coloring::{self, greedy_clique, k_coloring};
use crate::cover::{cover_ideal, localize, PrimeSupport};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::reproduce::{self, ReproduceOptions};

pub const SCHEMA_VERSION: u32 = 1;

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
    pub const BUDGET: i32 = 4;
    pub const INVALID: i32 = 5;
    pub const CERTIFICATE: i32 = 6;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cover-persist", version, about = "Cover ideals of graphs and persistence of associated primes")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "COVER_PERSIST_THREADS")]
    pub threads: Option<NonZeroUsize>,

    /// Most prime supports a scan may enumerate.
    #[arg(long, global = true, default_value_t = assoc::DEFAULT_SUBSET_GUARD, value_parser = positive_u128)]
    pub subset_guard: u128,

    /// Most candidate monomials or subsets a search may visit.
    #[arg(long, global = true, default_value_t = assoc::DEFAULT_WITNESS_BUDGET, value_parser = positive_u128)]
    pub candidate_cap: u128,

    /// Wall-clock budget in seconds for `verify-paper`.
    #[arg(long, global = true, value_parser = positive_seconds)]
    pub time_budget: Option<Duration>,

    #[command(subcommand)]
    pub command: Command,
}

fn positive_u128(s: &str) -> std::result::Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_seconds(s: &str) -> std::result::Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|e: std::num::ParseFloatError| e.to_string())?;
    if !(secs > 0.0 && secs.is_finite()) {
        return Err("must be a positive number of seconds".into());
    }
    Ok(Duration::from_secs_f64(secs))
}

#[derive(Clone, Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["graph", "p"])))]
pub struct GraphSource {
    /// Graph file, JSON or edge list.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Build `H_{p,q}`; requires `--q`.
    #[arg(long, requires = "q")]
    pub p: Option<usize>,
    #[arg(long, requires = "p")]
    pub q: Option<usize>,
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph> {
        match (&self.graph, self.p, self.q) {
            (Some(path), _, _) => Graph::parse(&fs::read_to_string(path)?),
            (None, Some(p), Some(q)) => Graph::build_hpq(p, q),
            _ => Err(Error::InvalidArgument("give --graph or both --p and --q".into())),
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct IdealSource {
    /// Ideal file, or an inline ideal such as `(x0*x1, x2^2)`.
    #[arg(long)]
    pub ideal: String,
    /// Number of variables, when text input does not fix it.
    #[arg(long)]
    pub arity: Option<usize>,
}

impl IdealSource {
    pub fn load(&self) -> Result<MonomialIdeal> {
        let path = Path::new(&self.ideal);
        let text = if path.is_file() { fs::read_to_string(path)? } else { self.ideal.clone() };
        MonomialIdeal::parse(&text, self.arity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AssMethodArg {
    Colon,
    Search,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Edges,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build `H_{p,q}`.
    Graph {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Layout in text mode.
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        emit: GraphFormat,
    },
    /// Minimal vertex covers.
    Covers {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Cover ideal generators.
    CoverIdeal {
        #[command(flatten)]
        source: GraphSource,
    },
    Power {
        #[command(flatten)]
        ideal: IdealSource,
        #[arg(long)]
        s: u32,
    },
    #[command(group(ArgGroup::new("by").required(true).args(["monomial", "by_ideal", "max"])))]
    Colon {
        #[command(flatten)]
        ideal: IdealSource,
        #[arg(long)]
        monomial: Option<String>,
        /// Ideal file or inline ideal to divide by.
        #[arg(long)]
        by_ideal: Option<String>,
        /// Divide by the maximal ideal.
        #[arg(long)]
        max: bool,
    },
    /// Set variables outside `--vars` to 1.
    Localize {
        #[command(flatten)]
        ideal: IdealSource,
        #[arg(long)]
        vars: String,
    },
    /// Is `P_W` associated; all supports when `--prime` is omitted.
    Ass {
        #[command(flatten)]
        ideal: IdealSource,
        /// Variable list or `max`.
        #[arg(long)]
        prime: Option<String>,
        #[arg(long, value_enum, default_value_t = AssMethodArg::Colon)]
        method: AssMethodArg,
        /// Largest support size in a full scan.
        #[arg(long)]
        max_support: Option<usize>,
    },
    Persistence {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        smax: u32,
        /// Semicolon-separated supports, e.g. `max;0,1,2`.
        #[arg(long)]
        primes: Option<String>,
    },
    /// Pruned witness search for `𝔪 ∈ Ass(R/J(H_q)^s)`.
    Witness {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        s: u32,
    },
    /// Check the cube decomposition for `H_q`.
    VerifyObs {
        #[arg(long)]
        q: usize,
    },
    Chi {
        #[command(flatten)]
        source: GraphSource,
    },
    Critical {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        s: usize,
    },
    /// Explicit `p`-coloring of `H_{p,q}`.
    ColorHpq {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Also write an SVG drawing of the coloring.
        #[arg(long)]
        emit_svg: Option<PathBuf>,
    },
    /// Look for expansions `G[W]` that are critically `(s+1)`-chromatic.
    ConjectureScan {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        max_w: usize,
        /// Overrides `--candidate-cap` for this scan.
        #[arg(long, value_parser = positive_u128)]
        budget: Option<u128>,
    },
    /// Check that `𝔪 ∈ Ass(R/J^3)` and `𝔪 ∉ Ass(R/J^4)` for `J = J(H_q)`.
    VerifyPaper {
        #[arg(long, default_value_t = 4)]
        q: usize,
        /// Required for `q >= 6`; also runs the colon route for `q = 5`.
        #[arg(long)]
        allow_slow: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Graph { .. } => "graph",
            Command::Covers { .. } => "covers",
            Command::CoverIdeal { .. } => "cover-ideal",
            Command::Power { .. } => "power",
            Command::Colon { .. } => "colon",
            Command::Localize { .. } => "localize",
            Command::Ass { .. } => "ass",
            Command::Persistence { .. } => "persistence",
            Command::Witness { .. } => "witness",
            Command::VerifyObs { .. } => "verify-obs",
            Command::Chi { .. } => "chi",
            Command::Critical { .. } => "critical",
            Command::ColorHpq { .. } => "color-hpq",
            Command::ConjectureScan { .. } => "conjecture-scan",
            Command::VerifyPaper { .. } => "verify-paper",
        }
    }
}

/// A finished command: structured result plus its text rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub result: Value,
    pub text: String,
}

impl Report {
    fn new<T: Serialize>(command: &'static str, result: &T, text: String) -> Result<Self> {
        Ok(Report { command, result: serde_json::to_value(result)?, text })
    }

    pub fn to_json(&self) -> String {
        let doc = json!({ "schema": SCHEMA_VERSION, "command": self.command, "result": self.result });
        serde_json::to_string_pretty(&doc).expect("values serialize")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json() + "\n",
            Format::Text if self.text.ends_with('\n') => self.text.clone(),
            Format::Text => format!("{}\n", self.text),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => exit::IO,
        Error::BudgetExceeded { .. } | Error::Refused(_) => exit::BUDGET,
        Error::Certificate(_) => exit::CERTIFICATE,
        _ => exit::INVALID,
    }
}

/// Run the configured command on a thread pool of the requested size.
pub fn execute(cli: &Cli) -> Result<Report> {
    match cli.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.get())
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            pool.install(|| dispatch(cli))
        }
        None => dispatch(cli),
    }
}

/// Parse `args`, run, write the report and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::OK };
        }
    };
    let result = execute(&cli).and_then(|report| {
        let out = report.render(cli.format);
        match &cli.out {
            Some(path) => fs::write(path, out)?,
            None => std::io::stdout().lock().write_all(out.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn load_text_or_file(s: &str) -> Result<String> {
    let path = Path::new(s);
    Ok(if path.is_file() { fs::read_to_string(path)? } else { s.to_string() })
}

fn check_ass_report(i: &MonomialIdeal, r: &AssReport) -> Result<()> {
    match (&r.witness, r.member) {
        (Some(t), true) => {
            let local = localize(i, &r.prime)?;
            if !is_witness(&local, &r.prime, t)? {
                return Err(Error::Certificate(format!("witness {t} fails for {}", r.prime)));
            }
            Ok(())
        }
        (None, false) => Ok(()),
        _ => Err(Error::Certificate(format!("member flag and witness disagree for {}", r.prime))),
    }
}

fn ass_line(r: &AssReport) -> String {
    let mut line = format!("{}: {}", r.prime, if r.member { "associated" } else { "not associated" });
    if let Some(t) = &r.witness {
        let _ = write!(line, " (witness {t})");
    }
    line
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let name = cli.command.name();
    match &cli.command {
        Command::Graph { p, q, emit } => {
            let g = Graph::build_hpq(*p, *q)?;
            let value: Value = serde_json::from_str(&g.to_json()?)?;
            let text = match emit {
                GraphFormat::Json => g.to_json()?,
                GraphFormat::Edges => g.to_edge_list(),
            };
            Report::new(name, &value, text)
        }
        Command::Covers { source } => {
            let g = source.load()?;
            let covers = g.minimal_vertex_covers();
            for c in &covers {
                let set = crate::bitset::VertexSet::from_iter(g.n(), c.vertices.iter().copied());
                if !g.is_minimal_vertex_cover(&set) {
                    return Err(Error::Certificate(format!("{:?} is not a minimal cover", c.vertices)));
                }
            }
            let mut text = format!("{} minimal vertex covers\n", covers.len());
            for c in &covers {
                let labels: Vec<&str> = c.vertices.iter().map(|&v| g.label(v)).collect();
                let _ = writeln!(text, "{{{}}}", labels.join(", "));
            }
            Report::new(name, &json!({ "count": covers.len(), "covers": covers }), text)
        }
        Command::CoverIdeal { source } => {
            let g = source.load()?;
            let j = cover_ideal(&g)?;
            let text = j.to_string();
            Report::new(name, &j, text)
        }
        Command::Power { ideal, s } => {
            if *s == 0 {
                return Err(Error::InvalidArgument("s must be at least 1".into()));
            }
            let i = ideal.load()?;
            let p = i.power(*s);
            let text = p.to_string();
            Report::new(name, &p, text)
        }
        Command::Colon { ideal, monomial, by_ideal, max } => {
            let i = ideal.load()?;
            let c = match (monomial, by_ideal, max) {
                (Some(m), _, _) => i.colon_monomial(&Monomial::parse(m, Some(i.arity()))?)?,
                (_, Some(k), _) => {
                    let k = MonomialIdeal::parse(&load_text_or_file(k)?, Some(i.arity()))?;
                    i.colon_ideal(&k)?
                }
                (_, _, true) => i.colon_ideal(&MonomialIdeal::maximal(i.arity()))?,
                _ => return Err(Error::InvalidArgument("give --monomial, --by-ideal or --max".into())),
            };
            if !i.is_subset_of(&c)? {
                return Err(Error::Certificate("colon does not contain the ideal".into()));
            }
            let text = c.to_string();
            Report::new(name, &c, text)
        }
        Command::Localize { ideal, vars } => {
            let i = ideal.load()?;
            let w = PrimeSupport::parse(vars, i.arity())?;
            let l = localize(&i, &w)?;
            let text = l.to_string();
            Report::new(name, &l, text)
        }
        Command::Ass { ideal, prime, method, max_support } => {
            let i = ideal.load()?;
            let reports = match prime {
                Some(p) => {
                    let w = PrimeSupport::parse(p, i.arity())?;
                    vec![match method {
                        AssMethodArg::Colon => assoc::prime_in_ass(&i, &w)?,
                        AssMethodArg::Search => assoc::witness_search(&i, &w, cli.candidate_cap)?,
                    }]
                }
                None => {
                    if *method != AssMethodArg::Colon {
                        return Err(Error::InvalidArgument("a full scan uses the colon method".into()));
                    }
                    assoc::ass_scan(&i, *max_support, cli.subset_guard)?
                }
            };
            for r in &reports {
                check_ass_report(&i, r)?;
            }
            match prime {
                Some(_) => {
                    let r = &reports[0];
                    Report::new(name, r, ass_line(r))
                }
                None => {
                    let members = assoc::members(&reports);
                    let mut text = format!("{} associated primes\n", members.len());
                    for r in reports.iter().filter(|r| r.member) {
                        let _ = writeln!(text, "{}", ass_line(r));
                    }
                    Report::new(name, &json!({ "associated": members, "reports": reports }), text)
                }
            }
        }
        Command::Persistence { source, smax, primes } => {
            let g = source.load()?;
            let j = cover_ideal(&g)?;
            let list = primes
                .as_deref()
                .map(|s| {
                    s.split(';')
                        .filter(|p| !p.trim().is_empty())
                        .map(|p| PrimeSupport::parse(p, j.arity()))
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?;
            let report = assoc::persistence_check(&j, *smax, list.as_deref(), cli.subset_guard)?;
            let powers = j.powers(*smax);
            for pa in &report.per_power {
                for r in &pa.reports {
                    check_ass_report(&powers[pa.power as usize - 1], r)?;
                }
            }
            let mut text = String::new();
            for pa in &report.per_power {
                let members: Vec<String> =
                    pa.reports.iter().filter(|r| r.member).map(|r| r.prime.to_string()).collect();
                let _ = writeln!(text, "s = {}: {} generators, {} associated primes", pa.power, pa.generators, members.len());
            }
            if report.persists() {
                text.push_str("no persistence violation\n");
            }
            for v in &report.violations {
                let _ = writeln!(text, "violation at s = {}: {} (witness {})", v.power, v.prime, v.witness);
            }
            Report::new(name, &json!({ "persists": report.persists(), "report": report }), text)
        }
        Command::Witness { q, s } => {
            let r = assoc::pruned_witness_search_capped(3, *q, *s, cli.candidate_cap)?;
            if let Some(t) = &r.witness {
                let j = cover_ideal(&Graph::build_hpq(3, *q)?)?;
                let oracle = ProductMembership::new(&j, *s);
                let ok = !oracle.contains(t) && (0..t.arity()).all(|k| oracle.contains(&t.mul_var(k).expect("in range")));
                if !ok {
                    return Err(Error::Certificate(format!("witness {t} fails")));
                }
            }
            let text = format!(
                "m in Ass(R/J^{s}) for J = J(H_{q}): {} ({} candidates){}",
                r.member,
                r.candidates_examined.unwrap_or(0),
                r.witness.as_ref().map(|t| format!("\nwitness {t}")).unwrap_or_default()
            );
            debug_assert_eq!(r.method, AssMethod::PrunedSearch);
            Report::new(name, &r, text)
        }
        Command::VerifyObs { q } => {
            let d = assoc::CubeDecomposition::construct(*q)?;
            let holds = d.verify()?;
            let mut text = format!("{holds}\n");
            for (k, m) in d.covers.iter().enumerate() {
                let _ = writeln!(text, "M{} = {m}", k + 1);
            }
            let _ = writeln!(text, "N = {}", d.remainder);
            Report::new(name, &json!({ "holds": holds, "decomposition": d }), text)
        }
        Command::Chi { source } => {
            let g = source.load()?;
            let r = coloring::chromatic_number(&g);
            r.coloring.check(&g)?;
            if r.coloring.used_colors() != r.chromatic_number {
                return Err(Error::Certificate("coloring does not use exactly chi colors".into()));
            }
            let is_clique = r.clique.iter().enumerate().all(|(a, &u)| r.clique[a + 1..].iter().all(|&v| g.has_edge(u, v)));
            if !is_clique || r.clique.len() > r.chromatic_number {
                return Err(Error::Certificate("clique certificate is invalid".into()));
            }
            let text = r.chromatic_number.to_string();
            Report::new(name, &r, text)
        }
        Command::Critical { source, s } => {
            let g = source.load()?;
            let r = coloring::is_critically_chromatic(&g, *s)?;
            for &v in &r.surviving {
                let h = g.delete_vertex(v)?;
                if k_coloring(&h, s - 1, &greedy_clique(&h)).is_some() {
                    return Err(Error::Certificate(format!("vertex {v} does not survive")));
                }
            }
            let mut text = format!("critically {s}-chromatic: {} (chi = {})", r.critical, r.chromatic_number);
            if !r.surviving_labels.is_empty() {
                let _ = write!(text, "\nsurviving: {}", r.surviving_labels.join(", "));
            }
            Report::new(name, &r, text)
        }
        Command::ColorHpq { p, q, emit_svg } => {
            let g = Graph::build_hpq(*p, *q)?;
            let c = coloring::explicit_coloring_hpq(*p, *q)?;
            c.check(&g)?;
            if c.used_colors() != *p {
                return Err(Error::Certificate(format!("coloring uses {} colors, expected {p}", c.used_colors())));
            }
            if let Some(path) = emit_svg {
                fs::write(path, coloring::render_hpq_svg(*p, *q, &c)?)?;
            }
            let mut text = format!("proper {p}-coloring of H_{{{p},{q}}} ({:?})\n", coloring::HpqCase::of(*p, *q));
            for (v, col) in c.colors.iter().enumerate() {
                let _ = writeln!(text, "{} {col}", g.label(v));
            }
            Report::new(name, &json!({ "case": coloring::HpqCase::of(*p, *q), "coloring": c }), text)
        }
        Command::ConjectureScan { source, s, max_w, budget } => {
            let g = source.load()?;
            let r = coloring::conjecture_scan(&g, *s, *max_w, budget.unwrap_or(cli.candidate_cap))?;
            for w in &r.hits {
                if !coloring::is_critically_chromatic(&g.expand_at(w)?, s + 1)?.critical {
                    return Err(Error::Certificate(format!("expansion at {w:?} is not critical")));
                }
            }
            let mut text = format!("{} expansions examined, {} hits", r.examined, r.hits.len());
            for w in &r.hits {
                let labels: Vec<&str> = w.iter().map(|&v| g.label(v)).collect();
                let _ = write!(text, "\n{{{}}}", labels.join(", "));
            }
            Report::new(name, &r, text)
        }
        Command::VerifyPaper { q, allow_slow } => {
            let mut opts = ReproduceOptions::for_q(*q, *allow_slow);
            opts.candidate_cap = cli.candidate_cap;
            opts.time_budget = cli.time_budget;
            let r = reproduce::verify_theorem(*q, &opts)?;
            reproduce::revalidate(&r, &cover_ideal(&Graph::build_hpq(3, *q)?)?)?;
            let route = |v: &reproduce::PowerVerdict| {
                let colon = v.colon.as_ref().map(|c| c.member.to_string()).unwrap_or_else(|| "skipped".into());
                format!("m in Ass(R/J^{}): pruned {}, colon {}", v.power, v.pruned.member, colon)
            };
            let text = format!(
                "H_{q}: {} vertices, {} edges, {} minimal covers\ncritically 4-chromatic: {}\ncube decomposition: {}\n{}\n{}\n{}",
                r.vertices,
                r.edges,
                r.minimal_covers,
                r.critical.critical,
                r.cube_decomposition,
                route(&r.cube),
                route(&r.fourth),
                r.verdict
            );
            Report::new(name, &r, text)
        }
    }
}
