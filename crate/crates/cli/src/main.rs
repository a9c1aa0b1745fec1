use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sitawim::exactpoly::{buchberger_with, linear_reduce_with, rational_span_basis, LinearReduceOptions, LinearReduction, MonomialOrder, PolyError, PolySet};
use sitawim::feasibility::feasibility;
use sitawim::solver::{run_search, PointStatus, SolveError};
use sitawim::spectra::spectral_data;
use sitawim::structcheck::Instance;
use sitawim::varietygen::{build_template_with, emit_structure_polys, enumerate_rational_tables, trace_constraints, Assumption, DegreeSymbols, InvolutionType, Template, TemplateOptions, TraceSource};
use sitawim::workbench::analyze::analyze;
use sitawim::workbench::catalog::{config_digest, CatalogEntry, ListFilter, Store};
use sitawim::workbench::config::{load_search_config, read_json, AssumptionSpec, Command, OutputFormat, RunConfig};
use sitawim::workbench::repro::{run_scenario, ReproOptions, SCENARIOS};
use sitawim::workbench::WorkbenchError;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CONDITION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "sitawim", version, about = "Generate, solve and vet parameter varieties of table algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// Order n (required by `tables`).
    #[arg(long, global = true)]
    order: Option<i64>,
    /// Involution type: 4S, 4A1, 5S, 5A1 or 5A2.
    #[arg(long, global = true)]
    itype: Option<InvolutionType>,
    /// `pseudocyclic` or `table:<file>`.
    #[arg(long, global = true)]
    assumption: Option<AssumptionSpec>,
    #[arg(long, global = true, default_value_t = 256)]
    precision_bits: u32,
    #[arg(long, global = true, default_value_t = 1e-20)]
    eps: f64,
    /// Highest Gegenbauer degree (default 2 max m_i).
    #[arg(long, global = true)]
    lmax: Option<usize>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, default_value_t = 60)]
    cap_degree: u32,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap_terms: usize,
    #[arg(long, global = true, env = "SITAWIM_STORE")]
    store: Option<PathBuf>,
    #[arg(long, global = true, default_value = "text")]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Degrees {
    PerClass,
    Homogeneous,
    Single,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// Degree symbols; defaults to `single` for pseudocyclic, else per class.
    #[arg(long)]
    degrees: Option<Degrees>,
    /// Variables kept through linear reduction, comma separated.
    #[arg(long, value_delimiter = ',')]
    keep: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Emit the template and its polynomial system.
    Gen(SystemArgs),
    /// Apply linear substitutions and report the rational-span basis.
    Reduce(SystemArgs),
    /// Gröbner basis of the linearly reduced system.
    Gb {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum, default_value = "grevlex")]
        monomial_order: Order,
    },
    /// Run a grid search described by a JSON configuration.
    Search {
        config: PathBuf,
        /// Catalog every instance found.
        #[arg(long)]
        insert: bool,
    },
    /// Structural and spectral analysis of an instance file.
    Analyze {
        instance: PathBuf,
        #[arg(long)]
        insert: bool,
    },
    /// Feasibility battery on an instance file.
    Feas { instance: PathBuf },
    /// Enumerate rationalized character tables of `--order`.
    Tables,
    /// Run a named reproduction scenario.
    Repro {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Catalog operations.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    Insert {
        instance: PathBuf,
        #[arg(long, default_value = "manual")]
        provenance: String,
    },
    Load { digest: String },
    List {
        #[arg(long)]
        min_order: Option<i64>,
        #[arg(long)]
        max_order: Option<i64>,
        #[arg(long, conflicts_with = "noncyclotomic")]
        cyclotomic: bool,
        #[arg(long)]
        noncyclotomic: bool,
        #[arg(long, conflicts_with = "infeasible")]
        feasible: bool,
        #[arg(long)]
        infeasible: bool,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<WorkbenchError> for Failure {
    fn from(e: WorkbenchError) -> Self {
        let (code, kind) = match &e {
            WorkbenchError::Poly(PolyError::ResourceLimit(_)) | WorkbenchError::Solve(SolveError::Cap(_)) | WorkbenchError::Solve(SolveError::Poly(PolyError::ResourceLimit(_))) => (EXIT_CAP, "cap"),
            WorkbenchError::Io(_) => (EXIT_USAGE, "io"),
            WorkbenchError::Format(_) | WorkbenchError::Schema { .. } => (EXIT_USAGE, "format"),
            WorkbenchError::Duplicate(_) => (EXIT_CONDITION, "duplicate"),
            WorkbenchError::Collision(_) => (EXIT_CONDITION, "collision"),
            WorkbenchError::Config(_) | WorkbenchError::UnknownScenario(_) | WorkbenchError::Variety(_) => (EXIT_USAGE, "usage"),
            _ => (EXIT_CONDITION, "computation"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

macro_rules! from_via_workbench {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                WorkbenchError::from(e).into()
            }
        }
    )*};
}
from_via_workbench!(PolyError, SolveError, sitawim::varietygen::VarietyError, sitawim::spectra::SpectraError, sitawim::structcheck::StructError);

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.global.format;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match format {
                OutputFormat::Machine => eprintln!("{}", json!({"error": f.kind, "message": f.message, "exit": f.code})),
                OutputFormat::Text => eprintln!("error: {}", f.message),
            }
            ExitCode::from(f.code)
        }
    }
}

fn run_config(g: &Global, cmd: &Cmd) -> RunConfig {
    let command = match cmd {
        Cmd::Gen(_) => Command::Gen,
        Cmd::Reduce(_) => Command::Reduce,
        Cmd::Gb { .. } => Command::Gb,
        Cmd::Search { .. } => Command::Search,
        Cmd::Analyze { .. } => Command::Analyze,
        Cmd::Feas { .. } => Command::Feas,
        Cmd::Tables => Command::Tables,
        Cmd::Repro { .. } => Command::Repro,
        Cmd::Catalog(_) => Command::Catalog,
    };
    RunConfig {
        command,
        order: g.order,
        itype: g.itype,
        assumption: g.assumption.clone(),
        grid: Vec::new(),
        precision_bits: g.precision_bits,
        eps: g.eps,
        lmax: g.lmax,
        jobs: g.jobs,
        cap_degree: g.cap_degree,
        cap_terms: g.cap_terms,
        store: g.store.clone(),
        format: g.format,
    }
}

fn run(cli: Cli) -> Outcome {
    let cfg = run_config(&cli.global, &cli.cmd);
    cfg.validate()?;
    match &cli.cmd {
        Cmd::Gen(sys) => gen(&cfg, sys),
        Cmd::Reduce(sys) => reduce(&cfg, sys),
        Cmd::Gb { sys, monomial_order } => gb(&cfg, sys, *monomial_order),
        Cmd::Search { config, insert } => search(&cfg, config, *insert),
        Cmd::Analyze { instance, insert } => analyze_cmd(&cfg, instance, *insert),
        Cmd::Feas { instance } => feas(&cfg, instance),
        Cmd::Tables => tables(&cfg),
        Cmd::Repro { name, list } => repro(&cfg, name.as_deref(), *list),
        Cmd::Catalog(c) => catalog(&cfg, c),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, kind: "usage", message: msg.into() }
}

struct System {
    template: Template,
    polys: PolySet,
}

fn system(cfg: &RunConfig, sys: &SystemArgs) -> Result<System, Failure> {
    let itype = cfg.itype.ok_or_else(|| usage("--itype is required"))?;
    let spec = cfg.assumption.clone();
    let table = match &spec {
        Some(a) => a.load_table()?,
        None => None,
    };
    let (assumption, trace) = match (&spec, &table) {
        (None, _) => (Assumption::None, None),
        (Some(AssumptionSpec::Pseudocyclic), _) => (Assumption::Pseudocyclic, Some(TraceSource::Pseudocyclic)),
        (Some(AssumptionSpec::Table(_)), Some(t)) => (Assumption::RationalTable, Some(TraceSource::Table(t.clone()))),
        (Some(AssumptionSpec::Table(_)), None) => unreachable!("load_table returns the table"),
    };
    let degrees = match (&table, sys.degrees) {
        (Some(t), _) => DegreeSymbols::Numeric(t.degrees.to_vec()),
        (None, Some(Degrees::PerClass)) => DegreeSymbols::PerClass,
        (None, Some(Degrees::Homogeneous)) => DegreeSymbols::Homogeneous,
        (None, Some(Degrees::Single)) => DegreeSymbols::Single,
        (None, None) if assumption == Assumption::Pseudocyclic => DegreeSymbols::Single,
        (None, None) => DegreeSymbols::PerClass,
    };
    let template = build_template_with(itype.rank(), itype, assumption, &TemplateOptions::new(degrees))?;
    let mut polys = emit_structure_polys(&template);
    if let Some(tr) = &trace {
        polys.extend(&trace_constraints(&template, tr)?);
    }
    polys.extend(&template.side);
    Ok(System { template, polys })
}

fn poly_records(s: &PolySet) -> Vec<serde_json::Value> {
    s.iter().map(|(p, tag)| json!({"tag": tag, "poly": p.to_string()})).collect()
}

fn gen(cfg: &RunConfig, sys: &SystemArgs) -> Outcome {
    let s = system(cfg, sys)?;
    let names = s.template.ring.names();
    match cfg.format {
        OutputFormat::Machine => println!("{}", json!({"variables": names, "template": s.template.render(), "polynomials": poly_records(&s.polys)})),
        OutputFormat::Text => {
            println!("variables {}", names.join(","));
            print!("{}", s.template.render());
            for (p, tag) in s.polys.iter() {
                println!("[{tag}] {p}");
            }
        }
    }
    Ok(0)
}

fn reduction(s: &System, sys: &SystemArgs) -> Result<LinearReduction, Failure> {
    let r = &s.template.ring;
    let keep = sys.keep.iter().map(|n| r.index_of(n).ok_or_else(|| usage(format!("unknown variable {n}")))).collect::<Result<Vec<_>, _>>()?;
    Ok(linear_reduce_with(&s.polys, &s.template.positives(), &LinearReduceOptions { keep, max_steps: None })?)
}

fn reduce(cfg: &RunConfig, sys: &SystemArgs) -> Outcome {
    let s = system(cfg, sys)?;
    let red = reduction(&s, sys)?;
    let r = &s.template.ring;
    let span = rational_span_basis(&red.remaining);
    match cfg.format {
        OutputFormat::Machine => {
            let subs: Vec<_> = red.substitutions.iter().map(|x| json!({"var": r.name(x.var), "expr": x.expr.to_string(), "source": x.source})).collect();
            println!("{}", json!({"substitutions": subs, "remaining": poly_records(&red.remaining), "span": poly_records(&span)}));
        }
        OutputFormat::Text => {
            for x in &red.substitutions {
                println!("{} := {} [{}]", r.name(x.var), x.expr, x.source);
            }
            println!("remaining {}", red.remaining.len());
            for p in red.remaining.polys() {
                println!("  {p}");
            }
            println!("rational span {}", span.len());
            for p in span.polys() {
                println!("  {p}");
            }
        }
    }
    Ok(0)
}

fn gb(cfg: &RunConfig, sys: &SystemArgs, order: Order) -> Outcome {
    let s = system(cfg, sys)?;
    let red = reduction(&s, sys)?;
    let n = s.template.ring.nvars();
    let order = match order {
        Order::Grevlex => MonomialOrder::grevlex(n),
        Order::Lex => MonomialOrder::lex(n),
    };
    let g = buchberger_with(&red.remaining, &order, &cfg.gb_config())?;
    let polys: Vec<String> = g.polys().iter().map(|p| p.to_string()).collect();
    match cfg.format {
        OutputFormat::Machine => println!("{}", json!({"zero_dimensional": g.is_zero_dimensional(), "unit": g.is_unit(), "basis": polys})),
        OutputFormat::Text => {
            println!("basis {} elements{}", polys.len(), if g.is_unit() { " (unit ideal)" } else { "" });
            for p in polys {
                println!("  {p}");
            }
        }
    }
    Ok(0)
}

fn store(cfg: &RunConfig) -> Result<Store, Failure> {
    let p = cfg.store.as_ref().ok_or_else(|| usage("no store: pass --store or set SITAWIM_STORE"))?;
    Ok(Store::open(p)?)
}

fn insert_or_skip(st: &Store, e: &CatalogEntry) -> Result<bool, Failure> {
    match st.insert(e) {
        Ok(()) => Ok(true),
        Err(WorkbenchError::Duplicate(_)) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

fn search(cfg: &RunConfig, path: &Path, insert: bool) -> Outcome {
    let sc = cfg.apply_to(load_search_config(path)?);
    let st = if insert { Some(store(cfg)?) } else { None };
    let out = run_search(&sc)?;
    let provenance = format!("search:{}", config_digest(&sc));
    let mut entries = Vec::new();
    for inst in &out.instances {
        entries.push(CatalogEntry::from_analysis(&analyze(inst, &cfg.feas_config())?, &provenance));
    }
    let mut added = 0;
    if let Some(st) = &st {
        for e in &entries {
            added += insert_or_skip(st, e)? as usize;
        }
    }
    match cfg.format {
        OutputFormat::Machine => {
            for e in &entries {
                println!("{}", e.to_line());
            }
        }
        OutputFormat::Text => {
            for o in out.outcomes.iter().filter(|o| o.status != PointStatus::Empty) {
                println!("{}", o.line());
            }
            for e in &entries {
                println!("instance {} order {} degrees {:?} {} {}", &e.digest[..12], e.order, e.degrees, if e.cyclotomic { "cyclotomic" } else { "noncyclotomic" }, e.factorizations.join(" "));
            }
            let count = |s| out.count(s);
            println!("points {} sol {} empty {} posdim {} cap {} instances {}", out.outcomes.len(), count(PointStatus::Sol), count(PointStatus::Empty), count(PointStatus::Posdim), count(PointStatus::Cap), entries.len());
            if st.is_some() {
                println!("catalogued {added} new");
            }
        }
    }
    Ok(if out.count(PointStatus::Cap) > 0 { EXIT_CAP } else { 0 })
}

/// Instance from a JSON file holding at least a `matrices` array; a
/// missing `.json` extension is tried too.
fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let p = if path.exists() { path.to_path_buf() } else { path.with_extension("json") };
    let v: serde_json::Value = read_json(&p)?;
    let m = v.get("matrices").ok_or_else(|| usage(format!("{}: no `matrices` field", p.display())))?;
    let matrices: Vec<Vec<Vec<i64>>> = serde_json::from_value(m.clone()).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    Ok(Instance::new(matrices)?)
}

fn analyze_cmd(cfg: &RunConfig, path: &Path, insert: bool) -> Outcome {
    let inst = load_instance(path)?;
    let a = analyze(&inst, &cfg.feas_config())?;
    if !a.sita {
        match cfg.format {
            OutputFormat::Machine => println!("{}", json!({"sita": false, "failures": a.sita_failures})),
            OutputFormat::Text => print!("{a}"),
        }
        return Ok(EXIT_CONDITION);
    }
    let e = CatalogEntry::from_analysis(&a, &format!("file:{}", path.display()));
    if insert {
        insert_or_skip(&store(cfg)?, &e)?;
    }
    match cfg.format {
        OutputFormat::Machine => println!("{}", e.to_line()),
        OutputFormat::Text => {
            print!("{a}");
            println!("digest {}", e.digest);
        }
    }
    Ok(0)
}

fn feas(cfg: &RunConfig, path: &Path) -> Outcome {
    let inst = load_instance(path)?;
    let fc = cfg.feas_config();
    let sd = spectral_data(&inst, &fc.spectra)?;
    let rep = feasibility(&inst, &fc, Some(&sd));
    match cfg.format {
        OutputFormat::Machine => println!("{}", serde_json::to_string(&rep).expect("report serializes")),
        OutputFormat::Text => print!("{rep}"),
    }
    Ok(if rep.feasible() { 0 } else { EXIT_CONDITION })
}

fn tables(cfg: &RunConfig) -> Outcome {
    let n = cfg.order.ok_or_else(|| usage("--order is required"))?;
    for t in enumerate_rational_tables(n) {
        match cfg.format {
            OutputFormat::Machine => println!("{}", serde_json::to_string(&t).expect("table serializes")),
            OutputFormat::Text => println!("n={} m1={} m2={} degrees={:?} a={:?} t={:?}", t.n, t.m1, t.m2, t.degrees, t.a, t.t),
        }
    }
    Ok(0)
}

fn repro(cfg: &RunConfig, name: Option<&str>, list: bool) -> Outcome {
    if list || name.is_none() {
        for (n, about) in SCENARIOS {
            println!("{n:<18} {about}");
        }
        return Ok(if list { 0 } else { EXIT_USAGE });
    }
    let opts = ReproOptions { feas: cfg.feas_config(), gb: cfg.gb_config(), jobs: cfg.jobs, ..ReproOptions::default() };
    let rep = run_scenario(name.unwrap_or_default(), &opts)?;
    match cfg.format {
        OutputFormat::Machine => println!("{}", serde_json::to_string(&rep).expect("report serializes")),
        OutputFormat::Text => print!("{rep}"),
    }
    Ok(if rep.passed() { 0 } else { EXIT_CONDITION })
}

fn catalog(cfg: &RunConfig, c: &CatalogCmd) -> Outcome {
    let st = store(cfg)?;
    let print = |e: &CatalogEntry| match cfg.format {
        OutputFormat::Machine => println!("{}", e.to_line()),
        OutputFormat::Text => println!("{} order {} degrees {:?} {} feasible={} {}", &e.digest[..12], e.order, e.degrees, if e.cyclotomic { "cyclotomic" } else { "noncyclotomic" }, e.feasible.map_or("-".into(), |f| f.to_string()), e.provenance),
    };
    match c {
        CatalogCmd::Insert { instance, provenance } => {
            let a = analyze(&load_instance(instance)?, &cfg.feas_config())?;
            if !a.sita {
                return Err(Failure { code: EXIT_CONDITION, kind: "not-sita", message: a.sita_failures.join("; ") });
            }
            let e = CatalogEntry::from_analysis(&a, provenance);
            st.insert(&e)?;
            print(&e);
        }
        CatalogCmd::Load { digest } => match st.load(digest)? {
            Some(e) => print(&e),
            None => return Err(Failure { code: EXIT_CONDITION, kind: "not-found", message: format!("no entry with digest {digest}") }),
        },
        CatalogCmd::List { min_order, max_order, cyclotomic, noncyclotomic, feasible, infeasible } => {
            let filter = ListFilter {
                min_order: *min_order,
                max_order: *max_order,
                itype: cfg.itype,
                cyclotomic: flag(*cyclotomic, *noncyclotomic),
                feasible: flag(*feasible, *infeasible),
            };
            for e in st.list(&filter)? {
                print(&e);
            }
        }
    }
    Ok(0)
}

fn flag(yes: bool, no: bool) -> Option<bool> {
    match (yes, no) {
        (true, _) => Some(true),
        (_, true) => Some(false),
        _ => None,
    }
}
