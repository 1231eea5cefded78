mod checks;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use endoforge::algebra::{babai_pultr_monoid, LinearExtension, Monoid, DEFAULT_SIZE_CAP};
use endoforge::blowup::{blow_up, BlowupError};
use endoforge::cayley::{augment_cayley, cayley_colored, CayleyError};
use endoforge::endo::{enumerate_endomorphisms, enumerate_graph_endomorphisms, EndoConfig};
use endoforge::graphcore::{digraph_to_dot, graph_to_dot, ArcColoredDigraph};
use endoforge::io::{self, AnyGraph};
use endoforge::lattice_encoding::{build_encoding, EncodingError, DEFAULT_CHAIN_CAP};
use endoforge::pipeline::{
    run_pipeline, MonoidRoute, PipelineError, PipelineInput, PipelineOptions, PipelineReport, StageReport,
};
use endoforge::retracts::verify_minor_model;
use endoforge::sip::{sip_product, SipError};

/// Exit 2 for unusable input, exit 1 for a violated hypothesis or a failed check.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Check(_) => 1,
        }
    }
}

/// Error types whose variants correspond to hypotheses of a construction.
pub trait Hypothesis {
    fn hypothesis(&self) -> String;
}

impl Hypothesis for SipError {
    fn hypothesis(&self) -> String {
        match self {
            SipError::HasLoops => {
                "hypothesis violated: D loopless with δ⁺(D), δ⁻(D) ≥ 1 (the input has a loop)".into()
            }
            SipError::MinDegreeViolation => "hypothesis violated: D loopless with δ⁺(D), δ⁻(D) ≥ 1 \
                 (some vertex has no outgoing or no incoming arc)"
                .into(),
            SipError::KTooSmall { k, colors } => format!(
                "hypothesis violated: H^k has at least one anchor pair per color (k = {k}, {colors} colors)"
            ),
            SipError::NotEndomorphism => self.to_string(),
        }
    }
}

impl Hypothesis for BlowupError {
    fn hypothesis(&self) -> String {
        match self {
            BlowupError::NoColors => "hypothesis violated: D has at least one color".into(),
            BlowupError::NotEndomorphism => self.to_string(),
        }
    }
}

impl Hypothesis for CayleyError {
    fn hypothesis(&self) -> String {
        match self {
            CayleyError::NotGenerating => "hypothesis violated: C generates M".into(),
            CayleyError::TooManyGenerators { given, size } => {
                format!("hypothesis violated: |C| ≤ |M| − 1 (|C| = {given}, |M| = {size})")
            }
            CayleyError::NotAnElement(x) => format!("hypothesis violated: C ⊆ M ({x} is not an element)"),
        }
    }
}

impl Hypothesis for EncodingError {
    fn hypothesis(&self) -> String {
        self.to_string()
    }
}

impl Hypothesis for PipelineError {
    fn hypothesis(&self) -> String {
        match self {
            PipelineError::Cayley(e) => e.hypothesis(),
            PipelineError::Encoding(e) => e.hypothesis(),
            PipelineError::Blowup(e) => e.hypothesis(),
            PipelineError::Sip(e) => e.hypothesis(),
            PipelineError::Input(s) => s.clone(),
        }
    }
}

pub fn precondition(e: impl Hypothesis) -> Failure {
    Failure::Check(e.hypothesis())
}

#[derive(Parser)]
#[command(name = "endoforge", version, about = "Graphs with prescribed endomorphism monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monoid tables: validation, predicates, generators, the Babai–Pultr family.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Build one stage or the whole pipeline and write the resulting graph.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Enumerate the endomorphisms of a graph file.
    Endo(EndoArgs),
    /// Run a verification suite; exits 1 if any check fails.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Minor witnesses: extract one from an encoding, or re-check a saved one.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Format conversions.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Subcommand)]
enum MonoidCmd {
    /// Check that a table is associative with the given identity.
    Validate { file: PathBuf },
    /// Commutative, idempotent, completely regular.
    Predicates { file: PathBuf },
    /// A minimum-size generating set.
    Gens { file: PathBuf },
    /// The Babai–Pultr monoid for a prime p.
    Bp {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Worker threads for enumeration.
    #[arg(long)]
    jobs: Option<usize>,
    /// Node budget for enumeration (overrides ENDOFORGE_NODE_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
}

impl SearchArgs {
    fn config(&self) -> Result<EndoConfig, Failure> {
        let budget = match (self.budget, std::env::var("ENDOFORGE_NODE_BUDGET")) {
            (Some(b), _) => b,
            (None, Ok(s)) => s
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("ENDOFORGE_NODE_BUDGET: not a number: {s:?}")))?,
            (None, Err(_)) => endoforge::endo::DEFAULT_NODE_BUDGET,
        };
        if self.jobs == Some(0) {
            return Err(Failure::Input("--jobs must be at least 1".into()));
        }
        Ok(EndoConfig { node_budget: budget, jobs: self.jobs, ..EndoConfig::default() })
    }
}

#[derive(Args)]
struct OutArgs {
    /// Output graph JSON.
    #[arg(long)]
    out: PathBuf,
    /// Also write Graphviz DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Enumerate End of the input and output and report whether they agree.
    #[arg(long)]
    verify: bool,
    /// Include wall-clock milliseconds in the report (makes the report non-reproducible).
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Cayley,
    Augment,
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Colored Cayley graph of a monoid.
    Cayley {
        #[arg(long)]
        monoid: PathBuf,
        /// Comma-separated generators; default: a minimum generating set.
        #[arg(long)]
        gens: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Augmented Cayley graph (loopless, every vertex with in- and out-arcs).
    Augment {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long)]
        gens: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Seven-color lattice encoding.
    Encode {
        /// chain:N, bn:N, m3, n5, example, ideals:<poset>, or a poset JSON file.
        #[arg(long)]
        lattice: String,
        /// Linear extension as a comma-separated element order.
        #[arg(long)]
        extension: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Degree-reducing blow-up of a digraph.
    Blowup {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Šip-product of a loopless digraph with the gadget H^k.
    Sip {
        #[arg(long)]
        input: PathBuf,
        /// Gadget parameter, or "auto".
        #[arg(long, default_value = "auto")]
        k: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Monoid or lattice to a simple graph.
    Pipeline {
        #[arg(long, conflicts_with = "lattice", required_unless_present = "lattice")]
        monoid: Option<PathBuf>,
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, value_enum, default_value = "cayley")]
        route: RouteArg,
        #[arg(long, default_value = "auto")]
        k: String,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct EndoArgs {
    /// Digraph or simple graph JSON.
    file: PathBuf,
    #[arg(long, group = "mode")]
    count: bool,
    #[arg(long, group = "mode")]
    maps: bool,
    #[arg(long, group = "mode")]
    table: bool,
    #[command(flatten)]
    search: SearchArgs,
}

/// The digraph a verification starts from.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Digraph JSON.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Lattice spec; the digraph is its encoding.
    #[arg(long)]
    lattice: Option<String>,
    /// Monoid JSON; the digraph is its colored Cayley graph on a minimum generating set.
    #[arg(long)]
    monoid: Option<PathBuf>,
}

impl SourceArgs {
    fn digraph(&self) -> Result<ArcColoredDigraph, Failure> {
        if let Some(p) = &self.input {
            return input::digraph(p);
        }
        if let Some(spec) = &self.lattice {
            let l = input::lattice(spec)?;
            let enc = build_encoding(&l, &LinearExtension::canonical(&l), DEFAULT_CHAIN_CAP).map_err(precondition)?;
            return Ok(enc.digraph);
        }
        let m = input::monoid(self.monoid.as_ref().expect("one source is required"))?;
        let gens = m.minimal_generating_set().map_err(|e| Failure::Check(e.to_string()))?;
        cayley_colored(&m, &gens).map_err(precondition)
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LatticeSource {
    #[arg(long)]
    lattice: Option<String>,
    /// Poset spec P; the lattice is its down-set lattice.
    #[arg(long)]
    poset: Option<String>,
}

impl LatticeSource {
    fn lattice(&self) -> Result<endoforge::algebra::Lattice, Failure> {
        match (&self.lattice, &self.poset) {
            (Some(l), _) => input::lattice(l),
            (None, Some(p)) => endoforge::algebra::Lattice::ideal_lattice(&input::poset(p)?, DEFAULT_SIZE_CAP)
                .map(|i| i.lattice)
                .map_err(|e| Failure::Input(e.to_string())),
            (None, None) => unreachable!("clap requires one source"),
        }
    }
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// End of the lattice encoding is {φ_w} and ≅ (L, ∧).
    Encoding {
        #[arg(long)]
        lattice: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Blow-up: degrees and End preservation.
    Blowup {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Šip-product: degrees, sizes and End preservation.
    Sip {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "auto")]
        k: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Every pipeline stage has End isomorphic to the input.
    Pipeline {
        #[arg(long, conflicts_with = "lattice", required_unless_present = "lattice")]
        monoid: Option<PathBuf>,
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long, value_enum, default_value = "cayley")]
        route: RouteArg,
        #[arg(long, default_value = "auto")]
        k: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Counts, girth and rigidity of H^k.
    Gadget {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Size, complete regularity and group of units of the Babai–Pultr monoid.
    BpMonoid {
        #[arg(long)]
        p: usize,
    },
    /// Retract lattice, private parts and the cover-graph minor of an encoding.
    Minor {
        #[command(flatten)]
        source: LatticeSource,
        /// Run the extraction even if J(L) is not thick.
        #[arg(long)]
        allow_non_thick: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Extract the cover-graph minor model from the encoding of L and write it as JSON.
    Minor {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long)]
        out: PathBuf,
        /// Also write the host (the underlying graph of the encoding).
        #[arg(long)]
        host_out: Option<PathBuf>,
        #[arg(long)]
        allow_non_thick: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check a minor model against a host graph.
    Check {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        model: PathBuf,
    },
}

#[derive(Subcommand)]
enum ExportCmd {
    /// Graphviz DOT for a digraph or graph JSON file.
    Dot {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn parse_k(s: &str) -> Result<Option<usize>, Failure> {
    if s == "auto" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| Failure::Input(format!("--k: expected a number or \"auto\", got {s:?}")))
}

fn gens_or_minimal(m: &Monoid, gens: &Option<String>) -> Result<Vec<usize>, Failure> {
    match gens {
        Some(s) => input::elements(s),
        None => m.minimal_generating_set().map_err(|e| Failure::Check(e.to_string())),
    }
}

fn route(r: RouteArg) -> MonoidRoute {
    match r {
        RouteArg::Cayley => MonoidRoute::Cayley,
        RouteArg::Augment => MonoidRoute::Augmented,
    }
}

fn write_digraph(d: &ArcColoredDigraph, out: &OutArgs) -> Result<(), Failure> {
    input::write(&out.out, &serde_json::to_string(&io::digraph_to_json(d)).expect("serializable"))?;
    if let Some(dot) = &out.dot {
        input::write(dot, &digraph_to_dot(d))?;
    }
    Ok(())
}

fn single_stage(input: String, target_size: usize, report: StageReport) -> PipelineReport {
    PipelineReport { input, target_size, k: None, stages: vec![report] }
}

/// Stage report for a digraph, with an End comparison against `target` when requested.
fn digraph_stage(
    stage: &str,
    d: &ArcColoredDigraph,
    target: impl FnOnce() -> Result<Monoid, Failure>,
    out: &OutArgs,
    start: std::time::Instant,
) -> Result<StageReport, Failure> {
    let mut r = StageReport::for_digraph(stage, d);
    if out.verify {
        let target = target()?;
        match enumerate_endomorphisms(d, &out.search.config()?).and_then(|t| t.table()) {
            Ok(t) => {
                r.end = Some(endoforge::pipeline::EndCheck {
                    size: t.size(),
                    isomorphic_to_target: t.is_isomorphic(&target),
                })
            }
            Err(e) => r.skipped = Some(e.to_string()),
        }
    }
    r.ms = out.timings.then(|| start.elapsed().as_millis() as u64);
    Ok(r)
}

fn end_of(d: &ArcColoredDigraph, out: &OutArgs) -> Result<Monoid, Failure> {
    enumerate_endomorphisms(d, &out.search.config()?)
        .and_then(|t| t.table())
        .map_err(|e| Failure::Check(format!("End of the input: {e}")))
}

fn build(cmd: BuildCmd) -> Result<PipelineReport, Failure> {
    let start = std::time::Instant::now();
    match cmd {
        BuildCmd::Cayley { monoid, gens, out } => {
            let m = input::monoid(&monoid)?;
            let g = gens_or_minimal(&m, &gens)?;
            let d = cayley_colored(&m, &g).map_err(precondition)?;
            write_digraph(&d, &out)?;
            let r = digraph_stage("cayley", &d, || Ok(m.clone()), &out, start)?;
            Ok(single_stage(format!("monoid of order {}", m.size()), m.size(), r))
        }
        BuildCmd::Augment { monoid, gens, out } => {
            let m = input::monoid(&monoid)?;
            let g = gens_or_minimal(&m, &gens)?;
            let d = augment_cayley(&m, &g).map_err(precondition)?;
            write_digraph(&d, &out)?;
            let r = digraph_stage("augment", &d, || Ok(m.clone()), &out, start)?;
            Ok(single_stage(format!("monoid of order {}", m.size()), m.size(), r))
        }
        BuildCmd::Encode { lattice, extension, out } => {
            let l = input::lattice(&lattice)?;
            let ext = match extension {
                Some(s) => LinearExtension::new(&l, input::elements(&s)?)
                    .map_err(|e| Failure::Input(e.to_string()))?,
                None => LinearExtension::canonical(&l),
            };
            let enc = build_encoding(&l, &ext, DEFAULT_CHAIN_CAP).map_err(precondition)?;
            write_digraph(&enc.digraph, &out)?;
            let r = digraph_stage("encode", &enc.digraph, || Ok(l.meet_monoid()), &out, start)?;
            Ok(single_stage(format!("lattice of order {}", l.size()), l.size(), r))
        }
        BuildCmd::Blowup { input: path, out } => {
            let d = input::digraph(&path)?;
            let b = blow_up(&d).map_err(precondition)?;
            write_digraph(&b.digraph, &out)?;
            let r = digraph_stage("blowup", &b.digraph, || end_of(&d, &out), &out, start)?;
            let size = r.end.as_ref().map_or(0, |e| e.size);
            Ok(single_stage(format!("digraph on {} vertices", d.vertex_count()), size, r))
        }
        BuildCmd::Sip { input: path, k, out } => {
            let d = input::digraph(&path)?;
            let p = sip_product(&d, parse_k(&k)?).map_err(precondition)?;
            input::write(&out.out, &serde_json::to_string(&io::graph_to_json(&p.graph)).expect("serializable"))?;
            if let Some(dot) = &out.dot {
                input::write(dot, &graph_to_dot(&p.graph))?;
            }
            let mut r = StageReport::for_graph("sip", &p.graph);
            let mut target_size = 0;
            if out.verify {
                let target = end_of(&d, &out)?;
                target_size = target.size();
                match enumerate_graph_endomorphisms(&p.graph, &out.search.config()?).and_then(|t| t.table()) {
                    Ok(t) => {
                        r.end = Some(endoforge::pipeline::EndCheck {
                            size: t.size(),
                            isomorphic_to_target: t.is_isomorphic(&target),
                        })
                    }
                    Err(e) => r.skipped = Some(e.to_string()),
                }
            }
            r.ms = out.timings.then(|| start.elapsed().as_millis() as u64);
            let mut report = single_stage(format!("digraph on {} vertices", d.vertex_count()), target_size, r);
            report.k = Some(p.k());
            Ok(report)
        }
        BuildCmd::Pipeline { monoid, lattice, gens, route: r, k, out } => {
            let input = match (monoid, lattice) {
                (Some(path), _) => {
                    let m = input::monoid(&path)?;
                    let generators = gens.as_deref().map(input::elements).transpose()?;
                    PipelineInput::Monoid { monoid: m, generators, route: route(r) }
                }
                (None, Some(spec)) => PipelineInput::Lattice { lattice: input::lattice(&spec)?, extension: None },
                (None, None) => unreachable!("clap requires one input"),
            };
            let opts = PipelineOptions {
                k: parse_k(&k)?,
                verify: out.verify,
                final_endo: None,
                endo: out.search.config()?,
                timings: out.timings,
            };
            let result = run_pipeline(&input, &opts).map_err(precondition)?;
            let g = result.graph();
            input::write(&out.out, &serde_json::to_string(&io::graph_to_json(g)).expect("serializable"))?;
            if let Some(dot) = &out.dot {
                input::write(dot, &graph_to_dot(g))?;
            }
            Ok(result.report)
        }
    }
}

#[derive(Serialize)]
struct EndoOutput {
    vertices: usize,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    maps: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<io::MonoidJson>,
}

fn endo(args: EndoArgs) -> Result<(), Failure> {
    let cfg = args.search.config()?;
    let g = input::any_graph(&args.file)?;
    let t = match &g {
        AnyGraph::Digraph(d) => enumerate_endomorphisms(d, &cfg),
        AnyGraph::Graph(s) => enumerate_graph_endomorphisms(s, &cfg),
    }
    .map_err(|e| Failure::Check(e.to_string()))?;
    let table = if args.table {
        Some(io::monoid_to_json(&t.table().map_err(|e| Failure::Check(e.to_string()))?))
    } else {
        None
    };
    print_json(&EndoOutput {
        vertices: t.degree(),
        count: t.len(),
        maps: args.maps.then(|| t.maps().to_vec()),
        table,
    });
    Ok(())
}

fn finish(report: checks::VerifyReport) -> Result<(), Failure> {
    print_json(&report);
    match report.checks.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(Failure::Check(format!(
            "verification failed: {}{}",
            c.name,
            c.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
        ))),
    }
}

fn verify(cmd: VerifyCmd) -> Result<(), Failure> {
    match cmd {
        VerifyCmd::Encoding { lattice, search } => {
            finish(checks::encoding(&input::lattice(&lattice)?, &search.config()?)?)
        }
        VerifyCmd::Blowup { source, search } => finish(checks::blowup(&source.digraph()?, &search.config()?)?),
        VerifyCmd::Sip { source, k, search } => {
            finish(checks::sip(&source.digraph()?, parse_k(&k)?, &search.config()?)?)
        }
        VerifyCmd::Pipeline { monoid, lattice, route: r, k, search } => {
            let input = match (monoid, lattice) {
                (Some(path), _) => {
                    PipelineInput::Monoid { monoid: input::monoid(&path)?, generators: None, route: route(r) }
                }
                (None, Some(spec)) => PipelineInput::Lattice { lattice: input::lattice(&spec)?, extension: None },
                (None, None) => unreachable!("clap requires one input"),
            };
            let opts = PipelineOptions {
                k: parse_k(&k)?,
                verify: true,
                final_endo: None,
                endo: search.config()?,
                timings: false,
            };
            finish(checks::pipeline(&input, &opts)?)
        }
        VerifyCmd::Gadget { k, search } => {
            if k == 0 {
                return Err(Failure::Input("--k must be at least 1".into()));
            }
            finish(checks::gadget(k, &search.config()?))
        }
        VerifyCmd::BpMonoid { p } => finish(checks::bp_monoid(p)?),
        VerifyCmd::Minor { source, allow_non_thick, search } => {
            let (report, _) = checks::minor(&source.lattice()?, allow_non_thick, &search.config()?)?;
            finish(report)
        }
    }
}

fn witness(cmd: WitnessCmd) -> Result<(), Failure> {
    match cmd {
        WitnessCmd::Minor { source, out, host_out, allow_non_thick, search } => {
            let l = source.lattice()?;
            let (report, w) = checks::minor(&l, allow_non_thick, &search.config()?)?;
            if let Some(w) = &w {
                input::write(&out, &serde_json::to_string(&io::minor_model_to_json(&w.model)).expect("serializable"))?;
                if let Some(h) = host_out {
                    let enc = build_encoding(&l, &LinearExtension::canonical(&l), DEFAULT_CHAIN_CAP)
                        .map_err(precondition)?;
                    input::write(&h, &serde_json::to_string(&io::digraph_to_json(&enc.digraph)).expect("serializable"))?;
                }
            }
            finish(report)
        }
        WitnessCmd::Check { host, model } => {
            let host = input::any_graph(&host)?.underlying();
            let model = io::parse_minor_model(&input::read(&model)?).map_err(|e| Failure::Input(e.to_string()))?;
            let mut c = checks::Checks::default();
            let failures = verify_minor_model(&host, &model);
            c.add_detail(
                "minor model certified",
                failures.is_empty(),
                if failures.is_empty() {
                    format!("{} branch sets, {} edges", model.branch_sets.len(), model.target.edge_count())
                } else {
                    failures.join("; ")
                },
            );
            finish(c.report("witness"))
        }
    }
}

fn monoid(cmd: MonoidCmd) -> Result<(), Failure> {
    match cmd {
        MonoidCmd::Validate { file } => {
            let j: io::MonoidJson = serde_json::from_str(&input::read(&file)?)
                .map_err(|e| Failure::Input(format!("invalid JSON: {e}")))?;
            match io::monoid_from_json(j) {
                Ok(m) => {
                    print_json(&serde_json::json!({ "valid": true, "size": m.size() }));
                    Ok(())
                }
                Err(e) => {
                    print_json(&serde_json::json!({ "valid": false, "reason": e.to_string() }));
                    Err(Failure::Check(format!("not a monoid: {e}")))
                }
            }
        }
        MonoidCmd::Predicates { file } => {
            print_json(&input::monoid(&file)?.predicates());
            Ok(())
        }
        MonoidCmd::Gens { file } => {
            let m = input::monoid(&file)?;
            let g = m.minimal_generating_set().map_err(|e| Failure::Check(e.to_string()))?;
            print_json(&serde_json::json!({ "generators": g }));
            Ok(())
        }
        MonoidCmd::Bp { p, out } => {
            let bp = babai_pultr_monoid(p, DEFAULT_SIZE_CAP).map_err(|e| Failure::Input(e.to_string()))?;
            let json = serde_json::to_string(&io::monoid_to_json(&bp.monoid)).expect("serializable");
            match out {
                Some(path) => {
                    input::write(&path, &json)?;
                    print_json(&serde_json::json!({ "p": p, "size": bp.monoid.size() }));
                }
                None => println!("{json}"),
            }
            Ok(())
        }
    }
}

fn export(cmd: ExportCmd) -> Result<(), Failure> {
    match cmd {
        ExportCmd::Dot { file, out } => {
            let dot = match input::any_graph(&file)? {
                AnyGraph::Digraph(d) => digraph_to_dot(&d),
                AnyGraph::Graph(g) => graph_to_dot(&g),
            };
            match out {
                Some(p) => input::write(&p, &dot),
                None => {
                    print!("{dot}");
                    Ok(())
                }
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Monoid(c) => monoid(c),
        Command::Build(c) => {
            let report = build(c)?;
            print_json(&report);
            match report.verdict() {
                Some(false) => Err(Failure::Check("verification failed: End of the output differs from the target".into())),
                _ => Ok(()),
            }
        }
        Command::Endo(a) => endo(a),
        Command::Verify(c) => verify(c),
        Command::Witness(c) => witness(c),
        Command::Export(c) => export(c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Input(m) | Failure::Check(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
