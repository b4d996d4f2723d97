//! Batch command-line interface over the edge-ideal pipeline. One JSON
//! report per invocation on stdout; errors as JSON on stderr with exit
//! code 1; structural-vs-oracle disagreements exit with code 2 after
//! writing a counterexample bundle.

use std::io::Read;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use edge_ideals::cm::{betti_table, is_cm, CmReport};
use edge_ideals::complex::{
    independence_complex, is_matroid, strong_vertex_covers, well_covered_report, StrongCover,
    WellCoveredReport,
};
use edge_ideals::graph::{StructureReport, WeightedOrientedGraph};
use edge_ideals::homology::Field;
use edge_ideals::ideal::{edge_ideal, primary_decomposition, symbolic_power, MonomialIdeal};
use edge_ideals::sweep::{
    cm_power2_sweep, default_workers, equality_random_sweep, equality_sweep, Disagreement,
};
use edge_ideals::theorems::{
    example_family, family_scan, family_system_solution, ordinary_cm, powers_equal,
    symbolic_cm_all_t, CmVerdict, EqualityVerdict, TSpec,
};
use edge_ideals::vset::VertexSet;
use edge_ideals::DEFAULT_MAX_BOX;

const SCHEMA_VERSION: &str = "1";
const MAX_BOX_ENV: &str = "EDGE_IDEALS_MAX_BOX";

#[derive(Parser)]
#[command(
    name = "edge-ideals",
    version,
    about = "Edge ideals of weighted oriented graphs: powers, decompositions, Cohen-Macaulayness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Coefficient field: q or gf:<p>
    #[arg(long, default_value = "q")]
    field: String,
    /// Cap on enumerated degree-box points (also via EDGE_IDEALS_MAX_BOX)
    #[arg(long)]
    max_box: Option<u128>,
}

impl Common {
    fn field(&self) -> Result<Field, edge_ideals::Error> {
        self.field.parse()
    }

    fn max_box(&self) -> u128 {
        self.max_box
            .or_else(|| std::env::var(MAX_BOX_ENV).ok().and_then(|v| v.parse().ok()))
            .unwrap_or(DEFAULT_MAX_BOX)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: sinks, sources, weights, shapes, well-coveredness
    Analyze {
        /// Graph JSON file, or - for stdin
        input: String,
    },
    /// Strong vertex covers and the primary decomposition of I(D)
    Decompose { input: String },
    /// Ordinary power I(D)^t
    Power {
        input: String,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    /// Symbolic power I(D)^(t)
    Symbolic {
        input: String,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    /// Structural and computed equality of I(D)^t and I(D)^(t)
    Equality {
        input: String,
        #[arg(long)]
        t: usize,
        /// Also compute both ideals and compare
        #[arg(long)]
        verify: bool,
    },
    /// Cohen-Macaulayness of the ordinary and symbolic powers at t
    Cm {
        input: String,
        /// Power: a positive integer or "all"
        #[arg(long, default_value = "1")]
        t: String,
        /// Run the homological oracle alongside the structural criteria
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Multigraded Betti table and depth report of I(D)^t
    Betti {
        input: String,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The 4-vertex threshold family with weights (1,k,k,1)
    Family {
        #[arg(long)]
        k: u32,
        /// Scan symbolic powers up to this exponent
        #[arg(long, default_value_t = 4)]
        scan_to: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive small-instance sweeps comparing structure against oracle
    Sweep {
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Seed for the additional random sweep at n = 5
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
}

fn read_input(path: &str) -> Result<String, edge_ideals::Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| edge_ideals::Error::Malformed(e.to_string()))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| edge_ideals::Error::Malformed(format!("{path}: {e}")))
    }
}

fn load_graph(path: &str) -> Result<(WeightedOrientedGraph, Vec<String>), edge_ideals::Error> {
    let text = read_input(path)?;
    let parsed = WeightedOrientedGraph::parse(&text)?;
    Ok((parsed.graph, parsed.notices))
}

#[derive(Serialize)]
struct AnalyzeReport {
    schema_version: &'static str,
    command: &'static str,
    graph: WeightedOrientedGraph,
    notices: Vec<String>,
    structure: StructureReport,
    well_covered: WellCoveredReport,
    independence_facets: Vec<VertexSet>,
    independence_is_matroid: bool,
}

#[derive(Serialize)]
struct DecomposeReport {
    schema_version: &'static str,
    command: &'static str,
    edge_ideal: MonomialIdeal,
    strong_covers: Vec<StrongCover>,
    components: Vec<MonomialIdeal>,
    intersection_equals_ideal: bool,
    symbolic_t1: MonomialIdeal,
    symbolic_t1_equals_ideal: bool,
}

#[derive(Serialize)]
struct PowerReport {
    schema_version: &'static str,
    command: &'static str,
    t: usize,
    ideal: MonomialIdeal,
}

#[derive(Serialize)]
struct SymbolicReport {
    schema_version: &'static str,
    command: &'static str,
    t: usize,
    symbolic_power: MonomialIdeal,
    equals_ordinary_power: bool,
}

#[derive(Serialize)]
struct EqualityReport {
    schema_version: &'static str,
    command: &'static str,
    #[serde(flatten)]
    verdict: EqualityVerdict,
    /// Present only when the structural and computed verdicts disagree.
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<serde_json::Value>,
}

#[derive(Serialize)]
struct CmCommandReport {
    schema_version: &'static str,
    command: &'static str,
    t: TSpec,
    field: Field,
    cm_symbolic: Option<bool>,
    cm_ordinary: Option<bool>,
    symbolic_verdict: CmVerdict,
    ordinary_verdict: CmVerdict,
    /// Present only when a structural and oracle verdict disagree.
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<serde_json::Value>,
}

#[derive(Serialize)]
struct BettiReport {
    schema_version: &'static str,
    command: &'static str,
    t: usize,
    ideal: MonomialIdeal,
    betti: serde_json::Value,
    report: CmReport,
}

#[derive(Serialize)]
struct FamilyReport {
    schema_version: &'static str,
    command: &'static str,
    k: u32,
    graph: WeightedOrientedGraph,
    components: Vec<MonomialIdeal>,
    cm_at: Vec<usize>,
    not_cm_at: Vec<usize>,
    solvable_at: Vec<usize>,
    first_solution: Option<[u64; 4]>,
}

#[derive(Serialize)]
struct SweepSection {
    instances: usize,
    disagreements: usize,
}

#[derive(Serialize)]
struct SweepReport {
    schema_version: &'static str,
    command: &'static str,
    t: usize,
    equality_exhaustive: SweepSection,
    equality_random: Option<SweepSection>,
    cm_power2: SweepSection,
    disagreement_count: usize,
    disagreements: Vec<Disagreement>,
}

fn print_report<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("reports always serialize")
    );
}

fn run(cli: Cli) -> Result<i32, edge_ideals::Error> {
    match cli.command {
        Command::Analyze { input } => {
            let (d, notices) = load_graph(&input)?;
            let g = d.underlying();
            let delta = independence_complex(&g)?;
            let report = AnalyzeReport {
                schema_version: SCHEMA_VERSION,
                command: "analyze",
                structure: d.structure_report(),
                well_covered: well_covered_report(&g)?,
                independence_facets: delta.facets().to_vec(),
                independence_is_matroid: is_matroid(&delta)?,
                notices,
                graph: d,
            };
            print_report(&report);
            Ok(0)
        }
        Command::Decompose { input } => {
            let (d, _) = load_graph(&input)?;
            let ideal = edge_ideal(&d);
            let components = primary_decomposition(&d)?;
            let intersection = components
                .iter()
                .skip(1)
                .fold(
                    components.first().cloned().unwrap_or_else(|| ideal.clone()),
                    |acc, c| acc.intersect(c),
                );
            let symbolic_t1 = symbolic_power(&d, 1)?;
            let report = DecomposeReport {
                schema_version: SCHEMA_VERSION,
                command: "decompose",
                strong_covers: strong_vertex_covers(&d)?,
                intersection_equals_ideal: intersection == ideal,
                symbolic_t1_equals_ideal: symbolic_t1 == ideal,
                symbolic_t1,
                components,
                edge_ideal: ideal,
            };
            print_report(&report);
            Ok(0)
        }
        Command::Power { input, t } => {
            if t < 1 {
                return Err(edge_ideals::Error::InvalidT { t, min: 1 });
            }
            let (d, _) = load_graph(&input)?;
            let report = PowerReport {
                schema_version: SCHEMA_VERSION,
                command: "power",
                t,
                ideal: edge_ideal(&d).power(t),
            };
            print_report(&report);
            Ok(0)
        }
        Command::Symbolic { input, t } => {
            let (d, _) = load_graph(&input)?;
            let symbolic = symbolic_power(&d, t)?;
            let report = SymbolicReport {
                schema_version: SCHEMA_VERSION,
                command: "symbolic",
                t,
                equals_ordinary_power: symbolic == edge_ideal(&d).power(t),
                symbolic_power: symbolic,
            };
            print_report(&report);
            Ok(0)
        }
        Command::Equality { input, t, verify } => {
            let (d, _) = load_graph(&input)?;
            let verdict = powers_equal(&d, t, verify)?;
            let disagreement = verdict.agreement == Some(false);
            let counterexample = if disagreement {
                let ideal = edge_ideal(&d);
                Some(serde_json::json!({
                    "graph": &d,
                    "edge_ideal": &ideal,
                    "ordinary_power": &ideal.power(t),
                    "symbolic_power": &symbolic_power(&d, t)?,
                }))
            } else {
                None
            };
            let report = EqualityReport {
                schema_version: SCHEMA_VERSION,
                command: "equality",
                verdict,
                counterexample,
            };
            print_report(&report);
            Ok(if disagreement { 2 } else { 0 })
        }
        Command::Cm { input, t, verify, common } => {
            let field = common.field()?;
            let max_box = common.max_box();
            let (d, _) = load_graph(&input)?;
            let t_spec = match t.as_str() {
                "all" => TSpec::All,
                other => TSpec::At(other.parse().map_err(|_| {
                    edge_ideals::Error::Malformed(format!("invalid --t value {other:?}"))
                })?),
            };
            let ordinary_verdict = ordinary_cm(&d, t_spec, verify, field, max_box)?;
            let scan_to = match (t_spec, verify) {
                (_, false) => 0,
                (TSpec::At(t_fixed), true) => t_fixed,
                (TSpec::All, true) => 3,
            };
            let symbolic_verdict = symbolic_cm_all_t(&d, scan_to, field, max_box)?;
            let cm_symbolic = match t_spec {
                TSpec::At(t_fixed) => symbolic_verdict
                    .oracle
                    .iter()
                    .find(|run| run.t == t_fixed)
                    .map(|run| run.report.cm),
                TSpec::All => (!symbolic_verdict.oracle.is_empty())
                    .then(|| symbolic_verdict.oracle.iter().all(|run| run.report.cm)),
            };
            let cm_ordinary = (!ordinary_verdict.oracle.is_empty())
                .then(|| ordinary_verdict.oracle.iter().all(|run| run.report.cm));
            let disagreement = ordinary_verdict.agreement == Some(false)
                || symbolic_verdict.agreement == Some(false);
            let counterexample = if disagreement {
                let ideal = edge_ideal(&d);
                let t_probe = match t_spec {
                    TSpec::At(t_fixed) => t_fixed,
                    TSpec::All => 3,
                };
                let power = ideal.power(t_probe);
                let betti = if power.is_zero() {
                    serde_json::Value::Null
                } else {
                    serde_json::from_str(&betti_table(&power, field, max_box)?.to_json())
                        .expect("betti table serializes to valid JSON")
                };
                Some(serde_json::json!({
                    "graph": &d,
                    "edge_ideal": &ideal,
                    "ordinary_power": &power,
                    "symbolic_power": &symbolic_power(&d, t_probe)?,
                    "betti_of_ordinary_power": betti,
                }))
            } else {
                None
            };
            let report = CmCommandReport {
                schema_version: SCHEMA_VERSION,
                command: "cm",
                t: t_spec,
                field,
                cm_symbolic,
                cm_ordinary,
                symbolic_verdict,
                ordinary_verdict,
                counterexample,
            };
            print_report(&report);
            Ok(if disagreement { 2 } else { 0 })
        }
        Command::Betti { input, t, common } => {
            if t < 1 {
                return Err(edge_ideals::Error::InvalidT { t, min: 1 });
            }
            let field = common.field()?;
            let max_box = common.max_box();
            let (d, _) = load_graph(&input)?;
            let ideal = edge_ideal(&d).power(t);
            let table = betti_table(&ideal, field, max_box)?;
            let report = BettiReport {
                schema_version: SCHEMA_VERSION,
                command: "betti",
                t,
                betti: serde_json::from_str(&table.to_json())
                    .expect("betti table serializes to valid JSON"),
                report: is_cm(&ideal, field, max_box)?,
                ideal,
            };
            print_report(&report);
            Ok(0)
        }
        Command::Family { k, scan_to, common } => {
            let field = common.field()?;
            let max_box = common.max_box();
            let d = example_family(k)?;
            let scan = family_scan(k, scan_to, field, max_box)?;
            let report = FamilyReport {
                schema_version: SCHEMA_VERSION,
                command: "family",
                k,
                components: primary_decomposition(&d)?,
                graph: d,
                cm_at: scan.cm_at,
                not_cm_at: scan.not_cm_at,
                solvable_at: scan.solvable_at,
                first_solution: family_system_solution(k, scan_to),
            };
            print_report(&report);
            Ok(0)
        }
        Command::Sweep { t, seed, common } => {
            let field = common.field()?;
            let max_box = common.max_box();
            let workers = default_workers();
            let equality = equality_sweep(4, &[1, 2], t, workers)?;
            let random = match seed {
                Some(seed) => Some(equality_random_sweep(5, 200, &[2, 3], &[1, 2], seed, workers)?),
                None => None,
            };
            let power2 = cm_power2_sweep(4, &[1, 2], field, max_box, workers)?;
            let mut disagreements = equality.disagreements.clone();
            if let Some(r) = &random {
                disagreements.extend(r.disagreements.clone());
            }
            disagreements.extend(power2.disagreements.clone());
            let report = SweepReport {
                schema_version: SCHEMA_VERSION,
                command: "sweep",
                t,
                equality_exhaustive: SweepSection {
                    instances: equality.instances,
                    disagreements: equality.disagreements.len(),
                },
                equality_random: random.as_ref().map(|r| SweepSection {
                    instances: r.instances,
                    disagreements: r.disagreements.len(),
                }),
                cm_power2: SweepSection {
                    instances: power2.instances,
                    disagreements: power2.disagreements.len(),
                },
                disagreement_count: disagreements.len(),
                disagreements,
            };
            print_report(&report);
            Ok(if report.disagreement_count > 0 { 2 } else { 0 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!(
                "{}",
                serde_json::json!({
                    "schema_version": SCHEMA_VERSION,
                    "error": err.to_string(),
                })
            );
            std::process::exit(1);
        }
    }
}
