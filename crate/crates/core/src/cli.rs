//! Command-line front end. Every subcommand builds a JSON report; `--json`
//! prints it verbatim, otherwise a `key: value` listing is printed.
//!
//! Exit codes: 0 on success, 1 when a checked identity fails, 2 on usage or
//! input errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Num;
use serde_json::{json, Map, Value};

use crate::cone::{kirchhoff_laplacian, verify_all_minors, verify_cone_identity};
use crate::cw::{integral_mesh_ratio, verify_star, verify_higher_identities, CwComplex, ForestCw};
use crate::cycle::MeshContext;
use crate::error::{Error, Result};
use crate::flux::{best_cheeger_estimate, cheeger_estimate, flux_report, partition_from_members};
use crate::graph::{EdgeId, EdgeSubset, Multigraph};
use crate::matrix::ExactMatrix;
use crate::mesh::{build_y, mesh_laplacian, mesh_matrix, reduced_mesh_matrix};
use crate::polynomial::Polynomial;
use crate::stpoly::{char_poly_exact, st_counts_enum, st_polynomial_dc, st_polynomial_enum, verify_charpoly_identity};
use crate::torsion::{lattice_index_report, verify_coboundary_cuts};

/// Largest `W` searched exhaustively when no partition is given.
pub const CHEEGER_SEARCH_LIMIT: usize = 12;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "meshtree", version, about = "Mesh matrices, spanning-tree polynomials and their identities")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Graph file.
    graph: PathBuf,
    /// Spanning tree as comma-separated edge ids (default: the canonical tree).
    #[arg(long, value_delimiter = ',')]
    tree: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CwCheck {
    Star,
    Higher,
    Integral,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Y, the mesh matrix, its reduced form and the mesh Laplacian.
    Mesh(GraphArgs),
    /// Characteristic polynomial of the mesh matrix.
    Charpoly(GraphArgs),
    /// Spanning-tree polynomial relative to a subgraph.
    Stpoly {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true, num_args = 0..)]
        subgraph: Vec<usize>,
    },
    /// Number of spanning trees.
    CountTrees { graph: PathBuf },
    /// Kirchhoff Laplacian recovered from the cone's mesh Laplacian.
    Kirchhoff { graph: PathBuf },
    /// Rooted forests, cone tree counts and Laplacian coefficients.
    Allminors { graph: PathBuf },
    /// Order of the lattice quotient by two routes.
    Torsion(GraphArgs),
    /// Inward-edge graph, smallest positive eigenvalues and Cheeger estimate.
    Flux {
        #[command(flatten)]
        graph: GraphArgs,
        /// W-vertex indices forming C[k] in each component.
        #[arg(long, value_delimiter = ',')]
        partition: Option<Vec<usize>>,
    },
    /// Torsion-weighted forest identities for a CW complex.
    Cw {
        complex: PathBuf,
        #[arg(long, value_delimiter = ',', required = true, num_args = 0..)]
        forest: Vec<usize>,
        #[arg(long, value_enum)]
        check: CwCheck,
    },
    /// Characteristic polynomial against deletion-contraction and enumeration.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Also check the principal-minor expansion.
        #[arg(long)]
        minors: bool,
    },
}

/// A finished report and whether every identity it checks holds.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub holds: bool,
}

impl Outcome {
    fn computed(report: Value) -> Self {
        Self { report, holds: true }
    }
}

pub fn big(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

pub fn rational(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

pub fn float(x: Option<f64>) -> Value {
    x.map_or(Value::Null, |v| json!(v))
}

fn matrix<T: Clone + Num>(m: &ExactMatrix<T>, f: impl Fn(&T) -> Value) -> Value {
    Value::Array(m.to_rows().iter().map(|row| Value::Array(row.iter().map(&f).collect())).collect())
}

fn polynomial<T: Clone + Num>(p: &Polynomial<T>, f: impl Fn(&T) -> Value) -> Value {
    Value::Array(p.coeffs().iter().map(f).collect())
}

fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

fn rationals(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

fn ids(v: &[EdgeId]) -> Value {
    json!(v.iter().map(|e| e.0).collect::<Vec<_>>())
}

fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

pub fn graph_json(g: &Multigraph) -> Value {
    object([
        ("vertices", json!(g.vertex_count())),
        ("edges", Value::Array(g.edges().iter().map(|e| json!([e.id.0, e.tail, e.head])).collect())),
    ])
}

fn context_json(ctx: &MeshContext) -> Value {
    object([("tree", ids(ctx.tree_order())), ("cotree", ids(ctx.cotree_order()))])
}

pub fn mesh_json(ctx: &MeshContext) -> Result<Outcome> {
    let mesh = mesh_matrix(ctx);
    Ok(Outcome::computed(object([
        ("spanning_tree", context_json(ctx)),
        ("y", matrix(&build_y(ctx), big)),
        ("mesh", matrix(&mesh, big)),
        ("reduced_mesh", matrix(&reduced_mesh_matrix(ctx), big)),
        ("mesh_laplacian", matrix(&mesh_laplacian(ctx), big)),
        ("det", big(&mesh.det_bareiss()?)),
    ])))
}

pub fn charpoly_json(ctx: &MeshContext) -> Result<Outcome> {
    let mesh = char_poly_exact(&mesh_matrix(ctx))?;
    let reduced = char_poly_exact(&reduced_mesh_matrix(ctx))?;
    Ok(Outcome::computed(object([
        ("spanning_tree", context_json(ctx)),
        ("mesh_charpoly", polynomial(&mesh, big)),
        ("reduced_mesh_charpoly", polynomial(&reduced, big)),
        ("display", Value::String(mesh.to_string())),
    ])))
}

pub fn stpoly_json(g: &Multigraph, h: &EdgeSubset) -> Result<Outcome> {
    g.check_subset(h)?;
    let dc = st_polynomial_dc(g, h)?;
    let enumerated = st_polynomial_enum(g, h)?;
    let holds = dc == enumerated;
    Ok(Outcome {
        report: object([
            ("subgraph", json!(h.ids())),
            ("st_polynomial", polynomial(&dc, big)),
            ("st_polynomial_enumerated", polynomial(&enumerated, big)),
            ("st_counts", bigs(&st_counts_enum(g, h)?)),
            ("agree", json!(holds)),
            ("display", Value::String(dc.to_string())),
        ]),
        holds,
    })
}

pub fn count_trees_json(g: &Multigraph) -> Outcome {
    Outcome::computed(object([("count", json!(g.count_spanning_trees()))]))
}

pub fn kirchhoff_json(g: &Multigraph) -> Result<Outcome> {
    let r = verify_cone_identity(g)?;
    Ok(Outcome {
        holds: r.holds(),
        report: object([
            ("laplacian", matrix(&kirchhoff_laplacian(g), big)),
            ("cone_mesh_laplacian", matrix(&r.cone_mesh_laplacian, big)),
            ("laplacian_matches", json!(r.laplacian_matches)),
            ("reduced_mesh_charpoly", polynomial(&r.reduced_mesh_charpoly, big)),
            ("mesh_laplacian_charpoly", polynomial(&r.mesh_laplacian_charpoly, big)),
            ("charpoly_relation_holds", json!(r.charpoly_relation_holds)),
            ("holds", json!(r.holds())),
        ]),
    })
}

pub fn allminors_json(g: &Multigraph) -> Result<Outcome> {
    let r = verify_all_minors(g)?;
    Ok(Outcome {
        holds: r.holds(),
        report: object([
            ("forest_coefficients", bigs(&r.forest_coefficients)),
            ("cone_counts", bigs(&r.cone_counts)),
            ("laplacian_coefficients", bigs(&r.laplacian_coefficients)),
            ("laplacian_charpoly", polynomial(&r.laplacian_charpoly, big)),
            ("holds", json!(r.holds())),
        ]),
    })
}

pub fn torsion_json(ctx: &MeshContext) -> Result<Outcome> {
    let r = lattice_index_report(ctx)?;
    let cuts = verify_coboundary_cuts(ctx);
    let tree_count = BigInt::from(ctx.graph().count_spanning_trees());
    let holds = r.consistent() && cuts && r.snf_order == tree_count;
    Ok(Outcome {
        holds,
        report: object([
            ("spanning_tree", context_json(ctx)),
            ("lattice_index", big(&r.snf_order)),
            ("block_det", big(&r.block_det)),
            ("mesh_det", big(&r.mesh_det)),
            ("invariant_factors", bigs(&r.invariant_factors)),
            ("tree_count", big(&tree_count)),
            ("coboundary_cuts", json!(cuts)),
            ("holds", json!(holds)),
        ]),
    })
}

pub fn flux_json(ctx: &MeshContext, partition: Option<&[usize]>) -> Result<Outcome> {
    let r = flux_report(ctx)?;
    let (cheeger, source) = match partition {
        Some(members) => (Some(cheeger_estimate(&r.w, &partition_from_members(&r.w, members)?)?), "partition"),
        None if r.w.vertices.len() <= CHEEGER_SEARCH_LIMIT => (best_cheeger_estimate(&r.w, CHEEGER_SEARCH_LIMIT)?, "search"),
        None => (None, "skipped"),
    };
    let types: BTreeMap<String, u8> = r.edge_types.iter().map(|(e, t)| (e.0.to_string(), t.number())).collect();
    let w = object([
        (
            "vertices",
            Value::Array(
                r.w.vertices.iter().map(|x| object([("edge", json!(x.edge.0)), ("from", json!(x.from)), ("to", json!(x.to))])).collect(),
            ),
        ),
        (
            "edges",
            Value::Array(
                r.w.edges
                    .iter()
                    .map(|e| object([("cotree_edge", json!(e.cotree_edge.0)), ("first", json!(e.first)), ("second", json!(e.second))]))
                    .collect(),
            ),
        ),
        ("components", json!(r.w.components)),
    ]);
    Ok(Outcome::computed(object([
        ("spanning_tree", context_json(ctx)),
        ("edge_types", json!(types)),
        ("w", w),
        ("big_lambda", float(r.big_lambda)),
        ("big_lambda_tolerance", json!(r.big_lambda_tolerance)),
        ("lambda", float(r.lambda)),
        ("lambda_tolerance", json!(r.lambda_tolerance)),
        ("half_lambda", float(r.lambda.map(|l| l / 2.0))),
        ("restricted_quotient", float(r.restricted_quotient)),
        ("inequality_holds", r.verdict.inequality_holds.map_or(Value::Null, Value::Bool)),
        ("cheeger_estimate", float(cheeger)),
        ("cheeger_source", json!(source)),
    ])))
}

pub fn cw_json(x: &CwComplex, forest: &ForestCw, check: CwCheck) -> Result<Outcome> {
    let base = object([
        ("dim", json!(x.dim())),
        ("cell_counts", json!((0..=x.dim()).map(|k| x.cell_count(k)).collect::<Vec<_>>())),
        ("forest", json!(forest.cells())),
    ]);
    let (name, holds, mut details) = match check {
        CwCheck::Star => {
            let r = verify_star(x, forest)?;
            let d = object([
                ("mesh_det", rational(&r.mesh_det)),
                ("forest_sum", rational(&r.forest_sum)),
                ("forest_count", json!(r.forest_count)),
            ]);
            ("star", r.holds(), d)
        }
        CwCheck::Higher => {
            let r = verify_higher_identities(x, forest)?;
            let d = object([
                ("mesh_charpoly", polynomial(&r.mesh_charpoly, rational)),
                ("reduced_charpoly", polynomial(&r.reduced_charpoly, rational)),
                ("shift_relation_holds", json!(r.shift_relation_holds)),
                ("sigma", rationals(&r.sigma)),
                ("sigma_forest_sums", rationals(&r.sigma_sum)),
                ("c", rationals(&r.c)),
                ("c_forest_sums", rationals(&r.c_sum)),
            ]);
            ("higher", r.holds(), d)
        }
        CwCheck::Integral => {
            let r = integral_mesh_ratio(x, forest)?;
            let d = object([
                ("kernel_basis", matrix(&r.kernel_basis, big)),
                ("integral_det", big(&r.integral_det)),
                ("geometric_det", rational(&r.geometric_det)),
                ("forest_sum", rational(&r.forest_sum)),
                ("ratio", rational(&r.ratio)),
                ("expected_ratio", rational(&r.expected_ratio)),
            ]);
            ("integral", r.holds(), d)
        }
    };
    let map = details.as_object_mut().expect("object");
    map.insert("check".into(), json!(name));
    map.insert("complex".into(), base);
    map.insert("holds".into(), json!(holds));
    Ok(Outcome { report: details, holds })
}

pub fn verify_json(ctx: &MeshContext, minors: bool) -> Result<Outcome> {
    let r = verify_charpoly_identity(ctx, minors)?;
    let holds = r.holds();
    let mut report = object([
        ("spanning_tree", context_json(ctx)),
        ("charpoly_identity", json!(holds)),
        ("det", big(&r.mesh_det)),
        ("tree_count", big(&r.tree_count)),
        ("mesh_charpoly", polynomial(&r.mesh_charpoly, big)),
        ("shifted_charpoly", polynomial(&r.shifted_charpoly, big)),
        ("st_polynomial", polynomial(&r.st_dc, big)),
        ("st_polynomial_enumerated", polynomial(&r.st_enum, big)),
        ("st_counts", bigs(&r.st_counts)),
        ("polynomials_agree", json!(r.polynomials_agree)),
        ("counts_agree", json!(r.counts_agree)),
    ]);
    if let Some(terms) = &r.minor_expansion {
        let terms = terms
            .iter()
            .map(|t| {
                object([
                    ("j", json!(t.j)),
                    ("coefficient", big(&t.coefficient)),
                    ("minor_sum", big(&t.minor_sum)),
                    ("tree_count_sum", big(&t.tree_count_sum)),
                ])
            })
            .collect();
        report.as_object_mut().expect("object").insert("minor_expansion".into(), Value::Array(terms));
    }
    Ok(Outcome { report, holds })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, message: format!("{}: {e}", path.display()) })
}

fn load_graph(path: &Path) -> Result<Multigraph> {
    read(path)?.parse()
}

fn load_context(args: &GraphArgs) -> Result<MeshContext> {
    let g = load_graph(&args.graph)?;
    match &args.tree {
        Some(tree) => {
            let tree: EdgeSubset = tree.iter().copied().collect();
            g.check_subset(&tree)?;
            MeshContext::new(g, tree)
        }
        None => MeshContext::with_default_tree(g),
    }
}

fn dispatch(command: &Command) -> Result<(&'static str, Value, Outcome)> {
    let path = |p: &Path| json!(p.display().to_string());
    Ok(match command {
        Command::Mesh(a) => ("mesh", path(&a.graph), mesh_json(&load_context(a)?)?),
        Command::Charpoly(a) => ("charpoly", path(&a.graph), charpoly_json(&load_context(a)?)?),
        Command::Stpoly { graph, subgraph } => {
            let g = load_graph(graph)?;
            ("stpoly", path(graph), stpoly_json(&g, &subgraph.iter().copied().collect())?)
        }
        Command::CountTrees { graph } => ("count-trees", path(graph), count_trees_json(&load_graph(graph)?)),
        Command::Kirchhoff { graph } => ("kirchhoff", path(graph), kirchhoff_json(&load_graph(graph)?)?),
        Command::Allminors { graph } => ("allminors", path(graph), allminors_json(&load_graph(graph)?)?),
        Command::Torsion(a) => ("torsion", path(&a.graph), torsion_json(&load_context(a)?)?),
        Command::Flux { graph, partition } => {
            ("flux", path(&graph.graph), flux_json(&load_context(graph)?, partition.as_deref())?)
        }
        Command::Cw { complex, forest, check } => {
            let x: CwComplex = read(complex)?.parse()?;
            ("cw", path(complex), cw_json(&x, &forest.iter().copied().collect(), *check)?)
        }
        Command::Verify { graph, minors } => ("verify", path(&graph.graph), verify_json(&load_context(graph)?, *minors)?),
    })
}

fn human(command: &str, report: &Value) -> String {
    if command == "count-trees" {
        return format!("{}\n", report["count"]);
    }
    let mut out = String::new();
    if let Value::Object(map) = report {
        for (k, v) in map {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
    }
    out
}

/// Runs the command line `args` (program name first), writing the report to
/// `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((name, input, outcome)) => {
            let text = if cli.json {
                let mut map = outcome.report.as_object().cloned().unwrap_or_default();
                map.insert("command".into(), json!(name));
                map.insert("input".into(), input);
                format!("{}\n", Value::Object(map))
            } else {
                human(name, &outcome.report)
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            if outcome.holds {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Inconsistent(_) => EXIT_FAILED,
                _ => EXIT_INPUT,
            }
        }
    }
}
