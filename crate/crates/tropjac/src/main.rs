//! Command-line entry point: parse arguments, load files, call the engine,
//! emit deterministic JSON/DOT/SVG, and map failures to exit codes.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use tropjac::corpus;
use tropjac::dot::hasse_dot;
use tropjac::formats::{CurveDto, DivisorDto, GraphDto, PolarizationDto, PseudoDivisorDto};
use tropjac::output::{
    CorpusOut, FixtureOut, LiftOut, LocateOut, PolOut, PosetOut, StabilityOut, StepOut,
    UniversalOut,
};
use tropjac::output::ComplexOut;
use tropjac::svg;
use tropjac::{CliError, CliResult};
use tropjac_core::curve::TropicalCurve;
use tropjac_core::graph::{WeightedGraph, MAX_EDGES, MAX_VERTICES};
use tropjac_core::jacobian::{
    build_jacobian_polystable, build_jacobian_quasistable, build_universal, locate,
    verify_faces, verify_universal_faces,
};
use tropjac_core::polystab::{build_poset, polystabilize, quasistable_lift};
use tropjac_core::rat::{is_integer, rat};
use tropjac_core::stability::{
    canonical_polarization, is_polystable, is_quasistable, is_semistable, is_stable, rank,
    Polarization, PseudoDivisor, StabilityKind,
};

const EXIT_HELP: &str = "Exit codes:
  0  success
  2  command-line usage error
  3  a file could not be read or written
  4  malformed input (JSON, rationals, indices)
  5  size guard exceeded
  6  canonical polarization undefined (genus too small or non-integral share)
  7  domain error (disconnected graph, degree mismatch, non-semistable input, ...)";

#[derive(Parser)]
#[command(
    name = "tropjac",
    version,
    about = "Polyhedral decompositions of tropical Jacobians",
    after_help = EXIT_HELP
)]
struct Cli {
    /// Reject input graphs with more vertices than this.
    #[arg(long, global = true, default_value_t = MAX_VERTICES)]
    guard_vertices: usize,
    /// Reject input graphs with more edges than this.
    #[arg(long, global = true, default_value_t = MAX_EDGES)]
    guard_edges: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Predicate {
    Semistable,
    Stable,
    Quasistable,
    Polystable,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every stability predicate for one pseudo-divisor.
    Stability {
        /// Graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Pseudo-divisor file.
        #[arg(long)]
        pd: PathBuf,
        /// Polarization file; defaults to the canonical polarization.
        #[arg(long)]
        mu: Option<PathBuf>,
        /// Total degree; defaults to the pseudo-divisor's degree.
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i64>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Polystabilize a semistable pseudo-divisor.
    Pol {
        /// Graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Pseudo-divisor file.
        #[arg(long)]
        pd: PathBuf,
        /// Polarization file; defaults to the canonical polarization.
        #[arg(long)]
        mu: Option<PathBuf>,
        /// Total degree; defaults to the pseudo-divisor's degree.
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i64>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a polystable pseudo-divisor to its quasistable representative.
    Lift {
        /// Graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Pseudo-divisor file.
        #[arg(long)]
        pd: PathBuf,
        /// Base vertex of the lift.
        #[arg(long)]
        basepoint: usize,
        /// Polarization file; defaults to the canonical polarization.
        #[arg(long)]
        mu: Option<PathBuf>,
        /// Total degree; defaults to the pseudo-divisor's degree.
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i64>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate pseudo-divisors of one kind and emit their poset.
    Poset {
        /// Graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Which stability predicate to enumerate.
        #[arg(long, value_enum)]
        predicate: Predicate,
        /// Total degree of the enumerated pseudo-divisors.
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        /// Base vertex; required for the quasistable predicate.
        #[arg(long, required_if_eq("predicate", "quasistable"))]
        basepoint: Option<usize>,
        /// Polarization file; defaults to the canonical polarization.
        #[arg(long)]
        mu: Option<PathBuf>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the Hasse diagram in DOT format here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Assemble the cell decomposition of a curve's divisor classes.
    Jacobian {
        /// Curve file (graph plus edge lengths).
        #[arg(long)]
        curve: PathBuf,
        /// Total degree of the decomposed divisor classes.
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        /// Build the quasistable decomposition instead of the polystable one.
        #[arg(long)]
        quasistable: bool,
        /// Base vertex; required with --quasistable.
        #[arg(long, required_if_eq("quasistable", "true"))]
        basepoint: Option<usize>,
        /// Polarization file; defaults to the canonical polarization.
        #[arg(long)]
        mu: Option<PathBuf>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also draw the top cells as SVG here (dimension at most 2 only).
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Also write the Hasse diagram in DOT format here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Assemble the genus-wide cone complex over all stable graphs.
    Universal {
        /// Genus of the stable graphs in the tower.
        #[arg(long)]
        genus: i64,
        /// Total degree of the enumerated pseudo-divisors.
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the Hasse diagram in DOT format here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Find the cell and coordinates of a semistable divisor on its curve.
    Locate {
        /// Curve file (graph plus edge lengths).
        #[arg(long)]
        curve: PathBuf,
        /// Divisor file (combinatorial type plus marked-point positions).
        #[arg(long)]
        divisor: PathBuf,
        /// Polarization file; defaults to the canonical polarization.
        #[arg(long)]
        mu: Option<PathBuf>,
        /// Total degree; defaults to the divisor's degree.
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i64>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate the deterministic fixture corpus.
    Corpus {
        /// Largest vertex count in the corpus.
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        /// Largest edge count in the corpus.
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        /// Seed for the fixture edge lengths.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

/// Input size limits, taken from the engine defaults unless overridden.
#[derive(Copy, Clone)]
struct Guards {
    vertices: usize,
    edges: usize,
}

impl Guards {
    fn check(&self, n_vertices: usize, n_edges: usize) -> CliResult<()> {
        if n_vertices > self.vertices {
            return Err(CliError::Guard(format!(
                "input has {n_vertices} vertices, guard allows {}",
                self.vertices
            )));
        }
        if n_edges > self.edges {
            return Err(CliError::Guard(format!(
                "input has {n_edges} edges, guard allows {}",
                self.edges
            )));
        }
        Ok(())
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path, guards: Guards) -> CliResult<WeightedGraph> {
    let dto: GraphDto = read_json(path)?;
    guards.check(dto.vertices.len(), dto.edges.len())?;
    dto.to_graph()
}

fn load_curve(path: &Path, guards: Guards) -> CliResult<TropicalCurve> {
    let dto: CurveDto = read_json(path)?;
    guards.check(dto.vertices.len(), dto.edges.len())?;
    dto.to_curve()
}

fn load_pd(path: &Path, g: &WeightedGraph) -> CliResult<PseudoDivisor> {
    let dto: PseudoDivisorDto = read_json(path)?;
    dto.to_pd(g)
}

/// Resolve the polarization and total degree for a command. An explicit
/// `--mu` file wins; otherwise the canonical polarization at the requested
/// (or inferred) degree is used. Conflicting degree information is an error.
fn resolve_polarization(
    g: &WeightedGraph,
    mu: Option<&Path>,
    degree: Option<i64>,
    inferred: Option<i64>,
) -> CliResult<(Polarization, i64)> {
    let requested = match (degree, inferred) {
        (Some(d), Some(i)) if d != i => {
            return Err(CliError::Domain(format!(
                "--degree {d} does not match the input's degree {i}"
            )));
        }
        (d, i) => d.or(i),
    };
    match mu {
        Some(path) => {
            let dto: PolarizationDto = read_json(path)?;
            let p = dto.to_polarization(g)?;
            if !is_integer(&p.degree()) {
                return Err(CliError::Domain(format!(
                    "polarization has non-integral total degree {}",
                    p.degree()
                )));
            }
            let d = match requested {
                Some(d) => {
                    if rat(d) != p.degree() {
                        return Err(CliError::Domain(format!(
                            "polarization degree {} does not match degree {d}",
                            p.degree()
                        )));
                    }
                    d
                }
                None => {
                    // Guarded by the integrality check above.
                    p.degree().to_integer().try_into().map_err(|_| {
                        CliError::Guard("polarization degree exceeds i64".into())
                    })?
                }
            };
            Ok((p, d))
        }
        None => {
            let d = requested.ok_or_else(|| {
                CliError::Domain("no polarization given and no degree to infer one from".into())
            })?;
            let p = canonical_polarization(g, d)?;
            Ok((p, d))
        }
    }
}

/// Serialize a document, append a final newline, and write it to the output
/// path or stdout.
fn emit<T: Serialize>(out: Option<&Path>, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    write_text(out, &text)
}

fn write_text(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let guards = Guards { vertices: cli.guard_vertices, edges: cli.guard_edges };
    match cli.command {
        Command::Stability { graph, pd, mu, degree, out } => {
            let g = load_graph(&graph, guards)?;
            let pd = load_pd(&pd, &g)?;
            let (p, d) = resolve_polarization(&g, mu.as_deref(), degree, Some(pd.degree()))?;
            let (semistable, witness) = is_semistable(&g, &p, &pd)?;
            let quasistable_at = if g.is_connected() {
                let mut per_vertex = Vec::with_capacity(g.n_vertices());
                for v0 in 0..g.n_vertices() {
                    per_vertex.push(is_quasistable(&g, &p, &pd, v0)?.0);
                }
                Some(per_vertex)
            } else {
                None
            };
            let doc = StabilityOut {
                degree: d,
                mu: tropjac::formats::rat_vec_to_strings(&p.mu),
                rank: rank(&g, &pd)?,
                semistable,
                semistable_witness: witness.map(|w| w.indices()),
                stable: is_stable(&g, &p, &pd)?.0,
                polystable: is_polystable(&g, &p, &pd)?.0,
                quasistable_at,
            };
            emit(out.as_deref(), &doc)
        }
        Command::Pol { graph, pd, mu, degree, out } => {
            let g = load_graph(&graph, guards)?;
            let pd = load_pd(&pd, &g)?;
            let (p, d) = resolve_polarization(&g, mu.as_deref(), degree, Some(pd.degree()))?;
            let (result, steps) = polystabilize(&g, &p, &pd)?;
            let doc = PolOut {
                degree: d,
                mu: tropjac::formats::rat_vec_to_strings(&p.mu),
                input: PseudoDivisorDto::from_pd(&pd),
                result: PseudoDivisorDto::from_pd(&result),
                rank: rank(&g, &result)?,
                steps: steps.iter().map(StepOut::from_step).collect(),
            };
            emit(out.as_deref(), &doc)
        }
        Command::Lift { graph, pd, basepoint, mu, degree, out } => {
            let g = load_graph(&graph, guards)?;
            let pd = load_pd(&pd, &g)?;
            let (p, d) = resolve_polarization(&g, mu.as_deref(), degree, Some(pd.degree()))?;
            let result = quasistable_lift(&g, &p, &pd, basepoint)?;
            let doc = LiftOut {
                degree: d,
                mu: tropjac::formats::rat_vec_to_strings(&p.mu),
                basepoint,
                input: PseudoDivisorDto::from_pd(&pd),
                result: PseudoDivisorDto::from_pd(&result),
                rank: rank(&g, &result)?,
            };
            emit(out.as_deref(), &doc)
        }
        Command::Poset { graph, predicate, degree, basepoint, mu, out, dot } => {
            let g = load_graph(&graph, guards)?;
            let (p, d) = resolve_polarization(&g, mu.as_deref(), Some(degree), None)?;
            let (kind, name) = match predicate {
                Predicate::Semistable => (StabilityKind::Semistable, "semistable"),
                Predicate::Stable => (StabilityKind::Stable, "stable"),
                Predicate::Polystable => (StabilityKind::Polystable, "polystable"),
                Predicate::Quasistable => (
                    StabilityKind::Quasistable(basepoint.expect("clap requires basepoint")),
                    "quasistable",
                ),
            };
            let sp = build_poset(&g, &p, kind, d)?;
            let doc = PosetOut::from_poset(&sp, name, basepoint);
            if let Some(path) = dot {
                let text = hasse_dot(name, &PosetOut::labels(&sp), &sp.poset.covers);
                write_text(Some(&path), &text)?;
            }
            emit(out.as_deref(), &doc)
        }
        Command::Jacobian { curve, degree, quasistable, basepoint, mu, out, svg: svg_path, dot } => {
            let x = load_curve(&curve, guards)?;
            let (p, d) = resolve_polarization(&x.model, mu.as_deref(), Some(degree), None)?;
            let (complex, kind) = if quasistable {
                let v0 = basepoint.expect("clap requires basepoint");
                (build_jacobian_quasistable(&x, &p, v0, d)?, "quasistable")
            } else {
                (build_jacobian_polystable(&x, &p, d)?, "polystable")
            };
            let faces = verify_faces(&complex)?;
            let doc = ComplexOut::from_complex(&complex, &faces, kind, basepoint.filter(|_| quasistable));
            if let Some(path) = svg_path {
                let text = svg::render_cells(&svg::top_cells(&complex.cells))?;
                write_text(Some(&path), &text)?;
            }
            if let Some(path) = dot {
                let labels = PosetOut::labels(&complex.index);
                let text = hasse_dot(kind, &labels, &complex.index.poset.covers);
                write_text(Some(&path), &text)?;
            }
            emit(out.as_deref(), &doc)
        }
        Command::Universal { genus, degree, out, dot } => {
            let u = build_universal(genus, degree)?;
            let faces = verify_universal_faces(&u)?;
            let doc = UniversalOut::from_universal(&u, &faces);
            if let Some(path) = dot {
                let text =
                    hasse_dot("universal", &UniversalOut::labels(&u), &u.poset.poset.covers);
                write_text(Some(&path), &text)?;
            }
            emit(out.as_deref(), &doc)
        }
        Command::Locate { curve, divisor, mu, degree, out } => {
            let x = load_curve(&curve, guards)?;
            let dto: DivisorDto = read_json(&divisor)?;
            let div = dto.to_divisor(&x)?;
            let (p, d) =
                resolve_polarization(&x.model, mu.as_deref(), degree, Some(div.degree()))?;
            let complex = build_jacobian_polystable(&x, &p, d)?;
            let (cell, coordinates) = locate(&x, &p, &div, &complex)?;
            let ty = PseudoDivisorDto::from_pd(&complex.index.elements[cell]);
            let doc = LocateOut {
                cell,
                e: ty.e,
                d: ty.d,
                coordinates: tropjac::formats::rat_vec_to_strings(&coordinates),
            };
            emit(out.as_deref(), &doc)
        }
        Command::Corpus { max_vertices, max_edges, seed, out } => {
            let fixtures = corpus::generate_corpus(max_vertices, max_edges, seed)?;
            let doc = CorpusOut {
                max_vertices,
                max_edges,
                seed,
                count: fixtures.len(),
                fixtures: fixtures.iter().map(FixtureOut::from_fixture).collect(),
            };
            emit(out.as_deref(), &doc)
        }
    }
}
