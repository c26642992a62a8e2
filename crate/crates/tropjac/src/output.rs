//! The JSON documents the subcommands emit.
//!
//! Wherever a document echoes an input value it uses the same shape the
//! input parser accepts, so outputs can feed straight back into later
//! invocations. Every document both serializes and deserializes, and field
//! order is fixed by declaration order, so emission is deterministic.

use serde::{Deserialize, Serialize};
use tropjac_core::geometry::QuotientCell;
use tropjac_core::jacobian::{CellComplex, FaceReport, UniversalComplex};
use tropjac_core::polystab::{SaturationStep, StabilityPoset};
use tropjac_core::stability::format_pd;

use crate::corpus::CorpusFixture;
use crate::formats::{rat_vec_to_strings, CurveDto, GraphDto, PolarizationDto, PseudoDivisorDto};

/// Verdicts of all stability predicates for one pseudo-divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityOut {
    pub degree: i64,
    pub mu: Vec<String>,
    pub rank: usize,
    pub semistable: bool,
    /// A vertex subset with negative slack, present when not semistable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semistable_witness: Option<Vec<usize>>,
    pub stable: bool,
    pub polystable: bool,
    /// Quasistability per base vertex; absent when the graph is not
    /// connected (the notion is undefined there).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasistable_at: Option<Vec<bool>>,
}

/// One saturation step: the zero-slack subset chosen and the edges marked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepOut {
    pub violating: Vec<usize>,
    pub added: Vec<usize>,
}

impl StepOut {
    pub fn from_step(s: &SaturationStep) -> StepOut {
        StepOut { violating: s.violating.indices(), added: s.added.indices() }
    }
}

/// Result of polystabilization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolOut {
    pub degree: i64,
    pub mu: Vec<String>,
    pub input: PseudoDivisorDto,
    pub result: PseudoDivisorDto,
    pub rank: usize,
    pub steps: Vec<StepOut>,
}

/// Result of the quasistable lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftOut {
    pub degree: i64,
    pub mu: Vec<String>,
    pub basepoint: usize,
    pub input: PseudoDivisorDto,
    pub result: PseudoDivisorDto,
    pub rank: usize,
}

/// One poset element: a pseudo-divisor and its rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementOut {
    #[serde(rename = "E")]
    pub e: Vec<usize>,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
    pub rank: usize,
}

/// A stability poset with its verification report and isomorphism orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetOut {
    pub predicate: String,
    pub degree: i64,
    pub mu: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<usize>,
    pub graph: GraphDto,
    pub elements: Vec<ElementOut>,
    /// `(upper, lower)` cover pairs.
    pub covers: Vec<(usize, usize)>,
    pub minimal: Vec<usize>,
    pub maximal: Vec<usize>,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub ranked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    pub codim1_connected: bool,
    /// Orbit ids under all graph automorphisms, and the orbit count.
    pub orbits_full: Vec<usize>,
    pub orbit_classes_full: usize,
    /// Orbit ids under orientation-preserving automorphisms only.
    pub orbits_oriented: Vec<usize>,
    pub orbit_classes_oriented: usize,
}

impl PosetOut {
    pub fn from_poset(sp: &StabilityPoset, predicate: &str, basepoint: Option<usize>) -> PosetOut {
        let report = tropjac_core::polystab::verify_ranked_and_connected(&sp.poset);
        let autos = sp.graph.automorphisms().expect("poset graphs fit the guards");
        let oriented: Vec<_> =
            autos.iter().filter(|a| a.is_orientation_preserving()).cloned().collect();
        let (orbits_full, orbit_classes_full) =
            tropjac_core::polystab::orbits_under(&sp.elements, &autos);
        let (orbits_oriented, orbit_classes_oriented) =
            tropjac_core::polystab::orbits_under(&sp.elements, &oriented);
        PosetOut {
            predicate: predicate.to_string(),
            degree: sp.degree,
            mu: rat_vec_to_strings(&sp.polarization.mu),
            basepoint,
            graph: GraphDto::from_graph(&sp.graph),
            elements: sp
                .elements
                .iter()
                .zip(&sp.ranks)
                .map(|(pd, &rank)| {
                    let dto = PseudoDivisorDto::from_pd(pd);
                    ElementOut { e: dto.e, d: dto.d, rank }
                })
                .collect(),
            covers: sp.poset.covers.clone(),
            minimal: sp.poset.minimal_elements(),
            maximal: sp.poset.maximal_elements(),
            f_vector: sp.f_vector(),
            euler_characteristic: sp.euler_characteristic(),
            ranked: report.is_ranked,
            length: report.length,
            codim1_connected: report.codim1_connected,
            orbits_full,
            orbit_classes_full,
            orbits_oriented,
            orbit_classes_oriented,
        }
    }

    /// Element labels for the DOT export.
    pub fn labels(sp: &StabilityPoset) -> Vec<String> {
        sp.elements.iter().map(format_pd).collect()
    }
}

/// One cell in quotient coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellOut {
    pub ambient_dim: usize,
    pub cone: bool,
    pub dim: usize,
    /// Basis of the subspace the ambient coordinates are reduced by.
    pub subspace: Vec<Vec<String>>,
    /// The ambient coordinates the quotient projection keeps.
    pub quotient_coords: Vec<usize>,
    /// Extreme points (bounded cells only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<Vec<String>>,
    /// Primitive extreme rays (cones only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<Vec<String>>,
}

impl CellOut {
    pub fn from_cell(cell: &QuotientCell) -> CellOut {
        let extremes: Vec<Vec<String>> =
            cell.points.iter().map(|p| rat_vec_to_strings(p)).collect();
        CellOut {
            ambient_dim: cell.ambient_dim,
            cone: cell.cone,
            dim: cell.dim,
            subspace: cell.subspace.iter().map(|v| rat_vec_to_strings(v)).collect(),
            quotient_coords: cell.map.complement.clone(),
            vertices: if cell.cone { Vec::new() } else { extremes.clone() },
            rays: if cell.cone { extremes } else { Vec::new() },
        }
    }
}

/// One cell of a complex, keyed by its indexing pseudo-divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexCellOut {
    #[serde(rename = "E")]
    pub e: Vec<usize>,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
    pub rank: usize,
    pub cell: CellOut,
}

/// One verified cover relation between cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCheckOut {
    pub upper: usize,
    pub lower: usize,
    pub passed: bool,
}

/// A cell decomposition of the degree-`d` divisor classes of a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexOut {
    pub kind: String,
    pub degree: i64,
    pub mu: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<usize>,
    pub curve: CurveDto,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub cells: Vec<ComplexCellOut>,
    /// `(upper, lower)` cover pairs of the indexing poset.
    pub covers: Vec<(usize, usize)>,
    pub faces_verified: bool,
    pub face_checks: Vec<FaceCheckOut>,
}

impl ComplexOut {
    pub fn from_complex(
        complex: &CellComplex,
        faces: &FaceReport,
        kind: &str,
        basepoint: Option<usize>,
    ) -> ComplexOut {
        ComplexOut {
            kind: kind.to_string(),
            degree: complex.index.degree,
            mu: rat_vec_to_strings(&complex.index.polarization.mu),
            basepoint,
            curve: CurveDto::from_curve(&complex.curve),
            f_vector: complex.f_vector(),
            euler_characteristic: complex.euler_characteristic(),
            cells: complex
                .index
                .elements
                .iter()
                .zip(&complex.index.ranks)
                .zip(&complex.cells)
                .map(|((pd, &rank), cell)| {
                    let dto = PseudoDivisorDto::from_pd(pd);
                    ComplexCellOut { e: dto.e, d: dto.d, rank, cell: CellOut::from_cell(cell) }
                })
                .collect(),
            covers: complex.index.poset.covers.clone(),
            faces_verified: faces.all_pass,
            face_checks: faces
                .checks
                .iter()
                .map(|c| FaceCheckOut { upper: c.upper, lower: c.lower, passed: c.passed })
                .collect(),
        }
    }
}

/// One cone of the genus-wide complex: which graph it lives over, its
/// indexing pseudo-divisor, and its geometry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalClassOut {
    pub graph: usize,
    #[serde(rename = "E")]
    pub e: Vec<usize>,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
    pub dim: usize,
    pub cone: CellOut,
}

/// The genus-wide cone complex over all stable graphs of a genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalOut {
    pub genus: i64,
    pub degree: i64,
    pub graphs: Vec<GraphDto>,
    pub polarizations: Vec<PolarizationDto>,
    pub classes: Vec<UniversalClassOut>,
    /// `(upper, lower)` cover pairs between classes.
    pub covers: Vec<(usize, usize)>,
    /// Cone counts by dimension, counting isomorphism classes once.
    pub f_classes: Vec<usize>,
    /// Cone counts by dimension, counting every indexed element.
    pub f_elements: Vec<usize>,
    pub ranked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    pub codim1_connected: bool,
    pub faces_verified: bool,
}

impl UniversalOut {
    pub fn from_universal(u: &UniversalComplex, faces: &FaceReport) -> UniversalOut {
        let report = tropjac_core::polystab::verify_ranked_and_connected(&u.poset.poset);
        UniversalOut {
            genus: u.poset.genus,
            degree: u.poset.degree,
            graphs: u.poset.graphs.iter().map(GraphDto::from_graph).collect(),
            polarizations: u
                .poset
                .polarizations
                .iter()
                .map(PolarizationDto::from_polarization)
                .collect(),
            classes: u
                .poset
                .classes
                .iter()
                .zip(&u.poset.dims)
                .zip(&u.cones)
                .map(|((class, &dim), cone)| {
                    let dto = PseudoDivisorDto::from_pd(&class.pd);
                    UniversalClassOut {
                        graph: class.graph,
                        e: dto.e,
                        d: dto.d,
                        dim,
                        cone: CellOut::from_cell(cone),
                    }
                })
                .collect(),
            covers: u.poset.poset.covers.clone(),
            f_classes: u.f_classes.clone(),
            f_elements: u.f_elements.clone(),
            ranked: report.is_ranked,
            length: report.length,
            codim1_connected: report.codim1_connected,
            faces_verified: faces.all_pass,
        }
    }

    /// Class labels for the DOT export.
    pub fn labels(u: &UniversalComplex) -> Vec<String> {
        u.poset
            .classes
            .iter()
            .map(|c| format!("G{} {}", c.graph, format_pd(&c.pd)))
            .collect()
    }
}

/// Where a divisor lives: the cell of its polystable type and its quotient
/// coordinates inside that cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocateOut {
    pub cell: usize,
    #[serde(rename = "E")]
    pub e: Vec<usize>,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
    pub coordinates: Vec<String>,
}

/// One corpus polarization entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationFixtureOut {
    pub degree: i64,
    pub kind: String,
    pub mu: Vec<String>,
}

/// One corpus fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureOut {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alias: Option<String>,
    pub genus: i64,
    pub graph: GraphDto,
    pub lengths: Vec<String>,
    pub polarizations: Vec<PolarizationFixtureOut>,
}

impl FixtureOut {
    pub fn from_fixture(fx: &CorpusFixture) -> FixtureOut {
        FixtureOut {
            name: fx.name.clone(),
            alias: fx.alias.map(|a| a.to_string()),
            genus: fx.genus,
            graph: GraphDto::from_graph(&fx.graph),
            lengths: rat_vec_to_strings(&fx.lengths),
            polarizations: fx
                .polarizations
                .iter()
                .map(|p| PolarizationFixtureOut {
                    degree: p.degree,
                    kind: p.kind.to_string(),
                    mu: rat_vec_to_strings(&p.polarization.mu),
                })
                .collect(),
        }
    }
}

/// The corpus manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusOut {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub seed: u64,
    pub count: usize,
    pub fixtures: Vec<FixtureOut>,
}
