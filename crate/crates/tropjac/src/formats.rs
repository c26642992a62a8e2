//! The JSON file formats: weighted graphs, pseudo-divisors, polarizations,
//! curves, and unitary divisors.
//!
//! Vertex and edge identity is positional, so parallel edges stay
//! distinguishable and nothing is ever sorted on the way in or out.
//! Rationals travel as strings, `"p"` or `"p/q"` with a positive coprime
//! denominator, so no precision is lost to floating point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use tropjac_core::curve::{TropicalCurve, UnitaryDivisor};
use tropjac_core::graph::{Edge, EdgeSet, WeightedGraph};
use tropjac_core::stability::{Polarization, PseudoDivisor};
use tropjac_core::Rat;

use crate::{CliError, CliResult};

/// Render a rational as `"p"` when integral, `"p/q"` otherwise.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom() == &BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p"` or `"p/q"`. The denominator must be positive and coprime to
/// the numerator; anything else is rejected as malformed.
pub fn parse_rat(s: &str) -> CliResult<Rat> {
    let (num, den) = match s.split_once('/') {
        None => (s, "1"),
        Some((p, q)) => (p, q),
    };
    let bad = || CliError::Malformed(format!("invalid rational {s:?}"));
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q <= BigInt::from(0) {
        return Err(CliError::Malformed(format!(
            "invalid rational {s:?}: denominator must be positive"
        )));
    }
    let r = Rat::new(p, q.clone());
    if r.denom() != &q {
        return Err(CliError::Malformed(format!(
            "invalid rational {s:?}: numerator and denominator must be coprime"
        )));
    }
    Ok(r)
}

/// Parse a list of rational strings.
pub fn parse_rat_vec(strings: &[String]) -> CliResult<Vec<Rat>> {
    strings.iter().map(|s| parse_rat(s)).collect()
}

/// Render a list of rationals.
pub fn rat_vec_to_strings(xs: &[Rat]) -> Vec<String> {
    xs.iter().map(rat_to_string).collect()
}

/// One vertex record: its nonnegative integer weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDto {
    pub w: u32,
}

/// One edge record: endpoint vertex indices. The order of `s` and `t` fixes
/// the edge's orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDto {
    pub s: usize,
    pub t: usize,
}

/// A weighted multigraph with loops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDto {
    pub vertices: Vec<VertexDto>,
    pub edges: Vec<EdgeDto>,
}

impl GraphDto {
    pub fn from_graph(g: &WeightedGraph) -> GraphDto {
        GraphDto {
            vertices: g.weights().iter().map(|&w| VertexDto { w }).collect(),
            edges: g.edges().iter().map(|e| EdgeDto { s: e.s, t: e.t }).collect(),
        }
    }

    pub fn to_graph(&self) -> CliResult<WeightedGraph> {
        let weights = self.vertices.iter().map(|v| v.w).collect();
        let edges = self.edges.iter().map(|e| Edge::new(e.s, e.t)).collect();
        WeightedGraph::new(weights, edges).map_err(CliError::from_input)
    }
}

/// A pseudo-divisor: the marked edge indices `E` and one integer value per
/// vertex in `D`. The `-1` at each marked point is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoDivisorDto {
    #[serde(rename = "E")]
    pub e: Vec<usize>,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
}

impl PseudoDivisorDto {
    pub fn from_pd(pd: &PseudoDivisor) -> PseudoDivisorDto {
        PseudoDivisorDto { e: pd.edges.indices(), d: pd.values.clone() }
    }

    pub fn to_pd(&self, g: &WeightedGraph) -> CliResult<PseudoDivisor> {
        for &e in &self.e {
            if e >= g.n_edges() {
                return Err(CliError::Malformed(format!(
                    "marked edge index {e} out of range (graph has {} edges)",
                    g.n_edges()
                )));
            }
        }
        let edges = EdgeSet::from_indices(&self.e);
        if edges.len() != self.e.len() {
            return Err(CliError::Malformed("marked edge indices must be distinct".into()));
        }
        let pd = PseudoDivisor::new(edges, self.d.clone());
        pd.check_graph(g).map_err(CliError::from_input)?;
        Ok(pd)
    }
}

/// A polarization: one rational weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationDto {
    pub mu: Vec<String>,
}

impl PolarizationDto {
    pub fn from_polarization(p: &Polarization) -> PolarizationDto {
        PolarizationDto { mu: rat_vec_to_strings(&p.mu) }
    }

    pub fn to_polarization(&self, g: &WeightedGraph) -> CliResult<Polarization> {
        let p = Polarization::new(parse_rat_vec(&self.mu)?);
        p.check_graph(g).map_err(CliError::from_input)?;
        Ok(p)
    }
}

/// A tropical curve: the graph plus one positive rational length per edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDto {
    pub vertices: Vec<VertexDto>,
    pub edges: Vec<EdgeDto>,
    pub lengths: Vec<String>,
}

impl CurveDto {
    pub fn from_curve(x: &TropicalCurve) -> CurveDto {
        let g = GraphDto::from_graph(&x.model);
        CurveDto {
            vertices: g.vertices,
            edges: g.edges,
            lengths: rat_vec_to_strings(&x.lengths),
        }
    }

    pub fn graph_part(&self) -> GraphDto {
        GraphDto { vertices: self.vertices.clone(), edges: self.edges.clone() }
    }

    pub fn to_curve(&self) -> CliResult<TropicalCurve> {
        let g = self.graph_part().to_graph()?;
        let lengths = parse_rat_vec(&self.lengths)?;
        TropicalCurve::new(g, lengths).map_err(CliError::from_input)
    }
}

/// A unitary divisor on a curve: its combinatorial type plus, for every
/// marked edge, the distance of the interior point from the edge's `s`
/// endpoint. Position keys are edge indices rendered in decimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorDto {
    #[serde(rename = "E")]
    pub e: Vec<usize>,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
    pub positions: BTreeMap<String, String>,
}

impl DivisorDto {
    pub fn from_divisor(d: &UnitaryDivisor) -> DivisorDto {
        let ty = d.combinatorial_type();
        let mut positions = BTreeMap::new();
        for e in ty.edges.iter() {
            positions.insert(e.to_string(), rat_to_string(d.position(e).expect("marked edge")));
        }
        DivisorDto { e: ty.edges.indices(), d: ty.values.clone(), positions }
    }

    pub fn to_divisor(&self, x: &TropicalCurve) -> CliResult<UnitaryDivisor> {
        let ty = PseudoDivisorDto { e: self.e.clone(), d: self.d.clone() }.to_pd(&x.model)?;
        let mut positions = Vec::with_capacity(self.e.len());
        for e in ty.edges.iter() {
            let key = e.to_string();
            let s = self.positions.get(&key).ok_or_else(|| {
                CliError::Malformed(format!("missing position for marked edge {e}"))
            })?;
            positions.push(parse_rat(s)?);
        }
        for key in self.positions.keys() {
            let parsed: usize = key
                .parse()
                .map_err(|_| CliError::Malformed(format!("invalid position key {key:?}")))?;
            if !ty.edges.contains(parsed) {
                return Err(CliError::Malformed(format!(
                    "position given for unmarked edge {parsed}"
                )));
            }
        }
        UnitaryDivisor::new(x, ty, positions).map_err(CliError::from_input)
    }
}
