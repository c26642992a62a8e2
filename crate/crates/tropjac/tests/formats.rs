//! Unit and property tests for the JSON file formats: exact rational
//! strings, positional graph identity, and validation of malformed input.

use proptest::prelude::*;
use tropjac::corpus::theta;
use tropjac::formats::{
    parse_rat, rat_to_string, CurveDto, DivisorDto, EdgeDto, GraphDto, PolarizationDto,
    PseudoDivisorDto, VertexDto,
};
use tropjac::CliError;
use tropjac_core::curve::TropicalCurve;
use tropjac_core::graph::EdgeSet;
use tropjac_core::rat::{rat, ratio};
use tropjac_core::stability::PseudoDivisor;

fn malformed<T: std::fmt::Debug>(r: Result<T, CliError>) -> bool {
    matches!(r, Err(CliError::Malformed(_)))
}

/// The triple-edge curve with lengths 1, 3/2, 2.
fn hexagon_curve() -> TropicalCurve {
    TropicalCurve::new(theta(), vec![rat(1), ratio(3, 2), rat(2)]).unwrap()
}

#[test]
fn rational_strings_render_canonically() {
    assert_eq!(rat_to_string(&rat(1)), "1");
    assert_eq!(rat_to_string(&rat(-7)), "-7");
    assert_eq!(rat_to_string(&rat(0)), "0");
    assert_eq!(rat_to_string(&ratio(3, 2)), "3/2");
    assert_eq!(rat_to_string(&ratio(-1, 2)), "-1/2");
    assert_eq!(rat_to_string(&ratio(4, 2)), "2");
}

#[test]
fn rational_strings_parse() {
    assert_eq!(parse_rat("1").unwrap(), rat(1));
    assert_eq!(parse_rat("-7").unwrap(), rat(-7));
    assert_eq!(parse_rat("3/2").unwrap(), ratio(3, 2));
    assert_eq!(parse_rat("-1/2").unwrap(), ratio(-1, 2));
    assert_eq!(parse_rat("2/1").unwrap(), rat(2));
}

#[test]
fn rational_strings_reject_junk() {
    for bad in ["", "x", "1/2/3", "1/0", "1/-2", "2/4", "0/3", " 1", "1.5"] {
        assert!(malformed(parse_rat(bad)), "expected rejection of {bad:?}");
    }
}

#[test]
fn graph_document_is_stable() {
    let frozen = r#"{"vertices":[{"w":0},{"w":0}],"edges":[{"s":0,"t":1},{"s":0,"t":1},{"s":0,"t":1}]}"#;
    let doc = GraphDto::from_graph(&theta());
    assert_eq!(serde_json::to_string(&doc).unwrap(), frozen);
    let parsed: GraphDto = serde_json::from_str(frozen).unwrap();
    let g = parsed.to_graph().unwrap();
    assert_eq!(GraphDto::from_graph(&g), doc);
}

#[test]
fn graph_document_keeps_edge_order_and_orientation() {
    let doc = GraphDto {
        vertices: vec![VertexDto { w: 2 }, VertexDto { w: 0 }],
        edges: vec![EdgeDto { s: 1, t: 0 }, EdgeDto { s: 0, t: 1 }, EdgeDto { s: 1, t: 1 }],
    };
    let g = doc.to_graph().unwrap();
    assert_eq!(GraphDto::from_graph(&g), doc);
}

#[test]
fn graph_document_rejects_bad_endpoints() {
    let doc = GraphDto {
        vertices: vec![VertexDto { w: 0 }],
        edges: vec![EdgeDto { s: 0, t: 1 }],
    };
    assert!(malformed(doc.to_graph()));
}

#[test]
fn pseudo_divisor_document_round_trips() {
    let frozen = r#"{"E":[0,2],"D":[1,-2]}"#;
    let doc: PseudoDivisorDto = serde_json::from_str(frozen).unwrap();
    let pd = doc.to_pd(&theta()).unwrap();
    assert_eq!(pd.edges, EdgeSet::from_indices(&[0, 2]));
    assert_eq!(pd.values, vec![1, -2]);
    assert_eq!(serde_json::to_string(&PseudoDivisorDto::from_pd(&pd)).unwrap(), frozen);
}

#[test]
fn pseudo_divisor_document_rejects_bad_input() {
    let g = theta();
    let dup = PseudoDivisorDto { e: vec![1, 1], d: vec![0, 0] };
    assert!(malformed(dup.to_pd(&g)));
    let out_of_range = PseudoDivisorDto { e: vec![5], d: vec![0, 0] };
    assert!(malformed(out_of_range.to_pd(&g)));
    let wrong_arity = PseudoDivisorDto { e: vec![], d: vec![1] };
    assert!(malformed(wrong_arity.to_pd(&g)));
}

#[test]
fn polarization_document_round_trips() {
    let frozen = r#"{"mu":["-1/2","-1/2"]}"#;
    let doc: PolarizationDto = serde_json::from_str(frozen).unwrap();
    let p = doc.to_polarization(&theta()).unwrap();
    assert_eq!(p.mu, vec![ratio(-1, 2), ratio(-1, 2)]);
    assert_eq!(
        serde_json::to_string(&PolarizationDto::from_polarization(&p)).unwrap(),
        frozen
    );
}

#[test]
fn polarization_document_rejects_bad_input() {
    let g = theta();
    let non_coprime = PolarizationDto { mu: vec!["2/4".into(), "0".into()] };
    assert!(malformed(non_coprime.to_polarization(&g)));
    let wrong_arity = PolarizationDto { mu: vec!["1".into()] };
    assert!(malformed(wrong_arity.to_polarization(&g)));
}

#[test]
fn curve_document_round_trips() {
    let frozen = r#"{"vertices":[{"w":0},{"w":0}],"edges":[{"s":0,"t":1},{"s":0,"t":1},{"s":0,"t":1}],"lengths":["1","3/2","2"]}"#;
    let doc: CurveDto = serde_json::from_str(frozen).unwrap();
    let x = doc.to_curve().unwrap();
    assert_eq!(x, hexagon_curve());
    assert_eq!(serde_json::to_string(&CurveDto::from_curve(&x)).unwrap(), frozen);
}

#[test]
fn curve_document_rejects_bad_lengths() {
    let base = CurveDto::from_curve(&hexagon_curve());
    let mut zero_len = base.clone();
    zero_len.lengths[1] = "0".into();
    assert!(malformed(zero_len.to_curve()));
    let mut negative = base.clone();
    negative.lengths[0] = "-1".into();
    assert!(malformed(negative.to_curve()));
    let mut missing = base;
    missing.lengths.pop();
    assert!(malformed(missing.to_curve()));
}

#[test]
fn divisor_document_round_trips() {
    let frozen = r#"{"E":[0],"D":[1,-2],"positions":{"0":"1/2"}}"#;
    let x = hexagon_curve();
    let doc: DivisorDto = serde_json::from_str(frozen).unwrap();
    let d = doc.to_divisor(&x).unwrap();
    assert_eq!(d.ty.edges, EdgeSet::singleton(0));
    assert_eq!(d.position_vector(), &[ratio(1, 2)]);
    assert_eq!(serde_json::to_string(&DivisorDto::from_divisor(&d)).unwrap(), frozen);
}

#[test]
fn divisor_document_rejects_bad_positions() {
    let x = hexagon_curve();
    let good: DivisorDto =
        serde_json::from_str(r#"{"E":[0],"D":[1,-2],"positions":{"0":"1/2"}}"#).unwrap();

    let mut missing = good.clone();
    missing.positions.clear();
    assert!(malformed(missing.to_divisor(&x)));

    let mut extra = good.clone();
    extra.positions.insert("2".into(), "1/2".into());
    assert!(malformed(extra.to_divisor(&x)));

    let mut junk_key = good.clone();
    junk_key.positions.insert("x".into(), "1/2".into());
    assert!(malformed(junk_key.to_divisor(&x)));

    let mut boundary = good.clone();
    boundary.positions.insert("0".into(), "0".into());
    assert!(malformed(boundary.to_divisor(&x)));

    let mut beyond = good;
    beyond.positions.insert("0".into(), "2".into());
    assert!(malformed(beyond.to_divisor(&x)));
}

proptest! {
    /// Every canonically rendered rational parses back to itself.
    #[test]
    fn rational_codec_round_trips(p in -9999i64..=9999, q in 1i64..=64) {
        let x = ratio(p, q);
        let rendered = rat_to_string(&x);
        prop_assert_eq!(parse_rat(&rendered).unwrap(), x);
    }

    /// Graph documents survive a serialize/parse/rebuild cycle unchanged,
    /// including edge order and orientation.
    #[test]
    fn graph_codec_round_trips(
        weights in proptest::collection::vec(0u32..3, 1..5),
        raw_edges in proptest::collection::vec((0usize..8, 0usize..8), 0..7),
    ) {
        let n = weights.len();
        let doc = GraphDto {
            vertices: weights.into_iter().map(|w| VertexDto { w }).collect(),
            edges: raw_edges.into_iter().map(|(s, t)| EdgeDto { s: s % n, t: t % n }).collect(),
        };
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: GraphDto = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        let g = parsed.to_graph().unwrap();
        prop_assert_eq!(GraphDto::from_graph(&g), doc);
    }

    /// Pseudo-divisor documents round-trip over a fixed four-edge graph.
    #[test]
    fn pseudo_divisor_codec_round_trips(
        mask in 0u8..16,
        values in proptest::collection::vec(-3i64..=3, 2),
    ) {
        let g = tropjac::corpus::two_vertex_four_edge();
        let marked: Vec<usize> = (0..4).filter(|e| mask & (1 << e) != 0).collect();
        let pd = PseudoDivisor::new(EdgeSet::from_indices(&marked), values);
        let doc = PseudoDivisorDto::from_pd(&pd);
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: PseudoDivisorDto = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(parsed.to_pd(&g).unwrap(), pd);
    }
}
