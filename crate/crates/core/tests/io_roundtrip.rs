mod common;

use gkm::axial::{AxialFunction, ConnectionError, Gkm, GkmError, SpanMode};
use gkm::io::{emit_gkm, parse_gkm, GkmDocument, IoError};

use common::{fixtures, random_weight_changes, rng, shuffled_orderings};

#[test]
fn fixtures_round_trip() {
    for (name, gkm) in fixtures() {
        let doc = GkmDocument::from_gkm(&gkm).unwrap();
        let text = emit_gkm(&doc);
        let back = parse_gkm(&text).unwrap();
        assert_eq!(back, doc, "{name}");
        assert_eq!(emit_gkm(&back), text, "{name}");
        assert_eq!(back.to_gkm(SpanMode::Integer).unwrap(), gkm, "{name}");
    }
}

#[test]
fn reordered_and_changed_graphs_round_trip() {
    let mut r = rng(5);
    for (name, gkm) in random_weight_changes(9, 10) {
        let lists = shuffled_orderings(&gkm, &mut r);
        let gkm = gkm.reordered(&lists).unwrap();
        let doc = GkmDocument::from_gkm(&gkm).unwrap();
        let back = parse_gkm(&emit_gkm(&doc)).unwrap().to_gkm(SpanMode::Integer).unwrap();
        assert_eq!(back, gkm, "{name}");
    }
}

#[test]
fn missing_connection_is_inferred() {
    let text = r#"{
      "torus_rank": 3,
      "vertices": ["0", "1", "2", "3"],
      "edges": [
        {"id": "a", "endpoints": ["0", "1"], "weight": [1, 0, 0]},
        {"id": "b", "endpoints": ["0", "2"], "weight": [0, 1, 0]},
        {"id": "c", "endpoints": ["0", "3"], "weight": [0, 0, 1]},
        {"id": "d", "endpoints": ["1", "2"], "weight": [-1, 1, 0]},
        {"id": "e", "endpoints": ["1", "3"], "weight": [-1, 0, 1]},
        {"id": "f", "endpoints": ["2", "3"], "weight": [0, -1, 1]}
      ]
    }"#;
    let gkm = parse_gkm(text).unwrap().to_gkm(SpanMode::Integer).unwrap();
    assert!(gkm.validate().is_complete_pass());
    assert_eq!(gkm.graph().dart_count(), 12);
}

#[test]
fn ambiguous_connection_needs_explicit_section() {
    // K4 on the corners of the unit square: weights at each vertex are dependent
    let text = r#"{
      "torus_rank": 2,
      "vertices": ["0", "1", "2", "3"],
      "edges": [
        {"id": "01", "endpoints": ["0", "1"], "weight": [1, 0]},
        {"id": "02", "endpoints": ["0", "2"], "weight": [0, 1]},
        {"id": "03", "endpoints": ["0", "3"], "weight": [1, 1]},
        {"id": "12", "endpoints": ["1", "2"], "weight": [-1, 1]},
        {"id": "13", "endpoints": ["1", "3"], "weight": [0, 1]},
        {"id": "23", "endpoints": ["2", "3"], "weight": [1, 0]}
      ]
    }"#;
    match parse_gkm(text).unwrap().to_gkm(SpanMode::Integer) {
        Err(IoError::Gkm(GkmError::Connection(ConnectionError::AmbiguousConnection { .. }))) => {}
        other => panic!("expected an ambiguous connection, got {other:?}"),
    }
}

#[test]
fn rational_span_mode_relaxes_effectiveness() {
    let base = gkm::families::gen_s6();
    let labels = base.axial().labels().iter().map(|w| w.iter().map(|x| x * 2).collect()).collect();
    let doubled = AxialFunction::new(2, labels).unwrap();
    assert!(base.with_axial(doubled.clone()).is_err());
    let relaxed =
        Gkm::with_span_mode(base.graph().clone(), doubled, Some(base.connection().clone()), SpanMode::Rational)
            .unwrap();
    let doc = GkmDocument::from_gkm(&relaxed).unwrap();
    assert!(doc.to_gkm(SpanMode::Integer).is_err());
    assert!(doc.to_gkm(SpanMode::Rational).is_ok());
}

#[test]
fn unknown_fields_rejected() {
    let text = r#"{"torus_rank": 1, "vertices": [], "edges": [], "extra": 1}"#;
    assert!(matches!(parse_gkm(text), Err(IoError::Schema { .. })));
}
