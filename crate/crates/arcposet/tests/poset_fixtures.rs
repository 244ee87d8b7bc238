//! Hand-frozen Hasse diagrams checked against the library's own
//! constructions, end to end through the public API.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use arcposet::arc_diagrams::ArcDiagram;
use arcposet::poset::{FinitePoset, Grading, LatticeVerdict};
use arcposet::rook_monoid::Universe;
use arcposet::theorems::{diagram_poset, special_diagrams, stirling_poset, universe_poset};

/// Cover edges of the order on upper-triangular placements with three
/// columns, transcribed once and kept frozen.
const UPPER_THREE_EDGES: [(&str, &str); 24] = [
    ("(0,0,0)", "(0,0,1)"),
    ("(0,0,1)", "(0,1,0)"),
    ("(0,0,1)", "(0,0,2)"),
    ("(0,1,0)", "(1,0,0)"),
    ("(0,1,0)", "(0,2,0)"),
    ("(0,1,0)", "(0,1,2)"),
    ("(0,0,2)", "(0,2,0)"),
    ("(0,0,2)", "(0,1,2)"),
    ("(0,0,2)", "(0,0,3)"),
    ("(1,0,0)", "(1,0,2)"),
    ("(0,2,0)", "(0,2,1)"),
    ("(0,1,2)", "(1,0,2)"),
    ("(0,1,2)", "(0,2,1)"),
    ("(0,1,2)", "(0,1,3)"),
    ("(0,0,3)", "(0,1,3)"),
    ("(1,0,2)", "(1,2,0)"),
    ("(1,0,2)", "(1,0,3)"),
    ("(0,2,1)", "(1,2,0)"),
    ("(0,2,1)", "(0,2,3)"),
    ("(0,1,3)", "(1,0,3)"),
    ("(0,1,3)", "(0,2,3)"),
    ("(1,2,0)", "(1,2,3)"),
    ("(1,0,3)", "(1,2,3)"),
    ("(0,2,3)", "(1,2,3)"),
];

#[test]
fn upper_triangular_three_matches_the_frozen_hasse_diagram() {
    let poset = universe_poset(Universe::Upper, 3).unwrap();
    assert_eq!(poset.len(), 15);

    let edges: BTreeSet<(&str, &str)> = poset
        .cover_pairs()
        .map(|(x, y)| (poset.label(x), poset.label(y)))
        .collect();
    let expected: BTreeSet<(&str, &str)> = UPPER_THREE_EDGES.into_iter().collect();
    assert_eq!(edges, expected);

    let Grading::Graded { ranks } = poset.grading() else {
        panic!("the placement order is graded");
    };
    let mut histogram = BTreeMap::new();
    for r in ranks {
        *histogram.entry(r).or_insert(0u64) += 1;
    }
    let expected: BTreeMap<u64, u64> = [(0, 1), (1, 1), (2, 2), (3, 4), (4, 3), (5, 3), (6, 1)]
        .into_iter()
        .collect();
    assert_eq!(histogram, expected);
}

#[test]
fn small_distinguished_interval_is_the_full_placement_order() {
    // [Z(2), X(2)] inside the diagram poset on four vertices has seven
    // elements and the same shape as the order on all two-column
    // placements.
    let sd = special_diagrams(2).unwrap();
    let poset = diagram_poset(4).unwrap();
    let locate = |d: &ArcDiagram| {
        poset
            .position_of_label(&d.to_set_partition().to_string())
            .unwrap()
    };
    let interval = poset.interval(locate(&sd.z), locate(&sd.x)).unwrap();
    assert_eq!(interval.len(), 7);

    let reference = universe_poset(Universe::Full, 2).unwrap();
    assert!(interval.are_isomorphic(&reference).unwrap().is_some());
}

/// The 14-element non-lattice interval, transcribed node by node: one
/// bottom, layers of 3, 5, and 4, one top, 27 cover edges.
fn frozen_fourteen() -> FinitePoset {
    let names = [
        "a", "b1", "b2", "b3", "c1", "c2", "c3", "c4", "c5", "d1", "d2", "d3", "d4", "e1",
    ];
    let edges = [
        ("a", "b1"),
        ("a", "b2"),
        ("a", "b3"),
        ("b1", "c1"),
        ("b1", "c2"),
        ("b1", "c3"),
        ("b2", "c1"),
        ("b2", "c2"),
        ("b2", "c4"),
        ("b2", "c5"),
        ("b3", "c3"),
        ("b3", "c4"),
        ("b3", "c5"),
        ("c1", "d1"),
        ("c1", "d3"),
        ("c2", "d1"),
        ("c2", "d2"),
        ("c3", "d2"),
        ("c3", "d3"),
        ("c4", "d2"),
        ("c4", "d4"),
        ("c5", "d3"),
        ("c5", "d4"),
        ("d1", "e1"),
        ("d2", "e1"),
        ("d3", "e1"),
        ("d4", "e1"),
    ];
    let position = |name: &str| names.iter().position(|&n| n == name).unwrap();
    FinitePoset::from_covers(
        names.iter().map(|&n| n.to_string()).collect(),
        edges.map(|(a, b)| (position(a), position(b))),
    )
    .unwrap()
}

#[test]
fn the_fourteen_element_interval_matches_the_frozen_shape() {
    let poset = stirling_poset(5, 2).unwrap();
    let bottom = poset.position_of_label("14|25|3").unwrap();
    let top = poset.position_of_label("1|234|5").unwrap();
    let interval = poset.interval(bottom, top).unwrap();

    assert_eq!(interval.len(), 14);
    assert!(matches!(
        interval.is_lattice(),
        LatticeVerdict::NotLattice { .. }
    ));

    let frozen = frozen_fourteen();
    assert!(matches!(
        frozen.is_lattice(),
        LatticeVerdict::NotLattice { .. }
    ));
    assert!(interval.are_isomorphic(&frozen).unwrap().is_some());
}
