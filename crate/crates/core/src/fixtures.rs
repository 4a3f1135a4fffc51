//! Small named lattices and the worked two-slot aggregation example.

use std::sync::Arc;

use crate::aggregation::{AggSlot, SupAggSpec};
use crate::closure::{ClosureSystem, InteriorSystem, SystemIso};
use crate::lattice::FiniteLattice;

/// Labels and covers of the six-element lattice `{0, a, b, c, d, 1}`,
/// isomorphic to `3 × 2` with `a ≤ b`, `a ∨ c = d` and `b ∧ d = a`.
pub const L6_LABELS: [&str; 6] = ["0", "a", "b", "c", "d", "1"];
pub const L6_COVERS: [(&str, &str); 7] = [
    ("0", "a"),
    ("0", "c"),
    ("a", "b"),
    ("a", "d"),
    ("c", "d"),
    ("b", "1"),
    ("d", "1"),
];

pub fn l6() -> FiniteLattice {
    FiniteLattice::from_covers(&L6_LABELS, &L6_COVERS).expect("L6 is a lattice")
}

/// The diamond: bottom, three pairwise incomparable atoms, top.
pub fn m3() -> FiniteLattice {
    FiniteLattice::from_covers(
        &["0", "p", "q", "r", "1"],
        &[
            ("0", "p"),
            ("0", "q"),
            ("0", "r"),
            ("p", "1"),
            ("q", "1"),
            ("r", "1"),
        ],
    )
    .expect("M3 is a lattice")
}

/// The pentagon `0 < u < v < 1`, `0 < w < 1`.
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_covers(
        &["0", "u", "v", "w", "1"],
        &[("0", "u"), ("u", "v"), ("v", "1"), ("0", "w"), ("w", "1")],
    )
    .expect("N5 is a lattice")
}

/// `S1 = {0, b, c, 1}`, `T1 = {0, a, c, d}` with `φ1(c) = a`, `φ1(b) = c`.
pub fn example1_slot1(l: &Arc<FiniteLattice>) -> (ClosureSystem, InteriorSystem, SystemIso) {
    let s = ClosureSystem::from_labels(l.clone(), &["1", "b", "c", "0"]).expect("S1");
    let t = InteriorSystem::from_labels(l.clone(), &["d", "a", "c", "0"]).expect("T1");
    let iso = SystemIso::from_labels(&s, &t, &[("1", "d"), ("b", "c"), ("c", "a"), ("0", "0")])
        .expect("φ1");
    (s, t, iso)
}

/// `S2 = {a, 1}`, `T2 = {0, b}` with the unique isomorphism.
pub fn example1_slot2(l: &Arc<FiniteLattice>) -> (ClosureSystem, InteriorSystem, SystemIso) {
    let s = ClosureSystem::from_labels(l.clone(), &["1", "a"]).expect("S2");
    let t = InteriorSystem::from_labels(l.clone(), &["b", "0"]).expect("T2");
    let iso = SystemIso::from_labels(&s, &t, &[("a", "0"), ("1", "b")]).expect("φ2");
    (s, t, iso)
}

/// The binary aggregation spec on [`l6`] with slots `(S1, T1, φ1)` and
/// `(S2, T2, φ2)`.
pub fn example1_spec() -> SupAggSpec {
    let l = Arc::new(l6());
    let slot = |(closure, interior, iso)| AggSlot {
        closure,
        interior,
        iso,
    };
    SupAggSpec::new(
        l.clone(),
        vec![slot(example1_slot1(&l)), slot(example1_slot2(&l))],
    )
}
