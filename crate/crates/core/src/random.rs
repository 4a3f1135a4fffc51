//! Random small lattices, systems and maps for property tests.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::closure::{enumerate_isos, join_closure, meet_closure, ClosureSystem, InteriorSystem, System, SystemIso};
use crate::fixtures;
use crate::galois::GaloisPair;
use crate::lattice::{ElementRef, FiniteLattice};
use crate::map::LatticeMap;

/// Named lattices with at most 8 elements.
pub fn corpus() -> Vec<Arc<FiniteLattice>> {
    let mut out: Vec<FiniteLattice> = (1..=8).map(FiniteLattice::chain).collect();
    out.extend((1..=3).map(FiniteLattice::boolean));
    out.extend([fixtures::l6(), fixtures::m3(), fixtures::n5()]);
    out.into_iter().map(Arc::new).collect()
}

fn random_subset<R: Rng + ?Sized>(l: &FiniteLattice, rng: &mut R) -> Vec<ElementRef> {
    let p = rng.gen_range(0.1..0.7);
    l.elements().filter(|_| rng.gen_bool(p)).collect()
}

/// A lattice of size at most 8: a corpus member, or a random meet-closed
/// subset of `2^3`.
pub fn random_lattice<R: Rng + ?Sized>(rng: &mut R) -> Arc<FiniteLattice> {
    if rng.gen_bool(0.5) {
        corpus().choose(rng).expect("non-empty corpus").clone()
    } else {
        let cube = Arc::new(FiniteLattice::boolean(3));
        let generators = random_subset(&cube, rng);
        Arc::new(meet_closure(&cube, &generators).as_lattice())
    }
}

pub fn random_self_map<R: Rng + ?Sized>(l: &Arc<FiniteLattice>, rng: &mut R) -> LatticeMap {
    let n = l.len();
    let values = (0..n).map(|_| ElementRef::new(rng.gen_range(0..n))).collect();
    LatticeMap::new(l.clone(), l.clone(), values).expect("values in range")
}

pub fn random_closure_system<R: Rng + ?Sized>(l: &Arc<FiniteLattice>, rng: &mut R) -> ClosureSystem {
    meet_closure(l, &random_subset(l, rng))
}

pub fn random_interior_system<R: Rng + ?Sized>(l: &Arc<FiniteLattice>, rng: &mut R) -> InteriorSystem {
    join_closure(l, &random_subset(l, rng))
}

/// A closure system, an isomorphic interior system and a random
/// isomorphism between them. Falls back to `({1}, {0})` if no isomorphic
/// pair turns up.
pub fn random_triple<R: Rng + ?Sized>(
    l: &Arc<FiniteLattice>,
    rng: &mut R,
) -> (ClosureSystem, InteriorSystem, SystemIso) {
    for _ in 0..64 {
        let s = random_closure_system(l, rng);
        let t = random_interior_system(l, rng);
        if s.members().len() != t.members().len() {
            continue;
        }
        let isos = enumerate_isos(&s, &t);
        if let Some(iso) = isos.choose(rng) {
            return (s, t, iso.clone());
        }
    }
    let s = ClosureSystem::new(l.clone(), vec![l.top()]).expect("top alone");
    let t = InteriorSystem::new(l.clone(), vec![l.bottom()]).expect("bottom alone");
    let iso = SystemIso::new(&s, &t, &[(l.top(), l.bottom())]).expect("one point");
    (s, t, iso)
}

pub fn random_galois_pair<R: Rng + ?Sized>(l: &Arc<FiniteLattice>, rng: &mut R) -> GaloisPair {
    let (s, t, iso) = random_triple(l, rng);
    GaloisPair::from_systems(&s, &t, &iso).expect("isomorphic systems")
}

pub fn random_sup_map<R: Rng + ?Sized>(l: &Arc<FiniteLattice>, rng: &mut R) -> LatticeMap {
    random_galois_pair(l, rng).lower().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_objects_are_valid() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let l = random_lattice(&mut rng);
            assert!(l.len() <= 8);
            let f = random_sup_map(&l, &mut rng);
            assert!(f.is_sup_preserving());
            let (s, t, _) = random_triple(&l, &mut rng);
            assert_eq!(s.members().len(), t.members().len());
        }
    }
}
