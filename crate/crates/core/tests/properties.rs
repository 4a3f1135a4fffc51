use std::sync::Arc;

use latgal::aggregation::AggTable;
use latgal::closure::{interior_system_of_operator, system_of_operator, System};
use latgal::decomposition::{
    birkhoff_subdirect, extend_from_sublattice, restrict_to_sublattice, SublatticeView,
};
use latgal::galois::{lower_adjoint, upper_adjoint, verify_adjunction, GaloisPair};
use latgal::lattice::{is_isomorphic, FiniteLattice};
use latgal::map::LatticeMap;
use latgal::random::{
    random_closure_system, random_galois_pair, random_interior_system, random_lattice, random_self_map,
    random_sup_map,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn setup(seed: u64) -> (Arc<FiniteLattice>, StdRng) {
    let mut rng = StdRng::seed_from_u64(seed);
    (random_lattice(&mut rng), rng)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn lattice_laws(seed in any::<u64>()) {
        let (l, _) = setup(seed);
        for x in l.elements() {
            prop_assert_eq!(l.join(x, x), x);
            prop_assert!(l.leq(l.bottom(), x) && l.leq(x, l.top()));
            for y in l.elements() {
                prop_assert_eq!(l.join(x, y), l.join(y, x));
                prop_assert_eq!(l.join(x, l.meet(x, y)), x);
                prop_assert_eq!(l.meet(x, l.join(x, y)), x);
                prop_assert_eq!(l.leq(x, y), l.join(x, y) == y);
                for z in l.elements() {
                    prop_assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)));
                }
            }
        }
    }

    #[test]
    fn dual_reverses_order(seed in any::<u64>()) {
        let (l, _) = setup(seed);
        let d = l.dual();
        for x in l.elements() {
            for y in l.elements() {
                prop_assert_eq!(l.leq(x, y), d.leq(y, x));
                prop_assert_eq!(l.join(x, y), d.meet(x, y));
            }
        }
        prop_assert_eq!(l.join_irreducibles(), d.meet_irreducibles());
    }

    #[test]
    fn systems_and_operators_correspond(seed in any::<u64>()) {
        let (l, mut rng) = setup(seed);
        let s = random_closure_system(&l, &mut rng);
        let back = system_of_operator(&s.operator()).unwrap();
        prop_assert_eq!(back.members(), s.members());
        for x in l.elements() {
            let c = s.closure_of(x);
            prop_assert!(l.leq(x, c) && s.contains(c));
        }
        let t = random_interior_system(&l, &mut rng);
        let back = interior_system_of_operator(&t.operator()).unwrap();
        prop_assert_eq!(back.members(), t.members());
    }

    #[test]
    fn adjoints_determine_each_other(seed in any::<u64>()) {
        let (l, mut rng) = setup(seed);
        let f = random_sup_map(&l, &mut rng);
        let g = upper_adjoint(&f).unwrap();
        prop_assert!(verify_adjunction(&f, &g));
        prop_assert!(g.is_inf_preserving());
        prop_assert_eq!(lower_adjoint(&g).unwrap(), f);
    }

    #[test]
    fn arbitrary_maps_split_cleanly(seed in any::<u64>()) {
        let (l, mut rng) = setup(seed);
        let f = random_self_map(&l, &mut rng);
        prop_assert_eq!(upper_adjoint(&f).is_ok(), f.is_sup_preserving());
        if let Ok(g) = upper_adjoint(&f) {
            prop_assert!(verify_adjunction(&f, &g));
        }
    }

    #[test]
    fn composition_of_pairs(seed in any::<u64>()) {
        let (l, mut rng) = setup(seed);
        let p = random_galois_pair(&l, &mut rng);
        let q = random_galois_pair(&l, &mut rng);
        let pq = p.compose(&q).unwrap();
        prop_assert!(pq.verify());
        prop_assert!(pq.satisfies_triangle_laws());
        let again = GaloisPair::from_lower(pq.lower().clone()).unwrap();
        prop_assert_eq!(again.upper(), pq.upper());
    }

    #[test]
    fn aggregation_tables_decompose(seed in any::<u64>(), arity in 1usize..4) {
        let (l, mut rng) = setup(seed);
        let comps: Vec<LatticeMap> = (0..arity).map(|_| random_sup_map(&l, &mut rng)).collect();
        let table = AggTable::from_components(l.clone(), &comps, 1 << 12).unwrap();
        prop_assert!(table.is_nary_sup_preserving());
        prop_assert_eq!(table.decompose().unwrap(), comps);
        let csv = table.to_csv();
        prop_assert_eq!(AggTable::from_csv(l.clone(), &csv).unwrap(), table);
    }

    #[test]
    fn sublattice_extension_restricts_back(seed in any::<u64>()) {
        let (l, mut rng) = setup(seed);
        let mut members = vec![l.bottom(), l.top()];
        for x in l.elements() {
            if rand::Rng::gen_bool(&mut rng, 0.4) {
                members.push(x);
            }
        }
        members.sort_unstable();
        members.dedup();
        // Close under both operations.
        loop {
            let mut grown = members.clone();
            for &x in &members {
                for &y in &members {
                    grown.push(l.join(x, y));
                    grown.push(l.meet(x, y));
                }
            }
            grown.sort_unstable();
            grown.dedup();
            if grown.len() == members.len() {
                break;
            }
            members = grown;
        }
        let view = SublatticeView::new(l.clone(), members).unwrap();
        let f = random_sup_map(view.lattice(), &mut rng);
        let big = extend_from_sublattice(&f, &view).unwrap();
        prop_assert!(big.is_sup_preserving());
        prop_assert_eq!(restrict_to_sublattice(&big, &view).unwrap(), f);
    }

    #[test]
    fn birkhoff_embeds_distributive_lattices(seed in any::<u64>()) {
        let (l, _) = setup(seed);
        match birkhoff_subdirect(&l) {
            Ok(e) => {
                prop_assert!(l.is_distributive());
                prop_assert_eq!(e.product().product_codec().unwrap().arity(), l.join_irreducibles().len());
                let view = SublatticeView::new(e.product().clone(), e.image()).unwrap();
                prop_assert!(is_isomorphic(view.lattice(), &l));
            }
            Err(err) => prop_assert!(!l.is_distributive() || l.len() == 1, "{}", err),
        }
    }
}
