//! Monotone Galois connections between finite lattices.
//!
//! A pair `(f, g)` with `f: L -> M`, `g: M -> L` is a Galois connection when
//! `f(x) <= y` iff `x <= g(y)`. The lower adjoint `f` preserves all joins,
//! the upper adjoint `g` all meets, and each determines the other.

use std::sync::Arc;

use crate::closure::{ClosureSystem, InteriorSystem, System, SystemIso};
use crate::error::{Error, Result};
use crate::lattice::{same_lattice, ElementRef, FiniteLattice};
use crate::map::LatticeMap;

/// The upper adjoint of a sup-preserving map: `g(a)` is the join of the
/// inverse image of the principal ideal of `a`.
pub fn upper_adjoint(f: &LatticeMap) -> Result<LatticeMap> {
    f.require_sup_preserving()?;
    let (dom, cod) = (f.domain(), f.codomain());
    Ok(LatticeMap::from_fn(cod, dom, |a| {
        dom.join_all(dom.elements().filter(|&x| cod.leq(f.apply(x), a)))
    }))
}

/// The lower adjoint of an inf-preserving map: `f(x)` is the meet of the
/// inverse image of the principal filter of `x`.
pub fn lower_adjoint(g: &LatticeMap) -> Result<LatticeMap> {
    g.require_inf_preserving()?;
    let (dom, cod) = (g.domain(), g.codomain());
    Ok(LatticeMap::from_fn(cod, dom, |x| {
        dom.meet_all(dom.elements().filter(|&y| cod.leq(x, g.apply(y))))
    }))
}

/// First pair `(x, y)` with `f(x) <= y` not equivalent to `x <= g(y)`.
pub fn adjunction_witness(f: &LatticeMap, g: &LatticeMap) -> Option<(ElementRef, ElementRef)> {
    if !same_lattice(f.domain(), g.codomain()) || !same_lattice(f.codomain(), g.domain()) {
        let l = f.domain();
        return Some((l.bottom(), l.bottom()));
    }
    let (l, m) = (f.domain(), f.codomain());
    for x in l.elements() {
        let fx = f.apply(x);
        for y in m.elements() {
            if m.leq(fx, y) != l.leq(x, g.apply(y)) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn verify_adjunction(f: &LatticeMap, g: &LatticeMap) -> bool {
    same_lattice(f.domain(), g.codomain())
        && same_lattice(f.codomain(), g.domain())
        && adjunction_witness(f, g).is_none()
}

/// Whether `f⁻¹((a⟩)` is a down-set with a greatest element.
pub fn inverse_ideal_is_principal(f: &LatticeMap, a: ElementRef) -> bool {
    let (dom, cod) = (f.domain(), f.codomain());
    let preimage: Vec<ElementRef> = dom.elements().filter(|&x| cod.leq(f.apply(x), a)).collect();
    if !dom.is_down_set(&preimage) {
        return false;
    }
    preimage
        .iter()
        .any(|&u| preimage.iter().all(|&x| dom.leq(x, u)))
}

/// A monotone Galois connection `(lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisPair {
    lower: LatticeMap,
    upper: LatticeMap,
}

impl GaloisPair {
    /// Validates the adjunction on every pair of elements.
    pub fn new(lower: LatticeMap, upper: LatticeMap) -> Result<Self> {
        if !same_lattice(lower.domain(), upper.codomain())
            || !same_lattice(lower.codomain(), upper.domain())
        {
            return Err(Error::DomainMismatch(
                "adjoints must run in opposite directions between the same lattices".into(),
            ));
        }
        if let Some((x, y)) = adjunction_witness(&lower, &upper) {
            return Err(Error::NotAdjoint(format!(
                "adjunction fails at `{}`, `{}`",
                lower.domain().label(x),
                lower.codomain().label(y)
            )));
        }
        Ok(GaloisPair { lower, upper })
    }

    /// Pairs a sup-preserving map with its computed upper adjoint.
    pub fn from_lower(lower: LatticeMap) -> Result<Self> {
        let upper = upper_adjoint(&lower)?;
        Ok(GaloisPair { lower, upper })
    }

    pub fn from_upper(upper: LatticeMap) -> Result<Self> {
        let lower = lower_adjoint(&upper)?;
        Ok(GaloisPair { lower, upper })
    }

    pub fn identity(l: &Arc<FiniteLattice>) -> Self {
        GaloisPair {
            lower: LatticeMap::identity(l),
            upper: LatticeMap::identity(l),
        }
    }

    /// `f = φ ∘ c_S` and `g = φ⁻¹ ∘ i_T` for isomorphic closure and interior
    /// systems `S ⊆ L`, `T ⊆ M`.
    pub fn from_systems(s: &ClosureSystem, t: &InteriorSystem, iso: &SystemIso) -> Result<Self> {
        if !same_lattice(iso.source_host(), s.host())
            || !same_lattice(iso.target_host(), t.host())
            || iso.source_members() != s.members()
            || iso.pairs().any(|(_, y)| !t.contains(y))
        {
            return Err(Error::NotIso(
                "isomorphism does not run between the given systems".into(),
            ));
        }
        let inverse = iso.inverse();
        if inverse.source_members() != t.members() {
            return Err(Error::NotIso("isomorphism is not onto the interior system".into()));
        }
        let (l, m) = (s.host(), t.host());
        let lower = LatticeMap::from_fn(l, m, |x| {
            iso.apply(s.closure_of(x)).expect("closures are members")
        });
        let upper = LatticeMap::from_fn(m, l, |y| {
            inverse.apply(t.interior_of(y)).expect("interiors are members")
        });
        Ok(GaloisPair { lower, upper })
    }

    pub fn lower(&self) -> &LatticeMap {
        &self.lower
    }

    pub fn upper(&self) -> &LatticeMap {
        &self.upper
    }

    /// `self` followed by `next`: lower adjoints compose forwards, upper
    /// adjoints backwards.
    pub fn compose(&self, next: &GaloisPair) -> Result<GaloisPair> {
        Ok(GaloisPair {
            lower: self.lower.then(&next.lower)?,
            upper: next.upper.then(&self.upper)?,
        })
    }

    /// `Rng(f)` as an interior system on the codomain, `Rng(g)` as a closure
    /// system on the domain, and the restriction of `f` as an isomorphism
    /// `Rng(g) -> Rng(f)`.
    pub fn range_systems(&self) -> Result<(InteriorSystem, ClosureSystem, SystemIso)> {
        let (l, m) = (self.lower.domain(), self.lower.codomain());
        let rng_f: Vec<ElementRef> = l.elements().map(|x| self.lower.apply(x)).collect();
        let rng_g: Vec<ElementRef> = m.elements().map(|y| self.upper.apply(y)).collect();
        let t = InteriorSystem::new(m.clone(), rng_f)?;
        let s = ClosureSystem::new(l.clone(), rng_g)?;
        let pairs: Vec<(ElementRef, ElementRef)> = s
            .members()
            .iter()
            .map(|&x| (x, self.lower.apply(x)))
            .collect();
        let iso = SystemIso::new(&s, &t, &pairs)?;
        Ok((t, s, iso))
    }

    /// `f ∘ g ∘ f = f` and `g ∘ f ∘ g = g`.
    pub fn satisfies_triangle_laws(&self) -> bool {
        let (f, g) = (&self.lower, &self.upper);
        let l = f.domain();
        let m = f.codomain();
        l.elements().all(|x| f.apply(g.apply(f.apply(x))) == f.apply(x))
            && m.elements().all(|y| g.apply(f.apply(g.apply(y))) == g.apply(y))
    }

    pub fn verify(&self) -> bool {
        verify_adjunction(&self.lower, &self.upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::enumerate_isos;
    use crate::fixtures;

    fn chain_pair() -> (LatticeMap, LatticeMap) {
        let c2 = Arc::new(FiniteLattice::chain(2));
        let c3 = Arc::new(FiniteLattice::chain(3));
        let f = LatticeMap::from_labels(&c2, &c3, &[("0", "0"), ("1", "1")]).unwrap();
        let g = LatticeMap::from_labels(&c3, &c2, &[("0", "0"), ("1", "0"), ("2", "1")]).unwrap();
        (f, g)
    }

    #[test]
    fn chain_adjoints() {
        let (f, g) = chain_pair();
        let up = upper_adjoint(&f).unwrap();
        let c3 = f.codomain();
        let pairs = up.label_pairs();
        assert_eq!(
            pairs,
            [("0", "0"), ("1", "1"), ("2", "1")]
                .map(|(a, b)| (a.to_string(), b.to_string()))
        );
        // brute force: greatest x with f(x) <= a
        for a in c3.elements() {
            let best = f
                .domain()
                .elements()
                .filter(|&x| c3.leq(f.apply(x), a))
                .max()
                .unwrap();
            assert_eq!(up.apply(a), best);
        }
        let low = lower_adjoint(&g).unwrap();
        assert_eq!(
            low.label_pairs(),
            [("0", "0"), ("1", "2")].map(|(a, b)| (a.to_string(), b.to_string()))
        );
        assert!(verify_adjunction(&low, &g));
    }

    #[test]
    fn example_pair_adjoint() {
        let l = Arc::new(fixtures::l6());
        let e = |s: &str| l.element(s).unwrap();
        let (s1, t1, phi1) = fixtures::example1_slot1(&l);
        let pair = GaloisPair::from_systems(&s1, &t1, &phi1).unwrap();
        let f1 = pair.lower();
        assert_eq!(f1.apply(e("a")), e("c"));
        assert_eq!(f1.apply(e("d")), e("d"));
        assert!(f1.is_sup_preserving());
        let g1 = upper_adjoint(f1).unwrap();
        assert_eq!(g1.apply(e("a")), e("c"));
        assert_eq!(&g1, pair.upper());
        assert!(verify_adjunction(f1, &g1));
        assert!(adjunction_witness(f1, f1).is_some());
        assert_eq!(&lower_adjoint(&g1).unwrap(), f1);

        let (s2, t2, phi2) = fixtures::example1_slot2(&l);
        let f2 = GaloisPair::from_systems(&s2, &t2, &phi2).unwrap();
        assert_eq!(f2.lower().apply(e("b")), e("b"));
    }

    #[test]
    fn ranges_recover_systems() {
        let l = Arc::new(fixtures::l6());
        let (s1, t1, phi1) = fixtures::example1_slot1(&l);
        let pair = GaloisPair::from_systems(&s1, &t1, &phi1).unwrap();
        let (t, s, iso) = pair.range_systems().unwrap();
        assert_eq!(t.members(), t1.members());
        assert_eq!(s.members(), s1.members());
        assert_eq!(iso, phi1);

        let id = GaloisPair::identity(&l);
        let (t, s, iso) = id.range_systems().unwrap();
        assert_eq!(t.members().len(), 6);
        assert_eq!(s.members().len(), 6);
        assert!(iso.pairs().all(|(x, y)| x == y));

        let (f, _) = chain_pair();
        let pair = GaloisPair::from_lower(f).unwrap();
        let (t, s, _) = pair.range_systems().unwrap();
        assert_eq!(t.member_labels(), ["0", "1"]);
        assert_eq!(s.member_labels(), ["0", "1"]);
    }

    #[test]
    fn composition() {
        let (f, _) = chain_pair();
        let p = GaloisPair::from_lower(f.clone()).unwrap();
        let id3 = GaloisPair::identity(f.codomain());
        assert_eq!(p.compose(&id3).unwrap(), p);
        let c3 = f.codomain().clone();
        let c2 = f.domain().clone();
        let squash = LatticeMap::from_labels(&c3, &c2, &[("0", "0"), ("1", "0"), ("2", "1")]).unwrap();
        let back = GaloisPair::from_lower(squash).unwrap();
        let round = p.compose(&back).unwrap();
        assert!(round.verify());
        assert!(round.satisfies_triangle_laws());
        assert_eq!(back.compose(&id3).unwrap_err().kind(), "DomainMismatch");
    }

    #[test]
    fn sublattice_pairs_compose() {
        // (c_M, id_M) followed by (id_M, i_M) through M = {0, a, b, 1}
        let l = Arc::new(fixtures::l6());
        let members = l.elements_by_label(&["0", "a", "b", "1"]).unwrap();
        let s = ClosureSystem::new(l.clone(), members.clone()).unwrap();
        let t = InteriorSystem::new(l.clone(), members).unwrap();
        let m = Arc::new(s.as_lattice());
        let to_m = |x: ElementRef| m.element(&l.label(x)).unwrap();
        let to_l = |x: ElementRef| l.element(&m.label(x)).unwrap();
        let c_m = LatticeMap::from_fn(&l, &m, |x| to_m(s.closure_of(x)));
        let incl = LatticeMap::from_fn(&m, &l, to_l);
        let i_m = LatticeMap::from_fn(&l, &m, |x| to_m(t.interior_of(x)));
        let p1 = GaloisPair::new(c_m.clone(), incl.clone()).unwrap();
        let p2 = GaloisPair::new(incl, i_m.clone()).unwrap();
        let both = p1.compose(&p2).unwrap();
        assert!(both.verify());
        for x in l.elements() {
            assert_eq!(both.lower().apply(x), to_l(c_m.apply(x)));
            assert_eq!(both.upper().apply(x), to_l(i_m.apply(x)));
        }
    }

    #[test]
    fn from_systems_rejects_foreign_iso() {
        let l = Arc::new(fixtures::l6());
        let (s1, t1, _) = fixtures::example1_slot1(&l);
        let (s2, t2, _) = fixtures::example1_slot2(&l);
        let wrong = enumerate_isos(&s2, &t2).remove(0);
        assert_eq!(
            GaloisPair::from_systems(&s1, &t1, &wrong).unwrap_err().kind(),
            "NotIso"
        );
    }

    #[test]
    fn degenerate_one_point_systems() {
        let l = Arc::new(fixtures::l6());
        let s = ClosureSystem::new(l.clone(), vec![l.top()]).unwrap();
        let t = InteriorSystem::new(l.clone(), vec![l.bottom()]).unwrap();
        let iso = enumerate_isos(&s, &t).remove(0);
        let pair = GaloisPair::from_systems(&s, &t, &iso).unwrap();
        assert!(pair.lower().values().iter().all(|&v| v == l.bottom()));
        assert!(pair.verify());
    }
}
