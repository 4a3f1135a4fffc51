//! Closure and interior systems on a finite lattice, their operators, and
//! order isomorphisms between systems.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{same_lattice, subposet_isomorphisms, ElementRef, FiniteLattice};
use crate::map::LatticeMap;

/// A subset of a host lattice viewed as a sub-poset.
pub trait System {
    fn host(&self) -> &Arc<FiniteLattice>;
    /// Members in ascending index order.
    fn members(&self) -> &[ElementRef];

    fn contains(&self, x: ElementRef) -> bool {
        self.members().binary_search(&x).is_ok()
    }

    fn least(&self) -> ElementRef {
        let host = self.host();
        self.members()
            .iter()
            .copied()
            .find(|&m| self.members().iter().all(|&y| host.leq(m, y)))
            .expect("systems have a least member")
    }

    fn greatest(&self) -> ElementRef {
        let host = self.host();
        self.members()
            .iter()
            .copied()
            .find(|&m| self.members().iter().all(|&y| host.leq(y, m)))
            .expect("systems have a greatest member")
    }

    fn member_labels(&self) -> Vec<String> {
        self.members()
            .iter()
            .map(|&m| self.host().label(m).into_owned())
            .collect()
    }
}

/// A subset closed under all meets (in particular containing top).
#[derive(Clone, Debug)]
pub struct ClosureSystem {
    host: Arc<FiniteLattice>,
    members: Vec<ElementRef>,
    closure: Vec<ElementRef>,
}

/// A subset closed under all joins (in particular containing bottom).
#[derive(Clone, Debug)]
pub struct InteriorSystem {
    host: Arc<FiniteLattice>,
    members: Vec<ElementRef>,
    interior: Vec<ElementRef>,
}

impl System for ClosureSystem {
    fn host(&self) -> &Arc<FiniteLattice> {
        &self.host
    }
    fn members(&self) -> &[ElementRef] {
        &self.members
    }
    fn contains(&self, x: ElementRef) -> bool {
        self.closure[x.index()] == x
    }
}

impl System for InteriorSystem {
    fn host(&self) -> &Arc<FiniteLattice> {
        &self.host
    }
    fn members(&self) -> &[ElementRef] {
        &self.members
    }
    fn contains(&self, x: ElementRef) -> bool {
        self.interior[x.index()] == x
    }
}

fn normalize(mut members: Vec<ElementRef>) -> Vec<ElementRef> {
    members.sort_unstable();
    members.dedup();
    members
}

impl ClosureSystem {
    /// Validates that `members` contains top and is closed under binary meets.
    pub fn new(host: Arc<FiniteLattice>, members: Vec<ElementRef>) -> Result<Self> {
        let members = normalize(members);
        let mut is_member = vec![false; host.len()];
        for &m in &members {
            is_member[m.index()] = true;
        }
        if !is_member[host.top().index()] {
            return Err(Error::MissingBound {
                bound: "top",
                label: host.label(host.top()).into_owned(),
            });
        }
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                let m = host.meet(x, y);
                if !is_member[m.index()] {
                    return Err(Error::NotClosed {
                        x: host.label(x).into_owned(),
                        y: host.label(y).into_owned(),
                        witness: host.label(m).into_owned(),
                        op: "meet",
                    });
                }
            }
        }
        Ok(Self::new_unchecked(host, members))
    }

    pub fn from_labels<S: AsRef<str>>(host: Arc<FiniteLattice>, labels: &[S]) -> Result<Self> {
        let members = host.elements_by_label(labels)?;
        Self::new(host, members)
    }

    fn new_unchecked(host: Arc<FiniteLattice>, members: Vec<ElementRef>) -> Self {
        let closure = host
            .elements()
            .map(|x| host.meet_all(members.iter().copied().filter(|&m| host.leq(x, m))))
            .collect();
        ClosureSystem {
            host,
            members,
            closure,
        }
    }

    /// The whole host lattice, whose closure operator is the identity.
    pub fn whole(host: Arc<FiniteLattice>) -> Self {
        let members = host.elements().collect();
        Self::new_unchecked(host, members)
    }

    /// Least member above `x`.
    pub fn closure_of(&self, x: ElementRef) -> ElementRef {
        self.closure[x.index()]
    }

    pub fn operator(&self) -> LatticeMap {
        LatticeMap::new(self.host.clone(), self.host.clone(), self.closure.clone())
            .expect("closure values lie in the host")
    }

    /// The system as a lattice in its own right: meets are host meets, joins
    /// are closures of host joins. Labels are the host labels.
    pub fn as_lattice(&self) -> FiniteLattice {
        let host = &self.host;
        let m = &self.members;
        let pos = |e: ElementRef| m.binary_search(&e).expect("member");
        FiniteLattice::from_operations(
            self.member_labels(),
            |i, j| host.leq(m[i], m[j]),
            |i, j| pos(self.closure_of(host.join(m[i], m[j]))),
            |i, j| pos(host.meet(m[i], m[j])),
        )
        .expect("closure systems are lattices")
    }
}

impl InteriorSystem {
    /// Validates that `members` contains bottom and is closed under binary joins.
    pub fn new(host: Arc<FiniteLattice>, members: Vec<ElementRef>) -> Result<Self> {
        let members = normalize(members);
        let mut is_member = vec![false; host.len()];
        for &m in &members {
            is_member[m.index()] = true;
        }
        if !is_member[host.bottom().index()] {
            return Err(Error::MissingBound {
                bound: "bottom",
                label: host.label(host.bottom()).into_owned(),
            });
        }
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                let j = host.join(x, y);
                if !is_member[j.index()] {
                    return Err(Error::NotClosed {
                        x: host.label(x).into_owned(),
                        y: host.label(y).into_owned(),
                        witness: host.label(j).into_owned(),
                        op: "join",
                    });
                }
            }
        }
        Ok(Self::new_unchecked(host, members))
    }

    pub fn from_labels<S: AsRef<str>>(host: Arc<FiniteLattice>, labels: &[S]) -> Result<Self> {
        let members = host.elements_by_label(labels)?;
        Self::new(host, members)
    }

    fn new_unchecked(host: Arc<FiniteLattice>, members: Vec<ElementRef>) -> Self {
        let interior = host
            .elements()
            .map(|x| host.join_all(members.iter().copied().filter(|&m| host.leq(m, x))))
            .collect();
        InteriorSystem {
            host,
            members,
            interior,
        }
    }

    pub fn whole(host: Arc<FiniteLattice>) -> Self {
        let members = host.elements().collect();
        Self::new_unchecked(host, members)
    }

    /// Greatest member below `x`.
    pub fn interior_of(&self, x: ElementRef) -> ElementRef {
        self.interior[x.index()]
    }

    pub fn operator(&self) -> LatticeMap {
        LatticeMap::new(self.host.clone(), self.host.clone(), self.interior.clone())
            .expect("interior values lie in the host")
    }

    pub fn as_lattice(&self) -> FiniteLattice {
        let host = &self.host;
        let m = &self.members;
        let pos = |e: ElementRef| m.binary_search(&e).expect("member");
        FiniteLattice::from_operations(
            self.member_labels(),
            |i, j| host.leq(m[i], m[j]),
            |i, j| pos(host.join(m[i], m[j])),
            |i, j| pos(self.interior_of(host.meet(m[i], m[j]))),
        )
        .expect("interior systems are lattices")
    }

    /// The same subset read as a closure system of the dual host.
    pub fn into_dual(self, dual_host: Arc<FiniteLattice>) -> ClosureSystem {
        ClosureSystem {
            host: dual_host,
            members: self.members,
            closure: self.interior,
        }
    }
}

impl ClosureSystem {
    /// The same subset read as an interior system of the dual host.
    pub fn into_dual(self, dual_host: Arc<FiniteLattice>) -> InteriorSystem {
        InteriorSystem {
            host: dual_host,
            members: self.members,
            interior: self.closure,
        }
    }
}

pub fn validate_closure_system(host: &Arc<FiniteLattice>, xs: &[ElementRef]) -> Result<ClosureSystem> {
    ClosureSystem::new(host.clone(), xs.to_vec())
}

pub fn validate_interior_system(host: &Arc<FiniteLattice>, xs: &[ElementRef]) -> Result<InteriorSystem> {
    InteriorSystem::new(host.clone(), xs.to_vec())
}

pub fn operator_of_system(system: &ClosureSystem) -> LatticeMap {
    system.operator()
}

fn check_self_map(op: &LatticeMap) -> Result<()> {
    if !same_lattice(op.domain(), op.codomain()) {
        return Err(Error::DomainMismatch("operator must be a self-map".into()));
    }
    Ok(())
}

/// `Fix(c)` of a closure operator, after checking monotone, extensive and
/// idempotent exhaustively.
pub fn system_of_operator(op: &LatticeMap) -> Result<ClosureSystem> {
    check_self_map(op)?;
    let l = op.domain();
    let label = |e: ElementRef| l.label(e).into_owned();
    if let Some((x, y)) = op.monotonicity_witness() {
        return Err(Error::NotClosureOperator {
            kind: "closure",
            law: "monotone",
            witness: format!("{} <= {}", label(x), label(y)),
        });
    }
    if let Some(x) = l.elements().find(|&x| !l.leq(x, op.apply(x))) {
        return Err(Error::NotClosureOperator {
            kind: "closure",
            law: "extensive",
            witness: label(x),
        });
    }
    if let Some(x) = l.elements().find(|&x| op.apply(op.apply(x)) != op.apply(x)) {
        return Err(Error::NotClosureOperator {
            kind: "closure",
            law: "idempotent",
            witness: label(x),
        });
    }
    let fixed = l.elements().filter(|&x| op.apply(x) == x).collect();
    ClosureSystem::new(l.clone(), fixed)
}

/// `Fix(i)` of an interior operator (monotone, intensive, idempotent).
pub fn interior_system_of_operator(op: &LatticeMap) -> Result<InteriorSystem> {
    check_self_map(op)?;
    let l = op.domain();
    let label = |e: ElementRef| l.label(e).into_owned();
    if let Some((x, y)) = op.monotonicity_witness() {
        return Err(Error::NotClosureOperator {
            kind: "interior",
            law: "monotone",
            witness: format!("{} <= {}", label(x), label(y)),
        });
    }
    if let Some(x) = l.elements().find(|&x| !l.leq(op.apply(x), x)) {
        return Err(Error::NotClosureOperator {
            kind: "interior",
            law: "intensive",
            witness: label(x),
        });
    }
    if let Some(x) = l.elements().find(|&x| op.apply(op.apply(x)) != op.apply(x)) {
        return Err(Error::NotClosureOperator {
            kind: "interior",
            law: "idempotent",
            witness: label(x),
        });
    }
    let fixed = l.elements().filter(|&x| op.apply(x) == x).collect();
    InteriorSystem::new(l.clone(), fixed)
}

fn binary_closure(
    host: &FiniteLattice,
    seed: ElementRef,
    generators: &[ElementRef],
    op: impl Fn(ElementRef, ElementRef) -> ElementRef,
) -> Vec<ElementRef> {
    let mut member = vec![false; host.len()];
    let mut members = vec![seed];
    member[seed.index()] = true;
    for &g in generators {
        if !member[g.index()] {
            member[g.index()] = true;
            members.push(g);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for j in 0..i {
            let z = op(x, members[j]);
            if !member[z.index()] {
                member[z.index()] = true;
                members.push(z);
            }
        }
        i += 1;
    }
    members
}

/// Smallest closure system containing `generators`.
pub fn meet_closure(host: &Arc<FiniteLattice>, generators: &[ElementRef]) -> ClosureSystem {
    let members = binary_closure(host, host.top(), generators, |x, y| host.meet(x, y));
    ClosureSystem::new_unchecked(host.clone(), normalize(members))
}

/// Smallest interior system containing `generators`.
pub fn join_closure(host: &Arc<FiniteLattice>, generators: &[ElementRef]) -> InteriorSystem {
    let members = binary_closure(host, host.bottom(), generators, |x, y| host.join(x, y));
    InteriorSystem::new_unchecked(host.clone(), normalize(members))
}

/// An order isomorphism between two systems, possibly on different hosts.
#[derive(Clone, Debug)]
pub struct SystemIso {
    source_host: Arc<FiniteLattice>,
    target_host: Arc<FiniteLattice>,
    source: Vec<ElementRef>,
    image: Vec<ElementRef>,
}

impl SystemIso {
    /// Validates `pairs` as a bijection `source -> target` that preserves and
    /// reflects order.
    pub fn new(
        source: &impl System,
        target: &impl System,
        pairs: &[(ElementRef, ElementRef)],
    ) -> Result<Self> {
        let src = source.members();
        if pairs.len() != src.len() || src.len() != target.members().len() {
            return Err(Error::NotIso(format!(
                "expected {} pairs between systems of sizes {} and {}",
                src.len(),
                src.len(),
                target.members().len()
            )));
        }
        let mut image = vec![None; src.len()];
        for &(s, t) in pairs {
            let pos = src.binary_search(&s).map_err(|_| {
                Error::NotIso(format!("`{}` is not in the source system", source.host().label(s)))
            })?;
            if !target.contains(t) {
                return Err(Error::NotIso(format!(
                    "`{}` is not in the target system",
                    target.host().label(t)
                )));
            }
            if image[pos].replace(t).is_some() {
                return Err(Error::NotIso(format!(
                    "`{}` is mapped twice",
                    source.host().label(s)
                )));
            }
        }
        let image: Vec<ElementRef> = image.into_iter().map(|t| t.expect("all mapped")).collect();
        let iso = SystemIso {
            source_host: source.host().clone(),
            target_host: target.host().clone(),
            source: src.to_vec(),
            image,
        };
        if let Some(reason) = iso.violation() {
            return Err(Error::NotIso(reason));
        }
        Ok(iso)
    }

    pub fn from_labels<S: AsRef<str>>(
        source: &impl System,
        target: &impl System,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let pairs = pairs
            .iter()
            .map(|(s, t)| {
                Ok((
                    source.host().element(s.as_ref())?,
                    target.host().element(t.as_ref())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, &pairs)
    }

    /// Identity on a system (source and target coincide).
    pub fn identity(system: &impl System) -> Self {
        SystemIso {
            source_host: system.host().clone(),
            target_host: system.host().clone(),
            source: system.members().to_vec(),
            image: system.members().to_vec(),
        }
    }

    pub fn source_host(&self) -> &Arc<FiniteLattice> {
        &self.source_host
    }

    pub fn target_host(&self) -> &Arc<FiniteLattice> {
        &self.target_host
    }

    pub fn source_members(&self) -> &[ElementRef] {
        &self.source
    }

    pub fn pairs(&self) -> impl Iterator<Item = (ElementRef, ElementRef)> + '_ {
        self.source.iter().copied().zip(self.image.iter().copied())
    }

    pub fn apply(&self, x: ElementRef) -> Option<ElementRef> {
        self.source.binary_search(&x).ok().map(|i| self.image[i])
    }

    pub fn inverse(&self) -> SystemIso {
        let mut pairs: Vec<(ElementRef, ElementRef)> =
            self.pairs().map(|(s, t)| (t, s)).collect();
        pairs.sort_unstable();
        SystemIso {
            source_host: self.target_host.clone(),
            target_host: self.source_host.clone(),
            source: pairs.iter().map(|p| p.0).collect(),
            image: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .map(|(s, t)| {
                (
                    self.source_host.label(s).into_owned(),
                    self.target_host.label(t).into_owned(),
                )
            })
            .collect()
    }

    /// Same mapping with both hosts replaced (e.g. by their duals).
    pub(crate) fn rehost(&self, source_host: Arc<FiniteLattice>, target_host: Arc<FiniteLattice>) -> Self {
        SystemIso {
            source_host,
            target_host,
            source: self.source.clone(),
            image: self.image.clone(),
        }
    }

    fn violation(&self) -> Option<String> {
        let mut seen = self.image.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.image.len() {
            return Some("mapping is not injective".into());
        }
        for (i, &s1) in self.source.iter().enumerate() {
            for (j, &s2) in self.source.iter().enumerate() {
                let before = self.source_host.leq(s1, s2);
                let after = self.target_host.leq(self.image[i], self.image[j]);
                if before != after {
                    return Some(format!(
                        "order between `{}` and `{}` is not {}",
                        self.source_host.label(s1),
                        self.source_host.label(s2),
                        if before { "preserved" } else { "reflected" }
                    ));
                }
            }
        }
        None
    }
}

impl PartialEq for SystemIso {
    fn eq(&self, other: &Self) -> bool {
        same_lattice(&self.source_host, &other.source_host)
            && same_lattice(&self.target_host, &other.target_host)
            && self.source == other.source
            && self.image == other.image
    }
}

/// True when `iso` is bijective and preserves and reflects order; an order
/// isomorphism necessarily maps least to least and greatest to greatest.
pub fn check_iso(iso: &SystemIso) -> bool {
    iso.violation().is_none()
}

/// All order isomorphisms between the sub-posets of two systems.
pub fn enumerate_isos(source: &impl System, target: &impl System) -> Vec<SystemIso> {
    subposet_isomorphisms(
        source.host(),
        source.members(),
        target.host(),
        target.members(),
    )
    .into_iter()
    .map(|image| SystemIso {
        source_host: source.host().clone(),
        target_host: target.host().clone(),
        source: source.members().to_vec(),
        image,
    })
    .collect()
}
