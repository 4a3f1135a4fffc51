use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{same_lattice, ElementRef, FiniteLattice};

/// A map between finite lattices stored as a dense value table.
#[derive(Clone)]
pub struct LatticeMap {
    domain: Arc<FiniteLattice>,
    codomain: Arc<FiniteLattice>,
    values: Vec<ElementRef>,
}

/// Why a map fails to preserve (finite) joins or meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreservationWitness {
    /// The empty join (meet) is not preserved.
    Bound,
    /// The binary join (meet) of the pair is not preserved.
    Pair(ElementRef, ElementRef),
}

impl LatticeMap {
    pub fn new(
        domain: Arc<FiniteLattice>,
        codomain: Arc<FiniteLattice>,
        values: Vec<ElementRef>,
    ) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::DomainMismatch(format!(
                "value table has {} entries for a domain of {}",
                values.len(),
                domain.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| v.index() >= codomain.len()) {
            return Err(Error::DomainMismatch(format!(
                "value {v} lies outside the codomain"
            )));
        }
        Ok(LatticeMap {
            domain,
            codomain,
            values,
        })
    }

    pub fn from_fn(
        domain: &Arc<FiniteLattice>,
        codomain: &Arc<FiniteLattice>,
        f: impl Fn(ElementRef) -> ElementRef,
    ) -> Self {
        let values = domain.elements().map(f).collect();
        Self::new(domain.clone(), codomain.clone(), values).expect("values from the codomain")
    }

    /// Builds a map from `(argument, value)` label pairs covering the domain.
    pub fn from_labels<S: AsRef<str>>(
        domain: &Arc<FiniteLattice>,
        codomain: &Arc<FiniteLattice>,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut values = vec![None; domain.len()];
        for (x, y) in pairs {
            let x = domain.element(x.as_ref())?;
            let y = codomain.element(y.as_ref())?;
            values[x.index()] = Some(y);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::Parse(format!(
                        "no value given for `{}`",
                        domain.label(ElementRef::new(i))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain.clone(), codomain.clone(), values)
    }

    pub fn identity(l: &Arc<FiniteLattice>) -> Self {
        Self::from_fn(l, l, |x| x)
    }

    pub fn constant(domain: &Arc<FiniteLattice>, codomain: &Arc<FiniteLattice>, c: ElementRef) -> Self {
        Self::from_fn(domain, codomain, |_| c)
    }

    pub fn domain(&self) -> &Arc<FiniteLattice> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteLattice> {
        &self.codomain
    }

    pub fn values(&self) -> &[ElementRef] {
        &self.values
    }

    pub fn apply(&self, x: ElementRef) -> ElementRef {
        self.values[x.index()]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &LatticeMap) -> Result<LatticeMap> {
        if !same_lattice(&self.codomain, &next.domain) {
            return Err(Error::DomainMismatch(
                "codomain of the first map differs from the domain of the second".into(),
            ));
        }
        Ok(LatticeMap {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            values: self.values.iter().map(|&x| next.apply(x)).collect(),
        })
    }

    /// Same value table over different (index-compatible) lattices, e.g. the
    /// duals of the original domain and codomain.
    pub fn reinterpret(&self, domain: Arc<FiniteLattice>, codomain: Arc<FiniteLattice>) -> Result<Self> {
        Self::new(domain, codomain, self.values.clone())
    }

    pub fn monotonicity_witness(&self) -> Option<(ElementRef, ElementRef)> {
        let (d, c) = (&self.domain, &self.codomain);
        for x in d.elements() {
            for y in d.elements() {
                if d.leq(x, y) && !c.leq(self.apply(x), self.apply(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_witness().is_none()
    }

    /// First violation of `f(0) = 0` or `f(x ∨ y) = f(x) ∨ f(y)`.
    pub fn sup_witness(&self) -> Option<PreservationWitness> {
        let (d, c) = (&self.domain, &self.codomain);
        if self.apply(d.bottom()) != c.bottom() {
            return Some(PreservationWitness::Bound);
        }
        for x in d.elements() {
            for y in d.elements().skip(x.index() + 1) {
                if self.apply(d.join(x, y)) != c.join(self.apply(x), self.apply(y)) {
                    return Some(PreservationWitness::Pair(x, y));
                }
            }
        }
        None
    }

    /// First violation of `f(1) = 1` or `f(x ∧ y) = f(x) ∧ f(y)`.
    pub fn inf_witness(&self) -> Option<PreservationWitness> {
        let (d, c) = (&self.domain, &self.codomain);
        if self.apply(d.top()) != c.top() {
            return Some(PreservationWitness::Bound);
        }
        for x in d.elements() {
            for y in d.elements().skip(x.index() + 1) {
                if self.apply(d.meet(x, y)) != c.meet(self.apply(x), self.apply(y)) {
                    return Some(PreservationWitness::Pair(x, y));
                }
            }
        }
        None
    }

    pub fn is_sup_preserving(&self) -> bool {
        self.sup_witness().is_none()
    }

    pub fn is_inf_preserving(&self) -> bool {
        self.inf_witness().is_none()
    }

    pub(crate) fn describe_witness(&self, w: PreservationWitness, op: &str) -> String {
        match w {
            PreservationWitness::Bound => format!("the empty {op} is not preserved"),
            PreservationWitness::Pair(x, y) => format!(
                "{op} of `{}` and `{}` is not preserved",
                self.domain.label(x),
                self.domain.label(y)
            ),
        }
    }

    pub fn require_sup_preserving(&self) -> Result<()> {
        match self.sup_witness() {
            None => Ok(()),
            Some(w) => Err(Error::NotSupPreserving(self.describe_witness(w, "join"))),
        }
    }

    pub fn require_inf_preserving(&self) -> Result<()> {
        match self.inf_witness() {
            None => Ok(()),
            Some(w) => Err(Error::NotInfPreserving(self.describe_witness(w, "meet"))),
        }
    }

    /// `(argument, value)` label pairs in domain order.
    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.domain
            .elements()
            .map(|x| {
                (
                    self.domain.label(x).into_owned(),
                    self.codomain.label(self.apply(x)).into_owned(),
                )
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .label_pairs()
            .into_iter()
            .map(|(k, v)| (k, serde_json::Value::String(v)))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl PartialEq for LatticeMap {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
            && same_lattice(&self.domain, &other.domain)
            && same_lattice(&self.codomain, &other.codomain)
    }
}

impl Eq for LatticeMap {}

impl fmt::Debug for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (k, v) in self.label_pairs() {
            m.entry(&k, &v);
        }
        m.finish()
    }
}
