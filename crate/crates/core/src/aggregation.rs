//! n-ary sup-preserving aggregation functions built from closure/interior
//! system pairs, and their order duals.
//!
//! Each slot `i` contributes a unary sup-preserving map `f_i = φ_i ∘ c_{S_i}`
//! and the aggregation is `f(x) = ⋁_i f_i(x(i))`. The boundary condition
//! `f(1, …, 1) = 1` holds exactly when the greatest elements of the interior
//! systems join to top.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::closure::{ClosureSystem, InteriorSystem, System, SystemIso};
use crate::error::{Error, Result};
use crate::galois::GaloisPair;
use crate::lattice::{same_lattice, ElementRef, FiniteLattice, DEFAULT_MAX_ELEMENTS};
use crate::map::{LatticeMap, PreservationWitness};

/// One `(S_i, T_i, φ_i)` triple.
#[derive(Clone, Debug)]
pub struct AggSlot {
    pub closure: ClosureSystem,
    pub interior: InteriorSystem,
    pub iso: SystemIso,
}

#[derive(Clone, Debug)]
pub struct SupAggSpec {
    host: Arc<FiniteLattice>,
    slots: Vec<AggSlot>,
}

impl SupAggSpec {
    pub fn new(host: Arc<FiniteLattice>, slots: Vec<AggSlot>) -> Self {
        SupAggSpec { host, slots }
    }

    pub fn host(&self) -> &Arc<FiniteLattice> {
        &self.host
    }

    pub fn slots(&self) -> &[AggSlot] {
        &self.slots
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    /// Recovers a spec from unary sup-preserving components via their range
    /// systems.
    pub fn from_components(host: Arc<FiniteLattice>, components: &[LatticeMap]) -> Result<Self> {
        let slots = components
            .iter()
            .map(|f| {
                let (interior, closure, iso) = GaloisPair::from_lower(f.clone())?.range_systems()?;
                Ok(AggSlot {
                    closure,
                    interior,
                    iso,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SupAggSpec { host, slots })
    }
}

/// A built sup-preserving aggregation function `L^n -> L`.
#[derive(Clone, Debug)]
pub struct SupAggregation {
    spec: SupAggSpec,
    components: Vec<GaloisPair>,
}

pub fn build(spec: SupAggSpec) -> Result<SupAggregation> {
    let host = spec.host.clone();
    let mut components = Vec::with_capacity(spec.slots.len());
    for slot in &spec.slots {
        if !same_lattice(slot.closure.host(), &host) || !same_lattice(slot.interior.host(), &host) {
            return Err(Error::HostMismatch);
        }
        components.push(GaloisPair::from_systems(&slot.closure, &slot.interior, &slot.iso)?);
    }
    let top_join = host.join_all(spec.slots.iter().map(|s| s.interior.greatest()));
    if top_join != host.top() {
        return Err(Error::BoundaryViolation {
            expected: host.label(host.top()).into_owned(),
            actual: host.label(top_join).into_owned(),
        });
    }
    Ok(SupAggregation { spec, components })
}

impl SupAggregation {
    pub fn spec(&self) -> &SupAggSpec {
        &self.spec
    }

    pub fn host(&self) -> &Arc<FiniteLattice> {
        &self.spec.host
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    /// The unary maps `f_i = φ_i ∘ c_{S_i}`.
    pub fn components(&self) -> Vec<LatticeMap> {
        self.components.iter().map(|p| p.lower().clone()).collect()
    }

    pub fn component_pairs(&self) -> &[GaloisPair] {
        &self.components
    }

    /// `f(x) = ⋁_i f_i(x(i))`.
    pub fn evaluate(&self, x: &[ElementRef]) -> Result<ElementRef> {
        if x.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                actual: x.len(),
            });
        }
        let host = self.host();
        if let Some(bad) = x.iter().find(|e| e.index() >= host.len()) {
            return Err(Error::DomainMismatch(format!("{bad} is not an element of the host")));
        }
        Ok(host.join_all(
            self.components
                .iter()
                .zip(x)
                .map(|(p, &xi)| p.lower().apply(xi)),
        ))
    }

    pub fn evaluate_labels<S: AsRef<str>>(&self, x: &[S]) -> Result<String> {
        let tuple = self.host().elements_by_label(x)?;
        let v = self.evaluate(&tuple)?;
        Ok(self.host().label(v).into_owned())
    }

    pub fn full_table(&self) -> Result<AggTable> {
        self.full_table_with_limit(DEFAULT_MAX_ELEMENTS)
    }

    pub fn full_table_with_limit(&self, limit: usize) -> Result<AggTable> {
        let comps = self.components();
        let host = self.host().clone();
        AggTable::from_fn(host.clone(), self.arity(), limit, |x| {
            host.join_all(comps.iter().zip(x).map(|(f, &xi)| f.apply(xi)))
        })
    }
}

/// Why a table fails to be sup-preserving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TupleWitness {
    /// `f(0, …, 0) != 0`.
    Zero,
    /// `f(x ∨ y) != f(x) ∨ f(y)`.
    Pair(Vec<ElementRef>, Vec<ElementRef>),
}

/// Why a table fails to be an aggregation function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AggregationViolation {
    Bottom,
    Top,
    /// Raising `coordinate` of `tuple` to `raised` lowers the value.
    Monotonicity {
        tuple: Vec<ElementRef>,
        coordinate: usize,
        raised: ElementRef,
    },
}

/// The full value table of an n-ary function on a finite lattice.
///
/// Tuples are indexed in mixed radix with the first coordinate most
/// significant, so for `n = 2` the table is row-major with rows indexed by
/// the first argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggTable {
    host: Arc<FiniteLattice>,
    arity: usize,
    values: Vec<ElementRef>,
}

fn table_size(base: usize, arity: usize, limit: usize) -> Result<usize> {
    let size = (base as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
    if size > limit as u128 {
        return Err(Error::SizeLimit { size, limit });
    }
    Ok(size as usize)
}

impl AggTable {
    pub fn new(host: Arc<FiniteLattice>, arity: usize, values: Vec<ElementRef>) -> Result<Self> {
        let size = table_size(host.len(), arity, usize::MAX)?;
        if values.len() != size {
            return Err(Error::ArityMismatch {
                expected: size,
                actual: values.len(),
            });
        }
        if values.iter().any(|v| v.index() >= host.len()) {
            return Err(Error::DomainMismatch("table value outside the host".into()));
        }
        Ok(AggTable {
            host,
            arity,
            values,
        })
    }

    pub fn from_fn(
        host: Arc<FiniteLattice>,
        arity: usize,
        limit: usize,
        f: impl Fn(&[ElementRef]) -> ElementRef,
    ) -> Result<Self> {
        let size = table_size(host.len(), arity, limit)?;
        let mut values = Vec::with_capacity(size);
        let mut tuple = vec![ElementRef::new(0); arity];
        for idx in 0..size {
            decode_into(idx, host.len(), &mut tuple);
            values.push(f(&tuple));
        }
        Ok(AggTable {
            host,
            arity,
            values,
        })
    }

    pub fn host(&self) -> &Arc<FiniteLattice> {
        &self.host
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[ElementRef] {
        &self.values
    }

    fn index_of(&self, x: &[ElementRef]) -> usize {
        let n = self.host.len();
        x.iter().fold(0, |acc, e| acc * n + e.index())
    }

    pub fn get(&self, x: &[ElementRef]) -> ElementRef {
        debug_assert_eq!(x.len(), self.arity);
        self.values[self.index_of(x)]
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<ElementRef>> + '_ {
        let n = self.host.len();
        (0..self.values.len()).map(move |idx| {
            let mut t = vec![ElementRef::new(0); self.arity];
            decode_into(idx, n, &mut t);
            t
        })
    }

    fn injection(&self, slot: usize, x: ElementRef) -> Vec<ElementRef> {
        let mut t = vec![self.host.bottom(); self.arity];
        t[slot] = x;
        t
    }

    /// The unary slices `x ↦ f(0, …, x, …, 0)`.
    pub fn slices(&self) -> Vec<LatticeMap> {
        (0..self.arity)
            .map(|i| LatticeMap::from_fn(&self.host, &self.host, |x| self.get(&self.injection(i, x))))
            .collect()
    }

    /// Checks `f(0) = 0` and `f(x ∨ y) = f(x) ∨ f(y)` coordinatewise.
    ///
    /// Uses the equivalent test that every slice is sup-preserving and
    /// `f(x) = ⋁_i f(0, …, x(i), …, 0)`; a failure of the latter is turned
    /// into a concrete violating pair by splitting off one coordinate at a
    /// time.
    pub fn sup_witness(&self) -> Option<TupleWitness> {
        let l = &self.host;
        let zero = vec![l.bottom(); self.arity];
        if self.get(&zero) != l.bottom() {
            return Some(TupleWitness::Zero);
        }
        let slices = self.slices();
        for (i, s) in slices.iter().enumerate() {
            if let Some(PreservationWitness::Pair(x, y)) = s.sup_witness() {
                return Some(TupleWitness::Pair(self.injection(i, x), self.injection(i, y)));
            }
        }
        for x in self.tuples() {
            let expected = l.join_all(x.iter().zip(&slices).map(|(&xi, s)| s.apply(xi)));
            if self.get(&x) == expected {
                continue;
            }
            // x = e_k(x_k) ∨ (x restricted to k+1..n); one split must fail
            for k in 0..self.arity {
                let head = self.injection(k, x[k]);
                let mut tail = x.clone();
                for t in tail.iter_mut().take(k + 1) {
                    *t = l.bottom();
                }
                let mut whole = tail.clone();
                whole[k] = x[k];
                if self.get(&whole) != l.join(self.get(&head), self.get(&tail)) {
                    return Some(TupleWitness::Pair(head, tail));
                }
            }
            unreachable!("a failing decomposition has a failing binary split");
        }
        None
    }

    pub fn is_nary_sup_preserving(&self) -> bool {
        self.sup_witness().is_none()
    }

    pub fn aggregation_violation(&self) -> Option<AggregationViolation> {
        let l = &self.host;
        if self.get(&vec![l.bottom(); self.arity]) != l.bottom() {
            return Some(AggregationViolation::Bottom);
        }
        if self.get(&vec![l.top(); self.arity]) != l.top() {
            return Some(AggregationViolation::Top);
        }
        let upper_covers: Vec<Vec<ElementRef>> = l
            .elements()
            .map(|x| {
                l.elements()
                    .filter(|&y| l.lt(x, y) && !l.elements().any(|z| l.lt(x, z) && l.lt(z, y)))
                    .collect()
            })
            .collect();
        for x in self.tuples() {
            let fx = self.get(&x);
            for i in 0..self.arity {
                for &y in &upper_covers[x[i].index()] {
                    let mut raised = x.clone();
                    raised[i] = y;
                    if !l.leq(fx, self.get(&raised)) {
                        return Some(AggregationViolation::Monotonicity {
                            tuple: x,
                            coordinate: i,
                            raised: y,
                        });
                    }
                }
            }
        }
        None
    }

    /// Monotone in every coordinate with `f(0,…,0) = 0` and `f(1,…,1) = 1`.
    pub fn is_aggregation(&self) -> bool {
        self.aggregation_violation().is_none()
    }

    pub fn describe_witness(&self, w: &TupleWitness) -> String {
        let show = |t: &[ElementRef]| {
            let parts: Vec<String> = t.iter().map(|&e| self.host.label(e).into_owned()).collect();
            format!("({})", parts.join(","))
        };
        match w {
            TupleWitness::Zero => "f(0,…,0) is not bottom".into(),
            TupleWitness::Pair(x, y) => format!("join of {} and {} is not preserved", show(x), show(y)),
        }
    }

    /// Unary components `f_i(x) = f(0, …, x, …, 0)`; the table must be
    /// sup-preserving.
    pub fn decompose(&self) -> Result<Vec<LatticeMap>> {
        if let Some(w) = self.sup_witness() {
            return Err(Error::NotSupPreserving(self.describe_witness(&w)));
        }
        Ok(self.slices())
    }

    /// `x ↦ ⋁_i f_i(x(i))` for unary self-maps of `host`.
    pub fn from_components(host: Arc<FiniteLattice>, components: &[LatticeMap], limit: usize) -> Result<Self> {
        for f in components {
            if !same_lattice(f.domain(), &host) || !same_lattice(f.codomain(), &host) {
                return Err(Error::HostMismatch);
            }
        }
        AggTable::from_fn(host.clone(), components.len(), limit, |x| {
            host.join_all(components.iter().zip(x).map(|(f, &xi)| f.apply(xi)))
        })
    }

    /// CSV rendering. Binary tables use a matrix layout (first argument per
    /// row, second per column); other arities list one tuple per row.
    pub fn to_csv(&self) -> String {
        let l = &self.host;
        let lab = |e: ElementRef| csv_field(&l.label(e));
        let mut out = String::new();
        if self.arity == 2 {
            out.push_str("x\\y");
            for y in l.elements() {
                let _ = write!(out, ",{}", lab(y));
            }
            out.push('\n');
            for x in l.elements() {
                out.push_str(&lab(x));
                for y in l.elements() {
                    let _ = write!(out, ",{}", lab(self.get(&[x, y])));
                }
                out.push('\n');
            }
        } else {
            let header: Vec<String> = (1..=self.arity).map(|i| format!("x{i}")).collect();
            let _ = writeln!(out, "{}{}f", header.join(","), if self.arity > 0 { "," } else { "" });
            for t in self.tuples() {
                for e in &t {
                    let _ = write!(out, "{},", lab(*e));
                }
                let _ = writeln!(out, "{}", lab(self.get(&t)));
            }
        }
        out
    }

    /// Parses either layout produced by [`AggTable::to_csv`].
    pub fn from_csv(host: Arc<FiniteLattice>, text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(text.as_bytes());
        let rows: Vec<csv::StringRecord> = reader.records().collect::<Result<_, _>>()?;
        let header = rows
            .first()
            .ok_or_else(|| Error::Parse("empty table".into()))?;
        let n = host.len();
        if header.get(0).map(str::trim) == Some("x\\y") {
            let cols = header
                .iter()
                .skip(1)
                .map(|c| host.element(c.trim()))
                .collect::<Result<Vec<_>>>()?;
            let mut values = vec![None; n * n];
            for row in &rows[1..] {
                if row.len() != cols.len() + 1 {
                    return Err(Error::Parse("ragged table row".into()));
                }
                let x = host.element(row[0].trim())?;
                for (cell, &y) in row.iter().skip(1).zip(&cols) {
                    values[x.index() * n + y.index()] = Some(host.element(cell.trim())?);
                }
            }
            let values = values
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Parse("table does not cover every pair".into()))?;
            return AggTable::new(host, 2, values);
        }
        let arity = header.len().saturating_sub(1);
        let size = table_size(n, arity, usize::MAX)?;
        let mut values = vec![None; size];
        for row in &rows[1..] {
            if row.len() != arity + 1 {
                return Err(Error::Parse("ragged table row".into()));
            }
            let idx = row
                .iter()
                .take(arity)
                .map(|c| host.element(c.trim()))
                .try_fold(0usize, |acc, e| e.map(|e| acc * n + e.index()))?;
            values[idx] = Some(host.element(row[arity].trim())?);
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("table does not cover every tuple".into()))?;
        AggTable::new(host, arity, values)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn decode_into(mut idx: usize, base: usize, tuple: &mut [ElementRef]) {
    for slot in tuple.iter_mut().rev() {
        *slot = ElementRef::new(idx % base);
        idx /= base;
    }
}

/// One `(T_i, S_i, φ_i)` triple of an inf-preserving aggregation: an interior
/// system, a closure system, and an isomorphism `T_i -> S_i`.
#[derive(Clone, Debug)]
pub struct InfAggSlot {
    pub interior: InteriorSystem,
    pub closure: ClosureSystem,
    pub iso: SystemIso,
}

#[derive(Clone, Debug)]
pub struct InfAggSpec {
    host: Arc<FiniteLattice>,
    slots: Vec<InfAggSlot>,
}

impl InfAggSpec {
    pub fn new(host: Arc<FiniteLattice>, slots: Vec<InfAggSlot>) -> Self {
        InfAggSpec { host, slots }
    }

    pub fn host(&self) -> &Arc<FiniteLattice> {
        &self.host
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }
}

/// An inf-preserving aggregation `f(x) = ⋀_i φ_i(i_{T_i}(x(i)))`, held as the
/// sup-preserving aggregation of the dual lattice.
#[derive(Clone, Debug)]
pub struct InfAggregation {
    host: Arc<FiniteLattice>,
    dual: SupAggregation,
}

pub fn build_inf(spec: InfAggSpec) -> Result<InfAggregation> {
    let host = spec.host.clone();
    let dual_host = Arc::new(host.dual());
    let mut slots = Vec::with_capacity(spec.slots.len());
    for slot in spec.slots {
        if !same_lattice(slot.interior.host(), &host) || !same_lattice(slot.closure.host(), &host) {
            return Err(Error::HostMismatch);
        }
        slots.push(AggSlot {
            closure: slot.interior.into_dual(dual_host.clone()),
            interior: slot.closure.into_dual(dual_host.clone()),
            iso: slot.iso.rehost(dual_host.clone(), dual_host.clone()),
        });
    }
    let dual = build(SupAggSpec::new(dual_host, slots))?;
    Ok(InfAggregation { host, dual })
}

impl InfAggregation {
    pub fn host(&self) -> &Arc<FiniteLattice> {
        &self.host
    }

    pub fn arity(&self) -> usize {
        self.dual.arity()
    }

    /// The sup-preserving aggregation on the dual lattice.
    pub fn as_dual(&self) -> &SupAggregation {
        &self.dual
    }

    pub fn evaluate(&self, x: &[ElementRef]) -> Result<ElementRef> {
        self.dual.evaluate(x)
    }

    pub fn components(&self) -> Vec<LatticeMap> {
        self.dual
            .components()
            .into_iter()
            .map(|f| {
                f.reinterpret(self.host.clone(), self.host.clone())
                    .expect("same carrier")
            })
            .collect()
    }

    pub fn full_table(&self) -> Result<AggTable> {
        let t = self.dual.full_table()?;
        AggTable::new(self.host.clone(), t.arity, t.values)
    }
}

pub fn evaluate_inf(f: &InfAggregation, x: &[ElementRef]) -> Result<ElementRef> {
    f.evaluate(x)
}

/// Inf-preserving components `f_i(x) = f(1, …, x, …, 1)` of an
/// inf-preserving table.
pub fn decompose_inf(table: &AggTable) -> Result<Vec<LatticeMap>> {
    let host = table.host.clone();
    let dual_host = Arc::new(host.dual());
    let dual_table = AggTable::new(dual_host, table.arity, table.values.clone())?;
    let comps = dual_table.decompose().map_err(|e| match e {
        Error::NotSupPreserving(msg) => {
            Error::NotInfPreserving(msg.replace("join", "meet").replace("bottom", "top"))
        }
        other => other,
    })?;
    comps
        .into_iter()
        .map(|f| f.reinterpret(host.clone(), host.clone()))
        .collect()
}

impl AggTable {
    pub fn is_nary_inf_preserving(&self) -> bool {
        let dual_host = Arc::new(self.host.dual());
        AggTable::new(dual_host, self.arity, self.values.clone())
            .map(|t| t.is_nary_sup_preserving())
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn e(l: &FiniteLattice, s: &str) -> ElementRef {
        l.element(s).unwrap()
    }

    #[test]
    fn example_values() {
        let f = build(fixtures::example1_spec()).unwrap();
        let l = f.host().clone();
        assert_eq!(f.evaluate_labels(&["c", "d"]).unwrap(), "b");
        assert_eq!(f.evaluate_labels(&["0", "0"]).unwrap(), "0");
        assert_eq!(f.evaluate_labels(&["1", "1"]).unwrap(), "1");
        assert_eq!(f.evaluate_labels(&["a", "b"]).unwrap(), "1");
        assert_eq!(
            f.evaluate(&[l.bottom()]).unwrap_err(),
            Error::ArityMismatch {
                expected: 2,
                actual: 1
            }
        );
    }

    #[test]
    fn boundary_violation_is_reported() {
        let l = Arc::new(fixtures::l6());
        let (closure, interior, iso) = fixtures::example1_slot2(&l);
        let spec = SupAggSpec::new(
            l,
            vec![AggSlot {
                closure,
                interior,
                iso,
            }],
        );
        assert_eq!(
            build(spec).unwrap_err(),
            Error::BoundaryViolation {
                expected: "1".into(),
                actual: "b".into()
            }
        );
    }

    #[test]
    fn host_mismatch() {
        let l = Arc::new(fixtures::l6());
        let other = Arc::new(FiniteLattice::chain(2));
        let (closure, interior, iso) = fixtures::example1_slot1(&l);
        let spec = SupAggSpec::new(
            other,
            vec![AggSlot {
                closure,
                interior,
                iso,
            }],
        );
        assert_eq!(build(spec).unwrap_err(), Error::HostMismatch);
    }

    #[test]
    fn identity_aggregation() {
        let c2 = Arc::new(FiniteLattice::chain(2));
        let whole_c = ClosureSystem::whole(c2.clone());
        let whole_i = InteriorSystem::whole(c2.clone());
        let iso = SystemIso::identity(&whole_c);
        let spec = SupAggSpec::new(
            c2.clone(),
            vec![AggSlot {
                closure: whole_c,
                interior: whole_i,
                iso,
            }],
        );
        let f = build(spec).unwrap();
        let t = f.full_table().unwrap();
        assert_eq!(t.values(), &[c2.bottom(), c2.top()]);
        assert!(t.is_aggregation());
    }

    #[test]
    fn decomposition_of_example_table() {
        let f = build(fixtures::example1_spec()).unwrap();
        let l = f.host().clone();
        let t = f.full_table().unwrap();
        let comps = t.decompose().unwrap();
        assert_eq!(comps[0].apply(e(&l, "c")), e(&l, "a"));
        assert_eq!(comps[1].apply(e(&l, "0")), e(&l, "0"));
        assert_eq!(comps[1].apply(e(&l, "b")), e(&l, "b"));
        assert_eq!(comps, f.components());
        let rebuilt = AggTable::from_components(l.clone(), &comps, DEFAULT_MAX_ELEMENTS).unwrap();
        assert_eq!(rebuilt, t);
        let respec = SupAggSpec::from_components(l, &comps).unwrap();
        for (a, b) in respec.slots().iter().zip(f.spec().slots()) {
            assert_eq!(a.closure.members(), b.closure.members());
            assert_eq!(a.interior.members(), b.interior.members());
            assert_eq!(a.iso, b.iso);
        }
    }

    #[test]
    fn join_function_has_identity_components() {
        let l = Arc::new(fixtures::l6());
        let t = AggTable::from_fn(l.clone(), 2, 100, |x| l.join(x[0], x[1])).unwrap();
        let comps = t.decompose().unwrap();
        assert!(comps.iter().all(|f| *f == LatticeMap::identity(&l)));
    }

    #[test]
    fn meet_on_m3_is_not_sup_preserving() {
        let m3 = Arc::new(fixtures::m3());
        let t = AggTable::from_fn(m3.clone(), 2, 100, |x| m3.meet(x[0], x[1])).unwrap();
        assert!(t.is_aggregation());
        let w = t.sup_witness().expect("meet does not distribute on M3");
        let TupleWitness::Pair(x, y) = &w else {
            panic!("unexpected witness {w:?}")
        };
        let joined: Vec<ElementRef> = x.iter().zip(y).map(|(&a, &b)| m3.join(a, b)).collect();
        assert_ne!(t.get(&joined), m3.join(t.get(x), t.get(y)));
        assert_eq!(t.decompose().unwrap_err().kind(), "NotSupPreserving");

        // distributivity does not help: (1,0) ∨ (0,1) already breaks it
        let l = Arc::new(fixtures::l6());
        let t = AggTable::from_fn(l.clone(), 2, 100, |x| l.meet(x[0], x[1])).unwrap();
        assert!(t.is_aggregation());
        assert!(!t.is_nary_sup_preserving());
    }

    #[test]
    fn constant_top_is_not_an_aggregation() {
        let l = Arc::new(fixtures::l6());
        let t = AggTable::from_fn(l.clone(), 2, 100, |_| l.top()).unwrap();
        assert_eq!(t.aggregation_violation(), Some(AggregationViolation::Bottom));
    }

    #[test]
    fn csv_layouts_roundtrip() {
        let f = build(fixtures::example1_spec()).unwrap();
        let t = f.full_table().unwrap();
        let text = t.to_csv();
        assert!(text.starts_with("x\\y,0,a,b,c,d,1\n0,0,0,b,b,b,b\n"));
        assert_eq!(AggTable::from_csv(f.host().clone(), &text).unwrap(), t);
        let l = f.host().clone();
        let unary = AggTable::from_fn(l.clone(), 1, 100, |x| x[0]).unwrap();
        let text = unary.to_csv();
        assert!(text.starts_with("x1,f\n0,0\n"));
        assert_eq!(AggTable::from_csv(l, &text).unwrap(), unary);
    }

    #[test]
    fn inf_aggregation_is_the_dual() {
        let l = Arc::new(fixtures::l6());
        let t = AggTable::from_fn(l.clone(), 2, 100, |x| l.meet(x[0], x[1])).unwrap();
        assert!(t.is_nary_inf_preserving());
        let comps = decompose_inf(&t).unwrap();
        assert!(comps.iter().all(|f| *f == LatticeMap::identity(&l)));
        assert!(comps.iter().all(LatticeMap::is_inf_preserving));

        let join = AggTable::from_fn(l.clone(), 2, 100, |x| l.join(x[0], x[1])).unwrap();
        assert_eq!(decompose_inf(&join).unwrap_err().kind(), "NotInfPreserving");

        let whole_i = InteriorSystem::whole(l.clone());
        let whole_c = ClosureSystem::whole(l.clone());
        let iso = SystemIso::identity(&whole_i);
        let f = build_inf(InfAggSpec::new(
            l.clone(),
            vec![InfAggSlot {
                interior: whole_i,
                closure: whole_c,
                iso,
            }],
        ))
        .unwrap();
        for x in l.elements() {
            assert_eq!(evaluate_inf(&f, &[x]).unwrap(), x);
        }
    }

    #[test]
    fn inf_boundary_violation() {
        let l = Arc::new(fixtures::l6());
        let interior = InteriorSystem::from_labels(l.clone(), &["0", "a"]).unwrap();
        let closure = ClosureSystem::from_labels(l.clone(), &["b", "1"]).unwrap();
        let iso = SystemIso::from_labels(&interior, &closure, &[("0", "b"), ("a", "1")]).unwrap();
        let err = build_inf(InfAggSpec::new(
            l,
            vec![InfAggSlot {
                interior,
                closure,
                iso,
            }],
        ))
        .unwrap_err();
        assert_eq!(
            err,
            Error::BoundaryViolation {
                expected: "0".into(),
                actual: "b".into()
            }
        );
    }
}
