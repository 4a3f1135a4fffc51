//! Finite bounded lattices.
//!
//! A [`FiniteLattice`] is either backed by dense order/join/meet tables or,
//! for direct products, by its factor lattices with coordinatewise
//! operations. Both representations expose the same API; element identity is
//! an index into the carrier.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default bound on the number of elements of a constructed product.
pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;

/// Index of an element within one lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementRef(usize);

impl ElementRef {
    pub const fn new(index: usize) -> Self {
        ElementRef(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug)]
struct Tables {
    labels: Vec<String>,
    lookup: HashMap<String, usize>,
    leq: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
}

#[derive(Clone, Debug)]
enum Repr {
    Tables(Tables),
    Product(ProductCodec),
}

/// A finite lattice with bottom and top.
#[derive(Clone, Debug)]
pub struct FiniteLattice {
    len: usize,
    bottom: usize,
    top: usize,
    repr: Repr,
}

/// Bijection between elements of a direct product and coordinate tuples.
///
/// The first factor is the most significant digit of the mixed-radix index.
#[derive(Clone, Debug)]
pub struct ProductCodec {
    factors: Vec<Arc<FiniteLattice>>,
    strides: Vec<usize>,
    len: usize,
}

impl ProductCodec {
    fn new(factors: Vec<Arc<FiniteLattice>>, limit: usize) -> Result<Self> {
        let mut size: u128 = 1;
        for factor in &factors {
            size = size.saturating_mul(factor.len() as u128);
        }
        if size > limit as u128 {
            return Err(Error::SizeLimit { size, limit });
        }
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].len();
        }
        Ok(ProductCodec {
            factors,
            strides,
            len: size as usize,
        })
    }

    pub fn factors(&self) -> &[Arc<FiniteLattice>] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn encode(&self, coords: &[ElementRef]) -> ElementRef {
        debug_assert_eq!(coords.len(), self.factors.len());
        ElementRef(
            coords
                .iter()
                .zip(&self.strides)
                .map(|(c, s)| c.0 * s)
                .sum(),
        )
    }

    pub fn decode(&self, element: ElementRef) -> Vec<ElementRef> {
        (0..self.factors.len())
            .map(|i| self.coordinate(element, i))
            .collect()
    }

    pub fn coordinate(&self, element: ElementRef, factor: usize) -> ElementRef {
        ElementRef((element.0 / self.strides[factor]) % self.factors[factor].len())
    }

    /// The tuple that is `value` at `slot` and bottom everywhere else.
    pub fn injection(&self, slot: usize, value: ElementRef) -> ElementRef {
        let mut coords: Vec<ElementRef> = self.factors.iter().map(|f| f.bottom()).collect();
        coords[slot] = value;
        self.encode(&coords)
    }

    fn combine(&self, x: usize, y: usize, op: impl Fn(&FiniteLattice, usize, usize) -> usize) -> usize {
        let mut out = 0;
        for (i, factor) in self.factors.iter().enumerate() {
            let n = factor.len();
            let s = self.strides[i];
            out += op(factor, (x / s) % n, (y / s) % n) * s;
        }
        out
    }
}

fn split_top_level(inner: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&inner[start..]);
    parts
}

impl FiniteLattice {
    /// Builds a lattice from its Hasse diagram.
    pub fn from_covers<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let lookup = build_lookup(&labels)?;
        let n = labels.len();
        if n == 0 {
            return Err(Error::NoBounds);
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let lo_i = *lookup
                .get(lo.as_ref())
                .ok_or_else(|| Error::UnknownLabel(lo.as_ref().to_owned()))?;
            let hi_i = *lookup
                .get(hi.as_ref())
                .ok_or_else(|| Error::UnknownLabel(hi.as_ref().to_owned()))?;
            if lo_i == hi_i {
                return Err(Error::Cycle(labels[lo_i].clone(), labels[hi_i].clone()));
            }
            leq[lo_i * n + hi_i] = true;
        }
        // reflexive-transitive closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Self::from_order(labels, leq)
    }

    /// Builds a lattice from a full order relation (row-major, `leq[x*n+y]`
    /// is `x <= y`) by searching least upper and greatest lower bounds.
    pub fn from_order(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NoBounds);
        }
        let lookup = build_lookup(&labels)?;
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let lub = extremal_bound(n, |z| leq[x * n + z] && leq[y * n + z], |a, b| {
                    leq[a * n + b]
                });
                let glb = extremal_bound(n, |z| leq[z * n + x] && leq[z * n + y], |a, b| {
                    leq[b * n + a]
                });
                let lub = lub.ok_or_else(|| Error::NotALattice {
                    x: labels[x].clone(),
                    y: labels[y].clone(),
                    bound: "join",
                })?;
                let glb = glb.ok_or_else(|| Error::NotALattice {
                    x: labels[x].clone(),
                    y: labels[y].clone(),
                    bound: "meet",
                })?;
                join[x * n + y] = lub as u32;
                join[y * n + x] = lub as u32;
                meet[x * n + y] = glb as u32;
                meet[y * n + x] = glb as u32;
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| leq[b * n + x]))
            .ok_or(Error::NoBounds)?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x * n + t]))
            .ok_or(Error::NoBounds)?;
        Ok(FiniteLattice {
            len: n,
            bottom,
            top,
            repr: Repr::Tables(Tables {
                labels,
                lookup,
                leq,
                join,
                meet,
            }),
        })
    }

    /// Builds a lattice from an order together with known join and meet
    /// operations. Consistency of the operations with the order is checked
    /// pairwise (`x <= y` iff `x ∨ y = y` iff `x ∧ y = x`).
    pub fn from_operations(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        join: impl Fn(usize, usize) -> usize,
        meet: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NoBounds);
        }
        let lookup = build_lookup(&labels)?;
        let mut leq_t = vec![false; n * n];
        let mut join_t = vec![0u32; n * n];
        let mut meet_t = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let le = leq(x, y);
                let j = join(x, y);
                let m = meet(x, y);
                if le != (j == y) || le != (m == x) || j >= n || m >= n {
                    return Err(Error::NotALattice {
                        x: labels[x].clone(),
                        y: labels[y].clone(),
                        bound: if le != (j == y) { "join" } else { "meet" },
                    });
                }
                leq_t[x * n + y] = le;
                join_t[x * n + y] = j as u32;
                meet_t[x * n + y] = m as u32;
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| leq_t[b * n + x]))
            .ok_or(Error::NoBounds)?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq_t[x * n + t]))
            .ok_or(Error::NoBounds)?;
        Ok(FiniteLattice {
            len: n,
            bottom,
            top,
            repr: Repr::Tables(Tables {
                labels,
                lookup,
                leq: leq_t,
                join: join_t,
                meet: meet_t,
            }),
        })
    }

    /// The n-element chain labelled `0`, `1`, ..., `n-1`.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a chain needs at least one element");
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::from_operations(labels, |x, y| x <= y, usize::max, usize::min)
            .expect("chains are lattices")
    }

    /// The Boolean lattice `2^n`, labelled by bit strings (first bit = first
    /// factor).
    pub fn boolean(n: usize) -> Self {
        let size = 1usize << n;
        let labels: Vec<String> = (0..size)
            .map(|i| {
                (0..n)
                    .map(|bit| if i >> (n - 1 - bit) & 1 == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect();
        let labels = if n == 0 { vec!["()".to_owned()] } else { labels };
        Self::from_operations(labels, |x, y| x & y == x, |x, y| x | y, |x, y| x & y)
            .expect("powersets are lattices")
    }

    /// Direct product with coordinatewise order, using the default size limit.
    pub fn product(factors: Vec<Arc<FiniteLattice>>) -> Result<(Arc<Self>, ProductCodec)> {
        Self::product_with_limit(factors, DEFAULT_MAX_ELEMENTS)
    }

    pub fn product_with_limit(
        factors: Vec<Arc<FiniteLattice>>,
        limit: usize,
    ) -> Result<(Arc<Self>, ProductCodec)> {
        if factors.is_empty() {
            return Err(Error::DomainMismatch(
                "a product needs at least one factor".into(),
            ));
        }
        let codec = ProductCodec::new(factors, limit)?;
        let bottom: Vec<ElementRef> = codec.factors.iter().map(|f| f.bottom()).collect();
        let top: Vec<ElementRef> = codec.factors.iter().map(|f| f.top()).collect();
        let lattice = FiniteLattice {
            len: codec.len,
            bottom: codec.encode(&bottom).0,
            top: codec.encode(&top).0,
            repr: Repr::Product(codec.clone()),
        };
        Ok((Arc::new(lattice), codec))
    }

    /// `factor^n`.
    pub fn power(factor: &Arc<FiniteLattice>, n: usize, limit: usize) -> Result<(Arc<Self>, ProductCodec)> {
        Self::product_with_limit(vec![factor.clone(); n], limit)
    }

    /// The order dual: same carrier and labels, reversed order.
    pub fn dual(&self) -> Self {
        match &self.repr {
            Repr::Tables(t) => {
                let n = self.len;
                let mut leq = vec![false; n * n];
                for x in 0..n {
                    for y in 0..n {
                        leq[x * n + y] = t.leq[y * n + x];
                    }
                }
                FiniteLattice {
                    len: n,
                    bottom: self.top,
                    top: self.bottom,
                    repr: Repr::Tables(Tables {
                        labels: t.labels.clone(),
                        lookup: t.lookup.clone(),
                        leq,
                        join: t.meet.clone(),
                        meet: t.join.clone(),
                    }),
                }
            }
            Repr::Product(codec) => {
                let factors = codec
                    .factors
                    .iter()
                    .map(|f| Arc::new(f.dual()))
                    .collect();
                let codec = ProductCodec {
                    factors,
                    strides: codec.strides.clone(),
                    len: codec.len,
                };
                FiniteLattice {
                    len: self.len,
                    bottom: self.top,
                    top: self.bottom,
                    repr: Repr::Product(codec),
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; lattices have at least one element.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementRef> + '_ {
        (0..self.len).map(ElementRef)
    }

    pub fn bottom(&self) -> ElementRef {
        ElementRef(self.bottom)
    }

    pub fn top(&self) -> ElementRef {
        ElementRef(self.top)
    }

    pub fn product_codec(&self) -> Option<&ProductCodec> {
        match &self.repr {
            Repr::Product(codec) => Some(codec),
            Repr::Tables(_) => None,
        }
    }

    pub fn label(&self, e: ElementRef) -> Cow<'_, str> {
        match &self.repr {
            Repr::Tables(t) => Cow::Borrowed(t.labels[e.0].as_str()),
            Repr::Product(codec) => {
                let mut out = String::from("(");
                for (i, factor) in codec.factors.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push_str(&factor.label(codec.coordinate(e, i)));
                }
                out.push(')');
                Cow::Owned(out)
            }
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements().map(|e| self.label(e).into_owned()).collect()
    }

    pub fn find(&self, label: &str) -> Option<ElementRef> {
        match &self.repr {
            Repr::Tables(t) => t.lookup.get(label).copied().map(ElementRef),
            Repr::Product(codec) => {
                let inner = label.strip_prefix('(')?.strip_suffix(')')?;
                let parts = split_top_level(inner);
                if parts.len() != codec.factors.len() {
                    return None;
                }
                let coords = parts
                    .iter()
                    .zip(&codec.factors)
                    .map(|(p, f)| f.find(p))
                    .collect::<Option<Vec<_>>>()?;
                Some(codec.encode(&coords))
            }
        }
    }

    /// Looks up a label, failing with [`Error::UnknownLabel`].
    pub fn element(&self, label: &str) -> Result<ElementRef> {
        self.find(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn elements_by_label<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<ElementRef>> {
        labels.iter().map(|l| self.element(l.as_ref())).collect()
    }

    pub fn leq(&self, x: ElementRef, y: ElementRef) -> bool {
        match &self.repr {
            Repr::Tables(t) => t.leq[x.0 * self.len + y.0],
            Repr::Product(codec) => codec.factors.iter().enumerate().all(|(i, f)| {
                f.leq(codec.coordinate(x, i), codec.coordinate(y, i))
            }),
        }
    }

    pub fn lt(&self, x: ElementRef, y: ElementRef) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn join(&self, x: ElementRef, y: ElementRef) -> ElementRef {
        match &self.repr {
            Repr::Tables(t) => ElementRef(t.join[x.0 * self.len + y.0] as usize),
            Repr::Product(codec) => ElementRef(codec.combine(x.0, y.0, |f, a, b| {
                f.join(ElementRef(a), ElementRef(b)).0
            })),
        }
    }

    pub fn meet(&self, x: ElementRef, y: ElementRef) -> ElementRef {
        match &self.repr {
            Repr::Tables(t) => ElementRef(t.meet[x.0 * self.len + y.0] as usize),
            Repr::Product(codec) => ElementRef(codec.combine(x.0, y.0, |f, a, b| {
                f.meet(ElementRef(a), ElementRef(b)).0
            })),
        }
    }

    /// Join of a finite set; the empty join is bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = ElementRef>) -> ElementRef {
        xs.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// Meet of a finite set; the empty meet is top.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = ElementRef>) -> ElementRef {
        xs.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// `(a⟩ = {x | x <= a}`.
    pub fn principal_ideal(&self, a: ElementRef) -> Vec<ElementRef> {
        self.elements().filter(|&x| self.leq(x, a)).collect()
    }

    /// `⟨a) = {x | a <= x}`.
    pub fn principal_filter(&self, a: ElementRef) -> Vec<ElementRef> {
        self.elements().filter(|&x| self.leq(a, x)).collect()
    }

    pub fn is_down_set(&self, xs: &[ElementRef]) -> bool {
        let mut member = vec![false; self.len];
        for x in xs {
            member[x.0] = true;
        }
        xs.iter()
            .all(|&x| self.elements().all(|y| !self.leq(y, x) || member[y.0]))
    }

    pub fn is_up_set(&self, xs: &[ElementRef]) -> bool {
        let mut member = vec![false; self.len];
        for x in xs {
            member[x.0] = true;
        }
        xs.iter()
            .all(|&x| self.elements().all(|y| !self.leq(x, y) || member[y.0]))
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: ElementRef) -> Vec<ElementRef> {
        let below: Vec<ElementRef> = self.elements().filter(|&y| self.lt(y, x)).collect();
        below
            .iter()
            .copied()
            .filter(|&y| !below.iter().any(|&z| self.lt(y, z)))
            .collect()
    }

    /// Cover pairs `(lower, upper)`, ordered by upper then lower index.
    pub fn covers(&self) -> Vec<(ElementRef, ElementRef)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.lower_covers(x) {
                out.push((y, x));
            }
        }
        out.sort_by_key(|&(lo, hi)| (lo, hi));
        out
    }

    /// Non-bottom elements that are not the join of the elements strictly
    /// below them (equivalently, have exactly one lower cover).
    pub fn join_irreducibles(&self) -> Vec<ElementRef> {
        self.elements()
            .filter(|&x| {
                x != self.bottom()
                    && self.join_all(self.elements().filter(|&y| self.lt(y, x))) != x
            })
            .collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<ElementRef> {
        self.elements()
            .filter(|&x| {
                x != self.top() && self.meet_all(self.elements().filter(|&y| self.lt(x, y))) != x
            })
            .collect()
    }

    /// Returns the first triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_witness(&self) -> Option<(ElementRef, ElementRef, ElementRef)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// Length of the longest chain from bottom to each element.
    pub fn ranks(&self) -> Vec<usize> {
        let mut order: Vec<ElementRef> = self.elements().collect();
        let below_count: Vec<usize> = self
            .elements()
            .map(|x| self.elements().filter(|&y| self.lt(y, x)).count())
            .collect();
        order.sort_by_key(|x| below_count[x.0]);
        let mut rank = vec![0usize; self.len];
        for &x in &order {
            rank[x.0] = self
                .elements()
                .filter(|&y| self.lt(y, x))
                .map(|y| rank[y.0] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    /// Graphviz rendering of the Hasse diagram, bottom drawn lowest.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape_dot(name));
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=circle];");
        for e in self.elements() {
            let _ = writeln!(out, "  \"{}\";", escape_dot(&self.label(e)));
        }
        for (lo, hi) in self.covers() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\";",
                escape_dot(&self.label(lo)),
                escape_dot(&self.label(hi))
            );
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn build_lookup(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut lookup = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if lookup.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(lookup)
}

/// Least element (w.r.t. `below`) of the candidates, if unique.
fn extremal_bound(
    n: usize,
    candidate: impl Fn(usize) -> bool,
    below: impl Fn(usize, usize) -> bool,
) -> Option<usize> {
    let cands: Vec<usize> = (0..n).filter(|&z| candidate(z)).collect();
    cands
        .iter()
        .copied()
        .find(|&z| cands.iter().all(|&w| below(z, w)))
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        if self.len != other.len || self.bottom != other.bottom || self.top != other.top {
            return false;
        }
        if let (Repr::Tables(a), Repr::Tables(b)) = (&self.repr, &other.repr) {
            return a.labels == b.labels && a.leq == b.leq;
        }
        self.elements().all(|x| self.label(x) == other.label(x))
            && self
                .elements()
                .all(|x| self.elements().all(|y| self.leq(x, y) == other.leq(x, y)))
    }
}

impl Eq for FiniteLattice {}

/// True when both handles denote the same lattice.
pub fn same_lattice(a: &Arc<FiniteLattice>, b: &Arc<FiniteLattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// All order isomorphisms between the sub-posets `source ⊆ a` and
/// `target ⊆ b`, as target lists parallel to `source`.
pub(crate) fn subposet_isomorphisms(
    a: &FiniteLattice,
    source: &[ElementRef],
    b: &FiniteLattice,
    target: &[ElementRef],
) -> Vec<Vec<ElementRef>> {
    if source.len() != target.len() {
        return Vec::new();
    }
    let m = source.len();
    let profile = |l: &FiniteLattice, xs: &[ElementRef], i: usize| {
        let below = xs.iter().filter(|&&y| l.leq(y, xs[i])).count();
        let above = xs.iter().filter(|&&y| l.leq(xs[i], y)).count();
        (below, above)
    };
    let src_profile: Vec<(usize, usize)> = (0..m).map(|i| profile(a, source, i)).collect();
    let tgt_profile: Vec<(usize, usize)> = (0..m).map(|i| profile(b, target, i)).collect();
    // assign in a linear extension of the source order
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (src_profile[i].0, i));

    struct Search<'s> {
        a: &'s FiniteLattice,
        b: &'s FiniteLattice,
        source: &'s [ElementRef],
        target: &'s [ElementRef],
        src_profile: Vec<(usize, usize)>,
        tgt_profile: Vec<(usize, usize)>,
        order: Vec<usize>,
        assigned: Vec<Option<usize>>,
        used: Vec<bool>,
        found: Vec<Vec<ElementRef>>,
    }

    impl Search<'_> {
        fn run(&mut self, depth: usize) {
            if depth == self.order.len() {
                let image = self
                    .assigned
                    .iter()
                    .map(|t| self.target[t.expect("complete assignment")])
                    .collect();
                self.found.push(image);
                return;
            }
            let s = self.order[depth];
            for t in 0..self.target.len() {
                if self.used[t] || self.tgt_profile[t] != self.src_profile[s] {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&s2| {
                    let t2 = self.assigned[s2].expect("assigned earlier");
                    self.a.leq(self.source[s2], self.source[s])
                        == self.b.leq(self.target[t2], self.target[t])
                        && self.a.leq(self.source[s], self.source[s2])
                            == self.b.leq(self.target[t], self.target[t2])
                });
                if !consistent {
                    continue;
                }
                self.used[t] = true;
                self.assigned[s] = Some(t);
                self.run(depth + 1);
                self.assigned[s] = None;
                self.used[t] = false;
            }
        }
    }

    let mut search = Search {
        a,
        b,
        source,
        target,
        src_profile,
        tgt_profile,
        order,
        assigned: vec![None; m],
        used: vec![false; m],
        found: Vec::new(),
    };
    search.run(0);
    search.found
}

/// All lattice isomorphisms `a -> b`, each as an image table indexed by `a`.
pub fn isomorphisms(a: &FiniteLattice, b: &FiniteLattice) -> Vec<Vec<ElementRef>> {
    let sa: Vec<ElementRef> = a.elements().collect();
    let sb: Vec<ElementRef> = b.elements().collect();
    subposet_isomorphisms(a, &sa, b, &sb)
}

pub fn is_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    !isomorphisms(a, b).is_empty()
}
