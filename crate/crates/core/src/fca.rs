//! Formal concept analysis over many-valued contexts.
//!
//! A family assigns to each table token `v` a sup-preserving self-map `f_v`
//! of a lattice `L` (with upper adjoint `g_v`). The concept-forming
//! operators between `L^B` and `L^A` are
//!
//! ```text
//! F(x)(a) = ⋁_b f_{R(b,a)}(x(b))
//! G(y)(b) = ⋀_a g_{R(b,a)}(y(a))
//! ```
//!
//! and the concepts are their fixed points `(x, y)` with `F(x) = y`,
//! `G(y) = x`.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;
use std::sync::Arc;

use crate::aggregation::AggTable;
use crate::closure::{ClosureSystem, InteriorSystem};
use crate::error::{Error, Result};
use crate::galois::{upper_adjoint, verify_adjunction, GaloisPair};
use crate::lattice::{escape_dot, ElementRef, FiniteLattice, ProductCodec};
use crate::map::LatticeMap;

pub const DEFAULT_MAX_CONCEPTS: usize = 100_000;

/// Object × attribute table of tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManyValuedContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    alphabet: Vec<String>,
    cells: Vec<usize>,
}

fn check_unique(labels: &[String], what: &str) -> Result<()> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Parse(format!("duplicate {what} label `{l}`")));
        }
    }
    Ok(())
}

impl ManyValuedContext {
    /// Builds a context from rows of tokens. Without a declared alphabet the
    /// alphabet is the set of tokens in order of first appearance.
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<Vec<String>>,
        alphabet: Option<Vec<String>>,
    ) -> Result<Self> {
        check_unique(&objects, "object")?;
        check_unique(&attributes, "attribute")?;
        if objects.is_empty() || attributes.is_empty() {
            return Err(Error::Parse("context needs at least one object and one attribute".into()));
        }
        if rows.len() != objects.len() {
            return Err(Error::Parse(format!(
                "{} rows for {} objects",
                rows.len(),
                objects.len()
            )));
        }
        let declared = alphabet.is_some();
        let mut alphabet = alphabet.unwrap_or_default();
        check_unique(&alphabet, "alphabet")?;
        let mut index: HashMap<String, usize> =
            alphabet.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut cells = Vec::with_capacity(objects.len() * attributes.len());
        for (object, row) in objects.iter().zip(rows) {
            if row.len() > attributes.len() {
                return Err(Error::Parse(format!("row `{object}` has {} cells", row.len())));
            }
            for (j, attribute) in attributes.iter().enumerate() {
                let token = row.get(j).map(|t| t.trim()).unwrap_or("");
                if token.is_empty() {
                    return Err(Error::MissingCell {
                        object: object.clone(),
                        attribute: attribute.clone(),
                    });
                }
                let id = match index.get(token) {
                    Some(&id) => id,
                    None if declared => {
                        return Err(Error::Parse(format!(
                            "token `{token}` is not in the declared alphabet"
                        )))
                    }
                    None => {
                        alphabet.push(token.to_string());
                        index.insert(token.to_string(), alphabet.len() - 1);
                        alphabet.len() - 1
                    }
                };
                cells.push(id);
            }
        }
        Ok(ManyValuedContext {
            objects,
            attributes,
            alphabet,
            cells,
        })
    }

    /// Parses CSV text: a header of attribute labels with a blank first
    /// cell, then one row per object.
    pub fn from_csv(text: &str, alphabet: Option<Vec<String>>) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut records = reader.records();
        let header = records
            .next()
            .ok_or_else(|| Error::Parse("empty context file".into()))??;
        if header.get(0) != Some("") {
            return Err(Error::Parse("first header cell must be blank".into()));
        }
        let attributes: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut objects = Vec::new();
        let mut rows = Vec::new();
        for record in records {
            let record = record?;
            if record.iter().all(str::is_empty) {
                continue;
            }
            if record.len() != header.len() {
                return Err(Error::Parse(format!(
                    "ragged row `{}`: {} fields, expected {}",
                    &record[0],
                    record.len(),
                    header.len()
                )));
            }
            objects.push(record[0].to_string());
            rows.push(record.iter().skip(1).map(str::to_string).collect());
        }
        Self::new(objects, attributes, rows, alphabet)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn token(&self, object: usize, attribute: usize) -> &str {
        &self.alphabet[self.cells[object * self.attributes.len() + attribute]]
    }

    pub fn is_binary(&self) -> bool {
        self.cells
            .iter()
            .all(|&t| matches!(self.alphabet[t].as_str(), "0" | "1"))
    }
}

pub fn load_context(path: impl AsRef<Path>) -> Result<ManyValuedContext> {
    ManyValuedContext::from_csv(&std::fs::read_to_string(path)?, None)
}

pub fn load_context_with_alphabet(path: impl AsRef<Path>, alphabet: Vec<String>) -> Result<ManyValuedContext> {
    ManyValuedContext::from_csv(&std::fs::read_to_string(path)?, Some(alphabet))
}

/// Token-indexed sup-preserving self-maps of one lattice, with adjoints.
#[derive(Clone, Debug)]
pub struct ValueMapFamily {
    lattice: Arc<FiniteLattice>,
    tokens: Vec<String>,
    lower: Vec<LatticeMap>,
    upper: Vec<LatticeMap>,
}

impl ValueMapFamily {
    pub fn new(lattice: Arc<FiniteLattice>, maps: Vec<(String, LatticeMap)>) -> Result<Self> {
        let mut tokens = Vec::new();
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for (token, f) in maps {
            if tokens.contains(&token) {
                return Err(Error::DuplicateLabel(token));
            }
            if !crate::lattice::same_lattice(f.domain(), &lattice)
                || !crate::lattice::same_lattice(f.codomain(), &lattice)
            {
                return Err(Error::DomainMismatch(format!("map for `{token}` is not a self-map of the family lattice")));
            }
            let g = upper_adjoint(&f)
                .map_err(|e| Error::NotSupPreserving(format!("map for `{token}`: {e}")))?;
            debug_assert!(verify_adjunction(&f, &g));
            tokens.push(token);
            lower.push(f);
            upper.push(g);
        }
        Ok(ValueMapFamily {
            lattice,
            tokens,
            lower,
            upper,
        })
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn position(&self, token: &str) -> Option<usize> {
        self.tokens.iter().position(|t| t == token)
    }

    pub fn lower(&self, token: &str) -> Option<&LatticeMap> {
        self.position(token).map(|i| &self.lower[i])
    }

    pub fn upper(&self, token: &str) -> Option<&LatticeMap> {
        self.position(token).map(|i| &self.upper[i])
    }
}

/// Gödel conjunction on `chain(k)`: tokens are the chain labels,
/// `f_a(x) = min(x, a)` and `g_a(y) = top` if `a ≤ y`, else `y`.
pub fn residuated_chain_family(k: usize) -> Result<ValueMapFamily> {
    if k < 2 {
        return Err(Error::Parse(format!("chain family needs k >= 2, got {k}")));
    }
    let l = Arc::new(FiniteLattice::chain(k));
    let maps = l
        .elements()
        .map(|a| (l.label(a).into_owned(), LatticeMap::from_fn(&l, &l, |x| l.meet(x, a))))
        .collect();
    ValueMapFamily::new(l, maps)
}

/// Residuum of the Gödel conjunction on a chain.
pub fn godel_residuum(l: &FiniteLattice, a: ElementRef, y: ElementRef) -> ElementRef {
    if l.leq(a, y) {
        l.top()
    } else {
        y
    }
}

/// A vector of lattice values indexed by objects or attributes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LVector(pub Vec<ElementRef>);

impl LVector {
    pub fn constant(len: usize, value: ElementRef) -> Self {
        LVector(vec![value; len])
    }

    pub fn values(&self) -> &[ElementRef] {
        &self.0
    }

    pub fn leq(&self, l: &FiniteLattice, other: &LVector) -> bool {
        self.0.iter().zip(&other.0).all(|(&x, &y)| l.leq(x, y))
    }

    pub fn meet(&self, l: &FiniteLattice, other: &LVector) -> LVector {
        LVector(self.0.iter().zip(&other.0).map(|(&x, &y)| l.meet(x, y)).collect())
    }

    pub fn to_json(&self, l: &FiniteLattice, names: &[String]) -> serde_json::Value {
        serde_json::Value::Object(
            names
                .iter()
                .zip(&self.0)
                .map(|(n, &v)| (n.clone(), serde_json::Value::String(l.label(v).into_owned())))
                .collect(),
        )
    }

    fn display(&self, l: &FiniteLattice) -> String {
        let parts: Vec<_> = self.0.iter().map(|&v| l.label(v).into_owned()).collect();
        format!("({})", parts.join(","))
    }
}

/// A context with every cell resolved to its family map.
#[derive(Clone, Debug)]
pub struct ConceptOperators<'a> {
    ctx: &'a ManyValuedContext,
    fam: &'a ValueMapFamily,
    cells: Vec<usize>,
}

impl<'a> ConceptOperators<'a> {
    pub fn new(ctx: &'a ManyValuedContext, fam: &'a ValueMapFamily) -> Result<Self> {
        let lookup: Vec<Option<usize>> = ctx.alphabet.iter().map(|t| fam.position(t)).collect();
        let mut cells = Vec::with_capacity(ctx.cells.len());
        for &t in &ctx.cells {
            cells.push(lookup[t].ok_or_else(|| Error::UnmappedToken(ctx.alphabet[t].clone()))?);
        }
        Ok(ConceptOperators { ctx, fam, cells })
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.fam.lattice
    }

    pub fn context(&self) -> &ManyValuedContext {
        self.ctx
    }

    fn cell(&self, b: usize, a: usize) -> usize {
        self.cells[b * self.ctx.attributes.len() + a]
    }

    pub fn extent_top(&self) -> LVector {
        LVector::constant(self.ctx.objects.len(), self.lattice().top())
    }

    pub fn intent_top(&self) -> LVector {
        LVector::constant(self.ctx.attributes.len(), self.lattice().top())
    }

    pub fn apply_f(&self, x: &LVector) -> LVector {
        let l = self.lattice();
        LVector(
            (0..self.ctx.attributes.len())
                .map(|a| {
                    l.join_all(x.0.iter().enumerate().map(|(b, &xb)| self.fam.lower[self.cell(b, a)].apply(xb)))
                })
                .collect(),
        )
    }

    pub fn apply_g(&self, y: &LVector) -> LVector {
        let l = self.lattice();
        LVector(
            (0..self.ctx.objects.len())
                .map(|b| {
                    l.meet_all(y.0.iter().enumerate().map(|(a, &ya)| self.fam.upper[self.cell(b, a)].apply(ya)))
                })
                .collect(),
        )
    }

    /// The map `x ↦ F(x)(a)` as the family of its unary components.
    pub fn column(&self, a: usize) -> ColumnAggregation {
        ColumnAggregation {
            lattice: self.lattice().clone(),
            attribute: self.ctx.attributes[a].clone(),
            components: (0..self.ctx.objects.len())
                .map(|b| self.fam.lower[self.cell(b, a)].clone())
                .collect(),
        }
    }

    /// `(F, G)` as a Galois pair between the product lattices `L^B` and
    /// `L^A`; fails with `SizeLimit` when either product is too large.
    pub fn galois_pair(&self, limit: usize) -> Result<(GaloisPair, ProductCodec, ProductCodec)> {
        let l = self.lattice();
        let (lb, cb) = FiniteLattice::power(l, self.ctx.objects.len(), limit)?;
        let (la, ca) = FiniteLattice::power(l, self.ctx.attributes.len(), limit)?;
        let f = LatticeMap::from_fn(&lb, &la, |x| ca.encode(&self.apply_f(&LVector(cb.decode(x))).0));
        let g = LatticeMap::from_fn(&la, &lb, |y| cb.encode(&self.apply_g(&LVector(ca.decode(y))).0));
        Ok((GaloisPair::new(f, g)?, cb, ca))
    }
}

pub fn operator_f(ctx: &ManyValuedContext, fam: &ValueMapFamily, x: &LVector) -> Result<LVector> {
    check_len(x, ctx.objects.len())?;
    Ok(ConceptOperators::new(ctx, fam)?.apply_f(x))
}

pub fn operator_g(ctx: &ManyValuedContext, fam: &ValueMapFamily, y: &LVector) -> Result<LVector> {
    check_len(y, ctx.attributes.len())?;
    Ok(ConceptOperators::new(ctx, fam)?.apply_g(y))
}

fn check_len(v: &LVector, expected: usize) -> Result<()> {
    if v.0.len() != expected {
        return Err(Error::ArityMismatch {
            expected,
            actual: v.0.len(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalConcept {
    pub extent: LVector,
    pub intent: LVector,
}

/// All concepts, found as the meet-closure of the extents `G(y_{a,v})`
/// where `y_{a,v}` is `v` at `a` and top elsewhere. Sorted by extent.
pub fn concepts(ctx: &ManyValuedContext, fam: &ValueMapFamily) -> Result<Vec<FormalConcept>> {
    concepts_with_limit(ctx, fam, DEFAULT_MAX_CONCEPTS)
}

pub fn concepts_with_limit(
    ctx: &ManyValuedContext,
    fam: &ValueMapFamily,
    max_concepts: usize,
) -> Result<Vec<FormalConcept>> {
    let ops = ConceptOperators::new(ctx, fam)?;
    let l = ops.lattice();
    let top = ops.intent_top();
    let mut generators = BTreeSet::new();
    for a in 0..ctx.attributes.len() {
        for v in l.elements() {
            let mut y = top.clone();
            y.0[a] = v;
            generators.insert(ops.apply_g(&y));
        }
    }
    let generators: Vec<LVector> = generators.into_iter().collect();
    let start = ops.apply_g(&top);
    let mut extents = BTreeSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(x) = queue.pop() {
        for g in &generators {
            let m = x.meet(l, g);
            if !extents.contains(&m) {
                if extents.len() == max_concepts {
                    return Err(Error::SizeLimit {
                        size: extents.len() as u128 + 1,
                        limit: max_concepts,
                    });
                }
                extents.insert(m.clone());
                queue.push(m);
            }
        }
    }
    Ok(extents
        .into_iter()
        .map(|extent| FormalConcept {
            intent: ops.apply_f(&extent),
            extent,
        })
        .collect())
}

/// Reference enumeration: every `x ∈ L^B` with `G(F(x)) = x`.
pub fn brute_force_concepts(ctx: &ManyValuedContext, fam: &ValueMapFamily, limit: usize) -> Result<Vec<FormalConcept>> {
    let ops = ConceptOperators::new(ctx, fam)?;
    let n = ops.lattice().len();
    let size = (n as u128).checked_pow(ctx.objects.len() as u32).unwrap_or(u128::MAX);
    if size > limit as u128 {
        return Err(Error::SizeLimit { size, limit });
    }
    let mut out = Vec::new();
    let mut x = LVector::constant(ctx.objects.len(), ElementRef::new(0));
    loop {
        let y = ops.apply_f(&x);
        if ops.apply_g(&y) == x {
            out.push(FormalConcept {
                extent: x.clone(),
                intent: y,
            });
        }
        let mut i = x.0.len();
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            let next = x.0[i].index() + 1;
            if next < n {
                x.0[i] = ElementRef::new(next);
                break;
            }
            x.0[i] = ElementRef::new(0);
        }
    }
}

/// Extents and intents as a closure system on `L^B` and an interior system
/// on `L^A`.
pub fn range_systems(
    ctx: &ManyValuedContext,
    fam: &ValueMapFamily,
    concepts: &[FormalConcept],
    limit: usize,
) -> Result<(ClosureSystem, InteriorSystem)> {
    let l = fam.lattice();
    let (lb, cb) = FiniteLattice::power(l, ctx.objects.len(), limit)?;
    let (la, ca) = FiniteLattice::power(l, ctx.attributes.len(), limit)?;
    let extents = concepts.iter().map(|c| cb.encode(&c.extent.0)).collect();
    let intents = concepts.iter().map(|c| ca.encode(&c.intent.0)).collect();
    Ok((ClosureSystem::new(lb, extents)?, InteriorSystem::new(la, intents)?))
}

pub fn concepts_to_json(ctx: &ManyValuedContext, l: &FiniteLattice, concepts: &[FormalConcept]) -> serde_json::Value {
    serde_json::Value::Array(
        concepts
            .iter()
            .map(|c| {
                serde_json::json!({
                    "extent": c.extent.to_json(l, &ctx.objects),
                    "intent": c.intent.to_json(l, &ctx.attributes),
                })
            })
            .collect(),
    )
}

/// Concepts ordered by extent, with the induced lattice.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    concepts: Vec<FormalConcept>,
    order: Arc<FiniteLattice>,
}

pub fn concept_lattice(l: &FiniteLattice, concepts: Vec<FormalConcept>) -> Result<ConceptLattice> {
    if concepts.is_empty() {
        return Err(Error::NotComplete("no concepts".into()));
    }
    let n = concepts.len();
    let index: HashMap<&LVector, usize> = concepts.iter().enumerate().map(|(i, c)| (&c.extent, i)).collect();
    if index.len() != n {
        return Err(Error::NotComplete("duplicate extents".into()));
    }
    for (i, c) in concepts.iter().enumerate() {
        for d in &concepts[i + 1..] {
            let m = c.extent.meet(l, &d.extent);
            if !index.contains_key(&m) {
                return Err(Error::NotComplete(format!(
                    "meet {} of two extents is missing",
                    m.display(l)
                )));
            }
        }
    }
    let mut leq = vec![false; n * n];
    for (i, c) in concepts.iter().enumerate() {
        for (j, d) in concepts.iter().enumerate() {
            let by_extent = c.extent.leq(l, &d.extent);
            if by_extent != c.intent.leq(l, &d.intent) {
                return Err(Error::NotIso(format!(
                    "extent and intent orders disagree on {} and {}",
                    c.extent.display(l),
                    d.extent.display(l)
                )));
            }
            leq[i * n + j] = by_extent;
        }
    }
    let labels = concepts
        .iter()
        .map(|c| format!("{} {}", c.extent.display(l), c.intent.display(l)))
        .collect();
    let order = FiniteLattice::from_order(labels, leq).map_err(|e| Error::NotComplete(e.to_string()))?;
    Ok(ConceptLattice {
        concepts,
        order: Arc::new(order),
    })
}

impl ConceptLattice {
    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// Hasse covers as concept indices, lower first.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.order.covers().into_iter().map(|(x, y)| (x.index(), y.index())).collect()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", escape_dot(name));
        for i in 0..self.concepts.len() {
            let label = self.order.label(ElementRef::new(i));
            out.push_str(&format!("  c{i} [label=\"{}\"];\n", escape_dot(&label)));
        }
        for (x, y) in self.covers() {
            out.push_str(&format!("  c{x} -> c{y};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// A classical concept of a binary context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrispConcept {
    pub extent: Vec<String>,
    pub intent: Vec<String>,
}

pub const MAX_CRISP_ATTRIBUTES: usize = 20;

/// Antitone concepts `(X, Y)` with `X′ = Y`, `Y′ = X`, found by closing every
/// attribute subset. Sorted by extent size, then by attribute mask.
pub fn crisp_concepts(ctx: &ManyValuedContext) -> Result<Vec<CrispConcept>> {
    if let Some(&t) = ctx.cells.iter().find(|&&t| !matches!(ctx.alphabet[t].as_str(), "0" | "1")) {
        return Err(Error::NotBinary(ctx.alphabet[t].clone()));
    }
    let na = ctx.attributes.len();
    if na > MAX_CRISP_ATTRIBUTES {
        return Err(Error::SizeLimit {
            size: 1u128 << na,
            limit: 1 << MAX_CRISP_ATTRIBUTES,
        });
    }
    let rows: Vec<u32> = (0..ctx.objects.len())
        .map(|b| {
            (0..na)
                .filter(|&a| ctx.token(b, a) == "1")
                .fold(0u32, |m, a| m | (1 << a))
        })
        .collect();
    let full = if na == 32 { u32::MAX } else { (1u32 << na) - 1 };
    let mut found = BTreeSet::new();
    for y in 0..=full {
        let extent: Vec<usize> = (0..rows.len()).filter(|&b| rows[b] & y == y).collect();
        let intent = extent.iter().fold(full, |m, &b| m & rows[b]);
        found.insert((extent.len(), intent, extent));
    }
    Ok(found
        .into_iter()
        .map(|(_, intent, extent)| CrispConcept {
            extent: extent.iter().map(|&b| ctx.objects[b].clone()).collect(),
            intent: (0..na)
                .filter(|&a| intent & (1 << a) != 0)
                .map(|a| ctx.attributes[a].clone())
                .collect(),
        })
        .collect())
}

/// `F(top) = top` and `G(top) = top`.
pub fn top_concept_check(ctx: &ManyValuedContext, fam: &ValueMapFamily) -> Result<bool> {
    let ops = ConceptOperators::new(ctx, fam)?;
    Ok(ops.apply_f(&ops.extent_top()) == ops.intent_top() && ops.apply_g(&ops.intent_top()) == ops.extent_top())
}

/// The map `x ↦ F(x)(a)` for one attribute `a`.
#[derive(Clone, Debug)]
pub struct ColumnAggregation {
    lattice: Arc<FiniteLattice>,
    attribute: String,
    components: Vec<LatticeMap>,
}

impl ColumnAggregation {
    pub fn attribute(&self) -> &str {
        &self.attribute
    }

    pub fn components(&self) -> &[LatticeMap] {
        &self.components
    }

    pub fn evaluate(&self, x: &LVector) -> ElementRef {
        self.lattice
            .join_all(self.components.iter().zip(&x.0).map(|(f, &v)| f.apply(v)))
    }

    /// Whether the components' tops join to the top of `L`.
    pub fn meets_boundary(&self) -> bool {
        self.evaluate(&LVector::constant(self.components.len(), self.lattice.top())) == self.lattice.top()
    }

    pub fn table(&self, limit: usize) -> Result<AggTable> {
        AggTable::from_components(self.lattice.clone(), &self.components, limit)
    }
}

pub fn column_aggregations(ctx: &ManyValuedContext, fam: &ValueMapFamily) -> Result<Vec<ColumnAggregation>> {
    let ops = ConceptOperators::new(ctx, fam)?;
    Ok((0..ctx.attributes.len()).map(|a| ops.column(a)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    /// Over the 2-chain: `1` is the identity, `0` the constant bottom.
    fn monotone_family() -> ValueMapFamily {
        let c2 = Arc::new(FiniteLattice::chain(2));
        let maps = vec![
            ("1".to_string(), LatticeMap::identity(&c2)),
            ("0".to_string(), LatticeMap::constant(&c2, &c2, c2.bottom())),
        ];
        ValueMapFamily::new(c2, maps).unwrap()
    }

    fn v(xs: &[usize]) -> LVector {
        LVector(xs.iter().map(|&i| ElementRef::new(i)).collect())
    }

    #[test]
    fn csv_loading() {
        let ctx = ManyValuedContext::from_csv(",p,q\nx,0,1\ny,1,0\n", None).unwrap();
        assert_eq!(ctx.objects(), ["x", "y"]);
        assert_eq!(ctx.attributes(), ["p", "q"]);
        assert!(ctx.is_binary());
        assert_eq!(ctx.token(0, 1), "1");

        let ctx = ManyValuedContext::from_csv(",p,q\nx,lo,mid\ny,hi,lo\nz,mid,mid\n", None).unwrap();
        assert_eq!(ctx.alphabet(), ["lo", "mid", "hi"]);
        assert!(!ctx.is_binary());

        let dup = ManyValuedContext::from_csv(",p\nx,0\nx,1\n", None).unwrap_err();
        assert_eq!(dup.kind(), "ParseError");
        let ragged = ManyValuedContext::from_csv(",p,q\nx,0\n", None).unwrap_err();
        assert_eq!(ragged.kind(), "ParseError");
        let blank = ManyValuedContext::from_csv(",p,q\nx,0,\n", None).unwrap_err();
        assert_eq!(
            blank,
            Error::MissingCell {
                object: "x".into(),
                attribute: "q".into()
            }
        );
        let header = ManyValuedContext::from_csv("o,p\nx,0\n", None).unwrap_err();
        assert_eq!(header.kind(), "ParseError");

        let declared = ManyValuedContext::from_csv(",p\nx,0\n", Some(strings(&["0", "1", "2"]))).unwrap();
        assert_eq!(declared.alphabet().len(), 3);
        let outside = ManyValuedContext::from_csv(",p\nx,5\n", Some(strings(&["0", "1"])));
        assert_eq!(outside.unwrap_err().kind(), "ParseError");
    }

    #[test]
    fn godel_family() {
        let fam = residuated_chain_family(3).unwrap();
        let l = fam.lattice().clone();
        let e = |i| ElementRef::new(i);
        assert_eq!(*fam.lower("2").unwrap(), LatticeMap::identity(&l));
        assert_eq!(*fam.upper("2").unwrap(), LatticeMap::identity(&l));
        assert_eq!(*fam.lower("0").unwrap(), LatticeMap::constant(&l, &l, l.bottom()));
        assert_eq!(*fam.upper("0").unwrap(), LatticeMap::constant(&l, &l, l.top()));
        assert_eq!(fam.lower("1").unwrap().apply(e(2)), e(1));
        assert_eq!(fam.upper("1").unwrap().apply(e(1)), e(2));
        for a in l.elements() {
            let g = fam.upper(&l.label(a)).unwrap();
            for y in l.elements() {
                assert_eq!(g.apply(y), godel_residuum(&l, a, y));
            }
        }
        assert!(residuated_chain_family(1).is_err());
    }

    #[test]
    fn operators_on_small_contexts() {
        let fam = monotone_family();
        let ctx = ManyValuedContext::from_csv(",p,q\nx,1,0\ny,1,1\n", None).unwrap();
        assert_eq!(operator_f(&ctx, &fam, &v(&[0, 0])).unwrap(), v(&[0, 0]));
        // F(x)(a) is the OR of x(b) over objects related to a.
        assert_eq!(operator_f(&ctx, &fam, &v(&[1, 0])).unwrap(), v(&[1, 0]));
        assert_eq!(operator_f(&ctx, &fam, &v(&[0, 1])).unwrap(), v(&[1, 1]));
        assert_eq!(operator_g(&ctx, &fam, &v(&[1, 0])).unwrap(), v(&[1, 0]));

        let unmapped = ManyValuedContext::from_csv(",p\nx,7\n", None).unwrap();
        assert_eq!(
            operator_f(&unmapped, &fam, &v(&[0])).unwrap_err(),
            Error::UnmappedToken("7".into())
        );

        let (pair, _, _) = ConceptOperators::new(&ctx, &fam).unwrap().galois_pair(1 << 10).unwrap();
        assert!(pair.lower().is_sup_preserving());
        assert!(pair.upper().is_inf_preserving());
    }

    #[test]
    fn one_by_one_context_reduces_to_the_map() {
        let l = Arc::new(crate::fixtures::l6());
        let f = LatticeMap::from_labels(&l, &l, &[("0", "0"), ("a", "c"), ("b", "c"), ("c", "a"), ("d", "d"), ("1", "d")])
            .unwrap();
        let g = upper_adjoint(&f).unwrap();
        let fam = ValueMapFamily::new(l.clone(), vec![("v".into(), f.clone())]).unwrap();
        let ctx = ManyValuedContext::from_csv(",a\nb,v\n", None).unwrap();
        for x in l.elements() {
            assert_eq!(operator_f(&ctx, &fam, &LVector(vec![x])).unwrap().0, [f.apply(x)]);
            assert_eq!(operator_g(&ctx, &fam, &LVector(vec![x])).unwrap().0, [g.apply(x)]);
        }
    }

    #[test]
    fn crisp_monotone_concepts() {
        let fam = monotone_family();
        let ctx = ManyValuedContext::from_csv(",a\nb,1\n", None).unwrap();
        let cs = concepts(&ctx, &fam).unwrap();
        assert_eq!(
            cs,
            [
                FormalConcept { extent: v(&[0]), intent: v(&[0]) },
                FormalConcept { extent: v(&[1]), intent: v(&[1]) },
            ]
        );
        assert_eq!(brute_force_concepts(&ctx, &fam, 4096).unwrap(), cs);
        let lattice = concept_lattice(fam.lattice(), cs).unwrap();
        assert!(crate::lattice::is_isomorphic(lattice.lattice(), &FiniteLattice::chain(2)));
        assert_eq!(lattice.covers(), [(0, 1)]);
    }

    #[test]
    fn concept_lattice_checks_completeness() {
        let l = FiniteLattice::boolean(2);
        let single = vec![FormalConcept { extent: v(&[3]), intent: v(&[3]) }];
        assert_eq!(concept_lattice(&l, single).unwrap().lattice().len(), 1);
        // Two incomparable extents without their meet.
        let partial = vec![
            FormalConcept { extent: LVector(vec![l.element("01").unwrap()]), intent: v(&[0]) },
            FormalConcept { extent: LVector(vec![l.element("10").unwrap()]), intent: v(&[0]) },
        ];
        assert_eq!(concept_lattice(&l, partial).unwrap_err().kind(), "NotComplete");
    }

    #[test]
    fn top_concept_and_columns() {
        let fam = residuated_chain_family(3).unwrap();
        let ctx = ManyValuedContext::from_csv(",p,q\nx,2,0\ny,1,2\n", None).unwrap();
        assert!(top_concept_check(&ctx, &fam).unwrap());
        let ctx0 = ManyValuedContext::from_csv(",p\nx,0\ny,0\n", None).unwrap();
        assert!(!top_concept_check(&ctx0, &fam).unwrap());

        let cols = column_aggregations(&ctx, &fam).unwrap();
        assert_eq!(cols.len(), 2);
        for col in &cols {
            assert!(col.meets_boundary());
            assert!(col.table(1 << 12).unwrap().is_nary_sup_preserving());
        }
        assert!(!column_aggregations(&ctx0, &fam).unwrap()[0].meets_boundary());
    }

    #[test]
    fn crisp_reference() {
        let identity = ManyValuedContext::from_csv(",p,q\nx,1,0\ny,0,1\n", None).unwrap();
        let cs = crisp_concepts(&identity).unwrap();
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[0], CrispConcept { extent: vec![], intent: strings(&["p", "q"]) });
        assert_eq!(cs[3], CrispConcept { extent: strings(&["x", "y"]), intent: vec![] });

        let ones = ManyValuedContext::from_csv(",p,q\nx,1,1\ny,1,1\n", None).unwrap();
        assert_eq!(
            crisp_concepts(&ones).unwrap(),
            [CrispConcept { extent: strings(&["x", "y"]), intent: strings(&["p", "q"]) }]
        );

        let empty = ManyValuedContext::from_csv(",p,q\nx,0,0\ny,0,0\n", None).unwrap();
        assert_eq!(
            crisp_concepts(&empty).unwrap(),
            [
                CrispConcept { extent: vec![], intent: strings(&["p", "q"]) },
                CrispConcept { extent: strings(&["x", "y"]), intent: vec![] },
            ]
        );

        let many = ManyValuedContext::from_csv(",p\nx,2\n", None).unwrap();
        assert_eq!(crisp_concepts(&many).unwrap_err(), Error::NotBinary("2".into()));
    }

    #[test]
    fn concept_limit() {
        let fam = residuated_chain_family(4).unwrap();
        let ctx = ManyValuedContext::from_csv(",p,q\nx,1,2\ny,2,1\n", None).unwrap();
        let all = concepts(&ctx, &fam).unwrap();
        assert!(all.len() > 2);
        assert_eq!(concepts_with_limit(&ctx, &fam, 2).unwrap_err().kind(), "SizeLimit");
        assert_eq!(concepts_with_limit(&ctx, &fam, all.len()).unwrap(), all);
    }
}
