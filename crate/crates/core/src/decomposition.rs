//! Decompositions of sup-preserving maps.
//!
//! * maps between direct products split into a matrix of maps between the
//!   factors, `f(x)(γ) = ⋁_λ f_{λγ}(x(λ))`, with upper adjoint
//!   `g(y)(λ) = ⋀_γ g_{λγ}(y(γ))`;
//! * maps on a sublattice `M ⊆ L` extend to `L` through the closure
//!   operator of `M` and restrict back the same way;
//! * a finite distributive lattice embeds subdirectly into `2^k`, which
//!   turns an aggregation function into per-slot matrices of maps on `2`.

use std::sync::Arc;

use crate::aggregation::{AggTable, SupAggregation};
use crate::closure::{ClosureSystem, InteriorSystem, System};
use crate::error::{Error, Result};
use crate::galois::upper_adjoint;
use crate::lattice::{same_lattice, ElementRef, FiniteLattice, ProductCodec, DEFAULT_MAX_ELEMENTS};
use crate::map::LatticeMap;

/// Sup-preserving maps `f_{λγ}: L_λ -> M_γ` between the factors of two
/// product lattices. Rows are indexed by domain factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapMatrix {
    domain: Arc<FiniteLattice>,
    codomain: Arc<FiniteLattice>,
    entries: Vec<Vec<LatticeMap>>,
}

fn codec_of(l: &FiniteLattice) -> Result<&ProductCodec> {
    l.product_codec().ok_or(Error::NotAProduct)
}

impl MapMatrix {
    pub fn new(
        domain: Arc<FiniteLattice>,
        codomain: Arc<FiniteLattice>,
        entries: Vec<Vec<LatticeMap>>,
    ) -> Result<Self> {
        let rows = codec_of(&domain)?.factors().to_vec();
        let cols = codec_of(&codomain)?.factors().to_vec();
        if entries.len() != rows.len() {
            return Err(Error::DomainMismatch(format!(
                "matrix has {} rows for {} domain factors",
                entries.len(),
                rows.len()
            )));
        }
        for (row, factor) in entries.iter().zip(&rows) {
            if row.len() != cols.len() {
                return Err(Error::DomainMismatch("ragged matrix row".into()));
            }
            for (entry, target) in row.iter().zip(&cols) {
                if !same_lattice(entry.domain(), factor) || !same_lattice(entry.codomain(), target) {
                    return Err(Error::DomainMismatch(
                        "entry does not run between the matching factors".into(),
                    ));
                }
                entry.require_sup_preserving()?;
            }
        }
        Ok(MapMatrix {
            domain,
            codomain,
            entries,
        })
    }

    pub fn domain(&self) -> &Arc<FiniteLattice> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteLattice> {
        &self.codomain
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn entry(&self, row: usize, col: usize) -> &LatticeMap {
        &self.entries[row][col]
    }

    pub fn entries(&self) -> &[Vec<LatticeMap>] {
        &self.entries
    }

    /// Array of rows, each an array of `label -> label` objects.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|row| serde_json::Value::Array(row.iter().map(LatticeMap::to_json).collect()))
                .collect(),
        )
    }
}

/// Splits a sup-preserving map between products into its factor matrix,
/// `f_{λγ}(x) = f(0_{λ,x})(γ)`.
pub fn product_decompose(f: &LatticeMap) -> Result<MapMatrix> {
    f.require_sup_preserving()?;
    let dom = codec_of(f.domain())?;
    let cod = codec_of(f.codomain())?;
    let entries = dom
        .factors()
        .iter()
        .enumerate()
        .map(|(lambda, lf)| {
            cod.factors()
                .iter()
                .enumerate()
                .map(|(gamma, mf)| {
                    LatticeMap::from_fn(lf, mf, |x| {
                        cod.coordinate(f.apply(dom.injection(lambda, x)), gamma)
                    })
                })
                .collect()
        })
        .collect();
    Ok(MapMatrix {
        domain: f.domain().clone(),
        codomain: f.codomain().clone(),
        entries,
    })
}

/// `f(x)(γ) = ⋁_λ f_{λγ}(x(λ))`.
pub fn product_compose(m: &MapMatrix) -> LatticeMap {
    let dom = codec_of(&m.domain).expect("validated product");
    let cod = codec_of(&m.codomain).expect("validated product");
    LatticeMap::from_fn(&m.domain, &m.codomain, |x| {
        let coords: Vec<ElementRef> = cod
            .factors()
            .iter()
            .enumerate()
            .map(|(gamma, mf)| {
                mf.join_all(
                    (0..dom.arity()).map(|lambda| m.entries[lambda][gamma].apply(dom.coordinate(x, lambda))),
                )
            })
            .collect();
        cod.encode(&coords)
    })
}

/// Upper adjoint of [`product_compose`] assembled entrywise,
/// `g(y)(λ) = ⋀_γ g_{λγ}(y(γ))`.
pub fn adjoint_matrix(m: &MapMatrix) -> Result<LatticeMap> {
    let dom = codec_of(&m.domain)?;
    let cod = codec_of(&m.codomain)?;
    let adjoints = m
        .entries
        .iter()
        .map(|row| row.iter().map(upper_adjoint).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeMap::from_fn(&m.codomain, &m.domain, |y| {
        let coords: Vec<ElementRef> = dom
            .factors()
            .iter()
            .enumerate()
            .map(|(lambda, lf)| {
                lf.meet_all((0..cod.arity()).map(|gamma| adjoints[lambda][gamma].apply(cod.coordinate(y, gamma))))
            })
            .collect();
        dom.encode(&coords)
    }))
}

/// Conjugates `f: A -> B` by lattice isomorphisms `A -> A'` and `B -> B'`,
/// giving the corresponding map `A' -> B'`.
pub fn transport(f: &LatticeMap, domain_iso: &LatticeMap, codomain_iso: &LatticeMap) -> Result<LatticeMap> {
    let inverse = invert(domain_iso)?;
    inverse.then(f)?.then(codomain_iso)
}

fn invert(iso: &LatticeMap) -> Result<LatticeMap> {
    let (d, c) = (iso.domain(), iso.codomain());
    if d.len() != c.len() {
        return Err(Error::NotIso("carriers differ in size".into()));
    }
    let mut inverse = vec![None; c.len()];
    for x in d.elements() {
        if inverse[iso.apply(x).index()].replace(x).is_some() {
            return Err(Error::NotIso("map is not injective".into()));
        }
    }
    LatticeMap::new(
        c.clone(),
        d.clone(),
        inverse.into_iter().map(|x| x.expect("bijective")).collect(),
    )
}

/// A bounded sublattice `M` of a host `L`, read simultaneously as a closure
/// and an interior system, together with `M` as a lattice of its own.
#[derive(Clone, Debug)]
pub struct SublatticeView {
    host: Arc<FiniteLattice>,
    closure: ClosureSystem,
    interior: InteriorSystem,
    lattice: Arc<FiniteLattice>,
    position: Vec<Option<ElementRef>>,
}

impl SublatticeView {
    pub fn new(host: Arc<FiniteLattice>, members: Vec<ElementRef>) -> Result<Self> {
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                for (op, z) in [("join", host.join(x, y)), ("meet", host.meet(x, y))] {
                    if members.binary_search(&z).is_err() {
                        return Err(Error::NotSublattice(format!(
                            "{op} of `{}` and `{}` is `{}`",
                            host.label(x),
                            host.label(y),
                            host.label(z)
                        )));
                    }
                }
            }
        }
        let closure = ClosureSystem::new(host.clone(), members.clone())
            .map_err(|e| Error::NotSublattice(e.to_string()))?;
        let interior = InteriorSystem::new(host.clone(), members.clone())
            .map_err(|e| Error::NotSublattice(e.to_string()))?;
        let lattice = Arc::new(closure.as_lattice());
        let mut position = vec![None; host.len()];
        for (i, &m) in members.iter().enumerate() {
            position[m.index()] = Some(ElementRef::new(i));
        }
        Ok(SublatticeView {
            host,
            closure,
            interior,
            lattice,
            position,
        })
    }

    pub fn host(&self) -> &Arc<FiniteLattice> {
        &self.host
    }

    /// `M` as a lattice; its element `i` is the `i`-th member in host order.
    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn members(&self) -> &[ElementRef] {
        self.closure.members()
    }

    pub fn to_host(&self, m: ElementRef) -> ElementRef {
        self.closure.members()[m.index()]
    }

    pub fn to_sub(&self, x: ElementRef) -> Option<ElementRef> {
        self.position[x.index()]
    }

    /// `c_M: L -> M`.
    pub fn closure_map(&self) -> LatticeMap {
        LatticeMap::from_fn(&self.host, &self.lattice, |x| {
            self.to_sub(self.closure.closure_of(x)).expect("member")
        })
    }

    /// `i_M: L -> M`.
    pub fn interior_map(&self) -> LatticeMap {
        LatticeMap::from_fn(&self.host, &self.lattice, |x| {
            self.to_sub(self.interior.interior_of(x)).expect("member")
        })
    }

    /// `id_M: M -> L`.
    pub fn inclusion(&self) -> LatticeMap {
        LatticeMap::from_fn(&self.lattice, &self.host, |m| self.to_host(m))
    }
}

fn require_self_map(f: &LatticeMap, l: &Arc<FiniteLattice>) -> Result<()> {
    if !same_lattice(f.domain(), l) || !same_lattice(f.codomain(), l) {
        return Err(Error::DomainMismatch("expected a self-map of the given lattice".into()));
    }
    Ok(())
}

/// `f(x) = c_M(F(x))` for `x ∈ M`.
pub fn restrict_to_sublattice(big: &LatticeMap, view: &SublatticeView) -> Result<LatticeMap> {
    require_self_map(big, &view.host)?;
    big.require_sup_preserving()?;
    view.inclusion().then(big)?.then(&view.closure_map())
}

/// `F(x) = f(c_M(x))` for `x ∈ L`.
pub fn extend_from_sublattice(small: &LatticeMap, view: &SublatticeView) -> Result<LatticeMap> {
    require_self_map(small, &view.lattice)?;
    small.require_sup_preserving()?;
    view.closure_map().then(small)?.then(&view.inclusion())
}

/// `g(y) = i_M(G(y))` for `y ∈ M`, the upper adjoint of the restriction of
/// a map whose upper adjoint is `G`.
pub fn restrict_upper_adjoint(big_upper: &LatticeMap, view: &SublatticeView) -> Result<LatticeMap> {
    require_self_map(big_upper, &view.host)?;
    view.inclusion().then(big_upper)?.then(&view.interior_map())
}

/// An injective lattice homomorphism into a product whose projections are
/// all onto.
#[derive(Clone, Debug)]
pub struct SubdirectEmbedding {
    map: LatticeMap,
    irreducibles: Vec<ElementRef>,
}

impl SubdirectEmbedding {
    pub fn new(map: LatticeMap, irreducibles: Vec<ElementRef>) -> Result<Self> {
        let (src, prod) = (map.domain(), map.codomain());
        let codec = prod
            .product_codec()
            .ok_or_else(|| Error::NotSubdirect("codomain is not a product".into()))?;
        let mut seen = vec![false; prod.len()];
        for x in src.elements() {
            if std::mem::replace(&mut seen[map.apply(x).index()], true) {
                return Err(Error::NotSubdirect(format!(
                    "`{}` shares its image with another element",
                    src.label(x)
                )));
            }
        }
        for x in src.elements() {
            for y in src.elements() {
                let ex = map.apply(x);
                let ey = map.apply(y);
                if map.apply(src.join(x, y)) != prod.join(ex, ey)
                    || map.apply(src.meet(x, y)) != prod.meet(ex, ey)
                {
                    return Err(Error::NotSubdirect(format!(
                        "`{}` and `{}` break the homomorphism",
                        src.label(x),
                        src.label(y)
                    )));
                }
            }
        }
        for (i, factor) in codec.factors().iter().enumerate() {
            let mut hit = vec![false; factor.len()];
            for x in src.elements() {
                hit[codec.coordinate(map.apply(x), i).index()] = true;
            }
            if hit.iter().any(|h| !h) {
                return Err(Error::NotSubdirect(format!("projection {i} is not onto")));
            }
        }
        Ok(SubdirectEmbedding { map, irreducibles })
    }

    pub fn source(&self) -> &Arc<FiniteLattice> {
        self.map.domain()
    }

    pub fn product(&self) -> &Arc<FiniteLattice> {
        self.map.codomain()
    }

    pub fn codec(&self) -> &ProductCodec {
        self.map.codomain().product_codec().expect("validated product")
    }

    pub fn map(&self) -> &LatticeMap {
        &self.map
    }

    /// The join-irreducibles indexing the factors (Birkhoff embeddings only).
    pub fn irreducibles(&self) -> &[ElementRef] {
        &self.irreducibles
    }

    pub fn embed(&self, x: ElementRef) -> ElementRef {
        self.map.apply(x)
    }

    pub fn image(&self) -> Vec<ElementRef> {
        self.source().elements().map(|x| self.embed(x)).collect()
    }

    /// Coordinates of each image as a string of factor labels (bit strings
    /// for embeddings into `2^k`).
    pub fn coordinate_strings(&self) -> Vec<(String, String)> {
        let codec = self.codec();
        self.source()
            .elements()
            .map(|x| {
                let coords: String = codec
                    .decode(self.embed(x))
                    .iter()
                    .zip(codec.factors())
                    .map(|(&c, f)| f.label(c).into_owned())
                    .collect();
                (self.source().label(x).into_owned(), coords)
            })
            .collect()
    }
}

/// Join-irreducibles ordered by `(rank, label)`.
pub fn ordered_irreducibles(l: &FiniteLattice) -> Vec<ElementRef> {
    let ranks = l.ranks();
    let mut ji = l.join_irreducibles();
    ji.sort_by(|&a, &b| (ranks[a.index()], l.label(a)).cmp(&(ranks[b.index()], l.label(b))));
    ji
}

/// Birkhoff representation of a distributive lattice in `2^k`, with
/// factors ordered by `(rank, label)` of the join-irreducibles.
pub fn birkhoff_subdirect(l: &Arc<FiniteLattice>) -> Result<SubdirectEmbedding> {
    birkhoff_subdirect_with_order(l, ordered_irreducibles(l))
}

/// Birkhoff representation with an explicit order of the join-irreducibles.
pub fn birkhoff_subdirect_with_order(
    l: &Arc<FiniteLattice>,
    order: Vec<ElementRef>,
) -> Result<SubdirectEmbedding> {
    if let Some((x, y, z)) = l.distributivity_witness() {
        return Err(Error::NotDistributive {
            x: l.label(x).into_owned(),
            y: l.label(y).into_owned(),
            z: l.label(z).into_owned(),
        });
    }
    let mut expected = l.join_irreducibles();
    let mut given = order.clone();
    expected.sort_unstable();
    given.sort_unstable();
    if expected != given {
        return Err(Error::NotSubdirect(
            "order must list each join-irreducible exactly once".into(),
        ));
    }
    if order.is_empty() {
        return Err(Error::NotSubdirect("a one-element lattice has no factors".into()));
    }
    let two = Arc::new(FiniteLattice::chain(2));
    let (product, codec) = FiniteLattice::power(&two, order.len(), DEFAULT_MAX_ELEMENTS)?;
    let map = LatticeMap::from_fn(l, &product, |x| {
        let bits: Vec<ElementRef> = order
            .iter()
            .map(|&j| if l.leq(j, x) { two.top() } else { two.bottom() })
            .collect();
        codec.encode(&bits)
    });
    SubdirectEmbedding::new(map, order)
}

/// An aggregation function rewritten over the factors of a subdirect
/// embedding: for each slot `l`, the extension `F_l` of the transported
/// component and its factor matrix.
#[derive(Clone, Debug)]
pub struct SubdirectDecomposition {
    embedding: SubdirectEmbedding,
    view: SublatticeView,
    extended: Vec<LatticeMap>,
    matrices: Vec<MapMatrix>,
}

pub fn subdirect_decompose_aggregation(
    f: &SupAggregation,
    embedding: &SubdirectEmbedding,
) -> Result<SubdirectDecomposition> {
    if !same_lattice(f.host(), embedding.source()) {
        return Err(Error::NotSubdirect(
            "embedding source differs from the aggregation host".into(),
        ));
    }
    let product = embedding.product().clone();
    let view = SublatticeView::new(product.clone(), embedding.image())?;
    let source = embedding.source();
    let mut preimage = vec![None; product.len()];
    for x in source.elements() {
        preimage[embedding.embed(x).index()] = Some(x);
    }
    let mut extended = Vec::new();
    let mut matrices = Vec::new();
    for component in f.components() {
        let on_image = LatticeMap::from_fn(view.lattice(), view.lattice(), |m| {
            let x = preimage[view.to_host(m).index()].expect("image member");
            view.to_sub(embedding.embed(component.apply(x))).expect("image member")
        });
        let big = extend_from_sublattice(&on_image, &view)?;
        matrices.push(product_decompose(&big)?);
        extended.push(big);
    }
    let codec = embedding.codec();
    for (j, target) in codec.factors().iter().enumerate() {
        let total = target.join_all(matrices.iter().flat_map(|m| {
            codec
                .factors()
                .iter()
                .enumerate()
                .map(move |(i, fi)| m.entry(i, j).apply(fi.top()))
        }));
        if total != target.top() {
            return Err(Error::BoundaryViolation {
                expected: target.label(target.top()).into_owned(),
                actual: format!("{} in factor {j}", target.label(total)),
            });
        }
    }
    Ok(SubdirectDecomposition {
        embedding: embedding.clone(),
        view,
        extended,
        matrices,
    })
}

impl SubdirectDecomposition {
    pub fn embedding(&self) -> &SubdirectEmbedding {
        &self.embedding
    }

    pub fn matrices(&self) -> &[MapMatrix] {
        &self.matrices
    }

    /// The maps `F_l` on the product.
    pub fn extended(&self) -> &[LatticeMap] {
        &self.extended
    }

    pub fn entry_count(&self) -> usize {
        self.matrices.iter().map(|m| m.rows() * m.cols()).sum()
    }

    /// `⋁_l c_L(F_l(e(x(l))))`, with each `F_l` reassembled from its matrix,
    /// pulled back to the source lattice.
    pub fn evaluate(&self, x: &[ElementRef]) -> Result<ElementRef> {
        if x.len() != self.matrices.len() {
            return Err(Error::ArityMismatch {
                expected: self.matrices.len(),
                actual: x.len(),
            });
        }
        let composed: Vec<LatticeMap> = self.matrices.iter().map(product_compose).collect();
        Ok(self.evaluate_with(&composed, x))
    }

    fn evaluate_with(&self, composed: &[LatticeMap], x: &[ElementRef]) -> ElementRef {
        let product = self.embedding.product();
        let closure = self.view.closure_map();
        let value = product.join_all(composed.iter().zip(x).map(|(big, &xl)| {
            self.view.to_host(closure.apply(big.apply(self.embedding.embed(xl))))
        }));
        let source = self.embedding.source();
        source
            .elements()
            .find(|&s| self.embedding.embed(s) == value)
            .expect("joins of image members stay in the image")
    }

    /// Full table of the recomposed function.
    pub fn recompose(&self) -> Result<AggTable> {
        let composed: Vec<LatticeMap> = self.matrices.iter().map(product_compose).collect();
        AggTable::from_fn(
            self.embedding.source().clone(),
            self.matrices.len(),
            DEFAULT_MAX_ELEMENTS,
            |x| self.evaluate_with(&composed, x),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let embedding: serde_json::Map<String, serde_json::Value> = self
            .embedding
            .coordinate_strings()
            .into_iter()
            .map(|(k, v)| (k, serde_json::Value::String(v)))
            .collect();
        let source = self.embedding.source();
        serde_json::json!({
            "irreducibles": self
                .embedding
                .irreducibles()
                .iter()
                .map(|&j| source.label(j).into_owned())
                .collect::<Vec<_>>(),
            "embedding": embedding,
            "slots": self.matrices.iter().map(MapMatrix::to_json).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregation::build;
    use crate::fixtures;
    use crate::galois::{GaloisPair, verify_adjunction};
    use crate::lattice::isomorphisms;

    fn square() -> Arc<FiniteLattice> {
        let c2 = Arc::new(FiniteLattice::chain(2));
        FiniteLattice::product(vec![c2.clone(), c2]).unwrap().0
    }

    #[test]
    fn identity_on_square_is_diagonal() {
        let sq = square();
        let m = product_decompose(&LatticeMap::identity(&sq)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let e = m.entry(i, j);
                if i == j {
                    assert_eq!(*e, LatticeMap::identity(e.domain()));
                } else {
                    assert!(e.values().iter().all(|&v| v == e.codomain().bottom()));
                }
            }
        }
        assert_eq!(product_compose(&m), LatticeMap::identity(&sq));
        assert_eq!(adjoint_matrix(&m).unwrap(), LatticeMap::identity(&sq));
    }

    #[test]
    fn join_into_single_factor() {
        let c2 = Arc::new(FiniteLattice::chain(2));
        let sq = square();
        let (single, codec) = FiniteLattice::product(vec![c2.clone()]).unwrap();
        let sq_codec = sq.product_codec().unwrap().clone();
        let f = LatticeMap::from_fn(&sq, &single, |x| {
            let c = sq_codec.decode(x);
            codec.encode(&[c2.join(c[0], c[1])])
        });
        let m = product_decompose(&f).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 1));
        assert!(m.entries().iter().flatten().all(|e| *e == LatticeMap::identity(&c2)));
        assert_eq!(product_compose(&m), f);
    }

    #[test]
    fn bottom_matrix_composes_to_bottom() {
        let sq = square();
        let zero = LatticeMap::constant(&sq, &sq, sq.bottom());
        let m = product_decompose(&zero).unwrap();
        assert_eq!(product_compose(&m), zero);
    }

    #[test]
    fn one_by_one_matrix_matches_unary_adjoint() {
        let c3 = Arc::new(FiniteLattice::chain(3));
        let (p, codec) = FiniteLattice::product(vec![c3.clone()]).unwrap();
        let f = LatticeMap::from_labels(&c3, &c3, &[("0", "0"), ("1", "2"), ("2", "2")]).unwrap();
        let m = MapMatrix::new(p.clone(), p.clone(), vec![vec![f.clone()]]).unwrap();
        let g = adjoint_matrix(&m).unwrap();
        let g1 = upper_adjoint(&f).unwrap();
        for y in p.elements() {
            assert_eq!(codec.decode(g.apply(y)), vec![g1.apply(codec.coordinate(y, 0))]);
        }
    }

    #[test]
    fn example_map_on_three_by_two() {
        let l = Arc::new(fixtures::l6());
        let c3 = Arc::new(FiniteLattice::chain(3));
        let c2 = Arc::new(FiniteLattice::chain(2));
        let (p, _) = FiniteLattice::product(vec![c3, c2]).unwrap();
        let isos = isomorphisms(&l, &p);
        assert_eq!(isos.len(), 1);
        let iso = LatticeMap::new(l.clone(), p.clone(), isos[0].clone()).unwrap();
        let (s1, t1, phi1) = fixtures::example1_slot1(&l);
        let pair = GaloisPair::from_systems(&s1, &t1, &phi1).unwrap();
        let f = transport(pair.lower(), &iso, &iso).unwrap();
        let m = product_decompose(&f).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(product_compose(&m), f);
        let g = transport(pair.upper(), &iso, &iso).unwrap();
        assert_eq!(adjoint_matrix(&m).unwrap(), g);
        assert!(verify_adjunction(&f, &g));
    }

    #[test]
    fn sublattice_roundtrips() {
        let l = Arc::new(fixtures::l6());
        let whole = SublatticeView::new(l.clone(), l.elements().collect()).unwrap();
        let (s1, t1, phi1) = fixtures::example1_slot1(&l);
        let pair = GaloisPair::from_systems(&s1, &t1, &phi1).unwrap();
        let f = pair.lower();
        let on_m = restrict_to_sublattice(f, &whole).unwrap();
        assert_eq!(on_m.values(), f.values());

        let bounds = l.elements_by_label(&["0", "1"]).unwrap();
        let two = SublatticeView::new(l.clone(), bounds).unwrap();
        let id = LatticeMap::identity(two.lattice());
        let extended = extend_from_sublattice(&id, &two).unwrap();
        assert!(extended.is_sup_preserving());
        for x in l.elements() {
            let expected = if x == l.bottom() { l.bottom() } else { l.top() };
            assert_eq!(extended.apply(x), expected);
        }
        assert_eq!(restrict_to_sublattice(&extended, &two).unwrap(), id);

        let restricted = restrict_to_sublattice(f, &two).unwrap();
        assert_eq!(
            upper_adjoint(&restricted).unwrap(),
            restrict_upper_adjoint(pair.upper(), &two).unwrap()
        );

        let err = SublatticeView::new(l.clone(), l.elements_by_label(&["0", "a", "c", "1"]).unwrap());
        assert_eq!(err.unwrap_err().kind(), "NotSublattice");
    }

    #[test]
    fn birkhoff_of_the_fixture() {
        let l = Arc::new(fixtures::l6());
        let e = birkhoff_subdirect(&l).unwrap();
        let labels: Vec<String> = e.irreducibles().iter().map(|&j| l.label(j).into_owned()).collect();
        assert_eq!(labels, ["a", "c", "b"]);
        let strings: std::collections::HashMap<_, _> = e.coordinate_strings().into_iter().collect();
        assert_eq!(strings["0"], "000");
        assert_eq!(strings["1"], "111");
        assert_eq!(strings["d"], "110");

        let abc = l.elements_by_label(&["a", "b", "c"]).unwrap();
        let e = birkhoff_subdirect_with_order(&l, abc).unwrap();
        let strings: std::collections::HashMap<_, _> = e.coordinate_strings().into_iter().collect();
        assert_eq!(strings["d"], "101");
        assert_eq!(strings["b"], "110");

        let m3 = Arc::new(fixtures::m3());
        assert_eq!(birkhoff_subdirect(&m3).unwrap_err().kind(), "NotDistributive");
    }

    #[test]
    fn birkhoff_of_small_cases() {
        let c2 = Arc::new(FiniteLattice::chain(2));
        let e = birkhoff_subdirect(&c2).unwrap();
        assert_eq!(e.product().len(), 2);
        assert_eq!(e.coordinate_strings(), [("0".into(), "0".into()), ("1".into(), "1".into())]);
        let b2 = Arc::new(FiniteLattice::boolean(2));
        let e = birkhoff_subdirect(&b2).unwrap();
        assert_eq!(e.image().len(), e.product().len());
    }

    #[test]
    fn subdirect_decomposition_recomposes() {
        let f = build(fixtures::example1_spec()).unwrap();
        let e = birkhoff_subdirect(f.host()).unwrap();
        let d = subdirect_decompose_aggregation(&f, &e).unwrap();
        assert_eq!(d.matrices().len(), 2);
        assert_eq!(d.entry_count(), 18);
        assert_eq!(d.recompose().unwrap(), f.full_table().unwrap());
        for entry in d.matrices().iter().flat_map(|m| m.entries().iter().flatten()) {
            assert_eq!(entry.domain().len(), 2);
            let (t, s, _) = GaloisPair::from_lower(entry.clone()).unwrap().range_systems().unwrap();
            assert_eq!(t.members().len(), s.members().len());
        }
    }
}
