//! From a filtered cover to its nerve at the level of order complexes.
//!
//! `f^l` sends a simplex of the base complex to the set of cover indices
//! whose element at level `l` contains it. Being order-reversing, it induces
//! a simplicial map `Θ^l` between the barycentric subdivisions of the base
//! and of the nerve. For `l <= u`, `Θ^l` and `Θ^u` need not agree on chains,
//! but on cycles they differ by the boundary of the image of an explicit
//! simplicial mapping cylinder. This module builds all of these maps and
//! checks that identity exactly over the integers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chain::{boundary_chain, Chain};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::filtration::{FilteredCover, Level};
use crate::homology::{integer_cycle_basis, BoundarySolver};
use crate::order::{barycentric_subdivision, face_poset, order_complex, CoverIndex, OrderComplexVertexMap};
use crate::ring::{is_prime, Ring};
use crate::simplex::{sort_with_sign, OrderedSimplex, Simplex, Vertex};

/// `{i : π ∈ element(i, level)}`, as a sorted list.
pub fn poset_map_f(fc: &FilteredCover, level: Level, pi: &Simplex) -> Result<Vec<CoverIndex>> {
    let top = *fc.levels().last().ok_or_else(|| Error::NotInComplex(pi.clone()))?;
    if !fc.union_at(top).contains(pi) {
        return Err(Error::NotInComplex(pi.clone()));
    }
    if fc.levels().binary_search(&level).is_err() {
        return Err(Error::UnknownLevel(level, pi.clone()));
    }
    Ok(membership(fc, level, pi))
}

fn membership(fc: &FilteredCover, level: Level, pi: &Simplex) -> Vec<CoverIndex> {
    fc.indices()
        .iter()
        .copied()
        .filter(|&i| fc.element(i, level).contains(pi))
        .collect()
}

/// `f^l` tabulated on every simplex of a domain complex. Simplices outside
/// `Δ^l` map to the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMapF {
    level: Level,
    images: BTreeMap<Simplex, Vec<CoverIndex>>,
}

impl PosetMapF {
    pub fn new(fc: &FilteredCover, level: Level, domain: &SimplicialComplex) -> Self {
        let images = domain.iter().map(|s| (s.clone(), membership(fc, level, s))).collect();
        PosetMapF { level, images }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// `None` off the domain.
    pub fn image(&self, pi: &Simplex) -> Option<&[CoverIndex]> {
        self.images.get(pi).map(Vec::as_slice)
    }

    /// The image as a nerve simplex; `None` when empty or off the domain.
    pub fn nerve_simplex(&self, pi: &Simplex) -> Option<Simplex> {
        match self.image(pi) {
            Some(v) if !v.is_empty() => Some(Simplex::new(v.iter().copied()).expect("sorted distinct")),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &[CoverIndex])> + '_ {
        self.images.iter().map(|(s, v)| (s, v.as_slice()))
    }
}

/// Everything needed to compare `Θ^l` and `Θ^u` for a fixed upper level `u`.
///
/// Source vertex ids are lexicographic ranks in the subdivision of the
/// whole base complex (the union at the top level), so chains built for one
/// upper level are valid for every other.
pub struct NerveMapSetup {
    upper: Level,
    source: SimplicialComplex,
    source_map: OrderComplexVertexMap,
    source_upper: SimplicialComplex,
    nerve: SimplicialComplex,
    target: SimplicialComplex,
    target_map: OrderComplexVertexMap,
    maps: BTreeMap<Level, PosetMapF>,
    solvers: Mutex<BTreeMap<(usize, u32), Arc<BoundarySolver>>>,
}

impl NerveMapSetup {
    pub fn new(fc: &FilteredCover, upper: Level) -> Result<Self> {
        let Some(&top) = fc.levels().last() else {
            return Err(Error::Incompatible("cover has no levels".into()));
        };
        if fc.levels().binary_search(&upper).is_err() {
            return Err(Error::Incompatible(format!("{upper} is not a level of the cover")));
        }
        let ambient = fc.union_at(top);
        let (source, source_map) = barycentric_subdivision(&ambient);
        let base_upper = fc.union_at(upper);
        let source_upper = restrict(&source, &source_map, &base_upper);
        let nerve = fc.nerve_at(upper);
        let (target, target_map) = order_complex(&face_poset(&nerve));
        let maps = fc
            .levels()
            .iter()
            .filter(|&&l| l <= upper)
            .map(|&l| (l, PosetMapF::new(fc, l, &ambient)))
            .collect();
        Ok(NerveMapSetup {
            upper,
            source,
            source_map,
            source_upper,
            nerve,
            target,
            target_map,
            maps,
            solvers: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn upper(&self) -> Level {
        self.upper
    }

    /// Subdivision of the whole base complex.
    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn source_map(&self) -> &OrderComplexVertexMap {
        &self.source_map
    }

    /// `ΔP(N^u)`.
    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn target_map(&self) -> &OrderComplexVertexMap {
        &self.target_map
    }

    pub fn nerve(&self) -> &SimplicialComplex {
        &self.nerve
    }

    pub fn poset_map(&self, level: Level) -> Result<&PosetMapF> {
        self.maps
            .get(&level)
            .ok_or_else(|| Error::Incompatible(format!("level {level} is not at most {}", self.upper)))
    }

    /// `ΔP(Δ^l)` in source ids.
    pub fn subdivision_at(&self, level: Level, fc: &FilteredCover) -> SimplicialComplex {
        restrict(&self.source, &self.source_map, &fc.union_at(level))
    }

    /// Orders a source simplex by strictly decreasing base simplices.
    pub fn canonical_order(&self, s: &Simplex) -> OrderedSimplex {
        canonical_order(s, &self.source_map)
    }

    fn target_vertex(&self, level: Level, id: Vertex) -> Result<Vertex> {
        let base = self.source_map.simplex(id);
        let f = self.poset_map(level)?;
        let n = f.nerve_simplex(base).ok_or_else(|| {
            Error::Hypothesis(format!("{base} is not covered at level {level}"))
        })?;
        self.target_map
            .id(&n)
            .ok_or_else(|| Error::Hypothesis(format!("{n} is not a simplex of the nerve at level {}", self.upper)))
    }

    fn check_support(&self, c: &Chain) -> Result<()> {
        for s in c.support() {
            if !self.source_upper.contains(s) {
                return Err(Error::NotInComplex(s.clone()));
            }
        }
        Ok(())
    }

    fn solver(&self, k: usize, p: u32) -> Arc<BoundarySolver> {
        let mut cache = self.solvers.lock().expect("solver cache poisoned");
        cache
            .entry((k, p))
            .or_insert_with(|| Arc::new(BoundarySolver::new(&self.target, k, Ring::Prime(p))))
            .clone()
    }
}

fn restrict(source: &SimplicialComplex, map: &OrderComplexVertexMap, base: &SimplicialComplex) -> SimplicialComplex {
    source
        .iter()
        .filter(|s| s.vertices().iter().all(|&v| base.contains(map.simplex(v))))
        .cloned()
        .collect()
}

/// Vertices of an order-complex simplex listed with strictly decreasing
/// underlying simplices.
pub fn canonical_order(s: &Simplex, map: &OrderComplexVertexMap) -> OrderedSimplex {
    let mut vs = s.vertices().to_vec();
    vs.sort_by_key(|&v| std::cmp::Reverse(map.simplex(v).dim()));
    OrderedSimplex::new(vs).expect("distinct vertices")
}

/// `Θ^l_*` on a chain of `ΔP(Δ^u)`.
pub fn theta_chain_map(setup: &NerveMapSetup, level: Level, c: &Chain) -> Result<Chain> {
    setup.check_support(c)?;
    let mut out = Chain::zero(Ring::Integers, c.degree());
    for (s, a) in c.terms() {
        let mut image = s
            .vertices()
            .iter()
            .map(|&v| setup.target_vertex(level, v))
            .collect::<Result<Vec<_>>>()?;
        if let Some(sign) = sort_with_sign(&mut image) {
            let t = Simplex::new(image).expect("sorted distinct");
            if !setup.target.contains(&t) {
                return Err(Error::Hypothesis(format!("image {t} is not a chain of nerve simplices")));
            }
            out.add_term(t, a * sign);
        }
    }
    Ok(out.change_ring(c.ring()))
}

/// A vertex of the doubled vertex set; `Marked` is the primed copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CylVertex {
    Base(Vertex),
    Marked(Vertex),
}

impl fmt::Display for CylVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CylVertex::Base(v) => write!(f, "{v}"),
            CylVertex::Marked(v) => write!(f, "{v}'"),
        }
    }
}

/// Integer combination of abstract oriented simplices on any vertex type.
/// Keys are sorted vertex tuples; simplices with a repeated vertex are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalChain<V: Ord> {
    terms: BTreeMap<Vec<V>, BigInt>,
}

pub type FormalCylinderChain = FormalChain<CylVertex>;

impl<V: Ord + Clone> Default for FormalChain<V> {
    fn default() -> Self {
        FormalChain { terms: BTreeMap::new() }
    }
}

impl<V: Ord + Clone> FormalChain<V> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[V], &BigInt)> + '_ {
        self.terms.iter().map(|(k, a)| (k.as_slice(), a))
    }

    pub fn coeff(&self, vs: &[V]) -> BigInt {
        self.terms.get(vs).cloned().unwrap_or_default()
    }

    /// Adds `a * [vs]`, sorting with sign. Returns false for a degenerate
    /// tuple, which contributes nothing.
    pub fn add_ordered(&mut self, mut vs: Vec<V>, a: BigInt) -> bool {
        let Some(sign) = sort_with_sign(&mut vs) else {
            return false;
        };
        let a = a * sign;
        if a.is_zero() {
            return true;
        }
        let e = self.terms.entry(vs).or_default();
        *e += a;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        true
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, a) in &other.terms {
            out.add_ordered(k.clone(), a.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, a: &BigInt) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_ordered(k.clone(), c * a);
        }
        out
    }

    /// Alternating-sum boundary; vertices have zero boundary.
    pub fn boundary(&self) -> Self {
        let mut out = Self::zero();
        for (k, a) in &self.terms {
            if k.len() < 2 {
                continue;
            }
            for j in 0..k.len() {
                let mut f = k.clone();
                f.remove(j);
                let c = if j % 2 == 0 { a.clone() } else { -a.clone() };
                out.add_ordered(f, c);
            }
        }
        out
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Display for FormalChain<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, a)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let vs: Vec<String> = k.iter().map(|v| v.to_string()).collect();
            write!(f, "{a}*[{}]", vs.join(" "))?;
        }
        Ok(())
    }
}

/// Embeds a chain on `V` as a formal chain on one copy of `V ⊔ V`.
pub fn embed(c: &Chain, marked: bool) -> FormalCylinderChain {
    let mut out = FormalChain::zero();
    for (s, a) in c.terms() {
        let vs = s
            .vertices()
            .iter()
            .map(|&v| if marked { CylVertex::Marked(v) } else { CylVertex::Base(v) })
            .collect();
        out.add_ordered(vs, a.clone());
    }
    out
}

/// `Cyl(σ, τ) = Σ_t (-1)^{t+1} [v_0 .. v_t w_t .. w_k]`, `v` from the base
/// copy and `w` from the marked copy.
pub fn cyl(sigma: &OrderedSimplex, tau: &OrderedSimplex) -> Result<FormalCylinderChain> {
    if sigma.dim() != tau.dim() {
        return Err(Error::DimensionMismatch(sigma.dim(), tau.dim()));
    }
    let mut out = FormalChain::zero();
    let (v, w) = (sigma.vertices(), tau.vertices());
    for t in 0..v.len() {
        let vs: Vec<CylVertex> = v[..=t]
            .iter()
            .map(|&x| CylVertex::Base(x))
            .chain(w[t..].iter().map(|&x| CylVertex::Marked(x)))
            .collect();
        let sign = if t % 2 == 0 { -1 } else { 1 };
        out.add_ordered(vs, BigInt::from(sign));
    }
    Ok(out)
}

/// Two chains written as `Σ a_i σ_i` and `Σ a_i τ_i` with one coefficient
/// list and explicit vertex orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatiblePair {
    degree: usize,
    terms: Vec<(BigInt, OrderedSimplex, OrderedSimplex)>,
}

impl CompatiblePair {
    /// Pairs the `i`-th terms of both lists; coefficients must agree.
    pub fn new(first: Vec<(BigInt, OrderedSimplex)>, second: Vec<(BigInt, OrderedSimplex)>) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::Incompatible(format!(
                "{} terms paired with {} terms",
                first.len(),
                second.len()
            )));
        }
        let degree = first.first().map_or(0, |(_, s)| s.dim());
        let mut terms = Vec::with_capacity(first.len());
        for (i, ((a, s), (b, t))) in first.into_iter().zip(second).enumerate() {
            if a != b {
                return Err(Error::Incompatible(format!("coefficient {a} paired with {b} at term {i}")));
            }
            if s.dim() != degree || t.dim() != degree {
                return Err(Error::DimensionMismatch(s.dim().max(t.dim()), degree));
            }
            terms.push((a, s, t));
        }
        Ok(CompatiblePair { degree, terms })
    }

    /// `μ` paired with its marked copy `μ'`, each simplex written in the
    /// vertex order chosen by `order`.
    pub fn marked_copy(mu: &Chain, order: impl Fn(&Simplex) -> OrderedSimplex) -> Self {
        let terms = mu
            .terms()
            .map(|(s, a)| {
                let os = order(s);
                let (_, sign) = os.canonicalize();
                (a * sign, os.clone(), os)
            })
            .collect();
        CompatiblePair {
            degree: mu.degree(),
            terms,
        }
    }

    /// `μ` paired with its image under a vertex relabelling `g`, injective
    /// on each simplex. Simplices keep their sorted order and `τ_i` lists
    /// `g` of those vertices in the same positions, so facets pair up
    /// consistently.
    pub fn relabelled(mu: &Chain, g: impl Fn(Vertex) -> Vertex) -> Result<Self> {
        let mut terms = Vec::with_capacity(mu.len());
        for (s, a) in mu.terms() {
            let sigma = OrderedSimplex::from(s);
            let tau = OrderedSimplex::new(s.vertices().iter().map(|&v| g(v)).collect())
                .map_err(|_| Error::Incompatible(format!("relabelling is not injective on {s}")))?;
            terms.push((a.clone(), sigma, tau));
        }
        Ok(CompatiblePair {
            degree: mu.degree(),
            terms,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(BigInt, OrderedSimplex, OrderedSimplex)] {
        &self.terms
    }

    /// `(∂μ_1, ∂μ_2)` with the induced pairing of facets.
    pub fn boundary(&self) -> CompatiblePair {
        let mut terms = Vec::new();
        if self.degree > 0 {
            for (a, s, t) in &self.terms {
                for j in 0..=self.degree {
                    let c = if j % 2 == 0 { a.clone() } else { -a.clone() };
                    terms.push((c, s.facet(j), t.facet(j)));
                }
            }
        }
        CompatiblePair {
            degree: self.degree.saturating_sub(1),
            terms,
        }
    }

    pub fn first(&self) -> FormalCylinderChain {
        self.side(false)
    }

    pub fn second(&self) -> FormalCylinderChain {
        self.side(true)
    }

    fn side(&self, marked: bool) -> FormalCylinderChain {
        let mut out = FormalChain::zero();
        for (a, s, t) in &self.terms {
            let vs = if marked {
                t.vertices().iter().map(|&v| CylVertex::Marked(v)).collect()
            } else {
                s.vertices().iter().map(|&v| CylVertex::Base(v)).collect()
            };
            out.add_ordered(vs, a.clone());
        }
        out
    }

    /// `Σ a_i Cyl(σ_i, τ_i)`.
    pub fn cyl_chain(&self) -> FormalCylinderChain {
        let mut out = FormalChain::zero();
        for (a, s, t) in &self.terms {
            let c = cyl(s, t).expect("paired simplices share a dimension");
            out = out.add(&c.scale(a));
        }
        out
    }
}

pub fn cyl_chain(pair: &CompatiblePair) -> FormalCylinderChain {
    pair.cyl_chain()
}

pub fn boundary_formal(c: &FormalCylinderChain) -> FormalCylinderChain {
    c.boundary()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderIdentityCheck {
    pub holds: bool,
    /// `∂Cyl(μ1, μ2) - (μ1 - μ2 - Cyl(∂μ1, ∂μ2))`
    pub residual: FormalCylinderChain,
}

pub fn verify_cylinder_identity(pair: &CompatiblePair) -> CylinderIdentityCheck {
    let lhs = pair.cyl_chain().boundary();
    let rhs = pair.first().sub(&pair.second()).sub(&pair.boundary().cyl_chain());
    let residual = lhs.sub(&rhs);
    CylinderIdentityCheck {
        holds: residual.is_zero(),
        residual,
    }
}

/// One abstract simplex surviving `φ`, with its underlying nerve simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Containment {
    pub simplex: Simplex,
    pub nerve_simplices: Vec<Simplex>,
    pub contained: bool,
}

#[derive(Clone, Debug)]
pub struct PhiImage {
    /// Coefficients on the vertex ids of `ΔP(N^u)`; terms not in that
    /// complex are kept so the identity can still be checked.
    pub chain: FormalChain<Vertex>,
    pub containment: Vec<Containment>,
}

impl PhiImage {
    pub fn all_contained(&self) -> bool {
        self.containment.iter().all(|c| c.contained)
    }
}

/// `φ`: `v ↦ f^l(v)`, `v' ↦ f^u(v)`, then sort with sign and drop
/// degenerate terms.
pub fn phi_map(setup: &NerveMapSetup, lower: Level, c: &FormalCylinderChain) -> Result<PhiImage> {
    let mut chain = FormalChain::zero();
    let mut seen: BTreeMap<Vec<Vertex>, bool> = BTreeMap::new();
    for (vs, a) in c.terms() {
        let image = vs
            .iter()
            .map(|v| match *v {
                CylVertex::Base(x) => setup.target_vertex(lower, x),
                CylVertex::Marked(x) => setup.target_vertex(setup.upper, x),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sorted = image.clone();
        if sort_with_sign(&mut sorted).is_none() {
            continue;
        }
        let contained = setup
            .target
            .contains(&Simplex::new(sorted.iter().copied()).expect("distinct"));
        seen.insert(sorted, contained);
        chain.add_ordered(image, a.clone());
    }
    let containment = seen
        .into_iter()
        .map(|(vs, contained)| Containment {
            nerve_simplices: vs.iter().map(|&v| setup.target_map.simplex(v).clone()).collect(),
            simplex: Simplex::new(vs).expect("distinct"),
            contained,
        })
        .collect();
    Ok(PhiImage { chain, containment })
}

fn formal_of(c: &Chain) -> FormalChain<Vertex> {
    let mut out = FormalChain::zero();
    for (s, a) in c.terms() {
        out.add_ordered(s.vertices().to_vec(), a.clone());
    }
    out
}

/// Outcome of checking that `Θ^l_*(μ)` and `Θ^u_*(μ)` differ by the
/// boundary of `φ Cyl(μ, μ')`.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub lower: Level,
    pub upper: Level,
    pub degree: usize,
    /// every surviving simplex of `φ Cyl(μ, μ')` lies in `ΔP(N^u)`
    pub contained: bool,
    pub uncontained: Vec<Containment>,
    /// `∂ φ Cyl(μ, μ') = Θ^l_*(μ) - Θ^u_*(μ)` over the integers
    pub identity: bool,
    /// a solver over `Z/field` found a witness `w` with `∂w` equal to the
    /// difference, and `∂w` was recomputed to confirm it
    pub certified: bool,
    pub field: u32,
    pub thetas_differ: bool,
    pub theta_lower: Chain,
    pub theta_upper: Chain,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.contained && self.identity && self.certified
    }
}

/// Runs all three checks on one integer cycle `μ` of `ΔP(Δ^l)` (source ids).
pub fn verify_lemma_tech(setup: &NerveMapSetup, lower: Level, mu: &Chain, field: u32) -> Result<LemmaCheck> {
    if !is_prime(field) {
        return Err(Error::NotPrime(field));
    }
    if lower > setup.upper {
        return Err(Error::Incompatible(format!("level {lower} exceeds {}", setup.upper)));
    }
    let mu = mu.change_ring(Ring::Integers);
    if !boundary_chain(&mu).is_zero() {
        return Err(Error::NotACycle(mu.degree()));
    }
    setup.check_support(&mu)?;
    let k = mu.degree();

    let theta_lower = theta_chain_map(setup, lower, &mu)?;
    let theta_upper = theta_chain_map(setup, setup.upper, &mu)?;
    let difference = theta_lower.sub(&theta_upper);

    let pair = CompatiblePair::marked_copy(&mu, |s| setup.canonical_order(s));
    let image = phi_map(setup, lower, &pair.cyl_chain())?;
    let identity = image.chain.boundary() == formal_of(&difference);

    let reduced = difference.change_ring(Ring::Prime(field));
    let certified = match setup.solver(k, field).solve(&reduced) {
        Ok(Some(w)) => boundary_chain(&w) == reduced,
        Ok(None) => false,
        Err(Error::NotInComplex(_)) => false,
        Err(e) => return Err(e),
    };

    Ok(LemmaCheck {
        lower,
        upper: setup.upper,
        degree: k,
        contained: image.all_contained(),
        uncontained: image.containment.into_iter().filter(|c| !c.contained).collect(),
        identity,
        certified,
        field,
        thetas_differ: theta_lower != theta_upper,
        theta_lower,
        theta_upper,
    })
}

/// Integer cycle basis of `Z_k(ΔP(Δ^l))` in source ids.
pub fn source_cycle_basis(setup: &NerveMapSetup, fc: &FilteredCover, level: Level, k: usize) -> Vec<Chain> {
    integer_cycle_basis(&setup.subdivision_at(level, fc), k)
}
