//! Face posets, order complexes and nerves of covers.

use std::collections::{BTreeMap, HashMap};

use crate::complex::SimplicialComplex;
use crate::simplex::{Simplex, Vertex};

/// Identifier of a cover element.
pub type CoverIndex = u32;

/// The simplices of a complex ordered by inclusion. Elements are indexed by
/// their lexicographic rank.
#[derive(Clone, Debug)]
pub struct FacePoset {
    elements: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    /// covering relation: `covers[x]` are the elements immediately below `x`
    covers: Vec<Vec<usize>>,
}

impl FacePoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: usize) -> &Simplex {
        &self.elements[id]
    }

    pub fn elements(&self) -> &[Simplex] {
        &self.elements
    }

    pub fn id_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `x <= y` iff `vertices(x)` is a subset of `vertices(y)`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.elements[x].is_face_of(&self.elements[y])
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        let mut is_covered = vec![false; self.len()];
        for below in &self.covers {
            for &b in below {
                is_covered[b] = true;
            }
        }
        (0..self.len()).filter(|&x| !is_covered[x]).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.covers[x].is_empty()).collect()
    }

    /// Length (in edges) of the longest chain.
    pub fn height(&self) -> usize {
        let mut memo = vec![None; self.len()];
        (0..self.len()).map(|x| self.depth(x, &mut memo)).max().unwrap_or(0)
    }

    fn depth(&self, x: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(d) = memo[x] {
            return d;
        }
        let d = self.covers[x]
            .clone()
            .into_iter()
            .map(|y| 1 + self.depth(y, memo))
            .max()
            .unwrap_or(0);
        memo[x] = Some(d);
        d
    }
}

/// The face poset of `x`. An empty complex yields an empty poset.
pub fn face_poset(x: &SimplicialComplex) -> FacePoset {
    let mut elements: Vec<Simplex> = x.iter().cloned().collect();
    elements.sort();
    let index: HashMap<Simplex, usize> = elements.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let covers = elements
        .iter()
        .map(|s| s.facets().map(|(_, f)| index[&f]).collect())
        .collect();
    FacePoset {
        elements,
        index,
        covers,
    }
}

/// Bijection between order-complex vertex ids and the simplices they stand
/// for. Ids are lexicographic ranks of the underlying simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderComplexVertexMap {
    simplices: Vec<Simplex>,
    ids: HashMap<Simplex, Vertex>,
}

impl OrderComplexVertexMap {
    pub fn from_sorted(simplices: Vec<Simplex>) -> Self {
        debug_assert!(simplices.windows(2).all(|w| w[0] < w[1]));
        let ids = simplices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i as Vertex))
            .collect();
        OrderComplexVertexMap { simplices, ids }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex(&self, id: Vertex) -> &Simplex {
        &self.simplices[id as usize]
    }

    pub fn id(&self, s: &Simplex) -> Option<Vertex> {
        self.ids.get(s).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vertex, &Simplex)> + '_ {
        self.simplices.iter().enumerate().map(|(i, s)| (i as Vertex, s))
    }
}

/// Vertices are poset elements, simplices are strict chains.
pub fn order_complex(p: &FacePoset) -> (SimplicialComplex, OrderComplexVertexMap) {
    let map = OrderComplexVertexMap::from_sorted(p.elements.clone());
    let mut maximal_chains: Vec<Simplex> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for top in p.maximal_elements() {
        collect_maximal_chains(p, top, &mut stack, &mut maximal_chains);
    }
    (SimplicialComplex::from_maximal(&maximal_chains), map)
}

fn collect_maximal_chains(p: &FacePoset, x: usize, stack: &mut Vec<usize>, out: &mut Vec<Simplex>) {
    stack.push(x);
    if p.covers[x].is_empty() {
        out.push(Simplex::new(stack.iter().map(|&i| i as Vertex)).expect("chain elements are distinct"));
    } else {
        for &y in &p.covers[x] {
            collect_maximal_chains(p, y, stack, out);
        }
    }
    stack.pop();
}

/// `Delta(P(X))`.
pub fn barycentric_subdivision(x: &SimplicialComplex) -> (SimplicialComplex, OrderComplexVertexMap) {
    order_complex(&face_poset(x))
}

/// Nerve of an indexed family of subcomplexes of one ambient complex.
///
/// Nerve vertices are the indices of nonempty elements; an index set is a
/// simplex iff the elements share a simplex. Because the elements are
/// complexes, a shared simplex implies a shared vertex, so the nerve is the
/// closure of the index sets `{i : v in element(i)}` over vertices `v`.
pub fn nerve(cover: &BTreeMap<CoverIndex, SimplicialComplex>) -> SimplicialComplex {
    let mut containing: BTreeMap<Vertex, Vec<CoverIndex>> = BTreeMap::new();
    for (&i, element) in cover {
        for v in element.vertices() {
            containing.entry(v).or_default().push(i);
        }
    }
    let generators: Vec<Simplex> = containing
        .into_values()
        .map(|ids| Simplex::new(ids).expect("cover indices are distinct"))
        .collect();
    SimplicialComplex::from_maximal(&generators)
}
