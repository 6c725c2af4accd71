//! Canonical and explicitly ordered simplices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex identifiers are opaque non-negative integers.
pub type Vertex = u32;

/// A simplex in canonical form: a nonempty, strictly increasing vertex list.
///
/// The derived ordering is lexicographic on the vertex list, which is the
/// deterministic simplex order used throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from vertices in any order. Repeats and empty input
    /// are rejected.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        let raw = vs.clone();
        vs.sort_unstable();
        if vs.is_empty() || vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedSimplex(raw));
        }
        Ok(Simplex(vs))
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Vertex-set inclusion (non-strict).
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// Facets with the index of the omitted vertex, in order `j = 0..=dim`.
    /// A vertex has no facets.
    pub fn facets(&self) -> impl Iterator<Item = (usize, Simplex)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |j| {
            let mut vs = self.0.clone();
            vs.remove(j);
            (j, Simplex(vs))
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < 32, "simplex of dimension {} is too large to enumerate faces", n - 1);
        (1u32..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn intersection(&self, other: &Simplex) -> Option<Simplex> {
        let vs: Vec<Vertex> = self
            .0
            .iter()
            .copied()
            .filter(|v| other.contains_vertex(*v))
            .collect();
        (!vs.is_empty()).then_some(Simplex(vs))
    }
}

impl TryFrom<Vec<Vertex>> for Simplex {
    type Error = Error;

    fn try_from(value: Vec<Vertex>) -> Result<Self> {
        Simplex::new(value)
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A simplex with an explicit vertex order, `[v0 v1 ... vk]^o`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct OrderedSimplex(Vec<Vertex>);

impl OrderedSimplex {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() || has_repeats(&vertices) {
            return Err(Error::MalformedSimplex(vertices));
        }
        Ok(OrderedSimplex(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The underlying canonical simplex and the sign of the sorting
    /// permutation.
    pub fn canonicalize(&self) -> (Simplex, i32) {
        let mut vs = self.0.clone();
        let sign = sort_with_sign(&mut vs).expect("ordered simplex has no repeats");
        (Simplex(vs), sign)
    }

    /// Ordered facet with vertex `j` omitted.
    pub fn facet(&self, j: usize) -> OrderedSimplex {
        let mut vs = self.0.clone();
        vs.remove(j);
        OrderedSimplex(vs)
    }
}

impl From<&Simplex> for OrderedSimplex {
    fn from(s: &Simplex) -> Self {
        OrderedSimplex(s.0.clone())
    }
}

impl TryFrom<Vec<Vertex>> for OrderedSimplex {
    type Error = Error;

    fn try_from(value: Vec<Vertex>) -> Result<Self> {
        OrderedSimplex::new(value)
    }
}

impl From<OrderedSimplex> for Vec<Vertex> {
    fn from(s: OrderedSimplex) -> Self {
        s.0
    }
}

fn has_repeats<T: Ord + Clone>(xs: &[T]) -> bool {
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).any(|w| w[0] == w[1])
}

/// Sorts `xs` in place and returns the sign of the permutation applied, or
/// `None` when two entries are equal (a degenerate simplex).
pub fn sort_with_sign<T: Ord>(xs: &mut [T]) -> Option<i32> {
    // insertion sort: each adjacent swap flips the sign
    let mut sign = 1;
    for i in 1..xs.len() {
        let mut j = i;
        while j > 0 {
            match xs[j - 1].cmp(&xs[j]) {
                std::cmp::Ordering::Greater => {
                    xs.swap(j - 1, j);
                    sign = -sign;
                    j -= 1;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => break,
            }
        }
    }
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}
