//! Finite abstract simplicial complexes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::simplex::{Simplex, Vertex};

/// A face-closed finite set of simplices, stored by dimension so that
/// per-dimension iteration is lexicographic.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    by_dim: Vec<BTreeSet<Simplex>>,
}

impl SimplicialComplex {
    pub const fn empty() -> Self {
        SimplicialComplex { by_dim: Vec::new() }
    }

    /// Face closure of the given simplices.
    pub fn from_maximal<'a>(maximal: impl IntoIterator<Item = &'a Simplex>) -> Self {
        let mut out = Self::default();
        for s in maximal {
            out.insert_with_faces(s);
        }
        out
    }

    /// Builds a complex from a set that is already face-closed, checking it.
    pub fn from_closed(simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut out = Self::default();
        for s in simplices {
            out.insert_raw(s);
        }
        for s in out.iter() {
            if let Some((_, f)) = s.facets().find(|(_, f)| !out.contains(f)) {
                return Err(Error::NotFaceClosed(s.clone(), f));
            }
        }
        Ok(out)
    }

    pub fn insert_with_faces(&mut self, s: &Simplex) {
        if self.contains(s) {
            return;
        }
        for f in s.faces() {
            self.insert_raw(f);
        }
    }

    fn insert_raw(&mut self, s: Simplex) {
        let d = s.dim();
        if self.by_dim.len() <= d {
            self.by_dim.resize_with(d + 1, BTreeSet::new);
        }
        self.by_dim[d].insert(s);
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.by_dim.get(s.dim()).is_some_and(|set| set.contains(s))
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.iter().all(BTreeSet::is_empty)
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(BTreeSet::len).sum()
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|s| !s.is_empty())
    }

    pub fn count(&self, k: usize) -> usize {
        self.by_dim.get(k).map_or(0, BTreeSet::len)
    }

    /// The `k`-simplices in lexicographic order.
    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.by_dim.get(k).into_iter().flatten()
    }

    /// All simplices, by dimension then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.by_dim.iter().flatten()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.simplices(0).map(|s| s.vertices()[0])
    }

    /// Simplices that are not a proper face of another simplex, in
    /// lexicographic order.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = Vec::new();
        for (d, layer) in self.by_dim.iter().enumerate() {
            let next = self.by_dim.get(d + 1);
            for s in layer {
                let has_coface = next.is_some_and(|up| {
                    up.iter().any(|t| s.is_face_of(t))
                });
                if !has_coface {
                    out.push(s.clone());
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// Set intersection of simplex sets; the result is again a complex.
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut out = Self::default();
        for s in self.iter().filter(|s| other.contains(s)) {
            out.insert_raw(s.clone());
        }
        out
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut out = self.clone();
        for s in other.iter() {
            out.insert_raw(s.clone());
        }
        out
    }

    /// Every facet of every member is a member.
    pub fn is_face_closed(&self) -> bool {
        self.iter().all(|s| s.facets().all(|(_, f)| self.contains(&f)))
    }

    /// Simplices of `self` not in `other`, lexicographic within dimension.
    pub fn difference(&self, other: &SimplicialComplex) -> Vec<Simplex> {
        self.iter().filter(|s| !other.contains(s)).cloned().collect()
    }
}

/// Face closure of a list of simplices given as raw vertex lists.
pub fn make_complex(maximal_simplices: &[Vec<Vertex>]) -> Result<SimplicialComplex> {
    let simplices = maximal_simplices
        .iter()
        .map(|vs| Simplex::new(vs.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialComplex::from_maximal(&simplices))
}

impl FromIterator<Simplex> for SimplicialComplex {
    /// Face closure of the collected simplices.
    fn from_iter<I: IntoIterator<Item = Simplex>>(iter: I) -> Self {
        let mut out = Self::default();
        for s in iter {
            out.insert_with_faces(&s);
        }
        out
    }
}
