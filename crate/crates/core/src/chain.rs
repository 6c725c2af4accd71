//! Chains with exact coefficients and the simplicial boundary operator.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::Ring;
use crate::simplex::{OrderedSimplex, Simplex};

/// A finite formal sum of `k`-simplices. Zero coefficients are never stored.
///
/// Arithmetic between chains panics on a ring or (nonzero) degree mismatch;
/// both are programming errors.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain {
    ring: Ring,
    degree: usize,
    terms: BTreeMap<Simplex, BigInt>,
}

impl Chain {
    pub fn zero(ring: Ring, degree: usize) -> Self {
        Chain {
            ring,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_simplex(ring: Ring, s: Simplex) -> Self {
        let mut c = Chain::zero(ring, s.dim());
        c.add_term(s, BigInt::one());
        c
    }

    /// Builds `sum coeff * simplex`; all simplices must have dimension `degree`.
    pub fn from_terms(
        ring: Ring,
        degree: usize,
        terms: impl IntoIterator<Item = (Simplex, BigInt)>,
    ) -> Self {
        let mut c = Chain::zero(ring, degree);
        for (s, a) in terms {
            c.add_term(s, a);
        }
        c
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
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

    pub fn coeff(&self, s: &Simplex) -> BigInt {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.terms.keys()
    }

    pub fn add_term(&mut self, s: Simplex, a: BigInt) {
        assert_eq!(
            s.dim(),
            self.degree,
            "simplex {s} does not have chain degree {}",
            self.degree
        );
        let a = self.ring.normalize(a);
        if a.is_zero() {
            return;
        }
        let entry = self.terms.entry(s);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(a);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.ring.normalize(o.get() + a);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Adds `a` times the ordered simplex, folding the sorting sign into the
    /// coefficient.
    pub fn add_ordered(&mut self, os: &OrderedSimplex, a: BigInt) {
        let (s, sign) = os.canonicalize();
        self.add_term(s, a * sign);
    }

    pub fn scale(&self, a: &BigInt) -> Chain {
        Chain::from_terms(
            self.ring,
            self.degree,
            self.terms.iter().map(|(s, c)| (s.clone(), c * a)),
        )
    }

    pub fn add(&self, other: &Chain) -> Chain {
        self.combine(other, BigInt::one())
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.combine(other, -BigInt::one())
    }

    pub fn neg(&self) -> Chain {
        self.scale(&-BigInt::one())
    }

    fn combine(&self, other: &Chain, factor: BigInt) -> Chain {
        assert_eq!(self.ring, other.ring, "chain ring mismatch");
        let degree = if self.is_zero() {
            other.degree
        } else {
            if !other.is_zero() {
                assert_eq!(self.degree, other.degree, "chain degree mismatch");
            }
            self.degree
        };
        let mut out = self.clone();
        out.degree = degree;
        for (s, a) in &other.terms {
            out.add_term(s.clone(), a * &factor);
        }
        out
    }

    /// Reinterprets the coefficients in another ring (e.g. reduction mod p).
    pub fn change_ring(&self, ring: Ring) -> Chain {
        Chain::from_terms(ring, self.degree, self.terms.clone())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, a)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{a}*{s}")?;
        }
        Ok(())
    }
}

/// `d[v0 ... vk] = sum_j (-1)^j [v0 ... ^vj ... vk]`, canonicalized. The
/// boundary of a vertex is the zero chain (no augmentation).
pub fn boundary(os: &OrderedSimplex, ring: Ring) -> Chain {
    let k = os.dim();
    let mut out = Chain::zero(ring, k.saturating_sub(1));
    if k == 0 {
        return out;
    }
    for j in 0..=k {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out.add_ordered(&os.facet(j), BigInt::from(sign));
    }
    out
}

/// Linear extension of [`boundary`] to chains.
pub fn boundary_chain(c: &Chain) -> Chain {
    let mut out = Chain::zero(c.ring(), c.degree().saturating_sub(1));
    if c.degree() == 0 {
        return out;
    }
    for (s, a) in c.terms() {
        for (j, f) in s.facets() {
            let sign = if j % 2 == 0 { a.clone() } else { -a.clone() };
            out.add_term(f, sign);
        }
    }
    out
}


mod json {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Chain;
    use crate::ring::Ring;
    use crate::simplex::Simplex;

    #[derive(Serialize, Deserialize)]
    struct Term {
        simplex: Simplex,
        coeff: String,
    }

    #[derive(Serialize, Deserialize)]
    struct ChainJson {
        degree: usize,
        terms: Vec<Term>,
    }

    /// `{"degree": k, "terms": [{"simplex": [...], "coeff": "<int>"}]}`;
    /// coefficients are decimal strings.
    impl Serialize for Chain {
        fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
            ChainJson {
                degree: self.degree,
                terms: self
                    .terms
                    .iter()
                    .map(|(s, a)| Term {
                        simplex: s.clone(),
                        coeff: a.to_string(),
                    })
                    .collect(),
            }
            .serialize(serializer)
        }
    }

    /// Deserializes with integer coefficients; use [`Chain::change_ring`]
    /// to reduce.
    impl<'de> Deserialize<'de> for Chain {
        fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
            use serde::de::Error;
            let raw = ChainJson::deserialize(deserializer)?;
            let mut c = Chain::zero(Ring::Integers, raw.degree);
            for t in raw.terms {
                if t.simplex.dim() != raw.degree {
                    return Err(D::Error::custom(format!(
                        "simplex {} does not have degree {}",
                        t.simplex, raw.degree
                    )));
                }
                let a: BigInt = t.coeff.parse().map_err(D::Error::custom)?;
                c.add_term(t.simplex, a);
            }
            Ok(c)
        }
    }

}
