//! Filtered complexes, filtered covers and validation of the good-cover
//! hypotheses.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::order::{nerve, CoverIndex};
use crate::simplex::{Simplex, Vertex};

/// Discrete filtration level.
pub type Level = u32;

static EMPTY: SimplicialComplex = SimplicialComplex::empty();

/// A complex with a birth level per simplex, monotone under faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: SimplicialComplex,
    births: BTreeMap<Simplex, Level>,
    levels: Vec<Level>,
}

impl FilteredComplex {
    /// `levels` is sorted and deduplicated; every birth must be one of them.
    pub fn new(births: BTreeMap<Simplex, Level>, levels: impl IntoIterator<Item = Level>) -> Result<Self> {
        let mut levels: Vec<Level> = levels.into_iter().collect();
        levels.sort_unstable();
        levels.dedup();
        let complex = SimplicialComplex::from_closed(births.keys().cloned())?;
        for (s, &b) in &births {
            if levels.binary_search(&b).is_err() {
                return Err(Error::UnknownLevel(b, s.clone()));
            }
            for (_, f) in s.facets() {
                let fb = births[&f];
                if fb > b {
                    return Err(Error::NonMonotone {
                        face: f,
                        face_birth: fb.to_string(),
                        simplex: s.clone(),
                        birth: b.to_string(),
                    });
                }
            }
        }
        Ok(FilteredComplex {
            complex,
            births,
            levels,
        })
    }

    /// Levels are the distinct birth values.
    pub fn from_births(births: BTreeMap<Simplex, Level>) -> Result<Self> {
        let levels: Vec<Level> = births.values().copied().collect();
        Self::new(births, levels)
    }

    /// Every simplex of `x` born at `level`.
    pub fn constant(x: &SimplicialComplex, level: Level) -> Self {
        let births = x.iter().map(|s| (s.clone(), level)).collect();
        FilteredComplex {
            complex: x.clone(),
            births,
            levels: vec![level],
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn birth(&self, s: &Simplex) -> Option<Level> {
        self.births.get(s).copied()
    }

    pub fn births(&self) -> &BTreeMap<Simplex, Level> {
        &self.births
    }

    pub fn len(&self) -> usize {
        self.births.len()
    }

    pub fn is_empty(&self) -> bool {
        self.births.is_empty()
    }

    /// `{s : birth(s) <= level}`.
    pub fn sublevel(&self, level: Level) -> SimplicialComplex {
        SimplicialComplex::from_closed(
            self.births
                .iter()
                .filter(|(_, &b)| b <= level)
                .map(|(s, _)| s.clone()),
        )
        .expect("sublevel sets of a monotone filtration are complexes")
    }

    /// Simplices up to dimension `max_dim`, ordered by birth, then dimension,
    /// then lexicographically (or reverse-lexicographically).
    pub fn filtration_order(&self, max_dim: usize, reverse_lex: bool) -> Vec<(Simplex, Level)> {
        let mut out: Vec<(Simplex, Level)> = self
            .births
            .iter()
            .filter(|(s, _)| s.dim() <= max_dim)
            .map(|(s, b)| (s.clone(), *b))
            .collect();
        out.sort_by(|(s, b), (t, c)| {
            b.cmp(c).then(s.dim().cmp(&t.dim())).then_with(|| {
                if reverse_lex {
                    t.cmp(s)
                } else {
                    s.cmp(t)
                }
            })
        });
        out
    }
}

/// Per level, an indexed family of subcomplexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredCover {
    levels: Vec<Level>,
    indices: Vec<CoverIndex>,
    elements: BTreeMap<CoverIndex, BTreeMap<Level, SimplicialComplex>>,
}

impl FilteredCover {
    /// Missing `(index, level)` entries denote empty elements.
    pub fn new(
        levels: impl IntoIterator<Item = Level>,
        indices: impl IntoIterator<Item = CoverIndex>,
        elements: BTreeMap<CoverIndex, BTreeMap<Level, SimplicialComplex>>,
    ) -> Result<Self> {
        let mut levels: Vec<Level> = levels.into_iter().collect();
        levels.sort_unstable();
        levels.dedup();
        let mut indices: Vec<CoverIndex> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        for (i, per_level) in &elements {
            if indices.binary_search(i).is_err() {
                return Err(Error::Parse(format!("cover element {i} is not a declared index")));
            }
            for l in per_level.keys() {
                if levels.binary_search(l).is_err() {
                    return Err(Error::Parse(format!("cover element {i} uses undeclared level {l}")));
                }
            }
        }
        Ok(FilteredCover {
            levels,
            indices,
            elements,
        })
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn indices(&self) -> &[CoverIndex] {
        &self.indices
    }

    pub fn element(&self, index: CoverIndex, level: Level) -> &SimplicialComplex {
        self.elements
            .get(&index)
            .and_then(|m| m.get(&level))
            .unwrap_or(&EMPTY)
    }

    /// The nonempty elements at `level`.
    pub fn cover_at(&self, level: Level) -> BTreeMap<CoverIndex, SimplicialComplex> {
        self.indices
            .iter()
            .map(|&i| (i, self.element(i, level)))
            .filter(|(_, e)| !e.is_empty())
            .map(|(i, e)| (i, e.clone()))
            .collect()
    }

    pub fn union_at(&self, level: Level) -> SimplicialComplex {
        self.indices
            .iter()
            .fold(SimplicialComplex::empty(), |acc, &i| acc.union(self.element(i, level)))
    }

    pub fn nerve_at(&self, level: Level) -> SimplicialComplex {
        nerve(&self.cover_at(level))
    }

    /// Filtration whose sublevel at each level is the union of the cover.
    pub fn union_filtration(&self) -> FilteredComplex {
        let mut births: BTreeMap<Simplex, Level> = BTreeMap::new();
        for &l in &self.levels {
            for s in self.union_at(l).iter() {
                births.entry(s.clone()).or_insert(l);
            }
        }
        FilteredComplex::new(births, self.levels.iter().copied())
            .expect("first-appearance births are monotone")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ContractibilityCertificate {
    ClosedSimplex { simplex: Simplex },
    Cone { apex: Vertex },
    /// Free-face pairs `(face, coface)` removed in order, ending at `point`.
    CollapsesToPoint { collapses: Vec<(Simplex, Simplex)>, point: Vertex },
    Uncertified,
}

impl ContractibilityCertificate {
    pub fn is_certified(&self) -> bool {
        !matches!(self, ContractibilityCertificate::Uncertified)
    }
}

/// Sufficient-condition contractibility check: a closed simplex, a cone, or
/// a greedy sequence of elementary collapses down to a point. Never claims
/// that a complex is not contractible.
pub fn certify_contractible(x: &SimplicialComplex) -> ContractibilityCertificate {
    if x.is_empty() {
        return ContractibilityCertificate::Uncertified;
    }
    let maximal = x.maximal_simplices();
    if maximal.len() == 1 {
        return ContractibilityCertificate::ClosedSimplex {
            simplex: maximal[0].clone(),
        };
    }
    if let Some(apex) = x.vertices().find(|&v| maximal.iter().all(|m| m.contains_vertex(v))) {
        return ContractibilityCertificate::Cone { apex };
    }
    match collapse_to_point(x) {
        Some((collapses, point)) => ContractibilityCertificate::CollapsesToPoint { collapses, point },
        None => ContractibilityCertificate::Uncertified,
    }
}

/// Greedy elementary collapses in lexicographic order. Returns the collapse
/// sequence and the surviving vertex if a single vertex remains.
pub fn collapse_to_point(x: &SimplicialComplex) -> Option<(Vec<(Simplex, Simplex)>, Vertex)> {
    let mut cofacets: BTreeMap<Simplex, BTreeSet<Simplex>> = x.iter().map(|s| (s.clone(), BTreeSet::new())).collect();
    for s in x.iter() {
        for (_, f) in s.facets() {
            cofacets.get_mut(&f).unwrap().insert(s.clone());
        }
    }
    let mut collapses = Vec::new();
    loop {
        if cofacets.len() == 1 {
            let last = cofacets.keys().next().unwrap();
            return (last.dim() == 0).then(|| (collapses, last.vertices()[0]));
        }
        // free face: exactly one cofacet, which is itself maximal
        let free = cofacets.iter().find_map(|(face, up)| {
            (up.len() == 1)
                .then(|| up.iter().next().unwrap())
                .filter(|coface| cofacets[*coface].is_empty())
                .map(|coface| (face.clone(), coface.clone()))
        });
        let (face, coface) = free?;
        for removed in [&coface, &face] {
            for (_, f) in removed.facets() {
                if let Some(up) = cofacets.get_mut(&f) {
                    up.remove(removed);
                }
            }
            cofacets.remove(removed);
        }
        collapses.push((face, coface));
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnionCheck {
    pub level: Level,
    pub ok: bool,
    /// simplices of the sublevel complex not covered
    pub missing: Vec<Simplex>,
    /// cover simplices outside the sublevel complex
    pub extra: Vec<Simplex>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NestingCheck {
    pub index: CoverIndex,
    pub level: Level,
    pub later_level: Level,
    pub ok: bool,
    pub missing: Vec<Simplex>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionCheck {
    pub level: Level,
    pub indices: Vec<CoverIndex>,
    pub certificate: ContractibilityCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub levels_match: bool,
    pub union: Vec<UnionCheck>,
    pub nesting: Vec<NestingCheck>,
    pub intersections: Vec<IntersectionCheck>,
}

impl ValidationReport {
    pub fn union_failures(&self) -> usize {
        self.union.iter().filter(|c| !c.ok).count()
    }

    pub fn nesting_failures(&self) -> usize {
        self.nesting.iter().filter(|c| !c.ok).count()
    }

    pub fn uncertified(&self) -> usize {
        self.intersections
            .iter()
            .filter(|c| !c.certificate.is_certified())
            .count()
    }

    /// Union and nesting always count; uncertified intersections count only
    /// in strict mode.
    pub fn passed(&self, strict: bool) -> bool {
        self.levels_match
            && self.union_failures() == 0
            && self.nesting_failures() == 0
            && (!strict || self.uncertified() == 0)
    }

    pub fn summary(&self) -> String {
        format!(
            "levels match: {}, union failures: {}, nesting failures: {}, uncertified intersections: {} of {}",
            self.levels_match,
            self.union_failures(),
            self.nesting_failures(),
            self.uncertified(),
            self.intersections.len()
        )
    }
}

/// Checks the union condition per level, nesting of every element across
/// every level pair, and certifies each nonempty finite intersection.
pub fn validate_filtered_cover(fc: &FilteredCover, f: &FilteredComplex) -> ValidationReport {
    let levels_match = fc.levels() == f.levels();
    let mut union = Vec::new();
    let mut intersections = Vec::new();
    for &l in fc.levels() {
        let covered = fc.union_at(l);
        let sub = f.sublevel(l);
        let missing = sub.difference(&covered);
        let extra = covered.difference(&sub);
        union.push(UnionCheck {
            level: l,
            ok: missing.is_empty() && extra.is_empty(),
            missing,
            extra,
        });

        let cover = fc.cover_at(l);
        let members: Vec<(CoverIndex, &SimplicialComplex)> = cover.iter().map(|(i, e)| (*i, e)).collect();
        let mut stack = Vec::new();
        enumerate_intersections(&members, 0, None, &mut stack, &mut |ids, x| {
            intersections.push(IntersectionCheck {
                level: l,
                indices: ids.to_vec(),
                certificate: certify_contractible(x),
            });
        });
    }
    let mut nesting = Vec::new();
    for &i in fc.indices() {
        for (a, &l) in fc.levels().iter().enumerate() {
            for &later in &fc.levels()[a + 1..] {
                let missing = fc.element(i, l).difference(fc.element(i, later));
                nesting.push(NestingCheck {
                    index: i,
                    level: l,
                    later_level: later,
                    ok: missing.is_empty(),
                    missing,
                });
            }
        }
    }
    ValidationReport {
        levels_match,
        union,
        nesting,
        intersections,
    }
}

fn enumerate_intersections(
    members: &[(CoverIndex, &SimplicialComplex)],
    start: usize,
    current: Option<&SimplicialComplex>,
    stack: &mut Vec<CoverIndex>,
    visit: &mut impl FnMut(&[CoverIndex], &SimplicialComplex),
) {
    for j in start..members.len() {
        let (i, e) = members[j];
        let meet = match current {
            None => e.clone(),
            Some(c) => c.intersection(e),
        };
        if meet.is_empty() {
            continue;
        }
        stack.push(i);
        visit(stack, &meet);
        enumerate_intersections(members, j + 1, Some(&meet), stack, visit);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::make_complex;

    fn cx(lists: &[&[u32]]) -> SimplicialComplex {
        make_complex(&lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn s(vs: &[u32]) -> Simplex {
        Simplex::new(vs.iter().copied()).unwrap()
    }

    /// Triangle [0,1,2] with edges born at 1 and the fill at 2.
    fn staged_triangle() -> FilteredComplex {
        let mut births = BTreeMap::new();
        for v in 0..3 {
            births.insert(Simplex::vertex(v), 0);
        }
        for e in [[0, 1], [1, 2], [0, 2]] {
            births.insert(s(&e), 1);
        }
        births.insert(s(&[0, 1, 2]), 2);
        FilteredComplex::from_births(births).unwrap()
    }

    #[test]
    fn sublevels() {
        let f = staged_triangle();
        assert_eq!(f.sublevel(1), cx(&[&[0, 1], &[1, 2], &[0, 2]]));
        let all = FilteredComplex::constant(&cx(&[&[0, 1, 2]]), 0);
        assert_eq!(all.sublevel(0), cx(&[&[0, 1, 2]]));
        let shifted = FilteredComplex::constant(&cx(&[&[0, 1]]), 3);
        assert!(shifted.sublevel(2).is_empty());
        for l in 0..3 {
            assert!(f.sublevel(l).is_subcomplex_of(&f.sublevel(l + 1)));
        }
    }

    #[test]
    fn rejects_non_monotone() {
        let mut births = BTreeMap::new();
        births.insert(Simplex::vertex(0), 2);
        births.insert(Simplex::vertex(1), 0);
        births.insert(s(&[0, 1]), 1);
        assert!(matches!(
            FilteredComplex::from_births(births),
            Err(Error::NonMonotone { .. })
        ));
    }

    #[test]
    fn closed_simplex_certificate() {
        assert!(matches!(
            certify_contractible(&cx(&[&[0, 1, 2]])),
            ContractibilityCertificate::ClosedSimplex { .. }
        ));
    }

    #[test]
    fn cone_and_collapse_certificates() {
        // two triangles sharing the edge [1,2]: vertices 1 and 2 are apexes
        let pair = cx(&[&[0, 1, 2], &[1, 2, 3]]);
        assert_eq!(certify_contractible(&pair), ContractibilityCertificate::Cone { apex: 1 });
        assert!(collapse_to_point(&pair).is_some());

        // a strip of four triangles has no common vertex but collapses
        let strip = cx(&[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let cert = certify_contractible(&strip);
        let ContractibilityCertificate::CollapsesToPoint { collapses, .. } = cert else {
            panic!("expected a collapse certificate, got {cert:?}");
        };
        assert_eq!(collapses.len(), (strip.len() - 1) / 2);
    }

    #[test]
    fn hollow_triangle_is_uncertified() {
        assert_eq!(
            certify_contractible(&cx(&[&[0, 1], &[1, 2], &[0, 2]])),
            ContractibilityCertificate::Uncertified
        );
        assert_eq!(
            certify_contractible(&SimplicialComplex::empty()),
            ContractibilityCertificate::Uncertified
        );
    }

    fn cover_by_maximal(x: &SimplicialComplex) -> FilteredCover {
        let elements = x
            .maximal_simplices()
            .iter()
            .enumerate()
            .map(|(i, m)| (i as CoverIndex, [(0, SimplicialComplex::from_maximal([m]))].into()))
            .collect::<BTreeMap<_, _>>();
        let n = elements.len() as CoverIndex;
        FilteredCover::new([0], 0..n, elements).unwrap()
    }

    #[test]
    fn maximal_simplex_cover_is_certified() {
        let x = cx(&[&[0, 1, 2], &[2, 3], &[3, 4, 5], &[0, 5]]);
        let fc = cover_by_maximal(&x);
        let report = validate_filtered_cover(&fc, &FilteredComplex::constant(&x, 0));
        assert!(report.passed(true), "{}", report.summary());
        // brute force: each pairwise intersection is a face or empty
        for c in &report.intersections {
            assert!(matches!(c.certificate, ContractibilityCertificate::ClosedSimplex { .. }));
        }
        assert_eq!(report.intersections.len(), fc.nerve_at(0).len());
    }

    #[test]
    fn detects_nesting_violation() {
        let big = cx(&[&[0, 1]]);
        let small = cx(&[&[0]]);
        let elements: BTreeMap<_, _> = [
            (0, [(0, big.clone()), (1, small.clone())].into()),
            (1, [(0, big.clone()), (1, big.clone())].into()),
        ]
        .into();
        let fc = FilteredCover::new([0, 1], [0, 1], elements).unwrap();
        let report = validate_filtered_cover(&fc, &fc.union_filtration());
        assert_eq!(report.nesting_failures(), 1);
        assert_eq!(report.union_failures(), 0);
        assert!(!report.passed(false));
    }

    #[test]
    fn detects_union_gap() {
        let x = cx(&[&[0, 1, 2]]);
        let elements: BTreeMap<_, _> = [(0, [(0, cx(&[&[0, 1]]))].into())].into();
        let fc = FilteredCover::new([0], [0], elements).unwrap();
        let report = validate_filtered_cover(&fc, &FilteredComplex::constant(&x, 0));
        assert_eq!(report.union_failures(), 1);
        assert!(report.union[0].missing.contains(&s(&[0, 1, 2])));
    }
}
