//! Random good filtered covers.
//!
//! A complex is drawn as a union of maximal simplices and the cover is
//! indexed by those simplices. Every cover element at every level is the
//! closure of a face of its maximal simplex, so all nonempty intersections
//! are closed simplices and the good-cover hypothesis holds by construction.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::filtration::{FilteredComplex, FilteredCover, Level};
use crate::order::CoverIndex;
use crate::simplex::{Simplex, Vertex};

pub const MAX_VERTICES: usize = 32;
pub const MAX_TOP_DIM: usize = 4;
pub const MAX_LEVELS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthMode {
    /// Element `i` is empty below its activation level and the closed
    /// maximal simplex from then on.
    Activation,
    /// Element `i` is the closure of a growing chain of faces of maximal
    /// simplex `i`, reaching the whole simplex at the last level.
    FaceGrowth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub n_vertices: usize,
    pub top_dim: usize,
    pub n_levels: usize,
    pub growth_mode: GrowthMode,
    /// number of maximal simplices (cover elements)
    pub n_maximal: usize,
    /// cap on how many maximal simplices share a vertex; bounds the nerve
    /// dimension by `max_multiplicity - 1`
    pub max_multiplicity: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            n_vertices: 10,
            top_dim: 2,
            n_levels: 4,
            growth_mode: GrowthMode::Activation,
            n_maximal: 6,
            max_multiplicity: 4,
        }
    }
}

impl GeneratorParams {
    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::GeneratorParams(msg));
        if self.n_vertices == 0 || self.n_vertices > MAX_VERTICES {
            return fail(format!("n_vertices must be in 1..={MAX_VERTICES}"));
        }
        if self.top_dim > MAX_TOP_DIM || self.top_dim + 1 > self.n_vertices {
            return fail(format!(
                "top_dim must be at most {MAX_TOP_DIM} and below n_vertices"
            ));
        }
        if self.n_levels == 0 || self.n_levels > MAX_LEVELS {
            return fail(format!("n_levels must be in 1..={MAX_LEVELS}"));
        }
        if self.n_maximal == 0 || self.max_multiplicity == 0 {
            return fail("n_maximal and max_multiplicity must be positive".into());
        }
        if self.n_maximal > self.n_vertices * self.max_multiplicity {
            return fail("too many maximal simplices for the multiplicity cap".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    pub seed: u64,
    pub params: GeneratorParams,
    /// the maximal simplex indexing each cover element
    pub maximal: Vec<Simplex>,
    pub filtration: FilteredComplex,
    pub cover: FilteredCover,
}

const MAX_ATTEMPTS: usize = 10_000;

/// Deterministic in `seed`.
pub fn generate_good_filtered_cover(seed: u64, params: &GeneratorParams) -> Result<GeneratedInstance> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maximal = draw_maximal_simplices(&mut rng, params)?;
    let n_levels = params.n_levels as Level;

    let mut elements: BTreeMap<CoverIndex, BTreeMap<Level, SimplicialComplex>> = BTreeMap::new();
    match params.growth_mode {
        GrowthMode::Activation => {
            for (i, m) in maximal.iter().enumerate() {
                // element 0 is active from the start so level 0 is nonempty
                let act = if i == 0 { 0 } else { rng.gen_range(0..n_levels) };
                let closed = SimplicialComplex::from_maximal([m]);
                let per_level = (act..n_levels).map(|l| (l, closed.clone())).collect();
                elements.insert(i as CoverIndex, per_level);
            }
        }
        GrowthMode::FaceGrowth => {
            for (i, m) in maximal.iter().enumerate() {
                let mut order: Vec<Vertex> = m.vertices().to_vec();
                order.shuffle(&mut rng);
                let full = order.len();
                let mut sizes: Vec<usize> = (0..n_levels - 1).map(|_| rng.gen_range(0..=full)).collect();
                sizes.sort_unstable();
                sizes.push(full);
                if i == 0 {
                    sizes.iter_mut().for_each(|n| *n = (*n).max(1));
                }
                let per_level = sizes
                    .iter()
                    .enumerate()
                    .filter(|(_, &n)| n > 0)
                    .map(|(l, &n)| {
                        let face = Simplex::new(order[..n].iter().copied()).expect("distinct vertices");
                        (l as Level, SimplicialComplex::from_maximal([&face]))
                    })
                    .collect();
                elements.insert(i as CoverIndex, per_level);
            }
        }
    }
    let cover = FilteredCover::new(0..n_levels, 0..maximal.len() as CoverIndex, elements)?;
    let filtration = cover.union_filtration();
    Ok(GeneratedInstance {
        seed,
        params: params.clone(),
        maximal,
        filtration,
        cover,
    })
}

fn draw_maximal_simplices(rng: &mut ChaCha8Rng, params: &GeneratorParams) -> Result<Vec<Simplex>> {
    let mut chosen: Vec<Simplex> = Vec::new();
    let mut multiplicity = vec![0usize; params.n_vertices];
    let all: Vec<Vertex> = (0..params.n_vertices as Vertex).collect();
    for _ in 0..MAX_ATTEMPTS {
        if chosen.len() == params.n_maximal {
            break;
        }
        // favour the top dimension so the instance has some bulk
        let dim = if params.top_dim == 0 || rng.gen_bool(0.6) {
            params.top_dim
        } else {
            rng.gen_range(1..=params.top_dim)
        };
        let vs: Vec<Vertex> = all.choose_multiple(rng, dim + 1).copied().collect();
        if vs.iter().any(|&v| multiplicity[v as usize] >= params.max_multiplicity) {
            continue;
        }
        let s = Simplex::new(vs).expect("distinct vertices");
        if chosen.iter().any(|c| c.is_face_of(&s) || s.is_face_of(c)) {
            continue;
        }
        for &v in s.vertices() {
            multiplicity[v as usize] += 1;
        }
        chosen.push(s);
    }
    if chosen.len() < params.n_maximal {
        return Err(Error::GeneratorParams(format!(
            "could only place {} of {} maximal simplices",
            chosen.len(),
            params.n_maximal
        )));
    }
    Ok(chosen)
}
