//! Verification campaigns: many generated (or one hand-built) filtered
//! covers pushed through every check, with a deterministic JSON report.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{boundary, Chain};
use crate::error::{Error, Result};
use crate::filtration::{validate_filtered_cover, FilteredComplex, FilteredCover, Level};
use crate::generator::{generate_good_filtered_cover, GeneratorParams, GrowthMode};
use crate::io::FilteredCoverDoc;
use crate::nervemap::{
    source_cycle_basis, verify_cylinder_identity, verify_lemma_tech, CompatiblePair, LemmaCheck, NerveMapSetup,
};
use crate::persistence::oracle::oracle_table;
use crate::persistence::{compare_persistence, hypothesis_error, persistence_barcode, PersistentBettiTable};
use crate::ring::{is_prime, Ring};
use crate::simplex::{OrderedSimplex, Simplex, Vertex};

pub const TOOL_NAME: &str = "persnerve";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Failures kept in full in the report; the tallies count all of them.
const MAX_RECORDED_FAILURES: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub instances: usize,
    /// random cycles per (instance, lower level, upper level)
    pub cycles: usize,
    /// top homological degree for cycles and Betti tables
    pub max_dim: usize,
    pub field: u32,
    /// treat uncertified intersections as hypothesis violations
    pub strict: bool,
    /// random compatible pairs per degree for the cylinder identity
    pub cylinder_pairs: usize,
    pub cylinder_max_degree: usize,
    /// how many extra instances may be drawn while no witness of
    /// non-commuting chain maps has turned up
    pub witness_retries: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            instances: 50,
            cycles: 5,
            max_dim: 2,
            field: 2,
            strict: true,
            cylinder_pairs: 200,
            cylinder_max_degree: 5,
            witness_retries: 50,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CampaignStatus {
    Pass,
    TheoremFailure,
    HypothesisViolation,
    UnderPowered,
}

impl CampaignStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            CampaignStatus::Pass => 0,
            CampaignStatus::TheoremFailure => 1,
            CampaignStatus::HypothesisViolation => 2,
            CampaignStatus::UnderPowered => 3,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.checked += other.checked;
        self.failed += other.failed;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaTally {
    pub checked: usize,
    pub containment_failures: usize,
    pub identity_failures: usize,
    pub certification_failures: usize,
    pub thetas_differ: usize,
}

impl LemmaTally {
    fn record(&mut self, c: &LemmaCheck) {
        self.checked += 1;
        self.containment_failures += usize::from(!c.contained);
        self.identity_failures += usize::from(!c.identity);
        self.certification_failures += usize::from(!c.certified);
        self.thetas_differ += usize::from(c.thetas_differ);
    }

    fn merge(&mut self, o: &LemmaTally) {
        self.checked += o.checked;
        self.containment_failures += o.containment_failures;
        self.identity_failures += o.identity_failures;
        self.certification_failures += o.certification_failures;
        self.thetas_differ += o.thetas_differ;
    }

    fn failed(&self) -> bool {
        self.containment_failures + self.identity_failures + self.certification_failures > 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tallies {
    pub instances: usize,
    pub validation: Tally,
    pub cylinder_identity: Tally,
    pub cylinder_cycles: Tally,
    pub lemma: LemmaTally,
    /// complex versus nerve persistent Betti tables
    pub persistence: Tally,
    /// barcode-derived tables versus the rank formula
    pub oracle: Tally,
    pub hypothesis_violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub check: String,
    pub instance: Option<usize>,
    pub detail: serde_json::Value,
}

/// A cycle on which `Θ^l_*` and `Θ^u_*` disagree as chains although their
/// difference is a boundary.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub instance: usize,
    pub instance_seed: u64,
    pub cover: FilteredCoverDoc,
    pub lower: Level,
    pub upper: Level,
    pub degree: usize,
    pub cycle: Chain,
    pub theta_lower: Chain,
    pub theta_upper: Chain,
    /// order-complex vertex id to the base simplex it stands for
    pub source_vertices: BTreeMap<Vertex, Simplex>,
    /// nerve order-complex vertex id to its nerve simplex
    pub target_vertices: BTreeMap<Vertex, Simplex>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceSummary {
    pub index: usize,
    pub seed: u64,
    pub params: Option<GeneratorParams>,
    pub simplices: usize,
    pub levels: usize,
    pub lemma_checks: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub tool: Tool,
    pub config: CampaignConfig,
    pub status: CampaignStatus,
    pub exit_code: i32,
    pub tallies: Tallies,
    pub failures: Vec<Failure>,
    pub witness: Option<Witness>,
    pub instances: Vec<InstanceSummary>,
}

impl CampaignReport {
    pub fn summary(&self) -> String {
        let t = &self.tallies;
        let line = |name: &str, x: &Tally| format!("{name:<22} {:>6} checked {:>4} failed\n", x.checked, x.failed);
        let mut s = format!("{TOOL_NAME} {TOOL_VERSION} verify, seed {}\n", self.config.seed);
        s += &format!("{:<22} {:>6}\n", "instances", t.instances);
        s += &line("cover validation", &t.validation);
        s += &line("cylinder identity", &t.cylinder_identity);
        s += &line("cylinder on cycles", &t.cylinder_cycles);
        s += &format!(
            "{:<22} {:>6} checked {:>4} containment {:>4} identity {:>4} certification, {} with differing images\n",
            "chain homotopy",
            t.lemma.checked,
            t.lemma.containment_failures,
            t.lemma.identity_failures,
            t.lemma.certification_failures,
            t.lemma.thetas_differ
        );
        s += &line("complex vs nerve", &t.persistence);
        s += &line("barcode vs rank", &t.oracle);
        s += &format!("{:<22} {:>6}\n", "hypothesis violations", t.hypothesis_violations);
        match &self.witness {
            Some(w) => {
                s += &format!(
                    "witness: instance {} levels {}..{} degree {}\n",
                    w.instance, w.lower, w.upper, w.degree
                )
            }
            None => s += "witness: none\n",
        }
        s += &format!("status: {:?} (exit {})\n", self.status, self.exit_code);
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeTally {
    pub degree: usize,
    pub identity: Tally,
    pub cycles: Tally,
}

#[derive(Clone, Debug, Serialize)]
pub struct CylinderReport {
    pub tool: Tool,
    pub seed: u64,
    pub pairs_per_degree: usize,
    pub degrees: Vec<DegreeTally>,
    pub failures: Vec<Failure>,
}

impl CylinderReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.identity.failed == 0 && d.cycles.failed == 0)
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{TOOL_NAME} {TOOL_VERSION} cylinder-check, seed {}\n", self.seed);
        for d in &self.degrees {
            s += &format!(
                "degree {}: identity {}/{} hold, cycles {}/{} hold\n",
                d.degree,
                d.identity.checked - d.identity.failed,
                d.identity.checked,
                d.cycles.checked - d.cycles.failed,
                d.cycles.checked
            );
        }
        s += if self.passed() { "status: pass\n" } else { "status: failure\n" };
        s
    }
}

/// For each degree up to `max_degree`: `pairs` random compatible chain
/// pairs checked against the cylinder boundary formula, and a tenth as many
/// compatible cycle pairs checked against `∂Cyl = μ1 - μ2`.
pub fn run_cylinder_checks(seed: u64, pairs: usize, max_degree: usize) -> CylinderReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degrees = Vec::new();
    let mut failures = Vec::new();
    for k in 0..=max_degree {
        let mut identity = Tally::default();
        for _ in 0..pairs {
            let pair = random_compatible_pair(&mut rng, k);
            let check = verify_cylinder_identity(&pair);
            identity.record(check.holds);
            if !check.holds {
                failures.push(Failure {
                    check: "cylinder-identity".into(),
                    instance: None,
                    detail: serde_json::json!({ "degree": k, "residual": check.residual.to_string() }),
                });
            }
        }
        let mut cycles = Tally::default();
        for _ in 0..(pairs / 10).max(1) {
            let pair = random_compatible_cycle_pair(&mut rng, k);
            let ok = pair.cyl_chain().boundary() == pair.first().sub(&pair.second());
            cycles.record(ok);
            if !ok {
                failures.push(Failure {
                    check: "cylinder-on-cycles".into(),
                    instance: None,
                    detail: serde_json::json!({ "degree": k }),
                });
            }
        }
        degrees.push(DegreeTally {
            degree: k,
            identity,
            cycles,
        });
    }
    failures.truncate(MAX_RECORDED_FAILURES);
    CylinderReport {
        tool: Tool {
            name: TOOL_NAME,
            version: TOOL_VERSION,
        },
        seed,
        pairs_per_degree: pairs,
        degrees,
        failures,
    }
}

/// Collected per instance and merged in instance order.
#[derive(Default)]
struct InstanceOutcome {
    tallies: Tallies,
    failures: Vec<Failure>,
    witness: Option<Witness>,
    summary: Option<InstanceSummary>,
}

fn instance_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Parameters vary per instance within the generator's bounds.
pub fn instance_params(rng: &mut ChaCha8Rng) -> GeneratorParams {
    let top_dim = rng.gen_range(1..=3);
    let n_vertices = rng.gen_range(top_dim + 5..=24);
    GeneratorParams {
        n_vertices,
        top_dim,
        n_levels: rng.gen_range(2..=6),
        growth_mode: if rng.gen_bool(0.5) {
            GrowthMode::Activation
        } else {
            GrowthMode::FaceGrowth
        },
        n_maximal: rng.gen_range(3..=10),
        max_multiplicity: rng.gen_range(2..=4),
    }
}

pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    check_config(config)?;
    let outcomes: Vec<InstanceOutcome> = (0..config.instances)
        .into_par_iter()
        .map(|i| generated_instance(config, i))
        .collect();
    let mut outcomes = outcomes;
    if config.instances > 0 {
        let mut next = config.instances;
        while outcomes.iter().all(|o| o.witness.is_none()) && next < config.instances + config.witness_retries {
            outcomes.push(generated_instance(config, next));
            next += 1;
        }
    }
    Ok(assemble(config, outcomes))
}

/// One hand-built cover in place of generated ones.
pub fn run_campaign_on(config: &CampaignConfig, f: &FilteredComplex, fc: &FilteredCover) -> Result<CampaignReport> {
    check_config(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(config.seed, 0));
    let outcome = check_instance(config, 0, config.seed, None, f, fc, &mut rng);
    Ok(assemble(config, vec![outcome]))
}

fn check_config(config: &CampaignConfig) -> Result<()> {
    if !is_prime(config.field) {
        return Err(Error::NotPrime(config.field));
    }
    Ok(())
}

fn assemble(config: &CampaignConfig, outcomes: Vec<InstanceOutcome>) -> CampaignReport {
    let mut tallies = Tallies::default();
    let mut failures = Vec::new();
    let mut witness: Option<Witness> = None;
    let mut instances = Vec::new();
    for o in outcomes {
        tallies.instances += usize::from(o.summary.is_some());
        tallies.validation.merge(&o.tallies.validation);
        tallies.lemma.merge(&o.tallies.lemma);
        tallies.persistence.merge(&o.tallies.persistence);
        tallies.oracle.merge(&o.tallies.oracle);
        tallies.hypothesis_violations += o.tallies.hypothesis_violations;
        failures.extend(o.failures);
        // prefer the witness in the highest degree, then the earliest
        if let Some(w) = o.witness {
            if witness.as_ref().is_none_or(|cur| w.degree > cur.degree) {
                witness = Some(w);
            }
        }
        instances.extend(o.summary);
    }

    let cyl = run_cylinder_checks(config.seed, config.cylinder_pairs, config.cylinder_max_degree);
    for d in &cyl.degrees {
        tallies.cylinder_identity.merge(&d.identity);
        tallies.cylinder_cycles.merge(&d.cycles);
    }
    failures.extend(cyl.failures);
    failures.truncate(MAX_RECORDED_FAILURES);

    let theorem_failure = tallies.cylinder_identity.failed > 0
        || tallies.cylinder_cycles.failed > 0
        || tallies.lemma.failed()
        || tallies.persistence.failed > 0
        || tallies.oracle.failed > 0;
    let status = if theorem_failure {
        CampaignStatus::TheoremFailure
    } else if tallies.hypothesis_violations > 0 {
        CampaignStatus::HypothesisViolation
    } else if tallies.instances == 0 || witness.is_none() {
        CampaignStatus::UnderPowered
    } else {
        CampaignStatus::Pass
    };
    CampaignReport {
        tool: Tool {
            name: TOOL_NAME,
            version: TOOL_VERSION,
        },
        config: config.clone(),
        status,
        exit_code: status.exit_code(),
        tallies,
        failures,
        witness,
        instances,
    }
}

fn generated_instance(config: &CampaignConfig, index: usize) -> InstanceOutcome {
    let seed = instance_seed(config.seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = instance_params(&mut rng);
    // a tight multiplicity cap can leave no room for every maximal simplex
    let mut generated = generate_good_filtered_cover(seed, &params);
    while generated.is_err() && params.n_maximal > 1 {
        params.n_maximal -= 1;
        generated = generate_good_filtered_cover(seed, &params);
    }
    match generated {
        Ok(inst) => check_instance(config, index, seed, Some(params), &inst.filtration, &inst.cover, &mut rng),
        Err(e) => {
            let mut o = InstanceOutcome::default();
            o.tallies.hypothesis_violations += 1;
            o.failures.push(Failure {
                check: "generator".into(),
                instance: Some(index),
                detail: serde_json::json!({ "error": e.to_string() }),
            });
            o
        }
    }
}

fn check_instance(
    config: &CampaignConfig,
    index: usize,
    seed: u64,
    params: Option<GeneratorParams>,
    f: &FilteredComplex,
    fc: &FilteredCover,
    rng: &mut ChaCha8Rng,
) -> InstanceOutcome {
    let mut o = InstanceOutcome {
        summary: Some(InstanceSummary {
            index,
            seed,
            params,
            simplices: f.len(),
            levels: fc.levels().len(),
            lemma_checks: 0,
        }),
        ..Default::default()
    };
    let fail = |o: &mut InstanceOutcome, check: &str, detail: serde_json::Value| {
        o.failures.push(Failure {
            check: check.into(),
            instance: Some(index),
            detail,
        });
    };

    let report = validate_filtered_cover(fc, f);
    let valid = report.passed(config.strict);
    o.tallies.validation.record(valid);
    if !valid {
        o.tallies.hypothesis_violations += 1;
        let e = hypothesis_error(&report);
        fail(&mut o, "hypothesis", serde_json::json!({ "error": e.to_string(), "report": report }));
        return o;
    }

    match compare_persistence(f, fc, config.max_dim, config.field) {
        Ok(cmp) => {
            o.tallies.persistence.record(cmp.equal());
            if !cmp.equal() {
                fail(&mut o, "complex-vs-nerve", serde_json::json!({ "mismatches": cmp.mismatches }));
            }
        }
        Err(e) => {
            o.tallies.hypothesis_violations += 1;
            fail(&mut o, "complex-vs-nerve", serde_json::json!({ "error": e.to_string() }));
        }
    }

    let oracle = oracle_table(f, config.max_dim, config.field).and_then(|oracle| {
        let bc = persistence_barcode(f, config.max_dim, config.field)?;
        Ok((oracle, PersistentBettiTable::from_barcode(&bc, f.levels(), config.max_dim)))
    });
    match oracle {
        Ok((oracle, table)) => {
            let mismatches = table.mismatches(&oracle);
            o.tallies.oracle.record(mismatches.is_empty());
            if !mismatches.is_empty() {
                fail(&mut o, "barcode-vs-rank", serde_json::json!({ "mismatches": mismatches }));
            }
        }
        Err(e) => fail(&mut o, "barcode-vs-rank", serde_json::json!({ "error": e.to_string() })),
    }

    if let Err(e) = lemma_checks(config, index, seed, fc, rng, &mut o) {
        o.tallies.hypothesis_violations += 1;
        fail(&mut o, "chain-homotopy", serde_json::json!({ "error": e.to_string() }));
    }
    if let Some(s) = o.summary.as_mut() {
        s.lemma_checks = o.tallies.lemma.checked;
    }
    o
}

fn lemma_checks(
    config: &CampaignConfig,
    index: usize,
    seed: u64,
    fc: &FilteredCover,
    rng: &mut ChaCha8Rng,
    o: &mut InstanceOutcome,
) -> Result<()> {
    let levels = fc.levels().to_vec();
    let Some(&top) = levels.last() else {
        return Ok(());
    };
    let base = NerveMapSetup::new(fc, top)?;
    // cycle bases per lower level, shared across upper levels
    let mut bases: BTreeMap<(Level, usize), (Vec<Chain>, Vec<Simplex>)> = BTreeMap::new();
    for &l in &levels[..levels.len() - 1] {
        let sub = base.subdivision_at(l, fc);
        for k in 0..=config.max_dim {
            let basis = source_cycle_basis(&base, fc, l, k);
            let cofaces: Vec<Simplex> = sub.simplices(k + 1).cloned().collect();
            bases.insert((l, k), (basis, cofaces));
        }
    }
    for (ui, &u) in levels.iter().enumerate().skip(1) {
        let setup = if u == top { None } else { Some(NerveMapSetup::new(fc, u)?) };
        let setup = setup.as_ref().unwrap_or(&base);
        for &l in &levels[..ui] {
            let degrees: Vec<usize> = (0..=config.max_dim).filter(|&k| !bases[&(l, k)].0.is_empty()).collect();
            if degrees.is_empty() {
                continue;
            }
            for j in 0..config.cycles {
                let k = degrees[j % degrees.len()];
                let (basis, cofaces) = &bases[&(l, k)];
                let mu = random_cycle(rng, basis, cofaces, k);
                let check = verify_lemma_tech(setup, l, &mu, config.field)?;
                o.tallies.lemma.record(&check);
                if !check.passed() {
                    o.failures.push(Failure {
                        check: "chain-homotopy".into(),
                        instance: Some(index),
                        detail: serde_json::json!({ "cycle": mu, "check": check }),
                    });
                }
                let better = o.witness.as_ref().is_none_or(|w| k > w.degree);
                if check.passed() && check.thetas_differ && better {
                    o.witness = Some(witness(index, seed, fc, setup, &mu, &check));
                }
            }
        }
    }
    Ok(())
}

fn witness(index: usize, seed: u64, fc: &FilteredCover, setup: &NerveMapSetup, mu: &Chain, c: &LemmaCheck) -> Witness {
    let source_vertices = mu
        .support()
        .flat_map(|s| s.vertices().iter().copied())
        .map(|v| (v, setup.source_map().simplex(v).clone()))
        .collect();
    let target_vertices = c
        .theta_lower
        .support()
        .chain(c.theta_upper.support())
        .flat_map(|s| s.vertices().iter().copied())
        .map(|v| (v, setup.target_map().simplex(v).clone()))
        .collect();
    Witness {
        instance: index,
        instance_seed: seed,
        cover: FilteredCoverDoc::from_cover(fc),
        lower: c.lower,
        upper: c.upper,
        degree: c.degree,
        cycle: mu.clone(),
        theta_lower: c.theta_lower.clone(),
        theta_upper: c.theta_upper.clone(),
        source_vertices,
        target_vertices,
    }
}

fn small_coeff(rng: &mut ChaCha8Rng) -> BigInt {
    BigInt::from(*[-2, -1, 1, 2].choose(rng).expect("nonempty"))
}

/// A nonzero combination of basis cycles, sometimes plus a boundary.
fn random_cycle(rng: &mut ChaCha8Rng, basis: &[Chain], cofaces: &[Simplex], k: usize) -> Chain {
    for _ in 0..16 {
        let mut c = Chain::zero(Ring::Integers, k);
        for _ in 0..rng.gen_range(1..=basis.len().min(3)) {
            let b = basis.choose(rng).expect("nonempty basis");
            c = c.add(&b.scale(&small_coeff(rng)));
        }
        if !cofaces.is_empty() && rng.gen_bool(0.5) {
            let s = cofaces.choose(rng).expect("nonempty");
            c = c.add(&boundary(&OrderedSimplex::from(s), Ring::Integers).scale(&small_coeff(rng)));
        }
        if !c.is_zero() {
            return c;
        }
    }
    basis[0].clone()
}

fn random_ordered(rng: &mut ChaCha8Rng, k: usize, n_vertices: Vertex) -> OrderedSimplex {
    let all: Vec<Vertex> = (0..n_vertices).collect();
    let vs: Vec<Vertex> = all.choose_multiple(rng, k + 1).copied().collect();
    let mut vs = vs;
    vs.shuffle(rng);
    OrderedSimplex::new(vs).expect("distinct")
}

/// Independent random ordered simplices paired termwise, coefficients in
/// `-3..=3`.
pub fn random_compatible_pair(rng: &mut ChaCha8Rng, k: usize) -> CompatiblePair {
    let n = rng.gen_range(1..=4);
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    for _ in 0..n {
        let a = BigInt::from(rng.gen_range(-3..=3));
        first.push((a.clone(), random_ordered(rng, k, 12)));
        second.push((a, random_ordered(rng, k, 12)));
    }
    CompatiblePair::new(first, second).expect("built compatible")
}

/// Boundary of a cross-polytope: a `k`-sphere on vertices `0..2k+2`,
/// vertex `2i` at `+e_i` and `2i+1` at `-e_i`.
pub fn sphere_cycle(k: usize) -> Chain {
    let mut c = Chain::zero(Ring::Integers, k);
    for signs in 0u32..(1 << (k + 1)) {
        let vs: Vec<Vertex> = (0..=k as u32).map(|i| 2 * i + ((signs >> i) & 1)).collect();
        let negative = signs.count_ones() % 2 == 1;
        c.add_ordered(
            &OrderedSimplex::new(vs).expect("distinct"),
            BigInt::from(if negative { -1 } else { 1 }),
        );
    }
    c
}

/// A cycle `μ` built from a relabelled sphere plus boundaries, paired with
/// a relabelled copy of itself.
pub fn random_compatible_cycle_pair(rng: &mut ChaCha8Rng, k: usize) -> CompatiblePair {
    let n: Vertex = 2 * k as Vertex + 6;
    let mut labels: Vec<Vertex> = (0..n).collect();
    labels.shuffle(rng);
    let w = BigInt::from(rng.gen_range(1..=3));
    let mut mu = Chain::zero(Ring::Integers, k);
    for (s, a) in sphere_cycle(k).terms() {
        let os = OrderedSimplex::new(s.vertices().iter().map(|&v| labels[v as usize]).collect()).expect("distinct");
        mu.add_ordered(&os, a * &w);
    }
    for _ in 0..rng.gen_range(1..=3) {
        let s = random_ordered(rng, k + 1, n);
        mu = mu.add(&boundary(&s, Ring::Integers).scale(&BigInt::from(rng.gen_range(-3..=3))));
    }
    let offset = n + rng.gen_range(0..5);
    let mut image: Vec<Vertex> = (offset..offset + n).collect();
    image.shuffle(rng);
    CompatiblePair::relabelled(&mu, |v| image[v as usize]).expect("injective relabelling")
}
