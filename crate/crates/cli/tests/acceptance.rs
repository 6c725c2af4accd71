//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Expected values come from oracles written here, independent of the
//! library code they check: a separate formal-chain evaluator for the
//! cylinder formula, bitset linear algebra over Z/2 for homology ranks,
//! brute-force enclosing circles, and a subset-intersection nerve.

use std::collections::{BTreeMap, HashMap};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use persnerve::campaign::{run_campaign, CampaignConfig, CampaignReport};
use persnerve::filtration::{FilteredComplex, FilteredCover, Level};
use persnerve::generator::generate_good_filtered_cover;
use persnerve::geometry::{alpha2d_filtration, cech_filtration, compare_geometric, PointCloud};
use persnerve::io::FilteredCoverDoc;
use persnerve::nervemap::{verify_cylinder_identity, CompatiblePair, CylVertex, FormalCylinderChain};
use persnerve::order::{barycentric_subdivision, face_poset, order_complex};
use persnerve::persistence::oracle::{betti_rank_nullity, oracle_table};
use persnerve::persistence::{compare_persistence, persistence_barcode, PersistentBettiTable};
use persnerve::{boundary_chain, Chain, OrderedSimplex, Ring, Simplex, SimplicialComplex};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let mut all_ok = true;
    let start = Instant::now();
    let campaign = campaign_report();
    let criteria: Vec<Criterion> = vec![
        ("1 cylinder boundary formula", Box::new(criterion_cylinder_identity)),
        ("2 cylinder of compatible cycles", Box::new(criterion_cylinder_cycles)),
        ("3 chain maps differ by boundaries", Box::new(|| criterion_lemma(&campaign))),
        ("4 complex and nerve persistence agree", Box::new(|| criterion_nerve_tables(&campaign))),
        ("5 barcodes match the rank formula", Box::new(|| criterion_oracle(&campaign))),
        ("6 non-commuting witness", Box::new(|| criterion_witness(&campaign))),
        ("7 Cech and alpha filtrations", Box::new(criterion_geometry)),
        ("8 subdivision preserves Betti numbers", Box::new(criterion_subdivision)),
        ("9 deterministic verify reports", Box::new(criterion_determinism)),
    ];
    for (name, check) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS  {name:<40} {secs:>7.2}s  {msg}"),
            Err(msg) => {
                all_ok = false;
                println!("FAIL  {name:<40} {secs:>7.2}s  {msg}");
            }
        }
    }
    println!("acceptance finished in {:.2}s", start.elapsed().as_secs_f64());
    if !all_ok {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed.as_secs() < limit_secs, || {
        format!("took {:.1}s, budget {limit_secs}s", elapsed.as_secs_f64())
    })
}

// ---------------------------------------------------------------------------
// Formal chains on the doubled vertex set, evaluated independently.

type Tuple = Vec<(u8, u32)>;

#[derive(Default, Clone, PartialEq, Debug)]
struct Formal(BTreeMap<Tuple, i64>);

impl Formal {
    fn add(&mut self, mut vs: Tuple, a: i64) {
        // bubble sort counting transpositions
        let mut sign = 1;
        for i in 0..vs.len() {
            for j in 0..vs.len() - 1 - i {
                if vs[j] > vs[j + 1] {
                    vs.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let e = self.0.entry(vs.clone()).or_insert(0);
        *e += sign * a;
        if *e == 0 {
            self.0.remove(&vs);
        }
    }

    fn plus(&self, other: &Formal, scale: i64) -> Formal {
        let mut out = self.clone();
        for (k, a) in &other.0 {
            out.add(k.clone(), scale * a);
        }
        out
    }

    fn boundary(&self) -> Formal {
        let mut out = Formal::default();
        for (k, a) in &self.0 {
            if k.len() < 2 {
                continue;
            }
            for j in 0..k.len() {
                let mut f = k.clone();
                f.remove(j);
                out.add(f, if j % 2 == 0 { *a } else { -*a });
            }
        }
        out
    }
}

fn oracle_cyl(terms: &[(i64, Vec<u32>, Vec<u32>)]) -> Formal {
    let mut out = Formal::default();
    for (a, v, w) in terms {
        for t in 0..v.len() {
            let vs: Tuple = v[..=t].iter().map(|&x| (0, x)).chain(w[t..].iter().map(|&x| (1, x))).collect();
            out.add(vs, if t % 2 == 0 { -*a } else { *a });
        }
    }
    out
}

fn oracle_side(terms: &[(i64, Vec<u32>, Vec<u32>)], marked: bool) -> Formal {
    let mut out = Formal::default();
    for (a, v, w) in terms {
        let (tag, xs) = if marked { (1, w) } else { (0, v) };
        out.add(xs.iter().map(|&x| (tag, x)).collect(), *a);
    }
    out
}

fn oracle_pair_boundary(terms: &[(i64, Vec<u32>, Vec<u32>)]) -> Vec<(i64, Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for (a, v, w) in terms {
        if v.len() < 2 {
            continue;
        }
        for j in 0..v.len() {
            let (mut v2, mut w2) = (v.clone(), w.clone());
            v2.remove(j);
            w2.remove(j);
            out.push((if j % 2 == 0 { *a } else { -*a }, v2, w2));
        }
    }
    out
}

fn to_formal(c: &FormalCylinderChain) -> Formal {
    let mut out = Formal::default();
    for (vs, a) in c.terms() {
        let t: Tuple = vs
            .iter()
            .map(|v| match *v {
                CylVertex::Base(x) => (0, x),
                CylVertex::Marked(x) => (1, x),
            })
            .collect();
        out.add(t, i64::try_from(a.clone()).expect("small coefficient"));
    }
    out
}

fn random_tuple(rng: &mut ChaCha8Rng, k: usize, n: u32) -> Vec<u32> {
    let mut all: Vec<u32> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k + 1);
    all
}

fn to_pair(terms: &[(i64, Vec<u32>, Vec<u32>)]) -> CompatiblePair {
    let first = terms.iter().map(|(a, v, _)| (BigInt::from(*a), OrderedSimplex::new(v.clone()).unwrap())).collect();
    let second = terms.iter().map(|(a, _, w)| (BigInt::from(*a), OrderedSimplex::new(w.clone()).unwrap())).collect();
    CompatiblePair::new(first, second).unwrap()
}

fn criterion_cylinder_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for k in 0..=5 {
        for _ in 0..200 {
            let n_terms = rng.gen_range(1..=4);
            let terms: Vec<(i64, Vec<u32>, Vec<u32>)> = (0..n_terms)
                .map(|_| {
                    let a = rng.gen_range(-3..=3);
                    (a, random_tuple(&mut rng, k, 10), random_tuple(&mut rng, k, 10))
                })
                .collect();
            // oracle: the residual vanishes
            let lhs = oracle_cyl(&terms).boundary();
            let rhs = oracle_side(&terms, false)
                .plus(&oracle_side(&terms, true), -1)
                .plus(&oracle_cyl(&oracle_pair_boundary(&terms)), -1);
            ensure(lhs == rhs, || format!("oracle residual nonzero at k = {k}"))?;
            // library agrees with the oracle and reports a zero residual
            let pair = to_pair(&terms);
            ensure(to_formal(&pair.cyl_chain()) == oracle_cyl(&terms), || format!("Cyl differs at k = {k}"))?;
            let check = verify_cylinder_identity(&pair);
            ensure(check.holds && check.residual.is_zero(), || {
                format!("residual {} at k = {k}", check.residual)
            })?;
            checked += 1;
        }
    }
    within(start.elapsed(), 10)?;
    Ok(format!("{checked} pairs, k = 0..5, residual 0"))
}

/// Boundary of the (k+1)-dimensional cross-polytope on `2k + 2` labels.
fn oracle_sphere(k: usize, labels: &[u32]) -> Vec<(i64, Vec<u32>)> {
    (0u32..1 << (k + 1))
        .map(|signs| {
            let vs: Vec<u32> = (0..=k).map(|i| labels[2 * i + ((signs >> i) & 1) as usize]).collect();
            (if signs.count_ones() % 2 == 0 { 1 } else { -1 }, vs)
        })
        .collect()
}

fn criterion_cylinder_cycles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for k in 0..=4 {
        for _ in 0..50 {
            let n = 2 * k as u32 + 6;
            let mut labels: Vec<u32> = (0..n).collect();
            labels.shuffle(&mut rng);
            let mut mu = Chain::zero(Ring::Integers, k);
            let weight = rng.gen_range(1..=3);
            for (a, vs) in oracle_sphere(k, &labels) {
                mu.add_ordered(&OrderedSimplex::new(vs).unwrap(), BigInt::from(a * weight));
            }
            for _ in 0..rng.gen_range(0..=3) {
                let s = Simplex::new(random_tuple(&mut rng, k + 1, n)).unwrap();
                let b = boundary_chain(&Chain::from_simplex(Ring::Integers, s));
                mu = mu.add(&b.scale(&BigInt::from(rng.gen_range(-3..=3))));
            }
            ensure(boundary_chain(&mu).is_zero(), || "constructed chain is not a cycle".into())?;
            let mut image: Vec<u32> = (100..100 + n).collect();
            image.shuffle(&mut rng);
            let pair = CompatiblePair::relabelled(&mu, |v| image[v as usize]).unwrap();
            let d = pair.cyl_chain().boundary();
            ensure(d == pair.first().sub(&pair.second()), || format!("dCyl != mu1 - mu2 at k = {k}"))?;
            // and through the independent evaluator
            let terms: Vec<(i64, Vec<u32>, Vec<u32>)> = pair
                .terms()
                .iter()
                .map(|(a, s, t)| (i64::try_from(a.clone()).unwrap(), s.vertices().to_vec(), t.vertices().to_vec()))
                .collect();
            let lhs = oracle_cyl(&terms).boundary();
            ensure(lhs == oracle_side(&terms, false).plus(&oracle_side(&terms, true), -1), || {
                format!("oracle dCyl != mu1 - mu2 at k = {k}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cycle pairs, k = 0..4"))
}

// ---------------------------------------------------------------------------
// Z/2 linear algebra on bitsets.

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zero(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
    fn xor(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a ^= b;
        }
    }
    fn top(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }
}

/// Column reduction; returns the rank and, per column that reduced to zero,
/// the combination of columns summing to zero.
fn reduce(cols: &[Bits], n_cols: usize) -> (usize, Vec<Bits>) {
    let mut pivots: HashMap<usize, (Bits, Bits)> = HashMap::new();
    let mut kernel = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut c = c.clone();
        let mut comb = Bits::zero(n_cols);
        comb.flip(j);
        while let Some(t) = c.top() {
            match pivots.get(&t) {
                Some((pc, pcomb)) => {
                    c.xor(pc);
                    comb.xor(pcomb);
                }
                None => break,
            }
        }
        match c.top() {
            Some(t) => {
                pivots.insert(t, (c, comb));
            }
            None => kernel.push(comb),
        }
    }
    (pivots.len(), kernel)
}

fn boundary_columns(src: &[Simplex], rows: &HashMap<Simplex, usize>) -> Vec<Bits> {
    src.iter()
        .map(|s| {
            let mut b = Bits::zero(rows.len());
            if s.dim() > 0 {
                for j in 0..=s.dim() {
                    let mut vs = s.vertices().to_vec();
                    vs.remove(j);
                    b.flip(rows[&Simplex::new(vs).unwrap()]);
                }
            }
            b
        })
        .collect()
}

fn indexed(x: &SimplicialComplex, k: usize) -> (Vec<Simplex>, HashMap<Simplex, usize>) {
    let list: Vec<Simplex> = x.iter().filter(|s| s.dim() == k).cloned().collect();
    let idx = list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    (list, idx)
}

fn gf2_betti(x: &SimplicialComplex, k: usize) -> usize {
    let (ck, _) = indexed(x, k);
    let rank = |d: usize| {
        if d == 0 {
            return 0;
        }
        let (src, _) = indexed(x, d);
        let (_, rows) = indexed(x, d - 1);
        reduce(&boundary_columns(&src, &rows), src.len()).0
    };
    ck.len() - rank(k) - rank(k + 1)
}

/// dim of the image of H_k(lower) in H_k(upper), over Z/2.
fn gf2_persistent_betti(lower: &SimplicialComplex, upper: &SimplicialComplex, k: usize) -> usize {
    let (ck_low, _) = indexed(lower, k);
    if ck_low.is_empty() {
        return 0;
    }
    let (_, idx_up) = indexed(upper, k);
    let cycles: Vec<Vec<usize>> = if k == 0 {
        (0..ck_low.len()).map(|i| vec![i]).collect()
    } else {
        let (_, rows) = indexed(lower, k - 1);
        let (_, ker) = reduce(&boundary_columns(&ck_low, &rows), ck_low.len());
        ker.iter()
            .map(|b| (0..ck_low.len()).filter(|&i| b.0[i / 64] >> (i % 64) & 1 == 1).collect())
            .collect()
    };
    let (up_next, _) = indexed(upper, k + 1);
    let bounds = boundary_columns(&up_next, &idx_up);
    let rank_b = reduce(&bounds, bounds.len()).0;
    let mut all = bounds;
    for z in cycles {
        let mut b = Bits::zero(idx_up.len());
        for i in z {
            b.flip(idx_up[&ck_low[i]]);
        }
        all.push(b);
    }
    let n = all.len();
    reduce(&all, n).0 - rank_b
}

fn gf2_table(f: &FilteredComplex, max_dim: usize) -> PersistentBettiTable {
    PersistentBettiTable::build(f.levels(), max_dim, |k, l, p| {
        gf2_persistent_betti(&f.sublevel(l), &f.sublevel(l + p), k)
    })
}

/// `S` is a nerve simplex iff the elements indexed by `S` share a simplex.
fn oracle_nerve_filtration(fc: &FilteredCover) -> FilteredComplex {
    let mut births: BTreeMap<Simplex, Level> = BTreeMap::new();
    for &l in fc.levels() {
        let live: Vec<u32> = fc.indices().iter().copied().filter(|&i| !fc.element(i, l).is_empty()).collect();
        for mask in 1u64..(1 << live.len()) {
            let subset: Vec<u32> = (0..live.len()).filter(|b| mask >> b & 1 == 1).map(|b| live[b]).collect();
            let mut common = fc.element(subset[0], l).clone();
            for &i in &subset[1..] {
                common = common.intersection(fc.element(i, l));
            }
            if !common.is_empty() {
                births.entry(Simplex::new(subset).unwrap()).or_insert(l);
            }
        }
    }
    FilteredComplex::new(births, fc.levels().iter().copied()).unwrap()
}

// ---------------------------------------------------------------------------
// Campaign-based criteria.

fn campaign_config() -> CampaignConfig {
    CampaignConfig {
        seed: 7,
        instances: 50,
        cycles: 5,
        max_dim: 2,
        field: 2,
        strict: true,
        ..Default::default()
    }
}

struct Campaign {
    report: CampaignReport,
    elapsed: Duration,
    instances: Vec<(FilteredComplex, FilteredCover)>,
}

fn campaign_report() -> Campaign {
    let start = Instant::now();
    let report = run_campaign(&campaign_config()).expect("campaign runs");
    let elapsed = start.elapsed();
    let instances = report
        .instances
        .iter()
        .map(|s| {
            let inst = generate_good_filtered_cover(s.seed, s.params.as_ref().unwrap()).unwrap();
            (inst.filtration, inst.cover)
        })
        .collect();
    Campaign {
        report,
        elapsed,
        instances,
    }
}

fn criterion_lemma(c: &Campaign) -> Outcome {
    let r = &c.report;
    let t = &r.tallies.lemma;
    ensure(r.tallies.instances >= 50, || format!("only {} instances", r.tallies.instances))?;
    for s in &r.instances {
        let p = s.params.as_ref().unwrap();
        ensure(p.n_vertices <= 32 && p.top_dim <= 3 && p.n_levels <= 8, || {
            format!("instance {} exceeds size bounds: {p:?}", s.index)
        })?;
        let pairs = s.levels * (s.levels - 1) / 2;
        ensure(s.lemma_checks >= 5 * pairs, || {
            format!("instance {}: {} cycles for {pairs} level pairs", s.index, s.lemma_checks)
        })?;
    }
    ensure(
        t.containment_failures == 0 && t.identity_failures == 0 && t.certification_failures == 0,
        || format!("{t:?}"),
    )?;
    ensure(r.tallies.hypothesis_violations == 0, || "hypothesis violations".into())?;
    within(c.elapsed, 300)?;
    Ok(format!(
        "{} instances, {} cycles, 0 failures, campaign {:.1}s",
        r.tallies.instances,
        t.checked,
        c.elapsed.as_secs_f64()
    ))
}

fn criterion_nerve_tables(c: &Campaign) -> Outcome {
    let mut entries = 0;
    for (i, (f, fc)) in c.instances.iter().enumerate() {
        let left = gf2_table(f, 2);
        let nerve_f = oracle_nerve_filtration(fc);
        let right = gf2_table(&nerve_f, 2);
        let m = left.mismatches(&right);
        ensure(m.is_empty(), || format!("instance {i}: {} mismatches", m.len()))?;
        let lib = compare_persistence(f, fc, 2, 2).map_err(|e| e.to_string())?;
        ensure(lib.equal(), || format!("instance {i}: library comparison mismatches"))?;
        ensure(lib.complex_table == left, || format!("instance {i}: library table differs from oracle"))?;
        entries += left.len();
    }
    ensure(c.report.tallies.persistence.failed == 0, || "campaign reported mismatches".into())?;
    Ok(format!("{} instances, {entries} table entries, 0 mismatches", c.instances.len()))
}

fn criterion_oracle(c: &Campaign) -> Outcome {
    let mut entries = 0;
    for (i, (f, _)) in c.instances.iter().enumerate() {
        let bc = persistence_barcode(f, 2, 2).map_err(|e| e.to_string())?;
        let table = PersistentBettiTable::from_barcode(&bc, f.levels(), 2);
        let quotient = oracle_table(f, 2, 2).map_err(|e| e.to_string())?;
        ensure(table.mismatches(&quotient).is_empty(), || format!("instance {i}: barcode vs quotient"))?;
        ensure(table == gf2_table(f, 2), || format!("instance {i}: barcode vs bitset oracle"))?;
        for &l in f.levels() {
            let x = f.sublevel(l);
            for k in 0..=2 {
                let plain = betti_rank_nullity(&x, k, 2).map_err(|e| e.to_string())?;
                ensure(table.get(k, l, 0) == Some(plain) && plain == gf2_betti(&x, k), || {
                    format!("instance {i}: p = 0 at level {l}, k = {k}")
                })?;
            }
        }
        entries += table.len();
    }
    Ok(format!("{} instances, {entries} entries", c.instances.len()))
}

fn criterion_witness(c: &Campaign) -> Outcome {
    let w = c.report.witness.as_ref().ok_or("no witness")?;
    let json = serde_json::to_value(w).map_err(|e| e.to_string())?;
    for key in ["cycle", "theta_lower", "theta_upper", "cover", "lower", "upper"] {
        ensure(json.get(key).is_some(), || format!("witness JSON lacks {key}"))?;
    }
    let cycle: Chain = serde_json::from_value(json["cycle"].clone()).map_err(|e| e.to_string())?;
    let lower: Chain = serde_json::from_value(json["theta_lower"].clone()).map_err(|e| e.to_string())?;
    let upper: Chain = serde_json::from_value(json["theta_upper"].clone()).map_err(|e| e.to_string())?;
    ensure(boundary_chain(&cycle).is_zero(), || "witness is not a cycle".into())?;
    ensure(lower != upper, || "images agree".into())?;

    // rebuild the nerve order complex from the serialized cover
    let doc: FilteredCoverDoc = serde_json::from_value(json["cover"].clone()).map_err(|e| e.to_string())?;
    let fc = doc.to_cover().map_err(|e| e.to_string())?;
    let nerve = fc.nerve_at(w.upper);
    let (target, map) = order_complex(&face_poset(&nerve));
    for (id, s) in &w.target_vertices {
        ensure(map.simplex(*id) == s, || format!("vertex {id} does not stand for {s}"))?;
    }
    let difference = lower.sub(&upper);
    let k = difference.degree();
    let (_, rows) = indexed(&target, k);
    let (next, _) = indexed(&target, k + 1);
    let mut cols = boundary_columns(&next, &rows);
    let rank_b = reduce(&cols, cols.len()).0;
    let mut d = Bits::zero(rows.len());
    for (s, a) in difference.terms() {
        if a % 2 != BigInt::from(0) {
            d.flip(*rows.get(s).ok_or("difference leaves the nerve order complex")?);
        }
    }
    cols.push(d);
    let n = cols.len();
    ensure(reduce(&cols, n).0 == rank_b, || "difference is not a boundary mod 2".into())?;
    Ok(format!(
        "instance {}, levels {}..{}, degree {}, {} cycle terms",
        w.instance,
        w.lower,
        w.upper,
        w.degree,
        cycle.len()
    ))
}

// ---------------------------------------------------------------------------
// Geometry.

fn oracle_enclosing_radius(pts: &[[f64; 2]]) -> f64 {
    let d = |a: [f64; 2], b: [f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
    let encloses = |c: [f64; 2], r: f64| pts.iter().all(|&p| d(p, c) <= r * (1.0 + 1e-9) + 1e-12);
    let mut best = f64::INFINITY;
    if pts.len() == 1 {
        return 0.0;
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let c = [(pts[i][0] + pts[j][0]) / 2.0, (pts[i][1] + pts[j][1]) / 2.0];
            let r = d(pts[i], pts[j]) / 2.0;
            if encloses(c, r) {
                best = best.min(r);
            }
            for l in j + 1..pts.len() {
                let (a, b, cc) = (pts[i], pts[j], pts[l]);
                let den = 2.0 * (a[0] * (b[1] - cc[1]) + b[0] * (cc[1] - a[1]) + cc[0] * (a[1] - b[1]));
                if den.abs() < 1e-15 {
                    continue;
                }
                let sq = |p: [f64; 2]| p[0] * p[0] + p[1] * p[1];
                let ux = (sq(a) * (b[1] - cc[1]) + sq(b) * (cc[1] - a[1]) + sq(cc) * (a[1] - b[1])) / den;
                let uy = (sq(a) * (cc[0] - b[0]) + sq(b) * (a[0] - cc[0]) + sq(cc) * (b[0] - a[0])) / den;
                let r = d(a, [ux, uy]);
                if encloses([ux, uy], r) {
                    best = best.min(r);
                }
            }
        }
    }
    best
}

fn criterion_geometry() -> Outcome {
    let start = Instant::now();
    let tri = PointCloud::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 3f64.sqrt() / 2.0]]).unwrap();
    let g = cech_filtration(&tri, 2).map_err(|e| e.to_string())?;
    let bc = persistence_barcode(&g.filtration, 1, 2).map_err(|e| e.to_string())?;
    let h1: Vec<_> = g.real_barcode(&bc).into_iter().filter(|iv| iv.dim == 1).collect();
    ensure(h1.len() == 1, || format!("{} H1 intervals", h1.len()))?;
    let death = h1[0].death.ok_or("H1 interval never dies")?;
    ensure((h1[0].birth - 0.5).abs() < 1e-9 && (death - 1.0 / 3f64.sqrt()).abs() < 1e-9, || {
        format!("H1 interval [{}, {death})", h1[0].birth)
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut compared = 0;
    for cloud_index in 0..20 {
        let n = rng.gen_range(5..=25);
        let pts: Vec<[f64; 2]> = (0..n).map(|_| [rng.gen::<f64>(), rng.gen::<f64>()]).collect();
        let cloud = PointCloud::new(pts.iter().map(|p| p.to_vec()).collect()).unwrap();
        let cech = cech_filtration(&cloud, 2).map_err(|e| e.to_string())?;
        let alpha = alpha2d_filtration(&cloud).map_err(|e| e.to_string())?;
        for s in cech.filtration.births().keys() {
            let sub: Vec<[f64; 2]> = s.vertices().iter().map(|&v| pts[v as usize]).collect();
            let expect = oracle_enclosing_radius(&sub);
            let got = cech.real_birth(s).unwrap();
            ensure((got - expect).abs() < 1e-9, || format!("cloud {cloud_index}: {s} born {got}, oracle {expect}"))?;
        }
        for s in alpha.filtration.births().keys() {
            ensure(alpha.real_birth(s).unwrap() >= cech.real_birth(s).unwrap() - 1e-9, || {
                format!("cloud {cloud_index}: alpha birth of {s} precedes Cech")
            })?;
        }
        let cmp = compare_geometric(&cech, &alpha, 1, 2).map_err(|e| e.to_string())?;
        ensure(cmp.equal(), || format!("cloud {cloud_index}: {} table mismatches", cmp.mismatches.len()))?;
        compared += cmp.left.len();
    }
    within(start.elapsed(), 120)?;
    Ok(format!("triangle H1 [0.5, 0.5773503), 20 clouds, {compared} table entries equal"))
}

fn criterion_subdivision() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut done = 0;
    while done < 50 {
        let n_vertices = rng.gen_range(3..=7);
        let mut x = SimplicialComplex::empty();
        for _ in 0..rng.gen_range(1..=6) {
            let dim = rng.gen_range(0..=3.min(n_vertices - 1));
            let s = Simplex::new(random_tuple(&mut rng, dim, n_vertices as u32)).unwrap();
            let mut y = x.clone();
            y.insert_with_faces(&s);
            if y.len() <= 20 {
                x = y;
            }
        }
        if x.is_empty() {
            continue;
        }
        let (sd, map) = barycentric_subdivision(&x);
        ensure(map.len() == x.len(), || "one subdivision vertex per simplex".into())?;
        for k in 0..=2 {
            let (a, b) = (gf2_betti(&x, k), gf2_betti(&sd, k));
            ensure(a == b, || format!("beta_{k}: {a} before, {b} after subdividing {x:?}"))?;
        }
        done += 1;
    }
    Ok("50 complexes, beta_0..2 preserved over Z/2".into())
}

fn criterion_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("persnerve-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for run in 0..2 {
        let out = dir.join(format!("report{run}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_persnerve"))
            .args(["verify", "--seed", "7", "--instances", "50", "--cycles", "5", "--out"])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.code() == Some(0), || format!("exit code {:?}", status.status.code()))?;
        reports.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    ensure(reports[0] == reports[1], || "reports differ".into())?;
    Ok(format!("two runs, {} identical bytes", reports[0].len()))
}
