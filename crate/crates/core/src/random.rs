//! Uniform sampling of relations and PBRs, random generators for tests, and
//! the seeded Monte Carlo runs on random products.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitMatrix;
use crate::classical::{brel_compose, BinaryRelation, Partition};
use crate::compose::compose;
use crate::error::{Error, Result};
use crate::factor::full_product_conditions;
use crate::oriented::{OMorphism, OObject};
use crate::pbr::{labels, Pbr};

/// Name of the generator behind every experiment stream.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9), seed_from_u64(seed), stream = (n << 32) | trial";

/// Generator for trial `trial` at size `n`.
pub fn trial_rng(seed: u64, n: usize, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | trial);
    rng
}

/// Each cell set independently with probability 1/2.
pub fn uniform_matrix<R: RngCore + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> BitMatrix {
    let mut m = BitMatrix::new(rows, cols);
    let tail = cols % 64;
    for i in 0..rows {
        let row = m.row_mut(i);
        for w in row.iter_mut() {
            *w = rng.next_u64();
        }
        if tail != 0 {
            if let Some(last) = row.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
    m
}

/// Uniform relation on an `n`-element set `x0..`.
pub fn sample_relation<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> BinaryRelation {
    let x = labels("x", n);
    BinaryRelation::from_successors(x.clone(), x, uniform_matrix(n, n, rng)).expect("generated labels")
}

/// Uniform PBR on `(X, X)` with `|X| = n`.
pub fn sample_pbr<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Pbr {
    let x = labels("x", n);
    Pbr::from_adjacency(x.clone(), x, uniform_matrix(2 * n, 2 * n, rng)).expect("generated labels")
}

/// PBR on the given sides with each possible edge present with probability
/// `density`.
pub fn random_pbr<R: Rng + ?Sized>(rng: &mut R, domain: &[String], codomain: &[String], density: f64) -> Pbr {
    let n = domain.len() + codomain.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(density))
        .collect();
    Pbr::from_indices(domain.to_vec(), codomain.to_vec(), edges).expect("distinct labels")
}

pub fn random_relation<R: Rng + ?Sized>(
    rng: &mut R,
    domain: &[String],
    codomain: &[String],
    density: f64,
) -> BinaryRelation {
    let mut r = BinaryRelation::empty(domain.to_vec(), codomain.to_vec()).expect("distinct labels");
    for i in 0..domain.len() {
        for j in 0..codomain.len() {
            if rng.random_bool(density) {
                r.insert(i, j);
            }
        }
    }
    r
}

/// Random set partition: each vertex joins a uniformly chosen earlier block
/// or opens a new one.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, domain: &[String], codomain: &[String]) -> Partition {
    let n = domain.len() + codomain.len();
    let mut ids = Vec::with_capacity(n);
    let mut blocks = 0;
    for _ in 0..n {
        let b = rng.random_range(0..=blocks);
        if b == blocks {
            blocks += 1;
        }
        ids.push(b);
    }
    Partition::from_block_ids(domain.to_vec(), codomain.to_vec(), &ids).expect("distinct labels")
}

/// Random oriented partial Brauer diagram: vertices are shuffled, then
/// paired off with probability `density` per pair and a random direction.
pub fn random_partial_brauer<R: Rng + ?Sized>(
    rng: &mut R,
    domain: &[String],
    codomain: &[String],
    density: f64,
) -> Pbr {
    let n = domain.len() + codomain.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for pair in order.chunks_exact(2) {
        if rng.random_bool(density) {
            let (u, v) = if rng.random() {
                (pair[0], pair[1])
            } else {
                (pair[1], pair[0])
            };
            edges.push((u, v));
        }
    }
    Pbr::from_indices(domain.to_vec(), codomain.to_vec(), edges).expect("distinct labels")
}

/// Random planar oriented partial Brauer diagram: a random non-crossing
/// matching on the boundary circle, each chord kept with probability
/// `density` and given a random direction.
pub fn random_planar_partial_brauer<R: Rng + ?Sized>(
    rng: &mut R,
    domain: &[String],
    codomain: &[String],
    density: f64,
) -> Pbr {
    let (d, c) = (domain.len(), codomain.len());
    // circle order: codomain top to bottom, then domain bottom to top
    let circle: Vec<usize> = (d..d + c).chain((0..d).rev()).collect();
    let mut stack: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    for &v in &circle {
        // close the innermost open chord or open a new one
        if !stack.is_empty() && rng.random_bool(0.5) {
            let u = stack.pop().unwrap();
            if rng.random_bool(density) {
                edges.push(if rng.random() { (u, v) } else { (v, u) });
            }
        } else {
            stack.push(v);
        }
    }
    Pbr::from_indices(domain.to_vec(), codomain.to_vec(), edges).expect("distinct labels")
}

/// Random object `(X₁, X₂)` with `|X₂| = n`.
pub fn random_object<R: Rng + ?Sized>(rng: &mut R, prefix: &str, n: usize) -> OObject {
    let outer = labels(prefix, n);
    let inner: Vec<String> = outer.iter().filter(|_| rng.random()).cloned().collect();
    OObject::new(outer, &inner).expect("generated labels")
}

/// Random total morphism `source → target` with exponent below 4, if the
/// objects admit one.
pub fn random_o_morphism<R: Rng + ?Sized>(rng: &mut R, source: &OObject, target: &OObject) -> Option<OMorphism> {
    let (d, c) = (source.outer().len(), target.outer().len());
    // arrow tails and heads, in the PBR index space
    let mut tails: Vec<usize> = (0..d).filter(|&i| source.is_inner(i)).collect();
    tails.extend((0..c).filter(|&j| !target.is_inner(j)).map(|j| d + j));
    let mut heads: Vec<usize> = (0..c).filter(|&j| target.is_inner(j)).map(|j| d + j).collect();
    heads.extend((0..d).filter(|&i| !source.is_inner(i)));
    if tails.len() != heads.len() {
        return None;
    }
    heads.shuffle(rng);
    let diagram = Pbr::from_indices(
        source.outer().to_vec(),
        target.outer().to_vec(),
        tails.into_iter().zip(heads),
    )
    .expect("distinct labels");
    Some(OMorphism::new(source.clone(), target.clone(), diagram, rng.random_range(0..4)).expect("polarity holds"))
}

/// Random object with `n` outer elements whose balance matches `other`, so
/// that morphisms `other → result` exist: `|X₁| - |X₂∖X₁|` must agree.
pub fn random_balanced_object<R: Rng + ?Sized>(
    rng: &mut R,
    prefix: &str,
    n: usize,
    other: &OObject,
) -> Option<OObject> {
    let balance = |o: &OObject| {
        let inner = o.inner().len() as i64;
        2 * inner - o.outer().len() as i64
    };
    let target = balance(other);
    // 2k - n = target
    let k2 = target + n as i64;
    if k2 < 0 || k2 % 2 != 0 || k2 / 2 > n as i64 {
        return None;
    }
    let outer = labels(prefix, n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let inner: Vec<String> = idx[..(k2 / 2) as usize].iter().map(|&i| outer[i].clone()).collect();
    Some(OObject::new(outer, &inner).expect("generated labels"))
}

/// Which product a Monte Carlo run samples.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `a ∘ a'` for two uniform relations on `X`.
    BinaryPair,
    /// `a ∘ a' ∘ a''` for three uniform relations on `X`.
    BinaryTriple,
    /// `β ∘ α` for two uniform PBRs on `(X, X)`.
    PbrPair,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::BinaryPair => "binary-pair",
            Mode::BinaryTriple => "binary-triple",
            Mode::PbrPair => "pbr-pair",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "binary-pair" => Ok(Mode::BinaryPair),
            "binary-triple" => Ok(Mode::BinaryTriple),
            "pbr-pair" => Ok(Mode::PbrPair),
            _ => Err(Error::InvalidConfig(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    pub samples_per_size: u64,
    pub seed: u64,
    pub mode: Mode,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::InvalidConfig("no sizes given".into()));
        }
        if self.samples_per_size == 0 {
            return Err(Error::InvalidConfig("samples per size must be positive".into()));
        }
        if self.samples_per_size > u32::MAX as u64 {
            return Err(Error::InvalidConfig("too many samples per size".into()));
        }
        Ok(())
    }
}

/// Outcome for one size.
#[derive(Clone, PartialEq, Debug)]
pub struct SizeRecord {
    pub n: usize,
    pub trials: u64,
    pub full_count: u64,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Samples on which the in-sample sufficiency check applied.
    pub check_fired: u64,
    /// Samples on which it applied and the product was not full.
    pub check_failures: u64,
}

#[derive(Clone, PartialEq, Debug)]
pub struct ExperimentResult {
    pub mode: Mode,
    pub seed: u64,
    pub rng: &'static str,
    pub records: Vec<SizeRecord>,
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.96f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[derive(Clone, Copy, Default)]
struct Tally {
    full: u64,
    fired: u64,
    failures: u64,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            full: self.full + o.full,
            fired: self.fired + o.fired,
            failures: self.failures + o.failures,
        }
    }
}

fn run_trial(mode: Mode, n: usize, rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    match mode {
        Mode::BinaryPair => {
            let a = sample_relation(n, rng);
            let a1 = sample_relation(n, rng);
            t.full = brel_compose(&a, &a1).expect("same shape").is_full() as u64;
        }
        Mode::BinaryTriple => {
            let a = sample_relation(n, rng);
            let a1 = sample_relation(n, rng);
            let a2 = sample_relation(n, rng);
            let tail = brel_compose(&a1, &a2).expect("same shape");
            let full = brel_compose(&a, &tail).expect("same shape").is_full();
            t.full = full as u64;
            if tail.is_full() && brel_compose(&a, &a1).expect("same shape").is_full() {
                t.fired = 1;
                t.failures = (!full) as u64;
            }
        }
        Mode::PbrPair => {
            let alpha = sample_pbr(n, rng);
            let beta = sample_pbr(n, rng);
            let full = compose(&beta, &alpha).expect("same shape").adjacency().is_full();
            t.full = full as u64;
            if full_product_conditions(&beta, &alpha) {
                t.fired = 1;
                t.failures = (!full) as u64;
            }
        }
    }
    t
}

/// Runs the configured experiment. Trials run in parallel; every trial has
/// its own stream, so results depend only on the configuration.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let records = cfg
        .sizes
        .iter()
        .map(|&n| {
            let t = (0..cfg.samples_per_size)
                .into_par_iter()
                .map(|trial| run_trial(cfg.mode, n, &mut trial_rng(cfg.seed, n, trial)))
                .reduce(Tally::default, Tally::add);
            let (ci_low, ci_high) = wilson_interval(t.full, cfg.samples_per_size);
            SizeRecord {
                n,
                trials: cfg.samples_per_size,
                full_count: t.full,
                fraction: t.full as f64 / cfg.samples_per_size as f64,
                ci_low,
                ci_high,
                check_fired: t.fired,
                check_failures: t.failures,
            }
        })
        .collect();
    Ok(ExperimentResult {
        mode: cfg.mode,
        seed: cfg.seed,
        rng: RNG_ALGORITHM,
        records,
    })
}

#[derive(Serialize)]
struct CsvRow {
    mode: &'static str,
    n: usize,
    trials: u64,
    full_count: u64,
    fraction: f64,
    ci_low: f64,
    ci_high: f64,
    seed: u64,
}

/// Writes one CSV row per size under the header
/// `mode,n,trials,full_count,fraction,ci_low,ci_high,seed`.
pub fn write_csv<W: Write>(result: &ExperimentResult, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in &result.records {
        w.serialize(CsvRow {
            mode: result.mode.as_str(),
            n: r.n,
            trials: r.trials,
            full_count: r.full_count,
            fraction: r.fraction,
            ci_low: r.ci_low,
            ci_high: r.ci_high,
            seed: result.seed,
        })?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oriented::{is_oriented_brauer, is_oriented_partial_brauer, is_planar};

    #[test]
    fn uniform_matrix_masks_tail() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = uniform_matrix(3, 5, &mut rng);
        assert!(m.ones().all(|(_, j)| j < 5));
        assert_eq!(sample_relation(0, &mut rng).pairs().len(), 0);
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && hi > 0.5 && lo > 0.39 && hi < 0.61);
        assert_eq!(wilson_interval(0, 10).0, 0.0);
        assert_eq!(wilson_interval(10, 10).1, 1.0);
    }

    #[test]
    fn generators_respect_their_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (x, y) = (labels("x", 4), labels("y", 5));
        for _ in 0..200 {
            assert!(is_oriented_partial_brauer(&random_partial_brauer(
                &mut rng, &x, &y, 0.8
            )));
            let p = random_planar_partial_brauer(&mut rng, &x, &y, 0.8);
            assert!(is_planar(&p).unwrap());
            let s = random_object(&mut rng, "x", 3);
            if let Some(t) = random_balanced_object(&mut rng, "y", 5, &s) {
                let m = random_o_morphism(&mut rng, &s, &t).expect("balanced objects");
                assert!(is_oriented_brauer(m.diagram()));
            }
        }
    }

    #[test]
    fn experiment_is_deterministic_and_csv_has_header() {
        let cfg = ExperimentConfig {
            sizes: vec![1, 3],
            samples_per_size: 200,
            seed: 5,
            mode: Mode::BinaryTriple,
        };
        let a = run_experiment(&cfg).unwrap();
        assert_eq!(a, run_experiment(&cfg).unwrap());
        let mut buf = Vec::new();
        write_csv(&a, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("mode,n,trials,full_count,fraction,ci_low,ci_high,seed\n"));
        assert_eq!(text.lines().count(), 3);
        assert!(run_experiment(&ExperimentConfig { sizes: vec![], ..cfg }).is_err());
    }
}
