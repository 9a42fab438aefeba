use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{word_to_nf, GroupId, Representation};
use crate::gen::Gen;
use crate::tapevm::Sym;
use crate::thompson::ExpSeq;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeRow {
    pub n: usize,
    pub max_steps: u64,
    pub max_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearityReport {
    pub group: GroupId,
    pub gen: Gen,
    pub samples_per_size: usize,
    pub sizes: Vec<SizeRow>,
    /// Least-squares slope of log(max_steps) against log(n).
    pub slope: f64,
    pub verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticReport {
    pub group: GroupId,
    pub samples_per_size: usize,
    /// `n` is the word length, `max_ratio` is steps / n².
    pub sizes: Vec<SizeRow>,
    pub verdict: bool,
}

/// One oracle walk, snapshotting the encoded normal form the first time it
/// reaches each size.
fn walk_ladder(rep: &Representation, sizes: &[usize], rng: &mut ChaCha8Rng) -> Vec<Vec<Sym>> {
    let gens = rep.gens();
    let mut e = rep.oracle_identity();
    let mut nf = rep.identity_nf();
    let mut out = Vec::with_capacity(sizes.len());
    for &n in sizes {
        while nf.len() < n {
            // |nf| grows about linearly along the walk; stepping a quarter of
            // the remaining gap keeps the number of encodes logarithmic.
            for _ in 0..((n - nf.len()) / 4).max(16) {
                rep.oracle_mul_mut(&mut e, gens[rng.gen_range(0..gens.len())]);
            }
            nf = rep.encode(&e).expect("wreath groups have an encoder");
        }
        out.push(nf.clone());
    }
    out
}

/// Random exponent: mostly small, sometimes zero, occasionally a long run.
fn exponent(rng: &mut ChaCha8Rng, n: usize) -> u64 {
    if rng.gen_bool(0.3) {
        0
    } else if rng.gen_bool(0.05) {
        rng.gen_range(1..=(n / 16).max(1)) as u64
    } else {
        let mut k = 1;
        while rng.gen_bool(0.5) {
            k += 1;
        }
        k
    }
}

/// Random exponent sequence whose spelling has at least `n` symbols.
fn random_expseq(n: usize, rng: &mut ChaCha8Rng) -> ExpSeq {
    let mut e = ExpSeq::identity();
    let mut len = 0;
    while len < n || e.check().is_err() {
        let both_prev = e.m().is_some_and(|m| e.r[m] > 0 && e.s[m] > 0);
        let (r, s) = loop {
            let (r, s) = (exponent(rng, n), exponent(rng, n));
            if !both_prev || r + s > 0 {
                break (r, s);
            }
        };
        len += (r + s) as usize + usize::from(e.m().is_some());
        e.r.push(r);
        e.s.push(s);
    }
    e
}

/// A random normal form with about `n` tokens (at least `n`).
pub fn sample_nf(rep: &Representation, n: usize, rng: &mut ChaCha8Rng) -> Vec<Sym> {
    sample_ladder(rep, &[n], rng).pop().expect("one size")
}

/// One random normal form per size. For the wreath groups these are
/// snapshots of a single walk.
fn sample_ladder(rep: &Representation, sizes: &[usize], rng: &mut ChaCha8Rng) -> Vec<Vec<Sym>> {
    match rep.group {
        GroupId::ThompsonF => sizes.iter().map(|&n| random_expseq(n, rng).to_syms()).collect(),
        _ => walk_ladder(rep, sizes, rng),
    }
}

fn slope(rows: &[SizeRow]) -> f64 {
    let pts: Vec<(f64, f64)> =
        rows.iter().filter(|r| r.max_steps > 0).map(|r| ((r.n as f64).ln(), (r.max_steps as f64).ln())).collect();
    let k = pts.len() as f64;
    if pts.len() < 2 {
        return 0.0;
    }
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / k, pts.iter().map(|p| p.1).sum::<f64>() / k);
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    num / den
}

fn seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| master.gen()).collect()
}

/// Steps of `gen` on random normal forms of each size. The verdict holds
/// when the worst steps/|nf| ratio at the largest size is within 25% of the
/// ratio at the median size.
pub fn linearity_bench(rep: &Representation, gen: Gen, sizes: &[usize], samples: usize, seed: u64) -> LinearityReport {
    linearity_bench_gens(rep, &[gen], sizes, samples, seed).remove(0)
}

/// [`linearity_bench`] for several generators over the same samples.
pub fn linearity_bench_gens(
    rep: &Representation,
    gens: &[Gen],
    sizes: &[usize],
    samples: usize,
    seed: u64,
) -> Vec<LinearityReport> {
    assert!(sizes.windows(2).all(|w| w[0] < w[1]), "sizes must be strictly increasing");
    // runs[sample][size][gen] = (steps, steps / |nf|)
    let runs: Vec<Vec<Vec<(u64, f64)>>> = seeds(seed, samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            sample_ladder(rep, sizes, &mut rng)
                .iter()
                .map(|nf| {
                    gens.iter()
                        .map(|&g| {
                            let steps = rep.apply(nf, g).expect("sampled inputs are normal forms").steps;
                            (steps, steps as f64 / nf.len().max(1) as f64)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    gens.iter()
        .enumerate()
        .map(|(gi, &gen)| {
            let rows: Vec<SizeRow> = sizes
                .iter()
                .enumerate()
                .map(|(si, &n)| SizeRow {
                    n,
                    max_steps: runs.iter().map(|r| r[si][gi].0).max().unwrap_or(0),
                    max_ratio: runs.iter().map(|r| r[si][gi].1).fold(0.0, f64::max),
                })
                .collect();
            let verdict = match rows.last() {
                Some(last) => last.max_ratio <= 1.25 * rows[rows.len() / 2].max_ratio,
                None => false,
            };
            LinearityReport { group: rep.group, gen, samples_per_size: samples, slope: slope(&rows), sizes: rows, verdict }
        })
        .collect()
}

/// Total steps of [`word_to_nf`] on random words of each length. The
/// verdict holds when, from n = 128 on, steps/n² never exceeds its value at
/// the first such size by more than 25%.
pub fn quadratic_bench(rep: &Representation, sizes: &[usize], samples: usize, seed: u64) -> QuadraticReport {
    assert!(sizes.windows(2).all(|w| w[0] < w[1]), "sizes must be strictly increasing");
    let gens = rep.gens();
    let per_size = seeds(seed, sizes.len());
    let rows: Vec<SizeRow> = sizes
        .iter()
        .zip(per_size)
        .map(|(&n, s)| {
            let steps: Vec<u64> = seeds(s, samples)
                .into_par_iter()
                .map(|s| {
                    let mut rng = ChaCha8Rng::seed_from_u64(s);
                    let word: Vec<Gen> = (0..n).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
                    word_to_nf(rep, &word).expect("generators of the group").steps
                })
                .collect();
            let max_steps = steps.into_iter().max().unwrap_or(0);
            SizeRow { n, max_steps, max_ratio: max_steps as f64 / (n * n).max(1) as f64 }
        })
        .collect();
    let tail: Vec<&SizeRow> = rows.iter().filter(|r| r.n >= 128).collect();
    let verdict = tail.first().is_some_and(|base| tail.iter().all(|r| r.max_ratio <= 1.25 * base.max_ratio));
    QuadraticReport { group: rep.group, samples_per_size: samples, sizes: rows, verdict }
}
