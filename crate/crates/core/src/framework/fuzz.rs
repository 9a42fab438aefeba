use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GroupId, Representation};
use crate::gen::Gen;
use crate::tapevm::{render, Sym};

/// A failing step: the walk up to and including the bad generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub word: String,
    pub nf: String,
    pub gen: Gen,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub group: GroupId,
    pub trials: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Number of (normal form, generator) pairs checked.
    pub samples: u64,
    /// Samples per generator, keyed by its token.
    pub per_gen: BTreeMap<String, u64>,
    pub passed: bool,
    /// Shortest failing walk over all trials (ties broken by trial index).
    pub witness: Option<Witness>,
    /// How often each `x₁^{±1}` branch fired, keyed by case label.
    pub coverage: BTreeMap<String, u64>,
}

struct Trial {
    samples: u64,
    per_gen: BTreeMap<String, u64>,
    coverage: BTreeMap<String, u64>,
    witness: Option<Witness>,
}

fn run_trial(rep: &Representation, trial: usize, seed: u64, max_len: usize) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Trial { samples: 0, per_gen: BTreeMap::new(), coverage: BTreeMap::new(), witness: None };
    let mut nf = rep.identity_nf();
    let mut elem = rep.oracle_identity();
    let mut word: Vec<Gen> = Vec::new();
    let gens = rep.gens();
    for _ in 0..rng.gen_range(1..=max_len) {
        let g = gens[rng.gen_range(0..gens.len())];
        word.push(g);
        let fail = |reason: String, nf: &[Sym]| Witness {
            trial,
            word: word.iter().map(|g| g.token()).collect::<Vec<_>>().join(" "),
            nf: render(nf),
            gen: g,
            reason,
        };
        out.samples += 1;
        *out.per_gen.entry(g.token().to_string()).or_insert(0) += 1;
        let next = match rep.apply_traced(&nf, g) {
            Ok(t) => t,
            Err(e) => {
                out.witness = Some(fail(format!("program error: {e}"), &nf));
                return out;
            }
        };
        if let Some(c) = next.case {
            *out.coverage.entry(c.label().to_string()).or_insert(0) += 1;
        }
        let v = next.run.output;
        if let Err(e) = rep.validate(&v) {
            out.witness = Some(fail(format!("output {} rejected: {e}", render(&v)), &nf));
            return out;
        }
        let expect = rep.oracle_mul(&elem, g);
        match rep.decode(&v) {
            Ok(got) if got == expect => {}
            Ok(_) => {
                out.witness = Some(fail(format!("output {} decodes to the wrong element", render(&v)), &nf));
                return out;
            }
            Err(e) => {
                out.witness = Some(fail(format!("output {} does not decode: {e}", render(&v)), &nf));
                return out;
            }
        }
        match rep.apply_traced(&v, g.inverse()) {
            Ok(back) if back.run.output == nf => {
                if let Some(c) = back.case {
                    *out.coverage.entry(c.label().to_string()).or_insert(0) += 1;
                }
            }
            Ok(back) => {
                let reason = format!("{} then {} gives {}", render(&v), g.inverse(), render(&back.run.output));
                out.witness = Some(fail(reason, &nf));
                return out;
            }
            Err(e) => {
                out.witness = Some(fail(format!("inverse step on {} failed: {e}", render(&v)), &nf));
                return out;
            }
        }
        nf = v;
        elem = expect;
    }
    out
}

/// Random walks from the identity, checking after every step that the
/// output is a normal form, decodes to the oracle product, and is undone by
/// the inverse generator. Trials run in parallel; the report depends only
/// on the seed.
pub fn differential_fuzz(rep: &Representation, trials: usize, max_len: usize, seed: u64) -> FuzzReport {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| master.gen()).collect();
    let results: Vec<Trial> =
        seeds.par_iter().enumerate().map(|(i, &s)| run_trial(rep, i, s, max_len.max(1))).collect();
    let mut report = FuzzReport {
        group: rep.group,
        trials,
        max_len,
        seed,
        samples: 0,
        per_gen: BTreeMap::new(),
        passed: true,
        witness: None,
        coverage: BTreeMap::new(),
    };
    for t in results {
        report.samples += t.samples;
        for (k, v) in t.per_gen {
            *report.per_gen.entry(k).or_insert(0) += v;
        }
        for (k, v) in t.coverage {
            *report.coverage.entry(k).or_insert(0) += v;
        }
        if let Some(w) = t.witness {
            report.passed = false;
            let len = |w: &Witness| w.word.split_whitespace().count();
            let shorter = report.witness.as_ref().is_none_or(|cur| len(&w) < len(cur));
            if shorter {
                report.witness = Some(w);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::Mutation;
    use crate::thompson::Case;

    #[test]
    fn deterministic_and_passing() {
        let rep = Representation::new(GroupId::Z2WrZ2);
        let a = differential_fuzz(&rep, 40, 60, 42);
        assert!(a.passed, "{:?}", a.witness);
        assert_eq!(a, differential_fuzz(&rep, 40, 60, 42));
    }

    #[test]
    fn catches_disabled_case() {
        let rep = Representation::new(GroupId::ThompsonF).with_mutation(Mutation::DisableCase(Case::C2_2_2b));
        let r = differential_fuzz(&rep, 200, 80, 42);
        assert!(!r.passed);
        let w = r.witness.unwrap();
        assert!(w.word.split(' ').any(|t| t == "x1-" || t == "x1"), "{w:?}");
    }
}
