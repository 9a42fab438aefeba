use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{word_to_nf, GroupId, Representation};
use crate::gen::Gen;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub walk_len: usize,
    /// Max over trials of |nf| / (walk_len + 1).
    pub max_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub group: GroupId,
    pub trials: usize,
    pub seed: u64,
    pub rows: Vec<ProbeRow>,
    /// The ratio at the last checkpoint is within 25% of the first.
    pub plateau: bool,
}

/// Random walks recording normal form length against walk length at each
/// checkpoint. Since the distance to the identity is at most the walk length,
/// a normal form that is quasigeodesic keeps these ratios bounded. A bounded
/// ratio cannot prove the property; a diverging one refutes it.
///
/// Where an encoder exists the walk runs in the oracle and is encoded at the
/// checkpoints; otherwise it runs on the tape programs.
pub fn quasigeodesic_probe(rep: &Representation, trials: usize, checkpoints: &[usize], seed: u64) -> ProbeReport {
    assert!(checkpoints.windows(2).all(|w| w[0] < w[1]), "checkpoints must be strictly increasing");
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| master.gen()).collect();
    let gens = rep.gens();
    let last = checkpoints.last().copied().unwrap_or(0);
    let per_trial: Vec<Vec<usize>> = seeds
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let mut nf = rep.identity_nf();
            let mut elem = rep.oracle_identity();
            let encoded = rep.encode(&elem).is_some();
            let mut lens = Vec::with_capacity(checkpoints.len());
            let mut next = checkpoints.iter().peekable();
            for step in 0..=last {
                if next.peek() == Some(&&step) {
                    lens.push(rep.encode(&elem).map_or(nf.len(), |e| e.len()));
                    next.next();
                }
                if step < last {
                    let g = gens[rng.gen_range(0..gens.len())];
                    if encoded {
                        rep.oracle_mul_mut(&mut elem, g);
                    } else {
                        nf = rep.apply(&nf, g).expect("walks stay in the language").output;
                    }
                }
            }
            lens
        })
        .collect();
    let rows: Vec<ProbeRow> = checkpoints
        .iter()
        .enumerate()
        .map(|(i, &walk_len)| ProbeRow {
            walk_len,
            max_ratio: per_trial.iter().map(|l| l[i] as f64 / (walk_len + 1) as f64).fold(0.0, f64::max),
        })
        .collect();
    let plateau = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) => b.max_ratio <= 1.25 * a.max_ratio,
        _ => false,
    };
    ProbeReport { group: rep.group, trials, seed, rows, plateau }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonQgRow {
    pub k: u64,
    pub word_len: usize,
    pub nf_len: usize,
    /// nf_len / (word_len + 1)
    pub ratio: f64,
}

/// Lamp at `(k, k)` with the head back at the origin, reached by the word
/// `aᵏ bᵏ c b⁻ᵏ a⁻ᵏ` of length `4k + 1`. The spiral places `(k, k)` at
/// index about `4k²`, so the ratio grows linearly in `k`.
pub fn nonqg_family(ks: &[u64]) -> Vec<NonQgRow> {
    let rep = Representation::new(GroupId::Z2WrZ2);
    ks.iter()
        .map(|&k| {
            let k_ = k as usize;
            let mut word = vec![Gen::A; k_];
            word.extend(vec![Gen::B; k_]);
            word.push(Gen::C);
            word.extend(vec![Gen::BInv; k_]);
            word.extend(vec![Gen::AInv; k_]);
            let nf = word_to_nf(&rep, &word).expect("wreath generators").nf;
            NonQgRow { k, word_len: word.len(), nf_len: nf.len(), ratio: nf.len() as f64 / (word.len() + 1) as f64 }
        })
        .collect()
}
