//! One interface over the three groups: tape programs, membership, decoding
//! into the oracle model, and the harnesses built on top (word problem,
//! differential fuzzing, step benchmarks, quasigeodesic probes).

mod bench;
mod fuzz;
mod probe;

pub use bench::{linearity_bench, linearity_bench_gens, quadratic_bench, sample_nf, LinearityReport, QuadraticReport, SizeRow};
pub use fuzz::{differential_fuzz, FuzzReport, Witness};
pub use probe::{nonqg_family, quasigeodesic_probe, NonQgRow, ProbeReport, ProbeRow};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gen::Gen;
use crate::oracle::{pl_compose, DyadicPL, LampConfigF2, LampConfigZ2, PlGen};
use crate::tapevm::{read_output, tokenize, Run, Sym, TapeSet};
use crate::thompson::{self, Case, ExpSeq};
use crate::{z2wrf2, z2wrz2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
pub enum GroupId {
    #[serde(rename = "z2wrz2")]
    #[value(name = "z2wrz2")]
    Z2WrZ2,
    #[serde(rename = "z2wrf2")]
    #[value(name = "z2wrf2")]
    Z2WrF2,
    #[serde(rename = "thompson-f")]
    #[value(name = "thompson-f")]
    ThompsonF,
}

impl GroupId {
    pub const ALL: [GroupId; 3] = [GroupId::Z2WrZ2, GroupId::Z2WrF2, GroupId::ThompsonF];

    pub fn name(self) -> &'static str {
        match self {
            GroupId::Z2WrZ2 => "z2wrz2",
            GroupId::Z2WrF2 => "z2wrf2",
            GroupId::ThompsonF => "thompson-f",
        }
    }
}

impl std::fmt::Display for GroupId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Group element in the oracle model of its group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Z2(LampConfigZ2),
    F2(LampConfigF2),
    F(DyadicPL),
}

/// Planted defects for harness self-tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// After the real program for this generator, walk from the start
    /// marker to every cell of the output: quadratic in the output length.
    Quadratic(Gen),
    /// The `x₁⁻¹` program skips the edit of this branch.
    DisableCase(Case),
}

/// A run with the `x₁^{±1}` branch that fired, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Traced {
    pub run: Run,
    pub case: Option<Case>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Representation {
    pub group: GroupId,
    pub mutation: Mutation,
}

impl Representation {
    pub fn new(group: GroupId) -> Self {
        Representation { group, mutation: Mutation::None }
    }

    pub fn with_mutation(self, mutation: Mutation) -> Self {
        Representation { mutation, ..self }
    }

    /// Generators, closed under inverses.
    pub fn gens(&self) -> &'static [Gen] {
        match self.group {
            GroupId::ThompsonF => &Gen::THOMPSON,
            _ => &Gen::WREATH,
        }
    }

    pub fn sigma(&self) -> &'static [Sym] {
        match self.group {
            GroupId::Z2WrZ2 => &z2wrz2::SIGMA,
            GroupId::Z2WrF2 => &z2wrf2::SIGMA,
            GroupId::ThompsonF => &thompson::SIGMA,
        }
    }

    pub fn identity_nf(&self) -> Vec<Sym> {
        match self.group {
            GroupId::Z2WrZ2 => z2wrz2::identity(),
            GroupId::Z2WrF2 => z2wrf2::identity(),
            GroupId::ThompsonF => thompson::identity(),
        }
    }

    /// Tokenizes and validates a normal form given as text.
    pub fn parse_nf(&self, text: &str) -> Result<Vec<Sym>> {
        let nf = match self.group {
            GroupId::ThompsonF => ExpSeq::from_text(text)?.to_syms(),
            _ => tokenize(text, self.sigma()).map_err(|e| Error::NotInLanguage(e.to_string()))?,
        };
        self.validate(&nf)?;
        Ok(nf)
    }

    pub fn validate(&self, nf: &[Sym]) -> Result<()> {
        match self.group {
            GroupId::Z2WrZ2 => z2wrz2::validate(nf),
            GroupId::Z2WrF2 => z2wrf2::validate(nf),
            GroupId::ThompsonF => thompson::validate(nf),
        }
    }

    pub fn decode(&self, nf: &[Sym]) -> Result<Elem> {
        Ok(match self.group {
            GroupId::Z2WrZ2 => Elem::Z2(z2wrz2::decode(nf)?),
            GroupId::Z2WrF2 => Elem::F2(z2wrf2::decode(nf)?),
            GroupId::ThompsonF => {
                thompson::validate(nf)?;
                Elem::F(thompson::decode(nf)?)
            }
        })
    }

    /// Normal form of an oracle element, where an encoder exists.
    pub fn encode(&self, e: &Elem) -> Option<Vec<Sym>> {
        match e {
            Elem::Z2(g) => Some(z2wrz2::encode(g)),
            Elem::F2(g) => Some(z2wrf2::encode(g)),
            Elem::F(_) => None,
        }
    }

    pub fn oracle_identity(&self) -> Elem {
        match self.group {
            GroupId::Z2WrZ2 => Elem::Z2(LampConfigZ2::identity()),
            GroupId::Z2WrF2 => Elem::F2(LampConfigF2::identity()),
            GroupId::ThompsonF => Elem::F(DyadicPL::identity()),
        }
    }

    pub fn oracle_mul(&self, e: &Elem, g: Gen) -> Elem {
        let mut out = e.clone();
        self.oracle_mul_mut(&mut out, g);
        out
    }

    pub fn oracle_mul_mut(&self, e: &mut Elem, g: Gen) {
        match e {
            Elem::Z2(x) => x.mul_gen_mut(g),
            Elem::F2(x) => x.mul_gen_mut(g),
            Elem::F(f) => {
                let (which, sign) = match g {
                    Gen::X0 => (PlGen::X0, 1),
                    Gen::X0Inv => (PlGen::X0, -1),
                    Gen::X1 => (PlGen::X1, 1),
                    Gen::X1Inv => (PlGen::X1, -1),
                    _ => return,
                };
                *f = pl_compose(f, &DyadicPL::generator(which, sign));
            }
        }
    }

    fn check_gen(&self, g: Gen) -> Result<()> {
        if self.gens().contains(&g) {
            Ok(())
        } else {
            Err(Error::BadWord(format!("{g} is not a generator of {}", self.group)))
        }
    }

    pub fn apply(&self, nf: &[Sym], g: Gen) -> Result<Run> {
        self.apply_traced(nf, g).map(|t| t.run)
    }

    /// Runs the two-tape program for `g` on `nf`. The input must be a
    /// normal form; the wreath programs do not re-check membership.
    pub fn apply_traced(&self, nf: &[Sym], g: Gen) -> Result<Traced> {
        self.check_gen(g)?;
        if self.group == GroupId::ThompsonF {
            thompson::validate(nf)?;
        }
        let mut ts = TapeSet::new(nf, 2)?;
        let case = match self.group {
            GroupId::Z2WrZ2 => z2wrz2::program(&mut ts, g).map(|_| None)?,
            GroupId::Z2WrF2 => z2wrf2::program(&mut ts, g).map(|_| None)?,
            GroupId::ThompsonF => {
                let disabled = match self.mutation {
                    Mutation::DisableCase(c) => Some(c),
                    _ => None,
                };
                thompson::program(&mut ts, g, disabled)?
            }
        };
        if self.mutation == Mutation::Quadratic(g) {
            quadratic_tail(&mut ts)?;
        }
        Ok(Traced { run: Run { output: read_output(&ts, self.sigma())?, steps: ts.steps() }, case })
    }
}

/// Visits every output cell from the start marker.
fn quadratic_tail(ts: &mut TapeSet) -> Result<()> {
    for k in 1.. {
        ts.rewind(0)?;
        for _ in 0..k {
            ts.right(0)?;
        }
        if ts.read(0)? == Sym::Blank {
            break;
        }
    }
    Ok(())
}

/// Normal form of a word and the total steps spent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfRun {
    pub nf: Vec<Sym>,
    pub steps: u64,
}

/// Applies the generator programs one letter at a time from the identity.
/// With a quasigeodesic normal form this takes quadratic time overall.
pub fn word_to_nf(rep: &Representation, word: &[Gen]) -> Result<NfRun> {
    for &g in word {
        rep.check_gen(g)?;
    }
    let mut nf = rep.identity_nf();
    let mut steps = 0;
    for &g in word {
        let run = rep.apply(&nf, g)?;
        steps += run.steps;
        nf = run.output;
    }
    Ok(NfRun { nf, steps })
}

pub fn word_problem(rep: &Representation, word: &[Gen]) -> Result<bool> {
    Ok(word_to_nf(rep, word)?.nf == rep.identity_nf())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::parse_word;
    use crate::tapevm::render;

    fn nf_of(group: GroupId, word: &str) -> String {
        render(&word_to_nf(&Representation::new(group), &parse_word(word).unwrap()).unwrap().nf)
    }

    #[test]
    fn word_to_nf_examples() {
        assert_eq!(nf_of(GroupId::Z2WrZ2, ""), "C0");
        assert_eq!(nf_of(GroupId::ThompsonF, "x0- x1-"), "b##b");
        assert_eq!(nf_of(GroupId::Z2WrF2, "a a-"), "B0");
    }

    #[test]
    fn word_problem_examples() {
        let wp = |g, w: &str| word_problem(&Representation::new(g), &parse_word(w).unwrap()).unwrap();
        assert!(wp(GroupId::ThompsonF, "x1 x0- x0- x1- x0 x0 x1- x0- x1 x0"));
        assert!(!wp(GroupId::Z2WrZ2, "c a c a-"));
        assert!(wp(GroupId::Z2WrZ2, "c c"));
        // A relator inserted into a trivial word keeps it trivial; one extra
        // generator does not.
        assert!(wp(GroupId::Z2WrF2, "a b b- a- c a c a- c a c a-"));
        assert!(!wp(GroupId::Z2WrF2, "a b b- a- c a c a- c a c a- b"));
        let err = word_to_nf(&Representation::new(GroupId::ThompsonF), &[Gen::A]).unwrap_err();
        assert!(matches!(err, Error::BadWord(_)));
    }

    proptest::proptest! {
        /// `word_to_nf` agrees with folding the oracle and encoding.
        #[test]
        fn word_to_nf_matches_oracle_encoding(
            group in proptest::sample::select(vec![GroupId::Z2WrZ2, GroupId::Z2WrF2]),
            seed in proptest::prelude::any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let rep = Representation::new(group);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let word: Vec<Gen> = (0..rng.gen_range(0..60)).map(|_| rep.gens()[rng.gen_range(0..5)]).collect();
            let e = word.iter().fold(rep.oracle_identity(), |e, &g| rep.oracle_mul(&e, g));
            proptest::prop_assert_eq!(word_to_nf(&rep, &word).unwrap().nf, rep.encode(&e).unwrap());
        }

        /// Decoding commutes with multiplication, and the inverse generator
        /// undoes each step.
        #[test]
        fn decode_commutes(
            group in proptest::sample::select(GroupId::ALL.to_vec()),
            idx in proptest::collection::vec(0usize..20, 0..40),
            last in 0usize..20,
        ) {
            let rep = Representation::new(group);
            let gens = rep.gens();
            let w: Vec<Gen> = idx.iter().map(|&i| gens[i % gens.len()]).collect();
            let g = gens[last % gens.len()];
            let u = word_to_nf(&rep, &w).unwrap().nf;
            let v = rep.apply(&u, g).unwrap().output;
            rep.validate(&v).unwrap();
            let want = rep.oracle_mul(&rep.decode(&u).unwrap(), g);
            proptest::prop_assert_eq!(rep.decode(&v).unwrap(), want);
            proptest::prop_assert_eq!(rep.apply(&v, g.inverse()).unwrap().output, u);
        }
    }

    #[test]
    fn quadratic_mutant_costs_more() {
        let rep = Representation::new(GroupId::Z2WrZ2);
        let nf = rep.parse_nf("1111111111C0").unwrap();
        let plain = rep.apply(&nf, Gen::C).unwrap();
        let slow = rep.with_mutation(Mutation::Quadratic(Gen::C)).apply(&nf, Gen::C).unwrap();
        assert_eq!(plain.output, slow.output);
        assert!(slow.steps > plain.steps + 50);
    }
}
