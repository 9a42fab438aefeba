//! `Z₂ ≀ F₂`: recursive bracketed normal form over a 24-token alphabet and
//! the two-tape right-multiplication programs.
//!
//! The top level scans the `a`-line through the identity. A node with lamps
//! (or the lamplighter) somewhere above or below it opens a `( … )` group
//! listing its vertical line bottom to top; a node on a vertical line with
//! activity to its sides opens a `[ … ]` group listing its horizontal line
//! left to right, and so on recursively. Each group contains its node's own
//! token (the pivot) in place.

mod codec;
mod machine;

pub use codec::{encode, encode_iterations, parse, Item};
pub use machine::Axis;

use crate::error::{Error, Result, TapeError};
use crate::gen::Gen;
use crate::oracle::LampConfigF2;
use crate::tapevm::{read_output, render, Run, Sym, TapeSet};

pub const SIGMA: [Sym; 24] = {
    use Sym::*;
    [
        Zero, One, D0, D1, E0, E1, LParen, RParen, LBrack, RBrack, D0A, D1A, D0B, D1B, D0C, D1C, E0C, E1C, A0, A1,
        B0, B1, C0, C1,
    ]
};

pub fn identity() -> Vec<Sym> {
    vec![Sym::B0]
}

/// Decodes a normal form, rejecting strings that are not in the language.
pub fn decode(nf: &[Sym]) -> Result<LampConfigF2> {
    let g = codec::decode_structure(nf)?;
    if encode(&g) != nf {
        return Err(Error::NotInLanguage(format!(
            "not canonical: {} should be {}",
            render(nf),
            render(&encode(&g))
        )));
    }
    Ok(g)
}

pub fn validate(nf: &[Sym]) -> Result<()> {
    decode(nf).map(|_| ())
}

pub fn apply(nf: &[Sym], gen: Gen) -> Result<Run> {
    let mut ts = TapeSet::new(nf, 2)?;
    program(&mut ts, gen)?;
    Ok(Run { output: read_output(&ts, &SIGMA)?, steps: ts.steps() })
}

pub fn program(ts: &mut TapeSet, gen: Gen) -> Result<(), TapeError> {
    let (axis, inverse) = match gen {
        Gen::C => return machine::toggle(ts),
        Gen::A => (Axis::A, false),
        Gen::AInv => (Axis::A, true),
        Gen::B => (Axis::B, false),
        Gen::BInv => (Axis::B, true),
        other => return Err(TapeError::InvalidInput(format!("{other} is not a generator of Z2 wr F2"))),
    };
    if inverse {
        machine::mirror(ts)?;
        machine::forward(ts, axis)?;
        machine::clear_stack(ts)?;
        machine::mirror(ts)
    } else {
        machine::forward(ts, axis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{F2Word, Letter};
    use crate::tapevm::tokenize;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn nf(text: &str) -> Vec<Sym> {
        tokenize(text, &SIGMA).unwrap()
    }

    fn run(text: &str, g: Gen) -> String {
        render(&apply(&nf(text), g).unwrap().output)
    }

    fn word(rng: &mut ChaCha8Rng, max: usize) -> F2Word {
        let letters = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];
        F2Word::reduce((0..rng.gen_range(0..=max)).map(|_| letters[rng.gen_range(0..4)]))
    }

    fn random_config(rng: &mut ChaCha8Rng) -> LampConfigF2 {
        let mut g = LampConfigF2 { pos: word(rng, 12), ..Default::default() };
        for _ in 0..rng.gen_range(0..=8) {
            g.lit.insert(word(rng, 12));
        }
        g
    }

    /// A worked example with lamps on several nesting levels.
    fn worked_element() -> LampConfigF2 {
        decode(&nf("11(1[1E01]D0A[E0(C1D1)])([1E0]D0[1E1])1")).unwrap()
    }

    #[test]
    fn codec_examples() {
        assert_eq!(render(&encode(&LampConfigF2::identity())), "B0");
        let g = decode(&nf("B1")).unwrap();
        assert!(g.lit.contains(&F2Word::identity()) && g.pos.is_empty());
        let g = decode(&nf("A0C0")).unwrap();
        assert_eq!(g.pos, F2Word::parse("a").unwrap());
        assert!(g.lit.is_empty());
        assert_eq!(encode(&g), nf("A0C0"));
    }

    #[test]
    fn worked_iterations() {
        let g = worked_element();
        let expect = [
            "11D0AD01",
            "11(1E0D0AE0)(E0D0E1)1",
            "11(1[1E01]D0A[E0D1])([1E0]D0[1E1])1",
            "11(1[1E01]D0A[E0(C1D1)])([1E0]D0[1E1])1",
        ];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(render(&encode_iterations(&g, n + 1)), *e, "iteration {}", n + 1);
        }
        assert_eq!(encode_iterations(&g, 9), encode(&g));
        // The lamplighter sits at b·a·b⁻¹.
        assert_eq!(g.pos.to_string(), "baB");
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "", "0", "B0B0", "A0", "C0", "0B0", "B00", "(B0)", "[E0B0]", "(D0AC0", "D0AC0)", "(D0A[C0)]", "(D0A(D0C0))",
            "B0(D0C0)(E0)", "B0C0", "(D0AD0C0)", "A0(C0D0)0", "B0 1 0",
        ] {
            assert!(matches!(decode(&nf(bad)), Err(Error::NotInLanguage(_))), "{bad}");
        }
        // Lamplighter at a·b⁻¹, nothing lit.
        assert_eq!(decode(&nf("A0(C0D0)")).unwrap().pos.to_string(), "aB");
    }

    #[test]
    fn machine_examples() {
        assert_eq!(run("B0", Gen::C), "B1");
        assert_eq!(run("A0C0", Gen::C), "A0C1");
        assert_eq!(run("B0", Gen::A), "A0C0");
        assert_eq!(run("A0C0", Gen::AInv), "B0");
        assert_eq!(run("B0", Gen::AInv), "C0A0");
        assert_eq!(run("B0", Gen::B), "(D0AC0)");
        assert_eq!(run("(D0AC0)", Gen::BInv), "B0");
        assert_eq!(run("B0", Gen::BInv), "(C0D0A)");
    }

    #[test]
    fn differential_against_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let g = random_config(&mut rng);
            let w = encode(&g);
            for s in Gen::WREATH {
                let out = apply(&w, s).unwrap().output;
                assert_eq!(render(&out), render(&encode(&g.mul_gen(s))), "{} · {s}", render(&w));
                assert_eq!(apply(&out, s.inverse()).unwrap().output, w);
            }
        }
    }

    #[test]
    fn random_walk_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let mut g = LampConfigF2::identity();
            let mut w = identity();
            for _ in 0..500 {
                let s = Gen::WREATH[rng.gen_range(0..5)];
                w = apply(&w, s).unwrap().output;
                g = g.mul_gen(s);
                assert_eq!(decode(&w).unwrap(), g);
            }
        }
    }

    #[test]
    fn total_on_mutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..2000 {
            let mut w = encode(&random_config(&mut rng));
            let i = rng.gen_range(0..w.len());
            match rng.gen_range(0..3) {
                0 => w[i] = SIGMA[rng.gen_range(0..SIGMA.len())],
                1 => {
                    w.remove(i);
                }
                _ => w.insert(i, SIGMA[rng.gen_range(0..SIGMA.len())]),
            }
            for s in Gen::WREATH {
                apply(&w, s).unwrap();
            }
        }
    }
}
