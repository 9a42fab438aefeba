//! `Z₂ ≀ Z²`: spiral normal form over `{0, 1, C0, C1}` and the two-tape
//! right-multiplication programs.
//!
//! Token `k` of a normal form describes the lamp at `t(k)`; the single
//! `C`-token marks the lamplighter. The length is `max(m, r)` where `r` is the
//! lamplighter index and `m` the largest lit index (0 when nothing is lit).

use crate::error::{Error, Result, TapeError};
use crate::gen::Gen;
use crate::oracle::LampConfigZ2;
use crate::spiral::{self, Dir, Jump, Region};
use crate::tapevm::{read_output, Run, Sym, TapeSet};

pub const SIGMA: [Sym; 4] = [Sym::Zero, Sym::One, Sym::C0, Sym::C1];

pub fn identity() -> Vec<Sym> {
    vec![Sym::C0]
}

pub fn encode(g: &LampConfigZ2) -> Vec<Sym> {
    let r = spiral::spiral_index(g.pos) as usize;
    let m = g.lit.iter().map(|&p| spiral::spiral_index(p) as usize).max().unwrap_or(0);
    let mut out = vec![Sym::Zero; r.max(m)];
    for &p in &g.lit {
        out[spiral::spiral_index(p) as usize - 1] = Sym::One;
    }
    out[r - 1] = if out[r - 1] == Sym::One { Sym::C1 } else { Sym::C0 };
    out
}

pub fn validate(nf: &[Sym]) -> Result<()> {
    if let Some(bad) = nf.iter().find(|s| !SIGMA.contains(s)) {
        return Err(Error::NotInLanguage(format!("symbol {bad} outside {{0,1,C0,C1}}")));
    }
    match nf.iter().filter(|s| matches!(s, Sym::C0 | Sym::C1)).count() {
        1 => {}
        n => return Err(Error::NotInLanguage(format!("expected one lamplighter token, found {n}"))),
    }
    if nf.last() == Some(&Sym::Zero) {
        return Err(Error::NotInLanguage("trailing 0".into()));
    }
    Ok(())
}

pub fn decode(nf: &[Sym]) -> Result<LampConfigZ2> {
    validate(nf)?;
    let mut g = LampConfigZ2::identity();
    for (idx, &s) in nf.iter().enumerate() {
        let p = spiral::spiral_point(idx as u64 + 1);
        if matches!(s, Sym::One | Sym::C1) {
            g.lit.insert(p);
        }
        if matches!(s, Sym::C0 | Sym::C1) {
            g.pos = p;
        }
    }
    Ok(g)
}

/// Runs the program for `gen` on `nf` and returns the output and step count.
pub fn apply(nf: &[Sym], gen: Gen) -> Result<Run> {
    let mut ts = TapeSet::new(nf, 2)?;
    program(&mut ts, gen)?;
    Ok(Run { output: read_output(&ts, &SIGMA)?, steps: ts.steps() })
}

pub fn program(ts: &mut TapeSet, gen: Gen) -> Result<(), TapeError> {
    match Dir::of(gen) {
        None if gen == Gen::C => toggle(ts),
        None => Err(TapeError::InvalidInput(format!("{gen} is not a generator of Z2 wr Z2"))),
        Some(dir) => {
            let Some(region) = locate(ts)? else { return Ok(()) };
            shift(ts, spiral::jump(region, dir))
        }
    }
}

fn toggle(ts: &mut TapeSet) -> Result<(), TapeError> {
    loop {
        match ts.right(0)? {
            Sym::C0 => return ts.write(0, Sym::C1),
            Sym::C1 => return ts.write(0, Sym::C0),
            Sym::Blank => return Ok(()),
            _ => {}
        }
    }
}

/// Where the tape-2 head is in its sweep over `T^i`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Sweep {
    Start,
    Left,
    Right,
    /// Just read the ring's last cell; the next cell starts a new turn.
    Corner,
}

/// First stage: scans tape 1 up to the lamplighter token while tracking the
/// region of `t(k)` and keeping `T^i` on tape 2. Leaves tape 1 on the
/// `C`-token and tape 2 on the first blank after `T^i`. `None` if the input
/// has no `C`-token.
fn locate(ts: &mut TapeSet) -> Result<Option<Region>, TapeError> {
    use Region::*;
    const FIRST: [Region; 10] = [O, L1, L2, D2, L3, D3, L4, D4, D4, L1];
    const DIAG: [Region; 4] = [D1, D2, D3, D4];
    const LINE: [Region; 3] = [L2, L3, L4];
    let mut k = 0;
    let mut region;
    let mut side = 0;
    let mut sweep = Sweep::Start;
    loop {
        let sym = ts.right(0)?;
        if sym == Sym::Blank {
            return Ok(None);
        }
        if k < FIRST.len() {
            region = FIRST[k];
            k += 1;
            if k == FIRST.len() {
                ts.right(1)?;
                ts.write(1, Sym::Turn)?;
            }
        } else {
            match sweep {
                Sweep::Start => {
                    ts.left(1)?;
                    region = DIAG[side];
                    sweep = Sweep::Left;
                }
                Sweep::Left if ts.read(1)? != Sym::Start => {
                    ts.left(1)?;
                    region = DIAG[side];
                }
                Sweep::Left | Sweep::Right => {
                    sweep = Sweep::Right;
                    region = DIAG[side];
                    if ts.right(1)? == Sym::Blank {
                        if side < 3 {
                            region = LINE[side];
                            side += 1;
                            sweep = Sweep::Start;
                        } else {
                            sweep = Sweep::Corner;
                        }
                    }
                }
                Sweep::Corner => {
                    ts.write(1, Sym::Turn)?;
                    region = L1;
                    side = 0;
                    sweep = Sweep::Start;
                }
            }
        }
        if matches!(sym, Sym::C0 | Sym::C1) {
            break;
        }
    }
    while ts.read(1)? != Sym::Blank {
        ts.right(1)?;
    }
    Ok(Some(region))
}

/// Moves the lamplighter token by the index distance of `jump`, using tape-2
/// sweeps over `T^i` to count `8i + beta` moves.
fn shift(ts: &mut TapeSet, jump: Jump) -> Result<(), TapeError> {
    let fwd = jump.forward;
    let mut erase = false;
    match ts.read(0)? {
        Sym::C0 if fwd => ts.write(0, Sym::Zero)?,
        Sym::C1 => ts.write(0, Sym::One)?,
        Sym::C0 => {
            erase = ts.right(0)? == Sym::Blank;
            ts.left(0)?;
            ts.write(0, if erase { Sym::Blank } else { Sym::Zero })?;
        }
        _ => return Ok(()),
    }
    let extra = if jump.turns {
        // Each round moves tape 2 over 2i+2 cells; the first `unpaired` of
        // them do not move tape 1, so four rounds give 8i + 8 - 4·unpaired.
        let unpaired = match jump.beta {
            0..=3 => 2,
            4..=7 => 1,
            _ => 0,
        };
        for _ in 0..4 {
            let mut moved = 0;
            let mut tick = |ts: &mut TapeSet, erase: &mut bool| -> Result<bool, TapeError> {
                moved += 1;
                if moved > unpaired {
                    step(ts, fwd, erase, false)
                } else {
                    Ok(true)
                }
            };
            ts.left(1)?;
            if !tick(ts, &mut erase)? {
                return Ok(());
            }
            while ts.read(1)? != Sym::Start {
                ts.left(1)?;
                if !tick(ts, &mut erase)? {
                    return Ok(());
                }
            }
            loop {
                let s = ts.right(1)?;
                if !tick(ts, &mut erase)? {
                    return Ok(());
                }
                if s == Sym::Blank {
                    break;
                }
            }
        }
        jump.beta + 4 * unpaired - 8
    } else {
        jump.beta
    };
    for n in 1..=extra {
        if !step(ts, fwd, &mut erase, n == extra)? {
            return Ok(());
        }
    }
    Ok(())
}

/// One move of the tape-1 head. Intermediate right moves pad blanks with 0;
/// intermediate left moves trim trailing 0s while `erase` holds. The final
/// move places the lamplighter. `false` if the head hit the start marker.
fn step(ts: &mut TapeSet, fwd: bool, erase: &mut bool, last: bool) -> Result<bool, TapeError> {
    let sym = if fwd {
        ts.right(0)?
    } else {
        let (sym, moved) = ts.left_guarded(0)?;
        if !moved || sym == Sym::Start {
            return Ok(false);
        }
        sym
    };
    if last {
        let mark = if sym == Sym::One { Sym::C1 } else { Sym::C0 };
        ts.write(0, mark)?;
    } else if fwd {
        if sym == Sym::Blank {
            ts.write(0, Sym::Zero)?;
        }
    } else if *erase {
        match sym {
            Sym::Zero => ts.write(0, Sym::Blank)?,
            _ => *erase = false,
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tapevm::{render, tokenize};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn nf(text: &str) -> Vec<Sym> {
        tokenize(text, &SIGMA).unwrap()
    }

    fn run(text: &str, g: Gen) -> String {
        render(&apply(&nf(text), g).unwrap().output)
    }

    fn random_config(rng: &mut ChaCha8Rng, max_index: u64) -> LampConfigZ2 {
        let mut g = LampConfigZ2::identity();
        for _ in 0..rng.gen_range(0..12) {
            g.lit.insert(spiral::spiral_point(rng.gen_range(1..=max_index)));
        }
        g.pos = spiral::spiral_point(rng.gen_range(1..=max_index));
        g
    }

    #[test]
    fn codec_examples() {
        assert_eq!(encode(&LampConfigZ2::identity()), identity());
        let mut g = LampConfigZ2::identity();
        g.pos = (1, 0);
        assert_eq!(render(&encode(&g)), "0C0");
        assert_eq!(decode(&nf("C1")).unwrap().lit.into_iter().collect::<Vec<_>>(), vec![(0, 0)]);
        let g = decode(&nf("1C0")).unwrap();
        assert_eq!((g.lit.into_iter().collect::<Vec<_>>(), g.pos), (vec![(0, 0)], (1, 0)));
        for bad in ["", "0", "10", "C0C1", "C00", "1"] {
            assert!(matches!(decode(&nf(bad)), Err(Error::NotInLanguage(_))), "{bad}");
        }
    }

    #[test]
    fn worked_string() {
        let s = nf("0100011000000100001000C1000101111000011000101100001");
        assert_eq!(s.len(), 50);
        let g = decode(&s).unwrap();
        assert_eq!(g.pos, (0, -2));
        assert!(g.lit.contains(&(0, -2)));
        assert_eq!(encode(&g), s);
    }

    #[test]
    fn machine_examples() {
        assert_eq!(run("C0", Gen::A), "0C0");
        assert_eq!(run("0C0", Gen::A), format!("{}C0", "0".repeat(10)));
        assert_eq!(run("C1", Gen::C), "C0");
        assert_eq!(run("C0", Gen::C), "C1");
        assert_eq!(run("0C0", Gen::AInv), "C0");
        assert_eq!(run("1C0", Gen::AInv), "C1");
    }

    #[test]
    fn total_on_junk() {
        for junk in ["", "0", "1", "0110", "C0C1", "C1C1C1", "10C0", "0000000000000000C0"] {
            for g in Gen::WREATH {
                apply(&nf(junk), g).unwrap();
            }
        }
    }

    #[test]
    fn differential_against_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let g = random_config(&mut rng, 2000);
            let w = encode(&g);
            for s in Gen::WREATH {
                let out = apply(&w, s).unwrap().output;
                assert_eq!(out, encode(&g.mul_gen(s)), "{} · {s}", render(&w));
                let back = apply(&out, s.inverse()).unwrap().output;
                assert_eq!(back, w);
            }
        }
    }

    #[test]
    fn every_region_and_direction_near_origin() {
        for k in 1..=400u64 {
            let g = LampConfigZ2 { lit: Default::default(), pos: spiral::spiral_point(k) };
            for s in Gen::WREATH {
                assert_eq!(apply(&encode(&g), s).unwrap().output, encode(&g.mul_gen(s)), "k={k} {s}");
            }
        }
    }
}
