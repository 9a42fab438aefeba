//! Thompson's group `F` with the `a^{r₀}b^{s₀}#…#a^{r_M}b^{s_M}` normal form
//! and two-tape right multiplication by `x₀^{±1}`, `x₁^{±1}`.
//!
//! `x₀^{±1}` are short edits near the front of the word. `x₁⁻¹` follows a
//! case analysis on the pushed-through index `R`; `x₁` guesses the case,
//! rebuilds a candidate preimage, and checks it by running `x₁⁻¹`.

mod expseq;
mod machine;

use std::fmt;

pub use expseq::ExpSeq;
pub use machine::compute_r;

use crate::error::{Error, Result, TapeError};
use crate::gen::Gen;
use crate::oracle::{pl_eval_normalform, DyadicPL};
use crate::tapevm::{read_output, render, Run, Sym, TapeSet};

pub const SIGMA: [Sym; 3] = [Sym::La, Sym::Lb, Sym::Hash];

/// Branches of the `x₁⁻¹` case analysis, in the order `x₁` tries them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Case {
    C1_1,
    C1_2,
    C1_3a,
    C1_3b,
    C1_3c,
    C2_1a,
    C2_1b,
    C2_1c1,
    C2_1c2,
    C2_1c3,
    C2_2_1,
    C2_2_2a,
    C2_2_2b,
    C2_2_2c,
}

impl Case {
    pub const ALL: [Case; 14] = {
        use Case::*;
        [C1_1, C1_2, C1_3a, C1_3b, C1_3c, C2_1a, C2_1b, C2_1c1, C2_1c2, C2_1c3, C2_2_1, C2_2_2a, C2_2_2b, C2_2_2c]
    };

    pub fn label(self) -> &'static str {
        use Case::*;
        match self {
            C1_1 => "1.1",
            C1_2 => "1.2",
            C1_3a => "1.3a",
            C1_3b => "1.3b",
            C1_3c => "1.3c",
            C2_1a => "2.1a",
            C2_1b => "2.1b",
            C2_1c1 => "2.1c1",
            C2_1c2 => "2.1c2",
            C2_1c3 => "2.1c3",
            C2_2_1 => "2.2.1",
            C2_2_2a => "2.2.2a",
            C2_2_2b => "2.2.2b",
            C2_2_2c => "2.2.2c",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::BadWord(format!("unknown case `{s}`")))
    }
}

pub fn identity() -> Vec<Sym> {
    Vec::new()
}

pub fn validate(nf: &[Sym]) -> Result<()> {
    ExpSeq::parse(nf).map(|_| ())
}

/// The group element as a dyadic PL map.
pub fn decode(nf: &[Sym]) -> Result<DyadicPL> {
    if let Some(bad) = nf.iter().find(|s| !SIGMA.contains(s)) {
        return Err(Error::NotInLanguage(format!("symbol {bad} outside {{a,b,#}}")));
    }
    pl_eval_normalform(&render(nf))
}

/// A run plus the `x₁^{±1}` case that fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseRun {
    pub run: Run,
    pub case: Option<Case>,
}

pub fn apply(nf: &[Sym], gen: Gen) -> Result<Run> {
    apply_with(nf, gen, None).map(|r| r.run)
}

/// Like [`apply`], with `disabled` naming an `x₁⁻¹` branch whose edit is
/// skipped (a planted mutant for harness tests).
pub fn apply_with(nf: &[Sym], gen: Gen, disabled: Option<Case>) -> Result<CaseRun> {
    validate(nf)?;
    let mut ts = TapeSet::new(nf, 2)?;
    let case = program(&mut ts, gen, disabled)?;
    Ok(CaseRun { run: Run { output: read_output(&ts, &SIGMA)?, steps: ts.steps() }, case })
}

pub fn program(ts: &mut TapeSet, gen: Gen, disabled: Option<Case>) -> Result<Option<Case>> {
    match gen {
        Gen::X0 => machine::x0(ts)?,
        Gen::X0Inv => machine::x0_inv(ts)?,
        Gen::X1 => return machine::x1(ts).map(Some),
        Gen::X1Inv => return Ok(Some(machine::x1_inv(ts, disabled)?)),
        other => return Err(TapeError::InvalidInput(format!("{other} is not a generator of F")).into()),
    }
    Ok(None)
}
