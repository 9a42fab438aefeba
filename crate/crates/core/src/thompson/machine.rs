//! Two-tape programs for Thompson's group `F` on `a/b/#` normal forms.
//!
//! Tape 2 cells are [`Sym::Pack`] with two tracks: bits 0–1 hold a copy of a
//! tape-1 symbol (used by `x1` to keep its input), bit 2 is the unary
//! counter `b^R`. Finite control only ever holds saturating counters.

use super::Case;
use crate::error::{Error, TapeError};
use crate::tapevm::{Sym, TapeSet};

const W: usize = 0;
const K: usize = 1;
const R_BIT: u16 = 4;
const V_MASK: u16 = 3;

type TResult<T> = Result<T, TapeError>;

fn fault(ts: &TapeSet, reason: &str) -> TapeError {
    TapeError::TapeFault { tape: W, head: ts.tape(W).head(), reason: reason.into() }
}

fn bits(s: Sym) -> u16 {
    match s {
        Sym::Pack(b) => b,
        _ => 0,
    }
}

fn v_code(s: Sym) -> u16 {
    match s {
        Sym::La => 1,
        Sym::Lb => 2,
        Sym::Hash => 3,
        _ => 0,
    }
}

fn v_sym(code: u16) -> Sym {
    match code & V_MASK {
        1 => Sym::La,
        2 => Sym::Lb,
        3 => Sym::Hash,
        _ => Sym::Blank,
    }
}

fn r_here(ts: &mut TapeSet) -> TResult<bool> {
    Ok(bits(ts.read(K)?) & R_BIT != 0)
}

fn set_r(ts: &mut TapeSet, on: bool) -> TResult<()> {
    let b = bits(ts.read(K)?);
    ts.write(K, Sym::Pack(if on { b | R_BIT } else { b & !R_BIT }))
}

fn push_r(ts: &mut TapeSet) -> TResult<()> {
    ts.right(K)?;
    set_r(ts, true)
}

/// Clears the `R` track. The marked cells are `1..=R` and the head is at
/// most one cell past them.
fn clear_r(ts: &mut TapeSet) -> TResult<()> {
    if ts.read(K)? == Sym::Start {
        ts.right(K)?;
    }
    while r_here(ts)? {
        ts.right(K)?;
    }
    while ts.left(K)? != Sym::Start {
        set_r(ts, false)?;
    }
    Ok(())
}

/// Moves the tape-1 head onto the first blank.
fn to_end(ts: &mut TapeSet) -> TResult<()> {
    ts.rewind(W)?;
    while ts.right(W)? != Sym::Blank {}
    Ok(())
}

/// Leaves the head on the first symbol after the leading `a`s and reports
/// whether there were any.
fn skip_a(ts: &mut TapeSet) -> TResult<(Sym, bool)> {
    let mut s = ts.right(W)?;
    let mut any = false;
    while s == Sym::La {
        any = true;
        s = ts.right(W)?;
    }
    Ok((s, any))
}

/// Writes `b^R` on the `R` track and returns `CASE` (`R > j_n`). Both heads
/// end on the start markers' side: tape 1 at `⊞`, tape 2 on cell `R`.
/// Requires `s₀ > 0`.
pub fn compute_r(ts: &mut TapeSet) -> TResult<bool> {
    ts.rewind(W)?;
    ts.rewind(K)?;
    let mut s = ts.right(W)?;
    push_r(ts)?;
    let mut stop1 = false;
    loop {
        if s == Sym::Blank {
            stop1 = true;
            break;
        }
        if ts.read(K)? == Sym::Start {
            break;
        }
        match s {
            Sym::La => {}
            Sym::Lb => push_r(ts)?,
            Sym::Hash => {
                set_r(ts, false)?;
                ts.left(K)?;
            }
            _ => return Err(fault(ts, "symbol outside {a,b,#}")),
        }
        s = ts.right(W)?;
    }
    let case = stop1 || loop {
        match ts.read(W)? {
            Sym::Blank => break true,
            Sym::Lb => break false,
            _ => {
                ts.right(W)?;
            }
        }
    };
    while ts.read(K)? != Sym::Start {
        set_r(ts, false)?;
        ts.left(K)?;
    }
    if case {
        push_r(ts)?;
    }
    loop {
        match ts.read(W)? {
            Sym::Start => return Ok(case),
            Sym::Lb => push_r(ts)?,
            _ => {}
        }
        ts.left(W)?;
    }
}

/// Puts the tape-1 head on the `R`-th `#`, or returns `false` if there are
/// fewer. Tape 2 ends on cell `R`.
fn seek_hash_r(ts: &mut TapeSet) -> TResult<bool> {
    ts.rewind(W)?;
    ts.rewind(K)?;
    loop {
        match ts.right(W)? {
            Sym::Blank => return Ok(false),
            Sym::Hash => {
                ts.right(K)?;
                let last = bits(ts.right(K)?) & R_BIT == 0;
                ts.left(K)?;
                if last {
                    return Ok(true);
                }
            }
            _ => {}
        }
    }
}

/// From the head, moves right to the next `#`; `false` at the end.
fn next_hash(ts: &mut TapeSet) -> TResult<bool> {
    loop {
        match ts.right(W)? {
            Sym::Blank => return Ok(false),
            Sym::Hash => return Ok(true),
            _ => {}
        }
    }
}

/// Compares `R` with the number `M` of `#`s. On `Greater` tape 1 is on the
/// first blank and tape 2 on cell `M + 1`.
fn compare_r_m(ts: &mut TapeSet) -> TResult<std::cmp::Ordering> {
    use std::cmp::Ordering::*;
    ts.rewind(W)?;
    ts.rewind(K)?;
    loop {
        match ts.right(W)? {
            Sym::Blank => break,
            Sym::Hash => {
                ts.right(K)?;
                if !r_here(ts)? {
                    return Ok(Less);
                }
            }
            _ => {}
        }
    }
    ts.right(K)?;
    Ok(if r_here(ts)? { Greater } else { Equal })
}

/// Writes `#` on tape 1 for each remaining marked cell on tape 2.
fn append_hashes(ts: &mut TapeSet) -> TResult<()> {
    while r_here(ts)? {
        ts.write(W, Sym::Hash)?;
        ts.right(W)?;
        ts.right(K)?;
    }
    Ok(())
}

/// Erases `#`s leftwards from the head.
fn erase_hashes_back(ts: &mut TapeSet) -> TResult<()> {
    while ts.left(W)? == Sym::Hash {
        ts.write(W, Sym::Blank)?;
    }
    Ok(())
}

/// Right multiplication by `x₀`.
pub fn x0(ts: &mut TapeSet) -> TResult<()> {
    ts.rewind(W)?;
    match skip_a(ts)?.0 {
        Sym::Lb => ts.delete_here(W, 1),
        Sym::Blank => ts.write(W, Sym::La),
        Sym::Hash => ts.insert_here(W, &[Sym::La, Sym::Hash]),
        _ => Err(fault(ts, "symbol outside {a,b,#}")),
    }
}

/// Right multiplication by `x₀⁻¹`.
pub fn x0_inv(ts: &mut TapeSet) -> TResult<()> {
    ts.rewind(W)?;
    match skip_a(ts)? {
        (Sym::Lb, _) | (Sym::Hash, false) => ts.insert_here(W, &[Sym::Lb]),
        (Sym::Blank, false) => ts.write(W, Sym::Lb),
        (Sym::Blank, true) => {
            ts.left(W)?;
            ts.write(W, Sym::Blank)
        }
        (Sym::Hash, true) => {
            // Block 1 empty: x₀^{r₀} η x₀⁻¹ = x₀^{r₀-1} η with indices lowered.
            let next = ts.right(W)?;
            ts.left(W)?;
            if next == Sym::Hash {
                ts.left(W)?;
                ts.delete_here(W, 2)
            } else {
                ts.insert_here(W, &[Sym::Lb])
            }
        }
        _ => Err(fault(ts, "symbol outside {a,b,#}")),
    }
}

/// Right multiplication by `x₁⁻¹`. Returns the case that fired; with
/// `disabled` set to that case the edit is skipped (a planted mutant).
pub fn x1_inv(ts: &mut TapeSet, disabled: Option<Case>) -> TResult<Case> {
    let case = x1_inv_dispatch(ts, disabled)?;
    clear_r(ts)?;
    Ok(case)
}

fn x1_inv_dispatch(ts: &mut TapeSet, disabled: Option<Case>) -> TResult<Case> {
    use Case::*;
    let live = |c: Case| disabled != Some(c);
    ts.rewind(W)?;
    let (s, _) = skip_a(ts)?;
    if s == Sym::Blank {
        if live(C1_1) {
            ts.write(W, Sym::Hash)?;
            ts.right(W)?;
            ts.write(W, Sym::Lb)?;
        }
        return Ok(C1_1);
    }
    if s == Sym::Hash {
        let mut r1 = 0u8;
        let mut s = ts.right(W)?;
        while s == Sym::La {
            r1 = (r1 + 1).min(2);
            s = ts.right(W)?;
        }
        let s1 = s == Sym::Lb;
        while s == Sym::Lb {
            s = ts.right(W)?;
        }
        let block2 = s == Sym::Hash && {
            let t = ts.right(W)?;
            ts.left(W)?;
            matches!(t, Sym::La | Sym::Lb)
        };
        let case = if r1 == 0 || s1 || block2 {
            C1_2
        } else if s == Sym::Blank && r1 > 1 {
            C1_3a
        } else if s == Sym::Blank {
            C1_3b
        } else {
            C1_3c
        };
        if live(case) {
            match case {
                C1_2 => ts.insert_here(W, &[Sym::Lb])?,
                C1_3a => {
                    ts.left(W)?;
                    ts.write(W, Sym::Blank)?;
                }
                C1_3b => {
                    ts.left(W)?;
                    ts.write(W, Sym::Blank)?;
                    ts.left(W)?;
                    ts.write(W, Sym::Blank)?;
                }
                _ => {
                    ts.left(W)?;
                    ts.delete_here(W, 2)?;
                }
            }
        }
        return Ok(case);
    }
    if compute_r(ts)? {
        match compare_r_m(ts)? {
            std::cmp::Ordering::Greater => {
                if live(C2_1a) {
                    append_hashes(ts)?;
                    ts.write(W, Sym::Lb)?;
                }
                Ok(C2_1a)
            }
            std::cmp::Ordering::Equal => {
                if live(C2_1b) {
                    ts.left(W)?;
                    ts.write(W, Sym::Blank)?;
                    erase_hashes_back(ts)?;
                }
                Ok(C2_1b)
            }
            std::cmp::Ordering::Less => {
                if !seek_hash_r(ts)? {
                    return Err(fault(ts, "R-th # missing with R < M"));
                }
                let (s, any_a) = skip_a(ts)?;
                if s != Sym::Hash {
                    return Err(fault(ts, "block R holds a b although R > j_n"));
                }
                let case = if !any_a {
                    C2_1c1
                } else {
                    let next = ts.right(W)?;
                    ts.left(W)?;
                    if next == Sym::Hash {
                        C2_1c3
                    } else {
                        C2_1c2
                    }
                };
                if live(case) {
                    if case == C2_1c3 {
                        ts.left(W)?;
                        ts.delete_here(W, 2)?;
                    } else {
                        ts.insert_here(W, &[Sym::Lb])?;
                    }
                }
                Ok(case)
            }
        }
    } else {
        if !seek_hash_r(ts)? {
            return Err(fault(ts, "R-th # missing although R <= j_(t+1)"));
        }
        let (s, any_a) = skip_a(ts)?;
        let case = match s {
            Sym::Lb => C2_2_2a,
            Sym::Hash if !any_a => C2_2_2c,
            Sym::Hash => {
                let next = ts.right(W)?;
                ts.left(W)?;
                if next == Sym::Hash {
                    C2_2_1
                } else {
                    C2_2_2b
                }
            }
            _ => return Err(fault(ts, "block R is the unterminated last block")),
        };
        if live(case) {
            if case == C2_2_1 {
                ts.left(W)?;
                ts.delete_here(W, 2)?;
            } else {
                ts.insert_here(W, &[Sym::Lb])?;
            }
        }
        Ok(case)
    }
}

/// Linear scan for membership in the normal-form language.
fn scan_valid(ts: &mut TapeSet) -> TResult<bool> {
    ts.rewind(W)?;
    let mut s = ts.right(W)?;
    if s == Sym::Blank {
        return Ok(true);
    }
    let mut prev_both = false;
    loop {
        let mut has_a = false;
        while s == Sym::La {
            has_a = true;
            s = ts.right(W)?;
        }
        let mut has_b = false;
        while s == Sym::Lb {
            has_b = true;
            s = ts.right(W)?;
        }
        match s {
            Sym::Blank => return Ok(has_a != has_b),
            Sym::Hash if prev_both && !has_a && !has_b => return Ok(false),
            Sym::Hash => prev_both = has_a && has_b,
            _ => return Ok(false),
        }
        s = ts.right(W)?;
    }
}

/// Copies tape 1 onto the value track of tape 2.
fn save(ts: &mut TapeSet) -> TResult<()> {
    ts.rewind(W)?;
    ts.rewind(K)?;
    loop {
        let s = ts.right(W)?;
        ts.right(K)?;
        if s == Sym::Blank {
            return Ok(());
        }
        ts.write(K, Sym::Pack(v_code(s)))?;
    }
}

/// Rewrites tape 1 from the value track, blanking whatever follows.
fn restore(ts: &mut TapeSet) -> TResult<()> {
    ts.rewind(W)?;
    ts.rewind(K)?;
    loop {
        let code = bits(ts.right(K)?) & V_MASK;
        let cur = ts.right(W)?;
        if code == 0 {
            let mut cur = cur;
            while cur != Sym::Blank {
                ts.write(W, Sym::Blank)?;
                cur = ts.right(W)?;
            }
            return Ok(());
        }
        ts.write(W, v_sym(code))?;
    }
}

fn same_as_saved(ts: &mut TapeSet) -> TResult<bool> {
    ts.rewind(W)?;
    ts.rewind(K)?;
    loop {
        let s = ts.right(W)?;
        let saved = v_sym(bits(ts.right(K)?));
        if s != saved {
            return Ok(false);
        }
        if s == Sym::Blank {
            return Ok(true);
        }
    }
}

/// The `u`-from-`v` subroutine of `case`, in place on tape 1. `false` when
/// its shape precondition fails on `v`.
fn derive(ts: &mut TapeSet, case: Case) -> TResult<bool> {
    use Case::*;
    match case {
        C1_1 => {
            to_end(ts)?;
            let (last, _) = ts.left_guarded(W)?;
            let (before, _) = ts.left_guarded(W)?;
            if last != Sym::Lb || before != Sym::Hash {
                return Ok(false);
            }
            ts.write(W, Sym::Blank)?;
            ts.right(W)?;
            ts.write(W, Sym::Blank)?;
        }
        C1_2 => {
            ts.rewind(W)?;
            if skip_a(ts)?.0 != Sym::Hash || skip_a(ts)?.0 != Sym::Lb {
                return Ok(false);
            }
            ts.delete_here(W, 1)?;
        }
        C1_3a => {
            to_end(ts)?;
            ts.write(W, Sym::La)?;
        }
        C1_3b => {
            to_end(ts)?;
            ts.write(W, Sym::Hash)?;
            ts.right(W)?;
            ts.write(W, Sym::La)?;
        }
        C1_3c => {
            ts.rewind(W)?;
            if !next_hash(ts)? || !next_hash(ts)? {
                return Ok(false);
            }
            ts.insert_here(W, &[Sym::La, Sym::Hash])?;
        }
        C2_1a => {
            to_end(ts)?;
            if ts.left_guarded(W)?.0 != Sym::Lb {
                return Ok(false);
            }
            ts.write(W, Sym::Blank)?;
            erase_hashes_back(ts)?;
        }
        C2_1c1 | C2_1c2 => {
            to_end(ts)?;
            loop {
                match ts.left_guarded(W)? {
                    (Sym::Lb, _) => break,
                    (_, false) => return Ok(false),
                    _ => {}
                }
            }
            ts.delete_here(W, 1)?;
        }
        _ => {
            ts.rewind(W)?;
            if skip_a(ts)?.0 != Sym::Lb {
                return Ok(false);
            }
            compute_r(ts)?;
            return derive_with_r(ts, case);
        }
    }
    Ok(true)
}

fn derive_with_r(ts: &mut TapeSet, case: Case) -> TResult<bool> {
    use Case::*;
    match case {
        C2_1b => match compare_r_m(ts)? {
            std::cmp::Ordering::Less => return Ok(false),
            std::cmp::Ordering::Greater => {
                append_hashes(ts)?;
                ts.write(W, Sym::La)?;
            }
            std::cmp::Ordering::Equal => ts.write(W, Sym::La)?,
        },
        C2_1c3 | C2_2_1 => {
            if !seek_hash_r(ts)? || !next_hash(ts)? {
                return Ok(false);
            }
            ts.insert_here(W, &[Sym::La, Sym::Hash])?;
        }
        C2_2_2a => {
            if !seek_hash_r(ts)? || skip_a(ts)?.0 != Sym::Lb {
                return Ok(false);
            }
            ts.delete_here(W, 1)?;
        }
        C2_2_2b => {
            if !seek_hash_r(ts)? || !next_hash(ts)? || ts.left(W)? != Sym::Lb {
                return Ok(false);
            }
            ts.delete_here(W, 1)?;
        }
        C2_2_2c => {
            if !seek_hash_r(ts)? || ts.right(W)? != Sym::Lb {
                return Ok(false);
            }
            ts.delete_here(W, 1)?;
        }
        _ => unreachable!("case {case} does not use R"),
    }
    Ok(true)
}

/// Right multiplication by `x₁`: tries each case's `u`-from-`v` subroutine
/// and accepts the candidate whose `x₁⁻¹` image reproduces the input via
/// the same case.
pub fn x1(ts: &mut TapeSet) -> Result<Case, Error> {
    save(ts)?;
    for case in Case::ALL {
        restore(ts)?;
        let ok = derive(ts, case)?;
        clear_r(ts)?;
        if !ok || !scan_valid(ts)? {
            continue;
        }
        if x1_inv(ts, None)? == case && same_as_saved(ts)? {
            restore(ts)?;
            derive(ts, case)?;
            clear_r(ts)?;
            return Ok(case);
        }
    }
    let v: Vec<Sym> = ts.tape(K).content().iter().map(|&c| v_sym(bits(c))).collect();
    Err(Error::NoCaseMatched(crate::tapevm::render(&v)))
}
