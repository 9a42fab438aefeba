//! Two-tape programs for `Z₂ ≀ F₂`. Tape 1 holds the normal form, tape 2 is
//! a bracket stack.
//!
//! Right multiplication by `a` (resp. `b`) moves the lamplighter one step
//! along a horizontal (resp. vertical) line of the Cayley graph. Horizontal
//! lines are the top level and the `[ … ]` groups; vertical lines are the
//! `( … )` groups. The two programs are one routine parameterised by the
//! axis. `a⁻¹` and `b⁻¹` run the same routine between two mirror passes.

use crate::error::TapeError;
use crate::tapevm::{Sym, TapeSet};

const W: usize = 0;
const K: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    A,
    B,
}

impl Axis {
    /// Open bracket of the groups that are lines of this axis.
    fn line_open(self) -> Sym {
        match self {
            Axis::A => Sym::LBrack,
            Axis::B => Sym::LParen,
        }
    }

    fn line_close(self) -> Sym {
        match self {
            Axis::A => Sym::RBrack,
            Axis::B => Sym::RParen,
        }
    }

    /// Open bracket of the groups that cross lines of this axis.
    fn cross_open(self) -> Sym {
        match self {
            Axis::A => Sym::LParen,
            Axis::B => Sym::LBrack,
        }
    }

    fn cross_close(self) -> Sym {
        match self {
            Axis::A => Sym::RParen,
            Axis::B => Sym::RBrack,
        }
    }

    fn marked(self) -> Sym {
        match self {
            Axis::A => Sym::MarkParen,
            Axis::B => Sym::MarkBrack,
        }
    }

    /// Whether the stack top (or line-start symbol on tape 1) says we are on
    /// a line of this axis. The top level is a horizontal line.
    fn on_line(self, s: Sym) -> bool {
        s == self.line_open() || (self == Axis::A && s == Sym::Start)
    }

    fn on_cross(self, s: Sym) -> bool {
        s == self.cross_open() || (self == Axis::B && s == Sym::Start)
    }

    /// Unmarked pivots of the groups crossing this axis' lines.
    fn cross_pivot(self, s: Sym) -> bool {
        match self {
            Axis::A => is_d_pivot(s),
            Axis::B => is_e_pivot(s),
        }
    }

    /// Unmarked pivots of the groups that are lines of this axis.
    fn line_pivot(self, s: Sym) -> bool {
        match self {
            Axis::A => is_e_pivot(s),
            Axis::B => is_d_pivot(s),
        }
    }
}

fn is_d_pivot(s: Sym) -> bool {
    matches!(s, Sym::D0 | Sym::D1 | Sym::D0A | Sym::D1A)
}

fn is_e_pivot(s: Sym) -> bool {
    matches!(s, Sym::E0 | Sym::E1)
}

fn mark(s: Sym) -> Sym {
    use Sym::*;
    match s {
        D0 => D0C,
        D1 => D1C,
        D0A => D0B,
        D1A => D1B,
        E0 => E0C,
        E1 => E1C,
        Zero => C0,
        One => C1,
        A0 => B0,
        A1 => B1,
        other => other,
    }
}

fn unmark(s: Sym) -> Sym {
    use Sym::*;
    match s {
        D0C => D0,
        D1C => D1,
        D0B => D0A,
        D1B => D1A,
        E0C => E0,
        E1C => E1,
        C0 => Zero,
        C1 => One,
        B0 => A0,
        B1 => A1,
        other => other,
    }
}

/// Lamplighter tokens: C-symbols and B-symbols.
fn is_marker(s: Sym) -> bool {
    use Sym::*;
    matches!(s, C0 | C1 | D0C | D1C | E0C | E1C | B0 | B1 | D0B | D1B)
}

fn push(ts: &mut TapeSet, s: Sym) -> Result<(), TapeError> {
    ts.right(K)?;
    ts.write(K, s)
}

fn pop(ts: &mut TapeSet) -> Result<(), TapeError> {
    ts.write(K, Sym::Blank)?;
    ts.left(K).map(|_| ())
}

/// Stack bookkeeping for one tape-1 symbol. `false` on a bracket mismatch.
fn track(ts: &mut TapeSet, s: Sym) -> Result<bool, TapeError> {
    let opener = match s {
        Sym::LParen | Sym::LBrack => {
            push(ts, s)?;
            return Ok(true);
        }
        Sym::RParen => [Sym::LParen, Sym::MarkParen],
        Sym::RBrack => [Sym::LBrack, Sym::MarkBrack],
        _ => return Ok(true),
    };
    if !opener.contains(&ts.read(K)?) {
        return Ok(false);
    }
    pop(ts)?;
    Ok(true)
}

/// Flips the lamp under the lamplighter.
pub fn toggle(ts: &mut TapeSet) -> Result<(), TapeError> {
    use Sym::*;
    loop {
        let flipped = match ts.right(W)? {
            Blank => return Ok(()),
            D0C => D1C,
            D1C => D0C,
            E0C => E1C,
            E1C => E0C,
            D0B => D1B,
            D1B => D0B,
            C0 => C1,
            C1 => C0,
            B0 => B1,
            B1 => B0,
            _ => continue,
        };
        return ts.write(W, flipped);
    }
}

/// Moves the lamplighter one step forward along `axis`.
pub fn forward(ts: &mut TapeSet, axis: Axis) -> Result<(), TapeError> {
    let s = loop {
        match ts.right(W)? {
            Sym::Blank => return Ok(()),
            s if is_marker(s) => break s,
            s => {
                if !track(ts, s)? {
                    return Ok(());
                }
            }
        }
    };
    let top = ts.read(K)?;
    let plain = matches!(s, Sym::C0 | Sym::C1 | Sym::B0 | Sym::B1);
    if !plain && axis.cross_pivot(unmark(s)) {
        // Pivot of a crossing group: leave the group and step to the next
        // member of the enclosing line.
        if top != axis.cross_open() {
            return Ok(());
        }
        ts.write(K, axis.marked())?;
        ts.write(W, unmark(s))?;
        loop {
            let t = ts.right(W)?;
            if t == Sym::Blank {
                return Ok(());
            }
            if t == axis.cross_close() && ts.read(K)? == axis.marked() {
                pop(ts)?;
                break;
            }
            if !track(ts, t)? {
                return Ok(());
            }
        }
        let t = ts.right(W)?;
        arrive(ts, axis, t)
    } else if !plain {
        // Pivot of a line group: the next member is the first one after it.
        if top != axis.line_open() {
            return Ok(());
        }
        ts.write(W, unmark(s))?;
        let t = ts.right(W)?;
        arrive(ts, axis, t)
    } else if axis.on_line(top) {
        depart(ts, axis, s)
    } else if axis.on_cross(top) {
        wrap(ts, axis, s)
    } else {
        Ok(())
    }
}

/// Leaves a plain lamplighter token on a line of `axis` and arrives at the
/// next member.
fn depart(ts: &mut TapeSet, axis: Axis, s: Sym) -> Result<(), TapeError> {
    let mut hole = false;
    if s == Sym::C0 {
        let before = ts.left(W)?;
        ts.right(W)?;
        if axis.on_line(before) {
            // Leading 0s of a line are cut, so this C0 disappears; a group
            // that only existed for it collapses to a single token.
            if before != Sym::Start {
                let pivot = ts.right(W)?;
                let close = ts.right(W)?;
                if axis.line_pivot(pivot) && close == axis.line_close() {
                    for _ in 0..3 {
                        ts.write(W, Sym::Hole)?;
                        ts.left(W)?;
                    }
                    ts.write(W, mark(pivot_to_plain(pivot)))?;
                    return ts.compact(W);
                }
                ts.left(W)?;
                ts.left(W)?;
            }
            ts.write(W, Sym::Hole)?;
            hole = true;
        } else {
            ts.write(W, Sym::Zero)?;
        }
    } else {
        ts.write(W, unmark(s))?;
    }
    let t = ts.right(W)?;
    arrive(ts, axis, t)?;
    if hole {
        ts.compact(W)?;
    }
    Ok(())
}

/// The plain token a pivot becomes once its group is empty.
fn pivot_to_plain(s: Sym) -> Sym {
    use Sym::*;
    match s {
        D0 | E0 => Zero,
        D1 | E1 => One,
        D0A => A0,
        D1A => A1,
        other => other,
    }
}

/// Puts the lamplighter on the member `t` just reached.
fn arrive(ts: &mut TapeSet, axis: Axis, t: Sym) -> Result<(), TapeError> {
    match t {
        Sym::Zero | Sym::One | Sym::A0 | Sym::A1 => ts.write(W, mark(t)),
        Sym::Blank if axis == Axis::A => ts.write(W, Sym::C0),
        t if t == axis.line_close() => ts.insert_here(W, &[Sym::C0]),
        t if axis.line_pivot(t) => ts.write(W, mark(t)),
        t if t == axis.cross_open() => {
            push(ts, axis.marked())?;
            loop {
                let q = ts.right(W)?;
                if q == Sym::Blank {
                    return Ok(());
                }
                if axis.cross_pivot(q) && ts.read(K)? == axis.marked() {
                    return ts.write(W, mark(q));
                }
                if !track(ts, q)? {
                    return Ok(());
                }
            }
        }
        _ => Ok(()),
    }
}

/// The lamplighter steps off a line crossing `axis`: its node opens a new
/// `axis` line group holding the new position.
fn wrap(ts: &mut TapeSet, axis: Axis, s: Sym) -> Result<(), TapeError> {
    use Sym::*;
    let pivot = match (axis, s) {
        (Axis::A, C0) => E0,
        (Axis::A, C1) => E1,
        (Axis::B, C0) => D0,
        (Axis::B, C1) => D1,
        (Axis::B, B0) => D0A,
        (Axis::B, B1) => D1A,
        _ => return Ok(()),
    };
    ts.write(W, axis.line_open())?;
    ts.right(W)?;
    ts.insert_here(W, &[pivot, C0, axis.line_close()])
}

/// Empties the stack tape.
pub fn clear_stack(ts: &mut TapeSet) -> Result<(), TapeError> {
    while ts.read(K)? != Sym::Start {
        ts.write(K, Sym::Blank)?;
        ts.left(K)?;
    }
    Ok(())
}

fn swap_brackets(s: Sym) -> Sym {
    match s {
        Sym::LParen => Sym::RParen,
        Sym::RParen => Sym::LParen,
        Sym::LBrack => Sym::RBrack,
        Sym::RBrack => Sym::LBrack,
        other => other,
    }
}

/// Reverses tape 1 and swaps bracket directions, via tape 2 (which must be
/// empty) and rewinds both heads. The result is the normal form of the
/// image under `a ↦ a⁻¹, b ↦ b⁻¹`.
pub fn mirror(ts: &mut TapeSet) -> Result<(), TapeError> {
    ts.rewind(W)?;
    loop {
        let s = ts.right(W)?;
        ts.right(K)?;
        if s == Sym::Blank {
            break;
        }
        ts.write(K, swap_brackets(s))?;
    }
    ts.left(K)?;
    ts.rewind(W)?;
    ts.right(W)?;
    loop {
        let s = ts.read(K)?;
        if s == Sym::Start {
            return ts.rewind(W);
        }
        ts.write(W, s)?;
        ts.right(W)?;
        ts.write(K, Sym::Blank)?;
        ts.left(K)?;
    }
}
