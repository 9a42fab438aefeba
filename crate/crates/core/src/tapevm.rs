//! Instrumented position-faithful multi-tape machine.
//!
//! Every generator program in this crate touches its tapes only through
//! [`TapeSet::prim`] (or the thin wrappers around it), so `steps` is an exact
//! count of primitive tape actions. Finite-control state lives in ordinary
//! local variables and is free.

use std::fmt;

use crate::error::TapeError;

/// One global tape alphabet shared by all three groups.
///
/// Each group declares the subset it accepts as input/output alphabet.
/// `Pack` is a multi-track work cell used on auxiliary tapes; its layout is
/// owned by the program that writes it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    /// Start marker, cell 0 of every tape.
    Start,
    Blank,
    Zero,
    One,
    C0,
    C1,
    D0,
    D1,
    E0,
    E1,
    LParen,
    RParen,
    LBrack,
    RBrack,
    D0A,
    D1A,
    D0B,
    D1B,
    D0C,
    D1C,
    E0C,
    E1C,
    A0,
    A1,
    B0,
    B1,
    /// Thompson `a`.
    La,
    /// Thompson `b`.
    Lb,
    Hash,
    /// Unary turn counter cell.
    Turn,
    /// Marked `(` on a stack tape.
    MarkParen,
    /// Marked `[` on a stack tape.
    MarkBrack,
    /// Cell scheduled for removal by [`TapeSet::compact`].
    Hole,
    Pack(u16),
}

impl Sym {
    /// ASCII rendering used by the CLI and test vectors.
    pub fn text(self) -> &'static str {
        use Sym::*;
        match self {
            Start => "^",
            Blank => "_",
            Zero => "0",
            One => "1",
            C0 => "C0",
            C1 => "C1",
            D0 => "D0",
            D1 => "D1",
            E0 => "E0",
            E1 => "E1",
            LParen => "(",
            RParen => ")",
            LBrack => "[",
            RBrack => "]",
            D0A => "D0A",
            D1A => "D1A",
            D0B => "D0B",
            D1B => "D1B",
            D0C => "D0C",
            D1C => "D1C",
            E0C => "E0C",
            E1C => "E1C",
            A0 => "A0",
            A1 => "A1",
            B0 => "B0",
            B1 => "B1",
            La => "a",
            Lb => "b",
            Hash => "#",
            Turn => "T",
            MarkParen => "(*",
            MarkBrack => "[*",
            Hole => "~",
            Pack(_) => "<pack>",
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Pack(v) => write!(f, "<{v:04x}>"),
            s => f.write_str(s.text()),
        }
    }
}

/// Renders a token sequence as ASCII text (tokens are concatenated).
pub fn render(tokens: &[Sym]) -> String {
    tokens.iter().map(|s| s.text()).collect()
}

/// Maximal-munch tokenizer over `alphabet`. Whitespace is ignored.
pub fn tokenize(text: &str, alphabet: &[Sym]) -> Result<Vec<Sym>, TapeError> {
    let mut by_len: Vec<Sym> = alphabet.to_vec();
    by_len.sort_by_key(|s| std::cmp::Reverse(s.text().len()));
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let tok = by_len
            .iter()
            .find(|s| rest.starts_with(s.text()))
            .copied()
            .ok_or_else(|| TapeError::InvalidInput(format!("unknown token at `{rest}`")))?;
        out.push(tok);
        rest = rest[tok.text().len()..].trim_start();
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    Read,
    Write(Sym),
    Left,
    Right,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Read => f.write_str("read"),
            Action::Write(_) => f.write_str("write"),
            Action::Left => f.write_str("left"),
            Action::Right => f.write_str("right"),
        }
    }
}

/// A semi-infinite tape: cell 0 holds [`Sym::Start`], unwritten cells read blank.
#[derive(Clone, Debug)]
pub struct Tape {
    cells: Vec<Sym>,
    head: usize,
}

impl Tape {
    fn with_content(content: &[Sym]) -> Self {
        let mut cells = Vec::with_capacity(content.len() + 8);
        cells.push(Sym::Start);
        cells.extend_from_slice(content);
        Tape { cells, head: 0 }
    }

    pub fn head(&self) -> usize {
        self.head
    }

    /// Symbol at `idx` without costing a step (inspection only).
    pub fn peek(&self, idx: usize) -> Sym {
        self.cells.get(idx).copied().unwrap_or(Sym::Blank)
    }

    /// Written cells after the start marker, trailing blanks trimmed.
    pub fn content(&self) -> &[Sym] {
        let mut end = self.cells.len();
        while end > 1 && self.cells[end - 1] == Sym::Blank {
            end -= 1;
        }
        &self.cells[1..end]
    }
}

#[derive(Clone, Debug)]
pub struct TraceRow {
    pub step: u64,
    pub tape: usize,
    pub action: Action,
    pub symbol: Sym,
    pub head: usize,
}

/// `k` tapes plus a global step counter.
#[derive(Clone, Debug)]
pub struct TapeSet {
    tapes: Vec<Tape>,
    steps: u64,
    trace: Option<Vec<TraceRow>>,
}

impl TapeSet {
    /// Tape 0 holds `⊞ input ⊡…`, the others `⊞ ⊡…`; heads at 0, steps 0.
    pub fn new(input: &[Sym], k: usize) -> Result<Self, TapeError> {
        if k == 0 {
            return Err(TapeError::InvalidInput("a tape set needs at least one tape".into()));
        }
        if let Some(bad) = input.iter().find(|s| matches!(s, Sym::Start | Sym::Blank)) {
            return Err(TapeError::InvalidInput(format!("reserved symbol {bad} in input")));
        }
        let mut tapes = vec![Tape::with_content(input)];
        tapes.extend((1..k).map(|_| Tape::with_content(&[])));
        Ok(TapeSet { tapes, steps: 0, trace: None })
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.tapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tapes.is_empty()
    }

    pub fn tape(&self, i: usize) -> &Tape {
        &self.tapes[i]
    }

    /// Applies one primitive action to tape `t` and returns the symbol under
    /// the head afterwards. Costs exactly one step.
    pub fn prim(&mut self, t: usize, action: Action) -> Result<Sym, TapeError> {
        let k = self.tapes.len();
        let tape = self
            .tapes
            .get_mut(t)
            .ok_or_else(|| TapeError::TapeFault { tape: t, head: 0, reason: format!("no tape {t} of {k}") })?;
        match action {
            Action::Read => {}
            Action::Write(sym) => {
                if tape.head == 0 {
                    return Err(TapeError::TapeFault { tape: t, head: 0, reason: "overwrite of start marker".into() });
                }
                if sym == Sym::Start {
                    return Err(TapeError::TapeFault { tape: t, head: tape.head, reason: "start marker written".into() });
                }
                if tape.head >= tape.cells.len() {
                    tape.cells.resize(tape.head + 1, Sym::Blank);
                }
                tape.cells[tape.head] = sym;
            }
            Action::Left => {
                if tape.head == 0 {
                    return Err(TapeError::TapeFault { tape: t, head: 0, reason: "move left of start marker".into() });
                }
                tape.head -= 1;
            }
            Action::Right => tape.head += 1,
        }
        self.steps += 1;
        let symbol = tape.peek(tape.head);
        if let Some(trace) = self.trace.as_mut() {
            trace.push(TraceRow { step: self.steps, tape: t, action, symbol, head: tape.head });
        }
        Ok(symbol)
    }

    #[inline]
    pub fn read(&mut self, t: usize) -> Result<Sym, TapeError> {
        self.prim(t, Action::Read)
    }

    #[inline]
    pub fn write(&mut self, t: usize, sym: Sym) -> Result<(), TapeError> {
        self.prim(t, Action::Write(sym)).map(|_| ())
    }

    /// Moves right and returns the newly scanned symbol.
    #[inline]
    pub fn right(&mut self, t: usize) -> Result<Sym, TapeError> {
        self.prim(t, Action::Right)
    }

    /// Moves left and returns the newly scanned symbol.
    #[inline]
    pub fn left(&mut self, t: usize) -> Result<Sym, TapeError> {
        self.prim(t, Action::Left)
    }

    /// Moves left unless the head is on the start marker. Returns the symbol
    /// under the head afterwards and whether a move happened.
    pub fn left_guarded(&mut self, t: usize) -> Result<(Sym, bool), TapeError> {
        if self.read(t)? == Sym::Start {
            return Ok((Sym::Start, false));
        }
        Ok((self.left(t)?, true))
    }

    /// Rewinds tape `t` to the start marker.
    pub fn rewind(&mut self, t: usize) -> Result<(), TapeError> {
        while self.read(t)? != Sym::Start {
            self.left(t)?;
        }
        Ok(())
    }

    /// Inserts `syms` before the cell under the head by carrying the rest of
    /// the content to the right. The carry buffer holds at most `syms.len()`
    /// cells, so this is finite control for the short inserts used here.
    /// The head ends on the first blank after the content.
    pub fn insert_here(&mut self, t: usize, syms: &[Sym]) -> Result<(), TapeError> {
        let mut carry: std::collections::VecDeque<Sym> = syms.iter().copied().collect();
        loop {
            let cur = self.read(t)?;
            let out = carry.pop_front().unwrap_or(Sym::Blank);
            if out == Sym::Blank && cur == Sym::Blank && carry.iter().all(|&s| s == Sym::Blank) {
                return Ok(());
            }
            self.write(t, out)?;
            carry.push_back(cur);
            self.right(t)?;
        }
    }

    /// Deletes `k` cells starting at the head by carrying the remaining
    /// content `k` cells to the left. The head ends past the content.
    pub fn delete_here(&mut self, t: usize, k: usize) -> Result<(), TapeError> {
        loop {
            for _ in 0..k {
                self.right(t)?;
            }
            let sym = self.read(t)?;
            for _ in 0..k {
                self.left(t)?;
            }
            self.write(t, sym)?;
            self.right(t)?;
            if sym == Sym::Blank {
                // Blank out the tail that was carried away.
                for _ in 1..k {
                    self.write(t, Sym::Blank)?;
                    self.right(t)?;
                }
                return Ok(());
            }
        }
    }

    /// Removes the (contiguous, at most four) [`Sym::Hole`] cells written
    /// earlier on tape `t`. Rewinds first; the head ends past the content.
    pub fn compact(&mut self, t: usize) -> Result<(), TapeError> {
        self.rewind(t)?;
        loop {
            match self.right(t)? {
                Sym::Blank => return Ok(()),
                Sym::Hole => break,
                _ => {}
            }
        }
        let mut holes = 1;
        while holes < 4 {
            if self.right(t)? == Sym::Hole {
                holes += 1;
            } else {
                self.left(t)?;
                break;
            }
        }
        // On the last hole; walk back to the first.
        for _ in 1..holes {
            self.left(t)?;
        }
        self.delete_here(t, holes)
    }

    /// Trace rows as CSV `step#,tape#,action,symbol,head`.
    pub fn trace_csv(&self) -> Option<String> {
        self.trace.as_ref().map(|rows| {
            let mut out = String::from("step,tape,action,symbol,head\n");
            for r in rows {
                out.push_str(&format!("{},{},{},{},{}\n", r.step, r.tape + 1, r.action, r.symbol, r.head));
            }
            out
        })
    }
}

/// Output of a position-faithful run: tape 0 between `⊞` and the first `⊡`.
pub fn read_output(ts: &TapeSet, sigma: &[Sym]) -> Result<Vec<Sym>, TapeError> {
    let tape = ts.tape(0);
    let mut out = Vec::new();
    for idx in 1.. {
        let s = tape.peek(idx);
        if s == Sym::Blank {
            break;
        }
        if !sigma.contains(&s) {
            return Err(TapeError::OutputFault { index: idx, symbol: s.to_string() });
        }
        out.push(s);
    }
    Ok(out)
}

/// Result of running one generator program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub output: Vec<Sym>,
    pub steps: u64,
}

/// Evidence row for the linear step bound.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct StepReport {
    pub input_len: usize,
    pub steps: u64,
    pub gen: String,
    pub group: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn init_layout() {
        let ts = TapeSet::new(&[Sym::C0], 2).unwrap();
        assert_eq!(ts.tape(0).peek(0), Sym::Start);
        assert_eq!(ts.tape(0).peek(1), Sym::C0);
        assert_eq!(ts.tape(0).peek(2), Sym::Blank);
        assert_eq!(ts.tape(1).peek(1), Sym::Blank);
        assert_eq!((ts.tape(0).head(), ts.tape(1).head(), ts.steps()), (0, 0, 0));

        let ts = TapeSet::new(&[], 2).unwrap();
        assert_eq!(ts.tape(0).peek(1), Sym::Blank);

        let ts = TapeSet::new(&[Sym::La, Sym::Lb, Sym::Hash], 1).unwrap();
        assert_eq!(ts.tape(0).content(), &[Sym::La, Sym::Lb, Sym::Hash]);
        assert_eq!(ts.len(), 1);
    }

    #[test]
    fn init_rejects_reserved() {
        assert!(matches!(TapeSet::new(&[Sym::Blank], 2), Err(TapeError::InvalidInput(_))));
        assert!(matches!(TapeSet::new(&[Sym::Start], 2), Err(TapeError::InvalidInput(_))));
        assert!(matches!(TapeSet::new(&[], 0), Err(TapeError::InvalidInput(_))));
    }

    #[test]
    fn prim_basics() {
        let mut ts = TapeSet::new(&[], 2).unwrap();
        assert_eq!(ts.read(0).unwrap(), Sym::Start);
        assert_eq!(ts.steps(), 1);
        ts.right(0).unwrap();
        ts.write(0, Sym::C1).unwrap();
        assert_eq!(ts.read(0).unwrap(), Sym::C1);
        assert_eq!(ts.steps(), 4);
        let mut ts = TapeSet::new(&[], 1).unwrap();
        assert!(matches!(ts.left(0), Err(TapeError::TapeFault { .. })));
        assert!(matches!(ts.write(0, Sym::One), Err(TapeError::TapeFault { .. })));
        assert_eq!(ts.steps(), 0);
    }

    #[test]
    fn output_is_prefix_before_first_blank() {
        let mut ts = TapeSet::new(&[Sym::Zero, Sym::C0, Sym::One], 1).unwrap();
        let sigma = [Sym::Zero, Sym::One, Sym::C0, Sym::C1];
        for _ in 0..3 {
            ts.right(0).unwrap();
        }
        ts.write(0, Sym::Blank).unwrap();
        ts.right(0).unwrap();
        ts.write(0, Sym::Turn).unwrap();
        assert_eq!(read_output(&ts, &sigma).unwrap(), vec![Sym::Zero, Sym::C0]);

        let ts = TapeSet::new(&[], 1).unwrap();
        assert!(read_output(&ts, &sigma).unwrap().is_empty());

        let ts = TapeSet::new(&[Sym::Turn], 1).unwrap();
        assert!(matches!(read_output(&ts, &sigma), Err(TapeError::OutputFault { .. })));
    }

    #[test]
    fn shifts() {
        let sigma = [Sym::La, Sym::Lb, Sym::Hash];
        let mut ts = TapeSet::new(&tokenize("ab#b", &sigma).unwrap(), 1).unwrap();
        ts.right(0).unwrap();
        ts.right(0).unwrap();
        ts.insert_here(0, &[Sym::Hash, Sym::La]).unwrap();
        assert_eq!(ts.tape(0).head(), 7);
        assert_eq!(render(&read_output(&ts, &sigma).unwrap()), "a#ab#b");
        ts.rewind(0).unwrap();
        ts.right(0).unwrap();
        ts.right(0).unwrap();
        ts.delete_here(0, 3).unwrap();
        assert_eq!(render(&read_output(&ts, &sigma).unwrap()), "a#b");
        assert_eq!(ts.tape(0).content().len(), 3);
        ts.rewind(0).unwrap();
        ts.right(0).unwrap();
        ts.right(0).unwrap();
        ts.write(0, Sym::Hole).unwrap();
        ts.compact(0).unwrap();
        assert_eq!(render(&read_output(&ts, &sigma).unwrap()), "ab");
        assert_eq!(ts.tape(0).content().len(), 2);
    }

    #[test]
    fn trace_rows() {
        let mut ts = TapeSet::new(&[Sym::One], 2).unwrap().with_trace();
        ts.right(0).unwrap();
        ts.read(1).unwrap();
        let csv = ts.trace_csv().unwrap();
        assert_eq!(csv, "step,tape,action,symbol,head\n1,1,right,1,1\n2,2,read,^,0\n");
    }

    #[test]
    fn tokenizer_maximal_munch() {
        let alpha = [Sym::Zero, Sym::One, Sym::C0, Sym::D0, Sym::D0A];
        assert_eq!(tokenize("D0AD0 C0", &alpha).unwrap(), vec![Sym::D0A, Sym::D0, Sym::C0]);
        assert!(tokenize("D2", &alpha).is_err());
    }

    fn action() -> impl Strategy<Value = (usize, u8)> {
        (0usize..3, 0u8..4)
    }

    proptest! {
        #[test]
        fn steps_count_and_isolation(actions in proptest::collection::vec(action(), 0..200)) {
            let mut ts = TapeSet::new(&[Sym::One, Sym::Zero], 3).unwrap();
            let mut applied = 0u64;
            for (t, a) in actions {
                let before: Vec<(Vec<Sym>, usize)> =
                    (0..3).map(|i| (ts.tape(i).content().to_vec(), ts.tape(i).head())).collect();
                let act = match a {
                    0 => Action::Read,
                    1 => Action::Write(Sym::Turn),
                    2 => Action::Left,
                    _ => Action::Right,
                };
                if ts.prim(t, act).is_ok() {
                    applied += 1;
                }
                prop_assert_eq!(ts.steps(), applied);
                for (j, b) in before.iter().enumerate() {
                    if j != t {
                        prop_assert_eq!(&(ts.tape(j).content().to_vec(), ts.tape(j).head()), b);
                    }
                }
            }
        }
    }
}
