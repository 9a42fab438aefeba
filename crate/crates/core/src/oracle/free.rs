use std::fmt;

/// Letters of the free group on `a`, `b`; `A = a⁻¹`, `B = b⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn is_a(self) -> bool {
        matches!(self, Letter::A | Letter::AInv)
    }

    pub fn is_b(self) -> bool {
        !self.is_a()
    }

    fn ch(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }
}

/// A freely reduced word. Appending cancels against the last letter, so a
/// word is reduced by construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Word(Vec<Letter>);

impl F2Word {
    pub fn identity() -> Self {
        F2Word(Vec::new())
    }

    /// Reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = F2Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Parses `a`, `A`, `b`, `B` letters (reducing as it goes).
    pub fn parse(text: &str) -> Option<Self> {
        text.chars()
            .map(|c| match c {
                'a' => Some(Letter::A),
                'A' => Some(Letter::AInv),
                'b' => Some(Letter::B),
                'B' => Some(Letter::BInv),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(F2Word::reduce)
    }

    /// Right-multiplies by one letter.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn times(&self, l: Letter) -> Self {
        let mut w = self.clone();
        w.push(l);
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }
}

impl fmt::Display for F2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        self.0.iter().try_for_each(|l| write!(f, "{}", l.ch()))
    }
}
