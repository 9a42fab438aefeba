//! Exponent sequences `r₀…r_M`, `s₀…s_M` and their `a/b/#` spelling.

use std::fmt;

use crate::error::{Error, Result};
use crate::tapevm::Sym;

/// `x₀^{r₀} x₁^{r₁} … x_M^{r_M} x_M^{-s_M} … x₀^{-s₀}` in the generators of the
/// infinite presentation. Both vectors empty means the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExpSeq {
    pub r: Vec<u64>,
    pub s: Vec<u64>,
}

impl ExpSeq {
    pub fn identity() -> Self {
        ExpSeq::default()
    }

    pub fn is_identity(&self) -> bool {
        self.r.is_empty()
    }

    /// Index of the last block, `None` for the identity.
    pub fn m(&self) -> Option<usize> {
        self.r.len().checked_sub(1)
    }

    /// Checks the two structural clauses; `Err` names the one violated.
    pub fn check(&self) -> Result<()> {
        if self.r.len() != self.s.len() {
            return Err(Error::NotInLanguage("r and s have different lengths".into()));
        }
        let Some(m) = self.m() else { return Ok(()) };
        if (self.r[m] > 0) == (self.s[m] > 0) {
            return Err(Error::NotInLanguage(format!("exactly one of r_{m}, s_{m} must be nonzero")));
        }
        for i in 0..m {
            if self.r[i] > 0 && self.s[i] > 0 && self.r[i + 1] + self.s[i + 1] == 0 {
                return Err(Error::NotInLanguage(format!("r_{i} s_{i} > 0 but block {} is empty", i + 1)));
            }
        }
        Ok(())
    }

    pub fn parse(nf: &[Sym]) -> Result<Self> {
        let mut out = ExpSeq::identity();
        if nf.is_empty() {
            return Ok(out);
        }
        for (i, block) in nf.split(|&s| s == Sym::Hash).enumerate() {
            let r = block.iter().take_while(|&&s| s == Sym::La).count();
            let s = block[r..].iter().take_while(|&&s| s == Sym::Lb).count();
            if let Some(bad) = block[r + s..].first() {
                return Err(Error::NotInLanguage(format!("block {i} is not a*b* (found {bad})")));
            }
            out.r.push(r as u64);
            out.s.push(s as u64);
        }
        out.check()?;
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let syms = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'a' => Ok(Sym::La),
                'b' => Ok(Sym::Lb),
                '#' => Ok(Sym::Hash),
                other => Err(Error::NotInLanguage(format!("symbol {other} outside {{a,b,#}}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::parse(&syms)
    }

    pub fn to_syms(&self) -> Vec<Sym> {
        let mut out = Vec::new();
        for (i, (&r, &s)) in self.r.iter().zip(&self.s).enumerate() {
            if i > 0 {
                out.push(Sym::Hash);
            }
            out.extend(std::iter::repeat_n(Sym::La, r as usize));
            out.extend(std::iter::repeat_n(Sym::Lb, s as usize));
        }
        out
    }
}

impl fmt::Display for ExpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::tapevm::render(&self.to_syms()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert!(ExpSeq::from_text("").unwrap().is_identity());
        let e = ExpSeq::from_text("a#b").unwrap();
        assert_eq!((e.r.clone(), e.s.clone(), e.m()), (vec![1, 0], vec![0, 1], Some(1)));
        for bad in ["ab#ba", "#", "ab", "a#", "ab##a", "abc", "b#"] {
            assert!(matches!(ExpSeq::from_text(bad), Err(Error::NotInLanguage(_))), "{bad}");
        }
        for good in ["b", "a", "ab#a", "##a", "aab#b", "b##b#b"] {
            assert_eq!(ExpSeq::from_text(good).unwrap().to_string(), good);
        }
    }

    fn exp_seq() -> impl Strategy<Value = ExpSeq> {
        prop::collection::vec((0u64..4, 0u64..4), 0..8).prop_filter_map("invalid", |blocks| {
            let e = ExpSeq { r: blocks.iter().map(|b| b.0).collect(), s: blocks.iter().map(|b| b.1).collect() };
            e.check().ok().map(|_| e)
        })
    }

    proptest! {
        #[test]
        fn serialization_is_exact_inverse(e in exp_seq()) {
            prop_assert_eq!(ExpSeq::parse(&e.to_syms()).unwrap(), e);
        }
    }
}
