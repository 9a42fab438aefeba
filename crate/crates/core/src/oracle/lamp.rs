use std::collections::BTreeSet;

use super::free::{F2Word, Letter};
use crate::gen::Gen;

pub type Z2Point = (i64, i64);

/// Element of `Z₂ ≀ Z²`: the set of lit lamps and the lamplighter position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LampConfigZ2 {
    pub lit: BTreeSet<Z2Point>,
    pub pos: Z2Point,
}

impl LampConfigZ2 {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Right multiplication by one wreath generator. Thompson generators are
    /// not wreath generators and leave the element unchanged.
    pub fn mul_gen(&self, g: Gen) -> Self {
        let mut out = self.clone();
        out.mul_gen_mut(g);
        out
    }

    pub fn mul_gen_mut(&mut self, g: Gen) {
        let (x, y) = self.pos;
        match g {
            Gen::A => self.pos = (x + 1, y),
            Gen::AInv => self.pos = (x - 1, y),
            Gen::B => self.pos = (x, y + 1),
            Gen::BInv => self.pos = (x, y - 1),
            Gen::C
                if !self.lit.remove(&self.pos) => {
                    self.lit.insert(self.pos);
                }
            _ => {}
        }
    }
}

/// Element of `Z₂ ≀ F₂` with lamps on reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LampConfigF2 {
    pub lit: BTreeSet<F2Word>,
    pub pos: F2Word,
}

impl LampConfigF2 {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn mul_gen(&self, g: Gen) -> Self {
        let mut out = self.clone();
        out.mul_gen_mut(g);
        out
    }

    pub fn mul_gen_mut(&mut self, g: Gen) {
        match g {
            Gen::A => self.pos.push(Letter::A),
            Gen::AInv => self.pos.push(Letter::AInv),
            Gen::B => self.pos.push(Letter::B),
            Gen::BInv => self.pos.push(Letter::BInv),
            Gen::C
                if !self.lit.remove(&self.pos) => {
                    self.lit.insert(self.pos.clone());
                }
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn z2_examples() {
        let e = LampConfigZ2::identity();
        let c = e.mul_gen(Gen::C);
        assert_eq!(c.lit.iter().copied().collect::<Vec<_>>(), vec![(0, 0)]);
        assert_eq!(c.pos, (0, 0));
        let ca = c.mul_gen(Gen::A);
        assert_eq!(ca.pos, (1, 0));
        assert_eq!(ca.lit, c.lit);
    }

    #[test]
    fn f2_examples() {
        let g = LampConfigF2 { lit: BTreeSet::new(), pos: F2Word::parse("a").unwrap() };
        assert_eq!(g.mul_gen(Gen::AInv), LampConfigF2::identity());
    }

    #[test]
    fn generator_then_inverse_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let mut z = LampConfigZ2::identity();
            let mut f = LampConfigF2::identity();
            for _ in 0..rng.gen_range(0..12) {
                let g = Gen::WREATH[rng.gen_range(0..5)];
                z = z.mul_gen(g);
                f = f.mul_gen(g);
            }
            for g in Gen::WREATH {
                assert_eq!(z.mul_gen(g).mul_gen(g.inverse()), z);
                assert_eq!(f.mul_gen(g).mul_gen(g.inverse()), f);
            }
            assert!(f.lit.iter().all(F2Word::is_reduced) && f.pos.is_reduced());
        }
    }
}
