use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Semigroup generators of the three groups, in CLI spelling
/// (`a`, `a-`, …, `x1-`; a trailing `-` marks the inverse).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Gen {
    A,
    AInv,
    B,
    BInv,
    C,
    X0,
    X0Inv,
    X1,
    X1Inv,
}

impl Gen {
    pub const WREATH: [Gen; 5] = [Gen::A, Gen::AInv, Gen::B, Gen::BInv, Gen::C];
    pub const THOMPSON: [Gen; 4] = [Gen::X0, Gen::X0Inv, Gen::X1, Gen::X1Inv];

    pub fn inverse(self) -> Gen {
        match self {
            Gen::A => Gen::AInv,
            Gen::AInv => Gen::A,
            Gen::B => Gen::BInv,
            Gen::BInv => Gen::B,
            Gen::C => Gen::C,
            Gen::X0 => Gen::X0Inv,
            Gen::X0Inv => Gen::X0,
            Gen::X1 => Gen::X1Inv,
            Gen::X1Inv => Gen::X1,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Gen::A => "a",
            Gen::AInv => "a-",
            Gen::B => "b",
            Gen::BInv => "b-",
            Gen::C => "c",
            Gen::X0 => "x0",
            Gen::X0Inv => "x0-",
            Gen::X1 => "x1",
            Gen::X1Inv => "x1-",
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Gen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "a" => Gen::A,
            "a-" => Gen::AInv,
            "b" => Gen::B,
            "b-" => Gen::BInv,
            "c" => Gen::C,
            "x0" => Gen::X0,
            "x0-" => Gen::X0Inv,
            "x1" => Gen::X1,
            "x1-" => Gen::X1Inv,
            other => return Err(Error::BadWord(format!("unknown generator `{other}`"))),
        })
    }
}

/// Parses a whitespace-separated generator word.
pub fn parse_word(text: &str) -> Result<Vec<Gen>, Error> {
    text.split_whitespace().map(str::parse).collect()
}
