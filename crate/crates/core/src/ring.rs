use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Base ring: the integers or a finite quotient `Z/n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDesc {
    Integers,
    IntegersMod(u64),
}

impl RingDesc {
    pub fn integers_mod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("modulus must be at least 2, got {n}")));
        }
        Ok(RingDesc::IntegersMod(n))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingDesc::Integers => None,
            RingDesc::IntegersMod(n) => Some(*n),
        }
    }

    pub fn modulus_big(&self) -> Option<BigInt> {
        self.modulus().map(BigInt::from)
    }

    pub fn is_integers(&self) -> bool {
        matches!(self, RingDesc::Integers)
    }

    pub(crate) fn ensure_same(&self, other: &RingDesc) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

/// `Z` or `Zmod:n`, the textual form used by the workspace format.
impl fmt::Display for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDesc::Integers => write!(f, "Z"),
            RingDesc::IntegersMod(n) => write!(f, "Zmod:{n}"),
        }
    }
}

impl std::str::FromStr for RingDesc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(RingDesc::Integers);
        }
        let rest = s
            .strip_prefix("Zmod:")
            .ok_or_else(|| Error::InvalidRing(format!("expected `Z` or `Zmod:n`, got `{s}`")))?;
        let n: u64 = rest
            .parse()
            .map_err(|_| Error::InvalidRing(format!("bad modulus `{rest}`")))?;
        RingDesc::integers_mod(n)
    }
}
