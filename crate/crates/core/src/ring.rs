use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring for chains: the integers or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Prime(u32),
}

impl Ring {
    /// `0` selects the integers; anything else must be prime.
    pub fn from_characteristic(characteristic: u32) -> Result<Ring> {
        match characteristic {
            0 => Ok(Ring::Integers),
            p if is_prime(p) => Ok(Ring::Prime(p)),
            p => Err(Error::NotPrime(p)),
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Ring::Integers => 0,
            Ring::Prime(p) => *p,
        }
    }

    /// Representative of `a` in this ring; prime-field elements live in `0..p`.
    pub fn normalize(&self, a: BigInt) -> BigInt {
        match self {
            Ring::Integers => a,
            Ring::Prime(p) => a.mod_floor(&BigInt::from(*p)),
        }
    }

    pub fn is_zero(&self, a: &BigInt) -> bool {
        self.normalize(a.clone()).is_zero()
    }

    pub fn one(&self) -> BigInt {
        BigInt::one()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Prime(p) => write!(f, "Z/{p}"),
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
