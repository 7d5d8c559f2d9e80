use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::game::Ruleset;

/// Stable identifier of a closed-form predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PredicateId {
    /// XOR of all piles is zero (plain Nim, any number of piles).
    NimXor,
    /// Moore's Nim with at most `k` piles per move.
    Moore(usize),
    Cn42,
    Cn52,
    Cn53,
    Cn63,
    Cn64,
    Cn74,
    Cn86,
    Ecn6122,
    Ecn6123,
    Ecn6124,
    Ecn6132,
    Ecn6233,
    Ecn7124,
    Ecn7125,
    Ecn8132,
    Ecn8134,
    Ecn8136,
    Ecn81236,
    /// ECN((2m+1)_{1..m-1}, 2m-1) for prime 2m+1.
    GenOddPrime(usize),
    /// ECN(2m_{odd steps}, 2).
    GenEvenK2(usize),
    /// ECN(2^m_{odd steps}, 2^m - 2).
    GenPow2(usize),
}

const FIXED: &[(PredicateId, &str)] = &[
    (PredicateId::NimXor, "NIM_XOR"),
    (PredicateId::Cn42, "CN42"),
    (PredicateId::Cn52, "CN52"),
    (PredicateId::Cn53, "CN53"),
    (PredicateId::Cn63, "CN63"),
    (PredicateId::Cn64, "CN64"),
    (PredicateId::Cn74, "CN74"),
    (PredicateId::Cn86, "CN86"),
    (PredicateId::Ecn6122, "ECN6122"),
    (PredicateId::Ecn6123, "ECN6123"),
    (PredicateId::Ecn6124, "ECN6124"),
    (PredicateId::Ecn6132, "ECN6132"),
    (PredicateId::Ecn6233, "ECN6233"),
    (PredicateId::Ecn7124, "ECN7124"),
    (PredicateId::Ecn7125, "ECN7125"),
    (PredicateId::Ecn8132, "ECN8132"),
    (PredicateId::Ecn8134, "ECN8134"),
    (PredicateId::Ecn8136, "ECN8136"),
    (PredicateId::Ecn81236, "ECN81236"),
];

type Family = fn(usize) -> PredicateId;

const FAMILIES: &[(&str, Family)] = &[
    ("MOORE", PredicateId::Moore),
    ("GEN_ODD_PRIME", PredicateId::GenOddPrime),
    ("GEN_EVEN_K2", PredicateId::GenEvenK2),
    ("GEN_POW2", PredicateId::GenPow2),
];

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PredicateId {
    /// The fixed-arity predicates for specific rulesets.
    pub fn table_predicates() -> Vec<PredicateId> {
        FIXED.iter().map(|&(id, _)| id).filter(|id| *id != PredicateId::NimXor).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPredicate(msg));
        match *self {
            PredicateId::Moore(0) => bad("MOORE needs k >= 1".into()),
            PredicateId::GenOddPrime(m) if m < 2 || 2 * m + 1 > 32 => {
                bad(format!("GEN_ODD_PRIME({m}): m must lie in 2..=15"))
            }
            PredicateId::GenOddPrime(m) if !is_prime(2 * m + 1) => {
                bad(format!("GEN_ODD_PRIME({m}): 2m+1 = {} is not prime", 2 * m + 1))
            }
            PredicateId::GenEvenK2(m) if m < 2 || 2 * m > 32 => {
                bad(format!("GEN_EVEN_K2({m}): m must lie in 2..=16"))
            }
            PredicateId::GenPow2(m) if !(2..=5).contains(&m) => {
                bad(format!("GEN_POW2({m}): m must lie in 2..=5"))
            }
            _ => Ok(()),
        }
    }

    /// Number of piles, or `None` for predicates defined for every size.
    pub fn arity(&self) -> Option<usize> {
        use PredicateId::*;
        Some(match *self {
            NimXor | Moore(_) => return None,
            Cn42 => 4,
            Cn52 | Cn53 => 5,
            Cn63 | Cn64 | Ecn6122 | Ecn6123 | Ecn6124 | Ecn6132 | Ecn6233 => 6,
            Cn74 | Ecn7124 | Ecn7125 => 7,
            Cn86 | Ecn8132 | Ecn8134 | Ecn8136 | Ecn81236 => 8,
            GenOddPrime(m) => 2 * m + 1,
            GenEvenK2(m) => 2 * m,
            GenPow2(m) => 1 << m,
        })
    }

    /// The ruleset this predicate decides, for fixed-arity predicates.
    pub fn ruleset(&self) -> Option<Ruleset> {
        use PredicateId::*;
        let r = match *self {
            NimXor | Moore(_) => return None,
            Cn42 => Ruleset::ecn(4, [1], 2),
            Cn52 => Ruleset::ecn(5, [1], 2),
            Cn53 => Ruleset::ecn(5, [1], 3),
            Cn63 => Ruleset::ecn(6, [1], 3),
            Cn64 => Ruleset::ecn(6, [1], 4),
            Cn74 => Ruleset::ecn(7, [1], 4),
            Cn86 => Ruleset::ecn(8, [1], 6),
            Ecn6122 => Ruleset::ecn(6, [1, 2], 2),
            Ecn6123 => Ruleset::ecn(6, [1, 2], 3),
            Ecn6124 => Ruleset::ecn(6, [1, 2], 4),
            Ecn6132 => Ruleset::ecn(6, [1, 3], 2),
            Ecn6233 => Ruleset::ecn(6, [2, 3], 3),
            Ecn7124 => Ruleset::ecn(7, [1, 2], 4),
            Ecn7125 => Ruleset::ecn(7, [1, 2], 5),
            Ecn8132 => Ruleset::ecn(8, [1, 3], 2),
            Ecn8134 => Ruleset::ecn(8, [1, 3], 4),
            Ecn8136 => Ruleset::ecn(8, [1, 3], 6),
            Ecn81236 => Ruleset::ecn(8, [1, 2, 3], 6),
            GenOddPrime(m) => Ruleset::ecn(2 * m + 1, 1..m, 2 * m - 1),
            GenEvenK2(m) => Ruleset::ecn(2 * m, (1..=m).step_by(2), 2),
            GenPow2(m) => Ruleset::ecn(1 << m, (1..1 << (m - 1)).step_by(2), (1 << m) - 2),
        };
        r.ok()
    }
}

impl fmt::Display for PredicateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, arg) = match *self {
            PredicateId::Moore(k) => ("MOORE", k),
            PredicateId::GenOddPrime(m) => ("GEN_ODD_PRIME", m),
            PredicateId::GenEvenK2(m) => ("GEN_EVEN_K2", m),
            PredicateId::GenPow2(m) => ("GEN_POW2", m),
            id => {
                let name = FIXED.iter().find(|(x, _)| *x == id).map(|(_, n)| *n);
                return f.write_str(name.expect("every fixed id is named"));
            }
        };
        write!(f, "{name}({arg})")
    }
}

impl FromStr for PredicateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_uppercase();
        if let Some(&(id, _)) = FIXED.iter().find(|(_, n)| *n == t) {
            return Ok(id);
        }
        for &(name, make) in FAMILIES {
            if let Some(arg) = t.strip_prefix(name).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')')) {
                let n: usize = arg
                    .parse()
                    .map_err(|_| Error::parse("predicate", s, format!("bad parameter {arg:?}")))?;
                let id = make(n);
                id.validate()?;
                return Ok(id);
            }
        }
        Err(Error::parse("predicate", s, "unknown predicate name"))
    }
}

impl Serialize for PredicateId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PredicateId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
