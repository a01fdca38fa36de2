//! Small helpers around `BigRational`: construction, parsing, formatting,
//! integer scaling, and the "p/q" string form used in JSON.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use num_integer::Integer;

pub type Rat = BigRational;

/// `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational (panics on d = 0, as Ratio does).
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_int(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Render as "p" for integers, "p/q" otherwise.
pub fn format_rat(x: &Rat) -> String {
    if is_int(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse "p" or "p/q" (optional leading '-').
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: '{s}'"),
    };
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| err("bad numerator"))?;
        let den: BigInt = q.trim().parse().map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(Rat::new(num, den))
    } else {
        let num: BigInt = s.parse().map_err(|_| err("bad integer"))?;
        Ok(Rat::from_integer(num))
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm(xs: &[Rat]) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(x.denom());
    }
    l
}

/// Multiply through by the denominator lcm, returning integers.
pub fn clear_denominators(xs: &[Rat]) -> Vec<BigInt> {
    let l = denominator_lcm(xs);
    xs.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

/// Scale a rational vector to primitive integers: clear denominators and
/// divide by the gcd. The zero vector maps to zeros; sign is preserved.
pub fn primitive_integer(xs: &[Rat]) -> Vec<BigInt> {
    let ints = clear_denominators(xs);
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

/// `primitive_integer` oriented so the first nonzero entry is positive.
pub fn primitive_integer_oriented(xs: &[Rat]) -> Vec<BigInt> {
    let mut ints = primitive_integer(xs);
    if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in &mut ints {
                *v = -std::mem::take(v);
            }
        }
    }
    ints
}

pub fn to_rat_vec(ints: &[BigInt]) -> Vec<Rat> {
    ints.iter().map(|v| Rat::from_integer(v.clone())).collect()
}

/// `primitive_integer`, kept in rational form for mixed arithmetic.
pub fn primitive_rat(xs: &[Rat]) -> Vec<Rat> {
    to_rat_vec(&primitive_integer(xs))
}

/// `primitive_integer_oriented`, kept in rational form.
pub fn primitive_rat_oriented(xs: &[Rat]) -> Vec<Rat> {
    to_rat_vec(&primitive_integer_oriented(xs))
}

/// Serde adapter: a `Rat` as the string "p/q".
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `Vec<Rat>` as ["p/q", ...].
pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(format_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter: `Vec<Vec<Rat>>` as [["p/q", ...], ...].
pub mod serde_rat_mat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        xs: &[Vec<Rat>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(
            xs.iter()
                .map(|row| row.iter().map(format_rat).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rat>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}
