//! Exact rationals used for every density value and certificate bound.
//!
//! Rationals travel through flags and JSON as `"p/q"` strings, never floats.

use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rat = Ratio<i128>;

pub fn rat(num: i128, den: i128) -> Rat {
    Rat::new(num, den)
}

pub fn int(v: i128) -> Rat {
    Rat::from_integer(v)
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.45"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 30 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let whole_abs: i128 = if whole.is_empty() || whole == "-" || whole == "+" {
            0
        } else {
            whole.trim_start_matches(['-', '+']).parse().map_err(|_| bad())?
        };
        let den = 10i128.pow(frac.len() as u32);
        let f: i128 = frac.parse().map_err(|_| bad())?;
        let v = Rat::new(whole_abs * den + f, den);
        return Ok(if neg { -v } else { v });
    }
    s.parse::<i128>().map(Rat::from_integer).map_err(|_| bad())
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `⌊r⌋` as an integer.
pub fn floor(r: &Rat) -> i128 {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rat) -> i128 {
    r.numer().div_ceil(r.denom())
}

/// `count / len` with `len > 0`.
pub fn frac(count: u64, len: u64) -> Rat {
    debug_assert!(len > 0);
    Rat::new(count as i128, len as i128)
}

/// Exact `count ≥ gamma * len` by cross-multiplication.
pub fn count_at_least(count: u64, gamma: &Rat, len: u64) -> bool {
    (count as i128) * gamma.denom() >= gamma.numer() * (len as i128)
}

/// Exact `count > eps * len` by cross-multiplication.
pub fn count_exceeds(count: u64, eps: &Rat, len: u64) -> bool {
    (count as i128) * eps.denom() > eps.numer() * (len as i128)
}

pub fn is_unit_interval(r: &Rat) -> bool {
    !r.is_negative() && *r <= Rat::one()
}

pub fn zero() -> Rat {
    Rat::zero()
}

/// Serde adapter: a [`Rat`] as a `"p/q"` string.
pub mod serde_rat {
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(D::Error::custom)
    }
}

pub mod serde_rat_opt {
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&fmt_rat(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rat(&s).map_err(D::Error::custom)).transpose()
    }
}

pub mod serde_rat_vec {
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&fmt_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rat("3/20").unwrap(), rat(3, 20));
        assert_eq!(parse_rat(" 4/8 ").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert_eq!(parse_rat("0.45").unwrap(), rat(9, 20));
        assert_eq!(parse_rat("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat(".25").unwrap(), rat(1, 4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("1.").is_err());
    }

    #[test]
    fn formats_and_floors() {
        assert_eq!(fmt_rat(&rat(2, 4)), "1/2");
        assert_eq!(fmt_rat(&int(3)), "3");
        assert_eq!(floor(&rat(5, 2)), 2);
        assert_eq!(floor(&rat(-5, 2)), -3);
        assert_eq!(ceil(&rat(5, 2)), 3);
        assert_eq!(ceil(&rat(-5, 2)), -2);
    }

    #[test]
    fn cross_multiplied_comparisons() {
        assert!(count_at_least(9, &rat(9, 20), 20));
        assert!(!count_at_least(8, &rat(9, 20), 20));
        assert!(!count_exceeds(5, &rat(1, 4), 20));
        assert!(count_exceeds(6, &rat(1, 4), 20));
    }
}
