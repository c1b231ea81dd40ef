use num_bigint::BigInt;
use num_rational::BigRational;

use crate::ArithError;

/// Exact rational number with a positive, coprime denominator.
pub type Rat = BigRational;

/// Build `n/d` from machine integers. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Build the integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Render as `"a/b"`, always including the denominator (also when it is 1).
pub fn fmt_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parse `"a/b"` or `"a"`.
pub fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| ArithError::Parse(s.to_string()))
    };
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (parse_int(a)?, parse_int(b)?);
            if b == BigInt::from(0) {
                return Err(ArithError::DivisionByZero);
            }
            Ok(Rat::new(a, b))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_text() {
        for (s, v) in [("3/4", rat(3, 4)), ("-6/8", rat(-3, 4)), ("5", int(5))] {
            assert_eq!(parse_rat(s).unwrap(), v);
            assert_eq!(parse_rat(&fmt_rat(&v)).unwrap(), v);
        }
        assert_eq!(fmt_rat(&int(2)), "2/1");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}

/// Serde adapter writing a [`Rat`] as the string `"a/b"`; use with
/// `#[serde(with = "exact_arith::rat_serde")]`.
pub mod rat_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::{fmt_rat, parse_rat, Rat};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for sequences of [`Rat`], written as `["a/b", …]`.
pub mod rat_seq_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::{fmt_rat, parse_rat, Rat};

    pub fn serialize<S: Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(fmt_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rat(s).map_err(D::Error::custom)).collect()
    }
}

/// Serde adapter for optional [`Rat`] values (`null` or `"a/b"`).
pub mod rat_opt_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::{fmt_rat, parse_rat, Rat};

    pub fn serialize<S: Serializer>(x: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(r) => s.serialize_some(&fmt_rat(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        Option::<String>::deserialize(d)?.map(|s| parse_rat(&s).map_err(D::Error::custom)).transpose()
    }
}
