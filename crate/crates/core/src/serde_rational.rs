//! Serialization of exact values as decimal strings.
//!
//! A rational is written `{"num": "...", "den": "..."}`; a polynomial is the
//! list of its coefficients, lowest degree first.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{Rational, UniPoly};

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

impl From<&Rational> for RationalRepr {
    fn from(r: &Rational) -> Self {
        RationalRepr {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl RationalRepr {
    fn into_rational<E: serde::de::Error>(self) -> Result<Rational, E> {
        let num: BigInt = self.num.parse().map_err(E::custom)?;
        let den: BigInt = self.den.parse().map_err(E::custom)?;
        if den <= BigInt::from(0) {
            return Err(E::custom("denominator must be positive"));
        }
        let r = Rational::new(num, den);
        if r.denom().to_string() != self.den {
            return Err(E::custom("rational is not in lowest terms"));
        }
        Ok(r)
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalRepr::deserialize(d)?.into_rational()
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<RationalRepr> = v.iter().map(RationalRepr::from).collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<RationalRepr>::deserialize(d)?
            .into_iter()
            .map(RationalRepr::into_rational)
            .collect()
    }
}

pub mod poly {
    use super::*;

    pub fn serialize<S: Serializer>(p: &UniPoly, s: S) -> Result<S::Ok, S::Error> {
        rational_vec::serialize(p.coeffs(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<UniPoly, D::Error> {
        let coeffs = rational_vec::deserialize(d)?;
        if coeffs.last().is_some_and(num_traits::Zero::is_zero) {
            return Err(D::Error::custom("polynomial has a zero leading coefficient"));
        }
        Ok(UniPoly::new(coeffs))
    }
}

pub mod poly_vec {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Wrapped(#[serde(with = "super::poly")] UniPoly);

    pub fn serialize<S: Serializer>(v: &[UniPoly], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<Wrapped> = v.iter().cloned().map(Wrapped).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<UniPoly>, D::Error> {
        Ok(Vec::<Wrapped>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

pub mod points {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Point(i64, #[serde(with = "super::rational")] Rational);

    pub fn serialize<S: Serializer>(v: &[(i64, Rational)], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<Point> = v.iter().map(|(t, r)| Point(*t, r.clone())).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(i64, Rational)>, D::Error> {
        Ok(Vec::<Point>::deserialize(d)?.into_iter().map(|p| (p.0, p.1)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Holder {
        #[serde(with = "rational")]
        r: Rational,
        #[serde(with = "poly")]
        p: UniPoly,
    }

    #[test]
    fn json_shape() {
        let h = Holder { r: frac(-3, 6), p: UniPoly::from_ints(&[1, 0, 2]) };
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(
            s,
            r#"{"r":{"num":"-1","den":"2"},"p":[{"num":"1","den":"1"},{"num":"0","den":"1"},{"num":"2","den":"1"}]}"#
        );
        assert_eq!(serde_json::from_str::<Holder>(&s).unwrap(), h);
    }

    #[test]
    fn rejects_noncanonical() {
        let bad = r#"{"r":{"num":"2","den":"4"},"p":[]}"#;
        assert!(serde_json::from_str::<Holder>(bad).is_err());
        let bad = r#"{"r":{"num":"2","den":"0"},"p":[]}"#;
        assert!(serde_json::from_str::<Holder>(bad).is_err());
    }
}
