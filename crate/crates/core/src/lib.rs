//! A desk-scale workbench for two linked counting problems over Q: rational
//! points of bounded anticanonical height on projective spaces and their
//! finite-group quotients, and Galois number fields ordered by discriminant
//! or by representation-weighted variants. Exact invariants (ages, indices,
//! fiber counts, local exponents) connect the two sides and the numerical
//! experiments test the predicted pole/exponent arithmetic.

pub mod dirichlet;
pub mod error;
pub mod gfields;
pub mod heights;
pub mod lab;
pub mod numeric;
pub mod permgroup;
pub mod peyre;
pub mod reps;
pub mod series;
pub mod vdisc;

pub use error::{Error, Result};

/// Serialize `Ratio<i64>` as a `"num/den"` string so JSON stays exact.
pub mod ratio_serde {
    use num_rational::Ratio;
    use serde::{self, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        if r.is_integer() {
            s.serialize_str(&r.numer().to_string())
        } else {
            s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).ok_or_else(|| serde::de::Error::custom(format!("bad rational {text:?}")))
    }

    pub fn parse(text: &str) -> Option<Ratio<i64>> {
        match text.split_once('/') {
            Some((n, d)) => {
                let (n, d) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
                if d == 0 {
                    return None;
                }
                Some(Ratio::new(n, d))
            }
            None => Some(Ratio::from_integer(text.trim().parse().ok()?)),
        }
    }

    pub fn format(r: &Ratio<i64>) -> String {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }
}
