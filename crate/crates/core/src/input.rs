//! JSON field descriptions.

use std::str::FromStr;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::poly::Poly;
use crate::field::{make_field, Elt, NumberField};

/// A rational written either as a JSON integer or as a string `"p/q"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatInput {
    Int(i64),
    Text(String),
}

impl RatInput {
    pub fn parse(&self) -> Result<BigRational> {
        match self {
            RatInput::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            RatInput::Text(s) => BigRational::from_str(s.trim())
                .map_err(|_| Error::InvalidInput(format!("not a rational number: {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub name: String,
    /// Ascending integer coefficients of a monic polynomial.
    pub min_poly: Vec<i64>,
    /// Rows of power-basis coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integral_basis: Option<Vec<Vec<RatInput>>>,
    /// Images of the generator, in power-basis coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism_hints: Option<Vec<Vec<RatInput>>>,
    /// Only `"Q"` is supported.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    /// A unit of infinite order, in power-basis coordinates (rank-one fields).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fundamental_unit: Option<Vec<RatInput>>,
}

fn parse_row(row: &[RatInput]) -> Result<Vec<BigRational>> {
    row.iter().map(RatInput::parse).collect()
}

impl FieldSpec {
    pub fn from_json(text: &str) -> Result<FieldSpec> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("field description: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("field descriptions serialize")
    }

    pub fn build(&self, bits: u32) -> Result<NumberField> {
        if let Some(b) = &self.base {
            if b != "Q" {
                return Err(Error::Unsupported(format!("base field {b}: only Q is supported")));
            }
        }
        let poly = Poly::from_i64(&self.min_poly);
        let basis = match &self.integral_basis {
            Some(rows) => Some(rows.iter().map(|r| parse_row(r)).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        make_field(&self.name, &poly, basis, bits)
    }

    pub fn hints(&self, k: &NumberField) -> Result<Option<Vec<Elt>>> {
        let Some(h) = &self.automorphism_hints else {
            return Ok(None);
        };
        h.iter()
            .map(|row| {
                let p = Poly::new(parse_row(row)?);
                Ok(k.from_poly(&p))
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    pub fn unit(&self, k: &NumberField) -> Result<Option<Elt>> {
        match &self.fundamental_unit {
            Some(row) => Ok(Some(k.from_poly(&Poly::new(parse_row(row)?)))),
            None => Ok(None),
        }
    }
}
