//! The bundled field descriptions from `fixtures/`.

use crate::error::{Error, Result};
use crate::input::FieldSpec;

macro_rules! fixture {
    ($name:literal) => {
        ($name, include_str!(concat!("../../../fixtures/", $name, ".json")))
    };
}

pub const FIXTURES: &[(&str, &str)] = &[
    fixture!("q"),
    fixture!("qi"),
    fixture!("q_sqrt2"),
    fixture!("q_sqrtm2"),
    fixture!("q_sqrt3"),
    fixture!("q_sqrtm3"),
    fixture!("q_sqrt5"),
    fixture!("q_sqrtm5"),
    fixture!("q_sqrt23"),
    fixture!("q_sqrtm23"),
    fixture!("q_sqrt2_sqrt3"),
    fixture!("q_zeta8"),
    fixture!("q_zeta12"),
    fixture!("q_i_sqrtm23"),
    fixture!("x3_minus_2"),
];

pub fn fixture(name: &str) -> Result<FieldSpec> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::InvalidInput(format!("no bundled field named {name}")))?;
    FieldSpec::from_json(text)
}

pub fn all() -> Vec<(&'static str, FieldSpec)> {
    FIXTURES
        .iter()
        .map(|(n, t)| (*n, FieldSpec::from_json(t).expect("bundled fixtures parse")))
        .collect()
}
