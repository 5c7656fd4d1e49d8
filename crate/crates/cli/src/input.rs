//! File formats accepted on the command line. Everything is JSON; integers
//! and rationals may be given as numbers or as strings ("-12", "1/2") so
//! that values outside the f64-safe range survive the trip.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use hyperbound_core::curves::CurveModel;
use hyperbound_core::valued_series::ValuedSeries;
use hyperbound_core::{BigInt, BigRational};

use crate::Failure;

#[derive(Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(i64),
    Text(String),
}

impl Scalar {
    fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            Scalar::Number(n) => Ok(BigInt::from(*n)),
            Scalar::Text(s) => {
                BigInt::from_str(s.trim()).map_err(|_| format!("not an integer: {s:?}"))
            }
        }
    }

    fn to_rational(&self) -> Result<BigRational, String> {
        match self {
            Scalar::Number(n) => Ok(BigRational::from_integer(BigInt::from(*n))),
            Scalar::Text(s) => {
                BigRational::from_str(s.trim()).map_err(|_| format!("not a rational: {s:?}"))
            }
        }
    }
}

/// Curve file: all 2g+2 coefficients of f, leading to constant.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveFile {
    genus: usize,
    coeffs: Vec<Scalar>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{} is not valid input: {e}", path.display())))
}

pub fn load_curve(path: &Path) -> Result<CurveModel, Failure> {
    let file: CurveFile = read_json(path)?;
    let coeffs = file
        .coeffs
        .iter()
        .map(Scalar::to_bigint)
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::input)?;
    CurveModel::new(file.genus, coeffs)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Polytope file: an array of polytopes, each an array of points, each
/// point an array of rationals. All points must share one dimension.
pub fn load_polytopes(path: &Path) -> Result<Vec<Vec<Vec<BigRational>>>, Failure> {
    let file: Vec<Vec<Vec<Scalar>>> = read_json(path)?;
    file.iter()
        .map(|poly| {
            poly.iter()
                .map(|point| point.iter().map(Scalar::to_rational).collect())
                .collect()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::input)
}

/// Series file: {"nvars": d, "terms": [{"u": [exponents], "v": valuation}]}
/// where a valuation of "inf" marks a zero coefficient.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesFile {
    nvars: usize,
    terms: Vec<SeriesTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesTerm {
    u: Vec<u64>,
    v: Scalar,
}

pub fn load_series(path: &Path) -> Result<ValuedSeries, Failure> {
    let file: SeriesFile = read_json(path)?;
    if file.nvars == 0 {
        return Err(Failure::input(String::from(
            "series needs at least one variable",
        )));
    }
    let mut terms = Vec::with_capacity(file.terms.len());
    for term in &file.terms {
        let v = match &term.v {
            Scalar::Text(s) if s.trim() == "inf" => None,
            other => Some(other.to_rational().map_err(Failure::input)?),
        };
        terms.push((term.u.clone(), v));
    }
    ValuedSeries::complete(file.nvars, terms)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn parse_rational(text: &str) -> Result<BigRational, Failure> {
    BigRational::from_str(text.trim())
        .map_err(|_| Failure::input(format!("not a rational: {text:?}")))
}
