//! JSON records. Rationals are `"num/den"` strings and polynomial
//! coefficients and field sizes are decimal strings; see `docs/schema.md`.

use num_bigint::BigInt;
use serde::Serialize;
use weil_core::tate::{NeatVerdict, TateReport};
use weil_core::weil_poly::{WeilError, WeilPolynomial};

/// Coefficients highest degree first, as decimal strings.
pub fn coeff_strings(coeffs: &[BigInt]) -> Vec<String> {
    coeffs.iter().rev().map(ToString::to_string).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateRecord {
    pub valid: bool,
    pub g: Option<usize>,
    pub q: String,
    pub coeffs: Vec<String>,
    pub slopes: Option<Vec<String>>,
    pub reason: Option<&'static str>,
    pub message: Option<String>,
}

pub fn reason(e: &WeilError) -> &'static str {
    match e {
        WeilError::NotMonic => "NotMonic",
        WeilError::OddDegree(_) => "OddDegree",
        WeilError::DegreeTooSmall => "DegreeTooSmall",
        WeilError::FunctionalEquationFails { .. } => "FunctionalEquationFails",
        WeilError::RootsOffCircle => "RootsOffCircle",
        WeilError::NotPrimePower(_) => "NotPrimePower",
    }
}

impl ValidateRecord {
    pub fn valid(p: &WeilPolynomial) -> Self {
        Self {
            valid: true,
            g: Some(p.g()),
            q: p.q().big().to_string(),
            coeffs: coeff_strings(p.coeffs()),
            slopes: Some(p.newton_polygon().expanded().iter().map(|s| format!("{}/{}", s.numer(), s.denom())).collect()),
            reason: None,
            message: None,
        }
    }

    pub fn invalid(coeffs: &[BigInt], q: String, e: &WeilError) -> Self {
        Self {
            valid: false,
            g: None,
            q,
            coeffs: coeff_strings(coeffs),
            slopes: None,
            reason: Some(reason(e)),
            message: Some(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRecord {
    pub e: Vec<i64>,
    pub degree: i64,
    pub weight: u64,
    /// Degree of the field extension over which the witness lives.
    pub base_change: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankRecord {
    pub has_nontrivial: bool,
    pub has_reduced: bool,
    pub threshold: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeRecord {
    pub label: String,
    pub coeffs: Vec<String>,
    pub q: String,
    pub g: usize,
    pub base_change: u64,
    pub m: usize,
    pub r: usize,
    pub multiplicities: Vec<usize>,
    pub gamma_rank: usize,
    pub rank: RankRecord,
    pub weight_bound: u64,
    pub certified_weight: u64,
    pub minimal_reduced: Option<WitnessRecord>,
    pub minimal_exotic_power: Option<u64>,
    pub power_bound: Option<u64>,
    pub hilbert_basis: Vec<Vec<i64>>,
    #[serde(rename = "H")]
    pub h: u64,
    pub base_field_hilbert_basis: Option<Vec<Vec<i64>>>,
    #[serde(rename = "base_field_H")]
    pub base_field_h: Option<u64>,
    pub neat: &'static str,
    /// Search weight behind a `NeatUpToBound` verdict.
    pub neat_bound: Option<u64>,
}

impl AnalyzeRecord {
    pub fn new(report: &TateReport, label: String) -> Self {
        let (neat, neat_bound) = match report.neat {
            NeatVerdict::Neat => ("Neat", None),
            NeatVerdict::NotNeat => ("NotNeat", None),
            NeatVerdict::NeatUpToBound(w) => ("NeatUpToBound", Some(w)),
        };
        Self {
            label,
            coeffs: coeff_strings(report.poly.coeffs()),
            q: report.poly.q().big().to_string(),
            g: report.poly.g(),
            base_change: report.base_change,
            m: report.m,
            r: report.r,
            multiplicities: report.mult.clone(),
            gamma_rank: report.gamma_rank,
            rank: RankRecord {
                has_nontrivial: report.rank.has_nontrivial,
                has_reduced: report.rank.has_reduced,
                threshold: report.rank.threshold,
            },
            weight_bound: report.weight_bound,
            certified_weight: report.certified_weight,
            minimal_reduced: report.minimal_reduced.as_ref().map(|w| WitnessRecord {
                e: w.function.e.clone(),
                degree: w.function.degree,
                weight: w.function.weight,
                base_change: w.base_change,
            }),
            minimal_exotic_power: report.minimal_exotic_power,
            power_bound: report.power_bound,
            hilbert_basis: report.hilbert_basis.generators.clone(),
            h: report.hilbert_basis.h,
            base_field_hilbert_basis: report.base_field_hilbert_basis.as_ref().map(|b| b.generators.clone()),
            base_field_h: report.base_field_hilbert_basis.as_ref().map(|b| b.h),
            neat,
            neat_bound,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub n: usize,
    pub d: usize,
    pub tate_dim: u128,
    pub image_dim: u128,
    pub exceptional: bool,
}

/// Record for a batch line that could not be processed.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    pub line: usize,
    pub error: String,
}
