//! Subcommand implementations, independent of argument parsing.

use std::io::{BufRead, Write};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;
use weil_core::eigensystem::EigenvalueSystem;
use weil_core::oracle::{tate_space_dim, wedge_image_dim};
use weil_core::tate::{neat_decision_with, AnalysisOptions, TateError};
use weil_core::weil_poly::{validate, PrimePower, WeilError, WeilPolynomial};

use crate::label::{Label, LabelConvention, LabelError};
use crate::report::{AnalyzeRecord, ErrorRecord, OracleRow, ValidateRecord};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("invalid Weil polynomial: {0}")]
    Invalid(#[from] WeilError),
    #[error("analysis failed: {0}")]
    Pipeline(#[from] TateError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Label(_) | Self::Io(_) => 1,
            Self::Invalid(_) => 2,
            Self::Pipeline(_) => 3,
        }
    }
}

/// A polynomial given by coefficients (highest degree first) or by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Coeffs { coeffs: Vec<BigInt>, q: String },
    Label { label: String, q: Option<String> },
}

impl Input {
    /// Parses a comma- or space-separated coefficient list.
    pub fn from_coeff_list(list: &str, q: &str) -> Result<Self, CliError> {
        let coeffs = list
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<BigInt>().map_err(|_| CliError::Usage(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(CliError::Usage("empty coefficient list".into()));
        }
        Ok(Self::Coeffs { coeffs, q: q.to_string() })
    }
}

/// Coefficients lowest degree first, the field size and a label.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub coeffs: Vec<BigInt>,
    pub q: PrimePower,
    pub label: String,
}

pub fn resolve(input: &Input, convention: LabelConvention) -> Result<Resolved, CliError> {
    match input {
        Input::Coeffs { coeffs, q } => {
            let q: PrimePower = q.parse()?;
            let coeffs: Vec<BigInt> = coeffs.iter().rev().cloned().collect();
            let label = if coeffs.len() % 2 == 1 && coeffs.len() >= 3 {
                Label::from_coeffs(&coeffs, q).format(convention)
            } else {
                String::new()
            };
            Ok(Resolved { coeffs, q, label })
        }
        Input::Label { label, q } => {
            let l = Label::parse(label, convention)?;
            if let Some(q) = q.as_deref().filter(|q| *q != "implied") {
                let q: PrimePower = q.parse()?;
                if q != l.q {
                    return Err(CliError::Usage(format!("--q {} disagrees with label {label}", q.big())));
                }
            }
            Ok(Resolved { coeffs: l.coeffs(), q: l.q, label: label.trim().to_string() })
        }
    }
}

fn validated(r: &Resolved) -> Result<WeilPolynomial, CliError> {
    Ok(validate(&r.coeffs, r.q)?)
}

/// Validation record and exit code (0 valid, 2 invalid).
pub fn cmd_validate(input: &Input, convention: LabelConvention) -> Result<(ValidateRecord, i32), CliError> {
    let r = match resolve(input, convention) {
        Ok(r) => r,
        Err(CliError::Invalid(e)) => {
            let (coeffs, q) = match input {
                Input::Coeffs { coeffs, q } => (coeffs.iter().rev().cloned().collect::<Vec<_>>(), q.clone()),
                Input::Label { q, .. } => (Vec::new(), q.clone().unwrap_or_default()),
            };
            return Ok((ValidateRecord::invalid(&coeffs, q, &e), 2));
        }
        Err(e) => return Err(e),
    };
    Ok(match validate(&r.coeffs, r.q) {
        Ok(p) => (ValidateRecord::valid(&p), 0),
        Err(e) => (ValidateRecord::invalid(&r.coeffs, r.q.big().to_string(), &e), 2),
    })
}

pub fn cmd_analyze(
    input: &Input,
    convention: LabelConvention,
    opts: &AnalysisOptions,
) -> Result<AnalyzeRecord, CliError> {
    let r = resolve(input, convention)?;
    let p = validated(&r)?;
    let report = neat_decision_with(&p, opts)?;
    Ok(AnalyzeRecord::new(&report, r.label))
}

pub fn cmd_oracle_check(
    input: &Input,
    convention: LabelConvention,
    max_n: usize,
    max_d: usize,
    precision_cap: u32,
) -> Result<Vec<OracleRow>, CliError> {
    let p = validated(&resolve(input, convention)?)?;
    let sys = EigenvalueSystem::build_with_cap(&p, precision_cap).map_err(TateError::from)?;
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for d in 2..=max_d.min(n * sys.g()) {
            let tate_dim = tate_space_dim(&sys, n, d);
            let image_dim = wedge_image_dim(&sys, n, d);
            rows.push(OracleRow { n, d, tate_dim, image_dim, exceptional: tate_dim > image_dim });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BatchFormat {
    Jsonl,
    Csv,
}

impl std::str::FromStr for BatchFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" | "json" => Ok(Self::Jsonl),
            "csv" => Ok(Self::Csv),
            _ => Err(format!("unknown batch format {s:?} (jsonl, csv)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BatchSummary {
    pub records: usize,
    pub errors: usize,
}

fn json_coeff(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

fn json_q(v: Option<&Value>) -> Option<String> {
    match v? {
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// `"label"`, `{"label": ..}` or `{"coeffs": [..], "q": ..}`.
fn parse_json_record(line: &str) -> Result<Input, String> {
    let v: Value = serde_json::from_str(line).map_err(|e| format!("malformed JSON: {e}"))?;
    match &v {
        Value::String(label) => Ok(Input::Label { label: label.clone(), q: None }),
        Value::Object(o) => {
            if let Some(label) = o.get("label").and_then(Value::as_str) {
                return Ok(Input::Label { label: label.to_string(), q: json_q(o.get("q")) });
            }
            let coeffs = match o.get("coeffs") {
                Some(Value::Array(a)) => a.iter().map(json_coeff).collect::<Option<Vec<_>>>(),
                Some(Value::String(s)) => {
                    return Input::from_coeff_list(s, &json_q(o.get("q")).ok_or("missing q")?)
                        .map_err(|e| e.to_string())
                }
                _ => None,
            }
            .ok_or("record needs a label or an integer coeffs array")?;
            let q = json_q(o.get("q")).ok_or("missing q")?;
            Ok(Input::Coeffs { coeffs, q })
        }
        _ => Err("record must be a JSON object or label string".into()),
    }
}

/// A batch input record with its 1-based line number.
pub type Record = (usize, Result<Input, String>);

/// Records with their line numbers; blank lines are skipped.
pub fn read_records<R: BufRead>(reader: R, format: BatchFormat) -> Result<Vec<Record>, CliError> {
    let mut out = Vec::new();
    match format {
        BatchFormat::Jsonl => {
            for (k, line) in reader.lines().enumerate() {
                let line = line?;
                if !line.trim().is_empty() {
                    out.push((k + 1, parse_json_record(&line)));
                }
            }
        }
        BatchFormat::Csv => {
            let mut rdr = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(reader);
            let headers = rdr.headers().map_err(|e| CliError::Usage(format!("bad CSV header: {e}")))?.clone();
            let col = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
            let (label_col, coeffs_col, q_col) = (col("label"), col("coeffs"), col("q"));
            if label_col.is_none() && (coeffs_col.is_none() || q_col.is_none()) {
                return Err(CliError::Usage("CSV needs a label column or coeffs and q columns".into()));
            }
            for rec in rdr.records() {
                let (line, parsed) = match rec {
                    Err(e) => {
                        let line = e.position().map_or(0, |p| p.line() as usize);
                        (line, Err(format!("malformed CSV: {e}")))
                    }
                    Ok(rec) => {
                        let line = rec.position().map_or(0, |p| p.line() as usize);
                        let field = |c: Option<usize>| c.and_then(|c| rec.get(c)).filter(|s| !s.is_empty());
                        let parsed = match (field(label_col), field(coeffs_col), field(q_col)) {
                            (Some(l), _, q) => Ok(Input::Label { label: l.to_string(), q: q.map(str::to_string) }),
                            (None, Some(c), Some(q)) => Input::from_coeff_list(c, q).map_err(|e| e.to_string()),
                            _ => Err("record needs a label or coeffs and q".to_string()),
                        };
                        (line, parsed)
                    }
                };
                out.push((line, parsed));
            }
        }
    }
    Ok(out)
}

const CHUNK: usize = 256;

fn to_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("records serialize")
}

/// Analyzes every record on a pool of `parallel` workers and writes one JSON
/// line per record in input order.
pub fn cmd_batch<R: BufRead, W: Write>(
    reader: R,
    format: BatchFormat,
    parallel: usize,
    convention: LabelConvention,
    opts: &AnalysisOptions,
    mut out: W,
) -> Result<BatchSummary, CliError> {
    let records = read_records(reader, format)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallel.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let mut summary = BatchSummary::default();
    for chunk in records.chunks(CHUNK) {
        let lines: Vec<(bool, String)> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(line, input)| {
                    let result = input
                        .as_ref()
                        .map_err(Clone::clone)
                        .and_then(|i| cmd_analyze(i, convention, opts).map_err(|e| e.to_string()));
                    match result {
                        Ok(rec) => (true, to_line(&rec)),
                        Err(error) => (false, to_line(&ErrorRecord { line: *line, error })),
                    }
                })
                .collect()
        });
        for (ok, line) in lines {
            summary.records += 1;
            summary.errors += usize::from(!ok);
            writeln!(out, "{line}")?;
        }
    }
    out.flush()?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_records() {
        assert_eq!(
            parse_json_record(r#"{"coeffs": [1, 0, 5], "q": 5}"#).unwrap(),
            Input::Coeffs { coeffs: vec![1.into(), 0.into(), 5.into()], q: "5".into() }
        );
        assert_eq!(
            parse_json_record(r#""1.5.a""#).unwrap(),
            Input::Label { label: "1.5.a".into(), q: None }
        );
        assert!(parse_json_record("{").is_err());
        assert!(parse_json_record(r#"{"coeffs": [1, 0, 5]}"#).is_err());
    }

    #[test]
    fn csv_records() {
        let data = "label,coeffs,q\n1.5.a,,\n,\"1,-2,5\",5\n,,\n";
        let recs = read_records(data.as_bytes(), BatchFormat::Csv).unwrap();
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[1].0, 3);
        assert!(recs[0].1.is_ok() && recs[1].1.is_ok() && recs[2].1.is_err());
    }
}
