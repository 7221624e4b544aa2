//! Text, JSON and CSV renderings of command results.

use std::fmt::Write as _;

use conductor_core::local::DiscLowerBound;
use conductor_core::verify::{Outcome, Report};
use conductor_core::{
    fmt_ratio, ratio_to_f64, BigInt, BigRational, CountBreakdown, FiniteAbelianGroup, LocalField,
};
use serde::Serialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct Decimals {
    pub alpha_p: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub leading_coeff: f64,
}

/// One `Z(F, G; n)` with its decomposition, rationals as `"num/den"`.
#[derive(Debug, Serialize)]
pub struct CountRecord {
    pub p: u64,
    pub f: u32,
    pub q: String,
    pub group: Vec<u64>,
    pub n: u64,
    #[serde(rename = "Z")]
    pub z: String,
    pub alpha_p: String,
    pub delta: String,
    pub epsilon: String,
    pub leading_coeff: String,
    pub realizable: bool,
    pub tame_factor: String,
    pub decimal: Decimals,
}

impl CountRecord {
    pub fn new(field: &LocalField, g: &FiniteAbelianGroup, b: &CountBreakdown) -> Self {
        Self {
            p: field.p(),
            f: field.f(),
            q: field.q().to_string(),
            group: g.invariant_factors().to_vec(),
            n: b.n,
            z: b.z.to_string(),
            alpha_p: fmt_ratio(&b.alpha_p),
            delta: fmt_ratio(&b.delta),
            epsilon: fmt_ratio(&b.epsilon),
            leading_coeff: fmt_ratio(&b.leading_coeff),
            realizable: b.realizable,
            tame_factor: b.tame_factor.to_string(),
            decimal: Decimals {
                alpha_p: ratio_to_f64(&b.alpha_p),
                delta: ratio_to_f64(&b.delta),
                epsilon: ratio_to_f64(&b.epsilon),
                leading_coeff: ratio_to_f64(&b.leading_coeff),
            },
        }
    }

    fn group_name(&self) -> String {
        FiniteAbelianGroup::canonicalize(&self.group)
            .map(|g| g.to_string())
            .unwrap_or_default()
    }
}

/// Column layout of sweep CSV output.
#[derive(Debug, Serialize)]
struct SweepRow<'a> {
    n: u64,
    #[serde(rename = "Z")]
    z: &'a str,
    alpha_p: &'a str,
    alpha_p_decimal: f64,
    delta: &'a str,
    delta_decimal: f64,
    epsilon: &'a str,
    epsilon_decimal: f64,
    leading_coeff: &'a str,
    leading_coeff_decimal: f64,
    realizable: bool,
}

impl<'a> From<&'a CountRecord> for SweepRow<'a> {
    fn from(r: &'a CountRecord) -> Self {
        Self {
            n: r.n,
            z: &r.z,
            alpha_p: &r.alpha_p,
            alpha_p_decimal: r.decimal.alpha_p,
            delta: &r.delta,
            delta_decimal: r.decimal.delta,
            epsilon: &r.epsilon,
            epsilon_decimal: r.decimal.epsilon,
            leading_coeff: &r.leading_coeff,
            leading_coeff_decimal: r.decimal.leading_coeff,
            realizable: r.realizable,
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Failure::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
}

fn field_name(p: u64, f: u32, q: &str) -> String {
    format!("F_{q}((t)) (p = {p}, f = {f})")
}

pub fn count(r: &CountRecord, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows([SweepRow::from(r)]),
        Format::Text => {
            let mut s = String::new();
            let d = &r.decimal;
            let _ = writeln!(s, "field          {}", field_name(r.p, r.f, &r.q));
            let _ = writeln!(s, "group          {}", r.group_name());
            let _ = writeln!(s, "n              {}", r.n);
            let _ = writeln!(s, "Z              {}", r.z);
            let _ = writeln!(s, "alpha_p        {} ({})", r.alpha_p, d.alpha_p);
            let _ = writeln!(s, "delta          {} ({})", r.delta, d.delta);
            let _ = writeln!(s, "epsilon        {} ({})", r.epsilon, d.epsilon);
            let _ = writeln!(s, "leading_coeff  {} ({})", r.leading_coeff, d.leading_coeff);
            let _ = writeln!(s, "tame_factor    {}", r.tame_factor);
            let _ = writeln!(s, "realizable     {}", r.realizable);
            Ok(s)
        }
    }
}

pub fn sweep(rows: &[CountRecord], format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => json(rows),
        Format::Csv => csv_rows(rows.iter().map(SweepRow::from)),
        Format::Text => {
            let mut s = String::new();
            if let Some(first) = rows.first() {
                let _ = writeln!(s, "{}, G = {}", field_name(first.p, first.f, &first.q), first.group_name());
            }
            let _ = writeln!(
                s,
                "{:>4}  {:>20}  {:>10}  {:>10}  {:>12}  {:>10}",
                "n", "Z", "alpha_p", "delta", "epsilon", "realizable"
            );
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:>4}  {:>20}  {:>10}  {:>10}  {:>12.8}  {:>10}",
                    r.n, r.z, r.alpha_p, r.delta, r.decimal.epsilon, r.realizable
                );
            }
            Ok(s)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyRow {
    pub n: u64,
    pub check: &'static str,
    pub outcome: &'static str,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyRecord {
    pub p: u64,
    pub f: u32,
    pub q: String,
    pub group: Vec<u64>,
    pub n_max: u64,
    pub cap: u64,
    pub passed: bool,
    pub rows: Vec<VerifyRow>,
}

impl VerifyRecord {
    pub fn new(field: &LocalField, g: &FiniteAbelianGroup, n_max: u64, cap: u64, report: &Report) -> Self {
        let rows = report
            .rows
            .iter()
            .map(|row| {
                let (outcome, detail) = match &row.outcome {
                    Outcome::Pass => ("PASS", String::new()),
                    Outcome::Fail(m) => ("FAIL", m.clone()),
                    Outcome::Skip(m) => ("SKIP", m.clone()),
                };
                VerifyRow {
                    n: row.n,
                    check: row.check.name(),
                    outcome,
                    detail,
                }
            })
            .collect();
        Self {
            p: field.p(),
            f: field.f(),
            q: field.q().to_string(),
            group: g.invariant_factors().to_vec(),
            n_max,
            cap,
            passed: report.passed(),
            rows,
        }
    }
}

pub fn verify(r: &VerifyRecord, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(&r.rows),
        Format::Text => {
            let mut s = String::new();
            for row in &r.rows {
                let _ = write!(s, "n={:<3} {:<12} {}", row.n, row.check, row.outcome);
                if !row.detail.is_empty() {
                    let _ = write!(s, "  {}", row.detail);
                }
                s.push('\n');
            }
            let verdict = if r.passed { "all checks passed" } else { "FAILED" };
            let _ = writeln!(s, "{verdict}");
            Ok(s)
        }
    }
}

pub struct DiscRecord {
    pub p: u64,
    pub f: u32,
    pub q: String,
    pub group: Vec<u64>,
    pub n: u64,
    pub rho: BigRational,
    pub beta_p: BigRational,
    pub upper_bound_exact: BigRational,
    pub upper_bound: BigInt,
    pub lower: DiscLowerBound,
    /// `None` when the model exceeds the cap.
    pub brute_d: Option<u128>,
}

#[derive(Serialize)]
struct DiscJson {
    p: u64,
    f: u32,
    q: String,
    group: Vec<u64>,
    n: u64,
    rho: String,
    beta_p: String,
    beta_p_decimal: f64,
    /// Discriminant exponent bound for conductor exponent n.
    disc_upper_exponent: String,
    disc_upper_exponent_ceil: String,
    n_tilde: Option<u64>,
    #[serde(rename = "D_lower_bound")]
    d_lower_bound: String,
    #[serde(rename = "D")]
    d: Option<String>,
}

impl From<&DiscRecord> for DiscJson {
    fn from(r: &DiscRecord) -> Self {
        Self {
            p: r.p,
            f: r.f,
            q: r.q.clone(),
            group: r.group.clone(),
            n: r.n,
            rho: fmt_ratio(&r.rho),
            beta_p: fmt_ratio(&r.beta_p),
            beta_p_decimal: ratio_to_f64(&r.beta_p),
            disc_upper_exponent: fmt_ratio(&r.upper_bound_exact),
            disc_upper_exponent_ceil: r.upper_bound.to_string(),
            n_tilde: r.lower.n_tilde,
            d_lower_bound: r.lower.bound.to_string(),
            d: r.brute_d.map(|d| d.to_string()),
        }
    }
}

pub fn disc(r: &DiscRecord, format: Format) -> Result<String, Failure> {
    let j = DiscJson::from(r);
    match format {
        Format::Json => json(&j),
        Format::Csv => csv_rows([j]),
        Format::Text => {
            let group = FiniteAbelianGroup::canonicalize(&r.group)
                .map(|g| g.to_string())
                .unwrap_or_default();
            let mut s = String::new();
            let _ = writeln!(s, "field              {}", field_name(r.p, r.f, &r.q));
            let _ = writeln!(s, "group              {group}");
            let _ = writeln!(s, "n                  {}", r.n);
            let _ = writeln!(s, "rho                {}", j.rho);
            let _ = writeln!(s, "beta_p             {} ({})", j.beta_p, j.beta_p_decimal);
            let _ = writeln!(
                s,
                "disc upper bound   n*rho + |G| - 1 = {} (ceil {})",
                j.disc_upper_exponent, j.disc_upper_exponent_ceil
            );
            match r.lower.n_tilde {
                Some(nt) => {
                    let _ = writeln!(s, "D lower bound      Z(F, G; {nt}) = {}", j.d_lower_bound);
                }
                None => {
                    let _ = writeln!(s, "D lower bound      0 (n below threshold)");
                }
            }
            match &j.d {
                Some(d) => {
                    let _ = writeln!(s, "D(F, G; n)         {d}");
                }
                None => {
                    let _ = writeln!(s, "D(F, G; n)         skipped (model over cap)");
                }
            }
            Ok(s)
        }
    }
}
