//! Closed forms checked against the brute-force oracle, one conductor bound
//! at a time.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::to_rational;
use crate::error::{Error, Result};
use crate::groups::FiniteAbelianGroup;
use crate::local::{count_conductor, disc_upper_bound, CountBreakdown, LocalField};
use crate::oracle::{
    count_quotients, count_subgroups, enumerate_subgroups, extensions, ExplicitGroup, XnModel,
};

/// Above this many subgroups the duality check compares counts instead of
/// materialized lists.
const MATERIALIZE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

impl Outcome {
    fn check(ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(detail())
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass => write!(f, "PASS"),
            Outcome::Fail(m) => write!(f, "FAIL ({m})"),
            Outcome::Skip(m) => write!(f, "SKIP ({m})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    ClosedForm,
    Duality,
    Breakdown,
    DiscBound,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::ClosedForm => "closed_form",
            Check::Duality => "duality",
            Check::Breakdown => "breakdown",
            Check::DiscBound => "disc_bound",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub n: u64,
    pub check: Check,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub rows: Vec<CheckRow>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| r.outcome.is_fail())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

pub type ClosedForm<'a> = dyn Fn(&LocalField, &FiniteAbelianGroup, u64) -> Result<CountBreakdown> + 'a;

/// Runs every check for `n = 1..=n_max` against [`count_conductor`].
pub fn verify(field: &LocalField, g: &FiniteAbelianGroup, n_max: u64, cap: u64) -> Result<Report> {
    verify_with(field, g, n_max, cap, &count_conductor)
}

/// Like [`verify`], with the closed form supplied by the caller.
pub fn verify_with(
    field: &LocalField,
    g: &FiniteAbelianGroup,
    n_max: u64,
    cap: u64,
    closed: &ClosedForm<'_>,
) -> Result<Report> {
    let mut report = Report::default();
    let (gp, _) = g.split_at(field.p())?;
    for n in 1..=n_max {
        let mut push = |check, outcome| report.rows.push(CheckRow { n, check, outcome });
        let breakdown = closed(field, g, n)?;

        let model = match XnModel::new(field, n, g.exponent(), cap) {
            Ok(m) => Some(m),
            Err(Error::ResourceLimit { order, cap }) => {
                let why = format!("|X_n| = {order} exceeds cap {cap}");
                push(Check::ClosedForm, Outcome::Skip(why.clone()));
                push(Check::Duality, Outcome::Skip(why));
                None
            }
            Err(e) => return Err(e),
        };

        if let Some(model) = &model {
            let brute = count_quotients(model.carrier(), g, cap)?;
            push(
                Check::ClosedForm,
                Outcome::check(breakdown.z == BigUint::from(brute), || {
                    format!("closed form {} vs oracle {brute}", breakdown.z)
                }),
            );
            push(Check::Duality, duality(model.carrier(), g, brute, cap)?);
        }

        let rebuilt = breakdown.reconstruct(field);
        push(
            Check::Breakdown,
            Outcome::check(rebuilt == Some(to_rational(&breakdown.z)), || {
                format!("decomposition gives {rebuilt:?}, Z = {}", breakdown.z)
            }),
        );

        let disc = if !g.is_p_group(field.p()) || g.is_trivial() {
            Outcome::Skip("bound applies to nontrivial p-groups".into())
        } else if model.is_none() {
            Outcome::Skip("model over cap".into())
        } else {
            let bound = disc_upper_bound(&gp, n);
            let worst = extensions(field, g, n, cap)?
                .into_iter()
                .filter(|e| e.conductor == n)
                .map(|e| e.discriminant)
                .max();
            match worst {
                None => Outcome::Pass,
                Some(d) => Outcome::check(
                    bound.to_u64().is_some_and(|b| d <= b),
                    || format!("discriminant {d} above bound {bound}"),
                ),
            }
        };
        push(Check::DiscBound, disc);
    }
    Ok(report)
}

fn duality(a: &ExplicitGroup, g: &FiniteAbelianGroup, quotients: u128, cap: u64) -> Result<Outcome> {
    if quotients > u128::from(MATERIALIZE_LIMIT) {
        let subs = count_subgroups(a, g, cap)?;
        return Ok(Outcome::check(subs == quotients, || {
            format!("{quotients} quotients vs {subs} subgroups")
        }));
    }
    let subs = enumerate_subgroups(a, g, cap)?.subgroups.len() as u128;
    Ok(Outcome::check(subs == quotients, || {
        format!("{quotients} quotients vs {subs} subgroups")
    }))
}
