//! Verification campaigns: every closed form is compared against the
//! brute-force Milnor-basis action, case by case, and the results are
//! collected into text and JSON reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::closedform::{self, BoundaryReading, FormulaId, Variant};
use crate::dickson::{self, bracket, bracket1, DMExpr, DicksonAlgebra, Generator};
use crate::error::{Error, Result};
use crate::gfp::Prime;
use crate::steenrod::{st_apply, MilnorIndex};
use crate::superpoly::{SuperMonomial, SuperPoly};
use crate::FpScalar;

/// Which variants a campaign runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantSelection {
    Printed,
    Corrected,
    Both,
}

impl VariantSelection {
    fn variants(self) -> &'static [Variant] {
        match self {
            VariantSelection::Printed => &[Variant::Printed],
            VariantSelection::Corrected => &[Variant::Corrected],
            VariantSelection::Both => &[Variant::Printed, Variant::Corrected],
        }
    }
}

impl std::str::FromStr for VariantSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "printed" => Ok(VariantSelection::Printed),
            "corrected" => Ok(VariantSelection::Corrected),
            "both" => Ok(VariantSelection::Both),
            other => Err(Error::Config(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub primes: Vec<u64>,
    pub theorems: Vec<FormulaId>,
    /// Upper end of the `i` range; `None` means `p^2 + p` plus every `i`
    /// named by a table row.
    pub max_i: Option<u64>,
    pub max_s: u32,
    /// Upper end of `u`, `v`, `e` for bracket tables and the bracket expansion.
    pub max_uv: u32,
    /// Explicit `s` values, replacing `0..=max_s`.
    pub s_values: Option<Vec<u32>>,
    /// Explicit `i` values, replacing the `i` range.
    pub i_values: Option<Vec<u64>>,
    pub variant: VariantSelection,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            primes: vec![3],
            theorems: FormulaId::ALL.to_vec(),
            max_i: None,
            max_s: 5,
            max_uv: 6,
            s_values: None,
            i_values: None,
            variant: VariantSelection::Both,
            workers: 0,
        }
    }
}

/// Parses a comma-separated theorem list; `all` selects everything.
pub fn parse_theorems(src: &str) -> Result<Vec<FormulaId>> {
    if src.trim().eq_ignore_ascii_case("all") {
        return Ok(FormulaId::ALL.to_vec());
    }
    src.split(',').map(str::parse).collect()
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<Vec<Prime>> {
        if self.primes.is_empty() {
            return Err(Error::Config("no primes given".into()));
        }
        if self.theorems.is_empty() {
            return Err(Error::Config("no theorems given".into()));
        }
        self.primes
            .iter()
            .map(|&p| {
                Prime::new(p)
                    .map_err(|_| Error::Config(format!("{p} is not an odd prime in 3..=61")))
            })
            .collect()
    }

    /// The sampled configuration used for larger primes: a fixed set of `i`
    /// values around the digit boundaries and `s ∈ {0, 1, 2, 4}`.
    pub fn sampled(prime: u64) -> Self {
        let p = prime;
        let mut i_values = vec![0, 1, p - 1, p, p + 1, 2 * p, p * p - 1, p * p, p * p + p];
        i_values.sort_unstable();
        i_values.dedup();
        CampaignConfig {
            primes: vec![prime],
            s_values: Some(vec![0, 1, 2, 4]),
            i_values: Some(i_values),
            max_uv: 4,
            ..CampaignConfig::default()
        }
    }
}

/// Parameters of one case; absent fields do not apply to the formula.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CaseParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub which: Option<Generator>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u64>,
}

impl CaseParams {
    fn need_i(&self) -> Result<u64> {
        self.i
            .ok_or_else(|| Error::Config("missing parameter i".into()))
    }
    fn need_s(&self) -> Result<u32> {
        self.s
            .ok_or_else(|| Error::Config("missing parameter s".into()))
    }
    fn need_u(&self) -> Result<u32> {
        self.u
            .ok_or_else(|| Error::Config("missing parameter u".into()))
    }
    fn need_v(&self) -> Result<u32> {
        self.v
            .ok_or_else(|| Error::Config("missing parameter v".into()))
    }
    fn need_e(&self) -> Result<u32> {
        self.e
            .ok_or_else(|| Error::Config("missing parameter e".into()))
    }
    fn need_which(&self) -> Result<Generator> {
        self.which
            .ok_or_else(|| Error::Config("missing parameter which".into()))
    }
}

impl std::fmt::Display for CaseParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if let Some(w) = self.which {
            parts.push(format!("which={w}"));
        }
        for (name, val) in [("s", self.s), ("e", self.e), ("u", self.u), ("v", self.v)] {
            if let Some(x) = val {
                parts.push(format!("{name}={x}"));
            }
        }
        if let Some(i) = self.i {
            parts.push(format!("i={i}"));
        }
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Status {
    #[serde(rename = "match")]
    Match,
    #[serde(rename = "mismatch")]
    Mismatch,
    #[serde(rename = "erratum-confirmed")]
    ErratumConfirmed,
    #[serde(rename = "skipped")]
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::ErratumConfirmed => "erratum-confirmed",
            Status::Skipped => "skipped",
        }
    }
}

/// Outcome of one comparison. `lhs` is the oracle side, `rhs` the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    #[serde(skip)]
    pub prime: u64,
    pub formula: FormulaId,
    pub variant: Variant,
    pub params: CaseParams,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A closed-form value, either in normal form or as an explicit polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Dm(DMExpr),
    Poly(SuperPoly),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Dm(e) => e.to_string(),
            Value::Poly(f) => f.to_string(),
        }
    }
}

/// Shared per-prime state for a campaign.
pub struct Verifier {
    alg: Arc<DicksonAlgebra>,
}

impl Verifier {
    pub fn new(prime: Prime) -> Result<Self> {
        Ok(Verifier {
            alg: Arc::new(DicksonAlgebra::new(prime)?),
        })
    }

    pub fn algebra(&self) -> &DicksonAlgebra {
        &self.alg
    }

    fn prime(&self) -> Prime {
        self.alg.prime()
    }

    /// The operation and the polynomial it acts on, or `None` for the
    /// bracket expansion, which involves no operation.
    fn operation(
        &self,
        id: FormulaId,
        params: &CaseParams,
    ) -> Result<Option<(MilnorIndex, SuperPoly)>> {
        let p = self.prime();
        let gen = |g: Generator| self.alg.gen(g).clone();
        let single = |s: u32, i: u64| MilnorIndex::new(&[s], &[i]);
        let power = |i: u64| MilnorIndex::power(i);
        Ok(Some(match id {
            FormulaId::BracketExpansion => return Ok(None),
            FormulaId::PowerOnYPower => {
                let pe = p.power(params.need_e()?).ok_or(Error::Overflow("p^e"))?;
                (
                    power(params.need_i()?),
                    SuperPoly::term(p, SuperMonomial::from_parts(0, &[pe, 0]), FpScalar::ONE),
                )
            }
            FormulaId::PowerOnBracket => (
                power(params.need_i()?),
                bracket(p, params.need_u()?, params.need_v()?)?,
            ),
            FormulaId::PowerOnL | FormulaId::PowerOnM => {
                (power(params.need_i()?), gen(params.need_which()?))
            }
            FormulaId::MilnorOnBracket1 => (
                single(params.need_s()?, params.need_i()?)?,
                bracket1(p, params.need_u()?)?,
            ),
            FormulaId::MilnorOnM => (
                single(params.need_s()?, params.need_i()?)?,
                gen(params.need_which()?),
            ),
            FormulaId::PowerOnQ => {
                let target = if params.need_s()? == 0 {
                    Generator::Q0
                } else {
                    Generator::Q1
                };
                (power(params.need_i()?), gen(target))
            }
            FormulaId::PowerOnL2Pow => (
                power(params.need_i()?),
                self.alg.generators().l2_pow().clone(),
            ),
            FormulaId::PowerOnR0 => (power(params.need_i()?), gen(Generator::R0)),
            FormulaId::PowerOnR1 => (power(params.need_i()?), gen(Generator::R1)),
            FormulaId::PowerOnR01 => (power(params.need_i()?), gen(Generator::R01)),
            FormulaId::MilnorOnR0 => (
                single(params.need_s()?, params.need_i()?)?,
                gen(Generator::R0),
            ),
            FormulaId::MilnorOnR1 => (
                single(params.need_s()?, params.need_i()?)?,
                gen(Generator::R1),
            ),
            FormulaId::MilnorOnR01 => (
                single(params.need_s()?, params.need_i()?)?,
                gen(Generator::R01),
            ),
            FormulaId::MilnorOnQ => (
                single(params.need_s()?, params.need_i()?)?,
                gen(params.need_which()?),
            ),
        }))
    }

    /// The closed-form side for one variant.
    fn closed(&self, id: FormulaId, variant: Variant, params: &CaseParams) -> Result<Value> {
        let p = self.prime();
        let alg = &*self.alg;
        Ok(match id {
            FormulaId::BracketExpansion => {
                Value::Poly(closedform::prop22(alg, params.need_u()?, params.need_v()?)?)
            }
            FormulaId::PowerOnYPower => {
                Value::Poly(closedform::cor24(p, params.need_e()?, params.need_i()?)?)
            }
            FormulaId::PowerOnBracket => Value::Poly(closedform::lem25(
                p,
                params.need_u()?,
                params.need_v()?,
                params.need_i()?,
            )?),
            FormulaId::PowerOnL => Value::Poly(closedform::cor26(
                alg,
                params.need_which()?,
                params.need_i()?,
            )?),
            FormulaId::MilnorOnBracket1 => Value::Poly(closedform::lem27(
                p,
                params.need_s()?,
                params.need_u()?,
                params.need_i()?,
            )?),
            FormulaId::PowerOnM => Value::Poly(closedform::cor28(
                alg,
                params.need_which()?,
                params.need_i()?,
            )?),
            FormulaId::MilnorOnM => Value::Poly(closedform::lem41(
                p,
                params.need_which()?,
                params.need_s()?,
                params.need_i()?,
            )?),
            FormulaId::PowerOnL2Pow => Value::Poly(closedform::lem32(alg, params.need_i()?)?),
            FormulaId::PowerOnQ => Value::Dm(closedform::thm31(
                p,
                params.need_s()?,
                params.need_i()?,
                variant,
            )?),
            FormulaId::PowerOnR0 => Value::Dm(closedform::thm33(p, params.need_i()?)?),
            FormulaId::PowerOnR1 => Value::Dm(closedform::thm34_r21(p, params.need_i()?, variant)?),
            FormulaId::PowerOnR01 => Value::Dm(closedform::thm34_r201(p, params.need_i()?)?),
            FormulaId::MilnorOnR0 => Value::Dm(closedform::thm42(
                p,
                params.need_s()?,
                params.need_i()?,
                variant,
            )?),
            FormulaId::MilnorOnR1 => Value::Dm(closedform::thm43(
                p,
                params.need_s()?,
                params.need_i()?,
                variant,
            )?),
            FormulaId::MilnorOnR01 => {
                Value::Dm(closedform::thm44(p, params.need_s()?, params.need_i()?)?)
            }
            FormulaId::MilnorOnQ => Value::Dm(closedform::st_on_q(
                p,
                params.need_s()?,
                params.need_i()?,
                params.need_which()?,
            )?),
        })
    }

    /// The oracle side, in the same shape as the closed form.
    fn oracle(&self, id: FormulaId, params: &CaseParams) -> Result<Value> {
        match self.operation(id, params)? {
            None => Ok(Value::Poly(bracket(
                self.prime(),
                params.need_u()?,
                params.need_v()?,
            )?)),
            Some((idx, f)) => {
                let image = st_apply(&idx, &f)?;
                if id.is_table() || id == FormulaId::PowerOnL2Pow {
                    Ok(Value::Poly(image))
                } else {
                    Ok(Value::Dm(self.alg.decompose(&image)?))
                }
            }
        }
    }

    /// Runs one parameter tuple for the requested variants. The oracle is
    /// evaluated once and shared.
    pub fn verify(
        &self,
        id: FormulaId,
        params: &CaseParams,
        variants: &[Variant],
    ) -> Vec<CaseResult> {
        let prime = self.prime().get();
        let wanted: Vec<Variant> = if id.has_corrected_variant() {
            variants.to_vec()
        } else {
            // printed and corrected coincide; report the case once
            vec![*variants.last().unwrap_or(&Variant::Corrected)]
        };
        let make = |variant, status, lhs: String, rhs: String, note| CaseResult {
            prime,
            formula: id,
            variant,
            params: params.clone(),
            status,
            lhs,
            rhs,
            note,
        };
        let oracle = match self.oracle(id, params) {
            Ok(v) => v,
            Err(err) => {
                let status = match err {
                    Error::Overflow(_) => Status::Skipped,
                    _ => Status::Mismatch,
                };
                let rhs = |v| {
                    self.closed(id, v, params)
                        .map(|c| c.render())
                        .unwrap_or_else(|e| format!("error: {e}"))
                };
                return wanted
                    .iter()
                    .map(|&v| {
                        make(
                            v,
                            status,
                            format!("error: {err}"),
                            rhs(v),
                            Some(err.to_string()),
                        )
                    })
                    .collect();
            }
        };
        let corrected = self.closed(id, Variant::Corrected, params);
        let corrected_ok = matches!(&corrected, Ok(c) if *c == oracle);
        wanted
            .iter()
            .map(|&variant| {
                let closed = if variant == Variant::Corrected {
                    corrected.clone()
                } else {
                    self.closed(id, variant, params)
                };
                let (status, rhs, note) = match closed {
                    Ok(c) if c == oracle => (Status::Match, c.render(), None),
                    Ok(c) => {
                        let status = if variant == Variant::Printed && corrected_ok {
                            Status::ErratumConfirmed
                        } else {
                            Status::Mismatch
                        };
                        (status, c.render(), None)
                    }
                    Err(err) => {
                        let status = if variant == Variant::Printed && corrected_ok {
                            Status::ErratumConfirmed
                        } else {
                            Status::Mismatch
                        };
                        (status, format!("error: {err}"), Some(err.to_string()))
                    }
                };
                make(variant, status, oracle.render(), rhs, note)
            })
            .collect()
    }

    /// Expected total degree of a closed-form value (target plus operation).
    fn expected_degree(&self, id: FormulaId, params: &CaseParams) -> Result<Option<u64>> {
        let Some((idx, f)) = self.operation(id, params)? else {
            return Ok(None);
        };
        let (_, deg) = f.bidegree()?;
        let op = idx
            .degree(self.prime())
            .ok_or(Error::Overflow("operation degree"))?;
        Ok(deg.checked_add(op))
    }

    /// Checks that a nonzero normal-form value has the degree its statement
    /// forces. Returns `None` when the check passes or does not apply.
    pub fn degree_audit(
        &self,
        id: FormulaId,
        variant: Variant,
        params: &CaseParams,
    ) -> Option<DegreeViolation> {
        if id.is_table() || matches!(id, FormulaId::BracketExpansion | FormulaId::PowerOnL2Pow) {
            return None;
        }
        let Ok(Value::Dm(expr)) = self.closed(id, variant, params) else {
            return None;
        };
        let expected = self.expected_degree(id, params).ok().flatten()?;
        let p = self.prime();
        let found: Vec<u64> = {
            let mut d: Vec<u64> = expr.terms().filter_map(|(k, _)| k.degree(p)).collect();
            d.sort_unstable();
            d.dedup();
            d
        };
        if expr.is_zero() || found == [expected] {
            return None;
        }
        Some(DegreeViolation {
            formula: id,
            variant,
            params: params.clone(),
            expected,
            found,
            value: expr.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeViolation {
    pub formula: FormulaId,
    pub variant: Variant,
    pub params: CaseParams,
    pub expected: u64,
    pub found: Vec<u64>,
    pub value: String,
}

/// Convenience wrapper building a fresh [`Verifier`] for one case.
pub fn verify_case(
    id: FormulaId,
    variant: Variant,
    prime: Prime,
    params: &CaseParams,
) -> Result<CaseResult> {
    let verifier = Verifier::new(prime)?;
    let mut results = verifier.verify(id, params, &[variant]);
    Ok(results.remove(0))
}

fn s_range(cfg: &CampaignConfig) -> Vec<u32> {
    cfg.s_values
        .clone()
        .unwrap_or_else(|| (0..=cfg.max_s).collect())
}

/// `i` values for a case family: the configured range, plus (when the range
/// is the default) every `i` the table names explicitly.
fn i_range(cfg: &CampaignConfig, prime: Prime, listed: &[u64]) -> Vec<u64> {
    let p = prime.get();
    let mut out: Vec<u64> = match (&cfg.i_values, cfg.max_i) {
        (Some(values), _) => values.clone(),
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => (0..=p * p + p).chain(listed.iter().copied()).collect(),
    };
    out.sort_unstable();
    out.dedup();
    out
}

/// The `i` values a table names explicitly for the given parameters; every
/// other `i` is an "otherwise zero" row. Empty for non-table formulas.
pub fn table_rows(prime: Prime, id: FormulaId, params: &CaseParams) -> Vec<u64> {
    let p = prime.get();
    let pw = |e: Option<u32>| e.and_then(|e| prime.power(e));
    let mut rows: Vec<Option<u64>> = match (id, params.which) {
        (FormulaId::PowerOnYPower, _) => vec![Some(0), pw(params.e)],
        (FormulaId::PowerOnBracket, _) => {
            let (a, b) = (pw(params.u), pw(params.v));
            vec![Some(0), a, b, a.zip(b).and_then(|(a, b)| a.checked_add(b))]
        }
        (FormulaId::PowerOnL, Some(Generator::L2)) => vec![Some(0), Some(p), Some(p + 1)],
        (FormulaId::PowerOnL, Some(Generator::L20)) => vec![Some(0), Some(p * p), Some(p * p + p)],
        (FormulaId::PowerOnL, Some(Generator::L21)) => {
            vec![Some(0), Some(1), Some(p * p), Some(p * p + 1)]
        }
        (FormulaId::MilnorOnBracket1, _) => vec![Some(0), pw(params.u)],
        (FormulaId::PowerOnM | FormulaId::MilnorOnM, Some(Generator::M20)) => {
            vec![Some(0), Some(p)]
        }
        (FormulaId::PowerOnM | FormulaId::MilnorOnM, Some(Generator::M21)) => {
            vec![Some(0), Some(1)]
        }
        _ => vec![],
    };
    let mut out: Vec<u64> = rows.drain(..).flatten().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Every parameter tuple for one formula at one prime, in canonical order.
pub fn enumerate_params(cfg: &CampaignConfig, prime: Prime, id: FormulaId) -> Vec<CaseParams> {
    let uv = || 0..=cfg.max_uv;
    let mut bases: Vec<CaseParams> = Vec::new();
    let base = CaseParams::default;
    match id {
        FormulaId::BracketExpansion => {
            for u in uv() {
                for v in u + 1..=cfg.max_uv {
                    bases.push(CaseParams {
                        u: Some(u),
                        v: Some(v),
                        ..base()
                    });
                }
            }
            return bases;
        }
        FormulaId::PowerOnYPower => bases.extend((0..=cfg.max_uv.min(3)).map(|e| CaseParams {
            e: Some(e),
            ..base()
        })),
        FormulaId::PowerOnBracket => {
            for u in uv() {
                bases.extend((u..=cfg.max_uv).map(|v| CaseParams {
                    u: Some(u),
                    v: Some(v),
                    ..base()
                }));
            }
        }
        FormulaId::PowerOnL => bases.extend([Generator::L2, Generator::L20, Generator::L21].map(
            |w| CaseParams {
                which: Some(w),
                ..base()
            },
        )),
        FormulaId::MilnorOnBracket1 => {
            for s in s_range(cfg) {
                bases.extend(uv().map(|u| CaseParams {
                    s: Some(s),
                    u: Some(u),
                    ..base()
                }));
            }
        }
        FormulaId::PowerOnM => bases.extend([Generator::M20, Generator::M21].map(|w| CaseParams {
            which: Some(w),
            ..base()
        })),
        FormulaId::PowerOnQ => bases.extend((0..=1).map(|s| CaseParams {
            s: Some(s),
            ..base()
        })),
        FormulaId::PowerOnL2Pow
        | FormulaId::PowerOnR0
        | FormulaId::PowerOnR1
        | FormulaId::PowerOnR01 => bases.push(base()),
        FormulaId::MilnorOnR0 | FormulaId::MilnorOnR1 | FormulaId::MilnorOnR01 => {
            bases.extend(s_range(cfg).into_iter().map(|s| CaseParams {
                s: Some(s),
                ..base()
            }))
        }
        FormulaId::MilnorOnM | FormulaId::MilnorOnQ => {
            let targets = if id == FormulaId::MilnorOnM {
                [Generator::M20, Generator::M21]
            } else {
                [Generator::Q0, Generator::Q1]
            };
            for which in targets {
                bases.extend(s_range(cfg).into_iter().map(|s| CaseParams {
                    which: Some(which),
                    s: Some(s),
                    ..base()
                }));
            }
        }
    }
    bases
        .into_iter()
        .flat_map(|b| {
            i_range(cfg, prime, &table_rows(prime, id, &b))
                .into_iter()
                .map(move |i| CaseParams {
                    i: Some(i),
                    ..b.clone()
                })
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    #[serde(rename = "match")]
    pub matched: usize,
    pub mismatch: usize,
    pub erratum: usize,
    pub skipped: usize,
}

/// First confirmed counterexample for a printed statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub formula: FormulaId,
    pub cases: usize,
    pub counterexample: CaseParams,
    pub oracle: String,
    pub printed: String,
}

/// How the general `s > 2` line of `St^{(s),(i)} R0` behaves at `s = 2`
/// under each reading of `I(2,2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCheck {
    pub cases: usize,
    pub literal_matches: usize,
    pub empty_matches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub prime: u64,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
    pub errata: Vec<Erratum>,
    pub degree_audit: Vec<DegreeViolation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundaryCheck>,
}

impl Report {
    pub fn has_mismatch(&self) -> bool {
        self.summary.mismatch > 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(
            out,
            "p = {}: {} cases, {} match, {} mismatch, {} erratum-confirmed, {} skipped",
            self.prime,
            self.cases.len(),
            s.matched,
            s.mismatch,
            s.erratum,
            s.skipped
        );
        let mut per: BTreeMap<(FormulaId, Variant), Summary> = BTreeMap::new();
        for c in &self.cases {
            tally(per.entry((c.formula, c.variant)).or_default(), c.status);
        }
        for ((id, variant), t) in &per {
            let _ = writeln!(
                out,
                "  {:<12} {:<9} match {:>5}  mismatch {:>3}  erratum {:>3}  skipped {:>3}",
                id.label(),
                variant.label(),
                t.matched,
                t.mismatch,
                t.erratum,
                t.skipped
            );
        }
        for e in &self.errata {
            let _ = writeln!(
                out,
                "  erratum {} ({} cases), e.g. {}: oracle {} but printed {}",
                e.formula, e.cases, e.counterexample, e.oracle, e.printed
            );
        }
        for d in &self.degree_audit {
            let _ = writeln!(
                out,
                "  degree audit {} {} {}: expected {}, found {:?}",
                d.formula, d.variant, d.params, d.expected, d.found
            );
        }
        if let Some(b) = &self.boundary {
            let _ = writeln!(
                out,
                "  s=2 boundary of the general St R0 line: I(2,2) empty matches {}/{}, I(2,2)={{0}} matches {}/{}",
                b.empty_matches, b.cases, b.literal_matches, b.cases
            );
        }
        for c in self.cases.iter().filter(|c| c.status == Status::Mismatch) {
            let _ = writeln!(
                out,
                "  MISMATCH {} {} {}: oracle {} vs {}",
                c.formula, c.variant, c.params, c.lhs, c.rhs
            );
        }
        out
    }
}

fn tally(summary: &mut Summary, status: Status) {
    match status {
        Status::Match => summary.matched += 1,
        Status::Mismatch => summary.mismatch += 1,
        Status::ErratumConfirmed => summary.erratum += 1,
        Status::Skipped => summary.skipped += 1,
    }
}

fn boundary_check(verifier: &Verifier, cfg: &CampaignConfig) -> Option<BoundaryCheck> {
    if !cfg.theorems.contains(&FormulaId::MilnorOnR0) || !s_range(cfg).contains(&2) {
        return None;
    }
    let prime = verifier.prime();
    let is = i_range(cfg, prime, &[]);
    let results: Vec<(bool, bool)> = is
        .par_iter()
        .map(|&i| {
            let params = CaseParams {
                s: Some(2),
                i: Some(i),
                ..Default::default()
            };
            let Ok(Value::Dm(oracle)) = verifier.oracle(FormulaId::MilnorOnR0, &params) else {
                return (false, false);
            };
            let check = |reading| {
                closedform::thm42_general_line(prime, 2, i, reading)
                    .map(|e| e == oracle)
                    .unwrap_or(false)
            };
            (
                check(BoundaryReading::Literal),
                check(BoundaryReading::Empty),
            )
        })
        .collect();
    Some(BoundaryCheck {
        cases: results.len(),
        literal_matches: results.iter().filter(|r| r.0).count(),
        empty_matches: results.iter().filter(|r| r.1).count(),
    })
}

/// Runs every case for one prime and assembles the report.
pub fn run_prime(cfg: &CampaignConfig, prime: Prime) -> Result<Report> {
    let verifier = Verifier::new(prime)?;
    let variants = cfg.variant.variants();
    let mut theorems = cfg.theorems.clone();
    theorems.sort();
    theorems.dedup();
    let jobs: Vec<(FormulaId, CaseParams)> = theorems
        .iter()
        .flat_map(|&id| {
            enumerate_params(cfg, prime, id)
                .into_iter()
                .map(move |params| (id, params))
        })
        .collect();
    let cases: Vec<CaseResult> = jobs
        .par_iter()
        .flat_map_iter(|(id, params)| verifier.verify(*id, params, variants))
        .collect();
    let degree_audit: Vec<DegreeViolation> = jobs
        .par_iter()
        .flat_map_iter(|(id, params)| {
            [Variant::Printed, Variant::Corrected]
                .into_iter()
                .filter(|&v| v == Variant::Corrected || id.has_corrected_variant())
                .filter_map(|v| verifier.degree_audit(*id, v, params))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut summary = Summary::default();
    let mut errata: BTreeMap<FormulaId, Erratum> = BTreeMap::new();
    for c in &cases {
        tally(&mut summary, c.status);
        if c.status == Status::ErratumConfirmed {
            errata
                .entry(c.formula)
                .or_insert_with(|| Erratum {
                    formula: c.formula,
                    cases: 0,
                    counterexample: c.params.clone(),
                    oracle: c.lhs.clone(),
                    printed: c.rhs.clone(),
                })
                .cases += 1;
        }
    }
    Ok(Report {
        prime: prime.get(),
        cases,
        summary,
        errata: errata.into_values().collect(),
        degree_audit,
        boundary: boundary_check(&verifier, cfg),
    })
}

/// Result of a whole campaign plus the process exit code it implies.
#[derive(Clone, Debug)]
pub struct CampaignOutcome {
    pub reports: Vec<Report>,
    pub exit_code: i32,
}

impl CampaignOutcome {
    pub fn to_text(&self) -> String {
        self.reports.iter().map(Report::to_text).collect()
    }

    /// One JSON object for a single prime, an array of them otherwise.
    pub fn to_json(&self) -> String {
        let json = match self.reports.as_slice() {
            [single] => serde_json::to_string_pretty(single),
            many => serde_json::to_string_pretty(many),
        };
        json.expect("reports serialize") + "\n"
    }
}

/// Runs a campaign. Configuration problems are returned as errors (exit
/// code 2); otherwise the exit code is 1 iff some case mismatched.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignOutcome> {
    let primes = cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let reports = pool.install(|| {
        primes
            .iter()
            .map(|&p| run_prime(cfg, p))
            .collect::<Result<Vec<_>>>()
    })?;
    let exit_code = exit_code(&reports);
    Ok(CampaignOutcome { reports, exit_code })
}

/// 1 if any report contains a mismatch, 0 otherwise.
pub fn exit_code(reports: &[Report]) -> i32 {
    i32::from(reports.iter().any(Report::has_mismatch))
}

/// Exit code for a failed campaign setup.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::InvalidPrime(_) | Error::Parse(_) => 2,
        _ => 1,
    }
}

/// Parses `"s1,s2"` style lists; the empty string is the empty list.
pub fn parse_list<T: std::str::FromStr>(src: &str) -> Result<Vec<T>> {
    src.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad list entry {t:?}")))
        })
        .collect()
}

/// `St^{S,R}` applied to a generator name or a polynomial in `x1,x2,y1,y2`.
/// The first line is the polynomial; a `DM:` line follows when the image is
/// invariant and has a normal form.
pub fn apply_cli(prime: u64, s: &[u32], r: &[u64], target: &str) -> Result<String> {
    let prime = Prime::new(prime)?;
    let idx = MilnorIndex::new(s, r)?;
    let alg = DicksonAlgebra::new(prime)?;
    let f = match target.parse::<Generator>() {
        Ok(g) => alg.gen(g).clone(),
        Err(_) => SuperPoly::parse(target, prime, 2)?,
    };
    let image = st_apply(&idx, &f)?;
    let mut out = format!("{image}\n");
    if dickson::is_gl2_invariant(&image)? {
        if let Ok(dm) = alg.decompose(&image) {
            let _ = writeln!(out, "DM: {dm}");
        }
    }
    Ok(out)
}

/// All eleven generators, one `NAME = poly` line each.
pub fn gens(prime: u64) -> Result<String> {
    let prime = Prime::new(prime)?;
    let alg = DicksonAlgebra::new(prime)?;
    Ok(Generator::ALL
        .iter()
        .map(|&g| format!("{g} = {}\n", alg.gen(g)))
        .collect())
}
