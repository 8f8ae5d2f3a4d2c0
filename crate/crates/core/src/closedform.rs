//! Closed-form values of `P^i` and `St^{(s),(i)}` on brackets and on the
//! Dickson–Mui generators.
//!
//! Formulas that return invariants produce a [`DMExpr`]; the rest (brackets,
//! `L`, `M` tables, powers of `L2`) produce a [`SuperPoly`] built from the
//! generator cache. Throughout, `i = kp + r` with `0 <= k, r < p`; every
//! formula vanishes for `i >= p^2`.
//!
//! Four statements are available in two variants. [`Variant::Printed`]
//! transcribes the published case split verbatim; [`Variant::Corrected`]
//! is the version the brute-force oracle agrees with:
//!
//! - `P^i Q1`: the range `1 <= r <= k+1` misses `r = 0`, where the value is
//!   `(-1)^k Q1^{k+1}`.
//! - `P^i R1`: the range `r <= k` misses `r = k+1`, where only the `R0`
//!   term survives.
//! - `St^{(0),(i)} R0`: the `Q0` exponent is `r+1`, not `k+1`.
//! - `St^{(s),(i)} R1` for `s = 0` and `s > 1`: the range misses `r = k+1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dickson::{bracket, DMExpr, DicksonAlgebra, DmKey, Generator, MuiPart};
use crate::error::{Error, Result};
use crate::gfp::{FpScalar, Prime};
use crate::superpoly::{SuperMonomial, SuperPoly};

/// Identifies one closed-form statement. The string labels are the stable
/// names used on the command line and in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    /// `[u,v]` expanded in `L2` and `Q1`.
    BracketExpansion,
    /// `P^i y^{p^e}`.
    PowerOnYPower,
    /// `P^i [u,v]`.
    PowerOnBracket,
    /// `P^i` on `L2`, `L20`, `L21`.
    PowerOnL,
    /// `St^{(s),(i)} [1;u]`.
    MilnorOnBracket1,
    /// `P^i` on `M20`, `M21`.
    PowerOnM,
    /// `P^i Q0`, `P^i Q1`.
    PowerOnQ,
    /// `P^i L2^{p-2}`.
    PowerOnL2Pow,
    PowerOnR0,
    PowerOnR1,
    PowerOnR01,
    /// `St^{(s),(i)}` on `M20`, `M21`.
    MilnorOnM,
    MilnorOnR0,
    MilnorOnR1,
    MilnorOnR01,
    /// `St^{(s),(i)}` on `Q0`, `Q1` (always zero).
    MilnorOnQ,
}

impl FormulaId {
    pub const ALL: [FormulaId; 16] = [
        FormulaId::BracketExpansion,
        FormulaId::PowerOnYPower,
        FormulaId::PowerOnBracket,
        FormulaId::PowerOnL,
        FormulaId::MilnorOnBracket1,
        FormulaId::PowerOnM,
        FormulaId::PowerOnQ,
        FormulaId::PowerOnL2Pow,
        FormulaId::PowerOnR0,
        FormulaId::PowerOnR1,
        FormulaId::PowerOnR01,
        FormulaId::MilnorOnM,
        FormulaId::MilnorOnR0,
        FormulaId::MilnorOnR1,
        FormulaId::MilnorOnR01,
        FormulaId::MilnorOnQ,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FormulaId::BracketExpansion => "Prop2.2",
            FormulaId::PowerOnYPower => "Cor2.4",
            FormulaId::PowerOnBracket => "Lem2.5",
            FormulaId::PowerOnL => "Cor2.6",
            FormulaId::MilnorOnBracket1 => "Lem2.7",
            FormulaId::PowerOnM => "Cor2.8",
            FormulaId::PowerOnQ => "Thm3.1",
            FormulaId::PowerOnL2Pow => "Lem3.2",
            FormulaId::PowerOnR0 => "Thm3.3",
            FormulaId::PowerOnR1 => "Thm3.4-R21",
            FormulaId::PowerOnR01 => "Thm3.4-R201",
            FormulaId::MilnorOnM => "Lem4.1",
            FormulaId::MilnorOnR0 => "Thm4.2",
            FormulaId::MilnorOnR1 => "Thm4.3",
            FormulaId::MilnorOnR01 => "Thm4.4",
            FormulaId::MilnorOnQ => "Rmk4-Q",
        }
    }

    /// Whether the printed statement differs from the corrected one.
    pub fn has_corrected_variant(self) -> bool {
        matches!(
            self,
            FormulaId::PowerOnQ
                | FormulaId::PowerOnR1
                | FormulaId::MilnorOnR0
                | FormulaId::MilnorOnR1
        )
    }

    /// Tables of values on explicit polynomials (compared as polynomials
    /// rather than in normal form).
    pub fn is_table(self) -> bool {
        matches!(
            self,
            FormulaId::PowerOnYPower
                | FormulaId::PowerOnBracket
                | FormulaId::PowerOnL
                | FormulaId::MilnorOnBracket1
                | FormulaId::PowerOnM
                | FormulaId::MilnorOnM
        )
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for FormulaId {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for FormulaId {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let label = String::deserialize(deserializer)?;
        label.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|id| id.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown formula {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Printed,
    Corrected,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::Printed => "printed",
            Variant::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `i = kp + r` with `0 <= k, r < p`, or `None` when `i >= p^2`.
fn digits2(prime: Prime, i: u64) -> Option<(i64, i64)> {
    let p = prime.get();
    (i < p * p).then(|| ((i / p) as i64, (i % p) as i64))
}

/// `C(b, i)` extended by zero to negative `b`.
fn binom(prime: Prime, b: i64, i: i64) -> FpScalar {
    if b < 0 {
        FpScalar::ZERO
    } else {
        prime.binom_mod_p(b as u64, i)
    }
}

/// `(p^{v-1} - p^u) / (p - 1)` for `v >= 1`, computed exactly; negative when
/// `v - 1 < u`.
fn geometric(prime: Prime, v: u32, u: u32) -> i64 {
    assert!(v >= 1, "geometric sum needs v >= 1");
    let p = prime.get() as i128;
    let num = p.pow(v - 1) - p.pow(u);
    assert_eq!(num % (p - 1), 0, "geometric sum must divide exactly");
    (num / (p - 1)) as i64
}

/// Integers with 0/1 base-`p` digits on positions `u..v-2`, no two adjacent
/// 1-digits, and zeros everywhere else. Sorted.
pub fn enum_i(prime: Prime, u: u32, v: u32) -> Vec<u64> {
    let positions: Vec<u32> = (u..v.saturating_sub(2)).collect();
    let mut out = Vec::new();
    // masks over the allowed positions without adjacent bits
    for mask in 0u64..(1u64 << positions.len()) {
        if mask & (mask >> 1) != 0 {
            continue;
        }
        let a = positions
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &pos)| prime.get().pow(pos))
            .sum();
        out.push(a);
    }
    out.sort_unstable();
    out
}

/// Accumulates `c · R_T Q0^a Q1^b` terms, rejecting negative exponents on
/// nonzero terms.
struct Builder {
    prime: Prime,
    expr: DMExpr,
    context: &'static str,
}

impl Builder {
    fn new(prime: Prime, context: &'static str) -> Self {
        Builder {
            prime,
            expr: DMExpr::zero(prime),
            context,
        }
    }

    fn add(&mut self, c: FpScalar, mui: MuiPart, a: i64, b: i64) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if a < 0 || b < 0 {
            return Err(Error::NegativeExponent(format!(
                "{}: Q0^{a} Q1^{b} with coefficient {c}",
                self.context
            )));
        }
        self.expr.add_term(DmKey::new(mui, a as u64, b as u64), c);
        Ok(())
    }

    /// `c · Σ_{a ∈ I(u,s)} (-1)^a R_T Q0^{pa + a0} Q1^{E(u) - (p+1)a + b0}`
    /// with `E(u) = (p^{s-1} - p^u)/(p-1)`.
    fn add_isum(
        &mut self,
        c: FpScalar,
        mui: MuiPart,
        u: u32,
        s: u32,
        a0: i64,
        b0: i64,
    ) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let p = self.prime;
        let e = geometric(p, s, u);
        for a in enum_i(p, u, s) {
            let a = a as i64;
            let pp = p.get() as i64;
            let coeff = p.mul(c, p.sign(a as u64));
            self.add(coeff, mui, pp * a + a0, e - (pp + 1) * a + b0)?;
        }
        Ok(())
    }

    fn finish(self) -> DMExpr {
        self.expr
    }
}

fn sc(prime: Prime, v: i64) -> FpScalar {
    prime.scalar(v)
}

/// `[u,v]` as `Σ_{a ∈ I(u,v)} (-1)^a L2^{p^u + p(p-1)a} Q1^{(p^{v-1}-p^u)/(p-1) - (p+1)a}`.
pub fn prop22(alg: &DicksonAlgebra, u: u32, v: u32) -> Result<SuperPoly> {
    let p = alg.prime();
    if u >= v {
        return Err(Error::Config(format!(
            "bracket expansion needs u < v, got ({u}, {v})"
        )));
    }
    let pp = p.get();
    let pu = p.power(u).ok_or(Error::Overflow("p^u"))?;
    let e = geometric(p, v, u);
    let l2 = alg.gen(Generator::L2);
    let mut out = SuperPoly::zero(p, 2);
    for a in enum_i(p, u, v) {
        let l_exp = pu + pp * (pp - 1) * a;
        let q_exp = e - (pp as i64 + 1) * a as i64;
        if q_exp < 0 {
            return Err(Error::NegativeExponent(format!(
                "bracket expansion: Q1^{q_exp}"
            )));
        }
        let term = l2.pow(l_exp)?.try_mul(&*alg.q1_pow(q_exp as u64)?)?;
        out.add_assign_scaled(&term, p.sign(a));
    }
    Ok(out)
}

fn y1_pow(prime: Prime, e: u64) -> SuperPoly {
    SuperPoly::term(prime, SuperMonomial::from_parts(0, &[e, 0]), FpScalar::ONE)
}

/// `P^i y_1^{p^e}`: `y^{p^e}` at `i = 0`, `y^{p^{e+1}}` at `i = p^e`, else zero.
pub fn cor24(prime: Prime, e: u32, i: u64) -> Result<SuperPoly> {
    let pe = prime.power(e).ok_or(Error::Overflow("p^e"))?;
    Ok(if i == 0 {
        y1_pow(prime, pe)
    } else if i == pe {
        y1_pow(
            prime,
            pe.checked_mul(prime.get())
                .ok_or(Error::Overflow("p^{e+1}"))?,
        )
    } else {
        SuperPoly::zero(prime, 2)
    })
}

/// `P^i [u,v]`. Matching rows are summed, which keeps the table valid for
/// `u = v` where two rows coincide.
pub fn lem25(prime: Prime, u: u32, v: u32, i: u64) -> Result<SuperPoly> {
    let pu = prime.power(u).ok_or(Error::Overflow("p^u"))?;
    let pv = prime.power(v).ok_or(Error::Overflow("p^v"))?;
    let mut out = SuperPoly::zero(prime, 2);
    let rows = [
        (0, u, v),
        (pu, u + 1, v),
        (pv, u, v + 1),
        (pu + pv, u + 1, v + 1),
    ];
    for (at, a, b) in rows {
        if i == at {
            out = &out + &bracket(prime, a, b)?;
        }
    }
    Ok(out)
}

/// `P^i` on `L2`, `L20` or `L21`, with the right-hand sides written in
/// `L2`, `Q0`, `Q1`.
pub fn cor26(alg: &DicksonAlgebra, which: Generator, i: u64) -> Result<SuperPoly> {
    let p = alg.prime();
    let pp = p.get();
    let l2 = alg.gen(Generator::L2);
    let q0 = alg.gen(Generator::Q0);
    let q1 = alg.gen(Generator::Q1);
    let zero = SuperPoly::zero(p, 2);
    let q1p = alg.q1_pow(pp)?;
    Ok(match which {
        Generator::L2 => match i {
            0 => l2.clone(),
            _ if i == pp => l2 * q1,
            _ if i == pp + 1 => l2 * q0,
            _ => zero,
        },
        Generator::L20 => match i {
            0 => l2 * q0,
            _ if i == pp * pp => &(l2 * q0) * &*q1p,
            _ if i == pp * pp + pp => l2 * &*alg.q0_pow(pp + 1)?,
            _ => zero,
        },
        Generator::L21 => match i {
            0 => l2 * q1,
            1 => l2 * q0,
            _ if i == pp * pp => l2 * &(&*alg.q1_pow(pp + 1)? - &*alg.q0_pow(pp)?),
            _ if i == pp * pp + 1 => &(l2 * q0) * &*q1p,
            _ => zero,
        },
        other => return Err(Error::Config(format!("no L-table for {other}"))),
    })
}

/// `St^{(s),(i)} [1;u]`: `[s,u]` at `i = 0`, `[s,u+1]` at `i = p^u`.
pub fn lem27(prime: Prime, s: u32, u: u32, i: u64) -> Result<SuperPoly> {
    let pu = prime.power(u).ok_or(Error::Overflow("p^u"))?;
    if i == 0 {
        bracket(prime, s, u)
    } else if i == pu {
        bracket(prime, s, u + 1)
    } else {
        Ok(SuperPoly::zero(prime, 2))
    }
}

/// `P^i` on `M20` or `M21`.
pub fn cor28(alg: &DicksonAlgebra, which: Generator, i: u64) -> Result<SuperPoly> {
    let p = alg.prime();
    let m20 = alg.gen(Generator::M20);
    let m21 = alg.gen(Generator::M21);
    let zero = SuperPoly::zero(p, 2);
    Ok(match which {
        Generator::M20 => match i {
            0 => m20.clone(),
            _ if i == p.get() => &(m20 * alg.gen(Generator::Q1)) - &(m21 * alg.gen(Generator::Q0)),
            _ => zero,
        },
        Generator::M21 => match i {
            0 => m21.clone(),
            1 => m20.clone(),
            _ => zero,
        },
        other => return Err(Error::Config(format!("no M-table for {other}"))),
    })
}

/// `St^{(s),(i)}` on `M20` or `M21`.
pub fn lem41(prime: Prime, which: Generator, s: u32, i: u64) -> Result<SuperPoly> {
    let zero = SuperPoly::zero(prime, 2);
    match which {
        Generator::M20 => match i {
            0 => bracket(prime, s, 1),
            _ if i == prime.get() => bracket(prime, s, 2),
            _ => Ok(zero),
        },
        Generator::M21 => match i {
            0 => bracket(prime, s, 0),
            1 => bracket(prime, s, 1),
            _ => Ok(zero),
        },
        other => Err(Error::Config(format!("no M-table for {other}"))),
    }
}

/// `P^i Q_{2,s}` for `s ∈ {0, 1}`:
/// `(-1)^k C(k+s, r) Q0^{r+1-s} Q1^{k+s-r}`.
pub fn thm31(prime: Prime, s: u32, i: u64, variant: Variant) -> Result<DMExpr> {
    if s > 1 {
        return Err(Error::Config(format!(
            "P^i Q_s needs s in {{0,1}}, got {s}"
        )));
    }
    let mut out = Builder::new(prime, "P^i Q_s");
    let Some((k, r)) = digits2(prime, i) else {
        return Ok(out.finish());
    };
    let s = s as i64;
    let in_range = match variant {
        Variant::Printed => 0 <= r - s && r - s <= k,
        // every term with nonnegative exponents
        Variant::Corrected => r + 1 - s >= 0 && k + s - r >= 0,
    };
    if in_range {
        let c = prime.mul(prime.sign(k as u64), binom(prime, k + s, r));
        out.add(c, MuiPart::One, r + 1 - s, k + s - r)?;
    }
    Ok(out.finish())
}

/// The coefficient `(-1)^k (k+1) C(k, r)` of `P^i L2^{p-2}` together with
/// `(k, r)`; zero outside `0 <= r <= k < p`.
fn l2pow_coeff(prime: Prime, i: u64) -> Option<(FpScalar, i64, i64)> {
    let (k, r) = digits2(prime, i)?;
    (r <= k).then(|| {
        let c = prime.mul(
            prime.sign(k as u64),
            prime.mul(sc(prime, k + 1), binom(prime, k, r)),
        );
        (c, k, r)
    })
}

/// `P^i L2^{p-2} = (-1)^k (k+1) C(k,r) L2^{p-2} Q0^r Q1^{k-r}`.
pub fn lem32(alg: &DicksonAlgebra, i: u64) -> Result<SuperPoly> {
    let p = alg.prime();
    let Some((c, k, r)) = l2pow_coeff(p, i) else {
        return Ok(SuperPoly::zero(p, 2));
    };
    let q = alg.basis_element(DmKey::new(MuiPart::One, r as u64, (k - r) as u64))?;
    Ok(alg.generators().l2_pow().try_mul(&q)?.scale(c))
}

/// `P^i R0 = (-1)^k ((r+1) C(k,r) R0 Q0^r Q1^{k-r} + k C(k-1,r) R1 Q0^{r+1} Q1^{k-r-1})`.
pub fn thm33(prime: Prime, i: u64) -> Result<DMExpr> {
    let mut out = Builder::new(prime, "P^i R0");
    let Some((k, r)) = digits2(prime, i) else {
        return Ok(out.finish());
    };
    if r <= k {
        let sign = prime.sign(k as u64);
        let c0 = prime.mul(sign, prime.mul(sc(prime, r + 1), binom(prime, k, r)));
        let c1 = prime.mul(sign, prime.mul(sc(prime, k), binom(prime, k - 1, r)));
        out.add(c0, MuiPart::R0, r, k - r)?;
        out.add(c1, MuiPart::R1, r + 1, k - r - 1)?;
    }
    Ok(out.finish())
}

/// `P^i R1 = (-1)^k (k+1) (C(k,r) R1 Q0^r Q1^{k-r} + C(k,r-1) R0 Q0^{r-1} Q1^{k-r+1})`.
pub fn thm34_r21(prime: Prime, i: u64, variant: Variant) -> Result<DMExpr> {
    let mut out = Builder::new(prime, "P^i R1");
    let Some((k, r)) = digits2(prime, i) else {
        return Ok(out.finish());
    };
    let limit = match variant {
        Variant::Printed => k,
        Variant::Corrected => k + 1,
    };
    if r <= limit {
        let c = prime.mul(prime.sign(k as u64), sc(prime, k + 1));
        out.add(prime.mul(c, binom(prime, k, r)), MuiPart::R1, r, k - r)?;
        out.add(
            prime.mul(c, binom(prime, k, r - 1)),
            MuiPart::R0,
            r - 1,
            k - r + 1,
        )?;
    }
    Ok(out.finish())
}

/// `P^i R01 = (-1)^k (k+1) C(k,r) R01 Q0^r Q1^{k-r}`.
pub fn thm34_r201(prime: Prime, i: u64) -> Result<DMExpr> {
    let mut out = Builder::new(prime, "P^i R01");
    if let Some((c, k, r)) = l2pow_coeff(prime, i) {
        out.add(c, MuiPart::R01, r, k - r)?;
    }
    Ok(out.finish())
}

/// How the general `s > 2` line of `St^{(s),(i)} R0` reads the set `I(2,2)`
/// when evaluated at the boundary `s = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryReading {
    /// `I(2,2) = {0}`, the literal digit-set definition.
    Literal,
    /// `I(2,2) = ∅`, matching `[2,2] = 0`.
    Empty,
}

/// The `s > 2` line of `St^{(s),(i)} R0`:
/// `(-1)^{k+1} C(k,r) ((k+1) Σ_{I(1,s)} … - (k-r) Σ_{I(2,s)} …)`.
pub fn thm42_general_line(
    prime: Prime,
    s: u32,
    i: u64,
    reading: BoundaryReading,
) -> Result<DMExpr> {
    let mut out = Builder::new(prime, "St^{(s),(i)} R0, general line");
    let Some((k, r)) = digits2(prime, i) else {
        return Ok(out.finish());
    };
    if r > k {
        return Ok(out.finish());
    }
    let c = prime.mul(prime.sign(k as u64 + 1), binom(prime, k, r));
    out.add_isum(
        prime.mul(c, sc(prime, k + 1)),
        MuiPart::One,
        1,
        s,
        r + 2,
        k - r,
    )?;
    let skip_second = s <= 2 && reading == BoundaryReading::Empty;
    if !skip_second {
        let pp = prime.get() as i64;
        out.add_isum(
            prime.mul(c, sc(prime, -(k - r))),
            MuiPart::One,
            2,
            s,
            pp + r + 2,
            k - r - 1,
        )?;
    }
    Ok(out.finish())
}

/// `St^{(s),(i)} R0`.
pub fn thm42(prime: Prime, s: u32, i: u64, variant: Variant) -> Result<DMExpr> {
    let mut out = Builder::new(prime, "St^{(s),(i)} R0");
    let Some((k, r)) = digits2(prime, i) else {
        return Ok(out.finish());
    };
    match s {
        0 if r <= k => {
            let c = prime.mul(
                prime.sign(k as u64),
                prime.mul(sc(prime, r + 1), binom(prime, k, r)),
            );
            let q0_exp = match variant {
                Variant::Printed => k + 1,
                Variant::Corrected => r + 1,
            };
            out.add(c, MuiPart::One, q0_exp, k - r)?;
        }
        1 if r < k => {
            let c = prime.mul(
                prime.sign(k as u64 + 1),
                prime.mul(sc(prime, k), binom(prime, k - 1, r)),
            );
            out.add(c, MuiPart::One, r + 2, k - 1 - r)?;
        }
        2 if r <= k => {
            let c = prime.mul(
                prime.sign(k as u64 + 1),
                prime.mul(sc(prime, k + 1), binom(prime, k, r)),
            );
            out.add(c, MuiPart::One, r + 2, k - r)?;
        }
        s if s > 2 => return thm42_general_line(prime, s, i, BoundaryReading::Literal),
        _ => {}
    }
    Ok(out.finish())
}

/// `St^{(s),(i)} R1`.
pub fn thm43(prime: Prime, s: u32, i: u64, variant: Variant) -> Result<DMExpr> {
    let mut out = Builder::new(prime, "St^{(s),(i)} R1");
    let Some((k, r)) = digits2(prime, i) else {
        return Ok(out.finish());
    };
    let limit = match variant {
        Variant::Printed => k,
        Variant::Corrected => k + 1,
    };
    let lead = prime.mul(prime.sign(k as u64), sc(prime, k + 1));
    match s {
        0 if r <= limit => {
            out.add(
                prime.mul(lead, binom(prime, k, r - 1)),
                MuiPart::One,
                r,
                k - r + 1,
            )?;
        }
        1 if r <= k => {
            let c = prime.mul(prime.neg(lead), binom(prime, k, r));
            out.add(c, MuiPart::One, r + 1, k - r)?;
        }
        s if s > 1 && r <= limit => {
            let c = prime.neg(lead);
            out.add_isum(
                prime.mul(c, binom(prime, k, r)),
                MuiPart::One,
                0,
                s,
                r + 1,
                k - r,
            )?;
            out.add_isum(
                prime.mul(c, binom(prime, k, r - 1)),
                MuiPart::One,
                1,
                s,
                r + 1,
                k - r + 1,
            )?;
        }
        _ => {}
    }
    Ok(out.finish())
}

/// `St^{(s),(i)} R01`.
pub fn thm44(prime: Prime, s: u32, i: u64) -> Result<DMExpr> {
    let mut out = Builder::new(prime, "St^{(s),(i)} R01");
    let Some((c, k, r)) = l2pow_coeff(prime, i) else {
        return Ok(out.finish());
    };
    match s {
        0 => out.add(prime.neg(c), MuiPart::R1, r, k - r)?,
        1 => out.add(prime.neg(c), MuiPart::R0, r, k - r)?,
        _ => {
            out.add_isum(c, MuiPart::R1, 1, s, r + 1, k - r)?;
            out.add_isum(prime.neg(c), MuiPart::R0, 0, s, r, k - r)?;
        }
    }
    Ok(out.finish())
}

/// `St^{(s),(i)} Q_{2,t}` is zero: the operation needs an exterior factor to
/// act on.
pub fn st_on_q(prime: Prime, _s: u32, _i: u64, target: Generator) -> Result<DMExpr> {
    match target {
        Generator::Q0 | Generator::Q1 => Ok(DMExpr::zero(prime)),
        other => Err(Error::Config(format!("expected Q0 or Q1, got {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn one_term(p: Prime, c: i64, mui: MuiPart, a: u64, b: u64) -> DMExpr {
        DMExpr::term(p, DmKey::new(mui, a, b), p.scalar(c))
    }

    /// Direct search over `0..p^v` for the digit conditions.
    fn enum_i_brute(p: Prime, u: u32, v: u32) -> Vec<u64> {
        let q = p.get();
        (0..q.pow(v))
            .filter(|&a| {
                let d = p.padic_digits(a);
                (0..v as usize + 1).all(|i| d.get(i) + d.get(i + 1) <= 1)
                    && (0..d.len()).all(|i| d.get(i) == 0 || (i as u32 >= u && (i as u32) + 2 < v))
            })
            .collect()
    }

    #[test]
    fn i_set_matches_enumeration() {
        for q in [3, 5] {
            let p = prime(q);
            for v in 0..6 {
                for u in 0..=v {
                    assert_eq!(enum_i(p, u, v), enum_i_brute(p, u, v), "p={q} u={u} v={v}");
                }
            }
        }
        assert_eq!(enum_i(prime(7), 2, 4), vec![0]);
        assert_eq!(enum_i(prime(7), 0, 3), vec![0, 1]);
        assert_eq!(enum_i(prime(3), 0, 4), vec![0, 1, 3]);
    }

    #[test]
    fn geometric_sums() {
        let p = prime(5);
        assert_eq!(geometric(p, 3, 0), 6);
        assert_eq!(geometric(p, 2, 1), 0);
        assert_eq!(geometric(p, 1, 1), -1);
    }

    #[test]
    fn thm31_examples() {
        let p = prime(3);
        for v in [Variant::Printed, Variant::Corrected] {
            assert!(thm31(p, 0, 1, v).unwrap().is_zero());
            assert_eq!(
                thm31(p, 1, 1, v).unwrap(),
                one_term(p, 1, MuiPart::One, 1, 0)
            );
        }
        assert_eq!(
            thm31(p, 1, 3, Variant::Corrected).unwrap(),
            one_term(p, -1, MuiPart::One, 0, 2)
        );
        assert!(thm31(p, 1, 3, Variant::Printed).unwrap().is_zero());
        assert_eq!(
            thm31(p, 1, 0, Variant::Corrected).unwrap(),
            one_term(p, 1, MuiPart::One, 0, 1)
        );
        assert!(thm31(p, 0, 9, Variant::Corrected).unwrap().is_zero());
    }

    #[test]
    fn thm33_and_thm34_examples() {
        let p = prime(5);
        assert_eq!(thm33(p, 0).unwrap(), one_term(p, 1, MuiPart::R0, 0, 0));
        let mut expected = one_term(p, -1, MuiPart::R0, 0, 1);
        expected.add_term(DmKey::new(MuiPart::R1, 1, 0), p.scalar(-1));
        assert_eq!(thm33(p, 5).unwrap(), expected);
        assert_eq!(
            thm34_r201(p, 6).unwrap(),
            one_term(p, -2, MuiPart::R01, 1, 0)
        );
        assert!(thm34_r21(p, 1, Variant::Printed).unwrap().is_zero());
        assert_eq!(
            thm34_r21(p, 1, Variant::Corrected).unwrap(),
            one_term(p, 1, MuiPart::R0, 0, 0)
        );
    }

    #[test]
    fn thm4x_examples() {
        for q in [3, 5, 7] {
            let p = prime(q);
            assert_eq!(
                thm42(p, 0, 0, Variant::Printed).unwrap(),
                one_term(p, 1, MuiPart::One, 1, 0)
            );
            assert_eq!(
                thm42(p, 2, 0, Variant::Printed).unwrap(),
                one_term(p, -1, MuiPart::One, 2, 0)
            );
            assert_eq!(thm44(p, 0, 0).unwrap(), one_term(p, -1, MuiPart::R1, 0, 0));
        }
        let p = prime(3);
        // k = 1, r = 0: exponents k+1 = 2 versus r+1 = 1
        assert_eq!(
            thm42(p, 0, 3, Variant::Printed).unwrap(),
            one_term(p, -1, MuiPart::One, 2, 1)
        );
        assert_eq!(
            thm42(p, 0, 3, Variant::Corrected).unwrap(),
            one_term(p, -1, MuiPart::One, 1, 1)
        );
    }

    #[test]
    fn general_line_boundary() {
        for q in [3, 5] {
            let p = prime(q);
            for i in 0..q * q {
                let line = thm42(p, 2, i, Variant::Corrected).unwrap();
                let general = thm42_general_line(p, 2, i, BoundaryReading::Empty).unwrap();
                assert_eq!(line, general, "p={q} i={i}");
            }
            // k = 1, r = 0 makes the literal reading produce a negative Q1 exponent
            assert!(matches!(
                thm42_general_line(p, 2, q, BoundaryReading::Literal),
                Err(Error::NegativeExponent(_))
            ));
        }
    }

    #[test]
    fn q_targets_vanish() {
        let p = prime(3);
        assert!(st_on_q(p, 0, 0, Generator::Q0).unwrap().is_zero());
        assert!(st_on_q(p, 1, 3, Generator::Q1).unwrap().is_zero());
        assert!(st_on_q(p, 3, 0, Generator::R0).is_err());
    }

    #[test]
    fn table_examples() {
        let p = prime(5);
        assert_eq!(cor24(p, 1, 5).unwrap(), y1_pow(p, 25));
        assert_eq!(cor24(p, 0, 1).unwrap(), y1_pow(p, 5));
        assert!(cor24(p, 1, 2).unwrap().is_zero());
        assert_eq!(lem25(p, 0, 1, 6).unwrap(), bracket(p, 1, 2).unwrap());
        assert!(lem25(p, 1, 1, 5).unwrap().is_zero());
        assert_eq!(
            lem41(p, Generator::M21, 2, 1).unwrap(),
            bracket(p, 2, 1).unwrap()
        );
        assert_eq!(lem27(p, 0, 1, 0).unwrap(), bracket(p, 0, 1).unwrap());
    }

    #[test]
    fn labels_round_trip() {
        for id in FormulaId::ALL {
            assert_eq!(id.label().parse::<FormulaId>().unwrap(), id);
        }
        assert!("Thm9.9".parse::<FormulaId>().is_err());
    }
}
