//! The bigraded superalgebra `E(x_1..x_n) ⊗ P(y_1..y_n)` over `F_p`.
//!
//! `deg x_i = 1`, `deg y_i = 2`. Exterior generators anticommute and square to
//! zero; polynomial generators are central. A monomial stores its exterior
//! part as a bitmask (bit `i-1` for `x_i`) and is always read with the
//! exterior factors in increasing index order, so the sign of a product is
//! the parity of the inversions created by merging the two exterior words.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gfp::{FpScalar, Prime};

/// Exponents of `y_1..y_n`.
pub type Exponents = SmallVec<[u64; 2]>;

/// Largest supported number of variable pairs (exterior part is a `u32` mask).
pub const MAX_VARS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperMonomial {
    ext: u32,
    pow: Exponents,
}

impl SuperMonomial {
    pub fn one(nvars: usize) -> Self {
        SuperMonomial {
            ext: 0,
            pow: SmallVec::from_elem(0, nvars),
        }
    }

    /// Builds `x_{i_1}…x_{i_k} y^pow` from a bitmask of exterior indices.
    pub fn from_parts(ext: u32, pow: &[u64]) -> Self {
        debug_assert!(pow.len() <= MAX_VARS && ext >> pow.len() == 0);
        SuperMonomial {
            ext,
            pow: SmallVec::from_slice(pow),
        }
    }

    pub fn ext_mask(&self) -> u32 {
        self.ext
    }

    /// 1-based indices of the exterior generators, increasing.
    pub fn ext_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.pow.len())
            .filter(|&i| self.ext >> i & 1 == 1)
            .map(|i| i + 1)
    }

    pub fn pow(&self) -> &[u64] {
        &self.pow
    }

    pub fn nvars(&self) -> usize {
        self.pow.len()
    }

    pub fn ext_degree(&self) -> u32 {
        self.ext.count_ones()
    }

    /// Total degree `|ext| + 2·Σ pow`, `None` on overflow.
    pub fn degree(&self) -> Option<u64> {
        self.pow
            .iter()
            .try_fold(self.ext_degree() as u64, |acc, &e| {
                acc.checked_add(e.checked_mul(2)?)
            })
    }

    pub fn is_one(&self) -> bool {
        self.ext == 0 && self.pow.iter().all(|&e| e == 0)
    }

    /// Product of two monomials: `None` when an exterior generator repeats,
    /// otherwise the merged monomial and whether the Koszul sign is negative.
    pub fn try_mul(&self, other: &Self) -> Result<Option<(SuperMonomial, bool)>> {
        let Some(negative) = koszul_sign(self.ext, other.ext) else {
            return Ok(None);
        };
        let pow = self
            .pow
            .iter()
            .zip(&other.pow)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("monomial product")))
            .collect::<Result<Exponents>>()?;
        Ok(Some((
            SuperMonomial {
                ext: self.ext | other.ext,
                pow,
            },
            negative,
        )))
    }
}

/// Sign of `x_L · x_R` rewritten in increasing order: `None` if the sets
/// meet, else `Some(true)` when the number of inversions is odd.
pub(crate) fn koszul_sign(left: u32, right: u32) -> Option<bool> {
    if left & right != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = right;
    while rest != 0 {
        let b = rest.trailing_zeros();
        inversions += (left >> b).count_ones();
        rest &= rest - 1;
    }
    Some(inversions % 2 == 1)
}

/// An element of `P_n`: a finite sum of monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperPoly {
    prime: Prime,
    nvars: usize,
    terms: BTreeMap<SuperMonomial, FpScalar>,
}

impl SuperPoly {
    pub fn zero(prime: Prime, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variable pairs");
        SuperPoly {
            prime,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(prime: Prime, nvars: usize) -> Self {
        Self::constant(prime, nvars, FpScalar::ONE)
    }

    pub fn constant(prime: Prime, nvars: usize, c: FpScalar) -> Self {
        Self::term(prime, SuperMonomial::one(nvars), c)
    }

    pub fn term(prime: Prime, mono: SuperMonomial, c: FpScalar) -> Self {
        let mut f = Self::zero(prime, mono.nvars());
        f.add_term(mono, c);
        f
    }

    /// The exterior generator `x_i` (1-based).
    pub fn x(prime: Prime, nvars: usize, i: usize) -> Self {
        assert!((1..=nvars).contains(&i), "x{i} out of range");
        let mut m = SuperMonomial::one(nvars);
        m.ext = 1 << (i - 1);
        Self::term(prime, m, FpScalar::ONE)
    }

    pub fn y(prime: Prime, nvars: usize, i: usize) -> Self {
        Self::y_pow(prime, nvars, i, 1)
    }

    /// `y_i^e` (1-based).
    pub fn y_pow(prime: Prime, nvars: usize, i: usize, e: u64) -> Self {
        assert!((1..=nvars).contains(&i), "y{i} out of range");
        let mut m = SuperMonomial::one(nvars);
        m.pow[i - 1] = e;
        Self::term(prime, m, FpScalar::ONE)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, FpScalar)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, mono: &SuperMonomial) -> FpScalar {
        self.terms.get(mono).copied().unwrap_or_default()
    }

    /// True when no monomial carries an exterior generator.
    pub fn is_pure(&self) -> bool {
        self.terms.keys().all(|m| m.ext == 0)
    }

    pub(crate) fn add_term(&mut self, mono: SuperMonomial, c: FpScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(mono.nvars(), self.nvars);
        let p = self.prime;
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = p.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            self.prime == other.prime && self.nvars == other.nvars,
            "{}",
            Error::RingMismatch
        );
    }

    pub fn scale(&self, c: FpScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.prime, self.nvars);
        }
        let p = self.prime;
        SuperPoly {
            prime: p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &v)| (m.clone(), p.mul(v, c)))
                .collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: FpScalar) {
        self.check_ring(other);
        if c.is_zero() {
            return;
        }
        let p = self.prime;
        for (m, &v) in &other.terms {
            self.add_term(m.clone(), p.mul(v, c));
        }
    }

    /// Product with exponent overflow reported as an error.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other);
        let p = self.prime;
        let mut acc: HashMap<SuperMonomial, u64> =
            HashMap::with_capacity(self.len().saturating_mul(other.len()).min(1 << 16));
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                if let Some((m, negative)) = ma.try_mul(mb)? {
                    let v = ca.value() * cb.value() % p.get();
                    let v = if negative { p.get() - v } else { v };
                    let slot = acc.entry(m).or_insert(0);
                    *slot = (*slot + v) % p.get();
                }
            }
        }
        Ok(SuperPoly {
            prime: p,
            nvars: self.nvars,
            terms: acc
                .into_iter()
                .filter(|&(_, v)| v != 0)
                .map(|(m, v)| (m, p.reduce(v)))
                .collect(),
        })
    }

    /// `y_i ↦ y_i^p` on a polynomial without exterior part; equals `f^p`.
    pub fn frobenius(&self) -> Result<Self> {
        debug_assert!(self.is_pure());
        let p = self.prime.get();
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            let pow = m
                .pow
                .iter()
                .map(|&e| e.checked_mul(p).ok_or(Error::Overflow("frobenius")))
                .collect::<Result<Exponents>>()?;
            terms.insert(SuperMonomial { ext: 0, pow }, c);
        }
        Ok(SuperPoly {
            prime: self.prime,
            nvars: self.nvars,
            terms,
        })
    }

    /// `self^e`. Purely polynomial bases are raised digit by digit in base `p`
    /// using `f^{p^j} = frobenius^j(f)`.
    pub fn pow(&self, e: u64) -> Result<Self> {
        let one = Self::one(self.prime, self.nvars);
        if e == 0 {
            return Ok(one);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.is_pure() {
            let mut acc = one;
            let mut layer = self.clone();
            let mut rest = e;
            let p = self.prime.get();
            loop {
                for _ in 0..rest % p {
                    acc = acc.try_mul(&layer)?;
                }
                rest /= p;
                if rest == 0 {
                    break;
                }
                layer = layer.frobenius()?;
            }
            return Ok(acc);
        }
        let mut acc = one;
        let mut base = self.clone();
        let mut rest = e;
        while rest > 0 {
            if rest & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            rest >>= 1;
            if rest > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The quotient `q` with `q · divisor = self`, for a purely polynomial
    /// divisor. Works exterior-component by component with lex division.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_ring(divisor);
        if divisor.is_zero() {
            return Err(Error::NotDivisible);
        }
        if !divisor.is_pure() {
            return Err(Error::DivisorHasExteriorPart);
        }
        let p = self.prime;
        let (lead_m, lead_c) = divisor
            .terms
            .iter()
            .next_back()
            .map(|(m, &c)| (m, c))
            .unwrap();
        let lead_inv = p.inv(lead_c).expect("nonzero coefficient");

        let mut by_ext: BTreeMap<u32, SuperPoly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let mut pure = m.clone();
            pure.ext = 0;
            by_ext
                .entry(m.ext)
                .or_insert_with(|| Self::zero(p, self.nvars))
                .add_term(pure, c);
        }

        let mut quotient = Self::zero(p, self.nvars);
        for (ext, mut rem) in by_ext {
            while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, &c)| (m.clone(), c)) {
                if m.pow.iter().zip(&lead_m.pow).any(|(a, b)| a < b) {
                    return Err(Error::NotDivisible);
                }
                let qm = SuperMonomial {
                    ext: 0,
                    pow: m.pow.iter().zip(&lead_m.pow).map(|(a, b)| a - b).collect(),
                };
                let qc = p.mul(c, lead_inv);
                for (dm, &dc) in &divisor.terms {
                    let (prod, _) = qm.try_mul(dm)?.expect("pure monomials always multiply");
                    rem.add_term(prod, p.neg(p.mul(qc, dc)));
                }
                debug_assert!(rem.coeff(&m).is_zero());
                quotient.add_term(SuperMonomial { ext, pow: qm.pow }, qc);
            }
        }
        Ok(quotient)
    }

    /// Simultaneous linear substitution `x_i ↦ Σ_j M[i][j] x_j`,
    /// `y_i ↦ Σ_j M[i][j] y_j` (row `i` is the image of variable `i`).
    pub fn substitute(&self, m: &Matrix) -> Result<Self> {
        assert_eq!(m.prime, self.prime);
        assert_eq!(m.n, self.nvars);
        let (p, n) = (self.prime, self.nvars);
        let linear = |unit: &dyn Fn(usize) -> SuperMonomial, i: usize| {
            let mut f = Self::zero(p, n);
            for j in 0..n {
                f.add_term(unit(j), m.get(i, j));
            }
            f
        };
        let x_unit = |j: usize| {
            let mut mono = SuperMonomial::one(n);
            mono.ext = 1 << j;
            mono
        };
        let y_unit = |j: usize| {
            let mut mono = SuperMonomial::one(n);
            mono.pow[j] = 1;
            mono
        };
        let x_images: Vec<SuperPoly> = (0..n).map(|i| linear(&x_unit, i)).collect();
        let y_images: Vec<SuperPoly> = (0..n).map(|i| linear(&y_unit, i)).collect();

        let mut ext_cache: HashMap<u32, SuperPoly> = HashMap::new();
        let mut pow_cache: HashMap<(usize, u64), SuperPoly> = HashMap::new();
        let mut out = Self::zero(p, n);
        for (mono, &c) in &self.terms {
            if let Entry::Vacant(slot) = ext_cache.entry(mono.ext) {
                let mut img = Self::one(p, n);
                for i in mono.ext_indices() {
                    img = img.try_mul(&x_images[i - 1])?;
                }
                slot.insert(img);
            }
            let mut img = ext_cache[&mono.ext].clone();
            for (i, &e) in mono.pow.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let Entry::Vacant(slot) = pow_cache.entry((i, e)) {
                    slot.insert(y_images[i].pow(e)?);
                }
                img = img.try_mul(&pow_cache[&(i, e)])?;
            }
            out.add_assign_scaled(&img, c);
        }
        Ok(out)
    }

    /// `(exterior degree, total degree)` shared by every term.
    pub fn bidegree(&self) -> Result<(u32, u64)> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        let bideg = |m: &SuperMonomial| -> Result<(u32, u64)> {
            Ok((m.ext_degree(), m.degree().ok_or(Error::Overflow("degree"))?))
        };
        let d = bideg(first)?;
        for m in it {
            if bideg(m)? != d {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(d)
    }

    /// Splits into bihomogeneous components keyed by `(ext degree, degree)`.
    pub fn components(&self) -> Result<BTreeMap<(u32, u64), SuperPoly>> {
        let mut out: BTreeMap<(u32, u64), SuperPoly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let key = (m.ext_degree(), m.degree().ok_or(Error::Overflow("degree"))?);
            out.entry(key)
                .or_insert_with(|| Self::zero(self.prime, self.nvars))
                .add_term(m.clone(), c);
        }
        Ok(out)
    }

    /// Parses the text grammar `c*x1*y2^3 + c*y1^4`. Coefficients are reduced
    /// mod `p` and terms may also be joined by ` - `; factors multiply left to
    /// right, so `x2*x1` carries a sign and `x1*x1` vanishes.
    pub fn parse(src: &str, prime: Prime, nvars: usize) -> Result<Self> {
        let mut out = Self::zero(prime, nvars);
        for (negative, raw) in split_terms(src)? {
            let mut f = Self::one(prime, nvars);
            let mut coeff = FpScalar::ONE;
            for (pos, tok) in raw.split('*').map(str::trim).enumerate() {
                if pos == 0 && tok.bytes().all(|b| b.is_ascii_digit()) && !tok.is_empty() {
                    let v: u128 = tok
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))?;
                    coeff = prime.reduce((v % prime.get() as u128) as u64);
                    continue;
                }
                f = f.try_mul(&parse_factor(tok, prime, nvars)?)?;
            }
            if negative {
                coeff = prime.neg(coeff);
            }
            out.add_assign_scaled(&f, coeff);
        }
        Ok(out)
    }
}

/// Splits on top-level `+`/`-`, returning `(negative, term)` pairs.
fn split_terms(src: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut start = 0;
    for (i, ch) in src.char_indices().chain(std::iter::once((src.len(), '+'))) {
        if ch != '+' && ch != '-' {
            continue;
        }
        let term = src[start..i].trim();
        if term.is_empty() {
            // only a leading sign may stand without a term before it
            if !(out.is_empty() && start == 0 && i < src.len()) {
                return Err(Error::Parse(format!("empty term in {src:?}")));
            }
        } else {
            out.push((negative, term));
        }
        negative = ch == '-';
        start = i + 1;
    }
    Ok(out)
}

fn parse_factor(tok: &str, prime: Prime, nvars: usize) -> Result<SuperPoly> {
    let bad = || Error::Parse(format!("bad factor {tok:?}"));
    let (var, exp) = match tok.split_once('^') {
        Some((v, e)) => (v.trim(), e.trim().parse::<u64>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    let mut chars = var.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let idx: usize = chars.as_str().parse().map_err(|_| bad())?;
    if !(1..=nvars).contains(&idx) {
        return Err(Error::Parse(format!(
            "variable index {idx} outside 1..={nvars}"
        )));
    }
    match kind {
        'x' => Ok(match exp {
            0 => SuperPoly::one(prime, nvars),
            1 => SuperPoly::x(prime, nvars, idx),
            _ => SuperPoly::zero(prime, nvars),
        }),
        'y' => Ok(SuperPoly::y_pow(prime, nvars, idx, exp)),
        _ => Err(bad()),
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            Ok(())
        };
        for i in self.ext_indices() {
            sep(f)?;
            write!(f, "x{i}")?;
        }
        for (i, &e) in self.pow.iter().enumerate() {
            match e {
                0 => {}
                1 => {
                    sep(f)?;
                    write!(f, "y{}", i + 1)?;
                }
                _ => {
                    sep(f)?;
                    write!(f, "y{}^{e}", i + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // leading (largest) monomial first
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, FpScalar::ONE);
        out
    }
}

impl Sub for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, self.prime.neg(FpScalar::ONE));
        out
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        self.scale(self.prime.neg(FpScalar::ONE))
    }
}

impl Mul for &SuperPoly {
    type Output = SuperPoly;
    /// Panics on exponent overflow; use [`SuperPoly::try_mul`] to recover.
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_mul(rhs).expect("exponent overflow in product")
    }
}

/// A square matrix over `F_p`, acting on `P_n` by [`SuperPoly::substitute`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    prime: Prime,
    n: usize,
    entries: Vec<FpScalar>,
}

impl Matrix {
    pub fn from_rows(prime: Prime, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix must be square".into()));
        }
        Ok(Matrix {
            prime,
            n,
            entries: rows.iter().flatten().map(|&v| prime.scalar(v)).collect(),
        })
    }

    pub fn identity(prime: Prime, n: usize) -> Self {
        let mut entries = vec![FpScalar::ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = FpScalar::ONE;
        }
        Matrix { prime, n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> FpScalar {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let (p, n) = (self.prime, self.n);
        let mut entries = vec![FpScalar::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = (0..n).fold(FpScalar::ZERO, |acc, k| {
                    p.add(acc, p.mul(self.get(i, k), other.get(k, j)))
                });
            }
        }
        Matrix {
            prime: p,
            n,
            entries,
        }
    }

    /// Determinant by row reduction.
    pub fn det(&self) -> FpScalar {
        let (p, n) = (self.prime, self.n);
        let mut a = self.entries.clone();
        let mut det = FpScalar::ONE;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return FpScalar::ZERO;
            };
            if piv != col {
                for k in 0..n {
                    a.swap(piv * n + k, col * n + k);
                }
                det = p.neg(det);
            }
            let pv = a[col * n + col];
            det = p.mul(det, pv);
            let inv = p.inv(pv).unwrap();
            for r in col + 1..n {
                let factor = p.mul(a[r * n + col], inv);
                if factor.is_zero() {
                    continue;
                }
                for k in col..n {
                    a[r * n + k] = p.sub(a[r * n + k], p.mul(factor, a[col * n + k]));
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn poly(s: &str) -> SuperPoly {
        SuperPoly::parse(s, p3(), 2).unwrap()
    }

    #[test]
    fn koszul_sign_counts_inversions() {
        assert_eq!(koszul_sign(0b10, 0b01), Some(true));
        assert_eq!(koszul_sign(0b01, 0b10), Some(false));
        assert_eq!(koszul_sign(0b01, 0b01), None);
        // x2 x3 · x1 = x1 x2 x3 after two transpositions
        assert_eq!(koszul_sign(0b110, 0b001), Some(false));
    }

    #[test]
    fn exterior_products() {
        assert_eq!(&poly("x2") * &poly("x1"), poly("-1*x1*x2"));
        assert!((&poly("x1") * &poly("x1")).is_zero());
        assert_eq!(poly("x2*x1"), poly("2*x1*x2"));
    }

    #[test]
    fn squaring_l2_mod_3() {
        let l2 = poly("y1*y2^3 + 2*y1^3*y2");
        assert_eq!(&l2 * &l2, poly("y1^2*y2^6 + y1^4*y2^4 + y1^6*y2^2"));
    }

    #[test]
    fn display_grammar() {
        assert_eq!(poly("0").to_string(), "0");
        assert_eq!(poly("2*x1*y2^3 + 1*y1^4").to_string(), "2*x1*y2^3 + 1*y1^4");
        assert_eq!(poly("4").to_string(), "1");
        assert_eq!(poly("y1 + y1 + y1").to_string(), "0");
        assert_eq!(poly("-y1 + 2*y2"), poly("2*y1 + 2*y2"));
        assert_eq!(poly("y1 - y2"), poly("y1 + 2*y2"));
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "", "z1", "y3", "x0", "y1^", "1 + ", "1 + + y1", "--y1", "2*3",
        ] {
            assert!(SuperPoly::parse(bad, p3(), 2).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn exact_division() {
        let l2 = poly("y1*y2^3 + 2*y1^3*y2");
        let h = poly("x1*y1 + 2*y2^2 + x1*x2");
        assert_eq!((&h * &l2).exact_div(&l2).unwrap(), h);
        assert_eq!(poly("x1").exact_div(&poly("y1")), Err(Error::NotDivisible));
        assert_eq!(
            poly("y1").exact_div(&poly("x1")),
            Err(Error::DivisorHasExteriorPart)
        );
    }

    #[test]
    fn substitution_examples() {
        let l2 = poly("y1*y2^3 + 2*y1^3*y2");
        let swap = Matrix::from_rows(p3(), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(l2.substitute(&swap).unwrap(), -&l2);
        assert_eq!(l2.substitute(&Matrix::identity(p3(), 2)).unwrap(), l2);
        let t = Matrix::from_rows(p3(), &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(poly("x1").substitute(&t).unwrap(), poly("x1 + x2"));
    }

    #[test]
    fn bidegrees() {
        assert_eq!(poly("x1*x2").bidegree(), Ok((2, 2)));
        assert_eq!(poly("y1*y2^3 + y1^3*y2").bidegree(), Ok((0, 8)));
        assert_eq!(poly("x1 + y1").bidegree(), Err(Error::NotHomogeneous));
        assert_eq!(poly("0").bidegree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = poly("y1 + 2*y2^2 + y1*y2");
        let mut acc = SuperPoly::one(p3(), 2);
        for e in 0..12 {
            assert_eq!(f.pow(e).unwrap(), acc, "e = {e}");
            acc = &acc * &f;
        }
        let g = poly("x1*y1 + y2 + x1*x2");
        assert_eq!(g.pow(3).unwrap(), &(&g * &g) * &g);
    }

    #[test]
    fn determinant() {
        let m = Matrix::from_rows(p3(), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.det(), p3().scalar(-1));
        let m = Matrix::from_rows(p3(), &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(m.det(), FpScalar::ZERO);
    }
}
