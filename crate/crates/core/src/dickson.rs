//! Rank-two Dickson and Mui invariants and the Dickson–Mui normal form.
//!
//! With `[u,v] = y_1^{p^u} y_2^{p^v} - y_1^{p^v} y_2^{p^u}` and
//! `[1;u] = x_1 y_2^{p^u} - x_2 y_1^{p^u}`:
//!
//! ```text
//! L2 = [0,1]   L20 = [1,2]   L21 = [0,2]
//! M20 = [1;1]  M21 = [1;0]   M201 = x1 x2
//! Q0 = L20 / L2              Q1 = L21 / L2
//! R0 = M20 L2^{p-2}  R1 = M21 L2^{p-2}  R01 = M201 L2^{p-2}
//! ```
//!
//! Every invariant is written uniquely as `Σ c · R_T · Q0^a · Q1^b` with
//! `R_T ∈ {1, R0, R1, R01}`; [`DicksonAlgebra::decompose`] finds the
//! coefficients by solving a linear system per bidegree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::gfp::{FpScalar, Prime};
use crate::superpoly::{Matrix, SuperMonomial, SuperPoly};

const NVARS: usize = 2;

fn p_pow(prime: Prime, e: u32) -> Result<u64> {
    prime.power(e).ok_or(Error::Overflow("p^e"))
}

/// The determinant `[u,v]`.
pub fn bracket(prime: Prime, u: u32, v: u32) -> Result<SuperPoly> {
    let (pu, pv) = (p_pow(prime, u)?, p_pow(prime, v)?);
    let a = SuperPoly::term(
        prime,
        SuperMonomial::from_parts(0, &[pu, pv]),
        FpScalar::ONE,
    );
    let b = SuperPoly::term(
        prime,
        SuperMonomial::from_parts(0, &[pv, pu]),
        FpScalar::ONE,
    );
    Ok(&a - &b)
}

/// The determinant `[1;u]`.
pub fn bracket1(prime: Prime, u: u32) -> Result<SuperPoly> {
    let pu = p_pow(prime, u)?;
    let a = SuperPoly::term(
        prime,
        SuperMonomial::from_parts(0b01, &[0, pu]),
        FpScalar::ONE,
    );
    let b = SuperPoly::term(
        prime,
        SuperMonomial::from_parts(0b10, &[pu, 0]),
        FpScalar::ONE,
    );
    Ok(&a - &b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Generator {
    L2,
    L20,
    L21,
    M20,
    M21,
    M201,
    Q0,
    Q1,
    R0,
    R1,
    R01,
}

impl Generator {
    pub const ALL: [Generator; 11] = [
        Generator::L2,
        Generator::L20,
        Generator::L21,
        Generator::M20,
        Generator::M21,
        Generator::M201,
        Generator::Q0,
        Generator::Q1,
        Generator::R0,
        Generator::R1,
        Generator::R01,
    ];

    /// The five generators of the invariant algebra.
    pub const INVARIANT: [Generator; 5] = [
        Generator::Q0,
        Generator::Q1,
        Generator::R0,
        Generator::R1,
        Generator::R01,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::L2 => "L2",
            Generator::L20 => "L20",
            Generator::L21 => "L21",
            Generator::M20 => "M20",
            Generator::M21 => "M21",
            Generator::M201 => "M201",
            Generator::Q0 => "Q0",
            Generator::Q1 => "Q1",
            Generator::R0 => "R0",
            Generator::R1 => "R1",
            Generator::R01 => "R01",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown generator {s:?}")))
    }
}

/// The eleven named polynomials for one prime.
#[derive(Clone, Debug)]
pub struct Generators {
    prime: Prime,
    polys: [SuperPoly; 11],
    l2_pow: SuperPoly,
}

impl Generators {
    pub fn new(prime: Prime) -> Result<Self> {
        let l2 = bracket(prime, 0, 1)?;
        let l20 = bracket(prime, 1, 2)?;
        let l21 = bracket(prime, 0, 2)?;
        let m20 = bracket1(prime, 1)?;
        let m21 = bracket1(prime, 0)?;
        let m201 = SuperPoly::term(
            prime,
            SuperMonomial::from_parts(0b11, &[0, 0]),
            FpScalar::ONE,
        );
        let q0 = l20.exact_div(&l2)?;
        let q1 = l21.exact_div(&l2)?;
        let l2_pow = l2.pow(prime.get() - 2)?;
        let r0 = m20.try_mul(&l2_pow)?;
        let r1 = m21.try_mul(&l2_pow)?;
        let r01 = m201.try_mul(&l2_pow)?;
        Ok(Generators {
            prime,
            polys: [l2, l20, l21, m20, m21, m201, q0, q1, r0, r1, r01],
            l2_pow,
        })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn get(&self, g: Generator) -> &SuperPoly {
        &self.polys[g as usize]
    }

    /// `L2^{p-2}`.
    pub fn l2_pow(&self) -> &SuperPoly {
        &self.l2_pow
    }

    pub fn iter(&self) -> impl Iterator<Item = (Generator, &SuperPoly)> {
        Generator::ALL.into_iter().zip(self.polys.iter())
    }
}

/// Transvection, swap and a primitive-root diagonal; together they
/// generate `GL(2, F_p)`.
pub fn gl2_generating_set(prime: Prime) -> Vec<Matrix> {
    let g = prime.primitive_root().value() as i64;
    [
        vec![vec![1, 1], vec![0, 1]],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![g, 0], vec![0, 1]],
    ]
    .iter()
    .map(|rows| Matrix::from_rows(prime, rows).expect("square"))
    .collect()
}

/// Every element of `GL(2, F_p)`; `(p²-1)(p²-p)` matrices.
pub fn gl2_elements(prime: Prime) -> Vec<Matrix> {
    let p = prime.get() as i64;
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d - b * c).rem_euclid(p) != 0 {
                        out.push(Matrix::from_rows(prime, &[vec![a, b], vec![c, d]]).unwrap());
                    }
                }
            }
        }
    }
    out
}

pub fn is_invariant_under(f: &SuperPoly, group: &[Matrix]) -> Result<bool> {
    for m in group {
        if f.substitute(m)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Invariance under the whole of `GL(2, F_p)`, checked on generators.
pub fn is_gl2_invariant(f: &SuperPoly) -> Result<bool> {
    is_invariant_under(f, &gl2_generating_set(f.prime()))
}

/// The exterior factor `R_T` of a Dickson–Mui monomial, ordered by `(|T|, T)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MuiPart {
    One,
    R0,
    R1,
    R01,
}

impl MuiPart {
    pub fn ext_degree(self) -> u32 {
        match self {
            MuiPart::One => 0,
            MuiPart::R0 | MuiPart::R1 => 1,
            MuiPart::R01 => 2,
        }
    }

    fn generator(self) -> Option<Generator> {
        match self {
            MuiPart::One => None,
            MuiPart::R0 => Some(Generator::R0),
            MuiPart::R1 => Some(Generator::R1),
            MuiPart::R01 => Some(Generator::R01),
        }
    }

    /// Total degree of `R_T`.
    pub fn degree(self, prime: Prime) -> u64 {
        let p = prime.get();
        match self {
            MuiPart::One => 0,
            MuiPart::R0 => 2 * p * p - 3,
            MuiPart::R1 => 2 * p * p - 2 * p - 1,
            MuiPart::R01 => 2 * p * p - 2 * p - 2,
        }
    }
}

/// `R_T · Q0^a · Q1^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DmKey {
    pub mui: MuiPart,
    pub a: u64,
    pub b: u64,
}

impl DmKey {
    pub fn new(mui: MuiPart, a: u64, b: u64) -> Self {
        DmKey { mui, a, b }
    }

    pub fn degree(&self, prime: Prime) -> Option<u64> {
        let p = prime.get();
        let q0 = self.a.checked_mul(2 * (p * p - 1))?;
        let q1 = self.b.checked_mul(2 * (p * p - p))?;
        q0.checked_add(q1)?.checked_add(self.mui.degree(prime))
    }
}

impl fmt::Display for DmKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if let Some(g) = self.mui.generator() {
            parts.push(g.name().to_string());
        }
        for (name, e) in [("Q0", self.a), ("Q1", self.b)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// A Dickson–Mui normal form `Σ c · R_T Q0^a Q1^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DMExpr {
    prime: Prime,
    terms: BTreeMap<DmKey, FpScalar>,
}

impl DMExpr {
    pub fn zero(prime: Prime) -> Self {
        DMExpr {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(prime: Prime, key: DmKey, c: FpScalar) -> Self {
        let mut e = Self::zero(prime);
        e.add_term(key, c);
        e
    }

    pub fn prime(&self) -> Prime {
        self.prime
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

    pub fn terms(&self) -> impl Iterator<Item = (DmKey, FpScalar)> + '_ {
        self.terms.iter().map(|(k, &c)| (*k, c))
    }

    pub fn coeff(&self, key: &DmKey) -> FpScalar {
        self.terms.get(key).copied().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: DmKey, c: FpScalar) {
        let p = self.prime;
        let slot = self.terms.entry(key).or_insert(FpScalar::ZERO);
        *slot = p.add(*slot, c);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &DMExpr) {
        for (k, c) in other.terms() {
            self.add_term(k, c);
        }
    }

    pub fn scale(&self, c: FpScalar) -> DMExpr {
        let mut out = DMExpr::zero(self.prime);
        for (k, v) in self.terms() {
            out.add_term(k, self.prime.mul(v, c));
        }
        out
    }

    /// The common total degree of all terms; `None` if the terms disagree
    /// (or the expression is zero).
    pub fn degree(&self) -> Option<u64> {
        let mut degs = self.terms.keys().map(|k| k.degree(self.prime));
        let first = degs.next()??;
        degs.all(|d| d == Some(first)).then_some(first)
    }
}

impl fmt::Display for DMExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (c.value(), k.mui == MuiPart::One && k.a == 0 && k.b == 0) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{k}")?,
                _ => write!(f, "{c}*{k}")?,
            }
        }
        Ok(())
    }
}

type Cache = RwLock<HashMap<u64, Arc<SuperPoly>>>;

/// Generators for one prime plus a thread-safe cache of evaluated basis
/// monomials `R_T Q0^a Q1^b`. Share it behind an `Arc` across workers.
#[derive(Debug)]
pub struct DicksonAlgebra {
    gens: Generators,
    q0_pows: Cache,
    q1_pows: Cache,
    basis: RwLock<HashMap<DmKey, Arc<SuperPoly>>>,
}

fn cached(cache: &Cache, e: u64, base: &SuperPoly) -> Result<Arc<SuperPoly>> {
    if let Some(hit) = cache.read().unwrap().get(&e) {
        return Ok(hit.clone());
    }
    let value = Arc::new(base.pow(e)?);
    Ok(cache.write().unwrap().entry(e).or_insert(value).clone())
}

impl DicksonAlgebra {
    pub fn new(prime: Prime) -> Result<Self> {
        Ok(DicksonAlgebra {
            gens: Generators::new(prime)?,
            q0_pows: RwLock::default(),
            q1_pows: RwLock::default(),
            basis: RwLock::default(),
        })
    }

    pub fn prime(&self) -> Prime {
        self.gens.prime
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn gen(&self, g: Generator) -> &SuperPoly {
        self.gens.get(g)
    }

    pub fn q0_pow(&self, a: u64) -> Result<Arc<SuperPoly>> {
        cached(&self.q0_pows, a, self.gen(Generator::Q0))
    }

    pub fn q1_pow(&self, b: u64) -> Result<Arc<SuperPoly>> {
        cached(&self.q1_pows, b, self.gen(Generator::Q1))
    }

    /// `R_T Q0^a Q1^b` as a polynomial.
    pub fn basis_element(&self, key: DmKey) -> Result<Arc<SuperPoly>> {
        if let Some(hit) = self.basis.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let mut value = self.q0_pow(key.a)?.try_mul(&*self.q1_pow(key.b)?)?;
        if let Some(g) = key.mui.generator() {
            value = self.gen(g).try_mul(&value)?;
        }
        let value = Arc::new(value);
        Ok(self
            .basis
            .write()
            .unwrap()
            .entry(key)
            .or_insert(value)
            .clone())
    }

    pub fn evaluate(&self, e: &DMExpr) -> Result<SuperPoly> {
        let mut out = SuperPoly::zero(self.prime(), NVARS);
        for (k, c) in e.terms() {
            out.add_assign_scaled(&*self.basis_element(k)?, c);
        }
        Ok(out)
    }

    /// Basis monomials of bidegree `(ext, degree)`.
    pub fn candidates(&self, ext: u32, degree: u64) -> Vec<DmKey> {
        let p = self.prime();
        let (dq0, dq1) = (
            2 * (p.get() * p.get() - 1),
            2 * (p.get() * p.get() - p.get()),
        );
        let parts: &[MuiPart] = match ext {
            0 => &[MuiPart::One],
            1 => &[MuiPart::R0, MuiPart::R1],
            2 => &[MuiPart::R01],
            _ => &[],
        };
        let mut out = Vec::new();
        for &mui in parts {
            let Some(rest) = degree.checked_sub(mui.degree(p)) else {
                continue;
            };
            for a in 0..=rest / dq0 {
                let left = rest - a * dq0;
                if left % dq1 == 0 {
                    out.push(DmKey::new(mui, a, left / dq1));
                }
            }
        }
        out.sort();
        out
    }

    /// Writes `f` in Dickson–Mui normal form, bihomogeneous component by
    /// component.
    pub fn decompose(&self, f: &SuperPoly) -> Result<DMExpr> {
        let p = self.prime();
        let mut out = DMExpr::zero(p);
        for ((ext, degree), part) in f.components()? {
            let keys = self.candidates(ext, degree);
            let columns = keys
                .iter()
                .map(|&k| self.basis_element(k))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&SuperPoly> = columns.iter().map(|c| &**c).collect();
            match solve_columns(p, &refs, &part) {
                Solve::Unique(coeffs) => {
                    for (k, c) in keys.into_iter().zip(coeffs) {
                        out.add_term(k, c);
                    }
                }
                Solve::Inconsistent => {
                    return Err(Error::NotInSpan(format!(
                        "bidegree ({ext}, {degree}), {} terms, {} candidates",
                        part.len(),
                        keys.len()
                    )))
                }
                Solve::Dependent => return Err(Error::AmbiguousBasis { ext, degree }),
            }
        }
        Ok(out)
    }
}

enum Solve {
    Unique(Vec<FpScalar>),
    Inconsistent,
    Dependent,
}

/// Solves `Σ λ_j columns[j] = target` by row reduction over the union of
/// monomials.
fn solve_columns(prime: Prime, columns: &[&SuperPoly], target: &SuperPoly) -> Solve {
    let mut rows: HashMap<&SuperMonomial, usize> = HashMap::new();
    for poly in columns.iter().copied().chain(std::iter::once(target)) {
        for (m, _) in poly.terms() {
            let next = rows.len();
            rows.entry(m).or_insert(next);
        }
    }
    let (m, width) = (rows.len(), columns.len() + 1);
    let mut a = vec![0u64; m * width];
    for (j, poly) in columns
        .iter()
        .copied()
        .chain(std::iter::once(target))
        .enumerate()
    {
        for (mono, c) in poly.terms() {
            a[rows[mono] * width + j] = c.value();
        }
    }

    let p = prime.get();
    let mut rank = 0;
    let mut dependent = false;
    for col in 0..columns.len() {
        let Some(piv) = (rank..m).find(|&r| a[r * width + col] != 0) else {
            dependent = true;
            continue;
        };
        if piv != rank {
            for k in 0..width {
                a.swap(piv * width + k, rank * width + k);
            }
        }
        let inv = prime
            .inv(prime.reduce(a[rank * width + col]))
            .unwrap()
            .value();
        for k in 0..width {
            a[rank * width + k] = a[rank * width + k] * inv % p;
        }
        for r in 0..m {
            let factor = a[r * width + col];
            if r == rank || factor == 0 {
                continue;
            }
            for k in col..width {
                let v = a[rank * width + k];
                if v != 0 {
                    a[r * width + k] = (a[r * width + k] + (p - factor) * v) % p;
                }
            }
        }
        rank += 1;
    }
    if (rank..m).any(|r| a[r * width + columns.len()] != 0) {
        return Solve::Inconsistent;
    }
    if dependent {
        return Solve::Dependent;
    }
    Solve::Unique(
        (0..columns.len())
            .map(|r| prime.reduce(a[r * width + columns.len()]))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let p = prime(5);
        assert!(bracket(p, 0, 0).unwrap().is_zero());
        assert_eq!(
            bracket(p, 0, 1).unwrap(),
            SuperPoly::parse("y1*y2^5 - y1^5*y2", p, 2).unwrap()
        );
        assert_eq!(bracket(p, 1, 0).unwrap(), -&bracket(p, 0, 1).unwrap());
        assert_eq!(bracket(p, 0, 40), Err(Error::Overflow("p^e")));
    }

    #[test]
    fn bracket1_examples() {
        let p = prime(3);
        let gens = Generators::new(p).unwrap();
        assert_eq!(&bracket1(p, 0).unwrap(), gens.get(Generator::M21));
        assert_eq!(
            bracket1(p, 0).unwrap(),
            SuperPoly::parse("x1*y2 - x2*y1", p, 2).unwrap()
        );
        assert_eq!(&bracket1(p, 1).unwrap(), gens.get(Generator::M20));
        assert_eq!(bracket1(p, 4).unwrap().bidegree().unwrap().0, 1);
    }

    #[test]
    fn dickson_relations() {
        for q in [3, 5, 7] {
            let p = prime(q);
            let gens = Generators::new(p).unwrap();
            let l2 = gens.get(Generator::L2);
            assert_eq!(gens.get(Generator::Q0), &l2.pow(q - 1).unwrap());
            assert_eq!(
                gens.get(Generator::Q1).bidegree().unwrap(),
                (0, 2 * (q * q - q))
            );
            assert_eq!(
                gens.get(Generator::R0).bidegree().unwrap(),
                (1, 2 * q * q - 3)
            );
            assert_eq!(l2.bidegree().unwrap(), (0, 2 * (q + 1)));
        }
    }

    #[test]
    fn invariance_examples() {
        let p = prime(5);
        let gens = Generators::new(p).unwrap();
        for g in Generator::INVARIANT {
            assert!(is_gl2_invariant(gens.get(g)).unwrap(), "{g}");
        }
        assert!(!is_gl2_invariant(&SuperPoly::y(p, 2, 1)).unwrap());
        assert!(!is_gl2_invariant(gens.get(Generator::L2)).unwrap());
        assert_eq!(gl2_elements(prime(3)).len(), 48);
    }

    #[test]
    fn decomposition_examples() {
        let p = prime(3);
        let dm = DicksonAlgebra::new(p).unwrap();
        let q0 = dm.gen(Generator::L2).pow(2).unwrap();
        let expected = DMExpr::term(p, DmKey::new(MuiPart::One, 1, 0), FpScalar::ONE);
        assert_eq!(dm.decompose(&q0).unwrap(), expected);
        assert!(dm.decompose(&SuperPoly::zero(p, 2)).unwrap().is_zero());

        let r0r1 = dm.gen(Generator::R0) * dm.gen(Generator::R1);
        let expected = DMExpr::term(p, DmKey::new(MuiPart::R01, 1, 0), p.scalar(-1));
        assert_eq!(dm.decompose(&r0r1).unwrap(), expected);

        assert!(matches!(
            dm.decompose(dm.gen(Generator::L2)),
            Err(Error::NotInSpan(_))
        ));
    }

    #[test]
    fn evaluation_examples() {
        let p = prime(3);
        let dm = DicksonAlgebra::new(p).unwrap();
        assert!(dm.evaluate(&DMExpr::zero(p)).unwrap().is_zero());
        let one = DMExpr::term(p, DmKey::new(MuiPart::One, 0, 0), FpScalar::ONE);
        assert_eq!(dm.evaluate(&one).unwrap(), SuperPoly::one(p, 2));
        let r0 = DMExpr::term(p, DmKey::new(MuiPart::R0, 0, 0), FpScalar::ONE);
        assert_eq!(&dm.evaluate(&r0).unwrap(), dm.gen(Generator::R0));
    }

    #[test]
    fn rendering() {
        let p = prime(5);
        let mut e = DMExpr::zero(p);
        assert_eq!(e.to_string(), "0");
        e.add_term(DmKey::new(MuiPart::R01, 0, 2), p.scalar(-2));
        e.add_term(DmKey::new(MuiPart::One, 1, 1), p.scalar(1));
        e.add_term(DmKey::new(MuiPart::One, 0, 0), p.scalar(2));
        e.add_term(DmKey::new(MuiPart::R0, 1, 0), p.scalar(1));
        assert_eq!(e.to_string(), "2 + Q0*Q1 + R0*Q0 + 3*R01*Q1^2");
    }
}
