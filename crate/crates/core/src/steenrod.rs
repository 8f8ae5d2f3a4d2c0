//! The Steenrod–Milnor operations `St^{S,R}` acting on [`SuperPoly`].
//!
//! This is the brute-force oracle. A monomial `x_{a_1}…x_{a_k} y_1^{b_1}…y_n^{b_n}`
//! is peeled one atom at a time from the left (exterior factors in increasing
//! index order, then the `y`-powers) and the Cartan formula
//!
//! ```text
//! St^{S,R}(z t) = Σ (-1)^{(deg z + ℓ(S₁))ℓ(S₂)} (S : S₁, S₂) St^{S₁,R₁}(z) St^{S₂,R₂}(t)
//! ```
//!
//! is applied with `z` the peeled atom. Atoms are evaluated in closed form:
//! `St^{∅,R}(y^b) = C(b; R) y^{b+|R|}`, `St^{(s),0}(x_k) = y_k^{p^s}`,
//! `St^{∅,0}(x_k) = x_k`, everything else on an atom is zero.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gfp::Prime;
use crate::superpoly::{SuperMonomial, SuperPoly};

/// Names the operation `St^{S,R}` dual to `τ_S ξ^R`.
///
/// `S` is strictly increasing; trailing zeros of `R` are trimmed, so
/// `R = (0)` and `R = ()` are the same index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MilnorIndex {
    s: SmallVec<[u32; 2]>,
    r: SmallVec<[u64; 2]>,
}

impl MilnorIndex {
    pub fn new(s: &[u32], r: &[u64]) -> Result<Self> {
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(format!(
                "S = {s:?} is not strictly increasing"
            )));
        }
        let mut r: SmallVec<[u64; 2]> = SmallVec::from_slice(r);
        while r.last() == Some(&0) {
            r.pop();
        }
        Ok(MilnorIndex {
            s: SmallVec::from_slice(s),
            r,
        })
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// `β = St^{(0),()}`.
    pub fn bockstein() -> Self {
        MilnorIndex {
            s: SmallVec::from_slice(&[0]),
            r: SmallVec::new(),
        }
    }

    /// `P^i = St^{∅,(i)}`.
    pub fn power(i: u64) -> Self {
        Self::new(&[], &[i]).expect("valid")
    }

    /// `St^{(s),(i)}`.
    pub fn single(s: u32, i: u64) -> Self {
        Self::new(&[s], &[i]).expect("valid")
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn r(&self) -> &[u64] {
        &self.r
    }

    pub fn len_s(&self) -> usize {
        self.s.len()
    }

    pub fn is_identity(&self) -> bool {
        self.s.is_empty() && self.r.is_empty()
    }

    /// `Σ (2p^{s_j} - 1) + Σ 2(p^i - 1) r_i`.
    pub fn degree(&self, prime: Prime) -> Option<u64> {
        let ext = self.s.iter().try_fold(0u64, |acc, &s| {
            acc.checked_add(prime.power(s)?.checked_mul(2)? - 1)
        })?;
        ext.checked_add(prime.abs_r(&self.r)?.checked_mul(2)?)
    }

    /// `ℓ(S) + 2·Σ r_i`; the operation kills everything of smaller degree.
    pub fn instability_bound(&self) -> Option<u64> {
        self.r.iter().try_fold(self.s.len() as u64, |acc, &r| {
            acc.checked_add(r.checked_mul(2)?)
        })
    }
}

impl fmt::Display for MilnorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(",");
        write!(
            f,
            "St^{{({}),({})}}",
            join(&mut self.s.iter().map(|x| x.to_string())),
            join(&mut self.r.iter().map(|x| x.to_string()))
        )
    }
}

/// One term of the Cartan formula: `S = S₁ ⊔ S₂`, `R = R₁ + R₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanSplitting {
    pub left: MilnorIndex,
    pub right: MilnorIndex,
    /// Sign of the shuffle taking `(S₁, S₂)` back to increasing order.
    pub shuffle_negative: bool,
}

impl CartanSplitting {
    pub fn shuffle_sign(&self) -> i8 {
        if self.shuffle_negative {
            -1
        } else {
            1
        }
    }
}

/// Every ordered splitting of `idx`, `2^{ℓ(S)} · Π(r_i + 1)` in total.
pub fn cartan_splittings(idx: &MilnorIndex) -> Vec<CartanSplitting> {
    let k = idx.s.len();
    let r_choices: usize = idx.r.iter().map(|&r| r as usize + 1).product();
    let mut out = Vec::with_capacity((1usize << k) * r_choices);
    for mask in 0u32..(1 << k) {
        let (mut s1, mut s2) = (SmallVec::<[u32; 2]>::new(), SmallVec::<[u32; 2]>::new());
        let mut inversions = 0usize;
        for (pos, &s) in idx.s.iter().enumerate() {
            if mask >> pos & 1 == 1 {
                s1.push(s);
            } else {
                s2.push(s);
                // every later element sent to S₁ precedes this one after the shuffle
                inversions += (mask >> pos).count_ones() as usize;
            }
        }
        let mut r1: SmallVec<[u64; 2]> = SmallVec::from_elem(0, idx.r.len());
        loop {
            let r2: SmallVec<[u64; 2]> = idx.r.iter().zip(&r1).map(|(r, a)| r - a).collect();
            out.push(CartanSplitting {
                left: MilnorIndex::new(&s1, &r1).expect("subsequence stays increasing"),
                right: MilnorIndex::new(&s2, &r2).expect("subsequence stays increasing"),
                shuffle_negative: inversions % 2 == 1,
            });
            // mixed-radix increment of r1 within 0..=r
            let mut pos = 0;
            while pos < r1.len() && r1[pos] == idx.r[pos] {
                r1[pos] = 0;
                pos += 1;
            }
            if pos == r1.len() {
                break;
            }
            r1[pos] += 1;
        }
    }
    out
}

/// `St^{S,R}(x_k^ε y_ℓ^b)` in `P_n` (indices 1-based).
pub fn atom_action(
    prime: Prime,
    nvars: usize,
    idx: &MilnorIndex,
    epsilon: bool,
    k: usize,
    b: u64,
    l: usize,
) -> Result<SuperPoly> {
    let zero = SuperPoly::zero(prime, nvars);
    let coeff = prime.multinom_mod_p(b, &idx.r);
    if coeff.is_zero() {
        return Ok(zero);
    }
    let abs_r = prime.abs_r(&idx.r).ok_or(Error::Overflow("|R|"))?;
    let mut pow: SmallVec<[u64; 2]> = SmallVec::from_elem(0, nvars);
    pow[l - 1] = b
        .checked_add(abs_r)
        .ok_or(Error::Overflow("atom exponent"))?;
    let mut ext = 0u32;
    match idx.s.as_slice() {
        [] => {
            if epsilon {
                ext = 1 << (k - 1);
            }
        }
        [s] => {
            if !epsilon {
                return Ok(zero);
            }
            let ps = prime.power(*s).ok_or(Error::Overflow("p^s"))?;
            pow[k - 1] = pow[k - 1]
                .checked_add(ps)
                .ok_or(Error::Overflow("atom exponent"))?;
        }
        _ => return Ok(zero),
    }
    Ok(SuperPoly::term(
        prime,
        SuperMonomial::from_parts(ext, &pow),
        coeff,
    ))
}

/// Call-local evaluator holding the memo tables.
struct Oracle {
    prime: Prime,
    nvars: usize,
    splits: HashMap<MilnorIndex, Rc<Vec<CartanSplitting>>>,
    memo: HashMap<(MilnorIndex, SuperMonomial), SuperPoly>,
}

impl Oracle {
    fn new(prime: Prime, nvars: usize) -> Self {
        Oracle {
            prime,
            nvars,
            splits: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn splittings(&mut self, idx: &MilnorIndex) -> Rc<Vec<CartanSplitting>> {
        self.splits
            .entry(idx.clone())
            .or_insert_with(|| Rc::new(cartan_splittings(idx)))
            .clone()
    }

    fn monomial(&mut self, idx: &MilnorIndex, m: &SuperMonomial) -> Result<SuperPoly> {
        let (p, n) = (self.prime, self.nvars);
        if m.is_one() {
            return Ok(if idx.is_identity() {
                SuperPoly::one(p, n)
            } else {
                SuperPoly::zero(p, n)
            });
        }
        let deg = m.degree().ok_or(Error::Overflow("degree"))?;
        if deg
            < idx
                .instability_bound()
                .ok_or(Error::Overflow("instability bound"))?
        {
            return Ok(SuperPoly::zero(p, n));
        }
        let key = (idx.clone(), m.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }

        // peel the leftmost atom
        let mut rest_pow: SmallVec<[u64; 2]> = SmallVec::from_slice(m.pow());
        let (atom_is_x, var, b, atom_deg, rest_ext) = if m.ext_mask() != 0 {
            let i = m.ext_mask().trailing_zeros() as usize;
            (true, i + 1, 0, 1, m.ext_mask() & !(1 << i))
        } else {
            let i = rest_pow
                .iter()
                .position(|&e| e > 0)
                .expect("non-unit monomial");
            let b = std::mem::take(&mut rest_pow[i]);
            (false, i + 1, b, 2 * b, 0)
        };
        let rest = SuperMonomial::from_parts(rest_ext, &rest_pow);
        let atom = |op: &MilnorIndex| atom_action(p, n, op, atom_is_x, var, b, var);

        let out = if rest.is_one() {
            atom(idx)?
        } else {
            let mut out = SuperPoly::zero(p, n);
            for split in self.splittings(idx).iter() {
                let useless = if atom_is_x {
                    !split.left.r.is_empty() || split.left.s.len() > 1
                } else {
                    !split.left.s.is_empty()
                };
                if useless {
                    continue;
                }
                let head = atom(&split.left)?;
                if head.is_zero() {
                    continue;
                }
                let tail = self.monomial(&split.right, &rest)?;
                if tail.is_zero() {
                    continue;
                }
                let (l1, l2) = (split.left.s.len() as u64, split.right.s.len() as u64);
                let exponent = (atom_deg + l1) * l2 + split.shuffle_negative as u64;
                out.add_assign_scaled(&head.try_mul(&tail)?, p.sign(exponent));
            }
            out
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    fn apply(&mut self, idx: &MilnorIndex, f: &SuperPoly) -> Result<SuperPoly> {
        let mut out = SuperPoly::zero(self.prime, self.nvars);
        for (m, c) in f.terms() {
            let image = self.monomial(idx, m)?;
            out.add_assign_scaled(&image, c);
        }
        Ok(out)
    }
}

/// `St^{S,R}(f)`, extended linearly over the terms of `f`.
pub fn st_apply(idx: &MilnorIndex, f: &SuperPoly) -> Result<SuperPoly> {
    Oracle::new(f.prime(), f.nvars()).apply(idx, f)
}

/// The Bockstein `β = St^{(0),()}`.
pub fn bockstein(f: &SuperPoly) -> Result<SuperPoly> {
    st_apply(&MilnorIndex::bockstein(), f)
}

/// The reduced power `P^i = St^{∅,(i)}`.
pub fn power_op(i: u64, f: &SuperPoly) -> Result<SuperPoly> {
    st_apply(&MilnorIndex::power(i), f)
}

/// Right-hand side of the Cartan formula for `St^{S,R}(f g)`, built from the
/// actions on `f` and `g` separately. `f` is split into homogeneous parts so
/// `deg z` is well defined.
pub fn cartan_product(idx: &MilnorIndex, f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
    let p = f.prime();
    let mut out = SuperPoly::zero(p, f.nvars());
    let splits = cartan_splittings(idx);
    for ((_, deg), part) in f.components()? {
        for split in &splits {
            let left = st_apply(&split.left, &part)?;
            if left.is_zero() {
                continue;
            }
            let right = st_apply(&split.right, g)?;
            let (l1, l2) = (split.left.s.len() as u64, split.right.s.len() as u64);
            let sign = p.sign((deg + l1) * l2 + split.shuffle_negative as u64);
            out.add_assign_scaled(&left.try_mul(&right)?, sign);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn poly(s: &str, p: u64) -> SuperPoly {
        SuperPoly::parse(s, prime(p), 2).unwrap()
    }

    #[test]
    fn index_normalisation() {
        assert_eq!(
            MilnorIndex::new(&[0], &[0]).unwrap(),
            MilnorIndex::bockstein()
        );
        assert_eq!(
            MilnorIndex::new(&[], &[0, 0]).unwrap(),
            MilnorIndex::identity()
        );
        assert!(MilnorIndex::new(&[1, 1], &[]).is_err());
        assert!(MilnorIndex::new(&[2, 1], &[]).is_err());
        assert_eq!(MilnorIndex::single(1, 2).to_string(), "St^{(1),(2)}");
    }

    #[test]
    fn degrees() {
        let p = prime(3);
        assert_eq!(MilnorIndex::bockstein().degree(p), Some(1));
        assert_eq!(MilnorIndex::power(1).degree(p), Some(4));
        assert_eq!(
            MilnorIndex::new(&[0, 1], &[0, 1]).unwrap().degree(p),
            Some(1 + 5 + 16)
        );
    }

    #[test]
    fn atom_examples() {
        let p = prime(5);
        let y1 = |e| SuperPoly::y_pow(p, 2, 1, e);
        assert_eq!(
            atom_action(p, 2, &MilnorIndex::bockstein(), true, 1, 0, 1).unwrap(),
            y1(1)
        );
        assert_eq!(
            atom_action(p, 2, &MilnorIndex::power(1), false, 1, 1, 1).unwrap(),
            y1(5)
        );
        assert_eq!(
            atom_action(p, 2, &MilnorIndex::single(2, 0), true, 1, 0, 1).unwrap(),
            y1(25)
        );
        assert!(atom_action(
            p,
            2,
            &MilnorIndex::new(&[0, 1], &[]).unwrap(),
            true,
            1,
            0,
            1
        )
        .unwrap()
        .is_zero());
        // x_1 y_2^2 under β: y_1 y_2^2
        let got = atom_action(p, 2, &MilnorIndex::bockstein(), true, 1, 2, 2).unwrap();
        assert_eq!(got, poly("y1*y2^2", 5));
    }

    #[test]
    fn splitting_examples() {
        let splits = cartan_splittings(&MilnorIndex::power(1));
        assert_eq!(splits.len(), 2);
        assert!(splits.iter().all(|s| !s.shuffle_negative));
        assert_eq!(splits[0].left, MilnorIndex::identity());
        assert_eq!(splits[0].right, MilnorIndex::power(1));

        let idx = MilnorIndex::new(&[0, 1], &[]).unwrap();
        let swapped = cartan_splittings(&idx)
            .into_iter()
            .find(|s| s.left.s() == [1] && s.right.s() == [0])
            .unwrap();
        assert_eq!(swapped.shuffle_sign(), -1);

        for k in 0..4u32 {
            for r in 0..5u64 {
                let s: Vec<u32> = (0..k).collect();
                let idx = MilnorIndex::new(&s, &[r]).unwrap();
                assert_eq!(cartan_splittings(&idx).len(), (1 << k) * (r as usize + 1));
            }
        }
    }

    #[test]
    fn identity_and_bockstein() {
        let f = poly("x1*x2*y1^2 + 2*y2^7 + x2", 3);
        assert_eq!(st_apply(&MilnorIndex::identity(), &f).unwrap(), f);
        assert_eq!(power_op(0, &f).unwrap(), f);
        assert!(bockstein(&poly("y1", 3)).unwrap().is_zero());
        assert_eq!(
            bockstein(&poly("x1*x2", 3)).unwrap(),
            poly("y1*x2 + 2*x1*y2", 3)
        );
        assert!(bockstein(&bockstein(&f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn reduced_power_on_y() {
        for q in [3, 5, 7] {
            let f = poly("y1", q);
            assert_eq!(
                power_op(1, &f).unwrap(),
                SuperPoly::y_pow(prime(q), 2, 1, q)
            );
            assert!(power_op(2, &f).unwrap().is_zero());
            assert!(power_op(1, &poly("x1", q)).unwrap().is_zero());
        }
    }

    #[test]
    fn instability_kills_low_degrees() {
        // deg y1 = 2 < 2·2
        assert!(power_op(2, &poly("y1", 5)).unwrap().is_zero());
        let idx = MilnorIndex::new(&[0, 1], &[1]).unwrap();
        assert!(st_apply(&idx, &poly("x1*x2", 3)).unwrap().is_zero());
    }

    #[test]
    fn two_exterior_operations_on_x1x2() {
        // St^{(0,1),()}(x1 x2) = (-1)^{(1+1)·1}(S:(0),(1)) y1 y2^p + (-1)^{(1+1)·1}(S:(1),(0)) y1^p y2
        let p = prime(3);
        let idx = MilnorIndex::new(&[0, 1], &[]).unwrap();
        let got = st_apply(&idx, &poly("x1*x2", 3)).unwrap();
        assert_eq!(got, poly("y1*y2^3 + 2*y1^3*y2", 3));
        assert_eq!(got.bidegree().unwrap().1, 2 + idx.degree(p).unwrap());
    }
}
