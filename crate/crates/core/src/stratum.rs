//! Diagonal-stratum normal form for tautological classes on `C_g^d`.
//!
//! Every monomial in the `K_i` and `D_ij` equals `± Δ_P · Π_B K_B^{e_B}`,
//! where `Δ_P` is the small diagonal of a set partition `P` of the points
//! (so `Δ_P ≅ C_g^{|P|}`) and `K_B` is the canonical class of the copy of
//! the curve carried by block `B`. Multiplying by `D_ij` either merges the
//! blocks of `i` and `j` or, if they already agree, contributes the
//! self-intersection `-K_B`. Push-forward to `M_g` is then immediate:
//! `Π_B κ_{e_B - 1}`.
//!
//! This representation collapses the many monomials the substitution rules
//! would otherwise track separately, and it is what keeps relation
//! generation and the Porteous computations small.

use std::fmt;

use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::kappa::KappaPoly;
use crate::par::{self, Execution};
use crate::pointed::{kappa_class, PointedMonomial, PointedPoly};
use crate::rational::{int, Rational};

/// `Δ_P · Π_B K_B^{e_B}` with blocks labelled in order of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stratum {
    labels: Vec<u8>,
    exps: Vec<u32>,
}

impl Stratum {
    /// The fundamental class of `C_g^d`.
    pub fn generic(d: usize) -> Self {
        assert!(d < 256, "too many points");
        Stratum {
            labels: (0..d as u8).collect(),
            exps: vec![0; d],
        }
    }

    pub fn points(&self) -> usize {
        self.labels.len()
    }

    pub fn blocks(&self) -> usize {
        self.exps.len()
    }

    /// Block exponents in label order.
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Points (1-based) of each block.
    pub fn block_points(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.exps.len()];
        for (i, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(i + 1);
        }
        out
    }

    pub fn codim(&self) -> u32 {
        (self.labels.len() - self.exps.len()) as u32 + self.exps.iter().sum::<u32>()
    }

    /// Degree of the push-forward to `M_g` (if nonzero).
    pub fn push_degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64 - 1).sum()
    }

    /// A lower bound for the push-forward degree of any multiple of this
    /// stratum; multiplying by `K` or `D` never decreases it.
    pub fn push_degree_bound(&self) -> u32 {
        self.exps.iter().map(|&e| e.saturating_sub(1)).sum()
    }

    pub fn mul_k(&mut self, i: usize, power: u32) {
        let b = self.labels[i - 1] as usize;
        self.exps[b] += power;
    }

    /// Multiplies by `D_ij`; returns the sign picked up.
    pub fn mul_d(&mut self, i: usize, j: usize) -> i32 {
        let bi = self.labels[i - 1];
        let bj = self.labels[j - 1];
        if bi == bj {
            self.exps[bi as usize] += 1;
            return -1;
        }
        let (lo, hi) = (bi.min(bj), bi.max(bj));
        for l in &mut self.labels {
            if *l == hi {
                *l = lo;
            } else if *l > hi {
                *l -= 1;
            }
        }
        let e = self.exps.remove(hi as usize);
        self.exps[lo as usize] += e;
        1
    }

    /// `m` as `sign · stratum`.
    pub fn from_monomial(m: &PointedMonomial) -> (Stratum, i32) {
        let mut s = Stratum::generic(m.points());
        let mut sign = 1;
        for ((i, j), b) in m.diagonals() {
            for _ in 0..b {
                sign *= s.mul_d(i, j);
            }
        }
        for (i, &a) in m.k_exps().iter().enumerate() {
            s.mul_k(i + 1, a);
        }
        (s, sign)
    }

    /// The monomial `Π_B (Π_{j∈B, j≠min B} D_{min B, j}) · K_{min B}^{e_B}`,
    /// which equals this stratum.
    pub fn representative(&self) -> PointedMonomial {
        let mut m = PointedMonomial::one(self.points());
        for (b, pts) in self.block_points().into_iter().enumerate() {
            let first = pts[0];
            for &p in &pts[1..] {
                m.mul_d(first, p, 1);
            }
            m.mul_k(first, self.exps[b]);
        }
        m
    }

    /// `π_*` to `M_g`.
    pub fn pushforward(&self, g: u32) -> KappaPoly {
        let mut out = KappaPoly::one();
        for &e in &self.exps {
            let f = kappa_class(g, e as i64 - 1);
            if f.is_zero() {
                return KappaPoly::zero();
            }
            out = &out * &f;
        }
        out
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

/// Bounds applied while multiplying.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Terms of larger codimension on `C_g^d` are dropped.
    pub max_codim: u32,
    /// Terms whose eventual push-forward must exceed this degree are
    /// dropped (only valid when the result is pushed all the way down).
    pub max_push_degree: Option<u32>,
    /// Cap on live terms; exceeding it is an error, never a truncation.
    pub max_terms: Option<usize>,
}

impl Limits {
    pub fn codim(max_codim: u32) -> Self {
        Limits {
            max_codim,
            max_push_degree: None,
            max_terms: None,
        }
    }

    fn keeps(&self, s: &Stratum) -> bool {
        s.codim() <= self.max_codim && self.max_push_degree.is_none_or(|m| s.push_degree_bound() <= m)
    }
}

/// A point-dependent linear form `c + Σ a_i K_i + Σ b_ij D_ij`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: i64,
    pub k: Vec<(usize, i64)>,
    pub d: Vec<(usize, usize, i64)>,
}

impl LinearForm {
    fn max_codim_increase(&self) -> u32 {
        u32::from(!self.k.is_empty() || !self.d.is_empty())
    }
}

/// A class on `C_g^d` as a combination of strata with kappa coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumPoly {
    d: usize,
    terms: FxHashMap<Stratum, KappaPoly>,
}

impl StratumPoly {
    pub fn zero(d: usize) -> Self {
        StratumPoly {
            d,
            terms: FxHashMap::default(),
        }
    }

    pub fn one(d: usize) -> Self {
        Self::from_kappa(d, KappaPoly::one())
    }

    pub fn from_kappa(d: usize, q: KappaPoly) -> Self {
        let mut p = Self::zero(d);
        p.add_term(Stratum::generic(d), q);
        p
    }

    pub fn points(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: Stratum, c: KappaPoly) {
        debug_assert_eq!(s.points(), self.d);
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(s) {
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Terms in a deterministic order.
    pub fn sorted_terms(&self) -> Vec<(&Stratum, &KappaPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn from_pointed(p: &PointedPoly) -> Self {
        let mut out = Self::zero(p.points());
        for (m, c) in p.terms() {
            let (s, sign) = Stratum::from_monomial(m);
            out.add_term(s, if sign > 0 { c.clone() } else { -c });
        }
        out
    }

    /// Canonical representative monomials; equal to `self` as a class.
    pub fn to_pointed(&self) -> PointedPoly {
        PointedPoly::from_terms(
            self.d,
            self.terms.iter().map(|(s, c)| (s.representative(), c.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> StratumPoly {
        let mut out = Self::zero(self.d);
        if c.is_zero() {
            return out;
        }
        for (s, q) in &self.terms {
            out.terms.insert(s.clone(), q.scale(c));
        }
        out
    }

    pub fn mul_kappa(&self, q: &KappaPoly) -> StratumPoly {
        let mut out = Self::zero(self.d);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), c * q);
        }
        out
    }

    pub fn add(&self, other: &StratumPoly) -> StratumPoly {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &StratumPoly) -> StratumPoly {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), -c);
        }
        out
    }

    /// Terms of codimension exactly `k` on `C_g^d` (coefficients carry no
    /// degree here).
    pub fn codim_part(&self, k: u32) -> StratumPoly {
        let mut out = Self::zero(self.d);
        for (s, c) in &self.terms {
            if s.codim() == k {
                out.terms.insert(s.clone(), c.clone());
            }
        }
        out
    }

    fn check_cap(&self, limits: &Limits) -> Result<()> {
        if let Some(cap) = limits.max_terms {
            if self.terms.len() > cap {
                return Err(Error::ResourceLimit {
                    what: "live stratum terms".into(),
                    observed: self.terms.len(),
                    limit: cap,
                });
            }
        }
        Ok(())
    }

    fn collect(d: usize, chunks: Vec<Vec<(Stratum, KappaPoly)>>) -> StratumPoly {
        let mut out = Self::zero(d);
        for chunk in chunks {
            for (s, c) in chunk {
                out.add_term(s, c);
            }
        }
        out
    }

    /// Multiplies by a linear form with integer coefficients.
    pub fn mul_linear(&self, f: &LinearForm, limits: &Limits, exec: Execution) -> Result<StratumPoly> {
        let terms: Vec<(&Stratum, &KappaPoly)> = self.terms.iter().collect();
        let chunks = par::map(exec, &terms, |&(s, c)| {
            let mut out = Vec::with_capacity(1 + f.k.len() + f.d.len());
            if f.constant != 0 && limits.keeps(s) {
                out.push((s.clone(), c.scale(&int(f.constant))));
            }
            if s.codim() + f.max_codim_increase() > limits.max_codim {
                return out;
            }
            for &(i, a) in &f.k {
                let mut t = s.clone();
                t.mul_k(i, 1);
                if limits.keeps(&t) {
                    out.push((t, c.scale(&int(a))));
                }
            }
            for &(i, j, b) in &f.d {
                let mut t = s.clone();
                let sign = t.mul_d(i, j);
                if limits.keeps(&t) {
                    out.push((t, c.scale(&int(b * sign as i64))));
                }
            }
            out
        });
        let out = Self::collect(self.d, chunks);
        out.check_cap(limits)?;
        Ok(out)
    }

    /// Multiplies every term by a fixed monomial.
    pub fn mul_monomial(&self, m: &PointedMonomial, limits: &Limits) -> StratumPoly {
        let mut out = Self::zero(self.d);
        for (s, c) in &self.terms {
            let mut t = s.clone();
            let mut sign = 1;
            for ((i, j), b) in m.diagonals() {
                for _ in 0..b {
                    sign *= t.mul_d(i, j);
                }
            }
            for (i, &a) in m.k_exps().iter().enumerate() {
                t.mul_k(i + 1, a);
            }
            if limits.keeps(&t) {
                out.add_term(t, if sign > 0 { c.clone() } else { -c });
            }
        }
        out
    }

    /// Full product of two classes.
    pub fn mul(&self, other: &StratumPoly, limits: &Limits, exec: Execution) -> Result<StratumPoly> {
        assert_eq!(self.d, other.d);
        let rhs: Vec<(&Stratum, &KappaPoly)> = other.terms.iter().collect();
        let chunks = par::map(exec, &rhs, |&(s, q)| {
            let partial = self.mul_monomial(&s.representative(), limits);
            partial
                .terms
                .into_iter()
                .map(|(t, c)| (t, &c * q))
                .collect::<Vec<_>>()
        });
        let out = Self::collect(self.d, chunks);
        out.check_cap(limits)?;
        Ok(out)
    }

    /// `π_*` to `M_g`.
    pub fn pushforward_all(&self, g: u32) -> KappaPoly {
        let mut out = KappaPoly::zero();
        for (s, c) in &self.terms {
            let push = s.pushforward(g);
            if !push.is_zero() {
                out = &out + &(c * &push);
            }
        }
        out
    }

    /// Relabels point `i` as `perm[i-1]`.
    pub fn relabel(&self, perm: &[usize]) -> StratumPoly {
        StratumPoly::from_pointed(&self.to_pointed().relabel(perm))
    }
}

impl fmt::Display for StratumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pointed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointed::{parse_monomial, pushforward_all};

    #[test]
    fn merge_and_self_intersection() {
        let (s, sign) = Stratum::from_monomial(&parse_monomial(3, "D13*D23").unwrap());
        assert_eq!(sign, 1);
        assert_eq!(s.blocks(), 1);
        assert_eq!(s.codim(), 2);
        let (s, sign) = Stratum::from_monomial(&parse_monomial(3, "D12^2*K3").unwrap());
        assert_eq!(sign, -1);
        assert_eq!(s.exponents(), &[1, 1]);
        assert_eq!(s.representative().to_string(), "K1*K3*D12");
    }

    #[test]
    fn pushforward_agrees_with_substitution_rules() {
        let g = 5;
        for text in ["D12*D13*K2^2", "D13^3*K2", "K1^2*K3^3*D12", "D12*D23*D34^2*K1"] {
            let m = parse_monomial(4, text).unwrap();
            let p = PointedPoly::from_monomial(m);
            let direct = pushforward_all(&p, g).unwrap();
            let via = StratumPoly::from_pointed(&p).pushforward_all(g);
            assert_eq!(direct, via, "{text}");
        }
    }

    #[test]
    fn linear_form_product() {
        // (1 + K_1)(1 + K_2 - D_12), degree-2 piece = K_1K_2 - K_1D_12
        let lim = Limits::codim(2);
        let one = StratumPoly::one(2);
        let a = one
            .mul_linear(&LinearForm { constant: 1, k: vec![(1, 1)], d: vec![] }, &lim, Execution::Sequential)
            .unwrap();
        let b = a
            .mul_linear(&LinearForm { constant: 1, k: vec![(2, 1)], d: vec![(1, 2, -1)] }, &lim, Execution::Sequential)
            .unwrap();
        let top = b.codim_part(2).to_pointed();
        let expected = &PointedPoly::from_monomial(parse_monomial(2, "K1*K2").unwrap())
            - &PointedPoly::from_monomial(parse_monomial(2, "K1*D12").unwrap());
        assert_eq!(top, expected);
    }

    #[test]
    fn term_cap_is_an_error() {
        let lim = Limits {
            max_codim: 4,
            max_push_degree: None,
            max_terms: Some(2),
        };
        let f = LinearForm { constant: 1, k: vec![(1, 1), (2, 1)], d: vec![(1, 2, -1)] };
        let r = StratumPoly::one(2).mul_linear(&f, &lim, Execution::Sequential);
        assert!(matches!(r, Err(Error::ResourceLimit { .. })));
    }
}
