//! Tautological monomials on the fibre power `C_g^d` and push-forward to
//! `M_g`.
//!
//! A [`PointedMonomial`] is a product of the divisor classes `K_i` (the
//! relative canonical class pulled back along the `i`-th projection) and
//! `D_ij` (the diagonal `x_i = x_j`). A [`PointedPoly`] attaches kappa
//! polynomials, understood as pull-backs from `M_g`, as coefficients. The
//! substitution rules
//!
//! ```text
//! D_id D_jd -> D_ij D_id   (i < j < d)
//! D_id^2    -> -K_i D_id   (i < d)
//! K_d D_id  -> K_i D_id    (i < d)
//! ```
//!
//! bring every term into the shape `M · D_id` or `M · K_d^k` with `M` free of
//! the last point, after which forgetting that point sends `M · D_id` to `M`
//! and `M · K_d^k` to `M · κ_{k-1}` (`κ_0 = 2g - 2`, `κ_{-1} = 0`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::kappa::KappaPoly;
use crate::rational::{int, Rational};

/// `κ_i` on `M_g` with the conventions `κ_0 = 2g - 2`, `κ_{-1} = 0`.
pub fn kappa_class(g: u32, i: i64) -> KappaPoly {
    match i {
        i if i < 0 => KappaPoly::zero(),
        0 => KappaPoly::constant(int(2 * g as i64 - 2)),
        i => KappaPoly::kappa(i as u32),
    }
}

/// A monomial `Π K_i^{a_i} Π D_ij^{b_ij}` on `C_g^d`, points numbered from 1.
///
/// Ordering is by the `K` exponent vector, then by the sorted `D` exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedMonomial {
    d: usize,
    kexp: Vec<u32>,
    dexp: BTreeMap<(usize, usize), u32>,
}

impl PointedMonomial {
    pub fn one(d: usize) -> Self {
        PointedMonomial {
            d,
            kexp: vec![0; d],
            dexp: BTreeMap::new(),
        }
    }

    /// `K_i^power`.
    pub fn k(d: usize, i: usize, power: u32) -> Self {
        let mut m = Self::one(d);
        m.mul_k(i, power);
        m
    }

    /// `D_ij^power`, in either index order.
    pub fn diag(d: usize, i: usize, j: usize, power: u32) -> Self {
        let mut m = Self::one(d);
        m.mul_d(i, j, power);
        m
    }

    pub fn points(&self) -> usize {
        self.d
    }

    pub fn k_exp(&self, i: usize) -> u32 {
        self.kexp[i - 1]
    }

    pub fn k_exps(&self) -> &[u32] {
        &self.kexp
    }

    pub fn d_exp(&self, i: usize, j: usize) -> u32 {
        let key = (i.min(j), i.max(j));
        self.dexp.get(&key).copied().unwrap_or(0)
    }

    pub fn diagonals(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.dexp.iter().map(|(&k, &v)| (k, v))
    }

    pub fn degree(&self) -> u32 {
        self.kexp.iter().sum::<u32>() + self.dexp.values().sum::<u32>()
    }

    pub fn is_one(&self) -> bool {
        self.degree() == 0
    }

    pub fn mul_k(&mut self, i: usize, power: u32) {
        assert!((1..=self.d).contains(&i), "K index {i} outside 1..={}", self.d);
        self.kexp[i - 1] += power;
    }

    pub fn mul_d(&mut self, i: usize, j: usize, power: u32) {
        assert!(i != j, "D_ii is not a diagonal class");
        let key = (i.min(j), i.max(j));
        assert!(key.1 <= self.d, "D index {} outside 1..={}", key.1, self.d);
        if power > 0 {
            *self.dexp.entry(key).or_insert(0) += power;
        }
    }

    fn set_d(&mut self, key: (usize, usize), power: u32) {
        if power == 0 {
            self.dexp.remove(&key);
        } else {
            self.dexp.insert(key, power);
        }
    }

    pub fn mul(&self, other: &PointedMonomial) -> PointedMonomial {
        assert_eq!(self.d, other.d, "monomials live on different fibre powers");
        let mut out = self.clone();
        for (i, &a) in other.kexp.iter().enumerate() {
            out.kexp[i] += a;
        }
        for (&(i, j), &b) in &other.dexp {
            out.mul_d(i, j, b);
        }
        out
    }

    /// Whether point `p` occurs in some factor.
    pub fn involves(&self, p: usize) -> bool {
        self.kexp[p - 1] > 0 || self.dexp.keys().any(|&(i, j)| i == p || j == p)
    }

    /// Pull-back along the map forgetting points `d+1..=new_d`.
    pub fn lift(&self, new_d: usize) -> PointedMonomial {
        assert!(new_d >= self.d);
        let mut out = self.clone();
        out.d = new_d;
        out.kexp.resize(new_d, 0);
        out
    }

    /// Relabels point `i` as `perm[i-1]` (a permutation of `1..=d`).
    pub fn relabel(&self, perm: &[usize]) -> PointedMonomial {
        let mut out = PointedMonomial::one(self.d);
        for (i, &a) in self.kexp.iter().enumerate() {
            out.kexp[perm[i] - 1] += a;
        }
        for (&(i, j), &b) in &self.dexp {
            out.mul_d(perm[i - 1], perm[j - 1], b);
        }
        out
    }

    /// Pull-back along the diagonal `x_i = x_j` (`i < j`): point `j` is
    /// identified with `i` and later points shift down by one. Uses
    /// `D_ij|_Δ = -K_i`.
    pub fn restrict_to_diagonal(&self, i: usize, j: usize) -> (PointedMonomial, i32) {
        assert!(i < j && j <= self.d);
        let map = |p: usize| match p.cmp(&j) {
            std::cmp::Ordering::Equal => i,
            std::cmp::Ordering::Greater => p - 1,
            std::cmp::Ordering::Less => p,
        };
        let mut out = PointedMonomial::one(self.d - 1);
        let mut sign = 1;
        for (p, &a) in self.kexp.iter().enumerate() {
            out.kexp[map(p + 1) - 1] += a;
        }
        for (&(p, q), &b) in &self.dexp {
            if (p, q) == (i, j) {
                out.kexp[i - 1] += b;
                if b % 2 == 1 {
                    sign = -sign;
                }
            } else {
                out.mul_d(map(p), map(q), b);
            }
        }
        (out, sign)
    }

    /// Drops the last point, which must not occur.
    fn drop_last(&self) -> PointedMonomial {
        debug_assert!(!self.involves(self.d));
        let mut out = self.clone();
        out.d -= 1;
        out.kexp.pop();
        out
    }

    /// The factors of the monomial that involve the last point, as
    /// `(K_d exponent, [(i, exponent of D_id)])`.
    fn last_point_factors(&self) -> (u32, Vec<(usize, u32)>) {
        let d = self.d;
        let ds = self
            .dexp
            .iter()
            .filter(|(&(_, j), _)| j == d)
            .map(|(&(i, _), &b)| (i, b))
            .collect();
        (self.kexp[d - 1], ds)
    }

    /// Every single application of a substitution rule at the last point.
    /// Each entry is the rewritten monomial and its sign.
    pub fn rule_applications(&self) -> Vec<(PointedMonomial, i32)> {
        let d = self.d;
        let (kd, ds) = self.last_point_factors();
        let mut out = Vec::new();
        // D_id D_jd -> D_ij D_id
        for (x, &(i, _)) in ds.iter().enumerate() {
            for &(j, _) in &ds[x + 1..] {
                let mut m = self.clone();
                let bj = m.d_exp(j, d);
                m.set_d((j, d), bj - 1);
                m.mul_d(i, j, 1);
                out.push((m, 1));
            }
        }
        // D_id^2 -> -K_i D_id
        for &(i, b) in &ds {
            if b >= 2 {
                let mut m = self.clone();
                m.set_d((i, d), b - 1);
                m.mul_k(i, 1);
                out.push((m, -1));
            }
        }
        // K_d D_id -> K_i D_id
        if kd > 0 {
            for &(i, _) in &ds {
                let mut m = self.clone();
                m.kexp[d - 1] -= 1;
                m.mul_k(i, 1);
                out.push((m, 1));
            }
        }
        out
    }

    /// Normalizes the last point by applying the substitution rules, picking
    /// among the applicable rewrites with `choose(count)`.
    pub fn normalize_last_point_with(&self, mut choose: impl FnMut(usize) -> usize) -> (PointedMonomial, i32) {
        let mut m = self.clone();
        let mut sign = 1;
        loop {
            let mut options = m.rule_applications();
            if options.is_empty() {
                return (m, sign);
            }
            let pick = choose(options.len()) % options.len();
            let (next, s) = options.swap_remove(pick);
            m = next;
            sign *= s;
        }
    }

    /// Closed form of the normalization: all diagonals at the last point are
    /// routed through the smallest index `i0` touching it.
    pub fn normalize_last_point(&self) -> (PointedMonomial, i32) {
        let d = self.d;
        let (kd, ds) = self.last_point_factors();
        let Some(&(i0, b0)) = ds.first() else {
            return (self.clone(), 1);
        };
        let mut m = self.clone();
        m.kexp[d - 1] = 0;
        for &(j, b) in &ds {
            m.set_d((j, d), 0);
            if j != i0 {
                m.mul_d(i0, j, b);
            }
        }
        m.set_d((i0, d), 1);
        m.mul_k(i0, kd + b0 - 1);
        let sign = if (b0 - 1) % 2 == 0 { 1 } else { -1 };
        (m, sign)
    }

    fn text_index(i: usize, j: usize) -> String {
        if i < 10 && j < 10 {
            format!("{i}{j}")
        } else {
            format!("{{{i},{j}}}")
        }
    }
}

impl fmt::Display for PointedMonomial {
    /// `K1^2*D13*D45`; indices of ten or more are written `D{1,12}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (i, &a) in self.kexp.iter().enumerate() {
            match a {
                0 => {}
                1 => factors.push(format!("K{}", i + 1)),
                a => factors.push(format!("K{}^{a}", i + 1)),
            }
        }
        for (&(i, j), &b) in &self.dexp {
            let idx = Self::text_index(i, j);
            match b {
                1 => factors.push(format!("D{idx}")),
                b => factors.push(format!("D{idx}^{b}")),
            }
        }
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

/// Parses the textual form for a given number of points.
pub fn parse_monomial(d: usize, s: &str) -> Result<PointedMonomial> {
    let bad = || Error::Parse(format!("bad pointed monomial {s:?}"));
    let mut m = PointedMonomial::one(d);
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(m);
    }
    for factor in s.split('*') {
        let (base, power) = match factor.split_once('^') {
            Some((b, p)) => (b, p.parse::<u32>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        let (kind, idx) = base.split_at(1);
        match kind {
            "K" => {
                let i: usize = idx.parse().map_err(|_| bad())?;
                if !(1..=d).contains(&i) {
                    return Err(bad());
                }
                m.mul_k(i, power);
            }
            "D" => {
                let (i, j) = if let Some(inner) = idx.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
                    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
                    (a.parse::<usize>().map_err(|_| bad())?, b.parse::<usize>().map_err(|_| bad())?)
                } else if idx.len() == 2 {
                    let v: Vec<usize> = idx.chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>().ok_or_else(bad)?;
                    (v[0], v[1])
                } else {
                    return Err(bad());
                };
                if i == j || i == 0 || j == 0 || i.max(j) > d {
                    return Err(bad());
                }
                m.mul_d(i, j, power);
            }
            _ => return Err(bad()),
        }
    }
    Ok(m)
}

/// An exact linear combination of pointed monomials with kappa-polynomial
/// coefficients pulled back from `M_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedPoly {
    d: usize,
    terms: BTreeMap<PointedMonomial, KappaPoly>,
}

impl PointedPoly {
    pub fn zero(d: usize) -> Self {
        PointedPoly {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize) -> Self {
        Self::from_kappa(d, KappaPoly::one())
    }

    /// `π^*(q)`.
    pub fn from_kappa(d: usize, q: KappaPoly) -> Self {
        let mut p = Self::zero(d);
        p.add_term(PointedMonomial::one(d), q);
        p
    }

    pub fn from_monomial(m: PointedMonomial) -> Self {
        let mut p = Self::zero(m.d);
        p.add_term(m, KappaPoly::one());
        p
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (PointedMonomial, KappaPoly)>) -> Self {
        let mut p = Self::zero(d);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn k(d: usize, i: usize) -> Self {
        Self::from_monomial(PointedMonomial::k(d, i, 1))
    }

    pub fn diag(d: usize, i: usize, j: usize) -> Self {
        Self::from_monomial(PointedMonomial::diag(d, i, j, 1))
    }

    pub fn points(&self) -> usize {
        self.d
    }

    pub fn add_term(&mut self, m: PointedMonomial, c: KappaPoly) {
        assert_eq!(m.d, self.d, "monomial on the wrong fibre power");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&PointedMonomial, &KappaPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PointedMonomial) -> KappaPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Rational) -> PointedPoly {
        PointedPoly::from_terms(self.d, self.terms.iter().map(|(m, q)| (m.clone(), q.scale(c))))
    }

    /// Multiplication by a pulled-back class.
    pub fn mul_kappa(&self, q: &KappaPoly) -> PointedPoly {
        PointedPoly::from_terms(self.d, self.terms.iter().map(|(m, c)| (m.clone(), c * q)))
    }

    pub fn mul_monomial(&self, m: &PointedMonomial) -> PointedPoly {
        PointedPoly::from_terms(self.d, self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())))
    }

    /// Terms whose total codimension (monomial degree plus coefficient
    /// degree) equals `degree`.
    pub fn homogeneous_part(&self, degree: u32) -> PointedPoly {
        let mut out = PointedPoly::zero(self.d);
        for (m, c) in &self.terms {
            let md = m.degree();
            if md <= degree {
                out.add_term(m.clone(), c.homogeneous_part(degree - md));
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.iter().flat_map(|(m, c)| {
            let md = m.degree();
            c.terms().map(move |(p, _)| md + p.degree())
        });
        match degrees.next() {
            None => true,
            Some(x) => degrees.all(|y| y == x),
        }
    }

    /// Pull-back to `C_g^{new_d}`.
    pub fn lift(&self, new_d: usize) -> PointedPoly {
        PointedPoly::from_terms(new_d, self.terms.iter().map(|(m, c)| (m.lift(new_d), c.clone())))
    }

    pub fn relabel(&self, perm: &[usize]) -> PointedPoly {
        PointedPoly::from_terms(self.d, self.terms.iter().map(|(m, c)| (m.relabel(perm), c.clone())))
    }

    /// Pull-back along the diagonal `x_i = x_j`.
    pub fn restrict_to_diagonal(&self, i: usize, j: usize) -> PointedPoly {
        let mut out = PointedPoly::zero(self.d - 1);
        for (m, c) in &self.terms {
            let (n, sign) = m.restrict_to_diagonal(i, j);
            out.add_term(n, if sign > 0 { c.clone() } else { -c });
        }
        out
    }

    pub fn truncate_total_degree(&self, max_degree: u32) -> PointedPoly {
        let mut out = PointedPoly::zero(self.d);
        for (m, c) in &self.terms {
            let md = m.degree();
            if md <= max_degree {
                out.add_term(m.clone(), c.truncate(max_degree - md));
            }
        }
        out
    }
}

impl Add for &PointedPoly {
    type Output = PointedPoly;
    fn add(self, rhs: &PointedPoly) -> PointedPoly {
        assert_eq!(self.d, rhs.d);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PointedPoly {
    type Output = PointedPoly;
    fn sub(self, rhs: &PointedPoly) -> PointedPoly {
        assert_eq!(self.d, rhs.d);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &PointedPoly {
    type Output = PointedPoly;
    fn neg(self) -> PointedPoly {
        PointedPoly::from_terms(self.d, self.terms.iter().map(|(m, c)| (m.clone(), -c)))
    }
}

impl Mul for &PointedPoly {
    type Output = PointedPoly;
    fn mul(self, rhs: &PointedPoly) -> PointedPoly {
        assert_eq!(self.d, rhs.d);
        let mut out = PointedPoly::zero(self.d);
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl fmt::Display for PointedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*{m}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Rewrites every term as (monomial free of the last point) times either a
/// single `D_id` or a pure power `K_d^k`.
pub fn normalize_last_point(p: &PointedPoly) -> PointedPoly {
    assert!(p.d >= 1, "normalization needs at least one point");
    let mut out = PointedPoly::zero(p.d);
    for (m, c) in &p.terms {
        let (n, sign) = m.normalize_last_point();
        out.add_term(n, if sign > 0 { c.clone() } else { -c });
    }
    out
}

/// Forgets the last point of a polynomial normalized for it.
pub fn pushforward_point(p: &PointedPoly, g: u32) -> Result<PointedPoly> {
    let d = p.d;
    if d == 0 {
        return Err(Error::InvalidArgument("no point to forget".into()));
    }
    let mut out = PointedPoly::zero(d - 1);
    for (m, c) in &p.terms {
        let (kd, ds) = m.last_point_factors();
        match ds.as_slice() {
            [] => {
                let factor = kappa_class(g, kd as i64 - 1);
                if factor.is_zero() {
                    continue;
                }
                let mut base = m.clone();
                base.kexp[d - 1] = 0;
                out.add_term(base.drop_last(), c * &factor);
            }
            [(i, 1)] if kd == 0 => {
                let mut base = m.clone();
                base.set_d((*i, d), 0);
                out.add_term(base.drop_last(), c.clone());
            }
            _ => return Err(Error::NotNormalized(m.to_string())),
        }
    }
    Ok(out)
}

/// Forgets points `d, d-1, …, keep+1`.
pub fn pushforward_to(p: &PointedPoly, g: u32, keep: usize) -> Result<PointedPoly> {
    let mut cur = p.clone();
    while cur.d > keep {
        cur = pushforward_point(&normalize_last_point(&cur), g)?;
    }
    Ok(cur)
}

/// Push-forward along `π = π_1 ∘ ⋯ ∘ π_d : C_g^d → M_g`.
pub fn pushforward_all(p: &PointedPoly, g: u32) -> Result<KappaPoly> {
    let bottom = pushforward_to(p, g, 0)?;
    Ok(bottom.coeff(&PointedMonomial::one(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kappa::kappa_term;

    fn mono(d: usize, s: &str) -> PointedMonomial {
        parse_monomial(d, s).unwrap()
    }

    #[test]
    fn textual_round_trip() {
        let m = mono(5, "K1^2*D13*D45");
        assert_eq!(m.to_string(), "K1^2*D13*D45");
        let big = mono(12, "K11*D{1,12}");
        assert_eq!(big.to_string(), "K11*D{1,12}");
        assert_eq!(parse_monomial(12, &big.to_string()).unwrap(), big);
        assert!(parse_monomial(3, "D14").is_err());
        assert!(parse_monomial(3, "D11").is_err());
    }

    #[test]
    fn printed_substitution_rules() {
        let (m, s) = mono(3, "D13*D23").normalize_last_point();
        assert_eq!((m, s), (mono(3, "D12*D13"), 1));
        let (m, s) = mono(3, "D13^2").normalize_last_point();
        assert_eq!((m, s), (mono(3, "K1*D13"), -1));
        let (m, s) = mono(3, "K3^2*D13").normalize_last_point();
        assert_eq!((m, s), (mono(3, "K1^2*D13"), 1));
    }

    #[test]
    fn pushforward_rules() {
        let g = 4;
        let p = PointedPoly::from_monomial(mono(3, "K1*D13"));
        let q = pushforward_point(&p, g).unwrap();
        assert_eq!(q, PointedPoly::from_monomial(mono(2, "K1")));
        let p = PointedPoly::from_monomial(mono(3, "K1*K3^3"));
        let q = pushforward_point(&p, g).unwrap();
        assert_eq!(q, PointedPoly::from_terms(2, [(mono(2, "K1"), KappaPoly::kappa(2))]));
        let p = PointedPoly::from_monomial(mono(3, "K1*K2"));
        assert!(pushforward_point(&p, g).unwrap().is_zero());
        let p = PointedPoly::from_monomial(mono(3, "K3"));
        assert_eq!(pushforward_point(&p, g).unwrap(), PointedPoly::from_kappa(2, KappaPoly::constant(int(6))));
        let p = PointedPoly::from_monomial(mono(3, "D13*D23"));
        assert!(matches!(pushforward_point(&p, g), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn kappa_monomials_push_down() {
        // π_*(K_1^{a+1} K_2^{b+1}) = κ_a κ_b
        let p = PointedPoly::from_monomial(mono(2, "K1^3*K2^2"));
        assert_eq!(pushforward_all(&p, 5).unwrap(), kappa_term(int(1), &[2, 1]));
        assert_eq!(pushforward_all(&PointedPoly::zero(4), 3).unwrap(), KappaPoly::zero());
        let bare = PointedPoly::from_kappa(0, KappaPoly::kappa(3));
        assert_eq!(pushforward_all(&bare, 3).unwrap(), KappaPoly::kappa(3));
    }
}
