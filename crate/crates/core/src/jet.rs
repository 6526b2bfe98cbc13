//! Chern classes of the jet bundles `F_d` on `C_g^d` and of `F_d - E`.
//!
//! `c(F_d) = Π_{s=1}^{d} (1 + K_s - Σ_{r<s} D_rs)`. Restricting to a small
//! diagonal where several slots coincide gives the jet bundle "with
//! multiplicities": a point `b` of multiplicity `m_b` contributes
//!
//! ```text
//! Π_{t=1}^{m_b} (1 + t·K_b - Σ_{b'<b} m_{b'} D_{b'b})
//! ```
//!
//! because each earlier slot at the same point restricts `-D` to `+K` and
//! each slot at an earlier point `b'` restricts to `D_{b'b}`.


use crate::error::Result;
use crate::kappa::KappaPoly;
use crate::par::Execution;
use crate::pointed::{PointedMonomial, PointedPoly};
use crate::rational::int;
use crate::series::chern_e_inverse;
use crate::stratum::{Limits, LinearForm, StratumPoly};

/// One factor slot of a jet bundle: the `t`-th copy (`t = multiplicity`) of
/// a point, with the weighted diagonals to earlier points it subtracts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetSlot {
    pub point: usize,
    pub multiplicity: u32,
    pub predecessors: Vec<(usize, u32)>,
}

impl JetSlot {
    pub fn linear_form(&self) -> LinearForm {
        LinearForm {
            constant: 1,
            k: vec![(self.point, self.multiplicity as i64)],
            d: self
                .predecessors
                .iter()
                .map(|&(p, w)| (p, self.point, -(w as i64)))
                .collect(),
        }
    }

    pub fn pointed(&self, d: usize) -> PointedPoly {
        let mut p = PointedPoly::one(d);
        p.add_term(
            PointedMonomial::k(d, self.point, 1),
            KappaPoly::constant(int(self.multiplicity as i64)),
        );
        for &(q, w) in &self.predecessors {
            p.add_term(
                PointedMonomial::diag(d, q, self.point, 1),
                KappaPoly::constant(int(-(w as i64))),
            );
        }
        p
    }
}

/// Slots of the jet bundle whose points carry the given multiplicities.
pub fn jet_slots(multiplicities: &[u32]) -> Vec<JetSlot> {
    let mut slots = Vec::new();
    for (b, &m) in multiplicities.iter().enumerate() {
        let predecessors: Vec<(usize, u32)> = multiplicities[..b]
            .iter()
            .enumerate()
            .map(|(q, &w)| (q + 1, w))
            .collect();
        for t in 1..=m {
            slots.push(JetSlot {
                point: b + 1,
                multiplicity: t,
                predecessors: predecessors.clone(),
            });
        }
    }
    slots
}

/// Graded pieces `c_0, c_1, …` of a jet bundle Chern class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernSeries {
    pub multiplicities: Vec<u32>,
    pub graded: Vec<PointedPoly>,
}

impl ChernSeries {
    pub fn points(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn rank(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    /// `c_k`, zero beyond the computed range.
    pub fn piece(&self, k: usize) -> PointedPoly {
        self.graded
            .get(k)
            .cloned()
            .unwrap_or_else(|| PointedPoly::zero(self.points()))
    }

    pub fn total(&self) -> PointedPoly {
        let mut out = PointedPoly::zero(self.points());
        for p in &self.graded {
            out = &out + p;
        }
        out
    }

    fn from_total(multiplicities: Vec<u32>, total: &PointedPoly, max_deg: u32) -> Self {
        let graded = (0..=max_deg).map(|k| total.homogeneous_part(k)).collect();
        ChernSeries {
            multiplicities,
            graded,
        }
    }
}

/// `c(F)` for the given multiplicities, expanded directly as a product.
pub fn chern_merged(multiplicities: &[u32], max_deg: u32) -> ChernSeries {
    let d = multiplicities.len();
    let mut total = PointedPoly::one(d);
    for slot in jet_slots(multiplicities) {
        total = (&total * &slot.pointed(d)).truncate_total_degree(max_deg);
    }
    ChernSeries::from_total(multiplicities.to_vec(), &total, max_deg)
}

/// `c(F_d)` up to degree `max_deg`.
pub fn chern_f(d: usize, max_deg: u32) -> ChernSeries {
    assert!(d >= 1, "F_d needs at least one point");
    chern_merged(&vec![1; d], max_deg)
}

/// `c_k(F_d) = c_k(F_{d-1}) + (K_d - Δ_d) c_{k-1}(F_{d-1})`.
pub fn chern_f_step(prev: &ChernSeries, d: usize) -> ChernSeries {
    assert!(prev.multiplicities.iter().all(|&m| m == 1) && prev.points() + 1 == d);
    let mut step = PointedPoly::k(d, d);
    for i in 1..d {
        step = &step - &PointedPoly::diag(d, i, d);
    }
    let lifted: Vec<PointedPoly> = prev.graded.iter().map(|p| p.lift(d)).collect();
    let graded = (0..lifted.len())
        .map(|k| {
            if k == 0 {
                lifted[0].clone()
            } else {
                &lifted[k] + &(&step * &lifted[k - 1])
            }
        })
        .collect();
    ChernSeries {
        multiplicities: vec![1; d],
        graded,
    }
}

/// Restricts the series to the diagonal `x_i = x_j` (`i < j`); slot `i`
/// absorbs the multiplicity of `j`.
pub fn merge_diagonal(series: &ChernSeries, i: usize, j: usize) -> ChernSeries {
    assert!(i < j && j <= series.points());
    let mut multiplicities = series.multiplicities.clone();
    let mj = multiplicities.remove(j - 1);
    multiplicities[i - 1] += mj;
    ChernSeries {
        multiplicities,
        graded: series.graded.iter().map(|p| p.restrict_to_diagonal(i, j)).collect(),
    }
}

/// Degree-`j` piece of `c(F)·c(E)^{-1}`.
pub fn chern_diff(series: &ChernSeries, g: u32, j: u32) -> PointedPoly {
    let inverse = chern_e_inverse(g);
    let mut out = PointedPoly::zero(series.points());
    for (i, s) in inverse.iter().enumerate().take(j as usize + 1) {
        out = &out + &series.piece(j as usize - i).mul_kappa(s);
    }
    out
}

/// `c(F)` in stratum form, all codimensions up to `limits.max_codim`.
pub fn chern_strata(multiplicities: &[u32], limits: &Limits, exec: Execution) -> Result<StratumPoly> {
    let d = multiplicities.len();
    let mut total = StratumPoly::one(d);
    for slot in jet_slots(multiplicities) {
        total = total.mul_linear(&slot.linear_form(), limits, exec)?;
    }
    Ok(total)
}

/// Degree-`j` piece of `c(F)·c(E)^{-1}` from a stratum-form `c(F)`.
pub fn chern_diff_strata(total: &StratumPoly, g: u32, j: u32) -> StratumPoly {
    let inverse = chern_e_inverse(g);
    let mut out = StratumPoly::zero(total.points());
    for (i, s) in inverse.iter().enumerate().take(j as usize + 1) {
        if s.is_zero() {
            continue;
        }
        out = out.add(&total.codim_part(j - i as u32).mul_kappa(s));
    }
    out
}

/// Arithmetic needed to evaluate a determinant of classes.
pub trait ClassRing {
    type Class: Clone;
    fn zero(&self) -> Self::Class;
    fn add(&self, a: &Self::Class, b: &Self::Class) -> Self::Class;
    fn sub(&self, a: &Self::Class, b: &Self::Class) -> Self::Class;
    fn mul(&self, a: &Self::Class, b: &Self::Class) -> Result<Self::Class>;
}

/// Kappa polynomials on `M_g`.
pub struct KappaRing;

impl ClassRing for KappaRing {
    type Class = KappaPoly;
    fn zero(&self) -> KappaPoly {
        KappaPoly::zero()
    }
    fn add(&self, a: &KappaPoly, b: &KappaPoly) -> KappaPoly {
        a + b
    }
    fn sub(&self, a: &KappaPoly, b: &KappaPoly) -> KappaPoly {
        a - b
    }
    fn mul(&self, a: &KappaPoly, b: &KappaPoly) -> Result<KappaPoly> {
        Ok(a * b)
    }
}

/// Pointed polynomials on `C_g^d`.
pub struct PointedRing(pub usize);

impl ClassRing for PointedRing {
    type Class = PointedPoly;
    fn zero(&self) -> PointedPoly {
        PointedPoly::zero(self.0)
    }
    fn add(&self, a: &PointedPoly, b: &PointedPoly) -> PointedPoly {
        a + b
    }
    fn sub(&self, a: &PointedPoly, b: &PointedPoly) -> PointedPoly {
        a - b
    }
    fn mul(&self, a: &PointedPoly, b: &PointedPoly) -> Result<PointedPoly> {
        Ok(a * b)
    }
}

/// Stratum-form classes on `C_g^d`.
pub struct StratumRing {
    pub d: usize,
    pub limits: Limits,
    pub exec: Execution,
}

impl ClassRing for StratumRing {
    type Class = StratumPoly;
    fn zero(&self) -> StratumPoly {
        StratumPoly::zero(self.d)
    }
    fn add(&self, a: &StratumPoly, b: &StratumPoly) -> StratumPoly {
        a.add(b)
    }
    fn sub(&self, a: &StratumPoly, b: &StratumPoly) -> StratumPoly {
        a.sub(b)
    }
    fn mul(&self, a: &StratumPoly, b: &StratumPoly) -> Result<StratumPoly> {
        a.mul(b, &self.limits, self.exec)
    }
}

/// `Δ_{p,q}(c) = det(c_{p+j-i})_{0≤i,j<q}` with `c_k = 0` outside
/// `0..c.len()`.
pub fn porteous_delta<R: ClassRing>(ring: &R, p: usize, q: usize, c: &[R::Class]) -> Result<R::Class> {
    assert!(p >= 1 && q >= 1);
    let entry = |i: usize, j: usize| -> Option<&R::Class> {
        let k = (p + j) as i64 - i as i64;
        if k < 0 {
            None
        } else {
            c.get(k as usize)
        }
    };
    // Laplace expansion row by row, memoized on the set of used columns;
    // `None` stands for zero.
    struct Expand<'a, R: ClassRing> {
        ring: &'a R,
        q: usize,
        entry: &'a dyn Fn(usize, usize) -> Option<&'a R::Class>,
        memo: Vec<Option<Option<R::Class>>>,
    }
    impl<R: ClassRing> Expand<'_, R> {
        fn go(&mut self, mask: usize) -> Result<Option<R::Class>> {
            if let Some(v) = &self.memo[mask] {
                return Ok(v.clone());
            }
            let row = mask.count_ones() as usize;
            let mut acc: Option<R::Class> = None;
            for col in 0..self.q {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let Some(a) = (self.entry)(row, col) else { continue };
                let term = if row + 1 == self.q {
                    a.clone()
                } else {
                    match self.go(mask | (1 << col))? {
                        Some(rest) => self.ring.mul(a, &rest)?,
                        None => continue,
                    }
                };
                let inversions = (col + 1..self.q).filter(|&c| mask & (1 << c) != 0).count();
                let ring = self.ring;
                acc = Some(match (acc, inversions % 2 == 0) {
                    (None, true) => term,
                    (None, false) => ring.sub(&ring.zero(), &term),
                    (Some(s), true) => ring.add(&s, &term),
                    (Some(s), false) => ring.sub(&s, &term),
                });
            }
            self.memo[mask] = Some(acc.clone());
            Ok(acc)
        }
    }
    let mut ex = Expand {
        ring,
        q,
        entry: &entry,
        memo: vec![None; 1 << q],
    };
    Ok(ex.go(0)?.unwrap_or_else(|| ring.zero()))
}
