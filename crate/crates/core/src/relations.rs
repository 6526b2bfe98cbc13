//! Relations among the kappa classes.
//!
//! The main generator pushes `Π_α · c_j(F_{2g-1} - E)` down to `M_g`, where
//! `Π_α` is a product of diagonals with one star-shaped block per part of
//! `α`. Restricting `c(F)` to the small diagonal `Δ_α` first turns the
//! computation into one on `C_g^a` (`a` = number of blocks) with a jet
//! bundle of multiplicities `α`; the full expansion followed by the
//! substitution rules is kept as an independent oracle.
//!
//! The same machinery evaluates Porteous classes of Brill–Noether loci and
//! their push-forwards after cutting with tautological divisors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cache::RelationCache;
use crate::error::{Error, Result};
use crate::jet::{chern_diff, chern_diff_strata, chern_f, chern_strata, jet_slots, porteous_delta, StratumRing};
use crate::kappa::KappaPoly;
use crate::par::{self, Execution};
use crate::partition::{partitions_bounded, Partition};
use crate::pointed::{self, PointedMonomial, PointedPoly};
use crate::rational::Rational;
use crate::series::chern_e_inverse;
use crate::socle::{
    hyperelliptic_formula, lambda_cubed_formula, lambda_cubed_from_table, lambda_gm2_formula, lambda_gm2_from_table,
    solve_proportionalities,
};
use crate::stratum::{Limits, StratumPoly};

/// Resource settings shared by the engines.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub exec: Execution,
    /// Cap on live stratum terms; `None` means unbounded.
    pub max_terms: Option<usize>,
}

impl EngineConfig {
    pub fn sequential() -> Self {
        EngineConfig {
            exec: Execution::Sequential,
            max_terms: None,
        }
    }
}

/// A monomial `Π_α · Π K_b^{k_b}` paired with a Chern degree `j`.
///
/// Blocks follow the (descending) order of `alpha`; block `b` occupies a
/// consecutive range of points and `k_powers[b]` is the power of `K` on its
/// first point. An empty `k_powers` means no `K` factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiagonalPlan {
    pub alpha: Partition,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub k_powers: Vec<u32>,
    pub j: u32,
}

impl DiagonalPlan {
    pub fn new(g: u32, alpha: Partition, j: u32) -> Result<Self> {
        Self::with_k_powers(g, alpha, Vec::new(), j)
    }

    pub fn with_k_powers(g: u32, alpha: Partition, mut k_powers: Vec<u32>, j: u32) -> Result<Self> {
        if alpha.degree() != 2 * g - 1 {
            return Err(Error::InvalidArgument(format!("block sizes {alpha} do not sum to {}", 2 * g - 1)));
        }
        if !k_powers.is_empty() && k_powers.len() != alpha.len() {
            return Err(Error::InvalidArgument(format!(
                "{} K powers given for {} blocks",
                k_powers.len(),
                alpha.len()
            )));
        }
        if k_powers.iter().all(|&k| k == 0) {
            k_powers.clear();
        }
        if j < g {
            return Err(Error::InvalidArgument(format!("Chern degree {j} is below the genus {g}")));
        }
        let plan = DiagonalPlan { alpha, k_powers, j };
        if plan.j + plan.k_total() <= plan.blocks() as u32 {
            return Err(Error::InvalidArgument(format!("plan {plan} has codimension below 1")));
        }
        Ok(plan)
    }

    pub fn blocks(&self) -> usize {
        self.alpha.len()
    }

    pub fn k_total(&self) -> u32 {
        self.k_powers.iter().sum()
    }

    /// Degree of the resulting relation.
    pub fn codim(&self) -> u32 {
        self.j + self.k_total() - self.blocks() as u32
    }

    fn k_power(&self, b: usize) -> u32 {
        self.k_powers.get(b).copied().unwrap_or(0)
    }

    /// The monomial `M` on `C_g^{2g-1}`.
    pub fn monomial(&self) -> PointedMonomial {
        let d = self.alpha.degree() as usize;
        let mut m = diagonal_product(&self.alpha, d);
        let mut start = 1;
        for (b, &part) in self.alpha.parts().iter().enumerate() {
            m.mul_k(start, self.k_power(b));
            start += part as usize;
        }
        m
    }
}

impl fmt::Display for DiagonalPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha=({})", self.alpha)?;
        if !self.k_powers.is_empty() {
            let k: Vec<String> = self.k_powers.iter().map(u32::to_string).collect();
            write!(f, " K=({})", k.join(","))?;
        }
        write!(f, " j={}", self.j)
    }
}

/// A computed relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub g: u32,
    pub plan: DiagonalPlan,
    pub relation: KappaPoly,
}

impl RelationRecord {
    pub fn codim(&self) -> u32 {
        self.plan.codim()
    }
}

/// `Π_α` on `d` points: `D_{s,s+1} ⋯ D_{s,s+m-1}` for each block of size `m`
/// starting at `s`, blocks laid out consecutively.
pub fn diagonal_product(alpha: &Partition, d: usize) -> PointedMonomial {
    assert!(alpha.degree() as usize <= d, "blocks need {} points", alpha.degree());
    let mut m = PointedMonomial::one(d);
    let mut start = 1;
    for &part in alpha.parts() {
        for t in 1..part as usize {
            m.mul_d(start, start + t, 1);
        }
        start += part as usize;
    }
    m
}

/// Plans in codimension `c` whose blocks all have size at least `min_part`,
/// ordered by Chern degree and then by descending block sizes.
pub fn enumerate_plans_with(g: u32, c: u32, min_part: u32) -> Vec<DiagonalPlan> {
    let mut plans: Vec<DiagonalPlan> = partitions_bounded(2 * g - 1, min_part, 2 * g - 1)
        .into_iter()
        .filter_map(|alpha| {
            let j = c + alpha.len() as u32;
            (j >= g).then_some(DiagonalPlan {
                alpha,
                k_powers: Vec::new(),
                j,
            })
        })
        .collect();
    plans.sort_by_key(|p| p.j);
    plans
}

/// The default plans: diagonal products with every point covered by a
/// diagonal (all blocks of size at least two).
pub fn enumerate_plans(g: u32, c: u32) -> Vec<DiagonalPlan> {
    enumerate_plans_with(g, c, 2)
}

/// Plans with at least one `K` factor, up to permutations of equal blocks.
pub fn enumerate_k_plans(g: u32, c: u32) -> Vec<DiagonalPlan> {
    let mut out = Vec::new();
    for alpha in partitions_bounded(2 * g - 1, 2, 2 * g - 1) {
        let a = alpha.len() as u32;
        // j = c + a - t >= g
        let Some(max_t) = (c + a).checked_sub(g) else { continue };
        for t in 1..=max_t {
            for k in compositions(t, alpha.parts()) {
                out.push(DiagonalPlan {
                    alpha: alpha.clone(),
                    k_powers: k,
                    j: c + a - t,
                });
            }
        }
    }
    out.sort_by_key(|p| p.j);
    out
}

/// Weak compositions of `t` into `parts.len()` entries, non-increasing
/// across runs of equal parts.
fn compositions(t: u32, parts: &[u32]) -> Vec<Vec<u32>> {
    fn rec(t: u32, parts: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let b = cur.len();
        if b == parts.len() {
            if t == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if b > 0 && parts[b] == parts[b - 1] { cur[b - 1].min(t) } else { t };
        for k in (0..=cap).rev() {
            cur.push(k);
            rec(t - k, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, parts, &mut Vec::new(), &mut out);
    out
}

/// `Σ_i [c(E)^{-1}]_i · P_{c-i}`, where `P_k` is the degree-`k` part of a
/// mixed-degree push-forward of `c(F)`.
pub fn relation_from_pushforwards(g: u32, pushed: &KappaPoly, c: u32) -> KappaPoly {
    let inverse = chern_e_inverse(g);
    let mut out = KappaPoly::zero();
    for (i, s) in inverse.iter().enumerate().take(c as usize + 1) {
        if s.is_zero() {
            continue;
        }
        out = &out + &(s * &pushed.homogeneous_part(c - i as u32));
    }
    out
}

/// `π_*(Π K_b^{k_b} · c(F_mults))` on `C_g^a`, all push-forward degrees up
/// to `max_c` (mixed-degree result).
pub fn diagonal_pushforwards(
    g: u32,
    multiplicities: &[u32],
    k_powers: &[u32],
    max_c: u32,
    cfg: &EngineConfig,
) -> Result<KappaPoly> {
    let a = multiplicities.len();
    let limits = Limits {
        max_codim: max_c + a as u32,
        max_push_degree: Some(max_c),
        max_terms: cfg.max_terms,
    };
    let mut start = PointedMonomial::one(a);
    for (b, &k) in k_powers.iter().enumerate() {
        start.mul_k(b + 1, k);
    }
    let mut total = StratumPoly::one(a).mul_monomial(&start, &limits);
    for slot in jet_slots(multiplicities) {
        total = total.mul_linear(&slot.linear_form(), &limits, cfg.exec)?;
    }
    Ok(total.pushforward_all(g))
}

/// The relation `π_*(M · c_j(F_{2g-1} - E))` of a plan, via the merged
/// jet bundle on `C_g^a`.
pub fn faber_relation(g: u32, plan: &DiagonalPlan, cfg: &EngineConfig) -> Result<KappaPoly> {
    let k_powers: Vec<u32> = (0..plan.blocks()).map(|b| plan.k_power(b)).collect();
    let pushed = diagonal_pushforwards(g, plan.alpha.parts(), &k_powers, plan.codim(), cfg)?;
    Ok(relation_from_pushforwards(g, &pushed, plan.codim()))
}

/// Oracle: expands `c_j(F_{2g-1} - E)` completely on `C_g^{2g-1}` and pushes
/// `M · c_j` down with the substitution rules alone.
pub fn faber_relation_formularium(g: u32, plan: &DiagonalPlan) -> Result<KappaPoly> {
    relation_formularium(g, 2 * g as usize - 1, &plan.monomial(), plan.j)
}

/// `π_*(M · c_j(F_d - E))` by full expansion and the substitution rules.
pub fn relation_formularium(g: u32, d: usize, m: &PointedMonomial, j: u32) -> Result<KappaPoly> {
    let series = chern_f(d, j);
    let cj = chern_diff(&series, g, j);
    pointed::pushforward_all(&cj.mul_monomial(m), g)
}

/// `π_*(M · c_j(F_d - E))` for an arbitrary monomial, in stratum form on
/// `C_g^d` without merging.
pub fn relation_strata(g: u32, d: usize, m: &PointedMonomial, j: u32, cfg: &EngineConfig) -> Result<KappaPoly> {
    let limits = Limits {
        max_codim: j + m.degree(),
        max_push_degree: None,
        max_terms: cfg.max_terms,
    };
    let total = StratumPoly::one(d).mul_monomial(m, &limits);
    let mut series = total;
    for slot in jet_slots(&vec![1; d]) {
        series = series.mul_linear(&slot.linear_form(), &limits, cfg.exec)?;
    }
    // c_j(F - E) · M has stratum codimension j + deg M before kappa factors
    let mut out = StratumPoly::zero(d);
    let inverse = chern_e_inverse(g);
    for (i, s) in inverse.iter().enumerate().take(j as usize + 1) {
        if !s.is_zero() {
            out = out.add(&series.codim_part(j - i as u32 + m.degree()).mul_kappa(s));
        }
    }
    Ok(out.pushforward_all(g))
}

fn plan_groups(plans: &[DiagonalPlan]) -> Vec<(Partition, Vec<u32>, Vec<DiagonalPlan>)> {
    let mut groups: Vec<(Partition, Vec<u32>, Vec<DiagonalPlan>)> = Vec::new();
    for p in plans {
        match groups.iter_mut().find(|(a, k, _)| *a == p.alpha && *k == p.k_powers) {
            Some(group) => group.2.push(p.clone()),
            None => groups.push((p.alpha.clone(), p.k_powers.clone(), vec![p.clone()])),
        }
    }
    groups
}

/// Computes (or loads) the relations of all plans. Plans sharing a monomial
/// share one push-forward; groups run in parallel. The result follows the
/// order of `plans`.
pub fn generate_relations(
    g: u32,
    plans: &[DiagonalPlan],
    cfg: &EngineConfig,
    cache: Option<&RelationCache>,
) -> Result<Vec<RelationRecord>> {
    let groups = plan_groups(plans);
    let results = par::map(cfg.exec, &groups, |(alpha, k_powers, members)| -> Result<Vec<RelationRecord>> {
        let mut done = Vec::new();
        let mut missing = Vec::new();
        for plan in members {
            match cache.map(|c| c.load(g, plan)).transpose()?.flatten() {
                Some(rec) => done.push(rec),
                None => missing.push(plan.clone()),
            }
        }
        if missing.is_empty() {
            return Ok(done);
        }
        let max_c = missing.iter().map(DiagonalPlan::codim).max().unwrap_or(0);
        let k: Vec<u32> = (0..alpha.len()).map(|b| k_powers.get(b).copied().unwrap_or(0)).collect();
        let pushed = match diagonal_pushforwards(g, alpha.parts(), &k, max_c, cfg) {
            Ok(p) => p,
            Err(Error::ResourceLimit { what, observed, limit }) => {
                if let Some(cache) = cache {
                    for plan in &missing {
                        cache.store_incomplete(g, plan, &format!("{what}: {observed} > {limit}"))?;
                    }
                }
                return Err(Error::ResourceLimit {
                    what: format!("{what} in plan {}", missing[0]),
                    observed,
                    limit,
                });
            }
            Err(e) => return Err(e),
        };
        for plan in missing {
            let rec = RelationRecord {
                g,
                relation: relation_from_pushforwards(g, &pushed, plan.codim()),
                plan,
            };
            if let Some(cache) = cache {
                cache.store(&rec)?;
            }
            done.push(rec);
        }
        Ok(done)
    });
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    let position = |p: &DiagonalPlan| plans.iter().position(|q| q == p).unwrap_or(usize::MAX);
    all.sort_by_key(|r| position(&r.plan));
    Ok(all)
}

/// Default relations in every codimension `1..=max_c`.
pub fn relations_up_to(g: u32, max_c: u32, cfg: &EngineConfig, cache: Option<&RelationCache>) -> Result<Vec<RelationRecord>> {
    let plans: Vec<DiagonalPlan> = (1..=max_c).flat_map(|c| enumerate_plans(g, c)).collect();
    generate_relations(g, &plans, cfg, cache)
}

/// A tautological divisor on `C_g^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Divisor {
    K(usize),
    D(usize, usize),
}

impl Divisor {
    pub fn monomial(&self, d: usize) -> PointedMonomial {
        match *self {
            Divisor::K(i) => PointedMonomial::k(d, i, 1),
            Divisor::D(i, j) => PointedMonomial::diag(d, i, j, 1),
        }
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Divisor::K(i) => write!(f, "K{i}"),
            Divisor::D(i, j) if i < 10 && j < 10 => write!(f, "D{i}{j}"),
            Divisor::D(i, j) => write!(f, "D{{{i},{j}}}"),
        }
    }
}

impl FromStr for Divisor {
    type Err = Error;

    /// `K1`, `D12` or `D{3,11}`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a divisor: {s:?}"));
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('K') {
            return rest.parse().map(Divisor::K).map_err(|_| bad());
        }
        let rest = s.strip_prefix('D').ok_or_else(bad)?;
        let (i, j) = if let Some(inner) = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        } else if rest.len() == 2 && rest.bytes().all(|b| b.is_ascii_digit()) {
            ((rest.as_bytes()[0] - b'0') as usize, (rest.as_bytes()[1] - b'0') as usize)
        } else {
            return Err(bad());
        };
        if i == 0 || j == 0 || i == j {
            return Err(bad());
        }
        Ok(Divisor::D(i.min(j), i.max(j)))
    }
}

/// Porteous class `Δ_{r, g-d+r}(c(F_d - E))` of the locus of divisors of
/// degree `d` moving in a `g^r_d`, in stratum form on `C_g^d`.
pub fn bn_locus_strata(g: u32, d: usize, r: u32, cfg: &EngineConfig) -> Result<StratumPoly> {
    let q = (g + r)
        .checked_sub(d as u32)
        .filter(|&q| q >= 1 && r >= 1)
        .ok_or_else(|| Error::InvalidArgument(format!("no Porteous class for (g, d, r) = ({g}, {d}, {r})")))?;
    let (p, q) = (r as usize, q as usize);
    let top = (p + q - 1) as u32;
    let total = chern_strata(&vec![1; d], &Limits::codim(top), cfg.exec)?;
    let pieces: Vec<StratumPoly> = (0..=top).map(|k| chern_diff_strata(&total, g, k)).collect();
    let ring = StratumRing {
        d,
        limits: Limits {
            max_codim: (p * q) as u32,
            max_push_degree: None,
            max_terms: cfg.max_terms,
        },
        exec: cfg.exec,
    };
    porteous_delta(&ring, p, q, &pieces)
}

pub fn bn_locus_class(g: u32, d: usize, r: u32, cfg: &EngineConfig) -> Result<PointedPoly> {
    Ok(bn_locus_strata(g, d, r, cfg)?.to_pointed())
}

/// `π_*(cls · Π divisors)` for a class in stratum form.
pub fn cut_and_push_strata(g: u32, cls: &StratumPoly, divisors: &[Divisor]) -> KappaPoly {
    let d = cls.points();
    let mut m = PointedMonomial::one(d);
    for div in divisors {
        m = m.mul(&div.monomial(d));
    }
    let limits = Limits::codim(u32::MAX);
    cls.mul_monomial(&m, &limits).pushforward_all(g)
}

pub fn cut_and_push(g: u32, cls: &PointedPoly, divisors: &[Divisor]) -> KappaPoly {
    cut_and_push_strata(g, &StratumPoly::from_pointed(cls), divisors)
}

/// A cut of a Brill–Noether class together with its push-forward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutResult {
    pub divisors: Vec<Divisor>,
    pub multiplicity: u32,
    pub pushforward: KappaPoly,
    /// `pushforward / multiplicity`.
    pub class: KappaPoly,
}

fn cut_results(g: u32, cls: &StratumPoly, cuts: &[(Vec<Divisor>, u32)]) -> Vec<CutResult> {
    cuts.iter()
        .map(|(divisors, mult)| {
            let pushforward = cut_and_push_strata(g, cls, divisors);
            let class = pushforward.scale(&Rational::new(1.into(), (*mult).into()));
            CutResult {
                divisors: divisors.clone(),
                multiplicity: *mult,
                pushforward,
                class,
            }
        })
        .collect()
}

/// The five pairs of tautological divisors on `C_6^5` and the multiplicity
/// with which each covers the plane quintic locus.
pub fn plane_quintic_cuts() -> Vec<(Vec<Divisor>, u32)> {
    use Divisor::{D, K};
    vec![
        (vec![D(1, 2), D(3, 4)], 240),
        (vec![D(1, 2), D(1, 3)], 90),
        (vec![K(1), D(2, 3)], 360),
        (vec![K(1), D(1, 2)], 60),
        (vec![K(1), K(2)], 600),
    ]
}

/// Classes of the plane quintics in `R^3(M_6)` from each of the five cuts of
/// the `g^2_5` locus.
pub fn plane_quintic_classes(cfg: &EngineConfig) -> Result<Vec<CutResult>> {
    let cls = bn_locus_strata(6, 5, 2, cfg)?;
    Ok(cut_results(6, &cls, &plane_quintic_cuts()))
}

/// The cuts of the `g^1_2` locus on `C_g^2` and their multiplicities over
/// the hyperelliptic locus: `K_1` (`2g - 2`) and `D_12` (`2g + 2`).
pub fn hyperelliptic_cuts(g: u32) -> Vec<(Vec<Divisor>, u32)> {
    vec![(vec![Divisor::K(1)], 2 * g - 2), (vec![Divisor::D(1, 2)], 2 * g + 2)]
}

/// The hyperelliptic class from each cut of the `g^1_2` locus. The
/// push-forward divided by the multiplicity is the class `[H_g]_Q` of the
/// locus as a substack (every hyperelliptic curve has an involution).
pub fn hyperelliptic_classes(g: u32, cfg: &EngineConfig) -> Result<Vec<CutResult>> {
    if g < 3 {
        return Err(Error::InvalidArgument(format!("hyperelliptic locus is proper only for g >= 3, got {g}")));
    }
    let cls = bn_locus_strata(g, 2, 1, cfg)?;
    Ok(cut_results(g, &cls, &hyperelliptic_cuts(g)))
}

/// Relations in codimension `len(divisors)` from the dual hyperelliptic
/// system `g^{g-2}_{2g-4}`, whose fibres over the hyperelliptic locus have
/// dimension `g - 2`; valid for fewer than `g - 2` divisors.
pub fn hyperelliptic_dual_relation(g: u32, divisors: &[Divisor], cfg: &EngineConfig) -> Result<KappaPoly> {
    if g < 4 || divisors.len() >= (g - 2) as usize {
        return Err(Error::InvalidArgument(format!(
            "need g >= 4 and fewer than {} divisors",
            g.saturating_sub(2)
        )));
    }
    let cls = bn_locus_strata(g, 2 * g as usize - 4, g - 2, cfg)?;
    Ok(cut_and_push_strata(g, &cls, divisors))
}

/// A printed closed formula against an independently computed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCheck {
    pub name: String,
    #[serde(with = "crate::rational::serde_string")]
    pub printed: Rational,
    #[serde(with = "crate::rational::serde_string")]
    pub computed: Rational,
    pub ok: bool,
}

impl FormulaCheck {
    fn new(name: &str, printed: Rational, computed: Rational) -> Self {
        FormulaCheck {
            name: name.to_string(),
            ok: printed == computed,
            printed,
            computed,
        }
    }
}

/// Checks the closed top-degree formulas in genus `g`:
///
/// - `hyperelliptic`: `[H_g]_Q / κ_{g-2}` from each cut of the `g^1_2`
///   locus, evaluated with the socle table;
/// - `lambda_gm2`: `λ_{g-2} / κ_{g-2}` from the lambda series and the socle
///   table;
/// - `lambda_cubed`: `λ_{g-1}^3` from the `λ_{g-2}` value and
///   `κ_{g-2} λ_{g-1} λ_g`.
///
/// Genus 2 has no hyperelliptic check (the locus is everything).
pub fn closed_formula_checks(g: u32, cfg: &EngineConfig) -> Result<Vec<FormulaCheck>> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!("closed formulas need g >= 2, got {g}")));
    }
    let table = if g >= 3 { Some(solve_proportionalities(g, cfg.exec)?) } else { None };
    let mut out = Vec::new();
    if let Some(table) = &table {
        for cut in hyperelliptic_classes(g, cfg)? {
            let label: Vec<String> = cut.divisors.iter().map(Divisor::to_string).collect();
            out.push(FormulaCheck::new(
                &format!("hyperelliptic via {}", label.join("*")),
                hyperelliptic_formula(g),
                table.evaluate(&cut.class),
            ));
        }
    }
    out.push(FormulaCheck::new("lambda_gm2", lambda_gm2_formula(g), lambda_gm2_from_table(g, table.as_ref())));
    out.push(FormulaCheck::new(
        "lambda_cubed",
        lambda_cubed_formula(g),
        lambda_cubed_from_table(g, table.as_ref()),
    ));
    Ok(out)
}

/// `c_k(F_d - E)` as a pointed polynomial.
pub fn chern_diff_pointed(g: u32, d: usize, k: u32) -> PointedPoly {
    chern_diff(&chern_f(d, k), g, k)
}
