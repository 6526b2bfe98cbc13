//! Witten–Kontsevich intersection numbers `⟨τ_{a_1} ⋯ τ_{a_n}⟩` and the
//! tau-number identities built on them.
//!
//! Values come from the Virasoro (DVV) recursion, always removing the
//! largest index, with base cases `⟨τ_0^3⟩ = 1` and `⟨τ_1⟩ = 1/24`. Removing
//! the largest index keeps the string and dilaton equations available as
//! independent checks.

use std::collections::BTreeMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::partition::partitions_bounded;
use crate::rational::{double_factorial_odd, factorial, int, parse_rational, rat, Rational};

/// Genus of a tau configuration, if the dimension constraint
/// `Σ a_i = 3g - 3 + n` has a solution `g ≥ 0`.
pub fn genus_of(indices: &[u32]) -> Option<u32> {
    let n = indices.len() as i64;
    let s: i64 = indices.iter().map(|&a| a as i64).sum();
    let t = s - n + 3;
    if t < 0 || t % 3 != 0 {
        None
    } else {
        Some((t / 3) as u32)
    }
}

/// `(2a+1)!!` as a rational, with `(-1)!! = 1`.
fn odd_double_factorial(a: i64) -> Rational {
    if a < 0 {
        Rational::one()
    } else {
        Rational::from_integer(double_factorial_odd(a as u64 + 1))
    }
}

/// Memo table shared by all tau computations.
///
/// Concurrent readers are fine; a missing entry may be computed by several
/// threads at once, and since values are canonical the later insert is
/// harmless.
#[derive(Debug, Default)]
pub struct TauTable {
    memo: RwLock<FxHashMap<Vec<u32>, Rational>>,
}

impl TauTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("tau memo poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot of the memo, sorted by key.
    pub fn entries(&self) -> BTreeMap<Vec<u32>, Rational> {
        self.memo
            .read()
            .expect("tau memo poisoned")
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    /// `⟨τ_{a_1} ⋯ τ_{a_n}⟩`.
    pub fn tau(&self, indices: &[u32]) -> Rational {
        let mut key = indices.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        self.tau_sorted(&key)
    }

    fn tau_sorted(&self, key: &[u32]) -> Rational {
        let Some(g) = genus_of(key) else {
            return Rational::zero();
        };
        let n = key.len() as i64;
        if 2 * g as i64 - 2 + n <= 0 {
            return Rational::zero();
        }
        if let Some(v) = self.memo.read().expect("tau memo poisoned").get(key) {
            return v.clone();
        }
        let value = self.recurse(key);
        self.memo
            .write()
            .expect("tau memo poisoned")
            .insert(key.to_vec(), value.clone());
        value
    }

    fn recurse(&self, key: &[u32]) -> Rational {
        if key == [0, 0, 0] {
            return Rational::one();
        }
        if key == [1] {
            return rat(1, 24);
        }
        let top = key[0];
        if top == 0 {
            return Rational::zero();
        }
        let k = top as i64 - 1;
        let rest = &key[1..];
        let mut acc = Rational::zero();
        // ⟨τ_{k+1} Π τ_{d_i}⟩ (2k+3)!! = Σ_j (2k+2d_j+1)!!/(2d_j-1)!! ⟨… τ_{d_j+k} …⟩
        for (j, &dj) in rest.iter().enumerate() {
            let new = dj as i64 + k;
            if new < 0 {
                continue;
            }
            let mut idx = rest.to_vec();
            idx[j] = new as u32;
            let coeff = odd_double_factorial(k + dj as i64) / odd_double_factorial(dj as i64 - 1);
            acc += coeff * self.tau(&idx);
        }
        // + ½ Σ_{r+s=k-1} (2r+1)!!(2s+1)!! [⟨τ_r τ_s Π⟩ + Σ_{I⊔J} ⟨τ_r τ_I⟩⟨τ_s τ_J⟩]
        let half = rat(1, 2);
        for r in 0..k {
            let s = k - 1 - r;
            let weight = &half * odd_double_factorial(r) * odd_double_factorial(s);
            let mut idx = rest.to_vec();
            idx.push(r as u32);
            idx.push(s as u32);
            let mut inner = self.tau(&idx);
            let m = rest.len();
            for mask in 0..(1u64 << m) {
                let mut left = vec![r as u32];
                let mut right = vec![s as u32];
                for (i, &a) in rest.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(a);
                    } else {
                        right.push(a);
                    }
                }
                let lv = self.tau(&left);
                if lv.is_zero() {
                    continue;
                }
                inner += lv * self.tau(&right);
            }
            acc += weight * inner;
        }
        acc / odd_double_factorial(k + 1)
    }

    /// JSON map `"a1,a2,…" → "p/q"` of all memoized values.
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, String> = self
            .entries()
            .into_iter()
            .map(|(k, v)| {
                let key = k.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                (key, v.to_string())
            })
            .collect();
        serde_json::to_value(map).expect("string map serializes")
    }

    /// Loads a map written by [`TauTable::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: BTreeMap<String, String> = serde_json::from_value(value.clone())?;
        let mut memo = FxHashMap::default();
        for (k, v) in raw {
            let mut key: Vec<u32> = if k.is_empty() {
                Vec::new()
            } else {
                k.split(',')
                    .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad tau key {k:?}"))))
                    .collect::<Result<_>>()?
            };
            key.sort_unstable_by(|a, b| b.cmp(a));
            memo.insert(key, parse_rational(&v)?);
        }
        Ok(TauTable {
            memo: RwLock::new(memo),
        })
    }
}

/// `⟨τ_0 Π τ_{a_i}⟩ = Σ_j ⟨… τ_{a_j - 1} …⟩`, for `idx` containing a 0.
pub fn string_check(table: &TauTable, idx: &[u32]) -> bool {
    let Some(pos) = idx.iter().position(|&a| a == 0) else {
        return false;
    };
    let mut rest = idx.to_vec();
    rest.remove(pos);
    if rest.is_empty() || (rest.len() <= 2 && rest.iter().all(|&a| a == 0)) {
        // ⟨τ_0^3⟩ is the base of the recursion; shorter ones are unstable
        return table.tau(idx) == if idx == [0, 0, 0] { Rational::one() } else { Rational::zero() };
    }
    let mut rhs = Rational::zero();
    for j in 0..rest.len() {
        if rest[j] == 0 {
            continue;
        }
        let mut t = rest.clone();
        t[j] -= 1;
        rhs += table.tau(&t);
    }
    table.tau(idx) == rhs
}

/// `⟨τ_1 Π τ_{a_i}⟩ = (2g - 2 + n) ⟨Π τ_{a_i}⟩`, for `idx` containing a 1.
pub fn dilaton_check(table: &TauTable, idx: &[u32]) -> bool {
    let Some(pos) = idx.iter().position(|&a| a == 1) else {
        return false;
    };
    let mut rest = idx.to_vec();
    rest.remove(pos);
    let lhs = table.tau(idx);
    if rest.is_empty() {
        return lhs == rat(1, 24);
    }
    match genus_of(idx) {
        None => lhs.is_zero(),
        Some(g) => {
            let factor = 2 * g as i64 - 2 + rest.len() as i64;
            lhs == int(factor) * table.tau(&rest)
        }
    }
}

/// Runs the string and dilaton checks on every memoized entry they apply
/// to; returns the failures.
pub fn check_memoized(table: &TauTable) -> Vec<Vec<u32>> {
    let keys: Vec<Vec<u32>> = table.entries().into_keys().collect();
    keys.into_iter()
        .filter(|k| {
            let string_ok = !k.contains(&0) || string_check(table, k);
            let dilaton_ok = !k.contains(&1) || dilaton_check(table, k);
            !(string_ok && dilaton_ok)
        })
        .collect()
}

/// Coefficients `[a][b]` of `w^a z^b` in
/// `exp((w³+z³)/24) Σ_n n!/(2n+1)! (wz(w+z)/2)^n`.
pub fn three_point_closed(w_order: usize, z_order: usize) -> Vec<Vec<Rational>> {
    type Grid = Vec<Vec<Rational>>;
    let zero_grid = || vec![vec![Rational::zero(); z_order + 1]; w_order + 1];
    let mul = |x: &Grid, y: &Grid| -> Grid {
        let mut out = zero_grid();
        for a in 0..=w_order {
            for b in 0..=z_order {
                if x[a][b].is_zero() {
                    continue;
                }
                for c in 0..=w_order - a {
                    for d in 0..=z_order - b {
                        if !y[c][d].is_zero() {
                            out[a + c][b + d] += &x[a][b] * &y[c][d];
                        }
                    }
                }
            }
        }
        out
    };
    // exp((w³+z³)/24) = exp(w³/24)·exp(z³/24)
    let mut e = zero_grid();
    for i in 0..=w_order / 3 {
        for j in 0..=z_order / 3 {
            let c = Rational::new(
                BigInt::one(),
                BigInt::from(24).pow(i as u32 + j as u32) * factorial(i as u64) * factorial(j as u64),
            );
            e[3 * i][3 * j] = c;
        }
    }
    // u = wz(w+z)/2
    let mut u = zero_grid();
    if w_order >= 2 && z_order >= 1 {
        u[2][1] = rat(1, 2);
    }
    if w_order >= 1 && z_order >= 2 {
        u[1][2] = rat(1, 2);
    }
    let mut sum = zero_grid();
    let mut power = zero_grid();
    power[0][0] = Rational::one();
    let max_n = (w_order + z_order) / 3;
    for n in 0..=max_n {
        let c = Rational::new(factorial(n as u64), factorial(2 * n as u64 + 1));
        for a in 0..=w_order {
            for b in 0..=z_order {
                if !power[a][b].is_zero() {
                    sum[a][b] += &c * &power[a][b];
                }
            }
        }
        power = mul(&power, &u);
    }
    mul(&e, &sum)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    #[serde(with = "crate::rational::serde_string")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::serde_string")]
    pub rhs: Rational,
    pub ok: bool,
}

impl IdentityCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        let ok = lhs == rhs;
        IdentityCheck { lhs, rhs, ok }
    }
}

fn sign(j: i64) -> Rational {
    if j % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Both sides of the tau-number form of `κ_{g-2}λ_{g-1}λ_g = |B_{2g}|(g-1)!/(2^g(2g)!)`.
pub fn verify_theorem2_identity(table: &TauTable, g: u32) -> IdentityCheck {
    assert!(g >= 2);
    let gi = g as i64;
    let lhs = Rational::new(
        factorial(g as u64),
        BigInt::from(2).pow(g - 1) * factorial(2 * g as u64),
    );
    let t = |v: &[i64]| -> Rational {
        if v.iter().any(|&a| a < 0) {
            Rational::zero()
        } else {
            table.tau(&v.iter().map(|&a| a as u32).collect::<Vec<_>>())
        }
    };
    let mut rhs = t(&[gi - 1, 2 * gi]) - t(&[3 * gi - 2]);
    let half = rat(1, 2);
    for j in 0..=2 * gi - 2 {
        rhs += &half * sign(j) * t(&[2 * gi - 2 - j, j, gi - 1]);
    }
    for h in 1..gi {
        let a = sign(gi - h) * t(&[3 * h - gi, gi - 1]) * t(&[3 * (gi - h) - 2]);
        let b = sign(h) * t(&[3 * h - 2]) * t(&[3 * (gi - h) - gi, gi - 1]);
        rhs += &half * (a + b);
    }
    IdentityCheck::new(lhs, rhs)
}

/// Both sides of the conjectural `k`-point identity for `e_1, …, e_k` with
/// `Σ (e_j - 1) = g - 2`. The splitting sum runs over ordered pairs
/// `(I, J)` with `I ⊔ J = {1, …, k}`, empty parts included.
pub fn verify_conjectural_identity(table: &TauTable, g: u32, e: &[u32]) -> Result<IdentityCheck> {
    if g < 2 || e.is_empty() || e.contains(&0) {
        return Err(Error::InvalidArgument("need g ≥ 2 and a nonempty list of positive e_j".into()));
    }
    let excess: i64 = e.iter().map(|&x| x as i64 - 1).sum();
    if excess != g as i64 - 2 {
        return Err(Error::InvalidArgument(format!(
            "Σ(e_j - 1) = {excess} but g - 2 = {}",
            g as i64 - 2
        )));
    }
    let k = e.len() as u64;
    let g64 = g as u64;
    let mut den = BigInt::from(2).pow(2 * g - 1) * factorial(2 * g64 - 1);
    for &x in e {
        den *= double_factorial_odd(x as u64);
    }
    let lhs = Rational::new(factorial(2 * g64 - 3 + k), den);

    let with = |extra: &[u32]| -> Rational {
        let mut v = e.to_vec();
        v.extend_from_slice(extra);
        table.tau(&v)
    };
    let mut rhs = with(&[2 * g]);
    for j in 0..e.len() {
        let mut v = e.to_vec();
        v[j] += 2 * g - 1;
        rhs -= table.tau(&v);
    }
    let half = rat(1, 2);
    for j in 0..=2 * g - 2 {
        rhs += &half * sign(j as i64) * with(&[2 * g - 2 - j, j]);
    }
    for mask in 0..(1u64 << e.len()) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, &x) in e.iter().enumerate() {
            if mask & (1 << i) != 0 {
                left.push(x);
            } else {
                right.push(x);
            }
        }
        for j in 0..=2 * g - 2 {
            let mut l = left.clone();
            l.push(j);
            let lv = table.tau(&l);
            if lv.is_zero() {
                continue;
            }
            let mut r = right.clone();
            r.push(2 * g - 2 - j);
            rhs += &half * sign(j as i64) * lv * table.tau(&r);
        }
    }
    Ok(IdentityCheck::new(lhs, rhs))
}

/// All lists `e` with every `e_j ≥ 2` and `Σ (e_j - 1) = g - 2`, plus the
/// one-part list `(g - 1)` (which is `(1)` in genus 2).
pub fn conjectural_e_lists(g: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = if g >= 3 {
        partitions_bounded(g - 2, 1, g - 2)
            .into_iter()
            .map(|p| p.parts().iter().map(|&x| x + 1).collect())
            .collect()
    } else {
        Vec::new()
    };
    if g == 2 {
        out.push(vec![1]);
    }
    out
}

/// Runs [`verify_conjectural_identity`] over many lists in parallel.
pub fn verify_conjectural_batch(table: &TauTable, cases: &[(u32, Vec<u32>)], exec: Execution) -> Vec<Result<IdentityCheck>> {
    par::map(exec, cases, |(g, e)| verify_conjectural_identity(table, *g, e))
}

/// `⟨τ_0τ_0τ_{3g}⟩ = 24^{-g}/g!`.
pub fn tau_003g_expected(g: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(24).pow(g) * factorial(g as u64))
}
