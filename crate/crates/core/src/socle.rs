//! Top-degree proportionalities: both bracket recipes, the solved socle
//! table, the unique relation in genus `3k-1`, and the closed formulas for
//! the hyperelliptic locus, `λ_{g-2}` and `λ_{g-1}^3`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kappa::KappaPoly;
use crate::linalg;
use crate::par::{self, Execution};
use crate::partition::{partitions, Partition};
use crate::rational::{big, binomial, double_factorial_odd, factorial, int, Rational};
use crate::series::{bernoulli, lambda_series, PowerSeries};

/// `⟨τ_{d_1+1} ⋯ τ_{d_k+1}⟩` in genus `g`, with `Σ d_j = g - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketArg {
    pub g: u32,
    pub parts: Partition,
}

impl BracketArg {
    pub fn new(g: u32, parts: Partition) -> Result<Self> {
        if g < 2 || parts.degree() != g - 2 {
            return Err(Error::InvalidArgument(format!(
                "bracket parts {parts} must sum to g-2 = {}",
                g as i64 - 2
            )));
        }
        Ok(BracketArg { g, parts })
    }
}

/// `(2g-3+k)!(2g-1)!! / ((2g-1)! Π (2d_j+1)!!)`.
pub fn bracket_value(arg: &BracketArg) -> Rational {
    let g = arg.g as u64;
    let k = arg.parts.len() as u64;
    let num = factorial(2 * g - 3 + k) * double_factorial_odd(g);
    let mut den = factorial(2 * g - 1);
    for &d in arg.parts.parts() {
        den *= double_factorial_odd(d as u64 + 1);
    }
    Rational::new(num, den)
}

/// `Σ_{σ∈S_k} κ_σ`, choosing the direct or the cycle-type route by `k`.
pub fn bracket_expansion(arg: &BracketArg) -> KappaPoly {
    if arg.parts.len() <= 10 {
        bracket_expansion_direct(arg.parts.parts())
    } else {
        bracket_expansion_by_cycle_type(arg.parts.parts())
    }
}

/// Enumerates all `k!` permutations (Heap's algorithm) and reads off the
/// cycle sums.
pub fn bracket_expansion_direct(d: &[u32]) -> KappaPoly {
    let k = d.len();
    let mut counts: HashMap<Partition, u64> = HashMap::new();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut record = |perm: &[usize]| {
        let mut seen = vec![false; k];
        let mut sums = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut s = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                s += d[i];
                i = perm[i];
            }
            sums.push(s);
        }
        *counts.entry(Partition::new(sums)).or_insert(0) += 1;
    };
    record(&perm);
    let mut c = vec![0usize; k];
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            record(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    KappaPoly::from_terms(counts.into_iter().map(|(p, n)| (p, int(n as i64))))
}

/// Groups permutations by the cycle through a designated entry: a cycle
/// through it and a chosen sub-multiset `T` of the others occurs in `|T|!`
/// ways, times the binomial count of picking `T` from the multiset.
pub fn bracket_expansion_by_cycle_type(d: &[u32]) -> KappaPoly {
    type Memo = HashMap<Vec<(u32, usize)>, Vec<(Partition, BigInt)>>;
    fn go(rest: &[(u32, usize)], memo: &mut Memo) -> Vec<(Partition, BigInt)> {
        let Some(first) = rest.iter().position(|&(_, n)| n > 0) else {
            return vec![(Partition::empty(), BigInt::one())];
        };
        if let Some(v) = memo.get(rest) {
            return v.clone();
        }
        let mut remaining = rest.to_vec();
        let head = remaining[first].0;
        remaining[first].1 -= 1;
        let mut acc: HashMap<Partition, BigInt> = HashMap::new();
        // choose t_x ≤ n_x copies of each value to join the head's cycle
        let mut choice = vec![0usize; remaining.len()];
        loop {
            let size: usize = choice.iter().sum();
            let mut weight = factorial(size as u64);
            let mut cycle_sum = head;
            let mut left = remaining.clone();
            for (x, &t) in choice.iter().enumerate() {
                weight *= binomial(remaining[x].1 as u64, t as u64);
                cycle_sum += remaining[x].0 * t as u32;
                left[x].1 -= t;
            }
            for (p, n) in go(&left, memo) {
                *acc.entry(p.with_part(cycle_sum)).or_insert_with(BigInt::zero) += &weight * n;
            }
            // next choice vector
            let mut x = 0;
            loop {
                if x == choice.len() {
                    let out: Vec<_> = acc.into_iter().collect();
                    memo.insert(rest.to_vec(), out.clone());
                    return out;
                }
                if choice[x] < remaining[x].1 {
                    choice[x] += 1;
                    break;
                }
                choice[x] = 0;
                x += 1;
            }
        }
    }
    let multiset = Partition::new(d.to_vec()).multiplicities();
    let mut memo = HashMap::new();
    KappaPoly::from_terms(go(&multiset, &mut memo).into_iter().map(|(p, n)| (p, big(n))))
}

/// `κ_I = c_I κ_{g-2}` for every partition `I` of `g - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleTable {
    pub g: u32,
    #[serde(with = "coefficient_map")]
    pub coefficients: BTreeMap<Partition, Rational>,
}

mod coefficient_map {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::partition::Partition;
    use crate::rational::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(m: &BTreeMap<Partition, Rational>, s: S) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<String, String> = m.iter().map(|(p, c)| (p.to_string(), c.to_string())).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Partition, Rational>, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let p: Partition = k.parse().map_err(D::Error::custom)?;
                let c = parse_rational(&v).map_err(D::Error::custom)?;
                Ok((p, c))
            })
            .collect()
    }
}

impl SocleTable {
    pub fn value(&self, p: &Partition) -> Rational {
        self.coefficients
            .get(p)
            .cloned()
            .unwrap_or_else(|| panic!("{p} is not a partition of g-2 = {}", self.g - 2))
    }

    /// The socle functional: the multiple of `κ_{g-2}` represented by the
    /// degree `g - 2` part of `p`.
    pub fn evaluate(&self, p: &KappaPoly) -> Rational {
        let top = self.g - 2;
        p.terms()
            .filter(|(m, _)| m.degree() == top)
            .fold(Rational::zero(), |acc, (m, c)| acc + c * self.value(m))
    }
}

/// Solves the square system "expansion = value" for the unknowns `c_I`.
pub fn solve_proportionalities(g: u32, exec: Execution) -> Result<SocleTable> {
    if g < 3 {
        return Err(Error::InvalidArgument(format!("socle table needs g ≥ 3, got {g}")));
    }
    let n = g - 2;
    let unknowns = partitions(n, n);
    let index: HashMap<&Partition, usize> = unknowns.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let rows = par::map(exec, &unknowns, |d| {
        let arg = BracketArg { g, parts: d.clone() };
        let mut row = vec![Rational::zero(); unknowns.len()];
        for (m, c) in bracket_expansion(&arg).terms() {
            row[index[m]] += c;
        }
        (row, bracket_value(&arg))
    });
    let (matrix, rhs): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let solution = linalg::solve(&matrix, &rhs)
        .map_err(|_| Error::Singular(format!("bracket system for g = {g} is singular")))?;
    Ok(SocleTable {
        g,
        coefficients: unknowns.into_iter().zip(solution).collect(),
    })
}

/// `(1/(g-1)) 2^{2g-5} ((g-2)!)²`, the predicted `c_{(1^{g-2})}`.
pub fn kappa1_top_coefficient(g: u32) -> Rational {
    assert!(g >= 3);
    let f = factorial(g as u64 - 2);
    Rational::new(BigInt::from(2).pow(2 * g - 5) * &f * &f, BigInt::from(g - 1))
}

/// The `a_i` defined by `exp(-Σ a_i t^i) = Σ (6n)!/((2n)!(3n)!) t^n`, for
/// `i = 0..=order` (`a_0 = 0`).
pub fn a_series(order: usize) -> Vec<Rational> {
    let coeffs = (0..=order as u64)
        .map(|n| Rational::new(factorial(6 * n), factorial(2 * n) * factorial(3 * n)))
        .collect();
    let log = PowerSeries::new(coeffs, order).log();
    log.coeffs.into_iter().map(|c| -c).collect()
}

/// Coefficient of `t^k` in `exp(Σ a_i κ_i t^i)`, normalized.
pub fn unique_relation_3kminus1(k: u32) -> KappaPoly {
    assert!(k >= 1);
    let a = a_series(k as usize);
    let mut exponent = KappaPoly::zero();
    for (i, ai) in a.iter().enumerate().skip(1) {
        exponent.add_term(Partition::single(i as u32), ai.clone());
    }
    crate::kappa::exp_truncated(&exponent, k).homogeneous_part(k).normalized()
}

/// The three printed top-degree formulas, as multiples of `κ_{g-2}` (the
/// last one is a number).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormulas {
    #[serde(with = "crate::rational::serde_string")]
    pub hyperelliptic: Rational,
    #[serde(with = "crate::rational::serde_string")]
    pub lambda_gm2: Rational,
    #[serde(with = "crate::rational::serde_string")]
    pub lambda_cubed: Rational,
}

fn abs_bernoulli(n: u32) -> Rational {
    bernoulli(n).abs()
}

/// `[H_g]_Q / κ_{g-2} = (2^{2g}-1) 2^{g-2} / ((2g+1)(g+1)!)`.
pub fn hyperelliptic_formula(g: u32) -> Rational {
    let num = (BigInt::from(2).pow(2 * g) - 1) * BigInt::from(2).pow(g - 2);
    Rational::new(num, BigInt::from(2 * g + 1) * factorial(g as u64 + 1))
}

/// `λ_{g-2} / κ_{g-2} = |B_{2g-2}| (2g-1) 2^{g-1} / ((2g-2)(g-1)!)`, as
/// printed.
pub fn lambda_gm2_formula(g: u32) -> Rational {
    abs_bernoulli(2 * g - 2) * Rational::new(
        BigInt::from(2 * g - 1) * BigInt::from(2).pow(g - 1),
        BigInt::from(2 * g - 2) * factorial(g as u64 - 1),
    )
}

/// `λ_{g-1}^3 = |B_{2g-2} B_{2g}| / ((2g-2)(2g)) · 1/(2g-2)!`.
pub fn lambda_cubed_formula(g: u32) -> Rational {
    abs_bernoulli(2 * g - 2) * abs_bernoulli(2 * g)
        / Rational::from_integer(BigInt::from((2 * g - 2) * 2 * g) * factorial(2 * g as u64 - 2))
}

pub fn closed_socle_formulas(g: u32) -> ClosedFormulas {
    assert!(g >= 2);
    ClosedFormulas {
        hyperelliptic: hyperelliptic_formula(g),
        lambda_gm2: lambda_gm2_formula(g),
        lambda_cubed: lambda_cubed_formula(g),
    }
}

/// `κ_{g-2} λ_{g-1} λ_g = |B_{2g}| (g-1)! / (2^g (2g)!)`.
pub fn kappa_lambda_lambda(g: u32) -> Rational {
    abs_bernoulli(2 * g) * Rational::new(factorial(g as u64 - 1), BigInt::from(2).pow(g) * factorial(2 * g as u64))
}

/// `λ_{g-2}` as a multiple of `κ_{g-2}`, from the lambda series and the
/// socle table. Genus 2 uses `λ_0 = 1 = κ_0 / 2`.
pub fn lambda_gm2_from_table(g: u32, table: Option<&SocleTable>) -> Rational {
    if g == 2 {
        return Rational::new(BigInt::one(), BigInt::from(2));
    }
    let table = table.expect("socle table needed for g ≥ 3");
    let lambda = lambda_series(g - 2).pop().expect("nonempty series");
    table.evaluate(&lambda)
}

/// `λ_{g-1}^3 = 2 λ_{g-2} λ_{g-1} λ_g` (from `λ_{g-1}^2 = 2 λ_{g-2} λ_g`),
/// evaluated with the `λ_{g-2}` proportionality and `κ_{g-2}λ_{g-1}λ_g`.
pub fn lambda_cubed_from_table(g: u32, table: Option<&SocleTable>) -> Rational {
    int(2) * lambda_gm2_from_table(g, table) * kappa_lambda_lambda(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kappa::kappa_term;
    use crate::rational::rat;

    fn arg(g: u32, parts: &[u32]) -> BracketArg {
        BracketArg::new(g, Partition::new(parts.to_vec())).unwrap()
    }

    #[test]
    fn printed_bracket_shapes() {
        assert_eq!(bracket_value(&arg(7, &[5])), int(1));
        assert_eq!(bracket_value(&arg(4, &[1, 1])), rat(35, 3));
        // ⟨τ_i τ_{g-i}⟩ = (2g-1)!!/((2i-1)!!(2g-2i-1)!!)
        let (g, i) = (8u64, 3u64);
        let expected = Rational::new(
            double_factorial_odd(g),
            double_factorial_odd(i) * double_factorial_odd(g - i),
        );
        assert_eq!(bracket_value(&arg(8, &[2, 4])), expected);

        assert_eq!(bracket_expansion(&arg(7, &[5])), KappaPoly::kappa(5));
        assert_eq!(
            bracket_expansion(&arg(7, &[3, 2])),
            &kappa_term(int(1), &[3, 2]) + &KappaPoly::kappa(5)
        );
        let three = bracket_expansion(&arg(8, &[1, 2, 3]));
        let expected = [
            kappa_term(int(1), &[1, 2, 3]),
            kappa_term(int(1), &[3, 3]),
            kappa_term(int(1), &[4, 2]),
            kappa_term(int(1), &[5, 1]),
            kappa_term(int(2), &[6]),
        ]
        .into_iter()
        .fold(KappaPoly::zero(), |a, b| &a + &b);
        assert_eq!(three, expected);
    }

    #[test]
    fn both_expansion_routes_agree() {
        for d in [vec![1, 1, 1, 1], vec![2, 1, 1, 3, 1], vec![1; 7], vec![3, 3, 2, 2, 1, 1, 1, 4]] {
            assert_eq!(bracket_expansion_direct(&d), bracket_expansion_by_cycle_type(&d), "{d:?}");
        }
    }

    #[test]
    fn low_genus_tables() {
        let t4 = solve_proportionalities(4, Execution::Sequential).unwrap();
        assert_eq!(t4.value(&Partition::new(vec![1, 1])), rat(32, 3));
        let t5 = solve_proportionalities(5, Execution::Sequential).unwrap();
        assert_eq!(t5.value(&Partition::ones(3)), int(288));
        for g in 3..=9 {
            let t = solve_proportionalities(g, Execution::Parallel).unwrap();
            assert_eq!(t.value(&Partition::single(g - 2)), int(1));
            assert_eq!(t.value(&Partition::ones(g as usize - 2)), kappa1_top_coefficient(g));
        }
    }

    #[test]
    fn a_series_anchor() {
        let a = a_series(3);
        assert_eq!(a[1], int(-60));
        assert_eq!(unique_relation_3kminus1(1), KappaPoly::kappa(1));
        let r = unique_relation_3kminus1(2);
        assert!(r.is_proportional_to(&(&kappa_term(int(1), &[1, 1]) - &kappa_term(rat(72, 5), &[2]))));
    }

    #[test]
    fn closed_formula_values() {
        assert_eq!(hyperelliptic_formula(3), rat(3, 4));
        assert_eq!(lambda_cubed_formula(2), rat(1, 2880));
        assert_eq!(lambda_cubed_from_table(2, None), rat(1, 2880));
        let t3 = solve_proportionalities(3, Execution::Sequential).unwrap();
        assert_eq!(lambda_gm2_from_table(3, Some(&t3)), lambda_gm2_formula(3));
    }
}
