//! Bernoulli numbers, the lambda classes in terms of kappas, and small exact
//! power-series utilities.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::kappa::{exp_truncated, KappaPoly};
use crate::partition::Partition;
use crate::rational::{big, binomial, int, Rational};

/// Bernoulli number `B_n` with `B_1 = -1/2`, `B_2 = 1/6`, `B_4 = -1/30`.
pub fn bernoulli(n: u32) -> Rational {
    bernoulli_table(n).pop().expect("table has n+1 entries")
}

/// `B_0, …, B_n` from `Σ_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn bernoulli_table(n: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    b.push(Rational::one());
    for m in 1..=n as u64 {
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += big(binomial(m + 1, k as u64)) * bk;
        }
        b.push(-acc / big(BigInt::from(m + 1)));
    }
    b
}

/// The exponent `Σ_i B_{2i} κ_{2i-1} t^{2i-1} / (2i(2i-1))` truncated at
/// degree `max_degree`.
fn mumford_exponent(max_degree: u32) -> KappaPoly {
    let b = bernoulli_table(max_degree + 1);
    let mut s = KappaPoly::zero();
    let mut i = 1u32;
    while 2 * i - 1 <= max_degree {
        let coeff = &b[2 * i as usize] / int((2 * i * (2 * i - 1)) as i64);
        s.add_term(Partition::single(2 * i - 1), coeff);
        i += 1;
    }
    s
}

/// `λ_0, …, λ_max` as kappa polynomials (only odd kappas occur).
pub fn lambda_series(max_degree: u32) -> Vec<KappaPoly> {
    let total = exp_truncated(&mumford_exponent(max_degree), max_degree);
    (0..=max_degree).map(|i| total.homogeneous_part(i)).collect()
}

/// `λ_0, …, λ_g` for genus `g`.
pub fn lambda_from_kappa(g: u32) -> Vec<KappaPoly> {
    lambda_series(g)
}

/// Graded pieces `(-1)^i λ_i`, `i = 0..=g`, of `c(E)^{-1} = c(E^∨)`.
pub fn chern_e_inverse(g: u32) -> Vec<KappaPoly> {
    lambda_from_kappa(g)
        .into_iter()
        .enumerate()
        .map(|(i, l)| if i % 2 == 0 { l } else { -&l })
        .collect()
}

/// Truncated univariate power series with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// `log(f)` for `f(0) = 1`, via `f · (log f)' = f'`.
    #[allow(clippy::needless_range_loop)]
    pub fn log(&self) -> PowerSeries {
        assert!(self.coeffs[0].is_one(), "log needs constant term 1");
        let n = self.order();
        let mut l = vec![Rational::zero(); n + 1];
        // n·l_n = n·f_n − Σ_{k=1}^{n-1} k·l_k·f_{n−k}
        for m in 1..=n {
            let mut acc = int(m as i64) * &self.coeffs[m];
            for k in 1..m {
                acc -= int(k as i64) * &l[k] * &self.coeffs[m - k];
            }
            l[m] = acc / int(m as i64);
        }
        PowerSeries { coeffs: l }
    }

    /// `exp(f)` for `f(0) = 0`, via `e' = f'·e`.
    pub fn exp(&self) -> PowerSeries {
        assert!(self.coeffs[0].is_zero(), "exp needs constant term 0");
        let n = self.order();
        let mut e = vec![Rational::zero(); n + 1];
        e[0] = Rational::one();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                acc += int(k as i64) * &self.coeffs[k] * &e[m - k];
            }
            e[m] = acc / int(m as i64);
        }
        PowerSeries { coeffs: e }
    }
}
