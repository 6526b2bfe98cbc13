//! Sparse exact polynomials in the kappa classes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::partition::Partition;
use crate::rational::{big, parse_rational, primitive_integer_vector, Rational};

/// A polynomial in `κ_1, κ_2, …` stored as `Partition → Rational`.
///
/// The partition `I` stands for the monomial `κ_I = Π_{i∈I} κ_i`; the empty
/// partition is the constant term. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KappaPoly {
    terms: BTreeMap<Partition, Rational>,
}

impl KappaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Partition::empty(), c)
    }

    pub fn monomial(p: Partition, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(p, c);
        out
    }

    /// `κ_i` for `i ≥ 1`.
    pub fn kappa(i: u32) -> Self {
        assert!(i >= 1, "kappa index must be positive; κ_0 and κ_-1 are scalars");
        Self::monomial(Partition::single(i), Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, Rational)>) -> Self {
        let mut out = Self::zero();
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    pub fn add_term(&mut self, p: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Partition, Rational> {
        self.terms
    }

    pub fn coeff(&self, p: &Partition) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest degree of a stored term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Partition::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Partition::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> KappaPoly {
        KappaPoly {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.degree() == degree)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of degree greater than `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> KappaPoly {
        KappaPoly {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.degree() <= max_degree)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> KappaPoly {
        if c.is_zero() {
            return KappaPoly::zero();
        }
        KappaPoly {
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    /// Product truncated at `max_degree`, skipping products that would be
    /// dropped anyway.
    pub fn mul_truncated(&self, other: &KappaPoly, max_degree: u32) -> KappaPoly {
        let mut out = KappaPoly::zero();
        for (p, a) in &self.terms {
            let dp = p.degree();
            if dp > max_degree {
                continue;
            }
            for (q, b) in &other.terms {
                if dp + q.degree() <= max_degree {
                    out.add_term(p.union(q), a * b);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> KappaPoly {
        (0..n).fold(KappaPoly::one(), |acc, _| &acc * self)
    }

    /// Applies a linear functional given on monomials.
    pub fn evaluate_linear(&self, value: impl Fn(&Partition) -> Option<Rational>) -> Option<Rational> {
        let mut total = Rational::zero();
        for (p, c) in &self.terms {
            total += c * value(p)?;
        }
        Some(total)
    }

    /// Substitutes rational values for the kappa classes.
    pub fn evaluate(&self, kappa: impl Fn(u32) -> Rational) -> Rational {
        self.terms
            .iter()
            .map(|(p, c)| p.parts().iter().fold(c.clone(), |acc, &i| acc * kappa(i)))
            .sum()
    }

    /// Rescales to a primitive integer polynomial with positive leading
    /// coefficient, the leading term being the first in reverse
    /// lexicographic order (largest parts first).
    pub fn normalized(&self) -> KappaPoly {
        let keys: Vec<&Partition> = self.terms.keys().rev().collect();
        let values: Vec<Rational> = keys.iter().map(|k| self.terms[*k].clone()).collect();
        let ints = primitive_integer_vector(&values);
        KappaPoly::from_terms(keys.into_iter().cloned().zip(ints.into_iter().map(big)))
    }

    /// `Some(r)` with `self = r · other` when the two are proportional.
    pub fn ratio_to(&self, other: &KappaPoly) -> Option<Rational> {
        let (p, c) = other.terms.iter().next()?;
        let r = self.coeff(p) / c;
        (self == &other.scale(&r)).then_some(r)
    }

    pub fn is_proportional_to(&self, other: &KappaPoly) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.ratio_to(other).is_some_and(|r| !r.is_zero()),
            _ => false,
        }
    }

    /// Largest kappa index appearing in any term.
    pub fn max_kappa_index(&self) -> u32 {
        self.terms.keys().map(Partition::max_part).max().unwrap_or(0)
    }

    pub fn integer_content_is_one(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
            && self
                .terms
                .values()
                .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c.numer()))
                .is_one()
    }
}

impl Add for &KappaPoly {
    type Output = KappaPoly;
    fn add(self, rhs: &KappaPoly) -> KappaPoly {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl Sub for &KappaPoly {
    type Output = KappaPoly;
    fn sub(self, rhs: &KappaPoly) -> KappaPoly {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &KappaPoly {
    type Output = KappaPoly;
    fn neg(self) -> KappaPoly {
        KappaPoly {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &KappaPoly {
    type Output = KappaPoly;
    fn mul(self, rhs: &KappaPoly) -> KappaPoly {
        let mut out = KappaPoly::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.add_term(p.union(q), a * b);
            }
        }
        out
    }
}

impl Add for KappaPoly {
    type Output = KappaPoly;
    fn add(self, rhs: KappaPoly) -> KappaPoly {
        &self + &rhs
    }
}

impl Sub for KappaPoly {
    type Output = KappaPoly;
    fn sub(self, rhs: KappaPoly) -> KappaPoly {
        &self - &rhs
    }
}

impl Mul for KappaPoly {
    type Output = KappaPoly;
    fn mul(self, rhs: KappaPoly) -> KappaPoly {
        &self * &rhs
    }
}

impl fmt::Display for KappaPoly {
    /// Human-readable form such as `225*k2 - 55/8*k1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (p, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = p
                .multiplicities()
                .into_iter()
                .map(|(i, m)| if m == 1 { format!("k{i}") } else { format!("k{i}^{m}") })
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for KappaPoly {
    /// A JSON object mapping `"2,1,1"` to `"p/q"`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (p, c) in self.terms.iter().rev() {
            map.serialize_entry(&p.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for KappaPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut out = KappaPoly::zero();
        for (k, v) in raw {
            let p: Partition = k.parse().map_err(D::Error::custom)?;
            let c = parse_rational(&v).map_err(D::Error::custom)?;
            out.add_term(p, c);
        }
        Ok(out)
    }
}

/// `exp(x)` of a polynomial without constant term, truncated at `max_degree`.
pub fn exp_truncated(x: &KappaPoly, max_degree: u32) -> KappaPoly {
    debug_assert!(x.coeff(&Partition::empty()).is_zero());
    let mut total = KappaPoly::one();
    let mut power = KappaPoly::one();
    for n in 1..=max_degree {
        power = power.mul_truncated(x, max_degree);
        if power.is_zero() {
            break;
        }
        total = &total + &power.scale(&Rational::new(BigInt::one(), crate::rational::factorial(n as u64)));
    }
    total
}

/// Convenience: `c · κ_I` from a coefficient and a slice of kappa indices.
pub fn kappa_term(c: Rational, indices: &[u32]) -> KappaPoly {
    KappaPoly::monomial(Partition::new(indices.to_vec()), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn kint(n: i64, indices: &[u32]) -> KappaPoly {
        kappa_term(int(n), indices)
    }

    #[test]
    fn monomial_merge_and_identity() {
        let k1 = KappaPoly::kappa(1);
        assert_eq!(&k1 * &k1, kint(1, &[1, 1]));
        let s = &KappaPoly::kappa(1) + &KappaPoly::kappa(2);
        assert_eq!(&s * &KappaPoly::one(), s);
    }

    #[test]
    fn truncation_respects_grading() {
        let p = &KappaPoly::kappa(1) + &kint(1, &[2, 1]);
        assert_eq!(p.truncate(2), KappaPoly::kappa(1));
    }

    #[test]
    fn json_round_trip() {
        let p = &kappa_term(rat(-55, 8), &[1, 1]) + &kint(225, &[2]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"2":"225","1,1":"-55/8"}"#);
        let back: KappaPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn normalization() {
        let p = &kappa_term(rat(-55, 8), &[1, 1]) + &kint(225, &[2]);
        assert_eq!(p.normalized(), &kint(360, &[2]) - &kint(11, &[1, 1]));
        assert_eq!(p.to_string(), "225*k2 - 55/8*k1^2");
        assert!(p.is_proportional_to(&p.normalized()));
    }
}
