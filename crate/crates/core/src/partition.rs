//! Integer partitions: the canonical key for kappa monomials, bracket
//! arguments and diagonal products.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive integers.
///
/// The derived ordering compares the descending part lists lexicographically,
/// so `(1,1) < (2) < (2,1)`. [`partitions`] yields in the reverse of that
/// order, largest parts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn single(part: u32) -> Self {
        Partition::new(vec![part])
    }

    /// `(1^n)`.
    pub fn ones(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Multiset union; the monomial product `κ_I · κ_J`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x >= y {
                        parts.push(x);
                        a.next();
                    } else {
                        parts.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    parts.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    parts.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Partition(parts)
    }

    pub fn with_part(&self, part: u32) -> Partition {
        self.union(&Partition::single(part))
    }

    /// Multiplicity of each distinct part, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Partition::new(parts))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        if parts.contains(&0) {
            return Err(serde::de::Error::custom("partition parts must be positive"));
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions of `n` with parts in `min_part..=max_part`, largest parts
/// first (reverse lexicographic order).
pub fn partitions_bounded(n: u32, min_part: u32, max_part: u32) -> Vec<Partition> {
    fn rec(rest: u32, min: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let top = max.min(rest);
        for p in (min..=top).rev() {
            cur.push(p);
            rec(rest - p, min, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, min_part.max(1), max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n` with parts at most `max_part`.
pub fn partitions(n: u32, max_part: u32) -> Vec<Partition> {
    partitions_bounded(n, 1, max_part)
}

/// Number of partitions of `n` with parts at most `max_part`.
pub fn partition_count(n: u32, max_part: u32) -> usize {
    let n = n as usize;
    let mut table = vec![0usize; n + 1];
    table[0] = 1;
    for part in 1..=(max_part as usize).min(n) {
        for total in part..=n {
            table[total] += table[total - part];
        }
    }
    table[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let p = Partition::new(vec![1, 2, 1, 0]);
        assert_eq!(p.parts(), &[2, 1, 1]);
        assert_eq!(p.to_string(), "2,1,1");
        assert_eq!("2,1,1".parse::<Partition>().unwrap(), p);
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("2,0".parse::<Partition>().is_err());
    }

    #[test]
    fn enumeration_order_and_counts() {
        let ps: Vec<String> = partitions(4, 4).iter().map(|p| p.to_string()).collect();
        assert_eq!(ps, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        for n in 0..15 {
            for m in 0..=n {
                assert_eq!(partitions(n, m).len(), partition_count(n, m));
            }
        }
        assert_eq!(partition_count(13, 13), 101);
    }

    #[test]
    fn union_is_multiset_sum() {
        let a = Partition::new(vec![3, 1]);
        let b = Partition::new(vec![2, 1]);
        assert_eq!(a.union(&b).parts(), &[3, 2, 1, 1]);
        assert_eq!(a.union(&Partition::empty()), a);
    }
}
