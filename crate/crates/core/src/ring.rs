//! The graded ring `Q[κ_1, κ_2, …] / I_g`, degree by degree.
//!
//! Two routes lead to a quotient:
//!
//! - the *relation route* row-reduces, in every degree `n`, the span of
//!   `r · κ_J` over generated relations `r` ([`GradedQuotient`]);
//! - the *socle route* takes the socle functional `κ_I ↦ c_I` as given and
//!   reads the ring off the ranks and kernels of the pairing matrices
//!   `c_{I ∪ J}` ([`SocleRing`]).
//!
//! The Gorenstein, Hard Lefschetz and Hodge positivity checks only need a
//! basis of each `R^i` and a socle functional, so both routes share them.
//!
//! In degree `n ≤ g - 2` the monomial basis consists of the partitions of
//! `n`. Above the socle the higher kappas are kept as variables too, so
//! that relations involving them can be used; vanishing of the quotient on
//! the window `[g - 1, 2(g - 2)]` then forces every monomial in
//! `κ_1 … κ_{2g-4}` of degree above `g - 2` to vanish.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kappa::KappaPoly;
use crate::linalg::{self, rref, Row, Rref};
use crate::par::{self, Execution};
use crate::partition::{partitions, Partition};
use crate::rational::{big, Rational};
use crate::relations::RelationRecord;
use crate::socle::SocleTable;

/// Monomials of degree `n` in the canonical order (largest parts first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub g: u32,
    pub degree: u32,
    pub monomials: Vec<Partition>,
    index: HashMap<Partition, usize>,
}

impl GradedBasis {
    /// All partitions of `degree`; for `degree ≤ g - 2` these are exactly
    /// the partitions with parts at most `g - 2`.
    pub fn new(g: u32, degree: u32) -> Self {
        Self::from_monomials(g, degree, partitions(degree, degree))
    }

    fn from_monomials(g: u32, degree: u32, monomials: Vec<Partition>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        GradedBasis {
            g,
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Coordinates of the degree-`n` part of `p`.
    pub fn vector(&self, p: &KappaPoly) -> Row {
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in p.terms() {
            if m.degree() == self.degree {
                let i = self.index(m).expect("monomial of the right degree");
                v[i] += c;
            }
        }
        v
    }

    pub fn poly(&self, v: &[Rational]) -> KappaPoly {
        KappaPoly::from_terms(
            self.monomials
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

/// The span, in degree `n`, of `r · κ_J` for every relation `r` of degree
/// `c ≤ n` and every partition `J` of `n - c`.
pub fn ideal_in_degree(basis: &GradedBasis, relations: &[KappaPoly], exec: Execution) -> Rref {
    let n = basis.degree;
    let mut rows = Vec::new();
    for r in relations {
        let Some(c) = r.degree() else { continue };
        if c > n {
            continue;
        }
        for j in partitions(n - c, n - c) {
            rows.push(basis.vector(&(r * &KappaPoly::monomial(j, Rational::one()))));
        }
    }
    rref(rows, basis.len(), exec)
}

/// Per-degree relation spans for degrees `0..=max_degree`.
pub fn build_ideal(g: u32, relations: &[RelationRecord], max_degree: u32, exec: Execution) -> Vec<(GradedBasis, Rref)> {
    let polys: Vec<KappaPoly> = relations.iter().map(|r| r.relation.clone()).collect();
    par::map_range(exec, max_degree as usize + 1, |n| {
        let basis = GradedBasis::new(g, n as u32);
        let ideal = ideal_in_degree(&basis, &polys, exec);
        (basis, ideal)
    })
}

/// Highest degree the relation route must reach: the top of the vanishing
/// window `[g - 1, 2(g - 2)]`, and at least `g - 1`.
pub fn window_top(g: u32) -> u32 {
    (2 * g).saturating_sub(4).max(g - 1)
}

/// The quotient by a set of relations, degree by degree.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    pub g: u32,
    pub degrees: Vec<(GradedBasis, Rref)>,
}

impl GradedQuotient {
    pub fn new(g: u32, relations: &[RelationRecord], exec: Execution) -> Self {
        Self::with_max_degree(g, relations, window_top(g), exec)
    }

    pub fn with_max_degree(g: u32, relations: &[RelationRecord], max_degree: u32, exec: Execution) -> Self {
        GradedQuotient {
            g,
            degrees: build_ideal(g, relations, max_degree, exec),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.len() as u32 - 1
    }

    pub fn dim(&self, n: u32) -> usize {
        let (basis, ideal) = &self.degrees[n as usize];
        basis.len() - ideal.rank()
    }

    /// `dim R^n` for `n = 0..=max_degree`.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_degree()).map(|n| self.dim(n)).collect()
    }

    /// Whether every degree in `[g - 1, max_degree]` vanishes.
    pub fn window_vanishes(&self) -> bool {
        (self.g - 1..=self.max_degree()).all(|n| self.dim(n) == 0)
    }

    /// Monomials not hit by a pivot; they form a basis of `R^n`.
    pub fn standard_monomials(&self, n: u32) -> Vec<Partition> {
        let (basis, ideal) = &self.degrees[n as usize];
        ideal.free_columns().into_iter().map(|c| basis.monomials[c].clone()).collect()
    }

    /// The unique representative supported on standard monomials.
    pub fn normal_form(&self, p: &KappaPoly) -> KappaPoly {
        let mut out = KappaPoly::zero();
        let top = p.degree().unwrap_or(0);
        for n in 0..=top {
            let part = p.homogeneous_part(n);
            if part.is_zero() {
                continue;
            }
            assert!(n <= self.max_degree(), "degree {n} beyond the built range");
            let (basis, ideal) = &self.degrees[n as usize];
            out = &out + &basis.poly(&ideal.reduce(&basis.vector(&part)));
        }
        out
    }

    pub fn is_zero(&self, p: &KappaPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn equal(&self, a: &KappaPoly, b: &KappaPoly) -> bool {
        self.is_zero(&(a - b))
    }

    /// Whether `p` lies in the ideal (all of its homogeneous parts do).
    pub fn contains(&self, p: &KappaPoly) -> bool {
        self.is_zero(p)
    }

    /// The socle functional read off the quotient: `c_I` with
    /// `κ_I = c_I κ_{g-2}` in the one-dimensional top degree.
    pub fn derived_socle(&self) -> Result<SocleTable> {
        let g = self.g;
        if g < 2 {
            return Err(Error::InvalidArgument("genus below 2".into()));
        }
        let top = g - 2;
        if self.dim(top) != 1 {
            return Err(Error::InvalidArgument(format!("dim R^{top} = {}, expected 1", self.dim(top))));
        }
        let (basis, ideal) = &self.degrees[top as usize];
        let free = ideal.free_columns()[0];
        let coordinate = |p: &Partition| ideal.reduce(&basis.vector(&KappaPoly::monomial(p.clone(), Rational::one())))[free].clone();
        let kappa_top = if top == 0 { Partition::empty() } else { Partition::single(top) };
        let reference = coordinate(&kappa_top);
        if reference.is_zero() {
            return Err(Error::Singular(format!("κ_{top} vanishes in the quotient")));
        }
        Ok(SocleTable {
            g,
            coefficients: basis
                .monomials
                .iter()
                .map(|p| (p.clone(), coordinate(p) / &reference))
                .collect(),
        })
    }

    /// The Gorenstein quotient of a socle functional: in degree `n ≤ g - 2`
    /// the ideal is the kernel of the pairing with degree `g - 2 - n`, and
    /// everything above `g - 2` is zero.
    pub fn from_socle(table: &SocleTable, exec: Execution) -> Self {
        let g = table.g;
        let top = g - 2;
        let degrees = par::map_range(exec, window_top(g) as usize + 1, |n| {
            let n = n as u32;
            let basis = GradedBasis::new(g, n);
            let rows: Vec<Row> = if n <= top {
                let cols = partitions(top - n, top - n);
                let m = pairing_matrix(table, &basis.monomials, &cols, &Partition::empty());
                rref(linalg::transpose(&m, cols.len()), basis.len(), Execution::Sequential).kernel()
            } else {
                (0..basis.len())
                    .map(|i| (0..basis.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                    .collect()
            };
            let ideal = rref(rows, basis.len(), Execution::Sequential);
            (basis, ideal)
        });
        GradedQuotient { g, degrees }
    }

    /// Bases of `R^0 … R^{g-2}` by standard monomials.
    pub fn bases(&self) -> Vec<Vec<Partition>> {
        (0..=self.g - 2).map(|n| self.standard_monomials(n)).collect()
    }
}

/// A minimal presentation `Q[κ_{d_1}, …] / (r_1, …)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingPresentation {
    pub g: u32,
    pub generator_degrees: Vec<u32>,
    /// Minimal relations among the generators, primitive integral with
    /// positive leading coefficient.
    pub relations: Vec<KappaPoly>,
    /// `κ_n` for each redundant `n ≤ g - 2`, in terms of the generators.
    pub eliminations: BTreeMap<u32, KappaPoly>,
    pub dims: Vec<usize>,
    pub socle: SocleTable,
}

/// Scales to a primitive integer vector with positive lead.
pub fn normalize_relation(p: &KappaPoly) -> KappaPoly {
    let terms: Vec<(Partition, Rational)> = p.terms().rev().map(|(m, c)| (m.clone(), c.clone())).collect();
    let values: Vec<Rational> = terms.iter().map(|(_, c)| c.clone()).collect();
    let ints = crate::rational::primitive_integer_vector(&values);
    KappaPoly::from_terms(terms.into_iter().zip(ints).map(|((m, _), c)| (m, big(c))))
}

fn generator_monomials(n: u32, gens: &[u32]) -> Vec<Partition> {
    partitions(n, n)
        .into_iter()
        .filter(|p| p.parts().iter().all(|x| gens.contains(x)))
        .collect()
}

/// Minimal algebra generators and minimal relations of a quotient whose
/// window vanishes.
pub fn minimal_presentation(q: &GradedQuotient) -> Result<RingPresentation> {
    let g = q.g;
    if !q.window_vanishes() {
        return Err(Error::InvalidArgument(format!(
            "quotient for g = {g} does not vanish above degree {}: dims {:?}",
            g - 2,
            q.dims()
        )));
    }
    let top = q.max_degree();
    // κ_n is a new generator unless it is a polynomial in lower kappas
    // modulo the ideal.
    let mut gens: Vec<u32> = Vec::new();
    for n in 1..=top {
        let (basis, ideal) = &q.degrees[n as usize];
        let mut rows = ideal.rows.clone();
        for m in &basis.monomials {
            if m.len() > 1 {
                rows.push(basis.vector(&KappaPoly::monomial(m.clone(), Rational::one())));
            }
        }
        let span = rref(rows, basis.len(), Execution::Sequential);
        if !span.contains(&basis.vector(&KappaPoly::kappa(n))) {
            gens.push(n);
        }
    }
    let mut eliminations = BTreeMap::new();
    let mut relations: Vec<KappaPoly> = Vec::new();
    for n in 1..=top {
        let (basis, ideal) = &q.degrees[n as usize];
        let mons = generator_monomials(n, &gens);
        if mons.is_empty() {
            continue;
        }
        let residuals: Vec<Row> = mons
            .iter()
            .map(|m| ideal.reduce(&basis.vector(&KappaPoly::monomial(m.clone(), Rational::one()))))
            .collect();
        let gen_basis = GradedBasis::from_monomials(g, n, mons.clone());
        // relations among generator monomials: kernel of the residual map
        let kernel = rref(linalg::transpose(&residuals, basis.len()), mons.len(), Execution::Sequential).kernel();
        let mut products = Vec::new();
        for r in &relations {
            let c = r.degree().expect("nonzero relation");
            if c >= n {
                continue;
            }
            for m in generator_monomials(n - c, &gens) {
                products.push(gen_basis.vector(&(r * &KappaPoly::monomial(m, Rational::one()))));
            }
        }
        let old = rref(products, mons.len(), Execution::Sequential);
        let fresh: Vec<Row> = kernel.iter().map(|k| old.reduce(k)).collect();
        for row in rref(fresh, mons.len(), Execution::Sequential).rows {
            relations.push(normalize_relation(&gen_basis.poly(&row)));
        }
        if n <= g.saturating_sub(2) && !gens.contains(&n) {
            // express κ_n through generator monomials, preferring those
            // with the most factors (pivots on the reversed order)
            let target = ideal.reduce(&basis.vector(&KappaPoly::kappa(n)));
            let k = mons.len();
            let mut system = linalg::transpose(&residuals, basis.len());
            for (row, t) in system.iter_mut().zip(&target) {
                row.reverse();
                row.push(t.clone());
            }
            let solved = rref(system, k + 1, Execution::Sequential);
            let mut x = vec![Rational::zero(); k];
            for (row, &p) in solved.rows.iter().zip(&solved.pivots) {
                if p < k {
                    x[k - 1 - p] = row[k].clone();
                }
            }
            eliminations.insert(n, gen_basis.poly(&x));
        }
    }
    Ok(RingPresentation {
        g,
        generator_degrees: gens,
        relations,
        eliminations,
        dims: (0..=g - 2).map(|n| q.dim(n)).collect(),
        socle: q.derived_socle()?,
    })
}

/// The ring predicted by a socle functional: `R^i` is the quotient of the
/// degree-`i` monomials by the kernel of the pairing with degree `g-2-i`.
#[derive(Clone, Debug)]
pub struct SocleRing {
    pub table: SocleTable,
    /// For each `i ≤ g - 2`, pairing-independent monomials spanning `R^i`.
    pub bases: Vec<Vec<Partition>>,
    ranks: Vec<usize>,
}

/// `P[I][J] = c_{I ∪ J ∪ extra}`.
pub fn pairing_matrix(table: &SocleTable, rows: &[Partition], cols: &[Partition], extra: &Partition) -> Vec<Row> {
    rows.iter()
        .map(|i| cols.iter().map(|j| table.value(&i.union(j).union(extra))).collect())
        .collect()
}

impl SocleRing {
    pub fn new(table: SocleTable, exec: Execution) -> Self {
        let top = table.g - 2;
        let per_degree = par::map_range(exec, top as usize + 1, |i| {
            let i = i as u32;
            let rows = partitions(i, i);
            let cols = partitions(top - i, top - i);
            let m = pairing_matrix(&table, &rows, &cols, &Partition::empty());
            let rank = linalg::rank(&m, cols.len());
            // greedy choice of independent rows, in canonical order
            let mut chosen = Vec::new();
            let mut span = Rref::empty(cols.len());
            for (p, row) in rows.iter().zip(&m) {
                if chosen.len() == rank {
                    break;
                }
                if !span.contains(row) {
                    chosen.push(p.clone());
                    let mut all = span.rows.clone();
                    all.push(row.clone());
                    span = rref(all, cols.len(), Execution::Sequential);
                }
            }
            (chosen, rank)
        });
        let (bases, ranks) = per_degree.into_iter().unzip();
        SocleRing { table, bases, ranks }
    }

    pub fn g(&self) -> u32 {
        self.table.g
    }

    /// Ranks of the pairing matrices `R^i × R^{g-2-i}`.
    pub fn dims(&self) -> Vec<usize> {
        self.ranks.clone()
    }

    /// Relations in degree `i` predicted by the pairing: the left kernel of
    /// the pairing matrix.
    pub fn predicted_relations(&self, i: u32) -> Vec<KappaPoly> {
        let top = self.g() - 2;
        let rows = partitions(i, i);
        let cols = partitions(top - i, top - i);
        let m = pairing_matrix(&self.table, &rows, &cols, &Partition::empty());
        let basis = GradedBasis::new(self.g(), i);
        rref(linalg::transpose(&m, cols.len()), rows.len(), Execution::Sequential)
            .kernel()
            .iter()
            .map(|v| basis.poly(v))
            .collect()
    }

    /// Whether `p` (homogeneous of degree `≤ g - 2`) pairs to zero with
    /// every monomial of complementary degree.
    pub fn annihilates(&self, p: &KappaPoly) -> bool {
        let top = self.g() - 2;
        let Some(i) = p.degree() else { return true };
        if i > top {
            return false;
        }
        partitions(top - i, top - i).into_iter().all(|j| {
            let prod = p * &KappaPoly::monomial(j, Rational::one());
            self.table.evaluate(&prod).is_zero()
        })
    }
}

/// Outcome of the property checks in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degree: u32,
    pub dim: usize,
    pub dual_dim: usize,
    pub pairing_rank: usize,
    /// Present for `degree ≤ (g - 2) / 2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub g: u32,
    pub gorenstein: bool,
    pub hard_lefschetz: bool,
    pub hodge_positive: bool,
    pub degrees: Vec<DegreeReport>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.gorenstein && self.hard_lefschetz && self.hodge_positive
    }
}

/// Gorenstein pairing, Hard Lefschetz for `κ_1` and Hodge positivity of the
/// primitive forms, for bases `bases[i]` of `R^i` and a socle functional
/// normalized by `κ_{g-2} ↦ 1`.
pub fn check_properties(table: &SocleTable, bases: &[Vec<Partition>], exec: Execution) -> PropertyReport {
    let g = table.g;
    let top = g - 2;
    assert_eq!(bases.len(), top as usize + 1);
    let degrees = par::map_range(exec, top as usize + 1, |i| {
        let i = i as u32;
        let b = &bases[i as usize];
        let dual = &bases[(top - i) as usize];
        let pairing = pairing_matrix(table, b, dual, &Partition::empty());
        let pairing_rank = linalg::rank(&pairing, dual.len());
        let mut report = DegreeReport {
            degree: i,
            dim: b.len(),
            dual_dim: dual.len(),
            pairing_rank,
            lefschetz: None,
            primitive_dim: None,
            positive: None,
        };
        if 2 * i <= top {
            let l = pairing_matrix(table, b, b, &Partition::ones((top - 2 * i) as usize));
            report.lefschetz = Some(linalg::rank(&l, b.len()) == b.len());
            // primitive part: x with x·κ_1^{g-1-2i}·z = 0 for z in R^{i-1}
            let primitive: Vec<Row> = if i == 0 {
                vec![vec![Rational::one()]]
            } else {
                let lower = &bases[(i - 1) as usize];
                let a = pairing_matrix(table, lower, b, &Partition::ones((top + 1 - 2 * i) as usize));
                rref(a, b.len(), Execution::Sequential).kernel()
            };
            report.primitive_dim = Some(primitive.len());
            let sign = if i.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
            let form: Vec<Row> = l.iter().map(|r| r.iter().map(|x| x * &sign).collect()).collect();
            report.positive = Some(linalg::is_positive_definite(&linalg::gram(&form, &primitive)));
        }
        report
    });
    PropertyReport {
        g,
        gorenstein: degrees.iter().all(|d| d.dim == d.dual_dim && d.pairing_rank == d.dim),
        hard_lefschetz: degrees.iter().all(|d| d.lefschetz != Some(false)),
        hodge_positive: degrees.iter().all(|d| d.positive != Some(false)),
        degrees,
    }
}
