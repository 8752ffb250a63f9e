//! Brute-force ground truth for small `n`: exhaustive set-partition
//! enumeration and exact integer-coefficient Bell polynomials.
//!
//! Everything here is deliberately slow and obviously correct; the
//! closed-form modules are validated against it.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::bell::EdgeBias;
use crate::graph::Partition;
use crate::{Error, Result};

/// Hard cap on exhaustive enumeration (B_13 = 27 644 437 partitions).
pub const MAX_ENUM_N: usize = 13;

/// Cap for full pmf aggregation, which walks every partition per call.
pub const MAX_PMF_N: usize = 11;

/// The statistics whose exact law the oracle can aggregate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    /// Number of blocks (cliques) of the partition.
    Cliques,
    /// Number of edges of the cluster graph.
    Edges,
    /// Degree of a uniformly chosen vertex.
    Degree,
}

/// Exact coefficients of `B_n(w)` by edge count: `coeff[m]` is the number
/// of cluster graphs on `n` labelled vertices with exactly `m` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellPolynomial {
    n: usize,
    coeff: BTreeMap<u64, BigUint>,
}

impl BellPolynomial {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient map, keyed by edge count.
    pub fn coeff(&self) -> &BTreeMap<u64, BigUint> {
        &self.coeff
    }

    /// Total number of partitions, `B_n(1)` — the Bell number.
    pub fn total(&self) -> BigUint {
        self.coeff.values().sum()
    }

    /// Exact rational evaluation of `B_n(w)`; suits integer and
    /// dyadic-rational `w` where no rounding occurs at all.
    pub fn eval_rational(&self, w: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&m, c) in &self.coeff {
            let c = BigRational::from_integer(c.clone().into());
            acc += c * w.pow(m as i32);
        }
        acc
    }

    /// `log B_n(w)` evaluated in the log domain from exact coefficients.
    pub fn eval_log(&self, w: f64) -> f64 {
        assert!(w >= 0.0);
        let mut acc = f64::NEG_INFINITY;
        for (&m, c) in &self.coeff {
            let log_c = big_ln(c);
            let term = if m == 0 { log_c } else { log_c + m as f64 * w.ln() };
            acc = crate::logspace::log_add_exp(acc, term);
        }
        acc
    }
}

fn big_ln(x: &BigUint) -> f64 {
    // Exact for values below 2^53; otherwise split off high bits.
    let bits = x.bits();
    if bits <= 53 {
        x.to_f64().unwrap().ln()
    } else {
        let shift = bits - 53;
        let hi = (x >> shift).to_f64().unwrap();
        hi.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

fn check_range(n: usize, cap: usize) -> Result<()> {
    if n < 1 || n > cap {
        return Err(Error::InvalidParameter(format!(
            "oracle supports 1 <= n <= {cap}, got {n}"
        )));
    }
    Ok(())
}

/// Iterator over all set partitions of `{0..n-1}` in lexicographic
/// restricted-growth-string order.
pub struct PartitionIter {
    rgs: Vec<usize>,
    done: bool,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let current = Partition::from_labels(&self.rgs);
        // Advance to the next restricted-growth string: a[i] may take any
        // value up to 1 + max(a[..i]). Bump the rightmost position that can
        // still grow and zero the suffix.
        let n = self.rgs.len();
        self.done = true;
        for i in (1..n).rev() {
            let prefix_max = *self.rgs[..i].iter().max().unwrap();
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                self.rgs[i + 1..].fill(0);
                self.done = false;
                break;
            }
        }
        Some(current)
    }
}

/// Enumerates every set partition of `{0..n-1}` exactly once,
/// lexicographically by restricted-growth string. Guarded to `n <= 13`.
pub fn enumerate_partitions(n: usize) -> Result<PartitionIter> {
    check_range(n, MAX_ENUM_N)?;
    Ok(PartitionIter {
        rgs: vec![0; n],
        done: false,
    })
}

/// Exact `B_n(w)` coefficients by exhaustive enumeration. Guarded to `n <= 13`.
pub fn bell_polynomial(n: usize) -> Result<BellPolynomial> {
    check_range(n, MAX_ENUM_N)?;
    let mut coeff: BTreeMap<u64, BigUint> = BTreeMap::new();
    for part in enumerate_partitions(n)? {
        *coeff.entry(part.edge_count()).or_insert_with(BigUint::zero) += BigUint::one();
    }
    Ok(BellPolynomial { n, coeff })
}

/// Exact law of a statistic under `P(G) = w^{m(G)} / B_n(w)`, as a map
/// from statistic value to probability. Guarded to `n <= 11`.
///
/// The degree statistic is the law of a uniformly chosen vertex's degree,
/// i.e. each partition contributes weight `w^m * (#vertices of degree d) / n`.
pub fn exact_statistic_pmf(
    n: usize,
    bias: EdgeBias,
    statistic: Statistic,
) -> Result<BTreeMap<u64, f64>> {
    check_range(n, MAX_PMF_N)?;
    let w = bias.w();
    let mut mass: BTreeMap<u64, f64> = BTreeMap::new();
    let mut total = 0.0f64;
    for part in enumerate_partitions(n)? {
        let weight = w.powi(part.edge_count() as i32);
        total += weight;
        match statistic {
            Statistic::Cliques => {
                *mass.entry(part.block_count() as u64).or_insert(0.0) += weight;
            }
            Statistic::Edges => {
                *mass.entry(part.edge_count()).or_insert(0.0) += weight;
            }
            Statistic::Degree => {
                for block in part.blocks() {
                    let d = block.len() as u64 - 1;
                    *mass.entry(d).or_insert(0.0) +=
                        weight * block.len() as f64 / n as f64;
                }
            }
        }
    }
    for v in mass.values_mut() {
        *v /= total;
    }
    Ok(mass)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent Bell-number recurrence B_{n+1} = sum_k C(n,k) B_k.
    fn bell_numbers(up_to: usize) -> Vec<u64> {
        let mut b = vec![1u64];
        for n in 0..up_to {
            let mut next = 0u64;
            let mut c = 1u64;
            for (k, bk) in b.iter().enumerate().take(n + 1) {
                next += c * bk;
                c = c * (n as u64 - k as u64) / (k as u64 + 1);
            }
            b.push(next);
        }
        b
    }

    #[test]
    fn enumeration_counts_match_bell_recurrence() {
        let bell = bell_numbers(10);
        for n in 1..=10 {
            let count = enumerate_partitions(n).unwrap().count() as u64;
            assert_eq!(count, bell[n], "n={n}");
        }
    }

    #[test]
    fn enumeration_is_exhaustive_and_duplicate_free() {
        use std::collections::HashSet;
        let seen: HashSet<Partition> = enumerate_partitions(5).unwrap().collect();
        assert_eq!(seen.len(), 52);
    }

    #[test]
    fn enumeration_order_is_rgs_lexicographic() {
        let first: Vec<Vec<usize>> = enumerate_partitions(3)
            .unwrap()
            .map(|p| p.labels())
            .collect();
        assert_eq!(
            first,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2],
            ]
        );
    }

    #[test]
    fn range_guards() {
        assert!(enumerate_partitions(0).is_err());
        assert!(enumerate_partitions(14).is_err());
        assert!(bell_polynomial(14).is_err());
        let bias = EdgeBias::from_w(1.0).unwrap();
        assert!(exact_statistic_pmf(12, bias, Statistic::Edges).is_err());
    }

    #[test]
    fn polynomial_small_cases() {
        let p2 = bell_polynomial(2).unwrap();
        let expect2: Vec<(u64, u32)> = vec![(0, 1), (1, 1)];
        assert_eq!(
            p2.coeff().iter().map(|(&m, c)| (m, c.clone())).collect::<Vec<_>>(),
            expect2
                .iter()
                .map(|&(m, c)| (m, BigUint::from(c)))
                .collect::<Vec<_>>()
        );
        let p3 = bell_polynomial(3).unwrap();
        let got: Vec<(u64, u64)> = p3
            .coeff()
            .iter()
            .map(|(&m, c)| (m, c.to_u64().unwrap()))
            .collect();
        assert_eq!(got, vec![(0, 1), (1, 3), (3, 1)]);
        let p4 = bell_polynomial(4).unwrap();
        let got: Vec<(u64, u64)> = p4
            .coeff()
            .iter()
            .map(|(&m, c)| (m, c.to_u64().unwrap()))
            .collect();
        assert_eq!(got, vec![(0, 1), (1, 6), (2, 3), (3, 4), (6, 1)]);
        assert_eq!(p4.total(), BigUint::from(15u32));
    }

    #[test]
    fn polynomial_structural_coefficients() {
        for n in 2..=9usize {
            let poly = bell_polynomial(n).unwrap();
            let top = n as u64 * (n as u64 - 1) / 2;
            assert_eq!(poly.coeff()[&0], BigUint::one());
            assert_eq!(poly.coeff()[&top], BigUint::one());
            assert_eq!(poly.coeff()[&1], BigUint::from(top));
        }
    }

    #[test]
    fn rational_evaluation_is_exact() {
        use num_bigint::BigInt;
        let p3 = bell_polynomial(3).unwrap();
        let two = BigRational::from_integer(BigInt::from(2));
        assert_eq!(p3.eval_rational(&two), BigRational::from_integer(BigInt::from(15)));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        // B_3(1/2) = 1 + 3/2 + 1/8 = 21/8.
        assert_eq!(
            p3.eval_rational(&half),
            BigRational::new(BigInt::from(21), BigInt::from(8))
        );
    }

    #[test]
    fn pmf_examples() {
        let w1 = EdgeBias::from_w(1.0).unwrap();
        let pmf = exact_statistic_pmf(2, w1, Statistic::Cliques).unwrap();
        assert!((pmf[&1] - 0.5).abs() < 1e-15);
        assert!((pmf[&2] - 0.5).abs() < 1e-15);
        let pmf = exact_statistic_pmf(3, w1, Statistic::Edges).unwrap();
        assert!((pmf[&0] - 0.2).abs() < 1e-15);
        assert!((pmf[&1] - 0.6).abs() < 1e-15);
        assert!((pmf[&3] - 0.2).abs() < 1e-15);
        let pmf = exact_statistic_pmf(1, w1, Statistic::Degree).unwrap();
        assert!((pmf[&0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pmfs_sum_to_one() {
        for w in [0.25, 1.0, 3.0] {
            let bias = EdgeBias::from_w(w).unwrap();
            for stat in [Statistic::Cliques, Statistic::Edges, Statistic::Degree] {
                for n in 1..=8 {
                    let pmf = exact_statistic_pmf(n, bias, stat).unwrap();
                    let s: f64 = pmf.values().sum();
                    assert!((s - 1.0).abs() < 1e-12, "n={n}, w={w}, {stat:?}");
                }
            }
        }
    }
}
