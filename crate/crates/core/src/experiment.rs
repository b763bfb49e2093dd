//! Expectation of the average Lefschetz number over random graphs.
//!
//! Exhaustive mode averages over all `2^(n(n-1)/2)` labeled graphs on `n`
//! vertices. Sampling mode draws each edge independently with a rational
//! probability from a ChaCha8 stream seeded by `seed_from_u64`, visiting
//! vertex pairs in lexicographic order.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{enumerate_all_graphs, Graph};
use crate::symmetry::average_lefschetz;

/// Default vertex cap for exhaustive mode.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectationReport {
    pub n: usize,
    pub graphs: u64,
    /// Exact mean of `L(G)` over the graphs visited.
    pub mean: BigRational,
    pub min: BigRational,
    pub max: BigRational,
}

fn summarize(n: usize, values: Vec<BigRational>) -> ExpectationReport {
    let graphs = values.len() as u64;
    let total: BigRational = values.iter().sum();
    let min = values.iter().min().cloned().unwrap_or_else(BigRational::zero);
    let max = values.iter().max().cloned().unwrap_or_else(BigRational::zero);
    ExpectationReport {
        n,
        graphs,
        mean: total / BigRational::from_integer(BigInt::from(graphs.max(1))),
        min,
        max,
    }
}

/// `E_n[L]` over every labeled graph on `n <= cap` vertices.
pub fn exhaustive_expectation(n: usize, cap: usize) -> Result<ExpectationReport> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "exhaustive expectation",
            cap,
            got: n,
        });
    }
    let all = enumerate_all_graphs(n)?;
    let values = (0..all.total())
        .into_par_iter()
        .map(|mask| average_lefschetz(&all.graph_at(mask)))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(n, values))
}

/// Edge probability as an exact fraction `numerator / denominator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Probability {
    numerator: u32,
    denominator: u32,
}

impl Probability {
    pub fn new(numerator: u32, denominator: u32) -> Result<Self> {
        if denominator == 0 || numerator > denominator {
            return Err(Error::InvalidProbability(format!("{numerator}/{denominator}")));
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn as_rational(&self) -> BigRational {
        BigRational::new(self.numerator.into(), self.denominator.into())
    }
}

impl FromStr for Probability {
    type Err = Error;

    /// Accepts `a/b` or a plain decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidProbability(s.to_string());
        if s.trim_start().starts_with('-') {
            return Err(bad());
        }
        let q: BigRational = if let Some((a, b)) = s.split_once('/') {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            BigRational::new(a, b)
        } else {
            let (int, frac) = s.trim().split_once('.').unwrap_or((s.trim(), ""));
            if int.is_empty() && frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let int: BigInt = if int.is_empty() { BigInt::zero() } else { int.parse().map_err(|_| bad())? };
            let frac_value: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().map_err(|_| bad())? };
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            BigRational::new(int * &scale + frac_value, scale)
        };
        if q < BigRational::zero() || q > BigRational::one() {
            return Err(bad());
        }
        let numerator = q.numer().to_u32().ok_or_else(bad)?;
        let denominator = q.denom().to_u32().ok_or_else(bad)?;
        Self::new(numerator, denominator)
    }
}

/// One Erdős–Rényi graph drawn from `rng`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: Probability, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_ratio(p.numerator, p.denominator) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are in range")
}

/// Empirical mean of `L(G)` over `samples` random graphs. Graphs are drawn
/// sequentially, so the result depends only on the arguments.
pub fn sampled_expectation(n: usize, samples: usize, p: Probability, seed: u64) -> Result<ExpectationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<Graph> = (0..samples).map(|_| random_graph(n, p, &mut rng)).collect();
    let values = graphs
        .par_iter()
        .map(average_lefschetz)
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(n, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_exhaustive_values() {
        assert_eq!(exhaustive_expectation(1, 6).unwrap().mean, q(1, 1));
        assert_eq!(exhaustive_expectation(2, 6).unwrap().mean, q(1, 1));
        let r = exhaustive_expectation(3, 6).unwrap();
        assert_eq!((r.graphs, r.mean), (8, q(11, 8)));
        assert!(exhaustive_expectation(7, 6).is_err());
    }

    #[test]
    fn probability_parsing() {
        assert_eq!("1/2".parse::<Probability>().unwrap(), Probability::new(1, 2).unwrap());
        assert_eq!("0.25".parse::<Probability>().unwrap(), Probability::new(1, 4).unwrap());
        assert_eq!("1".parse::<Probability>().unwrap(), Probability::new(1, 1).unwrap());
        assert_eq!(".5".parse::<Probability>().unwrap(), Probability::new(1, 2).unwrap());
        for bad in ["1.5", "-0.1", "x", "1/0", "", "."] {
            assert!(bad.parse::<Probability>().is_err(), "{bad}");
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = Probability::new(1, 2).unwrap();
        let a = sampled_expectation(5, 40, p, 11).unwrap();
        let b = sampled_expectation(5, 40, p, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.graphs, 40);
        let full = sampled_expectation(4, 3, Probability::new(1, 1).unwrap(), 0).unwrap();
        assert_eq!(full.mean, q(1, 1));
    }
}
