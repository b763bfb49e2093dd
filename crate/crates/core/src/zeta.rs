//! Lefschetz zeta functions `ζ_T(z) = exp(Σ_n L(T^n) z^n / n)` of graph
//! automorphisms, computed three ways:
//!
//! * from determinants, `Π_k det(1 - z T_k)^{(-1)^{k+1}}`, with `T_k` the
//!   map on `H^k`;
//! * from prime orbits of simplices, `Π_p (1-z^p)^{a(p)-b(p)} (1+z^p)^{c(p)-d(p)}`;
//! * as a check only: the power series of `ζ'/ζ` must have `L(T^n)` as its
//!   coefficient of `z^{n-1}`.
//!
//! The factored form is expanded through cyclotomic polynomials, so
//! cancellation is exponent arithmetic and the result is reduced without a
//! polynomial gcd.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::complex::CliqueComplex;
use crate::dynamics::{GraphMap, Topology};
use crate::error::{Error, Result};
use crate::linalg::{IntPolynomial, RationalPolynomial};
use crate::symmetry::{simplex_orbits, Action, AutomorphismGroup};

/// `Π_p (1 - z^p)^{e_minus(p)} (1 + z^p)^{e_plus(p)}`, keyed by ascending `p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    factors: BTreeMap<usize, (i64, i64)>,
}

impl Factorization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_triples(triples: &[(usize, i64, i64)]) -> Self {
        let mut f = Self::new();
        for &(p, em, ep) in triples {
            f.add(p, em, ep);
        }
        f
    }

    pub fn add(&mut self, p: usize, e_minus: i64, e_plus: i64) {
        assert!(p >= 1, "periods start at 1");
        let entry = self.factors.entry(p).or_insert((0, 0));
        entry.0 += e_minus;
        entry.1 += e_plus;
        if *entry == (0, 0) {
            self.factors.remove(&p);
        }
    }

    pub fn merge(&mut self, other: &Factorization) {
        for (&p, &(em, ep)) in &other.factors {
            self.add(p, em, ep);
        }
    }

    /// `(p, e_minus, e_plus)` with at least one nonzero exponent.
    pub fn triples(&self) -> Vec<(usize, i64, i64)> {
        self.factors.iter().map(|(&p, &(em, ep))| (p, em, ep)).collect()
    }

    /// Exponent of each cyclotomic factor; index 1 stands for `1 - z`.
    fn cyclotomic_exponents(&self) -> BTreeMap<usize, i64> {
        let mut exps = BTreeMap::new();
        for (&p, &(em, ep)) in &self.factors {
            // 1 - z^p = Π_{d | p} Ψ_d,   1 + z^p = Π_{d | 2p, d ∤ p} Ψ_d
            for d in divisors(p) {
                *exps.entry(d).or_insert(0) += em;
            }
            for d in divisors(2 * p).into_iter().filter(|d| p % d != 0) {
                *exps.entry(d).or_insert(0) += ep;
            }
        }
        exps.retain(|_, e| *e != 0);
        exps
    }

    /// Reduced rational function carrying this factorization.
    pub fn expand(&self) -> RationalFunctionZ {
        let exps = self.cyclotomic_exponents();
        let max = exps.keys().copied().max().unwrap_or(1);
        let table = cyclotomic_table(max);
        let mut num = IntPolynomial::one();
        let mut den = IntPolynomial::one();
        for (&d, &e) in &exps {
            let factor = table[d].pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &factor;
            } else {
                den = &den * &factor;
            }
        }
        let mut f = RationalFunctionZ::from_coprime(num, den);
        f.factored = Some(self.clone());
        f
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (&p, &(em, ep)) in &self.factors {
            let power = if p == 1 { "z".to_string() } else { format!("z^{p}") };
            if em != 0 {
                parts.push(format!("(1-{power})^{em}"));
            }
            if ep != 0 {
                parts.push(format!("(1+{power})^{ep}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `Ψ_1 = 1 - z` and `Ψ_d = Φ_d` (the d-th cyclotomic polynomial) for `d > 1`,
/// indexed by `d` for `d <= max`.
fn cyclotomic_table(max: usize) -> Vec<IntPolynomial> {
    let mut table = vec![IntPolynomial::zero(), IntPolynomial::from_i64(&[-1, 1])];
    for d in 2..=max {
        // z^d - 1 = Π_{e | d} Φ_e
        let mut phi = IntPolynomial::one_plus_signed_power(d, -1).neg();
        for e in divisors(d).into_iter().filter(|&e| e < d) {
            phi = phi.exact_div(&table[e]).expect("cyclotomic division is exact");
        }
        table.push(phi);
    }
    if max >= 1 {
        table[1] = IntPolynomial::from_i64(&[1, -1]);
    }
    table
}

/// A rational function `numerator / denominator` in `z` with integer
/// coefficients, kept reduced: coprime over the rationals, no common integer
/// content, and the lowest nonzero denominator coefficient positive.
#[derive(Clone, Debug)]
pub struct RationalFunctionZ {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
    factored: Option<Factorization>,
}

impl RationalFunctionZ {
    pub fn one() -> Self {
        Self::from_coprime(IntPolynomial::one(), IntPolynomial::one())
    }

    /// Reduces an arbitrary quotient. Panics on a zero denominator.
    pub fn new(numerator: &RationalPolynomial, denominator: &RationalPolynomial) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        let g = numerator.gcd(denominator);
        let (n, _) = numerator.div_rem(&g);
        let (d, _) = denominator.div_rem(&g);
        canonical(&n, &d)
    }

    pub fn from_int(numerator: IntPolynomial, denominator: IntPolynomial) -> Self {
        Self::new(&numerator.to_rational(), &denominator.to_rational())
    }

    /// Skips the gcd; the caller guarantees the polynomials are coprime.
    pub fn from_coprime(numerator: IntPolynomial, denominator: IntPolynomial) -> Self {
        canonical(&numerator.to_rational(), &denominator.to_rational())
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    pub fn factored(&self) -> Option<&Factorization> {
        self.factored.as_ref()
    }

    pub fn with_factored(mut self, f: Factorization) -> Self {
        self.factored = Some(f);
        self
    }

    /// True when there is no factored form or it expands to this function.
    pub fn factored_is_consistent(&self) -> bool {
        self.factored.as_ref().is_none_or(|f| &f.expand() == self)
    }

    /// `ζ(0)`; `None` if `z = 0` is a pole.
    pub fn value_at_zero(&self) -> Option<BigRational> {
        let d = self.denominator.constant_term();
        (!d.is_zero()).then(|| BigRational::new(self.numerator.constant_term(), d))
    }

    /// Product, reduced by cross-cancelling `gcd(N1, D2)` and `gcd(N2, D1)`.
    /// Factored forms are merged when both sides carry one.
    pub fn mul(&self, other: &Self) -> Self {
        let (n1, d1) = (self.numerator.to_rational(), self.denominator.to_rational());
        let (n2, d2) = (other.numerator.to_rational(), other.denominator.to_rational());
        let g1 = n1.gcd(&d2);
        let g2 = n2.gcd(&d1);
        let num = &n1.div_rem(&g1).0 * &n2.div_rem(&g2).0;
        let den = &d1.div_rem(&g2).0 * &d2.div_rem(&g1).0;
        let mut out = canonical(&num, &den);
        if let (Some(a), Some(b)) = (&self.factored, &other.factored) {
            let mut merged = a.clone();
            merged.merge(b);
            out.factored = Some(merged);
        }
        out
    }

    /// First `terms` coefficients of the power series of `ζ'/ζ`.
    pub fn log_derivative_series(&self, terms: usize) -> Vec<BigRational> {
        let n = &self.numerator;
        let d = &self.denominator;
        let top = &(&n.derivative() * d) - &(n * &d.derivative());
        let bottom = n * d;
        power_series_quotient(&top, &bottom, terms)
    }
}

/// Series coefficients of `top / bottom`; `bottom(0)` must be nonzero.
fn power_series_quotient(top: &IntPolynomial, bottom: &IntPolynomial, terms: usize) -> Vec<BigRational> {
    let b: Vec<BigRational> = bottom.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    assert!(b.first().is_some_and(|b0| !b0.is_zero()), "series expansion needs a nonzero constant term");
    let mut out: Vec<BigRational> = Vec::with_capacity(terms);
    for i in 0..terms {
        let mut acc = top
            .coeffs()
            .get(i)
            .map_or_else(BigRational::zero, |c| BigRational::from_integer(c.clone()));
        for j in 1..=i.min(b.len() - 1) {
            acc -= &b[j] * &out[i - j];
        }
        out.push(acc / &b[0]);
    }
    out
}

fn canonical(num: &RationalPolynomial, den: &RationalPolynomial) -> RationalFunctionZ {
    let lcm = num
        .coeffs()
        .iter()
        .chain(den.coeffs())
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let scale = |p: &RationalPolynomial| -> IntPolynomial {
        IntPolynomial::new(p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect())
    };
    let (mut n, mut d) = (scale(num), scale(den));
    let content = n.content().gcd(&d.content());
    if !content.is_zero() && !content.is_one() {
        n = n.scale_div(&content);
        d = d.scale_div(&content);
    }
    if d.coeffs().iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
        n = n.neg();
        d = d.neg();
    }
    if n.is_zero() {
        d = IntPolynomial::one();
    }
    RationalFunctionZ {
        numerator: n,
        denominator: d,
        factored: None,
    }
}

impl PartialEq for RationalFunctionZ {
    /// Cross-multiplication; factored forms are ignored.
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl Eq for RationalFunctionZ {}

impl fmt::Display for RationalFunctionZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(factored) = &self.factored {
            return write!(f, "{factored}");
        }
        if self.denominator == IntPolynomial::one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

/// Prime-orbit counts for one period, split by dimension parity and by the
/// signature of `T^p` on a representative simplex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusCounts {
    /// odd dimension, signature +1
    pub a: u64,
    /// even dimension, signature +1
    pub b: u64,
    /// odd dimension, signature -1
    pub c: u64,
    /// even dimension, signature -1
    pub d: u64,
}

impl CensusCounts {
    pub fn total(&self) -> u64 {
        self.a + self.b + self.c + self.d
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrbitCensus {
    periods: BTreeMap<usize, CensusCounts>,
}

impl OrbitCensus {
    pub fn get(&self, p: usize) -> CensusCounts {
        self.periods.get(&p).copied().unwrap_or_default()
    }

    pub fn periods(&self) -> impl Iterator<Item = (usize, CensusCounts)> + '_ {
        self.periods.iter().map(|(&p, &c)| (p, c))
    }

    /// `Σ_p p (a + b + c + d)(p)`.
    pub fn simplex_count(&self) -> u64 {
        self.periods().map(|(p, c)| p as u64 * c.total()).sum()
    }

    pub fn factorization(&self) -> Factorization {
        let mut f = Factorization::new();
        for (p, c) in self.periods() {
            f.add(p, c.a as i64 - c.b as i64, c.c as i64 - c.d as i64);
        }
        f
    }
}

/// Classifies every prime orbit of simplices of an automorphism. The
/// signature on a representative `x` is `Π_{k<p} φ(T^k x)`, with `φ(y)` the
/// sign of the vertex permutation from `y` onto `T(y)`.
pub fn orbit_census(c: &CliqueComplex, t: &GraphMap) -> Result<OrbitCensus> {
    let orbits = simplex_orbits(c, Action::Map(t))?;
    let mut census = OrbitCensus::default();
    for orbit in orbits {
        let signature: i8 = orbit
            .members
            .iter()
            .map(|&id| t.map_simplex(c.simplex(id).vertices()).1)
            .product();
        let p = orbit.period.expect("single-map orbits carry a period");
        let counts = census.periods.entry(p).or_default();
        match (orbit.dim() % 2 == 1, signature > 0) {
            (true, true) => counts.a += 1,
            (false, true) => counts.b += 1,
            (true, false) => counts.c += 1,
            (false, false) => counts.d += 1,
        }
    }
    Ok(census)
}

pub fn zeta_product(census: &OrbitCensus) -> RationalFunctionZ {
    census.factorization().expand()
}

/// `Π_k det(1 - z T_k)^{(-1)^{k+1}}` over the maps induced on cohomology.
pub fn zeta_det(topo: &Topology, t: &GraphMap) -> Result<RationalFunctionZ> {
    if !t.is_automorphism() {
        return Err(Error::NotAutomorphism);
    }
    let mut num = RationalPolynomial::new(vec![BigRational::one()]);
    let mut den = num.clone();
    for (k, m) in topo.induced_maps(t)?.iter().enumerate() {
        let factor = RationalPolynomial::new(m.det_one_minus_z()?);
        if k % 2 == 1 {
            num = &num * &factor;
        } else {
            den = &den * &factor;
        }
    }
    Ok(RationalFunctionZ::new(&num, &den))
}

/// True iff the first `lefschetz_values.len()` coefficients of `ζ'/ζ` are
/// `L(T), L(T^2), ...`.
pub fn series_consistency(zeta: &RationalFunctionZ, lefschetz_values: &[i64]) -> bool {
    if zeta.value_at_zero().is_none_or(|v| !v.is_one()) {
        return false;
    }
    zeta.log_derivative_series(lefschetz_values.len())
        .iter()
        .zip(lefschetz_values)
        .all(|(s, &l)| s == &BigRational::from_integer(l.into()))
}

/// `L(T^n)` for `n = 1..=terms`, each computed on cohomology from the power map.
pub fn lefschetz_powers(topo: &Topology, t: &GraphMap, terms: usize) -> Result<Vec<i64>> {
    (1..=terms).map(|n| topo.lefschetz_cohomological(&t.power(n))).collect()
}

/// All three routes for one automorphism.
#[derive(Clone, Debug)]
pub struct ZetaAgreement {
    pub det: RationalFunctionZ,
    pub product: RationalFunctionZ,
    pub census: OrbitCensus,
    pub series_order: usize,
    pub series_ok: bool,
}

impl ZetaAgreement {
    pub fn det_matches_product(&self) -> bool {
        self.det == self.product
    }

    pub fn passed(&self) -> bool {
        self.det_matches_product() && self.series_ok && self.product.factored_is_consistent()
    }
}

/// Runs all three routes; the series is checked to `2 * order(T)` terms
/// unless `series_order` is given.
pub fn zeta_agreement(topo: &Topology, t: &GraphMap, series_order: Option<usize>) -> Result<ZetaAgreement> {
    let order = t.order().ok_or(Error::NotAutomorphism)?;
    let det = zeta_det(topo, t)?;
    let census = orbit_census(topo.complex(), t)?;
    let product = zeta_product(&census);
    let series_order = series_order.unwrap_or(2 * order);
    let values = lefschetz_powers(topo, t, series_order)?;
    let series_ok = series_consistency(&det, &values) && series_consistency(&product, &values);
    Ok(ZetaAgreement {
        det,
        product,
        census,
        series_order,
        series_ok,
    })
}

/// `ζ_G = Π_{T ∈ Aut(G)} ζ_T`, folded in group order from the determinant
/// route, carrying the merged prime-orbit factorization.
pub fn graph_zeta(topo: &Topology, group: &AutomorphismGroup) -> Result<RationalFunctionZ> {
    let parts: Vec<(RationalFunctionZ, Factorization)> = group
        .elements()
        .par_iter()
        .map(|t| -> Result<_> {
            let z = zeta_det(topo, t)?;
            let f = orbit_census(topo.complex(), t)?.factorization();
            Ok((z, f))
        })
        .collect::<Result<_>>()?;
    let mut total = RationalFunctionZ::one();
    let mut merged = Factorization::new();
    for (z, f) in &parts {
        total = total.mul(z);
        merged.merge(f);
    }
    Ok(total.with_factored(merged))
}
