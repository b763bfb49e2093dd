//! Simplicial cochain cohomology of the clique complex over the rationals.
//!
//! A k-cochain is one rational per k-simplex, read in the ascending
//! reference orientation. `d_k` maps k-cochains to (k+1)-cochains.

use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::CliqueComplex;
use crate::dynamics::GraphMap;
use crate::error::{Error, Result};
use crate::linalg::{sign_to_rational, RationalMatrix, SpanSolver};

/// Coboundary `d_k`: rows are (k+1)-simplices, columns are k-simplices.
/// Past the top dimension the matrix has zero rows.
pub fn coboundary_matrix(c: &CliqueComplex, k: usize) -> RationalMatrix {
    let cols = c.simplices(k).len();
    let rows = c.simplices(k + 1);
    let mut d = RationalMatrix::zeros(rows.len(), cols);
    for (r, s) in rows.iter().enumerate() {
        for i in 0..=s.dim() {
            let face = s.facet(i);
            let col = c.index_of(face.vertices()).expect("clique complex is closed under faces").index;
            d[(r, col)] = sign_to_rational(if i % 2 == 0 { 1 } else { -1 });
        }
    }
    d
}

/// `b_k = dim ker d_k - rank d_{k-1}` for every dimension of the complex.
pub fn betti_numbers(c: &CliqueComplex) -> Vec<usize> {
    let ranks: Vec<usize> = (0..c.dim_count()).map(|k| coboundary_matrix(c, k).rank()).collect();
    (0..c.dim_count())
        .map(|k| {
            let kernel = c.simplices(k).len() - ranks[k];
            kernel - if k == 0 { 0 } else { ranks[k - 1] }
        })
        .collect()
}

/// Coboundaries, Betti numbers and explicit cohomology bases for every
/// dimension, plus a factored solver for expressing cocycles in
/// `[cohomology basis | exact forms]` coordinates.
#[derive(Clone, Debug)]
pub struct CochainSpaces {
    coboundaries: Vec<RationalMatrix>,
    betti: Vec<usize>,
    basis: Vec<RationalMatrix>,
    image_basis: Vec<RationalMatrix>,
    solvers: Vec<SpanSolver>,
}

impl CochainSpaces {
    pub fn new(c: &CliqueComplex) -> Self {
        let dims = c.dim_count();
        let coboundaries: Vec<RationalMatrix> = (0..dims).map(|k| coboundary_matrix(c, k)).collect();
        let mut betti = Vec::with_capacity(dims);
        let mut basis = Vec::with_capacity(dims);
        let mut image_basis = Vec::with_capacity(dims);
        let mut solvers = Vec::with_capacity(dims);
        for k in 0..dims {
            let vk = c.simplices(k).len();
            let image = if k == 0 {
                RationalMatrix::zeros(vk, 0)
            } else {
                let prev = &coboundaries[k - 1];
                let (_, pivots) = prev.rref();
                RationalMatrix::from_columns(vk, &pivots.iter().map(|&j| prev.column(j)).collect::<Vec<_>>())
            };
            let kernel = coboundaries[k].nullspace();
            let combined = image.hcat(&RationalMatrix::from_columns(vk, &kernel));
            let (_, pivots) = combined.rref();
            let reps: Vec<Vec<BigRational>> = pivots
                .iter()
                .filter(|&&p| p >= image.cols())
                .map(|&p| kernel[p - image.cols()].clone())
                .collect();
            let h = RationalMatrix::from_columns(vk, &reps);
            solvers.push(SpanSolver::new(&h.hcat(&image)));
            betti.push(h.cols());
            basis.push(h);
            image_basis.push(image);
        }
        Self {
            coboundaries,
            betti,
            basis,
            image_basis,
            solvers,
        }
    }

    pub fn dim_count(&self) -> usize {
        self.betti.len()
    }

    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    pub fn coboundary(&self, k: usize) -> &RationalMatrix {
        &self.coboundaries[k]
    }

    /// Representative cocycles of `H^k`, one per column.
    pub fn basis(&self, k: usize) -> &RationalMatrix {
        &self.basis[k]
    }

    /// Basis of the exact k-forms `im d_{k-1}`, one per column.
    pub fn image_basis(&self, k: usize) -> &RationalMatrix {
        &self.image_basis[k]
    }

    /// `sum_k (-1)^k b_k`.
    pub fn cohomological_euler_characteristic(&self) -> i64 {
        crate::complex::alternating_sum(&self.betti)
    }

    /// Matrix of the map induced on `H^k` for each k, given the cochain-level
    /// pullbacks of one graph map (one per dimension).
    pub fn induced_maps(&self, pullbacks: &[Pullback]) -> Result<Vec<RationalMatrix>> {
        if pullbacks.len() != self.dim_count() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_count(),
                found: pullbacks.len(),
            });
        }
        (0..self.dim_count())
            .map(|k| {
                let b = self.betti[k];
                let h = &self.basis[k];
                let mut t = RationalMatrix::zeros(b, b);
                for j in 0..b {
                    let pulled = pullbacks[k].apply(&h.column(j));
                    let coeffs = self.solvers[k].solve(&pulled)?.ok_or_else(|| {
                        Error::Internal(format!("pulled-back cocycle in degree {k} is not closed"))
                    })?;
                    for i in 0..b {
                        t[(i, j)] = coeffs[i].clone();
                    }
                }
                Ok(t)
            })
            .collect()
    }
}

pub fn cohomology_basis(c: &CliqueComplex) -> CochainSpaces {
    CochainSpaces::new(c)
}

/// Cochain-level action of a graph map in one dimension:
/// `(P f)(x) = sign * f(T(x))`, with `sign` the parity of the permutation
/// sorting `(T(x_0), ..., T(x_k))`. Row `x` has its single nonzero in
/// column `T(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    entries: Vec<(usize, i8)>,
}

impl Pullback {
    pub fn new(c: &CliqueComplex, t: &GraphMap, k: usize) -> Self {
        let entries = c
            .simplices(k)
            .iter()
            .map(|s| {
                let (image, sign) = t.map_simplex(s.vertices());
                let id = c
                    .index_of(&image)
                    .expect("endomorphisms send cliques to cliques of the same dimension");
                (id.index, sign)
            })
            .collect();
        Self { entries }
    }

    /// `(target index, sign)` for each row.
    pub fn entries(&self) -> &[(usize, i8)] {
        &self.entries
    }

    pub fn apply(&self, f: &[BigRational]) -> Vec<BigRational> {
        self.entries
            .iter()
            .map(|&(col, sign)| if sign > 0 { f[col].clone() } else { -f[col].clone() })
            .collect()
    }

    /// Signed count of rows mapped to themselves.
    pub fn trace(&self) -> i64 {
        self.entries
            .iter()
            .enumerate()
            .filter(|(row, (col, _))| row == col)
            .map(|(_, &(_, sign))| i64::from(sign))
            .sum()
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        let n = self.entries.len();
        let mut m = RationalMatrix::zeros(n, n);
        for (row, &(col, sign)) in self.entries.iter().enumerate() {
            m[(row, col)] = sign_to_rational(sign);
        }
        m
    }
}

/// Pullbacks of `t` in every dimension of `c`.
pub fn pullbacks(c: &CliqueComplex, t: &GraphMap) -> Vec<Pullback> {
    (0..c.dim_count()).map(|k| Pullback::new(c, t, k)).collect()
}

pub fn pullback_matrix(c: &CliqueComplex, t: &GraphMap, k: usize) -> RationalMatrix {
    Pullback::new(c, t, k).to_matrix()
}

pub fn induced_cohomology_map(s: &CochainSpaces, p: &[Pullback]) -> Result<Vec<RationalMatrix>> {
    s.induced_maps(p)
}

/// True iff `d_k * h = 0`.
pub fn is_cocycle(s: &CochainSpaces, k: usize, h: &[BigRational]) -> bool {
    s.coboundary(k).mul_vec(h).iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_named;
    use num_traits::One;

    fn complex(name: &str, k: usize) -> CliqueComplex {
        CliqueComplex::new(&generate_named(name, k).unwrap())
    }

    fn map(name: &str, k: usize, image: &[usize]) -> (CliqueComplex, GraphMap) {
        let g = generate_named(name, k).unwrap();
        let t = GraphMap::validate(&g, image.to_vec()).unwrap();
        (CliqueComplex::new(&g), t)
    }

    #[test]
    fn single_edge_coboundary() {
        let d0 = coboundary_matrix(&complex("complete", 2), 0);
        assert_eq!(d0, RationalMatrix::from_i64_rows(&[vec![-1, 1]]));
    }

    #[test]
    fn coboundary_shapes_and_square_zero() {
        let p = complex("petersen", 0);
        let d0 = coboundary_matrix(&p, 0);
        assert_eq!((d0.rows(), d0.cols()), (15, 10));
        let k3 = complex("complete", 3);
        let dd = &coboundary_matrix(&k3, 1) * &coboundary_matrix(&k3, 0);
        assert_eq!((dd.rows(), dd.cols()), (1, 3));
        assert!(dd.is_zero());
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti_numbers(&complex("cycle", 5)), vec![1, 1]);
        assert_eq!(betti_numbers(&complex("octahedron", 0)), vec![1, 0, 1]);
        assert_eq!(betti_numbers(&complex("petersen", 0)), vec![1, 6]);
        assert_eq!(betti_numbers(&complex("discrete", 3)), vec![3]);
        assert!(betti_numbers(&complex("discrete", 0)).is_empty());
    }

    #[test]
    fn complete_graph_cohomology_is_constants() {
        for n in 1..=5 {
            let s = CochainSpaces::new(&complex("complete", n));
            assert_eq!(s.betti()[0], 1);
            assert!(s.betti()[1..].iter().all(|&b| b == 0));
            let h = s.basis(0).column(0);
            assert!(h.iter().all(|x| x == &h[0]) && !h[0].is_zero());
        }
    }

    #[test]
    fn cycle_has_one_class_with_holonomy() {
        let s = CochainSpaces::new(&complex("cycle", 4));
        assert_eq!(s.betti(), &[1, 1]);
        let h = s.basis(1).column(0);
        assert!(is_cocycle(&s, 1, &h));
        // edges 01, 03, 12, 23; orient the loop 0->1->2->3->0
        let holonomy = &h[0] + &h[2] + &h[3] - &h[1];
        assert!(!holonomy.is_zero());
    }

    #[test]
    fn discrete_components_are_indicators() {
        let s = CochainSpaces::new(&complex("discrete", 3));
        assert_eq!(s.basis(0), &RationalMatrix::identity(3));
    }

    #[test]
    fn pullback_examples() {
        let (c, t) = map("complete", 2, &[1, 0]);
        assert_eq!(pullback_matrix(&c, &t, 1), RationalMatrix::from_i64_rows(&[vec![-1]]));
        let (c, id) = map("octahedron", 0, &[0, 1, 2, 3, 4, 5]);
        for k in 0..3 {
            let m = pullback_matrix(&c, &id, k);
            assert_eq!(m, RationalMatrix::identity(c.simplices(k).len()));
        }
    }

    #[test]
    fn induced_maps_on_square() {
        let (c, rot) = map("cycle", 4, &[1, 2, 3, 0]);
        let s = CochainSpaces::new(&c);
        let t = s.induced_maps(&pullbacks(&c, &rot)).unwrap();
        assert_eq!(t[1], RationalMatrix::identity(1));
        let (_, refl) = map("cycle", 4, &[0, 3, 2, 1]);
        let t = s.induced_maps(&pullbacks(&c, &refl)).unwrap();
        assert_eq!(t[1], RationalMatrix::from_i64_rows(&[vec![-1]]));
        assert!(t[0][(0, 0)].is_one());
    }

    #[test]
    fn mismatched_pullbacks_are_rejected() {
        let c = complex("cycle", 4);
        let s = CochainSpaces::new(&c);
        assert!(s.induced_maps(&[]).is_err());
    }
}
