//! Adjacency, Kirchhoff, Hodge and connection matrices, exact energies and
//! floating spectra.

use nalgebra::{DMatrix, RealField, SymmetricEigen};
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{dense_to_columns, exact_rank, integer_determinant, unimodular_inverse, DenseMatrix};
use crate::products::product_cell_complex;
use crate::simplicial::{SimplicialComplex, DEFAULT_SIMPLEX_BUDGET};
use crate::topology::{BettiVector, CellComplex, ChainComplex};

/// Default cap on cells for exact connection-matrix inverses.
pub const DEFAULT_INVERSE_BUDGET: usize = 1500;
/// Default cap on the dimension of a floating eigensolve.
pub const DEFAULT_EIGEN_BUDGET: usize = 2000;

pub type IntMatrix = DenseMatrix<i64>;

pub fn adjacency(g: &Graph) -> IntMatrix {
    let n = g.order();
    DenseMatrix::from_fn(n, n, |i, j| g.has_edge(i, j) as i64)
}

/// Degree matrix minus adjacency.
pub fn kirchhoff(g: &Graph) -> IntMatrix {
    let n = g.order();
    DenseMatrix::from_fn(n, n, |i, j| {
        if i == j {
            g.degree(i) as i64
        } else {
            -(g.has_edge(i, j) as i64)
        }
    })
}

/// `L(x, y) = 1` when cells `x` and `y` intersect.
pub fn connection_matrix<C: CellComplex + ?Sized>(c: &C, budget: usize) -> Result<IntMatrix> {
    let n = c.cell_count();
    if n > budget {
        return Err(Error::budget("connection matrix cells", budget));
    }
    let rows = c.intersection_rows();
    Ok(DenseMatrix::from_fn(n, n, |i, j| rows[i].contains(j) as i64))
}

/// Connection matrix of the product cell complex `G × H`, built from
/// componentwise intersection of cell pairs.
pub fn connection_matrix_product(g: &Graph, h: &Graph, budget: usize) -> Result<IntMatrix> {
    connection_matrix(&product_cell_complex(g, h, DEFAULT_SIMPLEX_BUDGET)?, budget)
}

/// `Π (-1)^{dim x}` over all cells.
pub fn fermi_functional<C: CellComplex + ?Sized>(c: &C) -> i64 {
    let odd = c.cell_dims().iter().filter(|&&d| d % 2 == 1).count();
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exact determinant by fraction-free elimination.
pub fn connection_determinant<C: CellComplex + ?Sized>(c: &C, budget: usize) -> Result<BigInt> {
    Ok(integer_determinant(&connection_matrix(c, budget)?))
}

/// Exact inverse of the connection matrix together with its determinant.
pub fn connection_inverse<C: CellComplex + ?Sized>(c: &C, budget: usize) -> Result<(IntMatrix, i8)> {
    unimodular_inverse(&connection_matrix(c, budget)?)
}

/// Sum of all entries of the inverse connection matrix.
pub fn energy<C: CellComplex + ?Sized>(c: &C, budget: usize) -> Result<i64> {
    Ok(connection_inverse(c, budget)?.0.sum())
}

/// Sorted eigenvalues of a symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    values: Vec<T>,
}

impl<T: RealField + Copy> Spectrum<T> {
    pub fn from_values(mut values: Vec<T>) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        Spectrum { values }
    }

    /// Symmetric eigensolve of an integer matrix.
    pub fn of(m: &IntMatrix) -> Self {
        assert!(m.is_symmetric(), "spectrum needs a symmetric matrix");
        let n = m.rows();
        if n == 0 {
            return Spectrum { values: Vec::new() };
        }
        let dm = DMatrix::from_fn(n, n, |i, j| nalgebra::convert::<f64, T>(m[(i, j)] as f64));
        Self::from_values(SymmetricEigen::new(dm).eigenvalues.iter().copied().collect())
    }

    pub fn try_of(m: &IntMatrix, budget: usize) -> Result<Self> {
        if m.rows() > budget {
            return Err(Error::budget("eigensolve dimension", budget));
        }
        Ok(Self::of(m))
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest absolute eigenvalue.
    pub fn spectral_radius(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Self {
        Self::from_values(self.values.iter().chain(&other.values).copied().collect())
    }

    /// `{λ + μ}` over all pairs.
    pub fn pairwise_sums(&self, other: &Self) -> Self {
        Self::from_values(self.values.iter().flat_map(|&a| other.values.iter().map(move |&b| a + b)).collect())
    }

    /// `{λ μ}` over all pairs.
    pub fn pairwise_products(&self, other: &Self) -> Self {
        Self::from_values(self.values.iter().flat_map(|&a| other.values.iter().map(move |&b| a * b)).collect())
    }

    /// Largest gap between the sorted multisets; `None` if lengths differ.
    pub fn max_discrepancy(&self, other: &Self) -> Option<T> {
        (self.len() == other.len()).then(|| {
            self.values
                .iter()
                .zip(&other.values)
                .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs()))
        })
    }

    /// Multiset equality within `tol · max(1, ρ)`.
    pub fn matches(&self, other: &Self, tol: T) -> bool {
        let scale = T::one().max(self.spectral_radius()).max(other.spectral_radius());
        self.max_discrepancy(other).is_some_and(|d| d <= tol * scale)
    }

    pub fn contains(&self, x: T, tol: T) -> bool {
        self.values.iter().any(|v| (*v - x).abs() <= tol)
    }
}

pub type Spectrum32 = Spectrum<f32>;
pub type Spectrum64 = Spectrum<f64>;

/// Top Hodge block of the Whitney complex, `L_d = d_dᵀ d_d`. When the
/// complex is zero dimensional the boundary is augmented by the empty face,
/// so the block is the all-ones matrix.
pub fn volume_laplacian(g: &Graph, budget: usize) -> Result<IntMatrix> {
    let c = SimplicialComplex::whitney(g, DEFAULT_SIMPLEX_BUDGET)?;
    let chains = ChainComplex::of_simplicial(&c, budget)?;
    match c.dimension() {
        d if d < 0 => Ok(DenseMatrix::filled(0, 0, 0)),
        0 => Ok(DenseMatrix::filled(c.ground(), c.ground(), 1)),
        d => {
            let b = chains.boundary_matrix(d as usize);
            Ok(b.transpose().matmul(&b))
        }
    }
}

pub fn volume_laplacian_spectrum<T: RealField + Copy>(g: &Graph, budget: usize) -> Result<Spectrum<T>> {
    Ok(Spectrum::of(&volume_laplacian(g, budget)?))
}

/// Checks that `(d + dᵀ)²` vanishes off the diagonal blocks and that each
/// diagonal block equals the corresponding Hodge block.
pub fn hodge_is_block_diagonal(chains: &ChainComplex) -> bool {
    let d = chains.dirac();
    let h = d.matmul(&d);
    let offsets = chains.offsets();
    let sizes = chains.sizes();
    let dim_of = |i: usize| offsets.iter().rposition(|&o| o <= i).expect("offsets start at 0");
    for i in 0..h.rows() {
        for j in 0..h.cols() {
            let (a, b) = (dim_of(i), dim_of(j));
            if a != b && h[(i, j)] != 0 {
                return false;
            }
        }
    }
    (0..sizes.len()).all(|k| {
        let block = chains.hodge_block(k);
        (0..sizes[k]).all(|i| (0..sizes[k]).all(|j| block[(i, j)] == h[(offsets[k] + i, offsets[k] + j)]))
    })
}

/// Betti numbers as nullities of the Hodge blocks.
pub fn hodge_betti(chains: &ChainComplex) -> BettiVector {
    BettiVector(
        (0..chains.sizes().len())
            .map(|k| chains.sizes()[k] - exact_rank(&dense_to_columns(&chains.hodge_block(k))))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{product_cell_complex, tensor_product, weak_product};
    use crate::topology::DEFAULT_LINALG_BUDGET as LIN;

    fn w(g: &Graph) -> SimplicialComplex {
        SimplicialComplex::whitney(g, DEFAULT_SIMPLEX_BUDGET).unwrap()
    }

    #[test]
    fn kirchhoff_basics() {
        let s = Spectrum64::of(&kirchhoff(&Graph::complete(2)));
        assert!(s.matches(&Spectrum::from_values(vec![0.0, 2.0]), 1e-9));
        let g = Graph::cycle(5).unwrap();
        let h = Graph::kite();
        let sum = Spectrum64::of(&kirchhoff(&g.disjoint_union(&h)));
        assert!(sum.matches(&Spectrum64::of(&kirchhoff(&g)).union(&Spectrum64::of(&kirchhoff(&h))), 1e-6));
        let join = Spectrum64::of(&kirchhoff(&Graph::complete(2).join(&Graph::complete(2))));
        assert!(join.contains(4.0, 1e-9));
    }

    #[test]
    fn adjacency_products() {
        let g = Graph::kite();
        let h = Graph::cycle(5).unwrap();
        assert_eq!(adjacency(&tensor_product(&g, &h)), adjacency(&g).kron(&adjacency(&h)));
        let box_spec = Spectrum64::of(&adjacency(&weak_product(&g, &h)));
        let sums = Spectrum64::of(&adjacency(&g)).pairwise_sums(&Spectrum64::of(&adjacency(&h)));
        assert!(box_spec.matches(&sums, 1e-6));
        let f32s = Spectrum32::of(&adjacency(&weak_product(&g, &h)));
        assert_eq!(f32s.len(), 20);
    }

    #[test]
    fn connection_matrices() {
        assert_eq!(connection_matrix(&w(&Graph::complete(1)), 10).unwrap(), DenseMatrix::identity(1));
        let k2 = w(&Graph::complete(2));
        let l = connection_matrix(&k2, 10).unwrap();
        assert_eq!(l.rows(), 3);
        assert_eq!(integer_determinant(&l), BigInt::from(-1));
        assert_eq!(fermi_functional(&k2), -1);
        assert_eq!(energy(&w(&Graph::complete(1)), 10).unwrap(), 1);
        assert_eq!(energy(&w(&Graph::cycle(4).unwrap()), 100).unwrap(), 0);
        let cells = product_cell_complex(&Graph::complete(2), &Graph::complete(2), DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(energy(&cells, 100).unwrap(), 1);
        let oct = w(&Graph::octahedron());
        assert_eq!(energy(&oct, 100).unwrap(), 2);
        assert_eq!(connection_determinant(&oct, 100).unwrap(), BigInt::from(fermi_functional(&oct)));
    }

    #[test]
    fn tensor_connection_lemma() {
        let g = Graph::kite();
        let h = Graph::cycle(4).unwrap();
        let direct = connection_matrix_product(&g, &h, 1000).unwrap();
        let lg = connection_matrix(&w(&g), 100).unwrap();
        let lh = connection_matrix(&w(&h), 100).unwrap();
        assert_eq!(direct, lg.kron(&lh));
        let trivial = connection_matrix_product(&Graph::complete(1), &Graph::complete(1), 10).unwrap();
        assert_eq!(trivial, DenseMatrix::identity(1));
    }

    #[test]
    fn volume_laplacians() {
        let l = volume_laplacian(&Graph::complete(2), LIN).unwrap();
        assert_eq!(l, DenseMatrix::filled(1, 1, 2));
        let chains = ChainComplex::of_simplicial(&w(&Graph::complete(2)), LIN).unwrap();
        assert_eq!(chains.hodge_block(1), l);
        let pts = volume_laplacian(&Graph::points(3), LIN).unwrap();
        assert_eq!(pts, DenseMatrix::filled(3, 3, 1));
    }

    #[test]
    fn hodge_sanity() {
        for g in [Graph::kite(), Graph::octahedron(), Graph::cycle(5).unwrap(), Graph::complete_bipartite(2, 3)] {
            let chains = ChainComplex::of_simplicial(&w(&g), LIN).unwrap();
            assert!(hodge_is_block_diagonal(&chains));
            assert_eq!(hodge_betti(&chains), chains.betti());
        }
    }
}
