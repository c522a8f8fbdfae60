//! Euler characteristic, chain complexes, Betti numbers, the Wu
//! characteristic and a collapsibility test.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::canon::{canonical_form, CanonBudget, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{exact_rank, DenseMatrix, SparseColumn};
use crate::poly::Poly;
use crate::products::CellPairComplex;
use crate::simplicial::{SimplicialComplex, DEFAULT_SIMPLEX_BUDGET};

/// Default cap on the number of cells handed to exact linear algebra.
pub const DEFAULT_LINALG_BUDGET: usize = 3000;

/// A finite complex whose cells carry a dimension and an intersection
/// relation. Cell order is fixed by the implementor.
pub trait CellComplex {
    /// Dimension of every cell, in cell order.
    fn cell_dims(&self) -> Vec<usize>;

    /// For every cell, the set of cells it intersects (itself included).
    fn intersection_rows(&self) -> Vec<FixedBitSet>;

    fn cell_count(&self) -> usize {
        self.cell_dims().len()
    }

    fn cell_f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for d in self.cell_dims() {
            if f.len() <= d {
                f.resize(d + 1, 0);
            }
            f[d] += 1;
        }
        f
    }

    /// `Σ (-1)^dim` over all cells.
    fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.cell_f_vector())
    }
}

fn alternating_sum(f: &[usize]) -> i64 {
    f.iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

impl CellComplex for SimplicialComplex {
    fn cell_dims(&self) -> Vec<usize> {
        self.simplices().map(|s| s.len() - 1).collect()
    }

    fn intersection_rows(&self) -> Vec<FixedBitSet> {
        let n = self.len();
        let mut star = vec![FixedBitSet::with_capacity(n); self.ground()];
        for (i, s) in self.simplices().enumerate() {
            for &v in s {
                star[v].insert(i);
            }
        }
        self.simplices()
            .map(|s| {
                let mut row = FixedBitSet::with_capacity(n);
                for &v in s {
                    row.union_with(&star[v]);
                }
                row
            })
            .collect()
    }

    fn cell_f_vector(&self) -> Vec<usize> {
        self.f_vector()
    }
}

impl CellComplex for CellPairComplex {
    fn cell_dims(&self) -> Vec<usize> {
        self.dims().collect()
    }

    /// Cells `(x, y)` and `(a, b)` meet when `x ∩ a` and `y ∩ b` are both
    /// nonempty.
    fn intersection_rows(&self) -> Vec<FixedBitSet> {
        let left = self.left().intersection_rows();
        let right = self.right().intersection_rows();
        let m = right.len();
        let n = left.len() * m;
        let mut rows = Vec::with_capacity(n);
        for l in &left {
            for r in &right {
                let mut row = FixedBitSet::with_capacity(n);
                for a in l.ones() {
                    for b in r.ones() {
                        row.insert(a * m + b);
                    }
                }
                rows.push(row);
            }
        }
        rows
    }

    fn cell_f_vector(&self) -> Vec<usize> {
        self.f_vector()
    }
}

pub fn euler_characteristic<C: CellComplex + ?Sized>(c: &C) -> i64 {
    c.euler_characteristic()
}

/// Euler characteristic of the Whitney complex as a sum of vertex indices
/// `1 - χ(S⁻(v))`, where `S⁻(v)` is the unit sphere cut down to vertices
/// numbered below `v`. `budget` bounds the number of recursive calls.
pub fn euler_characteristic_poincare_hopf(g: &Graph, budget: usize) -> Result<i64> {
    fn go(g: &Graph, calls: &mut usize, budget: usize) -> Result<i64> {
        *calls += 1;
        if *calls > budget {
            return Err(Error::budget("poincare-hopf recursion", budget));
        }
        let n = g.order();
        if g.is_complete() {
            return Ok((n > 0) as i64);
        }
        if g.size() == 0 {
            return Ok(n as i64);
        }
        let mut chi = 0;
        for v in 0..n {
            let lower: Vec<usize> = g.neighbors(v).filter(|&u| u < v).collect();
            chi += 1 - go(&g.induced(&lower), calls, budget)?;
        }
        Ok(chi)
    }
    go(g, &mut 0, budget)
}

/// Betti numbers `b_0 … b_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.0)
    }

    pub fn poincare_polynomial(&self) -> Poly<i64> {
        Poly::new(self.0.iter().map(|&b| b as i64).collect())
    }
}

/// Oriented cells per dimension with integer boundary matrices. `d_k` maps
/// `k`-chains to `(k-1)`-chains and is stored as one sparse column per
/// `k`-cell; `d_0 = 0`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    sizes: Vec<usize>,
    boundaries: Vec<Vec<SparseColumn<i64>>>,
}

impl ChainComplex {
    /// Simplices carry ascending vertex order; the face omitting position
    /// `i` gets sign `(-1)^i`.
    pub fn of_simplicial(c: &SimplicialComplex, budget: usize) -> Result<Self> {
        if c.len() > budget {
            return Err(Error::budget("linear algebra cells", budget));
        }
        let dim = c.f_vector().len();
        let mut boundaries = vec![Vec::new()];
        for k in 1..dim {
            let below = c.level(k - 1);
            let cols = c
                .level(k)
                .iter()
                .map(|s| {
                    let mut col: SparseColumn<i64> = (0..s.len())
                        .map(|i| {
                            let mut face = s.clone();
                            face.remove(i);
                            let row = below.binary_search(&face).expect("complex is closed");
                            (row, if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundaries.push(cols);
        }
        Ok(ChainComplex {
            sizes: c.f_vector(),
            boundaries,
        })
    }

    /// Product boundary `d(x × y) = dx × y + (-1)^{dim x} x × dy`. Cells of
    /// each dimension are listed in the complex's row-major order.
    pub fn of_cells(c: &CellPairComplex, budget: usize) -> Result<Self> {
        if c.len() > budget {
            return Err(Error::budget("linear algebra cells", budget));
        }
        let left = ChainComplex::of_simplicial(c.left(), usize::MAX)?;
        let right = ChainComplex::of_simplicial(c.right(), usize::MAX)?;
        let (lf, rf) = (c.left().f_vector(), c.right().f_vector());
        let dim = c.f_vector().len();

        // Position of cell (p-cell i, q-cell j) inside dimension p + q.
        let mut position: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
        let mut sizes = vec![0usize; dim];
        for (p, &lp) in lf.iter().enumerate() {
            for (q, &rq) in rf.iter().enumerate() {
                for i in 0..lp {
                    for j in 0..rq {
                        position.insert((p, i, q, j), sizes[p + q]);
                        sizes[p + q] += 1;
                    }
                }
            }
        }
        let mut boundaries: Vec<Vec<SparseColumn<i64>>> = vec![Vec::new(); dim];
        for k in 1..dim {
            boundaries[k] = vec![Vec::new(); sizes[k]];
        }
        for (p, &lp) in lf.iter().enumerate() {
            for (q, &rq) in rf.iter().enumerate() {
                let k = p + q;
                if k == 0 {
                    continue;
                }
                let sign = if p % 2 == 0 { 1 } else { -1 };
                for i in 0..lp {
                    for j in 0..rq {
                        let mut col = Vec::new();
                        if p > 0 {
                            for &(a, v) in &left.boundaries[p][i] {
                                col.push((position[&(p - 1, a, q, j)], v));
                            }
                        }
                        if q > 0 {
                            for &(b, v) in &right.boundaries[q][j] {
                                col.push((position[&(p, i, q - 1, b)], sign * v));
                            }
                        }
                        col.sort_unstable();
                        boundaries[k][position[&(p, i, q, j)]] = col;
                    }
                }
            }
        }
        Ok(ChainComplex { sizes, boundaries })
    }

    /// Number of cells per dimension.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn dimension(&self) -> isize {
        self.sizes.len() as isize - 1
    }

    /// Sparse columns of `d_k`; empty for `k = 0` or `k > dim`.
    pub fn boundary(&self, k: usize) -> &[SparseColumn<i64>] {
        self.boundaries.get(k).map_or(&[], Vec::as_slice)
    }

    fn size(&self, k: isize) -> usize {
        if k < 0 {
            0
        } else {
            self.sizes.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// `d_k` as a dense `v_{k-1} × v_k` matrix.
    pub fn boundary_matrix(&self, k: usize) -> DenseMatrix<i64> {
        let mut m = DenseMatrix::filled(self.size(k as isize - 1), self.size(k as isize), 0i64);
        for (j, col) in self.boundary(k).iter().enumerate() {
            for &(i, v) in col {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Checks `d_{k} ∘ d_{k+1} = 0` for every `k`, exactly.
    pub fn is_chain_complex(&self) -> bool {
        (1..self.sizes.len()).all(|k| {
            let lower = self.boundary(k);
            self.boundary(k + 1).iter().all(|col| {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(face, v) in col {
                    for &(row, w) in &lower[face] {
                        *acc.entry(row).or_default() += v * w;
                    }
                }
                acc.values().all(|&x| x == 0)
            })
        })
    }

    /// Exact rank of `d_k` over the rationals.
    pub fn boundary_rank(&self, k: usize) -> usize {
        exact_rank(self.boundary(k))
    }

    /// `b_k = v_k - rank d_k - rank d_{k+1}`.
    pub fn betti(&self) -> BettiVector {
        let ranks: Vec<usize> = (0..=self.sizes.len()).map(|k| self.boundary_rank(k)).collect();
        BettiVector(
            self.sizes
                .iter()
                .enumerate()
                .map(|(k, &v)| v - ranks[k] - ranks[k + 1])
                .collect(),
        )
    }

    /// Hodge block `L_k = d_kᵀ d_k + d_{k+1} d_{k+1}ᵀ`.
    pub fn hodge_block(&self, k: usize) -> DenseMatrix<i64> {
        let down = self.boundary_matrix(k);
        let up = self.boundary_matrix(k + 1);
        &down.transpose().matmul(&down) + &up.matmul(&up.transpose())
    }

    /// Dirac operator `D = d + dᵀ` on all cells, dimensions concatenated.
    pub fn dirac(&self) -> DenseMatrix<i64> {
        let offsets: Vec<usize> = self
            .sizes
            .iter()
            .scan(0, |acc, &v| {
                let start = *acc;
                *acc += v;
                Some(start)
            })
            .collect();
        let n: usize = self.sizes.iter().sum();
        let mut d = DenseMatrix::filled(n, n, 0i64);
        for k in 1..self.sizes.len() {
            for (j, col) in self.boundary(k).iter().enumerate() {
                for &(i, v) in col {
                    let (r, c) = (offsets[k - 1] + i, offsets[k] + j);
                    d[(r, c)] = v;
                    d[(c, r)] = v;
                }
            }
        }
        d
    }

    /// Cell offset of each dimension inside [`Self::dirac`].
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut acc = 0;
        for &v in &self.sizes {
            out.push(acc);
            acc += v;
        }
        out
    }
}

pub fn betti(c: &SimplicialComplex, budget: usize) -> Result<BettiVector> {
    Ok(ChainComplex::of_simplicial(c, budget)?.betti())
}

pub fn poincare_polynomial(c: &SimplicialComplex, budget: usize) -> Result<Poly<i64>> {
    Ok(betti(c, budget)?.poincare_polynomial())
}

/// `Σ (-1)^{dim x + dim y}` over ordered pairs of intersecting cells.
/// `budget` caps the number of cells.
pub fn wu_characteristic<C: CellComplex + ?Sized>(c: &C, budget: usize) -> Result<i64> {
    let dims = c.cell_dims();
    if dims.len() > budget {
        return Err(Error::budget("wu cells", budget));
    }
    let sign = |d: usize| if d % 2 == 0 { 1i64 } else { -1 };
    let rows = c.intersection_rows();
    Ok(rows
        .iter()
        .enumerate()
        .map(|(i, row)| sign(dims[i]) * row.ones().map(|j| sign(dims[j])).sum::<i64>())
        .sum())
}

/// Outcome of a bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

/// Recursive collapsibility: `K1` is collapsible, and so is `G` when some
/// vertex has a collapsible unit sphere and removing it leaves a collapsible
/// graph. `Yes` certifies contractibility; `No` means the search was
/// exhaustive (or `χ ≠ 1` rules contractibility out); `Undecided` means
/// `budget` recursive evaluations were not enough.
pub fn is_contractible(g: &Graph, budget: usize) -> Verdict {
    let mut search = Collapse {
        memo: HashMap::new(),
        steps: 0,
        budget,
    };
    match search.collapsible(g) {
        Ok(true) => Verdict::Yes,
        Ok(false) => Verdict::No,
        Err(_) => Verdict::Undecided,
    }
}

struct Collapse {
    memo: HashMap<CanonicalForm, bool>,
    steps: usize,
    budget: usize,
}

impl Collapse {
    fn collapsible(&mut self, g: &Graph) -> Result<bool> {
        let n = g.order();
        if n == 0 || !g.is_connected() {
            return Ok(false);
        }
        if (0..n).any(|v| g.degree(v) == n - 1) {
            return Ok(true);
        }
        let key = canonical_form(g, &CanonBudget::default())?;
        if let Some(&known) = self.memo.get(&key) {
            return Ok(known);
        }
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::budget("collapse search", self.budget));
        }
        let chi = SimplicialComplex::whitney(g, DEFAULT_SIMPLEX_BUDGET)?.euler_characteristic();
        let mut found = false;
        if chi == 1 {
            for v in 0..n {
                if self.collapsible(&g.unit_sphere(v))? && self.collapsible(&g.remove_vertex(v))? {
                    found = true;
                    break;
                }
            }
        }
        self.memo.insert(key, found);
        Ok(found)
    }
}
