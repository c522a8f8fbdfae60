//! Simplicial complexes: Whitney (clique) complexes, f-vectors, refinement,
//! and the complex-level join and Zykov product.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::Poly;

/// A simplex is a sorted, nonempty list of ground-set vertices.
pub type Simplex = Vec<usize>;

/// Default cap on the number of simplices any enumeration may produce.
pub const DEFAULT_SIMPLEX_BUDGET: usize = 200_000;

/// A finite abstract simplicial complex. Simplices are grouped by dimension
/// and sorted lexicographically inside each dimension; that order is the
/// global simplex order used by boundary and connection matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: usize,
    by_dim: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty(ground: usize) -> Self {
        SimplicialComplex {
            ground,
            by_dim: Vec::new(),
        }
    }

    /// Builds from an arbitrary simplex list. Fails if the list is not closed
    /// under taking nonempty subsets or mentions a vertex outside the ground set.
    pub fn from_simplices<I>(ground: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let c = Self::collect(ground, simplices)?;
        if let Some(bad) = c.first_unclosed() {
            return Err(Error::Invalid(format!("simplex {bad:?} has a missing face")));
        }
        Ok(c)
    }

    fn collect<I>(ground: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            if let Some(&v) = s.iter().find(|&&v| v >= ground) {
                return Err(Error::EndpointOutOfRange { vertex: v, n: ground });
            }
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(s);
        }
        for level in &mut by_dim {
            level.sort_unstable();
            level.dedup();
        }
        Ok(SimplicialComplex { ground, by_dim })
    }

    /// Subset closure of the given facets.
    pub fn from_facets<I>(ground: usize, facets: I, budget: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut all: HashSet<Simplex> = HashSet::new();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if f.len() >= usize::BITS as usize {
                return Err(Error::budget("facet size", usize::BITS as usize - 1));
            }
            for mask in 1usize..(1 << f.len()) {
                let s: Simplex = f
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                all.insert(s);
                if all.len() > budget {
                    return Err(Error::budget("simplices", budget));
                }
            }
        }
        Self::collect(ground, all)
    }

    /// The Whitney complex: every nonempty vertex set that spans a clique.
    pub fn whitney(g: &Graph, budget: usize) -> Result<Self> {
        let n = g.order();
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        let mut count = 0usize;
        let mut clique = Vec::new();
        let mut all = FixedBitSet::with_capacity(n);
        all.insert_range(..);
        expand_cliques(g, &mut clique, &all, &mut by_dim, &mut count, budget)?;
        for level in &mut by_dim {
            level.sort_unstable();
        }
        Ok(SimplicialComplex { ground: n, by_dim })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Simplices of dimension `k`.
    pub fn level(&self, k: usize) -> &[Simplex] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    /// All simplices, ordered by (dimension, lexicographic).
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    /// Position of every simplex in [`Self::simplices`] order.
    pub fn index(&self) -> HashMap<&[usize], usize> {
        self.simplices().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Maximal simplex dimension; `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.by_dim.len() as isize - 1
    }

    /// Clique number, `dim + 1`.
    pub fn clique_number(&self) -> usize {
        self.by_dim.len()
    }

    /// Number of top-dimensional simplices (zero for the empty complex).
    pub fn volume(&self) -> usize {
        self.by_dim.last().map_or(0, Vec::len)
    }

    /// `1 + v_0 x + v_1 x^2 + ...`
    pub fn f_generating_function(&self) -> Poly<i64> {
        let mut c = vec![1i64];
        c.extend(self.by_dim.iter().map(|l| l.len() as i64));
        Poly::new(c)
    }

    /// Facets: simplices contained in no larger simplex.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (d, level) in self.by_dim.iter().enumerate() {
            let above: HashSet<&[usize]> = self.level(d + 1).iter().map(Vec::as_slice).collect();
            for s in level {
                let covered = (0..self.ground).any(|v| {
                    if s.binary_search(&v).is_ok() {
                        return false;
                    }
                    let mut t = s.clone();
                    t.push(v);
                    t.sort_unstable();
                    above.contains(t.as_slice())
                });
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    fn first_unclosed(&self) -> Option<&Simplex> {
        for d in 1..self.by_dim.len() {
            let below: HashSet<&[usize]> = self.by_dim[d - 1].iter().map(Vec::as_slice).collect();
            for s in &self.by_dim[d] {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if !below.contains(f.as_slice()) {
                        return Some(s);
                    }
                }
            }
        }
        None
    }

    pub fn is_closed(&self) -> bool {
        self.first_unclosed().is_none()
    }

    /// Graph on the simplices with an edge for every proper containment.
    pub fn barycentric_refinement(&self) -> Graph {
        let index = self.index();
        let mut g = Graph::empty_on(self.len());
        for (j, s) in self.simplices().enumerate() {
            for face in proper_faces(s) {
                g.add_edge(index[face.as_slice()], j);
            }
        }
        g
    }

    /// Join with the second operand's ground set shifted past the first.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.ground;
        let mut all: Vec<Simplex> = self.simplices().cloned().collect();
        let shifted: Vec<Simplex> = other
            .simplices()
            .map(|y| y.iter().map(|v| v + shift).collect())
            .collect();
        for x in self.simplices() {
            for y in &shifted {
                let mut u = x.clone();
                u.extend_from_slice(y);
                all.push(u);
            }
        }
        all.extend(shifted);
        Self::collect(self.ground + other.ground, all).expect("join stays within the ground set")
    }

    /// `{ A ⊂ X × Y : π1(A) ∈ self or π2(A) ∈ other }` over the ground set
    /// `X × Y`, pair `(i, j)` numbered `i |Y| + j`.
    pub fn zykov_product(&self, other: &SimplicialComplex, budget: usize) -> Result<SimplicialComplex> {
        let (nx, ny) = (self.ground, other.ground);
        if nx == 0 || ny == 0 {
            return Err(Error::Invalid("Zykov product of complexes needs nonempty ground sets".into()));
        }
        let estimate = |c: &SimplicialComplex, fibre: usize| -> f64 {
            let choices = 2f64.powi(fibre as i32) - 1.0;
            c.simplices().map(|s| choices.powi(s.len() as i32)).sum()
        };
        if estimate(self, ny) + estimate(other, nx) > budget as f64 {
            return Err(Error::budget("simplices", budget));
        }
        let mut out: HashSet<Simplex> = HashSet::new();
        for x in self.simplices() {
            fibred_sets(x, ny, &mut |pairs| {
                out.insert(pairs.iter().map(|&(a, b)| a * ny + b).collect());
            });
        }
        for y in other.simplices() {
            fibred_sets(y, nx, &mut |pairs| {
                out.insert(pairs.iter().map(|&(b, a)| a * ny + b).collect());
            });
        }
        Self::collect(nx * ny, out)
    }
}

/// Calls `f` with every set of pairs `(s_i, t)` whose first projection is
/// exactly `base`, with every fibre a nonempty subset of `0..fibre`.
fn fibred_sets(base: &[usize], fibre: usize, f: &mut dyn FnMut(&[(usize, usize)])) {
    fn go(base: &[usize], fibre: usize, acc: &mut Vec<(usize, usize)>, f: &mut dyn FnMut(&[(usize, usize)])) {
        let Some((&a, rest)) = base.split_first() else {
            f(acc);
            return;
        };
        for mask in 1usize..(1 << fibre) {
            let before = acc.len();
            acc.extend((0..fibre).filter(|t| mask >> t & 1 == 1).map(|t| (a, t)));
            go(rest, fibre, acc, f);
            acc.truncate(before);
        }
    }
    go(base, fibre, &mut Vec::new(), f);
}

/// All nonempty proper subsets of a sorted simplex.
pub(crate) fn proper_faces(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    let k = s.len();
    (1usize..(1 << k) - 1).map(move |mask| {
        s.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

fn expand_cliques(
    g: &Graph,
    clique: &mut Vec<usize>,
    candidates: &FixedBitSet,
    by_dim: &mut Vec<Vec<Simplex>>,
    count: &mut usize,
    budget: usize,
) -> Result<()> {
    for v in candidates.ones() {
        clique.push(v);
        *count += 1;
        if *count > budget {
            return Err(Error::budget("simplices", budget));
        }
        let d = clique.len() - 1;
        if by_dim.len() <= d {
            by_dim.push(Vec::new());
        }
        by_dim[d].push(clique.clone());
        let mut next = candidates.clone();
        next.intersect_with(g.row(v));
        next.set_range(..v + 1, false);
        if !next.is_clear() {
            expand_cliques(g, clique, &next, by_dim, count, budget)?;
        }
        clique.pop();
    }
    Ok(())
}

/// Maximal cliques by Bron–Kerbosch with Tomita pivoting.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    fn bk(g: &Graph, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet, out: &mut Vec<Vec<usize>>) {
        if p.is_clear() {
            if x.is_clear() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| g.row(u).intersection_count(&p))
            .unwrap();
        let mut todo = p.clone();
        todo.difference_with(g.row(pivot));
        for v in todo.ones() {
            let mut np = p.clone();
            np.intersect_with(g.row(v));
            let mut nx = x.clone();
            nx.intersect_with(g.row(v));
            r.push(v);
            bk(g, r, np, nx, out);
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
    }
    let n = g.order();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    bk(g, &mut Vec::new(), p, FixedBitSet::with_capacity(n), &mut out);
    out.sort();
    out
}

/// Size of a largest clique, by exhaustive Bron–Kerbosch search.
pub fn max_clique_size(g: &Graph) -> usize {
    maximal_cliques(g).iter().map(Vec::len).max().unwrap_or(0)
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    facets: Vec<Simplex>,
}

impl SimplicialComplex {
    /// `{"facets": [[v,...],...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexJson {
            facets: self.facets(),
        })
        .expect("facets serialize")
    }

    /// Reads `{"facets": ...}` and regenerates the subset closure. The ground
    /// set is `0..=max vertex`.
    pub fn from_json(text: &str) -> Result<Self> {
        let c: ComplexJson = serde_json::from_str(text)?;
        let ground = c.facets.iter().flatten().max().map_or(0, |m| m + 1);
        Self::from_facets(ground, c.facets, DEFAULT_SIMPLEX_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn whitney(g: &Graph) -> SimplicialComplex {
        SimplicialComplex::whitney(g, DEFAULT_SIMPLEX_BUDGET).unwrap()
    }

    #[test]
    fn f_vectors() {
        assert_eq!(whitney(&Graph::complete(3)).f_vector(), vec![3, 3, 1]);
        assert_eq!(whitney(&Graph::cycle(4).unwrap()).f_vector(), vec![4, 4]);
        assert_eq!(whitney(&Graph::empty()).f_vector(), Vec::<usize>::new());
        let k5 = whitney(&Graph::complete(5));
        assert_eq!((k5.clique_number(), k5.dimension(), k5.volume()), (5, 4, 1));
        assert_eq!(whitney(&Graph::points(4)).clique_number(), 1);
        assert_eq!(whitney(&Graph::octahedron()).f_vector(), vec![6, 12, 8]);
    }

    #[test]
    fn generating_function() {
        assert_eq!(whitney(&Graph::points(5)).f_generating_function().coeffs(), &[1, 5]);
        assert_eq!(whitney(&Graph::complete(2)).f_generating_function().coeffs(), &[1, 2, 1]);
    }

    #[test]
    fn budget_is_enforced() {
        let r = SimplicialComplex::whitney(&Graph::complete(12), 1000);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn closure_is_checked() {
        assert!(SimplicialComplex::from_simplices(3, vec![vec![0, 1]]).is_err());
        let c = SimplicialComplex::from_simplices(3, vec![vec![0], vec![1], vec![1, 0]]).unwrap();
        assert_eq!(c.f_vector(), vec![2, 1]);
        assert!(SimplicialComplex::from_simplices(2, vec![vec![5]]).is_err());
    }

    #[test]
    fn refinements() {
        let r = whitney(&Graph::complete(2)).barycentric_refinement();
        assert!(r.is_isomorphic(&Graph::linear(2)).unwrap());
        let r = whitney(&Graph::cycle(4).unwrap()).barycentric_refinement();
        assert!(r.is_isomorphic(&Graph::cycle(8).unwrap()).unwrap());
        let r = whitney(&Graph::complete(3)).barycentric_refinement();
        assert!(r.is_isomorphic(&Graph::wheel(6).unwrap()).unwrap());
    }

    #[test]
    fn joins() {
        let p = whitney(&Graph::points(1));
        assert_eq!(p.join(&p), whitney(&Graph::complete(2)));
        let a = whitney(&Graph::cycle(4).unwrap());
        let b = whitney(&Graph::complete(2));
        let j = a.join(&b);
        assert!(j.is_closed());
        assert_eq!(j, whitney(&Graph::cycle(4).unwrap().join(&Graph::complete(2))));
        assert_eq!(
            j.f_generating_function(),
            a.f_generating_function() * b.f_generating_function()
        );
    }

    #[test]
    fn zykov_product_of_complexes() {
        let pt = whitney(&Graph::points(1));
        assert_eq!(pt.zykov_product(&pt, 100).unwrap(), pt);

        // Brute force over all subsets of the 4-point ground set.
        let k2 = whitney(&Graph::complete(2));
        let prod = k2.zykov_product(&k2, 1000).unwrap();
        let member = |s: &[usize], c: &SimplicialComplex| c.level(s.len() - 1).iter().any(|t| t == s);
        let mut expected = vec![0usize; 4];
        for mask in 1u32..16 {
            let a: Vec<(usize, usize)> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| (i / 2, i % 2)).collect();
            let mut p1: Vec<usize> = a.iter().map(|p| p.0).collect();
            p1.dedup();
            let mut p2: Vec<usize> = a.iter().map(|p| p.1).collect();
            p2.sort_unstable();
            p2.dedup();
            if member(&p1, &k2) || member(&p2, &k2) {
                expected[a.len() - 1] += 1;
            }
        }
        assert_eq!(prod.f_vector(), expected);
        assert!(prod.is_closed());
        assert!(pt.zykov_product(&SimplicialComplex::empty(0), 10).is_err());
    }

    #[test]
    fn max_clique() {
        assert_eq!(max_clique_size(&Graph::cycle(5).unwrap()), 2);
        assert_eq!(max_clique_size(&Graph::complete(6)), 6);
        assert_eq!(max_clique_size(&Graph::octahedron()), 3);
        assert_eq!(maximal_cliques(&Graph::cycle(4).unwrap()).len(), 4);
    }

    #[test]
    fn complex_json() {
        let c = whitney(&Graph::kite());
        let back = SimplicialComplex::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(c.to_json(), r#"{"facets":[[0,2,3],[1,2,3]]}"#);
    }
}
