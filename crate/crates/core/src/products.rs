//! The five graph products and the product cell complex.
//!
//! Every product lives on the vertex set `V(G) × V(H)` (or on pairs of
//! simplices for the Cartesian product), with pair `(a, b)` numbered
//! `a |V(H)| + b`.

use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;
use crate::simplicial::{proper_faces, Simplex, SimplicialComplex};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rel {
    Same,
    Edge,
    Apart,
}

fn rel(g: &Graph, a: usize, c: usize) -> Rel {
    if a == c {
        Rel::Same
    } else if g.has_edge(a, c) {
        Rel::Edge
    } else {
        Rel::Apart
    }
}

fn product_by(g: &Graph, h: &Graph, adjacent: impl Fn(Rel, Rel) -> bool) -> Graph {
    let (n, m) = (g.order(), h.order());
    let mut out = Graph::empty_on(n * m);
    for u in 0..n * m {
        let (a, b) = (u / m, u % m);
        for v in u + 1..n * m {
            let (c, d) = (v / m, v % m);
            if adjacent(rel(g, a, c), rel(h, b, d)) {
                out.add_edge(u, v);
            }
        }
    }
    out
}

/// Weak (box) product `G □ H`: one coordinate equal, the other an edge.
pub fn weak_product(g: &Graph, h: &Graph) -> Graph {
    product_by(g, h, |x, y| {
        matches!((x, y), (Rel::Same, Rel::Edge) | (Rel::Edge, Rel::Same))
    })
}

/// Tensor (direct) product `G ⊗ H`: both coordinates edges.
pub fn tensor_product(g: &Graph, h: &Graph) -> Graph {
    product_by(g, h, |x, y| x == Rel::Edge && y == Rel::Edge)
}

/// Strong product `G ⊠ H`, the union of the weak and tensor edge sets.
pub fn strong_product(g: &Graph, h: &Graph) -> Graph {
    product_by(g, h, |x, y| x != Rel::Apart && y != Rel::Apart)
}

/// Zykov product `G · H`: an edge in either coordinate.
pub fn zykov_product(g: &Graph, h: &Graph) -> Graph {
    product_by(g, h, |x, y| x == Rel::Edge || y == Rel::Edge)
}

/// The Cartesian simplex product as a graph: vertices are pairs of simplices
/// of the Whitney complexes, joined when one pair contains the other
/// componentwise.
pub fn cartesian_graph(g: &Graph, h: &Graph, budget: usize) -> Result<Graph> {
    let cg = SimplicialComplex::whitney(g, budget)?;
    let ch = SimplicialComplex::whitney(h, budget)?;
    Ok(cartesian_of_complexes(&cg, &ch))
}

pub fn cartesian_of_complexes(cg: &SimplicialComplex, ch: &SimplicialComplex) -> Graph {
    let (ig, ih) = (cg.index(), ch.index());
    let m = ch.len();
    let mut out = Graph::empty_on(cg.len() * m);
    for (i, x) in cg.simplices().enumerate() {
        for (j, y) in ch.simplices().enumerate() {
            let top = i * m + j;
            let xs: Vec<usize> = proper_faces(x).map(|f| ig[f.as_slice()]).chain([i]).collect();
            let ys: Vec<usize> = proper_faces(y).map(|f| ih[f.as_slice()]).chain([j]).collect();
            for &a in &xs {
                for &b in &ys {
                    let below = a * m + b;
                    if below != top {
                        out.add_edge(below, top);
                    }
                }
            }
        }
    }
    out
}

/// Cells of the Cartesian product `G × H`: every pair of simplices, in
/// row-major order over the factors' simplex orders.
#[derive(Clone, Debug)]
pub struct CellPairComplex {
    left: SimplicialComplex,
    right: SimplicialComplex,
    cells: Vec<(Simplex, Simplex)>,
}

impl CellPairComplex {
    pub fn new(left: SimplicialComplex, right: SimplicialComplex) -> Self {
        let mut cells = Vec::with_capacity(left.len() * right.len());
        for x in left.simplices() {
            for y in right.simplices() {
                cells.push((x.clone(), y.clone()));
            }
        }
        CellPairComplex { left, right, cells }
    }

    pub fn left(&self) -> &SimplicialComplex {
        &self.left
    }

    pub fn right(&self) -> &SimplicialComplex {
        &self.right
    }

    pub fn cells(&self) -> &[(Simplex, Simplex)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `dim x + dim y` for each cell, in cell order.
    pub fn dims(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().map(|(x, y)| x.len() + y.len() - 2)
    }

    pub fn dimension(&self) -> isize {
        self.dims().max().map_or(-1, |d| d as isize)
    }

    /// Number of cells per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for d in self.dims() {
            if f.len() <= d {
                f.resize(d + 1, 0);
            }
            f[d] += 1;
        }
        f
    }

    /// `{"cells": [[[x...],[y...]],...]}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Cells<'a> {
            cells: &'a [(Simplex, Simplex)],
        }
        serde_json::to_string(&Cells { cells: &self.cells }).expect("cells serialize")
    }
}

pub fn product_cell_complex(g: &Graph, h: &Graph, budget: usize) -> Result<CellPairComplex> {
    Ok(CellPairComplex::new(
        SimplicialComplex::whitney(g, budget)?,
        SimplicialComplex::whitney(h, budget)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::DEFAULT_SIMPLEX_BUDGET as B;

    fn iso(a: &Graph, b: &Graph) -> bool {
        a.is_isomorphic(b).unwrap()
    }

    #[test]
    fn small_products() {
        let k1 = Graph::complete(1);
        let k2 = Graph::complete(2);
        let k3 = Graph::complete(3);
        let c4 = Graph::cycle(4).unwrap();
        assert!(iso(&weak_product(&k2, &k2), &c4));
        assert!(iso(&tensor_product(&k2, &k2), &k2.disjoint_union(&k2)));
        assert!(iso(&tensor_product(&k2, &k3), &Graph::cycle(6).unwrap()));
        assert_eq!(strong_product(&k2, &k2), Graph::complete(4));
        assert_eq!(strong_product(&k2, &k3), Graph::complete(6));
        assert_eq!(zykov_product(&k2, &k2), Graph::complete(4));
        assert_eq!(zykov_product(&k2, &k3), Graph::complete(6));
        assert_eq!(zykov_product(&Graph::points(2), &Graph::points(3)), Graph::points(6));
        assert!(iso(&zykov_product(&k2, &Graph::points(2)), &c4));
        let g = Graph::kite();
        assert_eq!(weak_product(&g, &k1), g);
        assert_eq!(strong_product(&g, &k1), g);
        assert!(tensor_product(&g, &Graph::empty()).is_empty());
    }

    #[test]
    fn strong_is_union_of_weak_and_tensor() {
        let g = Graph::kite();
        let h = Graph::cycle(5).unwrap();
        let (w, t, s) = (weak_product(&g, &h), tensor_product(&g, &h), strong_product(&g, &h));
        let mut both = w.edges();
        both.extend(t.edges());
        both.sort_unstable();
        assert_eq!(both, s.edges());
    }

    #[test]
    fn cartesian() {
        let k1 = Graph::complete(1);
        let k2 = Graph::complete(2);
        let c4 = Graph::cycle(4).unwrap();
        assert!(iso(&cartesian_graph(&c4, &k1, B).unwrap(), &Graph::cycle(8).unwrap()));
        let w = cartesian_graph(&k2, &k2, B).unwrap();
        assert_eq!((w.order(), w.size()), (9, 16));
        assert!(iso(&w, &Graph::wheel(8).unwrap()));
        // Not associative: (K2 × K1) × K1 is the second refinement.
        let lhs = cartesian_graph(&cartesian_graph(&k2, &k1, B).unwrap(), &k1, B).unwrap();
        let rhs = cartesian_graph(&k2, &cartesian_graph(&k1, &k1, B).unwrap(), B).unwrap();
        assert!(!iso(&lhs, &rhs));
        assert!(iso(&rhs, &Graph::linear(2)));
        assert!(iso(&lhs, &Graph::linear(4)));
    }

    #[test]
    fn cell_complex() {
        let k1 = Graph::complete(1);
        let k2 = Graph::complete(2);
        assert_eq!(product_cell_complex(&k1, &k1, B).unwrap().len(), 1);
        let c = product_cell_complex(&k2, &k2, B).unwrap();
        assert_eq!(c.f_vector(), vec![4, 4, 1]);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(product_cell_complex(&c4, &c4, B).unwrap().len(), 64);
        let json = product_cell_complex(&k1, &k2, B).unwrap().to_json();
        assert_eq!(json, r#"{"cells":[[[0],[0]],[[0],[1]],[[0],[0,1]]]}"#);
    }
}
