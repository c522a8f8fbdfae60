//! Finite simple graphs, named families, complement and the two additions.
//!
//! Vertices are `0..n`. Adjacency is stored as one bitset row per vertex so
//! that clique expansion and partition refinement can work on whole words.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::canon::{self, CanonBudget};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphJson", try_from = "GraphJson")]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// Builds a graph from an edge list. Pairs may come in either order and
    /// duplicates are merged silently.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty_on(n);
        for (a, b) in edges {
            if a >= n {
                return Err(Error::EndpointOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(Error::EndpointOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    /// The graph with zero vertices, the additive zero of both additions.
    pub fn empty() -> Self {
        Graph::empty_on(0)
    }

    /// `n` isolated vertices. Same as [`Graph::points`].
    pub fn empty_on(n: usize) -> Self {
        Graph {
            n,
            adj: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect(),
        }
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b && a < self.n && b < self.n);
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].contains(b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub(crate) fn row(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    /// Edges as sorted pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for i in 0..self.n {
            for j in self.adj[i].ones() {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n;
        n < 2 || self.size() == n * (n - 1) / 2
    }

    pub fn complement(&self) -> Graph {
        let n = self.n;
        let adj = (0..n)
            .map(|v| {
                let mut row = self.adj[v].clone();
                row.toggle_range(..);
                row.set(v, false);
                row
            })
            .collect();
        Graph { n, adj }
    }

    /// Disjoint union: the second operand's labels are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::empty_on(n);
        for (a, b) in self.edges() {
            g.add_edge(a, b);
        }
        for (a, b) in other.edges() {
            g.add_edge(a + self.n, b + self.n);
        }
        g
    }

    /// Zykov join: disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for a in 0..self.n {
            for b in 0..other.n {
                g.add_edge(a, self.n + b);
            }
        }
        g
    }

    /// Subgraph induced on `vertices`; vertex `k` of the result is `vertices[k]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty_on(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.adj[a].contains(b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Unit sphere of `v`: the subgraph induced on its neighbours.
    pub fn unit_sphere(&self, v: usize) -> Graph {
        let nb: Vec<usize> = self.adj[v].ones().collect();
        self.induced(&nb)
    }

    /// Graph with vertex `v` removed; later vertices shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Relabels so that old vertex `order[k]` becomes vertex `k`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        assert_eq!(order.len(), self.n);
        self.induced(order)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn component_sets(&self) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in self.adj[v].ones() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_sets().len() == 1
    }

    /// Connected components as graphs, sorted by canonical form so equal
    /// classes are adjacent.
    pub fn connected_components(&self) -> Result<Vec<Graph>> {
        let mut keyed = self
            .component_sets()
            .into_iter()
            .map(|c| {
                let g = self.induced(&c);
                canon::canonical_form(&g, &CanonBudget::default()).map(|f| (f, g))
            })
            .collect::<Result<Vec<_>>>()?;
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(keyed.into_iter().map(|(_, g)| g).collect())
    }

    pub fn is_isomorphic(&self, other: &Graph) -> Result<bool> {
        canon::is_isomorphic(self, other, &CanonBudget::default())
    }

    // Named families.

    /// `P_n`: `n` isolated points.
    pub fn points(n: usize) -> Graph {
        Graph::empty_on(n)
    }

    /// `K_n`.
    pub fn complete(n: usize) -> Graph {
        Graph::points(n).complement()
    }

    /// `C_n` for `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParameter {
                family: "C".into(),
                reason: format!("cycle needs at least 3 vertices, got {n}"),
            });
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// `L_n`: the linear graph of length `n` (n edges, n + 1 vertices).
    pub fn linear(n: usize) -> Graph {
        Graph::new(n + 1, (0..n).map(|i| (i, i + 1))).expect("path edges are valid")
    }

    /// `S_n = K_1 + P_n`, the star with `n` leaves.
    pub fn star(n: usize) -> Graph {
        Graph::complete(1).join(&Graph::points(n))
    }

    /// `W_n = K_1 + C_n`.
    pub fn wheel(n: usize) -> Result<Graph> {
        Ok(Graph::complete(1).join(&Graph::cycle(n)?))
    }

    /// `K_{n,m} = P_n + P_m`.
    pub fn complete_bipartite(n: usize, m: usize) -> Graph {
        Graph::points(n).join(&Graph::points(m))
    }

    /// Cross polytope `S^d`: the join of `d + 1` copies of `P_2`.
    pub fn cross_polytope(d: usize) -> Graph {
        (0..=d).fold(Graph::empty(), |acc, _| acc.join(&Graph::points(2)))
    }

    pub fn octahedron() -> Graph {
        Graph::cross_polytope(2)
    }

    /// Kite `P_2 + K_2`.
    pub fn kite() -> Graph {
        Graph::points(2).join(&Graph::complete(2))
    }

    /// Windmill `P_3 + K_2`.
    pub fn windmill() -> Graph {
        Graph::points(3).join(&Graph::complete(2))
    }

    /// Bouquet `B_k`: `k` copies of `C_4` sharing vertex 0.
    pub fn bouquet(k: usize) -> Graph {
        let n = 1 + 3 * k;
        let mut edges = Vec::with_capacity(4 * k);
        for f in 0..k {
            let a = 1 + 3 * f;
            edges.extend([(0, a), (a, a + 1), (a + 1, a + 2), (a + 2, 0)]);
        }
        Graph::new(n, edges).expect("bouquet edges are valid")
    }

    /// Builds a member of a named family.
    pub fn named(family: Family) -> Result<Graph> {
        Ok(match family {
            Family::Complete(n) => Graph::complete(n),
            Family::Points(n) => Graph::points(n),
            Family::Cycle(n) => Graph::cycle(n)?,
            Family::Star(n) => Graph::star(n),
            Family::Wheel(n) => Graph::wheel(n)?,
            Family::Linear(n) => Graph::linear(n),
            Family::CompleteBipartite(n, m) => Graph::complete_bipartite(n, m),
            Family::CrossPolytope(d) => Graph::cross_polytope(d),
            Family::Octahedron => Graph::octahedron(),
            Family::Kite => Graph::kite(),
            Family::Windmill => Graph::windmill(),
            Family::Bouquet(k) => Graph::bouquet(k),
        })
    }
}

/// Wire format `{"n": .., "edges": [[i, j], ..]}` with `i < j`, sorted.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Graph> {
        Graph::new(j.n, j.edges)
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graphs serialize")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        Ok(serde_json::from_str(text)?)
    }

    /// `n m` on the first line, then one `i j` line per edge.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (a, b) in edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut nums = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Invalid(format!("bad integer {t:?} in edge list")))
        });
        let mut next = |what: &str| {
            nums.next()
                .unwrap_or_else(|| Err(Error::Invalid(format!("edge list ended before {what}"))))
        };
        let n = next("vertex count")?;
        let m = next("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            edges.push((next("an endpoint")?, next("an endpoint")?));
        }
        if nums.next().is_some() {
            return Err(Error::Invalid("trailing data after edge list".into()));
        }
        Graph::new(n, edges)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Named graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Complete(usize),
    Points(usize),
    Cycle(usize),
    Star(usize),
    Wheel(usize),
    Linear(usize),
    CompleteBipartite(usize, usize),
    CrossPolytope(usize),
    Octahedron,
    Kite,
    Windmill,
    Bouquet(usize),
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_normalizes_and_dedups() {
        let g = Graph::new(4, [(1, 0), (0, 1), (2, 3)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (2, 3)]);
        assert!(Graph::new(0, []).unwrap().is_empty());
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, Graph::complete(3));
    }

    #[test]
    fn new_rejects_bad_edges() {
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(Error::EndpointOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1))));
    }

    #[test]
    fn families() {
        assert!(Graph::cycle(2).is_err());
        assert_eq!(Graph::cycle(3).unwrap(), Graph::complete(3));
        let s3 = Graph::cross_polytope(3);
        assert_eq!((s3.order(), s3.size()), (8, 24));
        assert_eq!(Graph::octahedron().size(), 12);
        assert_eq!(Graph::star(4).size(), 4);
        assert_eq!(Graph::linear(2).order(), 3);
        let b2 = Graph::bouquet(2);
        assert_eq!((b2.order(), b2.size(), b2.degree(0)), (7, 8, 4));
    }

    #[test]
    fn complement_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let k2k2 = Graph::complete(2).disjoint_union(&Graph::complete(2));
        assert!(c4.complement().is_isomorphic(&k2k2).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        assert!(c5.complement().is_isomorphic(&c5).unwrap());
        assert_eq!(Graph::complete(6).complement(), Graph::points(6));
        assert_eq!(c5.complement().complement(), c5);
    }

    #[test]
    fn additions() {
        assert_eq!(Graph::points(2).disjoint_union(&Graph::points(3)), Graph::points(5));
        let g = Graph::cycle(5).unwrap();
        assert_eq!(g.disjoint_union(&Graph::empty()), g);
        assert_eq!(g.join(&Graph::empty()), g);
        let c = Graph::cycle(4).unwrap().disjoint_union(&g);
        assert_eq!(c.component_sets().len(), 2);
        assert_eq!(Graph::complete(2).join(&Graph::complete(3)), Graph::complete(5));
        let k23 = Graph::points(2).join(&Graph::points(3));
        assert_eq!(k23.size(), 6);
        let w5 = Graph::complete(1).join(&Graph::cycle(5).unwrap());
        assert_eq!(w5, Graph::wheel(5).unwrap());
    }

    #[test]
    fn formats_round_trip() {
        let g = Graph::kite();
        assert_eq!(g.to_json(), r#"{"n":4,"edges":[[0,2],[0,3],[1,2],[1,3],[2,3]]}"#);
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(Graph::from_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
        assert!(Graph::from_edge_list("3 2\n0 1\n").is_err());
        assert!(g.to_dot().contains("2 -- 3;"));
    }

    #[test]
    fn components_sorted() {
        let k2 = Graph::complete(2);
        let comps = k2.disjoint_union(&k2).connected_components().unwrap();
        assert_eq!(comps, vec![k2.clone(), k2]);
        let kb = Graph::complete_bipartite(2, 3).complement();
        let comps = kb.connected_components().unwrap();
        assert_eq!(comps.len(), 2);
        let sizes: Vec<usize> = comps.iter().map(Graph::order).collect();
        assert!(sizes.contains(&2) && sizes.contains(&3));
        assert!(comps.iter().all(Graph::is_complete));
    }
}
