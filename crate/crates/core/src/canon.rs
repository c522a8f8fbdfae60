//! Exact canonical labeling.
//!
//! A graph is first split into connected components, or into
//! co-components when its complement is disconnected; each part is labeled
//! recursively and the parts are concatenated in sorted order. Parts that are
//! connected and co-connected have their twin classes collapsed into a
//! vertex-colored quotient, which is labeled by individualization and
//! refinement. The search keeps the leaf with the largest (trace, adjacency)
//! key and prunes with the automorphisms it discovers, so the result is a
//! true canonical form: two graphs get the same form iff they are isomorphic.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Adjacency bitstring of the canonically relabeled graph, upper triangle in
/// row-major order, packed most significant bit first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    fn of_labeling(g: &Graph, order: &[usize]) -> Self {
        let n = order.len();
        let total = n * n.saturating_sub(1) / 2;
        let mut bits = vec![0u64; total.div_ceil(64)];
        let mut k = 0;
        for i in 0..n {
            let row = g.row(order[i]);
            for &w in &order[i + 1..] {
                if row.contains(w) {
                    bits[k / 64] |= 1 << (63 - k % 64);
                }
                k += 1;
            }
        }
        CanonicalForm { n, bits }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The canonically labeled representative.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty_on(self.n);
        let mut k = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.bits[k / 64] >> (63 - k % 64) & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }
}

/// Limit on search-tree nodes across one canonical labeling.
#[derive(Clone, Debug)]
pub struct CanonBudget {
    pub max_nodes: usize,
}

impl Default for CanonBudget {
    fn default() -> Self {
        CanonBudget {
            max_nodes: 2_000_000,
        }
    }
}

/// Returns the canonical form and the labeling `order` such that
/// `g.permuted(&order)` is the canonical representative.
pub fn canonical_labeling(g: &Graph, budget: &CanonBudget) -> Result<(CanonicalForm, Vec<usize>)> {
    let mut nodes = 0usize;
    let order = label(g, &mut nodes, budget)?;
    Ok((CanonicalForm::of_labeling(g, &order), order))
}

pub fn canonical_form(g: &Graph, budget: &CanonBudget) -> Result<CanonicalForm> {
    canonical_labeling(g, budget).map(|(f, _)| f)
}

/// Exact isomorphism test. Fails with [`Error::Undecided`] only when the
/// search budget runs out.
pub fn is_isomorphic(g: &Graph, h: &Graph, budget: &CanonBudget) -> Result<bool> {
    if g.order() != h.order() || g.size() != h.size() {
        return Ok(false);
    }
    let degs = |x: &Graph| {
        let mut d: Vec<usize> = (0..x.order()).map(|v| x.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degs(g) != degs(h) {
        return Ok(false);
    }
    Ok(canonical_form(g, budget)? == canonical_form(h, budget)?)
}

fn label(g: &Graph, nodes: &mut usize, budget: &CanonBudget) -> Result<Vec<usize>> {
    let n = g.order();
    if n <= 1 {
        return Ok((0..n).collect());
    }
    let comps = g.component_sets();
    if comps.len() > 1 {
        return label_parts(g, comps, nodes, budget);
    }
    let co = g.complement().component_sets();
    if co.len() > 1 {
        return label_parts(g, co, nodes, budget);
    }
    label_prime(g, nodes, budget)
}

fn label_parts(
    g: &Graph,
    parts: Vec<Vec<usize>>,
    nodes: &mut usize,
    budget: &CanonBudget,
) -> Result<Vec<usize>> {
    let mut keyed = Vec::with_capacity(parts.len());
    for part in parts {
        let sub = g.induced(&part);
        let sub_order = label(&sub, nodes, budget)?;
        let form = CanonicalForm::of_labeling(&sub, &sub_order);
        let order: Vec<usize> = sub_order.iter().map(|&i| part[i]).collect();
        keyed.push((form, order));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().flat_map(|(_, o)| o).collect())
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum TwinKind {
    Single,
    False,
    True,
}

/// Collapses twin classes, labels the colored quotient, then expands.
fn label_prime(g: &Graph, nodes: &mut usize, budget: &CanonBudget) -> Result<Vec<usize>> {
    let n = g.order();
    let mut open: HashMap<&FixedBitSet, Vec<usize>> = HashMap::new();
    for v in 0..n {
        open.entry(g.row(v)).or_default().push(v);
    }
    let mut closed_rows: Vec<FixedBitSet> = Vec::with_capacity(n);
    for v in 0..n {
        let mut r = g.row(v).clone();
        r.insert(v);
        closed_rows.push(r);
    }
    let mut closed: HashMap<&FixedBitSet, Vec<usize>> = HashMap::new();
    for (v, row) in closed_rows.iter().enumerate() {
        closed.entry(row).or_default().push(v);
    }

    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<(TwinKind, Vec<usize>)> = Vec::new();
    for v in 0..n {
        if class_of[v] != usize::MAX {
            continue;
        }
        let (kind, members) = match (&open[g.row(v)], &closed[&closed_rows[v]]) {
            (o, _) if o.len() > 1 => (TwinKind::False, o.clone()),
            (_, c) if c.len() > 1 => (TwinKind::True, c.clone()),
            _ => (TwinKind::Single, vec![v]),
        };
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push((kind, members));
    }

    if classes.len() == n {
        let colors = vec![0u64; n];
        return ir_search(g, &colors, nodes, budget);
    }

    let reps: Vec<usize> = classes.iter().map(|(_, m)| m[0]).collect();
    let quotient = g.induced(&reps);
    let colors: Vec<u64> = classes
        .iter()
        .map(|(k, m)| ((*k as u64) << 32) | m.len() as u64)
        .collect();
    let q_order = ir_search(&quotient, &colors, nodes, budget)?;
    Ok(q_order
        .into_iter()
        .flat_map(|c| classes[c].1.iter().copied())
        .collect())
}

fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

type Cells = Vec<Vec<usize>>;

struct Leaf {
    trace: Vec<u64>,
    form: CanonicalForm,
    order: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    nodes: &'a mut usize,
    max_nodes: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Vec<usize>>,
}

/// Individualization-refinement search over a vertex-colored graph.
fn ir_search(g: &Graph, colors: &[u64], nodes: &mut usize, budget: &CanonBudget) -> Result<Vec<usize>> {
    let n = g.order();
    let mut by_color: Vec<(u64, usize)> = colors.iter().copied().zip(0..n).collect();
    by_color.sort_unstable();
    let mut cells: Cells = Vec::new();
    for (c, v) in by_color {
        match cells.last_mut() {
            Some(cell) if colors[cell[0]] == c => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let queue: Vec<Vec<usize>> = cells.clone();
    let root_trace = refine(g, &mut cells, queue);

    let mut s = Search {
        g,
        nodes,
        max_nodes: budget.max_nodes,
        first: None,
        best: None,
        gens: Vec::new(),
    };
    s.descend(cells, Vec::new(), vec![root_trace])?;
    Ok(s.best.expect("search reaches at least one leaf").order)
}

/// Refines `cells` to an equitable partition. Fragments of a split cell are
/// ordered by neighbour count, so the result is labeling-invariant; the
/// returned hash summarizes the splits.
fn refine(g: &Graph, cells: &mut Cells, initial: Vec<Vec<usize>>) -> u64 {
    let n = g.order();
    let mut h = 0x5151_u64;
    let mut queue: VecDeque<Vec<usize>> = initial.into();
    let mut mask = FixedBitSet::with_capacity(n);
    while let Some(splitter) = queue.pop_front() {
        if cells.len() == n {
            break;
        }
        mask.clear();
        for &v in &splitter {
            mask.insert(v);
        }
        let mut i = 0;
        while i < cells.len() {
            if cells[i].len() == 1 {
                i += 1;
                continue;
            }
            let mut counted: Vec<(usize, usize)> = cells[i]
                .iter()
                .map(|&v| (g.row(v).intersection_count(&mask), v))
                .collect();
            let first = counted[0].0;
            if counted.iter().all(|&(c, _)| c == first) {
                i += 1;
                continue;
            }
            counted.sort_by_key(|&(c, _)| c);
            let mut frags: Vec<Vec<usize>> = Vec::new();
            let mut last = usize::MAX;
            for (c, v) in counted {
                if c != last {
                    frags.push(Vec::new());
                    last = c;
                    h = mix(h, ((i as u64) << 32) ^ c as u64);
                }
                frags.last_mut().unwrap().push(v);
            }
            for f in &frags {
                h = mix(h, f.len() as u64);
                queue.push_back(f.clone());
            }
            let k = frags.len();
            cells.splice(i..=i, frags);
            i += k;
        }
        h = mix(h, cells.len() as u64);
    }
    h
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Search<'_> {
    fn orbits_fixing(&self, path: &[usize]) -> Vec<usize> {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        for gen in &self.gens {
            if path.iter().any(|&p| gen[p] != p) {
                continue;
            }
            for (v, &w) in gen.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        for v in 0..n {
            find(&mut parent, v);
        }
        parent
    }

    /// Returns `Some(level)` when an automorphism was found and the search
    /// should resume at the ancestor of that depth.
    fn descend(&mut self, cells: Cells, path: Vec<usize>, trace: Vec<u64>) -> Result<Option<usize>> {
        *self.nodes += 1;
        if *self.nodes > self.max_nodes {
            return Err(Error::Undecided(format!(
                "canonical labeling exceeded {} search nodes",
                self.max_nodes
            )));
        }
        let n = self.g.order();
        if cells.len() == n {
            return Ok(self.leaf(cells, path, trace));
        }
        let target = cells.iter().position(|c| c.len() > 1).unwrap();
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();

        let depth = path.len();
        let mut tried_roots: Vec<usize> = Vec::new();
        let mut gens_seen = usize::MAX;
        let mut orbit = Vec::new();
        for v in candidates {
            if gens_seen != self.gens.len() {
                orbit = self.orbits_fixing(&path);
                gens_seen = self.gens.len();
                for r in tried_roots.iter_mut() {
                    *r = orbit[*r];
                }
            }
            if tried_roots.contains(&orbit[v]) {
                continue;
            }
            tried_roots.push(orbit[v]);

            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&w| w != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            let t = mix(refine(self.g, &mut child, vec![vec![v]]), depth as u64);

            let mut child_trace = trace.clone();
            child_trace.push(t);
            if let Some(best) = &self.best {
                let k = child_trace.len().min(best.trace.len());
                if child_trace[..k] < best.trace[..k] {
                    continue;
                }
            }
            let mut child_path = path.clone();
            child_path.push(v);
            if let Some(level) = self.descend(child, child_path, child_trace)? {
                if level < depth {
                    return Ok(Some(level));
                }
            }
        }
        Ok(None)
    }

    fn leaf(&mut self, cells: Cells, path: Vec<usize>, trace: Vec<u64>) -> Option<usize> {
        let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
        let form = CanonicalForm::of_labeling(self.g, &order);
        let leaf = Leaf {
            trace,
            form,
            order,
            path,
        };
        let (Some(first), Some(best)) = (&self.first, &self.best) else {
            self.best = Some(Leaf {
                trace: leaf.trace.clone(),
                form: leaf.form.clone(),
                order: leaf.order.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        let found = [first, best].into_iter().find(|r| r.form == leaf.form).map(|reference| {
            let mut gen = vec![0; leaf.order.len()];
            for (k, &v) in reference.order.iter().enumerate() {
                gen[v] = leaf.order[k];
            }
            (gen, common_prefix(&reference.path, &leaf.path))
        });
        if let Some((gen, level)) = found {
            self.gens.push(gen);
            return Some(level);
        }
        let better = match leaf.trace.cmp(&best.trace) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => leaf.form > best.form,
        };
        if better {
            self.best = Some(leaf);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, edges).unwrap()
    }

    fn relabel(rng: &mut ChaCha8Rng, g: &Graph) -> Graph {
        let mut order: Vec<usize> = (0..g.order()).collect();
        order.shuffle(rng);
        g.permuted(&order)
    }

    fn brute_force_iso(g: &Graph, h: &Graph) -> bool {
        fn extend(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = map.len();
            if k == g.order() {
                return true;
            }
            for c in 0..h.order() {
                if used[c] {
                    continue;
                }
                if (0..k).all(|i| g.has_edge(i, k) == h.has_edge(map[i], c)) {
                    map.push(c);
                    used[c] = true;
                    if extend(g, h, map, used) {
                        return true;
                    }
                    used[c] = false;
                    map.pop();
                }
            }
            false
        }
        g.order() == h.order()
            && g.size() == h.size()
            && extend(g, h, &mut Vec::new(), &mut vec![false; h.order()])
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let budget = CanonBudget::default();
        for _ in 0..60 {
            let n = rng.random_range(0..=10);
            let p = rng.random_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let f = canonical_form(&g, &budget).unwrap();
            for _ in 0..20 {
                let h = relabel(&mut rng, &g);
                assert_eq!(canonical_form(&h, &budget).unwrap(), f);
            }
            assert!(f.to_graph().is_isomorphic(&g).unwrap());
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let budget = CanonBudget::default();
        for _ in 0..300 {
            let n = rng.random_range(1..=6);
            let g = random_graph(&mut rng, n, 0.5);
            let h = random_graph(&mut rng, n, 0.5);
            assert_eq!(
                is_isomorphic(&g, &h, &budget).unwrap(),
                brute_force_iso(&g, &h),
                "{g:?} vs {h:?}"
            );
        }
    }

    #[test]
    fn symmetric_graphs() {
        let budget = CanonBudget::default();
        let c5 = Graph::cycle(5).unwrap();
        assert!(is_isomorphic(&c5, &c5.complement(), &budget).unwrap());
        assert!(!is_isomorphic(&Graph::complete(3), &Graph::points(3), &budget).unwrap());
        // Petersen graph: vertex transitive, no twins, connected and co-connected.
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        let petersen = Graph::new(10, edges).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = canonical_form(&petersen, &budget).unwrap();
        for _ in 0..10 {
            assert_eq!(canonical_form(&relabel(&mut rng, &petersen), &budget).unwrap(), f);
        }
        assert_ne!(f, canonical_form(&Graph::cycle(10).unwrap(), &budget).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_undecided() {
        let c7 = Graph::cycle(7).unwrap();
        let tight = CanonBudget { max_nodes: 1 };
        assert!(matches!(canonical_form(&c7, &tight), Err(Error::Undecided(_))));
    }

    #[test]
    fn form_round_trips_through_graph() {
        let g = Graph::wheel(6).unwrap();
        let (f, order) = canonical_labeling(&g, &CanonBudget::default()).unwrap();
        assert_eq!(f.to_graph(), g.permuted(&order));
        assert_eq!(canonical_form(&f.to_graph(), &CanonBudget::default()).unwrap(), f);
    }
}
