//! The strong ring (⊕, ⊠) and the Zykov ring (+, ·) as formal signed sums of
//! additive primes, with homomorphisms and prime factorization search.
//!
//! An element is a finite map from additive primes to nonzero integers. In
//! the strong view the primes are connected graphs; in the Zykov view they
//! are graphs with connected complement. Complementing every prime is a ring
//! isomorphism between the two views.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonBudget, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::Poly;
use crate::products::{strong_product, zykov_product};
use crate::simplicial::{SimplicialComplex, DEFAULT_SIMPLEX_BUDGET};
use crate::topology::{poincare_polynomial, CellComplex, DEFAULT_LINALG_BUDGET};

/// Default cap on the vertex count of any product formed during ring
/// multiplication.
pub const DEFAULT_PRODUCT_BUDGET: usize = 4096;
/// Default cap on candidate products examined by a factor search.
pub const DEFAULT_FACTOR_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum View {
    Strong,
    Zykov,
}

impl View {
    pub fn dual(self) -> View {
        match self {
            View::Strong => View::Zykov,
            View::Zykov => View::Strong,
        }
    }

    /// The view's addition: disjoint union or join.
    pub fn add_graphs(self, g: &Graph, h: &Graph) -> Graph {
        match self {
            View::Strong => g.disjoint_union(h),
            View::Zykov => g.join(h),
        }
    }

    /// The view's multiplication: strong or Zykov product.
    pub fn mul_graphs(self, g: &Graph, h: &Graph) -> Graph {
        match self {
            View::Strong => strong_product(g, h),
            View::Zykov => zykov_product(g, h),
        }
    }

    /// Additive prime decomposition of a graph, sorted by canonical form.
    pub fn additive_primes(self, g: &Graph) -> Result<Vec<Graph>> {
        match self {
            View::Strong => g.connected_components(),
            View::Zykov => {
                let mut parts: Vec<Graph> =
                    g.complement().connected_components()?.iter().map(Graph::complement).collect();
                sort_by_form(&mut parts)?;
                Ok(parts)
            }
        }
    }
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            View::Strong => "strong",
            View::Zykov => "zykov",
        })
    }
}

fn form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form(g, &CanonBudget::default())
}

fn sort_by_form(parts: &mut Vec<Graph>) -> Result<()> {
    let mut keyed: Vec<(CanonicalForm, Graph)> =
        parts.drain(..).map(|g| Ok((form(&g)?, g))).collect::<Result<_>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    parts.extend(keyed.into_iter().map(|(_, g)| g));
    Ok(())
}

/// Unique additive prime factorization: connected components in the strong
/// view, complements of the complement's components in the Zykov view.
pub fn additive_prime_factorization(g: &Graph, view: View) -> Result<Vec<Graph>> {
    view.additive_primes(g)
}

/// A signed formal sum of additive primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    view: View,
    terms: BTreeMap<CanonicalForm, i64>,
}

impl RingElement {
    pub fn zero(view: View) -> Self {
        RingElement {
            view,
            terms: BTreeMap::new(),
        }
    }

    /// `[K1]`, the multiplicative unit of both rings.
    pub fn one(view: View) -> Self {
        Self::integer(1, view)
    }

    /// `n · [K1]`: `K_n` in the Zykov view, `P_n` in the strong view.
    pub fn integer(n: i64, view: View) -> Self {
        let mut e = Self::zero(view);
        if n != 0 {
            e.terms.insert(form(&Graph::complete(1)).expect("K1 canonizes"), n);
        }
        e
    }

    pub fn from_graph(g: &Graph, view: View) -> Result<Self> {
        let mut e = Self::zero(view);
        for p in view.additive_primes(g)? {
            e.bump(form(&p)?, 1);
        }
        Ok(e)
    }

    fn bump(&mut self, key: CanonicalForm, by: i64) {
        let c = self.terms.entry(key.clone()).or_insert(0);
        *c += by;
        if *c == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn view(&self) -> View {
        self.view
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct primes.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Primes in canonical labeling with their coefficients, in canonical
    /// order.
    pub fn terms(&self) -> impl Iterator<Item = (Graph, i64)> + '_ {
        self.terms.iter().map(|(k, &c)| (k.to_graph(), c))
    }

    pub fn coefficient(&self, prime: &Graph) -> Result<i64> {
        Ok(self.terms.get(&form(prime)?).copied().unwrap_or(0))
    }

    /// True when every coefficient is positive, so the element is a graph.
    pub fn is_graph(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Sum of the primes with multiplicity under the view's addition.
    pub fn to_graph(&self) -> Result<Graph> {
        if !self.is_graph() {
            return Err(Error::NotAGraph);
        }
        let mut g = Graph::empty();
        for (p, c) in self.terms() {
            for _ in 0..c {
                g = self.view.add_graphs(&g, &p);
            }
        }
        Ok(g)
    }

    fn same_view(&self, other: &Self) -> Result<()> {
        if self.view == other.view {
            Ok(())
        } else {
            Err(Error::ViewMismatch(format!(
                "cannot combine a {} element with a {} element",
                self.view, other.view
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_view(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.bump(k.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        RingElement {
            view: self.view,
            terms: self.terms.iter().map(|(k, &c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(self.view);
        }
        RingElement {
            view: self.view,
            terms: self.terms.iter().map(|(f, &c)| (f.clone(), c * k)).collect(),
        }
    }

    /// Bilinear extension of the view's product. The product of two
    /// additive primes is again an additive prime, so each pair of terms
    /// contributes one term. `budget` caps the product vertex count.
    pub fn mul(&self, other: &Self, budget: usize) -> Result<Self> {
        self.same_view(other)?;
        let mut out = Self::zero(self.view);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let n = a.order() * b.order();
                if n > budget {
                    return Err(Error::budget("product vertices", budget));
                }
                let p = self.view.mul_graphs(&a.to_graph(), &b.to_graph());
                out.bump(form(&p)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32, budget: usize) -> Result<Self> {
        let mut acc = Self::one(self.view);
        for _ in 0..k {
            acc = acc.mul(self, budget)?;
        }
        Ok(acc)
    }

    /// Complements every prime and switches view.
    pub fn dualize(&self) -> Result<Self> {
        let mut out = Self::zero(self.view.dual());
        for (p, c) in self.terms() {
            out.bump(form(&p.complement())?, c);
        }
        Ok(out)
    }

    fn require(&self, view: View, what: &str) -> Result<()> {
        if self.view == view {
            Ok(())
        } else {
            Err(Error::ViewMismatch(format!("{what} is defined on {view} elements")))
        }
    }

    /// Linear extension of the Euler characteristic (strong view).
    pub fn chi_hom(&self) -> Result<i64> {
        self.require(View::Strong, "the Euler characteristic homomorphism")?;
        let mut total = 0;
        for (p, c) in self.terms() {
            total += c * SimplicialComplex::whitney(&p, DEFAULT_SIMPLEX_BUDGET)?.euler_characteristic();
        }
        Ok(total)
    }

    /// Linear extension of the Poincaré polynomial (strong view).
    pub fn poincare_hom(&self) -> Result<Poly<i64>> {
        self.require(View::Strong, "the Poincaré polynomial homomorphism")?;
        let mut total = Poly::new(Vec::new());
        for (p, c) in self.terms() {
            let w = SimplicialComplex::whitney(&p, DEFAULT_SIMPLEX_BUDGET)?;
            total = total + poincare_polynomial(&w, DEFAULT_LINALG_BUDGET)?.scale(&c);
        }
        Ok(total)
    }

    /// Linear extension of the clique number (Zykov view).
    pub fn clique_hom(&self) -> Result<i64> {
        self.require(View::Zykov, "the clique number homomorphism")?;
        let mut total = 0;
        for (p, c) in self.terms() {
            total += c * crate::simplicial::max_clique_size(&p) as i64;
        }
        Ok(total)
    }

    /// `{"view": .., "terms": [{"graph": .., "coef": ..}, ..]}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            graph: Graph,
            coef: i64,
        }
        #[derive(Serialize)]
        struct Repr {
            view: View,
            terms: Vec<Term>,
        }
        let repr = Repr {
            view: self.view,
            terms: self.terms().map(|(graph, coef)| Term { graph, coef }).collect(),
        };
        serde_json::to_value(repr).expect("ring elements serialize")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Term {
            graph: Graph,
            coef: i64,
        }
        #[derive(Deserialize)]
        struct Repr {
            view: View,
            terms: Vec<Term>,
        }
        let repr: Repr = serde_json::from_str(text)?;
        let mut e = Self::zero(repr.view);
        for t in repr.terms {
            let parts = repr.view.additive_primes(&t.graph)?;
            if parts.len() != 1 {
                return Err(Error::Invalid(format!("term on {} vertices is not an additive prime", t.graph.order())));
            }
            e.bump(form(&parts[0])?, t.coef);
        }
        Ok(e)
    }
}

/// Outcome of a multiplicative primality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primality {
    Unit,
    Prime,
    /// A nontrivial factor pair whose product is isomorphic to the input.
    Composite(Graph, Graph),
    Undecided,
}

/// Nontrivial unordered factor pairs `(G, H)` with `G ∘ H ≅ target`,
/// `|V(G)| ≤ |V(H)|`, up to isomorphism of each side.
#[derive(Clone, Debug)]
pub struct FactorSearch {
    pub pairs: Vec<(Graph, Graph)>,
    /// False when some vertex split could not be searched exhaustively.
    pub exhaustive: bool,
}

/// Largest smaller-side factor searched exhaustively.
const MAX_SMALL_FACTOR: usize = 4;
/// Largest cofactor order for which all graphs are generated.
const MAX_GENERATED_ORDER: usize = 8;
/// Cap on vertex subsets scanned for induced cofactor candidates.
const MAX_SUBSETS: u128 = 200_000;

/// Searches every split `|V| = a·b` with `2 ≤ a ≤ b`. Each factor of a
/// product is isomorphic to an induced subgraph on any fibre, so cofactor
/// candidates come from induced subgraphs when those are few, and otherwise
/// from all graphs on `b` vertices. `budget` caps product evaluations.
pub fn factor_pairs(g: &Graph, view: View, budget: usize) -> Result<FactorSearch> {
    let n = g.order();
    let target = form(g)?;
    let m = g.size();
    let mut pairs = Vec::new();
    let mut exhaustive = true;
    let mut checks = 0usize;
    for a in 2..=n {
        if a * a > n {
            break;
        }
        if n % a != 0 {
            continue;
        }
        let b = n / a;
        if a > MAX_SMALL_FACTOR {
            exhaustive = false;
            continue;
        }
        let Some(cofactors) = cofactor_candidates(g, b) else {
            exhaustive = false;
            continue;
        };
        let mut seen: HashSet<(CanonicalForm, CanonicalForm)> = HashSet::new();
        for x in graphs_on(a).iter() {
            for y in cofactors.iter() {
                if product_size(view, x, y) != m {
                    continue;
                }
                checks += 1;
                if checks > budget {
                    return Err(Error::budget("factor search products", budget));
                }
                let p = view.mul_graphs(x, y);
                if form(&p)? == target {
                    let key = (form(x)?, form(y)?);
                    if seen.insert(key) {
                        pairs.push((x.clone(), y.clone()));
                    }
                }
            }
        }
    }
    Ok(FactorSearch { pairs, exhaustive })
}

fn product_size(view: View, x: &Graph, y: &Graph) -> usize {
    let (v1, e1, v2, e2) = (x.order(), x.size(), y.order(), y.size());
    match view {
        View::Zykov => e1 * v2 * v2 + e2 * v1 * v1 - 2 * e1 * e2,
        View::Strong => e1 * v2 + e2 * v1 + 2 * e1 * e2,
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn cofactor_candidates(g: &Graph, b: usize) -> Option<Arc<Vec<Graph>>> {
    let n = g.order();
    if binomial(n, b) <= MAX_SUBSETS {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut subset: Vec<usize> = (0..b).collect();
        loop {
            let h = g.induced(&subset);
            if seen.insert(form(&h).ok()?) {
                out.push(h);
            }
            // Next b-subset in lexicographic order.
            let Some(i) = (0..b).rev().find(|&i| subset[i] < n - b + i) else {
                break;
            };
            subset[i] += 1;
            for j in i + 1..b {
                subset[j] = subset[j - 1] + 1;
            }
        }
        Some(Arc::new(out))
    } else if b <= MAX_GENERATED_ORDER {
        Some(graphs_on(b))
    } else {
        None
    }
}

/// All graphs on `k` vertices up to isomorphism, generated by adding a
/// vertex to each graph on `k - 1` vertices and discarding repeats.
pub fn graphs_on(k: usize) -> Arc<Vec<Graph>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<Vec<Graph>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Arc::new(vec![Graph::empty()])]));
    let mut levels = cache.lock().expect("graph cache poisoned");
    while levels.len() <= k {
        let prev = levels.last().expect("level 0 exists").clone();
        let n = levels.len();
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in prev.iter() {
            for mask in 0u32..(1 << (n - 1)) {
                let mut edges = g.edges();
                edges.extend((0..n - 1).filter(|v| mask >> v & 1 == 1).map(|v| (v, n - 1)));
                let h = Graph::new(n, edges).expect("extension edges are valid");
                let f = form(&h).expect("small graphs canonize within budget");
                if seen.insert(f.clone()) {
                    next.push(f.to_graph());
                }
            }
        }
        levels.push(Arc::new(next));
    }
    levels[k].clone()
}

fn is_prime_number(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Multiplicative primality. Graphs with a prime vertex count are prime;
/// otherwise factor splits are searched as in [`factor_pairs`].
pub fn is_multiplicative_prime(g: &Graph, view: View, budget: usize) -> Result<Primality> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Invalid("primality is defined for nonempty graphs".into()));
    }
    if n == 1 {
        return Ok(Primality::Unit);
    }
    if is_prime_number(n) {
        return Ok(Primality::Prime);
    }
    let search = match factor_pairs(g, view, budget) {
        Ok(s) => s,
        Err(Error::BudgetExceeded { .. }) => return Ok(Primality::Undecided),
        Err(e) => return Err(e),
    };
    Ok(match search.pairs.into_iter().next() {
        Some((x, y)) => Primality::Composite(x, y),
        None if search.exhaustive => Primality::Prime,
        None => Primality::Undecided,
    })
}

/// Every multiset of multiplicative primes whose product is isomorphic to
/// `g`, each sorted by canonical form. Fails with `Undecided` when any step
/// of the search is not exhaustive.
pub fn prime_factorizations(g: &Graph, view: View, budget: usize) -> Result<Vec<Vec<CanonicalForm>>> {
    let mut out = BTreeSet::new();
    match is_multiplicative_prime(g, view, budget)? {
        Primality::Unit => {
            out.insert(Vec::new());
        }
        Primality::Prime => {
            out.insert(vec![form(g)?]);
        }
        Primality::Undecided => return Err(Error::Undecided(format!("primality of a {}-vertex graph", g.order()))),
        Primality::Composite(..) => {
            let search = factor_pairs(g, view, budget)?;
            if !search.exhaustive {
                return Err(Error::Undecided(format!("factor splits of a {}-vertex graph", g.order())));
            }
            for (x, y) in &search.pairs {
                for fx in prime_factorizations(x, view, budget)? {
                    for fy in prime_factorizations(y, view, budget)? {
                        let mut all: Vec<CanonicalForm> = fx.iter().chain(&fy).cloned().collect();
                        all.sort();
                        out.insert(all);
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Two factorizations of the same 63-vertex graph in the Zykov ring, modelled
/// on `(1+x+x^2)(1+x^3) = (1+x^2+x^4)(1+x)` with `x = P2`.
#[derive(Clone, Debug)]
pub struct NonUniqueWitness {
    pub a1: Graph,
    pub a2: Graph,
    pub b1: Graph,
    pub b2: Graph,
    pub product: Graph,
}

pub fn nonunique_factorization_witness() -> NonUniqueWitness {
    let join_all = |parts: &[usize]| {
        parts
            .iter()
            .fold(Graph::complete(1), |acc, &k| acc.join(&Graph::points(k)))
    };
    let a1 = join_all(&[2, 4]);
    let a2 = join_all(&[8]);
    let b1 = join_all(&[4, 16]);
    let b2 = join_all(&[2]);
    let product = zykov_product(&a1, &a2);
    NonUniqueWitness { a1, a2, b1, b2, product }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(e: &RingElement) -> Graph {
        e.to_graph().unwrap()
    }

    fn iso(a: &Graph, b: &Graph) -> bool {
        a.is_isomorphic(b).unwrap()
    }

    #[test]
    fn from_graph_examples() {
        let k2 = Graph::complete(2);
        let e = RingElement::from_graph(&k2.disjoint_union(&k2), View::Strong).unwrap();
        assert_eq!(e.coefficient(&k2).unwrap(), 2);
        assert_eq!(e.len(), 1);
        let w4 = RingElement::from_graph(&Graph::wheel(4).unwrap(), View::Zykov).unwrap();
        assert_eq!(w4.coefficient(&Graph::points(2)).unwrap(), 2);
        assert_eq!(w4.coefficient(&Graph::points(1)).unwrap(), 1);
        let c5 = RingElement::from_graph(&Graph::cycle(5).unwrap(), View::Zykov).unwrap();
        assert_eq!(c5.len(), 1);
        assert!(iso(&g(&w4), &Graph::wheel(4).unwrap()));
    }

    #[test]
    fn arithmetic() {
        let z = View::Zykov;
        let k5 = RingElement::from_graph(&Graph::complete(5), z).unwrap();
        let k7 = RingElement::from_graph(&Graph::complete(7), z).unwrap();
        assert_eq!(k5.sub(&k7).unwrap(), RingElement::integer(-2, z));
        assert!(k5.sub(&k5).unwrap().is_zero());
        let c5 = RingElement::from_graph(&Graph::cycle(5).unwrap(), z).unwrap();
        let c7 = RingElement::from_graph(&Graph::cycle(7).unwrap(), z).unwrap();
        let d = c5.sub(&c7).unwrap();
        assert_eq!(d.len(), 2);
        assert!(matches!(d.to_graph(), Err(Error::NotAGraph)));
        let s = RingElement::zero(View::Strong);
        assert!(matches!(k5.add(&s), Err(Error::ViewMismatch(_))));
        assert_eq!(RingElement::one(z).mul(&c5, 100).unwrap(), c5);
    }

    #[test]
    fn example_g() {
        let z = View::Zykov;
        let c4 = RingElement::from_graph(&Graph::cycle(4).unwrap(), z).unwrap();
        let s4 = RingElement::from_graph(&Graph::star(4), z).unwrap();
        let lhs = c4.sub(&s4).unwrap().mul(&c4.add(&s4).unwrap(), 1000).unwrap();
        let k44 = RingElement::from_graph(&Graph::complete_bipartite(4, 4), z).unwrap();
        let s16 = RingElement::from_graph(&Graph::star(16), z).unwrap();
        assert_eq!(lhs, k44.sub(&s16).unwrap());
        let p4 = RingElement::from_graph(&Graph::points(4), z).unwrap();
        let p16 = RingElement::from_graph(&Graph::points(16), z).unwrap();
        let expect = p4.scale(2).sub(&p16).unwrap().sub(&RingElement::one(z)).unwrap();
        assert_eq!(lhs, expect);
    }

    #[test]
    fn bipartite_products() {
        let z = View::Zykov;
        let k23 = RingElement::from_graph(&Graph::complete_bipartite(2, 3), z).unwrap();
        let sq = k23.mul(&k23, 1000).unwrap();
        let expect = Graph::complete_bipartite(4, 6).join(&Graph::complete_bipartite(6, 9));
        assert!(iso(&g(&sq), &expect));
    }

    #[test]
    fn dualize_round_trip() {
        let e = RingElement::from_graph(&Graph::kite(), View::Zykov)
            .unwrap()
            .sub(&RingElement::from_graph(&Graph::cycle(5).unwrap(), View::Zykov).unwrap())
            .unwrap();
        let d = e.dualize().unwrap();
        assert_eq!(d.view(), View::Strong);
        assert_eq!(d.dualize().unwrap(), e);
    }

    #[test]
    fn homomorphisms() {
        let k2 = Graph::complete(2);
        let k3 = Graph::complete(3);
        let z = RingElement::from_graph(&k2.join(&k3), View::Zykov).unwrap();
        assert_eq!(z.clique_hom().unwrap(), 5);
        assert!(z.chi_hom().is_err());
        let c4 = Graph::cycle(4).unwrap();
        let s = RingElement::from_graph(&c4.disjoint_union(&k3), View::Strong).unwrap();
        assert_eq!(s.chi_hom().unwrap(), 1);
        assert_eq!(s.poincare_hom().unwrap().coeffs(), &[2, 1]);
        let c5 = RingElement::from_graph(&Graph::cycle(5).unwrap(), View::Zykov).unwrap();
        assert_eq!(c5.mul(&c5, 100).unwrap().clique_hom().unwrap(), 5);
    }

    #[test]
    fn additive_factorization() {
        let z = View::Zykov;
        let c4 = additive_prime_factorization(&Graph::cycle(4).unwrap(), z).unwrap();
        assert_eq!(c4, vec![Graph::points(2), Graph::points(2)]);
        assert_eq!(additive_prime_factorization(&Graph::cycle(6).unwrap(), z).unwrap().len(), 1);
        let w5 = additive_prime_factorization(&Graph::wheel(5).unwrap(), z).unwrap();
        assert_eq!(w5.len(), 2);
        assert!(w5.iter().any(|p| iso(p, &Graph::cycle(5).unwrap())));
        assert!(w5.iter().any(|p| p.order() == 1));
    }

    #[test]
    fn graph_enumeration_counts() {
        let counts: Vec<usize> = (0..=6).map(|k| graphs_on(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn primality() {
        let z = View::Zykov;
        let b = DEFAULT_FACTOR_BUDGET;
        assert_eq!(is_multiplicative_prime(&Graph::cycle(5).unwrap(), z, b).unwrap(), Primality::Prime);
        assert_eq!(is_multiplicative_prime(&Graph::complete(1), z, b).unwrap(), Primality::Unit);
        match is_multiplicative_prime(&Graph::complete(4), z, b).unwrap() {
            Primality::Composite(x, y) => {
                assert_eq!(x, Graph::complete(2));
                assert_eq!(y, Graph::complete(2));
            }
            other => panic!("K4 should factor, got {other:?}"),
        }
        match is_multiplicative_prime(&Graph::points(4), z, b).unwrap() {
            Primality::Composite(x, y) => {
                assert_eq!(x, Graph::points(2));
                assert_eq!(y, Graph::points(2));
            }
            other => panic!("P4 should factor, got {other:?}"),
        }
        assert_eq!(is_multiplicative_prime(&Graph::cycle(6).unwrap(), z, b).unwrap(), Primality::Prime);
        assert_eq!(is_multiplicative_prime(&Graph::cycle(6).unwrap(), z, 0).unwrap(), Primality::Prime);
        assert_eq!(is_multiplicative_prime(&Graph::complete(6), z, 0).unwrap(), Primality::Undecided);
    }

    #[test]
    fn witness() {
        let w = nonunique_factorization_witness();
        let other = zykov_product(&w.b1, &w.b2);
        assert_eq!(w.product.order(), 63);
        assert!(iso(&w.product, &other));
        let orders = [w.a1.order(), w.a2.order(), w.b1.order(), w.b2.order()];
        assert_eq!(orders, [7, 9, 21, 3]);
    }

    #[test]
    fn json_round_trip() {
        let e = RingElement::from_graph(&Graph::kite(), View::Zykov)
            .unwrap()
            .sub(&RingElement::integer(3, View::Zykov))
            .unwrap();
        let text = e.to_json();
        assert!(text.starts_with(r#"{"terms":"#) || text.starts_with(r#"{"view":"#));
        assert_eq!(RingElement::from_json(&text).unwrap(), e);
    }
}
