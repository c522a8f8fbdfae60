//! The acceptance suite, shared by `netarith selftest` and the `acceptance`
//! test target. Each criterion is deterministic for a given seed.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budgets;
use crate::canon::{canonical_form, is_isomorphic, CanonBudget};
use crate::cli::run_with_budgets;
use crate::error::Error;
use crate::expr::{parse, BinOp, Evaluator, Expr, Func, Literal};
use crate::graph::{Family, Graph};
use crate::poly::Poly;
use crate::products::{cartesian_graph, product_cell_complex, strong_product, tensor_product, weak_product};
use crate::ring::{additive_prime_factorization, nonunique_factorization_witness, prime_factorizations, RingElement, View};
use crate::simplicial::{max_clique_size, SimplicialComplex};
use crate::spectral::{
    adjacency, connection_determinant, connection_matrix, connection_matrix_product, energy, fermi_functional,
    kirchhoff, volume_laplacian_spectrum, Spectrum64,
};
use crate::topology::{betti, poincare_polynomial, CellComplex};

pub const DEFAULT_SEED: u64 = 2024;

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} [{}] {} ({:.2}s): {}",
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Why a criterion failed.
#[derive(Debug)]
pub struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Check = Result<String, Failure>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(Failure(format!($($msg)+)));
        }
    };
}

type Criterion = fn(u64) -> Check;

pub const CRITERIA: [(u8, &str, Criterion); 10] = [
    (1, "identity suite", identities),
    (2, "non-unique factorization witness", witness),
    (3, "Euler homomorphism", euler_homomorphism),
    (4, "Kuenneth and homotopy", kuenneth),
    (5, "connection matrices", connection),
    (6, "spectral oracles", spectral_oracles),
    (7, "generating functions", generating_functions),
    (8, "ring laws", ring_laws),
    (9, "errata", errata),
    (10, "parser and CLI", parser_and_cli),
];

pub fn run_criterion(id: u8, seed: u64) -> CriterionReport {
    let &(id, name, check) = CRITERIA.iter().find(|c| c.0 == id).expect("criteria are numbered 1 to 10");
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| check(seed)));
    let (passed, detail) = match outcome {
        Ok(Ok(detail)) => (true, detail),
        Ok(Err(Failure(why))) => (false, why),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (false, format!("panicked: {msg}"))
        }
    };
    CriterionReport {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|c| run_criterion(c.0, seed)).collect()
}

fn rng_for(seed: u64, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (u64::from(id) << 56))
}

/// Erdős–Rényi graph on `1..=max_n` vertices.
pub fn random_graph(rng: &mut impl Rng, max_n: usize, p: f64) -> Graph {
    let n = rng.random_range(1..=max_n);
    random_graph_on(rng, n, p)
}

pub fn random_graph_on(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).expect("random edges are valid")
}

fn iso(g: &Graph, h: &Graph) -> Result<bool, Failure> {
    Ok(is_isomorphic(g, h, &CanonBudget::default())?)
}

fn chi(g: &Graph) -> Result<i64, Failure> {
    Ok(SimplicialComplex::whitney(g, ACCEPTANCE_SIMPLICES)?.euler_characteristic())
}

const ACCEPTANCE_SIMPLICES: usize = 1_000_000;
const ACCEPTANCE_LINALG: usize = 1_000_000;

fn identities(_seed: u64) -> Check {
    use View::{Strong, Zykov};
    let cases: &[(View, &str, &str)] = &[
        (Zykov, "C4^2", "Kb(4,4) + Kb(4,4)"),
        (Zykov, "W4^2", "1 + 4*P2 + 2*Kb(4,4)"),
        (Zykov, "Kite^2", "P4 + K4 + 4*P2"),
        (Zykov, "Kite^2", "P4 + K4 + Sph3"),
        (Zykov, "S5^2", "S25 + Kb(5,5)"),
        (Zykov, "Windmill^2", "P9 + 4*S3"),
        (Zykov, "Kb(2,3)^2", "Kb(4,9) + Kb(6,6)"),
        (Zykov, "Kb(2,3)*Kb(2,3)", "Kb(4,6) + Kb(6,9)"),
        (Zykov, "Oct^2", "9*P4"),
        (Zykov, "Sph3^2", "16*P4"),
        (Zykov, "K2*P2", "C4"),
        // Small examples on K2 with K2. The disjoint union is not P2×P2
        // (that is P4) but it is K2□P2; the tensor square is K2⊕K2 and the
        // cell-pair product is the 8-spoke wheel.
        (Zykov, "union(K2,K2)", "weak(K2,P2)"),
        (Zykov, "cart(P2,P2)", "P4"),
        (Zykov, "K2 + K2", "K4"),
        (Zykov, "K2*K2", "K4"),
        (Zykov, "tensor(K2,K2)", "union(K2,K2)"),
        (Zykov, "cart(K2,K2)", "W8"),
        (Zykov, "weak(K2,K2)", "C4"),
        (Zykov, "strong(K2,K2)", "K4"),
        (Strong, "K2*K2", "K4"),
        // Small examples on K2 with K3; the Zykov product is K6, C6 is the
        // tensor product.
        (Zykov, "K2 + K3", "K5"),
        (Zykov, "K2*K3", "K6"),
        (Zykov, "tensor(K2,K3)", "C6"),
        (Zykov, "strong(K2,K3)", "K6"),
        (Strong, "K2*K3", "K6"),
    ];
    let mut slowest = Duration::ZERO;
    for &(mode, lhs, rhs) in cases {
        let eval = Evaluator::new(mode);
        let start = Instant::now();
        let (g, h) = (eval.eval_graph(lhs)?, eval.eval_graph(rhs)?);
        ensure!(iso(&g, &h)?, "{lhs} is not isomorphic to {rhs} in {mode} mode");
        let t = start.elapsed();
        ensure!(t < Duration::from_secs(1), "{lhs} ≅ {rhs} took {t:?}");
        slowest = slowest.max(t);
    }
    Ok(format!("{} identities, slowest {:.1} ms", cases.len(), slowest.as_secs_f64() * 1e3))
}

/// `Π (1 + k x)` over the part sizes of a complete multipartite graph.
fn multipartite_f_vector(parts: &[usize]) -> Vec<u64> {
    let p = parts
        .iter()
        .fold(Poly::new(vec![1u64]), |acc, &k| acc * Poly::new(vec![1, k as u64]));
    p.coeffs()[1..].to_vec()
}

fn witness(_seed: u64) -> Check {
    let start = Instant::now();
    let w = nonunique_factorization_witness();
    let other = crate::products::zykov_product(&w.b1, &w.b2);
    ensure!(w.product.order() == 63, "product has {} vertices", w.product.order());
    ensure!(iso(&w.product, &other)?, "A1·A2 and B1·B2 differ");
    let same_pair = |x: &Graph, y: &Graph| -> Result<bool, Failure> {
        Ok(iso(&w.a1, x)? && iso(&w.a2, y)?)
    };
    ensure!(
        !same_pair(&w.b1, &w.b2)? && !same_pair(&w.b2, &w.b1)?,
        "the two factorizations coincide"
    );
    let c = SimplicialComplex::whitney(&w.product, ACCEPTANCE_SIMPLICES)?;
    let f: Vec<u64> = c.f_vector().iter().map(|&x| x as u64).collect();
    ensure!(
        f == [63, 1302, 11160, 41664, 64512, 32768],
        "f-vector {f:?} differs from the stated one"
    );
    let parts: Vec<usize> = additive_prime_factorization(&w.product, View::Zykov)?
        .iter()
        .map(|p| {
            if p.size() == 0 {
                Ok(p.order())
            } else {
                Err(Failure("an additive prime of the witness has edges".into()))
            }
        })
        .collect::<Result<_, _>>()?;
    ensure!(multipartite_f_vector(&parts) == f, "f-vector disagrees with Π(1+kx) over parts {parts:?}");
    ensure!(c.euler_characteristic() == 1, "χ = {}", c.euler_characteristic());
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(30), "took {t:?}");
    Ok(format!("63 vertices, f = {f:?}, χ = 1, {:.2}s", t.as_secs_f64()))
}

fn euler_homomorphism(seed: u64) -> Check {
    let mut rng = rng_for(seed, 3);
    let mut largest = 0;
    for trial in 0..200 {
        let p = rng.random_range(0.2..0.6);
        let g = random_graph(&mut rng, 7, p);
        let h = random_graph(&mut rng, 7, p);
        let (cg, ch) = (chi(&g)?, chi(&h)?);
        let sp = SimplicialComplex::whitney(&strong_product(&g, &h), ACCEPTANCE_SIMPLICES)?;
        largest = largest.max(sp.len());
        let strong = sp.euler_characteristic();
        ensure!(strong == cg * ch, "trial {trial}: χ(G⊠H) = {strong} but χ(G)χ(H) = {}", cg * ch);
        let cells = product_cell_complex(&g, &h, ACCEPTANCE_SIMPLICES)?.euler_characteristic();
        ensure!(cells == cg * ch, "trial {trial}: χ(G×H) = {cells} but χ(G)χ(H) = {}", cg * ch);
    }
    Ok(format!("200 pairs, largest strong complex {largest} simplices"))
}

/// Betti numbers without the zeros above the top nonvanishing one; the two
/// complexes compared have different dimensions.
fn trimmed(b: &[usize]) -> &[usize] {
    let end = b.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    &b[..end]
}

fn kuenneth(seed: u64) -> Check {
    let mut rng = rng_for(seed, 4);
    let mut largest = 0;
    for trial in 0..50 {
        let p = rng.random_range(0.25..0.65);
        let g = random_graph(&mut rng, 6, p);
        let h = random_graph(&mut rng, 6, p);
        let wg = SimplicialComplex::whitney(&g, ACCEPTANCE_SIMPLICES)?;
        let wh = SimplicialComplex::whitney(&h, ACCEPTANCE_SIMPLICES)?;
        let cart = cartesian_graph(&g, &h, ACCEPTANCE_SIMPLICES)?;
        let wc = SimplicialComplex::whitney(&cart, ACCEPTANCE_SIMPLICES)?;
        largest = largest.max(wc.len());
        let pc = poincare_polynomial(&wc, ACCEPTANCE_LINALG)?;
        let expected = poincare_polynomial(&wg, ACCEPTANCE_LINALG)? * poincare_polynomial(&wh, ACCEPTANCE_LINALG)?;
        ensure!(pc == expected, "trial {trial}: p(G×H) = {pc}, p(G)p(H) = {expected}");
        let ws = SimplicialComplex::whitney(&strong_product(&g, &h), ACCEPTANCE_SIMPLICES)?;
        let (bs, bc) = (betti(&ws, ACCEPTANCE_LINALG)?, betti(&wc, ACCEPTANCE_LINALG)?);
        ensure!(
            trimmed(&bs.0) == trimmed(&bc.0),
            "trial {trial}: b(G⊠H) = {:?}, b(G×H) = {:?}",
            bs.0,
            bc.0
        );
    }
    Ok(format!("50 pairs, largest refined complex {largest} simplices"))
}

/// A random complex: either a Whitney complex or the closure of random
/// facets, so that non-flag complexes are covered.
fn random_complex(rng: &mut impl Rng, max_cells: usize) -> Result<SimplicialComplex, Failure> {
    loop {
        let c = if rng.random_bool(0.5) {
            let n = rng.random_range(1..=16);
            let p = rng.random_range(0.2..0.7);
            SimplicialComplex::whitney(&random_graph_on(rng, n, p), max_cells * 4)?
        } else {
            let n = rng.random_range(1..=10);
            let count = rng.random_range(1..=8);
            let facets: Vec<Vec<usize>> = (0..count)
                .map(|_| {
                    let k = rng.random_range(1..=n.min(7));
                    let mut all: Vec<usize> = (0..n).collect();
                    let mut f: Vec<usize> = all.partial_shuffle(rng, k).0.to_vec();
                    f.sort_unstable();
                    f
                })
                .collect();
            SimplicialComplex::from_facets(n, facets, max_cells * 4)?
        };
        if c.len() <= max_cells {
            return Ok(c);
        }
    }
}

fn connection(seed: u64) -> Check {
    let mut rng = rng_for(seed, 5);
    let mut largest = 0;
    for trial in 0..100 {
        let c = random_complex(&mut rng, 300)?;
        largest = largest.max(c.len());
        let det = connection_determinant(&c, 300)?;
        let fermi = fermi_functional(&c);
        ensure!(det == fermi.into(), "trial {trial}: det L = {det}, Fermi = {fermi}");
        let e = energy(&c, 300)?;
        ensure!(e == c.euler_characteristic(), "trial {trial}: energy {e} ≠ χ {}", c.euler_characteristic());
    }
    let mut worst: f64 = 0.0;
    for trial in 0..30 {
        let p = rng.random_range(0.2..0.6);
        let g = random_graph(&mut rng, 6, p);
        let h = random_graph(&mut rng, 6, p);
        let (cg, ch) = (
            SimplicialComplex::whitney(&g, ACCEPTANCE_SIMPLICES)?,
            SimplicialComplex::whitney(&h, ACCEPTANCE_SIMPLICES)?,
        );
        let (lg, lh) = (connection_matrix(&cg, 400)?, connection_matrix(&ch, 400)?);
        let lp = connection_matrix_product(&g, &h, 400 * 400)?;
        ensure!(lp == lg.kron(&lh), "trial {trial}: L(G×H) ≠ L(G)⊗L(H)");
        let direct = Spectrum64::of(&lp);
        let products = Spectrum64::of(&lg).pairwise_products(&Spectrum64::of(&lh));
        ensure!(direct.matches(&products, 1e-6), "trial {trial}: σ(L(G×H)) is not the pairwise products");
        worst = worst.max(direct.max_discrepancy(&products).unwrap_or(f64::INFINITY));
    }
    Ok(format!("100 complexes up to {largest} cells, 30 tensor pairs, max eigen gap {worst:.1e}"))
}

fn kirchhoff_join_oracle(g: &Graph, h: &Graph) -> Spectrum64 {
    let (ng, nh) = (g.order() as f64, h.order() as f64);
    let sg = Spectrum64::of(&kirchhoff(g));
    let sh = Spectrum64::of(&kirchhoff(h));
    let mut values = vec![0.0, ng + nh];
    values.extend(sg.values()[1..].iter().map(|x| x + nh));
    values.extend(sh.values()[1..].iter().map(|x| x + ng));
    Spectrum64::from_values(values)
}

fn spectral_oracles(seed: u64) -> Check {
    let mut rng = rng_for(seed, 6);
    for trial in 0..30 {
        let p = rng.random_range(0.1..0.9);
        let g = random_graph(&mut rng, 9, p);
        let h = random_graph(&mut rng, 9, p);
        let join = Spectrum64::of(&kirchhoff(&g.join(&h)));
        let n = (g.order() + h.order()) as f64;
        let gap = join.max_discrepancy(&kirchhoff_join_oracle(&g, &h)).unwrap_or(f64::INFINITY);
        ensure!(gap <= 1e-8, "trial {trial}: Kirchhoff join spectrum off by {gap:e}");
        ensure!(join.contains(n, 1e-8), "trial {trial}: {n} missing from the join spectrum");

        let weak = Spectrum64::of(&adjacency(&weak_product(&g, &h)));
        let sums = Spectrum64::of(&adjacency(&g)).pairwise_sums(&Spectrum64::of(&adjacency(&h)));
        ensure!(weak.matches(&sums, 1e-8), "trial {trial}: adjacency of G□H is not the pairwise sums");
        ensure!(
            adjacency(&tensor_product(&g, &h)) == adjacency(&g).kron(&adjacency(&h)),
            "trial {trial}: A(G⊗H) ≠ A(G)⊗A(H)"
        );
    }
    for trial in 0..20 {
        let p = rng.random_range(0.2..0.8);
        let g = random_graph(&mut rng, 5, p);
        let h = random_graph(&mut rng, 5, p);
        let joined: Spectrum64 = volume_laplacian_spectrum(&g.join(&h), ACCEPTANCE_LINALG)?;
        let (sg, sh): (Spectrum64, Spectrum64) = (
            volume_laplacian_spectrum(&g, ACCEPTANCE_LINALG)?,
            volume_laplacian_spectrum(&h, ACCEPTANCE_LINALG)?,
        );
        ensure!(
            joined.matches(&sg.pairwise_sums(&sh), 1e-6),
            "trial {trial}: volume Laplacian of G+H is not the pairwise sums"
        );
    }
    Ok("30 join pairs, 20 volume Laplacian pairs".into())
}

fn generating_functions(seed: u64) -> Check {
    let mut rng = rng_for(seed, 7);
    for trial in 0..100 {
        let p = rng.random_range(0.1..0.9);
        let g = random_graph(&mut rng, 7, p);
        let h = random_graph(&mut rng, 7, p);
        let whitney = |x: &Graph| SimplicialComplex::whitney(x, ACCEPTANCE_SIMPLICES);
        let (wg, wh, wj) = (whitney(&g)?, whitney(&h)?, whitney(&g.join(&h))?);
        let product = wg.f_generating_function() * wh.f_generating_function();
        ensure!(wj.f_generating_function() == product, "trial {trial}: f(G+H) ≠ f(G)f(H)");
        let (a, b, c) = (wg.euler_characteristic(), wh.euler_characteristic(), wj.euler_characteristic());
        ensure!(c == a + b - a * b, "trial {trial}: χ(G+H) = {c}, χ(G) = {a}, χ(H) = {b}");
        ensure!(1 - c == (1 - a) * (1 - b), "trial {trial}: i is not multiplicative");
    }
    Ok("100 pairs".into())
}

fn random_element(rng: &mut impl Rng, view: View) -> Result<RingElement, Failure> {
    let mut e = RingElement::zero(view);
    for _ in 0..rng.random_range(1..=3) {
        let p = rng.random_range(0.2..0.8);
        let g = random_graph(rng, 5, p);
        let k = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
        e = e.add(&RingElement::from_graph(&g, view)?.scale(k))?;
    }
    Ok(e)
}

fn ring_laws(seed: u64) -> Check {
    let mut rng = rng_for(seed, 8);
    let budget = 200;
    for trial in 0..100 {
        let view = if trial % 2 == 0 { View::Zykov } else { View::Strong };
        let [a, b, c] = [0; 3].map(|_| random_element(&mut rng, view));
        let (a, b, c) = (a?, b?, c?);
        let mul = |x: &RingElement, y: &RingElement| x.mul(y, budget);
        ensure!(a.add(&b)?.add(&c)? == a.add(&b.add(&c)?)?, "trial {trial}: + is not associative");
        ensure!(a.add(&b)? == b.add(&a)?, "trial {trial}: + is not commutative");
        ensure!(mul(&mul(&a, &b)?, &c)? == mul(&a, &mul(&b, &c)?)?, "trial {trial}: · is not associative");
        ensure!(mul(&a, &b)? == mul(&b, &a)?, "trial {trial}: · is not commutative");
        ensure!(
            mul(&a, &b.add(&c)?)? == mul(&a, &b)?.add(&mul(&a, &c)?)?,
            "trial {trial}: · does not distribute over +"
        );
        ensure!(mul(&a, &RingElement::one(view))? == a, "trial {trial}: 1 is not a unit");
        ensure!(a.sub(&a)?.is_zero(), "trial {trial}: a − a ≠ 0");
        let (da, db) = (a.dualize()?, b.dualize()?);
        ensure!(da.view() == view.dual() && da.dualize()? == a, "trial {trial}: duality does not round-trip");
        ensure!(mul(&a, &b)?.dualize()? == mul(&da, &db)?, "trial {trial}: duality is not multiplicative");
        ensure!(a.add(&b)?.dualize()? == da.add(&db)?, "trial {trial}: duality is not additive");

        let p = rng.random_range(0.2..0.8);
        let g = random_graph(&mut rng, 7, p);
        let primes = additive_prime_factorization(&g, view)?;
        let rebuilt = primes
            .iter()
            .skip(1)
            .fold(primes[0].clone(), |acc, q| view.add_graphs(&acc, q));
        ensure!(iso(&rebuilt, &g)?, "trial {trial}: additive factors do not rebuild the graph");
        for q in &primes {
            ensure!(
                additive_prime_factorization(q, view)?.len() == 1,
                "trial {trial}: an additive factor is not prime"
            );
        }
    }
    for n in 1..=12usize {
        let mut expected = Vec::new();
        let mut m = n;
        for d in 2..=n {
            while m % d == 0 {
                expected.push(canonical_form(&Graph::complete(d), &CanonBudget::default())?);
                m /= d;
            }
        }
        expected.sort();
        for view in [View::Zykov, View::Strong] {
            let found = prime_factorizations(&Graph::complete(n), view, 1_000_000)?;
            ensure!(found == [expected.clone()], "K{n} in the {view} ring has {} factorizations", found.len());
        }
    }
    Ok("100 triples, K1 … K12 factor uniquely".into())
}

/// Largest clique by extending every clique one vertex at a time, without
/// pivoting or pruning.
fn brute_force_clique_number(g: &Graph) -> usize {
    fn grow(g: &Graph, clique: &mut Vec<usize>, from: usize, best: &mut usize) {
        *best = (*best).max(clique.len());
        for v in from..g.order() {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
                grow(g, clique, v + 1, best);
                clique.pop();
            }
        }
    }
    let mut best = 0;
    grow(g, &mut Vec::new(), 0, &mut best);
    best
}

fn errata(_seed: u64) -> Check {
    let k2 = Graph::complete(2);
    let tensor = tensor_product(&k2, &k2);
    ensure!(iso(&tensor, &k2.disjoint_union(&k2))?, "K2⊗K2 is not K2⊕K2");
    ensure!(!iso(&tensor, &Graph::cycle(4)?)?, "K2⊗K2 is C4");
    let cart = cartesian_graph(&k2, &k2, 100)?;
    ensure!((cart.order(), cart.size()) == (9, 16), "K2×K2 has {} vertices, {} edges", cart.order(), cart.size());
    ensure!(iso(&cart, &Graph::wheel(8)?)?, "K2×K2 is not the 8-spoke wheel");
    ensure!(!iso(&cart, &Graph::wheel(6)?)?, "K2×K2 is W6");
    let c5 = Graph::cycle(5)?;
    let p = crate::products::zykov_product(&c5, &c5);
    let (w, w5) = (brute_force_clique_number(&p), brute_force_clique_number(&c5));
    ensure!(w == 5, "clique(C5·C5) = {w}");
    ensure!(max_clique_size(&p) == w, "clique enumeration disagrees with brute force");
    ensure!(w != w5 * w5, "clique number is multiplicative on C5·C5");
    Ok(format!("clique(C5·C5) = {w}, clique(C5)² = {}", w5 * w5))
}

fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    let lit = |f: Family| Expr::Literal(Literal::Named(f));
    if depth == 0 || rng.random_bool(0.3) {
        return match rng.random_range(0..14) {
            0 => lit(Family::Complete(rng.random_range(1..7))),
            1 => lit(Family::Points(rng.random_range(1..7))),
            2 => lit(Family::Cycle(rng.random_range(4..8))),
            3 => lit(Family::Star(rng.random_range(1..6))),
            4 => lit(Family::Wheel(rng.random_range(4..7))),
            5 => lit(Family::Linear(rng.random_range(1..5))),
            6 => lit(Family::CompleteBipartite(rng.random_range(1..4), rng.random_range(1..4))),
            7 => lit(Family::CrossPolytope(rng.random_range(0..4))),
            8 => lit(Family::Bouquet(rng.random_range(1..4))),
            9 => lit(*[Family::Octahedron, Family::Kite, Family::Windmill].choose(rng).expect("nonempty")),
            10 => Expr::Literal(Literal::Witness63),
            11 => Expr::Literal(Literal::File(format!("graphs/g{}.json", rng.random_range(0..10)))),
            _ => Expr::Literal(Literal::Integer(rng.random_range(0..20))),
        };
    }
    let sub = |rng: &mut R| Box::new(random_expr(rng, depth - 1));
    let op = |rng: &mut R, op| Expr::Binary(op, sub(rng), sub(rng));
    match rng.random_range(0..6) {
        0 => Expr::Complement(sub(rng)),
        1 => Expr::Power(sub(rng), rng.random_range(0..4)),
        2 => op(rng, BinOp::Add),
        3 => op(rng, BinOp::Sub),
        4 => op(rng, BinOp::Mul),
        _ => {
            let f = *[Func::Strong, Func::Weak, Func::Tensor, Func::Cart, Func::Union]
                .choose(rng)
                .expect("nonempty");
            let k = rng.random_range(1..4);
            Expr::Call(f, (0..k).map(|_| random_expr(rng, depth - 1)).collect())
        }
    }
}

/// Pinned invocations and their expected output.
pub const GOLDEN: [(&[&str], &str); 12] = [
    (&["eval", "C4^2"], include_str!("../tests/golden/eval_c4_squared.json")),
    (&["eval", "K2*K3", "--out", "edges"], include_str!("../tests/golden/eval_k2_k3_edges.json")),
    (&["eval", "(C4 - S4)*(C4 + S4)"], include_str!("../tests/golden/eval_difference_of_squares.json")),
    (&["chi", "Sph3"], include_str!("../tests/golden/chi_sph3.json")),
    (&["fvec", "Oct"], include_str!("../tests/golden/fvec_oct.json")),
    (&["betti", "cart(C4,C4)"], include_str!("../tests/golden/betti_cart_c4.json")),
    (&["poincare", "--mode", "strong", "C4*C5 - 2"], include_str!("../tests/golden/poincare_strong.json")),
    (&["spec", "C4", "--matrix", "kirchhoff"], include_str!("../tests/golden/spec_c4_kirchhoff.json")),
    (&["energy", "W5"], include_str!("../tests/golden/energy_w5.json")),
    (&["iso", "Windmill^2", "P9 + 4*S3"], include_str!("../tests/golden/iso_windmill.json")),
    (&["addfactor", "Kite"], include_str!("../tests/golden/addfactor_kite.json")),
    (&["primetest", "C4"], include_str!("../tests/golden/primetest_c4.json")),
];

fn parser_and_cli(seed: u64) -> Check {
    let mut rng = rng_for(seed, 10);
    let mut distinct = HashSet::new();
    for trial in 0..200 {
        let e = random_expr(&mut rng, 4);
        let text = e.to_string();
        let back = parse(&text).map_err(|err| Failure(format!("trial {trial}: {text:?} does not parse: {err}")))?;
        ensure!(back == e, "trial {trial}: {text:?} parses to a different tree");
        ensure!(back.to_string() == text, "trial {trial}: printing is not stable for {text:?}");
        distinct.insert(text);
    }
    for (args, expected) in GOLDEN {
        let argv = || std::iter::once("netarith").chain(args.iter().copied());
        let first = run_with_budgets(argv(), Budgets::default());
        let second = run_with_budgets(argv(), Budgets::default());
        ensure!(first == second, "netarith {} is not stable across runs", args.join(" "));
        ensure!(first.code == 0, "netarith {} exited {}", args.join(" "), first.code);
        ensure!(first.output == expected, "netarith {} printed {:?}", args.join(" "), first.output);
    }
    Ok(format!("200 expressions ({} distinct), {} golden invocations", distinct.len(), GOLDEN.len()))
}
