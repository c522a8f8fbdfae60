use netarith::canon::{canonical_form, is_isomorphic, CanonBudget};
use netarith::products::{
    cartesian_graph, product_cell_complex, strong_product, tensor_product, weak_product, zykov_product,
};
use netarith::simplicial::{max_clique_size, SimplicialComplex};
use netarith::topology::{betti, euler_characteristic_poincare_hopf, is_contractible, wu_characteristic, CellComplex, Verdict};
use netarith::{Graph, RingElement, View};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn view() -> impl Strategy<Value = View> {
    prop_oneof![Just(View::Zykov), Just(View::Strong)]
}

fn element(v: View) -> impl Strategy<Value = RingElement> {
    proptest::collection::vec((graph(4), -2i64..=2), 1..=3).prop_map(move |terms| {
        terms.iter().fold(RingElement::zero(v), |acc, (g, k)| {
            acc.add(&RingElement::from_graph(g, v).unwrap().scale(*k)).unwrap()
        })
    })
}

fn iso(a: &Graph, b: &Graph) -> bool {
    is_isomorphic(a, b, &CanonBudget::default()).unwrap()
}

fn chi(g: &Graph) -> i64 {
    SimplicialComplex::whitney(g, 1_000_000).unwrap().euler_characteristic()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels(g in graph(8), seed in any::<u64>()) {
        let n = g.order();
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let b = CanonBudget::default();
        prop_assert_eq!(canonical_form(&g, &b).unwrap(), canonical_form(&g.permuted(&order), &b).unwrap());
    }

    #[test]
    fn products_commute_and_associate(g in graph(4), h in graph(4), k in graph(3)) {
        for op in [weak_product, tensor_product, strong_product, zykov_product] {
            prop_assert!(iso(&op(&g, &h), &op(&h, &g)));
            prop_assert!(iso(&op(&op(&g, &h), &k), &op(&g, &op(&h, &k))));
        }
        prop_assert!(iso(&g.join(&h), &h.join(&g)));
    }

    #[test]
    fn complement_exchanges_the_rings(g in graph(5), h in graph(5)) {
        let (cg, ch) = (g.complement(), h.complement());
        prop_assert!(iso(&zykov_product(&g, &h).complement(), &strong_product(&cg, &ch)));
        prop_assert!(iso(&g.join(&h).complement(), &cg.disjoint_union(&ch)));
    }

    #[test]
    fn ring_axioms((a, b, c) in view().prop_flat_map(|v| (element(v), element(v), element(v)))) {
        let v = a.view();
        let budget = 200;
        prop_assert_eq!(a.mul(&b.add(&c).unwrap(), budget).unwrap(), a.mul(&b, budget).unwrap().add(&a.mul(&c, budget).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b, budget).unwrap().mul(&c, budget).unwrap(), a.mul(&b.mul(&c, budget).unwrap(), budget).unwrap());
        prop_assert_eq!(a.mul(&b, budget).unwrap(), b.mul(&a, budget).unwrap());
        prop_assert_eq!(a.dualize().unwrap().dualize().unwrap(), a.clone());
        if v == View::Strong {
            prop_assert_eq!(a.mul(&b, budget).unwrap().chi_hom().unwrap(), a.chi_hom().unwrap() * b.chi_hom().unwrap());
        } else {
            prop_assert_eq!(a.add(&b).unwrap().clique_hom().unwrap(), a.clique_hom().unwrap() + b.clique_hom().unwrap());
        }
    }

    #[test]
    fn euler_characteristic_two_ways(g in graph(9)) {
        prop_assert_eq!(euler_characteristic_poincare_hopf(&g, 1_000_000).unwrap(), chi(&g));
    }

    #[test]
    fn barycentric_refinement_keeps_homology(g in graph(6)) {
        let c = SimplicialComplex::whitney(&g, 10_000).unwrap();
        let r = SimplicialComplex::whitney(&c.barycentric_refinement(), 100_000).unwrap();
        prop_assert_eq!(r.euler_characteristic(), c.euler_characteristic());
        prop_assert_eq!(betti(&r, 100_000).unwrap(), betti(&c, 100_000).unwrap());
    }

    #[test]
    fn strong_clique_number_is_multiplicative(g in graph(6), h in graph(6)) {
        prop_assert_eq!(max_clique_size(&strong_product(&g, &h)), max_clique_size(&g) * max_clique_size(&h));
    }

    #[test]
    fn wu_is_multiplicative_for_cell_products(g in graph(4), h in graph(4)) {
        let (cg, ch) = (
            SimplicialComplex::whitney(&g, 1000).unwrap(),
            SimplicialComplex::whitney(&h, 1000).unwrap(),
        );
        let p = product_cell_complex(&g, &h, 1000).unwrap();
        prop_assert_eq!(
            wu_characteristic(&p, 10_000).unwrap(),
            wu_characteristic(&cg, 10_000).unwrap() * wu_characteristic(&ch, 10_000).unwrap()
        );
    }

    #[test]
    fn cartesian_graph_is_homotopic_to_strong(g in graph(4), h in graph(4)) {
        let cart = cartesian_graph(&g, &h, 10_000).unwrap();
        prop_assert_eq!(chi(&cart), chi(&strong_product(&g, &h)));
        prop_assert_eq!(chi(&cart), chi(&g) * chi(&h));
    }
}

#[test]
fn wu_fails_for_the_strong_product() {
    // K2⊠K2 = K4 is a 3-simplex with ω = -1, while ω(K2)² = 1.
    let k2 = Graph::complete(2);
    let w = |g: &Graph| wu_characteristic(&SimplicialComplex::whitney(g, 100).unwrap(), 100).unwrap();
    assert_eq!(w(&k2), -1);
    assert_eq!(w(&strong_product(&k2, &k2)), -1);
    assert_ne!(w(&strong_product(&k2, &k2)), w(&k2) * w(&k2));
    let cells = product_cell_complex(&k2, &k2, 100).unwrap();
    assert_eq!(wu_characteristic(&cells, 100).unwrap(), 1);
}

#[test]
fn clique_number_is_not_multiplicative_for_zykov() {
    let c5 = RingElement::from_graph(&Graph::cycle(5).unwrap(), View::Zykov).unwrap();
    assert_eq!(c5.clique_hom().unwrap(), 2);
    assert_eq!(c5.mul(&c5, 100).unwrap().clique_hom().unwrap(), 5);
    let k2k3 = RingElement::from_graph(&Graph::complete(2).join(&Graph::complete(3)), View::Zykov).unwrap();
    assert_eq!(k2k3.clique_hom().unwrap(), 5);
    assert!(RingElement::one(View::Strong).clique_hom().is_err());
}

#[test]
fn contractibility_of_small_families() {
    assert_eq!(is_contractible(&Graph::star(5), 1000), Verdict::Yes);
    assert_eq!(is_contractible(&Graph::cycle(5).unwrap(), 1000), Verdict::No);
    let cone = Graph::complete(1).join(&Graph::octahedron());
    assert_eq!(is_contractible(&cone, 1000), Verdict::Yes);
    let w = netarith::ring::nonunique_factorization_witness();
    assert_eq!(is_contractible(&w.product, 1000), Verdict::Yes);
}

#[test]
fn cell_product_counts() {
    let (g, h) = (Graph::cycle(4).unwrap(), Graph::complete(3));
    let p = product_cell_complex(&g, &h, 1000).unwrap();
    assert_eq!(p.len(), 8 * 7);
    assert_eq!(p.euler_characteristic(), 0);
}
