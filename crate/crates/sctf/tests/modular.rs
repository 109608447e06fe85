mod common;

use rayon::prelude::*;

use sctf::graph::{complement, Graph, VertexSet};
use sctf::modular::{is_module, is_prime, maximal_strong_modules, quotient_graph, quotient_of};
use sctf::reductions::blowup_independent;
use sctf::trees::{build_tree, enumerate_free_trees, TreeSpec};

/// Compare against the subset-scan oracle on one graph; `None` when the partition is undefined.
fn check_one(g: &Graph) -> Option<usize> {
    let n = g.n();
    let expect_prime = common::prime(g);
    assert_eq!(is_prime(g), expect_prime, "is_prime on {:?}", g.edges());
    let all: Vec<usize> = (0..n).collect();
    let defined = expect_prime || (n >= 2 && common::connected(g, &all) && common::connected(&complement(g), &all));
    match maximal_strong_modules(g) {
        Err(_) => {
            assert!(!defined, "partition rejected on {:?}", g.edges());
            None
        }
        Ok(p) => {
            assert!(defined, "partition accepted on {:?}", g.edges());
            let got: Vec<Vec<usize>> = p.parts.iter().map(|s| s.as_slice().to_vec()).collect();
            let want = if expect_prime { (0..n).map(|v| vec![v]).collect() } else { common::maximal_strong(g) };
            assert_eq!(got, want, "parts of {:?}", g.edges());
            for part in &got {
                assert!(is_module(g, &VertexSet::from(part.clone())));
            }
            let q = quotient_of(&p);
            assert!(common::prime(&q) || q.n() <= 2, "quotient of {:?} is not prime", g.edges());
            Some(q.n())
        }
    }
}

#[test]
fn exhaustive_up_to_six_vertices() {
    for n in 1..=6 {
        let defined: usize = (0..1u64 << common::pairs(n))
            .into_par_iter()
            .map(|mask| check_one(&common::from_mask(n, mask)).is_some() as usize)
            .sum();
        assert!(defined > 0 || n < 4);
    }
}

#[test]
fn stated_examples() {
    let spider = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
    let p = maximal_strong_modules(&spider).unwrap();
    assert_eq!(p.sizes(), vec![1, 1, 1, 2, 2]);
    assert_eq!(p.parts[3].as_slice(), &[3, 4]);
    let q = quotient_graph(&spider).unwrap();
    assert!(common::isomorphic(&q, &build_tree(&TreeSpec::Tristar(1, 0, 1)).unwrap()));
    assert!(common::isomorphic(&q, &Graph::path(5)));

    assert_eq!(maximal_strong_modules(&Graph::path(4)).unwrap().sizes(), vec![1; 4]);

    let h = blowup_independent(&Graph::path(5), &[1, 1, 2, 1, 2]).unwrap();
    assert_eq!(h.n(), 7);
    let mut sizes = maximal_strong_modules(&h).unwrap().sizes();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 1, 2, 2]);
    assert!(common::isomorphic(&quotient_graph(&h).unwrap(), &Graph::path(5)));

    assert!(is_prime(&Graph::path(4)));
    assert!(!is_prime(&Graph::star(3)));
    assert!(!is_prime(&Graph::complete(2)));
    assert!(maximal_strong_modules(&Graph::empty(3)).is_err());
    assert!(maximal_strong_modules(&Graph::complete(3)).is_err());
}

#[test]
fn prime_graph_is_its_own_quotient() {
    for mask in 0..1u64 << 10 {
        let g = common::from_mask(5, mask);
        if is_prime(&g) {
            assert_eq!(quotient_graph(&g).unwrap(), g);
        }
    }
}

#[test]
fn tree_quotient_prime_iff_not_star() {
    for t in enumerate_free_trees(9).into_iter().filter(|t| t.n() >= 3) {
        let star = (0..t.n()).any(|v| t.degree(v) == t.n() - 1);
        // a star's complement is disconnected, so it has no quotient at all
        match quotient_graph(&t) {
            Ok(q) => assert!(!star && common::prime(&q), "{:?}", t.edges()),
            Err(_) => assert!(star, "{:?}", t.edges()),
        }
    }
}
