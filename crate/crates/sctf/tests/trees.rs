mod common;

use sctf::graph::{complement, Graph};
use sctf::hardness::{catalog_members, five_connected_verdict, hardness_verdict, is_catalog_member, verify_chain, Rule, Verdict};
use sctf::iso::is_isomorphic;
use sctf::modular::is_prime;
use sctf::trees::{
    build_tree, classify_shape, enumerate_free_trees, internal_tree, is_tree, parse_tree_spec, trees_isomorphic,
    TreeSpec,
};

/// Unlabelled free trees on `n` vertices, from the rooted-tree recurrence and Otter's dissimilarity formula.
fn otter_counts(max_n: usize) -> Vec<u64> {
    // rooted[n]: rooted unlabelled trees on n vertices
    let mut rooted = vec![0u64; max_n + 1];
    rooted[1] = 1;
    for n in 2..=max_n {
        let mut s = 0u64;
        for k in 1..n {
            let d_sum: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * rooted[d]).sum();
            s += d_sum * rooted[n - k];
        }
        rooted[n] = s / (n as u64 - 1);
    }
    let mut free = vec![0u64; max_n + 1];
    for n in 1..=max_n {
        let mut f = rooted[n] as i64;
        for i in 1..n {
            if i < n - i {
                f -= (rooted[i] * rooted[n - i]) as i64;
            }
        }
        if n % 2 == 0 {
            let h = rooted[n / 2] as i64;
            f -= h * (h - 1) / 2;
        }
        free[n] = f as u64;
    }
    free
}

#[test]
fn enumeration_matches_counting_formula() {
    let trees = enumerate_free_trees(13);
    let want = otter_counts(13);
    for n in 1..=13 {
        let got = trees.iter().filter(|t| t.n() == n).count() as u64;
        assert_eq!(got, want[n], "trees on {n} vertices");
    }
    assert_eq!(trees.len(), 2288);
    assert!(trees.iter().all(is_tree));
}

#[test]
fn enumeration_has_no_duplicates() {
    let trees: Vec<Graph> = enumerate_free_trees(8);
    for (i, a) in trees.iter().enumerate() {
        for b in &trees[i + 1..] {
            if a.n() == b.n() {
                assert!(!common::isomorphic(a, b), "{:?} ~ {:?}", a.edges(), b.edges());
            }
        }
    }
    let big = enumerate_free_trees(11);
    for (i, a) in big.iter().enumerate().filter(|(_, t)| t.n() >= 9) {
        for b in big[i + 1..].iter().filter(|t| t.n() == a.n()) {
            assert!(!trees_isomorphic(a, b));
        }
    }
}

#[test]
fn family_identities() {
    let iso = |a: &TreeSpec, b: &Graph| is_isomorphic(&build_tree(a).unwrap(), b);
    assert!(iso(&TreeSpec::bistar(1, 1), &Graph::path(4)));
    assert!(iso(&TreeSpec::claw(1, 1, 1), &Graph::star(3)));
    assert!(iso(&TreeSpec::tristar(1, 0, 1), &Graph::path(5)));
    assert_eq!(classify_shape(&Graph::path(7)).unwrap(), TreeSpec::Path(7));
    assert_eq!(TreeSpec::claw(1, 1, 2).canonical().unwrap(), TreeSpec::Bistar(1, 2));
    let t145 = build_tree(&TreeSpec::tristar(1, 4, 5)).unwrap();
    assert_eq!(t145.n(), 13);
    assert_eq!(classify_shape(&t145).unwrap(), TreeSpec::Tristar(1, 4, 5));
    assert_eq!(TreeSpec::tristar(5, 4, 1), TreeSpec::Tristar(1, 4, 5));
    assert_eq!(TreeSpec::claw(4, 1, 2), TreeSpec::ClawSubdivision(1, 2, 4));
}

#[test]
fn shape_roundtrip_on_canonical_parameters() {
    for x in 1..=4 {
        for y in x..=5 {
            let s = TreeSpec::Bistar(x, y);
            if x + y >= 3 {
                assert_eq!(classify_shape(&build_tree(&s).unwrap()).unwrap(), s);
            }
            for z in x..=5 {
                let t = TreeSpec::Tristar(x, y, z);
                assert_eq!(classify_shape(&build_tree(&t).unwrap()).unwrap(), t, "{t}");
            }
        }
    }
    // with three internal vertices a claw subdivision is a tristar (C1,2,2 = T1,1,1)
    for x in 1..=3 {
        for y in x.max(2)..=4 {
            for z in y.max(6usize.saturating_sub(x + y))..=5 {
                let c = TreeSpec::ClawSubdivision(x, y, z);
                assert_eq!(classify_shape(&build_tree(&c).unwrap()).unwrap(), c, "{c}");
            }
        }
    }
    assert_eq!(TreeSpec::claw(1, 2, 2).canonical().unwrap(), TreeSpec::Tristar(1, 1, 1));
    for n in 3..=8 {
        assert_eq!(classify_shape(&build_tree(&TreeSpec::Star(n)).unwrap()).unwrap(), TreeSpec::Star(n));
    }
}

#[test]
fn internal_trees() {
    assert!(is_isomorphic(&internal_tree(&Graph::path(6)).unwrap(), &Graph::path(4)));
    assert_eq!(internal_tree(&Graph::star(6)).unwrap().n(), 1);
    // K_{1,4} plus a pendant leaf on each of its leaves
    let mut edges: Vec<(usize, usize)> = (1..=4).map(|i| (0, i)).collect();
    edges.extend((1..=4).map(|i| (i, i + 4)));
    let t = Graph::from_edges(9, &edges).unwrap();
    assert!(is_isomorphic(&internal_tree(&t).unwrap(), &Graph::star(4)));
}

#[test]
fn spec_strings() {
    assert_eq!(parse_tree_spec("T2,5").unwrap(), TreeSpec::Bistar(2, 5));
    assert_eq!(parse_tree_spec("K1,5").unwrap(), TreeSpec::Star(5));
    assert_eq!(parse_tree_spec("C4,2,1").unwrap(), TreeSpec::ClawSubdivision(1, 2, 4));
    assert_eq!(parse_tree_spec("P6").unwrap(), TreeSpec::Path(6));
    for bad in ["T0,3", "C0,1,1", "Q3", "T1", "K2,3", ""] {
        assert!(parse_tree_spec(bad).is_err(), "{bad:?}");
    }
}

#[test]
fn catalog() {
    let members = catalog_members();
    assert_eq!(members.len(), 40);
    assert_eq!(members.iter().map(|t| t.n()).max(), Some(13));
    let biggest: Vec<&Graph> = members.iter().filter(|t| t.n() == 13).collect();
    assert_eq!(biggest.len(), 1);
    assert_eq!(classify_shape(biggest[0]).unwrap(), TreeSpec::Tristar(1, 4, 5));
    assert!(is_catalog_member(&Graph::path(5)));
    assert!(!is_catalog_member(&Graph::path(6)));
    for (i, a) in members.iter().enumerate() {
        assert!(is_tree(a));
        assert!(members[i + 1..].iter().all(|b| !trees_isomorphic(a, b)));
    }
}

fn summary(spec: &str) -> (Verdict, String) {
    let c = hardness_verdict(&build_tree(&parse_tree_spec(spec).unwrap()).unwrap()).unwrap();
    (c.verdict, c.summary())
}

#[test]
fn stated_verdicts() {
    assert_eq!(summary("K1,5"), (Verdict::Hard, "HARD; chain: RULE_STAR(x=5) [Prop star]".to_string()));
    assert_eq!(summary("T2,5"), (Verdict::Hard, "HARD; chain: RULE_BISTAR(2,5) [Thm bistar]".to_string()));
    assert_eq!(summary("P5").0, Verdict::Catalog);
    assert_eq!(summary("P4").0, Verdict::PolyKnown);
    let c114 = hardness_verdict(&build_tree(&TreeSpec::claw(1, 1, 4)).unwrap()).unwrap();
    assert_eq!(c114.verdict, Verdict::Hard);
    let rules: Vec<Rule> = c114.chain.iter().map(|l| l.rule).collect();
    assert_eq!(rules, vec![Rule::Duplication, Rule::P6]);
    assert!(is_isomorphic(&c114.chain[1].subject, &Graph::path(6)));
}

#[test]
fn chains_reverify_on_small_trees() {
    for t in enumerate_free_trees(11) {
        let c = hardness_verdict(&t).unwrap();
        assert_eq!(c.verdict.is_catalog(), is_catalog_member(&t), "{:?}", t.edges());
        if c.verdict == Verdict::Hard {
            verify_chain(&c.chain).unwrap_or_else(|e| panic!("{:?}: {e}", t.edges()));
            assert!(c.chain.last().unwrap().rule.is_base());
            assert!(is_isomorphic(&c.chain[0].subject, &t));
        }
    }
}

#[test]
fn five_connected_rule() {
    let c5 = Graph::cycle(5);
    assert!(five_connected_verdict(&c5).is_none());
    assert!(five_connected_verdict(&Graph::complete(5)).is_none());
    // complement of C10: 7-regular, prime, not self-complementary, K4 on {0,2,4,6}
    let h = complement(&Graph::cycle(10));
    assert!(common::connectivity(&h) >= 5);
    assert!(is_prime(&h));
    let cert = five_connected_verdict(&h).expect("meets the rule");
    assert_eq!(cert.verdict, Verdict::Hard);
    assert_eq!(cert.chain.last().unwrap().rule, Rule::FiveConn);
    verify_chain(&cert.chain).unwrap();
}
