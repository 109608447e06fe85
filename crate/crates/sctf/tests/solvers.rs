mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sctf::graph::{disjoint_union, Graph, VertexSet};
use sctf::iso::is_free_of;
use sctf::solvers::{
    brute_force_solve, brute_force_solve_with, enumerate_component_partitions, enumerate_split_partitions,
    format_result, is_paw_free, paw_solve, paw_solve_with, shrink_paw_instance, shrink_paw_instance_traced,
    single_component_brute_oracle, BruteOracle, ComponentPattern, PartitionMode, PawOptions, PawStep,
};

const CAP: usize = 18;

fn bits(v: &[usize]) -> u64 {
    v.iter().fold(0, |m, &x| m | 1 << x)
}

/// Every bipartition of `host` screened against the definitions directly.
fn scan_partitions(g: &Graph, host: &[usize]) -> (Vec<u64>, Vec<u64>) {
    let a = common::matrix(g);
    let independent = |s: &[usize]| s.iter().all(|&x| s.iter().all(|&y| !a[x][y]));
    let mut split = Vec::new();
    let mut comp = Vec::new();
    for m in 0u64..1 << host.len() {
        let x: Vec<usize> = (0..host.len()).filter(|i| m >> i & 1 == 1).map(|i| host[i]).collect();
        let y: Vec<usize> = host.iter().copied().filter(|v| !x.contains(v)).collect();
        let no_triple = common::k_subsets(y.len(), 3)
            .iter()
            .all(|t| !independent(&t.iter().map(|&i| y[i]).collect::<Vec<_>>()));
        if independent(&x) && no_triple {
            split.push(bits(&x));
        }
        if x.is_empty() || common::connected(g, &x) || (x.len() <= 3 && independent(&x)) {
            comp.push(bits(&x));
        }
    }
    split.sort_unstable();
    comp.sort_unstable();
    (split, comp)
}

fn check_partitions(g: &Graph, host: &[usize]) {
    let hv = VertexSet::from(host.to_vec());
    let (want_split, want_comp) = scan_partitions(g, host);
    let mut got: Vec<u64> = enumerate_split_partitions(g, &hv, CAP)
        .unwrap()
        .iter()
        .map(|p| {
            assert_eq!(p.p_side.len() + p.q_side.len(), host.len());
            bits(p.p_side.as_slice())
        })
        .collect();
    got.sort_unstable();
    assert_eq!(got, want_split, "split partitions of {host:?} in {:?}", g.edges());
    let mut got: Vec<u64> = enumerate_component_partitions(g, &hv, CAP, PartitionMode::Exhaustive)
        .unwrap()
        .iter()
        .map(|p| {
            assert_eq!(p.x_side.len() + p.y_side.len(), host.len());
            bits(p.x_side.as_slice())
        })
        .collect();
    got.sort_unstable();
    assert_eq!(got, want_comp, "component partitions of {host:?} in {:?}", g.edges());
}

#[test]
fn partitions_match_bipartition_scan() {
    let k3 = Graph::complete(3);
    let e3 = Graph::empty(3);
    let all = VertexSet::full(3);
    assert_eq!(enumerate_split_partitions(&k3, &all, CAP).unwrap().len(), 4);
    assert_eq!(enumerate_split_partitions(&e3, &all, CAP).unwrap().len(), 7);
    assert_eq!(enumerate_component_partitions(&k3, &all, CAP, PartitionMode::Exhaustive).unwrap().len(), 8);
    assert_eq!(enumerate_component_partitions(&e3, &all, CAP, PartitionMode::Exhaustive).unwrap().len(), 8);
    let empty = enumerate_split_partitions(&k3, &VertexSet::new(), CAP).unwrap();
    assert_eq!(empty.len(), 1);
    assert!(empty[0].p_side.is_empty() && empty[0].q_side.is_empty());
    assert!(enumerate_split_partitions(&Graph::empty(20), &VertexSet::full(20), CAP).is_err());
    assert!(enumerate_component_partitions(&Graph::empty(20), &VertexSet::full(20), CAP, PartitionMode::Polynomial).is_err());

    // the host's neighbourhood decides connectivity, not just the host
    for mask in 0..1u64 << common::pairs(6) {
        if mask % 7 != 0 {
            continue;
        }
        let g = common::from_mask(6, mask);
        check_partitions(&g, &[0, 1, 2, 3, 4]);
        check_partitions(&g, &[1, 3, 5]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let g = common::random_graph(&mut rng, 10, 0.4);
        let host: Vec<usize> = (0..10).filter(|_| rng.gen_bool(0.7)).collect();
        check_partitions(&g, &host);
        let hv = VertexSet::from(host.clone());
        for p in enumerate_component_partitions(&g, &hv, CAP, PartitionMode::Exhaustive).unwrap() {
            if p.x_side.len() >= 4 {
                assert!(common::connected(&g, p.x_side.as_slice()));
            }
        }
        // the restricted mode offers a subset of the exhaustive X-sides
        let full: Vec<u64> = enumerate_component_partitions(&g, &hv, CAP, PartitionMode::Exhaustive)
            .unwrap()
            .iter()
            .map(|p| bits(p.x_side.as_slice()))
            .collect();
        for p in enumerate_component_partitions(&g, &hv, CAP, PartitionMode::Polynomial).unwrap() {
            assert!(full.contains(&bits(p.x_side.as_slice())));
        }
    }
}

#[test]
fn brute_force_examples() {
    let paw = Graph::paw();
    let s = brute_force_solve(&paw, &paw, 1 << 10).unwrap().unwrap();
    assert_eq!(s.members.len(), 2);
    assert!(common::paw_free(&common::flip(&paw, s.members.as_slice())));
    // no subgraph complement of C5 is a disjoint union of cliques
    assert!(brute_force_solve(&Graph::cycle(5), &Graph::path(3), 1 << 10).unwrap().is_none());
    let c5 = brute_force_solve(&Graph::cycle(5), &paw, 1 << 10).unwrap().unwrap();
    assert!(c5.members.is_empty());
    assert_eq!(format_result(&Ok(Some(c5))), "verdict: yes\nS:\n");
    assert_eq!(format_result(&brute_force_solve(&Graph::cycle(5), &Graph::path(3), 1 << 10)), "verdict: no\n");
    let over = brute_force_solve(&Graph::empty(30), &paw, 1 << 24);
    assert!(over.is_err());
    assert!(format_result(&over).starts_with("verdict: budget"));
}

#[test]
fn single_component_oracle_examples() {
    let k4 = single_component_brute_oracle(&Graph::complete(4), ComponentPattern::K3, 1 << 10).unwrap().unwrap();
    assert!(!common::has_induced(&common::flip(&Graph::complete(4), k4.members.as_slice()), &Graph::complete(3)));
    let e3 = single_component_brute_oracle(&Graph::empty(3), ComponentPattern::K3, 1 << 10).unwrap().unwrap();
    assert!(e3.members.is_empty());
    let p3 = single_component_brute_oracle(&Graph::path(3), ComponentPattern::K2PlusK1, 1 << 10).unwrap().unwrap();
    assert!(p3.members.is_empty());
    // every answer against an exhaustive scan
    let k2k1 = Graph::k2_plus_k1();
    for mask in 0..1u64 << common::pairs(5) {
        let g = common::from_mask(5, mask);
        for (pattern, h) in [(ComponentPattern::K3, Graph::complete(3)), (ComponentPattern::K2PlusK1, k2k1.clone())] {
            let want = common::subsets(5).iter().any(|s| !common::has_induced(&common::flip(&g, s), &h));
            let got = single_component_brute_oracle(&g, pattern, 1 << 10).unwrap();
            assert_eq!(got.is_some(), want, "{pattern:?} on {:?}", g.edges());
            if let Some(s) = got {
                assert!(!common::has_induced(&common::flip(&g, s.members.as_slice()), &h));
            }
        }
    }
    assert!(single_component_brute_oracle(&Graph::empty(30), ComponentPattern::K3, 1 << 20).is_err());
}

fn brute_verdict(g: &Graph) -> bool {
    brute_force_solve(g, &Graph::paw(), 1 << 20).unwrap().is_some()
}

#[test]
fn shrinking_keeps_the_verdict() {
    // C5 is paw-free, so the whole graph goes
    assert_eq!(shrink_paw_instance(&Graph::cycle(5)).n(), 0);
    // K7 hung off a paw: the six true twins outside the attachment shrink to three
    let mut g = disjoint_union(&Graph::complete(7), &Graph::paw());
    g.add_edge(0, 7);
    let s = shrink_paw_instance(&g);
    assert_eq!(s.n(), g.n() - 3);
    let twins: Vec<Vec<usize>> = sctf::modular::true_twin_classes(&g).into_iter().filter(|c| c.len() >= 4).collect();
    assert_eq!(twins, vec![vec![1, 2, 3, 4, 5, 6]]);

    let check = |g: &Graph| {
        let traced = shrink_paw_instance_traced(g);
        let want = brute_verdict(g);
        assert_eq!(brute_verdict(&traced.graph), want, "{:?}", g.edges());
        if let Some(s) = brute_force_solve(&traced.graph, &Graph::paw(), 1 << 20).unwrap() {
            let lifted = traced.lift(&s.members);
            assert!(common::paw_free(&common::flip(g, lifted.as_slice())), "{:?}", g.edges());
        }
    };
    for n in 1..=6 {
        (0..1u64 << common::pairs(n)).into_par_iter().for_each(|mask| check(&common::from_mask(n, mask)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sampled: Vec<Graph> = (0..600).map(|i| common::random_graph(&mut rng, 7 + i % 2, 0.5)).collect();
    sampled.par_iter().for_each(check);
    // graphs with large twin classes, where shrinking actually cuts
    for k in 4..=6 {
        for mask in 0..1u64 << 3 {
            let mut g = disjoint_union(&Graph::paw(), &Graph::empty(k));
            for v in 4..4 + k {
                for a in 0..3 {
                    if mask >> a & 1 == 1 {
                        g.add_edge(a, v);
                    }
                }
            }
            check(&g);
            let mut c = g.clone();
            for u in 4..4 + k {
                for v in u + 1..4 + k {
                    c.add_edge(u, v);
                }
            }
            check(&c);
        }
    }
}

/// Connected paw-free graphs to glue together.
fn pieces() -> Vec<Graph> {
    vec![
        Graph::complete(1),
        Graph::complete(2),
        Graph::complete(3),
        Graph::path(3),
        Graph::path(4),
        Graph::cycle(4),
        Graph::cycle(5),
        Graph::star(3),
        Graph::complete(4),
    ]
}

fn diamond() -> Graph {
    let mut g = Graph::complete(4);
    g.remove_edge(0, 1);
    g
}

fn octahedron() -> Graph {
    let mut g = Graph::complete(6);
    for v in 0..3 {
        g.remove_edge(v, v + 3);
    }
    g
}

#[test]
fn planted_three_component_solutions_are_found() {
    let pool = pieces();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut triangle_step = 0;
    let mut planted = 0;
    let mut premise = 0;
    while planted < 300 {
        let parts = rng.gen_range(3..=4);
        let mut h = Graph::empty(0);
        for _ in 0..parts {
            h = disjoint_union(&h, &pool[rng.gen_range(0..pool.len())]);
        }
        let dense = [Graph::complete(3), Graph::complete(4), diamond(), octahedron()];
        if planted % 2 == 0 {
            h = Graph::empty(0);
            for _ in 0..parts {
                h = disjoint_union(&h, &dense[rng.gen_range(0..dense.len())]);
            }
        }
        if h.n() > 11 {
            continue;
        }
        let s: Vec<usize> = (0..h.n()).filter(|_| rng.gen_bool(0.5)).collect();
        let g = common::flip(&h, &s);
        if is_paw_free(&g) {
            continue;
        }
        planted += 1;
        let report = paw_solve_with(&g, &BruteOracle::default(), &PawOptions::default()).unwrap();
        let found = report.solution.as_ref().expect("planted instance answered NO");
        assert!(common::paw_free(&common::flip(&g, found.members.as_slice())));
        if report.step == PawStep::Triangle {
            triangle_step += 1;
        }
        // the premise is about the instance the steps actually see
        let shrunk = shrink_paw_instance_traced(&g);
        let origin = shrunk.origin();
        let kept: Vec<usize> = (0..origin.len()).filter(|&i| s.contains(&origin[i])).collect();
        if common::flip(&shrunk.graph, &kept).components().len() < 3 {
            continue;
        }
        premise += 1;
        assert!(
            matches!(report.step, PawStep::SingleComponent(_) | PawStep::Triangle),
            "planted {:?} with S={s:?} decided at {:?}",
            h.edges(),
            report.step
        );
    }
    eprintln!("triangle step decided {triangle_step} of {planted}; premise held on {premise}");
    assert!(triangle_step > 0 && premise >= 100);
}

#[test]
fn paw_witnesses_are_sound() {
    let o = BruteOracle::default();
    let r = paw_solve_with(&Graph::cycle(5), &o, &PawOptions::default()).unwrap();
    assert_eq!((r.step, r.solution.unwrap().members.len()), (PawStep::AlreadyFree, 0));
    let s = paw_solve(&Graph::paw(), &o).unwrap().unwrap();
    assert!(common::paw_free(&common::flip(&Graph::paw(), s.members.as_slice())));

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let graphs: Vec<Graph> = (0..200).map(|i| common::random_graph(&mut rng, 7 + i % 4, 0.5)).collect();
    graphs.par_iter().for_each(|g| {
        let brute = brute_force_solve(g, &Graph::paw(), 1 << 20).unwrap();
        let fast = paw_solve(g, &o).unwrap();
        assert_eq!(brute.is_some(), fast.is_some(), "{:?}", g.edges());
        for s in brute.iter().chain(fast.iter()) {
            assert!(common::paw_free(&common::flip(g, s.members.as_slice())));
        }
    });
}

/// First solution in (size, lexicographic) order by a plain sequential scan.
fn canonical_first(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let mut all = common::subsets(g.n());
    all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    all.into_iter().find(|s| is_free_of(&common::flip(g, s), h))
}

#[test]
fn deterministic_mode_returns_the_canonical_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let targets = [Graph::paw(), Graph::path(3), Graph::complete(3)];
    let mut yes = 0;
    for i in 0..24 {
        let n = if i < 12 { 8 } else { 14 };
        // sparse unions of small blocks keep yes-instances common at 14 vertices
        let g = if n == 14 {
            let mut g = Graph::empty(0);
            while g.n() < 14 {
                g = disjoint_union(&g, &pieces()[rng.gen_range(0..5)]);
            }
            let keep: Vec<usize> = (0..14).collect();
            let mut g = g.induced_subgraph(&keep);
            for _ in 0..3 {
                let (u, v) = (rng.gen_range(0..14), rng.gen_range(0..14));
                if u != v {
                    g.toggle_edge(u, v);
                }
            }
            g
        } else {
            common::random_graph(&mut rng, n, 0.5)
        };
        let h = &targets[i % 3];
        let want = canonical_first(&g, h);
        let got = brute_force_solve_with(&g, h, 1 << 20, true).unwrap().map(|s| s.members.into_vec());
        assert_eq!(got, want, "{:?} vs {:?}", g.edges(), h.edges());
        let any = brute_force_solve_with(&g, h, 1 << 20, false).unwrap();
        assert_eq!(any.as_ref().map(|s| s.members.len()), want.as_ref().map(Vec::len));
        if let Some(s) = any {
            assert!(is_free_of(&common::flip(&g, s.members.as_slice()), h));
        }
        yes += want.is_some() as usize;
    }
    assert!(yes >= 6);
}

#[test]
fn restricted_partition_mode_is_sound() {
    let o = BruteOracle::default();
    let opts = PawOptions { mode: PartitionMode::Polynomial, ..PawOptions::default() };
    let missed: usize = (0..1u64 << common::pairs(6))
        .into_par_iter()
        .map(|mask| {
            let g = common::from_mask(6, mask);
            let r = paw_solve_with(&g, &o, &opts).unwrap();
            if let Some(s) = &r.solution {
                assert!(common::paw_free(&common::flip(&g, s.members.as_slice())));
            }
            (r.solution.is_none() && brute_verdict(&g)) as usize
        })
        .sum();
    assert_eq!(missed, 0, "restricted mode answered NO on {missed} yes-instances");
}
