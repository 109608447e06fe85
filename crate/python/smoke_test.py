"""Smoke test for the sctf_py extension module.

Build and install first:  pip install --no-build-isolation ./crates/sctf-py
"""

import itertools

import sctf_py as s


def cluster_free(g):
    p3 = s.Graph.pattern("P3")
    return g.is_free_of(p3)


def main():
    c5 = s.Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    assert (c5.n, c5.m) == (5, 5)
    assert s.Graph.from_text(c5.to_text()) == c5
    assert c5.flip(list(range(5))) == c5.complement()
    assert c5.flip([0, 2]).flip([0, 2]) == c5

    paw = s.Graph.pattern("paw")
    assert s.solve_paw(c5) == []
    assert s.solve_brute(c5, paw) == []
    # no subgraph complement of C5 is a union of cliques
    subsets = itertools.chain.from_iterable(itertools.combinations(range(5), k) for k in range(6))
    assert not any(cluster_free(c5.flip(list(x))) for x in subsets)
    assert s.solve_brute(c5, s.Graph.pattern("P3")) is None

    w = s.solve_paw(paw)
    assert w is not None and paw.flip(w).is_free_of(paw)

    spider = s.Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    assert sorted(map(len, spider.modules())) == [1, 1, 1, 2, 2]
    assert spider.quotient().n == 5
    assert s.Graph(4, [(0, 1), (1, 2), (2, 3)]).is_prime()

    verdict, summary = s.classify("T2,5")
    assert verdict == "HARD" and summary == "HARD; chain: RULE_BISTAR(2,5) [Thm bistar]"
    assert s.tree("C1,2,4").n == 8

    cnf = "p cnf 3 1\n1 -2 3 0\n"
    assert s.brute_sat_dimacs(cnf) == [False, False, False]
    assert "p cnf 4 1" in s.lift_3sat(cnf)
    g, roles, sol = s.p6_instance(cnf)
    assert g.n == len(roles) == 91
    assert g.flip(sol).is_free_of(s.Graph.pattern("P6"))

    try:
        s.Graph(2, [(0, 5)])
    except ValueError:
        pass
    else:
        raise AssertionError("out-of-range edge accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
