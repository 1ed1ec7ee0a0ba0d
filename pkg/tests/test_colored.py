import random

import pytest

from localgraphs.colored import (
    ColorSet,
    ColoredDegreeSequence,
    ColoredMultigraph,
    _girth_at_most,
    color_graph,
    colored_degree_sequence_of,
    estimate_alpha_h,
    is_colored_graph,
    mcb,
    read_cds,
    sample_cm,
    wilson_interval,
    write_cds,
)
from localgraphs.errors import InconsistentColors, InvalidSequence
from localgraphs.graphs import MarkAlphabets, build_graph

from oracles import girth_oracle

AB = MarkAlphabets(("s", "t"), ("a", "b"))
AB1 = MarkAlphabets(("s",), ("a",))

CS2 = ColorSet((("a", b"x"), ("b", b"y")))


def random_marked(rng, n, p=0.3, ab=AB):
    marks = {}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                marks[(u, v)] = (rng.choice(ab.xi), rng.choice(ab.xi))
    tau = tuple(rng.choice(ab.theta) for _ in range(n))
    return build_graph(n, marks, tau, ab)


def test_color_set_validation_and_conjugation():
    with pytest.raises(ValueError):
        ColorSet((("a", b""), ("a", b"")))
    assert CS2.size == 4
    assert ColorSet.conjugate((0, 1)) == (1, 0)
    assert CS2.lower_pairs() == [(0, 1)]
    assert CS2.diagonal() == [(0, 0), (1, 1)]


def test_multigraph_validate_catches_unpaired_edges():
    g = ColoredMultigraph(2, CS2)
    g.add((0, 1), 0, 1)
    with pytest.raises(InvalidSequence):
        g.validate()
    g.add((1, 0), 1, 0)
    g.validate()


def test_multigraph_validate_catches_odd_loop():
    g = ColoredMultigraph(1, CS2)
    g.add((0, 0), 0, 0, 1)
    with pytest.raises(InvalidSequence):
        g.validate()


def test_colorblind_sums_multiplicities():
    g = ColoredMultigraph(3, CS2)
    g.add((0, 1), 0, 1)
    g.add((1, 0), 1, 0)
    g.add((0, 0), 0, 1)
    g.add((0, 0), 1, 0)
    cb = g.colorblind()
    assert cb[(0, 1)] == 2 and cb[(1, 0)] == 2


def test_degree_sequence_validation():
    with pytest.raises(InvalidSequence):
        # off-diagonal color without matching conjugate mass
        ColoredDegreeSequence.from_maps(CS2, [{(0, 1): 1}, {}])
    with pytest.raises(InvalidSequence):
        # diagonal color with odd total
        ColoredDegreeSequence.from_maps(CS2, [{(0, 0): 1}, {}])
    D = ColoredDegreeSequence.from_maps(CS2, [{(0, 1): 1}, {(1, 0): 1}])
    assert D.column_sums() == {(0, 1): 1, (1, 0): 1}
    assert D.total_degree(0) == 1


def test_sample_cm_forced_edge():
    # one (0,1) half-edge at vertex 0 and one (1,0) at vertex 1: forced outcome
    D = ColoredDegreeSequence.from_maps(CS2, [{(0, 1): 1}, {(1, 0): 1}])
    g = sample_cm(D, random.Random(0))
    assert g.multiplicity((0, 1), 0, 1) == 1
    assert g.multiplicity((1, 0), 1, 0) == 1
    g.validate()


def test_sample_cm_diagonal_matching_outcomes():
    # four diagonal half-edges on two vertices: matchings only
    D = ColoredDegreeSequence.from_maps(CS2, [{(0, 0): 2}, {(0, 0): 2}])
    rng = random.Random(1)
    seen = set()
    for _ in range(200):
        g = sample_cm(D, rng)
        g.validate()
        degs = colored_degree_sequence_of(g)
        assert degs.column_sums() == D.column_sums()
        assert degs.at(0) == D.at(0) and degs.at(1) == D.at(1)
        seen.add(tuple(sorted(g.colorblind().items())))
    # either a double edge or two self-loops
    assert len(seen) == 2


def test_sample_cm_preserves_colored_degrees():
    rng = random.Random(2)
    for _ in range(30):
        maps = []
        n = rng.randint(2, 6)
        # random symmetric instance via a random colored multigraph
        base = ColoredMultigraph(n, CS2)
        for _ in range(rng.randint(1, 8)):
            u, v = rng.randrange(n), rng.randrange(n)
            c = rng.choice(CS2.colors())
            if u == v and c == ColorSet.conjugate(c):
                base.add(c, u, u, 2)
            elif u != v:
                base.add(c, u, v)
                base.add(ColorSet.conjugate(c), v, u)
        D = colored_degree_sequence_of(base)
        g = sample_cm(D, rng)
        g.validate()
        assert colored_degree_sequence_of(g).degrees == D.degrees


def test_girth_filter_triangle():
    # triangle with trivial colors
    cs = ColorSet((("a", b""),))
    g = ColoredMultigraph(3, cs)
    for (u, v) in ((0, 1), (1, 2), (0, 2)):
        g.add((0, 0), u, v)
        g.add((0, 0), v, u)
    assert is_colored_graph(g, 2)
    assert not is_colored_graph(g, 3)


def test_girth_filter_rejects_multi_edges_and_loops():
    cs = ColorSet((("a", b""),))
    g = ColoredMultigraph(2, cs)
    g.add((0, 0), 0, 1, 2)
    g.add((0, 0), 1, 0, 2)
    assert not is_colored_graph(g, 1)
    loop = ColoredMultigraph(1, cs)
    loop.add((0, 0), 0, 0, 2)
    assert not is_colored_graph(loop, 1)


def test_girth_filter_monotone_in_h():
    # 5-cycle: simple with girth 5
    cs = ColorSet((("a", b""),))
    g = ColoredMultigraph(5, cs)
    for i in range(5):
        j = (i + 1) % 5
        g.add((0, 0), i, j)
        g.add((0, 0), j, i)
    assert is_colored_graph(g, 4)
    assert not is_colored_graph(g, 5)
    assert not is_colored_graph(g, 6)


def test_girth_detector_matches_oracle():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(3, 12)
        adj = [set() for _ in range(n)]
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 2.0 / n:
                    adj[u].add(v)
                    adj[v].add(u)
        g_true = girth_oracle(adj)
        for h in range(3, 9):
            assert _girth_at_most(adj, h) == (g_true <= h), (adj, h, g_true)


def test_color_graph_round_trips_through_mcb():
    rng = random.Random(4)
    for _ in range(25):
        g = random_marked(rng, rng.randint(2, 8))
        for k in (1, 2):
            cm, _ = color_graph(g, k)
            cm.validate()
            back = mcb(g.tau, cm, g.alphabets)
            assert back.edges == g.edges
            assert dict(back.xi) == dict(g.xi)
            assert back.tau == g.tau


def test_colorblind_of_color_graph_matches_edges():
    rng = random.Random(5)
    g = random_marked(rng, 7)
    cm, _ = color_graph(g, 1)
    cb = cm.colorblind()
    assert {e for e, k in cb.items() if k} == {
        (u, v) for (u, v) in g.edges
    } | {(v, u) for (u, v) in g.edges}


def test_color_graph_cycle_uses_one_conjugate_class():
    # on a uniform cycle every direction looks alike, so one F-element
    g = build_graph(
        4,
        {(0, 1): ("a", "a"), (1, 2): ("a", "a"), (2, 3): ("a", "a"), (0, 3): ("a", "a")},
        ("s",) * 4,
        AB1,
    )
    cm, colors = color_graph(g, 1)
    assert len(colors.f_elements) == 1


def test_mcb_rejects_inconsistent_colors():
    g = ColoredMultigraph(2, CS2)
    g.add((0, 1), 0, 1)
    g.add((0, 1), 1, 0)  # wrong conjugate color on the way back
    with pytest.raises(InconsistentColors):
        mcb(("s", "s"), g, AB)


def test_cds_round_trip():
    rng = random.Random(6)
    for _ in range(15):
        g = random_marked(rng, rng.randint(2, 7))
        cm, _ = color_graph(g, rng.choice((1, 2)))
        D = colored_degree_sequence_of(cm)
        back = read_cds(write_cds(D))
        assert back.column_sums() == D.column_sums()
        assert [back.at(v) for v in range(back.n)] == [
            D.at(v) for v in range(D.n)
        ]


def test_read_cds_rejects_garbage():
    with pytest.raises(InvalidSequence):
        read_cds("nope\n")


def test_wilson_interval_basics():
    low, high = wilson_interval(50, 100)
    assert 0 < low < 0.5 < high < 1
    assert wilson_interval(0, 0) == (0.0, 1.0)
    l0, h0 = wilson_interval(0, 100)
    assert l0 == 0.0 and h0 < 0.1


def test_alpha_estimate_trivial_cases():
    # forced single edge always passes any girth filter
    D = ColoredDegreeSequence.from_maps(CS2, [{(0, 1): 1}, {(1, 0): 1}])
    est = estimate_alpha_h(D, 3, 50, random.Random(7))
    assert est.estimate == 1.0 and est.successes == 50
    # a forced triangle never passes h = 3
    g = build_graph(
        3, {(0, 1): ("a", "a"), (1, 2): ("a", "a"), (0, 2): ("a", "a")},
        ("s",) * 3, AB1,
    )
    cm, _ = color_graph(g, 2)
    D3 = colored_degree_sequence_of(cm)
    est3 = estimate_alpha_h(D3, 3, 50, random.Random(8))
    assert est3.estimate < 1.0
