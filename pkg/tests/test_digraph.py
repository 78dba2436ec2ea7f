import random
from itertools import permutations

import pytest

from triorbit.digraph import (
    CapExceeded,
    CylinderDigraphSpec,
    Digraph,
    contract_loop,
    embedded_loops,
    format_digraph,
    free_cylinder_criterion,
    is_strongly_connected,
    loop_space_dim,
    parse_digraph,
    random_strongly_connected,
)


def brute_force_loop_count(g: Digraph) -> int:
    """Independent oracle: count simple directed cycles by trying every
    cyclic vertex sequence and multiplying parallel-edge choices."""
    from math import prod

    mult = {}
    for t, h in g.edges:
        mult[(t, h)] = mult.get((t, h), 0) + 1
    total = 0
    verts = range(g.num_vertices)
    # self-loops are length-1 cycles
    total += sum(m for (t, h), m in mult.items() if t == h)
    for size in range(2, g.num_vertices + 1):
        for combo in permutations(verts, size):
            if combo[0] != min(combo):  # one rotation per cycle
                continue
            pairs = list(zip(combo, combo[1:] + combo[:1]))
            if all(p in mult for p in pairs):
                total += prod(mult[p] for p in pairs)
    return total


def test_strong_connectivity_examples():
    assert is_strongly_connected(Digraph(1, ((0, 0),))) is True
    assert is_strongly_connected(Digraph(2, ((0, 1),))) is False
    assert is_strongly_connected(Digraph(2, ((0, 1), (1, 0)))) is True
    assert is_strongly_connected(Digraph(1, ())) is True


def test_embedded_loops_examples():
    assert len(embedded_loops(Digraph(1, ((0, 0), (0, 0))))) == 2
    assert len(embedded_loops(Digraph(2, ((0, 1), (1, 0), (1, 0))))) == 2


def test_embedded_loops_cap():
    g = Digraph(2, ((0, 1), (1, 0), (1, 0)))
    with pytest.raises(CapExceeded):
        embedded_loops(g, cap=1)
    with pytest.raises(ValueError):
        embedded_loops(g, cap=0)


def test_loop_space_dim_examples():
    assert loop_space_dim(Digraph(1, ((0, 0),))) == 1
    assert loop_space_dim(Digraph(1, ((0, 0), (0, 0)))) == 2


def test_dimension_lemma_corpus():
    rng = random.Random(7)
    for _ in range(200):
        g = random_strongly_connected(rng)
        assert is_strongly_connected(g)
        assert loop_space_dim(g) == len(g.edges) - g.num_vertices + 1


def test_loop_count_matches_brute_force():
    rng = random.Random(11)
    for _ in range(60):
        g = random_strongly_connected(rng, max_vertices=6, max_edges=10)
        assert len(embedded_loops(g)) == brute_force_loop_count(g)


def test_contract_figure_eight():
    g = Digraph(1, ((0, 0), (0, 0)))
    h = contract_loop(g, embedded_loops(g)[0])
    assert h.num_vertices == 1
    assert len(h.edges) == 1
    assert loop_space_dim(h) == 1


def test_contract_two_cycle_with_chords():
    g = Digraph(2, ((0, 1), (1, 0), (0, 1), (1, 0)))
    loops = embedded_loops(g)
    two_cycle = next(lv for lv in loops if len(lv.edge_indices) == 2)
    h = contract_loop(g, two_cycle)
    assert h.num_vertices == 1
    assert len(h.edges) == 2
    assert loop_space_dim(h) == loop_space_dim(g) - 1


def test_contract_hamiltonian_cycle_gives_rose():
    g = Digraph(3, ((0, 1), (1, 2), (2, 0), (0, 2), (1, 0)))
    ham = next(lv for lv in embedded_loops(g) if len(lv.edge_indices) == 3)
    h = contract_loop(g, ham)
    assert h.num_vertices == 1
    assert len(h.edges) == len(g.edges) - g.num_vertices
    assert all(t == h_ == 0 for t, h_ in h.edges)


def test_contraction_drops_dim_on_corpus():
    rng = random.Random(7)
    for _ in range(200):
        g = random_strongly_connected(rng)
        loops = embedded_loops(g)
        if not loops:
            continue
        dim = loop_space_dim(g)
        h = contract_loop(g, loops[0])
        assert is_strongly_connected(h)
        assert loop_space_dim(h) == dim - 1


def test_contract_rejects_non_loop():
    g = Digraph(3, ((0, 1), (1, 2), (2, 0)))
    from triorbit.digraph import LoopVector

    with pytest.raises(ValueError):
        contract_loop(g, LoopVector((0, 1), len(g.edges)))  # open path


def test_edge_permutation_invariance():
    rng = random.Random(23)
    for _ in range(30):
        g = random_strongly_connected(rng, max_vertices=5, max_edges=8)
        edges = list(g.edges)
        rng.shuffle(edges)
        g2 = Digraph(g.num_vertices, tuple(edges))
        assert len(embedded_loops(g)) == len(embedded_loops(g2))
        assert loop_space_dim(g) == loop_space_dim(g2)


def test_free_cylinder_criterion_examples():
    spec = CylinderDigraphSpec(2, 1, ((0, 1), (1, 0), (0, 0)))
    assert free_cylinder_criterion(spec, 2) is True
    assert free_cylinder_criterion(spec, 1) is False
    spec2 = CylinderDigraphSpec(3, 2, tuple((0, 0) for _ in range(6)))
    assert free_cylinder_criterion(spec2, 4) is True


def test_free_cylinder_criterion_validates_edge_count():
    with pytest.raises(ValueError):
        free_cylinder_criterion(CylinderDigraphSpec(2, 1, ((0, 1),)), 2)
    with pytest.raises(ValueError):
        free_cylinder_criterion(CylinderDigraphSpec(0, 1, ()), 0)


def test_parse_format_round_trip():
    g = Digraph(3, ((0, 1), (1, 2), (2, 0), (1, 1)))
    assert parse_digraph(format_digraph(g)) == g


def test_parse_rejects_bad_counts():
    with pytest.raises(ValueError):
        parse_digraph("2 3\n0 1\n1 0\n")
    with pytest.raises(ValueError):
        parse_digraph("")
