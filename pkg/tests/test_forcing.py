import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zfbrush.errors import BudgetExceeded, IncompleteRun, InvalidForce
from zfbrush.families import generate, parse_family
from zfbrush.forcing import (ChainDecomposition, check_chains, exact_Z, extract_chains, forcing_closure,
                             is_zero_forcing_set, replay_forces)
from zfbrush.graph import add_isolated, disjoint_union, empty_graph, line_graph
from zfbrush.io import fig_example

from conftest import graphs, oracle_closure, oracle_Z


def fam(s):
    return generate(parse_family(s))


def test_closure_c4():
    run = forcing_closure(fam("cycle:4"), {0, 1})
    assert run.final == frozenset(range(4))
    assert len(run.forces) == 2


def test_closure_k3_stalls():
    run = forcing_closure(fam("complete:3"), {0})
    assert run.forces == () and run.final == {0}


def test_fig_example_zfs():
    doc = fig_example()
    lgm = line_graph(doc.graph)
    z = [doc.line_vertex(x) for x in "bghijk"]
    assert forcing_closure(lgm.line, z).final == frozenset(range(11))


def test_is_zero_forcing_set_examples():
    assert is_zero_forcing_set(fam("path:4"), {0})
    assert not is_zero_forcing_set(fam("cycle:4"), {0})
    g = fam("prism:2x4")
    assert is_zero_forcing_set(g, range(g.n))


@pytest.mark.parametrize("spec,value", [("complete:5", 4), ("cycle:6", 2), ("star:4", 3)])
def test_exact_Z_examples(spec, value):
    z, w = exact_Z(fam(spec))
    assert z == value and len(w) == value
    assert is_zero_forcing_set(fam(spec), w)


def test_exact_Z_empty_and_budget():
    assert exact_Z(empty_graph(0)) == (0, frozenset())
    assert exact_Z(empty_graph(3))[0] == 3
    with pytest.raises(BudgetExceeded):
        exact_Z(fam("cycle:6"), budget=5)


def test_exact_Z_lexicographic_witness():
    # C_4: {0, 1} is the least pair that forces
    assert exact_Z(fam("cycle:4"))[1] == {0, 1}


def test_replay_forces():
    g = fam("path:4")
    run = replay_forces(g, {0}, [(0, 1), (1, 2), (2, 3)])
    assert run.final == frozenset(range(4))
    with pytest.raises(InvalidForce):
        replay_forces(g, {0}, [(1, 2)])
    with pytest.raises(InvalidForce):
        replay_forces(fam("star:3"), {0}, [(0, 1)])


def test_chains_fig_example():
    doc = fig_example()
    lgm = line_graph(doc.graph)
    z = [doc.line_vertex(x) for x in doc.extras["zero_forcing_set"]]
    forces = [tuple(doc.line_vertex(x) for x in f) for f in doc.extras["force_order"]]
    run = replay_forces(lgm.line, z, forces)
    dec = extract_chains(lgm.line, run, [doc.line_vertex(x) for x in doc.extras["chain_order"]])
    names = [[doc.edge_label(v) for v in c] for c in dec.chains]
    assert names == [list("gfc"), list("id"), list("hea"), ["b"], ["k"], ["j"]]
    assert check_chains(lgm.line, run, dec) == []


def test_chains_trivial_cases():
    g = fam("path:4")
    dec = extract_chains(g, forcing_closure(g, {0}))
    assert dec.chains == ((0, 1, 2, 3),)
    dec = extract_chains(g, forcing_closure(g, range(4)))
    assert dec.lengths == [1, 1, 1, 1]
    with pytest.raises(IncompleteRun):
        extract_chains(g, forcing_closure(g, {1}))


def test_first_chain_starts_at_first_forcer():
    g = fam("prism:2x4")
    z = exact_Z(g)[1]
    run = forcing_closure(g, z)
    dec = extract_chains(g, run)
    assert dec.chains[0][0] == run.forces[0][0]
    singles = [len(c) == 1 for c in dec.chains]
    assert singles == sorted(singles)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8), st.data())
def test_closure_matches_oracle(g, data):
    black = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n)) if g.n else set()
    assert forcing_closure(g, black).final == oracle_closure(g, black)


@settings(max_examples=25, deadline=None)
@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_closure_confluence(g, rnd):
    black = set(rnd.sample(range(g.n), rnd.randint(0, g.n)))
    final = forcing_closure(g, black).final
    for _ in range(100):
        order = list(range(g.n))
        rnd.shuffle(order)
        assert forcing_closure(g, black, priority=order).final == final


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_closure_monotone(g, rnd):
    small = set(rnd.sample(range(g.n), rnd.randint(0, g.n)))
    big = small | set(rnd.sample(range(g.n), rnd.randint(0, g.n)))
    assert forcing_closure(g, small).final <= forcing_closure(g, big).final


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_chain_invariants(g, rnd):
    z = exact_Z(g)[1]
    order = list(range(g.n))
    rnd.shuffle(order)
    run = forcing_closure(g, z, priority=order)
    dec = extract_chains(g, run)
    assert check_chains(g, run, dec) == []


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_exact_Z_matches_oracle(g):
    assert exact_Z(g)[0] == oracle_Z(g)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=5), graphs(max_n=5))
def test_exact_Z_additive(g, h):
    assert exact_Z(disjoint_union(g, h))[0] == exact_Z(g)[0] + exact_Z(h)[0]
    assert exact_Z(add_isolated(g, 2))[0] == exact_Z(g)[0] + 2


def test_check_chains_reports_broken_decomposition():
    g = fam("path:3")
    run = forcing_closure(g, {0})
    bad = ChainDecomposition(((0, 2, 1),))
    assert check_chains(g, run, bad)


def test_random_priority_reproducible():
    g = fam("prism:2x4")
    rng = random.Random(3)
    order = list(range(g.n))
    rng.shuffle(order)
    assert forcing_closure(g, {0, 1, 2, 3}, order) == forcing_closure(g, {0, 1, 2, 3}, order)
