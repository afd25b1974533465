import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fmtbench.evaluate import models
from fmtbench.gadgets import (
    COMPANION_CYCLE,
    ELEMENT_CYCLE,
    LINK,
    TAU0_PLAN,
    GadgetError,
    GadgetGraph,
    GadgetPlan,
    Role,
    cycle_taxonomy,
    decode,
    dump_roles,
    encode,
    extract,
    pairs_plan,
    parse_roles,
    t_cycle_symbol_lengths,
)
from fmtbench.logic import TAU_0, TAU_E
from fmtbench.logic.sentences import phi_graph
from fmtbench.structures import complete_ordering, graph, induced_substructure, is_graph, isomorphic
from fmtbench.tm import ONE_STEP, TWO_STEP, canonical_model


def per_fact_count(a, plan):
    """Vertex count from first principles: two vertices per element, l-1 per
    unary fact (the anchor is shared), path-1 inner vertices plus the ear per
    binary fact; helper gadgets count once per element."""
    n = a.size
    lengths = plan.lengths()
    total = 2 * n
    total += n * (lengths[ELEMENT_CYCLE] - 1) + n * (lengths[COMPANION_CYCLE] - 1)
    total += n * (plan.path - 1 + lengths[LINK])
    for name, arity in a.vocab.symbols:
        if name == "Lt":
            continue
        per = lengths[name] - 1 if arity == 1 else plan.path - 1 + lengths[name]
        total += per * len(a[name])
    return total


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_vertex_count(n):
    a = complete_ordering(n)
    gg = encode(a)
    assert gg.size == 80 * n - 19 == per_fact_count(a, TAU0_PLAN) == TAU0_PLAN.size_of(a)
    assert is_graph(gg.graph)
    assert models(gg.graph, phi_graph())


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_round_trip(n):
    a = complete_ordering(n)
    o = decode(encode(a).graph)
    assert o is not None and isomorphic(o, a)
    assert o.labels == tuple((e, e + n) for e in a.universe)


@pytest.mark.parametrize("machine, word", [(ONE_STEP, "0"), (TWO_STEP, "00")])
def test_round_trip_with_pairs(machine, word):
    a = canonical_model(machine, word)
    plan = pairs_plan(a.vocab)
    gg = encode(a, plan)
    assert gg.size == per_fact_count(a, plan) == plan.size_of(a)
    o = extract(gg.graph, plan)
    assert o is not None and isomorphic(o, a)


def test_pairs_plan_for_ordered_vocabulary_is_the_default():
    plan = pairs_plan(TAU_0)
    assert plan.cycles == TAU0_PLAN.cycles
    assert plan.ears == TAU0_PLAN.ears
    assert plan.path == TAU0_PLAN.path


def test_pairs_plan_lengths_are_distinct_and_odd():
    plan = pairs_plan(TWO_STEP.vocabulary())
    lengths = list(plan.lengths().values())
    assert len(set(lengths)) == len(lengths)
    assert all(l % 2 == 1 and l >= 5 for l in lengths)
    assert plan.path == max(lengths) + 2
    assert plan.second == {s for s, _ in plan.ears} - {"S", LINK}


def test_encode_rejects_non_orderings():
    a = complete_ordering(3).replace(S=[(1, 2)])
    with pytest.raises(GadgetError):
        encode(a)
    encode(a, check=False)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(cycles=(("U_min", 6), ("U_max", 7), ("B", 9), ("C", 11)), ears=(("S", 13), ("L", 15)), path=17),
        dict(cycles=(("U_min", 5), ("U_max", 5), ("B", 9), ("C", 11)), ears=(("S", 13), ("L", 15)), path=17),
        dict(cycles=(("U_min", 5), ("U_max", 7), ("B", 9), ("C", 11)), ears=(("S", 13), ("L", 15)), path=9),
        dict(cycles=(("U_min", 5), ("U_max", 7), ("B", 9), ("C", 11)), ears=(("S", 3), ("L", 15)), path=17),
        dict(cycles=(("U_max", 7), ("B", 9), ("C", 11)), ears=(("S", 13), ("L", 15)), path=17),
    ],
)
def test_plan_validation(kwargs):
    with pytest.raises(GadgetError):
        GadgetPlan(TAU_0, **kwargs)


def test_roles_round_trip():
    gg = encode(complete_ordering(2))
    assert parse_roles(dump_roles(gg)) == gg.roles
    assert Role.parse(str(Role("path", "S", (1, 2)))) == Role("path", "S", (1, 2))
    assert set(gg.roles) == set(gg.graph.universe)


def test_taxonomy_of_two_element_ordering():
    gg = encode(complete_ordering(2))
    report = cycle_taxonomy(gg, 16)
    assert report.lengths("T") == {5, 7, 9, 11}
    assert report.lengths("ear") == {13, 15}
    assert report.total("mixed") == 0
    assert report.lengths("F") <= {4}
    assert t_cycle_symbol_lengths(gg, report) == {"U_min": {5}, "U_max": {7}, "B": {9}, "C": {11}}


def test_taxonomy_f_cycles_have_length_four():
    gg = encode(complete_ordering(4))
    report = cycle_taxonomy(gg, 16)
    assert report.lengths("F") == {4}
    assert report.total("mixed") == 0


def test_decoding_ignores_how_the_graph_was_made():
    # relabel the vertices: decoding must not rely on the vertex numbering
    gg = encode(complete_ordering(2))
    g = gg.graph
    perm = list(g.universe)
    random.Random(7).shuffle(perm)
    m = dict(zip(g.universe, perm))
    h = graph(g.size, [(m[a], m[b]) for a, b in g["E"]])
    assert isomorphic(decode(h), complete_ordering(2))


def test_decoding_graphs_without_gadgets():
    assert decode(graph(5, [(1, 2), (2, 3)])) is None
    assert decode(graph(1, [])) is None


@given(st.integers(0, 2**32))
def test_deleting_a_vertex_breaks_at_most_what_it_touches(seed):
    gg = encode(complete_ordering(2))
    g = gg.graph
    rng = random.Random(seed)
    drop = rng.randint(1, g.size)
    sub = induced_substructure(g, [v for v in g.universe if v != drop])
    o = decode(sub)
    # every surviving element pair of the decoded structure maps to an original pair
    if o is not None:
        for p in o.labels:
            orig = tuple(sub.labels[v - 1] for v in p)
            assert orig in {(1, 3), (2, 4)}


def test_extract_rejects_non_graphs():
    with pytest.raises(Exception):
        extract(complete_ordering(2), TAU0_PLAN)
