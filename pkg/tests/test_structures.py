import random
from itertools import combinations

import networkx as nx
import pytest
from conftest import graphs, structures
from hypothesis import given
from hypothesis import strategies as st

from fmtbench.evaluate import Evaluator
from fmtbench.logic import TAU_0, TAU_E
from fmtbench.logic.sentences import cycle_through, path_with_ear
from fmtbench.randgen import random_graph
from fmtbench.structures import (
    H0,
    H1,
    FinStructure,
    StructureError,
    StructureFormatError,
    canonical_key,
    chordless_cycles,
    complete_ordering,
    count_structures,
    cycle_graph,
    dump_structure,
    enumerate_structures,
    figure_one_graph,
    find_cycle_through,
    find_isomorphism,
    find_path_with_ear,
    graph,
    induced_substructure,
    is_isomorphism,
    is_lt_substructure,
    isomorphic,
    parse_structure,
    read_structure,
    structures_of_size,
    validate_graph,
    write_structure,
)


def permuted(a: FinStructure, seed: int) -> tuple[FinStructure, dict]:
    perm = list(a.universe)
    random.Random(seed).shuffle(perm)
    m = dict(zip(a.universe, perm))
    rels = {name: [tuple(m[e] for e in t) for t in a[name]] for name in a.vocab.names}
    return FinStructure.build(a.vocab, a.size, rels), m


def all_graphs(n):
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


# -- isomorphism -------------------------------------------------------------------


@given(structures(TAU_0, 1, 5), st.integers(0, 2**32))
def test_permutation_gives_isomorphic_copy(a, seed):
    b, m = permuted(a, seed)
    assert is_isomorphism(a, b, m)
    found = find_isomorphism(a, b)
    assert found is not None and is_isomorphism(a, b, found)
    assert canonical_key(a) == canonical_key(b)


@given(structures(TAU_E, 1, 4), structures(TAU_E, 1, 4))
def test_canonical_key_decides_isomorphism(a, b):
    assert (canonical_key(a) == canonical_key(b)) == isomorphic(a, b)


@given(graphs(1, 8), graphs(1, 8))
def test_isomorphism_against_networkx(g, h):
    ng, nh = (nx.Graph(list(x["E"])) for x in (g, h))
    ng.add_nodes_from(g.universe)
    nh.add_nodes_from(h.universe)
    assert isomorphic(g, h) == nx.is_isomorphic(ng, nh)


def test_nonisomorphic_examples():
    assert not isomorphic(H0, H1)
    assert not isomorphic(cycle_graph(6), graph(6, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]))


# -- enumeration -----------------------------------------------------------------


@pytest.mark.parametrize("n, expected", [(1, 2), (2, 16), (3, 512)])
def test_counts_over_edge_vocabulary(n, expected):
    assert count_structures(TAU_E, n) == expected
    assert sum(1 for _ in structures_of_size(TAU_E, n)) == expected


def test_enumeration_is_sorted_and_distinct():
    seen = list(enumerate_structures(TAU_E, 2))
    assert len(seen) == 18
    assert len(set(seen)) == 18
    assert [a.size for a in seen] == sorted(a.size for a in seen)
    assert seen[0]["E"] == frozenset()


def test_enumeration_predicate():
    loopless = list(enumerate_structures(TAU_E, 3, predicate=lambda a: all(x != y for x, y in a["E"])))
    assert len(loopless) == 1 + 4 + 64


# -- substructures -----------------------------------------------------------------------


def test_induced_substructure_of_ordering():
    a = complete_ordering(5)
    b = induced_substructure(a, [2, 4, 5])
    assert b.labels == (2, 4, 5)
    assert b["Lt"] == {(1, 2), (1, 3), (2, 3)}
    assert b["S"] == {(2, 3)}
    assert b["U_min"] == frozenset()
    assert b["U_max"] == {(3,)}


@given(structures(TAU_0, 2, 5), st.integers(0, 2**32))
def test_induced_substructures_are_lt_substructures(a, seed):
    rng = random.Random(seed)
    subset = rng.sample(list(a.universe), rng.randint(1, a.size))
    b = induced_substructure(a, subset)
    emb = {i: e for i, e in enumerate(b.labels, 1)}
    assert is_lt_substructure(b, a, emb)


def test_lt_substructure_may_drop_other_facts_only():
    a = complete_ordering(3)
    emb = {1: 1, 2: 2, 3: 3}
    assert is_lt_substructure(a.replace(S=[(1, 2)]), a, emb)
    assert not is_lt_substructure(a.replace(Lt=[(1, 2), (2, 3)]), a, emb)
    assert not is_lt_substructure(a.replace(S=[(1, 3)]), a, emb)


def test_structure_validation():
    with pytest.raises(StructureError):
        FinStructure.build(TAU_E, 2, {"E": [(1, 3)]})
    with pytest.raises(StructureError):
        FinStructure.build(TAU_E, 0)
    with pytest.raises(StructureError):
        validate_graph(H0)
    with pytest.raises(StructureError):
        validate_graph(H1)


# -- files -------------------------------------------------------------------------


@given(structures(TAU_0, 1, 5))
def test_structure_text_round_trip(a):
    assert parse_structure(dump_structure(a)) == a


def test_structure_file_round_trip(tmp_path):
    a = complete_ordering(4, TAU_0.with_pairs(["C0"], name=None))
    path = tmp_path / "a.fms"
    write_structure(a, path)
    assert read_structure(path) == a


def test_sample_structure_files(data_dir):
    for n in range(1, 6):
        assert read_structure(data_dir / "structures" / f"A{n}.fms") == complete_ordering(n)


@pytest.mark.parametrize(
    "text",
    [
        "structure A\nvocab tau_E\nuniverse 2\nrel E: (1,3)\nend\n",
        "structure A\nvocab tau_E\nuniverse 2\nrel F: (1,2)\nend\n",
        "structure A\nvocab tau_E\nuniverse two\nend\n",
        "structure A\nvocab tau_E\nuniverse 2\nrel E: (1,2)\n",
    ],
)
def test_malformed_structure_files(text):
    with pytest.raises(StructureError):
        parse_structure(text)


def test_format_error_is_a_structure_error():
    assert issubclass(StructureFormatError, StructureError)


# -- cycles and paths --------------------------------------------------------------------


def _cycle_oracle(g, v, r):
    return Evaluator(g).satisfies(cycle_through(r), {"x": v})


def _check_cycle_search(g, max_r):
    for v in g.universe:
        for r in range(3, max_r + 1):
            found = find_cycle_through(g, v, r)
            assert (found is not None) == _cycle_oracle(g, v, r), (g, v, r)
            if found is not None:
                assert found[0] == v and len(set(found)) == r
                assert all((found[i], found[(i + 1) % r]) in g["E"] for i in range(r))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cycle_search_matches_formula_on_all_small_graphs(n):
    for g in all_graphs(n):
        _check_cycle_search(g, n)


@given(graphs(6, 8))
def test_cycle_search_matches_formula_on_random_graphs(g):
    _check_cycle_search(g, 6)


@given(graphs(7, 8, ))
def test_path_with_ear_matches_formula(g):
    f = path_with_ear(3, 3)
    ev = Evaluator(g)
    for a in g.universe:
        for b in g.universe:
            found = find_path_with_ear(g, a, b, 3, 3)
            assert (found is not None) == ev.satisfies(f, {"x": a, "y": b})


def test_figure_one_path():
    g, a, b = figure_one_graph()
    found = find_path_with_ear(g, a, b, 6, 4)
    assert found is not None
    path, ear = found
    assert path == [1, 2, 3, 4, 5, 6, 7]
    assert set(ear) == {8, 9, 10, 11}
    assert Evaluator(g).satisfies(path_with_ear(6, 4), {"x": a, "y": b})
    assert find_path_with_ear(g, a, b, 6, 5) is None
    assert find_path_with_ear(g, b, a, 6, 4) is None


def _nx_chordless(g, max_len):
    ng = nx.Graph(list(g["E"]))
    ng.add_nodes_from(g.universe)
    return {frozenset(c) for c in nx.chordless_cycles(ng, length_bound=max_len) if len(c) >= 3}


@given(graphs(3, 9))
def test_chordless_cycles_against_networkx(g):
    ours = chordless_cycles(g, 7)
    assert len(ours) == len({frozenset(c) for c in ours})
    assert {frozenset(c) for c in ours} == _nx_chordless(g, 7)


def test_chordless_cycles_of_a_cycle():
    assert chordless_cycles(cycle_graph(7), 7) == [[1, 2, 3, 4, 5, 6, 7]]
    assert chordless_cycles(cycle_graph(7), 6) == []
