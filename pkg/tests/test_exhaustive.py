import random

import numpy as np
import pytest
from conftest import random_universal
from hypothesis import given, settings
from hypothesis import strategies as st

from fmtbench.evaluate import naive_satisfies
from fmtbench.exhaustive import (
    Grid,
    GridTooLarge,
    count_mismatches,
    first_mismatch,
    forb_grid,
    local_code,
    models_grid,
    structure_from_code,
)
from fmtbench.forbidden import compute_Fk, forb_member
from fmtbench.logic import TAU_0, TAU_E, parse_formula
from fmtbench.structures import structures_of_size

TRANSITIVE = parse_formula("forall x. forall y. forall z. (E(x,y) & E(y,z) -> E(x,z))")


def test_grid_enumerates_each_structure_once():
    grid = Grid(TAU_E, 2)
    seen = {grid.structure_at(idx) for idx in np.ndindex(grid.shape)}
    assert seen == set(structures_of_size(TAU_E, 2))


@given(st.integers(0, 2**10 - 1))
def test_local_code_round_trip(code):
    a = structure_from_code(TAU_0, 2, code)
    assert local_code(a) == code


def test_grid_index_round_trip():
    grid = Grid(TAU_0, 2)
    for idx in [(0, 0), (3, 17), (grid.side - 1, 5)]:
        assert grid.index_of(grid.structure_at(idx)) == idx


@given(st.integers(0, 2**32), st.integers(1, 3))
@settings(max_examples=25)
def test_models_grid_matches_naive_evaluation(seed, n):
    phi = random_universal(TAU_E, random.Random(seed), random.Random(seed).randint(1, 3))
    grid = Grid(TAU_E, n)
    table = models_grid(grid, phi)
    for idx in np.ndindex(grid.shape):
        assert table[idx] == naive_satisfies(grid.structure_at(idx), phi)


@given(st.integers(0, 2**32))
@settings(max_examples=15)
def test_forb_grid_matches_direct_check(seed):
    phi = random_universal(TAU_E, random.Random(seed), 2)
    members = compute_Fk(phi, 2)
    grid = Grid(TAU_E, 3)
    table = forb_grid(grid, members)
    for idx in np.ndindex(grid.shape):
        assert table[idx] == forb_member(grid.structure_at(idx), members)


def test_transitive_relations_on_five_points():
    # OEIS A006905: labeled transitive relations, 154303 on five points
    grid = Grid(TAU_E, 5)
    assert int(models_grid(grid, TRANSITIVE).sum()) == 154303


@pytest.mark.parametrize("n, count", [(1, 2), (2, 13), (3, 171), (4, 3994)])
def test_transitive_relation_counts(n, count):
    assert int(models_grid(Grid(TAU_E, n), TRANSITIVE).sum()) == count


def test_mismatch_helpers():
    grid = Grid(TAU_E, 2)
    a = models_grid(grid, parse_formula("forall x. !E(x,x)"))
    b = models_grid(grid, parse_formula("forall x. forall y. !E(x,y)"))
    assert count_mismatches(a, a) == 0 and first_mismatch(grid, a, a) is None
    assert count_mismatches(a, b) == 3
    witness = first_mismatch(grid, a, b)
    assert witness["E"] and witness["E"] <= {(1, 2), (2, 1)}


def test_grid_cap():
    with pytest.raises(GridTooLarge):
        Grid(TAU_E, 6)
