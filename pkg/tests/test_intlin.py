from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, strategies as st
from scipy.optimize import linprog

from wondercox import intlin
from wondercox.errors import DimensionError, PointednessError, RecessionError

from oracles import bfs_vertices_max, box_solutions, det_fraction, invariant_factors_by_minors


def matrices(max_rows=4, max_cols=5, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


# ---------------------------------------------------------------------------
# basics


def test_primitive_keeps_orientation():
    assert intlin.primitive((4, -6)) == (2, -3)
    assert intlin.primitive((-4, 6)) == (-2, 3)
    with pytest.raises(ValueError):
        intlin.primitive((0, 0))


def test_determinant_and_rank():
    assert intlin.determinant([[2, -1], [-1, 2]]) == 3
    assert intlin.determinant([[1, 2], [2, 4]]) == 0
    assert intlin.rank([[1, 2, 3], [2, 4, 6]]) == 1


@given(matrices(4, 4, -5, 5).filter(lambda m: len(m) == len(m[0])))
def test_determinant_matches_rational_elimination(m):
    assert intlin.determinant(m) == det_fraction(m)


def test_solve_rational():
    assert intlin.solve_rational([(2, -2), (-1, 2)], (1, -1)) == (Fraction(1, 2), Fraction(0))
    assert intlin.solve_rational([(1, 0)], (0, 1)) is None


# ---------------------------------------------------------------------------
# Smith normal form


@given(matrices())
def test_snf_transforms(m):
    factors, left, right = intlin.smith_normal_form(m)
    d = intlin.matmul(intlin.matmul(left, m), right)
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            expected = factors[i] if i == j and i < len(factors) else 0
            assert x == expected
    assert abs(intlin.determinant(left)) == 1
    assert abs(intlin.determinant(right)) == 1
    assert all(f > 0 for f in factors)
    assert all(factors[k + 1] % factors[k] == 0 for k in range(len(factors) - 1))


@given(matrices(3, 4, -8, 8))
def test_snf_matches_determinantal_divisors(m):
    assert list(intlin.smith_normal_form(m)[0]) == invariant_factors_by_minors(m)


@given(matrices(), st.randoms(use_true_random=False))
def test_snf_row_permutation_invariant(m, rnd):
    perm = list(range(len(m)))
    rnd.shuffle(perm)
    assert intlin.smith_normal_form(m)[0] == intlin.smith_normal_form([m[p] for p in perm])[0]


def test_snf_empty_and_ragged():
    factors, left, right = intlin.smith_normal_form([], ncols=3)
    assert factors == () and [list(r) for r in right] == intlin.identity(3)
    with pytest.raises(DimensionError):
        intlin.smith_normal_form([[1, 2], [3]])


def test_cokernel_small_groups():
    p = intlin.cokernel([[2, 0], [0, 3]])
    assert p.free_rank == 0 and p.invariant_factors == (6,) and p.torsion_order == 6
    p = intlin.cokernel([[1, 1]], 2)
    assert p.free_rank == 1 and p.is_free
    assert intlin.cokernel([], 2).free_rank == 2
    with pytest.raises(DimensionError):
        intlin.cokernel([])


@given(matrices(3, 4, -5, 5))
def test_cokernel_images_kill_relations(m):
    """Each relation maps to zero in Z^f + sum Z/n_k under the generator images."""
    p = intlin.cokernel(m)
    nt = len(p.invariant_factors)
    for row in m:
        image = [sum(x * img[k] for x, img in zip(row, p.generator_images)) for k in range(p.free_rank + nt)]
        assert all(v == 0 for v in image[: p.free_rank])
        assert all(v % n == 0 for v, n in zip(image[p.free_rank:], p.invariant_factors))


def test_presentation_rejects_bad_chain():
    with pytest.raises(ValueError):
        intlin.AbelianPresentation(0, (3, 2), ())


# ---------------------------------------------------------------------------
# cones


def _lp_member(gens, v):
    """Float LP membership, used only as an independent cross-check."""
    if not gens:
        return not any(v)
    a = [[g[i] for g in gens] for i in range(len(v))]
    res = linprog([0] * len(gens), A_eq=a, b_eq=list(v), bounds=[(0, None)] * len(gens), method="highs")
    return res.status == 0


def pointed_generators(dim):
    vec = st.lists(st.integers(-4, 4), min_size=dim, max_size=dim).filter(lambda v: sum(v) > 0)
    return st.lists(vec, min_size=1, max_size=7)


@given(st.integers(1, 4).flatmap(pointed_generators))
def test_extremal_rays_properties(gens):
    rays = intlin.extremal_rays(gens)
    prims = {intlin.primitive(g) for g in gens}
    assert set(rays) <= prims
    assert rays == sorted(rays)
    for g in gens:
        assert intlin.cone_contains(rays, g)
    for k, r in enumerate(rays):
        others = rays[:k] + rays[k + 1:]
        assert not intlin.cone_contains(others, r) if others else True
    # a direction is extremal iff it is not in the cone of the other directions
    for p in prims:
        others = [q for q in prims if q != p]
        assert (p in rays) == (not _lp_member(others, p))


@given(st.integers(1, 4).flatmap(pointed_generators), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_cone_contains_matches_lp(gens, v):
    v = v[: len(gens[0])]
    assert intlin.cone_contains(gens, v) == _lp_member(gens, v)


def test_extremal_rays_examples():
    assert intlin.extremal_rays([(1, 0), (0, 1), (2, -2), (-1, 2)]) == [(-1, 2), (1, -1)]
    assert intlin.extremal_rays([(3, 3)]) == [(1, 1)]
    assert intlin.extremal_rays([(1, 0, 0), (0, 1, 0), (1, 1, 0)]) == [(0, 1, 0), (1, 0, 0)]
    assert intlin.extremal_rays([]) == []


def test_extremal_rays_non_pointed():
    with pytest.raises(PointednessError):
        intlin.extremal_rays([(1, 0), (-1, 0), (0, 1)])
    assert not intlin.is_pointed([(1, 1), (-1, -1)])
    assert intlin.is_pointed([(1, 1), (1, 0)])


def test_cone_rejects_zero_and_mismatch():
    with pytest.raises(ValueError):
        intlin.ConeZ([(0, 0)])
    with pytest.raises(DimensionError):
        intlin.cone_contains([(1, 0)], (1, 0, 0))


# ---------------------------------------------------------------------------
# feasibility


def test_lp_feasible_simple():
    assert intlin.lp_feasible(2, [(1, 1)], [1], [((-1, 0), 0), ((0, -1), 0)])
    assert not intlin.lp_feasible(1, [], [], [((1,), -1), ((-1,), 0)])


def test_strict_feasible_examples():
    assert intlin.strict_feasible([[1, -1]], [0, 1])
    assert not intlin.strict_feasible([[1, 1]], [0, 1])
    assert intlin.strict_feasible([[1, 1]], [], nvars=2)
    with pytest.raises(DimensionError):
        intlin.strict_feasible([[1, 1]], [2])


@given(
    st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4),
    st.lists(st.fractions(min_value=Fraction(1, 5), max_value=5), min_size=3, max_size=3),
    st.sets(st.integers(0, 2), min_size=1),
)
def test_strict_feasible_column_scaling(a, scale, strict):
    scaled = [[Fraction(x) * s for x, s in zip(row, scale)] for row in a]
    assert intlin.strict_feasible(a, strict) == intlin.strict_feasible(scaled, strict)


# ---------------------------------------------------------------------------
# integer points


@st.composite
def bounded_systems(draw, max_vars=4):
    n = draw(st.integers(1, max_vars))
    m = draw(st.integers(1, 2))
    first = draw(st.lists(st.integers(1, 3), min_size=n, max_size=n))
    rest = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=m - 1, max_size=m - 1))
    b = draw(st.lists(st.integers(-3, 6), min_size=m, max_size=m))
    return [first] + rest, b


@given(bounded_systems())
def test_enumeration_matches_box_search(system):
    a, b = system
    sols = intlin.enumerate_nonneg_integer_solutions(a, b)
    feasible = intlin.lp_feasible(len(a[0]), a, b, [(tuple(-int(i == k) for k in range(len(a[0]))), 0) for i in range(len(a[0]))])
    bound = bfs_vertices_max(a, b) if feasible else 0
    assert sols == (box_solutions(a, b, bound) if feasible else [])


@pytest.mark.parametrize(
    "a,b",
    [
        ([[1, 1, 1, 1, 1, 1]], [4]),
        ([[1, 2, 1, 1, 2, 1], [1, -1, 0, 2, 0, -1]], [5, 1]),
        ([[2, 1, 1, 3, 1, 1], [0, 1, -1, 0, 1, -1]], [6, 0]),
    ],
)
def test_enumeration_six_variables(a, b):
    bound = bfs_vertices_max(a, b)
    assert intlin.enumerate_nonneg_integer_solutions(a, b) == box_solutions(a, b, bound)


def test_enumeration_free_columns_and_recession():
    # x0 + x1 = 2 while x2 is pinned only through a second row
    assert intlin.enumerate_nonneg_integer_solutions([[1, 1, 0], [0, 1, 1]], [2, 1]) == [(1, 1, 0), (2, 0, 1)]
    with pytest.raises(RecessionError):
        intlin.enumerate_nonneg_integer_solutions([[1, -1]], [0])
    assert intlin.enumerate_nonneg_integer_solutions([[2]], [3]) == []
    assert intlin.enumerate_nonneg_integer_solutions([[1, 1]], [-1]) == []
