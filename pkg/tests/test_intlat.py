import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matpasture.intlat import (
    AbelianPresentation,
    cyclic_structure,
    determinant,
    enumerate_homs,
    group_structure,
    hermite_rows,
    hom_count,
    identity,
    kernel_of_map,
    lattice_membership,
    left_kernel,
    matmul,
    smith_normal_form,
    solve_integer,
    vecmat,
)

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def is_diagonal_chain(d):
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            if i != j and x:
                return False
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            return False
        if a and b % a:
            return False
    return all(x >= 0 for x in diag)


def test_snf_identity():
    d, u, v = smith_normal_form(identity(2))
    assert d == identity(2) and u == identity(2) and v == identity(2)


def test_snf_worked_example():
    d, u, v = smith_normal_form([[2, 4], [6, 8]])
    assert d == [[2, 0], [0, 4]]
    assert matmul(matmul(u, [[2, 4], [6, 8]]), v) == d


def test_snf_zero_row():
    d, u, v = smith_normal_form([[0, 0, 0]])
    assert d == [[0, 0, 0]]


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_reconstructs(m):
    d, u, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == d
    assert is_diagonal_chain(d)
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1


def test_snf_is_deterministic():
    m = [[3, 5, 7], [2, 4, 6], [1, 1, 9]]
    assert smith_normal_form(m) == smith_normal_form([row[:] for row in m])


def test_large_intermediate_entries_stay_exact():
    m = [[10 ** 30 + 1, 10 ** 30], [10 ** 30, 10 ** 30 - 1]]
    d, u, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == d
    assert d[0][0] * d[1][1] == abs(determinant(m))


def test_group_structure_examples():
    s = group_structure(AbelianPresentation(("g",), ((2,),)))
    assert s.free_rank == 0 and s.torsion_factors == (2,)
    s = group_structure(AbelianPresentation(("a", "b")))
    assert s.free_rank == 2 and s.torsion_factors == ()
    s = group_structure(AbelianPresentation(("a", "b"), ((2, 0), (0, 3))))
    assert s.torsion_factors == (6,)


@settings(max_examples=100, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_group_structure_invariant_under_row_operations(m, rnd):
    g = len(m[0])
    base = group_structure(AbelianPresentation(tuple(range(g)), tuple(map(tuple, m))))
    rows = [r[:] for r in m]
    rnd.shuffle(rows)
    for _ in range(5):
        i, j = rnd.randrange(len(rows)), rnd.randrange(len(rows))
        if i != j:
            c = rnd.randint(-3, 3)
            rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
    other = group_structure(AbelianPresentation(tuple(range(g)), tuple(map(tuple, rows))))
    assert (other.free_rank, other.torsion_factors) == (base.free_rank, base.torsion_factors)


@settings(max_examples=100, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_normal_form_round_trip(m, rnd):
    g = len(m[0])
    s = group_structure(AbelianPresentation(tuple(range(g)), tuple(map(tuple, m))))
    word = [rnd.randint(-9, 9) for _ in range(g)]
    coords = s.normalize(word)
    assert s.normalize(s.word(coords)) == coords
    diff = [a - b for a, b in zip(word, s.word(coords))]
    assert lattice_membership(diff, m)


def test_lattice_membership_examples():
    assert lattice_membership((0, 0), [[1, 0]])
    assert lattice_membership((2, 0), [[1, 0]])
    assert not lattice_membership((1, 1), [[2, 0], [0, 2]])
    assert lattice_membership((2, 2), [[2, 0], [0, 2]])


def test_solve_integer():
    rows = [[2, 1], [0, 3]]
    z = solve_integer(rows, [4, 5])
    assert vecmat(z, rows, 2) == [4, 5]
    assert solve_integer([[2, 0]], [1, 0]) is None


def test_left_kernel():
    rows = [[1, 2], [2, 4], [0, 1]]
    ker = left_kernel(rows, 2)
    assert len(ker) == 1
    assert vecmat(ker[0], rows, 2) == [0, 0]


def test_hermite_is_canonical():
    a = hermite_rows([[4, 6], [2, 2]], 2)
    b = hermite_rows([[2, 2], [0, 2], [6, 8]], 2)
    assert a == b == [[2, 0], [0, 2]]


def test_kernel_of_zero_map_is_everything():
    p = AbelianPresentation(("a", "b"), ((2, 0),))
    k = kernel_of_map(p, 1, [[0, 0]])
    s = group_structure(k)
    assert (s.free_rank, s.torsion_factors) == (1, (2,))


def test_kernel_of_augmentation():
    p = AbelianPresentation(("a", "b"))
    k = kernel_of_map(p, 1, [[1, 1]])
    assert group_structure(k).free_rank == 1
    (gen,) = k.ambient
    assert gen in ((1, -1), (-1, 1))


def test_kernel_requires_map_killing_relations():
    p = AbelianPresentation(("a",), ((2,),))
    with pytest.raises(ValueError):
        kernel_of_map(p, 1, [[1]])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=3))
def test_kernel_generators_map_to_zero(mapping):
    p = AbelianPresentation(("a", "b", "c"))
    k = kernel_of_map(p, len(mapping), mapping)
    for gen in k.ambient:
        assert all(sum(r[j] * gen[j] for j in range(3)) == 0 for r in mapping)


def test_small_hom_counts():
    z2 = AbelianPresentation(("a",), ((2,),))
    z = AbelianPresentation(("a",))
    assert len(enumerate_homs(z2, cyclic_structure(2))) == 2
    assert len(enumerate_homs(z, cyclic_structure(3))) == 3
    assert enumerate_homs(z2, cyclic_structure(3)) == [((0,),)]


def test_inconsistent_pin_gives_nothing():
    z2 = AbelianPresentation(("a",), ((2,),))
    assert enumerate_homs(z2, cyclic_structure(3), {0: (1,)}) == []
    assert enumerate_homs(z2, cyclic_structure(2), {0: (1,)}) == [((1,),)]


def test_homs_sorted_and_respect_relations():
    p = AbelianPresentation(("a", "b"), ((2, 4), (0, 6)))
    t = group_structure(AbelianPresentation(("x", "y"), ((2, 0), (0, 4))))
    homs = enumerate_homs(p, t)
    assert homs == sorted(homs)
    assert len(homs) == hom_count(p, t)
    for h in homs:
        for rel in p.relations:
            img = [sum(c * x[k] for c, x in zip(rel, h)) % m for k, m in enumerate(t.moduli)]
            assert not any(img)


def test_scrambled_presentations_count_agrees():
    rnd = random.Random(5)
    target = group_structure(AbelianPresentation(("x", "y"), ((2, 0), (0, 6))))
    for _ in range(30):
        m = [[rnd.randint(-5, 5) for _ in range(3)] for _ in range(rnd.randint(1, 4))]
        p = AbelianPresentation(("a", "b", "c"), tuple(map(tuple, m)))
        if group_structure(p).free_rank > 1:
            continue
        assert len(enumerate_homs(p, target)) == hom_count(p, target)
