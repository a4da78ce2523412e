import itertools
import random

import pytest

from corpus import TEST_PASTURES, rank2_on_4, rank2_on_at_most_4
from matpasture.cli import catalog
from matpasture.errors import ValidationError
from matpasture.matroid import (
    GPFunction,
    Matroid,
    check_basis_axiom,
    check_strong_gp,
    check_weak_gp,
    connected_components,
    dual,
    enumerate_lifts,
    mask_of,
    projectively_equivalent,
    pushforward,
    rescale,
    rescaling_orbits,
    scale,
    stabilizer_size,
    strong_instances,
    subsets,
    three_term_ok,
    underlying,
    uniform,
)
from matpasture.pasture import builtin_morphism, identity_morphism, mk_builtin, terminal_morphism

F3 = mk_builtin("F3")
K = mk_builtin("K")


def f3_example():
    vals = {(1, 2): 1, (1, 3): 1, (1, 4): 1, (2, 3): 1, (2, 4): 2, (3, 4): 1}
    return GPFunction(F3, 4, 2, vals)


def disjoint_pair(p=K):
    return GPFunction(p, 6, 3, {(1, 2, 3): p.one, (4, 5, 6): p.one})


def test_basis_axiom_examples():
    assert check_basis_axiom(4, 2, subsets(4, 2))
    assert not check_basis_axiom(6, 3, [(1, 2, 3), (4, 5, 6)])
    assert len(catalog("fano").bases) == 28
    assert not check_basis_axiom(3, 1, [])


def test_matroid_rejects_bad_family():
    with pytest.raises(ValidationError):
        Matroid(6, 3, [(1, 2, 3), (4, 5, 6)])


def test_connected_components():
    assert len(connected_components(catalog("u12"))) == 1
    assert connected_components(catalog("single-basis(2)")) == [[1], [2]]
    assert connected_components(uniform(2, 4)) == [[1, 2, 3, 4]]
    assert len(connected_components(catalog("fano"))) == 1


def test_weak_and_strong_examples():
    g = f3_example()
    assert check_weak_gp(g) and check_strong_gp(g)
    ind = GPFunction(K, 4, 2, {b: 1 for b in subsets(4, 2)})
    assert check_weak_gp(ind) and check_strong_gp(ind)
    bad = disjoint_pair()
    assert three_term_ok(bad)
    assert not check_weak_gp(bad) and not check_strong_gp(bad)


def test_strong_relations_sign_convention():
    """Every strong relation of a genuine F3 point vanishes; one flipped sign breaks it."""
    g = f3_example()
    insts = strong_instances(4, 2)
    assert len(insts) == 16
    # 4 relations with J outside I'; the other 12 pair a product with itself
    # and must carry opposite signs.
    assert sum(len(t) == 3 for t in insts) == 4
    for t in insts:
        if len(t) == 2:
            (e1, a1, b1), (e2, a2, b2) = t
            assert {a1, b1} == {a2, b2} and e1 != e2
    flipped = GPFunction(F3, 4, 2, {**g.table, mask_of((2, 4)): 1})
    assert not check_strong_gp(flipped)


def test_underlying():
    assert underlying(f3_example()) == uniform(2, 4)
    F2 = mk_builtin("F2")
    fano = catalog("fano")
    assert underlying(GPFunction(F2, 7, 3, {b: 1 for b in fano.bases})) == fano
    assert underlying(scale(f3_example(), 2)) == uniform(2, 4)


def test_pushforward():
    g = f3_example()
    assert pushforward(g, identity_morphism(F3)) == g
    ind = pushforward(g, terminal_morphism(F3))
    assert ind == GPFunction(K, 4, 2, {b: 1 for b in subsets(4, 2)})
    assert check_strong_gp(ind)


def test_pushforward_composition():
    S = mk_builtin("S")
    f1 = mk_builtin("F1pm")
    f = builtin_morphism(f1, S, -1)
    h = terminal_morphism(S)
    for m in rank2_on_4():
        for g in enumerate_lifts(m, f1):
            composed = pushforward(pushforward(g, f), h)
            assert composed == pushforward(g, terminal_morphism(f1))


def test_dual_examples():
    g = GPFunction(F3, 2, 1, {(1,): 1, (2,): 1})
    d = dual(g)
    assert d[(1,)] == 1 and d[(2,)] == F3.eps
    assert projectively_equivalent(dual(dual(g)), g)


def test_dual_of_strong_function_is_strong():
    for name in TEST_PASTURES:
        p = mk_builtin(name)
        for m in [uniform(2, 4), catalog("uniform(3,5)")]:
            for g in enumerate_lifts(m, p, "strong"):
                assert check_strong_gp(dual(g))


def test_rescale_examples():
    g = f3_example()
    assert rescale(g, {i: 1 for i in range(1, 5)}) == g
    assert projectively_equivalent(rescale(g, {i: 2 for i in range(1, 5)}), g)
    t = {1: 2, 2: 1, 3: 1, 4: 1}
    h = rescale(g, t)
    assert h[(1, 2)] == 2 and h[(2, 3)] == 1
    assert check_strong_gp(h)


def test_projective_equivalence():
    g = f3_example()
    assert projectively_equivalent(g, scale(g, 2))
    f1 = mk_builtin("F1pm")
    a = GPFunction(f1, 2, 1, {(1,): 1, (2,): 1})
    b = GPFunction(f1, 2, 1, {(1,): 1, (2,): -1})
    assert not projectively_equivalent(a, b)
    h = GPFunction(F3, 3, 1, {(1,): 1, (2,): 1, (3,): 1})
    assert not projectively_equivalent(h, dual(h))


def test_lift_examples():
    assert len(enumerate_lifts(uniform(2, 4), F3, "weak")) == 8
    (g,) = enumerate_lifts(catalog("fano"), mk_builtin("F2"), "strong")
    assert all(v == 1 for _, v in g.values)
    assert len(enumerate_lifts(catalog("u12"), mk_builtin("F1pm"), "weak")) == 2


def test_lift_representatives_are_normalized_and_distinct():
    for m in rank2_on_4():
        lifts = enumerate_lifts(m, mk_builtin("S"))
        keys = {tuple(g.values) for g in lifts}
        assert len(keys) == len(lifts)
        for a, b in itertools.combinations(lifts, 2):
            assert not projectively_equivalent(a, b)


def test_strong_implies_weak_exhaustively():
    for m in rank2_on_4():
        for name in TEST_PASTURES:
            p = mk_builtin(name)
            for g in enumerate_lifts(m, p, "strong"):
                assert check_weak_gp(g)


def test_perfect_pastures_weak_equals_strong():
    for m in rank2_on_at_most_4() + (catalog("uniform(3,5)"),):
        for name in ("F3", "S", "F1pm", "K"):
            p = mk_builtin(name)
            assert len(enumerate_lifts(m, p, "weak")) == len(enumerate_lifts(m, p, "strong"))


def test_rescaling_orbit_examples():
    orbs = rescaling_orbits(enumerate_lifts(uniform(2, 4), F3), F3)
    assert [len(o) for o in orbs] == [8]
    f1 = mk_builtin("F1pm")
    orbs = rescaling_orbits(enumerate_lifts(catalog("u12"), f1), f1)
    assert [len(o) for o in orbs] == [2]
    F2 = mk_builtin("F2")
    assert [len(o) for o in rescaling_orbits(enumerate_lifts(catalog("fano"), F2), F2)] == [1]


def test_orbit_stabilizer_accounting():
    for m in rank2_on_4() + (catalog("u12"), catalog("u23")):
        c = len(connected_components(m))
        for name in ("F3", "S", "F1pm"):
            p = mk_builtin(name)
            q1 = len(p.units())
            for orbit in rescaling_orbits(enumerate_lifts(m, p), p):
                stab = stabilizer_size(orbit[0])
                assert stab == q1 ** c
                assert len(orbit) * stab == q1 ** m.n


def test_random_rescaling_preserves_acceptance():
    rnd = random.Random(11)
    for m in rank2_on_4():
        for name in TEST_PASTURES:
            p = mk_builtin(name)
            for g in enumerate_lifts(m, p, "strong"):
                t = {i: rnd.choice(p.units()) for i in range(1, 5)}
                h = rescale(g, t)
                assert check_weak_gp(h) and check_strong_gp(h)


def test_json_round_trip():
    g = f3_example()
    assert GPFunction.from_json(g.to_json(), F3) == g
    m = catalog("fano")
    assert Matroid.from_json(m.to_json()) == m
    with pytest.raises(ValidationError):
        Matroid.from_json({"n": 2, "r": 1})
    with pytest.raises(ValidationError):
        GPFunction.from_json({"n": 2, "r": 1, "values": {"1,1": "1"}}, F3)
