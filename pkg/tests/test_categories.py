"""Enriched-category construction, validation, and combinators."""

import math
import random

import pytest

from qodesign import (
    CategoryError,
    bool_quantale,
    build_category,
    chain_category,
    check_category_axioms,
    cost_quantale,
    discrete_category,
    from_order,
    nat_grid_category,
    nat_quantale,
    pace_quantale,
    pair_name,
    pushforward,
    tensor,
)
from qodesign import builtin_lax

from conftest import quantale_families, random_category


def oracle_axioms(q, hom):
    """Definitional check: identities at unit, composition below hom."""
    n = len(hom)
    for i in range(n):
        if not q.equal(hom[i][i], q.unit) and not q.leq(q.unit, hom[i][i]):
            return ("identity", i)
    for i in range(n):
        for k in range(n):
            for j in range(n):
                if not q.leq(q.mult(hom[i][k], hom[k][j]), hom[i][j]):
                    return ("compose", i, k, j)
    return None


def test_axiom_checker_matches_oracle(rng):
    for name, mk in quantale_families().items():
        q = mk()
        agree = 0
        for _ in range(30):
            n = rng.randint(2, 5)
            hom = [[q.sample(rng) for _ in range(n)] for _ in range(n)]
            if rng.random() < 0.5:
                for i in range(n):
                    hom[i][i] = q.unit
            objs = [f"x{i}" for i in range(n)]
            got = check_category_axioms(q, objs, hom)
            want = oracle_axioms(q, hom)
            assert (got is None) == (want is None), (name, got, want)
            agree += 1
        assert agree == 30


def test_random_closed_categories_pass(rng):
    for name, mk in quantale_families().items():
        q = mk()
        for _ in range(20):
            c = random_category(q, rng)
            assert check_category_axioms(q, c.objects, c.hom) is None, name


def test_from_order_equals_warshall_oracle(rng):
    q = bool_quantale()
    for _ in range(40):
        n = rng.randint(2, 6)
        objs = [f"o{i}" for i in range(n)]
        pairs = [
            (objs[rng.randrange(n)], objs[rng.randrange(n)])
            for _ in range(rng.randint(0, n * 2))
        ]
        cat = from_order(q, objs, pairs)
        reach = [[i == j for j in range(n)] for i in range(n)]
        for a, b in pairs:
            reach[objs.index(a)][objs.index(b)] = True
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    reach[i][j] = reach[i][j] or (reach[i][k] and reach[k][j])
        assert [list(r) for r in cat.hom] == reach


def test_chain_discrete_structure():
    q = cost_quantale()
    c = chain_category(q, ("lo", "mid", "hi"))
    assert c.hom_payload("lo", "hi") == 0.0
    assert c.hom_payload("hi", "lo") == math.inf
    assert c.leq_objects("lo", "hi") and not c.leq_objects("hi", "lo")
    d = discrete_category(q, ("a", "b"))
    assert d.hom_payload("a", "b") == math.inf
    assert d.hom_payload("a", "a") == 0.0


def test_nat_grid_hom_counts_shortfall():
    c = nat_grid_category((0, 5, 12))
    assert c.hom_payload("0", "12") == 12
    assert c.hom_payload("5", "12") == 7
    assert c.hom_payload("12", "0") == 0
    assert c.objects == ("0", "5", "12")


def test_tensor_pointwise(rng):
    q = pace_quantale()
    a = random_category(q, rng, 2, 3)
    b = random_category(q, rng, 2, 3)
    t = tensor(a, b)
    assert t.factors == (a, b)
    for i, oa in enumerate(a.objects):
        for j, ob in enumerate(b.objects):
            assert t.objects[i * len(b.objects) + j] == pair_name(oa, ob)
            for i2, oa2 in enumerate(a.objects):
                for j2, ob2 in enumerate(b.objects):
                    assert q.equal(
                        t.hom_payload(pair_name(oa, ob), pair_name(oa2, ob2)),
                        q.mult(a.hom[i][i2], b.hom[j][j2]),
                    )


def test_tensor_requires_same_quantale():
    with pytest.raises(Exception):
        tensor(
            chain_category(cost_quantale(), "ab"),
            chain_category(nat_quantale(), "cd"),
        )


def test_pushforward_maps_homs_and_factors(rng):
    qc = cost_quantale()
    qb = bool_quantale()
    phi = builtin_lax("cost_to_bool_finite", qc, qb)
    a = random_category(qc, rng, 2, 3)
    b = random_category(qc, rng, 2, 3)
    t = tensor(a, b)
    pt = pushforward(t, phi)
    assert pt.quantale.kind == "bool"
    assert pt.objects == t.objects
    assert pt.factors is not None
    for i in range(len(t.objects)):
        for j in range(len(t.objects)):
            assert pt.hom[i][j] == (t.hom[i][j] < math.inf)
    # carried factors are the pushed factors
    for orig, pushed in zip(t.factors, pt.factors):
        assert pushed.objects == orig.objects
        assert pushed.quantale.kind == "bool"


def test_build_category_rejects_duplicates():
    q = bool_quantale()
    with pytest.raises(CategoryError):
        build_category(q, ("a", "a"), [[True, True], [True, True]])


def test_build_category_rejects_broken_axioms():
    q = bool_quantale()
    # missing identity
    with pytest.raises(CategoryError):
        build_category(q, ("a", "b"), [[False, False], [False, False]])
    # not transitive
    with pytest.raises(CategoryError):
        build_category(
            q,
            ("a", "b", "c"),
            [
                [True, True, False],
                [False, True, True],
                [False, False, True],
            ],
        )


def test_build_category_rejects_bad_shape():
    q = bool_quantale()
    with pytest.raises(CategoryError):
        build_category(q, ("a", "b"), [[True, True]])


def test_same_interface():
    q = bool_quantale()
    c1 = chain_category(q, ("a", "b"))
    c2 = chain_category(q, ("a", "b"))
    c3 = chain_category(q, ("a", "c"))
    assert c1.same_interface(c2)
    assert not c1.same_interface(c3)
    assert not c1.same_interface(discrete_category(q, ("a", "b")))
