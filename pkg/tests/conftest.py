"""Shared generators: random categories and problems valid by construction.

Random homs are closed with Floyd-Warshall style joins; every builtin
quantale has its unit at the top, so paths through repeated objects are
dominated by simple paths and one pass reaches the closure.  Random problem
tables are closed by joining each entry over all hom-weighted relaxations,
which is exactly the condition the validators check.
"""

from __future__ import annotations

import random

import pytest

from qodesign import (
    DesignProblem,
    QCategory,
    bool_quantale,
    build_category,
    build_problem,
    cost_quantale,
    fuzz_quantale,
    make_powerset,
    make_product,
    nat_quantale,
    pace_quantale,
)


def quantale_families():
    """Name -> zero-argument constructor, one per distinct behavior."""
    return {
        "bool": bool_quantale,
        "pace": pace_quantale,
        "cost": cost_quantale,
        "nat": nat_quantale,
        "fuzz_godel": lambda: fuzz_quantale("godel"),
        "fuzz_goguen": lambda: fuzz_quantale("goguen"),
        "fuzz_lukasiewicz": lambda: fuzz_quantale("lukasiewicz"),
        "powerset": lambda: make_powerset(("a", "b", "c")),
        "product": lambda: make_product(
            (bool_quantale(), pace_quantale()), name="BxP"
        ),
    }


def finite_families():
    names = ("bool", "pace", "powerset", "product")
    fams = quantale_families()
    return {n: fams[n] for n in names}


def random_category(q, rng: random.Random, n_min=2, n_max=5) -> QCategory:
    n = rng.randint(n_min, n_max)
    objs = [f"x{i}" for i in range(n)]
    hom = [[q.sample(rng) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        hom[i][i] = q.unit
    for k in range(n):
        for i in range(n):
            for j in range(n):
                hom[i][j] = q.join(
                    [hom[i][j], q.mult(hom[i][k], hom[k][j])]
                )
    return build_category(q, objs, hom, validate=True)


def close_values(cr: QCategory, cf: QCategory, raw) -> list:
    """Smallest valid table above raw: join over hom-weighted relaxations."""
    q = cr.quantale
    nr, nf = len(cr.objects), len(cf.objects)
    out = []
    for rs in range(nr):
        row = []
        for fs in range(nf):
            terms = [
                q.mult(q.mult(cf.hom[fs][f], raw[r][f]), cr.hom[r][rs])
                for r in range(nr)
                for f in range(nf)
            ]
            row.append(q.join(terms))
        out.append(row)
    return out


def random_problem(cr: QCategory, cf: QCategory, rng: random.Random) -> DesignProblem:
    q = cr.quantale
    raw = [
        [q.sample(rng) for _ in cf.objects] for _ in cr.objects
    ]
    return build_problem(cr, cf, close_values(cr, cf, raw), validate=True)


def random_raw_problem(cr: QCategory, cf: QCategory, rng: random.Random):
    """Uncurated table: may or may not satisfy the compatibility condition."""
    q = cr.quantale
    raw = [[q.sample(rng) for _ in cf.objects] for _ in cr.objects]
    return DesignProblem(cr, cf, tuple(tuple(r) for r in raw))


@pytest.fixture
def rng():
    return random.Random(20260819)
