"""Design problems: quantale-valued profunctors between Q-categories.

A design problem d from resources R to functionalities F assigns each
pair (r, f) a value d(r, f) in the shared quantale, monotone in the sense
of the bimodule condition

    hom_F(f*, f) * d(r, f) * hom_R(r, r*)  <=  d(r*, f*)        (direct)

equivalently, through the internal hom,

    hom_F(f*, f) * hom_R(r, r*)  <=  [d(r, f), d(r*, f*)]       (hom form)

Over bool this is a monotone feasibility relation; over cost a monotone
price table.  Rows index resources.

Composition operators: series joins over a shared interface category,
parallel tensors independent problems, trace closes a feedback loop over
a shared source/target factor.  Outputs of the operators on validated
inputs are validated by construction (closure); validation can be
switched off on hot paths and is always exercised by the property tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import _fastpath
from .categories import QCategory, tensor
from .errors import CompositionError, ProblemError, QuantaleError
from .quantales import Quantale, compatible
from .values import QValue, float_tol


@dataclass(frozen=True)
class DesignProblem:
    source: QCategory
    target: QCategory
    values: tuple

    @property
    def quantale(self) -> Quantale:
        return self.source.quantale

    def __repr__(self):
        return (
            f"DesignProblem({len(self.source.objects)}x"
            f"{len(self.target.objects)} over {self.quantale.name})"
        )

    def value_payload(self, r: str, f: str):
        return self.values[self.source.index(r)][self.target.index(f)]


def _normalize_values(q: Quantale, source, target, rows):
    if len(rows) != len(source.objects):
        raise ProblemError(
            f"expected {len(source.objects)} value rows, got {len(rows)}"
        )
    out = []
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != len(target.objects):
            raise ProblemError(
                f"value row for {source.objects[i]!r} has {len(row)} entries, "
                f"expected {len(target.objects)}"
            )
        norm = []
        for j, v in enumerate(row):
            try:
                norm.append(q.normalize(v))
            except QuantaleError as exc:
                raise ProblemError(
                    f"entry ({source.objects[i]!r}, {target.objects[j]!r}): {exc}"
                ) from None
        out.append(tuple(norm))
    return tuple(out)


def check_bimodule(d: DesignProblem, method: str = "auto"):
    """First witness (r, r*, f, f*) violating the direct condition, or None."""
    q = d.quantale
    R, F, V = d.source.hom, d.target.hom, d.values
    nr, nf = len(d.source.objects), len(d.target.objects)
    if nr == 0 or nf == 0:
        return None
    mode = _fastpath.mode_for(q) if method == "auto" else None
    if mode is not None:
        cell = _fastpath.bimodule_violation(
            mode,
            _fastpath.encode(q, mode, R),
            _fastpath.encode(q, mode, F),
            _fastpath.encode(q, mode, V),
            float_tol(),
        )
        if cell is None:
            return None
        rs, fs = cell
        for r in range(nr):
            for f in range(nf):
                lhs = q.mult(q.mult(F[fs][f], V[r][f]), R[r][rs])
                if not q.leq(lhs, V[rs][fs]):
                    return (
                        d.source.objects[r],
                        d.source.objects[rs],
                        d.target.objects[f],
                        d.target.objects[fs],
                    )
        return (None, d.source.objects[rs], None, d.target.objects[fs])
    for rs in range(nr):
        for fs in range(nf):
            bound = V[rs][fs]
            for r in range(nr):
                rr = R[r][rs]
                for f in range(nf):
                    lhs = q.mult(q.mult(F[fs][f], V[r][f]), rr)
                    if not q.leq(lhs, bound):
                        return (
                            d.source.objects[r],
                            d.source.objects[rs],
                            d.target.objects[f],
                            d.target.objects[fs],
                        )
    return None


def check_bimodule_via_hom(d: DesignProblem):
    """Hom-form check: hom_F * hom_R below [d(r,f), d(r*,f*)] everywhere.

    Exercises the internal hom; always the element-wise loop.
    """
    q = d.quantale
    R, F, V = d.source.hom, d.target.hom, d.values
    nr, nf = len(d.source.objects), len(d.target.objects)
    for rs in range(nr):
        for fs in range(nf):
            for r in range(nr):
                for f in range(nf):
                    lhs = q.mult(F[fs][f], R[r][rs])
                    if not q.leq(lhs, q.hom(V[r][f], V[rs][fs])):
                        return (
                            d.source.objects[r],
                            d.source.objects[rs],
                            d.target.objects[f],
                            d.target.objects[fs],
                        )
    return None


def validate_via_hom(d: DesignProblem) -> bool:
    """Verdict of the hom-form bimodule check."""
    return check_bimodule_via_hom(d) is None


def build_problem(
    source: QCategory,
    target: QCategory,
    values: Sequence[Sequence],
    validate: bool = True,
) -> DesignProblem:
    """Construct a design problem, checking the bimodule condition.

    source and target must be enriched in the same quantale.  The check is
    exhaustive over object quadruples and names a witness on failure.
    """
    if not compatible(source.quantale, target.quantale):
        raise ProblemError(
            f"source over {source.quantale.name} but target over "
            f"{target.quantale.name}"
        )
    d = DesignProblem(source, target, _normalize_values(source.quantale, source, target, values))
    if validate:
        witness = check_bimodule(d)
        if witness is not None:
            r, rs, f, fs = witness
            raise ProblemError(
                "bimodule condition fails: moving "
                f"({r!r}, {f!r}) to ({rs!r}, {fs!r}) is not monotone"
            )
    return d


def evaluate(d: DesignProblem, r: str, f: str) -> QValue:
    """The problem's value at one (resource, functionality) pair."""
    if not d.source.has_object(r):
        raise ProblemError(f"unknown resource {r!r}")
    if not d.target.has_object(f):
        raise ProblemError(f"unknown functionality {f!r}")
    return QValue(d.quantale.name, d.value_payload(r, f))


def identity_problem(c: QCategory, validate: bool = True) -> DesignProblem:
    """The identity profunctor: r provides f at the hom from f up to r.

    This transpose orientation is the series unit; composing with it on
    either side leaves any problem unchanged.
    """
    n = len(c.objects)
    values = tuple(
        tuple(c.hom[f][r] for f in range(n)) for r in range(n)
    )
    d = DesignProblem(c, c, values)
    if validate:
        witness = check_bimodule(d)
        if witness is not None:
            raise ProblemError(f"category hom is not a bimodule at {witness}")
    return d


def _require_same_interface(a: QCategory, b: QCategory, what: str):
    if not compatible(a.quantale, b.quantale):
        raise CompositionError(
            f"{what}: quantale mismatch ({a.quantale.name} vs {b.quantale.name})"
        )
    if a.objects != b.objects:
        raise CompositionError(
            f"{what}: object mismatch "
            f"({len(a.objects)} vs {len(b.objects)} objects"
            + (
                f"; first difference {_first_diff(a.objects, b.objects)!r})"
                if a.objects != b.objects
                else ")"
            )
        )
    q = a.quantale
    for i, (ra, rb) in enumerate(zip(a.hom, b.hom)):
        for j, (va, vb) in enumerate(zip(ra, rb)):
            if not q.equal(va, vb):
                raise CompositionError(
                    f"{what}: hom tables differ at "
                    f"({a.objects[i]!r}, {a.objects[j]!r})"
                )


def _first_diff(xs, ys):
    for x, y in zip(xs, ys):
        if x != y:
            return x
    return xs[len(ys):][:1] or ys[len(xs):][:1]


def _series_values(q: Quantale, a_rows, b_rows, n_mid: int, n_out: int):
    mode = _fastpath.mode_for(q)
    if mode is not None and len(a_rows) and n_out and n_mid:
        arr = _fastpath.series_product(
            mode,
            _fastpath.encode(q, mode, a_rows),
            _fastpath.encode(q, mode, b_rows),
        )
        return _fastpath.decode(q, mode, arr)
    out = []
    for row in a_rows:
        out_row = []
        for j in range(n_out):
            out_row.append(q.join(q.mult(row[m], b_rows[m][j]) for m in range(n_mid)))
        out.append(out_row)
    return out


def series(d1: DesignProblem, d2: DesignProblem, validate: bool = True) -> DesignProblem:
    """Sequential composition: join over the shared interface category.

    d1's target and d2's source must be the same category (same objects
    and hom table).  An empty interface yields the all-bottom problem.
    """
    _require_same_interface(d1.target, d2.source, "series interface")
    q = d1.quantale
    if not compatible(q, d2.quantale):
        raise CompositionError("series: problems over different quantales")
    vals = _series_values(
        q, d1.values, d2.values, len(d1.target.objects), len(d2.target.objects)
    )
    out = DesignProblem(
        d1.source, d2.target, _normalize_values(q, d1.source, d2.target, vals)
    )
    if validate:
        witness = check_bimodule(out)
        if witness is not None:
            raise ProblemError(f"series output fails bimodule check at {witness}")
    return out


def series_breakdown(d1: DesignProblem, d2: DesignProblem, r: str, f: str):
    """Per-interface-object contributions to a series value.

    Returns ([(mid_object, payload)], joined_payload); the join of the
    listed payloads is the composite's value at (r, f).
    """
    _require_same_interface(d1.target, d2.source, "series interface")
    q = d1.quantale
    i = d1.source.index(r)
    j = d2.target.index(f)
    terms = [
        (m, q.mult(d1.values[i][k], d2.values[k][j]))
        for k, m in enumerate(d1.target.objects)
    ]
    return terms, q.join(t for _, t in terms)


def parallel(d1: DesignProblem, d2: DesignProblem, validate: bool = True) -> DesignProblem:
    """Independent pairing: tensor categories, multiply values pointwise."""
    q = d1.quantale
    if not compatible(q, d2.quantale):
        raise CompositionError("parallel: problems over different quantales")
    src = tensor(d1.source, d2.source, validate=False)
    tgt = tensor(d1.target, d2.target, validate=False)
    mult = q.mult
    vals = []
    for row1 in d1.values:
        for row2 in d2.values:
            vals.append([mult(a, b) for a in row1 for b in row2])
    out = DesignProblem(src, tgt, _normalize_values(q, src, tgt, vals))
    if validate:
        witness = check_bimodule(out)
        if witness is not None:
            raise ProblemError(f"parallel output fails bimodule check at {witness}")
    return out


def _trace_factors(d: DesignProblem, loop: QCategory):
    if d.source.factors is None or d.target.factors is None:
        raise CompositionError(
            "trace needs tensor-built source and target categories"
        )
    r_cat, m_src = d.source.factors
    f_cat, m_tgt = d.target.factors
    _require_same_interface(m_src, loop, "trace loop (source side)")
    _require_same_interface(m_tgt, loop, "trace loop (target side)")
    return r_cat, f_cat


def trace(d: DesignProblem, loop: QCategory, validate: bool = True) -> DesignProblem:
    """Feedback: close the loop factor shared by source and target.

    For each outer pair the loop's provided value m' is fed back as the
    required value m, weighted by hom_M(m, m'); the result joins over all
    loop pairs.  An empty loop yields the all-bottom problem.
    """
    r_cat, f_cat = _trace_factors(d, loop)
    q = d.quantale
    nr, nm, nf = len(r_cat.objects), len(loop.objects), len(f_cat.objects)
    mode = _fastpath.mode_for(q)
    if mode is not None and nr and nf:
        import numpy as np

        d4 = _fastpath.encode(q, mode, d.values).reshape(nr, nm, nf, nm)
        m_arr = _fastpath.encode(q, mode, loop.hom) if nm else np.zeros((0, 0))
        vals = _fastpath.decode(q, mode, _fastpath.trace_values(mode, d4, m_arr))
    else:
        vals = []
        for r in range(nr):
            row = []
            for f in range(nf):
                row.append(
                    q.join(
                        q.mult(d.values[r * nm + m][f * nm + mp], loop.hom[m][mp])
                        for m in range(nm)
                        for mp in range(nm)
                    )
                )
            vals.append(row)
    out = DesignProblem(r_cat, f_cat, _normalize_values(q, r_cat, f_cat, vals))
    if validate:
        witness = check_bimodule(out)
        if witness is not None:
            raise ProblemError(f"trace output fails bimodule check at {witness}")
    return out


def pareto_front(d: DesignProblem, f: str):
    """Minimal feasible resources of a bool problem at functionality f.

    The source category's order ranks resources; the result is the
    minimal antichain of feasible ones, listed in object order, one
    representative per equivalence class (earliest wins).
    """
    if d.quantale.kind != "bool":
        raise ProblemError("pareto_front is defined for bool-enriched problems")
    src = d.source
    j = d.target.index(f)
    feasible = [i for i, row in enumerate(d.values) if row[j]]
    hom = src.hom
    front = []
    for i in feasible:
        dominated = False
        for k in feasible:
            if k == i:
                continue
            if hom[k][i] and not hom[i][k]:
                dominated = True
                break
        if dominated:
            continue
        if any(hom[k][i] and hom[i][k] for k in front):
            continue
        front.append(i)
    return tuple(src.objects[i] for i in front)


def upward_closure(c: QCategory, names: Sequence[str]):
    """All objects above any of names in a bool category's order."""
    idx = [c.index(n) for n in names]
    return tuple(
        o
        for j, o in enumerate(c.objects)
        if any(c.hom[i][j] for i in idx)
    )
