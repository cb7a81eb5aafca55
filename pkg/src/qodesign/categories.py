"""Categories enriched in a quantale: objects plus a hom matrix.

A Q-category is a finite object list with hom(x, y) drawn from the
quantale, satisfying

    e <= hom(x, x)                      (identity)
    hom(x, y) * hom(y, z) <= hom(x, z)  (composition)

Rows index the first argument.  Bool-enriched categories are preorders;
cost-enriched ones are generalized metric spaces.  Instances are immutable
and validated at construction, so they are safe for shared reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from . import _fastpath
from .errors import CategoryError, CompositionError, LaxityError, QuantaleError
from .quantales import Quantale, compatible
from .values import QValue


@dataclass(frozen=True)
class QCategory:
    quantale: Quantale
    objects: tuple
    hom: tuple
    factors: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {name: i for i, name in enumerate(self.objects)}
        )

    def __repr__(self):
        return (
            f"QCategory({len(self.objects)} objects over {self.quantale.name})"
        )

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise CategoryError(f"unknown object {name!r}") from None

    def has_object(self, name: str) -> bool:
        return name in self._index

    def hom_payload(self, x: str, y: str):
        return self.hom[self.index(x)][self.index(y)]

    def hom_value(self, x: str, y: str) -> QValue:
        return QValue(self.quantale.name, self.hom_payload(x, y))

    def leq_objects(self, x: str, y: str) -> bool:
        """x precedes y: the hom from x to y carries the full unit."""
        q = self.quantale
        return q.leq(q.unit, self.hom_payload(x, y))

    def same_interface(self, other: "QCategory") -> bool:
        if not compatible(self.quantale, other.quantale):
            return False
        if self.objects != other.objects:
            return False
        q = self.quantale
        for row_a, row_b in zip(self.hom, other.hom):
            for a, b in zip(row_a, row_b):
                if not q.equal(a, b):
                    return False
        return True


def _normalize_matrix(q: Quantale, objects, rows, what: str):
    n = len(objects)
    if len(rows) != n:
        raise CategoryError(f"{what}: expected {n} rows, got {len(rows)}")
    out = []
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != n:
            raise CategoryError(
                f"{what}: row for {objects[i]!r} has {len(row)} entries, expected {n}"
            )
        normalized = []
        for j, v in enumerate(row):
            try:
                normalized.append(q.normalize(v))
            except QuantaleError as exc:
                raise CategoryError(
                    f"{what}: entry ({objects[i]!r}, {objects[j]!r}): {exc}"
                ) from None
        out.append(tuple(normalized))
    return tuple(out)


def check_category_axioms(q: Quantale, objects, hom, method: str = "auto"):
    """Return None when both axioms hold, else a witness description.

    The witness is ("identity", x) or ("composition", x, y, z) with object
    names.  method "generic" forces the element-wise triple loop; "auto"
    uses the vectorized kernel when the carrier supports one.
    """
    n = len(objects)
    for i in range(n):
        if not q.leq(q.unit, hom[i][i]):
            return ("identity", objects[i])
    mode = _fastpath.mode_for(q) if method == "auto" else None
    if mode is not None and n >= 2:
        from .values import float_tol

        cell = _fastpath.category_violation(mode, _fastpath.encode(q, mode, hom), float_tol())
        if cell is None:
            return None
        x, z = cell
        for y in range(n):
            if not q.leq(q.mult(hom[x][y], hom[y][z]), hom[x][z]):
                return ("composition", objects[x], objects[y], objects[z])
        return ("composition", objects[x], "?", objects[z])
    for x in range(n):
        for y in range(n):
            xy = hom[x][y]
            for z in range(n):
                if not q.leq(q.mult(xy, hom[y][z]), hom[x][z]):
                    return ("composition", objects[x], objects[y], objects[z])
    return None


def _raise_axiom(q: Quantale, witness, context: str = ""):
    suffix = f" {context}" if context else ""
    if witness[0] == "identity":
        raise CategoryError(
            f"identity axiom fails at object {witness[1]!r}: "
            f"unit not below hom({witness[1]!r}, {witness[1]!r}){suffix}"
        )
    _, x, y, z = witness
    raise CategoryError(
        f"composition axiom fails on ({x!r}, {y!r}, {z!r}): "
        f"hom({x!r},{y!r}) * hom({y!r},{z!r}) not below hom({x!r},{z!r}){suffix}"
    )


def build_category(
    quantale: Quantale,
    objects: Sequence[str],
    hom: Sequence[Sequence],
    validate: bool = True,
    factors=None,
) -> QCategory:
    """Construct and (by default) validate a Q-category.

    Validation is exhaustive over all object triples; a failed axiom
    raises CategoryError naming a concrete witness.
    """
    objs = tuple(str(o) for o in objects)
    if len(set(objs)) != len(objs):
        dup = next(o for i, o in enumerate(objs) if o in objs[:i])
        raise CategoryError(f"duplicate object name {dup!r}")
    rows = _normalize_matrix(quantale, objs, hom, "hom matrix")
    cat = QCategory(quantale, objs, rows, factors)
    if validate:
        witness = check_category_axioms(quantale, objs, rows)
        if witness is not None:
            _raise_axiom(quantale, witness)
    return cat


def from_order(
    quantale: Quantale, objects: Sequence[str], pairs: Iterable
) -> QCategory:
    """Bool-category from a relation, closed reflexively and transitively.

    pairs contains (low, high) object pairs meaning low precedes high.
    """
    if quantale.kind != "bool":
        raise CategoryError("from_order requires a bool-kind quantale")
    objs = tuple(str(o) for o in objects)
    index = {o: i for i, o in enumerate(objs)}
    if len(index) != len(objs):
        raise CategoryError("duplicate object name in order")
    n = len(objs)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        sa, sb = str(a), str(b)
        if sa not in index:
            raise CategoryError(f"unknown object {sa!r} in order pair")
        if sb not in index:
            raise CategoryError(f"unknown object {sb!r} in order pair")
        rel[index[sa]][index[sb]] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                row_k = rel[k]
                row_i = rel[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return build_category(quantale, objs, rel, validate=True)


def chain_category(quantale: Quantale, objects: Sequence[str]) -> QCategory:
    """Chain in listed order: unit hom to every later object, bottom back."""
    objs = tuple(str(o) for o in objects)
    n = len(objs)
    e, bot = quantale.unit, quantale.bottom
    hom = [[e if i <= j else bot for j in range(n)] for i in range(n)]
    return build_category(quantale, objs, hom, validate=True)


def discrete_category(quantale: Quantale, objects: Sequence[str]) -> QCategory:
    """Category with only the mandatory identity structure."""
    objs = tuple(str(o) for o in objects)
    n = len(objs)
    e, bot = quantale.unit, quantale.bottom
    hom = [[e if i == j else bot for j in range(n)] for i in range(n)]
    return build_category(quantale, objs, hom, validate=True)


def nat_category(
    cap: int, include_inf: bool = False, quantale: Quantale = None
) -> QCategory:
    """Nat-enriched category on 0..cap: hom(n, m) = max(m - n, 0).

    The hom counts the shortfall from n up to m; with include_inf an
    unreachable top object is appended.
    """
    import math

    from .quantales import nat_quantale

    if cap < 0:
        raise CategoryError("cap must be nonnegative")
    q = quantale or nat_quantale()
    if q.kind != "nat":
        raise CategoryError("nat_category requires the nat quantale")
    values = list(range(cap + 1)) + ([math.inf] if include_inf else [])
    objs = [("inf" if v == math.inf else str(v)) for v in values]

    def h(a, b):
        if a == math.inf:
            return 0
        if b == math.inf:
            return math.inf
        return max(b - a, 0)

    hom = [[h(a, b) for b in values] for a in values]
    return build_category(q, objs, hom, validate=True)


def nat_grid_category(grid: Sequence[int], quantale: Quantale = None) -> QCategory:
    """Nat-enriched category on an ascending integer grid."""
    from .quantales import nat_quantale

    q = quantale or nat_quantale()
    values = [int(v) for v in grid]
    hom = [[max(b - a, 0) for b in values] for a in values]
    return build_category(q, [str(v) for v in values], hom, validate=True)


def pair_name(a: str, b: str) -> str:
    return f"({a},{b})"


def tensor(c: QCategory, d: QCategory, validate: bool = True) -> QCategory:
    """Product category: paired objects, homs multiplied pointwise."""
    if not compatible(c.quantale, d.quantale):
        raise CompositionError(
            f"tensor over different quantales: {c.quantale.name} vs {d.quantale.name}"
        )
    q = c.quantale
    objs = [pair_name(a, b) for a in c.objects for b in d.objects]
    nd = len(d.objects)
    mult = q.mult
    hom = []
    for i, _ in enumerate(c.objects):
        crow = c.hom[i]
        for k, _ in enumerate(d.objects):
            drow = d.hom[k]
            row = []
            for j, _ in enumerate(c.objects):
                cij = crow[j]
                for l in range(nd):
                    row.append(mult(cij, drow[l]))
            hom.append(row)
    return build_category(q, objs, hom, validate=validate, factors=(c, d))


def pushforward(
    c: QCategory, phi, force: bool = False, validate: bool = True
) -> QCategory:
    """Change of base: map every hom entry through a verified lax map.

    phi must be certified lax or strict unless force is given; a lax map
    always yields a valid category, so a validation failure under force
    points at the forced, unverified map.
    """
    if not compatible(phi.source, c.quantale):
        raise CompositionError(
            f"map {phi.name} expects {phi.source.name}, category is over "
            f"{c.quantale.name}"
        )
    if getattr(phi, "kind", None) == "identity":
        return c
    if not phi.is_certified_lax and not force:
        raise LaxityError(
            f"map {phi.name} has verdict {phi.verdict!r}; verify it with "
            f"check_lax or pass force=True"
        )
    q2 = phi.target
    hom = [[phi(v) for v in row] for row in c.hom]
    factors = None
    if c.factors is not None:
        factors = tuple(
            pushforward(f, phi, force=force, validate=False) for f in c.factors
        )
    cat = QCategory(
        q2, c.objects, _normalize_matrix(q2, c.objects, hom, "pushforward"), factors
    )
    if validate:
        witness = check_category_axioms(q2, c.objects, cat.hom)
        if witness is not None:
            context = (
                f"(pushforward through forced unverified map {phi.name})"
                if force
                else f"(pushforward through {phi.name})"
            )
            _raise_axiom(q2, witness, context)
    return cat
