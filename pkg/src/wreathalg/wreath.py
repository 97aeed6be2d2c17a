"""Iterated wreath products of cyclic schemes and their class bookkeeping.

Classes of C_{p_1} wr ... wr C_{p_d} carry two coordinate systems: a flat
index 0..sum(p_i - 1) matching the Scheme class numbering, and a
(level, offset) pair where level i in 1..d names the cyclic factor and
offset runs over 1..p_i - 1 (the identity relation is the single
level-0 index).  Vertices are mixed-radix tuples with the last factor
most significant, so vertex = x_1 + p_1*(x_2 + p_2*(...)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iter_product

from .scheme import CheckResult, Scheme

__all__ = [
    "WreathIndex",
    "check_moduli",
    "num_classes",
    "class_indices",
    "index_from_flat",
    "indices_below_level",
    "cyclic_scheme",
    "wreath_product",
    "wreath_of_cyclics",
    "predict_vanishing",
    "check_vanishing_criterion",
    "check_ball_structure",
]


def check_moduli(moduli) -> tuple[int, ...]:
    m = tuple(int(p) for p in moduli)
    if not m:
        raise ValueError("at least one modulus is required")
    if any(p < 2 for p in m):
        raise ValueError("every modulus must be at least 2")
    return m


@dataclass(frozen=True)
class WreathIndex:
    """A wreath class label: level 0 is the identity class, level i >= 1
    carries an offset in 1..p_i - 1, read modulo p_i."""

    level: int
    offset: int
    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = check_moduli(self.moduli)
        object.__setattr__(self, "moduli", moduli)
        if not 0 <= self.level <= len(moduli):
            raise ValueError(f"level {self.level} out of range for {moduli}")
        if self.level == 0:
            if self.offset != 0:
                raise ValueError("the level-0 class has no offset")
        else:
            off = self.offset % moduli[self.level - 1]
            if off == 0:
                raise ValueError(
                    f"offset {self.offset} collapses to 0 modulo {moduli[self.level - 1]}"
                )
            object.__setattr__(self, "offset", off)

    @property
    def flat(self) -> int:
        if self.level == 0:
            return 0
        return sum(p - 1 for p in self.moduli[: self.level - 1]) + self.offset

    def __repr__(self):
        return f"WreathIndex({self.level},{self.offset})"


def num_classes(moduli) -> int:
    return 1 + sum(p - 1 for p in check_moduli(moduli))


@lru_cache(maxsize=None)
def _class_indices(moduli: tuple[int, ...]) -> tuple[WreathIndex, ...]:
    out = [WreathIndex(0, 0, moduli)]
    for level, p in enumerate(moduli, start=1):
        for offset in range(1, p):
            out.append(WreathIndex(level, offset, moduli))
    return tuple(out)


def class_indices(moduli) -> tuple[WreathIndex, ...]:
    """All class labels in flat order."""
    return _class_indices(check_moduli(moduli))


def index_from_flat(moduli, k: int) -> WreathIndex:
    indices = class_indices(moduli)
    if not 0 <= k < len(indices):
        raise ValueError(f"flat index {k} out of range")
    return indices[k]


def indices_below_level(moduli, level: int) -> tuple[WreathIndex, ...]:
    """All class labels whose level is strictly below ``level`` (flat order)."""
    return tuple(ix for ix in class_indices(moduli) if ix.level < level)


def _as_index(moduli, value) -> WreathIndex:
    if isinstance(value, WreathIndex):
        if value.moduli != tuple(moduli):
            raise ValueError("index belongs to different moduli")
        return value
    return index_from_flat(moduli, value)


# -- constructors ---------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclic_scheme(n: int) -> Scheme:
    """The group scheme of Z/n: classify(x, y) = (y - x) mod n."""
    if n < 1:
        raise ValueError("cyclic scheme needs at least one vertex")
    return Scheme.from_classifier(n, lambda x, y: (y - x) % n, classes=n)


def wreath_product(inner: Scheme, outer: Scheme) -> Scheme:
    """Wreath product: copies of ``inner`` indexed by ``outer`` vertices.

    Pairs inside one copy are classified by ``inner``; pairs across copies
    by ``outer`` shifted past the inner classes.  Vertex (x, y_j) is
    encoded as j*|inner| + x.
    """
    for name, factor in (("inner", inner), ("outer", outer)):
        report = factor.verify_axioms()
        if not report.passed:
            raise ValueError(f"{name} factor fails the scheme axioms: {report.counterexamples}")
    u = inner.order
    d = inner.classes - 1

    def classify(v, w):
        xv, jv = v % u, v // u
        xw, jw = w % u, w // u
        if jv == jw:
            return inner.table[xv][xw]
        return d + outer.table[jv][jw]

    return Scheme.from_classifier(u * outer.order, classify, classes=inner.classes + outer.classes - 1)


@lru_cache(maxsize=None)
def _wreath_of_cyclics(moduli: tuple[int, ...]) -> Scheme:
    scheme = cyclic_scheme(moduli[0])
    for p in moduli[1:]:
        scheme = wreath_product(scheme, cyclic_scheme(p))
    return scheme


def wreath_of_cyclics(moduli) -> Scheme:
    """Left fold of wreath products over cyclic factors; class k has flat index k."""
    return _wreath_of_cyclics(check_moduli(moduli))


# -- the vanishing criterion ------------------------------------------------------


def predict_vanishing(moduli, a, b, c) -> bool:
    """Closed-form test: is the intersection number p_{ab}^c of three wreath
    classes zero?  Accepts WreathIndex labels or flat indices."""
    m = check_moduli(moduli)
    a = _as_index(m, a)
    b = _as_index(m, b)
    c = _as_index(m, c)
    i, al = a.level, a.offset
    j, be = b.level, b.offset
    h, ga = c.level, c.offset
    if i == j == h:
        if i == 0:
            return False
        return (al + be - ga) % m[i - 1] != 0
    if i == j:
        if h > i:
            return True
        return (al + be) % m[i - 1] != 0
    if i == h:
        if j > i:
            return True
        return al != ga
    if j == h:
        if i > j:
            return True
        return be != ga
    return True


def check_vanishing_criterion(moduli) -> CheckResult:
    """Cross-check the closed form against brute-force intersection numbers
    for every triple of classes."""
    m = check_moduli(moduli)
    scheme = wreath_of_cyclics(m)
    indices = class_indices(m)
    checked = 0
    witness = None
    for a, b, c in iter_product(indices, repeat=3):
        predicted = predict_vanishing(m, a, b, c)
        actual = scheme.intersection_number(a.flat, b.flat, c.flat) == 0
        checked += 1
        if predicted != actual:
            witness = (
                f"classes ({a},{b},{c}): predicted "
                f"{'zero' if predicted else 'nonzero'} but count is "
                f"{scheme.intersection_number(a.flat, b.flat, c.flat)}"
            )
            break
    return CheckResult("vanishing", witness is None, witness, checked)


# -- ball structure -----------------------------------------------------------------


def check_ball_structure(moduli) -> CheckResult:
    """Verify that each class neighborhood induces the smaller wreath product
    and that cross-level neighborhoods sit inside a single relation.

    For every base vertex x and class (i, alpha) with i >= 1, the set
    R_{(i,alpha)}(x) listed in vertex order must reproduce the class table
    of C_{p_1} wr ... wr C_{p_{i-1}}.  Additionally, for y in
    R_{(i,alpha)}(x) and z in R_{(j,beta)}(x): if i == j the pair (y, z)
    lies in a relation of level at most i, and if i > j then (z, y) lies
    in R_{(i,alpha)} itself.
    """
    m = check_moduli(moduli)
    scheme = wreath_of_cyclics(m)
    indices = class_indices(m)
    checked = 0
    t = scheme.table

    for x in range(scheme.order):
        balls = {ix.flat: scheme.related(x, ix.flat) for ix in indices}
        for ix in indices:
            if ix.level == 0:
                continue
            ball = balls[ix.flat]
            sub = cyclic_scheme(1) if ix.level == 1 else wreath_of_cyclics(m[: ix.level - 1])
            if len(ball) != sub.order:
                return CheckResult(
                    "ball-structure",
                    False,
                    f"x={x}, class {ix}: ball size {len(ball)} != {sub.order}",
                    checked,
                )
            for s, y in enumerate(ball):
                for u, z in enumerate(ball):
                    checked += 1
                    if t[y][z] != sub.table[s][u]:
                        return CheckResult(
                            "ball-structure",
                            False,
                            f"x={x}, class {ix}: classify({y},{z}) = {t[y][z]} "
                            f"but the induced scheme expects {sub.table[s][u]}",
                            checked,
                        )
        for a in indices:
            if a.level == 0:
                continue
            top = sum(p - 1 for p in m[: a.level])
            for b in indices:
                if b.level == 0 or b.level > a.level:
                    continue
                for y in balls[a.flat]:
                    for z in balls[b.flat]:
                        checked += 1
                        if a.level == b.level:
                            if t[y][z] > top:
                                return CheckResult(
                                    "ball-structure",
                                    False,
                                    f"x={x}: pair from balls {a},{b} lands in class "
                                    f"{t[y][z]} above level {a.level}",
                                    checked,
                                )
                        elif t[z][y] != a.flat:
                            return CheckResult(
                                "ball-structure",
                                False,
                                f"x={x}: z in ball {b}, y in ball {a} but "
                                f"classify({z},{y}) = {t[z][y]} != {a.flat}",
                                checked,
                            )
    return CheckResult("ball-structure", True, None, checked)
