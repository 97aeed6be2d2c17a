"""Dual idempotents, triple products, and the algebra they generate.

The algebra attached to a scheme and a base point is generated by the
adjacency matrices together with the diagonal projections onto the
spheres around the base point.  Its dimension is computed by an
exact-span fixpoint (``algebra_closure``) and serves as the oracle that
every structural claim in :mod:`wreathalg.structure` is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iter_product

from .cyclotomic import ONE, ZERO
from .linalg import ExactMatrix, ExactSpan, SpanBasis, product_closure
from .scheme import CheckResult, Scheme
from .wreath import _as_index, check_moduli, class_indices, wreath_of_cyclics

__all__ = [
    "TerwilligerContext",
    "make_context",
    "wreath_context",
    "triple_product",
    "predict_triple_nonzero",
    "check_triple_list",
    "algebra_closure",
    "standard_generators",
    "algebra_dimension",
    "t0_span",
    "t0_dimension",
    "triple_intersection",
    "TriplyRegularReport",
    "check_triply_regular",
    "check_primary_module",
]


@dataclass
class TerwilligerContext:
    """A scheme together with a base point and the derived matrices."""

    scheme: Scheme
    base_point: int
    adjacency: list[ExactMatrix]
    dual_idempotents: list[ExactMatrix]
    spheres: list[list[int]]
    moduli: tuple[int, ...] | None = None


def make_context(scheme: Scheme, base_point: int, moduli=None) -> TerwilligerContext:
    if not 0 <= base_point < scheme.order:
        raise ValueError(f"base point {base_point} out of range")
    spheres: list[list[int]] = [[] for _ in range(scheme.classes)]
    for y in range(scheme.order):
        spheres[scheme.table[base_point][y]].append(y)
    duals = []
    for i in range(scheme.classes):
        data = [[ZERO] * scheme.order for _ in range(scheme.order)]
        for y in spheres[i]:
            data[y][y] = ONE
        duals.append(ExactMatrix(scheme.order, scheme.order, data))
    adjacency = [scheme.adjacency_matrix(i) for i in range(scheme.classes)]
    if moduli is not None:
        moduli = check_moduli(moduli)
    return TerwilligerContext(scheme, base_point, adjacency, duals, spheres, moduli)


@lru_cache(maxsize=None)
def _wreath_context(moduli: tuple[int, ...], base_point: int) -> TerwilligerContext:
    return make_context(wreath_of_cyclics(moduli), base_point, moduli=moduli)


def wreath_context(moduli, base_point: int) -> TerwilligerContext:
    return _wreath_context(check_moduli(moduli), base_point)


def triple_product(ctx: TerwilligerContext, i: int, j: int, h: int) -> ExactMatrix:
    """The exact product E_i* A_j E_h*."""
    return ctx.dual_idempotents[i] * ctx.adjacency[j] * ctx.dual_idempotents[h]


def predict_triple_nonzero(moduli, a, b, c) -> bool:
    """Closed-form test for E_a* A_b E_c* being nonzero in the wreath scheme.

    Implemented from the explicit case list, independently of
    :func:`wreathalg.wreath.predict_vanishing`; the two predicates are
    cross-validated by enumeration in the test suite.
    """
    m = check_moduli(moduli)
    a = _as_index(m, a)
    b = _as_index(m, b)
    c = _as_index(m, c)
    i, al = a.level, a.offset
    j, be = b.level, b.offset
    h, ga = c.level, c.offset
    if i == 0 and j == 0 and h == 0:
        return True
    if i == j == h:
        return (al + be - ga) % m[i - 1] == 0
    if i == j and h < i:
        return (al + be) % m[i - 1] == 0
    if i == h and j < i:
        return al == ga
    if j == h and i < j:
        return be == ga
    return False


def check_triple_list(moduli, base_point: int) -> CheckResult:
    """Compare the nonzero-triple-product case list with exact products."""
    m = check_moduli(moduli)
    ctx = wreath_context(m, base_point)
    indices = class_indices(m)
    checked = 0
    for a, b, c in iter_product(indices, repeat=3):
        expected = predict_triple_nonzero(m, a, b, c)
        actual = not triple_product(ctx, a.flat, b.flat, c.flat).is_zero()
        checked += 1
        if expected != actual:
            return CheckResult(
                "triple-list",
                False,
                f"x={base_point}, classes ({a},{b},{c}): predicted "
                f"{'nonzero' if expected else 'zero'}, product is "
                f"{'nonzero' if actual else 'zero'}",
                checked,
            )
    return CheckResult("triple-list", True, None, checked)


def algebra_closure(generators) -> SpanBasis:
    """Smallest product-closed subspace containing the generators.

    Round-based fixpoint over exact spans; see
    :func:`wreathalg.linalg.product_closure` for the schedule.
    """
    return product_closure(generators)


def standard_generators(ctx: TerwilligerContext) -> list[ExactMatrix]:
    """Adjacency matrices followed by the dual idempotents, in class order."""
    return list(ctx.adjacency) + list(ctx.dual_idempotents)


@lru_cache(maxsize=None)
def _algebra_dimension(scheme: Scheme, base_point: int) -> int:
    ctx = make_context(scheme, base_point)
    return algebra_closure(standard_generators(ctx)).dimension


def algebra_dimension(scheme: Scheme, base_point: int) -> int:
    """Oracle dimension of the algebra at a base point (cached per scheme)."""
    return _algebra_dimension(scheme, base_point)


def t0_span(ctx: TerwilligerContext) -> SpanBasis:
    """Span (no closure) of all triple products E_i* A_j E_h*."""
    n = ctx.scheme.order
    basis = SpanBasis(n, n)
    c = ctx.scheme.classes
    for i in range(c):
        for j in range(c):
            for h in range(c):
                basis.insert(triple_product(ctx, i, j, h))
    return basis


@lru_cache(maxsize=None)
def _t0_dimension(scheme: Scheme, base_point: int) -> int:
    return t0_span(make_context(scheme, base_point)).dimension


def t0_dimension(scheme: Scheme, base_point: int) -> int:
    return _t0_dimension(scheme, base_point)


def triple_intersection(scheme: Scheme, x: int, y: int, z: int, i: int, j: int, h: int) -> int:
    """|R_i(x) & R_j(y) & R_h(z)| by enumeration over the vertex set."""
    t = scheme.table
    count = 0
    for w in range(scheme.order):
        if t[x][w] == i and t[y][w] == j and t[z][w] == h:
            count += 1
    return count


@dataclass
class TriplyRegularReport:
    """Verdict of the triple-intersection constancy sweep.

    ``dims_consistent`` records whether the verdict agrees with
    (dim T_0(x) == dim T(x)) at every base point; it is None when the
    input is not a valid commutative scheme and the comparison does not
    apply.
    """

    regular: bool
    witness: str | None
    dims_consistent: bool | None
    checked: int

    @property
    def passed(self) -> bool:
        return self.regular and self.dims_consistent is not False


def check_triply_regular(scheme: Scheme, base_points=None) -> TriplyRegularReport:
    """Exhaustively test whether all triple intersection counts depend only
    on the six class labels, and cross-check the verdict against the span
    equality dim T_0(x) == dim T(x) at every base point."""
    n = scheme.order
    t = scheme.table
    buckets: dict[tuple[int, int, int], tuple[tuple[int, int, int], dict]] = {}
    regular = True
    witness = None
    checked = 0
    for x in range(n):
        tx = t[x]
        for y in range(n):
            ty = t[y]
            key_xy = tx[y]
            for z in range(n):
                tz = t[z]
                key = (key_xy, tx[z], ty[z])
                counts: dict[tuple[int, int, int], int] = {}
                for w in range(n):
                    label = (tx[w], ty[w], tz[w])
                    counts[label] = counts.get(label, 0) + 1
                checked += 1
                if key not in buckets:
                    buckets[key] = ((x, y, z), counts)
                elif buckets[key][1] != counts:
                    regular = False
                    first_triple, ref = buckets[key][0], buckets[key][1]
                    for label in sorted(set(ref) | set(counts)):
                        if ref.get(label, 0) != counts.get(label, 0):
                            witness = (
                                f"classes {label} over pair pattern {key}: count "
                                f"{ref.get(label, 0)} at {first_triple} but "
                                f"{counts.get(label, 0)} at {(x, y, z)}"
                            )
                            break
                    break
            if not regular:
                break
        if not regular:
            break

    dims_consistent = None
    if scheme.verify_axioms().passed and scheme.is_commutative():
        points = range(n) if base_points is None else base_points
        dims_consistent = True
        for x in points:
            spans_equal = t0_dimension(scheme, x) == algebra_dimension(scheme, x)
            if spans_equal != regular:
                dims_consistent = False
                break
    return TriplyRegularReport(regular, witness, dims_consistent, checked)


def check_primary_module(ctx: TerwilligerContext) -> CheckResult:
    """The span of the sphere indicator vectors must have dimension d+1 and
    be carried into itself by every generator."""
    n = ctx.scheme.order
    c = ctx.scheme.classes
    indicators = []
    for i in range(c):
        vec = [ZERO] * n
        for y in ctx.spheres[i]:
            vec[y] = ONE
        indicators.append(vec)
    span = ExactSpan(n)
    for vec in indicators:
        span.insert(vec)
    if span.dimension != c:
        return CheckResult(
            "primary-module",
            False,
            f"x={ctx.base_point}: indicator span has dimension {span.dimension}, expected {c}",
        )
    checked = 0
    for gen in standard_generators(ctx):
        for vec in indicators:
            checked += 1
            if not span.contains(gen.apply(vec)):
                return CheckResult(
                    "primary-module",
                    False,
                    f"x={ctx.base_point}: a generator maps an indicator vector outside the span",
                    checked,
                )
    return CheckResult("primary-module", True, None, checked)
