"""Matrix-unit and central-idempotent structure of the wreath algebra.

Everything here is verified, not assumed: the unit family is rebuilt
from dual-idempotent products and its block support asserted, the
product law and the adjacency action are recomputed exactly, and the
final decomposition report certifies the dimension count against the
independent closure oracle from :mod:`wreathalg.terwilliger`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import ZERO, CycloNum, rational, zeta
from .linalg import ExactMatrix, SpanBasis
from .scheme import CheckResult
from .terwilliger import (
    TerwilligerContext,
    algebra_closure,
    algebra_dimension,
    standard_generators,
    wreath_context,
)
from .wreath import (
    WreathIndex,
    check_moduli,
    class_indices,
    indices_below_level,
    wreath_of_cyclics,
)

__all__ = [
    "StructureError",
    "MatrixUnitFamily",
    "build_matrix_units",
    "check_matrix_units",
    "check_adjacency_action",
    "check_block_form",
    "check_commutation",
    "CentralIdempotentFamily",
    "build_central_idempotents",
    "check_central_idempotents",
    "DecompReport",
    "decomposition_report",
    "dimension_formula",
    "one_dim_ideal_count",
    "matrix_block_size",
]


class StructureError(RuntimeError):
    """A constructed family violates its asserted shape."""


def matrix_block_size(moduli) -> int:
    return 1 + sum(p - 1 for p in check_moduli(moduli))


def one_dim_ideal_count(moduli) -> int:
    m = check_moduli(moduli)
    total = 0
    for i in range(1, len(m)):
        for h in range(i):
            total += (m[h] - 1) * (m[i] - 1)
    return total


def dimension_formula(moduli) -> int:
    return matrix_block_size(moduli) ** 2 + one_dim_ideal_count(moduli)


def _require_wreath(ctx: TerwilligerContext) -> tuple[int, ...]:
    if ctx.moduli is None:
        raise ValueError("this check needs a wreath-of-cyclics context")
    return ctx.moduli


# -- matrix units -------------------------------------------------------------------


@dataclass
class MatrixUnitFamily:
    """One matrix per ordered pair of classes, supported on a single block."""

    moduli: tuple[int, ...]
    base_point: int
    indices: tuple[WreathIndex, ...]
    matrices: dict[tuple[int, int], ExactMatrix]

    def matrix(self, a, b) -> ExactMatrix:
        ka = a.flat if isinstance(a, WreathIndex) else a
        kb = b.flat if isinstance(b, WreathIndex) else b
        return self.matrices[(ka, kb)]

    @property
    def count(self) -> int:
        return len(self.matrices)


def build_matrix_units(ctx: TerwilligerContext) -> MatrixUnitFamily:
    """Construct the unit family and assert its single-block support.

    The (a, b) member is built from dual-idempotent products (sandwiching
    the adjacency matrix of the higher level, or the all-ones matrix on
    equal levels) scaled by the reciprocal column valency; the result
    must equal the matrix carrying 1/n_b on the (a, b) block and zero
    elsewhere.
    """
    moduli = _require_wreath(ctx)
    scheme = ctx.scheme
    indices = class_indices(moduli)
    ones = ExactMatrix.ones(scheme.order, scheme.order)
    matrices: dict[tuple[int, int], ExactMatrix] = {}
    for a in indices:
        ea = ctx.dual_idempotents[a.flat]
        for b in indices:
            eb = ctx.dual_idempotents[b.flat]
            n_b = scheme.valency(b.flat)
            if a.level < b.level:
                mat = (ea * ctx.adjacency[b.flat] * eb).scaled(Fraction(1, n_b))
            elif a.level > b.level:
                mat = (ea * ctx.adjacency[a.flat].transpose() * eb).scaled(Fraction(1, n_b))
            else:
                mat = (ea * ones * eb).scaled(Fraction(1, n_b))
            expected = _single_block(ctx, a, b, Fraction(1, n_b))
            if mat != expected:
                raise StructureError(
                    f"unit ({a},{b}) at x={ctx.base_point} is not supported on its block"
                )
            matrices[(a.flat, b.flat)] = mat
    return MatrixUnitFamily(moduli, ctx.base_point, indices, matrices)


def _single_block(ctx: TerwilligerContext, a: WreathIndex, b: WreathIndex, value) -> ExactMatrix:
    n = ctx.scheme.order
    entry = rational(value)
    data = [[ZERO] * n for _ in range(n)]
    for y in ctx.spheres[a.flat]:
        row = list(data[y])
        for z in ctx.spheres[b.flat]:
            row[z] = entry
        data[y] = row
    return ExactMatrix(n, n, data)


def check_matrix_units(units: MatrixUnitFamily) -> CheckResult:
    """Verify the product law: G_ab G_cd equals G_ad when b == c, else zero."""
    zero = None
    checked = 0
    for (ka, kb), gab in units.matrices.items():
        for (kc, kd), gcd_ in units.matrices.items():
            prod = gab * gcd_
            checked += 1
            if kb == kc:
                expected = units.matrices[(ka, kd)]
                if prod != expected:
                    return CheckResult(
                        "matrix-units",
                        False,
                        f"x={units.base_point}: G[{ka},{kb}]G[{kc},{kd}] != G[{ka},{kd}]",
                        checked,
                    )
            else:
                if zero is None:
                    zero = ExactMatrix.zeros(prod.rows, prod.cols)
                if prod != zero:
                    return CheckResult(
                        "matrix-units",
                        False,
                        f"x={units.base_point}: G[{ka},{kb}]G[{kc},{kd}] is not zero",
                        checked,
                    )
    return CheckResult("matrix-units", True, None, checked)


def _unit_sum(units: MatrixUnitFamily, pairs_and_scales) -> ExactMatrix:
    total = None
    for (ka, kb), scale in pairs_and_scales:
        term = units.matrices[(ka, kb)].scaled(scale)
        total = term if total is None else total + term
    return total


def check_adjacency_action(ctx: TerwilligerContext, units: MatrixUnitFamily) -> CheckResult:
    """Check the closed forms for A_(h,xi) times a unit, on both sides.

    Left action on G_ab depends on how the level of (h, xi) compares with
    the level of a (row index); the right action compares with the level
    of b and shifts its offset.  The identity class acts trivially on
    both sides.
    """
    moduli = _require_wreath(ctx)
    scheme = ctx.scheme
    indices = units.indices
    checked = 0
    for hx in indices:
        adj = ctx.adjacency[hx.flat]
        n_hx = scheme.valency(hx.flat)
        for a in indices:
            n_a = scheme.valency(a.flat)
            for b in indices:
                g = units.matrices[(a.flat, b.flat)]
                # left: A * G
                if hx.level == 0:
                    expected = g
                elif hx.level < a.level:
                    expected = g.scaled(n_hx)
                elif hx.level == a.level:
                    p = moduli[a.level - 1]
                    if hx.offset == a.offset:
                        expected = _unit_sum(
                            units,
                            [((r.flat, b.flat), n_a) for r in indices_below_level(moduli, a.level)],
                        )
                    else:
                        shifted = WreathIndex(a.level, (a.offset - hx.offset) % p, moduli)
                        expected = units.matrices[(shifted.flat, b.flat)].scaled(n_a)
                else:
                    p = moduli[hx.level - 1]
                    reflected = WreathIndex(hx.level, p - hx.offset, moduli)
                    expected = units.matrices[(reflected.flat, b.flat)].scaled(n_a)
                checked += 1
                if adj * g != expected:
                    return CheckResult(
                        "ag-forms",
                        False,
                        f"x={ctx.base_point}: A[{hx}] * G[{a},{b}] does not match the closed form",
                        checked,
                    )
                # right: G * A
                n_b = scheme.valency(b.flat)
                if hx.level == 0:
                    expected = g
                elif hx.level < b.level:
                    expected = g.scaled(n_hx)
                elif hx.level == b.level:
                    p = moduli[b.level - 1]
                    rho = (b.offset + hx.offset) % p
                    if rho:
                        target = WreathIndex(b.level, rho, moduli)
                        expected = units.matrices[(a.flat, target.flat)].scaled(n_b)
                    else:
                        expected = _unit_sum(
                            units,
                            [
                                ((a.flat, r.flat), scheme.valency(r.flat))
                                for r in indices_below_level(moduli, b.level)
                            ],
                        )
                else:
                    expected = units.matrices[(a.flat, hx.flat)].scaled(n_hx)
                checked += 1
                if g * adj != expected:
                    return CheckResult(
                        "ag-forms",
                        False,
                        f"x={ctx.base_point}: G[{a},{b}] * A[{hx}] does not match the closed form",
                        checked,
                    )
    return CheckResult("ag-forms", True, None, checked)


# -- block form ------------------------------------------------------------------------


def _block(ctx: TerwilligerContext, matrix: ExactMatrix, a: WreathIndex, b: WreathIndex):
    return [[matrix[y, z] for z in ctx.spheres[b.flat]] for y in ctx.spheres[a.flat]]


def check_block_form(ctx: TerwilligerContext, index: WreathIndex) -> CheckResult:
    """Verify the block support of one adjacency matrix.

    Rows of levels below the class land entirely in its column as all-ones
    blocks; rows of the same level shift the offset, wrapping into the
    all-ones blocks over the lower-level columns when the offsets cancel;
    rows of higher levels only meet the block diagonal.
    """
    moduli = _require_wreath(ctx)
    if index.level == 0:
        raise ValueError("block form is stated for non-identity classes")
    j, beta = index.level, index.offset
    p = moduli[j - 1]
    matrix = ctx.adjacency[index.flat]
    checked = 0
    for a in class_indices(moduli):
        for b in class_indices(moduli):
            block = _block(ctx, matrix, a, b)
            nonzero = any(not v.is_zero() for row in block for v in row)
            all_ones = all(v.is_one() for row in block for v in row)
            if a.level < j:
                expect_nonzero = b.flat == index.flat
                expect_ones = expect_nonzero
            elif a.level == j:
                if (a.offset + beta) % p == 0:
                    expect_nonzero = b.level < j
                    expect_ones = expect_nonzero
                else:
                    expect_nonzero = (
                        b.level == j and b.offset == (a.offset + beta) % p
                    )
                    expect_ones = False
            else:
                expect_nonzero = b.flat == a.flat
                expect_ones = False
            checked += 1
            if nonzero != expect_nonzero or (expect_ones and not all_ones):
                return CheckResult(
                    "block-form",
                    False,
                    f"x={ctx.base_point}, A[{index}]: block ({a},{b}) is "
                    f"{'nonzero' if nonzero else 'zero'}, expected "
                    f"{'all-ones' if expect_ones else ('nonzero' if expect_nonzero else 'zero')}",
                    checked,
                )
    return CheckResult("block-form", True, None, checked)


def check_commutation(ctx: TerwilligerContext) -> CheckResult:
    """Dual idempotents commute with all lower-level adjacency matrices, and
    sandwiched products of lower-level adjacency matrices multiply through."""
    moduli = _require_wreath(ctx)
    checked = 0
    for a in class_indices(moduli):
        if a.level == 0:
            continue
        ea = ctx.dual_idempotents[a.flat]
        lower = indices_below_level(moduli, a.level)
        for b in lower:
            adj = ctx.adjacency[b.flat]
            checked += 1
            if ea * adj != adj * ea:
                return CheckResult(
                    "commutation",
                    False,
                    f"x={ctx.base_point}: E[{a}] does not commute with A[{b}]",
                    checked,
                )
        sandwiched = {b.flat: ea * ctx.adjacency[b.flat] * ea for b in lower}
        for b in lower:
            for c in lower:
                checked += 1
                left = sandwiched[b.flat] * sandwiched[c.flat]
                right = ea * (ctx.adjacency[b.flat] * ctx.adjacency[c.flat]) * ea
                if left != right:
                    return CheckResult(
                        "commutation",
                        False,
                        f"x={ctx.base_point}: sandwich identity fails for E[{a}], A[{b}], A[{c}]",
                        checked,
                    )
    return CheckResult("commutation", True, None, checked)


# -- central idempotents --------------------------------------------------------------------


@dataclass
class CentralIdempotentFamily:
    """Candidate rank-one central idempotents, one per (class, lower level,
    character) choice; keys are (class flat index, lower-class flat index)."""

    moduli: tuple[int, ...]
    base_point: int
    matrices: dict[tuple[int, int], ExactMatrix] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.matrices)

    def nonzero_count(self) -> int:
        return sum(1 for mat in self.matrices.values() if not mat.is_zero())


def build_central_idempotents(ctx: TerwilligerContext) -> CentralIdempotentFamily:
    """Assemble the character-weighted sphere projections.

    For a class a of level i >= 2 and a class (h, xi) of lower level
    h >= 1, the member is E_a ( sum of all adjacency matrices below level
    h, plus the level-h adjacency matrices weighted by the xi-th character
    of Z/p_h ) E_a, normalized by p_h times the level-h valency.
    """
    moduli = _require_wreath(ctx)
    family = CentralIdempotentFamily(moduli, ctx.base_point)
    scheme = ctx.scheme
    for a in class_indices(moduli):
        if a.level < 2:
            continue
        ea = ctx.dual_idempotents[a.flat]
        for hx in class_indices(moduli):
            if hx.level == 0 or hx.level >= a.level:
                continue
            h, xi = hx.level, hx.offset
            p = moduli[h - 1]
            inner = None
            for r in indices_below_level(moduli, h):
                term = ctx.adjacency[r.flat]
                inner = term if inner is None else inner + term
            for t in range(1, p):
                level_index = WreathIndex(h, t, moduli)
                inner = inner + ctx.adjacency[level_index.flat].scaled(zeta(p, t * xi))
            n_h = scheme.valency(hx.flat)
            mat = (ea * inner * ea).scaled(Fraction(1, p * n_h))
            family.matrices[(a.flat, hx.flat)] = mat
    return family


def _idempotent_scalar(moduli, scheme, a: WreathIndex, hx: WreathIndex, jb: WreathIndex) -> CycloNum:
    # Eigenvalue of A_(j,beta) on the (a, hx) idempotent.
    if jb.level >= a.level:
        return rational(0)
    if jb.level > hx.level:
        return rational(0)
    n_j = rational(scheme.valency(jb.flat))
    if jb.level == hx.level:
        p = moduli[hx.level - 1]
        return zeta(p, -jb.offset * hx.offset) * n_j
    return n_j


def check_central_idempotents(
    ctx: TerwilligerContext,
    family: CentralIdempotentFamily,
    units: MatrixUnitFamily | None = None,
) -> CheckResult:
    """Every member must be a nonzero idempotent commuting with all
    generators via the eigenvalue table, annihilating every matrix unit,
    and orthogonal to every other member; the family size must match the
    product-count formula."""
    moduli = _require_wreath(ctx)
    scheme = ctx.scheme
    if units is None:
        units = build_matrix_units(ctx)
    expected_count = one_dim_ideal_count(moduli)
    if family.count != expected_count or family.nonzero_count() != expected_count:
        return CheckResult(
            "f-family",
            False,
            f"x={ctx.base_point}: {family.nonzero_count()} nonzero members of "
            f"{family.count}, expected {expected_count}",
        )
    checked = 0
    items = sorted(family.matrices.items())
    indices = class_indices(moduli)
    zero = ExactMatrix.zeros(scheme.order, scheme.order)
    for (ka, khx), mat in items:
        a = indices[ka]
        hx = indices[khx]
        checked += 1
        if mat * mat != mat:
            return CheckResult(
                "f-family", False, f"x={ctx.base_point}: member ({a},{hx}) is not idempotent", checked
            )
        for jb in indices:
            scalar = _idempotent_scalar(moduli, scheme, a, hx, jb)
            expected = mat.scaled(scalar)
            adj = ctx.adjacency[jb.flat]
            checked += 2
            if adj * mat != expected or mat * adj != expected:
                return CheckResult(
                    "f-family",
                    False,
                    f"x={ctx.base_point}: A[{jb}] acts on member ({a},{hx}) "
                    f"with the wrong eigenvalue",
                    checked,
                )
            dual = ctx.dual_idempotents[jb.flat]
            left = dual * mat
            right = mat * dual
            target = mat if jb.flat == ka else zero
            checked += 2
            if left != target or right != target:
                return CheckResult(
                    "f-family",
                    False,
                    f"x={ctx.base_point}: E[{jb}] does not commute with member ({a},{hx})",
                    checked,
                )
        for key, unit in units.matrices.items():
            checked += 2
            if not (mat * unit).is_zero() or not (unit * mat).is_zero():
                return CheckResult(
                    "f-family",
                    False,
                    f"x={ctx.base_point}: member ({a},{hx}) does not annihilate unit {key}",
                    checked,
                )
        for (kc, khx2), other in items:
            if (kc, khx2) == (ka, khx):
                continue
            checked += 1
            if not (mat * other).is_zero():
                return CheckResult(
                    "f-family",
                    False,
                    f"x={ctx.base_point}: members ({a},{hx}) and "
                    f"({indices[kc]},{indices[khx2]}) are not orthogonal",
                    checked,
                )
    return CheckResult("f-family", True, None, checked)


# -- the decomposition report -----------------------------------------------------------------


@dataclass
class DecompReport:
    """All structural verdicts for one choice of moduli."""

    moduli: tuple[int, ...]
    order: int
    num_classes: int
    base_points: list[int]
    dim_T: int | None
    dim_formula: int
    matrix_block: int
    one_dim_count: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks) and self.dim_T == self.dim_formula

    def to_dict(self) -> dict:
        return {
            "moduli": list(self.moduli),
            "order": self.order,
            "num_classes": self.num_classes,
            "base_points": list(self.base_points),
            "dim_T": self.dim_T,
            "dim_formula": self.dim_formula,
            "matrix_block": self.matrix_block,
            "one_dim_count": self.one_dim_count,
            "checks": [
                {"name": c.name, "status": "pass" if c.passed else "fail"}
                | ({"witness": c.witness} if c.witness else {})
                for c in self.checks
            ],
        }


def _merge(results: dict[str, CheckResult], new: CheckResult) -> None:
    old = results.get(new.name)
    if old is None:
        results[new.name] = new
    else:
        results[new.name] = CheckResult(
            new.name,
            old.passed and new.passed,
            old.witness or new.witness,
            old.checked + new.checked,
        )


def decomposition_report(moduli, base_points=None) -> DecompReport:
    """Certify the full decomposition for every requested base point.

    Per base point: the closure oracle dimension must match the formula;
    the unit family must have full rank and satisfy the product law and
    adjacency action; products of generators with units must stay in the
    unit span (so it is an ideal) and generator commutators must lie in
    it too (so the quotient is commutative); the idempotent family must
    pass its property battery; and the unit span, idempotents and closure
    basis together must have exactly the oracle dimension.
    """
    m = check_moduli(moduli)
    scheme = wreath_of_cyclics(m)
    points = list(range(scheme.order)) if base_points is None else list(base_points)
    if not points:
        raise ValueError("at least one base point is required")
    block = matrix_block_size(m)
    formula = dimension_formula(m)
    results: dict[str, CheckResult] = {}
    dim_seen: int | None = None
    for x in points:
        ctx = wreath_context(m, x)
        dim_here = algebra_dimension(scheme, x)
        if dim_seen is None:
            dim_seen = dim_here
        _merge(
            results,
            CheckResult(
                "dimension",
                dim_here == formula and dim_here == dim_seen,
                None
                if dim_here == formula and dim_here == dim_seen
                else f"x={x}: oracle dimension {dim_here}, formula {formula}",
                1,
            ),
        )
        try:
            units = build_matrix_units(ctx)
        except StructureError as exc:
            _merge(results, CheckResult("unit-support", False, str(exc), 1))
            continue
        _merge(results, CheckResult("unit-support", True, None, units.count))

        unit_span = SpanBasis(scheme.order, scheme.order)
        for _, mat in sorted(units.matrices.items()):
            unit_span.insert(mat)
        _merge(
            results,
            CheckResult(
                "unit-rank",
                unit_span.dimension == block * block,
                None
                if unit_span.dimension == block * block
                else f"x={x}: unit span has rank {unit_span.dimension}, expected {block * block}",
                1,
            ),
        )
        _merge(results, check_matrix_units(units))
        _merge(results, check_adjacency_action(ctx, units))

        generators = standard_generators(ctx)
        ideal_ok = True
        ideal_witness = None
        ideal_checked = 0
        for gen in generators:
            for _, unit in sorted(units.matrices.items()):
                ideal_checked += 2
                if not unit_span.contains(gen * unit) or not unit_span.contains(unit * gen):
                    ideal_ok = False
                    ideal_witness = f"x={x}: a generator-unit product leaves the unit span"
                    break
            if not ideal_ok:
                break
        _merge(results, CheckResult("unit-ideal", ideal_ok, ideal_witness, ideal_checked))

        comm_ok = True
        comm_witness = None
        comm_checked = 0
        for idx1 in range(len(generators)):
            for idx2 in range(idx1 + 1, len(generators)):
                comm_checked += 1
                g1, g2 = generators[idx1], generators[idx2]
                if not unit_span.contains(g1 * g2 - g2 * g1):
                    comm_ok = False
                    comm_witness = f"x={x}: a generator commutator leaves the unit span"
                    break
            if not comm_ok:
                break
        _merge(results, CheckResult("quotient-commutes", comm_ok, comm_witness, comm_checked))

        idempotents = build_central_idempotents(ctx)
        _merge(results, check_central_idempotents(ctx, idempotents, units))

        combined = SpanBasis(scheme.order, scheme.order)
        for _, mat in sorted(units.matrices.items()):
            combined.insert(mat)
        for _, mat in sorted(idempotents.matrices.items()):
            combined.insert(mat)
        rank_uf = combined.dimension
        closure = algebra_closure(generators)
        for mat in closure.basis():
            combined.insert(mat)
        accounting_ok = rank_uf == formula and combined.dimension == dim_here
        _merge(
            results,
            CheckResult(
                "span-accounting",
                accounting_ok,
                None
                if accounting_ok
                else f"x={x}: rank(units+idempotents) = {rank_uf}, with closure "
                f"{combined.dimension}; expected {formula} and {dim_here}",
                2,
            ),
        )

    ordered = [
        results[name]
        for name in (
            "dimension",
            "unit-support",
            "unit-rank",
            "matrix-units",
            "ag-forms",
            "unit-ideal",
            "quotient-commutes",
            "f-family",
            "span-accounting",
        )
        if name in results
    ]
    return DecompReport(
        moduli=m,
        order=scheme.order,
        num_classes=scheme.classes,
        base_points=points,
        dim_T=dim_seen,
        dim_formula=formula,
        matrix_block=block,
        one_dim_count=one_dim_ideal_count(m),
        checks=ordered,
    )
