from itertools import product as iter_product

import pytest

from wreathalg import (
    ExactMatrix,
    Scheme,
    algebra_closure,
    algebra_dimension,
    check_primary_module,
    check_triple_list,
    check_triply_regular,
    cyclic_scheme,
    make_context,
    rational,
    standard_generators,
    t0_dimension,
    t0_span,
    triple_intersection,
    triple_product,
    wreath_context,
    wreath_of_cyclics,
)


def test_context_dual_idempotents():
    ctx = make_context(cyclic_scheme(2), 0)
    assert ctx.dual_idempotents[0] == ExactMatrix.from_rows([[1, 0], [0, 0]])
    assert ctx.dual_idempotents[1] == ExactMatrix.from_rows([[0, 0], [0, 1]])


def test_dual_idempotents_sum_to_identity():
    for scheme in (cyclic_scheme(4), wreath_of_cyclics([2, 3])):
        ctx = make_context(scheme, 1)
        total = ctx.dual_idempotents[0]
        for e in ctx.dual_idempotents[1:]:
            total = total + e
        assert total == ExactMatrix.identity(scheme.order)
        for i, e in enumerate(ctx.dual_idempotents):
            assert e * e == e
            for j in range(i + 1, scheme.classes):
                assert (e * ctx.dual_idempotents[j]).is_zero()


def test_sphere_sizes_follow_valencies():
    ctx = wreath_context([2, 3], 0)
    assert [len(s) for s in ctx.spheres] == [1, 1, 2, 2]


def test_context_rejects_bad_base_point():
    with pytest.raises(ValueError):
        make_context(cyclic_scheme(2), 2)


def test_triple_product_identity_case():
    ctx = wreath_context([2, 3], 0)
    assert triple_product(ctx, 0, 0, 0) == ctx.dual_idempotents[0]


def test_triple_product_vanishes_exactly_with_intersection_number():
    s = wreath_of_cyclics([2, 3])
    ctx = make_context(s, 0)
    for i, j, h in iter_product(range(s.classes), repeat=3):
        product_zero = triple_product(ctx, i, j, h).is_zero()
        assert product_zero == (s.intersection_number(i, j, h) == 0)


def test_predict_triple_nonzero_cases():
    from wreathalg import WreathIndex, predict_triple_nonzero

    m = (2, 3)
    zero = WreathIndex(0, 0, m)
    assert predict_triple_nonzero(m, zero, zero, zero)
    # equal top levels with offsets summing to zero reach any lower sphere
    assert predict_triple_nonzero(m, WreathIndex(2, 1, m), WreathIndex(2, 2, m), zero)
    # lower-level middle class needs matching outer offsets
    assert not predict_triple_nonzero(
        m, WreathIndex(1, 1, m), WreathIndex(2, 1, m), WreathIndex(2, 2, m)
    )
    assert predict_triple_nonzero(
        m, WreathIndex(1, 1, m), WreathIndex(2, 1, m), WreathIndex(2, 1, m)
    )


def test_triple_list_check():
    for m in [(2, 3), (2, 2, 2)]:
        result = check_triple_list(m, 0)
        assert result.passed, result.witness


def test_triple_list_base_point_sweep():
    results = [check_triple_list((2, 3), x).passed for x in range(6)]
    assert results == [True] * 6


def test_closure_dimension_oracle():
    s = wreath_of_cyclics([2, 2])
    ctx = make_context(s, 0)
    closure = algebra_closure(standard_generators(ctx))
    assert closure.dimension == 10


def test_every_triple_product_lies_in_the_closure():
    s = wreath_of_cyclics([2, 2])
    ctx = make_context(s, 0)
    closure = algebra_closure(standard_generators(ctx))
    for i, j, h in iter_product(range(s.classes), repeat=3):
        assert closure.contains(triple_product(ctx, i, j, h))


def test_t0_dimensions():
    # for the two-vertex cyclic scheme all four matrix units appear as
    # triple products, so the span is the full 2x2 algebra
    assert t0_dimension(cyclic_scheme(2), 0) == 4
    assert t0_dimension(wreath_of_cyclics([2, 2]), 0) == 10
    assert t0_dimension(wreath_of_cyclics([2, 3]), 0) == 18


def test_t0_equals_closure_for_wreaths():
    for m in [(2, 2), (2, 3)]:
        s = wreath_of_cyclics(m)
        for x in range(s.order):
            assert t0_dimension(s, x) == algebra_dimension(s, x)


def test_t0_is_contained_in_closure():
    ctx = wreath_context([2, 3], 1)
    closure = algebra_closure(standard_generators(ctx))
    for mat in t0_span(ctx).basis():
        assert closure.contains(mat)


def test_dimension_is_base_point_invariant():
    s = wreath_of_cyclics([2, 3])
    dims = {algebra_dimension(s, x) for x in range(s.order)}
    assert dims == {18}


def test_triple_intersection_identity_classes():
    s = wreath_of_cyclics([2, 3])
    assert triple_intersection(s, 0, 0, 0, 0, 0, 0) == 1
    assert triple_intersection(s, 0, 1, 0, 0, 0, 0) == 0


def test_triple_intersection_partition():
    s = wreath_of_cyclics([2, 3])
    x, y, z = 0, 1, 3
    j, h = 2, 3
    total = sum(triple_intersection(s, x, y, z, i, j, h) for i in range(s.classes))
    expected = sum(
        1 for w in range(s.order) if s.classify(y, w) == j and s.classify(z, w) == h
    )
    assert total == expected


def test_triple_intersection_ball_case():
    # x = y = z with equal top-level classes counts the whole ball
    s = wreath_of_cyclics([2, 3])
    assert triple_intersection(s, 0, 0, 0, 2, 2, 2) == s.valency(2)


def test_triply_regular_wreaths():
    for m in [(2, 3), (2, 2, 2)]:
        report = check_triply_regular(wreath_of_cyclics(m))
        assert report.regular
        assert report.dims_consistent is True
        assert report.passed


def test_triply_regular_counterexample():
    # not a scheme (regularity fails), but exercises the failure path of
    # the constancy sweep; the span cross-check does not apply
    table = [
        [0, 2, 1, 1],
        [2, 0, 1, 1],
        [1, 1, 0, 1],
        [1, 1, 1, 0],
    ]
    report = check_triply_regular(Scheme(table))
    assert not report.regular
    assert report.witness is not None
    assert report.dims_consistent is None
    assert not report.passed


def test_primary_module_dimensions():
    assert check_primary_module(wreath_context([2, 2], 0)).passed
    assert check_primary_module(wreath_context([2, 3], 0)).passed
    ctx = wreath_context([2, 3], 0)
    assert ctx.scheme.classes == 4  # span dimension checked inside equals d+1


def test_primary_module_indicators_are_disjoint():
    ctx = wreath_context([2, 3], 2)
    seen = set()
    for sphere in ctx.spheres:
        assert sphere, "indicator vector must be nonzero"
        assert not (seen & set(sphere))
        seen |= set(sphere)


def test_primary_module_detects_bad_span():
    # around base point 2 the broken table has an empty sphere, so the
    # indicator span is too small
    table = [
        [0, 2, 1, 1],
        [2, 0, 1, 1],
        [1, 1, 0, 1],
        [1, 1, 1, 0],
    ]
    ctx = make_context(Scheme(table), 2)
    result = check_primary_module(ctx)
    assert not result.passed
    assert "dimension" in result.witness


def test_t0_span_matrices_have_scheme_shape():
    ctx = wreath_context([2, 2], 0)
    span = t0_span(ctx)
    assert span.shape == (4, 4)
    assert span.dimension == 10
    assert all(isinstance(mat, ExactMatrix) for mat in span.basis())
    assert span.contains(ctx.adjacency[1])
    assert span.contains(ExactMatrix.identity(4).scaled(rational(3)))
