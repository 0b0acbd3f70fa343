import pytest
from hypothesis import given, settings

from conftest import sphere_lists
from whitehead.lie_kernel import (
    GeneratorSeries,
    LieDimensionError,
    check_kernel_identity,
    free_lie_dims,
    kernel_generators,
    pbw_series,
)
from whitehead.series import SeriesError, TruncSeries, geom_inverse
from whitehead.spaces import from_spheres

D = 14


def T(terms, degree=D):
    return TruncSeries.from_dict(terms, degree)


def test_kernel_generators():
    k, labels = kernel_generators(T({1: 1}), T({1: 1}))
    assert k == T({n: 1 for n in range(1, D + 1)})
    assert labels[:2] == ["ad^0(H)(G)", "ad^1(H)(G)"]
    g = T({2: 3, 5: 1})
    assert kernel_generators(g, TruncSeries.zero(D)) == (g, ["ad^0(H)(G)"])
    # (t + t^2)/(1 - t) = t + 2t^2 + 2t^3 + ...
    k, _ = kernel_generators(T({1: 1, 2: 1}), T({1: 1}))
    assert k == T({1: 1, **{n: 2 for n in range(2, D + 1)}})


def test_kernel_identity_examples():
    r = check_kernel_identity(T({1: 1}), T({1: 1}))
    assert r.left == r.right == T({n: 2**n for n in range(D + 1)})
    h = T({1: 1, 3: 2})
    r = check_kernel_identity(TruncSeries.zero(D), h)
    assert r.left == r.right == geom_inverse(h)
    assert check_kernel_identity(T({2: 1}), T({1: 1})).equal


def test_generator_series_validation():
    with pytest.raises(SeriesError):
        GeneratorSeries(T({0: 1}))
    with pytest.raises(SeriesError):
        GeneratorSeries(T({1: -1}))


def test_free_lie_dims_examples():
    assert free_lie_dims(T({1: 1})).coeffs[:4] == (0, 1, 1, 0)
    assert free_lie_dims(TruncSeries.zero(D)).is_zero()
    assert free_lie_dims(T({1: 2})).coeffs[:4] == (0, 2, 3, 2)


def test_free_lie_dims_dimension_only_mode():
    # ungraded Witt numbers on two letters: 2, 1, 2, 3, 6, 9, 18
    dims = free_lie_dims(GeneratorSeries(T({1: 2}), signed=False))
    assert dims.coeffs[1:8] == (2, 1, 2, 3, 6, 9, 18)


def test_negative_dimension_is_reported():
    # a target that no PBW product can match: 1/(1-a) with a = t - t^2 is not a tensor algebra
    with pytest.raises(LieDimensionError):
        free_lie_dims(T({1: 1, 2: -1}))


gens = sphere_lists.map(lambda d: from_spheres(d, D).gen)


@settings(max_examples=50, deadline=None)
@given(gens, gens)
def test_kernel_identity_random(g, h):
    assert check_kernel_identity(g, h).equal


@settings(max_examples=50, deadline=None)
@given(gens)
def test_pbw_roundtrip(a):
    for signed in (True, False):
        dims = free_lie_dims(a, signed=signed)
        assert dims.is_nonnegative()
        assert pbw_series(dims, signed) == geom_inverse(a)


@settings(max_examples=30, deadline=None)
@given(gens, gens)
def test_kernel_factorisation_of_lie_dims(g, h):
    k, _ = kernel_generators(g, h)
    combined = pbw_series(free_lie_dims(k)) * pbw_series(free_lie_dims(h))
    assert combined == geom_inverse(g + h)
