"""Hilbert-series shadow of free graded Lie algebras.

Generator series here are series of loop-homology generators, i.e. the
reduced homology of a co-H space desuspended once.  The kernel of
``L(G_* ⊕ H_*) → L(H_*)`` is free on the classes ``ad^n(H_*)(G_*)``; at the
level of dimensions that is the series ``g/(1-h)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .series import SeriesError, TruncSeries, geom_inverse


class LieDimensionError(ValueError):
    """PBW extraction produced a negative dimension."""


@dataclass(frozen=True)
class GeneratorSeries:
    dims: TruncSeries
    signed: bool = True

    def __post_init__(self) -> None:
        if self.dims[0] != 0:
            raise SeriesError("generator series must have zero constant term")
        if not self.dims.is_nonnegative():
            raise SeriesError("generator dimensions must be nonnegative")


def _series(a: GeneratorSeries | TruncSeries) -> TruncSeries:
    s = a.dims if isinstance(a, GeneratorSeries) else a
    if s[0] != 0:
        raise SeriesError("generator series must have zero constant term")
    return s


def kernel_generators(
    g: GeneratorSeries | TruncSeries, h: GeneratorSeries | TruncSeries
) -> tuple[TruncSeries, list[str]]:
    """Series ``g/(1-h)`` of the free generators ``ad^n(H_*)(G_*)`` and their labels.

    Labels stop at the first ``n`` whose summand vanishes through the
    truncation degree.
    """
    gs, hs = _series(g), _series(h)
    D = gs.trunc_degree
    total = TruncSeries.zero(D)
    labels = []
    term = gs
    n = 0
    while not term.is_zero():
        total = total + term
        labels.append(f"ad^{n}(H)(G)")
        if hs.is_zero():
            break
        term = term * hs
        n += 1
    return total, labels


@dataclass
class KernelReport:
    left: TruncSeries
    right: TruncSeries
    labels: list[str] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.left == self.right

    @property
    def verdict(self) -> str:
        return "equal" if self.equal else "unequal"

    def to_dict(self) -> dict:
        return {
            "identity": "kernel",
            "degree": self.left.trunc_degree,
            "left": list(self.left.coeffs),
            "right": list(self.right.coeffs),
            "verdict": self.verdict,
            "labels": self.labels,
        }


def check_kernel_identity(
    g: GeneratorSeries | TruncSeries, h: GeneratorSeries | TruncSeries
) -> KernelReport:
    """Compare ``1/(1-g-h)`` with ``1/(1 - g/(1-h)) · 1/(1-h)``."""
    gs, hs = _series(g), _series(h)
    k, labels = kernel_generators(gs, hs)
    left = geom_inverse(gs + hs)
    right = geom_inverse(k) * geom_inverse(hs)
    return KernelReport(left, right, labels)


def _factor(n: int, d: int, odd: bool, D: int) -> TruncSeries:
    """``(1+t^n)^d`` for odd generators, ``(1-t^n)^{-d}`` otherwise."""
    if d == 0:
        return TruncSeries.one(D)
    if odd:
        return (1 + TruncSeries.monomial(n, D)) ** d
    return geom_inverse(TruncSeries.monomial(n, D)) ** d


def pbw_series(lie_dims: TruncSeries, signed: bool = True) -> TruncSeries:
    """Enveloping-algebra series of a graded Lie algebra with the given dimensions."""
    D = lie_dims.trunc_degree
    out = TruncSeries.one(D)
    for n in range(1, D + 1):
        out = out * _factor(n, lie_dims[n], signed and n % 2 == 1, D)
    return out


def free_lie_dims(a: GeneratorSeries | TruncSeries, signed: bool = True) -> TruncSeries:
    """Degreewise dimensions of the free graded Lie algebra on generators ``a``.

    Extracted from ``U(L) = T(V)``: the product of PBW factors must equal
    ``1/(1-a)``.  With ``signed`` (the default) odd classes contribute
    exterior factors ``1+t^n``; otherwise every degree is treated as even.
    """
    if isinstance(a, GeneratorSeries):
        signed = a.signed
    s = _series(a)
    D = s.trunc_degree
    target = geom_inverse(s)
    dims = [0] * (D + 1)
    partial = TruncSeries.one(D)
    for n in range(1, D + 1):
        # every factor with index < n is in partial; index n enters linearly at t^n
        d = target[n] - partial[n]
        if d < 0:
            raise LieDimensionError(
                f"negative Lie dimension {d} in degree {n}; inconsistent grading convention"
            )
        dims[n] = d
        partial = partial * _factor(n, d, signed and n % 2 == 1, D)
    return TruncSeries(tuple(dims))
