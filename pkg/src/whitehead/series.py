"""Truncated power series with exact integer coefficients.

All Poincaré-series bookkeeping in the package runs through
:class:`TruncSeries`.  Coefficients are Python ints, so series such as
``1/(1 - g - h)`` never overflow.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Mapping


def _env_degree() -> int:
    raw = os.environ.get("WHITEHEAD_DEGREE")
    return int(raw) if raw else 32


#: Global truncation degree shared by every module unless overridden.
DEFAULT_DEGREE = _env_degree()


class SeriesError(ValueError):
    """Raised on truncation mismatches and invalid series operations."""


@dataclass(frozen=True)
class TruncSeries:
    """Power series ``sum coeffs[n] t^n`` known through degree ``len(coeffs)-1``."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise SeriesError("a truncated series needs at least one coefficient")

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, degree: int = DEFAULT_DEGREE) -> TruncSeries:
        return cls((0,) * (degree + 1))

    @classmethod
    def one(cls, degree: int = DEFAULT_DEGREE) -> TruncSeries:
        return cls.monomial(0, degree)

    @classmethod
    def monomial(cls, k: int, degree: int = DEFAULT_DEGREE, c: int = 1) -> TruncSeries:
        """``c t^k``; vanishes when ``k`` is beyond the truncation."""
        if k < 0:
            raise SeriesError(f"negative exponent {k}")
        out = [0] * (degree + 1)
        if k <= degree:
            out[k] = c
        return cls(tuple(out))

    @classmethod
    def from_list(cls, coeffs: Iterable[int], degree: int = DEFAULT_DEGREE) -> TruncSeries:
        """Pad or cut ``coeffs`` to length ``degree + 1``."""
        vals = [int(c) for c in coeffs][: degree + 1]
        vals += [0] * (degree + 1 - len(vals))
        return cls(tuple(vals))

    @classmethod
    def from_dict(cls, terms: Mapping[int, int], degree: int = DEFAULT_DEGREE) -> TruncSeries:
        out = [0] * (degree + 1)
        for k, c in terms.items():
            if k < 0:
                raise SeriesError(f"negative exponent {k}")
            if k <= degree:
                out[k] += int(c)
        return cls(tuple(out))

    # basic queries ----------------------------------------------------

    @property
    def trunc_degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def valuation(self) -> int | None:
        """Least ``n`` with a nonzero coefficient, or None for the zero series."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def terms(self) -> dict[int, int]:
        return {n: c for n, c in enumerate(self.coeffs) if c}

    def truncate(self, degree: int) -> TruncSeries:
        if degree > self.trunc_degree:
            raise SeriesError("cannot extend a truncated series")
        return TruncSeries(self.coeffs[: degree + 1])

    def __repr__(self) -> str:
        return f"TruncSeries({format_series(self)}, D={self.trunc_degree})"

    # arithmetic -------------------------------------------------------

    def _check(self, other: TruncSeries) -> None:
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {type(other).__name__}")
        if other.trunc_degree != self.trunc_degree:
            raise SeriesError(
                f"truncation mismatch: {self.trunc_degree} vs {other.trunc_degree}"
            )

    def _coerce(self, other) -> TruncSeries:
        if isinstance(other, int):
            return TruncSeries.monomial(0, self.trunc_degree, other)
        self._check(other)
        return other

    def __add__(self, other) -> TruncSeries:
        other = self._coerce(other)
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> TruncSeries:
        return TruncSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> TruncSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> TruncSeries:
        return self._coerce(other) - self

    def __mul__(self, other) -> TruncSeries:
        if isinstance(other, int):
            return TruncSeries(tuple(other * a for a in self.coeffs))
        self._check(other)
        D = self.trunc_degree
        a, b = self.coeffs, other.coeffs
        out = [0] * (D + 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j in range(D + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return TruncSeries(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> TruncSeries:
        if n < 0:
            raise SeriesError("negative powers are not supported; use geom_inverse")
        result = TruncSeries.one(self.trunc_degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __le__(self, other: TruncSeries) -> bool:
        return leq(self, other)


def add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the common degree."""
    return a * b


def shift(a: TruncSeries, k: int) -> TruncSeries:
    """Multiply by ``t^k``.

    Negative ``k`` is allowed only down to the valuation of ``a``; terms
    pushed past the truncation degree are dropped.
    """
    D = a.trunc_degree
    if k >= 0:
        return TruncSeries(((0,) * k + a.coeffs)[: D + 1] if k <= D else (0,) * (D + 1))
    v = a.valuation()
    if v is not None and v + k < 0:
        raise SeriesError(f"shift by {k} would create a term in degree {v + k}")
    # lowering loses knowledge of the top |k| coefficients; the caller's
    # series must already be exact there (pad with zeros as the convention)
    return TruncSeries(a.coeffs[-k:] + (0,) * (-k))


def geom_inverse(a: TruncSeries) -> TruncSeries:
    """Return ``1/(1 - a)``; requires ``a(0) == 0``."""
    if a[0] != 0:
        raise SeriesError("geom_inverse needs a series with zero constant term")
    D = a.trunc_degree
    s = [0] * (D + 1)
    s[0] = 1
    # s = 1 + a*s, solved degree by degree
    for n in range(1, D + 1):
        s[n] = sum(a[i] * s[n - i] for i in range(1, n + 1) if a[i])
    return TruncSeries(tuple(s))


def leq(a: TruncSeries, b: TruncSeries) -> bool:
    """Coefficientwise ``a <= b`` through the truncation degree."""
    a._check(b)
    return all(x <= y for x, y in zip(a.coeffs, b.coeffs))


_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def format_series(a: TruncSeries, max_terms: int = 8) -> str:
    """Human-readable rendering such as ``1+t+2t²+…``."""
    parts = []
    terms = a.terms()
    for n, c in terms.items():
        if len(parts) == max_terms:
            parts.append("…")
            break
        mono = "" if n == 0 else ("t" if n == 1 else "t" + str(n).translate(_SUPERSCRIPTS))
        if n == 0:
            body = str(abs(c))
        else:
            body = (str(abs(c)) if abs(c) != 1 else "") + mono
        sign = "-" if c < 0 else "+"
        parts.append((sign if parts or c < 0 else "") + body)
    return "".join(parts) if parts else "0"
