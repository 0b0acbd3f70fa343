"""Telescopes of graded self-maps, seen through homology.

The homology of the mapping telescope of ``e`` is the stable image of
``e_*``.  Degreewise that is the rank of ``E^m`` with ``m`` the dimension
of the degree (Fitting's lemma), which is exact over any field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .linalg import Field
from .series import TruncSeries
from .spaces import Expr, SpaceModel, circle, join_loops


class PreconditionError(ValueError):
    """Input does not satisfy the hypothesis of the check being run."""


@dataclass
class GradedEndo:
    """Square matrices per degree ``0..degree`` acting on a graded vector space."""

    mats: dict[int, object]
    field: Field = field(default_factory=Field)
    degree: int | None = None

    def __post_init__(self) -> None:
        F = self.field
        mats = {}
        for n, A in self.mats.items():
            A = A if _is_native(F, A) else F.matrix(A)
            r, c = F.shape(A)
            if r != c:
                raise ValueError(f"degree {n}: matrix is {r}x{c}, not square")
            mats[int(n)] = A
        self.mats = dict(sorted(mats.items()))
        top = max(self.mats, default=0)
        if self.degree is None:
            self.degree = top
        elif top > self.degree:
            raise ValueError(f"matrix in degree {top} beyond degree {self.degree}")

    @classmethod
    def from_json(cls, blocks: Mapping[str, list], field: Field, degree: int | None = None) -> GradedEndo:
        return cls({int(k): v for k, v in blocks.items()}, field, degree)

    def dim(self, n: int) -> int:
        A = self.mats.get(n)
        return 0 if A is None else self.field.shape(A)[0]

    def dims(self) -> TruncSeries:
        return TruncSeries.from_dict({n: self.dim(n) for n in self.mats}, self.degree)

    def _map(self, fn) -> GradedEndo:
        return GradedEndo({n: fn(n, A) for n, A in self.mats.items()}, self.field, self.degree)

    def __matmul__(self, other: GradedEndo) -> GradedEndo:
        self._check(other)
        F = self.field
        return self._map(lambda n, A: F.matmul(A, other.mats[n]))

    def __add__(self, other: GradedEndo) -> GradedEndo:
        self._check(other)
        return self._map(lambda n, A: self.field.add(A, other.mats[n]))

    def scaled(self, c) -> GradedEndo:
        return self._map(lambda n, A: self.field.scale(c, A))

    def one_plus(self) -> GradedEndo:
        """``1 + E``."""
        F = self.field
        return self._map(lambda n, A: F.add(F.identity(self.dim(n)), A))

    def _check(self, other: GradedEndo) -> None:
        if other.field != self.field:
            raise ValueError("graded maps over different fields")
        if {n: self.dim(n) for n in self.mats} != {n: other.dim(n) for n in other.mats}:
            raise ValueError("graded maps with incompatible dimensions")

    def to_json(self) -> dict:
        F = self.field
        out = {}
        for n, A in self.mats.items():
            rows = A if F.is_rational else A.tolist()
            out[str(n)] = [[str(F.signed(x)) if F.is_rational else int(F.signed(x)) for x in row] for row in rows]
        return out


def _is_native(F: Field, A) -> bool:
    return isinstance(A, np.ndarray) if not F.is_rational else False


def identity_endo(dims: Mapping[int, int], field: Field | None = None, degree: int | None = None) -> GradedEndo:
    F = field or Field()
    return GradedEndo({n: F.identity(d) for n, d in dims.items()}, F, degree)


def is_quasi_idempotent(E: GradedEndo) -> int | None:
    """The unit ``u`` with ``E² = u·E`` in every degree, or None.

    The zero map satisfies the relation for every unit; it is reported
    with ``u = -1``.
    """
    F = E.field
    sq = E @ E
    u = None
    for n, A in E.mats.items():
        B = sq.mats[n]
        rows, cols = F.shape(A)
        for i in range(rows):
            for j in range(cols):
                if A[i][j] % F.p if not F.is_rational else A[i][j]:
                    u = F.scalar(B[i][j]) * F.inv(A[i][j])
                    break
            if u is not None:
                break
        if u is not None:
            break
    if u is None:
        return -1
    u = F.scalar(u)
    if u == 0:
        return None
    for n, A in E.mats.items():
        if not F.equal(sq.mats[n], F.scale(u, A)):
            return None
    return F.signed(u)


def telescope_dims(E: GradedEndo) -> TruncSeries:
    """Degreewise dimension of the stable image of ``E``."""
    F = E.field
    out = {}
    for n, A in E.mats.items():
        d = E.dim(n)
        out[n] = F.rank(F.power(A, d)) if d else 0
    return TruncSeries.from_dict(out, E.degree)


def rank_series(E: GradedEndo) -> TruncSeries:
    F = E.field
    return TruncSeries.from_dict({n: F.rank(A) if E.dim(n) else 0 for n, A in E.mats.items()}, E.degree)


@dataclass
class TelescopeReport:
    check: str
    rows: list[dict]
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.rows) and self.extra.get("pass", True)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "degrees": self.rows,
            **self.extra,
            "verdict": "pass" if self.passed else "fail",
        }


def verify_prop11(E: GradedEndo) -> TelescopeReport:
    """Splitting of a quasi-idempotent ``E`` with ``E² = -E``.

    Degreewise: ``im E ⊕ ker E`` fills the space, the telescope of ``E``
    has the dimension of ``im E`` and the telescope of ``1+E`` that of
    ``ker E``.
    """
    F = E.field
    sq = E @ E
    for n, A in E.mats.items():
        if not F.equal(sq.mats[n], F.scale(-1, A)):
            raise PreconditionError(f"E² ≠ -E in degree {n}")
    ranks = rank_series(E)
    dims = E.dims()
    tel = telescope_dims(E)
    tel1 = telescope_dims(E.one_plus())
    rows = []
    for n in E.mats:
        d, r = dims[n], ranks[n]
        rows.append(
            {
                "degree": n,
                "dim": d,
                "image": r,
                "kernel": d - r,
                "tel_e": tel[n],
                "tel_1_plus_e": tel1[n],
                "pass": tel[n] == r and tel1[n] == d - r and tel[n] + tel1[n] == d,
            }
        )
    return TelescopeReport("prop11", rows)


def verify_prop13(F1: GradedEndo, F2: GradedEndo) -> TelescopeReport:
    """Stable ranks of ``F1·F2`` and ``F2·F1`` agree degree by degree."""
    try:
        a = telescope_dims(F1 @ F2)
        b = telescope_dims(F2 @ F1)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    rows = [{"degree": n, "tel_f1f2": a[n], "tel_f2f1": b[n], "pass": a[n] == b[n]} for n in F1.mats]
    return TelescopeReport("prop13", rows)


# random inputs ---------------------------------------------------------------------


def random_invertible(n: int, field: Field, rng: np.random.Generator):
    while True:
        M = field.matrix(rng.integers(0, field.p, size=(n, n)).tolist())
        if field.rank(M) == n:
            return M


def random_quasi_idempotent(dims: Mapping[int, int], field: Field, rng: np.random.Generator) -> GradedEndo:
    """``-S P S⁻¹`` per degree with ``P`` a random coordinate projection."""
    if field.is_rational:
        raise ValueError("random matrices are drawn over a prime field")
    mats = {}
    for n, d in dims.items():
        k = int(rng.integers(0, d + 1)) if d else 0
        P = np.diag([1] * k + [0] * (d - k)).astype(np.int64).reshape(d, d)
        S = random_invertible(d, field, rng)
        Sinv = _inverse_mod_p(S, field.p)
        mats[n] = field.scale(-1, field.matmul(field.matmul(S, P), Sinv))
    return GradedEndo(mats, field)


def random_endo(dims: Mapping[int, int], field: Field, rng: np.random.Generator, rank_bias: bool = True) -> GradedEndo:
    """Random matrices; with ``rank_bias`` some are forced singular or nilpotent."""
    mats = {}
    for n, d in dims.items():
        A = rng.integers(0, field.p, size=(d, d)).astype(np.int64)
        if rank_bias and d:
            kind = rng.integers(0, 3)
            if kind == 1:
                A[:, rng.integers(0, d)] = 0
            elif kind == 2:
                A = np.triu(A, 1)
        mats[n] = A % field.p
    return GradedEndo(mats, field)


def _inverse_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    n = M.shape[0]
    A = np.concatenate([M % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = c + int(np.nonzero(A[c:, c])[0][0])
        A[[c, piv]] = A[[piv, c]]
        A[c] = (A[c] * pow(int(A[c, c]), -1, p)) % p
        for r in range(n):
            if r != c and A[r, c]:
                A[r] = (A[r] - A[r, c] * A[c]) % p
    return A[:, n:]


# telescope realisation of the circle product ------------------------------------------


def is_suspension(X: SpaceModel) -> bool:
    """Whether ``X`` was built from spheres by suspension, wedge and smash."""

    def walk(e: Expr) -> bool:
        if e.op in ("spheres", "suspend"):
            return True
        if e.op in ("wedge", "smash"):
            return all(walk(a) for a in e.args)
        if e.op == "named" and e.args:
            return walk(e.args[0])
        return False

    return walk(X.expr)


def _nonempty_words(gen_degrees: list[int], cap: int) -> dict[int, list[tuple[int, ...]]]:
    """Nonempty words in generators, grouped by total degree ``<= cap``."""
    by_deg: dict[int, list[tuple[int, ...]]] = {0: [()]}
    for n in range(1, cap + 1):
        by_deg[n] = [(i,) + w for i, d in enumerate(gen_degrees) if d <= n for w in by_deg[n - d]]
    by_deg.pop(0)
    return by_deg


def _generator_degrees(X: SpaceModel) -> list[int]:
    return [n - 1 for n, c in X.dims for _ in range(c)]


def circle_via_telescope(
    X: SpaceModel,
    Y: SpaceModel,
    cap: int,
    field: Field | None = None,
    assume_suspension: bool = False,
) -> TelescopeReport:
    """Realise ``X∘Y`` as the telescope of ``e₁e₂`` on ``H̃(S(ΩX∧ΩY))``.

    Basis classes are ``S(u⊗v)`` for nonempty tensor words ``u`` in the
    desuspended cells of ``X`` and ``v`` in those of ``Y``.  For a
    suspension the evaluation ``SΩX → X`` kills decomposable words, so
    ``e₁`` keeps the classes with ``u`` a single generator and ``e₂``
    those with ``v`` a single generator.  The sign produced by moving the
    suspension coordinate across for ``e₂`` is carried by ``E₂``; it is
    what makes ``E₁E₂`` a quasi-idempotent with unit ``-1``.
    """
    F = field or Field()
    if not assume_suspension and not (is_suspension(X) and is_suspension(Y)):
        raise PreconditionError("circle_via_telescope needs suspension inputs")
    if cap > X.degree:
        raise ValueError(f"cap {cap} beyond truncation degree {X.degree}")
    a_words = _nonempty_words(_generator_degrees(X), cap)
    b_words = _nonempty_words(_generator_degrees(Y), cap)

    basis: dict[int, list[tuple[tuple[int, ...], tuple[int, ...]]]] = {}
    for n in range(cap + 1):
        basis[n] = [
            (u, v)
            for i in range(1, n)
            for u in a_words.get(i, [])
            for v in b_words.get(n - 1 - i, [])
        ]

    def diag(keep, sign: int) -> GradedEndo:
        mats = {}
        for n, cells in basis.items():
            entries = [sign if keep(u, v) else 0 for u, v in cells]
            mats[n] = F.matrix(np.diag(entries).reshape(len(cells), len(cells)).tolist()) if cells else F.zeros(0)
        return GradedEndo(mats, F, cap)

    E1 = diag(lambda u, v: len(u) == 1, 1)
    E2 = diag(lambda u, v: len(v) == 1, -1)
    E = E1 @ E2
    u = is_quasi_idempotent(E)

    expected_circle = circle(X, Y).red.truncate(cap)
    expected_rest = join_loops(X, Y).truncate(cap) - expected_circle
    total = TruncSeries.from_dict({n: len(c) for n, c in basis.items()}, cap)
    tel = telescope_dims(E)
    tel1 = telescope_dims(E.one_plus())
    rows = [
        {
            "degree": n,
            "dim": total[n],
            "tel_e1e2": tel[n],
            "red_circle": expected_circle[n],
            "tel_1_plus_e1e2": tel1[n],
            "red_complement": expected_rest[n],
            "pass": tel[n] == expected_circle[n] and tel1[n] == expected_rest[n],
        }
        for n in range(cap + 1)
    ]
    extra = {
        "unit": u,
        "space_dims_match": total == join_loops(X, Y).truncate(cap),
        "pass": u == -1 and total == join_loops(X, Y).truncate(cap),
        "telescope_series": list(tel.coeffs),
    }
    return TelescopeReport("circle_via_telescope", rows, extra)
