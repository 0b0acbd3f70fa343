"""Exact linear algebra over a prime field or the rationals.

Matrices over ``F_p`` are numpy int64 arrays reduced mod ``p``; over ``Q``
they are lists of :class:`fractions.Fraction` rows.  Only what the
verifiers need: rank, products, powers and identity matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

Q = "Q"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """A prime field ``F_p`` or, with ``p is None``, the rationals."""

    p: int | None = 101

    def __post_init__(self) -> None:
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p is not None and self.p > 3_037_000_493:
            # keeps products of two residues inside int64
            raise ValueError("prime too large for int64 elimination")

    @classmethod
    def parse(cls, text: str | int) -> Field:
        if isinstance(text, str) and text.strip().upper() in ("Q", "QQ", "RATIONALS"):
            return cls(None)
        return cls(int(text))

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def scalar(self, c):
        if self.p is None:
            return Fraction(c)
        return int(c) % self.p

    def inv(self, c):
        if self.p is None:
            return 1 / Fraction(c)
        return pow(int(c), -1, self.p)

    def signed(self, c) -> int | Fraction:
        """Representative of ``c`` in ``(-p/2, p/2]``; rationals unchanged."""
        if self.p is None:
            return c
        c = int(c) % self.p
        return c - self.p if c > self.p // 2 else c

    # matrices -----------------------------------------------------------

    def matrix(self, rows):
        if self.p is None:
            return [[Fraction(x) for x in row] for row in rows]
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        return arr % self.p

    def zeros(self, n: int, m: int | None = None):
        m = n if m is None else m
        return self.matrix([[0] * m for _ in range(n)]) if self.p is None else np.zeros((n, m), dtype=np.int64)

    def identity(self, n: int):
        if self.p is None:
            return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return np.eye(n, dtype=np.int64)

    def matmul(self, A, B):
        if self.p is None:
            cols = list(zip(*B)) if B else []
            return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in A]
        if A.shape[1] == 0:
            return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        if A.shape[1] * (self.p - 1) ** 2 < 2**62:
            return (A @ B) % self.p
        # large primes: reduce after each rank-one update to stay inside int64
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for k in range(A.shape[1]):
            out = (out + np.outer(A[:, k], B[k, :]) % self.p) % self.p
        return out

    def add(self, A, B):
        if self.p is None:
            return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]
        return (A + B) % self.p

    def scale(self, c, A):
        if self.p is None:
            return [[c * a for a in row] for row in A]
        return (int(c) % self.p * A) % self.p

    def equal(self, A, B) -> bool:
        if self.p is None:
            return A == B
        return A.shape == B.shape and bool(np.all(A % self.p == B % self.p))

    def is_zero(self, A) -> bool:
        if self.p is None:
            return all(x == 0 for row in A for x in row)
        return not np.any(A % self.p)

    def power(self, A, m: int):
        n = self.shape(A)[0]
        out = self.identity(n)
        base = A
        while m:
            if m & 1:
                out = self.matmul(out, base)
            base = self.matmul(base, base)
            m >>= 1
        return out

    def shape(self, A) -> tuple[int, int]:
        if self.p is None:
            return (len(A), len(A[0]) if A else 0)
        return A.shape

    def rank(self, A) -> int:
        if self.p is None:
            return _rank_rational(A)
        return _rank_mod_p(np.array(A, dtype=np.int64) % self.p, self.p)


def _rank_mod_p(M: np.ndarray, p: int) -> int:
    M = M.copy()
    if M.size == 0:
        return 0
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        below = np.nonzero(M[r + 1 :, c])[0] + r + 1
        if below.size:
            M[below] = (M[below] - np.outer(M[below, c], M[r])) % p
        r += 1
    return r


def _rank_rational(rows) -> int:
    M = [[Fraction(x) for x in row] for row in rows]
    if not M or not M[0]:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pivot_row = M[r]
        inv = 1 / pivot_row[c]
        for i in range(r + 1, len(M)):
            f = M[i][c]
            if f:
                f *= inv
                M[i] = [a - f * b for a, b in zip(M[i], pivot_row)]
        r += 1
        if r == len(M):
            break
    return r
