"""Brute-force tensor algebras over a prime field or the rationals.

``H_*(ΩG)`` for a co-H space ``G`` is the tensor algebra on the
desuspended homology of ``G``.  This module builds those algebras
explicitly, evaluates iterated graded commutators, and checks
decomposition claims by Gaussian elimination on the monomial basis.
Ranks and counts never consult the series calculus; the series of
:mod:`whitehead.lie_kernel` is only read off afterwards as the expected
label count, so the two routes can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .lie_kernel import kernel_generators
from .linalg import Field
from .series import TruncSeries, geom_inverse
from .spaces import ProductExpr, SpaceModel, from_spheres

Word = tuple[int, ...]


class CapExceeded(ValueError):
    """A product or bracket would land above the algebra's degree cap."""


class FreeAlgebra:
    """Free associative algebra on graded generators of degree >= 1."""

    def __init__(
        self,
        generators: Sequence[tuple[str, int]],
        field: Field | None = None,
        degree_cap: int = 10,
    ) -> None:
        self.generators = tuple((str(lab), int(d)) for lab, d in generators)
        for lab, d in self.generators:
            if d < 1:
                raise ValueError(f"generator {lab} has degree {d} < 1")
        labels = [lab for lab, _ in self.generators]
        if len(set(labels)) != len(labels):
            raise ValueError("generator labels must be distinct")
        self.field = field or Field()
        self.degree_cap = degree_cap
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._basis = lru_cache(maxsize=None)(self._compute_basis)

    def __repr__(self) -> str:
        gens = ", ".join(f"{lab}:{d}" for lab, d in self.generators)
        return f"FreeAlgebra([{gens}], {self.field}, cap={self.degree_cap})"

    def degree_of(self, word: Word) -> int:
        return sum(self.generators[i][1] for i in word)

    def gen(self, label: str) -> AlgElement:
        i = self._index[label]
        return AlgElement(self, self.generators[i][1], {(i,): self.field.scalar(1)})

    def one(self) -> AlgElement:
        return AlgElement(self, 0, {(): self.field.scalar(1)})

    def zero(self, degree: int) -> AlgElement:
        return AlgElement(self, degree, {})

    def _compute_basis(self, n: int) -> tuple[Word, ...]:
        if n == 0:
            return ((),)
        words = []
        for i, (_, d) in enumerate(self.generators):
            if d <= n:
                words.extend((i,) + w for w in self._basis(n - d))
        # length-lexicographic on generator indices
        return tuple(sorted(words, key=lambda w: (len(w), w)))

    def basis(self, n: int) -> tuple[Word, ...]:
        """Monomial basis of the degree-``n`` part."""
        if n < 0:
            return ()
        return self._basis(n)

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def word_label(self, word: Word) -> str:
        return "·".join(self.generators[i][0] for i in word) or "1"


@dataclass
class AlgElement:
    """Homogeneous element: sparse map from words to nonzero scalars."""

    alg: FreeAlgebra
    degree: int
    terms: dict[Word, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.terms = {w: c for w, c in self.terms.items() if c != 0}
        for w in self.terms:
            if self.alg.degree_of(w) != self.degree:
                raise ValueError(f"word {w} is not of degree {self.degree}")

    def is_zero(self) -> bool:
        return not self.terms

    def _combine(self, other: AlgElement, sign: int) -> AlgElement:
        if other.degree != self.degree and self.terms and other.terms:
            raise ValueError("cannot add elements of different degrees")
        F = self.alg.field
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = F.scalar(out.get(w, 0) + sign * c)
        return AlgElement(self.alg, self.degree, out)

    def __add__(self, other: AlgElement) -> AlgElement:
        return self._combine(other, 1)

    def __sub__(self, other: AlgElement) -> AlgElement:
        return self._combine(other, -1)

    def __neg__(self) -> AlgElement:
        return self.scaled(-1)

    def scaled(self, c) -> AlgElement:
        F = self.alg.field
        return AlgElement(self.alg, self.degree, {w: F.scalar(c * v) for w, v in self.terms.items()})

    def __mul__(self, other: AlgElement) -> AlgElement:
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.alg.field.signed(self.terms[w])
            parts.append(f"{c}*{self.alg.word_label(w)}")
        return " + ".join(parts)

    def vector(self) -> list:
        """Coordinates in the monomial basis of this element's degree."""
        basis = self.alg.basis(self.degree)
        index = {w: i for i, w in enumerate(basis)}
        out = [0] * len(basis)
        for w, c in self.terms.items():
            out[index[w]] = c
        return out


def _check_cap(alg: FreeAlgebra, degree: int) -> None:
    if degree > alg.degree_cap:
        raise CapExceeded(f"degree {degree} exceeds cap {alg.degree_cap}")


def multiply(a: AlgElement, b: AlgElement) -> AlgElement:
    """Concatenation product, extended bilinearly."""
    if a.alg is not b.alg:
        raise ValueError("elements live in different algebras")
    deg = a.degree + b.degree
    _check_cap(a.alg, deg)
    F = a.alg.field
    out: dict[Word, object] = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            w = u + v
            out[w] = F.scalar(out.get(w, 0) + c * d)
    return AlgElement(a.alg, deg, out)


def commutator(a: AlgElement, b: AlgElement) -> AlgElement:
    """Graded commutator ``ab - (-1)^{|a||b|} ba``."""
    sign = -1 if (a.degree * b.degree) % 2 else 1
    return multiply(a, b) - multiply(b, a).scaled(sign)


def eval_ad_word(w: ProductExpr, algebra: FreeAlgebra) -> AlgElement:
    """Iterated commutator realising an iterated circle product.

    Each leaf's name must be a generator label of ``algebra``.
    """
    if w.leaf is not None:
        return algebra.gen(w.leaf.name)
    return commutator(eval_ad_word(w.left, algebra), eval_ad_word(w.right, algebra))


def rank_of_span(elems: Iterable[AlgElement], degree: int, algebra: FreeAlgebra | None = None) -> int:
    """Dimension of the span of homogeneous elements of one degree."""
    elems = list(elems)
    if not elems:
        return 0
    alg = algebra or elems[0].alg
    for e in elems:
        if e.terms and e.degree != degree:
            raise ValueError(f"element of degree {e.degree} in a degree-{degree} span")
    rows = [e.vector() if e.degree == degree else [0] * alg.dim(degree) for e in elems]
    if not rows[0]:
        return 0
    return alg.field.rank(alg.field.matrix(rows))


class Echelon:
    """Incremental row echelon form over a field, for growing spanning sets."""

    def __init__(self, field: Field) -> None:
        self.field = field
        self.pivots: dict[Word, dict[Word, object]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def add(self, e: AlgElement) -> bool:
        """Insert ``e``; return whether it enlarged the span."""
        F = self.field
        vec = dict(e.terms)
        while vec:
            lead = min(vec, key=lambda w: (len(w), w))
            row = self.pivots.get(lead)
            if row is None:
                inv = F.inv(vec[lead])
                self.pivots[lead] = {w: F.scalar(c * inv) for w, c in vec.items()}
                return True
            f = vec[lead]
            for w, c in row.items():
                v = F.scalar(vec.get(w, 0) - f * c)
                if v == 0:
                    vec.pop(w, None)
                else:
                    vec[w] = v
        return False


def lie_span_dims(algebra: FreeAlgebra, cap: int | None = None) -> list[int]:
    """Dimensions of the Lie subalgebra generated by the generators, degree by degree.

    Degree ``n`` is spanned by the generators of degree ``n`` and all
    brackets of basis elements of lower degrees summing to ``n``.
    Entry ``n`` of the result is that dimension (entry 0 is 0).
    """
    cap = algebra.degree_cap if cap is None else cap
    bases: list[list[AlgElement]] = [[] for _ in range(cap + 1)]
    for n in range(1, cap + 1):
        ech = Echelon(algebra.field)
        for lab, d in algebra.generators:
            if d == n:
                g = algebra.gen(lab)
                if ech.add(g):
                    bases[n].append(g)
        for i in range(1, n):
            for a in bases[i]:
                for b in bases[n - i]:
                    c = commutator(a, b)
                    if not c.is_zero() and ech.add(c):
                        bases[n].append(c)
    return [len(b) for b in bases]


# PBW spanning check --------------------------------------------------------------


def sphere_generators(X: SpaceModel, prefix: str, cap: int) -> list[tuple[str, int]]:
    """One loop generator per cell of ``X`` (degree one less), up to degree ``cap``."""
    out = []
    k = 0
    for n, c in X.dims:
        for _ in range(c):
            k += 1
            if n - 1 <= cap:
                out.append((f"{prefix}{k}", n - 1))
    return out


@dataclass
class DegreeCheck:
    degree: int
    dim: int
    count: int
    rank: int
    expected_count: int | None = None

    @property
    def passed(self) -> bool:
        ok = self.dim == self.count == self.rank
        if self.expected_count is not None:
            ok = ok and self.count == self.expected_count
        return ok

    def to_dict(self) -> dict:
        d = {"degree": self.degree, "dimension": self.dim, "rank": self.rank, "count": self.count}
        if self.expected_count is not None:
            d["expected_count"] = self.expected_count
        d["verdict"] = "pass" if self.passed else "fail"
        return d


@dataclass
class PBWReport:
    algebra: str
    rows: list[DegreeCheck]
    bracket_labels: dict[int, list[str]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "degrees": [r.to_dict() for r in self.rows],
            "bracket_words": {str(k): v for k, v in sorted(self.bracket_labels.items())},
            "verdict": "pass" if self.passed else "fail",
        }


def _leaf(label: str, degree: int, D: int) -> ProductExpr:
    return ProductExpr.of(from_spheres([degree + 1], degree=max(D, degree + 2), name=label))


def ad_bracket_words(
    algebra: FreeAlgebra, g_labels: Sequence[str], h_labels: Sequence[str], cap: int
) -> list[tuple[str, AlgElement]]:
    """``[...[x, y₁], ..., yₙ]`` for every G-generator ``x`` and H-sequence, degree <= cap."""
    deg = dict(algebra.generators)
    D = cap + 2
    leaves = {lab: _leaf(lab, deg[lab], D) for lab in list(g_labels) + list(h_labels)}
    out = []
    frontier = [(leaves[x], deg[x]) for x in g_labels if deg[x] <= cap]
    while frontier:
        nxt = []
        for expr, d in frontier:
            out.append((expr.label, eval_ad_word(expr, algebra)))
            for y in h_labels:
                if d + deg[y] <= cap:
                    nxt.append((expr.circ(leaves[y]), d + deg[y]))
        frontier = nxt
    return out


def check_pbw_surjectivity(
    G: SpaceModel, H: SpaceModel, cap: int, field: Field | None = None
) -> PBWReport:
    """Check ``T(V) = T(W) ⊗ T(H_*)`` degree by degree through ``cap``.

    ``V`` holds the desuspended cells of ``G∨H`` and ``W`` the images of
    the ad-words ``ad^n(H_*)(G_*)``.  For each degree the products
    (monomial in ``W``)·(monomial in ``H_*``) are counted and their span
    is ranked; both must equal ``dim T(V)_n``.
    """
    field = field or Field()
    gens_g = sphere_generators(G, "x", cap)
    gens_h = sphere_generators(H, "y", cap)
    alg = FreeAlgebra(gens_g + gens_h, field, cap)
    g_labels = [lab for lab, _ in gens_g]
    h_labels = [lab for lab, _ in gens_h]

    W = ad_bracket_words(alg, g_labels, h_labels, cap)
    bracket_labels: dict[int, list[str]] = {}
    for lab, e in W:
        bracket_labels.setdefault(e.degree, []).append(lab)

    # monomials in W and in H_*, grouped by degree
    w_mon: list[list[AlgElement]] = [[alg.one()]] + [[] for _ in range(cap)]
    h_mon: list[list[AlgElement]] = [[alg.one()]] + [[] for _ in range(cap)]
    h_elems = [alg.gen(y) for y in h_labels]
    for n in range(1, cap + 1):
        for _, w in W:
            if w.degree <= n:
                w_mon[n].extend(multiply(m, w) for m in w_mon[n - w.degree])
        for y in h_elems:
            if y.degree <= n:
                h_mon[n].extend(multiply(m, y) for m in h_mon[n - y.degree])

    expected = _expected_counts(G, H, cap)
    rows = []
    for n in range(1, cap + 1):
        prods = [multiply(a, b) for i in range(n + 1) for a in w_mon[i] for b in h_mon[n - i]]
        rows.append(
            DegreeCheck(n, alg.dim(n), len(prods), rank_of_span(prods, n, alg), expected[n])
        )
    return PBWReport(repr(alg), rows, bracket_labels)


def _expected_counts(G: SpaceModel, H: SpaceModel, cap: int) -> list[int]:
    """Coefficients of ``1/(1 - g/(1-h)) · 1/(1-h)`` through ``cap``."""
    g = TruncSeries.from_dict({n - 1: c for n, c in G.dims}, cap)
    h = TruncSeries.from_dict({n - 1: c for n, c in H.dims}, cap)
    k, _ = kernel_generators(g, h)
    return list((geom_inverse(k) * geom_inverse(h)).coeffs)
