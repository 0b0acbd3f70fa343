"""Simply connected co-H spaces modelled by reduced homology dimensions.

A :class:`SpaceModel` remembers ``dim H̃_n`` over a fixed coefficient field
and an expression tree describing how it was built.  Internally the
dimension vector is stored one degree past the truncation degree ``D``:
desuspension (the circle product, the generator series ``red/t``) lowers
degrees by one, and the guard coefficient keeps those results exact
through ``D``.  Every model built here is a finite complex, so the guard
coefficient is always known.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .series import DEFAULT_DEGREE, SeriesError, TruncSeries, geom_inverse, shift


class ModelError(ValueError):
    """Invalid space input, e.g. a sphere that is not simply connected."""


@dataclass(frozen=True)
class Expr:
    """Expression tree for a space: ``op`` is one of
    spheres, named, suspend, wedge, smash, product, circle."""

    op: str
    args: tuple[Expr, ...] = ()
    data: tuple = ()

    @property
    def length(self) -> int:
        """Number of circle-product factors (1 for anything not a circle)."""
        if self.op == "circle":
            return sum(a.length for a in self.args)
        return 1

    def render(self) -> str:
        if self.op == "named":
            return str(self.data[0])
        if self.op == "spheres":
            if not self.data:
                return "*"
            return "∨".join(f"S{d}" for d in self.data)
        if self.op == "suspend":
            return f"S({self.args[0].render()})"
        sym = {"wedge": "∨", "smash": "∧", "product": "×", "circle": "∘"}[self.op]
        return "(" + sym.join(a.render() for a in self.args) + ")"


def _prune(dims: Mapping[int, int], degree: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((n, c) for n, c in dims.items() if c and n <= degree + 1))


@dataclass(frozen=True)
class SpaceModel:
    """Reduced homology dimensions of a simply connected co-H space.

    ``dims`` holds ``(degree, rank)`` pairs through ``degree + 1``.
    """

    dims: tuple[tuple[int, int], ...]
    degree: int
    expr: Expr = field(compare=False)

    def __post_init__(self) -> None:
        for n, c in self.dims:
            if n < 2:
                raise ModelError(f"not simply connected: reduced homology in degree {n}")
            if c < 0:
                raise ModelError(f"negative rank {c} in degree {n}")

    @property
    def name(self) -> str:
        return self.expr.render()

    @property
    def length(self) -> int:
        return self.expr.length

    @cached_property
    def red_ext(self) -> TruncSeries:
        """Reduced series through ``degree + 1`` (guard coefficient included)."""
        return TruncSeries.from_dict(dict(self.dims), self.degree + 1)

    @property
    def red(self) -> TruncSeries:
        """Reduced Poincaré series through the truncation degree."""
        return self.red_ext.truncate(self.degree)

    @property
    def poincare(self) -> TruncSeries:
        return 1 + self.red

    @property
    def gen(self) -> TruncSeries:
        """Loop-generator series ``red/t``, exact through the truncation degree."""
        return shift(self.red_ext, -1).truncate(self.degree)

    def is_contractible(self) -> bool:
        return not self.dims

    def __repr__(self) -> str:
        return f"SpaceModel({self.name}: {dict(self.dims)}, D={self.degree})"


def _model(dims: Mapping[int, int], degree: int, expr: Expr) -> SpaceModel:
    return SpaceModel(_prune(dims, degree), degree, expr)


def _check_degree(*models: SpaceModel) -> int:
    degrees = {m.degree for m in models}
    if len(degrees) != 1:
        raise SeriesError(f"truncation mismatch among models: {sorted(degrees)}")
    return degrees.pop()


# constructors --------------------------------------------------------------


def from_spheres(
    degrees: Iterable[int], degree: int = DEFAULT_DEGREE, name: str | None = None
) -> SpaceModel:
    """Wedge of spheres; ``[2, 2, 4]`` is ``S²∨S²∨S⁴``."""
    degs = [int(d) for d in degrees]
    bad = [d for d in degs if d < 2]
    if bad:
        raise ModelError(f"not simply connected: sphere of dimension {bad[0]}")
    dims: dict[int, int] = {}
    for d in degs:
        dims[d] = dims.get(d, 0) + 1
    expr = Expr("spheres", data=tuple(sorted(degs)))
    if name:
        expr = Expr("named", (expr,), (name,))
    return _model(dims, degree, expr)


def from_dims(
    reduced_dims: Mapping[int, int], degree: int = DEFAULT_DEGREE, name: str = "X"
) -> SpaceModel:
    """Model from an explicit ``{degree: rank}`` table."""
    dims = {int(n): int(c) for n, c in reduced_dims.items()}
    for n, c in dims.items():
        if c < 0:
            raise ModelError(f"negative rank {c} in degree {n}")
        if c and n < 2:
            raise ModelError(f"not simply connected: reduced homology in degree {n}")
    return _model(dims, degree, Expr("named", data=(name,)))


def rename(X: SpaceModel, name: str) -> SpaceModel:
    """Same model under a new leaf name; the underlying construction is kept."""
    return SpaceModel(X.dims, X.degree, Expr("named", (X.expr,), (name,)))


# functors ------------------------------------------------------------------


def suspend(X: SpaceModel) -> SpaceModel:
    return _model({n + 1: c for n, c in X.dims}, X.degree, Expr("suspend", (X.expr,)))


def wedge(X: SpaceModel, Y: SpaceModel) -> SpaceModel:
    D = _check_degree(X, Y)
    dims = dict(X.dims)
    for n, c in Y.dims:
        dims[n] = dims.get(n, 0) + c
    return _model(dims, D, Expr("wedge", (X.expr, Y.expr)))


def _convolve(X: SpaceModel, Y: SpaceModel, offset: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for n, c in X.dims:
        for m, d in Y.dims:
            k = n + m + offset
            out[k] = out.get(k, 0) + c * d
    return out


def smash(X: SpaceModel, Y: SpaceModel) -> SpaceModel:
    D = _check_degree(X, Y)
    return _model(_convolve(X, Y, 0), D, Expr("smash", (X.expr, Y.expr)))


def product(X: SpaceModel, Y: SpaceModel) -> SpaceModel:
    """Künneth: ``(1+red_X)(1+red_Y) - 1``."""
    D = _check_degree(X, Y)
    dims = _convolve(X, Y, 0)
    for n, c in X.dims + Y.dims:
        dims[n] = dims.get(n, 0) + c
    return _model(dims, D, Expr("product", (X.expr, Y.expr)))


def circle(X: SpaceModel, Y: SpaceModel) -> SpaceModel:
    """Theriault product: reduced homology is the desuspension of ``H̃(X)⊗H̃(Y)``."""
    D = _check_degree(X, Y)
    return _model(_convolve(X, Y, -1), D, Expr("circle", (X.expr, Y.expr)))


def loops(X: SpaceModel) -> TruncSeries:
    """Poincaré series of ``ΩX``: the tensor algebra on the desuspended cells."""
    return geom_inverse(X.gen)


def half_smash(X: SpaceModel, loops_of: SpaceModel) -> TruncSeries:
    """Reduced series of ``X ⋊ Ω(loops_of)``."""
    _check_degree(X, loops_of)
    return X.red * loops(loops_of)


def join_loops(X: SpaceModel, Y: SpaceModel) -> TruncSeries:
    """Reduced series of ``ΩX * ΩY``."""
    _check_degree(X, Y)
    return shift((loops(X) - 1) * (loops(Y) - 1), 1)


def connectivity(X: SpaceModel) -> int:
    """Homology connectivity: bottom nonzero degree minus one."""
    v = X.red.valuation()
    if v is None:
        raise ModelError(f"{X.name} is contractible through degree {X.degree}")
    return v - 1


# iterated products -----------------------------------------------------------


class ProductExpr:
    """An iterated circle product over named leaf spaces, with fixed association.

    The realised :class:`SpaceModel` is computed on construction.
    """

    __slots__ = ("leaf", "left", "right", "model", "length", "label")

    def __init__(
        self,
        leaf: SpaceModel | None = None,
        left: ProductExpr | None = None,
        right: ProductExpr | None = None,
    ) -> None:
        if (leaf is None) == (left is None or right is None):
            raise ValueError("a ProductExpr is either a leaf or a pair")
        self.leaf = leaf
        self.left = left
        self.right = right
        if leaf is not None:
            self.model = leaf
            self.length = 1
            self.label = leaf.name
        else:
            self.model = circle(left.model, right.model)
            self.length = left.length + right.length
            self.label = f"({left.label}∘{right.label})"
            # leaves are at least 1-connected, so a length-k product is at least k-connected
            if self.model.dims and self.model.dims[0][0] - 1 < self.length:
                raise ModelError(f"{self.label} is less connected than its length")

    @classmethod
    def of(cls, X: SpaceModel) -> ProductExpr:
        return cls(leaf=X)

    def circ(self, other: ProductExpr) -> ProductExpr:
        return ProductExpr(left=self, right=other)

    @property
    def red(self) -> TruncSeries:
        return self.model.red

    @property
    def gen(self) -> TruncSeries:
        return self.model.gen

    def bottom_degree(self) -> int | None:
        """Lowest degree with nonzero homology, looking one past the truncation."""
        return self.model.dims[0][0] if self.model.dims else None

    def leaves(self) -> Iterator[SpaceModel]:
        if self.leaf is not None:
            yield self.leaf
        else:
            yield from self.left.leaves()
            yield from self.right.leaves()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProductExpr) and self.label == other.label

    def __hash__(self) -> int:
        return hash(self.label)

    def __repr__(self) -> str:
        return f"ProductExpr({self.label}, length={self.length})"


def ad_power(H: SpaceModel | ProductExpr, G: SpaceModel | ProductExpr, n: int) -> ProductExpr:
    """``ad^n(H)(G) = (...((G∘H)∘H)...)∘H`` with ``n`` copies of ``H``, nested left."""
    if n < 0:
        raise ValueError(f"ad power must be nonnegative, got {n}")
    h = H if isinstance(H, ProductExpr) else ProductExpr.of(H)
    out = G if isinstance(G, ProductExpr) else ProductExpr.of(G)
    for _ in range(n):
        out = out.circ(h)
    return out


def ad_family(H: SpaceModel | ProductExpr, G: SpaceModel | ProductExpr, start: int = 0) -> Iterator[ProductExpr]:
    """``ad^n(H)(G)`` for ``n >= start`` until the summand vanishes past the guard degree.

    Once a summand's bottom cell lies beyond ``D + 1`` it and all later
    ones contribute nothing through degree ``D``.
    """
    h = H if isinstance(H, ProductExpr) else ProductExpr.of(H)
    cur = ad_power(h, G, start)
    while cur.model.dims:
        yield cur
        if h.model.is_contractible():
            return
        cur = cur.circ(h)


# verification reports ----------------------------------------------------------


@dataclass
class SeriesReport:
    """Two series compared through the truncation degree."""

    identity: str
    left: TruncSeries
    right: TruncSeries
    terms: list[tuple[str, int]] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.left == self.right

    @property
    def verdict(self) -> str:
        return "equal" if self.equal else "unequal"

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "degree": self.left.trunc_degree,
            "left": list(self.left.coeffs),
            "right": list(self.right.coeffs),
            "verdict": self.verdict,
            "terms": [{"label": lab, "multiplicity": m} for lab, m in self.terms],
        }


def _wedge_sum(exprs: Iterable[ProductExpr], degree: int) -> tuple[TruncSeries, list[tuple[str, int]]]:
    total = TruncSeries.zero(degree)
    counts: dict[str, int] = {}
    for p in exprs:
        total = total + p.red
        counts[p.label] = counts.get(p.label, 0) + 1
    return total, list(counts.items())


def verify_theorem3a(G: SpaceModel, H: SpaceModel) -> SeriesReport:
    """``G ⋊ ΩH`` against the wedge of ``ad^n(H)(G)``, ``n >= 0``."""
    D = _check_degree(G, H)
    right, terms = _wedge_sum(ad_family(H, G), D)
    return SeriesReport("theorem3a", half_smash(G, H), right, terms)


def verify_cor35a(G: SpaceModel) -> SeriesReport:
    """``SΩG`` against the wedge of ``ad^n(G)(G)``."""
    left = shift(loops(G) - 1, 1)
    right, terms = _wedge_sum(ad_family(G, G), G.degree)
    return SeriesReport("cor35a", left, right, terms)


def cor35b_terms(G: SpaceModel, H: SpaceModel) -> Iterator[ProductExpr]:
    """``ad^j(H)(ad^i(G)(G))`` for ``i >= 0``, ``j >= 1``, cut at the guard degree."""
    for inner in ad_family(G, G):
        yield from ad_family(H, inner, start=1)


def verify_cor35b(G: SpaceModel, H: SpaceModel) -> SeriesReport:
    """``ΩG * ΩH`` against the doubly indexed ad-wedge."""
    D = _check_degree(G, H)
    right, terms = _wedge_sum(cor35b_terms(G, H), D)
    return SeriesReport("cor35b", join_loops(G, H), right, terms)


def verify_theorem2(G: SpaceModel, H: SpaceModel) -> SeriesReport:
    """Cell count of ``G×H`` against ``G∨H`` with a cone on ``G∘H`` attached."""
    _check_degree(G, H)
    left = product(G, H).poincare
    gh = ProductExpr.of(G).circ(ProductExpr.of(H))
    right = wedge(G, H).poincare + shift(gh.red, 1)
    return SeriesReport("theorem2", left, right, [(gh.label, 1)] if gh.model.dims else [])


def verify_SQ(G: SpaceModel, H: SpaceModel) -> SeriesReport:
    """Complement of ``G∘H`` in ``ΩG * ΩH`` against its closed form."""
    _check_degree(G, H)
    left = join_loops(G, H) - circle(G, H).red
    g, h = G.gen, H.gen
    right = shift(g * h * (g + h - g * h) * geom_inverse(g) * geom_inverse(h), 1)
    return SeriesReport("SQ", left, right)


def verify_all(G: SpaceModel, H: SpaceModel) -> list[SeriesReport]:
    return [
        verify_theorem3a(G, H),
        verify_cor35a(G),
        verify_cor35b(G, H),
        verify_theorem2(G, H),
        verify_SQ(G, H),
    ]
