"""Peeling ``Ω(G∨H)`` into loops on iterated Theriault products.

At threshold ``k`` the loop space splits as loops on a wedge of products
of length ``> k`` times loops on a product of the pieces of length
``<= k``.  Each step extracts the length-``k+1`` pieces one at a time:
``Ω(P ∨ R) ≃ ΩP × Ω(R ⋊ ΩP)`` and ``R ⋊ ΩP`` is again a wedge of
iterated products ``ad^m(P)(Q)``.

At the level of Poincaré series every extraction must preserve

    1/(1-g-h) = ∏ 1/(1-p_α) · 1/(1-q)

with ``p_α`` the loop-generator series of the peeled pieces and ``q``
that of the residual wedge.  Pieces are materialised only while their
bottom cell is at most ``D + 1``; anything higher contributes nothing
to the generator series through ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

from .series import TruncSeries, geom_inverse
from .spaces import ProductExpr, SpaceModel, _check_degree, ad_family, cor35b_terms

Entry = tuple[ProductExpr, int]


def extraction_key(p: ProductExpr) -> tuple:
    """Default order: bottom degree, then label."""
    return (p.bottom_degree(), p.label)


@dataclass
class PeelState:
    k: int
    peeled: list[Entry]
    residual: list[Entry]
    degree: int
    gen_total: TruncSeries = field(repr=False)

    @property
    def residual_series(self) -> TruncSeries:
        """Loop-generator series of the residual wedge."""
        q = TruncSeries.zero(self.degree)
        for p, m in self.residual:
            q = q + p.gen * m
        return q

    def peeled_factor(self) -> TruncSeries:
        out = TruncSeries.one(self.degree)
        for p, m in self.peeled:
            out = out * geom_inverse(p.gen) ** m
        return out

    def conservation(self) -> bool:
        """Whether ``1/(1-g-h)`` factors through the current pieces exactly."""
        return geom_inverse(self.gen_total) == self.peeled_factor() * geom_inverse(self.residual_series)

    def connectivity_ok(self) -> bool:
        for p, _ in self.peeled + self.residual:
            bottom = p.bottom_degree()
            if bottom is not None and bottom - 1 < p.length:
                return False
        return True

    def to_dict(self) -> dict:
        def rows(entries):
            return [
                {"label": p.label, "length": p.length, "bottom_degree": p.bottom_degree(), "multiplicity": m}
                for p, m in entries
            ]

        return {
            "k": self.k,
            "peeled": rows(self.peeled),
            "residual_count": sum(m for _, m in self.residual),
            "residual_generator_series": list(self.residual_series.coeffs),
            "conservation": "pass" if self.conservation() else "fail",
        }


def _merge(entries: dict[str, list], p: ProductExpr, m: int) -> None:
    slot = entries.get(p.label)
    if slot is None:
        entries[p.label] = [p, m]
    else:
        slot[1] += m


def init_peel(G: SpaceModel, H: SpaceModel) -> PeelState:
    """Threshold 1: ``Ω(G∨H) ≃ Ω(ΩG*ΩH) × ΩG × ΩH``."""
    D = _check_degree(G, H)
    peeled = [(ProductExpr.of(X), 1) for X in (G, H) if not X.is_contractible()]
    residual: dict[str, list] = {}
    for p in cor35b_terms(G, H):
        _merge(residual, p, 1)
    return PeelState(1, peeled, [(p, m) for p, m in residual.values()], D, G.gen + H.gen)


def peel_step(
    state: PeelState, key: Callable[[ProductExpr], tuple] = extraction_key
) -> PeelState:
    """Raise the threshold by one, extracting every residual piece of length ``k+1``."""
    if not state.residual:
        return state
    target = state.k + 1
    residual: dict[str, list] = {}
    for p, m in state.residual:
        _merge(residual, p, m)
    peeled: dict[str, list] = {}
    for p, m in state.peeled:
        _merge(peeled, p, m)

    while True:
        due = [slot[0] for slot in residual.values() if slot[0].length == target]
        if not due:
            break
        P = min(due, key=key)
        slot = residual[P.label]
        slot[1] -= 1
        if slot[1] == 0:
            del residual[P.label]
        _merge(peeled, P, 1)
        # R ⋊ ΩP ≃ ⋁_Q ⋁_{m>=0} ad^m(P)(Q)
        expanded: dict[str, list] = {}
        for Q, mult in residual.values():
            for term in ad_family(P, Q):
                _merge(expanded, term, mult)
        residual = expanded

    return replace(
        state,
        k=target,
        peeled=[(p, m) for p, m in peeled.values()],
        residual=[(p, m) for p, m in residual.values()],
    )


def peel_to(G: SpaceModel, H: SpaceModel, k: int, key=extraction_key) -> list[PeelState]:
    """Trace of states from threshold 1 up to ``k`` (or until the residual is empty)."""
    states = [init_peel(G, H)]
    while states[-1].k < k and states[-1].residual:
        states.append(peel_step(states[-1], key))
    return states


def whitehead_basis_below(G: SpaceModel, H: SpaceModel, dim_bound: int) -> list[ProductExpr]:
    """Peeled products whose connectivity is below ``dim_bound``.

    These are the iterated Whitehead product targets needed for maps
    from a ``dim_bound``-dimensional complex into ``G∨H``.  Products of
    length ``>= dim_bound`` are at least that connected, so peeling to
    threshold ``dim_bound`` sees all of them.
    """
    D = _check_degree(G, H)
    if dim_bound > D:
        raise ValueError(f"dim_bound {dim_bound} exceeds truncation degree {D}")
    state = peel_to(G, H, dim_bound)[-1]
    out = []
    for p, m in sorted(state.peeled, key=lambda e: (e[0].bottom_degree(), e[0].label)):
        if p.bottom_degree() - 1 < dim_bound:
            out.extend([p] * m)
    return out
