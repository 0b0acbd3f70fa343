import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whitehead.decomposer import init_peel, peel_step, peel_to, whitehead_basis_below
from whitehead.series import geom_inverse
from whitehead.spaces import from_spheres

D = 16


def S(*degs, name):
    return from_spheres(list(degs), D, name)


def lyndon_count(n, letters=2):
    """Brute force: words strictly smaller than each of their proper rotations."""
    count = 0
    for w in itertools.product(range(letters), repeat=n):
        if all(w < w[i:] + w[:i] for i in range(1, n)):
            count += 1
    return count


def test_init_peel_s2_s2():
    st0 = init_peel(S(2, name="G"), S(2, name="H"))
    assert [p.label for p, _ in st0.peeled] == ["G", "H"]
    by_length = {}
    for p, m in st0.residual:
        by_length[p.length] = by_length.get(p.length, 0) + m
        assert p.bottom_degree() == p.length + 1
    # i + j = l - 1 with j >= 1 gives l - 1 products of length l
    assert all(by_length[ell] == ell - 1 for ell in by_length)
    assert st0.conservation()


def test_init_peel_conservation_formula():
    G, H = S(2, 3, name="G"), S(4, name="H")
    st0 = init_peel(G, H)
    g, h = G.gen, H.gen
    q = st0.residual_series
    assert geom_inverse(g + h) == geom_inverse(g) * geom_inverse(h) * geom_inverse(q)
    assert q == g * h * geom_inverse(g) * geom_inverse(h)


def test_init_peel_contractible():
    st0 = init_peel(S(2, name="G"), S(name="H"))
    assert [p.label for p, _ in st0.peeled] == ["G"]
    assert st0.residual == []
    assert peel_step(st0) is st0


def test_first_step_s2_s2():
    st1 = peel_step(init_peel(S(2, name="G"), S(2, name="H")))
    assert st1.k == 2
    assert [p.label for p, _ in st1.peeled] == ["G", "H", "(G∘H)"]
    assert st1.conservation()
    assert min(p.length for p, _ in st1.residual) == 3


@pytest.mark.parametrize("cells", [(2, 2), (2, 3), (3, 4)])
def test_peeled_counts_are_lyndon_numbers(cells):
    # every length-5 piece has bottom cell <= 5*4 - 4 = 16, inside the truncation
    states = peel_to(S(cells[0], name="G"), S(cells[1], name="H"), 5)
    final = states[-1]
    assert final.k == 5
    counts = {}
    for p, m in final.peeled:
        counts[p.length] = counts.get(p.length, 0) + m
    assert counts == {n: lyndon_count(n) for n in range(1, 6)}


def test_successive_steps_conserve():
    for s in peel_to(S(2, name="G"), S(3, name="H"), 4):
        assert s.conservation()
        assert s.connectivity_ok()


def test_extraction_order_independence():
    G, H = S(2, 3, name="G"), S(2, name="H")
    fwd = peel_to(G, H, 4)[-1]
    rev = peel_to(G, H, 4, key=lambda p: (-p.bottom_degree(), p.label[::-1]))[-1]

    # the same multiset of pieces, up to the association of each product
    fwd_series = sorted((p.length, p.red.coeffs) for p, m in fwd.peeled for _ in range(m))
    rev_series = sorted((p.length, p.red.coeffs) for p, m in rev.peeled for _ in range(m))
    assert fwd_series == rev_series
    assert rev.conservation()


def test_whitehead_basis_below():
    G, H = S(2, name="G"), S(2, name="H")
    assert [p.label for p in whitehead_basis_below(G, H, 3)] == ["G", "H", "(G∘H)"]
    assert [p.label for p in whitehead_basis_below(G, H, 2)] == ["G", "H"]
    assert [p.label for p in whitehead_basis_below(G, S(name="H"), 4)] == ["G"]
    sizes = [len(whitehead_basis_below(G, H, b)) for b in range(1, 8)]
    assert sizes == sorted(sizes)


def test_trace_dict():
    st0 = init_peel(S(2, name="G"), S(2, name="H"))
    d = st0.to_dict()
    assert d["conservation"] == "pass"
    assert d["peeled"][0] == {"label": "G", "length": 1, "bottom_degree": 2, "multiplicity": 1}


small_wedges = st.lists(st.integers(2, 5), min_size=1, max_size=3)


@settings(max_examples=10, deadline=None)
@given(small_wedges, small_wedges)
def test_conservation_random(a, b):
    G = from_spheres(a, 12, "G")
    H = from_spheres(b, 12, "H")
    for s in peel_to(G, H, 4):
        assert s.conservation()
        assert s.connectivity_ok()
