from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import int_series
from lazard.coeff import A, M, CoeffPoly, apply_hom
from lazard.errors import NonNilpotentSubstitution, NotInvertible
from lazard.fgl import build_model, inverse_series, log_series, n_series
from lazard.series import Series, SeriesVar, compositional_inverse, express_in, substitute, var



def uni(coeffs, name="t", bound=None):
    """Univariate series from a list ``[c1, c2, ...]`` of coefficients of t, t^2, ..."""
    bound = len(coeffs) if bound is None else bound
    return Series((SeriesVar(name, 1),), {(k + 1,): c for k, c in enumerate(coeffs)}, bound)


# --- independent oracle: Lagrange inversion over the rationals -----------------

def _mul(p, q, n):
    out = [Fraction(0)] * n
    for i, a in enumerate(p[:n]):
        if a:
            for j, b in enumerate(q[: n - i]):
                out[i + j] += a * b
    return out


def lagrange_inverse(c, D):
    """``c[k]`` is the coefficient of t^(k+1) (c[0] = 1); returns coefficients of the inverse."""
    # t / f(t) as a power series: 1 / (1 + c1 t + c2 t^2 + ...)
    h = [Fraction(x) for x in c] + [Fraction(0)] * D
    inv = [Fraction(0)] * D
    inv[0] = Fraction(1) / h[0]
    for n in range(1, D):
        inv[n] = -sum(h[k] * inv[n - k] for k in range(1, n + 1)) / h[0]
    out = []
    for n in range(1, D + 1):
        power = [Fraction(1)] + [Fraction(0)] * (D - 1)
        for _ in range(n):
            power = _mul(power, inv, D)
        out.append(power[n - 1] / n)
    return out


# ---------------------------------------------------------------------------


def test_substitute_examples():
    x, y = var("x", 1, 4), var("y", 1, 4)
    a11 = CoeffPoly.of(A(1, 1))
    f = x + (x * x).scale(a11)
    assert substitute(f, {"x": x * x}) == x * x + (x ** 4).scale(a11)
    m, n = var("m"), var("n")
    assert substitute(x + y, {"x": m, "y": n}) == m + n
    F = build_model("free", 3)
    three = substitute(F.F, {"x": var("x", 1, 3), "y": n_series(F, 2)})
    assert three.to_text() == "3*x + 3*a[1,1]*x^2 + (a[1,1]^2 + 8*a[1,2])*x^3"


def test_substitute_identity_and_passthrough():
    x, y = var("x", 1, 5), var("y", 1, 5)
    f = x * y + x ** 3
    assert substitute(f, {"x": x}) == f
    assert substitute(f, {"x": x * x}) == x * x * y + x ** 6


def test_non_nilpotent_substitution():
    x = var("x", 1, 4)
    with pytest.raises(NonNilpotentSubstitution):
        substitute(x * x, {"x": x + 1})
    assert substitute(x * x, {"x": x + 1}, certified=True) == x * x + x.scale(2) + 1


def test_compositional_inverse_examples():
    assert compositional_inverse(var("t", 1, 5)) == var("t", 1, 5)
    g = compositional_inverse(log_series(3))
    assert g.to_text() == "t - m[1]*t^2 + (2*m[1]^2 - m[2])*t^3"
    assert compositional_inverse(uni([1, 1, 0, 0])).to_text() == "t - t^2 + 2*t^3 - 5*t^4"


def test_compositional_inverse_errors():
    with pytest.raises(NotInvertible):
        compositional_inverse(uni([2, 1]))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.sampled_from([1, -1]))
def test_compositional_inverse_matches_lagrange(tail, lead):
    c = [lead] + tail
    D = len(c)
    got = compositional_inverse(uni(c))
    expected = lagrange_inverse(c, D)
    assert all(x.denominator == 1 for x in expected)
    assert got == uni([int(x) for x in expected], bound=D)


@settings(max_examples=25)
@given(st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_log_inverse_specialises_like_lagrange(ms):
    # symbolic inverse, then evaluate m_k at integers, against the rational oracle
    D = 6
    g = compositional_inverse(log_series(D))
    ev = {M(k + 1): ms[k] for k in range(5)}
    got = g.map_coeffs(lambda c: apply_hom(c, ev, check_degrees=False))
    expected = lagrange_inverse([1] + ms, D)
    assert got == uni([int(x) for x in expected], bound=D)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_compositional_inverse_is_involution(tail):
    f = uni([1] + tail)
    g = compositional_inverse(f)
    assert compositional_inverse(g) == f
    assert substitute(f, {"t": g}) == var("t", 1, f.bound)
    assert substitute(g, {"t": f}) == var("t", 1, f.bound)


@settings(max_examples=40)
@given(int_series(("x",), 5), int_series(("x",), 5), int_series(("x",), 5))
def test_substitute_associative(f, g, h):
    lhs = substitute(substitute(f, {"x": g}), {"x": h})
    rhs = substitute(f, {"x": substitute(g, {"x": h})})
    assert lhs == rhs


@settings(max_examples=40)
@given(int_series(("x", "y"), 5), int_series(("x",), 5), st.integers(1, 4))
def test_truncation_coherence(f, g, D2):
    full = substitute(f, {"y": g}) * f
    small = substitute(f.truncated(D2), {"y": g.truncated(D2)}) * f.truncated(D2)
    assert full.truncated(D2) == small


def test_express_in_examples():
    F = build_model("free", 3)
    x = var("x", 1, 3)
    i = inverse_series(F)
    s, p = x + i, x * i
    assert s.to_text() == "a[1,1]*x^2 - a[1,1]^2*x^3"
    assert p.to_text() == "-x^2 + a[1,1]*x^3"
    P, res = express_in(s, [("u", p)])
    assert P.to_text() == "-a[1,1]*u" and res.is_zero()
    zero, res0 = express_in(Series.zero(3), [("u", p)])
    assert zero.is_zero() and res0.is_zero()


def test_express_in_additive_sp2_residual():
    D = 4
    r, s, t = (var(n, 1, D) for n in "rst")
    u = -(r + s + t)
    roots = [r, s, t, u]
    d2 = sum((roots[i] * roots[j] for i in range(4) for j in range(i + 1, 4)), Series.zero(D))
    d3 = sum((roots[i] * roots[j] * roots[k] for i in range(4) for j in range(i + 1, 4)
              for k in range(j + 1, 4)), Series.zero(D))
    d4 = r * s * t * u
    _, res = express_in(d3, [("v2", d2), ("v4", d4)])
    assert not res.is_zero()


def _roundtrip(g, targets):
    result, residual = express_in(g, targets)
    back = substitute(result, {name: t for name, t in targets})
    return back + residual


@settings(max_examples=40)
@given(int_series(("x", "y"), 5), st.integers(2, 5))
def test_express_in_round_trip(g, D):
    g = g.truncated(D)
    x, y = var("x", 1, D), var("y", 1, D)
    targets = [("e1", x + y), ("e2", x * y)]
    assert _roundtrip(g, targets) == g


@pytest.mark.parametrize("D", range(1, 9))
def test_express_in_round_trip_every_bound(D):
    F = build_model("free", D)
    x = var("x", 1, D)
    i = inverse_series(F)
    g = n_series(F, 3) + x * x * i
    assert _roundtrip(g, [("u", x * i)]) == g
    P, res = express_in(x + i, [("u", x * i)])
    assert res.is_zero()


@given(int_series(("x", "y"), 5))
def test_symmetric_input_has_zero_residual(f):
    # symmetrise, then express in elementary symmetric functions
    g = f + f.rename({"x": "y", "y": "x"})
    x, y = var("x", 1, 5), var("y", 1, 5)
    _, res = express_in(g, [("e1", x + y), ("e2", x * y)])
    assert res.is_zero()


@given(int_series(("x", "y"), 5), st.randoms())
def test_canonical_form(f, rnd):
    items = list(f.terms.items())
    rnd.shuffle(items)
    g = Series(f.vars, dict(items), f.bound)
    assert g.to_text() == f.to_text()
    assert Series.from_json(f.to_json()) == f
    assert f.with_vars(tuple(reversed(f.vars))) == f


def test_text_form():
    F = build_model("free", 3)
    assert n_series(F, 2).to_text() == "2*x + a[1,1]*x^2 + 2*a[1,2]*x^3"
    x, y = var("x", 1, 3), var("y", 1, 3)
    assert (x * y - y.scale(3) + 2).to_text() == "2 - 3*y + x*y"
