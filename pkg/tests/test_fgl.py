import pytest
from hypothesis import given
from hypothesis import strategies as st

from lazard.coeff import A, M, CoeffPoly
from lazard.errors import BoundTooSmall
from lazard.fgl import (
    BETA,
    FGLModel,
    build_model,
    check_axioms,
    formal_sum,
    inverse_series,
    log_images,
    n_series,
    push_to_log,
    specialize,
)
from lazard.series import Series, substitute, var

KINDS = ["free", "log", "add", "mult"]
MODELS = {k: build_model(k, 6) for k in KINDS}
a11, a12 = CoeffPoly.of(A(1, 1)), CoeffPoly.of(A(1, 2))
beta = CoeffPoly.of(BETA)


def test_build_model_examples():
    assert MODELS["add"].F.to_text() == "x + y"
    assert build_model("log", 2).F.coefficient(x=1, y=1) == CoeffPoly({((M(1), 1),): -2})
    free3 = build_model("free", 3).F
    assert free3.to_text() == "x + y + a[1,1]*x*y + a[1,2]*x^2*y + a[1,2]*x*y^2"
    with pytest.raises(BoundTooSmall):
        build_model("free", 0)


def test_log_model_low_degree_by_hand():
    # log x + log y = x + y + m1 (x^2 + y^2) + ..., exp(t) = t - m1 t^2 + ...
    F = build_model("log", 2).F
    m1 = CoeffPoly.of(M(1))
    assert F == Series(F.vars, {(1, 0): 1, (0, 1): 1, (1, 1): -2 * m1}, 2)


def test_formal_sum_examples():
    F3 = build_model("free", 3)
    x = var("x", 1, 3)
    assert formal_sum(F3, x, x).to_text() == "2*x + a[1,1]*x^2 + 2*a[1,2]*x^3"
    f, g = var("f", 1, 6), var("g", 1, 6)
    assert formal_sum(MODELS["add"], f, g) == f + g
    for F in MODELS.values():
        assert formal_sum(F, f * f + f, Series.zero(6)) == f * f + f


def test_n_series_examples():
    F3 = build_model("free", 3)
    assert n_series(F3, 2).to_text() == "2*x + a[1,1]*x^2 + 2*a[1,2]*x^3"
    assert n_series(F3, 3).to_text() == "3*x + 3*a[1,1]*x^2 + (a[1,1]^2 + 8*a[1,2])*x^3"
    assert n_series(MODELS["add"], 5) == var("x", 1, 6).scale(5)
    x = var("x", 1, 6)
    assert n_series(MODELS["mult"], 2) == x.scale(2) + (x * x).scale(beta)
    assert n_series(MODELS["free"], 0).is_zero()
    assert n_series(MODELS["free"], 1) == x


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [-5, -3, -1, 1, 2, 4, 5])
def test_n_series_leading_coefficient(kind, n):
    s = n_series(MODELS[kind], n)
    assert s.lowest_degree() == 1 and s.coefficient(x=1) == n


def test_inverse_series_examples():
    x = var("x", 1, 3)
    assert inverse_series(build_model("add", 3)) == -x
    assert inverse_series(build_model("free", 3)).to_text() == "-x + a[1,1]*x^2 - a[1,1]^2*x^3"
    assert inverse_series(build_model("mult", 3)) == -x + (x * x).scale(beta) - (x ** 3).scale(beta * beta)


@pytest.mark.parametrize("kind", KINDS)
def test_inverse_series_contract(kind):
    F = MODELS[kind]
    x = var("x", 1, 6)
    i = inverse_series(F)
    assert formal_sum(F, x, i).is_zero()
    assert substitute(i, {"x": i}) == x


@pytest.mark.parametrize("kind", ["log", "add", "mult"])
def test_n_series_additivity(kind):
    F = MODELS[kind]
    for m in range(-5, 6):
        for n in range(-5, 6):
            assert n_series(F, m + n) == formal_sum(F, n_series(F, m), n_series(F, n)), (m, n)


def test_n_series_additivity_free_model_low_degree():
    # without associativity the free model only satisfies this through degree 3
    F = MODELS["free"]
    for m in range(-5, 6):
        for n in range(-5, 6):
            lhs = n_series(F, m + n).truncated(3)
            rhs = formal_sum(F, n_series(F, m), n_series(F, n)).truncated(3)
            assert lhs == rhs, (m, n)


def test_axioms():
    for kind in KINDS:
        rep = check_axioms(MODELS[kind])
        assert rep.ok("unitality_left") and rep.ok("unitality_right") and rep.ok("commutativity")
        if kind != "free":
            assert rep.ok(), kind
    rep3 = check_axioms(build_model("free", 3))
    assert rep3.ok()
    free = check_axioms(MODELS["free"])
    assert free.failures["associativity"] == 4
    assert {"axiom": "associativity", "residual_degree": 4} in free.to_json()


def test_free_associativity_xyz_coefficient():
    F = build_model("free", 3)
    x, y, z = var("x", 1, 3), var("y", 1, 3), var("z", 1, 3)
    left = formal_sum(F, formal_sum(F, x, y), z)
    right = formal_sum(F, x, formal_sum(F, y, z))
    assert left.coefficient(x=1, y=1, z=1) == a11 * a11 + 2 * a12
    assert right.coefficient(x=1, y=1, z=1) == a11 * a11 + 2 * a12


def test_specialize():
    free = MODELS["free"]
    zero = {g: 0 for c in free.F.terms.values() for g in c.generators()}
    assert specialize(free, zero).F == MODELS["add"].F
    assert specialize(free, log_images(6)).F == MODELS["log"].F
    assert specialize(MODELS["add"], {}).F == MODELS["add"].F


@pytest.mark.parametrize("n", range(-5, 6))
def test_free_log_coherence_n_series(n):
    F4, L4 = build_model("free", 4), build_model("log", 4)
    assert push_to_log(n_series(F4, n), 4) == n_series(L4, n)


@given(st.sampled_from(KINDS), st.integers(1, 6))
def test_truncation_coherence_of_models(kind, D):
    assert build_model(kind, D).F == MODELS[kind].F.truncated(D)
    assert n_series(build_model(kind, D), 3) == n_series(MODELS[kind], 3).truncated(D)


def test_model_json_round_trip():
    for F in MODELS.values():
        assert FGLModel.from_json(F.to_json()) == F
