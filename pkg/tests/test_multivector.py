"""Schouten calculus: bracket identities, Poisson recognition, Hamiltonian fields."""

import pytest

from leafstab.chart import ChartSpec
from leafstab.multivector import (
    Form,
    Multivector,
    differential,
    form,
    hamiltonian_vf,
    is_poisson,
    jacobiator,
    multivector,
    pi_sharp,
    poisson_bracket,
    poisson_differential,
    schouten,
)
from leafstab.poly import RationalFunction

from conftest import make_rng, random_multivector, random_rf


@pytest.fixture(scope="module")
def ch3():
    return ChartSpec(("x1", "x2", "x3"))


@pytest.fixture(scope="module")
def su2(ch3):
    x1, x2, x3 = (RationalFunction.var(ch3, n) for n in ("x1", "x2", "x3"))
    # x3 b1^b2 + x2 b3^b1 + x1 b2^b3
    return multivector(ch3, 2, {("x1", "x2"): x3, ("x1", "x3"): -x2, ("x2", "x3"): x1})


def sgn(e):
    return -1 if e % 2 else 1


def test_coordinate_lie_bracket(ch3):
    X = multivector(ch3, 1, {("x1",): 1})
    Y = multivector(ch3, 1, {("x2",): RationalFunction.var(ch3, "x1")})
    assert schouten(X, Y) == multivector(ch3, 1, {("x2",): 1})


def test_square_vanishes_on_two_variables():
    ch = ChartSpec(("x1", "x2"))
    pi = multivector(ch, 2, {("x1", "x2"): RationalFunction.var(ch, "x1")})
    assert schouten(pi, pi).is_zero()


def test_square_against_jacobiator_oracle(ch3):
    """[pi, pi] = -2 J(x1,x2,x3) b1^b2^b3 under the package conventions."""
    x2, x3 = RationalFunction.var(ch3, "x2"), RationalFunction.var(ch3, "x3")
    pi = multivector(ch3, 2, {("x1", "x2"): x3, ("x2", "x3"): x2})
    xs = [RationalFunction.var(ch3, n) for n in ("x1", "x2", "x3")]
    jac = jacobiator(pi, *xs)
    assert jac == -x3
    expected = multivector(ch3, 3, {("x1", "x2", "x3"): jac.scale(-2)})
    assert schouten(pi, pi) == expected


def test_is_poisson_epsilon_family_symbolic():
    ch = ChartSpec(("x1", "x2"), (), ("eps",))
    x1, x2, eps = (RationalFunction.var(ch, n) for n in ("x1", "x2", "eps"))
    pi = multivector(ch, 2, {("x1", "x2"): x1 * x1 + x2 * x2 + eps})
    assert is_poisson(pi)


def test_is_poisson_su2(su2):
    assert is_poisson(su2)


def test_is_poisson_counterexample(ch3):
    x2, x3 = RationalFunction.var(ch3, "x2"), RationalFunction.var(ch3, "x3")
    pi = multivector(ch3, 2, {("x1", "x2"): x3, ("x2", "x3"): x2})
    assert not is_poisson(pi)


def test_is_poisson_rejects_wrong_degree(ch3):
    with pytest.raises(ValueError):
        is_poisson(multivector(ch3, 1, {("x1",): 1}))


def test_hamiltonian_field_plane():
    ch = ChartSpec(("x1", "x2"))
    pi = multivector(ch, 2, {("x1", "x2"): 1})
    f = RationalFunction.var(ch, "x1")
    assert hamiltonian_vf(pi, f) == multivector(ch, 1, {("x2",): 1})
    assert hamiltonian_vf(pi, RationalFunction.const(ch, 9)).is_zero()


def test_hamiltonian_field_su2(su2, ch3):
    x2, x3 = RationalFunction.var(ch3, "x2"), RationalFunction.var(ch3, "x3")
    got = hamiltonian_vf(su2, RationalFunction.var(ch3, "x1"))
    assert got == multivector(ch3, 1, {("x2",): x3, ("x3",): -x2})


def test_pi_sharp_examples(ch3):
    ch = ChartSpec(("x1", "x2"))
    pi = multivector(ch, 2, {("x1", "x2"): 1})
    alpha = form(ch, 1, {("x1",): 1})
    assert pi_sharp(pi, alpha) == multivector(ch, 1, {("x2",): 1})
    assert pi_sharp(pi, Form(ch, 1)).is_zero()
    with pytest.raises(ValueError):
        pi_sharp(pi, form(ch, 2, {("x1", "x2"): 1}))


def test_pi_sharp_of_df_is_hamiltonian(su2, ch3):
    rng = make_rng(5)
    for _ in range(10):
        f = random_rf(rng, ch3)
        assert pi_sharp(su2, differential(ch3, f)) == hamiltonian_vf(su2, f)


def test_poisson_differential_definitional(ch3):
    ch = ChartSpec(("x1", "x2"))
    pi = multivector(ch, 2, {("x1", "x2"): 1})
    f = Multivector(ch, 0, {(): RationalFunction.var(ch, "x1")})
    d_f = poisson_differential(pi, f)
    ham = hamiltonian_vf(pi, RationalFunction.var(ch, "x1"))
    assert d_f == ham or d_f == -ham
    assert poisson_differential(pi, pi).is_zero()


def test_poisson_differential_rejects_non_poisson(ch3):
    x2, x3 = RationalFunction.var(ch3, "x2"), RationalFunction.var(ch3, "x3")
    bad = multivector(ch3, 2, {("x1", "x2"): x3, ("x2", "x3"): x2})
    with pytest.raises(ValueError):
        poisson_differential(bad, bad)


def test_poisson_differential_squares_to_zero(su2, ch3):
    rng = make_rng(6)
    for _ in range(6):
        y = random_multivector(rng, ch3, rng.randint(0, 2))
        assert poisson_differential(su2, poisson_differential(su2, y)).is_zero()
    # second corpus structure: the symplectic-area family on the plane
    plane = ChartSpec(("x1", "x2"), (), ("eps",))
    x1, x2, eps = (RationalFunction.var(plane, n) for n in ("x1", "x2", "eps"))
    pi = multivector(plane, 2, {("x1", "x2"): x1 * x1 + x2 * x2 + eps})
    for _ in range(4):
        y = random_multivector(rng, plane, rng.randint(0, 2))
        assert poisson_differential(pi, poisson_differential(pi, y)).is_zero()


def test_graded_antisymmetry_randomized():
    ch = ChartSpec(("x1", "x2"), ("y1", "y2"))
    rng = make_rng(7)
    for _ in range(40):
        p, q = rng.randint(0, 3), rng.randint(0, 3)
        x, y = random_multivector(rng, ch, p), random_multivector(rng, ch, q)
        lhs = schouten(x, y)
        rhs = schouten(y, x).scale(-sgn((p - 1) * (q - 1)))
        assert (lhs - rhs).is_zero()


def test_graded_leibniz_randomized():
    ch = ChartSpec(("x1", "x2"), ("y1", "y2"))
    rng = make_rng(8)
    for _ in range(30):
        p, q, r = rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)
        x = random_multivector(rng, ch, p)
        y = random_multivector(rng, ch, q)
        z = random_multivector(rng, ch, r)
        lhs = schouten(x, y.wedge(z))
        rhs = schouten(x, y).wedge(z) + y.wedge(schouten(x, z)).scale(sgn((p - 1) * q))
        assert (lhs - rhs).is_zero()


def test_graded_jacobi_randomized():
    ch = ChartSpec(("x1", "x2"), ("y1",))
    rng = make_rng(9)
    for _ in range(25):
        degs = [rng.randint(0, 2) for _ in range(3)]
        x, y, z = (random_multivector(rng, ch, d) for d in degs)
        a, b, c = (d - 1 for d in degs)
        total = (
            schouten(x, schouten(y, z)).scale(sgn(a * c))
            + schouten(y, schouten(z, x)).scale(sgn(b * a))
            + schouten(z, schouten(x, y)).scale(sgn(c * b))
        )
        assert total.is_zero()


def test_chart_mismatch_rejected(ch3):
    other = ChartSpec(("u", "v"))
    with pytest.raises(ValueError):
        schouten(multivector(ch3, 1, {("x1",): 1}), multivector(other, 1, {("u",): 1}))


def test_poisson_bracket_oracle_matches_bivector(su2, ch3):
    # {x1, x2} = x3 for the su(2)-type structure
    x1, x2 = RationalFunction.var(ch3, "x1"), RationalFunction.var(ch3, "x2")
    assert poisson_bracket(su2, x1, x2) == RationalFunction.var(ch3, "x3")


def test_exterior_derivative_squares_to_zero(ch3):
    rng = make_rng(19)
    for _ in range(5):
        f = random_rf(rng, ch3)
        df = differential(ch3, f)
        assert df.exterior_derivative().is_zero()
        two_form = form(ch3, 2, {("x1", "x2"): f})
        assert two_form.exterior_derivative().exterior_derivative().is_zero()
