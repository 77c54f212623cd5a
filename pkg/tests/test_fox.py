import random

from hypothesis import given, settings, strategies as st

from twistalex.fox import check_fundamental_formula, fox_derivative, fox_jacobian
from twistalex.freegroup import GroupRingElement, Word, random_word

X, Y = Word.gen(0), Word.gen(1)
words = st.lists(st.tuples(st.integers(0, 2), st.integers(-4, 4)), max_size=10).map(Word)


def G(w):
    return GroupRingElement.of(w)


def test_trefoil_relator_derivative():
    r = X * Y * X * (Y * X * Y).inverse()
    one = GroupRingElement.one()
    assert fox_derivative(r, 0) == one + G(X * Y) - G(X * Y * X * Y.inverse() * X.inverse())


def test_trefoil_difference_derivative():
    # d(xyx - yxy)/dx = 1 + xy - y
    e = G(X * Y * X) - G(Y * X * Y)
    assert fox_derivative(e, 0) == GroupRingElement.one() + G(X * Y) - G(Y)


def test_identity_and_powers():
    assert fox_derivative(Word(), 0).is_zero()
    assert fox_derivative(Word.gen(0, 3), 0) == GroupRingElement.one() + G(X) + G(Word.gen(0, 2))
    assert fox_derivative(Word.gen(0, -2), 0) == -(G(Word.gen(0, -1)) + G(Word.gen(0, -2)))
    assert fox_derivative(Word.gen(1, 3), 0).is_zero()


def test_figure_eight_piece():
    w = X.inverse() * Y * X * Y.inverse()
    assert fox_derivative(w, 0) == -G(X.inverse()) + G(X.inverse() * Y)


@settings(max_examples=200)
@given(words, words, st.integers(0, 2))
def test_product_rule(a, b, j):
    assert fox_derivative(a * b, j) == fox_derivative(a, j) + G(a) * fox_derivative(b, j)


@settings(max_examples=200)
@given(words, st.integers(0, 2))
def test_inverse_rule(g, j):
    assert fox_derivative(g.inverse(), j) == -(G(g.inverse()) * fox_derivative(g, j))


@given(words)
def test_fundamental_formula_property(w):
    assert check_fundamental_formula(w, 3)


def test_fundamental_formula_examples():
    assert check_fundamental_formula(Word(), 2)
    assert check_fundamental_formula(X * Y * X * (Y * X * Y).inverse())
    rng = random.Random(7)
    assert all(check_fundamental_formula(random_word(rng, 3, 20), 3) for _ in range(500))


def test_linearity_over_group_ring_elements():
    e = 2 * G(X * Y) - G(Y * Y)
    assert fox_derivative(e, 1) == 2 * fox_derivative(X * Y, 1) - fox_derivative(Y * Y, 1)


def test_jacobian_shape():
    J = fox_jacobian([X * Y, Y], 2)
    assert len(J) == 2 and all(len(row) == 2 for row in J)
    assert J[1][1] == GroupRingElement.one()
