import random

from hypothesis import given, settings, strategies as st

from twistalex.freegroup import GroupRingElement, Word, ring_add, ring_map, ring_multiply, word_multiply

letters = st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=30)
X, Y = Word.gen(0), Word.gen(1)


def E(*pairs):
    return GroupRingElement({Word(w): c for w, c in pairs})


def reduce_randomly(seq, rng):
    """Cancel adjacent inverse letters in a random order until none remain."""
    seq = list(seq)
    while True:
        spots = [i for i in range(len(seq) - 1)
                 if seq[i][0] == seq[i + 1][0] and seq[i][1] == -seq[i + 1][1]]
        if not spots:
            return seq
        i = rng.choice(spots)
        del seq[i:i + 2]


def test_word_multiply_examples():
    assert word_multiply(X, X.inverse()) == Word()
    assert word_multiply(X * Y, Y.inverse() * X) == Word.gen(0, 2)
    assert word_multiply(X, Y) == Word(((0, 1), (1, 1)))


def test_word_is_stored_reduced():
    w = Word([(0, 2), (0, -2), (1, 1), (1, 2), (0, 0)])
    assert tuple(w) == ((1, 3),)
    assert Word() == Word([(0, 1), (0, -1)])


@settings(max_examples=300)
@given(letters, st.integers(0, 10**6))
def test_free_reduction_is_confluent(seq, seed):
    rng = random.Random(seed)
    assert Word(reduce_randomly(seq, rng)).letters() == Word(seq).letters()
    assert Word(seq).letters() == reduce_randomly(seq, random.Random(seed + 1))


@given(letters, letters, letters)
def test_word_group_axioms(a, b, c):
    a, b, c = Word(a), Word(b), Word(c)
    assert (a * b) * c == a * (b * c)
    assert a * Word() == a == Word() * a
    assert a * a.inverse() == Word()


def test_ring_multiply_examples():
    one = GroupRingElement.one()
    x = GroupRingElement.of(X)
    y = GroupRingElement.of(Y)
    assert ring_multiply(one + x, one - x) == one - GroupRingElement.of(Word.gen(0, 2))
    assert ring_multiply(GroupRingElement.zero(), one + x).is_zero()
    square = ring_multiply(x + y, x + y)
    assert square == E((((0, 2),), 1), (((0, 1), (1, 1)), 1), (((1, 1), (0, 1)), 1), (((1, 2),), 1))
    assert len(square.terms) == 4


def test_no_zero_coefficients_stored():
    x = GroupRingElement.of(X)
    assert (x - x).terms == {}
    assert ring_add(x, -x) == GroupRingElement.zero()


elements = st.lists(st.tuples(letters, st.integers(-3, 3)), max_size=4).map(
    lambda ps: sum((GroupRingElement.of(Word(w), c) for w, c in ps), GroupRingElement.zero()))


@settings(max_examples=100)
@given(elements, elements, elements)
def test_group_ring_axioms(a, b, c):
    one = GroupRingElement.one()
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert one * a == a == a * one
    assert a + b == b + a


@given(elements, elements)
def test_augmentation_is_multiplicative(a, b):
    assert (a * b).augmentation() == a.augmentation() * b.augmentation()


def test_ring_map_examples():
    from twistalex.fields import QQ
    from twistalex.laurent import LaurentPoly

    def alpha(w):
        return LaurentPoly.monomial(QQ, 1, sum(k for _, k in w))

    e = GroupRingElement.one() + GroupRingElement.of(X * Y) - GroupRingElement.of(Y)
    zero = LaurentPoly.zero(QQ)
    assert str(ring_map(e, alpha, zero)) == "1 - t + t^2"
    assert ring_map(GroupRingElement.zero(), alpha, zero).is_zero()
    assert ring_map(GroupRingElement.of(X), lambda w: 7 if w == X else 0, 0) == 7
