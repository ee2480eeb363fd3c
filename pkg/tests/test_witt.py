from fractions import Fraction
from itertools import product

import pytest

from mixwitt import FieldMismatch, FormOp, NonRationalField, WeakVerdict, ZeroArgument, ZeroElement, ZeroScale, ZeroSlot
from mixwitt.core.numberfield import real_orderings
from mixwitt.core.witt import (
    REAL,
    Place,
    QuadraticForm,
    form_combine,
    hasse_invariant,
    hilbert_symbol,
    invariants_q,
    is_isotropic_rational,
    is_rational_square,
    pfister,
    relevant_places,
    signature_q,
    signed_discriminant,
    squarefree_rep,
    total_signature_q,
    weak_equivalence,
    witt_equal_rational,
)

def test_form_operations(QQ):
    q1, q2 = QuadraticForm.of(QQ, [1, 2]), QuadraticForm.of(QQ, [3])
    assert form_combine(FormOp.SUM, q1, q2) == QuadraticForm.of(QQ, [1, 2, 3])
    assert form_combine(FormOp.TENSOR, q1, q2) == QuadraticForm.of(QQ, [3, 6])
    assert form_combine(FormOp.NEGATE, q1) == QuadraticForm.of(QQ, [-1, -2])
    assert form_combine(FormOp.SCALE, q1, Fraction(1, 2)) == QuadraticForm.of(QQ, [Fraction(1, 2), 1])
    assert str(q1) == "<1, 2>"

def test_form_rejects_zero(QQ):
    with pytest.raises(ZeroElement):
        QuadraticForm.of(QQ, [1, 0])
    with pytest.raises(ZeroScale):
        QuadraticForm.of(QQ, [1]).scale(0)

def test_form_field_mismatch(QQ, sqrt2):
    with pytest.raises(FieldMismatch):
        QuadraticForm.of(QQ, [1]) + QuadraticForm.of(sqrt2, [1])

def test_pfister(QQ, sqrt2):
    assert pfister([QQ.element(-1), QQ.element(-1)]) == QuadraticForm.of(QQ, [1, 1, 1, 1])
    assert pfister([QQ.element(2)]) == QuadraticForm.of(QQ, [1, -2])
    assert pfister([], QQ) == QuadraticForm.of(QQ, [1])
    assert pfister([sqrt2.gen]).dim == 2
    with pytest.raises(ZeroSlot):
        pfister([QQ.element(1), QQ.element(0)])

def test_signatures_sqrt2(sqrt2, sqrt2_orderings):
    neg, pos = sqrt2_orderings
    q = QuadraticForm.of(sqrt2, [1, -1, "t"])
    assert signature_q(q, pos) == 1
    assert signature_q(q, neg) == -1
    assert total_signature_q(q) == {0: -1, 1: 1}
    assert total_signature_q(QuadraticForm(sqrt2)) == {0: 0, 1: 0}

def test_signature_of_pfister_form(sqrt2, sqrt2_orderings):
    """<<a, b>> has signature 4 where a and b are negative and 0 elsewhere."""
    neg, pos = sqrt2_orderings
    q = pfister([sqrt2.gen, sqrt2.element(-1)])
    assert signature_q(q, neg) == 4
    assert signature_q(q, pos) == 0

def test_invariants(QQ, sqrt2):
    assert invariants_q(QuadraticForm.of(QQ, [2, 3])) == (0, QQ.element(-6))
    assert signed_discriminant(QuadraticForm.of(sqrt2, [1, -1, "t"])) == sqrt2.gen
    assert signed_discriminant(QuadraticForm(QQ)) == 1
    assert invariants_q(QuadraticForm.of(QQ, [5]))[0] == 1

@pytest.mark.parametrize("x, rep", [(1, 1), (4, 1), (-8, -2), (Fraction(3, 4), 3), (Fraction(-2, 9), -2), (18, 2), (Fraction(6, 10), 15)])
def test_squarefree_rep(x, rep):
    assert squarefree_rep(x) == rep

def test_squarefree_rep_zero():
    with pytest.raises(ZeroArgument):
        squarefree_rep(0)
    assert is_rational_square(Fraction(9, 4))
    assert not is_rational_square(-1)

@pytest.mark.parametrize("a, b, v, expected", [
    (-1, -1, REAL, -1),
    (-1, -1, Place(2), -1),
    (-1, -1, Place(3), 1),
    (2, 7, Place(7), 1),
    (3, 5, Place(5), -1),
    (2, 3, Place(3), -1),
    (-1, 3, REAL, 1),
    (-1, 3, Place(3), -1),
    (-1, 3, Place(2), -1),
    (5, 5, Place(5), 1),
    (Fraction(1, 2), 3, Place(3), -1),
])
def test_hilbert_symbol(a, b, v, expected):
    assert hilbert_symbol(a, b, v) == expected

def test_hilbert_symbol_errors(QQ, sqrt2):
    with pytest.raises(ZeroArgument):
        hilbert_symbol(0, 3, REAL)
    with pytest.raises(NonRationalField):
        hilbert_symbol(sqrt2.gen, 3, REAL)
    assert hilbert_symbol(QQ.element(-1), QQ.element(-1), REAL) == -1

def test_hilbert_reciprocity(rng):
    values = [x for x in range(-30, 31) if x != 0]
    for _ in range(500):
        a, b = rng.choice(values), rng.choice(values)
        places = relevant_places([a, b])
        result = 1
        for v in places:
            result *= hilbert_symbol(a, b, v)
        assert result == 1, f"reciprocity fails for ({a}, {b})"

def test_relevant_places():
    assert relevant_places([6, -10]) == [REAL, Place(2), Place(3), Place(5)]
    assert sorted([Place(5), REAL, Place(2)]) == [REAL, Place(2), Place(5)]
    assert str(REAL) == "real" and str(Place(3)) == "3"

def test_hasse_invariant(QQ):
    assert hasse_invariant(QuadraticForm.of(QQ, [2, 3]), Place(3)) == -1
    assert hasse_invariant(QuadraticForm.of(QQ, [1, 6]), Place(3)) == 1
    assert hasse_invariant(QuadraticForm.of(QQ, [-1, -1, -1]), REAL) == -1

@pytest.mark.parametrize("entries, isotropic", [
    ([1], False),
    ([1, -1], True),
    ([1, -4], True),
    ([1, 1], False),
    ([1, 1, -2], True),
    ([1, 1, -3], False),
    ([1, 1, 1], False),
    ([1, 1, 1, 1], False),
    ([1, 1, 1, -1], True),
    ([1, 1, -3, -3], False),  # norm form of (-1, 3), ramified at 2 and 3
    ([1, 1, -2, -2], True),
    ([1, 2, 3, 5, -7], True),
    ([1, 2, 3, 5, 7], False),
])
def test_isotropy(QQ, entries, isotropic):
    assert is_isotropic_rational(QuadraticForm.of(QQ, entries)) == isotropic

def test_isotropy_requires_rational_field(sqrt2):
    with pytest.raises(NonRationalField):
        is_isotropic_rational(QuadraticForm.of(sqrt2, [1, 1, 1]))

def _values(coeffs: list[int], bound: int) -> set[int]:
    """sum a_i x_i^2 over nonzero vectors with 0 <= x_i <= bound."""
    values = set()
    for xs in product(range(bound + 1), repeat=len(coeffs)):
        if any(xs):
            values.add(sum(a * x * x for a, x in zip(coeffs, xs)))
    return values

def _cassels_bound(entries: list[int]) -> int:
    """An isotropic integral form has a zero of height at most (3H)^((n-1)/2), H the coefficient sum."""
    height = 3 * sum(abs(a) for a in entries)
    return int(height ** ((len(entries) - 1) / 2)) + 1

def _isotropic_by_search(entries: list[int]) -> bool:
    bound = _cassels_bound(entries)
    half = len(entries) // 2
    left = _values(entries[:half], bound)
    right = {-v for v in _values(entries[half:], bound)}
    return 0 in left or 0 in right or not left.isdisjoint(right)

def _squarefree(n: int) -> int:
    for p in (2, 3, 5, 7):
        while n % (p * p) == 0:
            n //= p * p
    return n

def _is_square(n: int) -> bool:
    return n > 0 and round(n ** 0.5) ** 2 == n

@pytest.mark.slow
def test_isotropy_agrees_with_search(QQ):
    values = [-5, -3, -2, -1, 1, 2, 3, 5]
    for entries in product(values, repeat=3):
        if list(entries) != sorted(entries):
            continue
        expected = _isotropic_by_search(list(entries))
        assert is_isotropic_rational(QuadraticForm.of(QQ, entries)) == expected, f"<{entries}>"

@pytest.mark.slow
def test_witt_equal_agrees_with_search(QQ, rng):
    # <a,b,c> ~ <d> iff <a,b,c> is isotropic with d = -abc mod squares;
    # <a,b,c,d> ~ 0 iff it is isotropic with abcd a square.
    values = [-5, -3, -2, -1, 1, 2, 3, 5]
    for _ in range(25):
        a, b, c = (rng.choice(values) for _ in range(3))
        d = -_squarefree(a * b * c) if rng.random() < 0.5 else rng.choice(values)
        expected = _is_square(-a * b * c * d) and _isotropic_by_search([a, b, c])
        q1, q2 = QuadraticForm.of(QQ, [a, b, c]), QuadraticForm.of(QQ, [d])
        assert witt_equal_rational(q1, q2) == expected, f"<{a},{b},{c}> vs <{d}>"
    values = [-3, -2, -1, 1, 2, 3]
    for _ in range(25):
        a, b, c = (rng.choice(values) for _ in range(3))
        d = _squarefree(a * b * c) if rng.random() < 0.5 else rng.choice(values)
        expected = _is_square(a * b * c * d) and _isotropic_by_search([a, b, c, d])
        q = QuadraticForm.of(QQ, [a, b, c, d])
        assert witt_equal_rational(q, QuadraticForm(QQ)) == expected, f"<{a},{b},{c},{d}>"

@pytest.mark.parametrize("e1, e2, equal", [
    ([2, 3], [1, 6], False),
    ([1, 1], [2, 2], True),
    ([1, -1], [], True),
    ([3, -3, 5], [5], True),
    ([1, 1, 1], [1], False),
    ([1, 1], [3, 3], False),
    ([1, 1], [5, 5], True),
    ([2], [8], True),
    ([2], [3], False),
    ([1, 1, 1, 1], [2, 2, 2, 2], True),
    ([1], [1, 1], False),
])
def test_witt_equal_rational(QQ, e1, e2, equal):
    q1, q2 = QuadraticForm.of(QQ, e1), QuadraticForm.of(QQ, e2)
    assert witt_equal_rational(q1, q2) == equal
    assert witt_equal_rational(q2, q1) == equal

def test_witt_equal_laws(QQ, rng):
    values = [-7, -5, -3, -2, -1, 1, 2, 3, 5, 7]
    for _ in range(30):
        q = QuadraticForm.of(QQ, [rng.choice(values) for _ in range(rng.randint(1, 4))])
        assert witt_equal_rational(q + (-q), QuadraticForm(QQ))
        assert witt_equal_rational(q * QuadraticForm.of(QQ, [4]), q)

def test_weak_equivalence(QQ, sqrt2):
    assert weak_equivalence(QuadraticForm.of(sqrt2, [1, 1]), QuadraticForm.of(sqrt2, [2, 1])) == WeakVerdict.EQUIVALENT_WEAKLY
    assert weak_equivalence(QuadraticForm.of(QQ, [1, 1]), QuadraticForm.of(QQ, [2, 1])) == WeakVerdict.DISTINGUISHED
    assert weak_equivalence(QuadraticForm.of(sqrt2, [1]), QuadraticForm.of(sqrt2, ["t"])) == WeakVerdict.DISTINGUISHED
    assert weak_equivalence(QuadraticForm.of(sqrt2, [1, 1]), QuadraticForm.of(sqrt2, [1])) == WeakVerdict.DISTINGUISHED
    assert weak_equivalence(QuadraticForm.of(sqrt2, ["t", "-t"]), QuadraticForm(sqrt2)) == WeakVerdict.EQUIVALENT_WEAKLY
    with pytest.raises(FieldMismatch):
        weak_equivalence(QuadraticForm.of(QQ, [1]), QuadraticForm.of(sqrt2, [1]))

def _random_form(F, rng) -> QuadraticForm:
    values = [1, -1, 2, -3, 5]
    if F.degree > 1:
        values += ["t", "-t", "t-1", "1+t^2", "2-3t"]
    return QuadraticForm.of(F, [rng.choice(values) for _ in range(rng.randint(0, 3))])

@pytest.mark.slow
@pytest.mark.parametrize("field", ["QQ", "sqrt2", "cbrt2"])
def test_signature_is_ring_morphism(request, rng, field):
    F = request.getfixturevalue(field)
    orderings = real_orderings(F)
    for _ in range(100):
        q1, q2 = _random_form(F, rng), _random_form(F, rng)
        for P in orderings:
            assert signature_q(q1 + q2, P) == signature_q(q1, P) + signature_q(q2, P), f"{q1} + {q2} at P{P.index}"
            assert signature_q(q1 * q2, P) == signature_q(q1, P) * signature_q(q2, P), f"{q1} * {q2} at P{P.index}"
