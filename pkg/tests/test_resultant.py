from fractions import Fraction as F

import pytest

from wallach.core import AParams
from wallach.einstein import einstein_system_x3_normalized
from wallach.errors import BothConstant
from wallach.exactnum import BivarPoly, UniPoly, resultant_eliminate


def test_linear_pair():
    p = BivarPoly({(1, 0): 1, (0, 1): -1})  # x - y
    q = BivarPoly({(1, 0): 1, (0, 1): 1, (0, 0): -2})  # x + y - 2
    r = resultant_eliminate(p, q, "y")
    assert r.degree == 1
    assert r(F(1)) == 0 and r(F(0)) != 0


def test_einstein_pair_at_symmetric_point():
    # normalizing x3 = 1 and eliminating x2 leaves x1 roots {1, 2, 1/2}
    a = AParams(F(1, 6), F(1, 6), F(1, 6))
    e1, e2 = einstein_system_x3_normalized(a)
    r = resultant_eliminate(e1, e2, "y")
    for root in (F(1), F(2), F(1, 2)):
        assert r(root) == 0
    assert r(F(3)) != 0


def test_duplicate_inputs_give_zero():
    p = BivarPoly({(0, 2): 1, (1, 1): 2, (0, 0): -1})
    assert resultant_eliminate(p, p, "y").is_zero


def test_both_constant_rejected():
    p = BivarPoly({(1, 0): 1})  # depends on x only
    q = BivarPoly({(2, 0): 3, (0, 0): 1})
    with pytest.raises(BothConstant):
        resultant_eliminate(p, q, "y")


def test_eliminate_x_matches_swapped():
    p = BivarPoly({(2, 0): 1, (0, 1): -1})  # x^2 - y
    q = BivarPoly({(1, 0): 1, (0, 1): 1, (0, 0): -6})  # x + y - 6
    r = resultant_eliminate(p, q, "x")
    # common zeros: x^2 = y, x = 6 - y -> y in {4, 9}
    assert r(F(4)) == 0 and r(F(9)) == 0


def test_projection_property_against_sympy():
    sympy = pytest.importorskip("sympy")
    x, y = sympy.symbols("x y")
    p = BivarPoly({(2, 0): 1, (1, 1): -3, (0, 2): 2, (1, 0): F(1, 2), (0, 0): -5})
    q = BivarPoly({(0, 2): 1, (2, 0): -1, (0, 1): 4, (0, 0): F(7, 3)})

    def to_sympy(b):
        return sum(
            sympy.Rational(c.numerator, c.denominator) * x**i * y**j
            for (i, j), c in b.terms.items()
        )

    ours = resultant_eliminate(p, q, "y")
    theirs = sympy.Poly(
        sympy.resultant(to_sympy(p), to_sympy(q), y), x
    ).all_coeffs()[::-1]
    assert [F(str(c)) for c in theirs] == list(ours.coeffs)
