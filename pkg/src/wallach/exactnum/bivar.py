"""Bivariate polynomials over Q and resultant elimination.

Terms are stored sparsely as {(i, j): coeff} for x^i * y^j. The resultant is
computed as the determinant of the Sylvester matrix over Q[x] using
fraction-free (Bareiss) elimination, so every intermediate division is exact.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import BothConstant, ZeroPolynomial
from .poly import UniPoly


class BivarPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (i, j), c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[(i, j)] = c

    @staticmethod
    def const(c) -> "BivarPoly":
        return BivarPoly({(0, 0): Fraction(c)})

    @staticmethod
    def var_x() -> "BivarPoly":
        return BivarPoly({(1, 0): Fraction(1)})

    @staticmethod
    def var_y() -> "BivarPoly":
        return BivarPoly({(0, 1): Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def __eq__(self, other):
        return isinstance(other, BivarPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, Fraction(0)) + c
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "BivarPoly":
        c = Fraction(c)
        return BivarPoly({k: c * v for k, v in self.terms.items()})

    def swap_vars(self) -> "BivarPoly":
        return BivarPoly({(j, i): c for (i, j), c in self.terms.items()})

    def coeffs_in_y(self) -> list[UniPoly]:
        """Coefficients of y^0..y^n as univariate polynomials in x."""
        n = self.degree_y()
        rows: list[list[Fraction]] = [[] for _ in range(n + 1)]
        for (i, j), c in self.terms.items():
            row = rows[j]
            while len(row) <= i:
                row.append(Fraction(0))
            row[i] = c
        return [UniPoly(r) for r in rows]

    def substitute_y(self, value) -> UniPoly:
        """Plug an exact rational value in for y, leaving a UniPoly in x."""
        out = UniPoly.zero()
        value = Fraction(value)
        for j, cf in enumerate(self.coeffs_in_y()):
            out = out + cf.scale(value**j)
        return out

    def eval(self, x_val, y_val):
        acc = Fraction(0)
        for j, cf in enumerate(self.coeffs_in_y()):
            term = cf(x_val)
            for _ in range(j):
                term = term * y_val
            acc = acc + term
        return acc

    def __repr__(self):
        if self.is_zero:
            return "BivarPoly(0)"
        bits = [f"{c}*x^{i}*y^{j}" for (i, j), c in sorted(self.terms.items())]
        return "BivarPoly(" + " + ".join(bits) + ")"


def _coerce(v) -> BivarPoly:
    if isinstance(v, BivarPoly):
        return v
    return BivarPoly.const(v)


def _poly_exact_div(num: UniPoly, den: UniPoly) -> UniPoly:
    q, r = num.divmod(den)
    if not r.is_zero:
        raise ArithmeticError("Bareiss division was not exact")
    return q


def _det_bareiss(m: list[list[UniPoly]]) -> UniPoly:
    """Fraction-free determinant of a matrix with polynomial entries."""
    n = len(m)
    if n == 0:
        return UniPoly.const(1)
    m = [row[:] for row in m]
    sign = 1
    prev = UniPoly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot_row = next((r for r in range(k + 1, n) if not m[r][k].is_zero), None)
            if pivot_row is None:
                return UniPoly.zero()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _poly_exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = UniPoly.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(p_coeffs: list[UniPoly], q_coeffs: list[UniPoly]) -> list[list[UniPoly]]:
    """Sylvester matrix of two polynomials in y whose coefficients live in Q[x]."""
    m = len(p_coeffs) - 1
    n = len(q_coeffs) - 1
    size = m + n
    zero = UniPoly.zero()
    rows = []
    pd = p_coeffs[::-1]  # descending in y
    qd = q_coeffs[::-1]
    for shift in range(n):
        rows.append([zero] * shift + pd + [zero] * (size - shift - m - 1))
    for shift in range(m):
        rows.append([zero] * shift + qd + [zero] * (size - shift - n - 1))
    return rows


def resultant_y(p: BivarPoly, q: BivarPoly) -> UniPoly:
    """Resultant of p and q with respect to y; a polynomial in x.

    Every common zero (x0, y0) of p and q has Res(p,q)(x0) = 0.
    """
    if p.is_zero or q.is_zero:
        raise ZeroPolynomial("resultant of a zero polynomial")
    pc, qc = p.coeffs_in_y(), q.coeffs_in_y()
    if len(pc) - 1 <= 0 and len(qc) - 1 <= 0:
        raise BothConstant("neither polynomial depends on the eliminated variable")
    if len(pc) - 1 <= 0:
        return pc[0] ** (len(qc) - 1)
    if len(qc) - 1 <= 0:
        return qc[0] ** (len(pc) - 1)
    return _det_bareiss(sylvester_matrix(pc, qc))


def resultant_eliminate(p: BivarPoly, q: BivarPoly, eliminate: str) -> UniPoly:
    """Eliminate 'x' or 'y' from the pair (p, q); returns a UniPoly in the kept variable."""
    if eliminate == "y":
        return resultant_y(p, q)
    if eliminate == "x":
        return resultant_y(p.swap_vars(), q.swap_vars())
    raise ValueError(f"eliminate must be 'x' or 'y', got {eliminate!r}")
