"""Dense univariate polynomials with integer coefficients."""

from __future__ import annotations

from math import comb

from . import _core


class PolynomialError(ArithmeticError):
    pass


class IntPolynomial:
    """Element of Z[x]; ``coeffs[k]`` is the coefficient of ``x**k``.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``
    and degree ``-inf`` (reported as ``None`` by :attr:`degree`).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(int(a) for a in c)

    @classmethod
    def x(cls, k: int = 1) -> "IntPolynomial":
        return cls((0,) * k + (1,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial(other)
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        other = _lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        return IntPolynomial(_core.poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def __call__(self, value):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * value + a
        return acc

    def reversed_within(self, bound: int) -> "IntPolynomial":
        """``x**bound * p(1/x)``; requires ``deg p <= bound``."""
        if len(self.coeffs) > bound + 1:
            raise PolynomialError(f"degree {self.degree} exceeds reversal bound {bound}")
        c = self.coeffs + (0,) * (bound + 1 - len(self.coeffs))
        return IntPolynomial(c[::-1])

    def divmod_x_minus_1(self) -> tuple["IntPolynomial", int]:
        """Synthetic division by ``x - 1``: returns (quotient, remainder)."""
        c = self.coeffs
        if not c:
            return IntPolynomial(), 0
        q = [0] * (len(c) - 1)
        acc = 0
        for k in range(len(c) - 1, 0, -1):
            acc = acc + c[k]
            q[k - 1] = acc
        return IntPolynomial(q), acc + c[0]

    def div_x_minus_1(self) -> "IntPolynomial":
        q, r = self.divmod_x_minus_1()
        if r:
            raise PolynomialError(f"{self} is not divisible by x - 1 (remainder {r})")
        return q

    def nonnegative(self) -> bool:
        return all(a >= 0 for a in self.coeffs)

    def is_palindromic(self, bound=None) -> bool:
        if bound is None:
            bound = self.degree or 0
        return self == self.reversed_within(bound)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k == 0:
                body = str(abs(a))
            elif abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}{mono}"
            terms.append(("-" if a < 0 else "+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def _lift(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial(p)
    raise TypeError(f"cannot use {type(p).__name__} as an integer polynomial")


ZERO = IntPolynomial()
ONE = IntPolynomial(1)
X = IntPolynomial.x()


def binomial(n: int, k: int) -> int:
    return comb(n, k)
