"""Truncated power series in (t, x, y), exponential in x and y, ordinary in t.

A table entry ``c[(k, m, n)]`` is the *count* f_{k,m,n} of the series
sum f_{k,m,n} t^k x^m y^n / (m! n!).  Products therefore use binomial
convolution in x and y; the factorials never appear in stored values.
"""

from fractions import Fraction
from math import comb, factorial


class Egf3:
    __slots__ = ("orders", "coeffs")

    def __init__(self, orders, coeffs=None):
        k, m, n = (int(v) for v in orders)
        if min(k, m, n) < 0:
            raise ValueError("truncation orders must be non-negative")
        self.orders = (k, m, n)
        self.coeffs = {}
        for key, val in (coeffs or {}).items():
            val = Fraction(val)
            if val and self._inside(key):
                self.coeffs[tuple(key)] = val

    # -- construction -------------------------------------------------
    def _inside(self, key):
        return all(0 <= a <= b for a, b in zip(key, self.orders))

    @classmethod
    def constant(cls, orders, value):
        return cls(orders, {(0, 0, 0): value})

    @classmethod
    def monomial(cls, orders, coef, t=0, x=0, y=0):
        """``coef * t^t x^x y^y`` with an *ordinary* coefficient."""
        return cls(orders, {(t, x, y): Fraction(coef) * factorial(x) * factorial(y)})

    @classmethod
    def exp_linear(cls, orders, coef, t=0, x=0, y=0):
        """exp(coef * t^t x^x y^y), the monomial given with an ordinary coefficient."""
        if t == x == y == 0:
            raise ValueError("argument of exp_linear must have positive degree")
        return cls.monomial(orders, coef, t, x, y).exp()

    def _like(self, coeffs):
        return Egf3(self.orders, coeffs)

    # -- access -------------------------------------------------------
    def __getitem__(self, key):
        if not self._inside(key):
            raise KeyError(f"{key} is outside truncation orders {self.orders}")
        return self.coeffs.get(tuple(key), Fraction(0))

    def count(self, k, m, n):
        return self[(k, m, n)]

    def ordinary(self, k, m, n):
        """Coefficient of t^k x^m y^n as an ordinary power series."""
        return self[(k, m, n)] / (factorial(m) * factorial(n))

    def at_t_equal_one(self):
        """Sum over the t-degree: the t-free series obtained by t := 1."""
        out = {}
        for (k, m, n), v in self.coeffs.items():
            out[(0, m, n)] = out.get((0, m, n), 0) + v
        return Egf3((0,) + self.orders[1:], out)

    def __eq__(self, other):
        return isinstance(other, Egf3) and self.orders == other.orders and self.coeffs == other.coeffs

    def __repr__(self):
        return f"Egf3(orders={self.orders}, nonzero={len(self.coeffs)})"

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Egf3):
            if other.orders != self.orders:
                raise ValueError(f"truncation orders differ: {self.orders} vs {other.orders}")
            return other
        return Egf3.constant(self.orders, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for key, v in other.coeffs.items():
            out[key] = out.get(key, 0) + v
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Egf3):
            c = Fraction(other)
            return self._like({k: c * v for k, v in self.coeffs.items()})
        other = self._coerce(other)
        K, M, N = self.orders
        out = {}
        for (k1, m1, n1), a in self.coeffs.items():
            for (k2, m2, n2), b in other.coeffs.items():
                k, m, n = k1 + k2, m1 + m2, n1 + n2
                if k > K or m > M or n > N:
                    continue
                key = (k, m, n)
                out[key] = out.get(key, 0) + comb(m, m1) * comb(n, n1) * a * b
        return self._like(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Egf3):
            return self * other.reciprocal()
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, e):
        if e < 0:
            return self.reciprocal() ** (-e)
        out = Egf3.constant(self.orders, 1)
        for _ in range(e):
            out = out * self
        return out

    def reciprocal(self):
        a0 = self.coeffs.get((0, 0, 0), Fraction(0))
        if a0 == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        K, M, N = self.orders
        terms = [(key, v) for key, v in self.coeffs.items() if key != (0, 0, 0)]
        inv = 1 / a0
        out = {(0, 0, 0): inv}
        keys = sorted(
            ((k, m, n) for k in range(K + 1) for m in range(M + 1) for n in range(N + 1)),
            key=sum)
        for key in keys:
            if key == (0, 0, 0):
                continue
            k, m, n = key
            acc = Fraction(0)
            for (k1, m1, n1), a in terms:
                if k1 > k or m1 > m or n1 > n:
                    continue
                b = out.get((k - k1, m - m1, n - n1))
                if b:
                    acc += comb(m, m1) * comb(n, n1) * a * b
            if acc:
                out[key] = -inv * acc
        return self._like(out)

    def exp(self):
        if self.coeffs.get((0, 0, 0)):
            raise ValueError("exp is only taken of series without constant term")
        total = Egf3.constant(self.orders, 1)
        power = Egf3.constant(self.orders, 1)
        j = 0
        while True:
            j += 1
            power = power * self
            if not power.coeffs:
                return total
            total = total + power * Fraction(1, factorial(j))


def series_mul(a, b):
    return a * b


def series_reciprocal(a):
    return a.reciprocal()


def series_exp_linear(orders, coef, t=0, x=0, y=0):
    return Egf3.exp_linear(orders, coef, t=t, x=x, y=y)
