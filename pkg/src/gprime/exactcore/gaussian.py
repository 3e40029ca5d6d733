"""Exact arithmetic in the Gaussian rationals Q(i).

Scalars throughout the package live in Q(i).  To keep the common real case
fast, values are stored in their *canonical* form: a Python ``int`` when the
value is an integer, a ``Fraction`` when it is a non-integral rational, and a
:class:`GaussianRational` only when the imaginary part is nonzero.  All
arithmetic on :class:`GaussianRational` returns canonical values, so
``I * I == -1`` holds with an ``int`` on the left.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussianRational", "I", "exact", "parse_scalar", "format_scalar", "conj"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def _canon_real(f: Fraction):
    return f.numerator if f.denominator == 1 else f


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with reduced rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- construction / conversion -------------------------------------
    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        value = parse_scalar(text)
        if isinstance(value, GaussianRational):
            return value
        return cls(value, 0)

    def canonical(self):
        if self.im == 0:
            return _canon_real(self.re)
        return self

    def conjugate(self):
        return GaussianRational(self.re, -self.im).canonical()

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _parts(other):
        if isinstance(other, GaussianRational):
            return other.re, other.im
        if isinstance(other, (int, Fraction)):
            return other, 0
        if isinstance(other, Rational):
            return Fraction(other), 0
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussianRational(self.re + p[0], self.im + p[1]).canonical()

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussianRational(self.re - p[0], self.im - p[1]).canonical()

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussianRational(p[0] - self.re, p[1] - self.im).canonical()

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        return GaussianRational(a * c - b * d, a * d + b * c).canonical()

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b = self.re, self.im
        return GaussianRational((a * c + b * d) / den, (b * c - a * d) / den).canonical()

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussianRational(*p).__truediv__(self)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im).canonical()

    def __pos__(self):
        return self.canonical()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        result, base = 1, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return exact(result)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


def exact(x):
    """Return the canonical Q(i) representative of ``x``.

    Accepts ints, Fractions, GaussianRationals and scalar strings.  Floats are
    rejected: nothing in this package is allowed to go through binary floating
    point.
    """
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return _canon_real(x)
    if isinstance(x, GaussianRational):
        return x.canonical()
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, Rational):
        return _canon_real(Fraction(x))
    if hasattr(x, "item") and not isinstance(x, float):
        # numpy integer scalars
        return exact(x.item())
    raise TypeError(f"{type(x).__name__} is not an exact Q(i) scalar")


def conj(x):
    x = exact(x)
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def parse_scalar(text: str):
    """Parse the textual scalar form ``"a/b"``, ``"a/b+c/d*i"``, ``"i"``, ``"-3/4*i"``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar string")
    if not s.endswith("i"):
        return _canon_real(Fraction(s))
    body = s[:-1]
    if body.endswith("*"):
        body = body[:-1]
    k = max(body.rfind("+"), body.rfind("-"))
    if k > 0:
        re_txt, im_txt = body[:k], body[k:]
    else:
        re_txt, im_txt = "", body
    if "i" in re_txt or "i" in im_txt:
        raise ValueError(f"malformed scalar {text!r}")
    re_part = Fraction(re_txt) if re_txt else Fraction(0)
    if im_txt in ("", "+"):
        im_part = Fraction(1)
    elif im_txt == "-":
        im_part = Fraction(-1)
    else:
        im_part = Fraction(im_txt)
    return GaussianRational(re_part, im_part).canonical()


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar`; zero parts are omitted."""
    x = exact(x)
    if not isinstance(x, GaussianRational):
        return str(x)
    im = f"{x.im}*i"
    if x.re == 0:
        return im
    sign = "+" if x.im > 0 else ""
    return f"{x.re}{sign}{im}"
