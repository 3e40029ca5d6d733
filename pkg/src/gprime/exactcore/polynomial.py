"""Sparse multivariate polynomials over Q(i) with a fixed number of variables.

Exponent vectors are packed into a single Python int, one byte per variable
(variable ``i`` occupies bits ``8i .. 8i+7``).  Multiplying two monomials is
then integer addition, which is what makes the symbolic invariant
computations in this package affordable.  The packing caps every exponent at
255; products whose total degree would exceed that raise ``OverflowError``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .gaussian import GaussianRational, exact, format_scalar, parse_scalar

__all__ = ["Polynomial", "compose_linear", "evaluate", "gradient"]

_BITS = 8
_MAXDEG = (1 << _BITS) - 1


def _pack(exps) -> int:
    m = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MAXDEG:
            raise ValueError(f"exponent {e} out of range")
        if e:
            m |= e << (_BITS * i)
    return m


def _unpack(m: int, arity: int) -> tuple[int, ...]:
    return tuple(m.to_bytes(arity, "little")) if arity else ()


def _mdeg(m: int) -> int:
    return sum(m.to_bytes((m.bit_length() + 7) // 8, "little"))


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational))


class Polynomial:
    """Immutable polynomial in ``arity`` variables ``x0 .. x{arity-1}``.

    ``terms`` may be a mapping or an iterable of ``(exponent_tuple, coeff)``
    pairs; zero coefficients are dropped and repeated exponents are summed.
    """

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms=None):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        self.arity = arity
        self._hash = None
        acc: dict[int, object] = {}
        if terms is not None:
            items = terms.items() if hasattr(terms, "items") else terms
            for exps, c in items:
                exps = tuple(exps)
                if len(exps) != arity:
                    raise ValueError(f"exponent vector {exps} has length != arity {arity}")
                key = _pack(exps)
                acc[key] = acc.get(key, 0) + exact(c)
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def _raw(cls, arity: int, packed: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.arity = arity
        p._hash = None
        p._terms = packed
        return p

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls._raw(arity, {})

    @classmethod
    def constant(cls, arity: int, c) -> "Polynomial":
        c = exact(c)
        return cls._raw(arity, {0: c} if c else {})

    @classmethod
    def variable(cls, arity: int, i: int) -> "Polynomial":
        if not 0 <= i < arity:
            raise IndexError(f"variable index {i} out of range for arity {arity}")
        return cls._raw(arity, {1 << (_BITS * i): 1})

    @classmethod
    def variables(cls, arity: int) -> list["Polynomial"]:
        return [cls.variable(arity, i) for i in range(arity)]

    @classmethod
    def monomial(cls, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def linear_form(cls, coeffs) -> "Polynomial":
        coeffs = [exact(c) for c in coeffs]
        return cls._raw(len(coeffs), {1 << (_BITS * i): c for i, c in enumerate(coeffs) if c})

    # -- inspection ------------------------------------------------------
    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in descending graded-lexicographic order."""
        out = [(_unpack(m, self.arity), c) for m, c in self._terms.items()]
        out.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
        return out

    def coefficient(self, exps) -> object:
        return self._terms.get(_pack(exps), 0)

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        if not self._terms:
            return -1
        return max(_mdeg(m) for m in self._terms)

    def degrees(self) -> set[int]:
        return {_mdeg(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def multidegrees(self, blocks) -> set[tuple[int, ...]]:
        """Set of block-degree vectors occurring, for a partition of the variables."""
        out = set()
        for m in self._terms:
            e = _unpack(m, self.arity)
            out.add(tuple(sum(e[i] for i in blk) for blk in blocks))
        return out

    def variables_used(self) -> set[int]:
        used = 0
        for m in self._terms:
            used |= m
        out = set()
        for i in range(self.arity):
            if (used >> (_BITS * i)) & _MAXDEG:
                out.add(i)
        return out

    def coefficients(self) -> list:
        return [c for _, c in self.terms()]

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if _is_scalar(other):
            return Polynomial.constant(self.arity, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            v = acc.get(m, 0) + c
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return Polynomial._raw(self.arity, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.arity, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = exact(c)
        if not c:
            return Polynomial.zero(self.arity)
        return Polynomial._raw(self.arity, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if not self._terms or not other._terms:
            return Polynomial.zero(self.arity)
        if self.degree + other.degree > _MAXDEG:
            raise OverflowError("degree exceeds packed-exponent capacity")
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        acc: dict[int, object] = {}
        get = acc.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                k = m1 + m2
                acc[k] = get(k, 0) + c1 * c2
        return Polynomial._raw(self.arity, {k: v for k, v in acc.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, c):
        if not _is_scalar(c):
            return NotImplemented
        c = exact(c)
        inv = Fraction(1, c) if isinstance(c, int) else 1 / c
        return self.scale(inv)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.constant(self.arity, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.arity == other.arity and self._terms == other._terms
        if _is_scalar(other):
            other = exact(other)
            if not other:
                return not self._terms
            return len(self._terms) == 1 and self._terms.get(0) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution -------------------------------------
    def diff(self, i: int) -> "Polynomial":
        """Formal partial derivative with respect to variable ``i``."""
        if not 0 <= i < self.arity:
            raise IndexError(i)
        shift = _BITS * i
        one = 1 << shift
        out = {}
        for m, c in self._terms.items():
            e = (m >> shift) & _MAXDEG
            if e:
                out[m - one] = c * e
        return Polynomial._raw(self.arity, out)

    def gradient(self) -> list["Polynomial"]:
        return [self.diff(i) for i in range(self.arity)]

    def evaluate(self, point):
        """Exact value at ``point`` (a length-``arity`` sequence of Q(i) scalars)."""
        point = [exact(v) for v in point]
        if len(point) != self.arity:
            raise ValueError(f"point has length {len(point)}, expected {self.arity}")
        powers: dict[tuple[int, int], object] = {}
        total = 0
        for m, c in self._terms.items():
            val = c
            for i, e in enumerate(m.to_bytes(self.arity, "little") if self.arity else b""):
                if e:
                    key = (i, e)
                    pw = powers.get(key)
                    if pw is None:
                        pw = point[i] ** e
                        powers[key] = pw
                    val = val * pw
                    if not val:
                        break
            total = total + val
        return exact(total)

    __call__ = evaluate

    def substitute(self, images) -> "Polynomial":
        """Replace variable ``i`` by the polynomial ``images[i]``.

        All images must share one arity, which becomes the arity of the result.
        """
        images = list(images)
        if len(images) != self.arity:
            raise ValueError(f"need {self.arity} images, got {len(images)}")
        if not images:
            return self
        arity = images[0].arity
        for q in images:
            if q.arity != arity:
                raise ValueError("substitution images have differing arities")
        cache: dict[tuple[int, int], Polynomial] = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] if e == 1 else power(i, e - 1) * images[i]
            return cache[key]

        acc: dict[int, object] = {}
        for m, c in self._terms.items():
            prod = None
            for i, e in enumerate(m.to_bytes(self.arity, "little")):
                if e:
                    f = power(i, e)
                    prod = f if prod is None else prod * f
                    if not prod:
                        break
            if prod is None:
                acc[0] = acc.get(0, 0) + c
                continue
            for k, v in prod._terms.items():
                acc[k] = acc.get(k, 0) + c * v
        return Polynomial._raw(arity, {k: v for k, v in acc.items() if v})

    def compose(self, A) -> "Polynomial":
        """``p∘A``: substitute ``x -> A x`` for a square matrix ``A``."""
        rows = [list(r) for r in A]
        if len(rows) != self.arity or any(len(r) != self.arity for r in rows):
            raise ValueError(
                f"matrix of shape {len(rows)}x{len(rows[0]) if rows else 0} "
                f"does not act on {self.arity} variables"
            )
        return self.substitute([Polynomial.linear_form(r) for r in rows])

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.arity, {m: c for m, c in self._terms.items() if _mdeg(m) == d})

    def primitive(self) -> "Polynomial":
        """Rescale to integer coefficients with content 1 and positive leading term.

        Only defined for polynomials with rational coefficients.
        """
        if not self._terms:
            return self
        coeffs = list(self._terms.values())
        if any(isinstance(c, GaussianRational) for c in coeffs):
            raise ValueError("primitive() needs rational coefficients")
        den = lcm(*(Fraction(c).denominator for c in coeffs))
        nums = [int(Fraction(c) * den) for c in coeffs]
        g = 0
        for n in nums:
            g = gcd(g, n)
        lead = self.terms()[0][1]
        sign = 1 if lead > 0 else -1
        return self.scale(Fraction(den * sign, g))

    # -- presentation ------------------------------------------------------
    def to_string(self, names=None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.arity)]
        parts = []
        for exps, c in self.terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e
            )
            cs = format_scalar(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if isinstance(c, GaussianRational) else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.arity}, {self.to_string()!r})"

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [[list(e), format_scalar(c)] for e, c in self.terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        return cls(data["arity"], [(tuple(e), parse_scalar(c)) for e, c in data["terms"]])


def compose_linear(p: Polynomial, A) -> Polynomial:
    return p.compose(A)


def evaluate(p: Polynomial, point):
    return p.evaluate(point)


def gradient(p: Polynomial) -> list[Polynomial]:
    return p.gradient()
