"""Exact scalars: rational functions in ``s = q**(1/2)`` over the rationals.

Two layers live here.  :class:`LaurentPolynomial` is a sparse map from
integer exponents of ``s`` to :class:`fractions.Fraction` coefficients, and
:class:`FieldScalar` is a reduced quotient of two of them.  Every value is
immutable and kept in a canonical form, so ``==`` and ``hash`` are structural.

The canonical form of ``num/den`` is:

* ``den`` has no negative exponents and a nonzero constant term,
* ``gcd(num, den) == 1`` as polynomials,
* ``den`` has integer coefficients with content 1 and a positive leading
  coefficient.

Any monomial factor ``s**k`` is carried by the numerator, which may therefore
contain negative exponents.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from .errors import DivisionByZero, NonpositiveParameter, ParseError, PoleAtPoint

__all__ = [
    "LaurentPolynomial",
    "FieldScalar",
    "poly_arith",
    "poly_gcd",
    "scalar_arith",
    "canonicalize",
    "evaluate",
    "evaluate_q",
    "to_float",
    "parse_scalar",
    "rational_sqrt",
    "as_rational",
    "S",
    "Q",
    "ZERO",
    "ONE",
]

Number = Union[int, Fraction]


# ---------------------------------------------------------------------------
# dense polynomial helpers (ascending coefficient lists, no trailing zeros)
# ---------------------------------------------------------------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod(a: list, b: list) -> tuple[list, list]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [], _trim(a)
    quot = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lead
        quot[k] = c
        if c:
            for i, bc in enumerate(b):
                a[k + i] -= c * bc
    return _trim(quot), _trim(a[:db])


def _primitive(p: list) -> list:
    """Scale ``p`` to integer coefficients with content 1 and positive lead."""
    if not p:
        return []
    lcm = 1
    for c in p:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [Fraction(c, g) for c in ints]


def poly_gcd(a: list, b: list) -> list:
    """Primitive gcd of two dense polynomials with rational coefficients.

    Euclid's algorithm where each remainder is replaced by its primitive part,
    which keeps coefficient growth in check.  The result has integer
    coefficients, content 1 and a positive leading coefficient; ``gcd(0, 0)``
    is the empty list.
    """
    a, b = _primitive(_trim(list(a))), _primitive(_trim(list(b)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        _, r = _divmod(a, b)
        a, b = b, _primitive(r)
    return a


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPolynomial:
    """Finite sum ``sum_k c_k s**k`` with rational ``c_k`` and integer ``k``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, Number], Iterable[tuple[int, Number]], None] = None):
        acc: dict[int, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in items:
                acc[int(e)] = acc.get(int(e), Fraction(0)) + Fraction(c)
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        self._hash = None

    @classmethod
    def _from_sorted(cls, terms: tuple) -> "LaurentPolynomial":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff: Number = 1, exp: int = 0) -> "LaurentPolynomial":
        return cls({exp: coeff})

    @classmethod
    def from_dense(cls, coeffs: Iterable[Number], shift: int = 0) -> "LaurentPolynomial":
        return cls((i + shift, c) for i, c in enumerate(coeffs))

    # -- inspection --------------------------------------------------------
    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[-1][0]

    def coeff(self, exp: int) -> Fraction:
        for e, c in self._terms:
            if e == exp:
                return c
        return Fraction(0)

    def leading_coeff(self) -> Fraction:
        return self._terms[-1][1]

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def dense(self) -> tuple[int, list]:
        """Return ``(shift, coeffs)`` with ``self == s**shift * sum(coeffs[i] s**i)``."""
        if not self._terms:
            return 0, []
        lo = self._terms[0][0]
        out = [Fraction(0)] * (self._terms[-1][0] - lo + 1)
        for e, c in self._terms:
            out[e - lo] = c
        return lo, out

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial._from_sorted(tuple((e + k, c) for e, c in self._terms))

    def scale(self, c: Number) -> "LaurentPolynomial":
        c = Fraction(c)
        if c == 0:
            return LaurentPolynomial()
        return LaurentPolynomial._from_sorted(tuple((e, v * c) for e, v in self._terms))

    def evaluate(self, x):
        """Value at ``s = x``; ``x`` may be a Fraction or a float."""
        return sum((c * x**e for e, c in self._terms), 0 * x)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._from_sorted(tuple((e, -c) for e, c in self._terms))

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers leave the polynomial ring")
        result = LaurentPolynomial.monomial(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPolynomial({_render_poly(self, 's')!r})"

    def __str__(self):
        return _render_poly(self, "s")


def _as_laurent(x):
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPolynomial.monomial(x, 0)
    return NotImplemented


def poly_arith(a: LaurentPolynomial, b: LaurentPolynomial, op: str) -> LaurentPolynomial:
    """Apply ``op`` (one of ``"add"``, ``"sub"``, ``"mul"``) to two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

_POLY_ONE = LaurentPolynomial.monomial(1)
_POLY_ZERO = LaurentPolynomial()


def _reduce(num: LaurentPolynomial, den: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return _POLY_ZERO, _POLY_ONE
    # move every monomial factor of the denominator into the numerator
    lo = den.min_exp
    _, d = den.dense()
    k, n = num.dense()
    k -= lo
    if len(d) > 1:
        g = poly_gcd(n, d)
        if len(g) > 1:
            n, rn = _divmod(n, g)
            d, rd = _divmod(d, g)
            assert not rn and not rd
    prim = _primitive(d)
    factor = prim[-1] / d[-1]
    n = [c * factor for c in n]
    return LaurentPolynomial.from_dense(n, k), LaurentPolynomial.from_dense(prim)


def canonicalize(num: LaurentPolynomial, den: LaurentPolynomial) -> "FieldScalar":
    """Build the canonical :class:`FieldScalar` for ``num/den``.

    Raises :class:`DivisionByZero` when ``den`` is the zero polynomial.
    """
    n, d = _reduce(num, den)
    return FieldScalar._raw(n, d)


class FieldScalar:
    """Element of the field Q(s) held as a canonical reduced fraction.

    Construct from integers, fractions, Laurent polynomials or strings::

        >>> FieldScalar(1) / (1 + S**-4)
        FieldScalar('s^4/(s^4 + 1)')
        >>> FieldScalar("q - q^-1") == S**2 - S**-2
        True
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, str):
            if den != 1:
                raise TypeError("string input takes no separate denominator")
            parsed = parse_scalar(num)
            n, d = parsed.num, parsed.den
        elif isinstance(num, FieldScalar):
            if den != 1:
                parsed = num / FieldScalar(den)
                n, d = parsed.num, parsed.den
            else:
                n, d = num.num, num.den
        else:
            n, d = _reduce(_to_laurent(num), _to_laurent(den))
        self.num = n
        self.den = d
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPolynomial, den: LaurentPolynomial) -> "FieldScalar":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "FieldScalar":
        if isinstance(x, FieldScalar):
            return x
        return cls(x)

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.den == _POLY_ONE and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.coeff(0)

    def has_even_exponents(self) -> bool:
        return all(e % 2 == 0 for p in (self.num, self.den) for e, _ in p.items())

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            if self.den == _POLY_ONE:
                return FieldScalar._raw(self.num + other.num, _POLY_ONE)
            return canonicalize(self.num + other.num, self.den)
        return canonicalize(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den == _POLY_ONE and other.den == _POLY_ONE:
            return FieldScalar._raw(self.num * other.num, _POLY_ONE)
        return canonicalize(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldScalar":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return canonicalize(self.den, self.num)

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise DivisionByZero(f"division of {self} by zero")
        return canonicalize(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return FieldScalar._raw(*_reduce(self.num**n, self.den**n)) if n else ONE

    def __eq__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    # -- evaluation --------------------------------------------------------
    def evaluate(self, s0, physical: bool = False) -> Fraction:
        return evaluate(self, s0, physical=physical)

    def evaluate_q(self, q) -> Fraction:
        return evaluate_q(self, q)

    def to_float(self, q: float) -> float:
        return to_float(self, q)

    def subs_s(self, s0) -> "FieldScalar":
        """Specialize at ``s = s0`` and return the constant as a FieldScalar."""
        return FieldScalar(evaluate(self, s0))

    # -- rendering ---------------------------------------------------------
    def to_string(self, var: str = "s") -> str:
        """Render as ``num/(den)``; ``var="q"`` writes exponents in ``q = s^2``."""
        if var not in ("s", "q"):
            raise ValueError("var must be 's' or 'q'")
        num = _render_poly(self.num, var)
        if self.den == _POLY_ONE:
            return num
        if len(self.num._terms) > 1:
            num = f"({num})"
        return f"{num}/({_render_poly(self.den, var)})"

    def to_q_string(self) -> str:
        return self.to_string("q")

    def __str__(self):
        return self.to_string("s")

    def __repr__(self):
        return f"FieldScalar({self.to_string('s')!r})"


def _to_laurent(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPolynomial.monomial(x, 0)
    if isinstance(x, Rational):
        return LaurentPolynomial.monomial(Fraction(x.numerator, x.denominator), 0)
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def _as_scalar(x):
    if isinstance(x, FieldScalar):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, (int, Fraction)):
        return FieldScalar._raw(LaurentPolynomial.monomial(x, 0), _POLY_ONE)
    if isinstance(x, LaurentPolynomial):
        return FieldScalar._raw(x, _POLY_ONE)
    return NotImplemented


def scalar_arith(a: FieldScalar, b: FieldScalar, op: str) -> FieldScalar:
    """Apply ``op`` (``"add"``, ``"sub"``, ``"mul"``, ``"div"``) to two scalars."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown scalar operation {op!r}")


def as_rational(x) -> Fraction:
    """Exact rational from an int, Fraction, ``"p/q"`` string or decimal string.

    Floats are converted through their shortest decimal repr, so ``0.1``
    becomes ``1/10`` rather than the binary expansion.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise ParseError(f"not a rational number: {x!r}") from exc
    raise TypeError(f"cannot interpret {x!r} as a rational")


def evaluate(x: FieldScalar, s0, physical: bool = False) -> Fraction:
    """Exact value of ``x`` at ``s = s0``.

    ``physical=True`` marks ``s0`` as a physical point, which requires
    ``s0 > 0``.  Raises :class:`PoleAtPoint` when the denominator vanishes.
    Canonical forms are reduced, so a vanishing denominator is a genuine pole.
    """
    s0 = as_rational(s0)
    if physical and s0 <= 0:
        raise NonpositiveParameter(f"s0 = {s0} is not positive")
    if s0 == 0 and not x.num.is_zero() and x.num.min_exp < 0:
        raise PoleAtPoint(f"{x} has a pole at s = 0")
    d = x.den.evaluate(s0)
    if d == 0:
        raise PoleAtPoint(f"{x} has a pole at s = {s0}")
    return Fraction(x.num.evaluate(s0)) / d


def evaluate_q(x: FieldScalar, q) -> Fraction:
    """Exact value of ``x`` at a rational ``q > 0``.

    Works when ``x`` only involves even powers of ``s`` or when ``sqrt(q)`` is
    rational; otherwise the value is irrational and ``ValueError`` is raised.
    """
    q = as_rational(q)
    if q <= 0:
        raise NonpositiveParameter(f"q = {q} is not positive")
    s0 = rational_sqrt(q)
    if s0 is not None:
        return evaluate(x, s0)
    if not x.has_even_exponents():
        raise ValueError(f"{x} is irrational at q = {q}")
    num = sum((c * q ** (e // 2) for e, c in x.num.items()), Fraction(0))
    den = sum((c * q ** (e // 2) for e, c in x.den.items()), Fraction(0))
    if den == 0:
        raise PoleAtPoint(f"{x} has a pole at q = {q}")
    return num / den


def to_float(x: FieldScalar, q: float) -> float:
    """Floating value of ``x`` at ``s = sqrt(q)`` for real ``q > 0``."""
    if not q > 0:
        raise NonpositiveParameter(f"q = {q} is not positive")
    s = math.sqrt(q)
    num = math.fsum(float(c) * s**e for e, c in x.num.items())
    den = math.fsum(float(c) * s**e for e, c in x.den.items())
    if den == 0.0:
        raise PoleAtPoint(f"{x} has a pole at q = {q}")
    return num / den


def rational_sqrt(x) -> Fraction | None:
    """Exact square root of a nonnegative rational, or ``None`` if irrational."""
    x = as_rational(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# rendering and parsing
# ---------------------------------------------------------------------------

def _render_exp(e: int, var: str) -> str:
    if var == "s":
        return "s" if e == 1 else f"s^{e}"
    if e % 2 == 0:
        k = e // 2
        return "q" if k == 1 else f"q^{k}"
    return f"q^({e}/2)"


def _render_poly(p: LaurentPolynomial, var: str) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in reversed(p._terms):
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = str(a)
        elif a == 1:
            body = _render_exp(e, var)
        else:
            body = f"{a}*{_render_exp(e, var)}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([sq])|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> FieldScalar:
        val = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r} in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        tok = self.peek()
        is_q = tok == "q"
        base = self.atom()
        if self.peek() != "^":
            return base
        self.take("^")
        exp = self.exponent()
        if is_q:
            exp = exp * 2
        if exp.denominator != 1:
            raise ParseError(f"non-integer exponent in {self.text!r}")
        if is_q:
            return FieldScalar._raw(LaurentPolynomial.monomial(1, int(exp)), _POLY_ONE)
        return base ** int(exp)

    def exponent(self) -> Fraction:
        sign = 1
        if self.peek() in ("-", "+"):
            sign = -1 if self.take() == "-" else 1
        if self.peek() == "(":
            self.take("(")
            inner = 1
            if self.peek() in ("-", "+"):
                inner = -1 if self.take() == "-" else 1
            val = Fraction(int(self._int()))
            if self.peek() == "/":
                self.take("/")
                val /= int(self._int())
            self.take(")")
            return sign * inner * val
        return sign * Fraction(int(self._int()))

    def _int(self):
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected integer, got {tok!r} in {self.text!r}")
        return tok

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return FieldScalar._raw(LaurentPolynomial.monomial(int(tok), 0), _POLY_ONE)
        if tok == "s":
            return S
        if tok == "q":
            return Q
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


def parse_scalar(text: str) -> FieldScalar:
    """Parse the textual form produced by :meth:`FieldScalar.to_string`.

    Both variables are accepted; ``q`` stands for ``s^2`` and may carry
    half-integer exponents written ``q^(k/2)``.
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError(f"empty scalar expression {text!r}")
    return _Parser(text).parse()


ZERO = FieldScalar._raw(_POLY_ZERO, _POLY_ONE)
ONE = FieldScalar._raw(_POLY_ONE, _POLY_ONE)
S = FieldScalar._raw(LaurentPolynomial.monomial(1, 1), _POLY_ONE)
Q = FieldScalar._raw(LaurentPolynomial.monomial(1, 2), _POLY_ONE)
