"""Sparse multivariate Laurent polynomials with exact rational coefficients.

Exponent vectors are tuples of ints. They are compared by ``lex_key``, which
reads the vector from the last coordinate down: ``u < w`` iff at the largest
index where they differ, ``u`` is smaller. Terms are stored sorted in that
order, so two equal polynomials have identical internal tuples.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]


class DimensionError(ValueError):
    """Operands live in rings with different numbers of variables."""


class DivisibilityError(ArithmeticError):
    """An exact division has no quotient in the ring."""

    def __init__(self, message: str, remainder: "LaurentPolynomial | None" = None):
        super().__init__(message)
        self.remainder = remainder


class EvaluationDomainError(ZeroDivisionError):
    """A zero coordinate would be raised to a negative power."""


def lex_key(e: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(e))


def add_exponents(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def sub_exponents(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def unit_vector(i: int, n: int, scale: int = 1) -> Exponent:
    return tuple(scale if j == i else 0 for j in range(n))


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


class LaurentPolynomial:
    """Immutable element of Q[x1^{+-1}, ..., xn^{+-1}]."""

    __slots__ = ("_n", "_terms", "_index", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | Iterable[tuple[Exponent, object]], n: int):
        if n < 0:
            raise ValueError("number of variables must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise DimensionError(f"exponent {e} does not have length {n}")
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        self._n = n
        self._terms = tuple(sorted(((e, c) for e, c in acc.items() if c != 0),
                                   key=lambda t: lex_key(t[0])))
        self._index = dict(self._terms)
        self._hash = None

    @classmethod
    def _from_dict(cls, acc: dict[Exponent, Fraction], n: int) -> "LaurentPolynomial":
        # trusted fast path: keys already valid, values already Fractions
        obj = cls.__new__(cls)
        obj._n = n
        obj._terms = tuple(sorted(((e, c) for e, c in acc.items() if c != 0),
                                  key=lambda t: lex_key(t[0])))
        obj._index = dict(obj._terms)
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, n: int) -> "LaurentPolynomial":
        return cls({}, n)

    @classmethod
    def constant(cls, c, n: int) -> "LaurentPolynomial":
        return cls({(0,) * n: c}, n)

    @classmethod
    def one(cls, n: int) -> "LaurentPolynomial":
        return cls.constant(1, n)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "LaurentPolynomial":
        exponent = tuple(exponent)
        return cls({exponent: coeff}, len(exponent))

    @classmethod
    def variable(cls, i: int, n: int) -> "LaurentPolynomial":
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for {n} variables")
        return cls.monomial(unit_vector(i, n))

    # accessors

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> tuple[tuple[Exponent, Fraction], ...]:
        """Terms in ascending lex order."""
        return self._terms

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._index.get(tuple(exponent), Fraction(0))

    def exponents(self) -> tuple[Exponent, ...]:
        return tuple(e for e, _ in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(self._terms[0][0]))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self._terms[-1]

    def trailing_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no trailing term")
        return self._terms[0]

    def min_exponents(self) -> Exponent:
        if not self._terms:
            return (0,) * self._n
        return tuple(min(e[i] for e, _ in self._terms) for i in range(self._n))

    def max_exponents(self) -> Exponent:
        if not self._terms:
            return (0,) * self._n
        return tuple(max(e[i] for e, _ in self._terms) for i in range(self._n))

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e, _ in self._terms for x in e)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for _, c in self._terms)

    def has_positive_coefficients(self) -> bool:
        return all(c > 0 for _, c in self._terms)

    # arithmetic

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other._n != self._n:
                raise DimensionError(f"ring with {self._n} variables vs ring with {other._n}")
            return other
        if isinstance(other, (int, Rational)):
            return LaurentPolynomial.constant(other, self._n)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._index)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial._from_dict(acc, self._n)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._from_dict({e: -c for e, c in self._terms}, self._n)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(x + y for x, y in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPolynomial._from_dict(acc, self._n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise DivisibilityError("only monomials can be raised to negative powers")
            (e, c), = self._terms
            return LaurentPolynomial({tuple(x * k for x in e): c ** k}, self._n)
        result = LaurentPolynomial.one(self._n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exponent: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial x^exponent."""
        exponent = tuple(exponent)
        return LaurentPolynomial._from_dict(
            {add_exponents(e, exponent): c for e, c in self._terms}, self._n)

    def scale(self, c) -> "LaurentPolynomial":
        c = Fraction(c)
        return LaurentPolynomial._from_dict({e: c * d for e, d in self._terms}, self._n)

    def __truediv__(self, other):
        return exact_divide(self, other)

    # comparison

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self._n == other._n and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self == LaurentPolynomial.constant(other, self._n)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._terms))
        return self._hash

    def sort_key(self) -> tuple:
        """Total order on polynomials, used to canonicalize unordered collections."""
        return tuple((lex_key(e), c) for e, c in reversed(self._terms))

    # evaluation and rendering

    def evaluate(self, point: Sequence) -> Fraction:
        return evaluate(self, point)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        return render(self, names)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPolynomial({render(self)!r}, n={self._n})"


def add(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    return f + g


def multiply(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    return f * g


def exact_divide(f: LaurentPolynomial, g: LaurentPolynomial, *,
                 polynomial: bool = False) -> LaurentPolynomial:
    """Return q with f == q * g, by lex-leading-term elimination.

    Monomials are units in the Laurent ring, so ``(x2 + 1) / x1`` succeeds.
    With ``polynomial=True`` the quotient must also have nonnegative
    exponents, which is divisibility in the ordinary polynomial ring.
    """
    if not isinstance(g, LaurentPolynomial):
        g = LaurentPolynomial.constant(g, f.n)
    if f.n != g.n:
        raise DimensionError(f"ring with {f.n} variables vs ring with {g.n}")
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    n = f.n
    if not f:
        return LaurentPolynomial.zero(n)
    # quotient exponents are confined to the box fixed by the Newton polytopes
    lo = sub_exponents(f.min_exponents(), g.min_exponents())
    hi = sub_exponents(f.max_exponents(), g.max_exponents())
    lead_g, lead_c = g.leading_term()
    quotient: dict[Exponent, Fraction] = {}
    remainder = dict(f._index)
    while remainder:
        e = max(remainder, key=lex_key)
        q_exp = sub_exponents(e, lead_g)
        if any(q < a or q > b for q, a, b in zip(q_exp, lo, hi)):
            raise DivisibilityError(
                f"{render(f)} is not divisible by {render(g)}",
                LaurentPolynomial._from_dict(remainder, n))
        q_c = remainder[e] / lead_c
        quotient[q_exp] = q_c
        for ge, gc in g._terms:
            k = add_exponents(ge, q_exp)
            v = remainder.get(k, 0) - q_c * gc
            if v:
                remainder[k] = v
            else:
                remainder.pop(k, None)
    q = LaurentPolynomial._from_dict(quotient, n)
    if polynomial and not q.is_polynomial():
        raise DivisibilityError(
            f"{render(f)} is not divisible by {render(g)} in the polynomial ring")
    return q


def evaluate(f: LaurentPolynomial, point: Sequence) -> Fraction:
    """Exact value of f at a rational point."""
    if len(point) != f.n:
        raise DimensionError(f"point has {len(point)} coordinates, ring has {f.n} variables")
    p = [Fraction(x) for x in point]
    total = Fraction(0)
    for e, c in f.terms:
        value = c
        for x, k in zip(p, e):
            if k < 0 and x == 0:
                raise EvaluationDomainError(
                    f"zero coordinate raised to power {k} in {render(f)}")
            if k:
                value *= x ** k
        total += value
    return total


# text grammar: terms lex-descending, "c*x1^a1*x2^a2", rationals as p/q

def _render_monomial(e: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render(f: LaurentPolynomial, names: Sequence[str] | None = None) -> str:
    names = default_names(f.n) if names is None else names
    if not f:
        return "0"
    out = []
    for e, c in reversed(f.terms):
        mono = _render_monomial(e, names)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse(text: str, names: Sequence[str] | int) -> LaurentPolynomial:
    """Inverse of ``render``; ``names`` may be a variable count for x1..xn."""
    if isinstance(names, int):
        names = default_names(names)
    lookup = {name: i for i, name in enumerate(names)}
    n = len(names)
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    # exponents may be negative, so protect "^-" before splitting on signs
    protected = text.replace("^-", "^~")
    pieces = _TERM_SPLIT.split(protected)
    if pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    if len(pieces) % 2:
        raise ValueError(f"malformed polynomial text: {text!r}")
    acc: dict[Exponent, Fraction] = {}
    for sign, body in zip(pieces[::2], pieces[1::2]):
        body = body.replace("^~", "^-").strip()
        if not body:
            raise ValueError(f"malformed polynomial text: {text!r}")
        coeff = Fraction(-1 if sign == "-" else 1)
        exp = [0] * n
        for factor in body.split("*"):
            factor = factor.strip()
            if _NUMBER.match(factor):
                coeff *= Fraction(factor)
                continue
            m = _FACTOR.match(factor)
            if not m or m.group(1) not in lookup:
                raise ValueError(f"unknown factor {factor!r} in {text!r}")
            exp[lookup[m.group(1)]] += int(m.group(2) or 1)
        key = tuple(exp)
        acc[key] = acc.get(key, Fraction(0)) + coeff
    return LaurentPolynomial._from_dict(acc, n)
