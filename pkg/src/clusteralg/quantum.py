"""Quantum tori over Z[v, v^-1] with v^2 = t, quantum seeds and their mutation.

Normalized monomials multiply as X^a X^b = v^(a^T L b) X^(a+b), so
x_i x_j = t^(l_ij) x_j x_i on generators. Quantum seeds keep their cluster
variables as elements of the initial torus; mutation is the exchange relation
followed by exact left division.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .laurent import (
    DimensionError,
    DivisibilityError,
    LaurentPolynomial,
    add_exponents,
    default_names,
    lex_key,
    sub_exponents,
    unit_vector,
)
from .linalg import Matrix, as_matrix, permute
from .poisson import (
    SCHEMA,
    CheckReport,
    CompatiblePair,
    HypothesisError,
    PoissonMatrix,
    PreconditionError,
    _as_poisson,
    _separating_index,
    chains_from_successors,
    is_compatible,
    pair_mutate,
)
from .seeds import ExchangeMatrix, Refusal, exponent_split, is_acyclic, matrix_mutate

Exponent = tuple[int, ...]


class QBinomialWarning(UserWarning):
    pass


class UnsupportedArgumentError(ValueError):
    pass


class VPoly:
    """Integer Laurent polynomial in v."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for k, c in items:
            if int(c) != c:
                raise ValueError(f"non-integer coefficient {c}")
            acc[int(k)] = acc.get(int(k), 0) + int(c)
        self._c = {k: c for k, c in sorted(acc.items()) if c}

    @classmethod
    def v(cls, k: int = 1) -> "VPoly":
        return cls({k: 1})

    @classmethod
    def const(cls, c: int) -> "VPoly":
        return cls({0: c})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def _coerce(self, other) -> "VPoly":
        return other if isinstance(other, VPoly) else VPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        return VPoly(list(self._c.items()) + list(other._c.items()))

    __radd__ = __add__

    def __neg__(self):
        return VPoly({k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return VPoly([(a + b, c * d) for a, c in self._c.items() for b, d in other._c.items()])

    __rmul__ = __mul__

    def shift(self, k: int) -> "VPoly":
        return VPoly({a + k: c for a, c in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = VPoly.const(other)
        return isinstance(other, VPoly) and self._c == other._c

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def lowest(self) -> int:
        return min(self._c)

    def highest(self) -> int:
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def divexact(self, other: "VPoly") -> "VPoly":
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero in Z[v, v^-1]")
        if not self:
            return VPoly()
        lo = self.lowest() - other.lowest()
        hi = self.highest() - other.highest()
        top, top_c = other.highest(), other._c[other.highest()]
        rem = dict(self._c)
        quot = {}
        while rem:
            k = max(rem)
            qk = k - top
            if qk < lo or qk > hi or rem[k] % top_c:
                raise DivisibilityError(f"{self} is not divisible by {other} in Z[v, v^-1]")
            qc = rem[k] // top_c
            quot[qk] = qc
            for b, d in other._c.items():
                val = rem.get(b + qk, 0) - qc * d
                if val:
                    rem[b + qk] = val
                else:
                    rem.pop(b + qk, None)
        return VPoly(quot)

    def bar(self) -> "VPoly":
        return VPoly({-k: c for k, c in self._c.items()})

    def at_one(self) -> int:
        return sum(self._c.values())

    def derivative_at_one(self) -> int:
        return sum(k * c for k, c in self._c.items())

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self._c.values())

    def to_json(self) -> list[list[int]]:
        return [[k, c] for k, c in self._c.items()]

    @classmethod
    def from_json(cls, data) -> "VPoly":
        return cls([(k, c) for k, c in data])

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, c in sorted(self._c.items(), reverse=True):
            mono = "" if k == 0 else ("v" if k == 1 else f"v^{k}")
            if not mono:
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"VPoly({self})"


def q_binomial(c: int, p: int, weight: int = 1) -> VPoly:
    """Balanced Gaussian binomial [c choose p] at base u = v^weight."""
    if c < 0 or p < 0 or weight <= 0:
        raise ValueError("q_binomial needs c, p >= 0 and weight > 0")
    if p > c:
        warnings.warn(f"q_binomial({c}, {p}) with p > c is zero by convention", QBinomialWarning)
        return VPoly()
    num, den = VPoly.const(1), VPoly.const(1)
    for s in range(1, p + 1):
        a = (c - s + 1) * weight
        num = num * VPoly({a: 1, -a: -1})
        den = den * VPoly({s * weight: 1, -s * weight: -1})
    return num.divexact(den)


class QuantumTorusElement:
    """Finite sum of normalized monomials X^e with coefficients in Z[v, v^-1]."""

    __slots__ = ("_terms", "_lam")

    def __init__(self, terms: Mapping[Sequence[int], VPoly | int] | Iterable, lam: PoissonMatrix):
        lam = _as_poisson(lam)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, VPoly] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != lam.n:
                raise DimensionError(f"exponent {e} in a rank-{lam.n} torus")
            c = c if isinstance(c, VPoly) else VPoly.const(c)
            acc[e] = acc[e] + c if e in acc else c
        self._terms = {e: acc[e] for e in sorted(acc, key=lex_key) if acc[e]}
        self._lam = lam

    @classmethod
    def _raw(cls, terms: dict, lam: PoissonMatrix) -> "QuantumTorusElement":
        obj = cls.__new__(cls)
        obj._terms = {e: terms[e] for e in sorted(terms, key=lex_key) if terms[e]}
        obj._lam = lam
        return obj

    @classmethod
    def zero(cls, lam) -> "QuantumTorusElement":
        return cls({}, lam)

    @classmethod
    def monomial(cls, e: Sequence[int], lam, coeff: VPoly | int = 1) -> "QuantumTorusElement":
        return cls({tuple(e): coeff}, lam)

    @classmethod
    def one(cls, lam) -> "QuantumTorusElement":
        lam = _as_poisson(lam)
        return cls.monomial((0,) * lam.n, lam)

    @classmethod
    def generator(cls, i: int, lam) -> "QuantumTorusElement":
        lam = _as_poisson(lam)
        return cls.monomial(unit_vector(i, lam.n), lam)

    @property
    def lam(self) -> PoissonMatrix:
        return self._lam

    @property
    def n(self) -> int:
        return self._lam.n

    @property
    def terms(self) -> tuple[tuple[Exponent, VPoly], ...]:
        return tuple(self._terms.items())

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, e: Sequence[int]) -> VPoly:
        return self._terms.get(tuple(e), VPoly())

    def exponents(self) -> tuple[Exponent, ...]:
        return tuple(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading_term(self) -> tuple[Exponent, VPoly]:
        e = max(self._terms, key=lex_key)
        return e, self._terms[e]

    def _check(self, other: "QuantumTorusElement"):
        if not isinstance(other, QuantumTorusElement):
            raise TypeError(f"cannot combine a quantum torus element with {type(other).__name__}")
        if other._lam != self._lam:
            raise ValueError("commutation matrices differ")

    def __add__(self, other):
        self._check(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc[e] + c if e in acc else c
        return QuantumTorusElement._raw(acc, self._lam)

    def __neg__(self):
        return QuantumTorusElement._raw({e: -c for e, c in self._terms.items()}, self._lam)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, VPoly)):
            return self.scale(other)
        return qt_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, VPoly)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: VPoly | int) -> "QuantumTorusElement":
        c = c if isinstance(c, VPoly) else VPoly.const(c)
        return QuantumTorusElement._raw({e: c * x for e, x in self._terms.items()}, self._lam)

    def __eq__(self, other):
        return (isinstance(other, QuantumTorusElement) and self._lam == other._lam
                and self._terms == other._terms)

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def specialize(self) -> LaurentPolynomial:
        """Image under v -> 1."""
        return LaurentPolynomial({e: c.at_one() for e, c in self._terms.items()}, self.n)

    def v_derivative_at_one(self) -> LaurentPolynomial:
        return LaurentPolynomial({e: c.derivative_at_one() for e, c in self._terms.items()}, self.n)

    def bar_coefficients(self) -> "QuantumTorusElement":
        """Apply v -> v^-1 to every coefficient of the normalized expansion."""
        return QuantumTorusElement._raw({e: c.bar() for e, c in self._terms.items()}, self._lam)

    def is_bar_symmetric(self) -> bool:
        return self.bar_coefficients() == self

    def conjugate(self, i: int) -> "QuantumTorusElement":
        """x_i f x_i^-1; the X^w term picks up t^(l_i . w)."""
        return QuantumTorusElement._raw(
            {e: c.shift(2 * self._lam.row_weight(i, e)) for e, c in self._terms.items()}, self._lam)

    def to_json(self) -> list:
        return [[list(e), c.to_json()] for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, data, lam) -> "QuantumTorusElement":
        return cls([(tuple(e), VPoly.from_json(c)) for e, c in data], lam)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        return render_quantum(self, names)

    def __str__(self):
        return render_quantum(self)

    def __repr__(self):
        return f"QuantumTorusElement({render_quantum(self)!r})"


def qt_multiply(f: QuantumTorusElement, g: QuantumTorusElement) -> QuantumTorusElement:
    f._check(g)
    lam = f.lam
    acc: dict[Exponent, VPoly] = {}
    for a, c in f:
        for b, d in g:
            e = add_exponents(a, b)
            term = (c * d).shift(lam.pairing(a, b))
            acc[e] = acc[e] + term if e in acc else term
    return QuantumTorusElement._raw(acc, lam)


def left_divide(f: QuantumTorusElement, g: QuantumTorusElement) -> QuantumTorusElement:
    """q with g * q == f, by lex-leading-term elimination."""
    f._check(g)
    if not g:
        raise ZeroDivisionError("left division by zero")
    lam = f.lam
    if not f:
        return QuantumTorusElement.zero(lam)
    lo = sub_exponents(_min_exps(f), _min_exps(g))
    hi = sub_exponents(_max_exps(f), _max_exps(g))
    lead_g, lead_c = g.leading_term()
    rem = dict(f._terms)
    quot: dict[Exponent, VPoly] = {}
    while rem:
        e = max(rem, key=lex_key)
        q_exp = sub_exponents(e, lead_g)
        if any(q < a or q > b for q, a, b in zip(q_exp, lo, hi)):
            raise DivisibilityError(f"{render_quantum(f)} is not left divisible by {render_quantum(g)}")
        q_c = rem[e].divexact(lead_c.shift(lam.pairing(lead_g, q_exp)))
        quot[q_exp] = q_c
        for ge, gc in g:
            k = add_exponents(ge, q_exp)
            val = rem.get(k, VPoly()) - (gc * q_c).shift(lam.pairing(ge, q_exp))
            if val:
                rem[k] = val
            else:
                rem.pop(k, None)
    return QuantumTorusElement._raw(quot, lam)


def _min_exps(f: QuantumTorusElement) -> Exponent:
    return tuple(min(col) for col in zip(*f.exponents()))


def _max_exps(f: QuantumTorusElement) -> Exponent:
    return tuple(max(col) for col in zip(*f.exponents()))


def render_quantum(f: QuantumTorusElement, names: Sequence[str] | None = None) -> str:
    names = names or default_names(f.n)
    if not f:
        return "0"
    pieces = []
    for e, c in sorted(f, key=lambda t: lex_key(t[0]), reverse=True):
        mono = "*".join(
            (names[i] if x == 1 else f"{names[i]}^{x}") for i, x in enumerate(e) if x)
        sign = "+"
        if c.is_monomial():
            (k, a), = c.coeffs.items()
            sign = "-" if a < 0 else "+"
            coeff = str(VPoly({k: abs(a)}))
            if coeff == "1" and mono:
                coeff = ""
        else:
            coeff = f"({c})"
        body = "*".join(p for p in (coeff, mono) if p)
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# quantum seeds

@dataclass(frozen=True)
class QuantumSeed:
    lam: PoissonMatrix
    matrix: ExchangeMatrix
    variables: tuple[QuantumTorusElement, ...]
    history: tuple[int, ...] = field(default=(), compare=False)
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.lam.n != self.matrix.n or len(self.variables) != self.matrix.n:
            raise DimensionError("Lambda, B and the variable list disagree on n")
        if not self.names:
            object.__setattr__(self, "names", default_names(self.matrix.n))

    @classmethod
    def initial(cls, b, lam, names: Sequence[str] | None = None, *, check: bool = True) -> "QuantumSeed":
        b = b if isinstance(b, ExchangeMatrix) else ExchangeMatrix.from_rows(b)
        lam = _as_poisson(lam)
        if check:
            pair = is_compatible(b, lam)
            if not pair:
                raise PreconditionError(f"(B, Lambda) is not compatible: {pair.reason} at {pair.witness}")
        variables = tuple(QuantumTorusElement.generator(i, lam) for i in range(lam.n))
        return cls(lam, b, variables, (), tuple(names) if names else ())

    @property
    def m(self) -> int:
        return self.matrix.m

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def torus(self) -> PoissonMatrix:
        """Commutation matrix of the initial torus the variables live in."""
        return self.variables[0].lam

    @property
    def pair(self) -> CompatiblePair | Refusal:
        return is_compatible(self.matrix, self.lam)

    @property
    def d(self) -> tuple[int, ...]:
        pair = self.pair
        if not pair:
            raise PreconditionError(f"(B, Lambda) is not compatible: {pair.reason}")
        return pair.d

    def mutate(self, k: int) -> "QuantumSeed":
        return quantum_mutate(self, k)

    def mutate_sequence(self, ks: Sequence[int]) -> "QuantumSeed":
        seed = self
        for k in ks:
            seed = quantum_mutate(seed, k)
        return seed


def frame_monomial(seed: QuantumSeed, c: Sequence[int]) -> QuantumTorusElement:
    c = tuple(int(x) for x in c)
    if len(c) != seed.n:
        raise DimensionError(f"exponent of length {len(c)} for a rank-{seed.n} seed")
    if any(x < 0 for x in c):
        raise UnsupportedArgumentError(f"frame monomial with negative exponent {c}")
    correction = -sum(c[i] * c[j] * seed.lam[i, j]
                      for i in range(seed.n) for j in range(i + 1, seed.n))
    out = QuantumTorusElement.one(seed.torus).scale(VPoly.v(correction))
    for i, x in enumerate(c):
        for _ in range(x):
            out = out * seed.variables[i]
    return out


def exchange_terms(seed: QuantumSeed, k: int) -> tuple[QuantumTorusElement, QuantumTorusElement, int, int]:
    """(M(u+), M(u-), alpha, beta) with Y_k X_k' = v^alpha M(u+) + v^beta M(u-)."""
    plus, minus = exponent_split(seed.matrix.row(k))
    alpha = seed.lam.row_weight(k, plus)
    beta = seed.lam.row_weight(k, minus)
    return frame_monomial(seed, plus), frame_monomial(seed, minus), alpha, beta


def quantum_mutate(seed: QuantumSeed, k: int) -> QuantumSeed:
    if not 0 <= k < seed.m:
        raise IndexError(f"mutation index {k + 1} out of range for m={seed.m}")
    pair = seed.pair
    if not pair:
        raise PreconditionError(f"(B, Lambda) is not compatible: {pair.reason} at {pair.witness}")
    mp, mm, alpha, beta = exchange_terms(seed, k)
    rhs = mp.scale(VPoly.v(alpha)) + mm.scale(VPoly.v(beta))
    new_var = left_divide(rhs, seed.variables[k])
    new_pair = pair_mutate(pair, k, 1)
    variables = seed.variables[:k] + (new_var,) + seed.variables[k + 1:]
    return QuantumSeed(new_pair.lam, matrix_mutate(seed.matrix, k), variables,
                       seed.history + (k,), seed.names)


def toric_frame_image(seed: QuantumSeed, k: int, c: Sequence[int], eps: int = 1) -> QuantumTorusElement:
    """M_k(c) = sum_p [c_k choose p]_{v^d_k} M(E_eps c + eps p b^k), in the initial torus.

    E_eps c carries -c_k in slot k, so each frame monomial is written as
    Y_k^(-c_k) times a nonnegative one and Y_k^c_k is divided out on the left.
    """
    if eps not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not 0 <= k < seed.m:
        raise IndexError(f"mutation index {k + 1} out of range for m={seed.m}")
    c = tuple(int(x) for x in c)
    if any(x < 0 for x in c):
        raise UnsupportedArgumentError(f"toric frame image needs a nonnegative exponent, got {c}")
    n = seed.n
    row = seed.matrix.row(k)
    weight = seed.d[k]
    ck = c[k]
    ec = [c[i] + ck * max(0, -eps * row[i]) if i != k else -ck for i in range(n)]
    total = QuantumTorusElement.zero(seed.torus)
    for p in range(ck + 1):
        a = tuple(ec[i] + eps * p * row[i] for i in range(n))
        shifted = tuple(a[i] + (ck if i == k else 0) for i in range(n))
        if any(x < 0 for x in shifted):
            raise UnsupportedArgumentError(f"exponent {a} of the frame sum is not admissible")
        corr = ck * seed.lam.row_weight(k, a)
        total = total + frame_monomial(seed, shifted).scale(q_binomial(ck, p, weight).shift(corr))
    power = frame_monomial(seed, unit_vector(k, n, ck))
    return left_divide(total, power)


def quasi_commutation_matrix(variables: Sequence[QuantumTorusElement]) -> PoissonMatrix | Refusal:
    """Exponents c_ij with Y_i Y_j = t^c_ij Y_j Y_i, or a refusal naming the pair."""
    n = len(variables)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            left = variables[i] * variables[j]
            right = variables[j] * variables[i]
            e, a = left.leading_term()
            b = right.coefficient(e)
            try:
                ratio = a.divexact(b) if b else None
            except DivisibilityError:
                ratio = None
            if ratio is None or not ratio.is_monomial() or ratio.coeffs != {ratio.lowest(): 1} \
                    or ratio.lowest() % 2 or left != right.scale(ratio):
                return Refusal("variables do not quasi-commute", (i, j))
            out[i][j] = ratio.lowest() // 2
            out[j][i] = -out[i][j]
    return PoissonMatrix(as_matrix(out))


# extraction

@dataclass(frozen=True)
class QuantumExtractionStep:
    index: int
    scalar: int
    before: QuantumTorusElement
    after: QuantumTorusElement


@dataclass(frozen=True)
class QuantumExtractionTrace:
    start: QuantumTorusElement
    steps: tuple[QuantumExtractionStep, ...]
    result: Exponent

    @property
    def final(self) -> QuantumTorusElement:
        return self.steps[-1].after if self.steps else self.start


def quantum_extract_monomial(f: QuantumTorusElement) -> QuantumExtractionTrace:
    """Reduce f to a monomial in the two-sided ideal it generates.

    Each step replaces g by t^(l_i . w) g - x_i g x_i^-1 with w the largest
    exponent in ordinary lexicographic order, which kills the X^w term and
    keeps the next one.
    """
    if not f:
        raise PreconditionError("cannot extract a monomial from zero")
    lam = f.lam
    if lam.rank() != lam.n:
        raise PreconditionError(f"commutation matrix has rank {lam.rank()} < {lam.n}")
    g = f
    steps = []
    while len(g) > 1:
        w, w2 = sorted(g.exponents(), reverse=True)[:2]
        i = _separating_index(lam, w, w2)
        c = lam.row_weight(i, w)
        nxt = g.scale(VPoly.v(2 * c)) - g.conjugate(i)
        steps.append(QuantumExtractionStep(i, c, g, nxt))
        g = nxt
    (result, _), = g.terms
    return QuantumExtractionTrace(f, tuple(steps), result)


def check_quantum_extraction(trace: QuantumExtractionTrace) -> bool:
    """Re-verify each step by honest multiplication with x_i and x_i^-1."""
    current = trace.start
    lam = current.lam
    for step in trace.steps:
        if step.before != current:
            return False
        x = QuantumTorusElement.generator(step.index, lam)
        x_inv = QuantumTorusElement.monomial(unit_vector(step.index, lam.n, -1), lam)
        expected = current.scale(VPoly.v(2 * step.scalar)) - x * current * x_inv
        if step.after != expected or not step.after or len(step.after) >= len(current):
            return False
        current = step.after
    return current.is_monomial() and current.exponents()[0] == tuple(trace.result)


# descent certificates

@dataclass(frozen=True)
class QuantumDescentStep:
    index: int
    y: QuantumTorusElement
    plus: QuantumTorusElement
    minus: QuantumTorusElement
    alpha: int
    beta: int
    xy: QuantumTorusElement
    yx: QuantumTorusElement
    successors: tuple[int, ...]

    @property
    def t_exponent(self) -> int:
        """x_i y_i and y_i x_i are independent iff alpha != beta."""
        return self.alpha - self.beta


@dataclass(frozen=True)
class QuantumDescentCertificate:
    permutation: tuple[int, ...]
    B: Matrix
    lam: Matrix
    steps: tuple[QuantumDescentStep, ...]
    chains: dict = field(compare=False)
    names: tuple[str, ...] = ()

    def to_json(self) -> dict:
        names = self.names
        return {
            "schema": SCHEMA,
            "kind": "quantum-descent",
            "names": list(names),
            "permutation": [p + 1 for p in self.permutation],
            "B": [list(r) for r in self.B],
            "Lambda": [list(r) for r in self.lam],
            "steps": [
                {
                    "index": s.index + 1,
                    "y": {"text": render_quantum(s.y, names), "terms": s.y.to_json()},
                    "m_plus": list(s.plus.exponents()[0]),
                    "m_minus": list(s.minus.exponents()[0]),
                    "alpha": s.alpha,
                    "beta": s.beta,
                    "t_exponent": s.t_exponent,
                    "xy": render_quantum(s.xy, names),
                    "yx": render_quantum(s.yx, names),
                    "successors": [h + 1 for h in s.successors],
                }
                for s in self.steps
            ],
            "chains": {str(i + 1): [[h + 1 for h in path] for path in paths]
                       for i, paths in self.chains.items()},
        }


def quantum_descent_certificate(seed: QuantumSeed) -> QuantumDescentCertificate:
    """Quantum analogue of the Poisson descent certificate.

    Works in the seed's own torus. If x_i lies in a two-sided ideal I then so
    do x_i y_i = v^a M(u+) + v^b M(u-) and y_i x_i = v^-a M(u+) + v^-b M(u-);
    v^a y_i x_i - v^-a x_i y_i = (v^(a-b) - v^(b-a)) M(u-), which isolates
    the lex-smaller monomial M(u-) as soon as a != b.
    """
    b = seed.matrix
    if b.m != b.n:
        raise HypothesisError("trivial coefficients", f"B is {b.m}x{b.n}, frozen variables present")
    acyc = is_acyclic(b)
    if not acyc:
        raise HypothesisError("acyclic", f"directed cycle through indices {[i + 1 for i in acyc.cycle]}")
    order = acyc.ordering
    nb = ExchangeMatrix(permute(b.entries, order, order), tuple(b.symmetrizer[i] for i in order))
    nlam = PoissonMatrix(permute(seed.lam.entries, order, order))
    local = QuantumSeed.initial(nb, nlam, tuple(seed.names[i] for i in order), check=False)
    n = nb.n
    steps = []
    for i in range(n):
        mp, mm, alpha, beta = exchange_terms(local, i)
        if alpha == beta:
            raise HypothesisError(
                "genericity", f"x_i y_i and y_i x_i are proportional at step {order[i] + 1} "
                              f"(t-exponent 0)", order[i])
        x = local.variables[i]
        y = left_divide(mp.scale(VPoly.v(alpha)) + mm.scale(VPoly.v(beta)), x)
        succ = tuple(h for h in range(n) if mm.exponents()[0][h] > 0)
        steps.append(QuantumDescentStep(i, y, mp, mm, alpha, beta, x * y, y * x, succ))
    pair = is_compatible(nb, nlam)
    if not pair:
        i, j, val = pair.witness
        raise HypothesisError("compatible pair",
                              f"{pair.reason}: entry ({order[i] + 1}, {order[j] + 1}) is {val}")
    chains = chains_from_successors([s.successors for s in steps])
    return QuantumDescentCertificate(tuple(order), nb.entries, nlam.entries, tuple(steps), chains,
                                     local.names)


def check_quantum_descent_certificate(data: dict) -> CheckReport:
    """Re-verify a serialized quantum descent certificate by direct multiplication."""
    report = CheckReport()
    b = data["B"]
    n = len(b)
    lam = PoissonMatrix(as_matrix(data["Lambda"]))
    for i in range(n):
        for j in range(i + 1, n):
            if b[i][j] < 0:
                report.fail(f"B is not in acyclic normal form at ({i + 1},{j + 1})")
    steps = {s["index"]: s for s in data["steps"]}
    if sorted(steps) != list(range(1, n + 1)):
        report.fail("certificate does not cover every index")
        return report
    one = QuantumTorusElement.one(lam)
    for i, s in steps.items():
        tag = f"step {i}"
        x = QuantumTorusElement.generator(i - 1, lam)
        y = QuantumTorusElement.from_json(s["y"]["terms"], lam)
        up, um = tuple(s["m_plus"]), tuple(s["m_minus"])
        row = b[i - 1]
        if up != tuple(max(v, 0) for v in row) or um != tuple(-min(v, 0) for v in row):
            report.fail(f"{tag}: exponents of m^+ / m^- do not match row {i} of B")
        # normalized monomials, so M(u) is X^u in the seed's own torus
        mp = QuantumTorusElement.monomial(up, lam)
        mm = QuantumTorusElement.monomial(um, lam)
        a, bb = s["alpha"], s["beta"]
        xy, yx = x * y, y * x
        if xy != mp.scale(VPoly.v(a)) + mm.scale(VPoly.v(bb)):
            report.fail(f"{tag}: x*y is not v^alpha m^+ + v^beta m^-")
        if yx != mp.scale(VPoly.v(-a)) + mm.scale(VPoly.v(-bb)):
            report.fail(f"{tag}: y*x is not v^-alpha m^+ + v^-beta m^-")
        if a == bb or s["t_exponent"] != a - bb:
            report.fail(f"{tag}: x*y and y*x are not independent")
        else:
            diff = yx.scale(VPoly.v(a)) - xy.scale(VPoly.v(-a))
            if diff != mm.scale(VPoly({a - bb: 1, bb - a: -1})):
                report.fail(f"{tag}: elimination identity for m^- fails")
        succ = tuple(s["successors"])
        if succ != tuple(h + 1 for h in range(n) if um[h] > 0):
            report.fail(f"{tag}: successors are not the support of m^-")
        if any(h >= i for h in succ):
            report.fail(f"{tag}: successors do not strictly descend")
        if not succ and mm != one:
            report.fail(f"{tag}: terminal step without m^- = 1")
    for start, paths in data["chains"].items():
        for path in paths:
            if path[0] != int(start) or any(q >= p for p, q in zip(path, path[1:])):
                report.fail(f"chain {path} from {start} does not strictly descend")
            if steps[path[-1]]["successors"]:
                report.fail(f"chain {path} stops before reaching 1")
            for p, q in zip(path, path[1:]):
                if q not in steps[p]["successors"]:
                    report.fail(f"chain {path} uses an unjustified implication {p} => {q}")
    return report


# serialization

def quantum_seed_to_dict(seed: QuantumSeed) -> dict:
    return {
        "m": seed.m,
        "n": seed.n,
        "B": seed.matrix.to_list(),
        "Lambda": seed.lam.to_list(),
        "d": list(seed.d) if seed.pair else None,
        "names": list(seed.names),
        "variables": [render_quantum(x, seed.names) for x in seed.variables],
        "variable_terms": [x.to_json() for x in seed.variables],
        "torus": seed.torus.to_list(),
        "history": [k + 1 for k in seed.history],
    }


def quantum_seed_from_dict(data: dict, *, check: bool = True) -> QuantumSeed:
    n = data["n"]
    b = ExchangeMatrix.from_rows(data["B"])
    if b.n != n or b.m != data.get("m", n):
        raise DimensionError("declared m, n disagree with B")
    lam = PoissonMatrix(as_matrix(data["Lambda"]))
    names = tuple(data.get("names") or default_names(n))
    seed = QuantumSeed.initial(b, lam, names, check=check)
    if "variable_terms" in data:
        torus = PoissonMatrix(as_matrix(data.get("torus", data["Lambda"])))
        variables = tuple(QuantumTorusElement.from_json(t, torus) for t in data["variable_terms"])
        seed = QuantumSeed(lam, b, variables, tuple(k - 1 for k in data.get("history", [])), names)
    if "d" in data and data["d"] is not None and seed.pair and list(seed.d) != list(data["d"]):
        raise ValueError(f"declared d {data['d']} disagrees with diag(B*Lambda) {list(seed.d)}")
    return seed
