"""Log-canonical Poisson brackets, compatible pairs and the ideal-theoretic checks.

The bracket is defined on exponent vectors, {x^a, x^b} = (a^T L b) x^(a+b),
which is the unique biderivation extending {x_i, x_j} = l_ij x_i x_j to the
Laurent ring. The certificate checkers recompute brackets through partial
derivatives instead, so they do not share a code path with ``bracket``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .laurent import (
    DimensionError,
    LaurentPolynomial,
    add_exponents,
    default_names,
    evaluate,
    parse,
    render,
    unit_vector,
)
from .linalg import (
    Matrix,
    SingularMatrixError,
    as_matrix,
    clear_denominators,
    inverse,
    is_skew_symmetric,
    matmul,
    permute,
    rank,
    solve,
    transpose,
)
from .seeds import (
    ExchangeMatrix,
    Refusal,
    Seed,
    exponent_split,
    is_acyclic,
)

SCHEMA = "clusteralg/v1"


class PreconditionError(ValueError):
    def __init__(self, message: str, violations: Sequence[str] = ()):
        super().__init__(message)
        self.violations = tuple(violations) or (message,)


class HypothesisError(PreconditionError):
    """A hypothesis of the no-prime-ideal argument fails; ``hypothesis`` names it."""

    def __init__(self, hypothesis: str, message: str, index: int | None = None):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis
        self.index = index


class CompatibilityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PoissonMatrix:
    entries: Matrix

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        if not is_skew_symmetric(entries):
            raise ValueError("Poisson coefficient matrix must be skew-symmetric")

    @classmethod
    def zero(cls, n: int) -> "PoissonMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row_weight(self, i: int, w: Sequence[int]) -> int:
        """sum_j l_ij w_j, the exponent picked up by {x_i, x^w} = weight * x_i x^w."""
        return sum(x * y for x, y in zip(self.entries[i], w))

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(a[i] * self.row_weight(i, b) for i in range(self.n) if a[i])

    def rank(self) -> int:
        return rank(self.entries)

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _as_poisson(lam) -> PoissonMatrix:
    return lam if isinstance(lam, PoissonMatrix) else PoissonMatrix(as_matrix(lam))


def bracket(f: LaurentPolynomial, g: LaurentPolynomial, lam: PoissonMatrix) -> LaurentPolynomial:
    lam = _as_poisson(lam)
    if not (f.n == g.n == lam.n):
        raise DimensionError(f"bracket of {f.n}- and {g.n}-variable polynomials with a {lam.n}x{lam.n} matrix")
    acc: dict = {}
    for a, c in f:
        for b, d in g:
            w = lam.pairing(a, b)
            if w:
                e = add_exponents(a, b)
                acc[e] = acc.get(e, 0) + w * c * d
    return LaurentPolynomial._from_dict(acc, f.n)


def bracket_by_derivations(f: LaurentPolynomial, g: LaurentPolynomial, lam: PoissonMatrix) -> LaurentPolynomial:
    """sum_{j,l} l_jl x_j x_l (df/dx_j)(dg/dx_l); the checkers' independent route."""
    lam = _as_poisson(lam)
    n = f.n
    total = LaurentPolynomial.zero(n)
    for j in range(n):
        dfj = _log_derivative(f, j)
        if not dfj:
            continue
        for l in range(n):
            if lam[j, l] and (dgl := _log_derivative(g, l)):
                total = total + (dfj * dgl).scale(lam[j, l])
    return total


def _log_derivative(f: LaurentPolynomial, j: int) -> LaurentPolynomial:
    # x_j * df/dx_j
    return LaurentPolynomial._from_dict({e: c * e[j] for e, c in f if e[j]}, f.n)


# compatible pairs

@dataclass(frozen=True)
class CompatiblePair:
    B: ExchangeMatrix
    lam: PoissonMatrix
    product: Matrix
    d: tuple[int, ...]
    full_rank: bool


def is_compatible(b: ExchangeMatrix, lam: PoissonMatrix) -> CompatiblePair | Refusal:
    """Accept iff B.L is zero except for positive entries d_i at (i, i), i < m."""
    lam = _as_poisson(lam)
    if b.n != lam.n:
        raise DimensionError(f"B is {b.m}x{b.n} but the Poisson matrix is {lam.n}x{lam.n}")
    product = matmul(b.entries, lam.entries)
    for i, row in enumerate(product):
        for j, x in enumerate(row):
            if i == j and x <= 0:
                return Refusal("non-positive diagonal entry of B*Lambda", (i, j, x))
            if i != j and x != 0:
                return Refusal("nonzero off-diagonal entry of B*Lambda", (i, j, x))
    d = tuple(product[i][i] for i in range(b.m))
    return CompatiblePair(b, lam, product, d, rank(product) == b.m)


def frame_matrices(b: ExchangeMatrix, k: int, eps: int) -> tuple[Matrix, Matrix]:
    """(E, F) for mutation at k with sign eps; both special only in index k."""
    n, m = b.n, b.m
    e = [[int(i == j) for j in range(n)] for i in range(n)]
    e[k][k] = -1
    for i in range(n):
        if i != k:
            e[i][k] = max(0, -eps * b[k, i])
    f = [[int(i == j) for j in range(m)] for i in range(m)]
    f[k][k] = -1
    for j in range(m):
        if j != k:
            f[k][j] = max(0, eps * b[j, k])
    return as_matrix(e), as_matrix(f)


def pair_mutate(pair: CompatiblePair, k: int, eps: int = 1) -> CompatiblePair:
    if eps not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not 0 <= k < pair.B.m:
        raise IndexError(f"mutation index {k} out of range for m={pair.B.m}")
    e, f = frame_matrices(pair.B, k, eps)
    new_b = matmul(matmul(transpose(f), pair.B.entries), transpose(e))
    new_lam = PoissonMatrix(matmul(matmul(transpose(e), pair.lam.entries), e))
    result = is_compatible(ExchangeMatrix(new_b, pair.B.symmetrizer), new_lam)
    if not result:
        raise CompatibilityError(f"mutated pair is not compatible: {result.reason} at {result.witness}")
    return result


def compatible_pair_from_inverse(b: ExchangeMatrix) -> CompatiblePair:
    """(B, mu B^-1 D) with mu the least positive integer clearing denominators.

    For skew-symmetric B the symmetrizer is trivial and this is (B, mu B^-1).
    """
    if b.m != b.n:
        raise ValueError("needs a square exchange matrix")
    inv = inverse(b.entries)
    scaled = tuple(tuple(inv[i][j] * b.symmetrizer[j] for j in range(b.n)) for i in range(b.n))
    lam = PoissonMatrix(clear_denominators(scaled)[0])
    result = is_compatible(b, lam)
    if not result:
        raise CompatibilityError(result.reason)
    return result


def compatible_pair_for(b: ExchangeMatrix) -> CompatiblePair | Refusal:
    """Some integer L with B.L = [mu D | 0], solved exactly; works for m < n too."""
    if b.m == b.n:
        try:
            return compatible_pair_from_inverse(b)
        except SingularMatrixError:
            return Refusal("square B is singular", ())
    n = b.n
    unknowns = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rows, rhs = [], []
    for r in range(b.m):
        for c in range(n):
            coeffs = []
            for i, j in unknowns:
                # L[j][c] contributes b[r][j]; L[i][j] = x, L[j][i] = -x
                coeffs.append((b[r, i] if j == c else 0) - (b[r, j] if i == c else 0))
            rows.append(coeffs)
            rhs.append(b.symmetrizer[r] if r == c else 0)
    sol = solve(as_matrix(rows), rhs)
    if sol is None:
        return Refusal("no compatible Poisson matrix exists", ())
    lam = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), x in zip(unknowns, sol):
        lam[i][j], lam[j][i] = x, -x
    return is_compatible(b, PoissonMatrix(clear_denominators(as_matrix(lam))[0]))


# exchange weights and genericity

@dataclass(frozen=True)
class ExchangeWeights:
    index: int
    plus: Fraction
    minus: Fraction

    @property
    def distinct(self) -> bool:
        return self.plus != self.minus


def local_exchange(b: ExchangeMatrix, i: int) -> tuple[LaurentPolynomial, LaurentPolynomial, LaurentPolynomial]:
    """(m_i^+, m_i^-, y_i) in the seed's own cluster coordinates."""
    plus, minus = exponent_split(b.row(i))
    mp = LaurentPolynomial.monomial(plus)
    mm = LaurentPolynomial.monomial(minus)
    return mp, mm, (mp + mm).shift(unit_vector(i, b.n, -1))


def exchange_weights(seed: Seed | ExchangeMatrix, lam: PoissonMatrix, i: int) -> ExchangeWeights:
    """Coefficients of m_i^+ and m_i^- in {y_i, x_i}."""
    lam = _as_poisson(lam)
    b = seed.matrix if isinstance(seed, Seed) else seed
    if not 0 <= i < b.m:
        raise IndexError(f"exchange index {i} out of range for m={b.m}")
    mp, mm, y = local_exchange(b, i)
    br = bracket(y, LaurentPolynomial.variable(i, b.n), lam)
    (ep, _), = mp.terms
    (em, _), = mm.terms
    if ep == em:
        half = br.coefficient(ep) / 2
        return ExchangeWeights(i, half, half)
    return ExchangeWeights(i, br.coefficient(ep), br.coefficient(em))


@dataclass(frozen=True)
class GenericityReport:
    literal_sums: tuple[Fraction, ...]
    inverse_literal_sums: tuple[Fraction, ...]
    weights: tuple[ExchangeWeights, ...]
    disagreements: tuple[int, ...]

    @property
    def literal_ok(self) -> tuple[bool, ...]:
        return tuple(s != 0 for s in self.literal_sums)

    @property
    def semantic_ok(self) -> tuple[bool, ...]:
        return tuple(w.distinct for w in self.weights)

    @property
    def passes(self) -> bool:
        return all(self.semantic_ok)


def _literal_sum(row_inv: Sequence, row_b: Sequence) -> Fraction:
    return sum((Fraction(a) * (max(x, 0) + min(x, 0)) for a, x in zip(row_inv, row_b)), Fraction(0))


def genericity_check(b: ExchangeMatrix, lam: PoissonMatrix) -> GenericityReport:
    """Both the printed condition sum_j (B^-1)_ij (b_ij^+ + b_ij^-) != 0 and mu_1 != mu_2.

    Disagreements between the two verdicts are reported, never resolved.
    """
    lam = _as_poisson(lam)
    if b.m != b.n:
        raise ValueError("genericity check needs a square exchange matrix")
    inv = inverse(b.entries)
    literal = tuple(_literal_sum(inv[i], b.row(i)) for i in range(b.n))
    swapped = tuple(_literal_sum(b.row(i), [Fraction(x) for x in inv[i]]) for i in range(b.n))
    weights = tuple(exchange_weights(b, lam, i) for i in range(b.m))
    disagreements = tuple(i for i in range(b.m) if (literal[i] != 0) != weights[i].distinct)
    return GenericityReport(literal, swapped, weights, disagreements)


# monomial extraction

@dataclass(frozen=True)
class ExtractionStep:
    index: int
    scalar: object
    before: object
    after: object


@dataclass(frozen=True)
class ExtractionTrace:
    start: object
    shift: tuple[int, ...]
    steps: tuple[ExtractionStep, ...]
    result: tuple[int, ...]

    @property
    def cleared(self):
        return self.steps[0].before if self.steps else self.final

    @property
    def final(self):
        return self.steps[-1].after if self.steps else self.start.shift(self.shift)


def _separating_index(lam: PoissonMatrix, w, w2) -> int:
    diff = [a - b for a, b in zip(w, w2)]
    for i in range(lam.n):
        if lam.row_weight(i, diff):
            return i
    raise PreconditionError("no separating index; Poisson matrix is degenerate")


def extract_monomial(f: LaurentPolynomial, lam: PoissonMatrix) -> ExtractionTrace:
    """Reduce f to a monomial inside the Poisson ideal it generates.

    Each step replaces g by c*x_i*g - {x_i, g}, where w is the largest
    exponent of g (ordinary lexicographic order, first coordinate most
    significant), w' the next one, i the first index with
    l_i.(w - w') != 0 and c = l_i.w. The w-term dies, the w'-term survives.
    """
    lam = _as_poisson(lam)
    if not f:
        raise PreconditionError("cannot extract a monomial from zero")
    if f.n != lam.n:
        raise DimensionError("polynomial and Poisson matrix disagree on n")
    if lam.rank() != lam.n:
        raise PreconditionError(f"Poisson matrix has rank {lam.rank()} < {lam.n}")
    shift = tuple(-x for x in f.min_exponents())
    g = f.shift(shift)
    steps = []
    while len(g) > 1:
        exps = sorted(g.exponents(), reverse=True)
        w, w2 = exps[0], exps[1]
        i = _separating_index(lam, w, w2)
        c = lam.row_weight(i, w)
        x_i = LaurentPolynomial.variable(i, g.n)
        nxt = (x_i * g).scale(c) - bracket(x_i, g, lam)
        steps.append(ExtractionStep(i, c, g, nxt))
        g = nxt
    (result, _), = g.terms
    return ExtractionTrace(f, shift, tuple(steps), result)


def check_extraction(trace: ExtractionTrace, lam: PoissonMatrix) -> bool:
    """Re-verify every recorded identity with the derivation form of the bracket."""
    lam = _as_poisson(lam)
    current = trace.start.shift(trace.shift)
    if not current.is_polynomial():
        return False
    for step in trace.steps:
        if step.before != current:
            return False
        x_i = LaurentPolynomial.variable(step.index, current.n)
        expected = (x_i * current).scale(step.scalar) - bracket_by_derivations(x_i, current, lam)
        if step.after != expected or not step.after or len(step.after) >= len(current):
            return False
        current = step.after
    return len(current) == 1 and current.terms[0][0] == tuple(trace.result)


# descent certificates

@dataclass(frozen=True)
class DescentStep:
    index: int
    x: LaurentPolynomial
    y: LaurentPolynomial
    plus: LaurentPolynomial
    minus: LaurentPolynomial
    bracket: LaurentPolynomial
    mu_plus: Fraction
    mu_minus: Fraction
    successors: tuple[int, ...]


@dataclass(frozen=True)
class DescentCertificate:
    permutation: tuple[int, ...]
    B: Matrix
    lam: Matrix
    steps: tuple[DescentStep, ...]
    chains: dict = field(compare=False)
    names: tuple[str, ...] = ()

    def to_json(self) -> dict:
        names = self.names
        return {
            "schema": SCHEMA,
            "kind": "poisson-descent",
            "names": list(names),
            "permutation": [p + 1 for p in self.permutation],
            "B": [list(r) for r in self.B],
            "Lambda": [list(r) for r in self.lam],
            "steps": [
                {
                    "index": s.index + 1,
                    "x": render(s.x, names),
                    "y": render(s.y, names),
                    "m_plus": render(s.plus, names),
                    "m_minus": render(s.minus, names),
                    "bracket_y_x": render(s.bracket, names),
                    "mu_plus": str(s.mu_plus),
                    "mu_minus": str(s.mu_minus),
                    "successors": [h + 1 for h in s.successors],
                }
                for s in self.steps
            ],
            "chains": {str(i + 1): [[h + 1 for h in path] for path in paths]
                       for i, paths in self.chains.items()},
        }


def chains_from_successors(successors: Sequence[Sequence[int]]) -> dict[int, list[tuple[int, ...]]]:
    """All root-to-leaf index paths; every path implicitly ends at 1 in I."""
    memo: dict[int, list[tuple[int, ...]]] = {}

    def paths(i: int) -> list[tuple[int, ...]]:
        if i not in memo:
            if not successors[i]:
                memo[i] = [(i,)]
            else:
                memo[i] = [(i,) + p for h in successors[i] for p in paths(h)]
        return memo[i]

    return {i: paths(i) for i in range(len(successors))}


def acyclic_normal_form(b: ExchangeMatrix, lam: PoissonMatrix | None = None):
    """Reorder so entries above the diagonal are nonnegative.

    Returns (permutation, B', L') where row a of B' is row permutation[a] of B.
    """
    acyc = is_acyclic(b)
    if not acyc:
        raise HypothesisError("acyclic", f"directed cycle through indices {[i + 1 for i in acyc.cycle]}")
    order = acyc.ordering
    cols = list(order) + list(range(b.m, b.n))
    new_b = ExchangeMatrix(permute(b.entries, order, cols),
                           tuple(b.symmetrizer[i] for i in order))
    new_lam = None if lam is None else PoissonMatrix(permute(_as_poisson(lam).entries, cols, cols))
    return tuple(order), new_b, new_lam


def descent_certificate(seed: Seed | ExchangeMatrix, lam: PoissonMatrix) -> DescentCertificate:
    """Certificate that no nonzero Poisson prime contains a cluster variable.

    For each index i (after reordering to the acyclic normal form): x_i in I
    forces P_i = x_i y_i and {y_i, x_i} = mu_1 m_i^+ + mu_2 m_i^- into I, hence
    m_i^- into I, hence x_h for some h < i in the support of m_i^-, or 1 if
    m_i^- = 1.
    """
    lam = _as_poisson(lam)
    b = seed.matrix if isinstance(seed, Seed) else seed
    names = seed.names if isinstance(seed, Seed) else default_names(b.n)
    if b.m != b.n:
        raise HypothesisError("trivial coefficients", f"B is {b.m}x{b.n}, frozen variables present")
    if b.n % 2:
        raise HypothesisError("even rank", f"n = {b.n} is odd")
    order, nb, nlam = acyclic_normal_form(b, lam)
    pair = is_compatible(nb, nlam)
    if not pair:
        i, j, x = pair.witness
        raise HypothesisError("compatible pair",
                              f"{pair.reason}: entry ({order[i] + 1}, {order[j] + 1}) is {x}")
    n = nb.n
    steps = []
    for i in range(n):
        weights = exchange_weights(nb, nlam, i)
        if not weights.distinct:
            raise HypothesisError("genericity",
                                  f"mu_1 = mu_2 = {weights.plus} at index {order[i] + 1}", order[i])
        mp, mm, y = local_exchange(nb, i)
        x = LaurentPolynomial.variable(i, n)
        br = bracket(y, x, nlam)
        succ = tuple(h for h in range(n) if mm.terms[0][0][h] > 0)
        steps.append(DescentStep(i, x, y, mp, mm, br, weights.plus, weights.minus, succ))
    chains = chains_from_successors([s.successors for s in steps])
    perm_names = tuple(names[p] for p in order)
    return DescentCertificate(order, nb.entries, nlam.entries, tuple(steps), chains, perm_names)


@dataclass
class CheckReport:
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        self.failures.append(msg)


def check_descent_certificate(data: dict) -> CheckReport:
    """Re-verify a serialized Poisson descent certificate from scratch."""
    report = CheckReport()
    names = data["names"]
    n = len(names)
    b = data["B"]
    lam = PoissonMatrix(as_matrix(data["Lambda"]))
    product = matmul(as_matrix(b), lam.entries)
    for i in range(n):
        for j in range(n):
            if (i == j and product[i][j] <= 0) or (i != j and product[i][j] != 0):
                report.fail(f"B*Lambda entry ({i + 1},{j + 1}) = {product[i][j]} breaks compatibility")
    for i in range(n):
        for j in range(i + 1, n):
            if b[i][j] < 0:
                report.fail(f"B is not in acyclic normal form at ({i + 1},{j + 1})")
    steps = {s["index"]: s for s in data["steps"]}
    if sorted(steps) != list(range(1, n + 1)):
        report.fail("certificate does not cover every index")
        return report
    for i, s in steps.items():
        tag = f"step {i}"
        x, y = parse(s["x"], names), parse(s["y"], names)
        mp, mm = parse(s["m_plus"], names), parse(s["m_minus"], names)
        br = parse(s["bracket_y_x"], names)
        mu1, mu2 = Fraction(s["mu_plus"]), Fraction(s["mu_minus"])
        row = b[i - 1]
        if x != LaurentPolynomial.variable(i - 1, n):
            report.fail(f"{tag}: x is not the cluster variable x{i}")
        want_p = LaurentPolynomial.monomial([max(v, 0) for v in row])
        want_m = LaurentPolynomial.monomial([-min(v, 0) for v in row])
        if mp != want_p or mm != want_m:
            report.fail(f"{tag}: m^+ / m^- do not match row {i} of B")
        if x * y != mp + mm:
            report.fail(f"{tag}: x*y != m^+ + m^-")
        if bracket_by_derivations(y, x, lam) != br:
            report.fail(f"{tag}: recorded {{y,x}} is wrong")
        if br != mp.scale(mu1) + mm.scale(mu2):
            report.fail(f"{tag}: {{y,x}} != mu_1 m^+ + mu_2 m^-")
        if mu1 == mu2:
            report.fail(f"{tag}: mu_1 == mu_2, m^- cannot be isolated")
        # m^- = ({y,x} - mu_1 x y) / (mu_2 - mu_1)
        elif (br - (x * y).scale(mu1)).scale(1 / (mu2 - mu1)) != mm:
            report.fail(f"{tag}: elimination identity for m^- fails")
        succ = [h for h in s["successors"]]
        (e, _), = mm.terms if mm.is_monomial() else (((None,), None),)
        if e is None or tuple(h + 1 for h in range(n) if e[h] > 0) != tuple(succ):
            report.fail(f"{tag}: successors are not the support of m^-")
        if any(h >= i for h in succ):
            report.fail(f"{tag}: successors do not strictly descend")
    for start, paths in data["chains"].items():
        for path in paths:
            if path[0] != int(start) or any(b2 >= a for a, b2 in zip(path, path[1:])):
                report.fail(f"chain {path} from {start} does not strictly descend")
            if steps[path[-1]]["successors"]:
                report.fail(f"chain {path} stops before reaching 1")
            for a, b2 in zip(path, path[1:]):
                if b2 not in steps[a]["successors"]:
                    report.fail(f"chain {path} uses an unjustified implication {a} => {b2}")
    return report


# symplectic checks

def bivector_rank_at(lam: PoissonMatrix, point: Sequence) -> int:
    lam = _as_poisson(lam)
    p = [Fraction(x) for x in point]
    if len(p) != lam.n:
        raise DimensionError("point and Poisson matrix disagree on n")
    return rank(tuple(tuple(lam[i, j] * p[i] * p[j] for j in range(lam.n)) for i in range(lam.n)))


@dataclass(frozen=True)
class BoundaryVerdict:
    index: int
    value: Fraction

    @property
    def nonzero(self) -> bool:
        return self.value != 0


def boundary_nondegeneracy(seed: Seed | ExchangeMatrix, lam: PoissonMatrix, i: int,
                           point: Sequence) -> BoundaryVerdict:
    """Value of {x_i, y_i} at a point with p_i = 0, P_i(p) = 0, p_j != 0 for j < i."""
    lam = _as_poisson(lam)
    b = seed.matrix if isinstance(seed, Seed) else seed
    if not 0 <= i < b.m:
        raise IndexError(f"exchange index {i} out of range for m={b.m}")
    p = [Fraction(x) for x in point]
    mp, mm, y = local_exchange(b, i)
    violations = []
    if p[i] != 0:
        violations.append(f"p_{i + 1} = {p[i]} is not 0")
    p_value = evaluate(mp + mm, p)
    if p_value != 0:
        violations.append(f"P_{i + 1}(p) = {p_value} is not 0")
    for j in range(i):
        if p[j] == 0:
            violations.append(f"p_{j + 1} = 0 although {j + 1} < {i + 1}")
    if violations:
        raise PreconditionError("; ".join(violations), violations)
    br = bracket(LaurentPolynomial.variable(i, b.n), y, lam)
    return BoundaryVerdict(i, evaluate(br, p))


def sample_boundary_point(b: ExchangeMatrix, i: int, rng: random.Random,
                          bound: int = 5) -> tuple[Fraction, ...] | None:
    """Random rational point with p_i = 0, P_i(p) = 0 and all other p_j nonzero.

    Solves m(p) = -m'(p) for a variable x_j of odd exponent a in m, drawing
    the other coordinates as +-z^a so the forced value of p_j^a is an exact
    a-th power. If every exponent of P_i is even, P_i > 0 wherever the other
    coordinates are nonzero and None is returned.
    """
    n = b.n
    plus, minus = exponent_split(b.row(i))
    candidates = [(j, plus, minus) for j in range(n) if plus[j] % 2] + \
                 [(j, minus, plus) for j in range(n) if minus[j] % 2]
    if not candidates:
        return None
    j, own, other = rng.choice(candidates)
    a = own[j]
    p = [Fraction(0)] * n
    for k in range(n):
        if k != i and k != j:
            p[k] = rng.choice([-1, 1]) * Fraction(rng.randint(1, bound), rng.randint(1, bound)) ** a
    rest = Fraction(1)
    other_value = Fraction(1)
    for k in range(n):
        if k != j and own[k]:
            rest *= p[k] ** own[k]
        if other[k]:
            other_value *= p[k] ** other[k]
    p[j] = _exact_root(-other_value / rest, a)
    return tuple(p)


def _exact_root(x: Fraction, a: int) -> Fraction | None:
    if x < 0 and a % 2 == 0:
        return None
    sign = -1 if x < 0 else 1
    num, den = _int_root(abs(x.numerator), a), _int_root(x.denominator, a)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def _int_root(x: int, a: int) -> int | None:
    lo, hi = 0, 1 << (x.bit_length() // a + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** a < x:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** a == x else None
