"""Exchange matrices, seeds and classical mutation.

Indices are 0-based throughout the library; the CLI and the text renderings
use 1-based names (``x1`` is variable 0).
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .laurent import (
    DivisibilityError,
    LaurentPolynomial,
    default_names,
    exact_divide,
    parse,
    render,
    unit_vector,
)
from .linalg import Matrix, as_matrix, content


@dataclass(frozen=True)
class Refusal:
    """Negative answer of a total check, with the offending witness."""

    reason: str
    witness: tuple = ()

    def __bool__(self):
        return False


def find_symmetrizer(rows: Sequence[Sequence[int]]) -> tuple[int, ...] | Refusal:
    """Positive integer diagonal D with B'D skew-symmetric, B' the principal block.

    Ratios d_j / d_i = -b_ji / b_ij are propagated along nonzero entries, one
    connected component at a time; each component is scaled to coprime integers.
    """
    m = len(rows)
    if any(len(r) < m for r in rows):
        return Refusal("fewer columns than rows", ())
    b = [list(r[:m]) for r in rows]
    for i in range(m):
        if b[i][i] != 0:
            return Refusal("nonzero diagonal entry", (i, i))
        for j in range(i + 1, m):
            if (b[i][j] == 0) != (b[j][i] == 0) or b[i][j] * b[j][i] > 0:
                return Refusal("sign pattern violated", (i, j))
    d: list[Fraction | None] = [None] * m
    for start in range(m):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        component = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(m):
                if b[i][j] == 0:
                    continue
                ratio = d[i] * Fraction(-b[j][i], b[i][j])
                if d[j] is None:
                    d[j] = ratio
                    component.append(j)
                    queue.append(j)
                elif d[j] != ratio:
                    return Refusal("inconsistent symmetrizer ratios", (i, j))
        den = 1
        for i in component:
            den = den * d[i].denominator // content([den, d[i].denominator])
        ints = [int(d[i] * den) for i in component]
        g = content(ints)
        for i, v in zip(component, ints):
            d[i] = Fraction(v // g)
    return tuple(int(x) for x in d)


@dataclass(frozen=True)
class ExchangeMatrix:
    """m x n integer matrix; rows are the exchangeable indices."""

    entries: Matrix
    symmetrizer: tuple[int, ...]

    def __post_init__(self):
        entries = as_matrix(self.entries)
        object.__setattr__(self, "entries", tuple(tuple(int(x) for x in r) for r in entries))
        if not entries or any(len(r) != len(entries[0]) for r in entries):
            raise ValueError("exchange matrix must be a nonempty rectangular array")
        if len(entries) > len(entries[0]):
            raise ValueError("exchange matrix needs m <= n")
        if len(self.symmetrizer) != len(entries) or any(d <= 0 for d in self.symmetrizer):
            raise ValueError("symmetrizer must have m positive entries")
        for i in range(self.m):
            for j in range(self.m):
                if entries[i][j] * self.symmetrizer[j] != -entries[j][i] * self.symmetrizer[i]:
                    raise ValueError(f"B'D is not skew-symmetric at ({i}, {j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "ExchangeMatrix":
        d = find_symmetrizer(rows)
        if not d:
            raise ValueError(f"principal block is not skew-symmetrizable: {d.reason} at {d.witness}")
        return cls(as_matrix(rows), d)

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def is_skew_symmetrizable(b: ExchangeMatrix | Sequence[Sequence[int]]) -> tuple[int, ...] | Refusal:
    rows = b.entries if isinstance(b, ExchangeMatrix) else b
    return find_symmetrizer(rows)


@dataclass(frozen=True)
class Acyclicity:
    acyclic: bool
    ordering: tuple[int, ...] | None = None
    cycle: tuple[int, ...] | None = None

    def __bool__(self):
        return self.acyclic


def is_acyclic(b: ExchangeMatrix) -> Acyclicity:
    """Directed-cycle test on the principal block, edge i -> j when b_ij > 0.

    The ordering returned lists i before j whenever b_ij > 0, so the matrix
    permuted by it has nonnegative entries above the diagonal.
    """
    m = b.m
    succ = [[j for j in range(m) if b[i, j] > 0] for i in range(m)]
    indeg = [0] * m
    for i in range(m):
        for j in succ[i]:
            indeg[j] += 1
    ready = sorted(i for i in range(m) if indeg[i] == 0)
    order = []
    while ready:
        i = ready.pop(0)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
        ready.sort()
    if len(order) == m:
        return Acyclicity(True, tuple(order))
    # every leftover vertex keeps a leftover predecessor; walk back until one repeats
    left = set(range(m)) - set(order)
    path, seen = [], {}
    i = min(left)
    while i not in seen:
        seen[i] = len(path)
        path.append(i)
        i = min(j for j in left if b[j, i] > 0)
    return Acyclicity(False, cycle=tuple(reversed(path[seen[i]:])))


def matrix_mutate(b: ExchangeMatrix, k: int) -> ExchangeMatrix:
    if not 0 <= k < b.m:
        raise IndexError(f"mutation index {k} out of range for m={b.m}")
    old = b.entries
    new = []
    for i in range(b.m):
        row = []
        for j in range(b.n):
            if i == k or j == k:
                row.append(-old[i][j])
            else:
                row.append(old[i][j] + (abs(old[i][k]) * old[k][j] + old[i][k] * abs(old[k][j])) // 2)
        new.append(tuple(row))
    return ExchangeMatrix(tuple(new), b.symmetrizer)


@dataclass(frozen=True)
class ExchangeData:
    index: int
    plus_monomial: LaurentPolynomial
    minus_monomial: LaurentPolynomial
    plus_exponent: tuple[int, ...]
    minus_exponent: tuple[int, ...]

    @property
    def exchange_polynomial(self) -> LaurentPolynomial:
        return self.plus_monomial + self.minus_monomial


@dataclass(frozen=True)
class Seed:
    """Extended cluster written in the initial variables, plus its exchange matrix."""

    variables: tuple[LaurentPolynomial, ...]
    matrix: ExchangeMatrix
    history: tuple[int, ...] = field(default=(), compare=False)
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.variables) != self.matrix.n:
            raise ValueError("seed needs one variable per column of its matrix")
        if not self.names:
            object.__setattr__(self, "names", default_names(self.matrix.n))

    @classmethod
    def initial(cls, b: ExchangeMatrix | Sequence[Sequence[int]],
                names: Sequence[str] | None = None) -> "Seed":
        if not isinstance(b, ExchangeMatrix):
            b = ExchangeMatrix.from_rows(b)
        n = b.n
        variables = tuple(LaurentPolynomial.variable(i, n) for i in range(n))
        return cls(variables, b, (), tuple(names) if names else default_names(n))

    @property
    def m(self) -> int:
        return self.matrix.m

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def cluster(self) -> tuple[LaurentPolynomial, ...]:
        return self.variables[: self.m]

    def mutate(self, k: int) -> "Seed":
        return seed_mutate(self, k)

    def mutate_sequence(self, ks: Sequence[int]) -> "Seed":
        s = self
        for k in ks:
            s = seed_mutate(s, k)
        return s


def exponent_split(row: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(b^+, -b^-) of a row: the exponents of m^+ and m^-."""
    return tuple(max(x, 0) for x in row), tuple(-min(x, 0) for x in row)


def _product(variables: Sequence[LaurentPolynomial], exps: Sequence[int]) -> LaurentPolynomial:
    out = LaurentPolynomial.one(variables[0].n)
    for var, k in zip(variables, exps):
        if k:
            out = out * var ** k
    return out


def exchange_data(seed: Seed, i: int) -> ExchangeData:
    if not 0 <= i < seed.m:
        raise IndexError(f"exchange index {i} out of range for m={seed.m}")
    plus, minus = exponent_split(seed.matrix.row(i))
    return ExchangeData(i, _product(seed.variables, plus), _product(seed.variables, minus),
                        plus, minus)


def seed_mutate(seed: Seed, k: int) -> Seed:
    if not 0 <= k < seed.m:
        raise IndexError(f"mutation index {k} out of range for m={seed.m}")
    data = exchange_data(seed, k)
    new_var = exact_divide(data.exchange_polynomial, seed.variables[k])
    variables = seed.variables[:k] + (new_var,) + seed.variables[k + 1:]
    return Seed(variables, matrix_mutate(seed.matrix, k), seed.history + (k,), seed.names)


def lower_bound_generators(seed: Seed) -> tuple[LaurentPolynomial, ...]:
    """y_1..y_m with x_i y_i = P_i."""
    return tuple(exact_divide(exchange_data(seed, i).exchange_polynomial, seed.variables[i])
                 for i in range(seed.m))


def upper_bound_membership(f: LaurentPolynomial, seed: Seed) -> bool:
    """Is f in every adjacent ring C[x_1^{+-1}, .., x_j, y_j, .., x_m^{+-1}, x_{m+1}, .., x_n]?

    f is written in the coordinates of the seed's own cluster. Writing
    f = sum_a f_a x_j^a with f_a free of x_j, membership at j holds exactly when
    no coefficient has a negative frozen exponent and P_j^b divides f_{-b}.
    """
    n, m = seed.n, seed.m
    if f.n != n:
        raise ValueError("polynomial and seed have different numbers of variables")
    local = Seed.initial(seed.matrix)
    if any(e[c] < 0 for e, _ in f for c in range(m, n)):
        return False
    for j in range(m):
        p_j = exchange_data(local, j).exchange_polynomial
        slices: dict[int, dict] = {}
        for e, c in f:
            if e[j] < 0:
                rest = e[:j] + (0,) + e[j + 1:]
                slices.setdefault(-e[j], {})[rest] = c
        for b, terms in slices.items():
            try:
                q = exact_divide(LaurentPolynomial(terms, n), p_j ** b)
            except DivisibilityError:
                return False
            if any(e[c] < 0 for e, _ in q for c in range(m, n)):
                return False
    return True


def canonical_key(seed: Seed) -> tuple:
    return tuple(sorted(v.sort_key() for v in seed.cluster))


def canonical_form(seed: Seed) -> Seed:
    """Cluster sorted by the polynomial total order, matrix permuted to match."""
    m = seed.m
    order = sorted(range(m), key=lambda i: seed.variables[i].sort_key())
    cols = list(order) + list(range(m, seed.n))
    entries = tuple(tuple(seed.matrix.entries[r][c] for c in cols) for r in order)
    sym = tuple(seed.matrix.symmetrizer[r] for r in order)
    variables = tuple(seed.variables[i] for i in order) + seed.variables[m:]
    return Seed(variables, ExchangeMatrix(entries, sym), seed.history, seed.names)


@dataclass
class MutationClass:
    seeds: list[Seed]
    cluster_variables: list[LaurentPolynomial]
    edges: list[tuple[int, int, int]]
    truncated: bool

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, set] = {i: set() for i in range(len(self.seeds))}
        for a, b, _ in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {i: sorted(v) for i, v in adj.items()}

    def is_cycle(self) -> bool:
        adj = self.adjacency()
        if len(adj) < 3 or any(len(v) != 2 for v in adj.values()):
            return False
        seen, stack = {0}, [0]
        while stack:
            for j in adj[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(adj)

    def to_json(self) -> dict:
        names = self.seeds[0].names if self.seeds else ()
        return {
            "seeds": [
                {"cluster": [render(v, names) for v in s.cluster],
                 "B": s.matrix.to_list(),
                 "path": [k + 1 for k in s.history]}
                for s in self.seeds
            ],
            "cluster_variables": [render(v, names) for v in self.cluster_variables],
            "adjacency": {str(i): v for i, v in self.adjacency().items()},
            "edges": [[a, b, k + 1] for a, b, k in self.edges],
            "truncated": self.truncated,
        }

    def to_dot(self) -> str:
        names = self.seeds[0].names if self.seeds else ()
        lines = ["graph exchange {"]
        for i, s in enumerate(self.seeds):
            label = ", ".join(render(v, names) for v in s.cluster).replace('"', r"\"")
            lines.append(f'  s{i} [label="{label}"];')
        for a, b, k in self.edges:
            lines.append(f'  s{a} -- s{b} [label="{k + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def enumerate_mutation_class(seed: Seed, max_seeds: int = 10000) -> MutationClass:
    """Breadth-first closure under mutation, deduplicated by unordered cluster.

    Stops once more than ``max_seeds`` distinct seeds would be needed and
    sets ``truncated``.
    """
    start = canonical_form(seed)
    seeds = [start]
    index = {canonical_key(start): 0}
    # unordered pair -> (source, target, mutation index at the source)
    edges: dict[tuple[int, int], tuple[int, int, int]] = {}
    variables: dict = {}
    for v in start.cluster:
        variables.setdefault(v.sort_key(), v)
    queue = deque([0])
    truncated = False
    while queue and not truncated:
        a = queue.popleft()
        current = seeds[a]
        for k in range(current.m):
            nxt = canonical_form(seed_mutate(current, k))
            key = canonical_key(nxt)
            b = index.get(key)
            if b is None:
                if len(seeds) >= max_seeds:
                    truncated = True
                    break
                b = len(seeds)
                index[key] = b
                seeds.append(nxt)
                queue.append(b)
                for v in nxt.cluster:
                    variables.setdefault(v.sort_key(), v)
            edges.setdefault((min(a, b), max(a, b)), (a, b, k))
    ordered_vars = [variables[key] for key in sorted(variables)]
    return MutationClass(seeds, ordered_vars, [edges[key] for key in sorted(edges)], truncated)


# seed files

def seed_to_dict(seed: Seed) -> dict:
    out = {"m": seed.m, "n": seed.n, "B": seed.matrix.to_list(), "names": list(seed.names)}
    initial = all(v == LaurentPolynomial.variable(i, seed.n) for i, v in enumerate(seed.variables))
    if not initial:
        out["variables"] = [render(v, seed.names) for v in seed.variables]
    if seed.history:
        out["history"] = [k + 1 for k in seed.history]
    return out


def seed_from_dict(data: dict) -> Seed:
    rows = data["B"]
    b = ExchangeMatrix.from_rows(rows)
    if "m" in data and data["m"] != b.m:
        raise ValueError(f"declared m={data['m']} but B has {b.m} rows")
    if "n" in data and data["n"] != b.n:
        raise ValueError(f"declared n={data['n']} but B has {b.n} columns")
    names = tuple(data.get("names") or default_names(b.n))
    if len(names) != b.n:
        raise ValueError("names must list one name per column of B")
    if "variables" in data:
        variables = tuple(parse(t, names) for t in data["variables"])
    else:
        variables = tuple(LaurentPolynomial.variable(i, b.n) for i in range(b.n))
    history = tuple(k - 1 for k in data.get("history", ()))
    return Seed(variables, b, history, names)


def load_seed(path) -> tuple[Seed, dict]:
    with open(path) as fh:
        data = json.load(fh)
    return seed_from_dict(data), data
