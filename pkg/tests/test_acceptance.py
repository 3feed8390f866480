"""Acceptance criteria 1-10. Each prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from clusteralg.laurent import LaurentPolynomial
from clusteralg.poisson import (
    acyclic_normal_form,
    PoissonMatrix,
    bivector_rank_at,
    boundary_nondegeneracy,
    bracket,
    check_descent_certificate,
    check_extraction,
    compatible_pair_for,
    compatible_pair_from_inverse,
    descent_certificate,
    exchange_weights,
    extract_monomial,
    genericity_check,
    is_compatible,
    pair_mutate,
    sample_boundary_point,
)
from clusteralg.quantum import (
    QuantumSeed,
    check_quantum_descent_certificate,
    check_quantum_extraction,
    quantum_descent_certificate,
    quantum_extract_monomial,
    quasi_commutation_matrix,
)
from clusteralg.seeds import ExchangeMatrix, Seed, enumerate_mutation_class, matrix_mutate

import helpers
from helpers import (
    random_acyclic_full_rank,
    random_distinct_laurent,
    random_laurent,
    random_quantum,
    random_skew,
    random_skew_symmetrizable,
)

A2 = ExchangeMatrix.from_rows([[0, 1], [-1, 0]])
A3 = ExchangeMatrix.from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
A3_PRINCIPAL = ExchangeMatrix.from_rows([[0, 1, 0, 1, 0, 0], [-1, 0, 1, 0, 1, 0], [0, -1, 0, 0, 0, 1]])
A2_LAMBDA = PoissonMatrix(((0, -1), (1, 0)))


def report(number: int, title: str, ok: bool, detail: str) -> bool:
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    helpers.ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def criterion_1() -> bool:
    rng = random.Random(1001)
    failures = 0
    for _ in range(1000):
        n = rng.randint(1, 6)
        m = rng.randint(1, n)
        b = random_skew_symmetrizable(rng, m, n)
        seed = Seed.initial(b)
        # one warm-up mutation so the variables are not all trivial
        if rng.random() < 0.5:
            seed = seed.mutate(rng.randrange(m))
        k = rng.randrange(m)
        back = seed.mutate(k).mutate(k)
        if back.matrix != seed.matrix or back.variables != seed.variables:
            failures += 1
    return report(1, "mutation involutivity", failures == 0,
                  f"{1000 - failures}/1000 random seeds restored exactly (n<=6, entries in [-3,3])")


def _classes():
    return {"A2": enumerate_mutation_class(Seed.initial(A2)),
            "A3": enumerate_mutation_class(Seed.initial(A3))}


def criterion_2() -> bool:
    c = _classes()
    a2, a3 = c["A2"], c["A3"]
    got = (len(a2.seeds), len(a2.cluster_variables), a2.is_cycle(), len(a3.seeds), len(a3.cluster_variables))
    ok = got == (5, 5, True, 14, 9) and not a2.truncated and not a3.truncated
    return report(2, "finite-type counts", ok,
                  f"A2 {got[0]} seeds/{got[1]} variables/5-cycle={got[2]}; A3 {got[3]} seeds/{got[4]} variables")


def criterion_3() -> bool:
    violations = 0
    total = 0
    for cls in _classes().values():
        for var in cls.cluster_variables:
            total += 1
            if not (var.has_integer_coefficients() and var.has_positive_coefficients()):
                violations += 1
    return report(3, "Laurent phenomenon and positivity", violations == 0,
                  f"{total} cluster variables, {violations} violations")


def criterion_4() -> bool:
    rng = random.Random(1004)
    bad_diag = bad_eps = steps = 0
    for _ in range(500):
        b = random_acyclic_full_rank(rng, rng.choice([2, 4, 6]))
        pair = compatible_pair_from_inverse(b)
        for _ in range(rng.randint(1, 6)):
            k = rng.randrange(b.n)
            plus, minus = pair_mutate(pair, k, 1), pair_mutate(pair, k, -1)
            steps += 1
            if plus.lam != minus.lam or plus.B != minus.B:
                bad_eps += 1
            if not is_compatible(plus.B, plus.lam):
                bad_diag += 1
            pair = plus
    ok = bad_diag == 0 and bad_eps == 0
    return report(4, "compatible-pair preservation", ok,
                  f"500 pairs, {steps} mutation steps, {bad_diag} non-diagonal, {bad_eps} sign disagreements")


def criterion_5() -> bool:
    rng = random.Random(1005)
    failures = 0
    for _ in range(1000):
        n = rng.randint(1, 4)
        lam = random_skew(rng, n)
        f, g, h = (random_laurent(rng, n, rng.randint(1, 4)) for _ in range(3))
        skew = bracket(f, g, lam) == -bracket(g, f, lam)
        jacobi = not (bracket(f, bracket(g, h, lam), lam) + bracket(g, bracket(h, f, lam), lam)
                      + bracket(h, bracket(f, g, lam), lam))
        leibniz = bracket(f, g * h, lam) == bracket(f, g, lam) * h + g * bracket(f, h, lam)
        if not (skew and jacobi and leibniz):
            failures += 1
    return report(5, "Poisson axioms", failures == 0,
                  f"{1000 - failures}/1000 triples satisfy skew-symmetry, Jacobi and Leibniz exactly")


def criterion_6() -> bool:
    rng = random.Random(1006)
    classical_bad = quantum_bad = 0
    for _ in range(500):
        n = rng.choice([2, 4])
        lam = random_skew(rng, n, full_rank=True)
        terms = rng.randint(1, 6)
        f = random_distinct_laurent(rng, n, terms)
        t = extract_monomial(f, lam)
        if len(t.steps) > terms - 1 or not t.final.is_monomial() or not check_extraction(t, lam):
            classical_bad += 1
        q = random_quantum(rng, lam, terms)
        qt = quantum_extract_monomial(q)
        if len(qt.steps) > terms - 1 or not qt.final.is_monomial() or not check_quantum_extraction(qt):
            quantum_bad += 1
    ok = classical_bad == 0 and quantum_bad == 0
    return report(6, "monomial extraction", ok,
                  f"500 inputs, classical failures {classical_bad}, quantum failures {quantum_bad}")


def _criterion_7_seeds():
    rng = random.Random(1007)
    return [random_acyclic_full_rank(rng, rng.choice([2, 4])) for _ in range(200)]


def criterion_7() -> bool:
    mismatches = disagreements = 0
    for b in _criterion_7_seeds():
        pair = compatible_pair_from_inverse(b)
        mu = pair.d[0]
        for i in range(b.n):
            w = exchange_weights(b, pair.lam, i)
            if w.plus - w.minus != mu:
                mismatches += 1
        disagreements += len(genericity_check(b, pair.lam).disagreements)
    return report(7, "genericity identity", mismatches == 0,
                  f"200 matrices, mu1-mu2 != mu in {mismatches} rows; "
                  f"literal-vs-semantic disagreements logged: {disagreements}")


def _chains_ok(chains, steps) -> bool:
    for start, paths in chains.items():
        for path in paths:
            if path[0] != start or any(a <= c for a, c in zip(path, path[1:])):
                return False
            if steps[path[-1]].successors:
                return False
    return len(chains) == len(steps)


def criterion_8() -> bool:
    failures = 0
    cases = [(A2, A2_LAMBDA)] + [(b, compatible_pair_from_inverse(b).lam) for b in _criterion_7_seeds()]
    for b, lam in cases:
        try:
            c = descent_certificate(b, lam)
            q = quantum_descent_certificate(QuantumSeed.initial(b, lam))
        except Exception:
            failures += 1
            continue
        ok = (_chains_ok(c.chains, c.steps) and _chains_ok(q.chains, q.steps)
              and check_descent_certificate(c.to_json()).ok
              and check_quantum_descent_certificate(q.to_json()).ok
              and all(s.t_exponent != 0 for s in q.steps))
        failures += not ok
    return report(8, "descent certificates", failures == 0,
                  f"{len(cases) - failures}/{len(cases)} seeds with verified classical and quantum chains to 1")


def criterion_9() -> bool:
    rng = random.Random(1009)
    rank_bad = points = 0
    cases = [(A2, A2_LAMBDA)] + [(b, compatible_pair_from_inverse(b).lam) for b in _criterion_7_seeds()]
    for _, lam in cases:
        for _ in range(100):
            p = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 20), rng.randint(1, 20)) for _ in range(lam.n)]
            points += 1
            if bivector_rank_at(lam, p) != lam.n:
                rank_bad += 1
    # boundary points are taken in the acyclic normal order, where p_j != 0 for j < i
    boundary_bad = boundary = no_real_point = unexplained = 0
    for b, lam in cases:
        _, nb, nlam = acyclic_normal_form(b, lam)
        for i in range(nb.n):
            for _ in range(3):
                p = sample_boundary_point(nb, i, rng)
                if p is None:
                    # legitimate only if every exponent is even, so P_i > 0 off the hyperplanes
                    if all(x % 2 == 0 for x in nb.row(i)):
                        no_real_point += 1
                    else:
                        unexplained += 1
                    break
                boundary += 1
                if not boundary_nondegeneracy(nb, nlam, i, p).nonzero:
                    boundary_bad += 1
    ok = rank_bad == 0 and boundary_bad == 0 and unexplained == 0 and boundary > 0
    return report(9, "symplectic nondegeneracy", ok,
                  f"rank n at {points - rank_bad}/{points} points; {boundary - boundary_bad}/{boundary} "
                  f"boundary points nonzero; {no_real_point} indices have only even exponents, "
                  f"so no real boundary point exists")


def criterion_10() -> bool:
    classical = enumerate_mutation_class(Seed.initial(A2))
    base = QuantumSeed.initial(A2, A2_LAMBDA)
    spec_bad = bar_bad = 0
    quantum_vars = set()
    for s in classical.seeds:
        q = base.mutate_sequence(s.history)
        expected = Seed.initial(A2).mutate_sequence(s.history)
        spec_bad += tuple(v.specialize() for v in q.variables) != expected.variables
        bar_bad += sum(not v.is_bar_symmetric() for v in q.variables)
        quantum_vars.update(v.specialize() for v in q.variables)
    same_class = quantum_vars == set(classical.cluster_variables)
    qc_bad = checked = 0
    for b in (A2, A3_PRINCIPAL):
        pair = compatible_pair_for(b)
        for length in range(1, 6):
            for seq in itertools.product(range(b.m), repeat=length):
                q = QuantumSeed.initial(b, pair.lam).mutate_sequence(seq)
                p = pair
                for k in seq:
                    p = pair_mutate(p, k)
                checked += 1
                qc_bad += quasi_commutation_matrix(q.variables) != p.lam
    ok = spec_bad == 0 and bar_bad == 0 and qc_bad == 0 and same_class
    return report(10, "quantum/classical coherence", ok,
                  f"A2 specialization mismatches {spec_bad}, class equal {same_class}, "
                  f"bar-asymmetric variables {bar_bad}, quasi-commutation mismatches {qc_bad}/{checked}")


def test_criterion_1():
    assert criterion_1()


def test_criterion_2():
    assert criterion_2()


def test_criterion_3():
    assert criterion_3()


def test_criterion_4():
    assert criterion_4()


def test_criterion_5():
    assert criterion_5()


def test_criterion_6():
    assert criterion_6()


def test_criterion_7():
    assert criterion_7()


def test_criterion_8():
    assert criterion_8()


def test_criterion_9():
    assert criterion_9()


def test_criterion_10():
    assert criterion_10()


if __name__ == "__main__":
    results = [globals()[f"criterion_{i}"]() for i in range(1, 11)]
    sys.exit(0 if all(results) else 1)
