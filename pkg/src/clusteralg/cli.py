"""Command-line interface. Every command emits versioned JSON; indices are 1-based."""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .laurent import DivisibilityError, LaurentPolynomial, parse, render
from .linalg import SingularMatrixError, as_matrix
from .poisson import (
    SCHEMA,
    HypothesisError,
    acyclic_normal_form,
    PoissonMatrix,
    PreconditionError,
    bivector_rank_at,
    boundary_nondegeneracy,
    bracket,
    check_descent_certificate,
    check_extraction,
    descent_certificate,
    extract_monomial,
    genericity_check,
    is_compatible,
    pair_mutate,
    sample_boundary_point,
)
from .quantum import (
    QuantumSeed,
    check_quantum_descent_certificate,
    quantum_descent_certificate,
    quantum_seed_to_dict,
    quasi_commutation_matrix,
)
from .seeds import Seed, enumerate_mutation_class, is_acyclic, load_seed, seed_to_dict


class UsageError(Exception):
    pass


def _dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _human(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item and not _flat(item):
                lines.append(f"{pad}{key}:")
                lines.extend(_human(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(_human(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(f"{pad}{_inline(value)}")
    return lines


def _flat(item) -> bool:
    if isinstance(item, dict):
        return False
    return all(not isinstance(x, dict) and (not isinstance(x, list) or all(
        not isinstance(y, (dict, list)) for y in x)) for x in item)


def _inline(item) -> str:
    return json.dumps(item) if isinstance(item, (list, dict, bool)) or item is None else str(item)


def _parse_seq(text: str | None, m: int) -> list[int]:
    if not text:
        return []
    out = []
    for pos, tok in enumerate(text.split(","), start=1):
        try:
            k = int(tok)
        except ValueError:
            raise UsageError(f"step {pos}: '{tok}' is not an integer index") from None
        if not 1 <= k <= m:
            raise UsageError(f"step {pos}: index {k} out of range 1..{m}")
        out.append(k - 1)
    return out


def _parse_point(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad point '{text}': {exc}") from None


def _load(args) -> tuple[Seed, dict]:
    if not args.seed_file:
        raise UsageError("--seed-file is required")
    try:
        return load_seed(args.seed_file)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot read seed file: {exc}") from None


def _lambda(args, raw: dict | None, n: int | None = None) -> PoissonMatrix | None:
    text = getattr(args, "lambda_", None)
    if text:
        try:
            rows = json.loads(text)
        except json.JSONDecodeError:
            rows = json.loads(Path(text).read_text())
    elif raw is not None and "Lambda" in raw:
        rows = raw["Lambda"]
    else:
        return None
    try:
        lam = PoissonMatrix(as_matrix(rows))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if n is not None and lam.n != n:
        raise UsageError(f"Lambda is {lam.n}x{lam.n} but the seed has n={n}")
    return lam


def _require_lambda(args, raw, n):
    lam = _lambda(args, raw, n)
    if lam is None:
        raise UsageError("a Poisson matrix is required (--lambda or \"Lambda\" in the seed file)")
    return lam


def _envelope(command: str, **body) -> dict:
    return {"schema": SCHEMA, "command": command, **body}


# commands

def cmd_mutate(args) -> tuple[dict, bool]:
    seed, raw = _load(args)
    seq = _parse_seq(args.seq, seed.m)
    result = seed.mutate_sequence(seq)
    out = seed_to_dict(result)
    out["variables"] = [render(v, result.names) for v in result.variables]
    lam = _lambda(args, raw, seed.n)
    if lam is not None:
        pair = is_compatible(seed.matrix, lam)
        if not pair:
            raise UsageError(f"(B, Lambda) is not compatible: {pair.reason} at "
                             f"{[x + 1 for x in pair.witness[:2]]}")
        for k in seq:
            pair = pair_mutate(pair, k, args.epsilon)
        out["Lambda"] = pair.lam.to_list()
    return _envelope("mutate", seed=out), True


def _check(name: str, ok: bool | None, **detail) -> dict:
    status = "skip" if ok is None else ("pass" if ok else "fail")
    return {"check": name, "status": status, **detail}


def cmd_verify(args) -> tuple[dict, bool]:
    seed, raw = _load(args)
    lam = _lambda(args, raw, seed.n)
    rng = random.Random(args.rng_seed)
    checks = []
    certificates = {}

    acyc = is_acyclic(seed.matrix)
    checks.append(_check("acyclicity", bool(acyc),
                         ordering=[i + 1 for i in acyc.ordering or ()],
                         cycle=[i + 1 for i in acyc.cycle or ()]))
    pair = None
    if lam is None:
        checks.append(_check("compatibility", None, reason="no Poisson matrix supplied"))
    else:
        pair = is_compatible(seed.matrix, lam)
        if pair:
            checks.append(_check("compatibility", True, d=list(pair.d)))
        else:
            i, j, val = pair.witness
            checks.append(_check("compatibility", False, reason=pair.reason,
                                 entry=[i + 1, j + 1], value=val))
            pair = None

    if lam is not None and seed.m == seed.n:
        try:
            report = genericity_check(seed.matrix, lam)
            checks.append(_check(
                "genericity", report.passes,
                literal_sums=[str(x) for x in report.literal_sums],
                literal=list(report.literal_ok),
                semantic=list(report.semantic_ok),
                disagreements=[i + 1 for i in report.disagreements]))
        except SingularMatrixError:
            checks.append(_check("genericity", False, reason="B is singular"))
    else:
        checks.append(_check("genericity", None, reason="needs a square B and a Poisson matrix"))

    if pair is not None and acyc:
        try:
            cert = descent_certificate(seed, lam)
            data = cert.to_json()
            ok = check_descent_certificate(data).ok
            certificates["poisson"] = data
            checks.append(_check("descent certificate", ok,
                                 chains={k: v for k, v in data["chains"].items()}))
        except HypothesisError as exc:
            checks.append(_check("descent certificate", False, hypothesis=exc.hypothesis,
                                 reason=str(exc)))
        try:
            qcert = quantum_descent_certificate(QuantumSeed.initial(seed.matrix, lam, seed.names))
            data = qcert.to_json()
            ok = check_quantum_descent_certificate(data).ok
            certificates["quantum"] = data
            checks.append(_check("quantum descent certificate", ok))
        except HypothesisError as exc:
            checks.append(_check("quantum descent certificate", False,
                                 hypothesis=exc.hypothesis, reason=str(exc)))
    else:
        checks.append(_check("descent certificate", None, reason="needs an acyclic compatible pair"))

    if lam is not None:
        full = lam.rank()
        ranks = []
        for _ in range(args.samples):
            p = tuple(Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
                      for _ in range(lam.n))
            ranks.append(bivector_rank_at(lam, p))
        checks.append(_check("bivector rank", all(r == full for r in ranks),
                             rank=full, samples=len(ranks)))
        # points live in the acyclic normal order, where p_j != 0 is required for j < i
        boundary = []
        ok = True
        if acyc and seed.m == seed.n:
            order, nb, nlam = acyclic_normal_form(seed.matrix, lam)
            for i in range(nb.m):
                p = sample_boundary_point(nb, i, rng)
                if p is None:
                    continue
                verdict = boundary_nondegeneracy(nb, nlam, i, p)
                ok = ok and verdict.nonzero
                point = [None] * nb.n
                for pos, orig in enumerate(order):
                    point[orig] = str(p[pos])
                boundary.append({"index": order[i] + 1, "point": point, "value": str(verdict.value)})
        checks.append(_check("boundary nondegeneracy", ok if boundary else None, points=boundary))

    if pair is not None:
        q = QuantumSeed.initial(seed.matrix, lam, seed.names)
        seq = _parse_seq(args.seq, seed.m)
        ok = quasi_commutation_matrix(q.variables) == q.lam
        for k in seq:
            q = q.mutate(k)
            ok = ok and quasi_commutation_matrix(q.variables) == q.lam
        checks.append(_check("quantum quasi-commutation", ok, steps=len(seq)))

    passed = all(c["status"] != "fail" for c in checks)
    return _envelope("verify", checks=checks, certificates=certificates, passed=passed), passed


def cmd_enumerate(args) -> tuple[dict, bool]:
    seed, _ = _load(args)
    cls = enumerate_mutation_class(seed, args.max_seeds)
    graph = "C%d" % len(cls.seeds) if cls.is_cycle() else None
    summary = f"{len(cls.seeds)} seeds, {len(cls.cluster_variables)} variables"
    if graph:
        summary += f", graph {graph}"
    if cls.truncated:
        summary += ", truncated"
    if args.output:
        prefix = Path(args.output)
        prefix.with_suffix(".json").write_text(_dump(_envelope("enumerate", **cls.to_json())) + "\n")
        prefix.with_suffix(".dot").write_text(cls.to_dot())
    out = _envelope("enumerate", seeds=len(cls.seeds), variables=len(cls.cluster_variables),
                    edges=len(cls.edges), cycle=cls.is_cycle(), truncated=cls.truncated,
                    summary=summary, cluster_variables=cls.to_json()["cluster_variables"])
    return out, True


def _names_and_lambda(args):
    raw = None
    names = None
    if args.seed_file:
        seed, raw = _load(args)
        names = seed.names
    lam = _lambda(args, raw, len(names) if names else None)
    if lam is None:
        raise UsageError("a Poisson matrix is required (--lambda or \"Lambda\" in the seed file)")
    return names or tuple(f"x{i + 1}" for i in range(lam.n)), lam


def _parse_poly(text: str, names) -> LaurentPolynomial:
    try:
        return parse(text, names)
    except ValueError as exc:
        raise UsageError(f"cannot parse '{text}': {exc}") from None


def cmd_bracket(args) -> tuple[dict, bool]:
    names, lam = _names_and_lambda(args)
    f, g = (_parse_poly(t, names) for t in args.polys)
    result = bracket(f, g, lam)
    out = _envelope("bracket", f=render(f, names), g=render(g, names), bracket=render(result, names))
    if args.point:
        from .laurent import evaluate
        out["value"] = str(evaluate(result, _parse_point(args.point)))
    return out, True


def cmd_extract(args) -> tuple[dict, bool]:
    names, lam = _names_and_lambda(args)
    f = _parse_poly(args.polys[0], names)
    trace = extract_monomial(f, lam)
    ok = check_extraction(trace, lam)
    steps = [{"index": s.index + 1, "scalar": str(s.scalar),
              "before": render(s.before, names), "after": render(s.after, names)}
             for s in trace.steps]
    out = _envelope("extract-monomial", input=render(f, names), shift=list(trace.shift),
                    steps=steps, result=render(trace.final, names),
                    exponent=list(trace.result), verified=ok)
    return out, ok


def _read_certificate(path: str, kind: str) -> dict:
    """Load a certificate, bare or wrapped in a CLI envelope."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read certificate: {exc}") from None
    if isinstance(data, dict) and isinstance(data.get("certificate"), dict):
        data = data["certificate"]
    if not isinstance(data, dict) or data.get("kind") != kind:
        raise UsageError(f"not a {kind} certificate: {path}")
    return data


def _check_certificate(checker, path: str, kind: str):
    data = _read_certificate(path, kind)
    try:
        return checker(data)
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise UsageError(f"malformed certificate: {exc!r}") from None


def cmd_certificate(args) -> tuple[dict, bool]:
    if args.check:
        report = _check_certificate(check_descent_certificate, args.check, "poisson-descent")
        return _envelope("certificate", checked=args.check, ok=report.ok,
                         failures=report.failures), report.ok
    seed, raw = _load(args)
    lam = _require_lambda(args, raw, seed.n)
    cert = descent_certificate(seed, lam).to_json()
    ok = check_descent_certificate(cert).ok
    return _envelope("certificate", certificate=cert, verified=ok), ok


def cmd_quantum_mutate(args) -> tuple[dict, bool]:
    seed, raw = _load(args)
    lam = _require_lambda(args, raw, seed.n)
    try:
        q = QuantumSeed.initial(seed.matrix, lam, seed.names)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    q = q.mutate_sequence(_parse_seq(args.seq, seed.m))
    data = quantum_seed_to_dict(q)
    data["specialized"] = [render(v.specialize(), q.names) for v in q.variables]
    return _envelope("quantum-mutate", seed=data), True


def cmd_quantum_certificate(args) -> tuple[dict, bool]:
    if args.check:
        report = _check_certificate(check_quantum_descent_certificate, args.check, "quantum-descent")
        return _envelope("quantum-certificate", checked=args.check, ok=report.ok,
                         failures=report.failures), report.ok
    seed, raw = _load(args)
    lam = _require_lambda(args, raw, seed.n)
    q = QuantumSeed.initial(seed.matrix, lam, seed.names, check=False)
    cert = quantum_descent_certificate(q).to_json()
    ok = check_quantum_descent_certificate(cert).ok
    return _envelope("quantum-certificate", certificate=cert, verified=ok), ok


COMMANDS = {
    "mutate": cmd_mutate,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "bracket": cmd_bracket,
    "extract-monomial": cmd_extract,
    "certificate": cmd_certificate,
    "quantum-mutate": cmd_quantum_mutate,
    "quantum-certificate": cmd_quantum_certificate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clusteralg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed-file", help="JSON seed file with B (and optionally Lambda)")
    common.add_argument("--seq", help="comma-separated 1-based mutation indices")
    common.add_argument("--lambda", dest="lambda_", help="Poisson matrix as JSON or a JSON file")
    common.add_argument("--point", help="comma-separated rational coordinates")
    common.add_argument("--index", type=int, help="1-based exchange index")
    common.add_argument("--epsilon", type=int, choices=(1, -1), default=1)
    common.add_argument("--max-seeds", type=int, default=10000)
    common.add_argument("--rng-seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("bracket",):
            p.add_argument("polys", nargs=2, metavar="POLY")
        if name == "extract-monomial":
            p.add_argument("polys", nargs=1, metavar="POLY")
        if name in ("certificate", "quantum-certificate"):
            p.add_argument("--check", metavar="FILE", help="verify a saved certificate instead")
        if name == "enumerate":
            p.add_argument("--output", metavar="PREFIX", help="write PREFIX.json and PREFIX.dot")
        if name == "verify":
            p.add_argument("--samples", type=int, default=100, help="random points for the rank check")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, ok = COMMANDS[args.command](args)
    except (UsageError, IndexError, PreconditionError, SingularMatrixError,
            DivisibilityError, ValueError) as exc:
        payload, ok = _envelope(args.command, error=type(exc).__name__, message=str(exc)), False
        status = 2
    else:
        status = 0 if ok else 1
    if args.json:
        print(_dump(payload))
    else:
        print("\n".join(_human(payload)))
    return status


if __name__ == "__main__":
    sys.exit(main())
