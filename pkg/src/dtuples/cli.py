"""Command line interface: ``dtuples <command> [options]``.

Exit status is 0 for a positive verdict, 1 for a negative or inconclusive
one and 2 for unusable input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

from . import __version__
from .correspondence import (
    Correspondence,
    Factorization,
    classify,
    compose,
    factorize,
    symmetry_report,
)
from .errors import DTuplesError, RankNotTwo, TooManyDegenerateSamples, ValidationError
from .fixtures import FIXTURES, run_fixture
from .gaussian import format_gaussian
from .oracle import DEFAULT_TOL, INF, TupleWitness, factorization_mismatch, verify_map_of_tuples
from .parsing import parse_fractional_map, parse_polynomial
from .serialize import (
    classification_doc,
    classification_text,
    dumps,
    factorization_doc,
    load_matrix,
    matrix_text,
    save_matrix,
    symmetry_doc,
    symmetry_text,
)


class InputError(Exception):
    pass


class _Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.values: dict[str, float] = {}

    @contextmanager
    def __call__(self, name: str):
        t0 = time.perf_counter()
        yield
        if self.enabled:
            self.values[name] = round(time.perf_counter() - t0, 6)


# -- input ------------------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_json(text: str, path: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _load_correspondence(args) -> Correspondence:
    if args.example:
        return FIXTURES[args.example].correspondence()
    if args.expr is not None:
        return parse_polynomial(args.expr)
    text = _read_text(args.input)
    if text.lstrip().startswith("{"):
        doc = _load_json(text, args.input)
        if "entries" in doc:
            return load_matrix(doc)
        if "expr" in doc:
            return parse_polynomial(doc["expr"])
        raise ValidationError(f"{args.input}: expected a matrix document or an 'expr' field")
    return parse_polynomial(text.strip())


def _load_maps(args) -> tuple[str, str]:
    if args.input:
        doc = _load_json(_read_text(args.input), args.input)
        try:
            return doc["phi"], doc["psi"]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"{args.input}: expected 'phi' and 'psi' fields") from exc
    if args.phi is None or args.psi is None:
        raise InputError("compose needs --phi and --psi, or --input with both maps")
    return args.phi, args.psi


def _factorization(phi: str, psi: str, d: Optional[int] = None) -> Factorization:
    return Factorization(parse_fractional_map(phi, d), parse_fractional_map(psi, d))


# -- output -----------------------------------------------------------------------


def _point_doc(p):
    if p is INF:
        return "inf"
    return {"re": p.real, "im": p.imag}


def _point_text(p) -> str:
    if p is INF:
        return "inf"
    return f"{p.real:.9g}{p.imag:+.9g}i"


def witness_doc(w: TupleWitness) -> dict:
    return {
        "side": w.side,
        "x1": _point_doc(w.x1),
        "forward": [_point_doc(p) for p in w.forward],
        "back": [[_point_doc(p) for p in fb] for fb in w.back],
        "max_mismatch": w.max_mismatch,
        "verdict": w.verdict,
    }


def witness_text(w: TupleWitness) -> str:
    lines = [
        f"worst witness ({w.side} side): x1 = {_point_text(w.x1)}, mismatch {w.max_mismatch:.3e}",
        "  forward: " + ", ".join(_point_text(p) for p in w.forward),
    ]
    lines += [f"  back[{j}]: " + ", ".join(_point_text(p) for p in fb) for j, fb in enumerate(w.back)]
    return "\n".join(lines)


def report(verdict, classification=None, symmetry=None, witnesses=(), timings=None, **extra) -> dict:
    doc = {
        "verdict": verdict,
        "classification": classification,
        "symmetry": symmetry,
        "witnesses": list(witnesses),
        "timings": timings or {},
    }
    doc.update(extra)
    return doc


def _emit(args, doc: dict, text: str) -> None:
    sys.stdout.write(dumps(doc) if args.format == "json" else text.rstrip("\n") + "\n")


# -- commands ---------------------------------------------------------------------


def cmd_classify(args) -> int:
    timer = _Timer(args.timings)
    with timer("load"):
        f = _load_correspondence(args)
    with timer("classify"):
        cls = classify(f)
    _emit(args, report(cls.is_map_of_tuples, classification_doc(cls), timings=timer.values),
          classification_text(cls))
    return 0 if cls.is_map_of_tuples else 1


def cmd_factorize(args) -> int:
    timer = _Timer(args.timings)
    with timer("load"):
        f = _load_correspondence(args)
    try:
        with timer("factorize"):
            fact = factorize(f)
    except RankNotTwo as exc:
        _emit(args, report(False, {"type": "NotMapOfTuples", "rank": exc.rank, "map_of_tuples": False},
                           timings=timer.values),
              f"no separated form: coefficient matrix has rank {exc.rank}")
        return 1
    text = (
        f"Phi(x) = {fact.phi.to_str('x')}\n"
        f"Psi(y) = {fact.psi.to_str('y')}\n"
        f"scalar: {format_gaussian(fact.scalar)}  (compose(Phi, Psi) = scalar * f)"
    )
    _emit(args, report(True, factorization=factorization_doc(fact), timings=timer.values), text)
    return 0


def cmd_compose(args) -> int:
    phi, psi = _load_maps(args)
    fact = _factorization(phi, psi, args.d)
    f = compose(fact.phi, fact.psi)
    _emit(args, save_matrix(f), f"f(x, y) = {f}\n{matrix_text(f)}")
    return 0


def cmd_symmetry(args) -> int:
    timer = _Timer(args.timings)
    with timer("load"):
        f = _load_correspondence(args)
    with timer("symmetry"):
        rep = symmetry_report(f)
    _emit(args, report(True, symmetry=symmetry_doc(rep), timings=timer.values), symmetry_text(rep))
    return 0


def cmd_verify(args) -> int:
    timer = _Timer(args.timings)
    with timer("load"):
        f = _load_correspondence(args)
    with timer("classify"):
        cls = classify(f)
    try:
        with timer("oracle"):
            v = verify_map_of_tuples(f, args.samples, args.tol, args.seed, both_sides=not args.one_sided)
    except TooManyDegenerateSamples as exc:
        _emit(args, report(None, classification_doc(cls), timings=timer.values, oracle={"error": str(exc)}),
              f"INCONCLUSIVE: {exc}")
        return 1
    oracle = {
        "passed": v.passed,
        "samples": v.samples,
        "rejected": v.rejected,
        "tol": v.tol,
        "seed": v.seed,
        "worst_mismatch": v.worst.max_mismatch,
        "agrees_with_exact": v.passed == cls.is_map_of_tuples,
    }
    verdict = v.passed
    lines = [
        f"{'PASS' if v.passed else 'FAIL'}: worst chordal mismatch {v.worst.max_mismatch:.3e} "
        f"(tol {v.tol:g}, {v.samples} samples, {v.rejected} rejected, seed {v.seed})",
        f"exact classification: {cls.kind} "
        f"({'agrees' if oracle['agrees_with_exact'] else 'DISAGREES'})",
    ]
    if args.phi is not None or args.psi is not None:
        if args.phi is None or args.psi is None:
            raise InputError("--phi and --psi must be given together")
        fact = _factorization(args.phi, args.psi, f.d)
        with timer("factorization"):
            mis = factorization_mismatch(f, fact, args.samples, args.tol, args.seed)
        oracle["factorization_mismatch"] = mis
        oracle["factorization_passed"] = mis <= args.tol
        verdict = verdict and mis <= args.tol
        lines.append(f"factorization {'PASS' if mis <= args.tol else 'FAIL'}: mismatch {mis:.3e}")
    lines.append(witness_text(v.worst))
    if args.plot:
        from .plotting import plot_witness

        with timer("plot"):
            plot_witness(v.worst, args.plot)
        lines.append(f"figure: {args.plot}")
    doc = report(verdict, classification_doc(cls), witnesses=[witness_doc(v.worst)],
                 timings=timer.values, oracle=oracle)
    _emit(args, doc, "\n".join(lines))
    return 0 if verdict else 1


def cmd_examples(args) -> int:
    names = args.only or list(FIXTURES)
    unknown = [n for n in names if n not in FIXTURES]
    if unknown:
        raise InputError(f"unknown example(s): {', '.join(unknown)}; known: {', '.join(FIXTURES)}")
    timer = _Timer(args.timings)
    results = []
    for name in names:
        with timer(name):
            results.append(run_fixture(FIXTURES[name], args.samples, args.tol, args.seed))
    rows = []
    lines = []
    for r in results:
        fx = FIXTURES[r.name]
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name}: {fx.title} (worst mismatch {r.worst_mismatch:.2e})")
        lines += [f"    failed check: {k}" for k, ok in r.checks.items() if not ok]
        lines += [f"    note: {n}" for n in r.notes]
        rows.append({
            "name": r.name,
            "passed": r.passed,
            "checks": dict(r.checks),
            "notes": list(r.notes),
            "worst_mismatch": r.worst_mismatch,
            "witness": witness_doc(r.witness),
        })
    passed = all(r.passed for r in results)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} examples passed")
    if args.out_dir:
        out = _write_examples_dir(Path(args.out_dir), results, args.tol)
        lines.append(f"outputs written to {out}")
    doc = report(passed, witnesses=[row["witness"] for row in rows], timings=timer.values, fixtures=rows)
    _emit(args, doc, "\n".join(lines))
    return 0 if passed else 1


def _write_examples_dir(out: Path, results, tol: float) -> Path:
    from .plotting import plot_mismatches, plot_witness

    out.mkdir(parents=True, exist_ok=True)
    with open(out / "summary.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["example", "passed", "worst_mismatch", "failed_checks", "notes"])
        for r in results:
            failed = ";".join(k for k, ok in r.checks.items() if not ok)
            writer.writerow([r.name, r.passed, f"{r.worst_mismatch:.6e}", failed, " | ".join(r.notes)])
    for r in results:
        plot_witness(r.witness, out / f"{r.name}_witness.png", title=r.name)
    plot_mismatches([r.name for r in results], [r.worst_mismatch for r in results], tol,
                    out / "mismatch.png")
    return out


# -- parser -----------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="text", help="output format")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON output")


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="matrix JSON document or expression file ('-' for stdin)")
    src.add_argument("--expr", metavar="TEXT", help="polynomial expression, e.g. '(x*y+x+y+2)^3'")
    src.add_argument("--example", choices=sorted(FIXTURES), help="use an embedded example")


def _add_oracle(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=100, help="number of generic sample points (default 100)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="chordal tolerance (default 1e-6)")
    p.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtuples",
        description="Decide whether a polynomial correspondence is a map of d-tuples.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="exact classification (rank 2, perfect power or neither)")
    _add_source(p)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("factorize", help="separated form Phi(x) = Psi(y) of a rank-2 correspondence")
    _add_source(p)
    _add_common(p)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("compose", help="coefficient matrix of Phi(x) = Psi(y)")
    p.add_argument("--phi", metavar="TEXT", help="map in x, e.g. '(x^2+1)/(x-3)'")
    p.add_argument("--psi", metavar="TEXT", help="map in y")
    p.add_argument("--input", metavar="FILE", help="JSON with 'phi' and 'psi' fields")
    p.add_argument("--d", type=int, default=None, help="declared degree of both maps")
    _add_common(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("symmetry", help="symmetric / real / Hermitian type of the coefficient matrix")
    _add_source(p)
    _add_common(p)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("verify", help="numeric root-finding check on the Riemann sphere")
    _add_source(p)
    _add_oracle(p)
    p.add_argument("--one-sided", action="store_true", help="only start witnesses from the x side")
    p.add_argument("--phi", metavar="TEXT", help="also check this factorization numerically")
    p.add_argument("--psi", metavar="TEXT")
    p.add_argument("--plot", metavar="PNG", help="render the worst witness to an image file")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("examples", help="run every embedded worked example")
    p.add_argument("--only", nargs="+", metavar="NAME", help="restrict to these examples")
    p.add_argument("--out-dir", metavar="DIR", help="write summary.csv and witness figures here")
    _add_oracle(p)
    _add_common(p)
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        parser.error("--samples must be at least 1")
    if getattr(args, "tol", 1.0) <= 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except (DTuplesError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
