"""Command-line entry points.

Every subcommand is a thin wrapper over the library: it reads documents,
writes documents or line-oriented reports, and encodes verdicts in the
exit code: 0 success, 1 mathematical-check failure, 2 input error.
The environment variable SYMCHAIN_DEGREE_BOUND overrides the default
internal-degree bound for graded homology when --bound is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io as docio
from .complexes import FreeComplex, direct_sum, koszul, shift, tensor, validate
from .errors import SymchainError
from .homology import homology, homology_presented, is_quasi_iso
from .series import minimize, pd_finite, poinc_check, rank_series, verify_series_identity
from .sym2 import PresentedComplex, alpha, sym2, weak_sym2
from .theorems import check_s2fpd02, check_symm07, check_symm07pp, check_symm09, run_paper_corpus

OK, CHECK_FAILED, INPUT_ERROR = 0, 1, 2


def _read(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return docio.parse(fh.read())
    except OSError as exc:
        raise SymchainError(f"cannot read {path}: {exc}") from exc


def _read_complex(path: str) -> FreeComplex:
    value = _read(path)
    if not isinstance(value, FreeComplex):
        raise SymchainError(f"{path} does not contain a complex document")
    return value


def _env_bound(args) -> int | None:
    if getattr(args, "bound", None) is not None:
        return args.bound
    env = os.environ.get("SYMCHAIN_DEGREE_BOUND")
    return int(env) if env else None


def _emit(value):
    sys.stdout.write(docio.serialize(value))


def cmd_validate(args):
    X = _read_complex(args.file)
    report = validate(X)
    print(f"valid: {'true' if report.ok else 'false'}")
    for line in report.failures:
        print(f"failure: {line}")
    return OK if report.ok else CHECK_FAILED


def cmd_shift(args):
    _emit(shift(_read_complex(args.file), args.n))
    return OK


def cmd_dsum(args):
    _emit(direct_sum(_read_complex(args.a), _read_complex(args.b)))
    return OK


def cmd_tensor(args):
    _emit(tensor(_read_complex(args.a), _read_complex(args.b)))
    return OK


def cmd_koszul(args):
    ring = docio.parse_ring_string(args.ring)
    elements = [ring.scalar(text.strip()) for text in args.elements.split(",") if text.strip()]
    _emit(koszul(elements))
    return OK


def cmd_alpha(args):
    _emit(alpha(_read_complex(args.file)))
    return OK


def cmd_sym2(args):
    _emit(sym2(_read_complex(args.file)).complex)
    return OK


def cmd_weak_sym2(args):
    _emit(weak_sym2(_read_complex(args.file)))
    return OK


def _print_homology(report):
    print(f"backend: {report.ring}")
    print(f"kind: {report.kind}")
    if report.bound is not None:
        print(f"bound: {report.bound}")
    for n in report.nonzero_degrees():
        v = report.values[n]
        if report.kind == "hilbert":
            v = " ".join(f"{d}:{c}" for d, c in sorted(v.items()))
        print(f"H[{n}]: {v}")
    inf = report.inf
    print(f"inf: {'+infinity' if inf is None else inf}")


def cmd_homology(args):
    value = _read(args.file)
    if isinstance(value, PresentedComplex):
        report = homology_presented(value)
    elif isinstance(value, FreeComplex):
        report = homology(value, bound=_env_bound(args))
    else:
        raise SymchainError("homology expects a complex or presented-complex document")
    _print_homology(report)
    return OK


def cmd_quasi_iso(args):
    f = _read(args.file)
    if isinstance(f, FreeComplex) or isinstance(f, PresentedComplex):
        raise SymchainError("quasi-iso expects a chain-map document")
    verdict = is_quasi_iso(f, bound=_env_bound(args))
    state = "true" if verdict.ok else "false"
    if verdict.ok and verdict.bounded:
        state = f"true-up-to-bound-{verdict.bound}"
    print(f"quasi-isomorphism: {state}")
    if verdict.failures:
        print(f"failures: {verdict.failures[:5]}")
    return OK if verdict.ok else CHECK_FAILED


def cmd_series(args):
    X = _read_complex(args.file)
    if args.verify:
        ok = verify_series_identity(X)
        series = rank_series(sym2(X).complex)
        if ok:
            print(f"identity holds: {series}")
            return OK
        print(f"identity fails: left {series}")
        return CHECK_FAILED
    print(rank_series(X))
    return OK


def cmd_minimize(args):
    M, _q = minimize(_read_complex(args.file))
    _emit(M)
    return OK


def cmd_poinc(args):
    coeffs = [int(c) for c in args.coeffs.split(",") if c.strip()]
    report = poinc_check(coeffs, args.sign, args.order)
    print(f"order: {report.order}")
    print(f"sign: {report.sign}")
    print(f"constant: {'true' if report.constant else 'false'}")
    if report.constant:
        print(f"value: {report.constant_value}")
        print(f"case: {report.case or 'none'}")
        if report.forced_value_holds is not None:
            print(f"forced-conclusion-holds: {'true' if report.forced_value_holds else 'false'}")
    print(f"tail-zero: {'true' if report.tail_zero else 'false'}")
    return OK if (not report.constant or report.forced_value_holds is not False) else CHECK_FAILED


def _print_verdict(report):
    print(f"theorem: {report.theorem}")
    print(f"backend: {report.backend}")
    if report.bound is not None:
        print(f"bound: {report.bound}{' (bounded verification)' if report.bounded else ''}")
    conds = " ".join(
        f"{label}={'T' if value else 'F'}" for label, value in zip(report.labels, report.conditions)
    )
    print(f"conditions: {conds or '(none)'}")
    if report.equivalent is not None:
        print(f"equivalent: {'true' if report.equivalent else 'false'}")
    if report.holds is not None:
        print(f"holds: {'true' if report.holds else 'false'}")
    if report.note:
        print(f"note: {report.note}")
    print("json: " + json.dumps(report.as_dict(), sort_keys=True))


def cmd_check(args):
    X = _read_complex(args.file)
    bound = _env_bound(args)
    if args.theorem == "s2fpd01":
        report = pd_finite(X)
        print("theorem: s2fpd01")
        print(f"finite-pd: {'true' if report.finite_pd else 'false'}")
        x_len = "none" if report.x_length is None else report.x_length
        s_len = "none" if report.sym2_length is None else report.sym2_length
        print(f"minimal-length: {x_len}")
        print(f"square-minimal-length: {s_len}")
        print(f"rank-inequality: {'true' if report.rank_inequality_holds else 'false'}")
        return OK if report.rank_inequality_holds else CHECK_FAILED
    checker = {
        "symm07": check_symm07,
        "symm07pp": check_symm07pp,
        "s2fpd02": check_s2fpd02,
        "symm09": check_symm09,
    }[args.theorem]
    report = checker(X, bound=bound)
    _print_verdict(report)
    if report.equivalent is not None:
        return OK if report.equivalent else CHECK_FAILED
    return OK if report.holds else CHECK_FAILED


def cmd_corpus(args):
    if args.action != "run":
        raise SymchainError(f"unknown corpus action {args.action!r}")
    report = run_paper_corpus()
    print(report)
    return OK if report.all_pass else CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symchain",
        description="Exact symmetric squares of chain complexes and their homology.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the complex axioms of a document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("shift", help="suspend a complex")
    p.add_argument("file")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("dsum", help="direct sum of two complexes")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_dsum)

    p = sub.add_parser("tensor", help="tensor product of two complexes")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("koszul", help="Koszul complex on ring elements")
    p.add_argument("--ring", required=True)
    p.add_argument("--elements", required=True)
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("alpha", help="alternation endomorphism of the tensor square")
    p.add_argument("file")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("sym2", help="symmetric square of a complex")
    p.add_argument("file")
    p.set_defaults(func=cmd_sym2)

    p = sub.add_parser("weak-sym2", help="weak symmetric square (cokernel form)")
    p.add_argument("file")
    p.set_defaults(func=cmd_weak_sym2)

    p = sub.add_parser("homology", help="homology report of a complex")
    p.add_argument("file")
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("quasi-iso", help="test a chain-map document")
    p.add_argument("file")
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_quasi_iso)

    p = sub.add_parser("series", help="rank generating series")
    p.add_argument("file")
    p.add_argument("--verify", action="store_true", help="check the square identity")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("minimize", help="minimal complex of a document")
    p.add_argument("file")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("poinc", help="power-series dichotomy check")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--sign", required=True, choices=["+", "-"])
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_poinc)

    p = sub.add_parser("check", help="run a theorem checker")
    p.add_argument("theorem", choices=["symm07", "symm07pp", "s2fpd01", "s2fpd02", "symm09"])
    p.add_argument("file")
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("corpus", help="replay the worked-example corpus")
    p.add_argument("action", choices=["run"])
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SymchainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
