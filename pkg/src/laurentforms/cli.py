"""Command-line front end.

Commands read JSON files, run the corresponding pipeline, and print a
machine-readable JSON report. All integers in file payloads are decimal
strings so that no consumer ever loses precision. Exit codes: 0 for
accept/success, 1 for a principled rejection, 2 for malformed input or
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .forms import (
    HermitianForm,
    InternalCheckError,
    certify_reduction,
    congruence,
    determinant,
    h2_sum,
    matrix_from_json,
)
from .homology import ChainComplex, rank_qt, torsion_order
from .laurent import LaurentPoly, assoc_eq
from .search import (
    DEFAULT_BOUNDS,
    SearchBounds,
    bounded_isometry_search,
    conjecture_probe,
    move_from_json,
    apply_move,
)
from .wallcalc import (
    GENERIC_DOUBLE_POINT,
    SurfaceModel,
    hermitize,
    lambda_self,
    mu,
    pairing_shape_check,
)

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2


class InputError(Exception):
    """Raised for unreadable, unparsable, or schema-invalid input files."""


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _load_form(path: str) -> HermitianForm:
    try:
        return HermitianForm.from_json(_load_json(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_surface(path: str) -> SurfaceModel:
    try:
        return SurfaceModel.from_json(_load_json(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_complex(path: str) -> ChainComplex:
    try:
        return ChainComplex.from_json(_load_json(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _bounds_from_args(args) -> SearchBounds:
    return SearchBounds(
        max_depth=args.depth,
        transvection_degree=args.deg,
        transvection_coeff=args.coeff,
        unit_exponent=args.unit_exp,
    )


# -- command handlers ---------------------------------------------------------


def _cmd_check(args) -> int:
    form = _load_form(args.form)
    verdict = certify_reduction(form, prenormalize=args.prenormalize)
    _emit(verdict.to_json(), args.output)
    return EXIT_OK if verdict.accepted else EXIT_REJECT


def _cmd_reduce(args) -> int:
    form = _load_form(args.form)
    verdict = certify_reduction(form, prenormalize=args.prenormalize)
    if not verdict.accepted:
        _emit({"verdict": "reject", "reason": verdict.reason}, args.output)
        return EXIT_REJECT
    _emit(verdict.certificate.to_json(), args.output)
    return EXIT_OK


def _cmd_wall(args) -> int:
    surface = _load_surface(args.surface)
    mu_class = mu(surface)
    lam = lambda_self(surface)
    payload = {
        "label": surface.label,
        "mu": mu_class.to_json(),
        "mu_plus_conjugate": hermitize(mu_class).to_json(),
        "lambda": lam.to_json(),
    }
    shape_applicable = surface.euler == 0 and not any(
        e.kind == GENERIC_DOUBLE_POINT for e in surface.events
    )
    if shape_applicable:
        payload["c"] = pairing_shape_check(surface).to_json()
    else:
        payload["c"] = None
    _emit(payload, args.output)
    return EXIT_OK


def _cmd_homology(args) -> int:
    complex_ = _load_complex(args.complex)
    betti = complex_.betti_qt()
    torsion = []
    for d in complex_.differentials:
        rows, cols = len(d), len(d[0]) if d else 0
        if rows == cols and rows > 0 and rank_qt(d) == rows:
            torsion.append(torsion_order(d).to_json())
        else:
            torsion.append(None)
    payload = {
        "ranks": [str(r) for r in complex_.ranks],
        "betti_qt": [str(b) for b in betti],
        "euler_check": complex_.euler_check(),
        "torsion_orders": torsion,
    }
    _emit(payload, args.output)
    return EXIT_OK


def _cmd_search(args) -> int:
    form = _load_form(args.form)
    target = _load_form(args.target)
    if form.rank != target.rank:
        raise InputError(f"rank mismatch: {form.rank} vs {target.rank}")
    outcome = bounded_isometry_search(form, target, _bounds_from_args(args))
    _emit(outcome.to_json(), args.output)
    return EXIT_OK if outcome.found else EXIT_REJECT


def _cmd_probe(args) -> int:
    form = _load_form(args.form)
    if form.rank not in (2, 4):
        raise InputError(f"probe needs rank 2 or 4, got {form.rank}")
    report = conjecture_probe(form, _bounds_from_args(args))
    _emit(report.to_json(), args.output)
    return EXIT_OK


def _cmd_replay(args) -> int:
    form = _load_form(args.form)
    obj = _load_json(args.certificate)
    if isinstance(obj, dict) and "moves" in obj:
        return _replay_moves(obj, form)
    try:
        if not isinstance(obj, dict):
            raise ValueError("certificate must be an object")
        for key in ("g", "c_list", "P", "det_canonical"):
            if key not in obj:
                raise ValueError(f"certificate is missing {key!r}")
        g = int(obj["g"])
        p = matrix_from_json(obj["P"])
        det_canonical = LaurentPoly.from_json(obj["det_canonical"])
    except ValueError as exc:
        raise InputError(f"{args.certificate}: {exc}") from exc
    if len(p) != form.rank or form.rank != 2 * g:
        raise InputError(
            f"certificate rank {len(p)} / genus {g} does not match form rank {form.rank}"
        )
    if determinant(p).is_unit() is None:
        print("replay mismatch: base change determinant is not a unit", file=sys.stderr)
        return EXIT_REJECT
    replayed = congruence(p, form)
    target = h2_sum(g)
    for i in range(form.rank):
        for j in range(form.rank):
            if replayed.entries[i][j] != target.entries[i][j]:
                print(f"replay mismatch at entry ({i},{j})", file=sys.stderr)
                return EXIT_REJECT
    det_a = determinant(form)
    if det_a.normalize_associate()[0] != det_canonical:
        print("replay mismatch: recorded canonical determinant", file=sys.stderr)
        return EXIT_REJECT
    if not assoc_eq(det_a, determinant(target)):
        print("replay mismatch: determinant not associate to target", file=sys.stderr)
        return EXIT_REJECT
    print("replay ok")
    return EXIT_OK


def _replay_moves(obj: dict, form: HermitianForm) -> int:
    try:
        moves = [move_from_json(m) for m in obj["moves"]]
        target_entries = matrix_from_json(obj["target"]) if "target" in obj else None
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad move list: {exc}") from exc
    entries = form.entries
    for move in moves:
        entries = apply_move(entries, move)
    if target_entries is None:
        target_entries = h2_sum(form.rank // 2).entries
    if entries != target_entries:
        print("replay mismatch: moves do not reach the target", file=sys.stderr)
        return EXIT_REJECT
    print("replay ok")
    return EXIT_OK


def _add_bounds_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--depth", type=int, default=DEFAULT_BOUNDS.max_depth)
    parser.add_argument("--deg", type=int, default=DEFAULT_BOUNDS.transvection_degree)
    parser.add_argument("--coeff", type=int, default=DEFAULT_BOUNDS.transvection_coeff)
    parser.add_argument("--unit-exp", type=int, default=DEFAULT_BOUNDS.unit_exponent)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laurentforms",
        description="Exact Hermitian-form algebra over Z[t, t^-1]",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="recognize a form and certify its reduction")
    p.add_argument("form")
    p.add_argument("--prenormalize", action="store_true",
                   help="rescale basis vectors by units before recognition")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("reduce", help="emit the reduction certificate for a form")
    p.add_argument("form")
    p.add_argument("--prenormalize", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("wall", help="evaluate the self-intersection calculus on a surface model")
    p.add_argument("surface")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_wall)

    p = sub.add_parser("homology", help="Betti numbers and torsion orders of a chain complex")
    p.add_argument("complex")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_homology)

    p = sub.add_parser("search", help="bounded congruence search from one form to another")
    p.add_argument("form")
    p.add_argument("target")
    _add_bounds_args(p)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("probe", help="stable-vs-direct reducibility probe")
    p.add_argument("form")
    _add_bounds_args(p)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_probe)

    p = sub.add_parser("replay", help="re-verify a certificate against a form")
    p.add_argument("certificate")
    p.add_argument("form")
    p.set_defaults(handler=_cmd_replay)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        raise
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
