"""Command-line front end.

Exit codes:

    0  success
    1  unreadable or malformed input file
    2  Leibniz identity violated
    3  p-map invalid, or the algebra is not restrictable
    4  root spaces need a field extension beyond --max-ext
    5  right and left centralizers of the maximal torus differ
    6  a decomposition failed certification
    7  semidirect product preconditions violated
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import __version__
from .algebra import (Algebra, derived_series, is_lie, is_nilpotent, is_solvable,
                      left_center, lower_central_series, right_center, semidirect)
from .decomp import indecomposable_decomposition, uniqueness_check
from .errors import (BasisAxiomFails, CentralizersDiffer, CertificationFailed, DimensionMismatch,
                     FormatError, HypothesisFails, LeibnizIdentityViolation,
                     NoSplitWithinBound, NotDerivation, NotHomomorphism, NotLie, RandomSpotFails,
                     TheoremViolation)
from .gfield import field_make
from .io import decode_element, dump, encode_element, parse_text, to_dict
from .presets import preset, random_algebra
from .restricted import is_restrictable, jacobson_si, pmap_verify, semidirect_pmap
from .toral import cartan_subalgebra, maximal_torus, root_decomposition, root_properties_check

EXIT_OK, EXIT_PARSE, EXIT_IDENTITY, EXIT_PMAP = 0, 1, 2, 3
EXIT_NOSPLIT, EXIT_CENTRALIZERS, EXIT_CERT, EXIT_SEMIDIRECT = 4, 5, 6, 7
U64 = 2 ** 64


class CommandFailed(Exception):
    def __init__(self, code, error):
        self.code = code
        self.error = error
        super().__init__(error.get("message", ""))


def _error(exc, **extra):
    return {"type": type(exc).__name__, "message": str(exc), **extra}


def _digest(*blobs):
    h = hashlib.sha256()
    for b in blobs:
        h.update(hashlib.sha256(b).digest())
    return h.hexdigest()


def _read(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CommandFailed(EXIT_PARSE, _error(exc)) from None


def _parse(blob):
    try:
        return parse_text(blob.decode("utf-8"))
    except (FormatError, UnicodeDecodeError) as exc:
        raise CommandFailed(EXIT_PARSE, _error(exc)) from None


def _algebra(pf):
    try:
        return Algebra(pf.F, pf.sc, pf.name)
    except LeibnizIdentityViolation as exc:
        raise CommandFailed(EXIT_IDENTITY, _error(
            exc, triple=list(exc.triple), lhs=exc.lhs, rhs=exc.rhs)) from None


def _rows(V):
    return V.tolist()


def _pmap(A, pf, args):
    """The file's p-map when present (verified), else the canonical one."""
    if pf.pmap is not None:
        try:
            return pmap_verify(A, pf.pmap, args.samples, args.seed % U64), "file"
        except (BasisAxiomFails, RandomSpotFails) as exc:
            raise CommandFailed(EXIT_PMAP, _error(exc)) from None
    res = is_restrictable(A)
    if not res:
        raise CommandFailed(EXIT_PMAP, {
            "type": "NotRestrictable", "failing_index": res.failing_index,
            "message": f"(L_e{res.failing_index})^p is not a left multiplication"})
    return res.pmap, "canonical"


def cmd_verify(args):
    blob = _read(args.file)
    pf = _parse(blob)
    A = _algebra(pf)
    results = {"dim": A.n, "field": {"p": A.F.p, "k": A.F.k}, "leibniz": True}
    if pf.pmap is not None:
        _pmap(A, pf, args)
        results["pmap"] = True
    return _digest(blob), results


def _excess_free(A):
    if A.n == 0:
        return True
    E = A.basis()
    a = np.repeat(E, A.n, axis=0)
    b = np.tile(E, (A.n, 1))
    return not np.any(jacobson_si(A, a, b).excess)


def cmd_analyze(args):
    blob = _read(args.file)
    pf = _parse(blob)
    A = _algebra(pf)
    lie = is_lie(A)
    res = is_restrictable(A)
    results = {
        "dim": A.n,
        "field": {"p": A.F.p, "k": A.F.k},
        "lower_central_dims": [V.dim for V in lower_central_series(A)],
        "derived_dims": [V.dim for V in derived_series(A)],
        "nilpotent": is_nilpotent(A),
        "solvable": is_solvable(A),
        "abelian": not np.any(A.sc),
        "right_center": _rows(right_center(A)),
        "left_center": _rows(left_center(A)),
        "is_lie": bool(lie),
        "jacobson_excess_free": _excess_free(A),
        "restrictable": bool(res),
    }
    if not lie:
        results["lie_witness"] = list(lie.witness)
    if res:
        results["canonical_images"] = res.pmap.images.tolist()
    else:
        results["failing_index"] = res.failing_index
    return _digest(blob), results


def _root_table(dec):
    G = dec.field
    return [{"values": [encode_element(G, v) for v in r.values],
             "multiplicity": r.multiplicity} for r, _ in dec.roots]


def cmd_cartan(args):
    blob = _read(args.file)
    pf = _parse(blob)
    A = _algebra(pf)
    P, source = _pmap(A, pf, args)
    seed = args.seed % U64
    T = maximal_torus(A, P, seed=seed)
    try:
        H = cartan_subalgebra(A, P, torus=T, seed=seed)
    except CentralizersDiffer as exc:
        raise CommandFailed(EXIT_CENTRALIZERS, _error(
            exc, torus=_rows(exc.torus), right=_rows(exc.right), left=_rows(exc.left))) from None
    except HypothesisFails as exc:
        raise CommandFailed(EXIT_CENTRALIZERS, _error(exc, torus=_rows(T))) from None
    try:
        dec = root_decomposition(A, P, H, max_ext=args.max_ext)
    except NoSplitWithinBound as exc:
        raise CommandFailed(EXIT_NOSPLIT, _error(exc, bound=exc.bound, needed=exc.needed)) from None
    rep = root_properties_check(A, P, dec, samples=min(args.samples, 10), seed=seed)
    G = dec.field
    results = {
        "pmap_source": source,
        "torus": _rows(T),
        "cartan": _rows(H),
        "extension_multiplier": dec.extension_multiplier,
        "work_field": {"p": G.p, "k": G.k},
        "roots": _root_table(dec),
        "root_checks": {
            "semisimple_checked": rep.semisimple_checked,
            "toral_checked": rep.toral_checked,
            "pth_power_checked": rep.pth_power_checked,
            "pth_power_skipped": rep.pth_power_skipped,
        },
    }
    return _digest(blob), results


def cmd_decompose(args):
    blob = _read(args.file)
    pf = _parse(blob)
    A = _algebra(pf)
    P, source = _pmap(A, pf, args)
    seed = args.seed % U64
    try:
        dec = indecomposable_decomposition(A, P, seed=seed)
    except CertificationFailed as exc:
        raise CommandFailed(EXIT_CERT, _error(exc)) from None
    results = {"pmap_source": source, "summands": dec.report()}
    if right_center(A).dim:
        results["uniqueness"] = {"checked": False, "note": "center is nonzero"}
    else:
        second = (seed + 1) % U64
        try:
            dec2 = indecomposable_decomposition(A, P, seed=second)
        except CertificationFailed as exc:
            raise CommandFailed(EXIT_CERT, _error(exc)) from None
        perm = uniqueness_check(A, P, dec, dec2)
        results["uniqueness"] = {"checked": True, "second_seed": second, "permutation": perm}
    return _digest(blob), results


def _parse_phi(blob, A, B):
    try:
        d = json.loads(blob.decode("utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CommandFailed(EXIT_PARSE, _error(exc)) from None
    if not isinstance(d, dict) or set(d) - {"maps"}:
        raise CommandFailed(EXIT_PARSE, {"type": "FormatError",
                                         "message": "phi file must be an object with key 'maps'"})
    phi = np.zeros((A.n, B.n, B.n), dtype=np.int64)
    try:
        for item in d.get("maps", []):
            i, entries = item
            if not 0 <= i < A.n:
                raise FormatError(f"phi index {i} out of range")
            for r, c, elt in entries:
                if not (0 <= r < B.n and 0 <= c < B.n):
                    raise FormatError(f"phi entry ({r}, {c}) out of range")
                phi[i, r, c] = decode_element(A.F, elt, f"phi(e{i})[{r},{c}]")
    except (TypeError, ValueError) as exc:
        err = exc if isinstance(exc, FormatError) else FormatError(f"malformed phi entry: {exc}")
        raise CommandFailed(EXIT_PARSE, _error(err)) from None
    return phi


def cmd_semidirect(args):
    blobs = [_read(path) for path in (args.file_a, args.file_b, args.phi)]
    pa, pb = _parse(blobs[0]), _parse(blobs[1])
    A, B = _algebra(pa), _algebra(pb)
    if A.F != B.F:
        raise CommandFailed(EXIT_SEMIDIRECT, {"type": "FieldMismatch",
                                              "message": "A and B are over different fields"})
    phi = _parse_phi(blobs[2], A, B)
    try:
        S = semidirect(A, B, phi, name=args.name)
    except (NotLie, NotDerivation, NotHomomorphism, DimensionMismatch) as exc:
        raise CommandFailed(EXIT_SEMIDIRECT, _error(exc)) from None
    res = is_restrictable(S)
    results = {"restrictable": bool(res)}
    pmap = res.pmap if res else None
    if pa.pmap is not None and pb.pmap is not None:
        seed = args.seed % U64
        try:
            PA = pmap_verify(A, pa.pmap, args.samples, seed)
            PB = pmap_verify(B, pb.pmap, args.samples, seed)
        except (BasisAxiomFails, RandomSpotFails) as exc:
            raise CommandFailed(EXIT_PMAP, _error(exc)) from None
        try:
            _, pmap = semidirect_pmap(PA, PB, phi, samples=min(args.samples, 20), seed=seed)
            results["restricted_inputs"] = {"hypotheses": True}
            if not res:
                raise TheoremViolation("restricted semidirect data gave a non-restrictable product")
        except HypothesisFails as exc:
            results["restricted_inputs"] = {"hypotheses": False, "reason": str(exc)}
    results["algebra"] = to_dict(S, pmap)
    _write_algebra(args, S, pmap)
    return _digest(*blobs), results


def _write_algebra(args, A, pmap):
    if args.output:
        dump(A, args.output, pmap)


def cmd_gen(args):
    seed = args.seed % U64
    if args.random:
        A = random_algebra(field_make(args.p, args.k), np.random.default_rng(seed),
                           max_dim=args.dim or 6)
        A.name = f"random-{seed}"
    else:
        try:
            A = preset(args.preset, args.p, args.k, dim=args.dim)
        except KeyError as exc:
            raise CommandFailed(EXIT_PARSE, {"type": "UnknownPreset", "message": exc.args[0]}) from None
    pmap = None
    if args.with_pmap:
        res = is_restrictable(A)
        pmap = res.pmap if res else None
    results = {"algebra": to_dict(A, pmap)}
    _write_algebra(args, A, pmap)
    spec = json.dumps({"preset": args.preset, "random": args.random, "p": args.p, "k": args.k,
                       "dim": args.dim, "with_pmap": args.with_pmap}, sort_keys=True)
    return _digest(spec.encode()), results


COMMANDS = {
    "verify": cmd_verify,
    "analyze": cmd_analyze,
    "cartan": cmd_cartan,
    "decompose": cmd_decompose,
    "semidirect": cmd_semidirect,
    "gen": cmd_gen,
}


def _globals(parser, suppress):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=d if suppress else 0, help="64-bit seed")
    parser.add_argument("--max-ext", type=int, default=d if suppress else 6,
                        help="largest extension degree tried for root spaces")
    parser.add_argument("--format", choices=("text", "structured"),
                        default=d if suppress else "text")
    parser.add_argument("--samples", type=int, default=d if suppress else 50,
                        help="random spot checks per verification")


def build_parser():
    parser = argparse.ArgumentParser(prog="rleibniz",
                                     description="Exact toolkit for restricted Leibniz algebras.")
    _globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("verify", "analyze", "cartan", "decompose"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("file")
    sp = sub.add_parser("semidirect", parents=[common])
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    sp.add_argument("phi", help="JSON object {'maps': [[i, [[row, col, elt], ...]], ...]}")
    sp.add_argument("-o", "--output")
    sp.add_argument("--name")
    sp = sub.add_parser("gen", parents=[common])
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--preset")
    mode.add_argument("--random", action="store_true")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--dim", type=int)
    sp.add_argument("--with-pmap", action="store_true", help="include the canonical p-map")
    sp.add_argument("-o", "--output")
    return parser


def _render_text(report):
    lines = [f"{report['command']}: {report['status']} (exit {report['exit_code']})"]

    def walk(prefix, value):
        if isinstance(value, dict):
            for key in sorted(value):
                walk(f"{prefix}.{key}" if prefix else key, value[key])
        else:
            lines.append(f"  {prefix}: {json.dumps(value)}")

    walk("", report.get("results", {}))
    if "error" in report:
        walk("error", report["error"])
    lines.append(f"  seed: {report['seed']}  version: {report['version']}")
    return "\n".join(lines) + "\n"


def run(argv=None):
    """Run a command; returns ``(exit code, report dict)``."""
    args = build_parser().parse_args(argv)
    report = {"command": args.command, "seed": args.seed % U64, "version": __version__}
    try:
        digest, results = COMMANDS[args.command](args)
        report.update(input_digest=digest, results=results, status="ok", exit_code=EXIT_OK)
    except CommandFailed as exc:
        report.update(error=exc.error, status="failed", exit_code=exc.code)
    return report["exit_code"], report


def main(argv=None):
    args = build_parser().parse_args(argv)
    code, report = run(argv)
    if args.format == "structured":
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    elif args.command in ("gen", "semidirect") and code == EXIT_OK and not args.output:
        sys.stdout.write(json.dumps(report["results"]["algebra"], sort_keys=True) + "\n")
    else:
        sys.stdout.write(_render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
