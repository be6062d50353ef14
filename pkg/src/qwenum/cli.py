"""Command line front end: ``qwenum <verb> [source] [options]``.

Exit status is 0 on success, 1 when a check fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from . import catalog
from .catalog import CatalogEntry, CatalogError
from .codespace import CodeSpace, CodeSpaceError, is_real, xz_exactly_transversal
from .enumerator import (
    BRUTE_FORCE_MAX_N,
    EnumeratorPair,
    PreconditionError,
    brute_force_enumerators,
    cd_decomposition,
    distance,
    format_lines,
    format_table,
    render_number,
    restricted_A,
    stabilizer_enumerators,
    theorem_check,
)
from .pauli import PauliError
from .stabilizer import (
    EXACTLY_TRANSVERSAL,
    SWAPPED,
    StabilizerError,
    StabilizerGroup,
    all_even_check,
    is_real_code,
    normalize_transversal,
    synthesize_codewords,
    transversality_report,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

VERBS = ("enumerate", "distance", "check", "verify", "catalog")


class InputError(Exception):
    """Bad command line input; reported with exit status 2."""


@dataclass
class Source:
    label: str
    group: StabilizerGroup | None = None
    space: CodeSpace | None = None
    entry: CatalogEntry | None = None

    @property
    def n(self) -> int:
        return self.group.n if self.group is not None else self.space.n  # type: ignore[union-attr]

    def codewords(self) -> CodeSpace:
        if self.space is None:
            self.space = synthesize_codewords(self.group)  # type: ignore[arg-type]
        return self.space


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwenum",
        description="Quantum weight enumerators and the checks built on them.",
    )
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("name", nargs="?", help="catalog entry name")
    parser.add_argument("--stabilizer", metavar="PATH", help="stabilizer generator file")
    parser.add_argument("--codewords", metavar="PATH", help="codeword amplitude file")
    parser.add_argument("--method", choices=("auto", "brute", "group"), default="auto")
    parser.add_argument("--format", choices=("table", "lines"), default="table", dest="fmt")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for brute force")
    parser.add_argument(
        "--slow",
        action="store_true",
        help=f"allow brute force from n = {BRUTE_FORCE_MAX_N} upwards",
    )
    return parser


def _load_source(args: argparse.Namespace) -> Source:
    given = [s for s in (args.name, args.stabilizer, args.codewords) if s]
    if len(given) != 1:
        raise InputError("give exactly one of a catalog name, --stabilizer or --codewords")
    if args.stabilizer:
        return Source(args.stabilizer, group=catalog.load_stabilizer_file(args.stabilizer))
    if args.codewords:
        return Source(args.codewords, space=catalog.load_codeword_file(args.codewords))
    entry = catalog.get_entry(args.name)
    if entry.is_stabilizer:
        return Source(entry.name, group=entry.group(), entry=entry)
    return Source(entry.name, space=entry.codespace(), entry=entry)


def _brute_allowed(n: int, args: argparse.Namespace) -> bool:
    return n < BRUTE_FORCE_MAX_N or args.slow


def _enumerators(src: Source, args: argparse.Namespace) -> EnumeratorPair:
    method = args.method
    if method == "auto":
        method = "group" if src.group is not None else "brute"
    if method == "group":
        if src.group is None:
            raise InputError("--method group needs a stabilizer source")
        return stabilizer_enumerators(src.group)
    if not _brute_allowed(src.n, args):
        raise InputError(f"brute force at n = {src.n} needs --slow")
    return brute_force_enumerators(src.codewords(), allow_large=True, threads=args.threads)


def _render_pair(pair: EnumeratorPair, fmt: str) -> str:
    return format_lines(pair) if fmt == "lines" else format_table(pair)


def _pass(ok: bool) -> str:
    return "pass" if ok else "FAIL"


# -- verbs ------------------------------------------------------------------


def cmd_enumerate(args: argparse.Namespace, out: TextIO) -> int:
    src = _load_source(args)
    out.write(_render_pair(_enumerators(src, args), args.fmt))
    return EXIT_OK


def cmd_distance(args: argparse.Namespace, out: TextIO) -> int:
    src = _load_source(args)
    d = distance(_enumerators(src, args))
    out.write(("none" if d is None else str(d)) + "\n")
    return EXIT_OK


def cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    src = _load_source(args)
    ok = True
    if src.group is not None:
        g = src.group
        real = is_real_code(g)
        even = all_even_check(g)
        out.write(f"code: {src.label} (n={g.n}, k={g.k})\n")
        out.write(f"real: {'yes' if real else 'no'}\n")
        if g.k == 1:
            rep = transversality_report(g)
            verdict = rep.verdict
            out.write(f"X^n implements: {rep.x_implements or 'not logical'}\n")
            out.write(f"Z^n implements: {rep.z_implements or 'not logical'}\n")
        else:
            verdict = "not applicable (k != 1)"
        out.write(f"transversal: {verdict}\n")
        out.write(f"all even: {'yes' if even else 'no'}\n")
        ok = real and verdict in (EXACTLY_TRANSVERSAL, SWAPPED)
        if src.entry is not None:
            ok = ok and real == src.entry.expected_real and verdict == src.entry.expected_verdict
    else:
        space = src.codewords()
        real = is_real(space)
        x_ok, z_ok = xz_exactly_transversal(space)
        out.write(f"code: {src.label} (n={space.n}, K={space.K})\n")
        out.write(f"real: {'yes' if real else 'no'}\n")
        out.write(f"X^n exactly transversal: {'yes' if x_ok else 'no'}\n")
        out.write(f"Z^n exactly transversal: {'yes' if z_ok else 'no'}\n")
        ok = real and x_ok and z_ok
    out.write(f"result: {_pass(ok)}\n")
    return EXIT_OK if ok else EXIT_FAIL


def _hypotheses(src: Source, out: TextIO) -> tuple[bool, bool, Source]:
    """Realness and X/Z transversality, plus the source the theorems run on."""
    if src.group is not None:
        g = src.group
        real = is_real_code(g)
        if g.k != 1:
            out.write("transversal: not applicable (k != 1)\n")
            return real, False, src
        verdict = transversality_report(g).verdict
        out.write(f"transversal: {verdict}\n")
        normalized = normalize_transversal(g)
        if normalized is None:
            return real, False, src
        if normalized is not g:
            out.write("using the Hadamard-conjugated group (same enumerators)\n")
            src = Source(src.label + " (H)", group=normalized)
        return real, True, src
    space = src.codewords()
    x_ok, z_ok = xz_exactly_transversal(space)
    out.write(f"transversal: {'exact' if x_ok and z_ok else 'no'}\n")
    return is_real(space), x_ok and z_ok, src


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    src = _load_source(args)
    out.write(f"code: {src.label} (n={src.n})\n")
    real, xz, work = _hypotheses(src, out)
    out.write(f"real: {'yes' if real else 'no'}\n")
    pair = _enumerators(work, args)
    report = theorem_check(pair, real=real, xz_transversal=xz)
    if not report.applicable:
        out.write(f"theorems: not applicable ({report.reason})\n")
        return EXIT_OK
    ok = bool(report.passed)
    out.write(f"odd A_i vanish: {_pass(all(report.odd_A_zero.values()))}\n")
    out.write(f"even A_i = B_i: {_pass(all(report.even_A_equals_B.values()))}\n")
    d = report.distance
    out.write(f"distance: {'none' if d is None else d} ({'odd' if report.distance_odd else 'not odd'})\n")
    if not _brute_allowed(work.n, args):
        out.write("restricted A, C/D: skipped (needs --slow at this size)\n")
    else:
        space = work.codewords()
        try:
            restricted = restricted_A(space, allow_large=True, threads=args.threads)
            C, D = cd_decomposition(space, allow_large=True, threads=args.threads)
        except PreconditionError as exc:
            out.write(f"restricted A, C/D: not applicable ({exc})\n")
        else:
            same = list(restricted) == list(pair.A)
            total = all(b == a + c + e for a, b, c, e in zip(pair.A, pair.B, C, D))
            even = all(C[i] == 0 and D[i] == 0 for i in range(0, work.n + 1, 2))
            out.write(f"restricted A = A: {_pass(same)}\n")
            out.write(f"B = A + C + D: {_pass(total)}\n")
            out.write(f"C_i = D_i = 0 for even i: {_pass(even)}\n")
            out.write("C: " + " ".join(render_number(v) for v in C) + "\n")
            out.write("D: " + " ".join(render_number(v) for v in D) + "\n")
            ok = ok and same and total and even
    out.write(f"result: {_pass(ok)}\n")
    return EXIT_OK if ok else EXIT_FAIL


def _show_entry(entry: CatalogEntry, args: argparse.Namespace, out: TextIO) -> bool:
    out.write(f"{entry.name}: {entry.title}, {entry.kind}, n={entry.n}, K={entry.K}\n")
    if entry.is_stabilizer:
        out.write("generators: " + " ".join(entry.generators) + "\n")
        pair = stabilizer_enumerators(entry.group())
    else:
        if entry.resolve_codeword_file() is None:
            out.write(f"codewords: not available (set {catalog.ELEVEN_TWO_THREE_ENV})\n")
            pair = None
        elif not _brute_allowed(entry.n, args):
            out.write("codewords: present, brute force needs --slow\n")
            pair = None
        else:
            pair = brute_force_enumerators(entry.codespace(), allow_large=True, threads=args.threads)
    ok = True
    for name, expected, computed in (
        ("A", entry.expected_A, pair.A if pair else None),
        ("B", entry.expected_B, pair.B if pair else None),
    ):
        if expected is not None:
            out.write(f"expected {name}: " + " ".join(render_number(v) for v in expected) + "\n")
        if computed is not None:
            out.write(f"computed {name}: " + " ".join(render_number(v) for v in computed) + "\n")
        if expected is not None and computed is not None:
            diff = catalog.row_diff(expected, computed)
            out.write(f"{name} diff: {'none' if not diff else ' '.join(map(str, diff))}\n")
            ok = ok and not diff
    if pair is not None and entry.expected_distance is not None:
        d = distance(pair)
        out.write(f"distance: {d} (expected {entry.expected_distance})\n")
        ok = ok and d == entry.expected_distance
    return ok


def cmd_catalog(args: argparse.Namespace, out: TextIO) -> int:
    if args.stabilizer or args.codewords:
        raise InputError("catalog takes an optional entry name only")
    if args.name is None:
        for e in catalog.builtin_codes():
            out.write(f"{e.name:18} {e.title:24} n={e.n:<3} {e.kind}\n")
        return EXIT_OK
    ok = _show_entry(catalog.get_entry(args.name), args, out)
    return EXIT_OK if ok else EXIT_FAIL


_COMMANDS = {
    "enumerate": cmd_enumerate,
    "distance": cmd_distance,
    "check": cmd_check,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
}

_INPUT_ERRORS = (
    InputError,
    CatalogError,
    StabilizerError,
    CodeSpaceError,
    PauliError,
    PreconditionError,
    OSError,
)


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.threads < 1:
        err.write("error: --threads must be at least 1\n")
        return EXIT_INPUT
    try:
        return _COMMANDS[args.verb](args, out)
    except _INPUT_ERRORS as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
