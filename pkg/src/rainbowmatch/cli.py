"""
Command line front end.

Exit codes: 0 success (full rainbow matching / valid assignment / campaign
without violations), 1 verification failed, 2 invalid input or flags,
3 no full rainbow matching found, 4 campaign violations.  ``-`` stands for
stdin or stdout wherever a file is expected.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import (InvalidAssignment, InvalidFamily, family_from_json, family_to_json,
                   is_rainbow_matching, rainbow_from_json, rainbow_to_json)
from .exact import max_rainbow_matching
from .generators import (InvalidParameter, NotLatin, cycle_family, cycle_family_extended,
                         latin_square_by_index, latin_square_family, random_family,
                         random_latin_square)
from .harness import METHODS, NEAR_FULL_MODES, check_near_full, check_upper_bound, search_lower_bound
from .solver import PreconditionViolated, SolverFault, find_full_rainbow_matching, greedy_rainbow_matching

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_INVALID, EXIT_PARTIAL, EXIT_VIOLATIONS = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == '-':
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f'cannot read {path}: {exc.strerror}') from None


def _write(path: str | None, text: str) -> None:
    if path in (None, '-'):
        sys.stdout.write(text + '\n')
    else:
        with open(path, 'w') as fh:
            fh.write(text + '\n')


def _host(text: str) -> tuple[int, int]:
    try:
        u, w = text.lower().split('x')
        return int(u), int(w)
    except ValueError:
        raise argparse.ArgumentTypeError(f'host must look like UxW, got {text!r}') from None


def cmd_solve(args) -> int:
    family = family_from_json(_read(args.file))
    if args.method == 'exact':
        r = max_rainbow_matching(family)
    elif args.method == 'greedy':
        r = greedy_rainbow_matching(family)
    else:
        r = find_full_rainbow_matching(family)
    _write(args.out, rainbow_to_json(r))
    return EXIT_OK if r.size == family.n else EXIT_PARTIAL


def cmd_verify(args) -> int:
    family = family_from_json(_read(args.file))
    r = rainbow_from_json(_read(args.assignment))
    verdict = is_rainbow_matching(family, r)
    if not verdict:
        print(f'not a rainbow matching: {verdict.reason}', file=sys.stderr)
        return EXIT_VERIFY_FAILED
    print(f'valid rainbow matching of size {r.size} of {family.n}'
          + (' (full)' if r.size == family.n else ''), file=sys.stderr)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == 'cycle':
        family = cycle_family_extended(args.n) if args.extended else cycle_family(args.n, args.k)
    elif args.kind == 'latin':
        if args.index is not None:
            L = latin_square_by_index(args.order, args.index)
        else:
            L = random_latin_square(args.order, args.seed)
        family = latin_square_family(L)
    else:
        u, w = args.host
        family = random_family(args.n, args.size, u, w, args.seed)
    _write(args.out, family_to_json(family))
    return EXIT_OK


def _report(args, report) -> int:
    _write(args.out, report.to_json(timing=args.timing))
    return EXIT_OK if report.ok else EXIT_VIOLATIONS


def cmd_check_bound(args) -> int:
    if not args.exhaustive and args.seed is None:
        raise UsageError('--seed is required unless --exhaustive is given')
    return _report(args, check_upper_bound(
        args.n, args.size, args.trials, args.seed or 0, args.method,
        host=args.host, exhaustive=args.exhaustive, jobs=args.jobs))


def cmd_search_lower(args) -> int:
    return _report(args, search_lower_bound(args.n, args.size, args.iterations, args.seed))


def cmd_check_near_full(args) -> int:
    if args.mode in ('latin-random', 'random') and args.seed is None:
        raise UsageError(f'--seed is required for mode {args.mode}')
    return _report(args, check_near_full(args.n, args.mode, args.trials, args.seed or 0,
                                         host=args.host, jobs=args.jobs))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog='rainbowmatch', description=__doc__.split('\n\n')[0].strip())
    sub = p.add_subparsers(dest='command', required=True)

    s = sub.add_parser('solve', help='find a rainbow matching for an instance file')
    s.add_argument('file')
    s.add_argument('--method', choices=['constructive', 'exact', 'greedy'], default='constructive')
    s.add_argument('--out')
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser('verify', help='check an assignment against an instance')
    s.add_argument('file')
    s.add_argument('assignment')
    s.set_defaults(func=cmd_verify)

    g = sub.add_parser('gen', help='write an instance')
    gsub = g.add_subparsers(dest='kind', required=True)
    s = gsub.add_parser('cycle')
    s.add_argument('--n', type=int, required=True)
    s.add_argument('--k', type=int, default=1)
    s.add_argument('--extended', action='store_true', help='n-1 copies of each cycle matching')
    s.add_argument('--out')
    s = gsub.add_parser('latin')
    s.add_argument('--order', type=int, required=True)
    which = s.add_mutually_exclusive_group(required=True)
    which.add_argument('--index', type=int)
    which.add_argument('--seed', type=int)
    s.add_argument('--out')
    s = gsub.add_parser('random')
    s.add_argument('--n', type=int, required=True)
    s.add_argument('--size', type=int, required=True)
    s.add_argument('--host', type=_host, required=True, metavar='UxW')
    s.add_argument('--seed', type=int, required=True)
    s.add_argument('--out')
    g.set_defaults(func=cmd_gen)

    def campaign(name, help):
        s = sub.add_parser(name, help=help)
        s.add_argument('--out')
        s.add_argument('--timing', action='store_true', help='include wall-clock time in the report')
        return s

    s = campaign('check-bound', 'every random family of the given size has a full rainbow matching')
    s.add_argument('--n', type=int, required=True)
    s.add_argument('--size', type=int, required=True)
    s.add_argument('--trials', type=int, default=100)
    s.add_argument('--seed', type=int)
    s.add_argument('--method', choices=METHODS, default='constructive')
    s.add_argument('--host', type=int)
    s.add_argument('--exhaustive', action='store_true')
    s.add_argument('--jobs', type=int, default=1)
    s.set_defaults(func=cmd_check_bound)

    s = campaign('search-lower', 'local search for a family with no full rainbow matching')
    s.add_argument('--n', type=int, required=True)
    s.add_argument('--size', type=int, required=True)
    s.add_argument('--iterations', type=int, default=1000)
    s.add_argument('--seed', type=int, required=True)
    s.set_defaults(func=cmd_search_lower)

    s = campaign('check-near-full', 'every instance has a rainbow matching of size n-1')
    s.add_argument('--n', type=int, required=True)
    s.add_argument('--mode', choices=NEAR_FULL_MODES, required=True)
    s.add_argument('--trials', type=int, default=100)
    s.add_argument('--seed', type=int)
    s.add_argument('--host', type=int)
    s.add_argument('--jobs', type=int, default=1)
    s.set_defaults(func=cmd_check_near_full)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, InvalidFamily, InvalidAssignment, InvalidParameter, NotLatin,
            PreconditionViolated) as exc:
        print(f'{parser.prog}: {type(exc).__name__}: {exc}', file=sys.stderr)
        return EXIT_INVALID
    except SolverFault as exc:
        print(f'{parser.prog}: internal fault: {type(exc).__name__}: {exc}', file=sys.stderr)
        witness = getattr(exc, 'witness', None)
        if witness is not None:
            print(json.dumps(witness), file=sys.stderr)
        return EXIT_PARTIAL


def main() -> None:
    sys.exit(run())
