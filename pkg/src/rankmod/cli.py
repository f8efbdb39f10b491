"""``rankmod`` command line.

Exit status: 0 on success, 1 when a verification or decode fails, 2 for
usage errors and unsupported requests.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from math import factorial

from . import io as cio
from .aux import Unsupported, aux_catalog, load_certificate, verify_aux
from .channel import SimConfig, simulate
from .complete import complete_code
from .decoder import DecodeFailure, decode, decode_verified
from .lmrm import (
    DEFAULT_LIMIT,
    CodeParams,
    MaterializationLimit,
    construct,
    verify_words,
)
from .perm import Permutation
from .ranking import NotInCode, rank, unrank
from .rates import delta_grid, rate_curves, rates_csv
from .search import SearchFailure
from .snake import build_snake, snake_size, verify_snake

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _certificates(paths):
    certs = {}
    for p in paths or ():
        c = load_certificate(p)
        certs[c.order] = c
    return certs


def _params(a) -> CodeParams:
    return CodeParams(a.n, a.d, rankable=a.rankable, odd_last=getattr(a, "odd_last", False))


def _check_limit(size, limit):
    if limit is not None and size > limit:
        raise MaterializationLimit(f"{size} codewords exceed --limit {limit}")


# ----------------------------------------------------------------- commands


def cmd_construct(a) -> int:
    code = construct(_params(a), _certificates(a.certificate))
    _check_limit(code.size, a.limit)
    rows = code.materialize(a.limit)
    meta = {"n": a.n, "d": a.d, "M": code.size}
    if a.rankable:
        meta["rankable"] = 1
    with _output(a.out) as fh:
        cio.write_code(fh, "lmrm", rows.tolist(), **meta)
    return OK


def cmd_verify(a) -> int:
    kind, meta, words = cio.load_code(a.infile)
    _check_limit(len(words), a.limit)
    if kind == "aux":
        rep = verify_aux(words)
        print(f"kind=aux size={rep.size} ok={rep.ok} {rep.message}")
        return OK if rep.ok else FAIL
    if kind == "ksnake":
        rep = verify_snake(words)
        print(f"kind=ksnake size={rep.size} ok={rep.ok} witness={rep.witness}")
        return OK if rep.ok else FAIL
    d = a.d if a.d is not None else (int(meta["d"]) if "d" in meta else None)
    if kind == "complete":
        d = None
    rep = verify_words(words, d, check_distance=not a.no_distance)
    ok = rep.ok
    if kind == "complete":
        n = len(words[0])
        ok = ok and len(words) == factorial(n)
    print(f"kind={kind} size={rep.size} distinct={rep.distinct} cyclic_gray={rep.cyclic_gray} "
          f"min_distance={rep.min_distance} ok={ok}" + ("" if ok else f" witness={rep.witness}"))
    return OK if ok else FAIL


def cmd_encode(a) -> int:
    code = construct(_params(a), _certificates(a.certificate))
    if not 0 <= a.rank < code.size:
        raise UsageError(f"rank must be in 0..{code.size - 1}")
    print(unrank(code, a.rank))
    return OK


def cmd_rankof(a) -> int:
    code = construct(_params(a), _certificates(a.certificate))
    sigma = Permutation.parse(a.perm)
    if len(sigma) != a.n:
        raise UsageError(f"permutation has length {len(sigma)}, expected {a.n}")
    try:
        print(rank(code, sigma))
    except NotInCode:
        print(f"not a codeword: {sigma}", file=sys.stderr)
        return FAIL
    return OK


def cmd_decode(a) -> int:
    code = construct(_params(a), _certificates(a.certificate))
    with open(a.infile) as fh:
        received = cio.read_perms(fh)
    status = OK
    with _output(a.out) as out:
        for tau in received:
            if len(tau) != a.n:
                raise UsageError(f"received word {tau} has the wrong length")
            try:
                sigma = decode_verified(code, tau) if a.verify else decode(code, tau)
                out.write(f"{sigma}\n")
            except DecodeFailure as exc:
                out.write(f"# decode-failure {exc}\n")
                status = FAIL
    return status


def cmd_simulate(a) -> int:
    cfg = SimConfig(_params(a), a.trials, a.noise, a.seed, a.workers)
    rep = simulate(cfg)
    print(f"n={a.n} d={a.d} noise={a.noise} trials={rep.trials} seed={a.seed}")
    print(f"successes={rep.successes} failures={rep.failure_count} success_rate={rep.success_rate:.6f}")
    for trial, m, tau in rep.failures:
        print(f"failure trial={trial} rank={m} received={' '.join(map(str, tau))}")
    if a.timing:
        print(f"wallclock={rep.wallclock:.3f}s", file=sys.stderr)
    return OK


def cmd_rate_table(a) -> int:
    rows = rate_curves(delta_grid(a.start, a.stop, a.step))
    with _output(a.out) as fh:
        fh.write(rates_csv(rows))
    return OK


def cmd_aux(a) -> int:
    certs = _certificates([a.certificate] if a.certificate else [])
    if a.order % 2 and a.order in certs:
        code = certs[a.order]
    else:
        code = aux_catalog(a.order, a.rankable, certs)
    _check_limit(code.size, a.limit)
    rep = verify_aux(code)
    if a.word:
        with _output(a.out) as fh:
            fh.write(f"# aux k={code.order} M={code.size} family={code.family}\n")
            fh.write("".join(f"{j}\n" for j in code.word))
    else:
        with _output(a.out) as fh:
            cio.write_code(fh, "aux", code.codewords, k=code.order, M=code.size, family=code.family)
    print(f"verify_aux: {rep.message}", file=sys.stderr)
    return OK if rep.ok else FAIL


def cmd_complete(a) -> int:
    code = complete_code(a.order)
    _check_limit(code.size, a.limit)
    with _output(a.materialize) as fh:
        cio.write_code(fh, "complete", code, n=a.order, size=code.size)
    return OK


def cmd_snake(a) -> int:
    if a.m != 2:
        raise Unsupported("only m=2 is searched by default")
    code = build_snake(a.m)
    _check_limit(code.size, a.limit)
    with _output(a.out) as fh:
        cio.write_code(fh, "ksnake", code.codewords, order=code.order, M=code.size)
    if a.verify:
        rep = verify_snake(code.codewords)
        ok = rep.ok and code.size == snake_size(a.m)
        print(f"verify_snake: ok={ok} size={code.size} witness={rep.witness}", file=sys.stderr)
        return OK if ok else FAIL
    return OK


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rankmod", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, code=True):
        sp.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="max codewords to materialize")
        if code:
            sp.add_argument("-n", type=int, required=True)
            sp.add_argument("-d", type=int, required=True)
            sp.add_argument("--rankable", action="store_true", help="use rankable auxiliary codes")
            sp.add_argument("--odd-last", action="store_true", help="put an odd-sized class in the last block")
            sp.add_argument("--certificate", action="append", help="odd-order auxiliary code certificate")

    sp = sub.add_parser("construct", help="build a code and write its codewords")
    common(sp)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_construct)

    sp = sub.add_parser("verify", help="check a code file")
    common(sp, code=False)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("-d", type=int)
    sp.add_argument("--no-distance", action="store_true")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("encode", help="codeword of a given rank")
    common(sp)
    sp.add_argument("--rank", type=int, required=True)
    sp.set_defaults(fn=cmd_encode)

    sp = sub.add_parser("rankof", help="rank of a codeword")
    common(sp)
    sp.add_argument("--perm", required=True)
    sp.set_defaults(fn=cmd_rankof)

    sp = sub.add_parser("decode", help="decode received permutations")
    common(sp)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out")
    sp.add_argument("--verify", action="store_true", help="confirm each result is a codeword")
    sp.set_defaults(fn=cmd_decode)

    sp = sub.add_parser("simulate", help="Monte-Carlo bounded-noise channel")
    common(sp)
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--noise", type=int, required=True, help="max magnitude t' of each error")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="report wall-clock time on stderr")
    sp.set_defaults(fn=cmd_simulate)

    sp = sub.add_parser("rate-table", help="CSV of asymptotic rate curves")
    common(sp, code=False)
    sp.add_argument("--from", dest="start", default="0.02")
    sp.add_argument("--to", dest="stop", default="1.0")
    sp.add_argument("--step", default="0.01")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_rate_table)

    sp = sub.add_parser("aux", help="auxiliary code of a given order")
    common(sp, code=False)
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--rankable", action="store_true")
    sp.add_argument("--certificate")
    sp.add_argument("--word", action="store_true", help="write the transition word (certificate format)")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_aux)

    sp = sub.add_parser("complete", help="complete push-to-the-top code")
    common(sp, code=False)
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--materialize", metavar="FILE")
    sp.set_defaults(fn=cmd_complete)

    sp = sub.add_parser("snake", help="Kendall tau snake in S_{2m+2}")
    common(sp, code=False)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--out")
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(fn=cmd_snake)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        return a.fn(a)
    except (UsageError, ValueError, cio.CodeFileError, FileNotFoundError) as exc:
        print(f"rankmod {a.cmd}: {exc}", file=sys.stderr)
        return USAGE
    except (Unsupported, MaterializationLimit) as exc:
        print(f"rankmod {a.cmd}: unsupported: {exc}", file=sys.stderr)
        return USAGE
    except SearchFailure as exc:
        print(f"rankmod {a.cmd}: search failed: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
