"""Flat code files: a ``# <kind> key=value ...`` header, then one
space-separated permutation per line."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .perm import Permutation


class CodeFileError(ValueError):
    pass


def format_header(kind: str, **meta) -> str:
    parts = [f"# {kind}"] + [f"{k}={v}" for k, v in meta.items()]
    return " ".join(parts)


def parse_header(line: str) -> tuple[str, dict]:
    if not line.startswith("#"):
        raise CodeFileError("missing '# <kind> ...' header")
    toks = line[1:].split()
    if not toks:
        raise CodeFileError("empty header")
    meta = {}
    for tok in toks[1:]:
        if "=" not in tok:
            raise CodeFileError(f"bad header token {tok!r}")
        k, v = tok.split("=", 1)
        meta[k] = v
    return toks[0], meta


def write_code(out: TextIO, kind: str, words: Iterable[Sequence[int]], **meta) -> None:
    out.write(format_header(kind, **meta) + "\n")
    for w in words:
        out.write(" ".join(map(str, w)) + "\n")


def save_code(path, kind: str, words, **meta) -> None:
    with open(path, "w") as fh:
        write_code(fh, kind, words, **meta)


def read_perms(lines: Iterable[str]) -> list[Permutation]:
    """Parse permutation lines, skipping blanks and ``#`` comments."""
    out = []
    for no, line in enumerate(lines, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            out.append(Permutation.parse(s))
        except ValueError as exc:
            raise CodeFileError(f"line {no}: {exc}") from None
    return out


def load_code(path) -> tuple[str, dict, list[Permutation]]:
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise CodeFileError(f"{path}: empty file")
    kind, meta = parse_header(lines[0])
    words = read_perms(lines[1:])
    declared = meta.get("M", meta.get("size"))
    if declared is not None and int(declared) != len(words):
        raise CodeFileError(f"{path}: header declares {declared} codewords, found {len(words)}")
    n = meta.get("n", meta.get("order", meta.get("k")))
    if n is not None and any(len(w) != int(n) for w in words):
        raise CodeFileError(f"{path}: codeword of the wrong length")
    return kind, meta, words
