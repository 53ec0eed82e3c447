"""Curated code collections shipped with the package.

A corpus file lists one code per line as ``TYPE (length, sum) c1 c2 ... ck``
with ``#`` comments.  The declared length and sum are redundant on purpose:
they are checked on load so a corrupted file fails immediately.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from functools import lru_cache
from typing import List

from .sequences import CodeSequence

DEFAULT_CORPUS = "codes_strip_75_80.txt"


@dataclass(frozen=True)
class CorpusEntry:
    kind: str
    code: CodeSequence

    @property
    def length(self) -> int:
        return len(self.code.codes)

    @property
    def total(self) -> int:
        return self.code.total()


def parse_corpus_line(line: str, where: str = "<line>") -> CorpusEntry:
    """One ``TYPE (length, sum) c1 ... ck`` line; raises ValueError with a
    ``where:``-prefixed message on any inconsistency."""
    head, _, rest = line.partition("(")
    kind = head.strip()
    decl, _, numbers = rest.partition(")")
    try:
        length, total = (int(v) for v in decl.split(","))
        code = CodeSequence.parse(numbers)
    except ValueError as exc:
        raise ValueError(f"{where}: {exc}") from None
    if kind not in ("CS", "CNS", "OSO", "ONS", "OSNO"):
        raise ValueError(f"{where}: unknown type {kind!r}")
    if len(code.codes) != length:
        raise ValueError(f"{where}: declared length {length}, "
                         f"got {len(code.codes)}")
    if code.total() != total:
        raise ValueError(f"{where}: declared sum {total}, "
                         f"got {code.total()}")
    if not code.is_legal():
        raise ValueError(f"{where}: illegal code sequence")
    return CorpusEntry(kind, code)


def parse_corpus(text: str, name: str = "<corpus>") -> List[CorpusEntry]:
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entries.append(parse_corpus_line(line, where=f"{name}:{lineno}"))
    return entries


def load_corpus(path) -> List[CorpusEntry]:
    with open(path, encoding="utf-8") as f:
        return parse_corpus(f.read(), name=str(path))


def default_corpus_text() -> str:
    ref = importlib.resources.files("billiardpath.data") / DEFAULT_CORPUS
    return ref.read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _default_corpus() -> tuple:
    return tuple(parse_corpus(default_corpus_text(), name=DEFAULT_CORPUS))


def load_default_corpus() -> List[CorpusEntry]:
    return list(_default_corpus())
