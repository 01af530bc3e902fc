"""Membership-weight datasets and text corpora: parsing, validation, persistence."""

from __future__ import annotations

import csv
import logging
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

log = logging.getLogger(__name__)

MEMBERSHIP_HEADER = ("pair_id", "exemplar", "mu_a", "mu_b", "mu_or")
PAIRS_HEADER = ("pair_id", "name_a", "name_b")

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


class MembershipParseError(ValueError):
    """Malformed membership CSV (bad header, field count, or number syntax)."""


class MembershipValidationError(ValueError):
    """Row parsed but violates a field constraint (e.g. weight outside [0, 1])."""


def _check_weight(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise MembershipValidationError(f"{name} must be in [0, 1], got {value!r}")


@dataclass(frozen=True)
class MembershipTriple:
    """Measured weights mu(A), mu(B) and mu(A or B) for one exemplar of a concept pair."""

    pair_id: str
    exemplar: str
    mu_a: float
    mu_b: float
    mu_or: float

    def __post_init__(self) -> None:
        if not self.exemplar:
            raise MembershipValidationError("exemplar must be nonempty")
        _check_weight("mu_a", self.mu_a)
        _check_weight("mu_b", self.mu_b)
        _check_weight("mu_or", self.mu_or)


class Connective(Enum):
    OR = "or"


@dataclass(frozen=True)
class ConceptPair:
    """A pair of concept names joined by a connective (only OR is supported)."""

    pair_id: str
    name_a: str
    name_b: str
    connective: Connective = Connective.OR

    def __post_init__(self) -> None:
        if not self.name_a or not self.name_b:
            raise ValueError("concept names must be nonempty")

    @property
    def combined_phrase(self) -> str:
        return f"{self.name_a} {self.connective.value} {self.name_b}"


@dataclass(frozen=True)
class Document:
    doc_id: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Corpus:
    """Immutable ordered collection of tokenized documents with unique ids."""

    documents: tuple[Document, ...]

    def __post_init__(self) -> None:
        ids = [d.doc_id for d in self.documents]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate doc_ids: {dupes}")

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def doc_ids(self) -> tuple[str, ...]:
        return tuple(d.doc_id for d in self.documents)


def naive_stem(token: str) -> str:
    """Strip a few common English suffixes. Intentionally crude; off by default."""
    if token.endswith("sses"):
        return token[:-2]
    if token.endswith("ies") and len(token) > 4:
        return token[:-3] + "y"
    if token.endswith("s") and not token.endswith("ss") and len(token) > 3:
        return token[:-1]
    return token


def tokenize(text: str, stem: bool = False) -> list[str]:
    """Unicode-lowercase and split on non-alphanumeric runs. Idempotent."""
    tokens = _TOKEN_RE.findall(text.casefold())
    if stem:
        tokens = [naive_stem(t) for t in tokens]
    return tokens


def parse_membership_csv(path: str | os.PathLike) -> list[MembershipTriple]:
    """Read a membership CSV (header pair_id,exemplar,mu_a,mu_b,mu_or) into triples.

    Row order is preserved. Raises MembershipParseError with the offending
    line number for malformed input and MembershipValidationError (naming the
    field) for out-of-range weights.
    """
    path = Path(path)
    triples: list[MembershipTriple] = []
    seen: set[tuple[str, str]] = set()
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MembershipParseError(f"{path}: empty file, expected header "
                                       f"{','.join(MEMBERSHIP_HEADER)}") from None
        if tuple(h.strip() for h in header) != MEMBERSHIP_HEADER:
            raise MembershipParseError(
                f"{path}: line 1: bad header {header!r}, expected {','.join(MEMBERSHIP_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(MEMBERSHIP_HEADER):
                raise MembershipParseError(
                    f"{path}: line {lineno}: expected {len(MEMBERSHIP_HEADER)} fields, got {len(row)}")
            pair_id, exemplar = row[0].strip(), row[1].strip()
            weights = {}
            for name, raw in zip(("mu_a", "mu_b", "mu_or"), row[2:]):
                try:
                    weights[name] = float(raw)
                except ValueError:
                    raise MembershipParseError(
                        f"{path}: line {lineno}: {name} is not a number: {raw!r}") from None
            try:
                triple = MembershipTriple(pair_id, exemplar, **weights)
            except MembershipValidationError as e:
                raise MembershipValidationError(f"{path}: line {lineno}: {e}") from None
            key = (triple.pair_id, triple.exemplar)
            if key in seen:
                raise MembershipParseError(
                    f"{path}: line {lineno}: duplicate (pair_id, exemplar) {key!r}")
            seen.add(key)
            triples.append(triple)
    return triples


def write_membership_csv(triples: list[MembershipTriple], path: str | os.PathLike) -> None:
    """Write triples back out in the canonical CSV schema (round-trips exactly)."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(MEMBERSHIP_HEADER)
        for t in triples:
            writer.writerow([t.pair_id, t.exemplar, repr(t.mu_a), repr(t.mu_b), repr(t.mu_or)])


def parse_pairs_csv(path: str | os.PathLike) -> list[ConceptPair]:
    """Read a concept-pair CSV (header pair_id,name_a,name_b)."""
    path = Path(path)
    pairs: list[ConceptPair] = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != PAIRS_HEADER:
            raise MembershipParseError(
                f"{path}: line 1: bad header {header!r}, expected {','.join(PAIRS_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(PAIRS_HEADER):
                raise MembershipParseError(
                    f"{path}: line {lineno}: expected {len(PAIRS_HEADER)} fields, got {len(row)}")
            pairs.append(ConceptPair(row[0].strip(), row[1].strip(), row[2].strip()))
    return pairs


def _max_threads(requested: int | None) -> int:
    env = os.environ.get("MEANINGFOCK_THREADS")
    cap = int(env) if env else (os.cpu_count() or 1)
    n = requested if requested is not None else cap
    return max(1, min(n, cap))


def parse_corpus(source: str | os.PathLike, stem: bool = False,
                 max_threads: int | None = None) -> Corpus:
    """Build a Corpus from a directory of *.txt files or a TSV (doc_id<TAB>text) file.

    Empty documents (no tokens after normalization) are dropped; the dropped
    count is logged. Files in directory mode are read concurrently but merged
    in sorted-filename order, so the result is deterministic.
    """
    source = Path(source)
    if source.is_dir():
        files = sorted(source.glob("*.txt"))
        with ThreadPoolExecutor(max_workers=_max_threads(max_threads)) as pool:
            texts = list(pool.map(lambda p: p.read_text(encoding="utf-8"), files))
        raw = [(p.stem, text) for p, text in zip(files, texts)]
    else:
        raw = []
        with source.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                doc_id, sep, text = line.partition("\t")
                if not sep:
                    doc_id, text = f"doc{lineno:05d}", line
                raw.append((doc_id, text))

    documents = []
    dropped = 0
    for doc_id, text in raw:
        tokens = tokenize(text, stem=stem)
        if tokens:
            documents.append(Document(doc_id, tuple(tokens)))
        else:
            dropped += 1
    if dropped:
        log.warning("dropped %d empty document(s) from %s", dropped, source)
    return Corpus(tuple(documents))


def sample_path(name: str) -> Path:
    """Path to a bundled sample data file (e.g. 'sample_membership.csv')."""
    return Path(str(resources.files("meaningfock").joinpath("data", name)))
