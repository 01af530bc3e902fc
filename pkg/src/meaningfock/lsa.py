"""Latent semantic analysis: term-document counts, weighting, truncated SVD, similarity.

Term vectors are the rows of U_k * diag(s_k) from a truncated SVD of the
weighted term-document matrix; phrase vectors are sums of term vectors and
similarity is their cosine, optionally clipped at zero for membership
pipelines.
"""

from __future__ import annotations

import json
import logging
import struct
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .dataset import Corpus, tokenize

log = logging.getLogger(__name__)

DEFAULT_STOPLIST = frozenset({"or", "and"})

# dense exact SVD below this element count, seeded randomized subspace
# iteration above it
DENSE_ELEMENT_LIMIT = 512 * 512

_MAGIC = b"LSASPACE"
FORMAT_VERSION = 1


class WeightScheme(str, Enum):
    RAW = "raw"
    LOG_ENTROPY = "log-entropy"
    TF_IDF = "tf-idf"


class SvdMethod(str, Enum):
    AUTO = "auto"
    DENSE = "dense"
    RANDOMIZED = "randomized"


@dataclass(frozen=True, eq=False)
class TermDocumentMatrix:
    terms: tuple[str, ...]
    doc_ids: tuple[str, ...]
    counts: sp.csr_matrix  # terms x docs, nonnegative ints, no all-zero rows


@dataclass(frozen=True, eq=False)
class WeightedMatrix:
    terms: tuple[str, ...]
    doc_ids: tuple[str, ...]
    values: sp.csr_matrix  # terms x docs, float


@dataclass(frozen=True, eq=False)
class SemanticSpace:
    """Rank-k term representation: term_vectors rows are U_k * diag(singular_values)."""

    terms: tuple[str, ...]
    term_vectors: np.ndarray
    singular_values: np.ndarray
    rank: int

    def __post_init__(self) -> None:
        s = np.asarray(self.singular_values, dtype=float)
        if s.ndim != 1 or len(s) != self.rank:
            raise ValueError("singular_values must have length rank")
        if np.any(s <= 0.0) or np.any(np.diff(s) > 0.0):
            raise ValueError("singular values must be positive and nonincreasing")
        if self.term_vectors.shape != (len(self.terms), self.rank):
            raise ValueError(f"term_vectors must be (n_terms, rank), "
                             f"got {self.term_vectors.shape}")

    @cached_property
    def index(self) -> dict[str, int]:
        return {term: i for i, term in enumerate(self.terms)}


def build_matrix(corpus: Corpus, min_term_count: int = 1) -> TermDocumentMatrix:
    """Count term occurrences per document, keeping terms with total count
    >= min_term_count. Vocabulary is sorted lexicographically."""
    if len(corpus) == 0:
        raise ValueError("corpus is empty")
    if min_term_count < 1:
        raise ValueError(f"min_term_count must be >= 1, got {min_term_count}")

    totals: dict[str, int] = {}
    for doc in corpus.documents:
        for token in doc.tokens:
            totals[token] = totals.get(token, 0) + 1
    terms = tuple(sorted(t for t, c in totals.items() if c >= min_term_count))
    if not terms:
        raise ValueError(f"no term reaches min_term_count={min_term_count}")
    index = {t: i for i, t in enumerate(terms)}

    rows: list[int] = []
    cols: list[int] = []
    vals: list[int] = []
    for j, doc in enumerate(corpus.documents):
        doc_counts: dict[int, int] = {}
        for token in doc.tokens:
            i = index.get(token)
            if i is not None:
                doc_counts[i] = doc_counts.get(i, 0) + 1
        for i in sorted(doc_counts):
            rows.append(i)
            cols.append(j)
            vals.append(doc_counts[i])
    counts = sp.csr_matrix(
        (vals, (rows, cols)), shape=(len(terms), len(corpus)), dtype=np.int64)
    return TermDocumentMatrix(terms=terms, doc_ids=corpus.doc_ids, counts=counts)


def weight(m: TermDocumentMatrix, scheme: WeightScheme = WeightScheme.LOG_ENTROPY) -> WeightedMatrix:
    """Apply a term-weighting scheme to raw counts.

    raw:         counts unchanged.
    log-entropy: log(1 + count) times (1 - normalized entropy of the term's
                 distribution over documents); a term spread uniformly over
                 all documents gets global weight 0, a term confined to a
                 single document gets 1.
    tf-idf:      count times smoothed idf, log((1 + n_docs)/(1 + df)) + 1.
    """
    counts = m.counts.tocsr()
    data = counts.data.astype(float)
    row_of = np.repeat(np.arange(counts.shape[0]), np.diff(counts.indptr))
    scheme = WeightScheme(scheme)

    if scheme is WeightScheme.RAW:
        weighted = data
    elif scheme is WeightScheme.LOG_ENTROPY:
        n_docs = len(m.doc_ids)
        totals = np.asarray(counts.sum(axis=1), dtype=float).ravel()
        p = data / totals[row_of]
        plogp = np.zeros(counts.shape[0])
        np.add.at(plogp, row_of, p * np.log(p))
        if n_docs > 1:
            global_w = 1.0 + plogp / np.log(n_docs)
        else:
            global_w = np.ones(counts.shape[0])
        weighted = np.log1p(data) * global_w[row_of]
    elif scheme is WeightScheme.TF_IDF:
        n_docs = len(m.doc_ids)
        df = np.diff(counts.indptr)  # counts are strictly positive where stored
        idf = np.log((1.0 + n_docs) / (1.0 + df)) + 1.0
        weighted = data * idf[row_of]
    else:  # pragma: no cover
        raise ValueError(f"unknown weighting scheme: {scheme!r}")

    values = sp.csr_matrix((weighted, counts.indices.copy(), counts.indptr.copy()),
                           shape=counts.shape)
    return WeightedMatrix(terms=m.terms, doc_ids=m.doc_ids, values=values)


def _fix_signs(u: np.ndarray, vt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic sign convention: largest-|u| component of each column positive."""
    anchor = np.argmax(np.abs(u), axis=0)
    signs = np.sign(u[anchor, np.arange(u.shape[1])])
    signs[signs == 0] = 1.0
    return u * signs, vt * signs[:, None]


def _dense_factors(a: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    return u[:, :k], s[:k], vt[:k]


def _randomized_factors(a, k: int, seed: int, oversample: int = 10,
                        power_iters: int = 4) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Seeded randomized subspace iteration (range finder + small dense SVD)."""
    n_rows, n_cols = a.shape
    p = min(k + oversample, min(n_rows, n_cols))
    rng = np.random.default_rng(seed)
    omega = rng.standard_normal((n_cols, p))
    q, _ = np.linalg.qr(a @ omega)
    for _ in range(power_iters):
        z, _ = np.linalg.qr(a.T @ q)
        q, _ = np.linalg.qr(a @ z)
    b = (a.T @ q).T  # p x n_cols, dense
    ub, s, vt = np.linalg.svd(b, full_matrices=False)
    u = q @ ub
    return u[:, :k], s[:k], vt[:k]


def svd_factors(values, k: int, method: SvdMethod = SvdMethod.AUTO,
                seed: int = 0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Top-k singular triplets (U, s, Vt) of a dense or sparse matrix.

    Near-zero singular values (below s_max * 1e-12) are dropped, so the
    returned rank can be smaller than k. Deterministic for a fixed seed.
    """
    n_rows, n_cols = values.shape
    if not 1 <= k <= min(n_rows, n_cols):
        raise ValueError(f"k must be in [1, {min(n_rows, n_cols)}], got {k}")
    nnz = values.count_nonzero() if sp.issparse(values) else np.count_nonzero(values)
    if nnz == 0:
        raise ValueError("matrix is identically zero")

    method = SvdMethod(method)
    if method is SvdMethod.AUTO:
        method = (SvdMethod.DENSE if n_rows * n_cols <= DENSE_ELEMENT_LIMIT
                  else SvdMethod.RANDOMIZED)
    if method is SvdMethod.DENSE:
        dense = values.toarray() if sp.issparse(values) else np.asarray(values, dtype=float)
        u, s, vt = _dense_factors(dense, k)
    else:
        u, s, vt = _randomized_factors(values, k, seed=seed)

    keep = s > s[0] * 1e-12
    u, s, vt = u[:, keep], s[keep], vt[keep]
    u, vt = _fix_signs(u, vt)
    return u, s, vt


def truncated_svd(m: WeightedMatrix, k: int, method: SvdMethod = SvdMethod.AUTO,
                  seed: int = 0) -> SemanticSpace:
    """Reduce a weighted matrix to a rank-k semantic space of term vectors."""
    u, s, _ = svd_factors(m.values, k, method=method, seed=seed)
    return SemanticSpace(terms=m.terms, term_vectors=u * s,
                         singular_values=s, rank=len(s))


def build_space(corpus: Corpus, k: int, weighting: WeightScheme = WeightScheme.LOG_ENTROPY,
                min_term_count: int = 1, method: SvdMethod = SvdMethod.AUTO,
                seed: int = 0) -> SemanticSpace:
    """Corpus -> counts -> weighting -> truncated SVD, in one call."""
    return truncated_svd(weight(build_matrix(corpus, min_term_count), weighting),
                         k, method=method, seed=seed)


def concept_vector(space: SemanticSpace, phrase: str,
                   stoplist: frozenset[str] = DEFAULT_STOPLIST,
                   stem: bool = False) -> np.ndarray:
    """Sum of the term vectors of the phrase's in-vocabulary tokens.

    Connectives in the stoplist are ignored; out-of-vocabulary tokens are
    skipped with a logged warning. Raises ValueError when nothing usable
    remains.
    """
    tokens = tokenize(phrase, stem=stem)
    candidates = [t for t in tokens if t not in stoplist]
    rows = [space.index[t] for t in candidates if t in space.index]
    missing = [t for t in candidates if t not in space.index]
    if missing:
        log.warning("phrase %r: skipping out-of-vocabulary token(s) %s", phrase, missing)
    if not rows:
        raise ValueError(f"phrase {phrase!r} has no in-vocabulary tokens (tokens: {tokens})")
    return space.term_vectors[rows].sum(axis=0)


def similarity(space: SemanticSpace, phrase1: str, phrase2: str,
               clip_negative: bool = False,
               stoplist: frozenset[str] = DEFAULT_STOPLIST,
               stem: bool = False) -> float:
    """Cosine between two phrase vectors; clipped at 0 if clip_negative."""
    v1 = concept_vector(space, phrase1, stoplist=stoplist, stem=stem)
    v2 = concept_vector(space, phrase2, stoplist=stoplist, stem=stem)
    n1 = float(np.linalg.norm(v1))
    n2 = float(np.linalg.norm(v2))
    if n1 == 0.0 or n2 == 0.0:
        raise ValueError(f"zero concept vector for {phrase1!r} or {phrase2!r}")
    cos = float(np.dot(v1, v2) / (n1 * n2))
    return max(0.0, cos) if clip_negative else cos


def save_space(space: SemanticSpace, path: str | Path) -> None:
    """Serialize a space to the versioned binary format (byte-deterministic)."""
    Path(path).write_bytes(space_to_bytes(space))


def space_to_bytes(space: SemanticSpace) -> bytes:
    header = json.dumps(
        {"rank": space.rank, "n_terms": len(space.terms), "terms": list(space.terms)},
        ensure_ascii=False, separators=(",", ":")).encode("utf-8")
    parts = [
        _MAGIC,
        struct.pack("<I", FORMAT_VERSION),
        struct.pack("<Q", len(header)),
        header,
        np.ascontiguousarray(space.singular_values, dtype="<f8").tobytes(),
        np.ascontiguousarray(space.term_vectors, dtype="<f8").tobytes(),
    ]
    return b"".join(parts)


def load_space(path: str | Path) -> SemanticSpace:
    return space_from_bytes(Path(path).read_bytes())


def space_from_bytes(blob: bytes) -> SemanticSpace:
    if blob[:len(_MAGIC)] != _MAGIC:
        raise ValueError("not a semantic-space file (bad magic)")
    offset = len(_MAGIC)
    (version,) = struct.unpack_from("<I", blob, offset)
    offset += 4
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported space format version {version}")
    (header_len,) = struct.unpack_from("<Q", blob, offset)
    offset += 8
    header = json.loads(blob[offset:offset + header_len].decode("utf-8"))
    offset += header_len
    rank, n_terms = header["rank"], header["n_terms"]
    s = np.frombuffer(blob, dtype="<f8", count=rank, offset=offset).copy()
    offset += rank * 8
    vectors = np.frombuffer(blob, dtype="<f8", count=n_terms * rank,
                            offset=offset).copy().reshape(n_terms, rank)
    return SemanticSpace(terms=tuple(header["terms"]), term_vectors=vectors,
                         singular_values=s, rank=rank)
