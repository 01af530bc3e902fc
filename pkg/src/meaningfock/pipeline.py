"""End-to-end report pipeline: similarities -> threshold memberships -> comparison."""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from pathlib import Path

from .analysis import ComparisonResult, compare_pipeline
from .dataset import ConceptPair, Corpus, MembershipTriple, tokenize
from .lsa import (DEFAULT_STOPLIST, SemanticSpace, SvdMethod, WeightScheme,
                  build_space, similarity)
from .threshold_model import ThresholdParams, membership

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimilarityRecord:
    """Clipped similarities of one exemplar to both concepts and their disjunction."""

    pair_id: str
    exemplar: str
    s_a: float
    s_b: float
    s_or: float


@dataclass(frozen=True, eq=False)
class ReportResult:
    similarities: list[SimilarityRecord]
    model_triples: list[MembershipTriple]
    comparison: ComparisonResult
    skipped_exemplars: list[tuple[str, str]]  # (pair_id, exemplar) with no usable tokens
    skipped_pairs: list[str]  # pair_ids whose concept phrases are out of vocabulary
    clipped_negative_count: int

    def similarities_csv(self) -> str:
        rows = ["pair_id,exemplar,s_a,s_b,s_or"]
        for r in self.similarities:
            rows.append(f"{r.pair_id},{r.exemplar},{r.s_a!r},{r.s_b!r},{r.s_or!r}")
        return "\n".join(rows) + "\n"


def similarity_table(space: SemanticSpace, triples: list[MembershipTriple],
                     pairs: list[ConceptPair], clip_negative: bool = True,
                     stoplist: frozenset[str] = DEFAULT_STOPLIST,
                     stem: bool = False) -> tuple[list[SimilarityRecord],
                                                  list[tuple[str, str]], list[str], int]:
    """Compute exemplar-vs-concept similarities for every triple.

    Returns (records, skipped_exemplars, skipped_pairs, clipped_count).
    Exemplars (or whole pairs) whose phrases have no in-vocabulary tokens are
    skipped and reported rather than failing the run.
    """
    by_id = {p.pair_id: p for p in pairs}
    records: list[SimilarityRecord] = []
    skipped_exemplars: list[tuple[str, str]] = []
    clipped = 0

    skipped_pairs = [p.pair_id for p in pairs
                     if not all(_phrase_in_vocabulary(space, phrase, stoplist, stem)
                                for phrase in (p.name_a, p.name_b, p.combined_phrase))]
    for pair_id in skipped_pairs:
        log.warning("pair %s: concept phrase out of vocabulary, skipping pair", pair_id)

    def sim(phrase_a: str, phrase_b: str) -> float:
        nonlocal clipped
        raw = similarity(space, phrase_a, phrase_b, clip_negative=False,
                         stoplist=stoplist, stem=stem)
        if clip_negative and raw < 0.0:
            clipped += 1
            return 0.0
        return raw

    for t in triples:
        pair = by_id.get(t.pair_id)
        if pair is None:
            raise ValueError(f"no concept pair defined for pair_id {t.pair_id!r}")
        if pair.pair_id in skipped_pairs:
            continue
        if not _phrase_in_vocabulary(space, t.exemplar, stoplist, stem):
            log.warning("skipping exemplar %s/%s: no in-vocabulary tokens",
                        t.pair_id, t.exemplar)
            skipped_exemplars.append((t.pair_id, t.exemplar))
            continue
        records.append(SimilarityRecord(
            pair_id=t.pair_id,
            exemplar=t.exemplar,
            s_a=sim(t.exemplar, pair.name_a),
            s_b=sim(t.exemplar, pair.name_b),
            s_or=sim(t.exemplar, pair.combined_phrase),
        ))
    return records, skipped_exemplars, skipped_pairs, clipped


def _phrase_in_vocabulary(space: SemanticSpace, phrase: str,
                          stoplist: frozenset[str], stem: bool) -> bool:
    return any(tok in space.index for tok in tokenize(phrase, stem=stem)
               if tok not in stoplist)


SIMILARITY_HEADER = ("pair_id", "exemplar", "s_a", "s_b", "s_or")


def parse_similarity_csv(path) -> list[SimilarityRecord]:
    """Read a similarity CSV (header pair_id,exemplar,s_a,s_b,s_or)."""
    records: list[SimilarityRecord] = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != SIMILARITY_HEADER:
            raise ValueError(f"{path}: bad header {header!r}, "
                             f"expected {','.join(SIMILARITY_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(SIMILARITY_HEADER):
                raise ValueError(f"{path}: line {lineno}: expected "
                                 f"{len(SIMILARITY_HEADER)} fields, got {len(row)}")
            try:
                records.append(SimilarityRecord(row[0].strip(), row[1].strip(),
                                                float(row[2]), float(row[3]), float(row[4])))
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: non-numeric similarity") from None
    return records


def memberships_from_similarities(records: list[SimilarityRecord],
                                  params: ThresholdParams) -> list[MembershipTriple]:
    return [MembershipTriple(pair_id=r.pair_id, exemplar=r.exemplar,
                             mu_a=membership(r.s_a, params),
                             mu_b=membership(r.s_b, params),
                             mu_or=membership(r.s_or, params))
            for r in records]


def run_report(corpus: Corpus, triples: list[MembershipTriple], pairs: list[ConceptPair],
               *, k: int, weighting: WeightScheme = WeightScheme.LOG_ENTROPY,
               min_term_count: int = 1, svd_method: SvdMethod = SvdMethod.AUTO,
               seed: int = 0, params: ThresholdParams = ThresholdParams(0.1, 0.5, 0.9),
               tol: float = 0.0, stoplist: frozenset[str] = DEFAULT_STOPLIST,
               stem: bool = False) -> ReportResult:
    """Full comparison run against a reference membership dataset on a corpus."""
    space = build_space(corpus, k, weighting=weighting,
                        min_term_count=min_term_count, method=svd_method, seed=seed)
    records, skipped_ex, skipped_pairs, clipped = similarity_table(
        space, triples, pairs, clip_negative=True, stoplist=stoplist, stem=stem)
    model = memberships_from_similarities(records, params)

    skipped_keys = set(skipped_ex) | {(t.pair_id, t.exemplar) for t in triples
                                      if t.pair_id in skipped_pairs}
    reference = [t for t in triples if (t.pair_id, t.exemplar) not in skipped_keys]
    comparison = compare_pipeline(reference, model, tol=tol,
                                  clipped_negative_count=clipped)
    return ReportResult(
        similarities=records,
        model_triples=model,
        comparison=comparison,
        skipped_exemplars=skipped_ex,
        skipped_pairs=skipped_pairs,
        clipped_negative_count=clipped,
    )
