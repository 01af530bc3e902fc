import pytest

from meaningfock.dataset import ConceptPair, MembershipTriple
from meaningfock.lsa import build_space
from meaningfock.pipeline import (SimilarityRecord, memberships_from_similarities,
                                  parse_similarity_csv, run_report, similarity_table)
from meaningfock.threshold_model import ThresholdParams, membership

NARROW = ThresholdParams(0.1, 0.5, 0.9)
WIDE = ThresholdParams(0.3, 0.5, 0.7)


class TestSimilarityTable:
    def test_sample_covers_all_exemplars(self, sample_corpus, sample_membership,
                                         sample_pairs):
        space = build_space(sample_corpus, k=8)
        records, skipped_ex, skipped_pairs, clipped = similarity_table(
            space, sample_membership, sample_pairs)
        assert len(records) == len(sample_membership)
        assert skipped_ex == [] and skipped_pairs == []
        assert clipped >= 0
        for r in records:
            assert 0.0 <= r.s_a <= 1.0 + 1e-12
            assert 0.0 <= r.s_b <= 1.0 + 1e-12
            assert 0.0 <= r.s_or <= 1.0 + 1e-12

    def test_out_of_vocabulary_exemplar_skipped(self, sample_corpus, sample_pairs):
        space = build_space(sample_corpus, k=8)
        triples = [MembershipTriple("pets_farm", "Donkey", 0.5, 0.9, 0.7),
                   MembershipTriple("pets_farm", "Axolotl", 0.5, 0.5, 0.5)]
        records, skipped_ex, skipped_pairs, _ = similarity_table(
            space, triples, sample_pairs)
        assert [r.exemplar for r in records] == ["Donkey"]
        assert skipped_ex == [("pets_farm", "Axolotl")]
        assert skipped_pairs == []

    def test_out_of_vocabulary_pair_skipped(self, sample_corpus):
        space = build_space(sample_corpus, k=8)
        pairs = [ConceptPair("bad", "zeppelin", "airship")]
        triples = [MembershipTriple("bad", "Donkey", 0.5, 0.9, 0.7)]
        records, skipped_ex, skipped_pairs, _ = similarity_table(space, triples, pairs)
        assert records == []
        assert skipped_pairs == ["bad"]

    def test_unknown_pair_id_errors(self, sample_corpus, sample_pairs):
        space = build_space(sample_corpus, k=8)
        with pytest.raises(ValueError, match="no concept pair"):
            similarity_table(space, [MembershipTriple("nope", "Donkey", 0.5, 0.9, 0.7)],
                             sample_pairs)


class TestMemberships:
    def test_applies_threshold_to_each_column(self):
        records = [SimilarityRecord("p", "x", 0.05, 0.5, 0.95)]
        (t,) = memberships_from_similarities(records, NARROW)
        assert (t.mu_a, t.mu_b, t.mu_or) == (0.0, 0.5, 1.0)
        assert t.mu_b == membership(0.5, NARROW)


class TestSimilarityCsv:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "sims.csv"
        path.write_text("pair_id,exemplar,s_a,s_b,s_or\np,x,0.1,0.2,0.3\n")
        (r,) = parse_similarity_csv(path)
        assert r == SimilarityRecord("p", "x", 0.1, 0.2, 0.3)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "sims.csv"
        path.write_text("a,b\n")
        with pytest.raises(ValueError, match="header"):
            parse_similarity_csv(path)

    def test_non_numeric(self, tmp_path):
        path = tmp_path / "sims.csv"
        path.write_text("pair_id,exemplar,s_a,s_b,s_or\np,x,high,0.2,0.3\n")
        with pytest.raises(ValueError, match="line 2"):
            parse_similarity_csv(path)


class TestRunReport:
    def test_sample_report_shape(self, sample_corpus, sample_membership, sample_pairs):
        result = run_report(sample_corpus, sample_membership, sample_pairs,
                            k=8, params=NARROW)
        c = result.comparison
        assert c.n_exemplars == len(sample_membership)
        assert c.graph.total() == c.n_exemplars
        assert c.clipped_negative_count == result.clipped_negative_count
        assert result.clipped_negative_count > 0
        assert set(c.correlations) == {"pets_farm", "fruits_veg"}

    def test_widening_thresholds_moves_mass_to_classical(self, sample_corpus,
                                                         sample_membership,
                                                         sample_pairs):
        narrow = run_report(sample_corpus, sample_membership, sample_pairs,
                            k=8, params=NARROW).comparison
        wide = run_report(sample_corpus, sample_membership, sample_pairs,
                          k=8, params=WIDE).comparison
        assert wide.model_type_counts["C"] > narrow.model_type_counts["C"]
        assert wide.graph.count("D", "C") > narrow.graph.count("D", "C")

    def test_deterministic(self, sample_corpus, sample_membership, sample_pairs):
        kwargs = dict(k=8, params=NARROW, seed=5)
        r1 = run_report(sample_corpus, sample_membership, sample_pairs, **kwargs)
        r2 = run_report(sample_corpus, sample_membership, sample_pairs, **kwargs)
        assert r1.similarities == r2.similarities
        assert r1.comparison.summary_dict() == r2.comparison.summary_dict()
