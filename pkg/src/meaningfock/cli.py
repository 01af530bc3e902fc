"""Command-line entry point for the analysis pipelines.

All outputs are written atomically (temp file + rename) and are
byte-deterministic for identical inputs, flags and seed.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import click

from . import analysis, classicality, dataset, fock_model, lsa, pipeline, state_reconstruction
from .threshold_model import ThresholdParams, membership


def _write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _write_bytes(path: str | Path, blob: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _fail(e: Exception) -> None:
    raise click.ClickException(str(e))


@click.group(no_args_is_help=False)
def main() -> None:
    """Membership-data analysis: classicality typing, interference-model
    fitting, state reconstruction, and an LSA comparison pipeline."""


@main.command()
@click.option("--in", "input_path", required=True, type=click.Path(exists=True))
@click.option("--out", "output_path", required=True, type=click.Path())
@click.option("--tol", default=0.0, show_default=True,
              help="Classical band half-width for float noise.")
def classify(input_path: str, output_path: str, tol: float) -> None:
    """Append delta_d, k_d and C/D/K type columns to a membership CSV."""
    try:
        triples = dataset.parse_membership_csv(input_path)
        rows = []
        for t in triples:
            report = classicality.classify(t, tol)
            rows.append([t.pair_id, t.exemplar, repr(t.mu_a), repr(t.mu_b), repr(t.mu_or),
                         repr(report.delta_d), repr(report.k_d), report.kind.value])
    except ValueError as e:
        _fail(e)
    _write_text(output_path, _csv_text(
        ["pair_id", "exemplar", "mu_a", "mu_b", "mu_or", "delta_d", "k_d", "type"], rows))


def _strategy_from_flags(strategy: str, theta_deg: float | None,
                         m2: float | None) -> fock_model.FitStrategy:
    if strategy == "min-sector2":
        return fock_model.MinSector2()
    if strategy == "fixed-theta":
        if theta_deg is None:
            raise click.UsageError("--theta-deg is required with --strategy fixed-theta")
        return fock_model.FixedTheta(math.radians(theta_deg))
    if m2 is None:
        raise click.UsageError("--m2 is required with --strategy fixed-m2")
    return fock_model.FixedM2(m2)


@main.command()
@click.option("--in", "input_path", required=True, type=click.Path(exists=True))
@click.option("--out", "output_path", required=True, type=click.Path())
@click.option("--strategy", type=click.Choice(["min-sector2", "fixed-theta", "fixed-m2"]),
              default="min-sector2", show_default=True)
@click.option("--theta-deg", type=float, default=None,
              help="Interference angle in degrees (fixed-theta strategy).")
@click.option("--m2", type=float, default=None,
              help="Sector-2 weight (fixed-m2 strategy).")
def fit(input_path: str, output_path: str, strategy: str,
        theta_deg: float | None, m2: float | None) -> None:
    """Fit (m2, theta) per row of a membership CSV."""
    chosen = _strategy_from_flags(strategy, theta_deg, m2)
    try:
        triples = dataset.parse_membership_csv(input_path)
    except ValueError as e:
        _fail(e)
    rows = []
    for t in triples:
        try:
            f = fock_model.fit(t, chosen)
            rows.append([t.pair_id, t.exemplar, repr(f.m2), repr(f.n2),
                         repr(f.theta_degrees), repr(f.residual), "true"])
        except (fock_model.NotRepresentableError, fock_model.DegenerateInterferenceError):
            rows.append([t.pair_id, t.exemplar, "", "", "", "", "false"])
    _write_text(output_path, _csv_text(
        ["pair_id", "exemplar", "m2", "n2", "theta_deg", "residual", "representable"], rows))


@main.command()
@click.option("--in", "input_path", required=True, type=click.Path(exists=True))
@click.option("--out", "output_path", required=True, type=click.Path())
def reconstruct(input_path: str, output_path: str) -> None:
    """Rebuild concept states from JSON distributions {p_a, p_b, p_or}."""
    try:
        payload = json.loads(Path(input_path).read_text(encoding="utf-8"))
        result = state_reconstruction.reconstruct_pair(
            payload["p_a"], payload["p_b"], payload["p_or"])
    except (KeyError, ValueError) as e:
        _fail(e)

    def amp_pairs(state) -> list[list[float]]:
        return [[z.real, z.imag] for z in state.amplitudes]

    out = {
        "state_a": amp_pairs(result.state_a),
        "state_b": amp_pairs(result.state_b),
        "superposition": amp_pairs(result.superposition()),
        "phases_deg": [math.degrees(p) for p in result.phases],
        "infeasible_exemplars": list(result.infeasible_exemplars),
    }
    _write_text(output_path, _json_text(out))


@main.group(name="lsa")
def lsa_group() -> None:
    """Build and query semantic spaces."""


@lsa_group.command(name="build")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--out", "output_path", required=True, type=click.Path())
@click.option("--k", required=True, type=int, help="Target rank of the space.")
@click.option("--weighting", type=click.Choice([w.value for w in lsa.WeightScheme]),
              default=lsa.WeightScheme.LOG_ENTROPY.value, show_default=True)
@click.option("--min-term-count", default=1, show_default=True)
@click.option("--svd", "svd_method", type=click.Choice([m.value for m in lsa.SvdMethod]),
              default=lsa.SvdMethod.AUTO.value, show_default=True)
@click.option("--seed", default=0, show_default=True,
              help="Seed for the randomized SVD path.")
@click.option("--stem/--no-stem", default=False, show_default=True)
def lsa_build(corpus_path: str, output_path: str, k: int, weighting: str,
              min_term_count: int, svd_method: str, seed: int, stem: bool) -> None:
    """Corpus (directory of *.txt or TSV file) -> serialized semantic space."""
    try:
        corpus = dataset.parse_corpus(corpus_path, stem=stem)
        space = lsa.build_space(corpus, k, weighting=lsa.WeightScheme(weighting),
                                min_term_count=min_term_count,
                                method=lsa.SvdMethod(svd_method), seed=seed)
    except (ValueError, OSError) as e:
        _fail(e)
    _write_bytes(output_path, lsa.space_to_bytes(space))


@lsa_group.command(name="sim")
@click.option("--space", "space_path", required=True, type=click.Path(exists=True))
@click.option("--clip/--no-clip", default=False, show_default=True,
              help="Clip negative similarities to 0.")
@click.option("--keep-connectives", is_flag=True, default=False,
              help="Do not drop 'or'/'and' from phrases.")
@click.option("--stem/--no-stem", default=False, show_default=True)
@click.argument("phrase1")
@click.argument("phrase2")
def lsa_sim(space_path: str, clip: bool, keep_connectives: bool, stem: bool,
            phrase1: str, phrase2: str) -> None:
    """Print the cosine similarity of two phrases in a built space."""
    stoplist = frozenset() if keep_connectives else lsa.DEFAULT_STOPLIST
    try:
        space = lsa.load_space(space_path)
        value = lsa.similarity(space, phrase1, phrase2, clip_negative=clip,
                               stoplist=stoplist, stem=stem)
    except ValueError as e:
        _fail(e)
    click.echo(repr(value))


@main.command()
@click.option("--in", "input_path", required=True, type=click.Path(exists=True))
@click.option("--out", "output_path", required=True, type=click.Path())
@click.option("--sl", default=0.1, show_default=True)
@click.option("--st", default=0.5, show_default=True)
@click.option("--sh", default=0.9, show_default=True)
def threshold(input_path: str, output_path: str, sl: float, st: float, sh: float) -> None:
    """Map a similarity CSV (pair_id,exemplar,s_a,s_b,s_or) to memberships."""
    try:
        params = ThresholdParams(sl, st, sh)
        records = pipeline.parse_similarity_csv(input_path)
    except ValueError as e:
        _fail(e)
    rows = [[r.pair_id, r.exemplar, repr(membership(r.s_a, params)),
             repr(membership(r.s_b, params)), repr(membership(r.s_or, params))]
            for r in records]
    _write_text(output_path, _csv_text(list(dataset.MEMBERSHIP_HEADER), rows))


def _emit_comparison(result: analysis.ComparisonResult, out_dir: str,
                     extra_summary: dict | None = None,
                     formats: tuple[str, ...] = ("csv", "json", "dot")) -> None:
    out = Path(out_dir)
    if "csv" in formats:
        _write_text(out / "correlations.csv", result.correlations_csv())
    if "json" in formats:
        summary = result.summary_dict()
        if extra_summary:
            summary.update(extra_summary)
        _write_text(out / "summary.json", _json_text(summary))
    if "dot" in formats:
        _write_text(out / "transitions.dot", result.graph.to_dot())


@main.command()
@click.option("--ref", "ref_path", required=True, type=click.Path(exists=True))
@click.option("--model", "model_path", required=True, type=click.Path(exists=True))
@click.option("--out-dir", required=True, type=click.Path())
@click.option("--tol", default=0.0, show_default=True)
@click.option("--format", "formats", type=click.Choice(["csv", "json", "dot"]),
              multiple=True, help="Restrict which artifacts are written (default: all).")
def compare(ref_path: str, model_path: str, out_dir: str, tol: float,
            formats: tuple[str, ...]) -> None:
    """Compare a model membership CSV against a reference membership CSV."""
    try:
        reference = dataset.parse_membership_csv(ref_path)
        model = dataset.parse_membership_csv(model_path)
        result = analysis.compare_pipeline(reference, model, tol=tol)
    except ValueError as e:
        _fail(e)
    _emit_comparison(result, out_dir, formats=formats or ("csv", "json", "dot"))


@main.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--data", "data_path", required=True, type=click.Path(exists=True))
@click.option("--pairs", "pairs_path", required=True, type=click.Path(exists=True))
@click.option("--out-dir", required=True, type=click.Path())
@click.option("--k", required=True, type=int)
@click.option("--weighting", type=click.Choice([w.value for w in lsa.WeightScheme]),
              default=lsa.WeightScheme.LOG_ENTROPY.value, show_default=True)
@click.option("--min-term-count", default=1, show_default=True)
@click.option("--svd", "svd_method", type=click.Choice([m.value for m in lsa.SvdMethod]),
              default=lsa.SvdMethod.AUTO.value, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--stem/--no-stem", default=False, show_default=True)
@click.option("--keep-connectives", is_flag=True, default=False)
@click.option("--sl", default=0.1, show_default=True)
@click.option("--st", default=0.5, show_default=True)
@click.option("--sh", default=0.9, show_default=True)
@click.option("--tol", default=0.0, show_default=True)
def report(corpus_path: str, data_path: str, pairs_path: str, out_dir: str, k: int,
           weighting: str, min_term_count: int, svd_method: str, seed: int, stem: bool,
           keep_connectives: bool, sl: float, st: float, sh: float, tol: float) -> None:
    """Full pipeline: LSA similarities -> threshold memberships -> comparison."""
    stoplist = frozenset() if keep_connectives else lsa.DEFAULT_STOPLIST
    try:
        corpus = dataset.parse_corpus(corpus_path, stem=stem)
        triples = dataset.parse_membership_csv(data_path)
        pairs = dataset.parse_pairs_csv(pairs_path)
        result = pipeline.run_report(
            corpus, triples, pairs, k=k, weighting=lsa.WeightScheme(weighting),
            min_term_count=min_term_count, svd_method=lsa.SvdMethod(svd_method),
            seed=seed, params=ThresholdParams(sl, st, sh), tol=tol,
            stoplist=stoplist, stem=stem)
    except (ValueError, OSError) as e:
        _fail(e)

    out = Path(out_dir)
    _write_text(out / "similarities.csv", result.similarities_csv())
    model_rows = [[t.pair_id, t.exemplar, repr(t.mu_a), repr(t.mu_b), repr(t.mu_or)]
                  for t in result.model_triples]
    _write_text(out / "model_memberships.csv",
                _csv_text(list(dataset.MEMBERSHIP_HEADER), model_rows))
    _emit_comparison(result.comparison, out_dir, extra_summary={
        "threshold_params": {"s_l": sl, "s_t": st, "s_h": sh},
        "lsa": {"k": k, "weighting": weighting, "min_term_count": min_term_count,
                "svd": svd_method, "seed": seed},
        "skipped_exemplars": [list(x) for x in result.skipped_exemplars],
        "skipped_pairs": result.skipped_pairs,
    })


@main.command(name="verify-paper-example")
def verify_paper_example() -> None:
    """Audit the published worked example against direct formula evaluation."""
    ex = fock_model.PUBLISHED_EXAMPLE
    audit = fock_model.audit_published_example()
    click.echo(f"inputs: mu_a={ex['mu_a']}, mu_b={ex['mu_b']}, "
               f"m2={ex['m2']}, theta={ex['theta_deg']} deg")
    click.echo(f"computed mu_or: {audit.computed_mu_or!r}")
    click.echo(f"claimed mu_or:  {audit.claimed_mu_or!r}")
    click.echo(f"absolute discrepancy: {audit.discrepancy!r}")


if __name__ == "__main__":
    main()
