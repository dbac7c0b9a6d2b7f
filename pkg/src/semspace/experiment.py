"""Comparative runs: both stemmers crossed with the four measures over
labeled word-pair lists, rendered as sectioned TSV or markdown reports.

Out-of-vocabulary words degrade the affected row to markers instead of
failing the run; re-running with identical inputs reproduces the rendered
report byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path

import numpy as np

from .corpus import corpus_stats, load_corpus, segment_corpus
from .errors import OutOfVocabularyError, PairFormatError
from .lsa import (
    SCALING_U,
    SemanticSpace,
    build_matrix,
    factorize,
    space_fingerprint,
    truncate,
    word_vector,
    Provenance,
)
from .similarity import MEASURE_ORDER, SimilarityResult, measure_all
from .stemming import MODE_LIGHT, MODE_ROOT, StemmerConfig, make_config

LABEL_SIMILAR = "Similar"
LABEL_DIFFERENT = "Different"
LABELS = (LABEL_SIMILAR, LABEL_DIFFERENT)

DEFAULT_MODES = (MODE_ROOT, MODE_LIGHT)

_MODE_TITLES = {MODE_ROOT: "Root stemmer", MODE_LIGHT: "Light stemmer", "none": "No stemmer"}
_LABEL_TITLES = {LABEL_SIMILAR: "similar words", LABEL_DIFFERENT: "different words"}


def bundled_pairs_path(label: str) -> Path:
    name = "pairs-similar.tsv" if label == LABEL_SIMILAR else "pairs-different.tsv"
    return Path(str(files("semspace") / "data" / "pairs" / name))


def bundled_corpus_path() -> Path:
    return Path(str(files("semspace") / "data" / "mini_corpus"))


@dataclass(frozen=True)
class WordPair:
    word_a: str
    word_b: str
    label: str
    gloss: str | None = None
    transliteration: str | None = None

    def __post_init__(self):
        if not self.word_a or not self.word_b:
            raise PairFormatError("pair words must be non-empty")
        if self.label not in LABELS:
            raise PairFormatError(f"unknown pair label: {self.label!r}")


def load_pairs(path: str | Path) -> list[WordPair]:
    """Parse a pair file: word_a<TAB>word_b<TAB>label[<TAB>gloss[<TAB>translit]].

    Lines starting with '#' and blank lines are skipped; duplicates are kept.
    """
    pairs: list[WordPair] = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 3 or len(cols) > 5:
            raise PairFormatError(f"{path}:{lineno}: expected 3 to 5 tab-separated columns, got {len(cols)}")
        word_a, word_b, label = (c.strip() for c in cols[:3])
        if label not in LABELS:
            raise PairFormatError(f"{path}:{lineno}: label must be Similar or Different, got {label!r}")
        gloss = cols[3].strip() if len(cols) > 3 and cols[3].strip() else None
        translit = cols[4].strip() if len(cols) > 4 and cols[4].strip() else None
        try:
            pairs.append(WordPair(word_a, word_b, label, gloss, translit))
        except PairFormatError as exc:
            raise PairFormatError(f"{path}:{lineno}: {exc}") from None
    return pairs


@dataclass(frozen=True)
class ReportRow:
    pair: WordPair
    stemmer_mode: str
    results: tuple[SimilarityResult, ...]  # cosine, euclidean, pearson, jaccard
    oov: tuple[str, ...] = ()  # surface words missing from the space


@dataclass(frozen=True)
class ReportMetadata:
    k: int
    scaling: str
    rules_fingerprint: str
    corpus_fingerprint: str


@dataclass
class ComparisonReport:
    rows: list[ReportRow]
    metadata: ReportMetadata
    modes: tuple[str, ...]


_UNDEFINED_ROW = tuple(SimilarityResult(name, None) for name in MEASURE_ORDER)


def _unit(v: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(v))
    return v / norm if norm > 0 else v


def _evaluate_pair(
    space: SemanticSpace, config: StemmerConfig, pair: WordPair, unit_length: bool
) -> ReportRow:
    vectors = []
    missing = []
    for word in (pair.word_a, pair.word_b):
        try:
            vectors.append(word_vector(space, word, config))
        except OutOfVocabularyError:
            missing.append(word)
    if missing:
        return ReportRow(pair, config.mode, _UNDEFINED_ROW, oov=tuple(missing))
    a, b = vectors
    if unit_length:
        a, b = _unit(a), _unit(b)
    return ReportRow(pair, config.mode, measure_all(a, b))


def run_comparison(
    corpus_dir: str | Path,
    pairs: list[WordPair],
    modes: tuple[str, ...] = DEFAULT_MODES,
    k: int | None = None,
    scaling: str = SCALING_U,
    rules_dir: Path | None = None,
    unit_length: bool = False,
) -> ComparisonReport:
    """Build one space per requested stemmer over the same corpus and score every pair."""
    corpus = load_corpus(corpus_dir)
    paragraphs = segment_corpus(corpus)
    stats = corpus_stats(corpus)

    configs = [make_config(mode, rules_dir) for mode in modes]
    factored = []
    for config in configs:
        matrix = build_matrix(paragraphs, config)
        factored.append((config, matrix, factorize(matrix)))
    if k is None:
        k = min(300, min(f.n for _, _, f in factored))

    rules_fp = next((c.rules_fingerprint for c in configs if c.rules_fingerprint), "")
    corpus_fp = space_fingerprint(rules_fp, stats)

    rows: list[ReportRow] = []
    for config, matrix, factors in factored:
        provenance = Provenance(config.mode, config.rules_fingerprint,
                                space_fingerprint(config.rules_fingerprint, stats))
        space = truncate(factors, k, scaling, matrix.vocabulary, provenance,
                         n_columns=len(matrix.columns))
        for pair in pairs:
            rows.append(_evaluate_pair(space, config, pair, unit_length))
    return ComparisonReport(
        rows=rows,
        metadata=ReportMetadata(k, scaling, rules_fp, corpus_fp),
        modes=tuple(modes),
    )


def _format_value(result: SimilarityResult) -> str:
    if result.value is None:
        return "undefined"
    return format(result.value, ".6g")


def _row_cells(row: ReportRow) -> list[str]:
    words = f"({row.pair.word_a}, {row.pair.word_b})"
    translit = row.pair.transliteration or "-"
    gloss = row.pair.gloss or "-"
    if row.oov:
        measures = ["-"] * len(MEASURE_ORDER)
        notes = ";".join(f"oov={word}" for word in row.oov)
    else:
        measures = [_format_value(r) for r in row.results]
        notes = ""
    return [words, translit, gloss, *measures, notes]


_HEADER = ["Words", "Transliteration", "English Translation",
           "Cosine", "Euclidean", "Pearson", "Jaccard", "Notes"]


def _sections(report: ComparisonReport):
    for mode in report.modes:
        for label in LABELS:
            rows = [r for r in report.rows if r.stemmer_mode == mode and r.pair.label == label]
            if rows:
                yield mode, label, rows


def render_report(report: ComparisonReport, fmt: str = "tsv") -> str:
    if fmt == "tsv":
        return _render_tsv(report)
    if fmt == "markdown":
        return _render_markdown(report)
    raise ValueError(f"unknown report format: {fmt!r}")


def _render_tsv(report: ComparisonReport) -> str:
    meta = report.metadata
    lines = [
        f"# semspace comparison report\tk={meta.k}\tscaling={meta.scaling}",
        f"# rules={meta.rules_fingerprint}\tcorpus={meta.corpus_fingerprint}",
        "\t".join(_HEADER),
    ]
    for mode, label, rows in _sections(report):
        lines.append(f"## stemmer={mode}\tlabel={label}")
        for row in rows:
            lines.append("\t".join(_row_cells(row)))
    return "\n".join(lines) + "\n"


def _render_markdown(report: ComparisonReport) -> str:
    meta = report.metadata
    lines = [
        "# Word similarity comparison",
        "",
        f"- k: {meta.k}",
        f"- scaling: {meta.scaling}",
        f"- rules fingerprint: `{meta.rules_fingerprint}`",
        f"- corpus fingerprint: `{meta.corpus_fingerprint}`",
    ]
    for mode, label, rows in _sections(report):
        lines.append("")
        lines.append(f"## {_MODE_TITLES.get(mode, mode)} — {_LABEL_TITLES[label]}")
        lines.append("")
        lines.append("| " + " | ".join(_HEADER) + " |")
        lines.append("|" + "---|" * len(_HEADER))
        for row in rows:
            lines.append("| " + " | ".join(cell or "-" for cell in _row_cells(row)) + " |")
    return "\n".join(lines) + "\n"
