import pytest

from semspace.cli import main
from semspace.lsa import load_space


@pytest.fixture()
def tiny_corpus(tmp_path):
    """A fast-to-factor corpus for CLI plumbing tests."""
    root = tmp_path / "corpus"
    (root / "a").mkdir(parents=True)
    (root / "b").mkdir()
    (root / "a" / "one.txt").write_text(
        "السفير التقى الوزير\n\nالسفارة فتحت المبنى\n\nالوزير زار المبنى\n",
        encoding="utf-8",
    )
    (root / "b" / "two.txt").write_text(
        "السفير غادر المدينة\n\nالمدينة استقبلت الوزير\n\nالسفارة اغلقت الباب\n",
        encoding="utf-8",
    )
    return root


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- usage ---------------------------------------------------------------------

def test_help_exits_zero():
    with pytest.raises(SystemExit) as exc_info:
        main(["--help"])
    assert exc_info.value.code == 0


def test_missing_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main([])
    assert exc_info.value.code == 1


def test_unknown_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["stats", "--bogus", "x"])
    assert exc_info.value.code == 1


def test_sim_requires_space(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["sim", "اب", "جد"])
    assert exc_info.value.code == 1


# --- stats -----------------------------------------------------------------------

def test_stats_fixture(capsys, mini_corpus_dir):
    code, out, err = run(capsys, "stats", str(mini_corpus_dir))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "Number of Documents\t12"
    assert lines[1].startswith("Size\t")
    assert lines[2] == "Number of categories\t2"
    assert lines[3] == "Number of Words\t2569"
    assert lines[4] == "Number of Paragraphs\t205"


def test_stats_empty_dir_warns(capsys, tmp_path):
    code, out, err = run(capsys, "stats", str(tmp_path))
    assert code == 0
    assert "Number of Documents\t0" in out
    assert "warning" in err


def test_stats_missing_dir_is_io_error(capsys, tmp_path):
    code, out, err = run(capsys, "stats", str(tmp_path / "nope"))
    assert code == 2
    assert out == ""
    assert "error" in err


def test_stats_partial_failure(capsys, tmp_path):
    (tmp_path / "ok.txt").write_text("نص جيد\n", encoding="utf-8")
    (tmp_path / "bad.txt").write_bytes(b"\xff\xfebroken")
    code, out, err = run(capsys, "stats", str(tmp_path))
    assert code == 2
    assert "Number of Documents\t1" in out
    assert "skipped" in err


# --- stem ------------------------------------------------------------------------

def test_stem_output_format(capsys):
    code, out, err = run(capsys, "stem", "--mode", "root", "أتتذكروننا")
    assert code == 0
    assert out == "أتتذكروننا\tذكر\troot\tantefix=أ;prefix=تت;suffix=ون;postfix=نا\n"


def test_stem_light_multiple_words(capsys):
    code, out, err = run(capsys, "stem", "--mode", "light", "العراقية", "قلم")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "العراقية\tعراقي\tstem\tantefix=ال;suffix=ة"
    assert lines[1] == "قلم\tقلم\tstem\t-"


def test_stem_custom_rules_dir(capsys, tmp_path):
    rules = tmp_path / "rules"
    rules.mkdir()
    (rules / "antefixes.txt").write_text("ال\n", encoding="utf-8")
    (rules / "prefixes.txt").write_text("", encoding="utf-8")
    (rules / "suffixes.txt").write_text("", encoding="utf-8")
    (rules / "postfixes.txt").write_text("", encoding="utf-8")
    (rules / "patterns.txt").write_text("فعل\t0,1,2\n", encoding="utf-8")
    code, out, err = run(capsys, "stem", "--mode", "light", "--rules", str(rules), "العراقية")
    assert code == 0
    assert out.split("\t")[1] == "عراقية"


def test_stem_rules_from_environment(capsys, tmp_path, monkeypatch):
    rules = tmp_path / "rules"
    rules.mkdir()
    for name in ("antefixes", "prefixes", "suffixes", "postfixes"):
        (rules / f"{name}.txt").write_text("", encoding="utf-8")
    (rules / "patterns.txt").write_text("", encoding="utf-8")
    monkeypatch.setenv("SEMSPACE_RULES", str(rules))
    code, out, err = run(capsys, "stem", "--mode", "light", "العراقية")
    assert code == 0
    assert out.split("\t")[1] == "العراقية"  # empty rules strip nothing


# --- build / sim -------------------------------------------------------------------

def test_build_and_sim(capsys, tiny_corpus, tmp_path):
    space_file = tmp_path / "space.bin"
    code, out, err = run(
        capsys, "build", "--mode", "root", "-k", "3", str(tiny_corpus), "-o", str(space_file)
    )
    assert code == 0
    assert out == ""  # data stream stays clean
    assert "built space" in err
    space = load_space(space_file)
    assert space.k == 3
    assert space.provenance.stemmer_mode == "root"

    code, out, err = run(capsys, "sim", "--space", str(space_file), "السفير", "السفارة")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "cosine\teuclidean\tpearson\tjaccard"
    assert lines[1] == "1\t0\t1\t1"


def test_build_empty_dir_fails(capsys, tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    code, out, err = run(capsys, "build", "--mode", "light", str(empty), "-o", str(tmp_path / "s.bin"))
    assert code == 2
    assert "empty corpus" in err


def test_build_k_out_of_range(capsys, tiny_corpus, tmp_path):
    code, out, err = run(
        capsys, "build", "--mode", "light", "-k", "999", str(tiny_corpus), "-o", str(tmp_path / "s.bin")
    )
    assert code == 1
    assert "k must be" in err


def test_sim_out_of_vocabulary(capsys, tiny_corpus, tmp_path):
    space_file = tmp_path / "space.bin"
    run(capsys, "build", "--mode", "light", str(tiny_corpus), "-o", str(space_file))
    code, out, err = run(capsys, "sim", "--space", str(space_file), "السفير", "غائبتماما")
    assert code == 4
    assert "out of vocabulary" in err


def test_sim_corrupt_space_is_data_error(capsys, tmp_path):
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"not a space file at all")
    code, out, err = run(capsys, "sim", "--space", str(bad), "اب", "جد")
    assert code == 4


def test_sim_warns_on_differing_rules(capsys, tiny_corpus, tmp_path):
    from semspace.stemming import default_rules_dir

    space_file = tmp_path / "space.bin"
    run(capsys, "build", "--mode", "light", str(tiny_corpus), "-o", str(space_file))
    other_rules = tmp_path / "rules"
    other_rules.mkdir()
    for name in ("antefixes", "prefixes", "suffixes", "postfixes", "patterns"):
        source = (default_rules_dir() / f"{name}.txt").read_text(encoding="utf-8")
        (other_rules / f"{name}.txt").write_text(source, encoding="utf-8")
    (other_rules / "antefixes.txt").write_text("ال\n", encoding="utf-8")
    code, out, err = run(
        capsys, "sim", "--space", str(space_file), "--rules", str(other_rules),
        "السفير", "السفارة",
    )
    assert code == 0
    assert "rule files differ" in err


def test_sim_normalize_rescales_euclidean(capsys, tiny_corpus, tmp_path):
    import math

    space_file = tmp_path / "space.bin"
    run(capsys, "build", "--mode", "light", str(tiny_corpus), "-o", str(space_file))
    code, raw_out, _ = run(capsys, "sim", "--space", str(space_file), "السفير", "السفارة")
    assert code == 0
    code, unit_out, _ = run(
        capsys, "sim", "--space", str(space_file), "--normalize", "السفير", "السفارة"
    )
    assert code == 0
    raw = dict(zip(raw_out.splitlines()[0].split("\t"), map(float, raw_out.splitlines()[1].split("\t"))))
    unit = dict(zip(unit_out.splitlines()[0].split("\t"), map(float, unit_out.splitlines()[1].split("\t"))))
    # outputs carry six significant digits
    assert unit["cosine"] == pytest.approx(raw["cosine"], rel=1e-5)
    assert unit["euclidean"] == pytest.approx(math.sqrt(2.0 - 2.0 * raw["cosine"]), rel=1e-5)


def test_config_file_flag_precedence(capsys, tiny_corpus, tmp_path):
    config = tmp_path / "semspace.conf"
    config.write_text("k = 4\nscaling = usigma\n", encoding="utf-8")
    space_file = tmp_path / "space.bin"
    code, out, err = run(
        capsys, "build", "--mode", "light", "--config", str(config),
        "-k", "2", str(tiny_corpus), "-o", str(space_file),
    )
    assert code == 0
    space = load_space(space_file)
    assert space.k == 2  # flag wins
    assert space.scaling == "usigma"  # config fills the unset flag


def test_config_file_unknown_key(capsys, tiny_corpus, tmp_path):
    config = tmp_path / "semspace.conf"
    config.write_text("kk = 4\n", encoding="utf-8")
    code, out, err = run(
        capsys, "build", "--mode", "light", "--config", str(config),
        str(tiny_corpus), "-o", str(tmp_path / "s.bin"),
    )
    assert code == 1
    assert "unknown key" in err


# --- report ------------------------------------------------------------------------

def test_report_tiny_corpus(capsys, tiny_corpus, tmp_path):
    pairs = tmp_path / "pairs.tsv"
    pairs.write_text(
        "السفير\tالسفير\tSimilar\tsame word\t-\n"
        "السفارة\tالسفير\tDifferent\tembassy vs ambassador\t-\n"
        "غائب\tالسفير\tDifferent\toov exercise\t-\n",
        encoding="utf-8",
    )
    out_file = tmp_path / "report.tsv"
    code, out, err = run(
        capsys, "report", "--corpus", str(tiny_corpus), "--pairs", str(pairs),
        "--modes", "root,light", "-k", "3", "-o", str(out_file),
    )
    assert code == 0
    text = out_file.read_text(encoding="utf-8")
    assert "(السفير, السفير)\t-\tsame word\t1\t0\t1\t1\t" in text
    assert "oov=غائب" in text


def test_report_stdout_when_no_output(capsys, tiny_corpus, tmp_path):
    pairs = tmp_path / "pairs.tsv"
    pairs.write_text("السفير\tالسفارة\tDifferent\n", encoding="utf-8")
    code, out, err = run(
        capsys, "report", "--corpus", str(tiny_corpus), "--pairs", str(pairs), "-k", "2",
    )
    assert code == 0
    assert out.startswith("# semspace comparison report")


def test_report_bad_pairs_file(capsys, tiny_corpus, tmp_path):
    pairs = tmp_path / "pairs.tsv"
    pairs.write_text("اب فقط سطر سيء\n", encoding="utf-8")
    code, out, err = run(
        capsys, "report", "--corpus", str(tiny_corpus), "--pairs", str(pairs),
    )
    assert code == 4


def test_report_unknown_mode(capsys, tiny_corpus, tmp_path):
    pairs = tmp_path / "pairs.tsv"
    pairs.write_text("اب\tجد\tSimilar\n", encoding="utf-8")
    code, out, err = run(
        capsys, "report", "--corpus", str(tiny_corpus), "--pairs", str(pairs),
        "--modes", "root,heavy",
    )
    assert code == 1


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])
    assert exc_info.value.code == 0
