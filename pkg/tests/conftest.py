import pytest

from semspace.corpus import corpus_stats, load_corpus, segment_corpus
from semspace.experiment import bundled_corpus_path, bundled_pairs_path, load_pairs
from semspace.lsa import build_space
from semspace.stemming import default_tables, make_config


@pytest.fixture(scope="session")
def rules():
    affixes, patterns = default_tables()
    return affixes, patterns


@pytest.fixture(scope="session")
def mini_corpus_dir():
    return bundled_corpus_path()


@pytest.fixture(scope="session")
def mini_corpus(mini_corpus_dir):
    return load_corpus(mini_corpus_dir)


@pytest.fixture(scope="session")
def mini_paragraphs(mini_corpus):
    return segment_corpus(mini_corpus)


@pytest.fixture(scope="session")
def mini_stats(mini_corpus):
    return corpus_stats(mini_corpus)


@pytest.fixture(scope="session")
def root_config():
    return make_config("root")


@pytest.fixture(scope="session")
def light_config():
    return make_config("light")


@pytest.fixture(scope="session")
def root_space(mini_paragraphs, mini_stats, root_config):
    return build_space(mini_paragraphs, mini_stats, root_config, k=40)


@pytest.fixture(scope="session")
def light_space(mini_paragraphs, mini_stats, light_config):
    return build_space(mini_paragraphs, mini_stats, light_config, k=40)


@pytest.fixture(scope="session")
def all_pairs():
    return load_pairs(bundled_pairs_path("Similar")) + load_pairs(bundled_pairs_path("Different"))
