import pytest

from meaningfock import dataset


@pytest.fixture(scope="session")
def sample_membership():
    return dataset.parse_membership_csv(dataset.sample_path("sample_membership.csv"))


@pytest.fixture(scope="session")
def sample_pairs():
    return dataset.parse_pairs_csv(dataset.sample_path("sample_pairs.csv"))


@pytest.fixture(scope="session")
def sample_corpus():
    return dataset.parse_corpus(dataset.sample_path("sample_corpus.tsv"))
