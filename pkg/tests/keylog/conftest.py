import pytest

from pytlsdecrypt.keylog import KeyLogEntry, KeyLogLabel
from tests.keylog.corpus import (
    Corpus,
    build_corpus,
    client_random,
    master_secret,
)


@pytest.fixture
def entry() -> KeyLogEntry:
    return KeyLogEntry(
        KeyLogLabel.CLIENT_RANDOM, client_random(1), master_secret(1)
    )


@pytest.fixture
def corpus() -> Corpus:
    return build_corpus()
