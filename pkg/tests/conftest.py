import pytest

from grpdtest import corpus


@pytest.fixture
def cat():
    return corpus.load_category
