"""共通フィクスチャ。例のケースは生成コストがあるのでセッション単位で使い回す。"""

from __future__ import annotations

import pytest

from src.generators.examples import make_example


@pytest.fixture(scope="session")
def sign_flip():
    return make_example("sign-flip-plane")


@pytest.fixture(scope="session")
def anchored():
    return make_example("anchored-drift", horizon=64)


@pytest.fixture(scope="session")
def unit_vectors():
    return make_example("unit-vectors", horizon=64)


@pytest.fixture(scope="session")
def sqrt_null():
    return make_example("sqrt-null-interleaved")


@pytest.fixture(scope="session")
def constant():
    return make_example("constant")
