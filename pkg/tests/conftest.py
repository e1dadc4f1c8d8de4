from __future__ import annotations

import pytest

from tbk import example as ex


@pytest.fixture(scope="session")
def bundle_p2():
    return ex.bogomolov_example(2)


@pytest.fixture(scope="session")
def bundle_p2_literal():
    return ex.bogomolov_example(2, convention="literal")


@pytest.fixture(scope="session")
def bundle_p3():
    return ex.bogomolov_example(3)
