# tests/conftest.py

import os
import tempfile
from pathlib import Path

import pytest

# Журнал и логи тестов не должны попадать в рабочий каталог
os.environ.setdefault("DATA_DIR", tempfile.mkdtemp(prefix="chroma-tests-"))
os.environ.setdefault("CHROMA_JOBS", "1")
os.environ.pop("CHROMA_CATALOG", None)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
