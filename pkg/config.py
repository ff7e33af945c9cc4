# config.py

import os


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Переменная окружения {name} должна быть целым числом, получено {raw!r}") from None


# Каталог с данными (журнал прогонов, логи). В Docker монтируется ./data в /app/data.
_PROJECT_ROOT = os.path.dirname(os.path.abspath(__file__))
DATA_DIR = os.environ.get("DATA_DIR", _PROJECT_ROOT)
os.makedirs(DATA_DIR, exist_ok=True)

# Журнал прогонов (SQLite)
DB_PATH = os.path.join(DATA_DIR, "runs.db")

# Логи
LOG_FILE = os.path.join(DATA_DIR, "chroma.log")
LOG_LEVEL = os.environ.get("CHROMA_LOG_LEVEL", "INFO").upper()

# Сид для всех выборочных проверок; печатается в каждом отчёте
DEFAULT_SEED = _env_int("CHROMA_SEED", 7)

# Параллелизм перебора (--jobs). 0 или пусто = все доступные ядра
DEFAULT_JOBS = _env_int("CHROMA_JOBS", 0) or (os.cpu_count() or 1)

# Выборочный режим: число случайных назначений и палитра.
# Палитра выборки — max(профиль) + k, k выбирается с весами SAMPLE_PALETTE_WEIGHTS[k].
# На широкой палитре случайные списки почти не пересекаются и узкие места не находятся.
SAMPLE_SIZE = 10_000
SAMPLE_PALETTE_WEIGHTS = (4, 2, 1)

# Минимальное число независимых частей перебора.
# От --jobs не зависит, поэтому счётчики и свидетели одинаковы при любом N.
PARTITION_TARGET = 64

# Необязательный JSON-каталог конфигураций вместо встроенной таблицы
CATALOG_FILE = os.environ.get("CHROMA_CATALOG") or None
