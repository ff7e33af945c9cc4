# utils/catalog_file.py

import json
import logging
import os
from typing import Dict, Optional, Sequence, Tuple

from config import CATALOG_FILE
from services.catalog import CATALOG, CatalogError, Configuration, build_catalog

logger = logging.getLogger(__name__)

# Кэш по (путь -> (mtime, каталог)): файл перечитывается только после изменения
_cache: Dict[str, Tuple[float, Tuple[Configuration, ...]]] = {}


def _read_catalog(path: str) -> Tuple[Configuration, ...]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise CatalogError(f"файл каталога {path} не найден") from None
    except (OSError, json.JSONDecodeError) as e:
        raise CatalogError(f"не удалось прочитать каталог {path}: {e}") from e
    entries = data.get("configurations") if isinstance(data, dict) else data
    if not isinstance(entries, list):
        raise CatalogError(f"{path}: ожидался список конфигураций")
    return build_catalog(entries)


def load_catalog(path: Optional[str] = None) -> Tuple[Configuration, ...]:
    """
    Каталог из JSON-файла с кэшем по mtime; без пути — встроенная таблица.
    Ошибки разбора поднимаются как CatalogError.
    """
    if not path:
        return CATALOG
    path = os.path.abspath(path)
    try:
        mtime = os.path.getmtime(path)
    except OSError:
        raise CatalogError(f"файл каталога {path} не найден") from None
    cached = _cache.get(path)
    if cached is not None and cached[0] == mtime:
        return cached[1]
    catalog = _read_catalog(path)
    _cache[path] = (mtime, catalog)
    logger.info("Каталог загружен из %s: %d конфигураций", path, len(catalog))
    return catalog


def export_catalog(path: str, catalog: Sequence[Configuration] = CATALOG) -> None:
    """Атомарная запись каталога: временный файл, затем os.replace."""
    tmp_path = path + ".tmp"
    payload = {"configurations": [c.to_dict() for c in catalog]}
    try:
        with open(tmp_path, "w", encoding="utf-8") as f:
            json.dump(payload, f, ensure_ascii=False, indent=2)
        os.replace(tmp_path, path)
    except OSError:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        logger.exception("Ошибка записи каталога в %s", path)
        raise
    _cache.pop(os.path.abspath(path), None)
    logger.info("Каталог записан в %s: %d конфигураций", path, len(catalog))


def catalog_for(args) -> Tuple[Configuration, ...]:
    """Каталог прогона: --catalog, затем CHROMA_CATALOG, затем встроенная таблица."""
    return load_catalog(getattr(args, "catalog", None) or CATALOG_FILE)
