# services/db.py

import asyncio
import json
import logging
from contextlib import asynccontextmanager
from datetime import datetime, timezone
from typing import Any, AsyncIterator, Dict, List, Optional

import aiosqlite

from config import DB_PATH
from utils.report import RunReport

logger = logging.getLogger(__name__)

INIT_SCRIPT = """
CREATE TABLE IF NOT EXISTS runs (
    id           INTEGER PRIMARY KEY AUTOINCREMENT,
    command      TEXT    NOT NULL,
    verdict      TEXT    NOT NULL,
    seed         INTEGER,
    wall_time_ms INTEGER NOT NULL,
    created_at   TEXT    NOT NULL,
    report_json  TEXT    NOT NULL
);
CREATE INDEX IF NOT EXISTS runs_command_idx ON runs (command, id);
"""

_PRAGMAS = (
    "PRAGMA journal_mode=WAL;",
    "PRAGMA busy_timeout=10000;",
    "PRAGMA synchronous=NORMAL;",
)


# ========= Журнал прогонов =========

class RunLedger:
    """
    Журнал прогонов в SQLite. Небольшой пул соединений aiosqlite, создаётся
    внутри работающего цикла событий:

        async with RunLedger(path) as ledger:
            await ledger.record(report)

    Соединения проверяются перед выдачей; запись сериализуется замком.
    """

    def __init__(self, db_path: str = DB_PATH, pool_size: int = 2, get_timeout: float = 5.0) -> None:
        self.db_path = db_path
        self.pool_size = pool_size
        self.get_timeout = get_timeout
        self._pool: Optional[asyncio.Queue] = None
        self._opened = 0
        self.write_lock: Optional[asyncio.Lock] = None

    async def _connect(self) -> aiosqlite.Connection:
        conn = await aiosqlite.connect(self.db_path)
        conn.row_factory = aiosqlite.Row
        try:
            for pragma in _PRAGMAS:
                await conn.execute(pragma)
            await conn.commit()
        except aiosqlite.Error:
            logger.warning("Не удалось применить PRAGMA к %s", self.db_path, exc_info=True)
        return conn

    async def init(self) -> None:
        self._pool = asyncio.Queue(maxsize=self.pool_size)
        self.write_lock = asyncio.Lock()
        conn = await self._connect()
        try:
            await conn.executescript(INIT_SCRIPT)
            await conn.commit()
        except aiosqlite.Error:
            logger.exception("Ошибка при инициализации журнала %s", self.db_path)
            await conn.close()
            raise
        self._opened = 1
        await self._pool.put(conn)
        logger.debug("Журнал прогонов открыт: %s", self.db_path)

    async def _alive(self, conn: aiosqlite.Connection) -> bool:
        try:
            await conn.execute("PRAGMA user_version;")
            return True
        except (aiosqlite.Error, ValueError):
            return False

    async def _get(self) -> aiosqlite.Connection:
        if self._pool is None:
            raise RuntimeError("журнал не инициализирован: вызовите init()")
        if self._pool.empty() and self._opened < self.pool_size:
            self._opened += 1
            return await self._connect()
        conn = await asyncio.wait_for(self._pool.get(), timeout=self.get_timeout)
        if await self._alive(conn):
            return conn
        logger.warning("Соединение с журналом не отвечает — пересоздаём")
        try:
            await conn.close()
        except (aiosqlite.Error, ValueError):
            pass
        return await self._connect()

    async def _put(self, conn: aiosqlite.Connection) -> None:
        if self._pool is not None and await self._alive(conn):
            await self._pool.put(conn)
            return
        self._opened -= 1
        try:
            await conn.close()
        except (aiosqlite.Error, ValueError):
            pass

    @asynccontextmanager
    async def connection(self) -> AsyncIterator[aiosqlite.Connection]:
        conn = await self._get()
        try:
            yield conn
        except Exception:
            try:
                await conn.rollback()
            except (aiosqlite.Error, ValueError):
                pass
            raise
        finally:
            await self._put(conn)

    async def close(self) -> None:
        if self._pool is None:
            return
        while not self._pool.empty():
            conn = await self._pool.get()
            try:
                await conn.close()
            except (aiosqlite.Error, ValueError):
                pass
            self._opened -= 1
        self._pool = None

    async def __aenter__(self) -> "RunLedger":
        await self.init()
        return self

    async def __aexit__(self, *exc) -> None:
        await self.close()

    # --------- Запись и чтение ---------

    async def record(self, report: RunReport) -> int:
        """Добавляет отчёт; возвращает id записи."""
        created = datetime.now(timezone.utc).isoformat(timespec="seconds")
        async with self.connection() as conn:
            async with self.write_lock:
                cursor = await conn.execute(
                    """
                    INSERT INTO runs (command, verdict, seed, wall_time_ms, created_at, report_json)
                    VALUES (?, ?, ?, ?, ?, ?)
                    """,
                    (
                        report.command,
                        report.verdict.value,
                        report.seed,
                        report.wall_time_ms,
                        created,
                        report.to_json(),
                    ),
                )
                await conn.commit()
                row_id = cursor.lastrowid
                await cursor.close()
        logger.debug("Прогон %s записан в журнал (id=%s)", report.command, row_id)
        return row_id

    async def recent(self, limit: int = 20, command: Optional[str] = None) -> List[Dict[str, Any]]:
        """Последние прогоны, новые первыми."""
        query = "SELECT id, command, verdict, seed, wall_time_ms, created_at, report_json FROM runs"
        params: List[Any] = []
        if command:
            query += " WHERE command = ?"
            params.append(command)
        query += " ORDER BY id DESC LIMIT ?"
        params.append(int(limit))
        async with self.connection() as conn:
            cursor = await conn.execute(query, params)
            rows = await cursor.fetchall()
            await cursor.close()
        out = []
        for row in rows:
            out.append(
                {
                    "id": row["id"],
                    "command": row["command"],
                    "verdict": row["verdict"],
                    "seed": row["seed"],
                    "wall_time_ms": row["wall_time_ms"],
                    "created_at": row["created_at"],
                    "report": json.loads(row["report_json"]),
                }
            )
        return out
