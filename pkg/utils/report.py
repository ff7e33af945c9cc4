# utils/report.py

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, Optional


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    ERROR = "ERROR"


# 0 — все утверждения проверены; 1 — утверждение опровергнуто (есть свидетель);
# 2 — ошибка использования или входных данных
EXIT_CODES = {Verdict.PASS: 0, Verdict.FAIL: 1, Verdict.ERROR: 2}

# Поля, зависящие от времени выполнения; исключаются при сравнении прогонов
TIMING_KEYS = frozenset({"wall_time_ms", "created_at"})


def merge_verdicts(verdicts: Iterable[Verdict]) -> Verdict:
    merged = Verdict.PASS
    for v in verdicts:
        if v is Verdict.ERROR:
            return Verdict.ERROR
        if v is Verdict.FAIL:
            merged = Verdict.FAIL
    return merged


@dataclass
class RunReport:
    """Итог одного запуска подкоманды."""

    command: str
    inputs: Dict[str, Any]
    verdict: Verdict
    details: Dict[str, Any] = field(default_factory=dict)
    wall_time_ms: int = 0
    seed: Optional[int] = None
    witness: Optional[Any] = None
    message: Optional[str] = None

    def __post_init__(self) -> None:
        self.verdict = Verdict(self.verdict)
        if self.verdict is Verdict.FAIL and self.witness is None:
            raise ValueError(f"{self.command}: вердикт FAIL без свидетеля")
        if self.verdict is Verdict.ERROR and not self.message:
            raise ValueError(f"{self.command}: вердикт ERROR без сообщения")

    @classmethod
    def error(cls, command: str, inputs: Dict[str, Any], message: str) -> "RunReport":
        return cls(command=command, inputs=inputs, verdict=Verdict.ERROR, message=message)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict.value,
            "details": self.details,
            "wall_time_ms": self.wall_time_ms,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.witness is not None:
            out["witness"] = self.witness
        if self.message:
            out["message"] = self.message
        return out

    def to_json(self) -> str:
        return dumps(self.to_dict())


def dumps(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True, default=_default)


def _default(obj: Any) -> Any:
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"не сериализуется в JSON: {type(obj).__name__}")


def strip_timing(data: Any) -> Any:
    """Копия структуры без полей времени — для сравнения двух прогонов."""
    if isinstance(data, dict):
        return {k: strip_timing(v) for k, v in data.items() if k not in TIMING_KEYS}
    if isinstance(data, list):
        return [strip_timing(v) for v in data]
    return data
