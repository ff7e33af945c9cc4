# services/reducibility.py

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

from config import SAMPLE_SIZE
from services.assignments import ListAssignment, SizeProfile
from services.catalog import MODES, Configuration, colorability_graph
from services.colorer import exhaust, sample
from services.nullstellensatz import certify
from utils.report import Verdict
from utils.utils import Stopwatch

logger = logging.getLogger(__name__)


class ModeError(ValueError):
    """Режим проверки не применим к конфигурации."""


@dataclass
class ReducibilityReport:
    config: str
    mode: str
    result: Verdict
    checked: int = 0
    counterexample: Optional[Dict[str, Any]] = None
    certificate: Optional[Dict[str, Any]] = None
    seed: Optional[int] = None
    wall_time_ms: int = 0
    partitions: int = 0
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "config": self.config,
            "mode": self.mode,
            "result": self.result.value,
            "checked": self.checked,
            "wall_time_ms": self.wall_time_ms,
        }
        if self.partitions:
            out["partitions"] = self.partitions
        if self.seed is not None:
            out["seed"] = self.seed
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.certificate is not None:
            out["certificate"] = self.certificate
        out.update(self.details)
        return out


def verify_reducible(
    c: Configuration,
    mode: Optional[str] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    jobs: int = 1,
    profile: Optional[Sequence[int]] = None,
) -> ReducibilityReport:
    """
    Раскрашиваемость квадрата окрестности c на recolored при списках размера
    figure_profile (или profile, если задан). Режим по умолчанию — default_mode записи.
    """
    mode = mode or c.default_mode
    if mode not in MODES:
        raise ModeError(f"неизвестный режим {mode!r}; допустимы {', '.join(MODES)}")
    sizes = SizeProfile(tuple(profile) if profile is not None else c.figure_profile)
    if len(sizes) != len(c.recolored):
        raise ModeError(f"{c.name}: профиль на {len(sizes)} вершин, перекрашивается {len(c.recolored)}")
    g = colorability_graph(c)
    labels = c.recolored_labels
    logger.info("%s: проверка сводимости, режим %s, профиль %s", c.name, mode, sizes.sizes)

    if mode == "nullstellensatz":
        if c.target_monomial is None:
            raise ModeError(f"{c.name}: нет целевого монома, режим nullstellensatz недоступен")
        with Stopwatch() as sw:
            cert = certify(g, sizes, c.target_monomial)
        report = ReducibilityReport(
            config=c.name,
            mode=mode,
            result=Verdict.PASS if cert.certified else Verdict.FAIL,
            checked=1,
            certificate=cert.to_dict(),
            wall_time_ms=sw.ms,
        )
        if not cert.certified:
            # свидетель: коэффициент и вершины с недостающим размером списка
            report.counterexample = {
                "coefficient": cert.coefficient,
                "short_vertices": [labels[i] for i in cert.short],
            }
            logger.warning("%s: сертификат не получен (%s)", c.name, report.counterexample)
        return report

    if mode == "exhaustive":
        if n is not None:
            raise ModeError("параметр n применим только в режиме sample")
        outcome = exhaust(g, sizes.sizes, jobs=jobs, label=c.name)
        used_seed = None
    else:
        if n is None:
            n = SAMPLE_SIZE
        if n < 1:
            raise ModeError(f"число выборок должно быть ≥ 1, получено {n}")
        if seed is None:
            raise ModeError("режим sample требует seed")
        outcome = sample(g, sizes.sizes, n, seed, jobs=jobs, label=c.name)
        used_seed = seed

    witness = None
    if outcome.witness is not None:
        witness = ListAssignment.from_masks(outcome.witness).to_json(labels)
        logger.warning("%s: нераскрашиваемое назначение %s", c.name, witness)
    return ReducibilityReport(
        config=c.name,
        mode=mode,
        result=Verdict.FAIL if witness else Verdict.PASS,
        checked=outcome.checked,
        counterexample=witness,
        seed=used_seed,
        wall_time_ms=outcome.wall_time_ms,
        partitions=outcome.partitions,
    )
