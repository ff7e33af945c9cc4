# handlers/cmd_check_all.py

import asyncio
import logging
import random
from argparse import Namespace
from typing import Any, Awaitable, Callable, Dict, List

from config import DEFAULT_SEED, SAMPLE_SIZE
from handlers.cmd_classify import classify_command
from handlers.cmd_coefficient import coefficient_command
from handlers.cmd_reducible import reducible_command
from handlers.cmd_residuals import residuals_command
from handlers.cmd_verify_lemma import LEMMA_NAMES, verify_lemma_command
from services.catalog import CatalogError
from services.discharge import audit
from services.generators import (
    cycle_embedding,
    glued_triangles_face,
    hexagonal_prism,
    random_stacked_triangulation,
    spoked_triangle,
)
from utils.catalog_file import catalog_for
from utils.report import RunReport, Verdict, merge_verdicts
from utils.utils import Stopwatch

logger = logging.getLogger(__name__)

STAGES = ("profiles", "lemmas", "coefficients", "classification", "reducibility", "discharge")

# Число случайных триангуляций в корпусе разгрузки
TRIANGULATIONS = 10


def _sub(args: Namespace, **fields: Any) -> Namespace:
    base = {"jobs": args.jobs, "catalog": getattr(args, "catalog", None)}
    base.update(fields)
    return Namespace(**base)


def _stage(name: str, reports: List[RunReport]) -> RunReport:
    verdict = merge_verdicts(r.verdict for r in reports)
    witness = None
    message = None
    if verdict is Verdict.FAIL:
        witness = {r.inputs.get("name") or r.inputs.get("d") or r.command: r.witness
                   for r in reports if r.verdict is Verdict.FAIL}
    if verdict is Verdict.ERROR:
        message = "; ".join(r.message for r in reports if r.message)
    return RunReport(
        command=f"check-all:{name}",
        inputs={},
        verdict=verdict,
        details={"runs": [r.to_dict() for r in reports]},
        wall_time_ms=sum(r.wall_time_ms for r in reports),
        witness=witness,
        message=message,
    )


async def _profiles(args: Namespace, seed: int) -> List[RunReport]:
    return [await residuals_command(_sub(args, name=None))]


async def _lemmas(args: Namespace, seed: int) -> List[RunReport]:
    return [await verify_lemma_command(_sub(args, name=name, profile=None)) for name in LEMMA_NAMES]


async def _coefficients(args: Namespace, seed: int) -> List[RunReport]:
    out = []
    for c in catalog_for(args):
        if c.target_monomial is not None:
            out.append(await coefficient_command(_sub(args, name=c.name, graph=None, target=None, reorder=False)))
    return out


async def _classification(args: Namespace, seed: int) -> List[RunReport]:
    return [await classify_command(_sub(args, d=d)) for d in (10, 9)]


async def _reducibility(args: Namespace, seed: int) -> List[RunReport]:
    out = []
    for c in catalog_for(args):
        if c.family == "J":
            continue
        modes = [c.default_mode]
        if c.default_mode == "nullstellensatz":
            modes.append("sample")
        for mode in modes:
            n = args.n if mode == "sample" else None
            out.append(await reducible_command(_sub(args, name=c.name, mode=mode, n=n, seed=seed)))
    return out


def _discharge_reports(seed: int) -> List[RunReport]:
    """Аудит корпуса укладок; склеенные треугольники — отрицательный контроль."""
    rng = random.Random(seed)
    corpus = [("C9", cycle_embedding(9)), ("prism", hexagonal_prism()), ("spoked", spoked_triangle())]
    for i in range(TRIANGULATIONS):
        n = rng.randint(4, 12)
        corpus.append((f"stacked-{i}-n{n}", random_stacked_triangulation(n, rng.getrandbits(32))))
    out = []
    for name, pg in corpus:
        with Stopwatch() as sw:
            result = audit(pg)
        out.append(RunReport(
            command="discharge",
            inputs={"name": name},
            verdict=result.verdict,
            details=result.to_dict(),
            wall_time_ms=sw.ms,
            witness={"negatives": result.negatives} if result.verdict is Verdict.FAIL else None,
        ))
    with Stopwatch() as sw:
        control = audit(glued_triangles_face())
    caught = control.verdict is Verdict.FAIL
    out.append(RunReport(
        command="discharge",
        inputs={"name": "glued-triangles (ожидается FAIL)"},
        verdict=Verdict.PASS if caught else Verdict.FAIL,
        details=control.to_dict(),
        wall_time_ms=sw.ms,
        witness=None if caught else {"negative_control": "грань с t > d - 6 не обнаружена"},
    ))
    return out


async def _discharge(args: Namespace, seed: int) -> List[RunReport]:
    return await asyncio.to_thread(_discharge_reports, seed)


_RUNNERS: Dict[str, Callable[[Namespace, int], Awaitable[List[RunReport]]]] = {
    "profiles": _profiles,
    "lemmas": _lemmas,
    "coefficients": _coefficients,
    "classification": _classification,
    "reducibility": _reducibility,
    "discharge": _discharge,
}


async def check_all_command(args: Namespace) -> RunReport:
    """Полный конвейер: профили, леммы, коэффициенты, классификация, сводимость, разгрузка."""
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    if getattr(args, "n", None) is None:
        args.n = SAMPLE_SIZE
    stages = list(args.only) if args.only else list(STAGES)
    inputs = {"stages": stages, "jobs": args.jobs, "n": args.n}
    unknown = [s for s in stages if s not in _RUNNERS]
    if unknown:
        return RunReport.error("check-all", inputs, f"неизвестные стадии {unknown}; допустимы {', '.join(STAGES)}")

    try:
        catalog_for(args)
    except CatalogError as e:
        return RunReport.error("check-all", inputs, str(e))

    results: Dict[str, RunReport] = {}
    with Stopwatch() as sw:
        for name in stages:
            logger.info("check-all: стадия %s", name)
            results[name] = _stage(name, await _RUNNERS[name](args, seed))
            logger.info("check-all: стадия %s — %s", name, results[name].verdict.value)

    verdict = merge_verdicts(r.verdict for r in results.values())
    witness = None
    message = None
    if verdict is Verdict.FAIL:
        witness = {name: r.witness for name, r in results.items() if r.verdict is Verdict.FAIL}
    if verdict is Verdict.ERROR:
        message = "; ".join(f"{name}: {r.message}" for name, r in results.items() if r.message)
    return RunReport(
        command="check-all",
        inputs=inputs,
        verdict=verdict,
        details={name: r.to_dict() for name, r in results.items()},
        wall_time_ms=sw.ms,
        seed=seed,
        witness=witness,
        message=message,
    )
