# handlers/cmd_verify_lemma.py

import asyncio
import logging
from argparse import Namespace
from typing import Callable, Dict, Optional, Sequence

from services.colorer import (
    LemmaReport,
    verify_lemma_j1,
    verify_lemma_j2,
    verify_lemma_j2_necessity,
    verify_lemma_p4,
)
from utils.report import RunReport, Verdict
from utils.utils import parse_int_list

logger = logging.getLogger(__name__)

LEMMA_NAMES = ("p4", "j1", "j2-1", "j2-2", "j2-necessity")

_DISPATCH: Dict[str, Callable[[Optional[Sequence[int]], int], LemmaReport]] = {
    "p4": lambda profile, jobs: verify_lemma_p4(profile, jobs),
    "j1": lambda profile, jobs: verify_lemma_j1(profile, jobs),
    "j2-1": lambda profile, jobs: verify_lemma_j2(1, profile, jobs),
    "j2-2": lambda profile, jobs: verify_lemma_j2(2, profile, jobs),
    "j2-necessity": lambda profile, jobs: verify_lemma_j2_necessity(jobs),
}


def lemma_run_report(report: LemmaReport, inputs: Dict) -> RunReport:
    """LemmaReport -> RunReport. Для j2-necessity утверждение обратное: нужен свидетель."""
    if report.lemma == "j2-necessity":
        found = report.counterexample is not None
        return RunReport(
            command="verify-lemma",
            inputs=inputs,
            verdict=Verdict.PASS if found else Verdict.FAIL,
            details=report.to_dict(),
            wall_time_ms=report.wall_time_ms,
            witness=None if found else {"exhausted_assignments": report.assignments_checked},
        )
    return RunReport(
        command="verify-lemma",
        inputs=inputs,
        verdict=report.result,
        details=report.to_dict(),
        wall_time_ms=report.wall_time_ms,
        witness=report.counterexample,
    )


async def verify_lemma_command(args: Namespace) -> RunReport:
    """verify-lemma {p4,j1,j2-1,j2-2,j2-necessity} [--profile 2,3,2,2]"""
    name = (args.name or "").lower()
    inputs = {"name": name, "jobs": args.jobs}
    if name not in _DISPATCH:
        logger.info("Неизвестная лемма %r", args.name)
        return RunReport.error("verify-lemma", inputs, f"неизвестная лемма {args.name!r}; допустимы {', '.join(LEMMA_NAMES)}")

    profile = None
    if getattr(args, "profile", None):
        try:
            profile = parse_int_list(args.profile)
        except ValueError as e:
            return RunReport.error("verify-lemma", inputs, str(e))
        inputs["profile"] = list(profile)

    try:
        logger.info("verify-lemma %s (jobs=%d)", name, args.jobs)
        report = await asyncio.to_thread(_DISPATCH[name], profile, args.jobs)
    except ValueError as e:
        logger.info("verify-lemma %s: %s", name, e)
        return RunReport.error("verify-lemma", inputs, str(e))
    return lemma_run_report(report, inputs)
