# handlers/cmd_coefficient.py

import asyncio
import logging
from argparse import Namespace

from services.catalog import CatalogError, colorability_graph, get
from services.nullstellensatz import expand, graph_polynomial
from utils.catalog_file import catalog_for
from utils.graph_io import read_graph_file
from utils.report import RunReport, Verdict
from utils.utils import Stopwatch, parse_int_list

logger = logging.getLogger(__name__)


async def coefficient_command(args: Namespace) -> RunReport:
    """
    coefficient <name> | coefficient --graph FILE --target 2,3,...
    Коэффициент целевого монома в многочлене графа; PASS, если он равен
    опубликованному значению (или, без такового, отличен от нуля).
    """
    inputs = {"name": args.name, "graph": args.graph, "target": args.target, "reorder": args.reorder}
    try:
        if args.name:
            config = get(args.name, catalog_for(args))
            if args.target:
                target = parse_int_list(args.target)
            elif config.target_monomial is not None:
                target = config.target_monomial
            else:
                return RunReport.error(
                    "coefficient", inputs,
                    f"{config.name}: нет целевого монома (конфигурация разбирается без Nullstellensatz)",
                )
            g = colorability_graph(config)
            expected = config.expected_coefficient
            label = config.name
        elif args.graph:
            if not args.target:
                return RunReport.error("coefficient", inputs, "для --graph нужен --target")
            g, _ = read_graph_file(args.graph)
            target = parse_int_list(args.target)
            expected = None
            label = args.graph
        else:
            return RunReport.error("coefficient", inputs, "укажите имя конфигурации или --graph")
        if len(target) != g.n:
            return RunReport.error(
                "coefficient", inputs, f"целевой моном на {len(target)} переменных, а в графе {g.n} вершин"
            )
    except (CatalogError, ValueError) as e:
        return RunReport.error("coefficient", inputs, str(e))

    logger.info("coefficient %s: цель %s", label, tuple(target))
    with Stopwatch() as sw:
        exp = await asyncio.to_thread(expand, graph_polynomial(g), target, args.reorder)

    details = {
        "config": label,
        "target": list(target),
        "coefficient": exp.coefficient,
        "expected": expected,
        "term_peak": exp.term_peak,
        "factors": len(exp.factor_order),
    }
    if expected is not None:
        ok = exp.coefficient == expected
    else:
        ok = exp.coefficient != 0
    witness = None
    if not ok:
        witness = {"coefficient": exp.coefficient, "expected": expected}
        logger.warning("coefficient %s: получено %d, ожидалось %s", label, exp.coefficient, expected)
    return RunReport(
        command="coefficient",
        inputs=inputs,
        verdict=Verdict.PASS if ok else Verdict.FAIL,
        details=details,
        wall_time_ms=sw.ms,
        witness=witness,
    )
