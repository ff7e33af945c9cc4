# handlers/cmd_catalog.py

import logging
from argparse import Namespace

from services.catalog import CatalogError, exclusion_patterns, get, segment_templates
from utils.catalog_file import catalog_for, export_catalog
from utils.graph_io import format_graph_text
from utils.report import RunReport, Verdict

logger = logging.getLogger(__name__)


async def catalog_command(args: Namespace) -> RunReport:
    """catalog list | catalog dump <name> | catalog export <path>"""
    inputs = {"action": args.action, "target": args.target}
    try:
        catalog = catalog_for(args)
        if args.action == "list":
            rows = [
                {
                    "name": c.name,
                    "family": c.family,
                    "vertices": c.graph.n,
                    "edges": c.graph.m,
                    "half_edges": sum(c.half_edges),
                    "recolored": len(c.recolored),
                    "default_mode": c.default_mode,
                }
                for c in catalog
            ]
            details = {
                "count": len(rows),
                "configurations": rows,
                "segments": segment_templates(),
                "exclusion_patterns": {k: list(v) for k, v in exclusion_patterns(catalog).items()},
            }
            return RunReport("catalog", inputs, Verdict.PASS, details)

        if not args.target:
            return RunReport.error("catalog", inputs, f"catalog {args.action}: не указан аргумент")

        if args.action == "dump":
            c = get(args.target, catalog)
            details = {"graph": format_graph_text(c.graph), "metadata": c.to_dict()}
            return RunReport("catalog", inputs, Verdict.PASS, details)

        if args.action == "export":
            export_catalog(args.target, catalog)
            return RunReport("catalog", inputs, Verdict.PASS, {"path": args.target, "count": len(catalog)})
    except CatalogError as e:
        return RunReport.error("catalog", inputs, str(e))
    except OSError as e:
        logger.exception("catalog %s: ошибка ввода-вывода", args.action)
        return RunReport.error("catalog", inputs, f"ошибка записи: {e}")

    return RunReport.error("catalog", inputs, f"неизвестное действие {args.action!r}")
