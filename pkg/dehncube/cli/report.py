"""Machine-readable run reports and their human-readable summary.

The layout is frozen as a draft-07 JSON Schema in ``report_schema.json`` next
to this module. Reports are dumped with sorted keys, so the same input gives
the same bytes; the timing block is only added on request.
"""
import json
import os

import pandas as pd
from jsonschema import Draft7Validator

from dehncube import conventions
from dehncube.invariants.goeritz import goeritz
from dehncube.spectral.specseq import pages_frame, total_homology_dim
from dehncube.topology.cube import vertices_frame
from dehncube.topology.tangle import writhe

SCHEMA_PATH = os.path.join(os.path.dirname(__file__), "report_schema.json")


def load_schema(path=SCHEMA_PATH):
    with open(path) as fh:
        return json.load(fh)


def _where(error):
    return ".".join(str(p) for p in error.absolute_path) or "(report)"


def schema_errors(report, schema=None):
    """Violations of the report schema as ``"<path>: <message>"`` lines; empty when it conforms.

    :param report: the report dict
    :param schema: a JSON Schema; the bundled ``report_schema.json`` if omitted
    """
    if schema is None:
        schema = load_schema()
    validator = Draft7Validator(schema)
    errors = sorted(validator.iter_errors(report), key=lambda e: (_where(e), e.message))
    return [f"{_where(e)}: {e.message}" for e in errors]


def build_report(result, max_page=None, higher_maps=None, timing=None):
    """Assemble the report of a :class:`~dehncube.pipeline.PipelineResult`.

    The determinant is computed on the word as given, without the auxiliary
    strands; with them the expected ``E_2`` total is doubled once more.

    :param result: the pipeline run
    :param max_page: the page limit the run used, echoed
    :param higher_maps: path of the higher-map table, echoed
    :param timing: optional ``{stage: seconds}``
    """
    pages, cube = result.pages, result.cube
    g = goeritz(result.word, result.plat)
    expected = 2 * g.determinant * (2 if result.aux_unknot else 1)
    try:
        e2 = pages.total(2)
    except ValueError:
        e2 = None

    page_dims = {}
    for r, dims in pages.dims.items():
        page_dims[str(r)] = {
            "total": int(sum(dims.values())),
            "dims": {str(w): int(d) for w, d in dims.items()},
            "d_ranks": {str(w): int(pages.d_rank(r, w)) for w in pages.differential_keys(r)},
        }
    vertices = [{"vertex": row.vertex, "weight": int(row.weight), "circles": int(row.circles)}
                for row in vertices_frame(cube).itertuples()]

    report = {
        "schema_version": conventions.REPORT_SCHEMA_VERSION,
        "conventions": conventions.as_dict(),
        "input": {
            "word": str(result.word),
            "strands": result.word.strands,
            "plat": str(result.plat),
            "mirror": result.mirrored != conventions.APPLY_THEOREM_MIRROR,
            "aux_unknot": result.aux_unknot,
            "max_page": max_page,
            "higher_maps": higher_maps,
            "writhe": writhe(result.word),
        },
        "effective": {
            "word": str(result.effective),
            "strands": result.effective.strands,
            "plat": str(result.effective_plat),
            "crossings": len(result.effective),
            "n_minus": result.twists.n_minus,
        },
        "vertices": vertices,
        "e1_dims": {str(w): int(d) for w, d in pages.dims[1].items()},
        "pages": page_dims,
        "last_page": pages.last_page,
        "complete": pages.complete,
        "stabilization": pages.stabilization,
        "total_homology": int(total_homology_dim(result.filtered)),
        "bounds": dict(result.bounds.to_dict(), chain_text=result.bounds.chain_text()),
        "determinant": {
            "det": g.determinant,
            "split": g.split,
            "components": g.components,
            "expected_e2": expected,
            "e2_total": e2,
            "equal": None if e2 is None else e2 == expected,
        },
    }
    if timing is not None:
        report["timing"] = {k: round(float(v), 6) for k, v in timing.items()}
    return report


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2)


def summary(result, report):
    """Plain-text summary with pandas tables."""
    lines = [
        f"word      : {report['input']['word'] or '(empty)'} on {report['input']['strands']} strands, "
        f"plat {report['input']['plat']}",
        f"cube      : {2 ** report['effective']['crossings']} vertices, "
        f"n_minus {report['effective']['n_minus']}",
        "",
        vertices_frame(result.cube).to_string(index=False),
        "",
        pages_frame(result.pages).to_string(),
        "",
        "totals    : " + ", ".join(f"E_{r} {p['total']}" for r, p in sorted(
            report["pages"].items(), key=lambda kv: int(kv[0]))),
        f"bounds    : {report['bounds']['chain_text']}"
        f"{'' if report['complete'] else ' (pages stop early)'}",
        f"E_1 bound : {report['bounds']['e1_bound']}",
    ]
    if report["stabilization"] is not None:
        lines.append(f"stable at : E_{report['stabilization']}")
    det = report["determinant"]
    lines.append(f"det       : {det['det']}{' (split diagram)' if det['split'] else ''}, "
                 f"expected E_2 total {det['expected_e2']}, got {det['e2_total']}")
    if "timing" in report:
        timing = pd.Series(report["timing"], name="seconds")
        lines += ["", timing.to_string()]
    return "\n".join(lines)

