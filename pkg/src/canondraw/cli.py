"""Command-line interface.

Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import io
from .drawing import OnePageDrawing, from_onepage, induce_edges, induce_vertices, validate
from .errors import (
    BudgetExceeded,
    CanonDrawError,
    InvalidDrawingError,
    InvalidTemplateError,
    NotFound,
    UnrealizableTemplateError,
)
from .extraction import StageSchedule, extract_canonical
from .realizer import (
    DEFAULT_BUDGET,
    Unrealizable,
    build_k4_table,
    enumerate_completions,
    k4_table_to_json,
    realize,
)
from .render import render_svg
from .templates import (
    CanonicalSpec,
    NotCanonical,
    canonical_drawing,
    is_realizable,
    sign_of,
    template_of,
)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else io.dumps(payload)
    if getattr(args, "out", None):
        io.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return io.read_json(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise _Usage(f"cannot read {path}: {exc}") from None


def _template(args):
    try:
        return io.template_from_json(_load(args.template))
    except (InvalidTemplateError, KeyError, TypeError) as exc:
        raise _Usage(f"invalid template: {exc}") from None


def _drawing(args, path=None):
    data = _load(path or args.drawing)
    try:
        return io.drawing_from_json(data, allow_invalid=args.allow_invalid)
    except InvalidDrawingError as exc:
        raise _Usage(f"invalid drawing ({exc}); pass --allow-invalid to load anyway") from None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_template_validate(args) -> int:
    try:
        io.template_from_json(_load(args.template))
    except (InvalidTemplateError, KeyError, TypeError) as exc:
        print(f"invalid: {exc}")
        return EXIT_NO
    print("valid")
    return EXIT_OK


def cmd_template_sign(args) -> int:
    s = sign_of(_template(args))
    payload = {
        "plus": {str(i): sorted(s.plus(i)) for i in range(1, s.m + 1)},
        "minus": {str(i): sorted(s.minus(i)) for i in range(1, s.m + 1)},
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_template_realizable(args) -> int:
    t = _template(args)
    ok, w = is_realizable(t, args.budget, args.seed, witness=True)
    if not ok:
        print("unrealizable")
        return EXIT_NO
    if args.out and w is not None:
        io.write_atomic(args.out, io.dumps(io.witness_to_json(w)))
    print("realizable")
    return EXIT_OK


def cmd_template_synth(args) -> int:
    t = _template(args)
    try:
        d = canonical_drawing(CanonicalSpec(t, args.n), seed=args.seed, budget=args.budget)
    except UnrealizableTemplateError as exc:
        print(f"unrealizable: {exc}")
        return EXIT_NO
    _emit(args, io.drawing_to_json(d))
    return EXIT_OK


def cmd_template_of(args) -> int:
    d = _drawing(args)
    classes = _load(args.classes) if args.classes else [list(c) for c in d.classes]
    t = template_of(d, classes)
    if isinstance(t, NotCanonical):
        print(f"not canonical: {t.reason}")
        return EXIT_NO
    _emit(args, io.template_to_json(t))
    return EXIT_OK


def cmd_realize(args) -> int:
    try:
        rs = io.rotation_system_from_json(_load(args.rotation_system))
    except (ValueError, KeyError, TypeError) as exc:
        raise _Usage(f"invalid rotation system: {exc}") from None
    if args.enumerate:
        comps = enumerate_completions(rs, args.budget, args.seed)
        if not comps:
            print("unrealizable")
            return EXIT_NO
        _emit(args, {"completions": [io.drawing_to_json(c)["crossings"] for c in comps]})
        return EXIT_OK
    w = realize(rs, args.budget, args.seed)
    if isinstance(w, Unrealizable):
        print("unrealizable")
        return EXIT_NO
    _emit(args, io.witness_to_json(w))
    return EXIT_OK


def cmd_k4_table(args) -> int:
    _emit(args, k4_table_to_json(build_k4_table(args.budget)))
    return EXIT_OK


def cmd_drawing_validate(args) -> int:
    d = io.drawing_from_json(_load(args.drawing), allow_invalid=True)
    problems = validate(d)
    if problems:
        for p in problems:
            print(p)
        return EXIT_NO
    print("valid")
    return EXIT_OK


def cmd_drawing_induce(args) -> int:
    d = _drawing(args)
    if (args.edges is None) == (args.vertices is None):
        raise _Usage("give exactly one of --edges and --vertices")
    try:
        if args.edges is not None:
            sub = induce_edges(d, [tuple(e) for e in _load(args.edges)])
        else:
            sub = induce_vertices(d, _load(args.vertices))
    except KeyError as exc:
        raise _Usage(str(exc)) from None
    _emit(args, io.drawing_to_json(sub))
    return EXIT_OK


def cmd_drawing_onepage(args) -> int:
    try:
        p: OnePageDrawing = io.onepage_from_json(_load(args.onepage))
    except (KeyError, ValueError) as exc:
        raise _Usage(f"invalid 1-page drawing: {exc}") from None
    classes = _load(args.classes) if args.classes else None
    _emit(args, io.drawing_to_json(from_onepage(p, classes)))
    return EXIT_OK


def cmd_extract(args) -> int:
    d = _drawing(args)
    schedule = StageSchedule(**_load(args.stage_schedule)) if args.stage_schedule else StageSchedule()
    try:
        res = extract_canonical(d, args.n, schedule, args.budget)
    except NotFound as exc:
        print(f"not found: {exc}")
        return EXIT_NO
    _emit(
        args,
        {
            "classes": [list(c) for c in res.classes],
            "template": io.template_to_json(res.template),
            "report": [str(v) for v in res.report],
        },
    )
    return EXIT_OK


def cmd_render(args) -> int:
    t = _template(args)
    if args.witness:
        w = io.witness_from_json(_load(args.witness))
    else:
        ok, w = is_realizable(t, args.budget, args.seed, witness=True)
        if not ok:
            print("unrealizable")
            return EXIT_NO
    _emit(args, render_svg(CanonicalSpec(t, args.n), w))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--allow-invalid", action="store_true")

    ap = argparse.ArgumentParser(prog="canondraw", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    tp = sub.add_parser("template", help="template operations")
    tsub = tp.add_subparsers(dest="action", required=True)
    for name, fn in (
        ("validate", cmd_template_validate),
        ("sign", cmd_template_sign),
        ("realizable", cmd_template_realizable),
    ):
        p = tsub.add_parser(name, parents=[common])
        p.add_argument("--template", required=True)
        p.set_defaults(func=fn)
    p = tsub.add_parser("synth", parents=[common])
    p.add_argument("--template", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_template_synth)
    p = tsub.add_parser("of", parents=[common])
    p.add_argument("--drawing", required=True)
    p.add_argument("--classes", default=None)
    p.set_defaults(func=cmd_template_of)

    p = sub.add_parser("realize", parents=[common], help="realize a rotation system")
    p.add_argument("--rotation-system", required=True)
    p.add_argument("--enumerate", action="store_true")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("k4-table", parents=[common], help="regenerate the K4 table")
    p.set_defaults(func=cmd_k4_table)

    dp = sub.add_parser("drawing", help="drawing operations")
    dsub = dp.add_subparsers(dest="action", required=True)
    p = dsub.add_parser("validate", parents=[common])
    p.add_argument("--drawing", required=True)
    p.set_defaults(func=cmd_drawing_validate)
    p = dsub.add_parser("induce", parents=[common])
    p.add_argument("--drawing", required=True)
    p.add_argument("--edges", default=None)
    p.add_argument("--vertices", default=None)
    p.set_defaults(func=cmd_drawing_induce)
    p = dsub.add_parser("onepage", parents=[common])
    p.add_argument("--onepage", required=True)
    p.add_argument("--classes", default=None)
    p.set_defaults(func=cmd_drawing_onepage)

    p = sub.add_parser("extract", parents=[common], help="extract a canonical subdrawing")
    p.add_argument("--drawing", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stage-schedule", default=None)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("render", parents=[common], help="render a canonical drawing as SVG")
    p.add_argument("--template", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--witness", default=None)
    p.set_defaults(func=cmd_render)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CanonDrawError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
