"""Command-line entry point: ``qnp sweep|check|form|h1``."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cohomology import context_for
from .fields import quad_ext
from .harness import CHECKS, ConfigError, SweepConfig, build_report, exit_code, run_check, run_sweep
from .quadform import (
    anisotropic_kernel,
    is_hyperbolic,
    is_isotropic,
    isotropic_vector,
    represented_classes,
    similarity_group,
    spinor_norm_group,
    witt_class,
    witt_index,
)
from .serialize import (
    class_from_bits,
    class_to_bits,
    field_from_json,
    form_from_json,
    h1_to_json,
)


def _load_json(text: str):
    """Inline JSON, or a path prefixed with @."""
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _field_and_form(args):
    field = field_from_json(_load_json(args.field))
    form_obj = _load_json(args.form)
    if isinstance(form_obj, list):
        form_obj = {"entries": form_obj}
    return field, form_from_json(form_obj, field)


def cmd_sweep(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        cfg = SweepConfig.from_json(json.load(fh))
    if args.workers is not None:
        cfg.workers = args.workers
    reports = run_sweep(cfg)
    report = build_report(cfg, reports, timing=not args.no_timing)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    failed = sum(r.verdict == "fail" for r in reports)
    print(f"{len(reports)} cells, {failed} failed -> {args.out}")
    return exit_code(reports)


def cmd_check(args) -> int:
    field, Q = _field_and_form(args)
    ext = None
    if args.ext is not None:
        d = class_from_bits(field, _load_json(args.ext))
        if d == 0:
            raise ConfigError("--ext must be a nontrivial square class")
        ext = quad_ext(field, d)
    report = run_check(args.check_id, Q, ext, args.regime)
    _emit(report.to_json())
    return exit_code([report])


def cmd_form(args) -> int:
    field, Q = _field_and_form(args)
    bits = lambda c: class_to_bits(field, c)  # noqa: E731
    if args.action == "invariants":
        out = {
            "dim": Q.dim,
            "det": bits(Q.det()),
            "disc": bits(Q.disc()),
            "witt_index": witt_index(Q),
            "anisotropic_kernel": [bits(c) for c in anisotropic_kernel(Q).entries],
            "witt_tree": witt_class(Q).tree(),
            "hyperbolic": is_hyperbolic(Q),
        }
    elif args.action == "isotropy":
        out = {"isotropic": is_isotropic(Q)}
        if field.height == 0:
            vec = isotropic_vector(Q)
            out["witness"] = list(vec) if vec is not None else None
    elif args.action == "sn":
        out = {"spinor_norms": [bits(c) for c in spinor_norm_group(Q).elements()],
               "represented": [bits(c) for c in represented_classes(Q)]}
    else:
        out = {"similarity_factors": [bits(c) for c in similarity_group(Q).elements()]}
    _emit(out)
    return 0


def cmd_h1(args) -> int:
    _, Q = _field_and_form(args)
    ctx = context_for(Q)
    elems = ctx.enumerate()
    _emit({
        "parity": ctx.parity,
        "discriminant": class_to_bits(Q.field, ctx.d),
        "split": ctx.alg.split,
        "count": len(elems),
        "classes": [dict(h1_to_json(x), j=class_to_bits(Q.field, ctx.map_j(x))) for x in elems],
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qnp", description=__doc__)
    parser.add_argument("--version", action="version", version=f"qnp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a grid of checks and write a JSON report")
    p.add_argument("--config", required=True, help="sweep configuration (JSON file)")
    p.add_argument("--out", required=True, help="report path")
    p.add_argument("--workers", type=int, default=None, help="override parallelism width")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable reports")
    p.set_defaults(func=cmd_sweep)

    field_help = 'field JSON, e.g. {"base": {"q": 3}, "towers": ["t"]} (prefix @ to read a file)'
    form_help = "form JSON: {entries: [[a_bit, e_bits...], ...]} or the bare entry list"

    p = sub.add_parser("check", help="run one named check on one cell")
    p.add_argument("check_id", choices=sorted(CHECKS))
    p.add_argument("--field", required=True, help=field_help)
    p.add_argument("--form", required=True, help=form_help)
    p.add_argument("--ext", default=None, help="square class d of L = K(sqrt d), as bits or an int")
    p.add_argument("--regime", default="TrivialKernel", choices=["TrivialKernel", "Partial"])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("form", help="invariants of a single form")
    p.add_argument("action", choices=["invariants", "isotropy", "sn", "gq"])
    p.add_argument("--field", required=True, help=field_help)
    p.add_argument("--form", required=True, help=form_help)
    p.set_defaults(func=cmd_form)

    p = sub.add_parser("h1", help="H^1(K, mu) of an even-dimensional form")
    p.add_argument("action", choices=["enumerate"])
    p.add_argument("--field", required=True, help=field_help)
    p.add_argument("--form", required=True, help=form_help)
    p.set_defaults(func=cmd_h1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, TypeError) as exc:
        print(f"qnp: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
