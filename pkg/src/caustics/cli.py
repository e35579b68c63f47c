"""Command-line workflows: compute scenes, render SVG, verify, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .render import RenderError, render_svg
from .scene import Scene, SceneError, compute_scene, load_scene, payload_json
from .service import serve
from .verify import CHECKS, run_verify


def _scene_from_args(args) -> Scene:
    doc = json.loads(Path(args.scene).read_text())
    if getattr(args, "grid", None) is not None:
        doc.setdefault("grid", {})["n"] = args.grid
    return load_scene(doc)


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_compute(args) -> int:
    scene = _scene_from_args(args)
    payload = compute_scene(scene)
    if args.format == "svg":
        _write_out(render_svg(payload), args.out)
    else:
        _write_out(payload_json(payload), args.out)
    return 0


def _layer_command(layer: str):
    def cmd(args) -> int:
        scene = _scene_from_args(args)
        scene.outputs = tuple(sorted(set(scene.outputs) | {layer}))
        payload = compute_scene(scene)
        _write_out(
            json.dumps({layer: payload["layers"].get(layer)}, sort_keys=True), args.out
        )
        return 0

    return cmd


def _cmd_render(args) -> int:
    scene = _scene_from_args(args)
    payload = compute_scene(scene)
    _write_out(render_svg(payload), args.out)
    return 0


def _cmd_verify(args) -> int:
    names = args.checks.split(",") if args.checks else None
    if names is not None:
        names = [n for n in (s.strip() for s in names) if n]
    report = run_verify(names)
    lines = []
    for c in report["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        lines.append(
            f'{status} {c["name"]} residual={c["residual"]:.3e} '
            f'tolerance={c["tolerance"]:.0e} {c["detail"]}'
        )
    lines.append("all passed" if report["all_passed"] else "FAILURES present")
    _write_out("\n".join(lines), None)
    if args.out:
        Path(args.out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0 if report["all_passed"] else 1


def _cmd_serve(args) -> int:
    print(f"caustics compute service on http://{args.host}:{args.port}", file=sys.stderr)
    serve(args.port, args.host)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="caustics",
        description="Optical caustics of plane mirror curves: compute, render, verify, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scene_args(p, with_format=False):
        p.add_argument("--scene", required=True, help="path to a scene document (JSON)")
        p.add_argument("--out", default=None, help="output path (stdout if omitted)")
        p.add_argument("--grid", type=int, default=None, help="override grid sample count")
        if with_format:
            p.add_argument("--format", choices=("data", "svg"), default="data")

    p = sub.add_parser("compute", help="compute all requested layers of a scene")
    add_scene_args(p, with_format=True)
    p.set_defaults(fn=_cmd_compute)

    for name, layer in (("beta", "beta"), ("roll", "rolling_frames"), ("cusps", "cusps")):
        p = sub.add_parser(name, help=f"compute the {layer} layer of a scene")
        add_scene_args(p)
        p.set_defaults(fn=_layer_command(layer))

    p = sub.add_parser("render", help="render a scene to SVG")
    add_scene_args(p)
    p.set_defaults(fn=_cmd_render)

    p = sub.add_parser("verify", help="run the verification checks")
    p.add_argument(
        "--checks",
        default=None,
        help=f"comma-separated subset of: {', '.join(sorted(CHECKS))}",
    )
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP compute service")
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(fn=_cmd_serve)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SceneError, RenderError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
