"""Command-line entry point: render, layout, serve.

Exit codes: 0 success, 2 data problem (unreadable input, bad CSV, flag
values that do not match the dataset header), 3 malformed flags, 4 port
already in use.
"""

from __future__ import annotations

import argparse
import errno
import json
import logging
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .dataset import Dataset, DatasetError, parse_csv
from .layout import LayoutError
from .render import RenderError, RenderOptions, to_svg
from .server import ApiServer
from .session import Session, SessionError

EXIT_OK = 0
EXIT_DATA = 2
EXIT_FLAGS = 3
EXIT_PORT = 4

DEFAULT_PORT = 8000


class FlagError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we want exit 3
        raise FlagError(message)


@dataclass(frozen=True)
class CliConfig:
    input: Path
    order: Optional[tuple[str, ...]]
    hidden: tuple[str, ...]
    drill: tuple[tuple[str, str], ...]
    seed: int
    viewport: tuple[int, int]
    out: Optional[Path]
    host: str
    port: int


def _parse_viewport(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if not m:
        raise FlagError(f"--viewport must look like 1000x800, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _parse_drill(text: str) -> tuple[tuple[str, str], ...]:
    pairs = []
    for part in text.split(","):
        if "=" not in part:
            raise FlagError(
                f"--drill entries must be dimension=value, got {part!r}"
            )
        name, _, value = part.partition("=")
        pairs.append((name.strip(), value.strip()))
    return tuple(pairs)


def _split_names(text: str) -> tuple[str, ...]:
    return tuple(s.strip() for s in text.split(",") if s.strip())


def build_parser() -> _Parser:
    parser = _Parser(
        prog="hidmap",
        description="Area-proportional polygon maps for categorical data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("render", "write an SVG of the layout"),
        ("layout", "write the layout document as JSON"),
        ("serve", "serve the interactive UI and JSON API"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="CSV file to plot")
        p.add_argument("--order", default=None,
                       help="comma-separated dimension names, all of them")
        p.add_argument("--hidden", default="",
                       help="comma-separated dimension names to hide")
        p.add_argument("--drill", default="",
                       help="comma-separated dimension=value filters")
        p.add_argument("--seed", type=int, default=0,
                       help="marble placement seed (default 0)")
        if name in ("render", "layout"):
            p.add_argument("--out", default=None,
                           help="output path (default: stdout)")
        if name == "render":
            p.add_argument("--viewport", default="1000x1000",
                           help="pixel size WxH (default 1000x1000)")
        if name == "serve":
            p.add_argument("--host", default="127.0.0.1")
            p.add_argument("--port", type=int, default=None,
                           help="default: $HIDMAP_PORT or "
                                f"{DEFAULT_PORT}")
    return parser


def _config_from(ns: argparse.Namespace) -> CliConfig:
    port = getattr(ns, "port", None)
    if port is None:
        env = os.environ.get("HIDMAP_PORT", "").strip()
        if env:
            try:
                port = int(env)
            except ValueError:
                raise FlagError(f"HIDMAP_PORT is not an integer: {env!r}")
        else:
            port = DEFAULT_PORT
    return CliConfig(
        input=Path(ns.input),
        order=_split_names(ns.order) if ns.order is not None else None,
        hidden=_split_names(ns.hidden),
        drill=_parse_drill(ns.drill) if ns.drill else (),
        seed=ns.seed,
        viewport=_parse_viewport(getattr(ns, "viewport", "1000x1000")),
        out=Path(ns.out) if getattr(ns, "out", None) else None,
        host=getattr(ns, "host", "127.0.0.1"),
        port=port,
    )


def _load_dataset(cfg: CliConfig) -> Dataset:
    try:
        text = cfg.input.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {cfg.input}: {exc.strerror}") from exc
    try:
        return parse_csv(text)
    except DatasetError as exc:
        raise DataError(f"{cfg.input}: {exc}") from exc


def _dimension_index(ds: Dataset, name: str, flag: str) -> int:
    for dim in ds.dimensions:
        if dim.name == name:
            return dim.index
    raise DataError(f"{flag}: unknown dimension {name!r} "
                    f"(have {', '.join(d.name for d in ds.dimensions)})")


def _session_for(cfg: CliConfig, ds: Dataset) -> Session:
    order = None
    if cfg.order is not None:
        order = tuple(_dimension_index(ds, n, "--order") for n in cfg.order)
        if sorted(order) != list(range(len(ds.dimensions))):
            raise DataError(
                "--order must list every dimension exactly once"
            )
    hidden = tuple(_dimension_index(ds, n, "--hidden") for n in cfg.hidden)
    drill = []
    for name, value in cfg.drill:
        d = _dimension_index(ds, name, "--drill")
        values = ds.dimensions[d].values
        if value not in values:
            raise DataError(
                f"--drill: dimension {name!r} has no value {value!r} "
                f"(have {', '.join(values)})"
            )
        drill.append((d, values.index(value)))
    try:
        return Session(ds, seed=cfg.seed, order=order, hidden=hidden,
                       drill=tuple(drill))
    except (SessionError, LayoutError) as exc:
        raise DataError(str(exc)) from exc


def _write_out(out: Optional[Path], text: str):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def cmd_render(cfg: CliConfig) -> int:
    ds = _load_dataset(cfg)
    session = _session_for(cfg, ds)
    doc = session.document()
    try:
        opts = RenderOptions(width=cfg.viewport[0], height=cfg.viewport[1])
    except RenderError as exc:
        raise FlagError(str(exc)) from exc
    _write_out(cfg.out, to_svg(ds, doc.root, doc.assignment, opts))
    return EXIT_OK


def cmd_layout(cfg: CliConfig) -> int:
    ds = _load_dataset(cfg)
    session = _session_for(cfg, ds)
    text = json.dumps(session.document().to_dict(), sort_keys=True,
                      indent=2) + "\n"
    _write_out(cfg.out, text)
    return EXIT_OK


def cmd_serve(cfg: CliConfig) -> int:
    logging.basicConfig(
        level=logging.INFO, format="%(asctime)s %(name)s %(message)s"
    )
    ds = _load_dataset(cfg)
    session = _session_for(cfg, ds)
    server = ApiServer(session, host=cfg.host, port=cfg.port)
    try:
        server.start()
    except OSError as exc:
        if exc.errno == errno.EADDRINUSE:
            print(f"hidmap: port {cfg.port} is already in use",
                  file=sys.stderr)
            return EXIT_PORT
        raise
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
    return EXIT_OK


_COMMANDS = {"render": cmd_render, "layout": cmd_layout, "serve": cmd_serve}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config_from(ns)
    except FlagError as exc:
        print(f"hidmap: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    try:
        return _COMMANDS[ns.command](cfg)
    except FlagError as exc:
        print(f"hidmap: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except DataError as exc:
        print(f"hidmap: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
