"""Command-line front end.

Every command prints exactly one JSON document.  Exit status is 0 on
success, 1 when a verification fails (or, with ``--strict``, when a
semistability search comes back empty), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
import tempfile
import warnings
from pathlib import Path
from typing import Sequence

from . import gitcore
from .gitcore import Config
from .polyring import Polynomial, format_point, format_rational, parse_points
from .sl2rep import multiplicity, u_inv_basis


class UsageError(Exception):
    pass


class DiskBasisCache:
    """U-invariant bases stored as polynomial JSON, one file per block."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(m, tau) -> str:
        return "m=" + "-".join(str(e) for e in m) + f"_w={tau}"

    def _path(self, m, tau) -> Path:
        return self.root / (self.key(m, tau) + ".json")

    def get(self, m, tau):
        path = self._path(m, tau)
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            return None
        if payload.get("key") != self.key(m, tau):
            return None
        return [Polynomial.from_json_obj(p) for p in payload["basis"]]

    def put(self, m, tau, polys):
        payload = {"key": self.key(m, tau), "basis": [p.to_json_obj() for p in polys]}
        text = json.dumps(payload, separators=(",", ":"))
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, self._path(m, tau))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    return vals


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {v}")
    return v


def _points(text: str):
    try:
        return parse_points(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sl2git", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(p, *, chi=False, dmax=False, dbound=False, point=False):
        p.add_argument("--degrees", type=_int_list, required=True)
        if chi:
            p.add_argument("--chi", type=_nonneg, default=0)
            p.add_argument("--n", type=_positive, default=1)
        if dmax:
            p.add_argument("--dmax", type=_positive, required=True)
        if dbound:
            p.add_argument("--dbound", type=_positive, required=True)
        if point:
            p.add_argument("--point", type=_points, required=True)
        p.add_argument("--cache-dir")
        p.add_argument("--strict", action="store_true")

    common(sub.add_parser("polytope"), dmax=True)
    common(sub.add_parser("walls"))
    common(sub.add_parser("hilbert"), chi=True, dmax=True)
    common(sub.add_parser("verify"), chi=True, dmax=True)
    uinv = sub.add_parser("uinv")
    common(uinv)
    uinv.add_argument("--weight", type=int)
    sst = sub.add_parser("sstest")
    common(sst, chi=True, dbound=True, point=True)
    sst.add_argument("--mode", choices=("U", "B"), default="U")
    common(sub.add_parser("phi"), point=True)
    suite = sub.add_parser("suite")
    suite.add_argument("path")
    suite.add_argument("--cache-dir")
    suite.add_argument("--strict", action="store_true")
    return parser


def _config(args, dmax=None) -> Config:
    if any(d < 1 for d in args.degrees):
        raise UsageError("--degrees entries must be positive")
    try:
        return Config(
            args.degrees,
            getattr(args, "chi", 0),
            getattr(args, "n", 1),
            dmax if dmax is not None else getattr(args, "dmax", 1),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _verify(cfg: Config, cache) -> dict:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", gitcore.WallWarning)
        return gitcore.verify_correspondence(cfg, cache).to_json_obj()


def read_suite(path) -> list[tuple[str, Config]]:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read suite file {path}: {exc}") from None
    except configparser.Error as exc:
        raise UsageError(f"malformed suite file: {exc}".splitlines()[0]) from None
    cases = []
    for section in parser.sections():
        if not section.startswith("case "):
            raise UsageError(f"unexpected section [{section}]")
        name = section[5:].strip()
        body = parser[section]
        try:
            cfg = Config(
                _int_list(body["degrees"]),
                int(body.get("chi", "0")),
                int(body.get("n", "1")),
                int(body["dmax"]),
            )
        except KeyError as exc:
            raise UsageError(f"case {name!r} is missing {exc.args[0]}") from None
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"case {name!r}: {exc}") from None
        cases.append((name, cfg))
    if not cases:
        raise UsageError("suite file declares no cases")
    return cases


def execute(args) -> tuple[int, dict]:
    cache = DiskBasisCache(args.cache_dir) if args.cache_dir else None
    verb = args.verb

    if verb == "polytope":
        data = gitcore.delta_points(_config(args))
        return 0, {
            "degrees": list(args.degrees),
            "dmax": args.dmax,
            "interval": [format_rational(data.lo), format_rational(data.hi)],
            "points": [format_rational(p) for p in data.points],
        }

    if verb == "walls":
        _config(args)
        return 0, {"degrees": list(args.degrees), "walls": gitcore.walls(args.degrees)}

    if verb == "hilbert":
        cfg = _config(args)
        return 0, {
            "config": cfg.to_json_obj(),
            "hilbert_uH": list(gitcore.hilbert_uH(cfg)),
            "hilbert_flag": list(gitcore.hilbert_flag(cfg, cache)),
        }

    if verb == "verify":
        report = _verify(_config(args), cache)
        return (0 if report["pass"] else 1), report

    if verb == "uinv":
        m = args.degrees
        if any(d < 0 for d in m):
            raise UsageError("--degrees entries must be non-negative")
        taus = [args.weight] if args.weight is not None else range(sum(m) % 2, sum(m) + 1, 2)
        blocks = []
        for tau in taus:
            basis = u_inv_basis(m, tau, cache)
            if args.weight is None and not basis:
                continue
            blocks.append({
                "weight": tau,
                "multiplicity": multiplicity(m, tau),
                "basis": [p.to_json_obj() for p in basis],
            })
        return 0, {"m": list(m), "blocks": blocks}

    if verb == "sstest":
        cfg = _config(args, dmax=args.dbound)
        if len(args.point) != cfg.n:
            raise UsageError(f"--point has {len(args.point)} pairs, --degrees has {cfg.n}")
        search = gitcore.u_semistable if args.mode == "U" else gitcore.b_semistable
        verdict = search(args.point, cfg, args.dbound, cache)
        code = 1 if args.strict and isinstance(verdict, gitcore.NoSectionUpTo) else 0
        return code, verdict.to_json_obj()

    if verb == "phi":
        cfg = _config(args)
        try:
            image = gitcore.phi(args.point, cfg)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return 0, {"image": format_point(image)}

    if verb == "suite":
        cases = read_suite(args.path)
        results = []
        for name, cfg in cases:
            entry = {"name": name}
            entry.update(_verify(cfg, cache))
            results.append(entry)
        ok = all(r["pass"] for r in results)
        return (0 if ok else 1), {"pass": ok, "cases": len(results), "results": results}

    raise UsageError(f"unknown command {verb}")


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        code, payload = execute(args)
    except UsageError as exc:
        print(f"sl2git: error: {exc}", file=stderr)
        return 2
    stdout.write(json.dumps(payload) + "\n")
    return code


def main():
    sys.exit(run())
