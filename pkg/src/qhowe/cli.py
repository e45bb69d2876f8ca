"""Batch command-line front end.

    qhowe enumerate --flavor Bjj --m 1 --n 1 --d 1
    qhowe act --flavor A --m 2 --n 2 --d 2 --side left --generator E1 --label "[[0,0],[1,1]]"
    qhowe verify --suite decomposition --flavor Bjj --m 1 --n 1 --d 1

Every command prints one JSON report (sorted keys) and exits with status 0
exactly when the report's ``pass`` field is true.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import coord, decomp, fock, oracle
from .fock import GeneratorSymbol, ModuleVector
from .indexsets import (Flavor, IndexMatrix, InvalidLabel, SizeGuard, Space, count_matrices,
                        enumerate_matrices, from_entries)
from .ring import to_text

SUITES = ("relations", "commuting", "intertwiner", "oracle", "spectrum", "decomposition",
          "centralizer", "identification")
DIM_CAP = 2000


@dataclass
class JobConfig:
    command: str
    flavor: str = "A"
    m: int = 1
    n: int = 1
    d: int = 1
    primes: tuple = oracle.DEFAULT_PRIMES
    degree_bound: int | None = None
    cap: int = DIM_CAP
    output: Path | None = None
    calibrate: bool = False
    suite: str = "all"
    side: str = "left"
    generator: str = ""
    label: str = ""
    basis: str = "fock"
    list_labels: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        Flavor.parse(self.flavor)
        if min(self.m, self.n) < 1 or self.d < 0:
            raise ValueError("m and n must be positive and d non-negative")
        bad = [p for p in self.primes if p <= 5]
        if bad:
            raise ValueError(f"primes must exceed 5, got {bad}")

    @property
    def space(self) -> Space:
        return Space.make(self.flavor, self.m, self.n, self.d)

    def guard(self) -> None:
        size = count_matrices(self.flavor, self.m, self.n, self.d)
        if size > self.cap:
            raise SizeGuard(f"{size} labels exceed the cap {self.cap}")


# ---------------------------------------------------------------------------
# label parsing

_TERM = re.compile(r"^\s*(\d*)\s*E\s*(-?\d+)\s*,\s*(-?\d+)\s*$")


def parse_label(text: str, space: Space) -> IndexMatrix:
    """A label as JSON rows (``[[0,1],[1,0]]``) or sparse terms (``3E0,0+E1,-1+E-1,1``).

    Sparse terms list every nonzero entry; nothing is mirrored automatically.
    """
    t = text.strip()
    f = space.flavor
    if t.startswith("["):
        A = IndexMatrix(f, space.m, space.n, json.loads(t))
    else:
        entries: dict = {}
        for part in t.split("+"):
            mt = _TERM.match(part)
            if not mt:
                raise InvalidLabel(f"cannot parse label term {part!r}")
            c = int(mt.group(1) or 1)
            key = (int(mt.group(2)), int(mt.group(3)))
            entries[key] = entries.get(key, 0) + c
        A = from_entries(f, space.m, space.n, entries, symmetrize=False)
    A.validate(space.d)
    return A


def _label_text(A: IndexMatrix, prefix: str) -> str:
    return f"{prefix}({A.short()})" if prefix else f"[{A.short()}]"


def _vector_json(v: ModuleVector, prefix: str) -> list:
    return [{"label": _label_text(A, prefix), "coeff": to_text(c)} for A, c in v.sorted_terms()]


# ---------------------------------------------------------------------------
# commands

def cmd_enumerate(cfg: JobConfig) -> dict:
    cfg.guard()
    labels = enumerate_matrices(cfg.flavor, cfg.m, cfg.n, cfg.d, cap=cfg.cap)
    out = {"command": "enumerate", "space": cfg.space.to_json(), "count": len(labels), "pass": True}
    if cfg.list_labels:
        out["labels"] = [A.short() for A in labels]
    return out


def cmd_act(cfg: JobConfig) -> dict:
    space = cfg.space
    A = parse_label(cfg.label, space)
    if cfg.basis == "fock":
        fl = fock.side_flavor(space, cfg.side)
        g = GeneratorSymbol.parse(cfg.generator, cfg.side, fl)
        img = fock.apply_generator(g, ModuleVector.basis(space, A))
        prefix = ""
    elif cfg.basis == "coord":
        fl, _ = coord.coord_side(space, cfg.side)
        g = GeneratorSymbol.parse(cfg.generator, cfg.side, fl)
        img = coord.act_coord(g, ModuleVector.basis(space, A))
        prefix = "t" if space.flavor.kind == "A" else "t~"
    else:
        raise ValueError(f"unknown basis {cfg.basis!r}")
    return {"command": "act", "space": space.to_json(), "generator": str(g),
            "input": _label_text(A, prefix), "result": _vector_json(img, prefix), "pass": True}


def _suite_reports(cfg: JobConfig, suite: str) -> list:
    """A list of (name, json report) pairs for one suite."""
    f, m, n, d = cfg.flavor, cfg.m, cfg.n, cfg.d
    space = cfg.space
    kind = space.flavor.kind
    if suite == "relations":
        if kind == "A":
            return [fock.check_relations(m, n, d).to_json()]
        # on B/C spaces the generators are checked to come from the coideal embedding
        return [coord.derived_check(Flavor.parse(f).transposed().name, n, m, d).to_json()]
    if suite == "commuting":
        return [fock.check_commuting_actions(f, m, n, d).to_json()]
    if suite == "intertwiner":
        if kind == "C":
            raise ValueError("the intertwiner suite covers types A and B")
        return [coord.intertwiner_check(Flavor.parse(f).transposed().name, n, m, d).to_json()]
    if suite == "oracle":
        orientation = oracle.load_calibration()
        calib = None
        if orientation is None:
            if not cfg.calibrate:
                raise RuntimeError("oracle is uncalibrated; rerun with --calibrate")
            calib = oracle.calibrate()
            orientation = calib.orientation
        rep = oracle.oracle_check(f, m, n, d, cfg.primes, orientation, cfg.degree_bound).to_json()
        rep["orientation"] = orientation
        out = [rep]
        if calib is not None:
            out.append({"check": "calibration", "orientation": calib.orientation,
                        "agreeing": {k: list(v) for k, v in calib.agreeing.items()}, "pass": True})
        if kind == "A" and n == 1 and d <= 2:
            out.append(oracle.refinement_identity_check(m, d, primes=cfg.primes[:2]).to_json())
        return out
    if suite == "spectrum":
        sides = [s for s in ("left", "right") if fock.side_flavor(space, s) == "i"]
        if not sides:
            raise ValueError(f"{space} has no side carrying t0")
        return [dict(decomp.verify_t0_spectrum(space, s).to_json(), check="t0 spectrum")
                for s in sides]
    if suite == "decomposition":
        return [dict(decomp.verify_decomposition(f, m, n, d).to_json(), check="decomposition")]
    if suite == "centralizer":
        acc = decomp.commutant_accounting(f, m, n, d)
        return [{"check": "centralizer", "space": space.to_json(), "sides": acc,
                 "pass": all(v["pass"] for v in acc.values())}]
    if suite == "identification":
        if kind != "C":
            raise ValueError("the identification suite needs a type C flavor")
        return [fock.c_identification_check(f, m, n, d).to_json(),
                fock.c_transport_check(f, m, n, d).to_json()]
    raise ValueError(f"unknown suite {suite!r}")


def cmd_verify(cfg: JobConfig) -> dict:
    cfg.guard()
    suites = SUITES if cfg.suite == "all" else (cfg.suite,)
    reports = []
    for s in suites:
        try:
            for r in _suite_reports(cfg, s):
                reports.append(dict(r, suite=s))
        except ValueError as exc:
            if cfg.suite != "all":
                raise
            reports.append({"suite": s, "skipped": str(exc), "pass": True})
    return {"command": "verify", "space": cfg.space.to_json(), "suite": cfg.suite,
            "reports": reports, "pass": all(r["pass"] for r in reports)}


def cmd_calibrate(cfg: JobConfig) -> dict:
    res = oracle.calibrate(cfg.primes[:6])
    return {"command": "calibrate", "orientation": res.orientation,
            "agreeing": {k: list(v) for k, v in res.agreeing.items()},
            "path": str(oracle.calibration_path()), "pass": True}


COMMANDS = {"enumerate": cmd_enumerate, "act": cmd_act, "verify": cmd_verify,
            "calibrate": cmd_calibrate}


# ---------------------------------------------------------------------------
# entry point

def _primes(text: str) -> tuple:
    return tuple(int(p) for p in text.split(",") if p.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qhowe", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--flavor", default="A")
        sp.add_argument("--m", type=int, default=1)
        sp.add_argument("--n", type=int, default=1)
        sp.add_argument("--d", type=int, default=1)
        sp.add_argument("--cap", type=int, default=DIM_CAP)
        sp.add_argument("--output", type=Path)

    e = sub.add_parser("enumerate", help="count (and optionally list) the labels of a space")
    common(e)
    e.add_argument("--list", dest="list_labels", action="store_true")

    a = sub.add_parser("act", help="apply one generator to one basis label")
    common(a)
    a.add_argument("--side", choices=("left", "right"), default="left")
    a.add_argument("--generator", required=True)
    a.add_argument("--label", required=True)
    a.add_argument("--basis", choices=("fock", "coord"), default="fock")

    v = sub.add_parser("verify", help="run a verification suite")
    common(v)
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--primes", type=_primes, default=oracle.DEFAULT_PRIMES)
    v.add_argument("--degree-bound", type=int)
    v.add_argument("--calibrate", action="store_true")

    c = sub.add_parser("calibrate", help="fix the q-orientation of the counting oracle")
    c.add_argument("--primes", type=_primes, default=oracle.DEFAULT_PRIMES)
    c.add_argument("--output", type=Path)
    return p


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    fields = {k: v for k, v in vars(ns).items() if v is not None and k in JobConfig.__dataclass_fields__}
    return JobConfig(**fields)


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        report = COMMANDS[cfg.command](cfg)
    except (ValueError, RuntimeError, SizeGuard, InvalidLabel) as exc:
        report = {"command": ns.command, "error": f"{type(exc).__name__}: {exc}", "pass": False}
    text = render(report)
    if getattr(ns, "output", None):
        ns.output.write_text(text)
    sys.stdout.write(text)
    return 0 if report.get("pass") else 1


if __name__ == "__main__":
    sys.exit(main())
