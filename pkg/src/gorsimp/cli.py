"""Command-line interface.

    gorsimp classify --v 8 --k 1 [--format json|csv|text] [--out PATH]
                     [--oracle simplex-roundtrip,ehrhart,bijection] [--workers N]
    gorsimp count --v 12
    gorsimp chains --v 12
    gorsimp decompose --k 1 --in group.json
    gorsimp verify --v 12 --k 1

Exit codes: 0 success, 1 usage error, 2 invariant or oracle failure.

Caps can be set through the environment (flags win over the environment,
which wins over the defaults): GORSIMP_MAX_ORDER, GORSIMP_MAX_EHRHART_DIM,
GORSIMP_WORKERS.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import os
import sys
from dataclasses import dataclass, field
from math import comb

from .builder import ClassData
from .classify import stream_classes, verify_bijection
from .divisor_lattice import chain_census, count_classes, strict_chains
from .exceptions import GorsimpError, NotOfType, ZeroCoordinate
from .group_core import (
    canonical_key,
    group_from_json,
    is_type,
    reduce,
    zero_coordinates,
)
from .simplex_bridge import (
    DEFAULT_MAX_EHRHART_DIM,
    ehrhart_count,
    group_to_simplex,
    hstar_of_simplex,
    simplex_to_group,
)
from .tower import extract_data

ENV_PREFIX = "GORSIMP_"
ORACLES = ("simplex-roundtrip", "ehrhart", "bijection")
DEFAULT_MAX_ORDER = 512

EXIT_OK, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    v: int | None = None
    k: int | None = None
    out: str | None = None
    fmt: str = "text"
    oracles: tuple = ()
    max_order: int = DEFAULT_MAX_ORDER
    max_ehrhart_dim: int = DEFAULT_MAX_EHRHART_DIM
    workers: int = 1
    infile: str | None = None
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command in ("classify", "count", "chains", "verify"):
            if self.v is None or self.v < 2:
                raise UsageError("--v must be an integer >= 2")
        if self.command in ("classify", "verify", "decompose"):
            if self.k is None or self.k < 1:
                raise UsageError("--k must be a positive integer")
        if min(self.max_order, self.max_ehrhart_dim, self.workers) < 1:
            raise UsageError("caps and worker counts must be positive")
        if self.v is not None and self.command in ("classify", "verify") and self.v > self.max_order:
            raise UsageError(f"v = {self.v} exceeds the maximum group order {self.max_order}")
        bad = set(self.oracles) - set(ORACLES)
        if bad:
            raise UsageError(f"unknown oracle(s): {', '.join(sorted(bad))}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {ENV_PREFIX + name} must be an integer") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gorsimp", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, v=False, k=False, fmt=True):
        if v:
            sp.add_argument("--v", type=int, required=True)
        if k:
            sp.add_argument("--k", type=int, required=True)
        if fmt:
            sp.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--out", default=None, help="write output here instead of stdout")
        sp.add_argument("--max-order", type=int, default=None)
        sp.add_argument("--max-ehrhart-dim", type=int, default=None)
        sp.add_argument("--workers", type=int, default=None)

    sp = sub.add_parser("classify", help="build every class for (v, k)")
    common(sp, v=True, k=True)
    sp.add_argument("--oracle", default="", help="comma list of " + ",".join(ORACLES))
    sp = sub.add_parser("count", help="chain census and class count (no groups built)")
    common(sp, v=True)
    sp = sub.add_parser("chains", help="list strict divisor chains from 1 to v")
    common(sp, v=True)
    sp = sub.add_parser("decompose", help="extract chain and subsets from a group JSON file")
    common(sp, k=True, fmt=False)
    sp.add_argument("--in", dest="infile", required=True)
    sp = sub.add_parser("verify", help="round-trip every class through extraction")
    common(sp, v=True, k=True)
    sp.add_argument("--oracle", default="", help="additional oracles: " + ",".join(ORACLES))
    sp.add_argument("--seed", type=int, default=0, help="seed for the coordinate shuffle")
    return p


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)

    def pick(flag, env, default):
        return flag if flag is not None else _env_int(env, default)

    oracles = tuple(o for o in getattr(ns, "oracle", "").split(",") if o)
    cfg = RunConfig(
        command=ns.command,
        v=getattr(ns, "v", None),
        k=getattr(ns, "k", None),
        out=ns.out,
        fmt=getattr(ns, "fmt", "json"),
        oracles=oracles,
        max_order=pick(ns.max_order, "MAX_ORDER", DEFAULT_MAX_ORDER),
        max_ehrhart_dim=pick(ns.max_ehrhart_dim, "MAX_EHRHART_DIM", DEFAULT_MAX_EHRHART_DIM),
        workers=pick(ns.workers, "WORKERS", 1),
        infile=getattr(ns, "infile", None),
        seed=getattr(ns, "seed", 0),
    )
    cfg.validate()
    return cfg


# -- serialization -------------------------------------------------------------

def _run_length(seq) -> str:
    out = []
    i = 0
    while i < len(seq):
        j = i
        while j < len(seq) and seq[j] == seq[i]:
            j += 1
        out.append(str(seq[i]) if j - i == 1 else f"{seq[i]}*{j - i}")
        i = j
    return ",".join(out)


def subset_bitmasks(data: ClassData) -> list:
    """Each J_i as a bitmask over the alive symbols sorted by creation step."""
    alive: list = []
    masks = []
    for i, J in enumerate(data.subsets, start=1):
        masks.append(sum(1 << b for b, a in enumerate(alive) if a in J))
        alive = sorted((set(alive) - J) | {i})
    return masks


def class_record_json(rec) -> dict:
    return {
        "chain": list(rec.data.chain),
        "subsets": [sorted(J) for J in rec.data.subsets],
        "N": rec.N,
        "generators": [c.to_strings() for c in rec.generators],
        "hstar": list(rec.hstar),
    }


def csv_row(rec) -> list:
    return [
        "/".join(map(str, rec.data.chain)),
        ";".join(map(str, subset_bitmasks(rec.data))),
        rec.N,
        rec.dimension,
        _run_length(rec.hstar),
    ]


def _open_out(out: str | None):
    if out is None:
        return contextlib.nullcontext(sys.stdout)
    return open(out, "w", encoding="utf-8")


def _emit(text: str, out: str | None) -> None:
    with _open_out(out) as fh:
        fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _census_json(v: int) -> dict:
    return {str(s): c for s, c in sorted(chain_census(v).counts.items())}


class ClassWriter:
    """Writes class records one at a time in the chosen format."""

    def __init__(self, fh, fmt: str, v: int, k: int):
        self.fh, self.fmt, self.v, self.k = fh, fmt, v, k
        self.count = 0
        self.per_chain: dict = {}

    def begin(self) -> None:
        if self.fmt == "json":
            head = {"v": self.v, "k": self.k, "total": count_classes(self.v), "census": _census_json(self.v)}
            self.fh.write(_dump(head)[:-3] + ',\n  "classes": [')
        elif self.fmt == "csv":
            self._csv = csv.writer(self.fh, lineterminator="\n")
            self._csv.writerow(["chain", "subsets", "N", "dimension", "hstar"])

    def write(self, rec) -> None:
        chain = rec.data.chain
        self.per_chain[chain] = self.per_chain.get(chain, 0) + 1
        if self.fmt == "json":
            sep = "," if self.count else ""
            self.fh.write(f"{sep}\n    {json.dumps(class_record_json(rec))}")
        elif self.fmt == "csv":
            self._csv.writerow(csv_row(rec))
        self.count += 1

    def end(self, oracle_report: dict | None) -> None:
        if self.fmt == "json":
            self.fh.write("\n  ]")
            if oracle_report is not None:
                body = json.dumps(oracle_report, indent=2).replace("\n", "\n  ")
                self.fh.write(f',\n  "oracles": {body}')
            self.fh.write("\n}\n")
        elif self.fmt == "text":
            self.fh.write(summary_text(self.v, self.k, self.per_chain, self.count, oracle_report))


def summary_text(v: int, k: int, per_chain: dict, total: int, oracle_report: dict | None) -> str:
    lines = [f"v = {v}, k = {k}"]
    for chain, n in per_chain.items():
        lines.append(f"  chain {'<'.join(map(str, chain))}: {n} classes")
    lines.append(f"total: {total}")
    for name, rep in (oracle_report or {}).items():
        lines.append(f"oracle {name}: {'pass' if rep['ok'] else 'FAIL'} ({rep['checked']} checked)")
        for msg in rep["failures"]:
            lines.append(f"  {msg}")
    return "\n".join(lines) + "\n"


# -- oracles -------------------------------------------------------------------

def _oracle_failures(name: str, rec, v: int, k: int, max_ehrhart_dim: int):
    """Failure messages for one record, or None when the oracle does not apply."""
    if name == "simplex-roundtrip":
        S = group_to_simplex(rec.group)
        if canonical_key(reduce(simplex_to_group(S))) != rec.key:
            return ["round trip changed the group"]
        if S.normalized_volume != v:
            return [f"volume {S.normalized_volume}"]
        if hstar_of_simplex(S) != list(rec.hstar):
            return ["simplex h* differs"]
        return []
    if name == "ehrhart":
        if rec.dimension > max_ehrhart_dim:
            return None
        S = group_to_simplex(rec.group)
        out = []
        for m in (1, 2):
            want = sum(h * comb(m + S.d - i, S.d) for i, h in enumerate(rec.hstar))
            got = ehrhart_count(S, m, max_ehrhart_dim)
            if got != want:
                out.append(f"L({m}) = {got}, h* predicts {want}")
        return out
    got = extract_data(rec.group, k)
    return [] if got == rec.data else [f"extracted {got}"]


class OracleTally:
    def __init__(self, names, v: int, k: int, max_ehrhart_dim: int):
        self.v, self.k, self.max_dim = v, k, max_ehrhart_dim
        self.report = {name: {"ok": True, "checked": 0, "failures": []} for name in names}

    def check(self, rec) -> None:
        for name, rep in self.report.items():
            try:
                msgs = _oracle_failures(name, rec, self.v, self.k, self.max_dim)
            except GorsimpError as exc:
                msgs = [f"{type(exc).__name__}: {exc}"]
            if msgs is None:
                continue
            rep["checked"] += 1
            if msgs:
                rep["ok"] = False
                rep["failures"].extend(f"{rec.data}: {m}" for m in msgs)

    @property
    def ok(self) -> bool:
        return all(rep["ok"] for rep in self.report.values())


# -- commands ------------------------------------------------------------------

def cmd_classify(cfg: RunConfig) -> int:
    tally = OracleTally(cfg.oracles, cfg.v, cfg.k, cfg.max_ehrhart_dim)
    with _open_out(cfg.out) as fh:
        writer = ClassWriter(fh, cfg.fmt, cfg.v, cfg.k)
        writer.begin()
        for rec in stream_classes(cfg.v, cfg.k, cfg.workers):
            tally.check(rec)
            writer.write(rec)
        report = tally.report if cfg.oracles else None
        writer.end(report)
    if not tally.ok:
        if cfg.out is not None or cfg.fmt != "text":
            sys.stderr.write(summary_text(cfg.v, cfg.k, writer.per_chain, writer.count, report))
        return EXIT_FAILURE
    return EXIT_OK


def cmd_count(cfg: RunConfig) -> int:
    census = chain_census(cfg.v)
    total = count_classes(cfg.v)
    if cfg.fmt == "json":
        obj = {"v": cfg.v, "census": {str(s): c for s, c in sorted(census.counts.items())}, "N": total}
        _emit(_dump(obj), cfg.out)
    elif cfg.fmt == "csv":
        rows = ["s,c_s"] + [f"{s},{c}" for s, c in sorted(census.counts.items())]
        _emit("\n".join(rows) + f"\nN,{total}\n", cfg.out)
    else:
        lines = [f"v = {cfg.v}", "  s  c_s"]
        lines += [f"{s:3d}  {c}" for s, c in sorted(census.counts.items())]
        lines.append(f"N = {total}")
        _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def cmd_chains(cfg: RunConfig) -> int:
    chains = strict_chains(cfg.v)
    if cfg.fmt == "json":
        _emit(_dump([list(ch.terms) for ch in chains]), cfg.out)
    else:
        _emit("".join(f"{ch}\n" for ch in chains), cfg.out)
    return EXIT_OK


def cmd_decompose(cfg: RunConfig) -> int:
    try:
        with open(cfg.infile, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {cfg.infile}: {exc}") from None
    try:
        G = group_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed group description: {exc}") from None
    if G.order > cfg.max_order:
        raise UsageError(f"group order {G.order} exceeds the maximum {cfg.max_order}")
    if zero_coordinates(G):
        idx = sorted(zero_coordinates(G))
        print(
            f"error: coordinates {idx} vanish on every element; by the pyramid criterion "
            "the corresponding simplex is a lattice pyramid",
            file=sys.stderr,
        )
        return EXIT_FAILURE
    if G.order < 2 or not is_type(G, (G.order, cfg.k)):
        print(f"error: group of order {G.order} with heights {sorted(G.heights)} "
              f"is not of type ({G.order}, {cfg.k})", file=sys.stderr)
        return EXIT_FAILURE
    data = extract_data(G, cfg.k)
    _emit(_dump(data.to_json()), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    plain = verify_bijection(cfg.v, cfg.k)
    shuffled = verify_bijection(cfg.v, cfg.k, permuted=True, seed=cfg.seed)
    report = {
        "bijection": {"ok": plain.ok, "checked": plain.checked,
                      "failures": [f"{d}: {msg}" for d, msg in plain.failures]},
        "bijection-permuted": {"ok": shuffled.ok, "checked": shuffled.checked,
                               "failures": [f"{d}: {msg}" for d, msg in shuffled.failures]},
    }
    extra = [o for o in cfg.oracles if o != "bijection"]
    if extra:
        tally = OracleTally(extra, cfg.v, cfg.k, cfg.max_ehrhart_dim)
        for rec in stream_classes(cfg.v, cfg.k, cfg.workers):
            tally.check(rec)
        report.update(tally.report)
    ok = all(r["ok"] for r in report.values())
    if cfg.fmt == "json":
        _emit(_dump({"v": cfg.v, "k": cfg.k, "seed": cfg.seed, "ok": ok, "checks": report}), cfg.out)
    else:
        lines = [f"v = {cfg.v}, k = {cfg.k}, seed = {cfg.seed}"]
        for name, rep in report.items():
            lines.append(f"{name}: {'pass' if rep['ok'] else 'FAIL'} ({rep['checked']} checked)")
            lines += [f"  {m}" for m in rep["failures"]]
        _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK if ok else EXIT_FAILURE


COMMANDS = {
    "classify": cmd_classify,
    "count": cmd_count,
    "chains": cmd_chains,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except SystemExit as exc:  # argparse: --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"gorsimp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"gorsimp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotOfType, ZeroCoordinate) as exc:
        print(f"gorsimp: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except GorsimpError as exc:
        print(f"gorsimp: invariant failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
