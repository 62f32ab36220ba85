"""Command-line interface: ``mine``, ``recommend`` and ``evaluate``.

Settings come from built-in defaults, then an optional flat ``key=value``
config file (``--config``), then command-line flags named like the keys.
Exit status: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import DataError, MissingResource, UnknownLabel, UnknownUser
from .evaluation import as_fraction, evaluate
from .ingest import AgeBucketing, load_folksonomy, read_concepts, write_concepts, write_lines
from .miner import mine
from .model import Dimension, SupportThresholds
from .recommend import ProfileMatchMode, Query, Target, rank_topk, recommend

EXIT_USAGE = 1
EXIT_DATA = 2

DEFAULTS = {
    "taggings": None,
    "demographics": None,
    "concepts": None,
    "report": None,
    "table": None,
    "minsupp_u": "2",
    "minsupp_t": "2",
    "minsupp_r": "2",
    "minsupp_p": "2",
    "mode": "strict",
    "age_buckets": "0-17,18-25,26-35,36-45,46+",
    "ks": "5,6,7,8,9,10",
    "fraction": "0.2",
    "seed": "0",
    "workers": "1",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_config(path) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or key not in DEFAULTS:
                raise UsageError(f"{path}:{lineno}: expected one of {', '.join(DEFAULTS)} as key=value")
            out[key] = value.strip()
    return out


class Config:
    """Validated settings, resolved in precedence order."""

    def __init__(self, values: dict[str, str | None]):
        self.raw = values
        try:
            self.thresholds = SupportThresholds(
                *(int(values[k]) for k in ("minsupp_u", "minsupp_t", "minsupp_r", "minsupp_p"))
            )
            self.mode = ProfileMatchMode(values["mode"])
            self.bucketing = AgeBucketing.parse(values["age_buckets"])
            self.ks = [int(k) for k in values["ks"].split(",")]
            self.fraction = as_fraction(values["fraction"])
            self.seed = int(values["seed"])
            self.workers = int(values["workers"])
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad configuration: {exc}") from None
        if min(self.ks) < 1:
            raise UsageError("ks must be positive")
        if not 0 < self.fraction < 1:
            raise UsageError("fraction must lie strictly between 0 and 1")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")

    def path(self, key) -> Path:
        value = self.raw.get(key)
        if not value:
            raise UsageError(f"missing required setting {key!r}")
        return Path(value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value settings file")
    for key in DEFAULTS:
        common.add_argument(f"--{key}", dest=key, default=None, metavar=key.upper())
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="quadrec", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("mine", parents=[common], allow_abbrev=False, help="mine frequent quadri-concepts into the concepts file")
    rec = sub.add_parser("recommend", parents=[common], allow_abbrev=False, help="print top-k recommendations for a user")
    rec.add_argument("--user", required=True)
    rec.add_argument("--resource")
    rec.add_argument("--which", choices=[t.value for t in Target], default="resources")
    rec.add_argument("-k", "--k", type=int, default=5)
    sub.add_parser("evaluate", parents=[common], allow_abbrev=False, help="holdout precision@k experiment")
    return parser


def _load(cfg: Config):
    return load_folksonomy(cfg.path("taggings"), cfg.path("demographics"), cfg.bucketing)


def cmd_mine(cfg: Config) -> int:
    f = _load(cfg)
    out = cfg.path("concepts")
    concepts = mine(f, cfg.thresholds, workers=cfg.workers)
    write_concepts(concepts, f, out)
    print(f"concepts={len(concepts)}")
    return 0


def cmd_recommend(cfg: Config, user: str, resource: str | None, which: str, k: int) -> int:
    if k < 1:
        raise UsageError("k must be >= 1")
    target = Target(which)
    if target is Target.TAGS and resource is None:
        raise MissingResource()
    f = _load(cfg)
    concepts = read_concepts(cfg.path("concepts"), f)
    u = f.index(Dimension.USER, user)
    if u is None:
        raise UnknownUser(user)
    r = None
    if resource is not None:
        r = f.index(Dimension.RESOURCE, resource)
        if r is None:
            raise UnknownLabel("resource", resource)
    bundle = recommend(concepts, Query.for_user(f, u, r), cfg.mode, folksonomy=f)
    dim = {Target.USERS: Dimension.USER, Target.TAGS: Dimension.TAG, Target.RESOURCES: Dimension.RESOURCE}[target]
    for item in rank_topk(bundle, target, k):
        print(f"{f.label(dim, item)}\t{bundle.scores[target][item][0]}")
    return 0


def cmd_evaluate(cfg: Config) -> int:
    f = _load(cfg)
    report = evaluate(
        f, cfg.thresholds, cfg.ks, cfg.fraction, cfg.seed, cfg.mode,
        workers=cfg.workers, baseline=True,
    )
    if not report.users_evaluated:
        print("quadrec: warning: no user could be scored; try lower thresholds", file=sys.stderr)
    if cfg.raw.get("report"):
        write_lines(cfg.path("report"), report.record_lines())
    if cfg.raw.get("table"):
        write_lines(cfg.path("table"), report.table_lines())
    for line in report.record_lines():
        print(line)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        values = dict(DEFAULTS)
        if args.config:
            values.update(read_config(args.config))
        values.update({k: getattr(args, k) for k in DEFAULTS if getattr(args, k) is not None})
        cfg = Config(values)
        if args.command == "mine":
            return cmd_mine(cfg)
        if args.command == "recommend":
            return cmd_recommend(cfg, args.user, args.resource, args.which, args.k)
        return cmd_evaluate(cfg)
    except UsageError as exc:
        print(f"quadrec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        print(f"quadrec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
