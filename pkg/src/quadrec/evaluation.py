"""Holdout evaluation of resource recommendation with precision@k.

Protocol: hide part of each user's resources, mine the remaining data,
recommend resources the user has not tagged yet, and score the top-k list
against the hidden ones.  Users whose recommendation list comes back empty
are skipped rather than scored as zero.

Hidden resources are drawn with SplitMix64 (Steele, Lea and Flood, 2014;
increment 0x9E3779B97F4A7C15, multipliers 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB, shifts 30/27/31) driving a Fisher-Yates shuffle that
swaps position ``i`` with ``next() % (i + 1)`` for ``i = n-1 .. 1``.  One
generator seeded with ``seed`` serves all users in index order; users with
fewer than two resources consume no draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Sequence

from .errors import EmptyRecommendation
from .miner import mine
from .model import Dimension, PFolksonomy, SupportThresholds, build_pfolksonomy
from .recommend import ProfileMatchMode, Query, Target, rank_topk, recommend

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.next() % (i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def as_fraction(x) -> Fraction:
    """Exact value of a ratio given as str, float, int or Fraction.

    Floats go through their shortest repr so ``0.1`` means 1/10.
    """
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def precision(recommended: Sequence[int], relevant) -> Fraction:
    """Share of recommended items that are relevant, as an exact rational."""
    if not recommended:
        raise EmptyRecommendation()
    relevant = set(relevant)
    return Fraction(sum(1 for x in recommended if x in relevant), len(recommended))


def decimal_str(x: Fraction, places: int = 6) -> str:
    value = Decimal(x.numerator) / Decimal(x.denominator)
    return str(value.quantize(Decimal(1).scaleb(-places)))


@dataclass(frozen=True)
class HoldoutSplit:
    """``hidden`` maps user index → hidden resource indices, both in ``source``."""

    source: PFolksonomy
    train: PFolksonomy
    hidden: dict[int, frozenset[int]]
    seed: int
    fraction: Fraction


def make_split(f: PFolksonomy, fraction, seed: int) -> HoldoutSplit:
    fraction = as_fraction(fraction)
    if not 0 < fraction < 1:
        raise ValueError("fraction must lie strictly between 0 and 1")
    rng = SplitMix64(seed)
    owned: dict[int, set[int]] = {}
    for u, _, r, _ in f.quadruples:
        owned.setdefault(u, set()).add(r)
    hidden = {}
    for u in sorted(owned):
        resources = sorted(owned[u])
        if len(resources) < 2:
            continue
        n_hide = math.ceil(fraction * len(resources))
        hidden[u] = frozenset(rng.shuffle(resources)[:n_hide])
    kept = [(u, t, r) for u, t, r in f.taggings() if r not in hidden.get(u, ())]
    train = build_pfolksonomy(
        [(f.users[u], f.tags[t], f.resources[r]) for u, t, r in kept],
        f.demographics(),
    )
    return HoldoutSplit(f, train, hidden, seed, fraction)


@dataclass
class EvaluationReport:
    per_k: dict[int, Fraction | None]  # None when no user could be scored
    users_evaluated: int
    users_skipped: int
    thresholds: SupportThresholds
    mode: ProfileMatchMode
    seed: int
    fraction: Fraction
    concepts: int = 0
    baseline_per_k: dict[int, Fraction] = field(default_factory=dict)

    def header(self) -> str:
        th = ",".join(map(str, self.thresholds.as_tuple()))
        return (
            f"# thresholds={th}\tmode={self.mode.value}\tseed={self.seed}"
            f"\tfraction={self.fraction}\tconcepts={self.concepts}"
            f"\tusers_evaluated={self.users_evaluated}\tusers_skipped={self.users_skipped}"
        )

    def record_lines(self) -> list[str]:
        lines = [self.header()]
        for k in sorted(self.per_k):
            line = f"k={k}\tprecision={_render(self.per_k[k])}"
            if k in self.baseline_per_k:
                line += f"\tbaseline={decimal_str(self.baseline_per_k[k])}"
            lines.append(line)
        return lines

    def table_lines(self) -> list[str]:
        return ["k\tmean_precision"] + [
            f"{k}\t{_render(self.per_k[k])}" for k in sorted(self.per_k)
        ]


def _render(x) -> str:
    return "nan" if x is None else decimal_str(x)


def _mean(values: list[Fraction]) -> Fraction:
    return sum(values, Fraction(0)) / len(values)


def evaluate(
    f: PFolksonomy,
    th: SupportThresholds,
    ks: Sequence[int],
    fraction,
    seed: int,
    mode: ProfileMatchMode = ProfileMatchMode.STRICT,
    *,
    workers: int = 1,
    baseline: bool = False,
) -> EvaluationReport:
    """Run the holdout protocol.

    With ``baseline`` the report also carries the precision of a uniformly
    random recommender (unknown training resources, shuffled with a
    SplitMix64 stream seeded by ``seed + 1``), scored on the same users.
    """
    ks = sorted(set(ks))
    if not ks or ks[0] < 1:
        raise ValueError("ks must be a non-empty list of positive integers")
    split = make_split(f, fraction, seed)
    train = split.train
    concepts = mine(train, th, workers=workers)
    kmax = ks[-1]
    rng = SplitMix64(seed + 1)

    scores = {k: [] for k in ks}
    base = {k: [] for k in ks}
    evaluated = skipped = 0
    tagging_users = {u for u, _, _, _ in f.quadruples}
    skipped += len(tagging_users - set(split.hidden))
    for u in sorted(split.hidden):
        tu = train.index(Dimension.USER, f.users[u])
        relevant = {f.resources[r] for r in split.hidden[u]}
        bundle = recommend(concepts, Query.for_user(train, tu), mode, folksonomy=train, exclude_known=True)
        ranking = rank_topk(bundle, Target.RESOURCES, kmax)
        if not ranking:
            skipped += 1
            continue
        evaluated += 1
        labels = [train.resources[r] for r in ranking]
        for k in ks:
            scores[k].append(precision(labels[:k], relevant))
        if baseline:
            known = train.resources_of(tu)
            pool = [r for r in range(len(train.resources)) if r not in known]
            picks = [train.resources[r] for r in rng.shuffle(pool)[:kmax]]
            for k in ks:
                base[k].append(precision(picks[:k], relevant))

    per_k = {k: _mean(v) for k, v in scores.items()} if evaluated else dict.fromkeys(ks)
    return EvaluationReport(
        per_k=per_k,
        users_evaluated=evaluated,
        users_skipped=skipped,
        thresholds=th,
        mode=mode,
        seed=seed,
        fraction=split.fraction,
        concepts=len(concepts),
        baseline_per_k={k: _mean(v) for k, v in base.items() if v},
    )
