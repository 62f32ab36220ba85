"""Profile-driven recommendation from frequent quadri-concepts.

A concept matches a query when its attribute set fits the query's profile.
Each matching concept contributes its users (minus the querying user) as
friend proposals, its resources as recommendations, and its tags as
suggestions when the query's target resource belongs to it.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvalidIndex, MissingResource
from .model import Dimension, PFolksonomy, QuadriConcept


class ProfileMatchMode(enum.Enum):
    STRICT = "strict"  # concept attributes ⊆ query profile
    OVERLAP = "overlap"  # concept attributes ∩ query profile ≠ ∅

    def matches(self, variable, profile) -> bool:
        if self is ProfileMatchMode.STRICT:
            return set(variable) <= set(profile)
        return not set(variable).isdisjoint(profile)


class Target(enum.Enum):
    USERS = "users"
    TAGS = "tags"
    RESOURCES = "resources"


@dataclass(frozen=True)
class Query:
    user: int
    profile: frozenset[int]
    resource: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "profile", frozenset(self.profile))
        if not self.profile:
            raise ValueError("query profile must be non-empty")
        if self.resource is not None and self.resource < 0:
            raise InvalidIndex(Dimension.RESOURCE, self.resource)

    @classmethod
    def for_user(cls, f: PFolksonomy, user: int, resource: int | None = None) -> Query:
        if not 0 <= user < len(f.users):
            raise InvalidIndex(Dimension.USER, user)
        if resource is not None and not 0 <= resource < len(f.resources):
            raise InvalidIndex(Dimension.RESOURCE, resource)
        return cls(user, f.user_profiles[user], resource)


@dataclass
class RecommendationBundle:
    """The three recommendation sets with per-item scores and provenance.

    ``scores[target][item]`` is ``(supporting concepts, frequency in Y)``;
    ``provenance[target][item]`` lists the positions of the contributing
    concepts in the scanned sequence.
    """

    proposed_users: set[int] = field(default_factory=set)
    suggested_tags: set[int] = field(default_factory=set)
    recommended_resources: set[int] = field(default_factory=set)
    scores: dict[Target, dict[int, tuple[int, int]]] = field(default_factory=dict)
    provenance: dict[Target, dict[int, list[int]]] = field(default_factory=dict)

    def items(self, which: Target) -> set[int]:
        return {
            Target.USERS: self.proposed_users,
            Target.TAGS: self.suggested_tags,
            Target.RESOURCES: self.recommended_resources,
        }[which]


_DIM = {Target.USERS: Dimension.USER, Target.TAGS: Dimension.TAG, Target.RESOURCES: Dimension.RESOURCE}


def recommend(
    concepts: Iterable[QuadriConcept],
    q: Query,
    mode: ProfileMatchMode = ProfileMatchMode.STRICT,
    *,
    folksonomy: PFolksonomy | None = None,
    exclude_known: bool = False,
    require_resource: bool = False,
) -> RecommendationBundle:
    """Scan ``concepts`` once and fill the three recommendation sets.

    ``folksonomy`` supplies the global frequencies used as the secondary
    ranking key, and is required by ``exclude_known`` (drop resources the
    user already tagged).  ``require_resource`` makes a missing target
    resource an error, for callers that want tag suggestions.
    """
    if require_resource and q.resource is None:
        raise MissingResource()
    if exclude_known and folksonomy is None:
        raise ValueError("exclude_known needs the folksonomy")
    known = folksonomy.resources_of(q.user) if exclude_known else frozenset()

    support = {t: Counter() for t in Target}
    provenance: dict[Target, dict[int, list[int]]] = {t: {} for t in Target}

    def add(target, items, pos):
        for item in items:
            support[target][item] += 1
            provenance[target].setdefault(item, []).append(pos)

    for pos, c in enumerate(concepts):
        if not mode.matches(c.variable, q.profile):
            continue
        add(Target.USERS, (u for u in c.extent if u != q.user), pos)
        if q.resource is not None and q.resource in c.intent:
            add(Target.TAGS, c.modus, pos)
        add(Target.RESOURCES, (r for r in c.intent if r not in known), pos)

    def freq(target, item):
        return folksonomy.frequency(_DIM[target], item) if folksonomy is not None else 0

    scores = {
        t: {item: (n, freq(t, item)) for item, n in support[t].items()} for t in Target
    }
    return RecommendationBundle(
        proposed_users=set(support[Target.USERS]),
        suggested_tags=set(support[Target.TAGS]),
        recommended_resources=set(support[Target.RESOURCES]),
        scores=scores,
        provenance=provenance,
    )


def rank_topk(b: RecommendationBundle, which: Target, k: int) -> list[int]:
    """Top ``k`` items by support desc, frequency desc, index asc."""
    if k < 1:
        raise ValueError("k must be >= 1")
    scores = b.scores.get(which, {})
    ranked = sorted(b.items(which), key=lambda i: (-scores[i][0], -scores[i][1], i))
    return ranked[:k]
