"""P-folksonomy data model and quadri-concepts.

A p-folksonomy is a 4-adic relation ``Y`` over users, tags, resources and
profile attributes.  Elements of each dimension are interned to dense 0-based
indices, assigned in lexicographic label order so that construction is
deterministic.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import EmptyInput, InvalidIndex, MissingProfile


class Dimension(enum.IntEnum):
    USER = 0
    TAG = 1
    RESOURCE = 2
    PROFILE = 3


DIMENSIONS = tuple(Dimension)


class ElementId(NamedTuple):
    dimension: Dimension
    index: int


Quad = tuple[int, int, int, int]


@dataclass(frozen=True, eq=False)
class PFolksonomy:
    """Immutable interned relation ``Y ⊆ U × T × R × P``.

    Use :func:`build_pfolksonomy` for tagging data, or
    :meth:`from_quadruples` for an arbitrary relation.
    """

    users: tuple[str, ...]
    tags: tuple[str, ...]
    resources: tuple[str, ...]
    profiles: tuple[str, ...]
    quadruples: frozenset[Quad]
    user_profiles: tuple[frozenset[int], ...]
    _lookup: tuple[dict[str, int], ...] = field(init=False, repr=False)
    _counts: tuple[Counter, ...] = field(init=False, repr=False)

    def __post_init__(self):
        tables = self.tables
        lookup = tuple({label: i for i, label in enumerate(t)} for t in tables)
        for dim, (table, index) in enumerate(zip(tables, lookup)):
            if len(index) != len(table):
                raise ValueError(f"duplicate labels in {Dimension(dim).name.lower()} table")
        if len(self.user_profiles) != len(self.users):
            raise ValueError("user_profiles must have one entry per user")
        for attrs in self.user_profiles:
            for p in attrs:
                if not 0 <= p < len(self.profiles):
                    raise InvalidIndex(Dimension.PROFILE, p)
        shape = self.shape
        counts = tuple(Counter() for _ in DIMENSIONS)
        for quad in self.quadruples:
            for dim, i in enumerate(quad):
                if not 0 <= i < shape[dim]:
                    raise InvalidIndex(Dimension(dim), i)
                counts[dim][i] += 1
            if quad[3] not in self.user_profiles[quad[0]]:
                raise ValueError(f"quadruple {quad} uses an attribute outside its user's profile")
        object.__setattr__(self, "_lookup", lookup)
        object.__setattr__(self, "_counts", counts)

    @classmethod
    def from_quadruples(
        cls,
        users: Sequence[str],
        tags: Sequence[str],
        resources: Sequence[str],
        profiles: Sequence[str],
        quadruples: Iterable[Quad],
        user_profiles: Sequence[Iterable[int]] | None = None,
    ) -> PFolksonomy:
        """Wrap an explicit relation given in index space.

        When ``user_profiles`` is omitted each user's profile is the set of
        attributes it co-occurs with in ``quadruples``.
        """
        quads = frozenset(tuple(q) for q in quadruples)
        if user_profiles is None:
            seen: list[set[int]] = [set() for _ in users]
            for u, _, _, p in quads:
                seen[u].add(p)
            user_profiles = seen
        return cls(
            tuple(users),
            tuple(tags),
            tuple(resources),
            tuple(profiles),
            quads,
            tuple(frozenset(a) for a in user_profiles),
        )

    @property
    def tables(self) -> tuple[tuple[str, ...], ...]:
        return (self.users, self.tags, self.resources, self.profiles)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return (len(self.users), len(self.tags), len(self.resources), len(self.profiles))

    def __len__(self):
        return len(self.quadruples)

    def __contains__(self, quad) -> bool:
        return tuple(quad) in self.quadruples

    def __eq__(self, other):
        if not isinstance(other, PFolksonomy):
            return NotImplemented
        return (
            self.tables == other.tables
            and self.quadruples == other.quadruples
            and self.user_profiles == other.user_profiles
        )

    def __hash__(self):
        return hash((self.tables, self.quadruples))

    def label(self, dim: Dimension, index: int) -> str:
        table = self.tables[dim]
        if not 0 <= index < len(table):
            raise InvalidIndex(Dimension(dim), index)
        return table[index]

    def index(self, dim: Dimension, label: str) -> int | None:
        """Index of ``label`` in dimension ``dim``, or None if absent."""
        return self._lookup[dim].get(label)

    def frequency(self, dim: Dimension, index: int) -> int:
        """Number of quadruples of ``Y`` involving the element."""
        return self._counts[dim][index]

    def taggings(self) -> list[tuple[int, int, int]]:
        """Distinct (user, tag, resource) triples, sorted."""
        return sorted({(u, t, r) for u, t, r, _ in self.quadruples})

    def resources_of(self, user: int) -> frozenset[int]:
        return frozenset(r for u, _, r, _ in self.quadruples if u == user)

    def tagging_labels(self) -> list[tuple[str, str, str]]:
        return [(self.users[u], self.tags[t], self.resources[r]) for u, t, r in self.taggings()]

    def demographics(self) -> dict[str, set[str]]:
        return {
            self.users[u]: {self.profiles[p] for p in attrs}
            for u, attrs in enumerate(self.user_profiles)
        }


def build_pfolksonomy(
    taggings: Iterable[tuple[str, str, str]],
    demographics: Mapping[str, Iterable[str]],
) -> PFolksonomy:
    """Expand (user, tag, resource) taggings with each user's attributes.

    Every tagging yields one quadruple per attribute of its user.  Users and
    attributes that only occur in ``demographics`` are interned too, so a
    user without tagging history still has an index and a profile.
    """
    triples = {tuple(s.strip() for s in tagging) for tagging in taggings}
    if not triples:
        raise EmptyInput("taggings")
    profiles_by_user = {u.strip(): {a.strip() for a in attrs} for u, attrs in demographics.items()}
    for u, _, _ in sorted(triples):
        if not profiles_by_user.get(u):
            raise MissingProfile(u)
    labels = itertools.chain(itertools.chain.from_iterable(triples), profiles_by_user, *profiles_by_user.values())
    if not all(labels):
        raise ValueError("empty label")

    users = sorted({u for u, _, _ in triples} | set(profiles_by_user))
    tags = sorted({t for _, t, _ in triples})
    resources = sorted({r for _, _, r in triples})
    profiles = sorted(set().union(*profiles_by_user.values()))
    ui = {s: i for i, s in enumerate(users)}
    ti = {s: i for i, s in enumerate(tags)}
    ri = {s: i for i, s in enumerate(resources)}
    pi = {s: i for i, s in enumerate(profiles)}
    user_profiles = [frozenset(pi[a] for a in profiles_by_user.get(u, ())) for u in users]
    quads = {
        (ui[u], ti[t], ri[r], p)
        for u, t, r in triples
        for p in user_profiles[ui[u]]
    }
    return PFolksonomy(
        tuple(users), tuple(tags), tuple(resources), tuple(profiles),
        frozenset(quads), tuple(user_profiles),
    )


@dataclass(frozen=True, order=True)
class QuadriConcept:
    """A maximal box ``extent × modus × intent × variable`` inside ``Y``.

    Field order (users, tags, resources, attributes) doubles as the canonical
    sort order.  Index sets are stored as sorted tuples.
    """

    extent: tuple[int, ...]
    modus: tuple[int, ...]
    intent: tuple[int, ...]
    variable: tuple[int, ...]

    def __post_init__(self):
        for name in ("extent", "modus", "intent", "variable"):
            object.__setattr__(self, name, tuple(sorted(set(getattr(self, name)))))

    @classmethod
    def from_sets(cls, sets: Sequence[Iterable[int]]) -> QuadriConcept:
        """Build from four index collections in dimension order."""
        return cls(*sets)

    @property
    def sets(self) -> tuple[tuple[int, ...], ...]:
        return (self.extent, self.modus, self.intent, self.variable)

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        return tuple(len(s) for s in self.sets)

    def is_nonempty(self) -> bool:
        return all(self.sets)

    def labels(self, f: PFolksonomy) -> tuple[tuple[str, ...], ...]:
        return tuple(tuple(f.label(Dimension(d), i) for i in s) for d, s in enumerate(self.sets))


@dataclass(frozen=True)
class SupportThresholds:
    minsupp_u: int = 1
    minsupp_t: int = 1
    minsupp_r: int = 1
    minsupp_p: int = 1

    def __post_init__(self):
        for name, value in zip(("minsupp_u", "minsupp_t", "minsupp_r", "minsupp_p"), self.as_tuple()):
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.minsupp_u, self.minsupp_t, self.minsupp_r, self.minsupp_p)

    def accepts(self, concept: QuadriConcept) -> bool:
        return all(n >= m for n, m in zip(concept.sizes, self.as_tuple()))


ONES = SupportThresholds()


@dataclass(frozen=True)
class ConceptSet:
    """Duplicate-free concepts in canonical order."""

    concepts: tuple[QuadriConcept, ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.concepts))
        if any(a == b for a, b in zip(ordered, ordered[1:])):
            raise ValueError("duplicate concepts")
        object.__setattr__(self, "concepts", ordered)

    def __iter__(self):
        return iter(self.concepts)

    def __len__(self):
        return len(self.concepts)

    def __getitem__(self, i):
        return self.concepts[i]

    def __contains__(self, concept):
        return concept in set(self.concepts)


def box_in_relation(f: PFolksonomy, sets: Sequence[Iterable[int]]) -> bool:
    return all(q in f.quadruples for q in itertools.product(*sets))


def _check_indices(c: QuadriConcept, f: PFolksonomy) -> None:
    for dim, (values, n) in enumerate(zip(c.sets, f.shape)):
        for i in values:
            if not 0 <= i < n:
                raise InvalidIndex(Dimension(dim), i)


def is_maximal(c: QuadriConcept, f: PFolksonomy) -> bool:
    """True when no single element of any dimension extends ``c`` inside ``Y``.

    Assumes ``c`` already lies inside the relation.
    """
    _check_indices(c, f)
    sets = list(c.sets)
    for dim, n in enumerate(f.shape):
        members = set(sets[dim])
        for e in range(n):
            if e in members:
                continue
            probe = sets[:dim] + [(e,)] + sets[dim + 1:]
            if box_in_relation(f, probe):
                return False
    return True


def is_concept(c: QuadriConcept, f: PFolksonomy) -> bool:
    """Non-empty, contained in ``Y`` and maximal."""
    return c.is_nonempty() and box_in_relation(f, c.sets) and is_maximal(c, f)
