"""Exhaustive enumeration of quadri-concepts on tiny relations.

Used as a test oracle for the miner.  For every non-empty pair of user and
attribute subsets, it tabulates which resources each tag reaches across the
whole (users × attributes) block, then walks every tag subset, takes the
common resources, and keeps the box if no single element of any dimension
extends it.  Cost is ``2^(|U|+|P|+|T|)`` times a small polynomial, hence the
size guard.
"""

from __future__ import annotations

from itertools import combinations

from .errors import TooLarge
from .model import ConceptSet, PFolksonomy, QuadriConcept, SupportThresholds

MAX_PER_DIMENSION = 12


def _subsets(n):
    for k in range(1, n + 1):
        yield from combinations(range(n), k)


def enumerate_bruteforce(f: PFolksonomy, th: SupportThresholds) -> ConceptSet:
    n_users, n_tags, n_resources, n_profiles = f.shape
    if max(f.shape) > MAX_PER_DIMENSION:
        raise TooLarge(f.shape, MAX_PER_DIMENSION)

    # reach[u][p][t]: bitmask of resources r with (u, t, r, p) in Y
    reach = [[[0] * n_tags for _ in range(n_profiles)] for _ in range(n_users)]
    for u, t, r, p in f.quadruples:
        reach[u][p][t] |= 1 << r
    all_resources = (1 << n_resources) - 1

    def holds(users, tags, resources, profiles):
        return all(
            reach[u][p][t] & resources == resources
            for u in users for p in profiles for t in tags
        )

    found = set()
    for users in _subsets(n_users):
        for profiles in _subsets(n_profiles):
            tag_reach = []
            for t in range(n_tags):
                m = all_resources
                for u in users:
                    for p in profiles:
                        m &= reach[u][p][t]
                tag_reach.append(m)
            for tags in _subsets(n_tags):
                resources = all_resources
                for t in tags:
                    resources &= tag_reach[t]
                if not resources:
                    continue
                # resources are maximal by construction; test the other three
                if any(
                    t not in tags and tag_reach[t] & resources == resources
                    for t in range(n_tags)
                ):
                    continue
                if any(
                    u not in users and holds((u,), tags, resources, profiles)
                    for u in range(n_users)
                ):
                    continue
                if any(
                    p not in profiles and holds(users, tags, resources, (p,))
                    for p in range(n_profiles)
                ):
                    continue
                rs = tuple(r for r in range(n_resources) if resources >> r & 1)
                found.add(QuadriConcept(users, tags, rs, profiles))

    return ConceptSet(tuple(c for c in found if th.accepts(c)))
