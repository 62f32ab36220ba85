"""Synthetic data: random relations and a planted-affinity tagging dataset."""

from __future__ import annotations

import itertools
import random

from .model import PFolksonomy

GENDERS = ("F", "M")
AGES = (20, 38)
OCCUPATIONS = ("artist", "engineer")


def random_pfolksonomy(rng: random.Random, shape, density: float) -> PFolksonomy:
    """Each cell of the ``shape`` grid is in ``Y`` with probability ``density``.

    At least one quadruple is always present.
    """
    quads = [q for q in itertools.product(*map(range, shape)) if rng.random() < density]
    if not quads:
        quads = [tuple(rng.randrange(n) for n in shape)]
    return PFolksonomy.from_quadruples(
        [f"u{i}" for i in range(shape[0])],
        [f"t{i}" for i in range(shape[1])],
        [f"r{i}" for i in range(shape[2])],
        [f"p{i}" for i in range(shape[3])],
        quads,
    )


def planted_affinity(
    seed: int = 0,
    n_users: int = 50,
    n_resources: int = 30,
    n_tags: int = 20,
    per_user: int = 5,
    vocabulary: int = 2,
    noise: float = 0.1,
):
    """Taggings where each (age, occupation) group favours its own resources.

    Attributes are two genders, two ages and two occupations (six in all).
    The four (age, occupation) groups each own a contiguous block of
    resources and of tags.  A user picks ``vocabulary`` tags from its
    group's block and applies all of them to ``per_user`` resources, each
    drawn from the group's block, or uniformly with probability ``noise``.
    Gender is random and carries no signal.

    Returns ``(taggings, demographics_rows)`` with rows shaped
    ``(user, gender, age, occupation)``.
    """
    rng = random.Random(seed)
    groups = list(itertools.product(AGES, OCCUPATIONS))
    res_block = n_resources // len(groups)
    tag_block = n_tags // len(groups)
    if per_user > res_block or vocabulary > tag_block:
        raise ValueError("per_user and vocabulary must fit in one group's block")

    rows, taggings = [], []
    for i in range(n_users):
        g = i % len(groups)
        age, occupation = groups[g]
        user = f"user{i:03d}"
        rows.append((user, rng.choice(GENDERS), age + rng.randrange(5), occupation))
        own = range(g * res_block, (g + 1) * res_block)
        tags = rng.sample(range(g * tag_block, (g + 1) * tag_block), vocabulary)
        picked = set()
        while len(picked) < per_user:
            picked.add(rng.randrange(n_resources) if rng.random() < noise else rng.choice(own))
        for r in sorted(picked):
            for t in sorted(tags):
                taggings.append((user, f"tag{t:02d}", f"movie{r:02d}"))
    return taggings, rows
