import itertools
import random
from pathlib import Path

import pytest

from quadrec.ingest import DEFAULT_BUCKETING, load_folksonomy
from quadrec.model import build_pfolksonomy
from quadrec.synthetic import planted_affinity, random_pfolksonomy

DATA = Path(__file__).parent / "data"
TOY_TAGGINGS = DATA / "toy_taggings.tsv"
TOY_DEMOGRAPHICS = DATA / "toy_demographics.tsv"

DENSITIES = [round(0.1 * k, 1) for k in range(1, 10)]
THRESHOLDS_12 = list(itertools.product((1, 2), repeat=4))


def random_instances(n, seed, max_size=5):
    """``n`` seeded random relations with every dimension of size <= ``max_size``."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        shape = [rng.randint(1, max_size) for _ in range(4)]
        out.append(random_pfolksonomy(rng, shape, DENSITIES[i % len(DENSITIES)]))
    return out


def planted_model(seed=0):
    taggings, rows = planted_affinity(seed)
    demo = {
        u: {f"gender:{g}", f"age:{DEFAULT_BUCKETING.label(a)}", f"occ:{o}"}
        for u, g, a, o in rows
    }
    return build_pfolksonomy(taggings, demo)


@pytest.fixture(scope="session")
def toy():
    return load_folksonomy(TOY_TAGGINGS, TOY_DEMOGRAPHICS)


@pytest.fixture(scope="session")
def planted():
    return planted_model()
