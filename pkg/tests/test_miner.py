import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import THRESHOLDS_12, random_instances
from quadrec.errors import TooLarge
from quadrec.miner import KERNEL, KERNELS, filter_concepts, mine, prune_elements
from quadrec.model import (
    ConceptSet,
    Dimension,
    PFolksonomy,
    QuadriConcept,
    SupportThresholds,
    box_in_relation,
    is_maximal,
)
from quadrec.oracle import enumerate_bruteforce
from quadrec.synthetic import random_pfolksonomy

ONES = SupportThresholds()
kernels = pytest.mark.parametrize("kernel", sorted(KERNELS))


def single(quads, shape):
    return PFolksonomy.from_quadruples(
        [f"u{i}" for i in range(shape[0])],
        [f"t{i}" for i in range(shape[1])],
        [f"r{i}" for i in range(shape[2])],
        [f"p{i}" for i in range(shape[3])],
        quads,
    )


def test_compiled_kernel_is_built():
    assert KERNEL == "compiled"


@kernels
def test_full_product_single_concept(kernel):
    f = single(itertools.product(range(2), range(2), range(2), range(1)), (2, 2, 2, 1))
    assert list(mine(f, ONES, kernel=kernel)) == [QuadriConcept((0, 1), (0, 1), (0, 1), (0,))]


@kernels
def test_singleton_relation(kernel):
    f = single([(0, 0, 0, 0)], (1, 1, 1, 1))
    assert list(mine(f, ONES, kernel=kernel)) == [QuadriConcept((0,), (0,), (0,), (0,))]


def test_oracle_trivial_cases():
    f = single([(0, 0, 0, 0)], (1, 1, 1, 1))
    assert list(enumerate_bruteforce(f, ONES)) == [QuadriConcept((0,), (0,), (0,), (0,))]
    f = single(itertools.product(range(2), range(2), range(2), range(1)), (2, 2, 2, 1))
    assert len(enumerate_bruteforce(f, ONES)) == 1


def test_oracle_guard():
    f = single([(0, 0, 0, 0)], (13, 1, 1, 1))
    with pytest.raises(TooLarge):
        enumerate_bruteforce(f, ONES)


@kernels
def test_matches_oracle_sample(kernel):
    for f in random_instances(40, seed=99):
        for th in THRESHOLDS_12[::3]:
            th = SupportThresholds(*th)
            assert mine(f, th, kernel=kernel) == enumerate_bruteforce(f, th)


def test_toy_first_concept(toy):
    f = toy
    ids = lambda dim, labels: tuple(sorted(f.index(dim, x) for x in labels))
    expected = QuadriConcept(
        ids(Dimension.USER, ["bernadette", "bridget", "margaret62"]),
        ids(Dimension.TAG, ["classic", "dialog", "oscar"]),
        ids(Dimension.RESOURCE, ["Star Wars", "M.A.S.H", "Rear Window"]),
        ids(Dimension.PROFILE, ["gender:F", "age:46+", "occ:retired"]),
    )
    assert expected in mine(f, SupportThresholds(2, 2, 2, 2))


def test_filter_by_extent_size():
    cs = ConceptSet(tuple(QuadriConcept(tuple(range(n)), (n,), (0,), (0,)) for n in (1, 2, 3)))
    kept = filter_concepts(cs, SupportThresholds(2, 1, 1, 1))
    assert [c.sizes[0] for c in kept] == [2, 3]
    assert filter_concepts(cs, ONES) == cs


def test_threshold_consistency_random():
    for f in random_instances(30, seed=5, max_size=6):
        everything = mine(f, ONES)
        for th in THRESHOLDS_12:
            th = SupportThresholds(*th)
            assert filter_concepts(everything, th) == mine(f, th)


def test_kernels_agree_beyond_one_word():
    # > 64 elements in a dimension exercises multi-word bitsets
    rng = random.Random(3)
    for shape, density in [((70, 5, 4, 2), 0.3), ((6, 80, 3, 2), 0.25), ((3, 4, 130, 2), 0.4)]:
        f = random_pfolksonomy(rng, shape, density)
        for th in (ONES, SupportThresholds(2, 2, 1, 1)):
            assert mine(f, th, kernel="python") == mine(f, th, kernel="compiled")


def test_kernels_agree_medium_random():
    rng = random.Random(8)
    for _ in range(25):
        shape = [rng.randint(5, 40), rng.randint(3, 20), rng.randint(3, 20), rng.randint(1, 6)]
        f = random_pfolksonomy(rng, shape, rng.choice([0.05, 0.1, 0.2]))
        th = SupportThresholds(*[rng.randint(1, 2) for _ in range(4)])
        assert mine(f, th, kernel="python") == mine(f, th, kernel="compiled")


@pytest.mark.parametrize("workers", [2, 3])
def test_parallel_matches_serial(workers):
    for f in random_instances(3, seed=21, max_size=7):
        assert mine(f, ONES, workers=workers) == mine(f, ONES)


def test_prune_elements_keeps_frequent_concepts(planted):
    th = SupportThresholds(2, 2, 2, 2)
    kept = prune_elements(planted.quadruples, th)
    for c in mine(planted, th):
        assert set(itertools.product(*c.sets)) <= kept


def test_empty_after_pruning():
    f = single([(0, 0, 0, 0)], (1, 1, 1, 1))
    assert len(mine(f, SupportThresholds(2, 1, 1, 1))) == 0


def test_rejects_unknown_kernel():
    f = single([(0, 0, 0, 0)], (1, 1, 1, 1))
    with pytest.raises(ValueError):
        mine(f, kernel="gpu")


relations = st.builds(
    lambda shape, cells: single(
        [q for q, keep in zip(itertools.product(*map(range, shape)), cells) if keep] or [(0, 0, 0, 0)],
        shape,
    ),
    st.tuples(*[st.integers(1, 4)] * 4),
    st.lists(st.booleans(), min_size=256, max_size=256),
)


@given(relations, st.tuples(*[st.integers(1, 3)] * 4))
@settings(max_examples=150, deadline=None)
def test_soundness_property(f, th):
    th = SupportThresholds(*th)
    cs = mine(f, th)
    assert len(set(cs)) == len(cs)
    for c in cs:
        assert c.is_nonempty()
        assert box_in_relation(f, c.sets)
        assert is_maximal(c, f)
        assert th.accepts(c)
