import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadrec.errors import EmptyInput, InvalidIndex, MissingProfile
from quadrec.ingest import write_model
from quadrec.model import (
    ConceptSet,
    Dimension,
    PFolksonomy,
    QuadriConcept,
    SupportThresholds,
    box_in_relation,
    build_pfolksonomy,
    is_concept,
    is_maximal,
)
from quadrec.synthetic import random_pfolksonomy


def full_product(shape):
    return PFolksonomy.from_quadruples(
        [f"u{i}" for i in range(shape[0])],
        [f"t{i}" for i in range(shape[1])],
        [f"r{i}" for i in range(shape[2])],
        [f"p{i}" for i in range(shape[3])],
        itertools.product(*map(range, shape)),
    )


def test_one_quadruple_per_attribute():
    f = build_pfolksonomy(
        [("rossy", "classic", "RearWindow")],
        {"rossy": {"M", "36-45", "writer"}},
    )
    assert len(f) == 3
    assert f.shape == (1, 1, 1, 3)


def test_empty_taggings():
    with pytest.raises(EmptyInput):
        build_pfolksonomy([], {"rossy": {"M"}})


def test_missing_profile():
    with pytest.raises(MissingProfile) as exc:
        build_pfolksonomy([("a", "t", "r"), ("b", "t", "r")], {"a": {"M"}, "b": set()})
    assert exc.value.user == "b"


def test_tables_sorted_and_trimmed():
    f = build_pfolksonomy(
        [(" zed", "b ", "y"), ("amy", "a", "x")],
        {"zed": {"M"}, "amy": {"F"}},
    )
    assert f.users == ("amy", "zed")
    assert f.tags == ("a", "b")
    assert f.index(Dimension.USER, "zed") == 1


def test_demographics_only_user_is_interned():
    f = build_pfolksonomy([("a", "t", "r")], {"a": {"M"}, "cold": {"F"}})
    cold = f.index(Dimension.USER, "cold")
    assert cold is not None
    assert {f.profiles[p] for p in f.user_profiles[cold]} == {"F"}
    assert not any(q[0] == cold for q in f.quadruples)


def test_attribute_outside_profile_rejected():
    with pytest.raises(ValueError):
        PFolksonomy.from_quadruples(["u"], ["t"], ["r"], ["p", "q"], [(0, 0, 0, 1)], [{0}])


def test_out_of_range_quadruple():
    with pytest.raises(InvalidIndex):
        PFolksonomy.from_quadruples(["u"], ["t"], ["r"], ["p"], [(0, 0, 1, 0)])


taggings_strategy = st.lists(
    st.tuples(st.sampled_from("abc"), st.sampled_from("xyz"), st.sampled_from("RST")),
    min_size=1,
    max_size=15,
)
attrs_strategy = st.fixed_dictionaries(
    {u: st.sets(st.sampled_from(["F", "M", "old", "young"]), min_size=1) for u in "abc"}
)


@given(taggings_strategy, attrs_strategy, st.randoms())
@settings(max_examples=60, deadline=None)
def test_build_is_deterministic(tmp_path_factory, taggings, demo, rnd):
    shuffled = list(taggings)
    rnd.shuffle(shuffled)
    d = tmp_path_factory.mktemp("m")
    write_model(build_pfolksonomy(taggings, demo), d / "a")
    write_model(build_pfolksonomy(shuffled + taggings, demo), d / "b")
    assert (d / "a").read_bytes() == (d / "b").read_bytes()


@given(taggings_strategy, attrs_strategy)
@settings(max_examples=60, deadline=None)
def test_size_is_sum_of_profile_sizes(taggings, demo):
    f = build_pfolksonomy(taggings, demo)
    assert len(f) == sum(len(demo[u]) for u, _, _ in set(taggings))
    for u, t, r, p in f.quadruples:
        assert p in f.user_profiles[u]


def test_full_box_is_maximal():
    f = full_product((2, 2, 2, 1))
    c = QuadriConcept((0, 1), (0, 1), (0, 1), (0,))
    assert is_maximal(c, f)
    assert is_concept(c, f)


def test_missing_user_extends():
    f = full_product((2, 2, 2, 1))
    assert not is_maximal(QuadriConcept((0,), (0, 1), (0, 1), (0,)), f)


def test_is_maximal_invalid_index():
    f = full_product((2, 2, 2, 1))
    with pytest.raises(InvalidIndex):
        is_maximal(QuadriConcept((0, 5), (0,), (0,), (0,)), f)


def extension_oracle(sets, shape, relation):
    """Maximal iff no element outside the box has all its cross tuples in ``relation``."""
    for dim in range(4):
        for e in set(range(shape[dim])) - set(sets[dim]):
            grown = [list(s) for s in sets]
            grown[dim] = [e]
            if all(q in relation for q in itertools.product(*grown)):
                return False
    return True


def nonempty_subsets(n):
    return [c for k in range(1, n + 1) for c in itertools.combinations(range(n), k)]


def test_is_maximal_agrees_with_extension_oracle():
    rng = random.Random(11)
    shape = (4, 4, 4, 3)
    for density in (0.5, 0.8):
        f = random_pfolksonomy(rng, shape, density)
        relation = set(f.quadruples)
        checked = 0
        for sets in itertools.product(*(nonempty_subsets(n) for n in shape)):
            if not all(q in relation for q in itertools.product(*sets)):
                continue
            c = QuadriConcept(*sets)
            assert is_maximal(c, f) == extension_oracle(sets, shape, relation)
            checked += 1
        assert checked > 0


def test_concept_canonical_form():
    c = QuadriConcept((3, 1, 1), [2], {0}, (5, 4))
    assert c.sets == ((1, 3), (2,), (0,), (4, 5))
    assert c == QuadriConcept((1, 3), (2,), (0,), (4, 5))


def test_concept_set_sorted_and_duplicate_free():
    a = QuadriConcept((1,), (0,), (0,), (0,))
    b = QuadriConcept((0,), (1,), (0,), (0,))
    assert list(ConceptSet((a, b))) == [b, a]
    with pytest.raises(ValueError):
        ConceptSet((a, a))


@pytest.mark.parametrize("bad", [0, -1])
def test_thresholds_positive(bad):
    with pytest.raises(ValueError):
        SupportThresholds(1, bad, 1, 1)


def test_box_in_relation():
    f = full_product((2, 1, 1, 1))
    assert box_in_relation(f, [(0, 1), (0,), (0,), (0,)])
    assert not box_in_relation(f, [(0, 1), (0,), (0,), (0, 1)])
