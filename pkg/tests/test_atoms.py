import pytest
from hypothesis import given, settings, strategies as st

from relalg.atoms import (
    MAX_ATOMS,
    AtomStructure,
    UnknownAtomError,
    close_under_transforms,
    make_structure,
    peircean_transforms,
)


def tiny():
    """Identity plus one self-converse diversity atom, nothing forbidden."""
    return make_structure(["1'", "d"], ["1'"], [], [("1'", "1'", "d")])


def asym():
    """Identity plus a converse pair (a, a~)."""
    return make_structure(
        ["1'", "a", "a~"],
        ["1'"],
        [("a", "a~")],
        [("1'", "1'", "a"), ("1'", "a", "a~")],
    )


# --- transforms -------------------------------------------------------------


def test_transform_order_fixed():
    conv = (0, 2, 1)  # 1 and 2 are converses
    assert peircean_transforms((1, 2, 0), conv) == [
        (1, 2, 0),
        (2, 0, 2),
        (0, 1, 1),
        (2, 0, 2),
        (0, 1, 1),
        (1, 2, 0),
    ]


@st.composite
def involution_and_triple(draw):
    k = draw(st.integers(min_value=1, max_value=6))
    conv = list(range(k))
    for _ in range(draw(st.integers(0, 3))):
        i, j = draw(st.integers(0, k - 1)), draw(st.integers(0, k - 1))
        if conv[i] == i and conv[j] == j and i != j:
            conv[i], conv[j] = j, i
    t = tuple(draw(st.integers(0, k - 1)) for _ in range(3))
    return tuple(conv), t


@settings(max_examples=50)
@given(involution_and_triple())
def test_transforms_idempotent_as_set(data):
    conv, t = data
    once = set(peircean_transforms(t, conv))
    twice = {u for s in once for u in peircean_transforms(s, conv)}
    assert once == twice


@settings(max_examples=50)
@given(involution_and_triple())
def test_closure_is_union_of_orbits(data):
    conv, t = data
    closed = close_under_transforms([t], conv)
    assert closed == set(peircean_transforms(t, conv))
    assert close_under_transforms(closed, conv) == closed


# --- structure construction --------------------------------------------------


def test_make_structure_complements_forbidden():
    st_ = tiny()
    assert not st_.is_consistent((0, 0, 1))
    # transforms of the generator are forbidden too
    assert not st_.is_consistent((1, 0, 0)) or (1, 0, 0) not in st_.consistent
    # everything else is consistent
    assert st_.is_consistent((1, 1, 0))
    assert st_.is_consistent((1, 1, 1))


def test_converse_pairs_applied():
    st_ = asym()
    assert st_.converse_of(st_.atom("a")) == st_.atom("a~")
    assert st_.converse_of(st_.atom("1'")) == st_.atom("1'")


def test_validate_ok_structures():
    assert tiny().validate() == []
    assert asym().validate() == []


def test_validate_catches_broken_involution():
    st_ = AtomStructure(
        names=("1'", "a", "b"),
        identity=frozenset([0]),
        conv=(0, 2, 0),  # not an involution
        consistent=frozenset(),
    )
    assert any("involution" in p for p in st_.validate())


def test_validate_catches_transform_leak():
    base = tiny()
    # drop one triple but keep its transforms: closure is broken
    victim = (1, 1, 0)
    leaky = AtomStructure(
        names=base.names,
        identity=base.identity,
        conv=base.conv,
        consistent=base.consistent - {victim},
    )
    assert leaky.validate() != []


def test_unknown_atom_errors():
    st_ = tiny()
    with pytest.raises(UnknownAtomError):
        st_.atom("nope")
    with pytest.raises(UnknownAtomError):
        st_.converse_of(17)
    with pytest.raises(UnknownAtomError):
        st_.is_consistent((0, 0, 99))


def test_atom_cap_enforced():
    names = [f"a{i}" for i in range(MAX_ATOMS + 1)]
    with pytest.raises(ValueError):
        AtomStructure(
            names=tuple(names),
            identity=frozenset([0]),
            conv=tuple(range(len(names))),
            consistent=frozenset(),
        )


def test_identity_coherence_flagged():
    # (1', a, b) consistent with a != b must be rejected
    st_ = make_structure(["1'", "a", "b"], ["1'"], [], [])
    # fully-consistent structure: (0, 1, 2) is consistent, so invalid
    assert any("identity" in p for p in st_.validate())
