import threading

import pytest
from hypothesis import given, strategies as st

from atomset.atoms import (
    IDENTITY,
    REGISTRY,
    STAR,
    AtomRegistry,
    FinitePermutation,
    Support,
    apply_perm,
    atom,
    atoms,
    fresh_atoms,
)
from atomset.errors import PreconditionError


def test_prefilled_names_are_ordered():
    a, b, z = atoms("a b z")
    assert a < b < z
    assert REGISTRY.at(0) == a
    assert atom("a") is REGISTRY.atom("a")


def test_star_sits_below_everything():
    assert STAR < atom("a")
    assert STAR.name == "star"


def test_registry_rejects_bad_names_but_knows_star():
    with pytest.raises(PreconditionError):
        atom("Bad")
    assert atom("star") is STAR


def test_registry_is_append_only_and_thread_safe():
    reg = AtomRegistry(prefill="ab")
    out = []

    def grab():
        out.append(reg.atom("shared"))

    threads = [threading.Thread(target=grab) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len({x.order_index for x in out}) == 1
    assert len(reg) == 3


def test_fresh_atoms_examples():
    a, b, c = atoms("a b c")
    assert fresh_atoms(0, avoid=[a]) == []
    assert fresh_atoms(2) == [a, b]
    got = fresh_atoms(2, avoid=[a])
    assert got == [b, c]
    assert not set(got) & {a}


def test_fresh_atoms_skip_holes():
    a, b, c, d = atoms("a b c d")
    assert fresh_atoms(2, avoid=[b, d]) == [a, c]


def test_fresh_atoms_past_the_prefill():
    got = fresh_atoms(3, avoid=[REGISTRY.at(i) for i in range(26)])
    assert len(set(got)) == 3
    assert all(x.order_index >= 26 for x in got)


def test_support_is_sorted_and_immutable():
    a, b, c = atoms("a b c")
    s = Support([c, a, b, a])
    assert list(s) == [a, b, c]
    assert repr(s) == "{a, b, c}"
    with pytest.raises(AttributeError):
        s.items = ()
    assert Support.of("a b") | Support.of("c") == s
    assert s - [b] == Support.of("a c")
    assert Support.of("a") <= s


def test_apply_perm_examples():
    a, b, c = atoms("a b c")
    assert apply_perm(IDENTITY, a) == a
    assert apply_perm(FinitePermutation.transposition(a, b), a) == b
    cyc = FinitePermutation.from_cycles((a, b, c))
    assert apply_perm(cyc, c) == a
    # (a b c) = (a c)(a b) read right to left
    tab = FinitePermutation.transposition(a, b)
    tac = FinitePermutation.transposition(a, c)
    assert tac * tab == cyc


def test_cycles_round_trip():
    a, b, c, d, e = atoms("a b c d e")
    p = FinitePermutation.from_cycles((a, c), (b, d, e))
    assert FinitePermutation.from_cycles(*p.cycles()) == p


def test_from_cycles_rejects_repeats():
    a, b = atoms("a b")
    with pytest.raises(PreconditionError):
        FinitePermutation.from_cycles((a, b, a))


pool = st.sampled_from(atoms("a b c d e f"))


@st.composite
def perms(draw):
    xs = draw(st.lists(pool, unique=True, max_size=6))
    ys = draw(st.permutations(xs))
    return FinitePermutation(dict(zip(xs, ys)))


@given(perms(), pool)
def test_inverse_round_trip(sigma, x):
    assert sigma.inverse()(sigma(x)) == x
    assert sigma(sigma.inverse()(x)) == x


@given(perms(), perms(), pool)
def test_compose_applies_right_first(s, t, x):
    assert (s * t)(x) == s(t(x))


@given(perms())
def test_moved_atoms_are_exactly_the_non_fixed(sigma):
    for x in atoms("a b c d e f"):
        assert (x in sigma.moved()) == (sigma(x) != x)
