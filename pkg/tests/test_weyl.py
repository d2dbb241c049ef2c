import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from adlv.root_data import root_datum, vdot, vneg
from adlv.weyl import (coset_min_rep, from_word, in_parabolic, length,
                       longest_element, min_coset_reps, parabolic_elements,
                       reduced_word, root_orbit, root_reflection,
                       simple_reflection, weyl_group, weyl_identity,
                       weyl_orbit)

ORDERS = {("A", 2): 6, ("A", 3): 24, ("B", 2): 8, ("B", 3): 48,
          ("C", 3): 48, ("D", 4): 192, ("G", 2): 12}


@pytest.mark.parametrize("label,rank", sorted(ORDERS))
def test_group_order(label, rank):
    d = root_datum(label, rank)
    assert len(weyl_group(d)) == ORDERS[(label, rank)]


def test_simple_reflections_relations():
    for label, rank in [("A", 3), ("B", 2), ("G", 2)]:
        d = root_datum(label, rank)
        for i in range(rank):
            s = simple_reflection(d, i)
            assert (s * s).is_identity()
            assert s.root(d.simple_roots[i]) == tuple(
                vneg(d.simple_roots[i]))


def test_length_counts_inversions():
    d = root_datum("B", 2)
    for w, word in weyl_group(d).items():
        inv = sum(1 for a in d.positive_roots
                  if tuple(w.root(a)) not in set(d.positive_roots))
        assert length(d, w) == inv == len(word)


def test_reduced_word_roundtrip():
    for label, rank in [("A", 3), ("C", 3), ("G", 2)]:
        d = root_datum(label, rank)
        for w in weyl_group(d):
            word = reduced_word(d, w)
            assert from_word(d, word) == w
            assert len(word) == length(d, w)


def test_longest_element():
    d = root_datum("D", 4)
    w0 = longest_element(d)
    assert length(d, w0) == len(d.positive_roots)
    assert (w0 * w0).is_identity()
    wJ = longest_element(d, {0, 2})
    assert length(d, wJ) == 2  # A1 x A1 parabolic
    assert in_parabolic(d, wJ, {0, 2})
    assert length(d, longest_element(d, {0, 1})) == 3  # A2 parabolic


def test_coset_min_reps_partition():
    d = root_datum("A", 3)
    for J in [frozenset(), frozenset({0}), frozenset({0, 2}),
              frozenset({0, 1})]:
        reps = min_coset_reps(d, J)
        par = parabolic_elements(d, J)
        assert len(reps) * len(par) == 24
        # every element factors uniquely as z * u
        seen = set()
        for z in reps:
            assert coset_min_rep(d, z, J) == z
            for u in par:
                seen.add(z * u)
        assert len(seen) == 24


def test_min_rep_keeps_levi_roots_positive():
    d = root_datum("B", 3)
    J = frozenset({1, 2})
    pos = set(d.positive_roots)
    for z in min_coset_reps(d, J):
        for a in d.levi_positive_roots(J):
            assert tuple(z.root(a)) in pos


def test_weyl_orbit_sizes():
    d = root_datum("A", 2)
    assert len(weyl_orbit(d, (1, 0))) == 3
    assert len(weyl_orbit(d, (1, 1))) == 6
    assert len(weyl_orbit(d, (0, 0))) == 1


def test_root_orbit_partitions_by_length():
    d = root_datum("G", 2)
    long_orbit = root_orbit(d, (1, 0))
    short_orbit = root_orbit(d, (0, 1))
    assert len(long_orbit) == 6 and len(short_orbit) == 6
    assert long_orbit | short_orbit == frozenset(d.roots)


def test_root_reflection_matches_formula():
    d = root_datum("C", 3)
    for a in d.positive_roots:
        s = root_reflection(d, a)
        for b in d.roots:
            expect = tuple(x - vdot(d.coroot(a), b) * y
                           for x, y in zip(b, a))
            assert s.root(b) == expect


@given(st.lists(st.integers(0, 3), max_size=8))
@settings(max_examples=120, deadline=None)
def test_word_action_is_homomorphism(word):
    d = root_datum("D", 4)
    w = from_word(d, word)
    v = (1, -1, 0, 2)
    step = v
    for i in reversed(word):
        step = simple_reflection(d, i).coweight(step)
    assert w.coweight(v) == step
