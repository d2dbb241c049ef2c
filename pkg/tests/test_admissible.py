import itertools

import pytest

from adlv.root_data import root_datum
from adlv.affine import ExtAffine, engine, is_straight, translation
from adlv.admissible import (adm_contains, compute_adm, orbit_translations,
                             straight_elements)
from adlv.serialize import element_from_json, element_to_json


def test_adm_a1_smallest():
    d = root_datum("A", 1)
    adm = compute_adm(d, (1,))
    assert len(adm) == 3
    assert translation((1,), d) in adm
    assert translation((-1,), d) in adm


def test_adm_zero_is_omega_intersection():
    d = root_datum("A", 2)
    adm = compute_adm(d, (0, 0))
    assert len(adm) == 1
    assert adm.elements[0].is_translation()


def test_membership_agrees_with_enumeration():
    for label, rank, lam in [("A", 2, (1, 0)), ("A", 2, (1, 1)),
                             ("B", 2, (1, 0)), ("G", 2, (0, 1))]:
        d = root_datum(label, rank)
        adm = compute_adm(d, lam)
        elems = set(adm.elements)
        eng = engine(d)
        cap = max(eng.length(x) for x in adm.elements)
        for mu in itertools.product(range(-2, 3), repeat=rank):
            from adlv.weyl import weyl_group
            for w in weyl_group(d):
                x = ExtAffine(mu, w)
                got = adm_contains(d, lam, x)
                assert got == (x in elems)


def test_adm_monotone_under_preceq():
    d = root_datum("A", 2)
    lams = [lam for lam in itertools.product(range(3), repeat=2)
            if d.is_dominant(lam)]
    for l1 in lams:
        for l2 in lams:
            if d.preceq(l1, l2):
                a1 = set(compute_adm(d, l1).elements)
                a2 = set(compute_adm(d, l2).elements)
                assert a1 <= a2, (l1, l2)


def test_orbit_translations_are_maximal():
    d = root_datum("B", 2)
    lam = (1, 1)
    eng = engine(d)
    tops = orbit_translations(d, lam)
    lt = eng.length(translation(lam, d))
    assert all(eng.length(t) == lt for t in tops)
    adm = compute_adm(d, lam)
    for x in adm.elements:
        assert any(eng.bruhat_leq(x, t) for t in tops)


def test_straight_subset_marked_correctly():
    d = root_datum("A", 2)
    adm = compute_adm(d, (2, 0))
    ss = set(adm.straight_subset)
    for x in adm.elements:
        assert (x in ss) == is_straight(d, x)


def test_straight_elements_grouped_by_invariants():
    d = root_datum("A", 2)
    adm = compute_adm(d, (1, 1))
    groups = straight_elements(adm)
    from adlv.affine import dominant_newton_point, kottwitz
    for (eta, nu), xs in groups.items():
        for x in xs:
            assert kottwitz(d, x) == tuple(eta)
            assert dominant_newton_point(d, x) == tuple(nu)


def test_element_json_roundtrip():
    d = root_datum("C", 3)
    adm = compute_adm(d, (1, 0, 0))
    for x in adm.elements:
        assert element_from_json(d, element_to_json(d, x)) == x
