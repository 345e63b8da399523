import random

import pytest

from conftest import full_only
from gradcon.catalogue import representatives
from gradcon.contraction import contract_gns
from gradcon.fano import collineation_group
from gradcon.gns import S_SETS, canonical, parse_gns
from gradcon.isoclass import (
    MergeRecipe, build_block_map, classify, compatible_sigmas, compatible_sigmas_bruteforce,
    extra_recipes, is_compatible_sigma, is_graded_isomorphism, merge_recipes, retag_map,
    transcribed_recipes, verify_recipe, weyl_orbit_pair,
)
from gradcon.tits import tits, weyl_lift

IDENTITY = tuple(range(8))


@pytest.fixture(scope="module")
def report_f():
    return classify("F")


def test_incompatible_pairs():
    assert compatible_sigmas(parse_gns("S1+E_1"), parse_gns("S1+E_3")) == []
    assert compatible_sigmas(parse_gns("S3+E_12"), parse_gns("S3+E_16")) == []


def test_self_compatibility_contains_identity():
    T = parse_gns("S2+E_17")
    sig = compatible_sigmas(T, T)
    assert IDENTITY in sig
    assert all(is_compatible_sigma(s, T, T) for s in sig)


def test_backtracking_matches_bruteforce():
    rng = random.Random(11)
    reps = [T for _, T in representatives()]
    for _ in range(6):
        T, U = rng.choice(reps), rng.choice(reps)
        assert sorted(compatible_sigmas(T, U)) == sorted(compatible_sigmas_bruteforce(T, U))
    T = parse_gns("S4+E_234")
    assert sorted(compatible_sigmas(T, T)) == sorted(compatible_sigmas_bruteforce(T, T))


def test_recipe_lists():
    assert len(transcribed_recipes()) == 30
    assert len(extra_recipes()) == 1
    assert len(merge_recipes()) == 31
    items = {r.item for r in transcribed_recipes()}
    assert len(items) == 10


@pytest.mark.parametrize("recipe", merge_recipes(), ids=lambda r: f"{r.source_label}->{r.target_label}")
def test_recipe_verifies_on_f(recipe):
    assert verify_recipe(recipe, "F")


def test_recipe_sigma_is_compatible():
    L = tits("F")
    for r in merge_recipes():
        f = build_block_map(r, L)
        assert is_compatible_sigma(f.sigma, r.source, r.target), r.tag


def test_negative_control_swap_on_wrong_pair():
    src, dst = parse_gns("S1+E_1"), parse_gns("S1+E_3")
    r = MergeRecipe("S1+E_1", "S1+E_3", src, dst, "swap", (4, 7))
    assert not verify_recipe(r, "F")


def test_identity_is_an_isomorphism():
    L = tits("F")
    C = contract_gns(L, S_SETS[5])
    assert is_graded_isomorphism(retag_map(IDENTITY, L), C, C)
    n = L.n
    assert is_graded_isomorphism([[1 if i == j else 0 for j in range(n)] for i in range(n)], C, C)


def test_weyl_lift_maps_contractions():
    L = tits("F")
    T = parse_gns("S2+E_124")
    for sigma in collineation_group()[:10]:
        A, B = weyl_orbit_pair(T, sigma)
        f = weyl_lift(sigma, L, verify=False)
        assert is_graded_isomorphism(f, contract_gns(L, A), contract_gns(L, B))
    assert canonical(B) == canonical(T)


def test_classification_f(report_f):
    r = report_f
    assert r.orbit_count == 246
    assert r.class_count == 215 and r.ok and not r.undecided
    assert r.separated_by_fingerprint + r.separated_by_sigma == 215 * 214 // 2
    assert all(c.verified for c in r.classes)
    assert {c.label for c in r.classes} == {lab for lab, _ in representatives()}


def test_report_serialises(report_f):
    d = report_f.as_dict()
    assert d["class_count"] == 215 and d["merge_count"] == 31 and d["merges_verified"] == 31
    assert d["unlisted_orbits"] == report_f.unlisted_orbits


@full_only
@pytest.mark.parametrize("c", "KHO")
def test_classification_large(c):
    r = classify(c, workers=4)
    assert r.class_count == 215 and r.ok
