"""The end-to-end checks the package is built to pass, one function per claim.

Each check returns a :class:`CheckResult`; ``run_all`` drives them for the CLI
``verify`` command and for the acceptance test module.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .catalogue import listed_gns
from .composition import associator, derivation_algebra, hurwitz, mul, norm
from .contraction import (
    ContractionMap,
    c1_violation,
    c2_violation,
    contract_gns,
    epsilon_from_gns,
    genericity_witnesses,
    support,
)
from .fano import I, I0, collineation_group
from .gns import Y_SETS, X0, GnsSet, canonical, enumerate_all_gns, enumerate_nice_sets, gns_violation, is_gns, orbit_classify
from .isoclass import classify, transcribed_recipes, verify_recipe
from .jordan import jordan_derivation_algebra
from .linalg import Q
from .structure import analyse, bracket_identities, compare_with_expected, expected_structure
from .tits import LiePresentation, is_killing_nondegenerate, tits, verify_jacobi, weyl_lift, block_map_from_dense

ALGEBRAS = ("F", "K", "H", "O")
DIMS = {"F": 52, "K": 78, "H": 133, "O": 248}


@dataclass
class CheckResult:
    number: int
    claim: str
    ok: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number:2d}. {self.claim} ({self.seconds:.1f}s)"


def _random_octonion(rng: random.Random):
    O = hurwitz("O")
    return O.element([Q(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(8)])


def check_composition(full: bool = False, seed: int = 0) -> dict:
    O = hurwitz("O")
    basis = O.basis()
    failures = []
    for a in basis:
        for b in basis:
            if norm(a * b) != norm(a) * norm(b):
                failures.append(("norm", a, b))
            if not associator(a, a, b).is_zero() or not associator(b, a, a).is_zero():
                failures.append(("alt", a, b))
    rng = random.Random(seed)
    for _ in range(100):
        a, b = _random_octonion(rng), _random_octonion(rng)
        if norm(mul(a, b)) != norm(a) * norm(b):
            failures.append(("norm-random", a, b))
        if not associator(a, a, b).is_zero() or not associator(b, a, a).is_zero():
            failures.append(("alt-random", a, b))
    e2e5 = mul(O.e(2), O.e(5))
    return {"ok": not failures and e2e5 == O.e(1), "failures": len(failures), "e2e5": repr(e2e5)}


def check_derivations(full: bool = False) -> dict:
    der_c = {c: derivation_algebra(c).dim for c in ALGEBRAS}
    der_j = {c: jordan_derivation_algebra(c).dim for c in ALGEBRAS}
    comps = {g: derivation_algebra("O").components[g].dim for g in I0}
    ok = (tuple(der_c.values()) == (0, 0, 3, 14) and tuple(der_j.values()) == (3, 8, 21, 52)
          and comps[0] == 0 and all(comps[g] == 2 for g in I))
    return {"ok": ok, "der_C": der_c, "der_J": der_j, "der_O_components": comps}


def check_tits(full: bool = False) -> dict:
    out = {}
    ok = True
    for c in ALGEBRAS:
        L = tits(c)
        mode = "blocked" if c == "O" else "exhaustive"
        jac = verify_jacobi(L, mode)
        kill = is_killing_nondegenerate(L)
        grading = not L.grading_violations()
        out[c] = {"dim": L.n, "grading": grading, "jacobi": jac.ok, "jacobi_mode": mode, "killing_nondegenerate": kill}
        ok &= L.n == DIMS[c] and grading and jac.ok and kill
    return {"ok": ok, **out}


def check_bracket_identities(full: bool = False) -> dict:
    out = {c: bracket_identities(tits(c)) for c in ALGEBRAS}
    bad = {c: [k for k, v in ids.items() if not v] for c, ids in out.items()}
    return {"ok": not any(bad.values()), "failed": bad, "identities": len(next(iter(out.values())))}


def check_witnesses(full: bool = False) -> dict:
    cases = genericity_witnesses()
    return {"ok": len(cases) == 6 and all(c.ok for c in cases),
            "cases": {c.case: c.ok for c in cases}}


def check_gns(full: bool = False) -> dict:
    sets = enumerate_all_gns()
    orbits = orbit_classify(sets)
    listed = listed_gns()
    canon = [canonical(T).mask for _, T in listed]
    listed_valid = all(is_gns(T) for _, T in listed)
    distinct = len(set(canon)) == len(listed)
    covered = {o.representative.mask for o in orbits}
    unlisted = sorted(covered - set(canon))
    nice_orbits = orbit_classify(enumerate_nice_sets())
    ok = (len(orbits) == 245 and len(listed) == 245 and listed_valid and distinct
          and not unlisted and len(nice_orbits) == 24)
    return {
        "ok": ok,
        "raw_count": len(sets),
        "orbits": len(orbits),
        "listed": len(listed),
        "listed_valid": listed_valid,
        "listed_pairwise_non_collinear": distinct,
        "unlisted_orbits": [GnsSet(m).notation() for m in unlisted],
        "nice_orbits": len(nice_orbits),
    }


def check_contractions(full: bool = False) -> dict:
    bad = []
    L = tits("F")
    for label, T in listed_gns():
        eps = epsilon_from_gns(T)
        if c1_violation(eps) or c2_violation(eps) or support(eps) != T:
            bad.append((label, "generic"))
            continue
        if not verify_jacobi(contract_gns(L, T), "exhaustive").ok:
            bad.append((label, "jacobi"))
    spot = {}
    O = tits("O")
    for k, T in list(Y_SETS.items()) + [(0, X0)]:
        name = f"Y{k}" if k else "X0"
        spot[name] = verify_jacobi(contract_gns(O, T), "blocked").ok
    return {"ok": not bad and all(spot.values()), "failures": bad, "O_spot_checks": spot}


def check_structure(full: bool = False) -> dict:
    algebras = ALGEBRAS if full else ("F",)
    out = {}
    ok = True
    for c in algebras:
        L = tits(c)
        fails = []
        for label, T in listed_gns():
            C = contract_gns(L, T)
            res = compare_with_expected(analyse(C), expected_structure(C, label))
            if not all(res.values()):
                fails.append((label, sorted(k for k, v in res.items() if not v)))
        out[c] = fails
        ok &= not fails
    # two values quoted explicitly
    extra = {}
    if full:
        from .gns import S_SETS
        R = analyse(contract_gns(tits("O"), S_SETS[13]))
        extra["S13_lcs_O"] = tuple(S.dim for S in R.lower_central_series)
        ok &= extra["S13_lcs_O"] == (248, 112, 28, 0)
    for c in algebras:
        L = tits(c)
        lt = len(L.blocks[1])
        got = tuple(S.dim for S in analyse(contract_gns(L, Y_SETS[19])).radical_derived_series)
        extra[f"Y19_radical_derived_{c}"] = got
        ok &= got == (6 * lt + 2, 6 * lt, 2 * lt, 0)
    return {"ok": ok, "algebras": list(algebras), "failures": out, **extra}


def check_classification(full: bool = False) -> dict:
    algebras = ALGEBRAS if full else ("F",)
    recipes_ok = {f"{r.source_label}->{r.target_label}": verify_recipe(r, "F") for r in transcribed_recipes()}
    counts, undecided, extra = {}, {}, {}
    for c in algebras:
        rep = classify(c)
        counts[c] = rep.class_count
        undecided[c] = rep.undecided
        extra[c] = [m.recipe.source_label for m in rep.merges if m.recipe.item == "extra"]
    ok = (len(recipes_ok) == 30 and all(recipes_ok.values())
          and all(n == 215 for n in counts.values()) and not any(undecided.values()))
    if full:
        ok &= sum(counts.values()) == 860
    return {"ok": ok, "recipes": len(recipes_ok), "recipes_verified": sum(recipes_ok.values()),
            "classes": counts, "total": sum(counts.values()), "undecided": undecided,
            "extra_merges": extra}


def check_weyl(full: bool = False) -> dict:
    L = tits("F")
    bad = []
    for sigma in collineation_group():
        try:
            f = weyl_lift(sigma, L, verify=True)
        except ValueError:
            bad.append(sigma)
            continue
        g = block_map_from_dense(f.dense(L), L)
        if g is None or g.sigma != tuple(sigma):
            bad.append(sigma)
    return {"ok": not bad, "lifted": 168 - len(bad), "failures": bad}


def check_negative_controls(full: bool = False) -> dict:
    L = tits("F")
    consts = {k: dict(v) for k, v in L.constants.items()}
    key = min(k for k in consts if L.degrees[k[0]] and L.degrees[k[1]])
    out, coef = next(iter(consts[key].items()))
    consts[key][out] = coef + 1
    bad = LiePresentation(L.algebra, L.labels, L.degrees, consts, L.kinds, decomposition=L.decomposition)
    jac = verify_jacobi(bad, "exhaustive")
    eps = [[1] * 8 for _ in range(8)]
    eps[1][2] = 0
    asym = c1_violation(ContractionMap(eps))
    w = gns_violation(GnsSet.from_pairs("12 35".split()))
    ok = (not jac.ok and jac.witness is not None) and asym is not None and w is not None
    return {"ok": ok, "jacobi_witness": jac.witness, "c1_witness": asym, "gns_witness": w}


@dataclass(frozen=True)
class Criterion:
    number: int
    claim: str
    run: Callable[[bool], dict]


CRITERIA = (
    Criterion(1, "octonion norm is multiplicative, alternativity holds, e2e5 = e1", check_composition),
    Criterion(2, "derivation dimensions 0,0,3,14 and 3,8,21,52; der(O) splits 7 x 2", check_derivations),
    Criterion(3, "T(C) has dims 52,78,133,248, is graded, satisfies Jacobi, Killing nondegenerate", check_tits),
    Criterion(4, "bracket and centralizer identities between blocks", check_bracket_identities),
    Criterion(5, "six genericity witness cases in T(F)", check_witnesses),
    Criterion(6, "245 GNS orbits, each listed set in its own orbit, 24 nice-set orbits", check_gns),
    Criterion(7, "every listed eps^T is generic with support T and T(F)_T is a Lie algebra", check_contractions),
    Criterion(8, "center, radical, Levi and series match the block formulas", check_structure),
    Criterion(9, "30 merges verified, 215 classes per algebra, no undecided pairs", check_classification),
    Criterion(10, "all 168 collineations lift to graded automorphisms of T(F)", check_weyl),
    Criterion(11, "corrupted constants, asymmetric eps and {12,35} are rejected with witnesses", check_negative_controls),
)


def run(criterion: Criterion, full: bool = False) -> CheckResult:
    t = time.perf_counter()
    detail = criterion.run(full)
    return CheckResult(criterion.number, criterion.claim, bool(detail.pop("ok")), detail, time.perf_counter() - t)


def run_all(full: bool = False, only=None) -> list[CheckResult]:
    return [run(c, full) for c in CRITERIA if only is None or c.number in only]
