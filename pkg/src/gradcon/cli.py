"""Command-line front end: ``gradcon {build,gns,contract,classify,verify,export}``.

Exit codes: 0 verified, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .tits import CACHE_ENV, build_tits, cache_path, format_constants, tits, verify_jacobi

ALGEBRAS = ("F", "K", "H", "O")
OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _algebras(sel: str) -> tuple[str, ...]:
    return ALGEBRAS if sel == "all" else (sel,)


def _dump(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_gns(spec: str):
    from .gns import parse_gns

    if spec.startswith("@"):
        spec = Path(spec[1:]).read_text()
    try:
        return parse_gns(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- commands ------------------------------------------------------------------------


def cmd_build(args) -> int:
    status = OK
    report = {}
    for c in _algebras(args.algebra):
        L = build_tits(c)
        grading = L.grading_violations()
        jac = verify_jacobi(L, args.jacobi, seed=args.seed)
        if args.out:
            target = Path(args.out)
            if target.is_dir() or len(_algebras(args.algebra)) > 1:
                target.mkdir(parents=True, exist_ok=True)
                target = target / f"tits_{c}.txt"
        else:
            target = cache_path(c) or Path(f"tits_{c}.txt")
        ok = not grading and jac.ok
        if ok:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(format_constants(L))
        else:
            status = FAILED
            print(f"T({c}): verification failed: grading violations {grading[:3]}, {jac!r}", file=sys.stderr)
        report[c] = {"dim": L.n, "file": str(target) if ok else None, "grading_ok": not grading,
                     "jacobi": {"mode": jac.mode, "ok": jac.ok, "checked": jac.checked, "witness": jac.witness}}
    _dump(report, None)
    return status


def cmd_gns(args) -> int:
    from .catalogue import listed_gns
    from .gns import canonical, enumerate_all_gns, enumerate_nice_sets, orbit_classify

    if args.nice:
        sets = enumerate_nice_sets()
        orbits = orbit_classify(sets)
        _dump({"raw_count": len(sets), "orbit_count": len(orbits),
               "orbits": [{"representative": o.representative.notation(), "size": o.size} for o in orbits]}, args.out)
        return OK if len(orbits) == 24 else FAILED
    sets = enumerate_all_gns()
    orbits = orbit_classify(sets)
    listed = listed_gns()
    label_of = {}
    duplicates = []
    for lab, T in listed:
        m = canonical(T).mask
        if m in label_of:
            duplicates.append((label_of[m], lab))
        label_of.setdefault(m, lab)
    rows = [{"representative": o.representative.notation(), "size": o.size,
             "listed_as": label_of.get(o.representative.mask)} for o in orbits]
    unlisted = [r["representative"] for r in rows if r["listed_as"] is None]
    cross = {"listed": len(listed), "distinct_orbits": len(label_of), "duplicates": duplicates,
             "unlisted_orbits": unlisted}
    _dump({"raw_count": len(sets), "orbit_count": len(orbits), "orbits": rows, "cross_check": cross}, args.out)
    ok = len(orbits) == 245 and not duplicates and not unlisted and len(listed) == 245
    if not ok:
        print(f"claim of 245 GNS orbits not reproduced: {len(orbits)} orbits, unlisted {unlisted}", file=sys.stderr)
    return OK if ok else FAILED


def _listed_label(T):
    from .catalogue import listed_gns

    for lab, U in listed_gns():
        if U == T:
            return lab
    return None


def contract_report(C: str, T) -> dict:
    from .contraction import contract_gns
    from .fano import I0
    from .structure import analyse, compare_with_expected, expected_structure, fingerprint_of

    L = contract_gns(tits(C), T)
    R = analyse(L)
    fp = fingerprint_of(R, T)
    out = {
        "algebra": C,
        "gns": T.notation(),
        "fingerprint": fp.as_dict(),
        "abelian": R.derived.dim == 0,
        "blocks": {str(g): {"dim": len(L.blocks[g]), "center": R.center.parts[g].dim,
                            "radical": R.radical.parts[g].dim, "derived": R.derived.parts[g].dim}
                   for g in I0},
    }
    lab = _listed_label(T)
    if lab is not None:
        res = compare_with_expected(R, expected_structure(L, lab))
        out["listed_as"] = lab
        out["block_formulas"] = {k: bool(v) for k, v in sorted(res.items())}
    return out


def cmd_contract(args) -> int:
    from .gns import gns_violation

    if not args.gns:
        raise UsageError("contract needs --gns")
    T = _read_gns(args.gns)
    bad = gns_violation(T)
    if bad is not None:
        print(f"{T} is not a generalised nice set: violated triple {bad}", file=sys.stderr)
        return USAGE
    reports = [contract_report(c, T) for c in _algebras(args.algebra)]
    _dump(reports[0] if len(reports) == 1 else reports, args.out)
    ok = all(all(r.get("block_formulas", {}).values()) for r in reports)
    return OK if ok else FAILED


def cmd_classify(args) -> int:
    from .isoclass import classify

    reports = [classify(c, workers=args.workers) for c in _algebras(args.algebra)]
    payload = {"algebras": [r.as_dict() for r in reports],
               "total_classes": sum(r.class_count for r in reports)}
    _dump(payload, args.out)
    ok = all(r.ok and r.class_count == 215 for r in reports)
    if not ok:
        for r in reports:
            print(f"T({r.algebra}): {r.class_count} classes, undecided {r.undecided}", file=sys.stderr)
    return OK if ok else FAILED


def cmd_verify(args) -> int:
    from .acceptance import run_all

    if args.suite != "paper":
        raise UsageError(f"unknown suite {args.suite!r}")
    results = run_all(full=args.algebra == "all")
    for r in results:
        print(r.line())
        if not r.ok:
            print("       " + json.dumps(r.detail, sort_keys=True, default=str))
    failed = [r for r in results if not r.ok]
    if failed:
        print("failed: " + "; ".join(f"{r.number}. {r.claim}" for r in failed), file=sys.stderr)
    return FAILED if failed else OK


def cmd_export(args) -> int:
    from .contraction import contract_gns

    if len(_algebras(args.algebra)) != 1:
        raise UsageError("export takes a single algebra")
    c = args.algebra
    L = tits(c)
    if args.gns:
        L = contract_gns(L, _read_gns(args.gns))
    text = format_constants(L)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


COMMANDS = {"build": cmd_build, "gns": cmd_gns, "contract": cmd_contract,
            "classify": cmd_classify, "verify": cmd_verify, "export": cmd_export}


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gradcon",
        description="Graded contractions of f4, e6, e7, e8 from the Tits construction, in exact arithmetic.",
        epilog=f"Structure constants are cached in ${CACHE_ENV} when it is set.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    algebra = dict(choices=ALGEBRAS + ("all",))

    b = sub.add_parser("build", help="build T(C), verify it and write the structure constants")
    b.add_argument("--algebra", default="F", **algebra)
    b.add_argument("--jacobi", choices=("blocked", "exhaustive", "sampled"), default="blocked")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")

    g = sub.add_parser("gns", help="enumerate generalised nice sets and their collineation orbits")
    g.add_argument("--nice", action="store_true", help="nice sets instead")
    g.add_argument("--out")

    c = sub.add_parser("contract", help="structure report for one contraction")
    c.add_argument("--algebra", default="F", **algebra)
    c.add_argument("--gns", help="pair list, named form (S7+E_124) or @file")
    c.add_argument("--out")

    k = sub.add_parser("classify", help="classify the contracted algebras up to graded isomorphism")
    k.add_argument("--algebra", default="F", **algebra)
    k.add_argument("--workers", type=int, default=1)
    k.add_argument("--out")

    v = sub.add_parser("verify", help="run the acceptance checklist")
    v.add_argument("--suite", default="paper")
    v.add_argument("--algebra", default="F", **algebra)

    e = sub.add_parser("export", help="write structure constants of T(C) or of a contraction")
    e.add_argument("--algebra", default="F", **algebra)
    e.add_argument("--gns")
    e.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"gradcon: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
