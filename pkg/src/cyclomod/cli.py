"""Command-line entry point: dimension tables, orbit censuses, and the
named verification suite, with machine-readable JSON-line reports.

Exit code 0 iff every requested check passes.  The orbit database cache
directory can be overridden with the CYCLOMOD_CACHE_DIR environment
variable.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .exact_linalg import BudgetExceeded, SparseMatrix


class UnknownCheck(ValueError):
    pass


class UnknownSpace(ValueError):
    pass


DESK_CAPS = {2: 13, 3: 5, 4: 3}
DESK_MAX_COEF = 4


def _budget_guard(budget, m=None, N=None, w=None):
    if budget != "desk":
        return
    if m is not None and m > 4:
        raise BudgetExceeded("desk budget: m <= 4")
    if m is not None and N is not None and m >= 2 and N > DESK_CAPS.get(m, 13):
        raise BudgetExceeded(f"desk budget: N <= {DESK_CAPS[m]} for m = {m}")
    if m is not None and w is not None and w - m > DESK_MAX_COEF:
        raise BudgetExceeded("desk budget: w - m <= 4")


# ---------------------------------------------------------------------------
# the check registry


def check_d2zero(params):
    from .modular import coinvariant_complex, extended_coinvariant_complex
    from .voronoi import build_voronoi_coinvariants

    results = []
    for m in (2, 3, 4):
        N = min(3, DESK_CAPS[m])
        spaces, diffs = coinvariant_complex(m, N, m)
        for k in range(1, m - 1):
            results.append(diffs[k + 1].matmul(diffs[k]).is_zero())
        ec = extended_coinvariant_complex(m, 2, m) if m == 2 else None
        if ec is not None:
            for n in range(1, 2 * m - 2):
                z = ec.total_differential(n + 1).matmul(ec.total_differential(n))
                results.append(z.is_zero())
        vc = build_voronoi_coinvariants(m, min(2, N), 0, 0)
        results.append(vc.check_d_squared())
    return all(results), True, all(results)


def check_cojacobi(params):
    from .dihedral import cojacobi_holds

    insts = []
    for N in (1, 5, 7):
        for m in (1, 2, 3):
            for w in range(m, 5):
                insts.append((w, m, N))
    bad = [i for i in insts if not cojacobi_holds(*i)]
    return not bad, [], bad


def check_dihedral_span(params):
    from .dihedral import dihedral_symmetries_in_span

    insts = [(2, 2, 5), (3, 2, 5), (3, 3, 5), (4, 3, 5), (4, 4, 2), (4, 4, 3)]
    bad = [i for i in insts if not dihedral_symmetries_in_span(*i)]
    return not bad, [], bad


def check_tree_counts(params):
    from .trees_forests import enumerate_plane_trivalent_trees

    computed = [len(enumerate_plane_trivalent_trees(m)) for m in (2, 3, 4, 5)]
    expected = [1, 2, 5, 11]
    return computed == expected, expected, computed


def check_tree_boundary(params):
    from .trees_forests import tree_chain_boundary_check

    results = {}
    for m in (2, 3, 4, 5):
        basis = [tuple(int(i == j) for i in range(m)) for j in range(m)]
        results[m] = tree_chain_boundary_check(basis)
    return all(results.values()), True, results


def check_gkap_exact(params):
    from .trees_forests import tree_complex_exactness

    results = {m: tree_complex_exactness(m) for m in (3, 4, 5)}
    return all(results.values()), True, results


def check_orbit_census(params):
    from .voronoi import classify_cells

    computed = {
        2: classify_cells(2).interior_counts(),
        3: classify_cells(3).interior_counts(),
        4: classify_cells(4).interior_counts(),
    }
    expected = {
        2: {1: 1, 2: 1},
        3: {2: 1, 3: 2, 4: 1, 5: 1},
        4: {3: 1, 4: 3, 5: 4, 6: 4, 7: 2},
    }
    return computed == expected, expected, computed


def check_chain_map(params):
    from .comparison import verify_chain_map

    results = {m: verify_chain_map(m) for m in (2, 3, 4)}
    return all(results.values()), True, results


def check_gl3_boundary(params):
    from .comparison import gl3_second_shuffle_is_boundary

    ok = gl3_second_shuffle_is_boundary()
    control = gl3_second_shuffle_is_boundary(perturb_sign=True)
    return ok and not control, True, {"identity": ok, "perturbed": control}


def check_gl4_boundary(params):
    from .comparison import gl4_shuffle_boundary_identity

    ok = gl4_shuffle_boundary_identity()
    return ok, True, ok


def check_sus1(params):
    from .comparison import sus1_check

    ok, repair = sus1_check()
    return ok, True, {"holds": ok, "sign_convention": repair}


def check_lemma4more(params):
    from .comparison import lemma_4more_identity

    ok = lemma_4more_identity()
    return ok, True, ok


def check_appendix_rank(params):
    from .comparison import appendix_matrix, appendix_matrix_matches, p6_dimension

    pairs, rows = appendix_matrix()
    ok = appendix_matrix_matches(pairs, rows)
    p6 = p6_dimension()
    return ok and p6 == 6, {"match_rank": True, "p6": 6}, {"match_rank": ok, "p6": p6}


def check_eta_chainmap(params):
    from .dihedral import eta_map

    insts = [(2, 2, 5), (2, 3, 5), (2, 4, 11), (3, 3, 5), (3, 4, 2), (3, 3, 1)]
    details = {}
    for m, w, N in insts:
        _, _, _, chain_ok, surj = eta_map(m, w, N)
        details[str((m, w, N))] = {"chain": chain_ok, "surjective": all(surj.values())}
    ok = all(d["chain"] and d["surjective"] for d in details.values())
    return ok, True, details


def check_eta_iso(params):
    from .dihedral import eta_iso_defect

    insts = [(2, 2, 5), (2, 2, 7), (2, 2, 11), (2, 2, 13), (3, 3, 5)]
    insts += [(m, w, 1) for m in (1, 2, 3) for w in range(m, 7)]
    details = {}
    ok = True
    for m, w, N in insts:
        s, t, r = eta_iso_defect(m, w, N)
        good = s == t == r
        ok = ok and good
        details[str((m, w, N))] = (s, t, r)
    return ok, True, details


def check_mtthha(params):
    from .comparison import mtthha_crosscheck

    budget = params.get("budget", "desk")
    details = {}
    ok = True
    insts = []
    for N in range(1, 14):
        for k in range(0, 5):
            insts.append((2, N, k, None))
    for N in range(1, 6):
        for k in range(0, 3):
            insts.append((3, N, k, None))
    for N in (1, 2, 3):
        insts.append((4, N, 0, [False, True, True, True]))
    if budget == "quick":
        insts = [
            (2, 5, 0, None),
            (2, 11, 1, None),
            (3, 2, 1, None),
            (3, 5, 0, None),
            (4, 2, 0, [False, True, True, True]),
        ]
    for m, N, k, expected_agree in insts:
        mod, vor, agree = mtthha_crosscheck(m, N, k)
        key = f"m={m} N={N} k={k}"
        details[key] = {"modular": mod, "voronoi": vor, "agree": agree}
        if expected_agree is None:
            good = all(agree)
        else:
            # the degree-1 spot of GL_4 carries the known extra classes on
            # the Voronoi side; the paper itself only claims a quotient there
            good = agree == expected_agree or all(agree)
        ok = ok and good
    return ok, "dimension equality (GL4 degree-1 spot: quotient)", details


def check_cusp_formula(params):
    from .modular import cusp_h2_dimension

    ps = params.get("p")
    ps = [ps] if ps else [5, 7, 11, 13]
    expected = {p: 1 + (p * p - 1) // 24 - (p - 1) // 2 for p in ps}
    computed = {p: cusp_h2_dimension(p) for p in ps}
    return computed == expected, expected, computed


def check_gamma_cokernel(params):
    from .dihedral import unramified_cokernel
    from .modular import cusp_h2_dimension

    p = params.get("p", 11)
    coker = unramified_cokernel(2, p)
    h2 = cusp_h2_dimension(p)
    return coker == h2, h2, coker


CHECKS = {
    "d2zero": check_d2zero,
    "cojacobi": check_cojacobi,
    "dihedral_span": check_dihedral_span,
    "tree_counts": check_tree_counts,
    "tree_boundary": check_tree_boundary,
    "gkap_exact": check_gkap_exact,
    "orbit_census": check_orbit_census,
    "chain_map": check_chain_map,
    "gl3_boundary": check_gl3_boundary,
    "gl4_boundary": check_gl4_boundary,
    "sus1": check_sus1,
    "lemma4more": check_lemma4more,
    "appendix_rank": check_appendix_rank,
    "eta_chainmap": check_eta_chainmap,
    "eta_iso": check_eta_iso,
    "mtthha_crosscheck": check_mtthha,
    "cusp_formula": check_cusp_formula,
    "gamma_cokernel": check_gamma_cokernel,
}


def run_check(name, params):
    if name not in CHECKS:
        raise UnknownCheck(f"unknown check {name!r}; known: {sorted(CHECKS)}")
    t0 = time.time()
    passed, expected, computed = CHECKS[name](params)
    return {
        "check": name,
        "params": params,
        "pass": bool(passed),
        "expected": expected,
        "computed": computed,
        "seconds": round(time.time() - t0, 3),
    }


# ---------------------------------------------------------------------------
# dimension tables


def cmd_dims(args):
    params = {k: v for k, v in (("m", args.m), ("w", args.w), ("N", args.N)) if v}
    t0 = time.time()
    if args.space == "dihedral":
        from .dihedral import dihedral_space

        m = args.m or 1
        w = args.w or m
        N = args.N or 1
        _budget_guard(args.budget, m, N, w)
        out = {"space": "D", "w": w, "m": m, "N": N, "dim": dihedral_space(w, m, N).dim()}
    elif args.space == "modular":
        from .modular import coinvariant_complex

        m = args.m or 2
        w = args.w or m
        N = args.N or 1
        _budget_guard(args.budget, m, N, w)
        spaces, _ = coinvariant_complex(m, N, w)
        out = {
            "space": "modular",
            "m": m,
            "w": w,
            "N": N,
            "dims": [spaces[k].dim() for k in sorted(spaces)],
        }
    elif args.space == "voronoi":
        from .voronoi import build_voronoi_coinvariants, classify_cells

        m = args.m or 3
        if args.N:
            _budget_guard(args.budget, m, args.N)
            vc = build_voronoi_coinvariants(m, args.N, 0, 0)
            out = {
                "space": "voronoi",
                "m": m,
                "N": args.N,
                "dims": {d: vc.spaces[d].dim() for d in vc.dims},
            }
        else:
            out = {
                "space": "voronoi",
                "m": m,
                "interior_orbits": classify_cells(m).interior_counts(),
            }
    elif args.space == "diagonal":
        from .dihedral import diagonal_cohomology

        m = args.m or 2
        N = args.N or 5
        _budget_guard(args.budget, m, N)
        out = {"cohomology": "diagonal", "m": m, "p": N, "dims": diagonal_cohomology(m, N)}
    else:
        raise UnknownSpace(args.space)
    out["seconds"] = round(time.time() - t0, 3)
    print(json.dumps(out, sort_keys=True, default=str))
    return 0


# ---------------------------------------------------------------------------
# matrix export


def _matrix_by_id(matrix_id: str) -> SparseMatrix:
    if matrix_id == "zero":
        return SparseMatrix.zero(0, 0)
    if matrix_id == "appendix":
        from fractions import Fraction

        from .comparison import appendix_matrix

        _, rows = appendix_matrix()
        return SparseMatrix(
            len(rows),
            6,
            {
                (i, j): Fraction(v)
                for i, row in enumerate(rows)
                for j, v in enumerate(row)
                if v
            },
        )
    if matrix_id.startswith("dihedral_relations:"):
        from .dihedral import dihedral_relation_matrix

        w, m, N = map(int, matrix_id.split(":", 1)[1].split(","))
        return dihedral_relation_matrix(w, m, N)
    raise KeyError(f"unknown matrix id {matrix_id!r}")


def cmd_export(args):
    M = _matrix_by_id(args.matrix_id)
    text = M.to_text()
    if args.path == "-":
        sys.stdout.write(text)
    else:
        with open(args.path, "w") as fh:
            fh.write(text)
    return 0


def cmd_verify(args):
    params = {}
    if args.p:
        params["p"] = args.p
    if args.m:
        params["m"] = args.m
    if args.N:
        params["N"] = args.N
    if args.w:
        params["w"] = args.w
    params["budget"] = args.budget
    names = sorted(CHECKS) if args.all else [args.check]
    if not args.all and args.check is None:
        print("error: give --check NAME or --all", file=sys.stderr)
        return 2
    failed = 0
    for name in names:
        try:
            report = run_check(name, params)
        except UnknownCheck as exc:
            print(str(exc), file=sys.stderr)
            return 2
        print(json.dumps(report, sort_keys=True, default=str))
        if not report["pass"]:
            failed += 1
    return 1 if failed else 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="cyclomod",
        description=(
            "Exact dimension tables and verification checks for modular "
            "complexes, dihedral coalgebras and Voronoi complexes.  The "
            "orbit cache directory is controlled by CYCLOMOD_CACHE_DIR."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)
    dims = sub.add_parser("dims", help="dimension tables")
    dims.add_argument("space", choices=["modular", "dihedral", "voronoi", "diagonal"])
    dims.add_argument("--m", type=int)
    dims.add_argument("--w", type=int)
    dims.add_argument("--N", type=int)
    dims.add_argument("--budget", choices=["desk", "extended"], default="desk")
    dims.set_defaults(func=cmd_dims)
    ver = sub.add_parser("verify", help="run named checks")
    ver.add_argument("--check", choices=sorted(CHECKS))
    ver.add_argument("--all", action="store_true")
    ver.add_argument("--m", type=int)
    ver.add_argument("--w", type=int)
    ver.add_argument("--N", type=int)
    ver.add_argument("--p", type=int)
    ver.add_argument("--json", action="store_true", help="reports are always JSON lines")
    ver.add_argument("--budget", choices=["desk", "extended", "quick"], default="desk")
    ver.set_defaults(func=cmd_verify)
    exp = sub.add_parser("export", help="export a cached matrix in sparse text form")
    exp.add_argument("matrix_id")
    exp.add_argument("path")
    exp.set_defaults(func=cmd_export)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget", "detail": str(exc)}))
        return 3


if __name__ == "__main__":
    sys.exit(main())
