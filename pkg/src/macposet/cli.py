"""Command line interface.

Exit codes: 0 success, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .face_ring import hilbert_function, limit_check
from .hochster import algebraic_betti, hochster_check
from .io import read_poset, serialize
from .koszul import MomentAngleCohomology, betti
from .poset import PosetError, join_product, underlying_complex
from .torus import (DimensionMismatch, check_lsop_restriction, find_rational_lsop,
                    format_matrix, is_integral_lsop, is_rational_lsop, read_matrix, trc_audit)

SCHEMA = "macposet.report/1"


class InputError(Exception):
    pass


def _mdeg(a) -> str:
    return "(" + ",".join(str(2 * x) for x in a) + ")"


def _cochain_str(x) -> str:
    if not x:
        return "0"
    parts = []
    for mono, c in sorted(x.items(), key=lambda kv: (sorted(kv[0].omega), kv[0].sigma)):
        s = str(mono)
        parts.append(s if c == 1 else f"-{s}" if c == -1 else f"{c}*{s}")
    return " + ".join(parts).replace("+ -", "- ")


def _load(path: str):
    try:
        return read_poset(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except PosetError as exc:
        raise InputError(f"{path}: {type(exc).__name__}: {exc}") from None


# -- commands: each returns (result payload, human text, exit code) -----------------------


def cmd_validate(args):
    S = _load(args.poset)
    result = {"valid": True, "m": S.m, "rank": S.rank, "elements": len(S)}
    text = f"{S.name}: valid simplicial poset, {S.m} vertices, rank {S.rank}, {len(S)} elements"
    return S, result, text, 0


def cmd_info(args):
    S = _load(args.poset)
    maximal = S.maximal_elements()
    result = {
        "m": S.m, "rank": S.rank, "dimension": S.dimension, "elements": len(S),
        "f_vector": S.f_vector(), "simplicial_complex": S.is_simplicial_complex(),
        "pure": S.is_pure(), "maximal": maximal,
    }
    lines = [
        f"poset       {S.name}",
        f"vertices    {S.m}",
        f"rank        {S.rank} (dimension {S.dimension})",
        f"f-vector    {' '.join(map(str, S.f_vector()))}",
        f"complex     {'yes' if result['simplicial_complex'] else 'no'}",
        f"pure        {'yes' if result['pure'] else 'no'}",
        f"maximal     {' '.join(maximal)}",
    ]
    return S, result, "\n".join(lines), 0


def cmd_hilbert(args):
    S = _load(args.poset)
    hf = hilbert_function(S, args.degree)
    result = {"degree_bound": args.degree, "by_degree": [hf.by_degree[d] for d in sorted(hf.by_degree)]}
    lines = ["deg  rank"] + [f"{d:>3}  {r}" for d, r in sorted(hf.by_degree.items())]
    if args.multigraded:
        items = sorted(hf.by_multidegree.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        result["by_multidegree"] = [{"a": list(a), "rank": r} for a, r in items]
        lines += ["", "mdeg  rank"] + [f"{_mdeg(a)}  {r}" for a, r in items]
    return S, result, "\n".join(lines), 0


def cmd_betti(args):
    S = _load(args.poset)
    data = betti(S)
    result = {"betti": data.sequence, "poincare": data.poincare_polynomial()}
    text = "betti: " + " ".join(map(str, data.sequence)) + f"\npoincare: {data.poincare_polynomial()}"
    return S, result, text, 0


def cmd_cohomology(args):
    S = _load(args.poset)
    H = MomentAngleCohomology(S)
    graded = H.graded_groups()
    result = {"graded": [{"p": p, **g.to_json()} for p, g in enumerate(graded)]}
    lines = [f"H^{p} = {g}" for p, g in enumerate(graded) if not g.is_zero()]
    if args.multigraded:
        groups = []
        lines.append("")
        for (i, a), g in H.nonzero_groups().items():
            reps = [_cochain_str(x) for _, x in H.generators(a, i)]
            groups.append({"a": list(a), "i": i, **g.to_json(), "generators": reps})
            lines.append(f"H^{{{-i},{_mdeg(a)}}} = {g}    " + ", ".join(reps))
        result["multigraded"] = groups
    return S, result, "\n".join(lines), 0


def cmd_cup_table(args):
    S = _load(args.poset)
    H = MomentAngleCohomology(S)
    gens = []
    for (i, a), g in H.nonzero_groups().items():
        if sum(a) == 0:
            continue
        for k, (c, x) in enumerate(H.generators(a, i)):
            gens.append((f"H^{{{-i},{_mdeg(a)}}}[{k}]", c, x))
    products = []
    lines = []
    for p, (n1, c1, _) in enumerate(gens):
        for n2, c2, _ in gens[p:]:
            prod = H.cup(c1, c2)
            if prod.is_zero():
                continue
            products.append({"left": n1, "right": n2, "a": list(prod.multidegree),
                             "i": prod.i, "coords": list(prod.coords)})
            lines.append(f"{n1} * {n2} = {list(prod.coords)} in H^{{{-prod.i},{_mdeg(prod.multidegree)}}}")
    result = {"generators": [{"name": n, "representative": _cochain_str(x)} for n, _, x in gens],
              "products": products}
    text = "\n".join([f"{n}: {_cochain_str(x)}" for n, _, x in gens] + [""] +
                     (lines or ["all products of positive-degree generators vanish"]))
    return S, result, text, 0


def cmd_hochster_check(args):
    S = _load(args.poset)
    H = MomentAngleCohomology(S)
    report = hochster_check(S, H)
    ab = algebraic_betti(S, H)
    entries = [{"a": list(e.multidegree), "i": e.i, "koszul": e.koszul.to_json(),
                "cellular": e.cellular.to_json(), "ok": e.ok} for e in report.entries]
    beta0_ok = ab.beta0 == ab.beta0_cellular
    passed = report.passed and beta0_ok
    result = {"passed": passed, "checked": len(entries),
              "multidegrees": len(report.multidegrees()),
              "beta0": ab.beta0, "beta0_cellular": ab.beta0_cellular,
              "failures": [e for e in entries if not e["ok"]]}
    if args.verbose:
        result["entries"] = entries
    lines = [f"{'PASS' if passed else 'FAIL'}: {len(entries)} (a, i) pairs over "
             f"{len(report.multidegrees())} multidegrees, beta^0 = {ab.beta0} "
             f"(cellular {ab.beta0_cellular})"]
    for e in (report.entries if args.verbose else report.failures()):
        lines.append(f"  {'ok  ' if e.ok else 'FAIL'} a={_mdeg(e.multidegree)} i={e.i}: "
                     f"{e.koszul} vs {e.cellular}")
    return S, result, "\n".join(lines), 0 if passed else 1


def cmd_lsop_check(args):
    S = _load(args.poset)
    try:
        lam = read_matrix(Path(args.matrix).read_text())
        rational = is_rational_lsop(S, lam)
    except OSError as exc:
        raise InputError(f"{args.matrix}: {exc.strerror}") from None
    except (ValueError, DimensionMismatch) as exc:
        raise InputError(f"{args.matrix}: {exc}") from None
    integral = is_integral_lsop(S, lam)
    restricted = check_lsop_restriction(S, lam)
    result = {"rational": rational.ok, "rational_witness": rational.witness,
              "integral": integral.ok, "integral_witness": integral.witness,
              "restriction_check": restricted, "consistent": restricted == rational.ok}
    lines = [f"rational lsop: {'yes' if rational else 'no (fails at ' + str(rational.witness) + ')'}",
             f"integral lsop: {'yes' if integral else 'no (fails at ' + str(integral.witness) + ')'}",
             f"restriction criterion agrees: {'yes' if result['consistent'] else 'NO'}"]
    code = 0 if rational.ok and result["consistent"] else 1
    return S, result, "\n".join(lines), code


def cmd_lsop_find(args):
    S = _load(args.poset)
    lam = find_rational_lsop(S, attempts=args.attempts, entry_bound=args.bound, seed=args.seed)
    if lam is None:
        return S, {"found": False}, f"no rational lsop found in {args.attempts} attempts", 1
    result = {"found": True, "matrix": lam.data, "integral": is_integral_lsop(S, lam).ok}
    return S, result, format_matrix(lam).rstrip("\n"), 0


def cmd_trc(args):
    S = _load(args.poset)
    rep = trc_audit(S)
    result = rep.to_json()
    lines = [
        f"m = {rep.m}, n = {rep.n}, mrk = {rep.mrk} ({'pure' if rep.pure else 'not pure'})",
        f"trk = {rep.trk}, hrk = {rep.hrk}, hrk(K_S) = {rep.hrk_folded}",
        f"hrk >= 2^trk = {rep.bound}: {'PASS' if rep.passes_bound else 'FAIL'}",
        f"hrk >= 2^(m-mrk) = {rep.sharp_bound}: {'PASS' if rep.passes_sharp_bound else 'FAIL'}",
        f"hrk >= hrk(K_S): {'PASS' if rep.passes_retraction else 'FAIL'}",
    ]
    return S, result, "\n".join(lines), 0 if rep.passed else 1


def cmd_fold(args):
    S = _load(args.poset)
    K, fold = underlying_complex(S)
    cover = {y: len(fold.preimage(y)) for y in K.ids if K.element_rank(y) >= 1}
    text = serialize(K)
    result = {"complex": text, "map": dict(fold.assignment), "cover_counts": cover}
    return S, result, text.rstrip("\n"), 0


def cmd_join(args):
    S1, S2 = _load(args.first), _load(args.second)
    J = join_product(S1, S2)
    text = serialize(J)
    result = {"poset": text, "m": J.m, "rank": J.rank, "elements": len(J)}
    return J, result, text.rstrip("\n"), 0


def cmd_limit_check(args):
    S = _load(args.poset)
    rep = limit_check(S, args.degree)
    bad = [{"a": list(a), "hilbert": h, "limit": lim} for a, (h, lim) in rep.entries.items() if h != lim]
    result = {"passed": rep.ok, "degree_bound": args.degree, "multidegrees": len(rep.entries),
              "mismatches": bad}
    text = (f"{'PASS' if rep.ok else 'FAIL'}: {len(rep.entries)} multidegrees up to degree {args.degree}")
    return S, result, text, 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = argparse.ArgumentParser(prog="macposet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    for name, func, help in [
        ("validate", cmd_validate, "check a poset file"),
        ("info", cmd_info, "basic combinatorial data"),
        ("betti", cmd_betti, "Betti numbers of Z_S"),
        ("cup-table", cmd_cup_table, "products of cohomology generators"),
        ("trc", cmd_trc, "toral rank conjecture audit"),
        ("fold", cmd_fold, "underlying simplicial complex and folding map"),
    ]:
        add(name, func, help).add_argument("poset")

    p = add("hilbert", cmd_hilbert, "Hilbert function of the face ring")
    p.add_argument("poset")
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--multigraded", action="store_true")

    p = add("cohomology", cmd_cohomology, "integral cohomology of Z_S")
    p.add_argument("poset")
    p.add_argument("--multigraded", action="store_true")

    p = add("hochster-check", cmd_hochster_check, "compare with the cellular side")
    p.add_argument("poset")
    p.add_argument("--verbose", "-v", action="store_true")

    p = add("lsop-check", cmd_lsop_check, "test a degree-two sequence")
    p.add_argument("poset")
    p.add_argument("--matrix", required=True)

    p = add("lsop-find", cmd_lsop_find, "random search for a rational lsop")
    p.add_argument("poset")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=1000)
    p.add_argument("--bound", type=int, default=3)

    p = add("join", cmd_join, "join of two posets")
    p.add_argument("first")
    p.add_argument("second")

    p = add("limit-check", cmd_limit_check, "compare Z[S] with the limit of polynomial rings")
    p.add_argument("poset")
    p.add_argument("--degree", type=int, default=6)
    return parser


def run_command(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    start = time.perf_counter()
    try:
        S, result, text, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        if args.json:
            print(json.dumps({"schema": SCHEMA, "command": args.command, "error": str(exc)}, indent=2),
                  file=stdout)
        return 2
    elapsed = time.perf_counter() - start
    if args.json:
        report = {"schema": SCHEMA, "command": args.command, "poset": S.name, "result": result,
                  "timing": round(elapsed, 6) if args.timing else None}
        print(json.dumps(report, indent=2), file=stdout)
    else:
        print(text, file=stdout)
        if args.timing:
            print(f"({elapsed:.3f} s)", file=stdout)
    return code


def main() -> None:
    sys.exit(run_command())
