"""Command-line driver: membership tests, elimination pipelines and polytope conversions.

Every command prints a short human-readable report and, with ``--out``,
writes a JSON ``RunReport``. Exit status is 0 for ``pass``, ``member`` and
``boundary`` (``boundary`` fails under ``--strict-member``), 1 for ``fail``
and ``nonmember``, and 2 for malformed input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import chordal, fme, polytope
from .corsets import (BehaviorTable, Correlation, cor2m_member, cor33_feasibility,
                      correlators_from_behavior, sample_quantum, to_angles)
from .errors import EmptyPolytope, QcorrError, Unbounded
from .fme.linsys import LinIneq
from .fme.named import AUX, angle_vars

PASS, FAIL = "pass", "fail"
OK_STATUSES = {PASS, "member", "boundary"}


@dataclass
class RunReport:
    command: str
    status: str
    details: dict = field(default_factory=dict)
    timing: float | None = None
    text: list = field(default_factory=list, repr=False)

    def to_json(self):
        data = asdict(self)
        data.pop("text")
        if data["timing"] is None:
            data.pop("timing")
        return data


class InputError(Exception):
    """Input file missing, unparsable, or of the wrong shape."""


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_correlation(path):
    data = _load(path)
    try:
        if "p" in data:
            fc = correlators_from_behavior(BehaviorTable.from_json(data))
            return Correlation(fc.c)
        return Correlation.from_json(data)
    except (KeyError, TypeError, ValueError, QcorrError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_polytope(path):
    data = _load(path)
    try:
        if "vertices" in data:
            return polytope.VPolytope.from_json(data)
        return polytope.HPolytope.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_graph(path):
    try:
        return chordal.Graph.from_json(_load(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


# ---- member ---------------------------------------------------------------

def _member_cor2m(C, args):
    res = cor2m_member(C, tol=1e-9)
    status = "member" if res.member else "nonmember"
    text = [f"cor2m: {status}"]
    text += [f"  violated  {t}  (slack {s:.6g})" for t, s in res.violated]
    text += [f"  saturated {t}" for t, _ in res.saturated]
    return RunReport("member", status, {
        "scenario": "cor2m",
        "violated": [{"inequality": t, "slack": s} for t, s in res.violated],
        "saturated": [t for t, _ in res.saturated],
    }, text=text)


def _member_cor33(C, args):
    if C.c.shape != (3, 3):
        raise InputError("cor33 scenario needs a 3x3 correlation")
    res = cor33_feasibility(C, tol=args.tol, seed=args.seed)
    details = {"scenario": "cor33", "margin": res.margin, "point": list(res.point)}
    text = [f"cor33: {res.status}  margin {res.margin:.3e}"]
    if res.witness is not None:
        details["witness"] = res.witness.to_json()
        w = res.witness
        text.append(f"  witness alpha={w.alpha:.9f} beta={w.beta:.9f} gamma={w.gamma:.9f}")
    return RunReport("member", res.status, details, text=text)


def _member_cut(C, args):
    G = chordal.complete_bipartite(C.n, C.m)
    H = polytope.v_to_h(polytope.cut_polytope_vertices(G))
    point = (to_angles(C).radians / math.pi).ravel()
    names = angle_vars(C.n, C.m)
    violated = []
    for a, b in H.all_inequalities():
        slack = float(b) - float(np.dot([float(v) for v in a], point))
        if slack < -args.tol:
            facet = LinIneq.make(dict(zip(names, a)), b)
            violated.append({"facet": str(facet), "slack": slack})
    status = "nonmember" if violated else "member"
    text = [f"cut-relax: {status}  ({len(H.ineqs)} facets checked)"]
    text += [f"  violated {v['facet']}  (slack {v['slack']:.6g})" for v in violated]
    return RunReport("member", status, {"scenario": "cut-relax", "facets": len(H.ineqs),
                                        "violated": violated}, text=text)


def cmd_member(args):
    C = _load_correlation(args.input)
    if args.scenario == "cor2m":
        if C.n != 2:
            raise InputError("cor2m scenario needs n = 2")
        return _member_cor2m(C, args)
    if args.scenario == "cor33":
        return _member_cor33(C, args)
    return _member_cut(C, args)


# ---- derive ---------------------------------------------------------------

def cmd_derive(args):
    if args.name == "lemma2":
        chain = fme.eliminate_all(fme.build_named_system("cor33_angles"), AUX)
        reduced = fme.remove_redundant(chain[-1])
        target = fme.build_named_system("lemma2")
        ok = fme.equivalent(reduced, target)
        sizes = [len(S.ineqs) for S in chain]
        text = [f"eliminated {', '.join(AUX)}: sizes {sizes}, {len(reduced.ineqs)} after redundancy removal",
                f"equivalent to the named lemma2 system: {ok}"]
        return RunReport("derive", PASS if ok else FAIL, {
            "name": "lemma2", "chain_sizes": sizes, "equivalent": ok, "system": reduced.to_json()},
            text=text)
    if args.name == "lemma4":
        P1 = polytope.HPolytope.from_system(fme.build_named_system("lemma2"))
        P2 = polytope.HPolytope.from_system(fme.build_named_system("tlm_full"))
        V1, V2 = polytope.h_to_v(P1), polytope.h_to_v(P2)
        ok = V1.vertices == V2.vertices
        text = [f"lemma2 polytope: {len(V1)} vertices; tlm_full polytope: {len(V2)} vertices",
                f"vertex sets equal: {ok}"]
        return RunReport("derive", PASS if ok else FAIL, {
            "name": "lemma4", "vertex_counts": [len(V1), len(V2)], "equal": ok}, text=text)
    S = fme.build_named_system("cor2m", args.m)
    text = [f"cor2m(m={args.m}): {len(S.ineqs)} inequalities"] + [f"  {q}" for q in S.ineqs]
    return RunReport("derive", PASS, {"name": "cor2m", "m": args.m, "system": S.to_json()}, text=text)


# ---- polytope -------------------------------------------------------------

def _write_json(path, data):
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_polytope(args):
    sub = args.sub
    if sub == "vertices":
        P = _load_polytope(args.input)
        V = polytope.to_vpolytope(P)
        return RunReport("polytope vertices", PASS, {"count": len(V), "polytope": V.to_json()},
                         text=[f"{len(V)} vertices"])
    if sub == "facets":
        P = _load_polytope(args.input)
        V = P if isinstance(P, polytope.VPolytope) else polytope.h_to_v(P)
        H = polytope.v_to_h(V)
        return RunReport("polytope facets", PASS,
                         {"count": len(H.ineqs), "equations": len(H.equations), "polytope": H.to_json()},
                         text=[f"{len(H.ineqs)} facets, {len(H.equations)} equations"])
    if sub == "compare":
        A, B = _load_polytope(args.first), _load_polytope(args.second)
        if A.dim != B.dim:
            raise InputError(f"dimension mismatch: {A.dim} vs {B.dim}")
        ok = polytope.polytopes_equal(A, B)
        return RunReport("polytope compare", PASS if ok else FAIL, {"equal": ok},
                         text=["equal" if ok else "unequal"])
    G = _load_graph(args.graph)
    if sub == "cut":
        V = polytope.cut_polytope_vertices(G, args.variant)
        details = {"variant": args.variant, "edges": list(polytope.edge_names(G)),
                   "vertices": len(V), "polytope": V.to_json()}
        text = [f"cut polytope ({args.variant}): {len(V)} vertices in dimension {V.dim}"]
        if args.facets:
            H = polytope.v_to_h(V)
            H = polytope.HPolytope(H.dim, H.ineqs, H.equations, polytope.edge_names(G))
            details["facets"] = H.to_json()
            text.append(f"{len(H.ineqs)} facets")
        return RunReport("polytope cut", PASS, details, text=text)
    H = polytope.metric_polytope_h(G)
    return RunReport("polytope metric", PASS, {"inequalities": len(H.ineqs), "polytope": H.to_json()},
                     text=[f"metric polytope: {len(H.ineqs)} inequalities"])


# ---- sample ---------------------------------------------------------------

def cmd_sample(args):
    C = sample_quantum(args.n, args.m, args.dim, args.seed)
    return RunReport("sample", PASS, {"correlation": C.to_json()},
                     text=[json.dumps(C.to_json())])


# ---- driver ---------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-7, help="numerical tolerance (default 1e-7)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--no-timing", action="store_true", help="omit timing from the JSON report")
    common.add_argument("--strict-member", action="store_true",
                        help="treat a boundary verdict as failure")

    ap = argparse.ArgumentParser(prog="qcorr", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("member", parents=[common], help="membership of a correlation")
    p.add_argument("input", help="correlation or behavior JSON")
    p.add_argument("--scenario", choices=["cor2m", "cor33", "cut-relax"], required=True)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("derive", parents=[common], help="elimination and equivalence pipelines")
    p.add_argument("name", choices=["lemma2", "lemma4", "cor2m"])
    p.add_argument("--m", type=int, default=2, help="Bob settings for cor2m")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("polytope", help="polytope conversions")
    psub = p.add_subparsers(dest="sub", required=True)
    q = psub.add_parser("vertices", parents=[common])
    q.add_argument("input")
    q = psub.add_parser("facets", parents=[common])
    q.add_argument("input")
    q = psub.add_parser("compare", parents=[common])
    q.add_argument("first")
    q.add_argument("second")
    q = psub.add_parser("cut", parents=[common])
    q.add_argument("--graph", required=True)
    q.add_argument("--facets", action="store_true")
    q.add_argument("--variant", choices=[polytope.ZERO_ONE, polytope.PLUS_MINUS_ONE],
                   default=polytope.ZERO_ONE)
    q = psub.add_parser("metric", parents=[common])
    q.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("sample", parents=[common], help="random quantum correlation")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--dim", type=int, default=6)
    p.set_defaults(func=cmd_sample)
    return ap


def exit_code(status, strict=False):
    if status == "boundary" and strict:
        return 1
    return 0 if status in OK_STATUSES else 1


def main(argv=None):
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (Unbounded, EmptyPolytope) as exc:
        report = RunReport(args.command, FAIL, {"error": type(exc).__name__, "message": str(exc)},
                           text=[f"{type(exc).__name__}: {exc}"])
    except QcorrError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if not args.no_timing:
        report.timing = round(time.perf_counter() - start, 6)
    print(f"[{report.command}] status: {report.status}")
    for line in report.text:
        print(line)
    if args.out:
        _write_json(args.out, report.to_json())
    return exit_code(report.status, args.strict_member)


if __name__ == "__main__":
    sys.exit(main())
