"""Command-line front end.

Instances travel as JSON with rationals encoded as strings like "-7/2", so
exactness survives serialization; the distance table is lower-triangular,
making asymmetric input unrepresentable.  Every subcommand prints JSON to
stdout (or --out) and logs to stderr.  Exit codes: 0 success or property
holds, 1 property fails, 2 usage or parse error.

The environment variable ULTRAGREEDY_CAP (an integer) overrides the default
enumeration limits: the validate point cap (64), the greedoid ground cap
(16), and the tie-enumeration sequence cap (10**6).  A --cap flag on the
relevant subcommands overrides both.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Sequence

from .bhargava import check_equivalence, is_pm_ordering, pm_ordering
from .constructions import (
    WeightedTree,
    constant_triple,
    mod_triple,
    padic_log_triple,
    padic_triple,
    rseq_triple,
    tree_triple,
)
from .core import FullUltraTriple, UltraTriple, perimeter_tuple, rational, validate
from .greedoid import (
    SetSystem,
    bhargava_greedoid,
    check_axiom_i,
    check_axiom_ii,
    check_axiom_iii,
    check_axiom_iv,
    check_matroid_bases,
    level_sets,
    points_from_mask,
)
from .greedy import GreedyTrace, all_greedy_permutations, greedy_permutation, greedy_subsequence, nu, nu_bar
from .oracle import random_ultra_triple

ENV_CAP = "ULTRAGREEDY_CAP"


class InputError(Exception):
    """Anything wrong with arguments or input files; maps to exit code 2."""


def _env_cap(fallback: int) -> int:
    raw = os.environ.get(ENV_CAP)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{ENV_CAP} must be an integer, got {raw!r}") from None


def _cap(args: argparse.Namespace, fallback: int) -> int:
    if getattr(args, "cap", None) is not None:
        return args.cap
    return _env_cap(fallback)


_RATIONAL_FORM = re.compile(r"-?\d+(/-?\d+)?")


def _rational(text: str | int, what: str) -> Fraction:
    # File format carries "p/q" or integer strings only; no decimals or exponents.
    if isinstance(text, str) and not _RATIONAL_FORM.fullmatch(text.strip()):
        raise InputError(f"bad rational in {what}: {text!r} is not p/q or integer")
    try:
        return rational(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational in {what}: {exc}") from None


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in str(text).split(",") if part.strip() != ""]
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None


def _rational_list(text: str, what: str) -> list[Fraction]:
    return [_rational(part, what) for part in str(text).split(",") if part.strip() != ""]


def read_instance(path: str) -> UltraTriple:
    try:
        with open(path) as f:
            doc = json.load(f)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    try:
        labels = tuple(str(x) for x in doc["points"])
        weights = tuple(_rational(x, "weights") for x in doc["weights"])
        dist = tuple(tuple(_rational(x, "distances") for x in row) for row in doc["distances"])
        if "selfdist" in doc:
            selfdist = tuple(_rational(x, "selfdist") for x in doc["selfdist"])
            return FullUltraTriple(labels, weights, dist, selfdist)
        return UltraTriple(labels, weights, dist)
    except KeyError as exc:
        raise InputError(f"{path}: missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def instance_document(t: UltraTriple) -> dict:
    doc: dict = {
        "points": list(t.labels),
        "weights": [str(w) for w in t.weights],
        "distances": [[str(x) for x in row] for row in t.dist],
    }
    if isinstance(t, FullUltraTriple):
        doc["selfdist"] = [str(x) for x in t.selfdist]
    return doc


def read_set_system(path: str) -> SetSystem:
    try:
        with open(path) as f:
            doc = json.load(f)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    try:
        return SetSystem.from_point_sets(int(doc["ground"]), doc["sets"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad set system: {exc}") from None


def _resolve_subset(t: UltraTriple, arg: str | None) -> list[int]:
    if arg is None:
        return list(t.points())
    out = []
    for part in str(arg).split(","):
        part = part.strip()
        if part == "":
            continue
        try:
            out.append(t.index_of(part))
        except KeyError:
            raise InputError(f"unknown point label {part!r}") from None
    return out


def _emit(text: str, out: str | None) -> None:
    if out is None:
        print(text)
    else:
        with open(out, "w") as f:
            f.write(text + "\n")
        print(f"wrote {out}", file=sys.stderr)


def _trace_document(t: UltraTriple, trace: GreedyTrace) -> dict:
    return {
        "points": [t.labels[a] for a in trace.points],
        "increments": [str(x) for x in trace.increments],
        "prefix_perimeters": [str(x) for x in trace.prefix_perimeters()],
    }


def _trace_from_points(t: UltraTriple, seq: Sequence[int], mode: str) -> GreedyTrace:
    # increments recovered from raw perimeter differences of the prefixes
    increments = []
    prev = Fraction(0)
    for i in range(1, len(seq) + 1):
        cur = perimeter_tuple(t, seq[:i])
        increments.append(cur - prev)
        prev = cur
    return GreedyTrace(tuple(seq), tuple(increments), mode)


def cmd_validate(args: argparse.Namespace) -> int:
    t = read_instance(args.instance)
    cap = _cap(args, 64)
    if t.n > cap:
        raise InputError(f"{t.n} points exceed the validate cap {cap}")
    report = validate(t)
    doc = {
        "ok": report.ok,
        "violations": [
            {
                "points": [t.labels[a] for a in v.points],
                "lhs": str(v.lhs),
                "rhs": str(v.rhs),
            }
            for v in report.violations
        ],
    }
    _emit(json.dumps(doc, indent=2), args.out)
    return 0 if report.ok else 1


def cmd_greedy(args: argparse.Namespace) -> int:
    t = read_instance(args.instance)
    pts = _resolve_subset(t, args.subset)
    m = len(pts) if args.m is None else args.m
    if args.mode == "subseq":
        if not isinstance(t, FullUltraTriple):
            raise InputError("subsequence mode needs a full triple (selfdist field)")
        if args.ties == "all":
            raise InputError("--ties all supports permutation mode only")
        try:
            traces = [greedy_subsequence(t, pts, m)]
        except ValueError as exc:
            raise InputError(str(exc)) from None
        mode = "subsequence"
    else:
        try:
            if args.ties == "all":
                cap = _cap(args, 10**6)
                seqs = all_greedy_permutations(t, pts, m, cap=cap)
                traces = [_trace_from_points(t, seq, "permutation") for seq in seqs]
            else:
                traces = [greedy_permutation(t, pts, m)]
        except ValueError as exc:
            raise InputError(str(exc)) from None
        mode = "permutation"
    doc = {"mode": mode, "traces": [_trace_document(t, tr) for tr in traces]}
    _emit(json.dumps(doc, indent=2), args.out)
    return 0


def cmd_nu(args: argparse.Namespace) -> int:
    t = read_instance(args.instance)
    pts = _resolve_subset(t, args.subset)
    try:
        if args.mode == "subseq":
            if not isinstance(t, FullUltraTriple):
                raise InputError("subsequence mode needs a full triple (selfdist field)")
            value = nu(t, pts, args.k)
        else:
            value = nu_bar(t, pts, args.k)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(json.dumps(str(value)), args.out)
    return 0


def _axiom_documents(s: SetSystem) -> tuple[list[dict], bool]:
    reports = [check_axiom_i(s), check_axiom_ii(s), check_axiom_iii(s), check_axiom_iv(s)]
    docs = [{"axiom": r.axiom, "holds": r.holds, "witness": r.witness} for r in reports]
    return docs, all(r.holds for r in reports)


def _matroid_documents(s: SetSystem) -> tuple[list[dict], bool]:
    cards = sorted({m.bit_count() for m in s.sets})
    docs = []
    ok = True
    for k in cards:
        report = check_matroid_bases(level_sets(s, k))
        docs.append({"k": k, "holds": report.holds, "witness": report.witness})
        ok = ok and report.holds
    return docs, ok


def cmd_greedoid(args: argparse.Namespace) -> int:
    if (args.instance is None) == (args.system is None):
        raise InputError("give exactly one of an instance file or --system")
    labels = None
    if args.system is not None:
        s = read_set_system(args.system)
    else:
        t = read_instance(args.instance)
        cap = _cap(args, 16)
        try:
            s = bhargava_greedoid(t, cap=cap)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        labels = list(t.labels)
    if args.emit == "sets":
        levels = []
        for k in sorted({m.bit_count() for m in s.sets}):
            members = [list(points_from_mask(m)) for m in level_sets(s, k).members()]
            levels.append({"k": k, "sets": members})
        doc: dict = {"ground": s.ground, "levels": levels}
        if labels is not None:
            doc["labels"] = labels
        _emit(json.dumps(doc, indent=2), args.out)
        return 0
    axiom_docs, axioms_ok = _axiom_documents(s)
    matroid_docs, matroid_ok = _matroid_documents(s)
    doc = {"axioms": axiom_docs, "matroid": matroid_docs, "all_hold": axioms_ok and matroid_ok}
    _emit(json.dumps(doc, indent=2), args.out)
    return 0 if axioms_ok and matroid_ok else 1


def cmd_generate(args: argparse.Namespace) -> int:
    family = args.family
    weights = None
    if args.weights is not None:
        weights = _rational_list(args.weights, "--weights")
    try:
        if family == "constant":
            if args.n is None:
                raise InputError("--family constant needs --n")
            t = constant_triple(args.n, weights)
        elif family == "mod":
            if args.points is None or args.m is None or args.eps is None or args.alpha is None:
                raise InputError("--family mod needs --points, --m, --eps, --alpha")
            t = mod_triple(
                _int_list(args.points, "--points"),
                args.m,
                _rational(args.eps, "--eps"),
                _rational(args.alpha, "--alpha"),
                weights,
            )
        elif family in ("padic", "padic-log"):
            if args.points is None or args.p is None:
                raise InputError(f"--family {family} needs --points and --p")
            build = padic_triple if family == "padic" else padic_log_triple
            t = build(_int_list(args.points, "--points"), args.p, weights)
        elif family == "rseq":
            if args.points is None or args.r is None or args.c is None:
                raise InputError("--family rseq needs --points, --r, --c")
            t = rseq_triple(
                _int_list(args.points, "--points"),
                _int_list(args.r, "--r"),
                _rational_list(args.c, "--c"),
                weights,
            )
        else:  # random
            if args.n is None:
                raise InputError("--family random needs --n")
            t = random_ultra_triple(args.seed, args.n, args.depth)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None
    _emit(json.dumps(instance_document(t), indent=2), args.out)
    return 0


def parse_tree_file(path: str) -> WeightedTree:
    try:
        with open(path) as f:
            lines = f.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    edges: list[tuple[str, str, Fraction]] = []
    root = None
    leaves: tuple[str, ...] | None = None
    vertices: list[str] = []

    def note(v: str) -> None:
        if v not in vertices:
            vertices.append(v)

    for lineno, line in enumerate(lines, start=1):
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "root":
            if len(parts) != 2:
                raise InputError(f"{path}:{lineno}: root line needs exactly one vertex")
            root = parts[1]
            note(root)
        elif parts[0] == "leaves":
            if len(parts) != 2:
                raise InputError(f"{path}:{lineno}: leaves line needs a comma-separated list")
            leaves = tuple(x for x in parts[1].split(",") if x != "")
            for v in leaves:
                note(v)
        elif len(parts) == 3:
            u, v, raw = parts
            note(u)
            note(v)
            edges.append((u, v, _rational(raw, f"{path}:{lineno}")))
        else:
            raise InputError(f"{path}:{lineno}: expected 'u v weight', 'root r', or 'leaves ...'")
    if root is None:
        raise InputError(f"{path}: missing 'root' directive")
    try:
        return WeightedTree(tuple(vertices), tuple(edges), root, leaves)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_tree(args: argparse.Namespace) -> int:
    tree = parse_tree_file(args.tree)
    try:
        t = tree_triple(tree)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None
    _emit(json.dumps(instance_document(t), indent=2), args.out)
    return 0


def cmd_pordering(args: argparse.Namespace) -> int:
    points = _int_list(args.points, "--points")
    if not points:
        raise InputError("--points must name at least one integer")
    if args.check is not None:
        seq = _int_list(args.check, "--check")
        try:
            if len(set(seq)) == len(seq) and set(seq) <= set(points):
                verdict = check_equivalence(points, args.p, seq)
            else:
                verdict = is_pm_ordering(points, args.p, seq)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        _emit(json.dumps(verdict), args.out)
        return 0 if verdict else 1
    m = len(points) if args.m is None else args.m
    try:
        seq = pm_ordering(points, args.p, m)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(json.dumps(seq), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultragreedy",
        description=(
            "Greedy maximum-perimeter analysis of weighted point sets with "
            "ultrametric distances"
        ),
        epilog=(
            f"The {ENV_CAP} environment variable (integer) overrides default "
            "enumeration caps; a --cap flag wins over both."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the ultrametric inequality of an instance")
    p.add_argument("instance")
    p.add_argument("--cap", type=int, help="maximum point count (default 64)")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("greedy", help="run or enumerate greedy selections")
    p.add_argument("instance")
    p.add_argument("--subset", help="comma-separated point labels (default: all)")
    p.add_argument("--m", type=int, help="selection length (default: subset size)")
    p.add_argument("--mode", choices=("perm", "subseq"), default="perm")
    p.add_argument("--ties", choices=("first", "all"), default="first")
    p.add_argument("--cap", type=int, help="enumeration cap for --ties all (default 10**6)")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_greedy)

    p = sub.add_parser("nu", help="k-th greedy perimeter increment")
    p.add_argument("instance")
    p.add_argument("--subset")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("perm", "subseq"), default="perm")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_nu)

    p = sub.add_parser("greedoid", help="emit or check the maximum-perimeter set system")
    p.add_argument("instance", nargs="?")
    p.add_argument("--system", help="check a set-system JSON file instead of an instance")
    p.add_argument("--emit", choices=("sets", "check"), default="check")
    p.add_argument("--cap", type=int, help="ground-size cap for materialization (default 16)")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_greedoid)

    p = sub.add_parser("generate", help="write an instance of a standard family")
    p.add_argument("--family", required=True, choices=("constant", "mod", "padic", "padic-log", "rseq", "random"))
    p.add_argument("--points", help="comma-separated integers")
    p.add_argument("--n", type=int)
    p.add_argument("--weights", help="comma-separated rationals")
    p.add_argument("--m", type=int, help="modulus for --family mod")
    p.add_argument("--eps")
    p.add_argument("--alpha")
    p.add_argument("--p", type=int)
    p.add_argument("--r", help="comma-separated divisibility chain")
    p.add_argument("--c", help="comma-separated weakly decreasing rationals")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("tree", help="instance from a weighted tree file")
    p.add_argument("tree")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_tree)

    p = sub.add_parser("pordering", help="compute or check integer P-orderings")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--check", help="comma-separated sequence to test")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_pordering)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
