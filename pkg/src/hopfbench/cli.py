"""Batch command-line entry point.

Subcommands: h2, five-term, centralise, trivialise, classify, stem, uce.
All computation is deterministic (fixed iteration orders), so reports are
byte-reproducible.

Exit codes: 0 success; 2 input/parse errors (including non-surjective
extension files); 3 a cap was exceeded; 4 universal central extension of a
non-perfect group."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .barhomology import check_exactness, choose_h2_method, five_term, h2
from .cocycles import find_stem_extension, universal_central_extension
from .errors import (
    HopfbenchError,
    NotPerfect,
    NotSurjective,
    OrderLimitExceeded,
    ParseError,
    Unsupported,
)
from .extensions import (
    REFLECTORS,
    centralise,
    centralise_via_kernel_pair,
    is_central,
    is_trivial,
    load_extension,
    trivialise,
)
from .groups import load_group
from .intlinalg import FgAbelianGroup, IntMatrix, parse_matrix_text
from .presentations import (
    RelatorModule,
    catalog_relator_module,
    elementary_family,
    endo_action,
    fixed_subgroup,
    hopf_kernel,
    parse_presentation,
)

DEFAULT_CAP_ORDER = 660
SLOW_CAP_ORDER = 660
FAST_TIER_ORDER = 24


def _cap_order(args) -> int:
    if args.cap_order is not None:
        return args.cap_order
    env = os.environ.get("HOPFBENCH_CAP_ORDER")
    if env:
        return int(env)
    return DEFAULT_CAP_ORDER


def _group_json(g: FgAbelianGroup):
    return {"torsion": list(g.torsion), "free_rank": g.free_rank}


def _group_text(g: FgAbelianGroup) -> str:
    return str(g)


def _matrix_json(M: IntMatrix):
    return {"rows": M.rows, "cols": M.cols, "entries": [list(r) for r in M.entries]}


def _emit(args, report: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=False))
    else:
        for line in text_lines:
            print(line)


def _load_capped_group(path, cap):
    G = load_group(path)
    if G.order > cap:
        raise OrderLimitExceeded(
            f"group order {G.order} exceeds the cap {cap}; raise --cap-order"
        )
    return G


def _load_capped_extension(path, cap):
    ext = load_extension(path)
    if ext.dom.order > cap:
        raise OrderLimitExceeded(
            f"extension middle order {ext.dom.order} exceeds the cap {cap}"
        )
    return ext


# ---------------------------------------------------------------------------
# h2


def _fp_module(args) -> RelatorModule:
    if args.presentation:
        with open(args.presentation, "r", encoding="utf-8") as fh:
            P = parse_presentation(fh.read())
        if args.lattice:
            with open(args.lattice, "r", encoding="utf-8") as fh:
                L = parse_matrix_text(fh.read())
        else:
            L = None
        return RelatorModule.of(P, L)
    # fall back to the catalog keyed by a standard-group description
    with open(args.group, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if obj.get("type") == "standard":
        name = obj.get("name", "").lower()
        params = obj.get("params", [])
        if name == "cyclic":
            return catalog_relator_module("cyclic", params[0])
        if name == "klein4":
            return catalog_relator_module("klein4")
        if name == "direct_product" and len(params) == 2:
            a, b = params
            if (
                list(a) == list(b)
                and a[0] == "cyclic"
            ):
                return catalog_relator_module("cn_x_cn", a[1])
    raise Unsupported(
        "--method fp needs --presentation/--lattice files or a catalog group"
    )


def cmd_h2(args) -> int:
    cap = _cap_order(args)
    method = args.method or "auto"
    if method == "fp":
        module = _fp_module(args)
        result = hopf_kernel(module)
        fixed = fixed_subgroup(module)
        family = elementary_family(module)
        certificate = [
            {
                "alpha": _matrix_json(spec.alpha),
                "action": _matrix_json(endo_action(module, spec)),
            }
            for spec in family
        ]
        report = {
            "command": "h2",
            "method": "fp",
            "H2": _group_json(result),
            "fixed_subgroup": _group_json(fixed),
            "agrees": result == fixed,
            "certificate": certificate,
        }
        lines = [f"H2 = {_group_text(result)}", "method: fixed-point"]
        lines.append(
            f"fixed subgroup of {len(family)} elementary endomorphisms: {_group_text(fixed)}"
        )
        for entry in certificate:
            lines.append(
                f"  alpha {entry['alpha']['entries']} -> action {entry['action']['entries']}"
            )
        _emit(args, report, lines)
        return 0
    G = _load_capped_group(args.group, cap)
    resolved = choose_h2_method(G) if method == "auto" else method
    result = h2(G, method=resolved)
    report = {
        "command": "h2",
        "method": resolved,
        "order": G.order,
        "H2": _group_json(result),
    }
    lines = [f"H2 = {_group_text(result)}", f"method: {resolved} (order {G.order})"]
    if resolved == "dual":
        lines.append("dual route: cocycle class sizes over prime-power moduli")
    _emit(args, report, lines)
    return 0


# ---------------------------------------------------------------------------
# five-term


def cmd_five_term(args) -> int:
    cap = _cap_order(args)
    ext = _load_capped_extension(args.extension, cap)
    if ext.dom.order > FAST_TIER_ORDER and not args.slow:
        raise OrderLimitExceeded(
            "five-term needs --slow above order "
            f"{FAST_TIER_ORDER} (got {ext.dom.order})"
        )
    seq = five_term(ext, cap=max(FAST_TIER_ORDER, ext.dom.order))
    rep = check_exactness(seq)
    report = {
        "H2B": _group_json(seq.h2b),
        "H2A": _group_json(seq.h2a),
        "KI1f": _group_json(seq.ki1f),
        "H1B": _group_json(seq.h1b),
        "H1A": _group_json(seq.h1a),
        "exact": [rep.exact_at_h2a, rep.exact_at_ki1f, rep.exact_at_h1b],
        "surjective_end": rep.surjective_end,
        "maps": {
            "H2f": _matrix_json(seq.map_h2f),
            "delta2": _matrix_json(seq.map_delta2),
            "gamma1": _matrix_json(seq.map_gamma1),
            "H1f": _matrix_json(seq.map_h1f),
        },
    }
    lines = [
        "five-term sequence: "
        f"{seq.h2b} -> {seq.h2a} -> {seq.ki1f} -> {seq.h1b} -> {seq.h1a} -> 0",
        f"delta2 = {list(list(r) for r in seq.map_delta2.entries)}",
        f"gamma1 = {list(list(r) for r in seq.map_gamma1.entries)}",
        f"exact at interior nodes: {report['exact']}",
        f"surjective at the end: {rep.surjective_end}",
    ]
    _emit(args, report, lines)
    return 0


# ---------------------------------------------------------------------------
# centralise / trivialise / classify


def _reflector(args):
    return REFLECTORS[args.reflector]


def cmd_centralise(args) -> int:
    cap = _cap_order(args)
    ext = _load_capped_extension(args.extension, cap)
    R = _reflector(args)
    c1, _ = centralise(ext, R)
    c2, _ = centralise_via_kernel_pair(ext, R)
    agree = (
        c1.dom.order == c2.dom.order and c1.map.image_of == c2.map.image_of
    )
    report = {
        "command": "centralise",
        "reflector": R.tag,
        "middle_order_before": ext.dom.order,
        "middle_order_after": c1.dom.order,
        "kernel_before_order": ext.ker.order,
        "kernel_after_order": c1.ker.order,
        "kernel_pair_route_order": c2.dom.order,
        "routes_agree": agree,
    }
    lines = [
        f"centralisation ({R.tag}): middle {ext.dom.order} -> {c1.dom.order}",
        f"kernel {ext.ker.order} -> {c1.ker.order}",
        f"kernel-pair route gives order {c2.dom.order}; routes agree: {agree}",
    ]
    _emit(args, report, lines)
    return 0


def cmd_trivialise(args) -> int:
    cap = _cap_order(args)
    ext = _load_capped_extension(args.extension, cap)
    R = _reflector(args)
    t1f, r1 = trivialise(ext, R)
    report = {
        "command": "trivialise",
        "reflector": R.tag,
        "middle_order_before": ext.dom.order,
        "trivialisation_middle_order": t1f.dom.order,
        "comparison_domain_order": r1.dom.order,
        "comparison_surjective": len(set(r1.image_of)) == r1.cod.order,
        "is_trivial": is_trivial(ext, R),
    }
    lines = [
        f"trivialisation ({R.tag}): middle {ext.dom.order}, "
        f"T1 middle {t1f.dom.order}",
        f"comparison I1[f]({r1.dom.order}) -> T1[f]({r1.cod.order}) "
        f"surjective: {report['comparison_surjective']}",
        f"extension is trivial: {report['is_trivial']}",
    ]
    _emit(args, report, lines)
    return 0


def cmd_classify(args) -> int:
    cap = _cap_order(args)
    ext = _load_capped_extension(args.extension, cap)
    R = _reflector(args)
    central = is_central(ext, R)
    trivial = is_trivial(ext, R) if central else False
    if trivial:
        verdict = "trivial"
    elif central:
        verdict = "central-not-trivial"
    else:
        verdict = "non-central"
    report = {
        "command": "classify",
        "reflector": R.tag,
        "central": central,
        "trivial": trivial,
        "class": verdict,
    }
    _emit(args, report, [f"classification ({R.tag}): {verdict}"])
    return 0


# ---------------------------------------------------------------------------
# stem / uce


def _slow_gate(args, G):
    if G.order > FAST_TIER_ORDER:
        if not args.slow:
            raise OrderLimitExceeded(
                f"order {G.order} needs the --slow flag (slow tier)"
            )
        print(
            f"warning: slow tier enabled for order {G.order}; "
            "this may take minutes",
            file=sys.stderr,
        )


def _stem_report(command, ext, dump_cocycle):
    from .groups import derived_subgroup, is_perfect

    derived = set(derived_subgroup(ext.dom).elements)
    contained = set(ext.ker.elements) <= derived
    from .groups import abelian_invariants, subgroup_embedding

    S, _ = subgroup_embedding(ext.ker)
    kernel_inv = abelian_invariants(S)
    report = {
        "command": command,
        "middle_order": ext.dom.order,
        "kernel": _group_json(kernel_inv),
        "stem_contained_in_derived": contained,
        "perfect_middle": is_perfect(ext.dom),
    }
    lines = [
        f"middle group order {ext.dom.order}",
        f"kernel invariants: {_group_text(kernel_inv)}",
        f"kernel inside derived subgroup: {contained}",
        f"middle group perfect: {report['perfect_middle']}",
    ]
    if dump_cocycle:
        report["middle_table"] = [list(r) for r in ext.dom.table]
        lines.append(f"middle table rows: {len(ext.dom.table)}")
    return report, lines


def cmd_stem(args) -> int:
    cap = _cap_order(args)
    G = _load_capped_group(args.group, cap)
    _slow_gate(args, G)
    ext = find_stem_extension(G)
    report, lines = _stem_report("stem", ext, args.dump_cocycle)
    _emit(args, report, lines)
    return 0


def cmd_uce(args) -> int:
    cap = _cap_order(args)
    G = _load_capped_group(args.group, cap)
    _slow_gate(args, G)
    ext = universal_central_extension(G)
    report, lines = _stem_report("uce", ext, args.dump_cocycle)
    _emit(args, report, lines)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hopfbench",
        description="exact homology workbench for finite groups",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, extension=False, group=False):
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument(
            "--cap-order",
            type=int,
            default=None,
            help="group order cap (env HOPFBENCH_CAP_ORDER overrides the default)",
        )
        p.add_argument("--slow", action="store_true", help="enable the slow tier")
        if extension:
            p.add_argument("extension", help="extension file (JSON)")
            p.add_argument(
                "--reflector",
                choices=sorted(REFLECTORS),
                default="abelianization",
            )
        if group:
            p.add_argument("group", help="group file (JSON)")

    p = sub.add_parser("h2", help="second homology of a group")
    common(p, group=True)
    p.add_argument("--method", choices=["auto", "bar", "dual", "fp"], default="auto")
    p.add_argument("--presentation", help="presentation file for --method fp")
    p.add_argument("--lattice", help="relation lattice file (matrix text format)")
    p.set_defaults(func=cmd_h2)

    p = sub.add_parser("five-term", help="five-term exact sequence of an extension")
    common(p, extension=True)
    p.set_defaults(func=cmd_five_term)

    p = sub.add_parser("centralise", help="centralise an extension (both routes)")
    common(p, extension=True)
    p.set_defaults(func=cmd_centralise)

    p = sub.add_parser("trivialise", help="trivialise an extension")
    common(p, extension=True)
    p.set_defaults(func=cmd_trivialise)

    p = sub.add_parser("classify", help="trivial / central-not-trivial / non-central")
    common(p, extension=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("stem", help="stem extension with kernel h2(G)")
    common(p, group=True)
    p.add_argument("--dump-cocycle", action="store_true")
    p.set_defaults(func=cmd_stem)

    p = sub.add_parser("uce", help="universal central extension of a perfect group")
    common(p, group=True)
    p.add_argument("--dump-cocycle", action="store_true")
    p.set_defaults(func=cmd_uce)

    return ap


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except OrderLimitExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except NotPerfect as err:
        print(f"error: {err}", file=sys.stderr)
        return 4
    except (
        ParseError,
        NotSurjective,
        Unsupported,
        json.JSONDecodeError,
        FileNotFoundError,
        ValueError,
        KeyError,
        HopfbenchError,
    ) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
