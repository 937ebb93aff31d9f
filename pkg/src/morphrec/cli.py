"""Command-line front end.

    morphrec analyze FILE [analysis flags] [--json] [--no-timing]
    morphrec dot FILE {flower,square,prefix-graph} [-o OUT]

Exit status: 0 when the analysis ran (whatever the verdicts), 2 for
input errors, 3 when an internal consistency check fails.
"""

import argparse
import json
import sys
import time

from .decompose import DEFAULT_BUDGET, is_elementary_bounded, linna_decompose
from .errors import DomainError, InvariantError, MonoidCapExceeded, MorphismSyntaxError
from .flower import build_flower, build_prefix_graph, is_deterministic, to_dot
from .monoid import DEFAULT_CAP, theorem_checker, transition_monoid
from .morphism import (
    ell,
    erasable_letters,
    erasable_words,
    growing_letters,
    incidence_rank,
    is_left_marked,
    is_right_marked,
    parse_morphism,
    periodic_root,
)
from .oracle import circular_bruteforce, double_factorizations
from .product import (
    circular_counter_pair,
    injective_on_left_infinite,
    injective_on_right_infinite,
    is_code,
    non_injective_pair,
    one_sided_witness,
    recognizable_for_aperiodic,
    square,
    square_to_dot,
)

SCHEMA = 1
ANALYSES = ("injective", "circular", "recognizable_aperiodic", "monoid", "decompose", "elementary", "oracle")
GRAPHS = ("flower", "square", "prefix-graph")


def render_dot(sigma, which):
    if which == "flower":
        return to_dot(build_flower(sigma.images), "flower")
    if which == "square":
        return square_to_dot(square(build_flower(sigma.images)))
    if which == "prefix-graph":
        return to_dot(build_prefix_graph(sigma), "prefix")
    raise ValueError(f"unknown graph {which!r}")


def _basic(sigma):
    root = periodic_root(sigma)
    rank, full = incidence_rank(sigma)
    out = {
        "size": sigma.size(),
        "ell": ell(sigma),
        "injective_on_letters": sigma.is_injective_on_letters,
        "non_erasing": sigma.is_non_erasing,
        "periodic": root is not None,
        "left_marked": is_left_marked(sigma),
        "right_marked": is_right_marked(sigma),
        "incidence_rank": rank,
        "rank_equals_card": full,
    }
    flags = []
    if root is not None:
        out["root"] = root
        if root == "":
            flags.append("all-images-empty")
    if not sigma.is_non_erasing:
        # marking is refused outright when an image is empty, even if no
        # letter is erasable in the endomorphism sense
        flags.append("marked-needs-nonempty-images")
    if flags:
        out["flags"] = flags
    if sigma.is_endomorphism:
        out["erasable_letters"] = sorted(erasable_letters(sigma))
        out["erasable_words"] = sorted(erasable_words(sigma), key=lambda w: (len(w), w))
        out["growing_letters"] = sorted(growing_letters(sigma))
    return out


def _one_side(sigma, side):
    check = injective_on_right_infinite if side == "right" else injective_on_left_infinite
    try:
        ok = check(sigma)
    except DomainError as exc:
        return {"error": str(exc)}
    out = {"injective": ok}
    if not ok:
        if is_code(sigma.images):
            out["witness"] = one_sided_witness(sigma, side).to_json()
        else:
            out["witness"] = non_injective_pair(sigma).to_json()
    return out


def _injective(sigma):
    pair = non_injective_pair(sigma)
    out = {"code": pair is None}
    if pair is not None:
        out["witness"] = pair.to_json()
    out["right_infinite"] = _one_side(sigma, "right")
    out["left_infinite"] = _one_side(sigma, "left")
    return out


def _circular(sigma):
    pair = non_injective_pair(sigma)
    if pair is not None:
        return {"circular": False, "witness": pair.to_json()}
    counter = circular_counter_pair(sigma.images)
    out = {"circular": counter is None}
    if counter is not None:
        out["witness"] = counter.to_json()
    return out


def _monoid(sigma, cap):
    if not sigma.is_non_erasing:
        return {"error": "the flower automaton needs nonempty images"}
    flower = build_flower(sigma.images)
    out = {"flower_states": len(flower), "deterministic": is_deterministic(flower)}
    try:
        monoid = transition_monoid(flower, cap)
    except MonoidCapExceeded as exc:
        out["error"] = "cap exceeded"
        out["cap"] = exc.cap
        return out
    out["monoid"] = monoid.to_json()
    if is_code(sigma.images):
        out["theorem"] = theorem_checker(flower, cap).to_json()
    else:
        out["theorem"] = {"error": "the flower automaton is ambiguous"}
    return out


def _decompose(sigma):
    try:
        dec = linna_decompose(sigma)
    except DomainError as exc:
        return {"applicable": False, "reason": str(exc)}
    return {"applicable": True, "decomposition": dec.to_json(), "text": dec.to_text()}


def _oracle(sigma, max_len):
    doubles = double_factorizations(list(sigma.images), max_len)
    circ, reason = circular_bruteforce(list(sigma.images), min(max_len, 10))
    out = {"max_len": max_len, "double_factorizations": len(doubles), "circular_within_bound": circ}
    if doubles:
        word, (f1, f2) = doubles[0]
        out["first_double"] = {"word": word, "factorizations": [f1, f2]}
    if isinstance(reason, tuple):
        out["counter_pair"] = list(reason)
    return out


def analyze(sigma, selected, budget=DEFAULT_BUDGET, max_len=12, cap=DEFAULT_CAP, dot=None, timing=True):
    report = {
        "schema": SCHEMA,
        "morphism": {
            "source": list(sigma.source),
            "target": list(sigma.target),
            "images": sigma.as_dict(),
        },
    }
    times = {}
    jobs = [("basic", lambda: _basic(sigma))]
    if "injective" in selected:
        jobs.append(("injective", lambda: _injective(sigma)))
    if "circular" in selected:
        jobs.append(("circular", lambda: _circular(sigma)))
    if "recognizable_aperiodic" in selected:
        jobs.append(("recognizable_aperiodic", lambda: recognizable_for_aperiodic(sigma).to_json()))
    if "monoid" in selected:
        jobs.append(("monoid", lambda: _monoid(sigma, cap)))
    if "decompose" in selected:
        jobs.append(("decompose", lambda: _decompose(sigma)))
    if "elementary" in selected:
        jobs.append(("elementary", lambda: is_elementary_bounded(sigma, budget).to_json()))
    if "oracle" in selected:
        jobs.append(("oracle", lambda: _oracle(sigma, max_len)))
    for name, job in jobs:
        t0 = time.perf_counter()
        report[name] = job()
        times[name] = round(time.perf_counter() - t0, 6)
    if dot:
        try:
            report["dot"] = {dot: render_dot(sigma, dot)}
        except DomainError as exc:
            report["dot"] = {dot: None, "error": str(exc)}
    if timing:
        report["timing"] = times
    return report


def _summary(report):
    lines = []
    m = report["morphism"]
    lines.append("morphism: " + ", ".join(f"{a} -> {w or 'ε'}" for a, w in m["images"].items()))
    b = report["basic"]
    lines.append(f"  periodic: {b['periodic']}" + (f" (root {b['root']!r})" if b["periodic"] else ""))
    lines.append(f"  left/right marked: {b['left_marked']}/{b['right_marked']}")
    lines.append(f"  incidence rank: {b['incidence_rank']} (full: {b['rank_equals_card']})")
    if "injective" in report:
        r = report["injective"]
        lines.append(f"  code: {r['code']}")
        for side in ("right_infinite", "left_infinite"):
            lines.append(f"  injective on {side.replace('_', '-')}: {r[side].get('injective', r[side].get('error'))}")
    if "circular" in report:
        lines.append(f"  circular: {report['circular']['circular']}")
    if "recognizable_aperiodic" in report:
        r = report["recognizable_aperiodic"]
        extra = f" (condition {r['violated']})" if "violated" in r else ""
        lines.append(f"  recognizable for aperiodic points: {r['decision']}{extra}")
    if "monoid" in report:
        r = report["monoid"]
        if "monoid" in r:
            lines.append(f"  transition monoid: {r['monoid']['size']} elements")
            if "decision" in r.get("theorem", {}):
                lines.append(f"  monoid criterion: {r['theorem']['decision']}")
        elif "error" in r:
            lines.append(f"  transition monoid: {r['error']}")
    if "decompose" in report:
        r = report["decompose"]
        if r["applicable"]:
            d = r["decomposition"]
            lines.append(f"  decomposition: alpha {d['alpha']}, beta {d['beta']}")
        else:
            lines.append(f"  decomposition: not applicable ({r['reason']})")
    if "elementary" in report:
        lines.append(f"  elementary: {report['elementary']['status']}")
    if "oracle" in report:
        r = report["oracle"]
        lines.append(
            f"  oracle (max length {r['max_len']}): {r['double_factorizations']} double factorizations, "
            f"circular within bound: {r['circular_within_bound']}"
        )
    return "\n".join(lines) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(prog="morphrec", description="Recognizability analyses for morphisms of free monoids.")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run analyses and print a report")
    a.add_argument("file", help="morphism file, one 'x -> w' rule per line ('-' for stdin)")
    a.add_argument("--all", action="store_true", help="run every analysis (default when none is selected)")
    a.add_argument("--injective", action="store_true")
    a.add_argument("--circular", action="store_true")
    a.add_argument("--recognizable-aperiodic", action="store_true")
    a.add_argument("--monoid", action="store_true")
    a.add_argument("--decompose", action="store_true")
    a.add_argument("--elementary", action="store_true")
    a.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="candidate limit for --elementary")
    a.add_argument("--oracle", action="store_true")
    a.add_argument("--max-len", type=int, default=12, help="word length bound for --oracle")
    a.add_argument("--dot", choices=GRAPHS, help="embed a DOT graph in the report")
    a.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
    a.add_argument("--no-timing", action="store_true", help="omit timings (byte-stable output)")
    a.add_argument("--monoid-cap", type=int, default=DEFAULT_CAP)

    d = sub.add_parser("dot", help="print a graph in DOT format")
    d.add_argument("file")
    d.add_argument("which", choices=GRAPHS)
    d.add_argument("-o", "--out", help="write to this file instead of stdout")
    return parser


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        sigma = parse_morphism(_read(args.file))
    except (OSError, MorphismSyntaxError, ValueError) as exc:
        print(f"morphrec: {args.file}: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "dot":
            try:
                text = render_dot(sigma, args.which)
            except DomainError as exc:
                print(f"morphrec: cannot draw {args.which}: {exc}", file=sys.stderr)
                return 2
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        flags = {name: getattr(args, name) for name in ANALYSES}
        selected = set(ANALYSES) if args.all or not any(flags.values()) else {k for k, v in flags.items() if v}
        report = analyze(
            sigma, selected, budget=args.budget, max_len=args.max_len, cap=args.monoid_cap,
            dot=args.dot, timing=not args.no_timing,
        )
    except InvariantError as exc:
        print(f"morphrec: internal check failed: {exc}", file=sys.stderr)
        return 3
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(_summary(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
