"""Acceptance suite: one test per criterion, each recording a pass/fail
line that the terminal summary prints (see ``conftest.py``).

Run standalone with ``python tests/test_acceptance.py``.
"""

import math
import statistics
import time
import timeit
from functools import lru_cache

from corpus import code_corpus, raw_corpus
from morphrec.decompose import is_elementary_bounded
from morphrec.errors import MonoidCapExceeded
from morphrec.flower import build_flower, build_prefix_graph
from morphrec.monoid import strongly_cyclic, theorem_checker, transition_monoid
from morphrec.morphism import Morphism, compose, incidence_rank, is_left_marked, periodic_root
from morphrec.oracle import circular_bruteforce, double_factorizations
from morphrec.product import (
    circular_counter_pair,
    injective_on_left_infinite,
    injective_on_right_infinite,
    is_circular,
    is_code,
    non_injective_pair,
    one_sided_witness,
    recognizable_for_aperiodic,
)
from morphrec.witness import check_witness

RESULTS = {}
YES = ("yes", "yes-vacuous-periodic")


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[n] = line
    print(line)
    return ok


@lru_cache(maxsize=None)
def codes():
    return code_corpus()


@lru_cache(maxsize=None)
def mixed():
    return raw_corpus()


def m(**images):
    return Morphism.from_dict(images)


def test_criterion_1_example_table():
    start = time.perf_counter()
    problems = []
    fib, tm = m(a="ab", b="a"), m(a="ab", b="ba")
    if not (is_code(fib.images) and is_circular(fib.images) and recognizable_for_aperiodic(fib).decision == "yes"):
        problems.append("fibonacci")
    if not (is_code(tm.images) and not is_circular(tm.images) and is_left_marked(tm)
            and recognizable_for_aperiodic(tm).decision == "yes"):
        problems.append("thue-morse")
    sigma = m(a="aa", b="ab", c="ba")
    v = recognizable_for_aperiodic(sigma)
    if v.decision != "no" or check_witness(v.witness, sigma) is not None:
        problems.append("aa/ab/ba")
    if periodic_root(m(a="ab", b="abab")) != "ab":
        problems.append("periodic root")
    for sigma in (m(a="a", b="ab", c="bb"), m(a="ab", b="abc", c="cc")):
        if injective_on_right_infinite(sigma) or check_witness(one_sided_witness(sigma, "right"), sigma):
            problems.append(f"triple for {sigma}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 1.0
    assert record(1, ok, f"{6 - len(problems)}/6 examples, {elapsed:.3f} s {problems or ''}".rstrip())


def test_criterion_2_structures():
    checks = {}
    checks["flower {ab,a}"] = len(build_flower(["ab", "a"])) == 2
    checks["flower {ab,ba}"] = len(build_flower(["ab", "ba"])) == 3
    mon = transition_monoid(build_flower(["ab", "a"]))
    ones = [e for e in mon.idempotents() if mon.in_plus(e) and mon.degree(e) == 1]
    checks["monoid {ab,a}"] = len(mon) == 6 and len(ones) == 3
    mon = transition_monoid(build_flower(["ab", "ba"]))
    twos = [e for e in mon.idempotents() if mon.degree(e) == 2]
    cyc = [strongly_cyclic(mon, mon.group_of(e)) for e in twos]
    checks["thue-morse groups"] = len(twos) == 2 and all(c.cyclic for c in cyc) and {c.root for c in cyc} == {"ab", "ba"}
    g = build_prefix_graph(m(a="ab", b="ba"))
    checks["prefix graph"] = len(g) == 3 and len(g.edges) == 4
    failed = [k for k, v in checks.items() if not v]
    assert record(2, not failed, f"{len(checks) - len(failed)}/{len(checks)} structures {failed or ''}".rstrip())


def test_criterion_3_cross_method():
    start = time.perf_counter()
    agree = disagree = capped = 0
    for sigma in codes():
        graph = recognizable_for_aperiodic(sigma).decision
        try:
            mon = theorem_checker(build_flower(sigma.images)).decision
        except MonoidCapExceeded:
            capped += 1
            continue
        if mon == graph:
            agree += 1
        else:
            disagree += 1
    elapsed = time.perf_counter() - start
    n = len(codes())
    ok = disagree == 0 and n >= 500 and elapsed <= 60 and capped < 0.05 * n
    assert record(3, ok, f"{agree}/{agree + disagree} agree, {capped} over the monoid cap, {elapsed:.1f} s")


def test_criterion_4_oracles():
    code_bad = sum(is_code(s.images) == bool(double_factorizations(list(s.images), 12)) for s in mixed())
    non_codes = sum(not is_code(s.images) for s in mixed())
    refuted = found = negatives = 0
    for sigma in codes():
        circ = is_circular(sigma.images)
        ok, _ = circular_bruteforce(list(sigma.images), 10)
        if circ and not ok:
            refuted += 1
        if not circ:
            negatives += 1
            found += not ok
    rate = found / negatives if negatives else 1.0
    ok = code_bad == 0 and refuted == 0 and rate >= 0.9
    assert record(4, ok, (
        f"code/oracle disagreements {code_bad} over {len(mixed())} ({non_codes} non-codes); "
        f"circular refuted {refuted}; bounded counterexamples {found}/{negatives} ({rate:.0%})"
    ))


def _witnesses(sigma):
    pair = non_injective_pair(sigma)
    if pair is not None:
        yield pair
    else:
        counter = circular_counter_pair(sigma.images)
        if counter is not None:
            yield counter
        for side, check in (("right", injective_on_right_infinite), ("left", injective_on_left_infinite)):
            if not check(sigma):
                yield one_sided_witness(sigma, side)
    verdict = recognizable_for_aperiodic(sigma)
    if verdict.decision == "no":
        yield verdict.witness


def test_criterion_5_witnesses():
    total = failed = missing = 0
    for sigma in mixed():
        if not is_code(sigma.images) and non_injective_pair(sigma) is None:
            missing += 1
        for w in _witnesses(sigma):
            if w is None:
                missing += 1
                continue
            total += 1
            window = 4 * (len(w.u) + len(w.w) + len(w.v)) if w.kind == "double-parse-point" else None
            if check_witness(w, sigma, window) is not None:
                failed += 1
    ok = failed == 0 and missing == 0 and total > 0
    assert record(5, ok, f"{total - failed}/{total} witnesses verified, {missing} missing")


def test_criterion_6_implications():
    violations = {"rank": 0, "elementary": 0, "left-marked": 0, "composition": 0}
    yes = []
    for sigma in codes():
        res = is_elementary_bounded(sigma, use_rank=False)
        if incidence_rank(sigma)[1] and res.status != "elementary":
            violations["rank"] += 1
        if res.status == "elementary" and not (injective_on_right_infinite(sigma) and injective_on_left_infinite(sigma)):
            violations["elementary"] += 1
        decision = recognizable_for_aperiodic(sigma).decision
        if is_left_marked(sigma) and decision != "yes":
            violations["left-marked"] += 1
        if decision in YES:
            yes.append(sigma)
    composed = 0
    for i, beta in enumerate(yes):
        alpha = yes[(7 * i + 3) % len(yes)]
        if set("".join(beta.images)) <= set(alpha.source):
            composed += 1
            if recognizable_for_aperiodic(compose(alpha, beta)).decision not in YES:
                violations["composition"] += 1
    total = sum(violations.values())
    assert record(6, total == 0, f"{total} violations {violations}, {composed} compositions")


def test_criterion_7_quadratic():
    sizes, times = [], []
    for n in (50, 100, 200, 400):
        sigma = Morphism("ab", ("a" * (n - 2) + "b", "a"))
        assert recognizable_for_aperiodic(sigma).decision == "yes"
        # timeit switches the garbage collector off while timing
        best = min(timeit.repeat(lambda: recognizable_for_aperiodic(sigma), number=1, repeat=3))
        sizes.append(n)
        times.append(best)
    slope, _ = statistics.linear_regression([math.log(n) for n in sizes], [math.log(t) for t in times])
    ok = slope <= 2.5 and max(times) < 5
    detail = ", ".join(f"n={n}: {t:.3f} s" for n, t in zip(sizes, times))
    assert record(7, ok, f"log-log slope {slope:.2f}; {detail}")


if __name__ == "__main__":
    import sys

    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
