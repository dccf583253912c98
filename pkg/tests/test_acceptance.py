"""Exit criteria: one test per criterion, each recording a PASS/FAIL line.

Tolerances are the stated ones: exact equality for all algebraic values,
10 ms per instance for the worked example and the weight grid, 5 s for each
200-instance identity suite, 30 s for the block-system oracle.
"""

import random
import time
from contextlib import contextmanager

import pytest

from corpus import marks, random_cover, random_marks, random_perm, random_split
from oracles import brute_force_block_systems
from pullstab import (
    Verdict,
    all_block_systems,
    common_refinement,
    direct_image_structure,
    dual,
    etale_intermediate_covers,
    gr1_hypothesis_holds,
    is_orbifold_etale,
    is_transitive,
    make_cover,
    maximal_etale_cover,
    par_deg,
    pullback_split,
    stability_verdict,
)

RESULTS = {}

CORPUS_SEED = 20240601
CORPUS_SIZE = 250


@contextmanager
def criterion(n, name):
    detail = {"text": ""}
    try:
        yield detail
    except BaseException as exc:
        RESULTS[n] = (False, name, detail["text"] or str(exc).splitlines()[0][:200])
        print(f"[FAIL] criterion {n}: {name}")
        raise
    RESULTS[n] = (True, name, detail["text"])
    print(f"[PASS] criterion {n}: {name} ({detail['text']})")


def example_cover():
    return make_cover(6, [("0", [[0, 1, 2, 3, 4, 5]]), ("infty", [[0, 5, 4, 3, 2, 1]])])


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


@pytest.fixture(scope="module")
def random_corpus():
    rng = random.Random(CORPUS_SEED)
    out = []
    for _ in range(CORPUS_SIZE):
        c = random_cover(rng, max_degree=8, max_genus=2)
        out.append((c, random_marks(rng, c)))
    return out


GRID = [((2, 2), 2), ((3, 3), 3), ((6, 6), 6), ((1, 1), 1)]


def lemma2_violations(c, o):
    etale = [r.system for r in etale_intermediate_covers(c, o)]
    maximal = maximal_etale_cover(c, o).system
    bad = [s for s in etale if not maximal.refines(s)]
    for p in etale:
        for q in etale:
            meet = common_refinement(p, q)
            if not all(meet.is_invariant_under(g) for g in c.generators) or not is_orbifold_etale(meet, c, o):
                bad.append((p, q))
    return bad


def test_criterion_1_example():
    with criterion(1, "worked example: degree-6 cyclic cover, N0=2, Ninf=3") as info:
        c, o = example_cover(), marks(_0=2, inf=3)
        (v, gr1), elapsed = timed(lambda: (stability_verdict(c, o), gr1_hypothesis_holds(c, o)))
        assert v.rank == 1
        assert v.verdict is Verdict.PRESERVED
        assert gr1 is False
        assert elapsed < 0.010, f"{elapsed * 1e3:.2f} ms"
        info["text"] = f"rank 1, PRESERVED, coprime hypothesis false, {elapsed * 1e3:.2f} ms"


def test_criterion_2_weight_grid():
    with criterion(2, "weight grid on the example cover") as info:
        c = example_cover()
        times = []
        for (n0, ninf), expected in GRID:
            v, elapsed = timed(lambda: stability_verdict(c, marks(_0=n0, inf=ninf)))
            assert v.rank == expected, (n0, ninf, v.rank)
            assert elapsed < 0.010, f"({n0},{ninf}): {elapsed * 1e3:.2f} ms"
            times.append(elapsed)
        info["text"] = "ranks 2, 3, 6, 1; slowest %.2f ms" % (max(times) * 1e3)


def test_criterion_3_direct_image_degree_zero(random_corpus):
    with criterion(3, "direct image has parabolic degree zero") as info:
        assert len(random_corpus) >= 200
        assert all(c.degree <= 8 and c.base_genus <= 2 for c, _ in random_corpus)
        start = time.perf_counter()
        failures = [c for c, _ in random_corpus if par_deg(direct_image_structure(c)) != 0]
        elapsed = time.perf_counter() - start
        assert not failures, failures[0]
        assert elapsed < 5.0
        info["text"] = f"{len(random_corpus)} covers, {elapsed:.3f} s"


def test_criterion_4_self_dual(random_corpus):
    with criterion(4, "direct image is self-dual") as info:
        start = time.perf_counter()
        failures = [c for c, _ in random_corpus if dual(direct_image_structure(c)) != direct_image_structure(c)]
        elapsed = time.perf_counter() - start
        assert not failures, failures[0]
        assert elapsed < 5.0
        info["text"] = f"{len(random_corpus)} covers, {elapsed:.3f} s"


def test_criterion_5_pullback_degree():
    with criterion(5, "par-deg of pullback = degree * par-deg") as info:
        rng = random.Random(CORPUS_SEED + 5)
        pairs = []
        for _ in range(CORPUS_SIZE):
            c = random_cover(rng, max_degree=8, max_genus=2)
            pairs.append((c, random_split(rng, c, max_den=12)))
        start = time.perf_counter()
        failures = [(c, e) for c, e in pairs if par_deg(pullback_split(c, e)) != c.degree * par_deg(e)]
        elapsed = time.perf_counter() - start
        assert not failures, failures[0]
        assert elapsed < 5.0
        info["text"] = f"{len(pairs)} pairs, {elapsed:.3f} s"


def test_criterion_6_block_oracle():
    with criterion(6, "block systems match brute-force partition filter") as info:
        rng = random.Random(CORPUS_SEED + 6)
        instances = 0
        start = time.perf_counter()
        while instances < 60:
            d = rng.randint(1, 7)
            gens = [random_perm(rng, d) for _ in range(rng.randint(1, 3))]
            if not is_transitive(gens, d):
                continue
            found = [s.block_of for s in all_block_systems(gens, d)]
            assert len(found) == len(set(found))
            assert set(found) == brute_force_block_systems(gens, d), (d, [str(g) for g in gens])
            instances += 1
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0
        info["text"] = f"{instances} transitive groups, {elapsed:.2f} s"


def test_criterion_7_unique_maximal(random_corpus):
    with criterion(7, "maximal etale system refines all; meets of etale systems are etale") as info:
        instances = [(example_cover(), marks(_0=2, inf=3))]
        instances += [(example_cover(), marks(_0=n0, inf=ninf)) for (n0, ninf), _ in GRID]
        instances += random_corpus
        violations = [(c, o) for c, o in instances if lemma2_violations(c, o)]
        assert not violations, violations[0]
        info["text"] = f"{len(instances)} instances, 0 violations"


def test_criterion_8_coprime_hypothesis_consistency(random_corpus):
    with criterion(8, "coprime-ramification hypothesis implies PRESERVED") as info:
        holds = [(c, o) for c, o in random_corpus if gr1_hypothesis_holds(c, o)]
        counter = [(c, o) for c, o in holds if stability_verdict(c, o).verdict is not Verdict.PRESERVED]
        info["text"] = f"{len(holds)} instances with the hypothesis, {len(counter)} counterexamples"
        if counter:
            genera = sorted({c.base_genus for c, _ in counter})
            info["text"] += f" (base genus {genera})"
            c, o = counter[0]
            info["text"] += (
                f"; first: degree {c.degree}, base genus {c.base_genus}, "
                f"branch {[(x, str(p)) for x, p in c.branch]}, handles {[str(h) for h in c.handles]}, marks {o.marked}"
            )
        assert not counter, info["text"]
