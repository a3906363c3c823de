"""The twelve acceptance checks, each reported as one PASS/FAIL line in the summary."""

import random
import time
from functools import lru_cache

import pytest

from corpus import all_collinear, coplanar3, line_corpus, motzkin, random_points, random_points3, structured_spatial
from ordinary.circle import find_ordinary_circle, incidence_count_circle, invert
from ordinary.cli import run
from ordinary.conic import Hyperplane5, find_ordinary_conic, lift
from ordinary.errors import ConcyclicInputError
from ordinary.line import choose_base_and_direction, find_ordinary_line, min_lambda_line_bruteforce, min_lambda_line_fast
from ordinary.oracle import (
    circle_bound,
    conic_bound,
    enumerate_ordinary_circles_through,
    enumerate_ordinary_conics_through,
    enumerate_ordinary_lines,
    line_bound,
)
from ordinary.planar import (
    Conic,
    are_coconic_all,
    as_point_set,
    incidence_count_conic,
    incidence_count_line,
    orientation,
    point2,
    point_on_conic,
)
from ordinary.spatial import (
    as_point3_set,
    choose_base_ray,
    find_ordinary_plane,
    first_plane_bruteforce,
    first_plane_fast,
    is_ordinary_plane,
)

pytestmark = pytest.mark.slow


@lru_cache(maxsize=None)
def line_instances():
    return [as_point_set(s) for s in line_corpus(seed=20261016, count=500)]


@lru_cache(maxsize=None)
def conic_instances():
    """200 non-co-conic sets, each with five non-collinear triples."""
    rng = random.Random(5150)
    out = []
    while len(out) < 200:
        s = as_point_set(random_points(rng, rng.randint(6, 32)))
        if are_coconic_all(s):
            continue
        triples = []
        while len(triples) < 5:
            p, q, r = rng.sample(s, 3)
            if orientation(p, q, r) != 0:
                triples.append((p, q, r))
        out.append((s, triples))
    return out


@lru_cache(maxsize=None)
def spatial_instances():
    rng = random.Random(4242)
    out = []
    while len(out) < 200:
        pts = random_points3(rng, rng.randint(4, 40))
        if not coplanar3(pts[:4]) or not coplanar3(pts):
            out.append(as_point3_set(pts))
    structured = {name: as_point3_set(pts) for name, pts in structured_spatial().items()}
    return out, structured


@pytest.mark.criterion(1)
def test_ordinary_line_soundness(criterion):
    instances = line_instances()
    start = time.perf_counter()
    results = [find_ordinary_line(s) for s in instances]
    elapsed = time.perf_counter() - start
    good = sum(incidence_count_line(s, r.line).count == 2 for s, r in zip(instances, results))
    criterion.done(
        good == len(instances) and elapsed < 10,
        f"{good}/{len(instances)} lines with exactly 2 points in {elapsed:.2f}s (limit 10s)",
    )


@pytest.mark.criterion(2)
def test_kelly_moser_bound(criterion):
    short = []
    for s in line_instances():
        count = enumerate_ordinary_lines(s).count
        if count < line_bound(len(s)):
            short.append((len(s), count))
    criterion.done(not short, f"census >= ceil(3n/7) on {len(line_instances())} sets; violations {short[:3]}")


@pytest.mark.criterion(3)
def test_fixed_line_instances(criterion):
    grid = enumerate_ordinary_lines([(x, y) for x in range(3) for y in range(3)]).count
    four = enumerate_ordinary_lines([(0, 0), (1, 0), (2, 0), (0, 1)]).count
    criterion.done(grid == 12 and four == 3, f"3x3 grid census {grid} (want 12), 4-point census {four} (want 3)")


@pytest.mark.criterion(4)
def test_line_fast_path_equivalence(criterion):
    mismatches = 0
    for s in line_instances():
        ray = choose_base_and_direction(s)
        if min_lambda_line_fast(s, ray).lam != min_lambda_line_bruteforce(s, ray).lam:
            mismatches += 1
    criterion.done(mismatches == 0, f"fast vs brute lambda mismatches: {mismatches}/{len(line_instances())}")


@pytest.mark.criterion(5)
def test_ordinary_conic_soundness(criterion):
    instances = conic_instances()
    start = time.perf_counter()
    found = [(s, t, find_ordinary_conic(s, *t)) for s, triples in instances for t in triples]
    elapsed = time.perf_counter() - start
    good = 0
    for s, triple, res in found:
        on = incidence_count_conic(s, res.conic)
        good += on.count == 5 and set(triple) <= set(on.points)
    criterion.done(
        good == len(found) and elapsed < 60,
        f"{good}/{len(found)} conics with exactly 5 points incl. p,q,r in {elapsed:.2f}s (limit 60s)",
    )


@pytest.mark.criterion(6)
def test_conic_count_bound(criterion):
    checked, short = 0, []
    for s, triples in conic_instances():
        if len(s) > 16:
            continue
        for triple in triples:
            count = enumerate_ordinary_conics_through(s, *triple).count
            checked += 1
            if count < conic_bound(len(s)):
                short.append((len(s), count))
    criterion.done(not short, f"census >= ceil(3(n-3)/7) on {checked} (set, triple) pairs; violations {short[:3]}")


@pytest.mark.criterion(7)
def test_lift_fidelity(criterion):
    rng = random.Random(77)
    disagreements = 0
    for k in range(1000):
        coeffs = [rng.randint(-9, 9) for _ in range(6)]
        if not any(coeffs):
            coeffs[5] = 1
        conic = Conic.from_coeffs(*coeffs)
        if k % 2:
            # half the time pick a point on the conic so both answers are exercised
            x = rng.randint(-9, 9)
            a, c, d = conic.b, conic.c * x + conic.e, conic.a * x * x + conic.d * x + conic.f
            roots = [y for y in range(-60, 61) if a * y * y + c * y + d == 0]
            p = (x, rng.choice(roots)) if roots else (x, rng.randint(-9, 9))
        else:
            p = (rng.randint(-9, 9), rng.randint(-9, 9))
        h = Hyperplane5.from_conic(conic)
        disagreements += point_on_conic(conic, p) != h.contains(tuple(lift(p)))
    criterion.done(disagreements == 0, f"{disagreements}/1000 disagreements")


@pytest.mark.criterion(8)
def test_ordinary_circle_soundness(criterion):
    rng = random.Random(888)
    bad, concyclic, bound_fail, censused = 0, 0, [], 0
    for _ in range(200):
        pts = as_point_set(random_points(rng, rng.randint(3, 64)))
        p = rng.choice(pts)
        images = [invert(p, q) for q in pts if q != p]
        really_concyclic = len(images) >= 3 and all_collinear(images)
        try:
            res = find_ordinary_circle(pts, p)
        except ConcyclicInputError:
            concyclic += 1
            bad += not really_concyclic
            continue
        on = incidence_count_circle(pts, res.circle)
        bad += not (on.count == 3 and p in on.points)
        if len(pts) <= 32:
            censused += 1
            count = enumerate_ordinary_circles_through(pts, p).count
            if count < circle_bound(len(pts)):
                bound_fail.append((len(pts), count))
    involution_fail = 0
    for _ in range(1000):
        c = point2(rng.randint(-50, 50), rng.randint(-50, 50))
        q = point2(rng.randint(-50, 50), rng.randint(-50, 50))
        if q == c:
            continue
        involution_fail += invert(c, invert(c, q)) != q
    criterion.done(
        bad == 0 and involution_fail == 0 and not bound_fail,
        f"unsound {bad}/200 (concyclic {concyclic}); involution failures {involution_fail}/1000; "
        f"census bound violations {len(bound_fail)}/{censused}",
    )


@pytest.mark.criterion(9)
def test_ordinary_plane_soundness(criterion):
    random_sets, structured = spatial_instances()
    start = time.perf_counter()
    failures = [k for k, s in enumerate(random_sets) if not is_ordinary_plane(s, find_ordinary_plane(s).plane)]
    for name, s in structured.items():
        if not is_ordinary_plane(s, find_ordinary_plane(s).plane):
            failures.append(name)
    elapsed = time.perf_counter() - start
    motzkin_ok = True
    for k in (3, 4):
        s = as_point3_set(motzkin(k))
        inc = set(find_ordinary_plane(s).incident)
        lines = ({p for p in s if p[1] == 0 and p[2] == 0}, {p for p in s if p[0] == 0 and p[2] == 1})
        motzkin_ok &= any(line <= inc for line in lines)
    total = len(random_sets) + len(structured)
    criterion.done(
        not failures and motzkin_ok and elapsed < 60,
        f"{total - len(failures)}/{total} ordinary planes in {elapsed:.2f}s (limit 60s); "
        f"Motzkin result holds a line: {motzkin_ok}",
    )


@pytest.mark.criterion(10)
def test_plane_fast_path_equivalence(criterion):
    random_sets, structured = spatial_instances()
    rng = random.Random(1010)
    big = []
    for lo, hi in ((-1000, 1000), (-3, 3)):
        for _ in range(3):
            pts = random_points3(rng, 100, lo, hi)
            big.append(as_point3_set(pts))
    instances = random_sets + list(structured.values()) + big
    mismatches = 0
    for s in instances:
        ray = choose_base_ray(s)
        mismatches += first_plane_fast(s, ray).lam != first_plane_bruteforce(s, ray).lam
    criterion.done(
        mismatches == 0,
        f"fast vs brute lambda mismatches: {mismatches}/{len(instances)} (largest n {max(map(len, instances))})",
    )


@pytest.mark.criterion(11)
def test_degenerate_input_contracts(criterion, tmp_path, capsys):
    import json

    cases = [
        (["line"], "0 0\n1 1\n2 2\n3 3\n", "collinear"),
        (["conic", "--through", "5,0;0,5;-5,0"], "5 0\n0 5\n-5 0\n0 -5\n3 4\n4 -3\n-3 -4\n", "co-conic"),
        (["circle", "--center", "1,1"], "1 1\n2 2\n3 3\n-4 -4\n", "concyclic"),
        (["circle", "--center", "5,0"], "5 0\n0 5\n-5 0\n0 -5\n3 4\n", "concyclic"),
        (["plane"], "0 0 0\n1 0 0\n0 1 0\n1 1 0\n2 7 0\n", "coplanar"),
    ]
    outcomes = []
    for k, (argv, text, reason) in enumerate(cases):
        path = tmp_path / f"case{k}.txt"
        path.write_text(text)
        code = run(argv + ["--input", str(path), "--format", "json"])
        payload = json.loads(capsys.readouterr().out)
        outcomes.append((code, payload.get("reason"), reason))
    ok = all(code == 2 and got == want for code, got, want in outcomes)
    criterion.done(ok, "; ".join(f"{want}: exit {code} reason {got}" for code, got, want in outcomes))


@pytest.mark.criterion(12)
def test_large_line_search(criterion):
    rng = random.Random(10_000)
    pts = set()
    while len(pts) < 10_000:
        pts.add((rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)))
    s = as_point_set(sorted(pts))
    start = time.perf_counter()
    res = find_ordinary_line(s, "fast")
    elapsed = time.perf_counter() - start
    ok = incidence_count_line(s, res.line).count == 2
    criterion.done(ok and elapsed < 5, f"n=10^4 in {elapsed:.2f}s (limit 5s), ordinary: {ok}")
