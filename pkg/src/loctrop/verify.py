"""Cross-check suites behind the ``verify`` command.

Each suite compares an algorithm of the package against an oracle on the
given input and returns a plain dict report.  Suites that do not apply to the
input (for instance ``newton`` on three variables) are reported as skipped.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor

from . import oracles
from . import polyhedra as ph
from .core import dot, support, weight_of
from .io import Problem
from .localgb import local_groebner_fan, tropical_finite_set, tropvar_general, twin_check
from .staircase import E0, minimal_staircase
from .tropical import (
    DEFINITION,
    local_trop_hypersurface,
    member_hat,
    member_tilde,
    member_trop,
)

SUITES = ("staircase", "grid", "newton", "twin")
MAX_FAILURES_SHOWN = 10
GRID_DENOMINATOR = 8


def _report(suite: str, checks: int, failures: list, status: str | None = None, reason: str = "") -> dict:
    out = {
        "suite": suite,
        "status": status or ("pass" if not failures else "fail"),
        "checks": checks,
        "failure_count": len(failures),
        "failures": failures[:MAX_FAILURES_SHOWN],
    }
    if reason:
        out["reason"] = reason
    return out


def _skip(suite: str, reason: str) -> dict:
    return _report(suite, 0, [], "skipped", reason)


def _w(w) -> list[str]:
    return [str(x) for x in w]


def staircase_suite(problem: Problem, seed: int, samples: int, semantics: str) -> dict:
    rng = random.Random(seed)
    checks, failures = 0, []
    for k, f in enumerate(problem.generators):
        if f.is_zero():
            continue
        S = sorted(support(f))
        box = max(max(e) for e in S)
        checks += 1
        mine = minimal_staircase(S).generators
        if mine != oracles.brute_staircase(S, box):
            failures.append({"generator": k, "check": "brute-force staircase"})
        for a in mine:
            for b in mine:
                if a != b and all(x <= y for x, y in zip(a, b)):
                    failures.append({"generator": k, "check": "antichain", "pair": [list(a), list(b)]})
        # minimal-weight terms under a positive weight lie in the staircase
        gens = set(E0(f))
        for _ in range(samples):
            w = oracles.random_weight(rng, f.n)
            m = weight_of(f, w)
            checks += 1
            if any(dot(w, e) == m and e not in gens for e in S):
                failures.append({"generator": k, "check": "minimal-weight capture", "weight": _w(w)})
    return _report("staircase", checks, failures)


def grid_suite(problem: Problem, seed: int, samples: int, semantics: str) -> dict:
    n = problem.n
    pts = oracles.grid(n, GRID_DENOMINATOR)
    checks, failures = 0, []
    if not problem.exact:
        # truncated input: the three characterizations must agree pointwise
        for k, f in enumerate(problem.generators):
            for w in pts:
                checks += 1
                a, b, c = member_trop(f, w), member_tilde(f, w), member_hat(f, w)
                if not a == b == c:
                    failures.append({"generator": k, "weight": _w(w), "trop": a, "tilde": b, "hat": c})
        return _report("grid", checks, failures)
    if len(problem.generators) == 1:
        f = problem.generators[0]
        res = local_trop_hypersurface(f, semantics)
        for w in pts:
            checks += 1
            if res.contains(w) != oracles.global_min_twice(f, w):
                failures.append({"weight": _w(w), "local": res.contains(w)})
        return _report("grid", checks, failures)
    tv = tropvar_general(list(problem.generators))
    H = tropical_finite_set(list(problem.generators), variety=tv)
    for w in pts:
        checks += 1
        a = tv.contains(w)
        b = all(oracles.global_min_twice(h.element, w) for h in H)
        if a != b:
            failures.append({"weight": _w(w), "variety": a, "finite_set": b})
    return _report("grid", checks, failures)


def newton_suite(problem: Problem, seed: int, samples: int, semantics: str) -> dict:
    if problem.n != 2 or len(problem.generators) != 1 or not problem.exact:
        return _skip("newton", "needs one exact polynomial in two variables")
    f = problem.generators[0]
    if f.coeff((0, 0)) != 0:
        return _skip("newton", "the curve does not pass through the origin")
    expected = set(oracles.newton_polygon_rays(f))
    got = local_trop_hypersurface(f, semantics).interior_rays()
    failures = [] if got == expected else [{
        "tropical_rays": sorted(map(list, got)), "newton_rays": sorted(map(list, expected))}]
    return _report("newton", 1, failures)


def twin_suite(problem: Problem, seed: int, samples: int, semantics: str) -> dict:
    if not problem.exact:
        return _skip("twin", "standard bases need exact generators")
    gens = list(problem.generators)
    lgf = local_groebner_fan(gens)
    checks, failures = 0, []
    for c in lgf.fan.maximal():
        w = ph.interior_sample(c)
        for _, facet in ph.facets(c):
            checks += 1
            wp = ph.interior_sample(facet)
            if not twin_check(gens, wp, w):
                failures.append({"cone": lgf.cones[c].id, "w": _w(w), "w_prime": _w(wp)})
    return _report("twin", checks, failures)


RUNNERS = {
    "staircase": staircase_suite,
    "grid": grid_suite,
    "newton": newton_suite,
    "twin": twin_suite,
}


def _run_one(args) -> dict:
    name, problem, seed, samples, semantics = args
    return RUNNERS[name](problem, seed, samples, semantics)


def run_suites(problem: Problem, suite: str = "all", seed: int = 0, samples: int = 200,
               semantics: str = DEFINITION, jobs: int = 1) -> dict:
    names = list(SUITES) if suite == "all" else [suite]
    tasks = [(name, problem, seed, samples, semantics) for name in names]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_one, tasks))
    else:
        reports = [_run_one(t) for t in tasks]
    return {
        "suites": reports,
        "passed": all(r["status"] != "fail" for r in reports),
    }
