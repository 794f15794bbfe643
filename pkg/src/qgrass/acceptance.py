"""The acceptance suite: one callable per criterion, shared by the test
module and the `repro` CLI subcommand.  Every check is exact at the stated
tolerance; nothing here is calibrated after the fact.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .chains import Chain, ModRing, boundary, coboundary, perp_chain
from .cones import OrderedBasis, cone, cone_size_bound, small_generators
from .errors import QgrassError
from .expansion import (
    enumerate_minimal_connected,
    expansion_constant,
    restriction_inequality,
    small_set_bound_check,
)
from .homology import cohomology_dims, homology_dims, spans_kernel
from .indcomplex import (
    Face,
    SimplicialConeCache,
    independence_complex,
    local_sparsity,
    simplicial_cone_sizes_bound,
    standard_basis_lines,
    verify_cone_identity,
)
from .qarith import theta_threshold
from .randmodel import ConnectivityTester, derive_seed, sample, threshold_estimate
from .special import eta_explicit, eta_recursive, pairing_check, psi
from .subspace import enumerate_grassmannian


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit_seconds: float

    @property
    def within_budget(self) -> bool:
        return self.seconds < self.limit_seconds

    def line(self) -> str:
        status = "PASS" if self.passed and self.within_budget else "FAIL"
        return (f"[criterion {self.number:2d}] {status}  {self.name}: "
                f"{self.detail} [{self.seconds:.1f}s / {self.limit_seconds:.0f}s]")


def _run(number: int, name: str, limit: float,
         fn: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.time()
    try:
        ok, detail = fn()
    except QgrassError as exc:
        ok, detail = False, f"rejected: {exc}"
    return CriterionResult(number=number, name=name, passed=ok, detail=detail,
                           seconds=time.time() - t0, limit_seconds=limit)


def criterion_1() -> CriterionResult:
    def body():
        from .chains import d_squared_defect

        for n in range(2, 6):
            for k in range(2, n + 1):
                if d_squared_defect(n, k, 2, 3) != 0:
                    return False, f"double boundary nonzero at (n={n},k={k})"
        bad = d_squared_defect(4, 2, 2, 2)
        if bad == 0:
            return False, "double boundary unexpectedly zero over Z/2"
        return True, "zero over Z/3 for n<=5, scalar 1 over Z/2"

    return _run(1, "double-boundary criterion", 5, body)


def criterion_2() -> CriterionResult:
    def body():
        from .chains import heisenberg_defect

        got1 = heisenberg_defect(5, 1, 2, 3)
        got2 = heisenberg_defect(5, 2, 2, 3)
        got3 = heisenberg_defect(3, 1, 2, 5)
        ok = got1 == 2 and got2 == 1 and got3 == 2
        return ok, f"lambda = {got1},{got2} over Z/3 (want -1,+1) and {got3} over Z/5 (want q^k=2)"

    return _run(2, "walk identity", 10, body)


def criterion_3() -> CriterionResult:
    def body():
        r5 = homology_dims(5, 2, 3)
        if r5.dim_h != [0] * 6:
            return False, f"(5,2,3) dims {r5.dim_h}"
        r4 = homology_dims(4, 2, 3)
        euler4 = 1 - 15 + 35 - 15 + 1
        if r4.dim_h != [0, 0, euler4, 0, 0]:
            return False, f"(4,2,3) dims {r4.dim_h}"
        if r4.euler_characteristic() != euler4:
            return False, "Euler oracle mismatch at (4,2,3)"
        r43 = homology_dims(4, 3, 2)
        euler43 = 1 - 40 + 130 - 40 + 1
        if r43.dim_h != [0, 0, euler43, 0, 0] or euler43 != 52:
            return False, f"(4,3,2) dims {r43.dim_h}"
        return True, f"(5,2,3) exact; middles 7 and 52 fixed by the Euler oracle"

    return _run(3, "vanishing pattern", 60, body)


def criterion_4() -> CriterionResult:
    def body():
        from .cones import cone_identity_defect

        rng = random.Random(20240)
        ring = ModRing(3)
        b = OrderedBasis.standard(5, 2)
        for k in range(0, 3):  # 2k+1 <= 5
            faces = enumerate_grassmannian(5, k, 2)
            bound = cone_size_bound(k, 2)
            for _ in range(200):
                supp = rng.sample(faces, min(len(faces), rng.randrange(1, 6)))
                x = Chain.build(5, k, 3, 2, [(u, rng.randrange(1, 3)) for u in supp])
                if not cone_identity_defect(b, x, ring).is_zero():
                    return False, f"identity failed at level {k}"
            worst = max(cone(b, Chain.generator(u, 3), ring).support_size()
                        for u in faces)
            if worst > bound:
                return False, f"cone size {worst} exceeds f({k})={bound}"
        return True, f"identity on 200 random chains per level, sizes within f(k) (f(1)={cone_size_bound(1,2)})"

    return _run(4, "cone identity and size bound", 60, body)


def criterion_5() -> CriterionResult:
    def body():
        for (n, k, q, m) in [(5, 2, 2, 3), (5, 1, 2, 5)]:
            gens = small_generators(n, k, q, m)
            if any(g.support_span.dim > 2 * k for g in gens):
                return False, f"support span exceeds 2k at ({n},{k},{q},{m})"
            if not spans_kernel([g.chain for g in gens], n, k, q, m):
                return False, f"family does not span the kernel at ({n},{k},{q},{m})"
        return True, "families span ker(boundary), supports inside 2k dims"

    return _run(5, "compact kernel generators", 120, body)


def criterion_6() -> CriterionResult:
    def body():
        ring = {2: ModRing(3), 3: ModRing(4)}
        for q in (2, 3):
            m = q + 1
            for n in (1, 2, 3):
                rec = eta_recursive(n, q, m)
                exp = eta_explicit(n, q, m)
                if rec != exp:
                    return False, f"recursive != explicit at n={n}, q={q}"
                if not boundary(rec, ring[q]).is_zero():
                    return False, f"two-cone chain not a cycle at n={n}, q={q}"
        if eta_recursive(2, 2, 3).support_size() != 8:
            return False, "two-cone support at n=2, q=2 is not 8"
        for (n, q, m, want) in [(2, 2, 3, 6), (3, 2, 3, 30), (2, 3, 4, 8)]:
            ps = psi(n, q, m)
            if ps.support_size() != want:
                return False, f"singular-space count {ps.support_size()} != {want}"
            if not boundary(ps, ModRing(m)).is_zero():
                return False, f"signed singular sum not a cycle at n={n}, q={q}"
        rep = pairing_check(2, 2, 3)
        if not (rep.is_unit() and len(rep.common_support) == 1):
            return False, f"pairing {rep.value} with {len(rep.common_support)} common elements"
        return True, "explicit = recursive (n<=3, q in {2,3}); cycles; counts 8/6/30/8; unit pairing"

    return _run(6, "middle-cycle suite", 120, body)


def criterion_7() -> CriterionResult:
    def body():
        ring = ModRing(3)
        for k in range(1, 5):
            for u in enumerate_grassmannian(4, k, 2):
                x = Chain.generator(u, 3)
                if perp_chain(boundary(x, ring)) != coboundary(perp_chain(x), ring):
                    return False, f"duality fails at a level-{k} generator"
        for n in (4, 5):
            hom = homology_dims(n, 2, 3)
            coh = cohomology_dims(n, 2, 3)  # raises internally on mismatch
            for t in range(n + 1):
                if coh.dim_h[t] != hom.dim_h[n - t]:
                    return False, f"dim H^{t} != dim H_{n - t} at n={n}"
        return True, "perp intertwines boundary/coboundary; H^t = H_(n-t) for n=4,5"

    return _run(7, "perp duality", 30, body)


def criterion_8() -> CriterionResult:
    def body():
        rep = expansion_constant(3, 1, 2, 3)
        if rep.h_coboundary < Fraction(1, 6):
            return False, f"h = {rep.h_coboundary} below the cone bound 1/6"
        verdict = small_set_bound_check(4, 1, 2, 3, trials=1000, seed=20248)
        if verdict.violations:
            return False, f"{verdict.violations} small-set violations"
        return True, (f"exact h = {rep.h_coboundary} >= 1/6 over {rep.scanned} cochains; "
                      f"0/{verdict.trials} small-set violations")

    return _run(8, "expansion constants", 600, body)


def criterion_9() -> CriterionResult:
    def body():
        ic3 = independence_complex(3, 2, 2)
        if ic3.face_count_formula(1) != 7 or ic3.face_count_formula(2) != 42:
            return False, "face-count formula mismatch at n=3"
        ic4 = independence_complex(4, 2, 2)
        basis = standard_basis_lines(ic4)
        for f in [Face()] + list(ic4.faces[1]):  # levels < n/2 = 2
            if not verify_cone_identity(ic4, f, basis):
                return False, f"simplicial cone identity fails on {set(f)}"
        cache = SimplicialConeCache(ic4, basis)
        for lvl, faces in [(0, [Face()]), (1, ic4.faces[1])]:
            worst = max(len(cache.of_face(f)) for f in faces)
            if worst > simplicial_cone_sizes_bound(lvl):
                return False, f"cone size {worst} over bound at level {lvl}"
        sp = local_sparsity(3, 2, 2)
        sp4 = local_sparsity(4, 2, 2)
        if not (sp.ok and sp4.ok):
            return False, f"sparsity over bound: {sp.max_intersecting}/{sp.bound}, " \
                          f"{sp4.max_intersecting}/{sp4.bound}"
        return True, (f"counts 7/42; cone identity on all low faces of G_4; "
                      f"sparsity {sp.max_intersecting} <= {sp.bound} (n=3), "
                      f"{sp4.max_intersecting} <= {sp4.bound} (n=4)")

    return _run(9, "independence complex", 60, body)


def criterion_10() -> CriterionResult:
    def body():
        n, k, q, coef = 4, 1, 2, 3
        seed, trials = 777, 500
        grid = [round(0.05 * i, 2) for i in range(1, 20)]
        tester = ConnectivityTester(n, k, q, coef)
        connected_at: dict[float, int] = {p: 0 for p in grid}
        for t in range(trials):
            s = derive_seed(seed, t)
            prev_connected = False
            prev_included: set[int] = set()
            for p in grid:
                x = sample(n, k, q, p, s)
                inc = set(x.included)
                if not prev_included <= inc:
                    return False, "coupled samples are not nested"
                prev_included = inc
                conn = tester.is_connected(x)
                if tester.uncovered(x) and conn:
                    return False, "uncovered face on a connected sample"
                if prev_connected and not conn:
                    return False, "connectivity lost as faces were added"
                prev_connected = prev_connected or conn
                if conn:
                    connected_at[p] += 1
        lo = connected_at[grid[0]] / trials
        hi = connected_at[grid[-1]] / trials
        if hi - lo <= 0.5:
            return False, f"probability gap {hi - lo:.3f} <= 0.5"
        pstar = threshold_estimate(n, k, q)
        want = math.log(15) / 7
        if not math.isclose(pstar, want, rel_tol=1e-10):
            return False, f"pstar {pstar!r} != ln(15)/7"
        return True, (f"implication and monotone coupling exact on {trials * len(grid)} samples; "
                      f"gap {hi - lo:.3f} > 0.5; pstar = {pstar:.10g}")

    return _run(10, "random-model properties", 600, body)


def criterion_11() -> CriterionResult:
    def body():
        table = enumerate_minimal_connected(3, 1, 2, 3, max_size=3)
        cutoff = theta_threshold(1, 2)
        offenders = table.offenders()
        if offenders:
            rows = "; ".join(f"size {s}, theta {th}, count {c}" for s, th, c in offenders)
            return False, f"buckets above theta_1 = {cutoff}: {rows}"
        return True, f"all buckets with theta > {cutoff} empty"

    return _run(11, "minimal-connected table", 300, body)


def criterion_12() -> CriterionResult:
    def body():
        r3 = restriction_inequality(3, 2, 3)
        r4 = restriction_inequality(4, 2, 3)
        if r3.sampled or r4.sampled:
            return False, "scan unexpectedly fell back to sampling"
        if not (r3.best > 0 and r4.best > 0):
            return False, f"minima {r3.best}, {r4.best} not strictly positive"
        return True, f"minima {r3.best} (n=3) and {r4.best} (n=4), both exhaustive"

    return _run(12, "restriction inequality", 600, body)


ALL_CRITERIA: list[Callable[[], CriterionResult]] = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
    criterion_11, criterion_12,
]


def run_all(echo: Callable[[str], None] = print) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        r = fn()
        echo(r.line())
        results.append(r)
    return results
