"""Named verification checks aggregating the package's numeric guarantees.

Every check is seeded and deterministic: the seed changes which specs and
points are sampled, never the expected outcome. ``tol`` feeds the zero tests
(family certificates use tol/10, matching the calibrated defaults of 1e-8
and 1e-9); noise-floor thresholds on the genuinely-nonzero sides stay fixed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .classify import check_corollary42, make_thm31_family, make_thm41_family, make_thm51_family
from .elasticity import bordered_hessian, ces_probe, hicks
from .errors import AllenUndefined, HicksUndefined, ZeroGradientError
from .funcspec import (
    Acms,
    Composite,
    Homothetical,
    Identity,
    Log,
    LogPowFn,
    PowFn,
    Power,
    evaluate,
    make_acms,
    make_cobb_douglas,
)
from .elasticity import allen as allen_elasticity
from .geometry import (
    det_scale,
    gauss_kronecker,
    hessian_det_closed,
    hessian_det_direct,
    is_developable,
    plu_det,
)
from .jets import fd_jet, jet_multivariate
from .sampling import points_loguniform, random_component, random_composite, random_homothetical, random_outer


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name=name, passed=passed, detail=detail)


def _random_acms(rng: random.Random, n: int = 2) -> Acms:
    rho = rng.choice((-1.0, -0.5, 0.25, 0.5, 0.75)) + rng.uniform(-0.05, 0.05)
    if abs(rho) < 0.1:
        rho = 0.25
    return Acms(gamma=rng.uniform(0.5, 2.0),
                betas=tuple(rng.uniform(0.5, 2.0) for _ in range(n)),
                rho=rho, d=rng.uniform(0.5, 2.0), outer=random_outer(rng))


def check_det_closed_vs_lu(seed: int = 42, tol: float = 1e-8,
                           cases: int = 200) -> CheckResult:
    """Closed-form product-Hessian determinant against the LU oracle."""
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(cases):
        spec = random_homothetical(rng, n_range=(2, 5))
        point = points_loguniform(spec.n, 1, rng)[0]
        direct = hessian_det_direct(spec, point)
        closed = hessian_det_closed(spec, point)
        gap = abs(closed - direct) / max(1.0, abs(direct))
        worst = max(worst, gap)
    return _result("det_closed_vs_lu", worst <= tol,
                   f"max scaled gap {worst:.3e} over {cases} specs (limit {tol:.1e})")


def _random_case_a_components(rng: random.Random, positive: bool = False):
    n = rng.randint(2, 4)
    comps = [random_component(rng, positive=positive) for _ in range(n)]
    slots = list(range(n))
    rng.shuffle(slots)
    for s in slots[:2]:
        comps[s] = random_component(rng, kind="exp", positive=positive)
    return tuple(comps)


def _random_unit_sum_alphas(rng: random.Random, n: int, target: float = 1.0):
    while True:
        head = [rng.choice((-1.0, 1.0)) * rng.uniform(0.3, 1.5) for _ in range(n - 1)]
        last = target - math.fsum(head)
        if 0.05 <= abs(last) <= 2.5:
            return head + [last]


def _flatness_evidence(spec, points):
    """(max |G| via both determinant routes, max scale-relative LU residual).

    A flat certificate must hold three ways: the closed-form curvature, the
    LU-oracle curvature, and the LU determinant read as numerically zero at
    the scale of the Hessian itself. The last carries the honest elimination
    noise floor (a few units of machine epsilon) that a sub-float tolerance
    is expected to trip over.
    """
    worst_g = 0.0
    worst_rel = 0.0
    for p in points:
        jet = jet_multivariate(spec, p)
        det_lu = plu_det(jet.hessian)
        omega_pow = (1.0 + float(np.dot(jet.gradient, jet.gradient))) ** ((jet.n + 2) / 2.0)
        worst_g = max(worst_g,
                      abs(gauss_kronecker(spec, p).gk_curvature),
                      abs(det_lu) / omega_pow)
        scale = det_scale(jet.hessian)
        if scale > 0.0:
            worst_rel = max(worst_rel, abs(det_lu) / scale)
    return worst_g, worst_rel


def check_developable_certificates(seed: int = 42, tol: float = 1e-8) -> CheckResult:
    """Constructed developable families are numerically flat; worked control."""
    cert_tol = tol / 10.0
    rng = random.Random(seed)
    worst_g = 0.0
    worst_rel = 0.0
    for case in range(20):
        if case < 10:
            spec = make_thm31_family("a", components=_random_case_a_components(rng))
        else:
            n = rng.randint(2, 4)
            spec = make_thm31_family("b", alphas=_random_unit_sum_alphas(rng, n),
                                     betas=[rng.uniform(0.0, 1.0) for _ in range(n)],
                                     gamma=rng.uniform(0.5, 2.0))
        g, rel = _flatness_evidence(spec, points_loguniform(spec.n, 50, rng))
        worst_g = max(worst_g, g)
        worst_rel = max(worst_rel, rel)
    control = Homothetical((PowFn(1.0, 0.0, 2.0), PowFn(1.0, 0.0, 3.0)))
    rec = gauss_kronecker(control, (1.0, 1.0))
    control_ok = (abs(rec.hessian_det - (-24.0)) <= 1e-12 * 24.0
                  and abs(rec.omega ** 2 - 14.0) <= 1e-12 * 14.0
                  and abs(rec.gk_curvature - (-24.0 / 196.0)) <= 1e-12 * (24.0 / 196.0))
    passed = worst_g <= cert_tol and worst_rel <= cert_tol and control_ok
    return _result("developable_certificates", passed,
                   f"max |G| {worst_g:.3e}, max det residual {worst_rel:.3e} over 20 "
                   f"constructed specs (limit {cert_tol:.1e}); worked control "
                   f"{'ok' if control_ok else 'FAILED'}")


def check_cobb_douglas_curvature_control(seed: int = 42, tol: float = 1e-8) -> CheckResult:
    """Unit exponent sum is flat, sums 0.8 and 1.2 are visibly curved."""
    cert_tol = tol / 10.0
    rng = random.Random(seed)
    details = []
    passed = True
    for total in (0.8, 1.2):
        spec = make_cobb_douglas(1.0, (total / 2.0, total / 2.0))
        _, max_g = is_developable(spec, points_loguniform(2, 50, rng))
        details.append(f"sum {total}: max|G| {max_g:.3e}")
        passed = passed and max_g > 1e-6
    spec = make_cobb_douglas(1.0, (0.5, 0.5))
    max_g, max_rel = _flatness_evidence(spec, points_loguniform(2, 50, rng))
    details.append(f"sum 1.0: max|G| {max_g:.3e}, det residual {max_rel:.3e}")
    passed = passed and max_g <= cert_tol and max_rel <= cert_tol
    return _result("cobb_douglas_curvature_control", passed, "; ".join(details))


def check_ces_constant_sigma(seed: int = 42, tol: float = 1e-8) -> CheckResult:
    """Cobb-Douglas probes to sigma 1; CES probes to sigma = 1/(1-rho)."""
    rng = random.Random(seed)
    details = []
    passed = True
    for _ in range(3):
        n = rng.randint(2, 3)
        alphas = [rng.choice((-1.0, 1.0)) * rng.uniform(0.3, 1.5) for _ in range(n)]
        spec = make_cobb_douglas(rng.uniform(0.5, 3.0), alphas)
        verdict = ces_probe(spec, points_loguniform(n, 20, rng), tol=tol)
        passed = passed and verdict.is_constant and abs(verdict.sigma - 1.0) <= tol
        details.append(f"cd sigma {verdict.sigma:.9f} spread {verdict.spread:.2e}")
    for rho, expected in ((-1.0, 0.5), (0.5, 2.0), (0.75, 4.0)):
        spec = make_acms(1.0, (1.0, 1.0), rho, rng.uniform(0.5, 2.0))
        verdict = ces_probe(spec, points_loguniform(2, 20, rng), tol=tol)
        passed = (passed and verdict.is_constant
                  and abs(verdict.sigma - expected) <= tol)
        details.append(f"ces rho {rho}: sigma {verdict.sigma:.9f}")
    return _result("ces_constant_sigma", passed, "; ".join(details))


def check_hicks_outer_invariance(seed: int = 42, tol: float = 1e-8,
                                 cases: int = 50) -> CheckResult:
    """H_ij is unchanged by smooth monotone outer transforms."""
    rng = random.Random(seed)
    outers = (Power(3.0), Power(0.5), Log())
    worst = 0.0
    accepted = 0
    attempts = 0
    while accepted < cases and attempts < cases * 40:
        attempts += 1
        inner = random_homothetical(rng, n_range=(2, 3), positive=True)
        points = points_loguniform(inner.n, 2, rng)
        try:
            base = {(p, i, j): hicks(inner, p, i, j)
                    for p in points
                    for i in range(1, inner.n + 1) for j in range(i + 1, inner.n + 1)}
        except (HicksUndefined, ZeroGradientError):
            continue
        if any(abs(v) > 50.0 for v in base.values()):
            continue
        accepted += 1
        for outer in outers:
            wrapped = Composite(outer, inner.components)
            for (p, i, j), h_inner in base.items():
                worst = max(worst, abs(hicks(wrapped, p, i, j) - h_inner))
    passed = accepted == cases and worst <= tol
    return _result("hicks_outer_invariance", passed,
                   f"max |H(F.g) - H(g)| {worst:.3e} over {accepted} specs x 3 outers "
                   f"(limit {tol:.1e})")


def _random_two_var_spec(rng: random.Random, kind_roll: int):
    if kind_roll == 0:
        return random_homothetical(rng, n=2)
    if kind_roll == 1:
        return random_composite(rng, n=2)
    return _random_acms(rng, n=2)


def check_hicks_allen_two_var(seed: int = 42, tol: float = 1e-8,
                              cases: int = 100) -> CheckResult:
    """Two-variable Hicks and Allen elasticities coincide wherever defined."""
    rng = random.Random(seed)
    worst = 0.0
    compared = 0
    for k in range(cases):
        spec = _random_two_var_spec(rng, k % 3)
        point = points_loguniform(2, 1, rng)[0]
        try:
            h = hicks(spec, point, 1, 2)
            a = allen_elasticity(spec, point, 1, 2)
        except (HicksUndefined, AllenUndefined, ZeroGradientError):
            continue
        compared += 1
        worst = max(worst, abs(h - a) / max(1.0, abs(h)))
    passed = compared >= cases // 2 and worst <= tol
    return _result("hicks_allen_two_var", passed,
                   f"max scaled |H - A| {worst:.3e} over {compared}/{cases} defined "
                   f"cases (limit {tol:.1e})")


def check_allen_singular_certificates(seed: int = 42, tol: float = 1e-8) -> CheckResult:
    """Constructed singular-bordered families are numerically singular; control."""
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(5):
        spec = make_thm41_family("a",
                                 components=_random_case_a_components(rng, positive=True),
                                 outer=random_outer(rng))
        for p in points_loguniform(spec.n, 20, rng):
            border, det = bordered_hessian(spec, p)
            worst = max(worst, abs(det) / det_scale(border))
    for _ in range(5):
        n = rng.randint(2, 4)
        spec = make_thm41_family("b", alphas=_random_unit_sum_alphas(rng, n, target=0.0),
                                 betas=[rng.uniform(0.0, 1.0) for _ in range(n)],
                                 gamma=rng.uniform(0.5, 2.0), outer=random_outer(rng))
        for p in points_loguniform(spec.n, 20, rng):
            border, det = bordered_hessian(spec, p)
            worst = max(worst, abs(det) / det_scale(border))
    control = Composite(Identity(), (PowFn(1.0, 0.0, 1.0), PowFn(1.0, 0.0, 1.0)))
    _, det = bordered_hessian(control, (1.0, 1.0))
    control_ok = abs(det - 2.0) <= 1e-12 * 2.0
    passed = worst <= tol and control_ok
    return _result("allen_singular_certificates", passed,
                   f"max scale-relative |det| {worst:.3e} over 10 constructed specs "
                   f"(limit {tol:.1e}); control det {det!r}")


def check_curvature_allen_equivalence(seed: int = 42, tol: float = 1e-8,
                                      cases: int = 100) -> CheckResult:
    """With an exponential component, zero curvature and singular bordered
    matrix occur for exactly the same specs."""
    rng = random.Random(seed)
    disagreements = 0
    margin = math.inf
    for _ in range(cases):
        spec = random_homothetical(rng, n_range=(2, 3), min_exp=rng.choice((1, 1, 2)))
        report = check_corollary42(spec, points_loguniform(spec.n, 20, rng), tol=tol)
        if not report.equivalent:
            disagreements += 1
        if report.gk_all_zero:
            margin = min(margin, tol / max(report.max_abs_gk, 1e-300))
        else:
            margin = min(margin, report.max_abs_gk / tol)
    return _result("curvature_allen_equivalence", disagreements == 0,
                   f"{disagreements} disagreements over {cases} specs; "
                   f"min threshold margin {margin:.1e}x")


def check_log_component_ces(seed: int = 42, tol: float = 1e-8) -> CheckResult:
    """The constrained log-power pair has sigma 1; the unconstrained shape
    is rejected with the frozen witness values."""
    rng = random.Random(seed)
    good = make_thm51_family("c", mu=(1.0, -1.0))
    e = math.e
    pts = points_loguniform(2, 18, rng, lo=1.5, hi=3.0) + [(e, e * e), (e * e, e)]
    verdict = ces_probe(good, pts, tol=tol)
    good_ok = verdict.is_constant and abs(verdict.sigma - 1.0) <= tol
    worst = max(abs(hicks(good, p, 1, 2) - 1.0) for p in pts)
    bad = Homothetical((LogPowFn(0.0, 1.0, 1.0), LogPowFn(0.0, 1.0, 1.0)))
    bad_pts = points_loguniform(2, 18, rng, lo=1.5, hi=3.0) + [(e, e), (e * e, e)]
    bad_verdict = ces_probe(bad, bad_pts, tol=tol)
    w1 = hicks(bad, (e, e), 1, 2)
    w2 = hicks(bad, (e * e, e), 1, 2)
    witness_ok = abs(w1 - 0.5) <= 1e-9 and abs(w2 - 0.6) <= 1e-9
    bad_ok = (not bad_verdict.is_constant) and bad_verdict.spread >= 0.1
    passed = good_ok and worst <= tol and bad_ok and witness_ok
    return _result("log_component_ces", passed,
                   f"constrained: max |H-1| {worst:.3e}; unconstrained spread "
                   f"{bad_verdict.spread:.3f}, witnesses {w1!r}, {w2!r}")


def _norm_rel_gap(approx: np.ndarray, exact: np.ndarray) -> float:
    scale = max(1.0, float(np.max(np.abs(exact))))
    return float(np.max(np.abs(approx - exact))) / scale


def check_jets_vs_finite_difference(seed: int = 42, tol: float = 1e-8,
                                    cases: int = 200) -> CheckResult:
    """Structured jets against the central-difference oracle."""
    del tol  # accuracy floors are intrinsic to the stencils, not zero tests
    rng = random.Random(seed)
    worst_g = 0.0
    worst_h = 0.0
    for k in range(cases):
        roll = k % 3
        if roll == 0:
            spec = random_homothetical(rng, n_range=(2, 5))
        elif roll == 1:
            spec = random_composite(rng)
        else:
            spec = _random_acms(rng, n=rng.randint(2, 3))
        point = points_loguniform(spec.n, 1, rng)[0]
        exact = jet_multivariate(spec, point)
        approx = fd_jet(lambda p: evaluate(spec, p), point)
        worst_g = max(worst_g, _norm_rel_gap(approx.gradient, exact.gradient))
        worst_h = max(worst_h, _norm_rel_gap(approx.hessian, exact.hessian))
    passed = worst_g <= 1e-6 and worst_h <= 1e-4
    return _result("jets_vs_finite_difference", passed,
                   f"max gradient gap {worst_g:.3e} (limit 1e-06), "
                   f"max Hessian gap {worst_h:.3e} (limit 1e-04) over {cases} cases")


ALL_CHECKS = (
    check_det_closed_vs_lu,
    check_developable_certificates,
    check_cobb_douglas_curvature_control,
    check_ces_constant_sigma,
    check_hicks_outer_invariance,
    check_hicks_allen_two_var,
    check_allen_singular_certificates,
    check_curvature_allen_equivalence,
    check_log_component_ces,
    check_jets_vs_finite_difference,
)


def run_checks(seed: int = 42, tol: float = 1e-8) -> list:
    """Run every named check with one seed and tolerance."""
    return [check(seed=seed, tol=tol) for check in ALL_CHECKS]
