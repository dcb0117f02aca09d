"""Symbolic family deciders and constructors for the classified spec families.

Verdicts use fixed family tags:

* ``thm31_a`` / ``thm31_b`` / ``none_developable``: product specs whose graph
  is developable. Case a holds exactly when at least two components are
  exponential (any positions); case b when every component is a shifted
  power gamma_i (x_i + beta_i)^alpha_i with exponent sum 1.
* ``thm41_a`` / ``thm41_b`` / ``none_allen_singular``: outer-composed product
  specs whose bordered (Allen) matrix is singular. Case a needs two or more
  exponential inner components; case b all shifted-power inner components
  with exponent sum 0.
* ``thm51_a`` / ``thm51_b`` / ``thm51_c`` / ``none_ces``: specs with one
  constant substitution elasticity everywhere. Case a is an outer-composed
  Cobb-Douglas (sigma = 1), case b an outer-composed CES sum with exponent
  (sigma-1)/sigma (sigma != 1), case c the two-variable product of
  ln(x_i)^mu_i with 1/mu_1 + 1/mu_2 = 0 (sigma = 1). The printed case-c
  shape without the reciprocal-sum constraint does NOT have constant
  elasticity and is rejected with an explanatory note.

Classification is purely symbolic; the numeric confirmations live in
`geometry.is_developable`, `elasticity.ces_probe` and `check_corollary42`.
Symbolic sum constraints are tested to 1e-12 absolute, tight enough to
separate user intent from float noise in exact decimals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import SpecError, ValidationError
from .funcspec import (
    Acms,
    Composite,
    ExpFn,
    FunctionSpec,
    Homothetical,
    Identity,
    LogPowFn,
    OuterFn,
    PowFn,
)
from .geometry import det_scale, gauss_kronecker
from .elasticity import bordered_hessian
from .sampling import points_loguniform

#: Absolute tolerance for symbolic parameter constraints (sum of exponents).
PARAM_TOL = 1e-12


@dataclass(frozen=True)
class ClassificationVerdict:
    """Family decision plus the machine-checkable certificate behind it."""

    family: str
    certificate: dict = field(default_factory=dict)
    notes: str = ""


def _exp_indices(components) -> list:
    return [k + 1 for k, c in enumerate(components) if isinstance(c, ExpFn)]


def _all_pow(components) -> bool:
    return all(isinstance(c, PowFn) for c in components)


def classify_developable(spec: FunctionSpec) -> ClassificationVerdict:
    """Decide symbolically whether a product spec's graph is developable.

    Case a: two or more exponential components at any indices. Case b: all
    components shifted powers with sum of exponents equal to 1 (to 1e-12).
    Anything else is ``none_developable``. No sampling is involved.
    """
    if not isinstance(spec, Homothetical):
        raise SpecError(f"developability classification needs a homothetical spec, "
                        f"got {spec.kind}")
    exp_idx = _exp_indices(spec.components)
    if len(exp_idx) >= 2:
        return ClassificationVerdict("thm31_a", {"exp_indices": exp_idx})
    if _all_pow(spec.components):
        alphas = [c.alpha for c in spec.components]
        total = math.fsum(alphas)
        if abs(total - 1.0) <= PARAM_TOL:
            return ClassificationVerdict("thm31_b",
                                         {"alphas": alphas, "alpha_sum": total})
        return ClassificationVerdict(
            "none_developable", {"alphas": alphas, "alpha_sum": total},
            notes=f"power exponents sum to {total!r}, not 1")
    return ClassificationVerdict(
        "none_developable", {"exp_indices": exp_idx},
        notes="fewer than two exponential components and not all components "
              "are shifted powers")


def classify_allen_singular(spec: FunctionSpec) -> ClassificationVerdict:
    """Decide symbolically whether a composite spec's bordered matrix is singular.

    Case a: two or more exponential inner components. Case b: all inner
    components shifted powers with exponent sum 0 (to 1e-12). Anything else
    is ``none_allen_singular``.
    """
    if not isinstance(spec, Composite):
        raise SpecError(f"Allen-singularity classification needs a composite spec, "
                        f"got {spec.kind}")
    exp_idx = _exp_indices(spec.components)
    if len(exp_idx) >= 2:
        return ClassificationVerdict("thm41_a", {"exp_indices": exp_idx})
    if _all_pow(spec.components):
        alphas = [c.alpha for c in spec.components]
        total = math.fsum(alphas)
        if abs(total) <= PARAM_TOL:
            return ClassificationVerdict("thm41_b",
                                         {"alphas": alphas, "alpha_sum": total})
        return ClassificationVerdict(
            "none_allen_singular", {"alphas": alphas, "alpha_sum": total},
            notes=f"power exponents sum to {total!r}, not 0")
    return ClassificationVerdict(
        "none_allen_singular", {"exp_indices": exp_idx},
        notes="fewer than two exponential inner components and not all inner "
              "components are shifted powers")


def _is_cobb_douglas(components) -> bool:
    return _all_pow(components) and all(c.beta == 0.0 for c in components)


def _is_pure_log(components) -> bool:
    return all(isinstance(c, LogPowFn) and c.a == 0.0 and c.b == 1.0
               for c in components)


def classify_ces(spec: FunctionSpec) -> ClassificationVerdict:
    """Decide symbolically whether a spec has one constant elasticity everywhere.

    Product specs are treated as identity-outer composites. CES (acms) specs
    report sigma = 1/(1 - rho).
    """
    if isinstance(spec, Acms):
        if spec.rho == 1.0:
            return ClassificationVerdict(
                "none_ces", {"rho": spec.rho},
                notes="rho = 1 makes the substitution measure singular "
                      "(perfect substitutes)")
        sigma = 1.0 / (1.0 - spec.rho)
        return ClassificationVerdict("thm51_b", {"rho": spec.rho, "sigma": sigma})
    if isinstance(spec, (Homothetical, Composite)):
        comps = spec.components
        if _is_cobb_douglas(comps):
            return ClassificationVerdict(
                "thm51_a", {"alphas": [c.alpha for c in comps], "sigma": 1.0})
        if _is_pure_log(comps):
            mus = [c.m for c in comps]
            if len(mus) == 2 and abs(1.0 / mus[0] + 1.0 / mus[1]) <= PARAM_TOL:
                return ClassificationVerdict("thm51_c", {"mus": mus, "sigma": 1.0})
            return ClassificationVerdict(
                "none_ces", {"mus": mus},
                notes="matches the log-power shape but violates the derived "
                      "constraint (two variables with 1/mu_1 + 1/mu_2 = 0); "
                      "such specs do not have constant elasticity")
        return ClassificationVerdict("none_ces", notes="components match no "
                                     "constant-elasticity family")
    raise SpecError(f"constant-elasticity classification got unknown kind {spec!r}")


def make_thm31_family(case: str, components: Sequence | None = None,
                      alphas: Sequence[float] | None = None,
                      betas: Sequence[float] | None = None,
                      gamma: float = 1.0) -> Homothetical:
    """Construct a member of a developable product family.

    Case "a" takes a full component list containing at least two exponential
    components. Case "b" takes nonzero exponents summing to 1 (to 1e-12),
    optional shifts (default 0) and a nonzero overall gamma on the first
    component.
    """
    if case == "a":
        if components is None:
            raise ValidationError("case a needs an explicit component list")
        spec = Homothetical(tuple(components))
        if len(_exp_indices(spec.components)) < 2:
            raise ValidationError("case a needs at least two exponential components")
        return spec
    if case == "b":
        if alphas is None:
            raise ValidationError("case b needs the exponent list")
        alphas = [float(a) for a in alphas]
        if any(a == 0.0 for a in alphas):
            raise ValidationError("case b exponents must all be nonzero")
        total = math.fsum(alphas)
        if abs(total - 1.0) > PARAM_TOL:
            raise ValidationError(f"case b exponents must sum to 1, got {total!r}")
        if gamma == 0.0:
            raise ValidationError("gamma must be nonzero")
        betas = [0.0] * len(alphas) if betas is None else [float(b) for b in betas]
        if len(betas) != len(alphas):
            raise ValidationError("betas and alphas must have the same length")
        comps = [PowFn(gamma=float(gamma), beta=betas[0], alpha=alphas[0])]
        comps.extend(PowFn(gamma=1.0, beta=b, alpha=a)
                     for a, b in zip(alphas[1:], betas[1:]))
        return Homothetical(tuple(comps))
    raise ValidationError(f"unknown case {case!r}, expected 'a' or 'b'")


def make_thm41_family(case: str, components: Sequence | None = None,
                      outer: OuterFn = Identity(),
                      alphas: Sequence[float] | None = None,
                      betas: Sequence[float] | None = None,
                      gamma: float = 1.0) -> Composite:
    """Construct a composite spec whose bordered (Allen) matrix is singular.

    Case "a" wraps a component list containing at least two exponential
    components; case "b" builds shifted-power inner components with exponent
    sum 0 (to 1e-12).
    """
    if case == "a":
        if components is None:
            raise ValidationError("case a needs an explicit component list")
        spec = Composite(outer, tuple(components))
        if len(_exp_indices(spec.components)) < 2:
            raise ValidationError("case a needs at least two exponential components")
        return spec
    if case == "b":
        if alphas is None:
            raise ValidationError("case b needs the exponent list")
        alphas = [float(a) for a in alphas]
        if any(a == 0.0 for a in alphas):
            raise ValidationError("case b exponents must all be nonzero")
        total = math.fsum(alphas)
        if abs(total) > PARAM_TOL:
            raise ValidationError(f"case b exponents must sum to 0, got {total!r}")
        if gamma == 0.0:
            raise ValidationError("gamma must be nonzero")
        betas = [0.0] * len(alphas) if betas is None else [float(b) for b in betas]
        if len(betas) != len(alphas):
            raise ValidationError("betas and alphas must have the same length")
        comps = [PowFn(gamma=float(gamma), beta=betas[0], alpha=alphas[0])]
        comps.extend(PowFn(gamma=1.0, beta=b, alpha=a)
                     for a, b in zip(alphas[1:], betas[1:]))
        return Composite(outer, tuple(comps))
    raise ValidationError(f"unknown case {case!r}, expected 'a' or 'b'")


def make_thm51_family(case: str, *, alphas: Sequence[float] | None = None,
                      gamma: float = 1.0, outer: OuterFn = Identity(),
                      sigma: float | None = None,
                      betas: Sequence[float] | None = None, d: float = 1.0,
                      mu: Sequence[float] | None = None) -> FunctionSpec:
    """Construct a constant-elasticity family member.

    Case "a": outer-composed Cobb-Douglas (sigma = 1). Case "b":
    outer-composed CES with exponent rho = (sigma-1)/sigma for sigma > 0,
    sigma != 1. Case "c": two log-power components ln(x_i)^mu_i with
    mu_2 = -mu_1 (sigma = 1); the constructor enforces the reciprocal-sum
    constraint because the unconstrained shape is not constant-elasticity.
    """
    if case == "a":
        if alphas is None:
            raise ValidationError("case a needs the exponent list")
        inner = [PowFn(gamma=float(gamma), beta=0.0, alpha=float(alphas[0]))]
        inner.extend(PowFn(gamma=1.0, beta=0.0, alpha=float(a)) for a in alphas[1:])
        if gamma <= 0.0:
            raise ValidationError("case a needs gamma > 0")
        return Composite(outer, tuple(inner))
    if case == "b":
        if sigma is None:
            raise ValidationError("case b needs sigma")
        sigma = float(sigma)
        if sigma == 1.0:
            raise ValidationError("case b needs sigma != 1 (sigma = 1 is case a)")
        if sigma <= 0.0:
            raise ValidationError("case b needs sigma > 0 so that rho < 1")
        if betas is None:
            raise ValidationError("case b needs the beta weights")
        rho = (sigma - 1.0) / sigma
        return Acms(gamma=float(gamma), betas=tuple(float(b) for b in betas),
                    rho=rho, d=float(d), outer=outer)
    if case == "c":
        if mu is None:
            raise ValidationError("case c needs the mu pair")
        mus = [float(m) for m in mu]
        if len(mus) != 2:
            raise ValidationError("case c is a two-variable family")
        if any(m == 0.0 for m in mus):
            raise ValidationError("case c exponents must be nonzero")
        if abs(1.0 / mus[0] + 1.0 / mus[1]) > PARAM_TOL:
            raise ValidationError(
                f"case c needs 1/mu_1 + 1/mu_2 = 0, got mu = {tuple(mus)!r}")
        return Composite(outer, (LogPowFn(a=0.0, b=1.0, m=mus[0]),
                                 LogPowFn(a=0.0, b=1.0, m=mus[1])))
    raise ValidationError(f"unknown case {case!r}, expected 'a', 'b' or 'c'")


@dataclass(frozen=True)
class Corollary42Report:
    """Joint zero test of curvature and bordered determinant over samples."""

    gk_all_zero: bool
    allen_all_singular: bool
    equivalent: bool
    max_abs_gk: float
    max_rel_bordered_det: float


def check_corollary42(spec: FunctionSpec, sample_points=None, tol: float = 1e-8,
                      seed: int = 42) -> Corollary42Report:
    """Check that zero curvature and a singular bordered matrix coincide.

    Applies to product specs with at least one exponential component (the
    regime where one component log-derivative ratio is constant). Evaluates
    |G| <= tol and scale-relative |det H^B| <= tol at every sample and
    reports whether the two predicates agree.
    """
    if not isinstance(spec, Homothetical):
        raise SpecError(f"this check needs a homothetical spec, got {spec.kind}")
    if not _exp_indices(spec.components):
        raise SpecError("this check needs at least one exponential component")
    if sample_points is None:
        sample_points = points_loguniform(spec.n, 20, seed)
    sample_points = list(sample_points)
    if not sample_points:
        raise ValidationError("needs at least one sample point")
    max_gk = 0.0
    max_rel_det = 0.0
    for p in sample_points:
        max_gk = max(max_gk, abs(gauss_kronecker(spec, p).gk_curvature))
        border, det = bordered_hessian(spec, p)
        scale = det_scale(border)
        rel = abs(det) / scale if scale > 0.0 else 0.0
        max_rel_det = max(max_rel_det, rel)
    gk_zero = max_gk <= tol
    allen_singular = max_rel_det <= tol
    return Corollary42Report(gk_all_zero=gk_zero, allen_all_singular=allen_singular,
                             equivalent=gk_zero == allen_singular,
                             max_abs_gk=max_gk, max_rel_bordered_det=max_rel_det)
