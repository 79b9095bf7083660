"""Identity-verification suites behind the ``verify`` subcommand.

Every suite samples seeded random points (splitmix64, so reports are
bit-reproducible) and checks one family of identities:

    flatness          Levi-Civita curvature tensor vanishes
    egregium          K equals denom * R_2112 / det g (relative tensor)
    codazzi           relative and Levi-Civita Codazzi residuals, plus
                      pairwise agreement of the three Gauss-equation
                      right-hand sides
    umbilic           totally-umbilical classification matches the known
                      answer per catalog entry
    minimal           wave-form and harmonic graphs have zero mean
                      curvature
    sphere-geodesics  integrated autoparallels match closed-form plane
                      sections on spheres of parabolic type

Sampling near the lightlike locus is excluded for the finite-difference
relative-connection suites: the coefficients blow up like 1/denom there
and second-order central differences lose the identities in truncation
noise.  Closeness to the locus is measured in gradient units,
|denom| / max(1, |grad denom|), since a small denom with a steep
gradient means the singular set is a short parameter distance away.
Those suites also difference at a quarter of the base step, which buys
a 16x truncation reduction while staying far above cancellation noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import catalog
from .connection import (
    codazzi_residual,
    curvature_tensors_at,
    denom_at,
    egregium_check,
    gauss_equation_rhs,
)
from .errors import IsoGeoError
from .geodesic import cross_check_sphere_geodesic
from .isotropy import SpaceKind
from .rng import SplitMix64
from .surface import CurvatureClass, SurfacePatch, curvatures_at, frame_at
from .verify_defaults import (
    BASIC_DENOM_GUARD,
    RELATIVE_DENOM_GUARD,
    RELATIVE_FD_FACTOR,
)

SUITES = ("flatness", "egregium", "codazzi", "umbilic", "minimal", "sphere-geodesics")


@dataclass
class CheckResult:
    name: str
    surface: str
    points: int
    max_residual: float
    tolerance: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "surface": self.surface,
            "points": int(self.points),
            "max_residual": float(self.max_residual),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
        }


def verification_patches() -> list[SurfacePatch]:
    """Fixed instantiation of the catalog used by --all-catalog runs.
    The cylindrical sphere is omitted: it is nowhere admissible, so no
    pointwise identity applies (its role is covered by admissibility
    tests)."""
    i3, ip3 = SpaceKind.SIMPLY_ISOTROPIC, SpaceKind.PSEUDO_ISOTROPIC
    return [
        catalog.make("parabolic_sphere", i3, {"p": 2.0}),
        catalog.make("parabolic_sphere", ip3, {"p": 1.5}),
        catalog.make("plane", i3, {"a": 0.3, "b": -0.2, "c": 0.7}),
        catalog.make("plane", ip3, {"a": -0.4, "b": 0.25, "c": -1.0}),
        catalog.make("ruled_nondiag", ip3, {"b": 2.0}),
        catalog.make("helicoid", ip3, {"c": 1.0}),
        catalog.make("revolution", ip3, {"z": "log(u)"}),
        catalog.make(
            "minimal_wave", ip3,
            {"f": "0.3*u^3 - 0.2*u", "g": "0.25*u^3 + 0.1*u^2"},
        ),
        catalog.make("minimal_harmonic", i3, {"f": "exp(u) * sin(v)"}),
    ]


def _label(patch: SurfacePatch) -> str:
    return f"{patch.name}[{patch.kind.value}]"


def _guarded_denom_ok(
    patch: SurfacePatch, u: float, v: float, guard: float
) -> bool:
    """True when the point is far from the lightlike locus in gradient
    units: |denom| >= guard * max(1, |grad denom|)."""
    d0 = denom_at(patch, u, v)
    if abs(d0) < guard:
        return False
    span_u = patch.domain[1] - patch.domain[0]
    span_v = patch.domain[3] - patch.domain[2]
    dp_u = 1e-3 * span_u
    dp_v = 1e-3 * span_v
    gu = (denom_at(patch, u + dp_u, v) - denom_at(patch, u - dp_u, v)) / (2.0 * dp_u)
    gv = (denom_at(patch, u, v + dp_v) - denom_at(patch, u, v - dp_v)) / (2.0 * dp_v)
    return abs(d0) >= guard * max(1.0, math.hypot(gu, gv))


def _sample_points(
    patch: SurfacePatch,
    count: int,
    rng: SplitMix64,
    fd_step: float,
    denom_guard: Optional[float],
) -> list[tuple[float, float]]:
    """Seeded admissible points with stencil room; points violating the
    lightlike guard are redrawn deterministically."""
    u0, u1, v0, v1 = patch.domain
    mu = 0.02 * (u1 - u0) + 2.0 * fd_step
    mv = 0.02 * (v1 - v0) + 2.0 * fd_step
    points: list[tuple[float, float]] = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 200 * count + 200:
            raise IsoGeoError(
                f"could not sample {count} guarded points on {_label(patch)}"
            )
        u = rng.uniform(u0 + mu, u1 - mu)
        v = rng.uniform(v0 + mv, v1 - mv)
        try:
            if denom_guard is None:
                frame_at(patch, u, v)
            elif denom_guard <= BASIC_DENOM_GUARD:
                if abs(denom_at(patch, u, v)) < denom_guard:
                    continue
            elif not _guarded_denom_ok(patch, u, v, denom_guard):
                continue
        except IsoGeoError:
            continue
        points.append((u, v))
    return points


def _per_patch(total: int, n_patches: int) -> int:
    return max(1, math.ceil(total / n_patches))


def suite_flatness(
    patches: list[SurfacePatch], samples: int, seed: int, fd_step: float, tol: float = 1e-6
) -> list[CheckResult]:
    rng = SplitMix64(seed)
    out = []
    n = _per_patch(samples, len(patches))
    for patch in patches:
        worst = 0.0
        pts = _sample_points(patch, n, rng, fd_step, BASIC_DENOM_GUARD)
        for u, v in pts:
            sample = curvature_tensors_at(patch, u, v, fd_step)
            worst = max(worst, float(abs(sample.r_lc).max()))
        out.append(CheckResult("flatness", _label(patch), n, worst, tol, worst <= tol))
    return out


def suite_egregium(
    patches: list[SurfacePatch],
    samples: int,
    seed: int,
    fd_step: float,
    rel_tol: float = 1e-5,
    abs_tol: float = 1e-6,
) -> list[CheckResult]:
    rng = SplitMix64(seed)
    out = []
    n = _per_patch(samples, len(patches))
    step = fd_step * RELATIVE_FD_FACTOR
    for patch in patches:
        worst_rel = 0.0
        worst_abs = 0.0
        n_rel = n_abs = 0
        for u, v in _sample_points(patch, n, rng, step, RELATIVE_DENOM_GUARD):
            res = egregium_check(patch, u, v, step)
            if abs(res.k_extrinsic) > 1e-6:
                worst_rel = max(worst_rel, res.rel_err)
                n_rel += 1
            else:
                worst_abs = max(worst_abs, res.abs_err)
                n_abs += 1
        if n_rel:
            out.append(
                CheckResult("egregium", _label(patch), n_rel, worst_rel, rel_tol, worst_rel <= rel_tol)
            )
        if n_abs:
            out.append(
                CheckResult("egregium_flat", _label(patch), n_abs, worst_abs, abs_tol, worst_abs <= abs_tol)
            )
    return out


def suite_codazzi(
    patches: list[SurfacePatch],
    samples: int,
    seed: int,
    fd_step: float,
    tol: float = 1e-6,
    gauss_tol: float = 1e-8,
) -> list[CheckResult]:
    rng = SplitMix64(seed)
    out = []
    n = _per_patch(samples, len(patches))
    step = fd_step * RELATIVE_FD_FACTOR
    for patch in patches:
        worst_rel = worst_lc = worst_gauss = 0.0
        for u, v in _sample_points(patch, n, rng, step, RELATIVE_DENOM_GUARD):
            res = codazzi_residual(patch, u, v, step)
            worst_rel = max(worst_rel, res.relative)
            worst_lc = max(worst_lc, res.levi_civita)
            rhs1, rhs2, rhs3 = gauss_equation_rhs(patch, u, v)
            worst_gauss = max(
                worst_gauss,
                float(abs(rhs1 - rhs2).max()),
                float(abs(rhs2 - rhs3).max()),
                float(abs(rhs1 - rhs3).max()),
            )
        label = _label(patch)
        out.append(CheckResult("codazzi", label, n, worst_rel, tol, worst_rel <= tol))
        out.append(CheckResult("codazzi_lc", label, n, worst_lc, tol, worst_lc <= tol))
        out.append(
            CheckResult("gauss_rhs", label, n, worst_gauss, gauss_tol, worst_gauss <= gauss_tol)
        )
    return out


UMBILIC_EXPECTATION = {
    "parabolic_sphere": True,
    "plane": True,
    "helicoid": False,
    "ruled_nondiag": False,
}


def suite_umbilic(
    patches: list[SurfacePatch], samples: int, seed: int, fd_step: float
) -> list[CheckResult]:
    rng = SplitMix64(seed)
    out = []
    n = _per_patch(samples, len(patches))
    for patch in patches:
        expected = UMBILIC_EXPECTATION.get(patch.name)
        umbilic_count = 0
        for u, v in _sample_points(patch, n, rng, fd_step, None):
            report = curvatures_at(patch, u, v)
            if report.label is CurvatureClass.UMBILIC:
                umbilic_count += 1
        if expected is None:
            # informational for user-supplied surfaces
            finding = (
                "totally umbilical" if umbilic_count == n
                else "not totally umbilical" if umbilic_count == 0
                else "mixed"
            )
            out.append(
                CheckResult(f"umbilic({finding})", _label(patch), n, 0.0, 0.0, True)
            )
            continue
        mismatches = (n - umbilic_count) if expected else umbilic_count
        name = "umbilic(expected)" if expected else "umbilic(expected-negative)"
        out.append(
            CheckResult(name, _label(patch), n, float(mismatches), 0.0, mismatches == 0)
        )
    return out


def _random_cubic(rng: SplitMix64) -> str:
    c3 = rng.uniform(-0.5, 0.5)
    c2 = rng.uniform(-0.5, 0.5)
    c1 = rng.uniform(-0.5, 0.5)
    return f"{c3!r}*u^3 + {c2!r}*u^2 + {c1!r}*u"


def suite_minimal(
    patches: list[SurfacePatch],
    samples: int,
    seed: int,
    fd_step: float,
    wave_tol: float = 1e-10,
    harmonic_tol: float = 1e-8,
    n_random_waves: int = 5,
) -> list[CheckResult]:
    rng = SplitMix64(seed)
    out = []
    n = _per_patch(samples, max(1, n_random_waves))
    targets = [p for p in patches if p.name in ("minimal_wave", "minimal_harmonic")]
    for k in range(n_random_waves):
        targets.append(
            catalog.make(
                "minimal_wave",
                SpaceKind.PSEUDO_ISOTROPIC,
                {"f": _random_cubic(rng), "g": _random_cubic(rng)},
            )
        )
    for idx, patch in enumerate(targets):
        tol = wave_tol if patch.name == "minimal_wave" else harmonic_tol
        worst = 0.0
        for u, v in _sample_points(patch, n, rng, fd_step, None):
            worst = max(worst, abs(curvatures_at(patch, u, v).H))
        out.append(
            CheckResult("minimal", f"{_label(patch)}#{idx}", n, worst, tol, worst <= tol)
        )
    return out


SPHERE_GEODESIC_CONFIGS = (
    (2.0, 0.0, 0.0, SpaceKind.SIMPLY_ISOTROPIC),
    (1.0, 1.0, 0.0, SpaceKind.SIMPLY_ISOTROPIC),
    (1.0, 1.0, 1.0, SpaceKind.SIMPLY_ISOTROPIC),
    (1.0, 2.0, 0.0, SpaceKind.PSEUDO_ISOTROPIC),
    (1.0, 0.0, 2.0, SpaceKind.PSEUDO_ISOTROPIC),
)


def suite_sphere_geodesics(
    t_end: float = 1.0,
    step: float = 1e-3,
    tol: float = 1e-6,
    parallel_tol: float = 1e-5,
) -> list[CheckResult]:
    out = []
    worst_parallel = 0.0
    for p, a, b, kind in SPHERE_GEODESIC_CONFIGS:
        chk = cross_check_sphere_geodesic(p, a, b, kind, t_end, step)
        worst = max(
            chk.max_deviation,
            chk.integrated_plane_residual,
            chk.integrated_sphere_residual,
            chk.section_plane_residual,
            chk.section_sphere_residual,
        )
        worst_parallel = max(worst_parallel, chk.max_parallel_residual)
        n = round(t_end / step) + 1
        out.append(
            CheckResult(
                "sphere_geodesic",
                f"parabolic_sphere(p={p!r},a={a!r},b={b!r})[{kind.value}]",
                n,
                worst,
                tol,
                worst <= tol and chk.integrated_completed,
            )
        )
    out.append(
        CheckResult(
            "sphere_geodesic_parallel", "all-configs",
            len(SPHERE_GEODESIC_CONFIGS), worst_parallel, parallel_tol,
            worst_parallel <= parallel_tol,
        )
    )
    return out


def run_verify(
    patches: Optional[list[SurfacePatch]],
    suites: list[str],
    samples: int,
    seed: int,
    fd_step: float,
    tol_override: Optional[float] = None,
) -> dict:
    """Run the requested suites and assemble the report dict.  A tolerance
    override replaces every check's default tolerance (blunt, but gives a
    single reproducibility knob)."""
    target = verification_patches() if patches is None else patches
    user_supplied = patches is not None
    checks: list[CheckResult] = []
    for suite in suites:
        if suite == "flatness":
            checks += suite_flatness(target, samples, seed, fd_step)
        elif suite == "egregium":
            checks += suite_egregium(target, samples, seed, fd_step)
        elif suite == "codazzi":
            checks += suite_codazzi(target, samples, seed, fd_step)
        elif suite == "umbilic":
            checks += suite_umbilic(target, samples, seed, fd_step)
        elif suite == "minimal":
            if user_supplied:
                applicable = [
                    p for p in target if p.name in ("minimal_wave", "minimal_harmonic")
                ]
                if applicable:
                    checks += suite_minimal(applicable, samples, seed, fd_step, n_random_waves=0)
            else:
                checks += suite_minimal(target, samples, seed, fd_step)
        elif suite == "sphere-geodesics":
            checks += suite_sphere_geodesics()
        else:
            raise IsoGeoError(f"unknown suite {suite!r}; known: {SUITES}")
    if tol_override is not None:
        for chk in checks:
            chk.tolerance = tol_override
            chk.passed = chk.max_residual <= tol_override
    overall = all(chk.passed for chk in checks)
    return {
        "overall": "pass" if overall else "fail",
        "seed": seed,
        "samples": samples,
        "fd_step": fd_step,
        "suites": list(suites),
        "checks": [chk.to_json() for chk in checks],
    }
