"""Acceptance suite: each test checks one shipped guarantee at its stated
tolerance and prints a PASS/FAIL line (visible with ``pytest -s``)."""

import contextlib
import io
import json

import numpy as np

from genexpr import fd_check, sample_checkable_pairs
from isogeo import catalog, cli
from isogeo import geodesic as geo
from isogeo import surface as srf
from isogeo import verify
from isogeo.geodesic import GeodesicKind
from isogeo.isotropy import Motion, SpaceKind, norm_euclid
from isogeo.rng import SplitMix64

I3 = SpaceKind.SIMPLY_ISOTROPIC
IP3 = SpaceKind.PSEUDO_ISOTROPIC

SEED = 2026
FD = 1e-4


def _report(num: int, ok: bool, desc: str) -> None:
    print(f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} - {desc}")
    assert ok, f"criterion {num:02d} failed: {desc}"


def _five_by_five(patch, lo=-2.0, hi=2.0):
    for i in range(5):
        for j in range(5):
            yield lo + (hi - lo) * i / 4, lo + (hi - lo) * j / 4


def test_criterion_01_parabolic_sphere_curvatures():
    worst = 0.0
    for kind in (I3, IP3):
        for p in (0.5, 1.0, 2.0):
            patch = catalog.make("parabolic_sphere", kind, {"p": p})
            for u, v in _five_by_five(patch):
                rep = srf.curvatures_at(patch, u, v)
                worst = max(worst, abs(rep.K - 1.0 / p**2), abs(rep.H - 1.0 / p))
    _report(
        1, worst <= 1e-10,
        f"sphere K=1/p^2, H=1/p, both spaces, p in {{0.5,1,2}} (max err {worst:.2e})",
    )


def test_criterion_02_helicoid():
    patch = catalog.make("helicoid", IP3, {"c": 1.0})
    ok = True
    for v in (-1.0, -0.3, 0.0, 0.6, 1.2):
        rep = srf.curvatures_at(patch, 2.0, v)
        ok &= abs(rep.K - 0.0625) <= 1e-10
        ok &= abs(rep.H) <= 1e-12
        ok &= rep.label is srf.CurvatureClass.COMPLEX_PRINCIPAL
    _report(2, ok, "helicoid c=1: K(u=2)=0.0625, H=0, complex principal directions")


def test_criterion_03_ruled_shape_operator():
    patch = catalog.make("ruled_nondiag", IP3, {"b": 2.0})
    expected = np.array([[-0.5, 1.0], [0.0, -0.5]])
    ok = True
    for u, v in ((0.0, 0.0), (1.2, -0.7), (-1.5, 0.9)):
        f = srf.frame_at(patch, u, v)
        rep = srf.curvatures_at(patch, u, v)
        ok &= abs(rep.K - 0.25) <= 1e-10
        ok &= abs(rep.H + 0.5) <= 1e-10
        ok &= abs(rep.discriminant) <= 1e-9
        ok &= rep.label is srf.CurvatureClass.NON_DIAGONALIZABLE_REAL
        ok &= float(np.max(np.abs(f.shape_operator() - expected))) <= 1e-10
    _report(3, ok, "ruled b=2: K=0.25, H=-0.5, non-diagonalizable, L=[[-0.5,1],[0,-0.5]]")


def test_criterion_04_levi_civita_flatness():
    checks = verify.suite_flatness(verify.verification_patches(), 100, SEED, FD)
    worst = max(c.max_residual for c in checks)
    _report(
        4, all(c.passed for c in checks),
        f"Levi-Civita curvature tensor <= 1e-6 at 100 seeded points, fd 1e-4 (max {worst:.2e})",
    )


def test_criterion_05_relative_theorema_egregium():
    # planes contribute only |K| <= 1e-6 points, so sample enough to keep
    # at least 100 points in the relative-error regime
    checks = verify.suite_egregium(verify.verification_patches(), 130, SEED, FD)
    rel = [c for c in checks if c.name == "egregium"]
    points = sum(c.points for c in rel)
    worst = max(c.max_residual for c in rel)
    _report(
        5, all(c.passed for c in checks) and points >= 100,
        f"tensor-side K matches extrinsic K to 1e-5 at {points} points with |K|>1e-6 (max {worst:.2e})",
    )


def test_criterion_06_codazzi_and_gauss_forms():
    # same seed, count and guard as criterion 5, hence the same points
    checks = verify.suite_codazzi(verify.verification_patches(), 130, SEED, FD)
    worst_cod = max(c.max_residual for c in checks if c.name == "codazzi")
    worst_gauss = max(c.max_residual for c in checks if c.name == "gauss_rhs")
    _report(
        6, all(c.passed for c in checks),
        f"Codazzi residual <= 1e-6 (max {worst_cod:.2e}); Gauss RHS forms pairwise <= 1e-8 (max {worst_gauss:.2e})",
    )


def test_criterion_07_umbilic_classification():
    checks = verify.suite_umbilic(verify.verification_patches(), 100, SEED, FD)
    expected = [c for c in checks if c.name.startswith("umbilic(expected")]
    _report(
        7, all(c.passed for c in checks) and len(expected) >= 6,
        "spheres/planes all umbilic; helicoid and ruled example never umbilic",
    )


def test_criterion_08_minimal_surfaces():
    checks = verify.suite_minimal(verify.verification_patches(), 100, SEED, FD)
    waves = [c for c in checks if "minimal_wave" in c.surface]
    harmonics = [c for c in checks if "minimal_harmonic" in c.surface]
    ok = (
        all(c.passed for c in checks)
        and all(c.tolerance == 1e-10 for c in waves)
        and all(c.tolerance == 1e-8 for c in harmonics)
        and waves
        and harmonics
    )
    _report(8, ok, "wave-form pseudo graphs |H|<=1e-10; harmonic simply graph |H|<=1e-8")


def test_criterion_09_spherical_r_geodesics():
    checks = verify.suite_sphere_geodesics(t_end=1.0, step=1e-3)
    worst = max(c.max_residual for c in checks if c.name == "sphere_geodesic")
    par = next(c for c in checks if c.name == "sphere_geodesic_parallel")
    _report(
        9, all(c.passed for c in checks),
        f"integrated vs closed-form sections <= 1e-6 (max {worst:.2e}); parallel residual {par.max_residual:.2e} <= 1e-5",
    )


def test_criterion_10_arc_length_variation():
    ps = geo.make_plane_section(I3, 1.0, 1.0, 0.0)
    trace = geo.plane_section(ps, [k * 1e-3 for k in range(1001)])
    speeds = geo.induced_speed_profile(I3, trace)
    variation = (max(speeds) - min(speeds)) / max(speeds)
    _report(
        10, variation >= 0.01,
        f"induced speed varies {variation * 100:.1f}% along the (1,1,0) r-geodesic",
    )


def test_criterion_11_rigid_motion_invariance():
    rng = SplitMix64(SEED)
    worst = 0.0
    for kind, patch, box in (
        (I3, catalog.make("parabolic_sphere", I3, {"p": 2.0}), (-2.0, 2.0)),
        (IP3, catalog.make("helicoid", IP3, {"c": 1.0}), (1.0, 2.5)),
    ):
        for _ in range(20):
            m = Motion(
                kind,
                a=rng.uniform(-2, 2), b=rng.uniform(-2, 2), c=rng.uniform(-2, 2),
                c1=rng.uniform(-1, 1), c2=rng.uniform(-1, 1), phi=rng.uniform(-1, 1),
            )
            moved = srf.transform_patch(patch, m)
            for _ in range(5):
                u = rng.uniform(*box)
                v = rng.uniform(-1.0, 1.0)
                base = srf.curvatures_at(patch, u, v)
                image = srf.curvatures_at(moved, u, v)
                worst = max(worst, abs(base.K - image.K), abs(base.H - image.H))
    _report(
        11, worst <= 1e-9,
        f"K, H invariant under 20 seeded motions per space (max change {worst:.2e})",
    )


def test_criterion_12_ad_soundness_and_rk4_order():
    worst_first = 0.0
    checked = 0
    for e, u, v, jet in sample_checkable_pairs(SEED, 200):
        firsts, _ = fd_check(e, u, v, jet)
        for rel in firsts:
            checked += 1
            worst_first = max(worst_first, rel)
    ad_ok = worst_first <= 1e-6 and checked >= 200

    ps = geo.make_plane_section(I3, 1.0, 1.0, 1.0)
    start = geo.plane_section(ps, [0.0]).samples[0]
    base = geo.section_sphere_patch(ps)
    patch = srf.SurfacePatch(
        base.kind, base.x_expr, base.y_expr, base.z_expr, (-9, 9, -9, 9), base.name
    )

    def endpoint(h):
        tr = geo.integrate(
            patch, GeodesicKind.RELATIVE, start.u, start.v, start.du, start.dv, 1.0, h
        )
        return tr.samples[-1].position

    e1 = norm_euclid(endpoint(0.05) - endpoint(0.025))
    e2 = norm_euclid(endpoint(0.025) - endpoint(0.0125))
    ratio = e1 / e2
    _report(
        12, ad_ok and 8.0 <= ratio <= 32.0,
        f"AD vs central differences rel err {worst_first:.2e} <= 1e-6 over {checked} partials; "
        f"RK4 halving ratio {ratio:.1f} in [8, 32]",
    )


def test_criterion_13_verify_determinism(tmp_path):
    args = ["verify", "--all-catalog", "--suite", "egregium", "--samples", "25", "--seed", "11"]
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    with contextlib.redirect_stdout(io.StringIO()):
        code1 = cli.main(args + ["--out", str(out1)])
        code2 = cli.main(args + ["--out", str(out2)])
    identical = out1.read_bytes() == out2.read_bytes()
    report = json.loads(out1.read_text())
    _report(
        13, code1 == code2 == 0 and identical and report["overall"] == "pass",
        "repeated seeded verify runs produce byte-identical passing reports",
    )
