import json

import pytest

from isogeo import cli

SPHERE_SPEC = {
    "space": "i3",
    "surface": {"kind": "builtin", "name": "parabolic_sphere", "params": {"p": 2}},
    "domain": [-3, 3, -3, 3],
}


def write_spec(tmp_path, spec, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(spec))
    return str(path)


def read_rows(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_curvature_sphere_grid(tmp_path):
    spec = write_spec(tmp_path, SPHERE_SPEC)
    out = tmp_path / "curv.csv"
    assert cli.main(["curvature", spec, "--grid", "3x3", "--out", str(out)]) == 0
    assert out.read_text().split("\n")[0] == "u,v,x,y,z,K,H,disc,class,xi1,xi2,xi3"
    rows = read_rows(out)
    assert len(rows) == 9
    for row in rows:
        assert float(row["K"]) == 0.25
        assert float(row["H"]) == 0.5
        assert row["class"] == "umbilic"
        # xi caps the unit parabolic sphere
        x1, x2, x3 = (float(row[k]) for k in ("xi1", "xi2", "xi3"))
        assert abs(x3 - 0.5 * (1 - x1 * x1 - x2 * x2)) < 1e-12


def test_curvature_cylinder_inadmissible(tmp_path):
    spec = write_spec(
        tmp_path,
        {
            "space": "i3",
            "surface": {"kind": "builtin", "name": "cylindrical_sphere", "params": {"r": 1}},
        },
    )
    out = tmp_path / "cyl.csv"
    assert cli.main(["curvature", spec, "--grid", "4x4", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 16
    assert all(row["class"] == "inadmissible" for row in rows)
    assert all(row["K"] == "" for row in rows)


def test_curvature_helicoid_value(tmp_path):
    spec = write_spec(
        tmp_path,
        {
            "space": "ip3",
            "surface": {"kind": "builtin", "name": "helicoid", "params": {"c": 1}},
            "domain": [2, 3, 0, 1],
        },
    )
    out = tmp_path / "hel.csv"
    assert cli.main(["curvature", spec, "--grid", "3x3", "--out", str(out)]) == 0
    rows = [r for r in read_rows(out) if float(r["u"]) == 2.0]
    assert rows
    for row in rows:
        assert abs(float(row["K"]) - 0.0625) < 1e-10
        assert row["class"] == "complex_principal"


def test_geodesic_plane_rows(tmp_path):
    spec = write_spec(
        tmp_path,
        {
            "space": "i3",
            "surface": {"kind": "builtin", "name": "plane", "params": {"a": 0.2, "b": 0.1, "c": 0}},
        },
    )
    out = tmp_path / "geo.csv"
    code = cli.main(
        [
            "geodesic", spec, "--type", "r",
            "--start", "0,0", "--velocity", "0.5,-0.25",
            "--t-end", "1", "--step", "0.01", "--out", str(out),
        ]
    )
    assert code == 0
    assert out.read_text().split("\n")[0] == "t,u,v,du,dv,x,y,z,parallel_residual"
    rows = read_rows(out)
    assert len(rows) == 101
    last = rows[-1]
    assert abs(float(last["u"]) - 0.5) < 1e-12
    assert abs(float(last["v"]) + 0.25) < 1e-12
    assert all(float(r["parallel_residual"]) == 0.0 for r in rows)


def test_curvature_output_deterministic(tmp_path):
    spec = write_spec(tmp_path, SPHERE_SPEC)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["curvature", spec, "--grid", "5x5", "--out", str(out1)]) == 0
    assert cli.main(["curvature", spec, "--grid", "5x5", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_geodesic_lightlike_start_exit_code(tmp_path):
    spec = write_spec(
        tmp_path,
        {
            "space": "ip3",
            "surface": {"kind": "builtin", "name": "parabolic_sphere", "params": {"p": 1}},
        },
    )
    out = tmp_path / "geo.csv"
    code = cli.main(
        [
            "geodesic", spec, "--type", "r",
            "--start", "0,1", "--velocity", "1,0",
            "--t-end", "1", "--out", str(out),
        ]
    )
    assert code == 4


def test_geodesic_missing_spec_file(tmp_path):
    out = tmp_path / "geo.csv"
    code = cli.main(
        [
            "geodesic", str(tmp_path / "nope.json"), "--start", "0,0",
            "--velocity", "1,0", "--t-end", "1", "--out", str(out),
        ]
    )
    assert code == 2


def test_verify_flatness_passes(tmp_path, capsys):
    code = cli.main(
        ["verify", "--all-catalog", "--suite", "flatness", "--samples", "18", "--seed", "7"]
    )
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["overall"] == "pass"
    assert all(c["max_residual"] <= 1e-6 for c in report["checks"])


def test_verify_deterministic_output(tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    args = ["verify", "--all-catalog", "--suite", "umbilic", "--samples", "12", "--seed", "3"]
    assert cli.main(args + ["--out", str(out1)]) == 0
    assert cli.main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_spec_umbilic_negative(tmp_path, capsys):
    spec = write_spec(
        tmp_path,
        {
            "space": "ip3",
            "surface": {"kind": "builtin", "name": "ruled_nondiag", "params": {"b": 2}},
        },
    )
    code = cli.main(["verify", spec, "--suite", "umbilic", "--samples", "10", "--seed", "1"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["checks"][0]["name"] == "umbilic(expected-negative)"
    assert report["checks"][0]["pass"] is True


def test_verify_spec_egregium(tmp_path, capsys):
    spec = write_spec(tmp_path, SPHERE_SPEC)
    code = cli.main(["verify", spec, "--suite", "egregium", "--samples", "10", "--seed", "5"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    check = next(c for c in report["checks"] if c["name"] == "egregium")
    assert check["max_residual"] <= 1e-5


def test_verify_tol_override_can_force_failure(tmp_path, capsys):
    code = cli.main(
        ["verify", "--all-catalog", "--suite", "flatness", "--samples", "9",
         "--seed", "2", "--tol", "1e-30"]
    )
    report = json.loads(capsys.readouterr().out)
    assert code == 5
    assert report["overall"] == "fail"
    assert all(c["tolerance"] == 1e-30 for c in report["checks"])


def test_verify_requires_one_target(tmp_path, capsys):
    assert cli.main(["verify"]) == 2
    spec = write_spec(tmp_path, SPHERE_SPEC)
    assert cli.main(["verify", spec, "--all-catalog"]) == 2


def test_verify_env_var_overrides_fd_step(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ISOGEO_FD_STEP", "0.0002")
    code = cli.main(
        ["verify", "--all-catalog", "--suite", "umbilic", "--samples", "5", "--seed", "1"]
    )
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["fd_step"] == 0.0002
    monkeypatch.setenv("ISOGEO_FD_STEP", "banana")
    assert (
        cli.main(["verify", "--all-catalog", "--suite", "umbilic", "--samples", "5"]) == 2
    )


def test_sample_obj_counts(tmp_path):
    spec = write_spec(tmp_path, SPHERE_SPEC)
    out = tmp_path / "mesh.obj"
    assert cli.main(["sample", spec, "--grid", "2x2", "--format", "obj", "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert sum(1 for l in lines if l.startswith("v ")) == 4
    assert sum(1 for l in lines if l.startswith("f ")) == 2


def test_sample_vertices_on_sphere(tmp_path):
    spec = write_spec(tmp_path, SPHERE_SPEC)
    out = tmp_path / "mesh.obj"
    assert cli.main(["sample", spec, "--grid", "10x10", "--out", str(out)]) == 0
    count = 0
    for line in out.read_text().strip().split("\n"):
        if not line.startswith("v "):
            continue
        count += 1
        _, x, y, z = line.split(" ")
        x, y, z = float(x), float(y), float(z)
        assert abs(z - ((x * x + y * y) / 4.0 - 1.0)) <= 1e-12
    assert count == 100


def test_sample_csv_format(tmp_path):
    spec = write_spec(tmp_path, SPHERE_SPEC)
    out = tmp_path / "points.csv"
    assert cli.main(["sample", spec, "--grid", "3x3", "--format", "csv", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 9 and set(rows[0]) == {"u", "v", "x", "y", "z"}


def test_sample_invalid_format_flag(tmp_path):
    spec = write_spec(tmp_path, SPHERE_SPEC)
    with pytest.raises(SystemExit) as exits:
        cli.main(["sample", spec, "--format", "stl", "--out", str(tmp_path / "x")])
    assert exits.value.code == 2


def test_spec_validation_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["curvature", str(bad), "--out", str(tmp_path / "o.csv")]) == 2

    cases = [
        {"space": "e3", "surface": {"kind": "graph", "f": "u"}, "domain": [0, 1, 0, 1]},
        {"space": "i3", "surface": {"kind": "graph", "f": "u +"}, "domain": [0, 1, 0, 1]},
        {"space": "i3", "surface": {"kind": "graph", "f": "u"}},  # graph needs domain
        {"space": "i3", "surface": {"kind": "builtin", "name": "nosuch"}},
        {"space": "i3", "surface": {"kind": "mystery"}, "domain": [0, 1, 0, 1]},
        {"space": "i3", "surface": {"kind": "graph", "f": "u"}, "domain": [1, 0, 0, 1]},
        {"space": "i3", "surface": {"kind": "parametric", "x": "u", "y": "v"}, "domain": [0, 1, 0, 1]},
    ]
    for idx, spec in enumerate(cases):
        path = write_spec(tmp_path, spec, f"bad{idx}.json")
        assert cli.main(["curvature", path, "--out", str(tmp_path / "o.csv")]) == 2, spec


def test_output_io_error(tmp_path):
    spec = write_spec(tmp_path, SPHERE_SPEC)
    missing_dir = tmp_path / "no" / "such" / "dir" / "o.csv"
    assert cli.main(["curvature", spec, "--grid", "3x3", "--out", str(missing_dir)]) == 3


def test_graph_and_parametric_specs_work(tmp_path):
    graph = write_spec(
        tmp_path,
        {"space": "i3", "surface": {"kind": "graph", "f": "(u^2+v^2)/4 - 1"}, "domain": [-2, 2, -2, 2]},
        "graph.json",
    )
    out = tmp_path / "g.csv"
    assert cli.main(["curvature", graph, "--grid", "3x3", "--out", str(out)]) == 0
    assert all(float(r["K"]) == 0.25 for r in read_rows(out))

    parametric = write_spec(
        tmp_path,
        {
            "space": "ip3",
            "surface": {"kind": "parametric", "x": "u*cosh(v)", "y": "u*sinh(v)", "z": "v"},
            "domain": [0.5, 3, -1, 1],
        },
        "par.json",
    )
    out2 = tmp_path / "p.csv"
    assert cli.main(["curvature", parametric, "--grid", "4x4", "--out", str(out2)]) == 0
    for row in read_rows(out2):
        u = float(row["u"])
        assert abs(float(row["K"]) - 1.0 / u**4) < 1e-10


def test_geodesic_trace_stops_with_warning(tmp_path, capsys):
    spec = write_spec(
        tmp_path,
        {"space": "i3", "surface": {"kind": "graph", "f": "0.1*u"}, "domain": [-1, 1, -1, 1]},
    )
    out = tmp_path / "geo.csv"
    code = cli.main(
        [
            "geodesic", spec, "--start", "0,0", "--velocity", "1,0",
            "--t-end", "3", "--step", "0.01", "--out", str(out),
        ]
    )
    assert code == 0
    assert "stopped" in capsys.readouterr().err
    rows = read_rows(out)
    assert float(rows[-1]["t"]) <= 1.01
