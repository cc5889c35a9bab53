import io
import json

import numpy as np

from symred.algebra import exact_matrix, matrix_to_json, power_sum, variables
from symred.cli import run
from symred.demos import sage_example
from symred.fixtures import motzkin
from symred.sdp import cycle_edges, parse_sdpa, theta_sdp


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def cli_json(*argv):
    code, out, err = cli(*argv, "--format", "json")
    return code, json.loads(out) if out.strip() else None


def dump(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def test_no_command_is_usage_error():
    assert cli()[0] == 1
    assert cli("theta", "--bogus")[0] == 1


def test_missing_file_is_io_error(tmp_path):
    assert cli("sos", "--in", str(tmp_path / "missing.json"))[0] == 4


def test_bad_json_is_io_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert cli("rewrite", "--in", str(p))[0] == 4


def test_sab_json(tmp_path):
    code, doc = cli_json("sab", "--group", "C:4", "--flavor", "real", "--out", str(tmp_path / "b.json"))
    assert code == 0 and doc["status"] == "ok"
    saved = json.loads((tmp_path / "b.json").read_text())
    assert saved["orthonormal"]


def test_blockdiag_spectrum(tmp_path):
    a, b, c, d = 2, -1, 3, 5
    x = exact_matrix([[a, b, c, d], [d, a, b, c], [c, d, a, b], [b, c, d, a]])
    path = dump(tmp_path, "x.json", matrix_to_json(x))
    code, doc = cli_json("blockdiag", "--in", path, "--group", "C:4")
    assert code == 0 and len(doc["value"]) == 4


def test_theta_cycle():
    code, doc = cli_json("theta", "--cycle", "7")
    assert code == 0
    assert abs(doc["value"] - 7 * np.cos(np.pi / 7) / (1 + np.cos(np.pi / 7))) < 1e-8


def test_theta_graph_file(tmp_path):
    path = dump(tmp_path, "g.json", {"n": 5, "edges": cycle_edges(5)})
    code, doc = cli_json("theta", "--in", path)
    assert code == 0 and abs(doc["value"] - 5 ** 0.5) < 1e-8


def test_reduce_sdp_writes_sdpa(tmp_path):
    path = dump(tmp_path, "sdp.json", theta_sdp(cycle_edges(5), 5).to_json())
    out = tmp_path / "r.dat-s"
    code, _, _ = cli("reduce-sdp", "--in", path, "--group", "Dv:5", "--out", str(out))
    assert code == 0
    text = out.read_text()
    assert parse_sdpa(text).write() == text


def test_sos_feasible_and_infeasible(tmp_path):
    good = dump(tmp_path, "good.json", (power_sum(4, 3) + power_sum(2, 3) ** 2).to_json())
    assert cli_json("sos", "--in", good, "--group", "S:3")[0] == 0
    bad = dump(tmp_path, "m.json", motzkin().to_json())
    code, doc = cli_json("sos", "--in", bad)
    assert code == 2 and doc["status"] == "infeasible"


def test_sos_emit_sdpa(tmp_path):
    good = dump(tmp_path, "good.json", (power_sum(2, 2) ** 2).to_json())
    out = tmp_path / "g.dat-s"
    assert cli("sos", "--in", good, "--method", "gram", "--emit-sdpa", str(out))[0] == 0
    assert out.exists()


def test_rewrite(tmp_path):
    path = dump(tmp_path, "m.json", motzkin().to_json())
    code, out, _ = cli("rewrite", "--in", path, "--basis", "e")
    assert code == 0 and "e1^2*e2^2" in out
    x = variables(2)
    path = dump(tmp_path, "x.json", x[0].to_json())
    assert cli("rewrite", "--in", path)[0] == 3


def test_hmatrix_and_specht():
    assert cli("hmatrix", "--group", "S:3")[0] == 0
    assert cli("hmatrix", "--group", "D:3", "--irrep", "E1")[0] == 0
    assert cli("hmatrix", "--group", "C:3")[0] == 3
    code, doc = cli_json("higher-specht", "--shape", "3,2", "--list")
    assert code == 0


def test_orbitspace(tmp_path):
    path = dump(tmp_path, "m.json", motzkin().to_json())
    code, doc = cli_json("orbitspace", "--in", path, "--group", "S:2", "--grid", "3")
    assert code == 0
    out = tmp_path / "q.dat-s"
    assert cli("orbitspace", "--in", path, "--group", "S:2", "--qk", "3", "--out", str(out))[0] == 0
    text = out.read_text()
    assert parse_sdpa(text).write() == text


def test_degree(tmp_path):
    path = dump(tmp_path, "f.json", {"poly": (power_sum(4, 4) - power_sum(2, 4)).to_json()})
    code, doc = cli_json("degree", "--in", path)
    assert code == 0 and abs(doc["value"]["value"] + 1) < 1e-6 and doc["value"]["r"] == 2


def test_sage(tmp_path):
    path = dump(tmp_path, "s.json", sage_example().to_json())
    code, doc = cli_json("sage", "--in", path, "--group", "S:3")
    assert code == 0 and doc["status"] == "feasible"


def test_demo_list_and_run():
    code, out, _ = cli("demo", "--list")
    assert code == 0 and "theta-c10" in out
    code, out, _ = cli("demo", "theta-c10")
    assert code == 0 and "PASS" in out.splitlines()[-1]
    assert cli("demo", "no-such-demo")[0] == 1


def test_tol_and_format_after_subcommand():
    code, doc = cli_json("theta", "--cycle", "5", "--tol", "1e-6")
    assert code == 0 and doc["status"] == "optimal"
