"""End-to-end checks of the command-line front end.

Every test drives cli.main(argv) in process and captures stdout/stderr,
so the whole file stays fast.  Numeric expectations reuse instances that
the module tests already pin down (the F_7 two-term equation, the F_11
certificate case, the q=101 model example).
"""

import contextlib
import io
import json

from expzeros import density as density_mod
from expzeros.cli import ConfigError, main, parse_config_file, parse_terms


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        rc = main(argv)
    return rc, out.getvalue(), err.getvalue()


F7_ARGS = ["--p", "7", "--terms", "1,3;1,2", "--b", "3"]


# ---------------------------------------------------------------- helpers


def test_parse_terms():
    assert parse_terms("1,3;1,2") == [(1, 3), (1, 2)]
    assert parse_terms(" 2 , 5 ") == [(2, 5)]
    for bad in ("", "1;2", "1,2,3", "x,3"):
        try:
            parse_terms(bad)
        except (ConfigError, ValueError):
            continue
        raise AssertionError(f"parse_terms({bad!r}) should fail")


def test_parse_config_file(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text(
        "# a comment line\n"
        "p = 7\n"
        "\n"
        "terms = 1,3;1,2   # trailing comment\n"
        "b=3\n")
    cfg = parse_config_file(str(path))
    assert cfg == {"p": "7", "terms": "1,3;1,2", "b": "3"}


def test_parse_config_rejects_bad_lines(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("p = 7\nwhat is this\n")
    try:
        parse_config_file(str(path))
    except ConfigError as exc:
        msg = str(exc)
        assert f"{path}:2" in msg and "key=value" in msg
    else:
        raise AssertionError("missing '=' must be rejected")


# ------------------------------------------------------------- count/orders


def test_count_text_output():
    rc, out, err = run(["count", *F7_ARGS])
    assert rc == 0 and err == ""
    assert "brute count:        3" in out
    assert "character-sum count: 3.000000" in out
    assert "solutions (original term order): [(0, 1), (2, 0), (3, 2)]" in out
    assert "box: sorted orders [6, 3] r=3 card=18" in out


def test_count_truncated_radius():
    rc, out, _ = run(["count", *F7_ARGS, "--r", "1"])
    assert rc == 0
    assert "brute count:        1" in out
    assert "[(2, 0)]" in out


def test_count_json_document():
    rc, out, _ = run(["count", *F7_ARGS, "--format", "json"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["kind"] == "count"
    assert doc["brute"] == 3
    assert abs(doc["charsum"] - 3.0) < 1e-9
    assert doc["box"]["card"] == 18
    assert [0, 1] in doc["solutions"] and [3, 2] in doc["solutions"]


def test_orders_command():
    rc, out, _ = run(["orders", *F7_ARGS])
    assert rc == 0
    # one row per term, with the multiplicative order in the last column
    rows = [line.split() for line in out.splitlines() if line[:3].strip().isdigit()]
    assert [r[-1] for r in rows] == ["6", "3"]
    rc, out, _ = run(["orders", *F7_ARGS, "--format", "json"])
    doc = json.loads(out)
    assert doc["kind"] == "orders"
    assert doc["q_minus_1_factorization"] == [[2, 1], [3, 1]]


# ------------------------------------------------------------------ density


def test_density_per_b_csv():
    rc, out, _ = run(["density", *F7_ARGS, "--format", "csv"])
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "b_index,N,main_num,main_den,delta,exceptional_flag"
    assert len(lines) == 1 + 7
    first = lines[1].split(",")
    assert first[:4] == ["0", "3", "18", "7"]
    # default delta = sqrt(ln 7) leaves no exceptional b here
    assert all(line.split(",")[-1] == "0" for line in lines[1:])


def test_density_text_and_json():
    rc, out, _ = run(["density", *F7_ARGS, "--delta", "1"])
    assert rc == 0
    assert "main term: 18/7" in out
    assert "energy E(r): 12/7" in out
    assert "holds=True" in out
    assert "0 exceptional b" in out
    rc, out, _ = run(["density", *F7_ARGS, "--format", "json"])
    doc = json.loads(out)
    report = density_mod.report_from_dict(doc)
    assert list(report.counts) == [3, 2, 2, 3, 2, 3, 3]
    assert doc["census"]["exceptional"] == []
    assert doc["census"]["size_ok"] is True


# -------------------------------------------------------------------- solve


def test_solve_text_and_json():
    rc, out, _ = run(["solve", *F7_ARGS])
    assert rc == 0
    assert "status: found" in out
    assert "solution (original term order): [2, 0]" in out
    rc, out, _ = run(["solve", *F7_ARGS, "--format", "json"])
    doc = json.loads(out)
    assert doc["kind"] == "solution_report" and doc["status"] == "found"
    assert doc["x"] == [2, 0]
    buckets = doc["queries"]["buckets"]
    assert buckets["setup"] == 3 and buckets["bsgs_table"] == 6
    assert buckets["membership"] == 4 and buckets["subroutine"] == 1


def test_solve_certificate_status():
    rc, out, _ = run(["solve", "--p", "11", "--terms", "1,3;1,10",
                      "--b", "1", "--format", "json"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["status"] == "no_solution_certified"
    assert doc["x"] is None
    # r_raw exceeds the smallest order (2), so the box is clamped and the
    # full multiplicative relation certifies emptiness
    assert doc["r_raw"] == 12 and doc["box"]["r"] == 2


# ------------------------------------------------------------------- qmodel


def test_qmodel_thm2_json():
    rc, out, _ = run(["qmodel", *F7_ARGS, "--mode", "thm2",
                      "--format", "json", "--trials", "20"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["mode"] == "thm2"
    assert doc["t"] == 3 and doc["m_exact"] == 3
    assert doc["modeled_queries"] == 2 and doc["within_bound"]
    assert doc["b_exceptional"] is False


def test_qmodel_thm3_success():
    rc, out, _ = run(["qmodel", "--p", "101", "--terms", "1,2;1,5",
                      "--b", "7", "--mode", "thm3", "--format", "json",
                      "--trials", "10"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["hypothesis_ok"] is True
    assert doc["m_exact"] == 4 and doc["t"] == 4
    assert abs(doc["m_estimate"] - 400 / 101) < 1e-12
    assert doc["within_bound"] and not doc["b_exceptional"]


def test_qmodel_thm3_hypothesis_failure_exits_2():
    rc, out, err = run(["qmodel", "--p", "7", "--terms", "1,6;2,6",
                        "--b", "0", "--mode", "thm3"])
    assert rc == 2 and out == ""
    assert "hypothesis" in err


# ---------------------------------------------------------------- exponents


def test_exponents_text():
    rc, out, _ = run(["exponents", "--n-max", "4"])
    assert rc == 0
    assert "n=3: stated 6/5 vs derived 3/2" in out
    assert "n=4: stated 10/7 vs derived 2" in out


def test_exponents_csv():
    rc, out, _ = run(["exponents", "--n-max", "3", "--format", "csv"])
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,classical,classical_stated,quantum,ratio"
    assert lines[1] == "2,1,1,1/3,3"
    assert lines[2] == "3,3/2,6/5,3/5,5/2"


# ------------------------------------------------------------------- reduce


def test_reduce_json():
    rc, out, _ = run(["reduce", "--p", "7", "--terms", "1,3;1,5;1,2",
                      "--b", "0", "--format", "json"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["mu"] == 2 and doc["d_bound"] == 4
    orders = [g["order"] for g in doc["groups"]]
    assert orders == [6, 3]
    assert doc["groups"][0]["members"] == [0, 1]


# ------------------------------------------------------ config file handling


def test_config_file_and_flag_override(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("p = 7\nterms = 1,3;1,2\nb = 3\nformat = json\n")
    rc, out, _ = run(["count", "--config", str(path)])
    assert rc == 0 and json.loads(out)["brute"] == 3
    # flags win over file values
    rc, out, _ = run(["count", "--config", str(path), "--b", "5"])
    doc = json.loads(out)
    assert doc["eq"]["b"] == 5 and doc["brute"] == 3


def test_config_unknown_key_exits_1(tmp_path):
    path = tmp_path / "typo.cfg"
    path.write_text("p = 7\nbogus = 1\n")
    rc, out, err = run(["count", "--config", str(path)])
    assert rc == 1 and out == ""
    assert f"{path}:2" in err and "bogus" in err


# ----------------------------------------------------------- error handling


def test_missing_inputs_exit_1():
    rc, _, err = run(["count", "--terms", "1,3;1,2", "--b", "3"])
    assert rc == 1 and "missing p" in err
    rc, _, err = run(["count", "--p", "7", "--terms", "1,3;1,2"])
    assert rc == 1 and "missing b" in err
    rc, _, err = run(["count", "--p", "4", "--terms", "1,3;1,2", "--b", "3"])
    assert rc == 1 and "not prime" in err


def test_cardinality_cap_exits_2():
    rc, _, err = run(["count", "--p", "1009",
                      "--terms", "1,11;1,11;1,11", "--b", "0"])
    assert rc == 2 and "cap" in err


def test_csv_unsupported_for_solve():
    rc, _, err = run(["solve", *F7_ARGS, "--format", "csv"])
    assert rc == 1 and "no csv form" in err


# ------------------------------------------------------- misc plumbing


def test_random_instance_is_seeded():
    argv = ["count", "--p", "101", "--n", "2", "--seed", "3"]
    rc1, out1, _ = run(argv)
    rc2, out2, _ = run(argv)
    assert rc1 == rc2 == 0 and out1 == out2
    assert "randomly generated" in out1


def test_out_flag_writes_file(tmp_path):
    dest = tmp_path / "count.json"
    rc, out, _ = run(["count", *F7_ARGS, "--format", "json",
                      "--out", str(dest)])
    assert rc == 0 and out == ""
    assert json.loads(dest.read_text())["brute"] == 3


def test_bench_small_grid_deterministic():
    argv = ["bench", "--qs", "11,13", "--ns", "2", "--seed", "1",
            "--format", "csv"]
    rc1, out1, _ = run([*argv, "--workers", "1"])
    rc2, out2, _ = run([*argv, "--workers", "1"])
    rc3, out3, _ = run([*argv, "--workers", "2"])
    assert rc1 == rc2 == rc3 == 0
    assert out1 == out2 == out3
    lines = out1.strip().splitlines()
    assert lines[0].startswith("q,n,classical_mults")
    cells = [line.split(",") for line in lines[1:]]
    assert [(c[0], c[1]) for c in cells] == [("11", "2"), ("13", "2")]
    assert all(c[-1] in ("found", "no_solution_certified", "box_exhausted")
               for c in cells)
