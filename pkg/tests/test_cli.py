import json
import os
import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "liechar"]


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        CMD + list(args), capture_output=True, text=True, env=env, timeout=600
    )


def test_verify_gko_pass_exit_zero():
    res = run_cli("verify-gko", "--type", "A1", "--order", "4")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["schema"] == 1
    assert payload["command"] == "verify-gko"
    assert payload["status"] == "pass"
    assert payload["reports"][0]["status"] == "pass"
    assert payload["reports"][0]["timing_ms"] == 0
    assert payload["elapsed_ms"] == 0


def test_verify_gko_non_ade_exit_two():
    res = run_cli("verify-gko", "--type", "B2", "--order", "2")
    assert res.returncode == 2
    assert "simply-laced" in res.stderr


def test_unknown_type_exit_two():
    res = run_cli("verify-kw", "--type", "H3", "--order", "1")
    assert res.returncode == 2


def test_bad_subcommand_exit_two():
    res = run_cli("frobnicate")
    assert res.returncode == 2


def test_reports_byte_identical():
    a = run_cli("verify-gko", "--type", "A1", "--order", "3", "--seed", "5")
    b = run_cli("verify-gko", "--type", "A1", "--order", "3", "--seed", "5")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_report_file_written(tmp_path):
    out = tmp_path / "report.json"
    res = run_cli("verify-kw", "--type", "A1", "--order", "3", "--out", str(out))
    assert res.returncode == 0
    payload = json.loads(out.read_text())
    assert payload["status"] == "pass"
    assert payload["reports"][0]["identity"] == "kw"
    assert res.stdout.strip() == out.read_text().strip()


def test_levels_ff_dual_value():
    res = run_cli("levels", "--type", "A1", "--kappa", "0", "--op", "ff-dual")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["reports"][0]["target"]["kappa"] == "-3/2"
    assert payload["reports"][0]["holds"] is True


def test_levels_gluing():
    res = run_cli("levels", "--type", "A1", "--kappa", "-1", "--op", "gluing", "--n", "1")
    payload = json.loads(res.stdout)
    assert res.returncode == 0
    kinds = [r["kind"] for r in payload["reports"]]
    assert kinds == ["gluing_first", "gluing_second"]
    assert all(r["holds"] for r in payload["reports"])


def test_weights_table():
    res = run_cli("weights", "--type", "D4", "--n", "1", "--max-norm", "4")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    rows = payload["reports"]
    assert rows[0]["lambda"] == ["0", "0", "0", "0"] and rows[0]["h"] == "0"
    assert all(row["h"] == row["h_two_term"] for row in rows)
    nonzero = [row for row in rows if row["norm2"] != "0"]
    assert nonzero and all(not row["h"].startswith("-") and row["h"] != "0" for row in nonzero)


def test_takiff_forms_command():
    res = run_cli("takiff-forms", "--type", "A1")
    payload = json.loads(res.stdout)
    assert res.returncode == 0
    assert payload["reports"][0]["form_space_dim"] == 1
    assert payload["reports"][1]["form_space_dim"] == 2
    assert payload["reports"][1]["gt_gt_block_zero"] is True


def test_hom_dim_command():
    res = run_cli("hom-dim", "--type", "A2", "--from", "alt2_adjoint", "--to", "adjoint")
    payload = json.loads(res.stdout)
    assert payload["reports"][0]["dim"] == 1


def test_classify_ext_command():
    res = run_cli("classify-ext", "--alpha=-1/4", "--beta", "1")
    payload = json.loads(res.stdout)
    assert payload["reports"][0]["kind"] == "takiff_iso"
    assert payload["reports"][0]["witnesses"] == [["-1/2", "1"]]


def test_singular_command():
    res = run_cli("singular")
    payload = json.loads(res.stdout)
    assert res.returncode == 0
    roots = {r["pair"]: r["root_set"] for r in payload["reports"]}
    assert roots["aa"] == {"variable": "kappa1", "roots": ["0", "1"]}
    assert roots["bb"] == {"variable": "kappa2", "roots": ["0", "1"]}
    assert roots["ab"] == {"product_of": ["kappa1", "kappa2"]}


def test_char_dump_level_one():
    res = run_cli("char", "--which", "level-one", "--type", "A2", "--order", "3",
                  "--spec", "trivial")
    payload = json.loads(res.stdout)
    series = payload["reports"][0]["series"]
    assert series[0] == {"exponent": "0", "terms": 1}
    assert series[1] == {"exponent": "1", "terms": 8}


def test_char_requires_known_builder():
    res = run_cli("char", "--which", "nonsense", "--type", "A1", "--order", "1")
    assert res.returncode == 2


def test_thread_env_var_validated():
    res = run_cli("singular", env_extra={"LIECHAR_THREADS": "zero"})
    assert res.returncode == 2
    res = run_cli("singular", env_extra={"LIECHAR_THREADS": "2"})
    assert res.returncode == 0


def test_fail_status_maps_to_exit_one():
    import time

    from liechar.cli import EXIT_MISMATCH, _finish

    code = _finish("probe", {}, [], "fail", None, time.perf_counter(), False)
    assert code == EXIT_MISMATCH == 1


def test_gko_custom_kappas_and_failure_exit():
    res = run_cli("verify-gko", "--type", "A1", "--order", "2",
                  "--kappa", "1/3", "--kappa", "9/2")
    assert res.returncode == 0
    # a kappa on the kernel pole is a usage error, not a mismatch
    res = run_cli("verify-gko", "--type", "A1", "--order", "2", "--kappa", "-1",
                  "--kappa", "3")
    assert res.returncode == 2
