import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hopfore.cli import run
from hopfore.cli.config import ConfigError, parse_config_text

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def cli(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def cfg(name):
    return str(CONFIGS / name)


def test_verify_hopf_text():
    code, out = cli("verify-hopf", "--config", cfg("instance_a.toml"), "--degree", "4")
    assert code == 0
    assert out.strip().endswith("PASS")


def test_json_is_deterministic():
    args = ("classify", "scramble(sum(Vt(lambda,3), Block(trivial, y+1)), 4)", "--config", cfg("instance_a.toml"), "--json")
    c1, o1 = cli(*args)
    c2, o2 = cli(*args)
    assert c1 == c2 == 0
    assert o1 == o2
    rep = json.loads(o1)
    assert rep["schema"] == 1 and rep["passed"] is True
    assert rep["result"]["provenance"] == "idempotent-split"
    assert "timing_s" not in rep


def test_global_flags_after_command():
    code, out = cli("--config", cfg("instance_c.toml"), "rank", "--degree", "7", "--json")
    assert code == 0
    assert json.loads(out)["result"]["primitive_degrees"] == [1, 3]


def test_primitives_at_a():
    code, out = cli("primitives", "--config", cfg("instance_a.toml"), "--g", "a", "--degree", "3", "--json")
    assert code == 0
    assert json.loads(out)["result"]["dimension"] == 2


def test_tensor_with_oracle():
    code, out = cli(
        "tensor", "Block(sigma, y-2)", "Block(lambda, y-7)", "--config", cfg("instance_b_ambient.toml"), "--oracle", "--json"
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["prediction_agrees"] is True
    assert rep["result"]["oracle"]["split"]["block_dims"] == [8] * 8


def test_series_with_oracle():
    code, out = cli("series", "Vt(lambda,4)", "--config", cfg("instance_a.toml"), "--oracle", "--json")
    assert code == 0
    rep = json.loads(out)["result"]
    assert rep["radical_dims"] == [4, 3, 2, 1, 0]
    assert rep["oracle"]["composition_factors_agree"] is True


def test_list_simples_and_projectives():
    code, out = cli("list-simples", "--config", cfg("instance_b.toml"), "--json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["one_dimensional_count"] == 8 and res["block_count"] == 1
    code, out = cli("projectives", "--config", cfg("instance_a4.toml"), "--json")
    assert code == 0
    assert json.loads(out)["result"]["count"] == 4


def test_bad_config(tmp_path):
    p = tmp_path / "bad.toml"
    p.write_text('field = "Fp(6)"\ngroup = [4]\nchi = [2]\na = [1]\n')
    code, _ = cli("verify-hopf", "--config", str(p))
    assert code == 2


def test_missing_config():
    assert cli("verify-hopf")[0] == 2


def test_bad_expression():
    code, _ = cli("classify", "Nope(1)", "--config", cfg("instance_a.toml"))
    assert code == 2


def test_precondition_error():
    # projectives need a quotient
    code, _ = cli("projectives", "--config", cfg("instance_a.toml"))
    assert code == 2


def test_parse_config_errors():
    with pytest.raises(ConfigError):
        parse_config_text("field = ")
    with pytest.raises(ConfigError):
        parse_config_text('field = "Fp(5)"\n')


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hopfore", "rank", "--config", cfg("instance_c.toml"), "--degree", "4"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
