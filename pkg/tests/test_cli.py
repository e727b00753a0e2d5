import io
import json
import os

import pytest

from ciext.cli import run
from ciext.config import ConfigError, PreconditionError, parse_config

CONFIGS = os.path.join(os.path.dirname(__file__), "..", "configs")


def cfg(name):
    return os.path.join(CONFIGS, name)


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_bad_subcommand_is_usage_error(tmp_path):
    assert call("frobnicate", "--config", cfg("example.yaml"), "--out", str(tmp_path))[0] == 1


def test_missing_config_flag():
    assert call("gb")[0] == 1


def test_unreadable_config(tmp_path):
    assert call("gb", "--config", str(tmp_path / "nope.yaml"), "--out", str(tmp_path))[0] == 1


def test_bad_yaml(tmp_path):
    p = tmp_path / "bad.yaml"
    p.write_text("field: [unclosed\n")
    assert call("gb", "--config", str(p), "--out", str(tmp_path))[0] == 1
    p.write_text("field: 101\n")
    assert call("gb", "--config", str(p), "--out", str(tmp_path))[0] == 1


def test_not_regular_is_verification_failure(tmp_path):
    assert call("gb", "--config", cfg("not_regular.yaml"), "--out", str(tmp_path))[0] == 2


def test_precondition_names_invariant():
    with pytest.raises(PreconditionError) as e:
        parse_config("field: 101\nvariables: [x]\nf: ['x+1']\n")
    assert e.value.invariant == "regular-sequence"
    with pytest.raises(ConfigError):
        parse_config("field: 101\nvariables: [x]\nmodule: bogus\n")


def test_gb_and_resolve(tmp_path):
    code, text = call("gb", "--config", cfg("example.yaml"), "--out", str(tmp_path))
    assert code == 0 and "config_hash" in text
    code, text = call("resolve", "--config", cfg("example.yaml"), "--out", str(tmp_path), "--imax", "5")
    assert code == 0
    rep = json.loads((tmp_path / "resolve.json").read_text())["report"]
    assert rep["lift_identity"] and rep["chain_map_ok"] and rep["exact"]


def test_hash_in_every_output(tmp_path):
    code, text = call("ext-table", "--config", cfg("example.yaml"), "--out", str(tmp_path),
                      "--imax", "4", "--nmax", "2")
    assert code == 0
    h = json.loads((tmp_path / "ext-table.json").read_text())["header"]["config_hash"]
    assert (tmp_path / "ext-table.csv").read_text().startswith(f"# config_hash={h}")
    assert f"config_hash: {h}" in (tmp_path / "ext-table.txt").read_text()
    assert h in text


def test_hash_depends_on_bounds_and_seed():
    text = open(cfg("example.yaml")).read()
    a, b, c = parse_config(text), parse_config(text), parse_config(text)
    b.apply_overrides(imax=3)
    c.apply_overrides(seed=7)
    assert len({a.config_hash(), b.config_hash(), c.config_hash()}) == 3
    assert a.config_hash() == parse_config(text).config_hash()


@pytest.mark.parametrize("sub", ["gb", "resolve", "ext-table", "certify-fg", "ass-table", "cx-table",
                                 "explore-quotient"])
def test_zero_module_runs(tmp_path, sub):
    assert call(sub, "--config", cfg("zero_module.yaml"), "--out", str(tmp_path))[0] == 0


def test_certify_and_ass_outputs(tmp_path):
    code, _ = call("certify-fg", "--config", cfg("example.yaml"), "--out", str(tmp_path), "--imax", "6",
                   "--nmax", "3")
    assert code == 0
    rep = json.loads((tmp_path / "certify-fg.json").read_text())["report"]
    assert rep["certificate"]["status"] == "generated-in-box"
    assert rep["generator_bidegrees"] == [[0, 0]]
    code, _ = call("ass-table", "--config", cfg("example.yaml"), "--out", str(tmp_path), "--imax", "6",
                   "--nmax", "2")
    assert code == 0
    assert (tmp_path / "ass-table.csv").exists()


def test_theta_outputs(tmp_path):
    code, _ = call("theta", "--config", cfg("example_powers.yaml"), "--out", str(tmp_path))
    assert code == 0
    rep = json.loads((tmp_path / "theta.json").read_text())["report"]
    assert rep["theta"] == 0 and rep["spread"] == 1 and "terms_raw" not in rep["filter_regular"]


def test_explore_label(tmp_path):
    code, text = call("explore-quotient", "--config", cfg("explore_quotient.yaml"), "--out", str(tmp_path),
                      "--imax", "5", "--nmax", "3")
    assert code == 0 and "EXPLORATORY" in text


def test_jobs_do_not_change_bytes(tmp_path):
    for jobs in ("1", "4"):
        d = tmp_path / jobs
        assert call("ext-table", "--config", cfg("ci_k.yaml"), "--out", str(d), "--imax", "5",
                    "--jobs", jobs)[0] == 0
    for name in ("ext-table.csv", "ext-table.json", "ext-table.txt"):
        assert (tmp_path / "1" / name).read_bytes() == (tmp_path / "4" / name).read_bytes()
