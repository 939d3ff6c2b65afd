import io
import json

import pytest

from simdioph import cli
from simdioph.exact import IdentityViolation


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def result(*argv):
    code, text = run(*argv)
    assert code == 0
    return json.loads(text)["result"]


def test_lambda_n():
    r = result("lambda-n", "--n", "1,1,2")
    assert r["det"] == "1/2" and r["hnf"] == [[1, 1], [0, 2]] and r["scalar"] == "1/2"


def test_approx():
    r = result("approx", "--x", "1/2,1/2", "--Q", "1", "--gauge", "sup")
    assert r["lambdas"][0] == {"value": "1/2", "exp": 1}


def test_sweep():
    r = result("sweep", "--k", "2", "--gauge", "euclid", "--N", "2", "--mode", "product")
    assert r["max_ratio"] == {"value": "1", "exp": 2} and r["argmax"] == [1, 1, 2]


def test_config_is_echoed():
    code, text = run("--seed", "7", "polar", "--n", "2,3,5")
    doc = json.loads(text)
    assert doc["config"]["subcommand"] == "polar" and doc["config"]["seed"] == 7
    assert doc["result"]["equal"] is True


def test_weyl_with_membership():
    r = result("weyl", "--n", "1,1,2", "--x", "1,1")
    assert r["equal"] and r["member"] == {"x": [1, 1], "ok": True, "r": 1}


def test_csv_output():
    code, text = run("--format", "csv", "c0-sweep", "--k", "2", "--N", "3")
    lines = text.splitlines()
    assert lines[0].startswith("# config: ")
    assert lines[1] == "n1,n2,n3,product,num,den,k"
    assert "1,1,2,1,1,2,2" in lines


def test_construct_and_decompose():
    r = result("construct", "--alphas", "1/2,3/4", "--count", "2")
    assert [p["n"] for p in r["points"]] == [[84, 117, 182], [220, 315, 462]]
    assert set(r["points"][0]["errors"]) == {"e2", "e3", "e4"}
    r = result("decompose", "--n", "1,1,2")
    assert r["brute_force"]["product"] == 1


def test_certify_and_worstcase():
    r = result("certify-decomp", "--n", "2,3,5", "--check")
    assert r["sound"] is True
    r = result("worstcase", "--k", "3", "--eps", "1/2")
    assert len(r) == 1 and "certificate" in r[0]


def test_selftest():
    r = result("selftest", "--samples", "20")
    assert all(r["checks"].values())


def test_deterministic_output():
    assert run("minima", "--n", "2,5,9", "--gauge", "honeycomb") == \
        run("minima", "--n", "2,5,9", "--gauge", "honeycomb")


@pytest.mark.parametrize("argv", [["minima", "--n", "2,5,9", "--gauge", "euclid"],
                                  ["decompose", "--n", "3,7,20"],
                                  ["sweep", "--k", "2", "--N", "5"]])
def test_json_fields_are_exact(argv):
    _, text = run(*argv)

    def walk(x):
        if isinstance(x, float):
            raise AssertionError(f"float in output: {x}")
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        if isinstance(x, list):
            for v in x:
                walk(v)
    walk(json.loads(text)["result"])


@pytest.mark.parametrize("argv", [["lambda-n", "--n", "2,2,4"], ["bogus"], ["sweep", "--k", "2"],
                                  ["approx", "--x", "1/2", "--Q", "1/2"], ["lambda-n", "--n", "a,b"]])
def test_bad_input_exits_one(argv):
    assert run(*argv)[0] == 1


def test_identity_failure_exits_two(monkeypatch):
    def boom(a, cfg):
        raise IdentityViolation("forced")
    monkeypatch.setattr(cli, "cmd_lambda_n", boom)
    assert run("lambda-n", "--n", "1,1,2")[0] == 2


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    _, text = run("lambda-n", "--n", "1,2,3")
    assert json.loads(text)["config"]["threads"] == 3
