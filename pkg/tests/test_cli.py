import io
import json
import shutil
import subprocess
import sys

import pytest

from uqsl2.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


GOLDENS = [
    (("normalize", "z*x"), 0, "(1 - q^-2)*1 + q^-2*x*z\n"),
    (("member", "--region", "uvee", "nu_x"), 1, "false\n"),
    (("rep", "--standard", "1", "--element", "Lambda"), 0, "[q^2 + q^-2, 0]\n[0, q^2 + q^-2]\n"),
    (("catalog", "--filter", "casequit"), 0,
     "".join(f"casequit-{i}: pass\n" for i in range(1, 7)) + "6 records, 6 pass, 0 fail\n"),
]


@pytest.mark.parametrize("argv,code,text", GOLDENS, ids=lambda v: v[0] if isinstance(v, tuple) else None)
def test_goldens(argv, code, text):
    assert call(*argv)[:2] == (code, text)


def test_normalize_fixed_point():
    for expr in ("Lambda*e", "nu_x*y^-3*z^2", "X*Z - Z*X", "A^3"):
        _, once, _ = call("normalize", expr)
        _, twice, _ = call("normalize", once.strip())
        assert once == twice


def test_normalize_json():
    code, out, _ = call("normalize", "--json", "z*x")
    assert code == 0
    assert json.loads(out) == [{"r": 0, "s": 0, "t": 0, "coeff": "1 - q^-2"},
                               {"r": 1, "s": 0, "t": 1, "coeff": "q^-2"}]


def test_normalize_chevalley():
    assert call("normalize", "--basis", "chevalley", "f*e")[1] == "(q/(-1 + q^2))*k^-1 + (-q/(-1 + q^2))*k + e*f\n"


def test_parse_error_exit_2():
    code, out, err = call("normalize", "x + * y")
    assert code == 2 and out == ""
    assert "position 4" in err and err.rstrip().endswith("^")


def test_usage_errors():
    assert call()[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("apply", "--morphism", "rho", "x")[0] == 2
    assert call("member", "--region", "nowhere", "x")[0] == 2
    assert call("rep", "--standard", "0")[0] == 2


def test_convert_and_apply():
    assert call("convert", "x")[1] == "k^-1 + (-1 + q^-2)*e*k^-1\n"
    assert call("convert", "--basis", "equitable", "k")[1] == "y\n"
    assert call("apply", "--morphism", "tau", "nu_x")[1] == call("normalize", "nu_z")[1]
    assert call("apply", "--morphism", "dagger", "A")[1] == call("normalize", "A")[1]
    sub = call("apply", "--morphism", "sigma", "--subst", "a=q", "e")[1]
    assert sub == call("normalize", "k^-1*e*k")[1]


def test_member_true():
    assert call("member", "--region", "UprimeOdd", "Lambda")[:2] == (0, "true\n")


def test_verify_and_checks():
    code, out, _ = call("verify")
    assert code == 0 and "fail" not in out
    assert call("verify", "uvee-zZA-xyz")[0] == 0
    assert call("psi-check", "--standard", "2")[0] == 0
    code, out, _ = call("td-check", "--standard", "2", "--json")
    assert code == 0 and all(json.loads(out).values())


def test_catalog_all():
    code, out, _ = call("catalog")
    assert code == 0 and out.strip().endswith("0 fail")


def test_catalog_empty_filter():
    assert call("catalog", "--filter", "nonexistent-")[:2] == (0, "0 records, 0 pass, 0 fail\n")


def test_console_script():
    exe = shutil.which("uqsl2")
    cmd = [exe] if exe else [sys.executable, "-m", "uqsl2.cli"]
    res = subprocess.run(cmd + ["normalize", "z*x"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "(1 - q^-2)*1 + q^-2*x*z\n"
