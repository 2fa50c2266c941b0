import json

import pytest

from wreathlab.cli import dec15, main, parse_rational
from wreathlab.errors import WreathlabError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_rational():
    from fractions import Fraction
    assert parse_rational("3/8") == Fraction(3, 8)
    assert parse_rational("-2") == Fraction(-2)
    for bad in ("0.5", "1e-3", "a/b", "1/2/3"):
        with pytest.raises(WreathlabError):
            parse_rational(bad)


def test_dec15():
    from fractions import Fraction
    assert dec15(Fraction(3, 8)) == "0.375"
    assert dec15(Fraction(1, 3)) == "0.333333333333333"
    assert dec15(Fraction(2, 3)) == "0.666666666666667"


def test_stats_text(capsys):
    code, out, _ = run(capsys, "stats", "S(4)")
    assert code == 0
    assert "order = 24 = 24" in out
    assert "delta_0 = 3/8 = 0.375" in out
    assert "stir_2 = 11" in out


def test_stats_json_schema(capsys):
    code, out, _ = run(capsys, "stats", "wrP(S(2),C(2))", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "stats"
    assert doc["status"] == "ok"
    by_name = {r["name"]: r for r in doc["results"]}
    assert by_name["delta_0"]["rational"] == {"num": 5, "den": 8}
    assert by_name["delta_0"]["decimal"] == "0.625"


def test_stats_csv(capsys):
    code, out, _ = run(capsys, "stats", "S(3)", "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "name,num,den,decimal"
    assert any(line.startswith("delta_0,1,3,") for line in lines)


def test_stats_cycle_index(capsys):
    code, out, _ = run(capsys, "stats", "S(3)", "--cycle-index")
    assert code == 0
    assert "Z term" in out


def test_stats_cap_exceeded(capsys):
    code, _, err = run(capsys, "stats", "S(100)")
    assert code == 2
    assert "cap" in err


def test_stats_cap_flag(capsys):
    code, _, err = run(capsys, "stats", "S(5)", "--cap", "10")
    assert code == 2


def test_stats_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("WREATHLAB_CAP", "10")
    code, _, err = run(capsys, "stats", "S(5)")
    assert code == 2


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "stats", "S((")
    assert code == 1
    assert "position" in err


def test_usage_error(capsys):
    assert main(["no-such-verb"]) == 1


def test_verify_equal(capsys):
    code, out, _ = run(capsys, "verify", "wrI", "S(3)", "C(2)", "--all-k")
    assert code == 0
    assert "DIFFER" not in out
    assert "EQUAL" in out


def test_verify_single_k(capsys):
    code, out, _ = run(capsys, "verify", "wrP", "S(3)", "C(3)", "--k", "0")
    assert code == 0
    assert "37/81" in out


def test_verify_prod(capsys):
    code, out, _ = run(capsys, "verify", "prodI", "S(2)", "S(2)", "--k", "2")
    assert code == 0
    assert "1/2" in out


def test_index(capsys):
    code, out, _ = run(capsys, "index", "C(3)", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "index"
    assert len(doc["results"]) == 2  # identity type and 3-cycle type


def test_bounds_pass(capsys):
    code, out, _ = run(capsys, "bounds", "wrP(S(3),S(2))",
                       "--sandwich", "C=A(3)")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_bounds_even_wreath(capsys):
    code, out, _ = run(capsys, "bounds", "evenWr(4,C(2),power)",
                       "--sandwich", "C=A(4)")
    assert code == 0
    assert "sandwich_lower = 11/32" in out
    assert "sandwich_upper = 5/8" in out


def test_bounds_intransitive(capsys):
    code, _, err = run(capsys, "bounds", "prodI(S(2),S(2))")
    assert code == 1
    assert "transitive" in err


def test_formula_verbs(capsys):
    code, out, _ = run(capsys, "formula", "sharply", "--n", "4", "--t", "3")
    assert code == 0
    assert "3/8" in out
    code, out, _ = run(capsys, "formula", "power-cyclic",
                       "--deltaA", "1/2", "--n", "2")
    assert code == 0
    assert "5/8" in out


def test_density_imprimitive_json(capsys):
    code, out, _ = run(capsys, "density", "imprimitive",
                       "--deltaA", "1/3", "--target", "1/3", "--eps", "1/10")
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "imprimitive-agl-chain"
    assert doc["parameters"]["r"] == 0


def test_density_verify_oracle(capsys):
    code, out, _ = run(capsys, "density", "imprimitive",
                       "--deltaA", "1/3", "--target", "1/2", "--eps", "1/6",
                       "--verify-oracle", "--base", "S(3)")
    assert code == 0
    doc = json.loads(out)
    assert doc["parameters"]["q"] == 7
    oracle = doc.get("oracle")
    assert oracle is not None
    if oracle["checked"]:
        assert oracle["equal"] is True


def test_density_primitive_infeasible_exit(capsys):
    code, out, _ = run(capsys, "density", "primitive", "--top", "C(2)",
                       "--target", "1/1000000", "--eps", "1/1000000000")
    assert code == 2
    doc = json.loads(out)
    assert doc["infeasible"] is True


def test_density_rejects_decimal_literals(capsys):
    code, _, err = run(capsys, "density", "cyclic", "--deltaA", "0.5",
                       "--target", "9/10", "--eps", "1/20")
    assert code == 1


def test_limits(capsys):
    code, out, _ = run(capsys, "limits", "--n", "12", "--deltaA", "1/3")
    assert code == 0
    assert "imprimitive_symmetric_delta" in out
