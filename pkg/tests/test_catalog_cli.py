import json

import pytest

from wreathlab import GroupExpressionError
from wreathlab.catalog import CATALOG_EXPRESSIONS, catalog, parse_group
from wreathlab.cli import main


@pytest.mark.parametrize("expr,order", [("C5", 5), ("D4", 8), ("Q8", 8), ("S3", 6), ("A4", 12), ("E", 1),
                                        ("C2 * C3", 6), ("wr(C2,C2)", 8), ("wr(C2, C2 ; asc)", 8),
                                        ("wr(C2,C2,C2)", 2048), ("wr(C2,C2,C2;asc)", 128), ("wr(S3,C2)", 72),
                                        ("(C2*C2)*C3", 12), ("wr(C2*C2,C2)", 32), ("wr(C3)", 3)])
def test_parse_orders(expr, order):
    assert parse_group(expr).order == order


@pytest.mark.parametrize("expr,pos", [("C1", 0), ("D2", 0), ("C", 1), ("C2 *", 4), ("wr(C2,C2;up)", 9),
                                      ("X", 0), ("C2 C3", 3), ("wr(C2", 5)])
def test_parse_errors_report_position(expr, pos):
    with pytest.raises(GroupExpressionError) as info:
        parse_group(expr)
    assert info.value.position == pos
    assert f"position {pos}" in str(info.value)


def test_c1_message_points_to_e():
    with pytest.raises(GroupExpressionError, match="use E"):
        parse_group("C1")


def test_catalog():
    assert len(CATALOG_EXPRESSIONS) == len(set(CATALOG_EXPRESSIONS))
    groups = catalog(24)
    orders = [G.order for _, G in groups]
    assert orders == sorted(orders)
    assert len(catalog(512)) >= 25


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info_text_and_json(capsys):
    code, out, _ = run(capsys, "info", "S3")
    assert code == 0 and "order        6" in out and "semiabelian  yes" in out
    code, out, _ = run(capsys, "info", "wr(C2,C2;desc)", "--format", "json")
    data = json.loads(out)
    assert code == 0 and (data["order"], data["dg"], data["dl"]) == (8, 2, 2)


def test_info_rejects_c1(capsys):
    code, _, err = run(capsys, "info", "C1")
    assert code == 2 and "use E" in err


def test_cap_exit_code(capsys):
    code, _, err = run(capsys, "info", "wr(C2,C2,C2,C2,C2)")
    assert code == 3 and "CapExceeded" in err
    code, _, err = run(capsys, "info", "wr(C2,C2,C2)", "--element-cap", "100")
    assert code == 3


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "info", "S3", "--element-cap", "0")[0] == 2
    assert run(capsys, "info")[0] == 2


def test_verify_functorial_text(capsys):
    code, out, _ = run(capsys, "verify", "functorial")
    assert code == 0
    assert "PASS  [functorial] associativity and collapse chain (C2,C2,C2)" in out
    assert "0 failed" in out


def test_verify_towers_json(capsys):
    code, out, _ = run(capsys, "verify", "towers", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["counts"]["fail"] == 0
    names = {c["name"]: c for c in data["checks"]}
    assert names["derived length of [2, 2, 2]"]["status"] == "pass"


def test_verify_with_tight_caps_skips(capsys):
    code, out, _ = run(capsys, "verify", "towers", "--element-cap", "100", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["counts"]["skip"] > 0 and data["counts"]["fail"] == 0


@pytest.mark.parametrize("expr,exact", [("D4", 2), ("S3", 2), ("Q8", 2)])
def test_wl(capsys, expr, exact):
    code, out, _ = run(capsys, "wl", expr, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["exact"] == exact
    code, out, _ = run(capsys, "wl", expr)
    assert f"wl      exact {exact}" in out


def test_wl_budget_flag(capsys):
    code, out, _ = run(capsys, "wl", "S3*S3", "--tuple-budget", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["exact"] is None and data["search"]["budget_exhausted"]


def test_survey_small_and_empty(capsys):
    code, out, _ = run(capsys, "survey", "--max-order", "8", "--format", "tsv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("label\torder")
    labels = [l.split("\t")[0] for l in lines[1:]]
    assert "wr(C2,C2)" in labels and "Q8" in labels
    row = next(l for l in lines if l.startswith("wr(C2,C2)"))
    assert row.endswith("D4")
    code, out, _ = run(capsys, "survey", "--max-order", "0", "--format", "json")
    assert code == 0 and json.loads(out)["rows"] == []


def test_realize_cyclic(capsys):
    code, out, _ = run(capsys, "realize-cyclic", "4")
    assert code == 0 and "p = 5" in out and "C4 realized tamely with 1 ramified prime" in out
    code, out, _ = run(capsys, "realize-cyclic", "3", "--format", "json")
    assert json.loads(out)["p"] == 7
    code, _, err = run(capsys, "realize-cyclic", "1")
    assert code == 2 and "trivial group" in err


def test_timeout_exit_code(capsys):
    code, _, err = run(capsys, "survey", "--max-order", "64", "--timeout-secs", "0.001")
    assert code == 3 and "Cancelled" in err


def test_seed_is_reported(capsys):
    code, out, _ = run(capsys, "info", "C2", "--seed", "11", "--format", "json")
    assert json.loads(out)["seed"] == 11
