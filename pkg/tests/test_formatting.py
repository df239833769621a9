import json
from fractions import Fraction

import mpmath
import pytest

from utils.formatting import emit_csv, emit_table, plain, render, write_csv
from wreath.irreps import WreathIrrep

from conftest import P


def test_plain_values():
    assert plain(Fraction(1, 3)) == "1/3"
    assert plain(Fraction(1, 4), as_float=True) == 0.25
    assert plain(mpmath.mpf("0.5")) == 0.5
    assert plain(P("2+1")) == "2+1"
    assert plain({P("3"): [Fraction(1, 2), True]}) == {"3": ["1/2", True]}
    assert plain(WreathIrrep.homogeneous(P("2"), 1)) == {"kind": "hom", "a": "2", "sign": "+"}


def test_json_is_sorted_with_trailing_newline():
    text = render({"b": Fraction(1, 2), "a": 1}, "json")
    assert text.endswith("\n")
    assert list(json.loads(text)) == ["a", "b"]
    assert json.loads(render({"x": {"p": "3/4"}}, "json", as_float=True)) == {"x": {"p": 0.75}}


def test_csv_and_table():
    rows = [{"n": 2, "p": Fraction(1, 2)}, {"n": 3, "p": Fraction(1, 3), "extra": "x"}]
    assert emit_csv(rows) == "n,p,extra\n2,1/2,\n3,1/3,x\n"
    table = emit_table(rows).splitlines()
    assert table[0].split() == ["n", "p", "extra"]
    assert table[2].split() == ["2", "1/2"]
    assert emit_table([]) == ""


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render({}, "xml")


def test_write_csv_creates_parents(tmp_path):
    path = tmp_path / "out" / "rows.csv"
    write_csv(path, [{"n": 2, "p": Fraction(1, 2)}])
    assert path.read_text() == "n,p\n2,0.5\n"
