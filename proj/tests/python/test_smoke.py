import json
from fractions import Fraction

import pytest

import mapvir

SQUARE = {"kind": "product_local", "factors": [{"point": "0", "order": 2}]}
TWO_POINTS = {"kind": "product_local", "factors": [{"point": "0", "order": 1}, {"point": "1", "order": 1}]}


def colored_partitions(d, n):
    c = [1] + [0] * n
    for k in range(1, n + 1):
        for _ in range(d):
            for i in range(k, n + 1):
                c[i] += c[i - k]
    return c


def test_bracket():
    assert mapvir.bracket("d[2]*1", "d[-2]*1") == "-4*d[0] + 1/2*c"
    assert mapvir.bracket("d[1]*t", "d[-1]*1", SQUARE) == "d[0]*(-2*t)"


def test_verma_dims_match_partitions():
    assert mapvir.verma_dims(10) == colored_partitions(1, 10)
    assert mapvir.verma_dims(5, TWO_POINTS) == colored_partitions(2, 5)
    assert len(mapvir.pbw_basis(3, SQUARE)) == 10


def test_straighten():
    assert mapvir.straighten("d[-1] . d[-2]") == "d[-2]*1 . d[-1]*1 - d[-3]*1"


def test_singular_and_quotient():
    phi = {"d0": {"1": "-1/4"}, "c": {"1": "1"}}
    (v,) = mapvir.singular_vectors(phi, 2)
    assert "d[-2]*1" in v and "d[-1]*1 . d[-1]*1" in v
    assert mapvir.quotient_dims({"d0": {"1": "5/7"}, "c": {"1": "2"}}, 4) == [1, 1, 2, 3, 5]


def test_check_and_classify():
    rep = mapvir.check({"d0": {"1": "3", "t": "0"}}, SQUARE)
    assert rep["status"] == "reducible_certified"
    assert rep["witness"] == "(t)"
    rec = mapvir.classify({"d0": {"1": "5", "t": "2"}}, TWO_POINTS)
    assert rec["verdict"] == "hw_tensor_of_generalized_evals"
    assert len(rec["components"]) == 2


def test_int_series():
    coeff, target = mapvir.int_series_act("1/2", "1/3", (-10, 10), 2, 1)
    assert Fraction(coeff) == Fraction(17, 6)
    assert target == 3
    spec = {"variant": "int_series_eval", "a": "1/2", "b": "1/3", "point": "0", "window": [-20, 20]}
    table = mapvir.weight_multiplicities(spec, (-3, 3), TWO_POINTS)
    assert "1" in json.dumps(table)
    ann = mapvir.annihilator_support(spec, TWO_POINTS)
    assert ann["support"] == ["0"]


def test_errors():
    with pytest.raises(ValueError):
        mapvir.bracket("d[1]*t", "d[2]")
    with pytest.raises(ArithmeticError):
        mapvir.int_series_act("0", "0", (-2, 2), 3, 1)
    code, _, err = mapvir.run("check", "--reducible", "-A", '{"kind":"nope"}', "--phi", "{}")
    assert code == 1 and err


def test_selftest():
    assert all(r["failures"] == 0 for r in mapvir.selftest(1))
