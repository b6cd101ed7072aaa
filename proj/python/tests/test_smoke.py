import cmath
import json

import pytest

import foq


def qft():
    return foq.parse(foq.examples()["qft"])


def test_check_and_level():
    verdict = json.loads(foq.check_pfoq(qft()))
    assert verdict["accepted"]
    assert [foq.level(qft(), n) for n in (1, 2, 3)] == [4, 8, 12]


def test_run_matches_dft():
    n = 3
    out = foq.run(qft(), "000")
    assert out["ok"]
    for a in out["amplitudes"]:
        assert abs(a - 1 / cmath.sqrt(2**n)) < 1e-9


def test_inverse_round_trip():
    p = qft()
    fwd = foq.run(p, "101")["amplitudes"]
    back = foq.run(foq.invert(p), fwd)["amplitudes"]
    assert abs(back[5] - 1) < 1e-9


def test_compile_and_diff():
    b = foq.parse(foq.examples()["fibo"])
    circuit, stats = foq.compile(b, 7)
    assert json.loads(circuit)["ancillas"] == 6
    assert json.loads(stats)["gates"] > 0
    report = json.loads(foq.diff_check(b, 4))
    assert report["max_deviation"] < 1e-9


def test_algebra():
    t = foq.parse_term("(kqrec :k 1 :t 1 :f not :g i :h i :sel (0 rec) (1 i))")
    p = foq.to_pfoq(t)
    assert json.loads(foq.check_pfoq(p))["accepted"]
    for bits in ("0", "01", "110"):
        want = foq.eval_algebra(t, bits)
        got = foq.run(p, bits)["amplitudes"]
        assert max(abs(x - y) for x, y in zip(want, got)) < 1e-9
    assert len(foq.phi_encode_bits("1", [0, 1])) == 23


def test_errors():
    with pytest.raises(ValueError):
        foq.parse("decl f(p) { skip; ")
    with pytest.raises(ValueError):
        foq.parse_term("(comp not)")
    with pytest.raises(RuntimeError):
        foq.compile(foq.parse(foq.examples()["qft"].replace("call rec(p \\ [1]);", "call rec(p \\ [1]); call rec(p \\ [1]);")), 3)
