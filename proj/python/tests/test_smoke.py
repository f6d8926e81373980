import json
from fractions import Fraction

import pytest

import tpsharp

M540 = [[1, 1, 1], [1, 4, 16], [1, 16, 256]]


def test_determinants():
    assert tpsharp.det_exact([[1, 1], [1, 4]]) == 3
    assert tpsharp.det_exact(M540) == 540
    assert tpsharp.det_exact([["1/2", Fraction(1, 3)], [1, 1]]) == Fraction(1, 6)
    value, verdict = tpsharp.det_float([[2, 1], [1, 2]])
    assert value == pytest.approx(3.0)
    assert verdict == "Positive"


def test_constants():
    assert tpsharp.ck_enclosure(3) == (2, 2)
    lo, hi = tpsharp.ck_enclosure(4, Fraction(1, 10**12))
    assert hi - lo <= Fraction(1, 10**12)
    assert float((lo + hi) / 2) == pytest.approx(2.618033988749895, abs=1e-12)
    lo, hi = tpsharp.constant_c_tilde(Fraction(1, 1000))
    assert lo <= Fraction(40796, 10000) <= hi
    lo, hi = tpsharp.constant_d(Fraction(1, 100))
    assert lo <= Fraction(406, 100) <= hi


def test_sequence_f():
    assert tpsharp.f_recurrence(4, 4)["values"] == ["1", "1", "3/4", "1/2", "5/16"]
    assert tpsharp.f_closed(3, 2) == "0"


def test_theorems():
    cert = tpsharp.theorem1_check([[2, 1], [1, 2]], strict=True)
    assert cert["verdict"] == "Holds"
    assert cert["details"]["det"] == "3"
    assert tpsharp.theorem6_bound(M540, 4)["bound"] == "512"
    chain = {e["id"]: e for e in tpsharp.proof_chain_check(M540, 4) if e["index"] == -1}
    assert chain["h3"]["margin"] == "228"
    assert tpsharp.minor_scan(M540, 3)["all_positive"]


def test_errors_carry_code_and_cell():
    with pytest.raises(tpsharp.TpsharpError) as info:
        tpsharp.theorem1_check([[1, 0], [1, 2]])
    code, message, position = info.value.args
    assert code == "NonPositiveEntry"
    assert position == (1, 2)
    assert isinstance(info.value, ValueError)


def test_witnesses():
    w = tpsharp.hankel_witness(3, "7/5")
    assert w["params"]["p"] == "3/2"
    assert w["det_sign"]["verdict"] == "Negative"
    t = tpsharp.toeplitz_witness(3, "19/10")
    assert t["membership"] == "Yes"
    assert tpsharp.lemma4_exponents(4) == (8, 14)


def test_sequences():
    assert tpsharp.hutchinson_ratio([1, 2, 1])["ratio"] == "4"
    assert tpsharp.pfm_check([1, 2, 1], 3, 5)["holds"]
    assert not tpsharp.pfm_check([1, 1, 1], 3, 4)["holds"]
    dets = tpsharp.hankel_moment_check([4 ** (n * n) for n in range(5)], 2)
    assert all(d["sign"]["verdict"] == "Positive" for d in dets)


def test_cli_in_process():
    code, out, err = tpsharp.run_cli("--json", "fseq", "--c", "4", "--M", "4")
    assert code == 0
    assert json.loads(out)["results"]["values"][-1] == "5/16"
    code, _, _ = tpsharp.run_cli("sharpness", "--k", "3", "--c", "2")
    assert code == 1
