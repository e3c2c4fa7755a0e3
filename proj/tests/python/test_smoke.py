import padiq


FORM_1139 = {"diag": [1, 1, 1, 9]}


def test_rep_fixture():
    r = padiq.rep({"diag": [1, 1, 3, 3]}, 3, 9, primitive=True)
    assert r["decided"] == "NOT_REPRESENTED"
    r = padiq.rep({"diag": [1, 1, 3, 3]}, 3, 9)
    assert r["decided"] == "REPRESENTED"


def test_jordan_blocks():
    j = padiq.jordan({"blocks": ["Ahat", "A"]}, 2)
    scales = [c["scale_exp"] for c in j["components"]]
    assert scales == [-1, 0]
    assert all(not c["proper"] for c in j["components"])


def test_spectrum_and_universal():
    s = padiq.spectrum({"blocks": ["Hhat"]}, 2, e_max=2, primitive=True)
    assert len(s) == 12
    u = padiq.universal(FORM_1139, 2)
    assert u["universal"]["universal"] is True
    assert u["primitively_universal"] == "NO"


def test_scan_excluded():
    s = padiq.scan(FORM_1139, 100, threads=2)
    assert s["excluded"] == [7]


def test_verdict():
    v = padiq.verdict({"diag": [1, 1, 1, 2]})
    assert v["verdicts"]["almost_primitively_universal"] == "YES"


def test_theorem3():
    t = padiq.theorem3({"diag": [1, 1, 2, 4]})
    assert not t["applicable"]
    assert "not applicable" in t["verdict"]


def test_small_helpers():
    assert padiq.is_isotropic({"blocks": ["H"]}, 2)
    assert not padiq.is_isotropic({"blocks": ["A"]}, 2)
    assert padiq.hilbert_symbol(2, 3, 2) == padiq.hilbert_symbol(3, 2, 2)
    c = padiq.square_class(18, 3)
    assert c["e"] == 2 and c["unit"] == 2


def test_gap():
    g = padiq.gap({"blocks": ["A"]}, 2)
    assert g["bound"] == 3 and g["empirical_min"] == 2
