import json

import pytest

import freetop


def test_word_arithmetic():
    w = freetop.Word("3 5' 5 2")
    assert str(w) == "3 2"
    assert len(w) == 2
    assert str(w.inverse()) == "2' 3'"
    assert w * w.inverse() == freetop.Word("")
    assert freetop.Word("31").conjugate(freetop.Word("5")) == freetop.Word("5' 31 5")
    core, wing = freetop.Word("5' 31 5").cyclic_reduce()
    assert str(core) == "31"
    assert str(wing) == "5"
    assert freetop.Word("3 5' 3").index_sum() == 11


def test_phi_values():
    ctx = freetop.PhiContext("dyadic")
    assert ctx.phi(2, freetop.Word("3")) == 5
    assert ctx.phi(0, freetop.Word("3 5")) == 8
    assert ctx.nu(31) == 5
    assert freetop.phi_closed(1, freetop.Word("2 4' 2")) == 9


def test_membership_certificates():
    ctx = freetop.PhiContext()
    spec = freetop.SubbasicSpec("", 1)
    status, cert = freetop.sym_member_bounded(ctx, freetop.Word("15 7"), spec, 3, 2)
    assert status == "member"
    payload = json.loads(cert.to_json())
    assert [f["slot"] for f in payload["factors"]] == [4, 3]
    assert freetop.cert_verify(ctx, cert, freetop.Word("15 7"))

    status, cert = freetop.sym_member_bounded(ctx, freetop.Word("5' 31 5"), spec, 3, 4)
    assert status == "unknown" and cert is None

    witness = freetop.vphi_member(ctx, freetop.Word("5' 31 5"), 0)
    assert witness is not None
    conj, letter = witness
    assert str(conj) == "5" and str(letter) == "31"


def test_quotient_pipeline():
    q = freetop.QuotientMap("zp2", depth=16, n_max=6)
    assert q.f_str(0) == "0"
    assert q.f_str(2) == "1"
    assert q.bar_f_str(freetop.Word("0 2")) == "1"
    eq1 = json.loads(q.eq1(10, 3))
    assert eq1["holds"]
    ctx = freetop.PhiContext()
    lemma = json.loads(q.main_lemma(ctx, freetop.Word("3 1'"), 2))
    assert lemma["verdict"] == "PASS"
    cover = json.loads(q.openness(1, 10))
    assert cover["complete"]


def test_oracles():
    o = freetop.make_oracle("symfin")
    g = o.enumerate(2)
    assert o.format(g) == "(0 1)"
    assert o.theta_exact(g, 1) == 2
    assert o.basis_member(0, g)
    assert not o.basis_member(1, g)
    with pytest.raises(freetop.FreetopError):
        freetop.make_oracle("nope")


def test_finite_groups_and_bk():
    s3 = freetop.FiniteGroup.symmetric(3)
    assert s3.order() == 6
    assert s3.mul(1, 2) == 4
    z8 = freetop.FiniteGroup.cyclic(8)
    chain = [[0, 1, 2, 3, 4, 5, 6, 7], [0, 2, 4, 6], [0, 4], [0]]
    report = json.loads(freetop.bk_check_finite(z8, chain, 0, 3))
    assert report["violation_count"] == 0
    with pytest.raises(freetop.FreetopError):
        freetop.bk_check_finite(z8, [[0, 1]], 0, 2)  # not symmetric


def test_pw_demo_and_suite():
    transcript = json.loads(freetop.pw_demo("zp2", seed=5))
    assert transcript["checks"]["invariant_member"] is True

    cfg = {
        "suites": ["phi"],
        "groups": ["zp2"],
        "seed": 1,
        "phi": {"max_len": 2, "max_letter": 4, "max_n": 2},
    }
    report = json.loads(freetop.run_suite(json.dumps(cfg)))
    assert report["summary"]["fail"] == 0
    assert report["schema"] == 1
