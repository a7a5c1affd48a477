import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from obstruct import certs
from obstruct.certs import check, dumps, mutable_paths, mutate, verify
from obstruct.errors import CertificateInvalid
from obstruct.suites import mutation_pool


@pytest.fixture(scope="module")
def pool():
    return mutation_pool(0)


def by_kind(pool, kind):
    return [c for c in pool if c["kind"] == kind]


def test_pool_covers_every_kind(pool):
    assert {c["kind"] for c in pool} | {"point"} == set(certs.CHECKERS)


def test_point_certificate():
    from obstruct.arith import RingCtx
    from obstruct.quadric import check_point

    R = RingCtx(("x", "y"))
    cert = certs.point_to_cert(check_point(["-x-y-x*y", "x+x^2", "y+y^2", "-(1+y)*(1+y)", "-1-x"], "Q", 2, R))
    assert verify(cert)
    for p in mutable_paths(cert):
        assert not check(mutate(cert, p))[0], p


def test_pool_valid_and_serializable(pool):
    for c in pool:
        again = json.loads(dumps(c))
        assert again == c
        assert verify(again)


def test_deterministic_serialization(pool):
    assert [dumps(c) for c in pool] == [dumps(c) for c in mutation_pool(0)]


def test_unknown_kind():
    with pytest.raises(CertificateInvalid):
        verify({"kind": "nonsense"})
    ok, why = check({"kind": "nonsense"})
    assert not ok and "unknown" in why


def test_wrong_schema_version(pool):
    bad = dict(pool[0], schema_version="0")
    assert not check(bad)[0]


def test_malformed(pool):
    bad = dict(by_kind(pool, "reduction")[0])
    bad["word"] = [{"family": 1, "i": 0, "j": 1}]
    ok, why = check(bad)
    assert not ok and "malformed" in why


def test_lambda_perturbation_named(pool):
    cert = by_kind(pool, "reduction")[-1]
    path = next(p for p in mutable_paths(cert) if p[-1] == "lambda")
    ok, why = check(mutate(cert, path))
    assert not ok and "u_0" in why


def test_empty_word_on_base_point():
    from obstruct.arith import RingCtx
    from obstruct.quadric import base_qprime
    from obstruct.reduction import reduce_to_base

    cert = certs.reduction_to_cert(reduce_to_base(base_qprime(2, RingCtx(()))))
    assert cert["word"] == [] and verify(cert)


@pytest.mark.parametrize("kind", ["membership", "point", "reduction", "chain", "translation",
                                  "orientation", "lift", "sumrep"])
def test_every_single_mutation_detected(pool, kind):
    for cert in by_kind(pool, kind)[:2]:
        paths = mutable_paths(cert)
        assert paths
        missed = [p for p in paths if check(mutate(cert, p))[0]]
        assert missed == []


def test_combine_mutations_sampled(pool):
    cert = by_kind(pool, "combine")[0]
    paths = mutable_paths(cert)
    rng = random.Random(11)
    for p in rng.sample(paths, 25):
        assert not check(mutate(cert, p))[0], p


@given(st.data())
def test_random_delta_detected(pool, data):
    cert = data.draw(st.sampled_from([c for c in pool if c["kind"] != "combine"]))
    path = data.draw(st.sampled_from(mutable_paths(cert)))
    delta = data.draw(st.integers(1, 50) | st.integers(-50, -1))
    assert not check(mutate(cert, path, delta))[0]
