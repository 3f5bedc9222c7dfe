import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rsv.algebra import index_period
from rsv.catalog import ReesMatrixSpec, catalog_get, cyclic_group, rees_matrix
from rsv.decide import (
    KINDS,
    THM3_FORBIDDEN,
    THM4_FORBIDDEN,
    ClassificationReport,
    CoherenceError,
    SystemVerdict,
    classify_semigroup,
    classify_sigma,
    exponent_candidates,
    forbidden_list,
    identity_systems,
    is_exact_semigroup,
    is_exact_sigma,
    is_rs_semigroup,
    is_rs_sigma,
)
from rsv.varieties import Counterexample, IdentitySystem, satisfies_all
from rsv.words import parse_identities, parse_identity


def system(text):
    return IdentitySystem(tuple(parse_identities(text)))


def as_text(sys_):
    return [(i.lhs, i.rhs) for i in sys_]


def replay(S, cx: dict) -> bool:
    c = Counterexample(
        cx["identity_index"], parse_identity(cx["identity"]), tuple(sorted(cx["assignment"].items())),
        cx["lhs_value"], cx["rhs_value"],
    )
    return c.replay(S)


def test_identity_systems_examples():
    assert as_text(identity_systems("Hall", 1)) == [("xx", "xxx"), ("xyx", "xyxyx"), ("xhzxyz", "xyzxhz")]
    assert as_text(identity_systems("Thm4", 1)) == [("xy", "xxyy"), ("axyb", "ayxb")]
    assert as_text(identity_systems("Thm5b", 2)) == [("xy", "xyyy"), ("axay", "ayax"), ("abxy", "abyx")]
    assert as_text(identity_systems("Thm7a", 2)) == [("xy", "xxxyyy"), ("axyyb", "ayyxb")]


def test_identity_systems_errors():
    with pytest.raises(ValueError):
        identity_systems("Thm8", 1)
    with pytest.raises(ValueError):
        identity_systems("Hall", 0)
    assert len(KINDS) == 12


def test_forbidden_list():
    assert len(forbidden_list(1)) == 13
    assert len(forbidden_list(3)) == 15
    assert [str(k) for k in forbidden_list(2)][-2:] == ["K(1)", "K(2)"]
    with pytest.raises(ValueError):
        forbidden_list(0)


def test_is_rs_sigma_examples():
    v = is_rs_sigma(system("x = x^2\nxy = yx"))
    assert v.is_rs and v.period_bound == 1 and v.reason == "AllForbiddenExcluded"
    v = is_rs_sigma(system("x^2 = x^3"))
    assert not v.is_rs and v.reason == "ForbiddenMember" and v.evidence["member"] == "A"
    v = is_rs_sigma(system("xy = yx"))
    assert not v.is_rs and v.reason == "Balanced"


def test_forbidden_member_evidence_replays():
    for text in ("x^2 = x^3", "xyx = xyxyx", "x^2 = x^4\nxy = yx"):
        sys_ = system(text)
        v = is_rs_sigma(sys_)
        if v.reason == "ForbiddenMember":
            assert satisfies_all(catalog_get(v.evidence["member"]), sys_).holds


def test_is_rs_semigroup_examples():
    assert is_rs_semigroup(catalog_get("B2")).is_rs
    v = is_rs_semigroup(catalog_get("L2_1"))
    cx = v.evidence["counterexample"]
    assert not v.is_rs and cx["identity_index"] == 2
    assert cx["assignment"] == {"x": "e", "h": "a", "z": "a", "y": "b"}
    assert replay(catalog_get("L2_1"), cx)
    v = is_rs_semigroup(catalog_get("N3"))
    cx = v.evidence["counterexample"]
    assert cx["identity_index"] == 0 and (cx["lhs_value"], cx["rhs_value"]) == ("b", "0")


def test_exponent_candidates():
    assert exponent_candidates(cyclic_group(3)) == [3, 1, 2]
    assert exponent_candidates(catalog_get("N3")) == [1, 2, 3]


@pytest.mark.parametrize("name", ["A", "B", "N3", "D", "K(1)", "L2_1", "W_lambda", "F_lambda"])
def test_forbidden_semigroups_are_not_rs(name):
    S = catalog_get(name)
    v = is_rs_semigroup(S)
    assert not v.is_rs
    assert replay(S, v.evidence["counterexample"])


@pytest.mark.parametrize("g", [1, 2, 3])
def test_rees_matrix_semigroups_are_rs(g):
    S = rees_matrix(ReesMatrixSpec.from_pattern(cyclic_group(g), [[1, 1], [0, 1]]))
    v = is_rs_semigroup(S)
    assert v.is_rs and v.period_bound == g


def test_is_exact_sigma_examples():
    v = is_exact_sigma(system("x = x^2\nxy = yx"))
    assert v.exact is True and v.branch == "N2 not in V"
    v = is_exact_sigma(system("xy = yx"))
    assert v.exact is False and not v.rs.is_rs
    v = is_exact_sigma(identity_systems("Hall", 1))
    assert v.rs.is_rs
    assert v.memberships == {"B2": "In", "A0": "In", "A2": "In", "N2": "In"}
    assert v.exact is True and v.branch == "A2 in V"


def test_is_exact_semigroup_examples():
    v = is_exact_semigroup(cyclic_group(2))
    assert v.exact is True and v.branch == "N2 not in V" and v.rs.period_bound == 2
    v = is_exact_semigroup(catalog_get("B2"))
    assert v.exact is True and v.branch == "B2 in V, A0 not in V"
    v = is_exact_semigroup(catalog_get("N2"))
    assert v.rs.is_rs and v.exact is False


def test_exact_inconclusive_on_caps():
    from rsv.caps import Caps

    v = is_exact_semigroup(catalog_get("Z2"), Caps(subset_size=1, free_coordinates=1))
    assert v.memberships["N2"] == "Inconclusive"
    assert v.exact is None


def test_classify_sigma_examples():
    r = classify_sigma(system("xy = x^2 y^2\naxyb = ayxb"))
    assert r.thm4.positive and r.thm4.witness == {"excluded": list(THM4_FORBIDDEN)}
    r = classify_sigma(system("x = x^2\nxy = yx"))
    assert r.thm3.positive and r.thm4.positive
    assert r.thm3.witness == {"excluded": list(THM3_FORBIDDEN)}
    r = classify_sigma(system("xy = yx"))
    assert not r.thm3.positive and r.thm3.witness == {"forbidden_member": "N2"}
    d = r.to_dict()
    assert d["thm5"] == d["thm6"] == d["thm7"] == "unsupported for identity input"


def test_classify_semigroup_examples():
    r = classify_semigroup(cyclic_group(2))
    assert r.thm5.positive and r.thm5.system == "Thm5a" and r.thm5.n == 2
    r = classify_semigroup(catalog_get("L2_1"))
    cx = r.thm3.witness["counterexamples"]["Thm3"]
    assert not r.thm3.positive and cx["identity_index"] == 1
    assert replay(catalog_get("L2_1"), cx)
    r = classify_semigroup(catalog_get("N2"))
    assert r.thm4.positive and r.thm4.n == 1
    assert r.input_mode == "Semigroup" and r.footnotes


@pytest.mark.parametrize("name", ["A", "B2", "S0", "L2_1", "Tl", "Ml", "S2l"])
def test_classify_counterexamples_replay(name):
    S = catalog_get(name)
    r = classify_semigroup(S)
    for t in (r.thm3, r.thm4, r.thm5, r.thm6, r.thm7):
        if not t.positive:
            for cx in t.witness["counterexamples"].values():
                assert replay(S, cx)


def test_parallel_matches_sequential():
    for name in ("B2", "S0", "Tl"):
        S = catalog_get(name)
        assert classify_semigroup(S, parallel=True).to_dict() == classify_semigroup(S).to_dict()
    sys_ = system("x^2 = x^3\nxyx = xyxyx")
    assert classify_sigma(sys_, parallel=True).to_dict() == classify_sigma(sys_).to_dict()


def test_coherence_violation_is_reported():
    ok = classify_sigma(system("x = x^2"))
    with pytest.raises(CoherenceError):
        ClassificationReport("Sigma", ok.rs, ok.exact, SystemVerdict(True), SystemVerdict(False))
    with pytest.raises(CoherenceError):
        ClassificationReport("Sigma", ok.rs, ok.exact, ok.thm3, ok.thm4, thm5=SystemVerdict(True))


@pytest.mark.parametrize("name", ["N2", "L2", "R2", "B2", "A2", "Z2", "Z3", "A0", "S1l", "Tl"])
def test_thm3_implies_thm4(name):
    r = classify_semigroup(catalog_get(name))
    assert not r.thm3.positive or r.thm4.positive


@pytest.mark.parametrize("name", ["B2", "A2", "Z2", "Z3", "N2", "L2", "A0", "S0"])
def test_hall_multiples(name):
    S = catalog_get(name)
    for n in (1, 2, 3):
        if satisfies_all(S, identity_systems("Hall", n)).holds:
            for k in (2, 3):
                assert satisfies_all(S, identity_systems("Hall", k * n)).holds


def test_hall_sequence_is_periodic_in_n():
    # the truth of Hall(n) beyond the index depends only on n mod period
    for name in ("Z2", "Z3", "B2", "A2", "N3"):
        S = catalog_get(name)
        ip = index_period(S)
        for n in range(ip.index, ip.index + 2 * ip.period + 1):
            a = satisfies_all(S, identity_systems("Hall", n)).holds
            b = satisfies_all(S, identity_systems("Hall", n + ip.period)).holds
            assert a == b


POOL = [
    "x = x^2", "xy = yx", "x^2 = x^3", "xyx = x", "x = x^3", "xy = xyx", "xyz = xzy",
    "x^2 y = y x^2", "xy = x^2 y^2", "axyb = ayxb", "xyx = xyxyx",
]


@given(st.lists(st.sampled_from(POOL), min_size=1, max_size=3, unique=True), st.sampled_from(POOL))
@settings(max_examples=30, deadline=None)
def test_rs_monotone_under_extension(base, extra):
    small = system("\n".join(base))
    if not is_rs_sigma(small).is_rs or extra in base:
        return
    big = system("\n".join(base + [extra]))
    assert is_rs_sigma(big).is_rs


def test_rs_sigma_agrees_with_semigroup_mode_on_examples():
    # Var(S) is RS iff S satisfies Hall; for the equational theory of Z2 both modes agree
    assert is_rs_sigma(system("x = x^3\nxy = yx")).is_rs
    assert is_rs_semigroup(cyclic_group(2)).is_rs
    assert not is_rs_sigma(system("x^2 = x^3\nxy = yx")).is_rs
    assert not is_rs_semigroup(catalog_get("A")).is_rs


def test_every_forbidden_member_fails_hall():
    for key in forbidden_list(3):
        S = catalog_get(key)
        for n in (1, 2, 3):
            assert not satisfies_all(S, identity_systems("Hall", n)).holds, (key, n)
