import pytest

import oracles
from rsv.algebra import (
    are_isomorphic,
    dual,
    find_identity,
    green,
    is_completely_0_simple,
    isomorphism,
    validate,
)
from rsv.caps import CapExceeded, Caps
from rsv.catalog import (
    CATALOG_NAMES,
    INDICATOR_PRESENTATIONS,
    CatalogKey,
    ReesMatrixSpec,
    brandt,
    catalog_get,
    coset_extension,
    cyclic_group,
    indicator_presentation,
    is_b2_sandwich,
    parse_key,
    rees_matrix,
)
from rsv.rewriting import enumerate_presentation, parse_presentation
from rsv.words import ParseError

SIZES = {
    "A": 4, "B": 6, "C_lambda": 5, "C_rho": 5, "N3": 3, "D": 6, "F_lambda": 6, "F_rho": 6,
    "W_lambda": 12, "W_rho": 12, "L2_1": 3, "R2_1": 3, "N2": 2, "A0": 4, "A2": 5, "B2": 5,
    "S0": 4, "S1l": 3, "S1r": 3, "S2l": 6, "S2r": 6, "S3l": 4, "S3r": 4, "Tl": 9, "Tr": 9,
    "Ml": 6, "Mr": 6, "L2": 2, "R2": 2,
}


@pytest.mark.parametrize("name", sorted(SIZES))
def test_catalog_entries_are_valid(name):
    S = catalog_get(name)
    assert len(S) == SIZES[name]
    assert oracles.associative(oracles.table(S))
    if S.zero is not None:
        z = S.zero
        assert all(S.table[z][a] == z == S.table[a][z] for a in range(len(S)))


def test_catalog_names_cover_sizes():
    assert set(CATALOG_NAMES) == set(SIZES) | {"K"}


@pytest.mark.parametrize("n,size", [(1, 9), (2, 12), (3, 15)])
def test_k_sizes(n, size):
    assert len(catalog_get("K", n)) == size
    assert catalog_get(f"K({n})") is catalog_get("K", n)


@pytest.mark.parametrize("number", sorted(INDICATOR_PRESENTATIONS))
def test_presentations_define_catalog_entries(number):
    name = INDICATOR_PRESENTATIONS[number]
    ns = (1, 2, 3) if name == "K" else (1,)
    for n in ns:
        S = enumerate_presentation(indicator_presentation(number, n))
        assert are_isomorphic(S, catalog_get(name, n if name == "K" else None))


@pytest.mark.parametrize("pair", [("C_lambda", "C_rho"), ("F_lambda", "F_rho"), ("W_lambda", "W_rho"),
                                  ("L2_1", "R2_1"), ("S1l", "S1r"), ("S2l", "S2r"), ("S3l", "S3r"),
                                  ("Tl", "Tr"), ("Ml", "Mr"), ("L2", "R2")])
def test_duals_are_antiisomorphic(pair):
    left, right = (catalog_get(n) for n in pair)
    assert are_isomorphic(dual(left), right)


def test_self_dual_entries():
    for name in ("A", "B", "N3", "D", "N2", "B2", "S0"):
        assert are_isomorphic(dual(catalog_get(name)), catalog_get(name))


def test_presentation_parse_errors():
    with pytest.raises(ParseError):
        parse_presentation("rels: x = x^2")
    with pytest.raises(ParseError):
        parse_presentation("gens: x\nrels: x x")
    with pytest.raises(ParseError):
        parse_presentation("gens: x\nrels: x = y")
    with pytest.raises(ParseError) as e:
        parse_presentation("gens: x\nrels: x = x^2\nx^0 = x")
    assert e.value.line == 3


def test_presentation_chain_and_zero():
    p = parse_presentation("gens: x\nrels: x^2 = x^3 = x^4")
    assert p.relations == (("xx", "xxx"), ("xxx", "xxxx"))
    q = parse_presentation("gens: x\nrels: 0 = x^2")
    assert q.relations == (("xx", "0"),) and q.has_zero
    S = enumerate_presentation(q)
    assert len(S) == 2 and S.zero is not None


def test_presentation_cap_exceeded():
    # the free monogenic semigroup is infinite
    with pytest.raises(CapExceeded) as e:
        enumerate_presentation(parse_presentation("gens: x, y\nrels: xy = yx"), Caps(pres_elements=50))
    assert e.value.cap in ("pres_elements", "pres_word_length")


def test_catalog_key_errors():
    with pytest.raises(KeyError):
        CatalogKey("Q")
    with pytest.raises(ValueError):
        CatalogKey("K")
    with pytest.raises(ValueError):
        CatalogKey("A", 2)
    with pytest.raises(ValueError):
        parse_key("K(0)")
    assert str(parse_key("K2")) == "K(2)"
    assert str(parse_key("K", 4)) == "K(4)"
    assert len(catalog_get("Z5")) == 5


def test_cyclic_group_basics():
    G = cyclic_group(4)
    assert G.elements == ("e", "g", "g^2", "g^3")
    assert find_identity(G) == 0
    with pytest.raises(ValueError):
        cyclic_group(0)


def test_rees_spec_validation():
    G = cyclic_group(2)
    with pytest.raises(ValueError):
        ReesMatrixSpec(G, 2, 1, ((0,),))
    with pytest.raises(ValueError):
        ReesMatrixSpec.from_pattern(G, [[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        ReesMatrixSpec(catalog_get("N2"), 1, 1, ((0,),))
    with pytest.raises(ValueError):
        ReesMatrixSpec(G, 1, 1, ((5,),))


def test_b2_is_brandt_over_trivial_group():
    assert are_isomorphic(catalog_get("B2"), brandt(cyclic_group(1), 2))


def test_a2_is_rees_matrix():
    spec = ReesMatrixSpec.from_pattern(cyclic_group(1), [[1, 1], [0, 1]])
    assert are_isomorphic(catalog_get("A2"), rees_matrix(spec))


def test_brandt_z2_has_nine_elements():
    B = brandt(cyclic_group(2), 2)
    assert len(B) == 9 and validate(B).ok
    assert is_completely_0_simple(B)
    assert all(len(h) == 2 for h in green(B).h_classes if B.zero not in h)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("g", [1, 2, 3])
def test_brandt_equals_rees_with_identity_matrix(k, g):
    G = cyclic_group(g)
    P = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    assert are_isomorphic(brandt(G, k), rees_matrix(ReesMatrixSpec.from_pattern(G, P)))
    assert len(brandt(G, k)) == k * k * g + 1


@pytest.mark.parametrize("pattern", [[[1]], [[1, 1]], [[1, 0], [1, 1]], [[1, 0, 1], [0, 1, 1]], [["g", 1], [1, 0]]])
def test_rees_output_completely_0_simple(pattern):
    S = rees_matrix(ReesMatrixSpec.from_pattern(cyclic_group(2), pattern))
    assert is_completely_0_simple(S)
    assert len(S) == len(pattern) * len(pattern[0]) * 2 + 1


@pytest.mark.parametrize(
    "pattern,expected",
    [
        ([[1]], True),
        ([[1, 0], [0, 1]], True),
        ([[1, 1], [1, 1]], True),
        ([[1, 1], [0, 1]], False),
        ([[1, 1, 0], [1, 1, 0], [0, 0, 1]], True),
        ([[1, 0, 1], [0, 1, 1]], False),
    ],
)
def test_b2_sandwich_examples(pattern, expected):
    assert is_b2_sandwich(ReesMatrixSpec.from_pattern(cyclic_group(1), pattern)) is expected


def test_b2_sandwich_matches_divisibility():
    # a zero pattern without an A2 "corner" is exactly one where A2 does not divide
    from rsv.algebra import divides

    A2 = catalog_get("A2")
    for pattern in ([[1, 0], [0, 1]], [[1, 1], [0, 1]], [[1, 1], [1, 1]]):
        spec = ReesMatrixSpec.from_pattern(cyclic_group(1), pattern)
        assert is_b2_sandwich(spec) is not divides(A2, rees_matrix(spec))


def test_coset_extension_examples():
    G = cyclic_group(4)
    H = [0, 2]
    L = coset_extension(G, H, "left")
    R = coset_extension(G, H, "right")
    assert len(L) == 4 + 2 + 1 == len(R)
    assert validate(L).ok and validate(R).ok
    assert "eH" in L.elements and "He" in R.elements
    g, eH = L.index("g"), L.index("eH")
    assert L.elements[L.table[g][eH]] == "gH"
    assert L.table[eH][g] == L.zero
    assert are_isomorphic(dual(L), R)
    with pytest.raises(ValueError):
        coset_extension(G, [0, 1], "left")
    with pytest.raises(ValueError):
        coset_extension(G, H, "up")


def test_coset_extension_trivial_subgroup():
    G = cyclic_group(2)
    S = coset_extension(G, [0], "left")
    assert len(S) == 2 + 2 + 1
    assert isomorphism(S, S) is not None
