import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from rsv.catalog import catalog_get
from rsv.varieties import satisfies
from rsv.words import (
    Identity,
    ParseError,
    affixes,
    content,
    is_balanced,
    is_covered_by_cycles,
    multiplicity,
    parse_identities,
    parse_identity,
    parse_word,
    render,
    rename,
    substitute,
    words_up_to,
)

words = st.text(alphabet="xyzab", min_size=1, max_size=8)
identities = st.builds(Identity, words, words)


def test_parse_expands_powers():
    assert parse_identity("xyx = (xy)^2 x") == Identity("xyx", "xyxyx")
    assert parse_identity("x^2 = x^3") == Identity("xx", "xxx")


def test_parse_ignores_star_and_whitespace():
    assert parse_identity(" x*y  =\ty * x ") == Identity("xy", "yx")


def test_nested_parentheses():
    assert parse_word("((xy)^2 z)^2") == "xyxyzxyxyz"


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("xy =", "empty right side"),
        ("= xy", "empty left side"),
        ("x^0 = x", "positive integer"),
        ("x^01 = x", "positive integer"),
        ("x = y = z", "trailing"),
        ("(xy = x", "')'"),
        ("xY = x", "unexpected"),
        ("xé = x", "non-ASCII"),
        ("xy", "'='"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as e:
        parse_identity(text)
    assert fragment in str(e.value)


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_identity("xy = x^0")
    assert e.value.pos == 7


def test_identity_file_comments_and_line_numbers():
    text = "# comment\n\nx = x^2\nxy = yx\n"
    assert parse_identities(text) == [Identity("x", "xx"), Identity("xy", "yx")]
    with pytest.raises(ParseError) as e:
        parse_identities("x = x\nxy =\n")
    assert e.value.line == 2


def test_tautology_is_flagged_not_dropped():
    ids = parse_identities("x = x\n")
    assert ids[0].is_tautology


def test_content_and_multiplicity():
    assert content("xyx") == {"x", "y"}
    assert content("axaya") == {"a", "x", "y"}
    assert content("x") == {"x"}
    assert [multiplicity("xyx", v) for v in "xyz"] == [2, 1, 0]


def test_balanced_examples():
    assert is_balanced(parse_identity("xy = yx"))
    assert not is_balanced(parse_identity("x = x^2"))
    assert not is_balanced(parse_identity("xyx = (xy)^2 x"))


def test_substitute_examples():
    assert substitute("xy", {"x": "xy", "y": "x"}) == "xyx"
    assert substitute("xyx", {"x": "x", "y": "y"}) == "xyx"
    with pytest.raises(KeyError):
        substitute("xy", {"x": "x"})


def test_affixes_examples():
    assert affixes("xyzh", 1) == ("x", "h")
    assert affixes("xyzh", 2) == ("xy", "zh")
    with pytest.raises(ValueError):
        affixes("x", 2)


def test_covered_by_cycles_examples():
    assert is_covered_by_cycles("xyx")
    assert not is_covered_by_cycles("xy")
    assert is_covered_by_cycles("xyyx")
    with pytest.raises(ValueError):
        is_covered_by_cycles("x")


def test_words_up_to_counts():
    assert len(list(words_up_to("xy", 3))) == 2 + 4 + 8


@given(identities)
def test_render_round_trip(i):
    assert parse_identity(render(i)) == i


@given(words, words, st.dictionaries(st.sampled_from("xyzab"), words, min_size=5))
def test_substitute_is_a_homomorphism(u, v, s):
    assert substitute(u + v, s) == substitute(u, s) + substitute(v, s)


@given(identities, st.permutations("xyzab"))
def test_balance_invariant_under_swap_and_renaming(i, perm):
    ren = dict(zip("xyzab", perm))
    assert is_balanced(i) == is_balanced(i.swapped()) == is_balanced(rename(i, ren))


@given(words)
def test_multiplicities_sum_to_length(w):
    assert sum(multiplicity(w, v) for v in content(w)) == len(w)


@given(st.text(alphabet="xyz", min_size=2, max_size=10))
def test_covered_by_cycles_matches_brute_force(w):
    assert is_covered_by_cycles(w) == oracles.covered_by_cycles(w)


@given(identities.filter(is_balanced))
def test_balanced_identities_hold_in_commutative_semigroups(i):
    for name in ("N2", "Z3", "L2_1"):
        S = catalog_get(name)
        if all(S.table[a][b] == S.table[b][a] for a in range(len(S)) for b in range(len(S))):
            assert satisfies(S, i).holds
