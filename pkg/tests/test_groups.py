import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from charsum import groups
from charsum.forms import FormatError
from charsum.groups import Instruction, Permutation, Program

G = groups.g72_generators()
G72 = groups.closure(G.values())


def test_relations_hold():
    assert groups.check_relations() == {r: True for r in groups.G72_RELATIONS}
    assert len(groups.G72_RELATIONS) == 12


def test_orders():
    assert len(G72) == 72
    assert len(groups.closure(groups.s3_generators().values())) == 6


def test_broken_relation_is_reported():
    gens = dict(G)
    gens["c"] = Permutation.identity(9)
    assert not all(groups.check_relations(gens=gens).values())


def test_product_order_is_left_to_right():
    a, c = G["a"], G["c"]
    # point (u, v) = (0, 0) is 1; a moves it to (1, 0), then c to (0, 1)
    assert (a * c)(0) == 1
    assert (c * a)(0) == 3
    assert groups.eval_word("ac", G) == a * c


@given(st.sampled_from(sorted(G72, key=lambda p: p.mapping)),
       st.sampled_from(sorted(G72, key=lambda p: p.mapping)),
       st.sampled_from(sorted(G72, key=lambda p: p.mapping)))
def test_group_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * x.inverse() == Permutation.identity(9)
    assert x * y in G72


def test_cycle_notation():
    s = groups.parse_cycles("(1 2)", 3)
    t = groups.parse_cycles("(123)", 3)
    assert str(s) == "(1 2)" and str(t) == "(1 2 3)"
    assert groups.parse_cycles("(1 2)(1 2)", 3).is_identity()
    assert groups.parse_cycles("()", 4).is_identity()
    assert t ** 3 == Permutation.identity(3)
    assert groups.parse_cycles(str(G["a"] * G["c"]), 9) == G["a"] * G["c"]
    for bad in ["(1 4)", "(1 1)", "1 2", "(a b)"]:
        with pytest.raises(FormatError):
            groups.parse_cycles(bad, 3)


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    with pytest.raises(ValueError):
        Permutation.identity(3) * Permutation.identity(4)


def test_shortest_words_cover_group():
    words = groups.shortest_words(G)
    assert len(words) == 72
    for g, w in words.items():
        assert groups.eval_word(w, G) == g
    assert words[Permutation.identity(9)] == "1"


def test_unknown_generator():
    with pytest.raises(FormatError):
        groups.eval_word("az", G)


# programs ------------------------------------------------------------------------

def _and3_program():
    # accepts iff all three bits are set: multiplies a once per set bit, a^3 = 1
    e = Permutation.identity(9)
    a = G["a"]
    ins = [Instruction(i, e, a) for i in (1, 2, 3)]
    return Program(tuple(ins), frozenset({a * a}), 9, width=3)


def test_program_evaluation():
    p = _and3_program()
    results = {bits: groups.eval_program(p, bits)[1] for bits in itertools.product((0, 1), repeat=3)}
    assert [bits for bits, ok in results.items() if ok] == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    element, _ = groups.eval_program(p, "111")
    assert element.is_identity()


def test_program_product_splits():
    # the product over a program equals the product of its two halves
    p = Program(tuple(Instruction(b, G["b"], G["c"] * G["d"]) for b in (1, 2, 1, 3, 2)), frozenset(), 9)
    first = Program(p.instructions[:2], frozenset(), 9)
    second = Program(p.instructions[2:], frozenset(), 9)
    for bits in itertools.product((0, 1), repeat=3):
        whole, _ = groups.eval_program(p, bits)
        a, _ = groups.eval_program(first, bits)
        b, _ = groups.eval_program(second, bits)
        assert whole == a * b


def test_program_errors():
    p = _and3_program()
    with pytest.raises(IndexError):
        groups.eval_program(p, "11")
    with pytest.raises(ValueError):
        Program((Instruction(4, G["a"], G["a"]),), frozenset(), 9, width=3)
    with pytest.raises(ValueError):
        Program((Instruction(1, G["a"], Permutation.identity(3)),), frozenset(), 9)


def test_program_text_round_trip():
    p = _and3_program()
    text = groups.format_program(p)
    assert text.startswith("group=G72\nwidth=3\n")
    assert groups.parse_program(text) == p


def test_s3_program_text():
    text = "group=S3\naccept=(1 2 3)\nbit=1 zero=() one=(1 2 3)\nbit=2 zero=() one=(1 2 3)\n"
    p = groups.parse_program(text)
    assert groups.eval_program(p, "10")[1]
    assert not groups.eval_program(p, "11")[1]
    assert groups.parse_program(groups.format_program(p, "S3")) == p


@pytest.mark.parametrize("text", ["group=Z5\n", "bit=1 zero=a\n", "bit=1 zero=q one=a\n"])
def test_program_parse_errors(text):
    with pytest.raises(FormatError):
        groups.parse_program(text)
