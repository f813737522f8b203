import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sortnetopt.networks import Network, first_layer, network, reflect
from sortnetopt.words import (
    Word,
    asymmetric_cycle_count,
    canonical_sentence,
    counts,
    cycle_canonical,
    cycle_words,
    head_words,
    is_asymmetric,
    matchings,
    net_of,
    parse_sentence,
    parse_word,
    reflect_sentence,
    reflect_word,
    render_sentence,
    sentence_of,
    sentences,
    stick_words,
    telephone,
    word_of,
)

FIG4A = network(5, [(1, 2), (3, 4)], [(1, 5), (2, 4)])
FIG4B = network(8, first_layer(8), [(1, 4), (3, 8), (5, 7)])
FIG4C = network(6, first_layer(6), [(1, 3), (2, 5), (4, 6)])
FIG4D = network(10, [(1, 6), (2, 7), (3, 8), (4, 9), (5, 10)],
                [(1, 4), (2, 5), (6, 9), (7, 10)])


def test_word_of_three_kinds():
    assert str(word_of(FIG4A)) == "01221_h"
    assert str(word_of(FIG4B)) == "21121212_s"
    assert str(word_of(FIG4C)) == "121221_c"


def test_word_of_rejects_bad_input():
    with pytest.raises(ValueError):
        word_of(FIG4D)  # disconnected
    with pytest.raises(ValueError):
        word_of(network(4, [(1, 2)], []))  # first layer not maximal


def test_sentence_of_examples():
    assert render_sentence(sentence_of(FIG4D)) == "12_s;1221_c;1221_c"
    assert render_sentence(sentence_of(network(4, first_layer(4), []))) == "12_s;12_s"
    assert render_sentence(sentence_of(network(3, first_layer(3), []))) == "0_h;12_s"


def test_net_of_builds_the_figure_network():
    net = net_of("12_s;1221_c;1221_c")
    assert net.layers == (((1, 2), (3, 4), (5, 6), (7, 8), (9, 10)),
                          ((3, 5), (4, 6), (7, 9), (8, 10)))


def test_net_of_one_channel():
    net = net_of("0_h")
    assert net.n == 1 and net.size == 0


def test_net_of_rejects_malformed():
    with pytest.raises(ValueError):
        parse_word("0121_h")       # odd pair part
    with pytest.raises(ValueError):
        parse_word("102_h")        # 0 not leading
    with pytest.raises(ValueError):
        parse_word("11_s")         # bad pair
    with pytest.raises(ValueError):
        net_of("012_h;021_h")      # two heads


@pytest.mark.parametrize("kind", ["rgn", "rsn", "rn"])
@pytest.mark.parametrize("n", range(3, 11))
def test_sentence_roundtrip(kind, n):
    for s in sentences(n, kind):
        assert sentence_of(net_of(s)) == s


def test_reflect_word_examples():
    assert reflect_word(parse_word("211212_s")) == parse_word("121221_s")
    assert reflect_word(parse_word("121221_s")) == parse_word("211212_s")
    assert reflect_word(parse_word("1221_c")) == parse_word("1221_c")


def test_reflect_word_matches_network_reflection():
    pool = [w for L in range(1, 11) for w in
            head_words(L) + stick_words(L) + cycle_words(L, include_redundant=True)]
    for w in pool:
        net = net_of((w,))
        assert reflect_word(w) == word_of(reflect(net))
        assert reflect_word(reflect_word(w)) == w


def test_cycle_canonical_and_asymmetry():
    assert cycle_canonical("2112") == "1221"
    # the shortest asymmetric cycles live on 12 channels: the single class
    # whose three inter-21 gap lengths are 0, 1 and 2 (one reflection pair)
    asym12 = sorted(w.symbols for w in cycle_words(12) if is_asymmetric(w))
    assert asym12 == ["121221122121", "121221211221"]
    assert reflect_word(Word("c", asym12[0])) == Word("c", asym12[1])
    for L in (4, 6, 8, 10):
        assert not any(is_asymmetric(w) for w in cycle_words(L))
    assert asymmetric_cycle_count(12) == 1
    assert asymmetric_cycle_count(16) == 4


def test_generate_counts_table4():
    assert sum(1 for _ in sentences(11, "rgn")) == 482
    assert sum(1 for _ in sentences(11, "rn")) == 48
    assert sum(1 for _ in sentences(13, "rn")) == 117
    assert sum(1 for _ in sentences(16, "rn")) == 211


def test_matchings_small():
    assert sum(1 for _ in matchings(3)) == 4
    assert telephone(11) == 35696
    for n in range(1, 8):
        assert sum(1 for _ in matchings(n)) == telephone(n)


def test_counts_row_13():
    row = counts(13, columns="g,rg,rs,r")
    assert (row.g, row.rg, row.rs, row.r) == (568504, 1378, 212, 117)


def test_counts_recurrence_example():
    assert counts(5, "rg").rg == counts(4, "rg").rg + 2 * counts(3, "rg").rg == 16


def test_redundant_class_count_theorem():
    # canonical sentences containing 12_c on n channels ~ classes on n-2 channels
    for n in range(5, 11):
        redundant = sum(1 for s in sentences(n, "rgn")
                        if any(w.tag == "c" and w.symbols == "12" for w in s))
        assert redundant == sum(1 for _ in sentences(n - 2, "rgn"))


def test_rgn_completeness_vs_bruteforce():
    for n in range(3, 9):
        fl = first_layer(n)
        seen = {sentence_of(Network(n, (fl, l2))) for l2 in matchings(n)}
        generated = set(sentences(n, "rgn"))
        assert seen == generated


def test_odd_recurrence():
    rg = {n: sum(1 for _ in sentences(n, "rgn")) for n in range(3, 14)}
    for n in (5, 7, 9, 11, 13):
        assert rg[n] == rg[n - 1] + 2 * rg[n - 2]


def test_grammar_soundness_of_pools():
    for L in range(1, 13):
        for w in head_words(L):
            assert w.symbols[0] == "0" and w.symbols.count("0") == 1
        for w in stick_words(L):
            assert w.symbols <= w.symbols[::-1]
        for w in cycle_words(L):
            assert w.symbols == cycle_canonical(w.symbols)
            assert w.symbols.startswith("12") and len(w) >= 4
        for w in stick_words(L, "refl"):
            assert w.symbols == "12" or (w.symbols.startswith("21")
                                         and w.symbols.endswith("12"))
        for w in head_words(L, refl=True):
            assert w.symbols == "0" or w.symbols.endswith("21")


def test_rn_reflection_completeness():
    # the published reflection grammar cannot express saturated classes that
    # mix an eHead with an oStick; the first such class appears at n = 9
    known_missing = {9: {"012_h;211212_s", "021_h;121221_s"}}
    for n in range(3, 11):
        rn = set(sentences(n, "rn"))
        missing = set()
        for s in sentences(n, "rsn"):
            if s not in rn and reflect_sentence(s) not in rn:
                missing.add(render_sentence(s))
        assert missing == known_missing.get(n, set())
        # no two distinct members are reflections of one another
        for s in rn:
            r = reflect_sentence(s)
            assert r == s or r not in rn


def test_sentence_order_is_canonical():
    s = parse_sentence("1221_c;12_s;1221_c")
    assert render_sentence(s) == "12_s;1221_c;1221_c"
    assert canonical_sentence(reversed(s)) == s


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.data())
def test_sentence_of_is_permutation_invariant(n, data):
    # equivalent networks (same layers modulo a pair-preserving relabeling)
    # share one sentence
    import random as _random
    rng = _random.Random(data.draw(st.integers(0, 10 ** 6)))
    l2 = data.draw(st.sampled_from(list(matchings(n))))
    net = Network(n, (first_layer(n), l2))
    pairs = list(range(n // 2))
    rng.shuffle(pairs)
    pi = [0] * n
    for new, old in enumerate(pairs):
        lo, hi = 2 * old + 1, 2 * old + 2
        if rng.random() < 0.5:
            lo, hi = hi, lo
        pi[lo - 1], pi[hi - 1] = 2 * new + 1, 2 * new + 2
    if n % 2:
        pi[n - 1] = n
    from sortnetopt.networks import permute, untangle
    other = untangle(permute(pi, net))
    assert sentence_of(other) == sentence_of(net)


def test_sentence_equality_iff_graph_isomorphism():
    # word representation captures graph equivalence exactly (n <= 5)
    from sortnetopt.networks import graph_of, iso_bruteforce
    for n in (3, 4, 5):
        nets = [Network(n, (first_layer(n), l2)) for l2 in matchings(n)]
        for a, b in itertools.combinations(nets, 2):
            same_sentence = sentence_of(a) == sentence_of(b)
            iso = iso_bruteforce(graph_of(a), graph_of(b))
            assert same_sentence == iso


def test_saturated_words_satisfy_corollary_shape():
    # saturated sticks are never length 4 and begin/end with one symbol
    for n in range(3, 13):
        for s in sentences(n, "rsn"):
            for w in s:
                if w.tag == "s" and len(w) > 2:
                    assert len(w) != 4
                    assert w.symbols[0] == w.symbols[-1]
