"""Text format round-trips and parse rejection with 1-based line numbers."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from ordramsey.core import ColoredCompleteGraph, Digraph, OrderedGraph, Tournament
from ordramsey.errors import ParseError
from ordramsey.io import (
    load_path,
    parse_dg,
    parse_og,
    parse_okc,
    parse_trn,
    save_path,
    write_dg,
    write_og,
    write_okc,
    write_trn,
)

from conftest import random_ordered_graph


class TestOgRoundTrip:
    def test_simple(self):
        g = OrderedGraph(4, [(1, 2), (2, 4)])
        assert parse_og(write_og(g)).sorted_edges() == g.sorted_edges()

    def test_empty_graph(self):
        g = OrderedGraph(3)
        text = write_og(g)
        assert text == "3 0\n"
        back = parse_og(text)
        assert back.n == 3 and back.m == 0

    def test_seeded_round_trips(self):
        for seed in range(30):
            g = random_ordered_graph(seed % 9 + 2, 0.5, seed)
            back = parse_og(write_og(g))
            assert back.n == g.n
            assert back.sorted_edges() == g.sorted_edges()

    @given(st.integers(1, 10), st.integers(0, 10 ** 6))
    @settings(max_examples=50, deadline=None)
    def test_hypothesis_round_trip(self, n, seed):
        g = random_ordered_graph(n, 0.4, seed)
        back = parse_og(write_og(g))
        assert back.sorted_edges() == g.sorted_edges()


class TestOgRejects:
    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_og("")

    def test_bad_header(self):
        with pytest.raises(ParseError) as e:
            parse_og("3\n")
        assert "line 1" in str(e.value)

    def test_edge_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_og("3 2\n1 2\n")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_og("2 1\n1 2\nextra\n")

    def test_reversed_edge_names_line(self):
        with pytest.raises(ParseError) as e:
            parse_og("3 1\n2 1\n")
        assert "line 2" in str(e.value)

    def test_duplicate_edge(self):
        with pytest.raises(ParseError) as e:
            parse_og("3 2\n1 2\n1 2\n")
        assert "line 3" in str(e.value)

    def test_out_of_order_edges(self):
        with pytest.raises(ParseError):
            parse_og("4 2\n2 3\n1 2\n")

    def test_non_integer(self):
        with pytest.raises(ParseError):
            parse_og("2 1\n1 x\n")


class TestOkc:
    def test_round_trip(self):
        for seed in range(10):
            c = ColoredCompleteGraph.from_random(seed % 7 + 2, seed)
            back = parse_okc(write_okc(c))
            assert back.N == c.N
            assert back.red_rows == c.red_rows

    def test_single_vertex(self):
        c = ColoredCompleteGraph.from_random(1, 0)
        assert parse_okc(write_okc(c)).N == 1

    def test_explicit_rows(self):
        c = parse_okc("3\nRB\nR\n")
        from ordramsey.core import Color

        assert c.color_of(1, 2) is Color.RED
        assert c.color_of(1, 3) is Color.BLUE
        assert c.color_of(2, 3) is Color.RED

    def test_bad_char(self):
        with pytest.raises(ParseError) as e:
            parse_okc("3\nRX\nR\n")
        assert "line 2" in str(e.value)

    def test_short_row(self):
        with pytest.raises(ParseError):
            parse_okc("3\nR\nR\n")

    def test_row_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_okc("4\nRRB\nRB\n")


class TestDg:
    def test_round_trip(self):
        d = Digraph(4, [(2, 1), (1, 3), (3, 4)])
        back = parse_dg(write_dg(d))
        assert back.n == d.n
        assert back.arcs == d.arcs

    def test_duplicate_arc_rejected(self):
        with pytest.raises(ParseError):
            parse_dg("3 2\n1 2\n1 2\n")

    def test_self_loop_rejected(self):
        with pytest.raises(ParseError):
            parse_dg("3 1\n2 2\n")

    def test_arc_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_dg("3 3\n1 2\n2 3\n")


class TestTrn:
    def test_round_trip(self):
        for seed in range(10):
            t = Tournament.from_random(seed % 8 + 2, random.Random(seed))
            back = parse_trn(write_trn(t))
            assert back.N == t.N
            assert back.beats == t.beats

    def test_explicit(self):
        # colex pair order for N=3: (1,2), (1,3), (2,3)
        t = parse_trn("3\n>\n<\n>\n")
        assert t.has_arc(1, 2)
        assert t.has_arc(3, 1)
        assert t.has_arc(2, 3)

    def test_bad_char(self):
        with pytest.raises(ParseError):
            parse_trn("3\n>\nx\n>\n")

    def test_pair_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_trn("3\n>\n<\n")


class TestPathHelpers:
    def test_save_and_load_each_kind(self, tmp_path):
        g = OrderedGraph(3, [(1, 3)])
        c = ColoredCompleteGraph.from_random(4, 0)
        d = Digraph(3, [(3, 1)])
        t = Tournament.from_random(5, random.Random(1))
        for name, obj in (("a.og", g), ("b.okc", c), ("c.dg", d), ("d.trn", t)):
            p = tmp_path / name
            save_path(p, obj)
            back = load_path(p)
            assert type(back) is type(obj)

    def test_unknown_extension(self, tmp_path):
        p = tmp_path / "thing.xyz"
        p.write_text("payload")
        with pytest.raises(ParseError):
            load_path(p)
