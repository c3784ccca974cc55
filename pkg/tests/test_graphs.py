import random

import pytest

from srgkit.fixtures import complete, cycle, fixture
from srgkit.graphs import (
    Graph,
    Graph6Error,
    check_n2_connected,
    complement,
    encode_graph6,
    find_isomorphism,
    parse_graph6,
    read_graph6_lines,
    second_neighborhood,
    verify_srg,
)
from srgkit.srg_params import SrgParams

from oracles import edge_set, is_isomorphic_brute, srg_params_brute


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


class TestGraphType:
    def test_rejects_asymmetric_and_loops(self):
        with pytest.raises(ValueError):
            Graph(2, (0b10, 0))
        with pytest.raises(ValueError):
            Graph(1, (1,))

    def test_contract(self):
        g, old_to_new = cycle(4).contract(0, 2)
        assert g.n == 3 and old_to_new[0] == old_to_new[2]
        assert g.num_edges() == 2

    def test_contract_adjacent_rejected(self):
        with pytest.raises(ValueError):
            cycle(4).contract(0, 1)


class TestGraph6:
    def test_single_vertex(self):
        g = parse_graph6(b"@")
        assert g.n == 1 and g.num_edges() == 0
        assert encode_graph6(g) == b"@"

    def test_k2(self):
        g = parse_graph6(b"A_")
        assert g.n == 2 and edge_set(g) == {(0, 1)}
        assert encode_graph6(complete(2)) == b"A_"

    def test_empty_two(self):
        assert parse_graph6(b"A?").num_edges() == 0

    def test_header_and_newline(self):
        assert parse_graph6(b">>graph6<<A_\n").num_edges() == 1

    def test_known_petersen_string(self):
        # nauty's standard labelling of the Petersen graph
        g = parse_graph6("IheA@GUAo")
        assert verify_srg(g).params == SrgParams(10, 3, 0, 1)

    def test_bad_char(self):
        with pytest.raises(Graph6Error) as e:
            parse_graph6(b"A\x20")
        assert e.value.kind == "BadChar"

    def test_bad_length(self):
        with pytest.raises(Graph6Error) as e:
            parse_graph6(b"C~~")
        assert e.value.kind == "BadLength"

    def test_unsupported_size(self):
        with pytest.raises(Graph6Error) as e:
            parse_graph6(b"~~" + bytes([126] * 6))
        assert e.value.kind == "UnsupportedSize"

    def test_column_major_bit_order(self):
        # only x(0,2) set: bit order x01, x02, x12 -> 010 000 -> 16 + 63
        g = Graph.from_edges(3, [(0, 2)])
        assert encode_graph6(g) == bytes([66, 16 + 63])

    def test_round_trip_1000_random(self):
        rng = random.Random(1)
        for _ in range(1000):
            g = random_graph(rng, rng.randint(0, 62))
            assert parse_graph6(encode_graph6(g)) == g

    @pytest.mark.parametrize("n", [63, 100, 300])
    def test_round_trip_long_size_field(self, n):
        g = random_graph(random.Random(n), n, 0.1)
        data = encode_graph6(g)
        assert data[0] == 126
        assert parse_graph6(data) == g

    def test_multi_line_reader_collects_errors(self):
        items = list(read_graph6_lines([b"A_", b"", b"A!", b"@\n"]))
        assert [i for i, _ in items] == [1, 3, 4]
        assert isinstance(items[1][1], Graph6Error)


class TestComplement:
    def test_involution(self):
        p = fixture("petersen")
        assert complement(complement(p)) == p

    def test_k4(self):
        assert complement(complete(4)).num_edges() == 0

    def test_c5_self_complementary(self):
        c = complement(cycle(5))
        assert find_isomorphism(cycle(5), c) is not None
        assert is_isomorphic_brute(cycle(5), c)

    @pytest.mark.parametrize("name", ["petersen", "rook4", "shrikhande", "clebsch", "paley13"])
    def test_complement_parameters(self, name):
        p = verify_srg(fixture(name)).params
        q = verify_srg(complement(fixture(name))).params
        assert (q.n, q.k, q.lam, q.mu) == (p.n, p.n - p.k - 1, p.n - 2 * p.k - 2 + p.mu, p.n - 2 * p.k + p.lam)


class TestVerifySrg:
    @pytest.mark.parametrize(
        "name,params",
        [
            ("petersen", (10, 3, 0, 1)),
            ("rook4", (16, 6, 2, 2)),
            ("shrikhande", (16, 6, 2, 2)),
            ("clebsch", (16, 5, 0, 2)),
            ("c5", (5, 2, 0, 1)),
            ("paley13", (13, 6, 2, 3)),
            ("paley9", (9, 4, 1, 2)),
            ("paley25", (25, 12, 5, 6)),
        ],
    )
    def test_fixtures(self, name, params):
        g = fixture(name)
        rep = verify_srg(g)
        assert rep.is_srg and rep.primitive and rep.failure_witness is None
        assert (rep.params.n, rep.params.k, rep.params.lam, rep.params.mu) == params
        assert srg_params_brute(g) == params

    def test_k4_is_imprimitive(self):
        rep = verify_srg(complete(4))
        assert not (rep.is_srg and rep.primitive)

    def test_c6_witness(self):
        rep = verify_srg(cycle(6))
        assert not rep.is_srg
        w = rep.failure_witness
        u, v = w.pair
        assert not cycle(6).has_edge(u, v)
        assert w.observed != w.expected
        from oracles import common_neighbours

        assert common_neighbours(cycle(6), u, v) == w.observed

    def test_irregular(self):
        rep = verify_srg(Graph.from_edges(3, [(0, 1)]))
        assert not rep.is_srg and rep.failure_witness.reason == "not regular"

    def test_random_agrees_with_brute_force(self):
        rng = random.Random(7)
        for _ in range(300):
            g = random_graph(rng, rng.randint(2, 9))
            rep = verify_srg(g)
            brute = srg_params_brute(g)
            if rep.is_srg:
                p = rep.params
                assert brute == (p.n, p.k, p.lam, p.mu)
            else:
                assert brute is None


class TestSecondNeighbourhood:
    def test_petersen(self):
        g = fixture("petersen")
        assert all(len(second_neighborhood(g, v)) == 6 for v in range(10))
        n2 = second_neighborhood(g, 0)
        # N2(v) induces a 6-cycle
        sub = g.induced(sorted(n2))
        assert sub.num_edges() == 6 and all(sub.degree(u) == 2 for u in range(6))

    def test_k4(self):
        assert second_neighborhood(complete(4), 0) == set()

    def test_c5(self):
        assert second_neighborhood(cycle(5), 0) == {2, 3}

    @pytest.mark.parametrize("name", ["petersen", "shrikhande", "rook4", "clebsch", "paley13", "c5"])
    def test_primitive_srgs_connected(self, name):
        assert all(check_n2_connected(fixture(name)))

    def test_star(self):
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        flags = check_n2_connected(star)
        assert flags[1:] == [False, False, False]


class TestIsomorphism:
    def test_rook_not_shrikhande(self):
        assert find_isomorphism(fixture("rook4"), fixture("shrikhande")) is None

    def test_relabel_found(self):
        g = fixture("petersen")
        perm = list(range(10))
        random.Random(3).shuffle(perm)
        h = g.relabel(perm)
        found = find_isomorphism(g, h)
        assert found is not None and g.relabel(found) == h
