"""Root system, fundamental group, and diagram bookkeeping checks.

Expected values are standard facts about the simple types: root counts,
centers, affine marks, and diagram automorphism counts."""

from __future__ import annotations

import pytest

from supercusp.rootdata import (
    SimpleGroup,
    build_group,
    diagram_automorphisms,
    isogeny_tokens,
    parse_spec,
    parse_type,
    root_system,
    standard_frobenius_perm,
)


ROOT_COUNTS = {
    ("A", 5): 30,
    ("B", 4): 32,
    ("C", 4): 32,
    ("D", 5): 40,
    ("E", 6): 72,
    ("E", 7): 126,
    ("E", 8): 240,
    ("F", 4): 48,
    ("G", 2): 12,
}


class TestRootSystem:
    @pytest.mark.parametrize("key", sorted(ROOT_COUNTS))
    def test_root_counts(self, key):
        rs = root_system(*key)
        assert len(rs.roots) == ROOT_COUNTS[key]
        assert 2 * rs.num_pos_roots == ROOT_COUNTS[key]

    @pytest.mark.parametrize("key", sorted(ROOT_COUNTS))
    def test_degree_sum(self, key):
        rs = root_system(*key)
        assert sum(d - 1 for d in rs.degrees) == rs.num_pos_roots

    def test_marks(self):
        assert root_system("A", 3).marks == (1, 1, 1, 1)
        assert root_system("B", 3).marks == (1, 1, 2, 2)
        assert root_system("C", 3).marks == (1, 2, 2, 1)
        assert root_system("D", 4).marks == (1, 1, 2, 1, 1)
        assert root_system("G", 2).marks == (1, 3, 2)
        assert root_system("F", 4).marks == (1, 2, 3, 4, 2)
        assert root_system("E", 8).marks == (1, 2, 3, 4, 6, 5, 4, 3, 2)

    def test_e6_cartan_shape(self):
        rs = root_system("E", 6)
        # Bourbaki: chain 1-3-4-5-6 with 2 attached to 4
        adj = {(i, j) for i in range(1, 7) for j in range(1, 7)
               if i < j and rs.cartan[i - 1][j - 1] != 0}
        assert adj == {(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)}

    def test_affine_node_attachment(self):
        # affine node of B_n attaches to node 2; of C_n to node 1
        b = root_system("B", 4)
        assert [j for j in range(1, 5) if b.affine_cartan[0][j] != 0] == [2]
        c = root_system("C", 4)
        assert [j for j in range(1, 5) if c.affine_cartan[0][j] != 0] == [1]


FUNDAMENTAL_ORDERS = {
    "A4": 5, "A5": 6, "B3": 2, "C4": 2, "D4": 4, "D5": 4,
    "E6": 3, "E7": 2, "E8": 1, "F4": 1, "G2": 1,
}


class TestFundamentalGroup:
    @pytest.mark.parametrize("ts", sorted(FUNDAMENTAL_ORDERS))
    def test_order(self, ts):
        g = build_group(ts, "adjoint")
        assert len(g.omega_elements()) == FUNDAMENTAL_ORDERS[ts]

    def test_d_even_vs_odd(self):
        even = build_group("D6", "adjoint")
        odd = build_group("D5", "adjoint")
        assert even.fundamental.orders == (2, 2)
        assert odd.fundamental.orders == (4,)

    THETA_FIXED = {
        "2A5": 2, "2A4": 1, "3D4": 1, "2E6": 1, "2D6": 2, "2D5": 2,
    }

    @pytest.mark.parametrize("ts", sorted(THETA_FIXED))
    def test_theta_fixed_sizes(self, ts):
        g = build_group(ts, "adjoint")
        assert len(g.omega_ad_theta_fixed()) == self.THETA_FIXED[ts]

    COINV_CLASSES = {
        "A3": 4, "2A5": 2, "2A4": 1, "3D4": 1, "2E6": 1, "D6": 4, "2D6": 2,
    }

    @pytest.mark.parametrize("ts", sorted(COINV_CLASSES))
    def test_inner_class_counts(self, ts):
        g = build_group(ts, "adjoint")
        assert len(g.adjoint_coinvariant_classes()) == self.COINV_CLASSES[ts]


class TestIsogenies:
    def test_tokens(self):
        assert isogeny_tokens("A", 5) == ["sc", "d2", "d3", "adjoint"]
        assert isogeny_tokens("D", 6) == ["sc", "so", "hs1", "hs2", "adjoint"]
        assert isogeny_tokens("D", 5) == ["sc", "so", "adjoint"]
        assert isogeny_tokens("E", 8) == ["adjoint"]

    def test_intermediate_sizes(self):
        assert build_group("A5", "d2").fundamental.orders == (2,)
        assert build_group("A5", "d3").fundamental.orders == (3,)
        assert build_group("D6", "so").fundamental.orders == (2,)
        assert build_group("D6", "hs1").fundamental.orders == (2,)

    def test_frobenius_rejects_unstable_isogeny(self):
        # half-spin of 2D6 is not stable under the diagram flip
        with pytest.raises(ValueError):
            build_group("2D6", "hs1")
        # but so(2n) is stable
        build_group("2D6", "so")

    def test_sc_and_adjoint_always_stable(self):
        for ts in ["2A5", "2D5", "3D4", "2E6"]:
            build_group(ts, "sc")
            build_group(ts, "adjoint")


DIAGRAM_AUTO_COUNTS = {
    "A1": 1, "A3": 2, "B3": 1, "C4": 1, "D4": 6, "D5": 2, "E6": 2,
    "E7": 1, "G2": 1,
}


class TestDiagramAutomorphisms:
    @pytest.mark.parametrize("ts", sorted(DIAGRAM_AUTO_COUNTS))
    def test_counts(self, ts):
        g = build_group(ts, "adjoint")
        assert len(diagram_automorphisms(g)) == DIAGRAM_AUTO_COUNTS[ts]

    def test_d4_stabilizing_subgroup(self):
        g = build_group("D4", "so")
        autos = diagram_automorphisms(g)
        assert len(autos) == 6
        assert sum(1 for a in autos if a.stabilizes_isogeny) == 2

    def test_commutes_flag_on_twisted(self):
        g = build_group("3D4", "adjoint")
        autos = diagram_automorphisms(g)
        # triality generates; the flip does not commute with it
        commuting = [a for a in autos if a.commutes_with_frobenius]
        assert len(commuting) == 3

    def test_frobenius_perm_orders(self):
        p = standard_frobenius_perm("D", 4, 3)
        assert p[1] == 3 and p[3] == 4 and p[4] == 1
        with pytest.raises(ValueError):
            standard_frobenius_perm("B", 3, 2)


class TestParsing:
    def test_parse_type(self):
        assert parse_type("2A5") == ("A", 5, 2)
        assert parse_type("E8") == ("E", 8, 1)
        with pytest.raises(ValueError):
            parse_type("4A5")

    def test_spec_roundtrip(self):
        g, twist = parse_spec("2A5:adjoint:w1")
        assert g.type_string() == "2A5"
        assert twist == "w1"
        assert g.spec_string("w1") == "2A5:adjoint:w1"

    def test_kottwitz_data_shape(self):
        g = build_group("2A5", "sc")
        data = g.kottwitz_data()
        assert set(data) == {"omega_theta", "omega_coinv",
                             "omega_theta_dual", "omega_ad_coinv"}
        # PU_6 versus SU_6: two adjoint twisting classes either way
        assert len(data["omega_ad_coinv"]) == 2


class TestOmegaAction:
    def test_a_family_rotation(self):
        g = build_group("A4", "adjoint")
        w = g.rs.coweight_class(1)
        # acts as a 5-cycle on the affine nodes
        node, seen = 0, set()
        for _ in range(5):
            seen.add(node)
            node = g.omega_act_node(w, node)
        assert node == 0 and len(seen) == 5

    def test_e7_action_is_flip(self):
        g = build_group("E7", "adjoint")
        w = [x for x in g.omega_elements() if x != g.omega_identity()][0]
        perm = {n: g.omega_act_node(w, n) for n in g.affine_nodes()}
        assert perm[0] == 7 and perm[7] == 0
        assert perm[2] == 2 and perm[4] == 4

    def test_faithful(self):
        for ts in ["A5", "D4", "D5", "E6"]:
            g = build_group(ts, "adjoint")
            ident = {n: n for n in g.affine_nodes()}
            fixing = [w for w in g.omega_elements()
                      if {n: g.omega_act_node(w, n) for n in g.affine_nodes()} == ident]
            assert fixing == [g.omega_identity()]
