"""Condensation: collapse of unchanged nodes and its round-trip laws."""

import random

import pytest

from evotrack.condense import collapse_unchanged, expand
from evotrack.errors import ForeignCondensation
from evotrack.graph_diff import (
    DiffEdgeStatus,
    DiffNodeStatus,
    SliceDiff,
    diff_slices,
)

from conftest import random_slice_pair

R = "com.app.R#r():void"
A = "com.app.A#a():void"
B = "com.app.B#b():void"
C = "com.app.C#c():void"
D = "com.app.D#d():void"

U = DiffNodeStatus.UNCHANGED
UE = DiffEdgeStatus.UNCHANGED


def chain_diff():
    """root -> A -> B -> C, everything unchanged."""
    return SliceDiff(
        root=R,
        nodes={R: U, A: U, B: U, C: U},
        edges={(R, A): UE, (A, B): UE, (B, C): UE},
    )


def components_oracle(d: SliceDiff):
    """Union-find components of unchanged non-root non-abstraction nodes."""
    members = [
        k for k, s in d.nodes.items()
        if s is U and k != d.root and k not in ("Framework", "Library")
    ]
    parent = {k: k for k in members}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in d.edges:
        if a in parent and b in parent:
            parent[find(a)] = find(b)
    groups = {}
    for k in members:
        groups.setdefault(find(k), set()).add(k)
    return sorted(groups.values(), key=min)


class TestCollapse:
    def test_all_unchanged_chain(self):
        c = collapse_unchanged(chain_diff())
        assert set(c.visible_nodes) == {R}
        assert len(c.super_nodes) == 1
        sn = c.super_nodes[0]
        assert sn.id == "U1"
        assert sn.members == {A, B, C}
        assert sn.label == "3 unchanged methods"
        assert set(c.edges) == {(R, "U1"), ("U1", "U1")}
        assert c.edges[(R, "U1")] == {UE}
        # oracle agreement
        assert [set(g) for g in components_oracle(chain_diff())] == [{A, B, C}]

    def test_zero_unchanged_equals_source(self):
        d = SliceDiff(
            root=R,
            nodes={R: DiffNodeStatus.CHANGED, A: DiffNodeStatus.ADDED},
            edges={(R, A): DiffEdgeStatus.ADDED},
        )
        c = collapse_unchanged(d)
        assert not c.super_nodes
        assert dict(c.visible_nodes) == dict(d.nodes)
        assert set(c.edges) == set(d.edges)
        assert all(c.edges[k] == {d.edges[k]} for k in d.edges)

    def test_two_islands_split_by_changed_node(self):
        d = SliceDiff(
            root=R,
            nodes={R: U, A: U, B: DiffNodeStatus.CHANGED, C: U, D: U},
            edges={(R, A): UE, (A, B): UE, (B, C): UE, (C, D): UE},
        )
        c = collapse_unchanged(d)
        assert {sn.id: sn.members for sn in c.super_nodes} == {
            "U1": frozenset({A}),
            "U2": frozenset({C, D}),
        }
        assert [set(g) for g in components_oracle(d)] == [{A}, {C, D}]

    def test_root_never_collapsed_even_when_unchanged(self):
        c = collapse_unchanged(chain_diff())
        assert R in c.visible_nodes
        assert all(R not in sn.members for sn in c.super_nodes)

    def test_abstraction_nodes_never_collapsed(self):
        d = SliceDiff(
            root=R,
            nodes={R: U, A: U, "Framework": U},
            edges={(R, A): UE, (A, "Framework"): UE},
        )
        c = collapse_unchanged(d)
        assert "Framework" in c.visible_nodes
        assert {sn.members for sn in c.super_nodes} == {frozenset({A})}

    def test_weak_connectivity_groups_opposing_edges(self):
        # A -> B and C -> B: all one weak component despite edge directions
        d = SliceDiff(
            root=R,
            nodes={R: U, A: U, B: U, C: U},
            edges={(R, A): UE, (A, B): UE, (C, B): UE},
        )
        c = collapse_unchanged(d)
        assert len(c.super_nodes) == 1
        assert c.super_nodes[0].members == {A, B, C}

    def test_quotient_edge_statuses_accumulate(self):
        d = SliceDiff(
            root=R,
            nodes={R: DiffNodeStatus.CHANGED, A: U, B: U},
            edges={(R, A): UE, (R, B): DiffEdgeStatus.ADDED, (A, B): UE},
        )
        c = collapse_unchanged(d)
        assert c.edges[(R, "U1")] == {UE, DiffEdgeStatus.ADDED}

    def test_numbering_stable_by_smallest_member(self):
        d = SliceDiff(
            root=R,
            nodes={R: DiffNodeStatus.CHANGED, D: U, A: U},
            edges={},
        )
        c = collapse_unchanged(d)
        assert [sn.id for sn in c.super_nodes] == ["U1", "U2"]
        assert c.super_nodes[0].members == {A}  # A sorts before D
        assert c.super_nodes[1].members == {D}


class TestExpand:
    def test_round_trip_inverse(self):
        d = chain_diff()
        assert expand(collapse_unchanged(d), d) == d

    def test_no_super_nodes_round_trip(self):
        d = SliceDiff(root=R, nodes={R: DiffNodeStatus.CHANGED}, edges={})
        assert expand(collapse_unchanged(d), d) == d

    def test_foreign_condensation_rejected(self):
        other = SliceDiff(root=R, nodes={R: DiffNodeStatus.CHANGED}, edges={})
        with pytest.raises(ForeignCondensation):
            expand(collapse_unchanged(other), chain_diff())


class TestCondensationLaws:
    def test_laws_on_random_diffs(self):
        rng = random.Random(314)
        for _ in range(60):
            old, new, old_fp, new_fp = random_slice_pair(rng)
            d = diff_slices(old, new, old_fp, new_fp)
            c = collapse_unchanged(d)

            # round trip
            assert expand(c, d) == d

            # partition law
            collapsible = {
                k for k, s in d.nodes.items()
                if s is U and k != d.root and k not in ("Framework", "Library")
            }
            seen = [k for sn in c.super_nodes for k in sn.members]
            assert sorted(seen) == sorted(collapsible)

            # members agree with the union-find oracle
            assert [set(sn.members) for sn in c.super_nodes] == [
                set(g) for g in components_oracle(d)
            ]

            # count preservation of non-unchanged nodes
            changed_source = sum(1 for s in d.nodes.values() if s is not U)
            changed_visible = sum(
                1 for s in c.visible_nodes.values() if s is not U
            )
            assert changed_source == changed_visible

            # quotient soundness (iff, visible nodes as singleton groups)
            group_of = {k: sn.id for sn in c.super_nodes for k in sn.members}
            expected_edges = {}
            for (a, b), status in d.edges.items():
                key = (group_of.get(a, a), group_of.get(b, b))
                expected_edges.setdefault(key, set()).add(status)
            assert {k: set(v) for k, v in c.edges.items()} == expected_edges
