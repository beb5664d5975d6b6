"""Contraction calculus against a brute-force move-order oracle."""

import pytest

from dpdkit.dualgraph import (
    Feather,
    FiberGraph,
    InvalidFiber,
    NonSncContraction,
    NotStandard,
    WeightedTree,
    Zigzag,
    chain_tree,
    contracts_to_zero_fiber,
    intersection_number,
    is_contractible,
    render_ascii,
    reverse_zigzag,
    subgraph_ge,
    subgraph_gt,
    to_dot,
    total_transforms,
    transforms_from_record,
    blowdown_record_contracting,
    ExtendedDivisor,
)
from dpdkit.dualgraph import _contract_vertex


# --- oracle -------------------------------------------------------------------
#
# Explore every maximal sequence of legal blowdowns (memoized on graph states)
# and classify the terminal states. "zero" means a single vertex of weight 0,
# "empty" a fully contracted graph, "stuck" anything else.

def _canon(weights, adj):
    return (
        tuple(sorted(weights.items())),
        tuple(sorted(tuple(sorted((a, b))) for a in adj for b in adj[a] if a < b)),
    )


def oracle_outcomes(tree):
    start = (tree.weights(), tree.adjacency())
    seen = set()
    outcomes = set()
    stack = [start]
    while stack:
        weights, adj = stack.pop()
        key = _canon(weights, adj)
        if key in seen:
            continue
        seen.add(key)
        moves = [
            v for v in weights if weights[v] == -1 and len(adj[v]) <= 2
        ]
        if not moves:
            if not weights:
                outcomes.add("empty")
            elif len(weights) == 1 and next(iter(weights.values())) == 0:
                outcomes.add("zero")
            else:
                outcomes.add("stuck")
            continue
        for v in moves:
            ws = dict(weights)
            aj = {k: set(s) for k, s in adj.items()}
            _contract_vertex(ws, aj, v)
            stack.append((ws, aj))
    return outcomes


def assert_confluent_zero_fiber(tree):
    ok, _ = contracts_to_zero_fiber(tree)
    outcomes = oracle_outcomes(tree)
    assert ok, f"greedy verdict false but oracle says {outcomes}"
    assert outcomes == {"zero"}, outcomes


# --- contraction verdicts -----------------------------------------------------

class TestContraction:
    def test_single_zero_vertex(self):
        ok, record = contracts_to_zero_fiber(chain_tree([0]))
        assert ok and record == ()

    def test_two_minus_ones(self):
        ok, record = contracts_to_zero_fiber(chain_tree([-1, -1]))
        assert ok
        assert record == ((0, (1,)),)

    def test_chain_minus2_minus1_minus2(self):
        # The greedy trace: contract the middle, the joined ends become
        # [-1,-1], then a single 0-vertex. The oracle confirms every order
        # agrees, so the verdict is firmly TRUE.
        tree = chain_tree([-2, -1, -2])
        assert_confluent_zero_fiber(tree)

    def test_non_fibers(self):
        for ws in [[-2], [-1], [-1, -1, -1, -1], [0, 0]]:
            ok, _ = contracts_to_zero_fiber(chain_tree(ws))
            assert not ok
            assert "zero" not in oracle_outcomes(chain_tree(ws))

    def test_contractible_forest(self):
        assert is_contractible([chain_tree([-1])])
        assert is_contractible([chain_tree([-1, -2])])
        assert not is_contractible([chain_tree([-2])])
        assert not is_contractible([chain_tree([-1, -2]), chain_tree([-2])])
        assert is_contractible([])
        assert oracle_outcomes(chain_tree([-1, -2])) == {"empty"}

    def test_non_snc_guard_on_corrupt_input(self):
        # WeightedTree never builds cycles, so exercise the engine directly.
        weights = {0: -1, 1: -2, 2: -2}
        adj = {0: {1, 2}, 1: {0, 2}, 2: {0, 1}}
        with pytest.raises(NonSncContraction):
            _contract_vertex(weights, adj, 0)


# --- fibers -------------------------------------------------------------------

def nest_ladder(n):
    """Spine [-n,-2,(-2)_{n-1}] with a (-1)-feather at D_1."""
    spine = (-n, -2) + (-2,) * (n - 1)
    return FiberGraph(spine, ((1, Feather(-1)),))


def tilted_ladder(n):
    """Spine [-n,-2,(-2)_{n-2}], (-1)-feather at D_1, (-2)-feather at D_{n-1}."""
    spine = (-n, -2) + (-2,) * (n - 2)
    return FiberGraph(spine, ((1, Feather(-1)), (n - 1, Feather(-2))))


class TestFiberGraph:
    def test_validation_rejects_non_fibers(self):
        with pytest.raises(InvalidFiber):
            FiberGraph((-2,))
        with pytest.raises(InvalidFiber):
            FiberGraph((-2, -2), ((5, Feather(-1)),))

    @pytest.mark.parametrize("n", range(2, 8))
    def test_worked_fibers_are_confluent(self, n):
        assert_confluent_zero_fiber(nest_ladder(n).tree())
        if n >= 3:
            assert_confluent_zero_fiber(tilted_ladder(n).tree())

    def test_feather_vertex_ids(self):
        f = tilted_ladder(4)
        assert f.feather_vertex_ids(0) == (4, ())
        assert f.feather_vertex_ids(1) == (5, ())
        g = FiberGraph((-3,), ((0, Feather(-1, (-2, -2))),))
        assert g.feather_vertex_ids(0) == (1, (2, 3))

    def test_feathers_at(self):
        f = tilted_ladder(4)
        assert f.feathers_at(1) == (0,)
        assert f.feathers_at(3) == (1,)
        assert f.feathers_at(0) == ()


class TestSubgraphs:
    def test_gt_tail_and_feathers(self):
        f = nest_ladder(3)  # spine indices 0..3, feather at 1
        forest = subgraph_gt(f, 1)
        shapes = sorted(
            tuple(w for _, w, _ in t.vertices) for t in forest
        )
        assert shapes == [(-2, -2), (-1,)]

    def test_gt_last_index(self):
        f = nest_ladder(3)
        assert subgraph_gt(f, 3) == []
        g = tilted_ladder(3)
        forest = subgraph_gt(g, 2)
        assert [tuple(w for _, w, _ in t.vertices) for t in forest] == [(-2,)]

    def test_gt_zero_is_everything_but_d0(self):
        f = tilted_ladder(4)
        forest = subgraph_gt(f, 0)
        total = sum(len(t) for t in forest)
        assert total == len(f.tree()) - 1

    def test_ge_spans_tail_with_feathers(self):
        f = tilted_ladder(4)  # spine 0..3, feathers at 1 and 3
        tail = subgraph_ge(f, 1)
        assert len(tail) == 5  # D_1,D_2,D_3 plus both bridges
        assert sorted(w for _, w, _ in tail.vertices) == [-2, -2, -2, -2, -1]

    def test_partition_property(self):
        f = tilted_ladder(5)
        tree = f.tree()
        for i in range(len(f.spine)):
            forest = subgraph_gt(f, i)
            below = {
                vid
                for vid, _, role in tree.vertices
                if (role[0] == "spine" and role[1] <= i)
                or (role[0] != "spine" and f.feathers[role[1]][0] < i)
            }
            above = set()
            for t in forest:
                for vid, _, _ in t.vertices:
                    assert vid not in above
                    above.add(vid)
            assert below | above == {vid for vid, _, _ in tree.vertices}
            assert below & above == set()


# --- total transforms -----------------------------------------------------------

class TestTotalTransforms:
    def test_single_vertex_fiber_has_empty_table(self):
        f = FiberGraph((0,))
        assert total_transforms(f) == {}

    def test_two_minus_ones_last_created_is_proper(self):
        f = FiberGraph((-1, -1))
        tables = total_transforms(f)
        assert tables == {0: {0: 1}}

    @pytest.mark.parametrize("n", range(3, 9))
    def test_orthonormality_on_worked_examples(self, n):
        # total_transforms asserts the intersection identities internally
        for f in (nest_ladder(n), tilted_ladder(n)):
            tables = total_transforms(f)
            assert len(tables) == len(f.tree()) - 1

    def test_record_replay_matches_hand_computation(self):
        # degen.4 shape: [-2,-2,-1] spine with a (-2)-bridge at D_1.
        f = FiberGraph((-2, -2, -1), ((1, Feather(-2)),))
        tree = f.tree()
        record = blowdown_record_contracting(tree, 3)
        tables = transforms_from_record(record)
        assert tables[3] == {3: 1, 1: 1, 2: 1}
        assert intersection_number(tree, tables[3], {0: 1}) == 1
        assert intersection_number(tree, tables[3], tables[3]) == -1

    def test_prefer_target_when_default_survivor(self):
        # A star where both feathers are (-1): one of them survives the
        # greedy order, yet a record contracting it must exist.
        f = FiberGraph((-2,), ((0, Feather(-1)), (0, Feather(-1))))
        tree = f.tree()
        for target in (1, 2):
            record = blowdown_record_contracting(tree, target)
            assert target in {vid for vid, _ in record}


# --- zigzags --------------------------------------------------------------------

class TestZigzag:
    def test_reverse_examples(self):
        assert reverse_zigzag(Zigzag((0, 0, -2, -3))) == Zigzag((0, 0, -3, -2))
        assert reverse_zigzag(Zigzag((0, 0, -2, -2))) == Zigzag((0, 0, -2, -2))
        assert reverse_zigzag(Zigzag((0, 0))) == Zigzag((0, 0))

    def test_reverse_involution(self):
        z = Zigzag((0, 0, -4, -2, -5, -3))
        assert reverse_zigzag(reverse_zigzag(z)) == z

    def test_not_standard(self):
        for ws in [(0,), (0, -1), (0, 0, -1), (1, 0, -2), ()]:
            with pytest.raises(NotStandard):
                reverse_zigzag(Zigzag(ws))


# --- rendering ------------------------------------------------------------------

class TestRendering:
    def test_dot_two_nodes_one_edge(self):
        text = to_dot(chain_tree((0, 0)))
        assert text.count("--") == 1
        assert text.count("label=") == 2
        assert text.startswith("graph {")

    def test_dot_counts_fiber_components(self):
        f = nest_ladder(3)
        text = to_dot(f.tree())
        assert text.count("label=") == 5  # n+2 components for n=3

    def test_dot_empty_forest(self):
        assert to_dot([]) == "graph {\n}\n"

    def test_dot_deterministic(self):
        f = tilted_ladder(4)
        assert to_dot(f.tree()) == to_dot(f.tree())

    def test_ascii_extended(self):
        ext = ExtendedDivisor(nest_ladder(5), 3)
        assert render_ascii(ext) == "[[0,0,-5,-2{F:-1},(-2)_{4}]]"

    def test_ascii_fiber_with_box(self):
        f = FiberGraph((-3,), ((0, Feather(-1, (-2, -2))),))
        assert render_ascii(f) == "[-3{F:-1[-2,-2]}]"

    def test_ascii_no_compression_below_three(self):
        ext = ExtendedDivisor(nest_ladder(2), 3)
        assert render_ascii(ext) == "[[0,0,-2,-2{F:-1},-2]]"
