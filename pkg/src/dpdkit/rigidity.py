"""Stability of fiber graphs under degeneration.

A fiber graph can change along a one-parameter family in two directions:
a feather may slide toward the tail of the spine (specialization) or back
toward its mother component (generalization).  Both directions are decided
here by pure dual-graph combinatorics: generalizations are constructed
explicitly, specializations are detected through contractibility conditions
on the source graph, and a graph stable in both directions is rigid.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dualgraph import (
    Feather,
    FiberGraph,
    blowdown_record_contracting,
    contracts_to_zero_fiber,
    intersection_number,
    is_contractible,
    subgraph_ge,
    subgraph_gt,
    transforms_from_record,
)


def mother_component(f: FiberGraph, vertex: int) -> int:
    """Spine index mu of the mother component of a feather curve.

    The total transform of the curve meets exactly one spine component, and
    meets it once; that spine index is the mother. Uniqueness is asserted
    against the full spine rather than assumed. `vertex` is a tree vertex
    id of a bridge or box curve.
    """
    tree = f.tree()
    role = tree.roles()[vertex]
    if role[0] not in ("bridge", "box"):
        raise ValueError(f"vertex {vertex} is not a feather component")
    ok, record = contracts_to_zero_fiber(tree)
    assert ok, "FiberGraph construction guarantees a zero fiber"
    if all(vid != vertex for vid, _ in record):
        # the curve survived the greedy pass; force a record that blows it
        # down so its total transform exists
        record = blowdown_record_contracting(tree, vertex)
    cycle = transforms_from_record(record)[vertex]
    values = [
        intersection_number(tree, cycle, {i: 1})
        for i in range(len(f.spine))
    ]
    assert values.count(1) == 1 and set(values) <= {0, 1}, (
        f"mother component not unique for vertex {vertex}: {values}"
    )
    return values.index(1)


def is_distinguished(f: FiberGraph) -> bool:
    """No spine index 1..N cuts off a non-empty contractible piece."""
    for i in range(1, f.last_index + 1):
        forest = subgraph_gt(f, i)
        if forest and is_contractible(forest):
            return False
    return True


def jump_pairs(f: FiberGraph) -> list[tuple[int, int, int]]:
    """All (rho, i, i') with feather rho at D_i able to jump to D_i' > D_i.

    A target qualifies when every feather strictly between i and i' is
    contractible, the graph beyond D_i' is empty or contractible, and the
    connected piece from D_{i+1} on is contractible. Every feather sitting
    at D_i then jumps; the jumping feather itself need not be contractible.
    The list is empty exactly when the graph is stable under specialization.
    """
    n = f.last_index
    pairs: list[tuple[int, int, int]] = []
    for i in range(n):
        rhos = f.feathers_at(i)
        if not rhos:
            continue
        if not is_contractible([subgraph_ge(f, i + 1)]):
            continue
        for ip in range(i + 1, n + 1):
            between = [
                f.feathers[r][1].tree()
                for k in range(i + 1, ip)
                for r in f.feathers_at(k)
            ]
            if not is_contractible(between):
                continue
            if not is_contractible(subgraph_gt(f, ip)):
                continue
            pairs.extend((r, i, ip) for r in rhos)
    pairs.sort()
    return pairs


@dataclass(frozen=True)
class GeneralizationMove:
    """Feather rho detaches from D_i and reattaches at its mother D_mu."""

    rho: int
    i: int
    mu: int
    result: FiberGraph


def generalization_moves(f: FiberGraph) -> list[GeneralizationMove]:
    """One move per feather whose bridge is not a (-1)-curve.

    The moved feather gets a fresh (-1) bridge at the mother component; its
    box and every other weight stay put. Results are valid fibers by
    construction (FiberGraph refuses anything else). The list is empty
    exactly when all bridges are (-1)-curves.
    """
    moves = []
    for rho, (i, fe) in enumerate(f.feathers):
        if fe.bridge_weight == -1:
            continue
        bridge_id, _ = f.feather_vertex_ids(rho)
        mu = mother_component(f, bridge_id)
        assert mu < i, "a bridge below -1 sits strictly right of its mother"
        reattached = list(f.feathers)
        reattached[rho] = (mu, Feather(-1, fe.box))
        moves.append(
            GeneralizationMove(rho, i, mu, FiberGraph(f.spine, tuple(reattached)))
        )
    return moves


def jump_closure(f: FiberGraph) -> frozenset[tuple[int, int]]:
    """Spine index pairs (i, i') with a jump available from some graph
    reachable by generalization moves.

    Direct jumps land strictly to the right; composing a generalization
    with a jump can therefore reach targets left of a feather's current
    seat, which is what this closure captures.
    """
    seen = {f}
    queue = [f]
    found: set[tuple[int, int]] = set()
    while queue:
        g = queue.pop()
        found.update((i, ip) for _, i, ip in jump_pairs(g))
        for mv in generalization_moves(g):
            if mv.result not in seen:
                seen.add(mv.result)
                queue.append(mv.result)
    return frozenset(found)


@dataclass(frozen=True)
class RigidityReport:
    distinguished: bool
    all_bridges_minus_one: bool
    mother: dict[int, int]
    jump_pairs: tuple[tuple[int, int, int], ...]
    generalization_moves: tuple[tuple[int, int, int], ...]
    rigid: bool
    stable_generalization: bool
    stable_specialization: bool


def is_rigid(f: FiberGraph) -> RigidityReport:
    """Decide rigidity and collect the full stability report.

    The exact decision is: stable under generalization (all bridges -1)
    and stable under specialization (no jump pairs). A sufficient
    criterion - distinguished, all bridges -1, and either a feather at the
    last component or no contractible tail above a feather seat - is
    cross-checked against the exact decision whenever it applies.
    """
    mother = {}
    for rho in range(len(f.feathers)):
        bridge_id, _ = f.feather_vertex_ids(rho)
        mother[rho] = mother_component(f, bridge_id)
    moves = generalization_moves(f)
    jumps = tuple(jump_pairs(f))
    stable_gen = f.all_bridges_minus_one()
    assert stable_gen == (not moves)
    stable_spec = not jumps
    rigid = stable_gen and stable_spec
    distinguished = is_distinguished(f)
    if distinguished and stable_gen:
        n = f.last_index
        feather_at_end = bool(subgraph_gt(f, n))
        no_contractible_tail = all(
            not is_contractible([subgraph_ge(f, i + 1)])
            for i in range(n)
            if f.feathers_at(i)
        )
        if feather_at_end or no_contractible_tail:
            assert rigid, "sufficient criterion disagrees with exact decision"
    return RigidityReport(
        distinguished=distinguished,
        all_bridges_minus_one=stable_gen,
        mother=mother,
        jump_pairs=jumps,
        generalization_moves=tuple((m.rho, m.i, m.mu) for m in moves),
        rigid=rigid,
        stable_generalization=stable_gen,
        stable_specialization=stable_spec,
    )
