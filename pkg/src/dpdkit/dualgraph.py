"""Weighted trees for zigzags, feathers, fibers and extended divisors.

The contraction calculus lives here. A blowdown removes a vertex of weight -1
and degree at most 2, adds +1 to each neighbour's weight, and joins the two
neighbours when there are two. Joining vertices that are already adjacent
would create a cycle in the dual graph, which the geometry never does; that
situation raises NonSncContraction.

Vertices carry role tags so that graphs assembled from fibers stay
self-describing: ("spine", i) for the chain D_0..D_N, ("bridge", rho) for the
bridge curve of feather rho, ("box", rho, pos) for its box chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .exactmath import Chain

Role = tuple
Record = tuple[tuple[int, tuple[int, ...]], ...]


class NonSncContraction(ValueError):
    """A blowdown tried to join two already-adjacent vertices."""


class NotStandard(ValueError):
    """Zigzag is not in standard form [[0,0,w_2..w_n]], w_j <= -2."""


class InvalidFiber(ValueError):
    """Graph does not contract to a single 0-vertex, so it is no fiber."""


@dataclass(frozen=True)
class WeightedTree:
    """Finite tree with integer vertex weights and role tags.

    vertices: tuple of (id, weight, role); edges: tuple of (a, b) with a < b.
    Always connected and acyclic; use forests (plain collections of trees)
    for disconnected configurations.
    """

    vertices: tuple[tuple[int, int, Role], ...]
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        ids = [v for v, _, _ in self.vertices]
        if not ids:
            raise ValueError("empty tree; use an empty forest instead")
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate vertex ids")
        idset = set(ids)
        for a, b in self.edges:
            if a not in idset or b not in idset or a >= b:
                raise ValueError(f"bad edge ({a}, {b})")
        if len(self.edges) != len(ids) - 1 or not self._connected():
            raise ValueError("vertex/edge data is not a tree")

    def _connected(self) -> bool:
        adj = self.adjacency()
        seen = {next(iter(adj))}
        stack = list(seen)
        while stack:
            for n in adj[stack.pop()]:
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        return len(seen) == len(adj)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v, _, _ in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def weights(self) -> dict[int, int]:
        return {v: w for v, w, _ in self.vertices}

    def roles(self) -> dict[int, Role]:
        return {v: r for v, _, r in self.vertices}

    def weight_of(self, vid: int) -> int:
        return self.weights()[vid]

    def __len__(self) -> int:
        return len(self.vertices)


def chain_tree(weights: Iterable[int], start_id: int = 0) -> WeightedTree:
    """Linear tree from a weight list; ids consecutive, spine roles."""
    ws = list(weights)
    verts = tuple(
        (start_id + i, w, ("spine", i)) for i, w in enumerate(ws)
    )
    edges = tuple((start_id + i - 1, start_id + i) for i in range(1, len(ws)))
    return WeightedTree(verts, edges)


# --- contraction engine -----------------------------------------------------

def _mutable(tree: WeightedTree) -> tuple[dict[int, int], dict[int, set[int]]]:
    return tree.weights(), tree.adjacency()


def _contract_vertex(
    weights: dict[int, int], adj: dict[int, set[int]], vid: int
) -> tuple[int, ...]:
    nbrs = tuple(sorted(adj[vid]))
    if len(nbrs) == 2:
        a, b = nbrs
        if b in adj[a]:
            raise NonSncContraction(
                f"contracting {vid} would join adjacent vertices {a}, {b}"
            )
        adj[a].add(b)
        adj[b].add(a)
    for n in nbrs:
        weights[n] += 1
        adj[n].discard(vid)
    del weights[vid]
    del adj[vid]
    return nbrs


def _greedy_record(
    weights: dict[int, int],
    adj: dict[int, set[int]],
    prefer: int | None = None,
) -> list[tuple[int, tuple[int, ...]]]:
    """Contract (-1)-vertices of degree <= 2 until none remain.

    Lowest id first; when `prefer` is given it is taken whenever legal, which
    lets callers force a particular vertex to be contracted rather than
    survive. The success verdict is order independent (confluence), only the
    identity of the surviving vertex can differ.
    """
    record = []
    while True:
        vid = None
        if (
            prefer is not None
            and prefer in weights
            and weights[prefer] == -1
            and len(adj[prefer]) <= 2
        ):
            vid = prefer
        else:
            for u in sorted(weights):
                if weights[u] == -1 and len(adj[u]) <= 2:
                    vid = u
                    break
        if vid is None:
            return record
        record.append((vid, _contract_vertex(weights, adj, vid)))


def is_contractible(forest: Iterable[WeightedTree]) -> bool:
    """True iff every component blows down to nothing."""
    for tree in forest:
        weights, adj = _mutable(tree)
        _greedy_record(weights, adj)
        if weights:
            return False
    return True


def contracts_to_zero_fiber(tree: WeightedTree) -> tuple[bool, Record]:
    """Whether the tree contracts to a single vertex of weight 0.

    Also returns the ordered blowdown record (contracted id, neighbour ids at
    contraction time); the record is what total-transform replay consumes.
    """
    weights, adj = _mutable(tree)
    record = _greedy_record(weights, adj)
    ok = len(weights) == 1 and next(iter(weights.values())) == 0
    return ok, tuple(record)


def blowdown_record_contracting(tree: WeightedTree, target: int) -> Record:
    """A successful zero-fiber record in which `target` itself is contracted.

    The greedy pass prefers `target` whenever legal; since several vertices
    can play the surviving 0-curve, this almost always suffices. The rare
    remainder falls back to a search over move orders.
    """
    weights, adj = _mutable(tree)
    record = _greedy_record(weights, adj, prefer=target)
    if target not in weights and len(weights) == 1:
        (last_w,) = weights.values()
        if last_w == 0:
            return tuple(record)

    def search(weights, adj, acc):
        cands = [
            v for v in sorted(weights)
            if weights[v] == -1 and len(adj[v]) <= 2
        ]
        cands.sort(key=lambda v: v != target)
        if not cands:
            if len(weights) == 1 and target not in weights:
                (w,) = weights.values()
                if w == 0:
                    return acc
            return None
        for v in cands:
            ws = dict(weights)
            aj = {k: set(s) for k, s in adj.items()}
            try:
                nbrs = _contract_vertex(ws, aj, v)
            except NonSncContraction:
                continue
            found = search(ws, aj, acc + [(v, nbrs)])
            if found is not None:
                return found
        return None

    weights, adj = _mutable(tree)
    found = search(weights, adj, [])
    if found is None:
        raise InvalidFiber(f"no zero-fiber contraction removes vertex {target}")
    return tuple(found)


# --- total transforms -------------------------------------------------------

def transforms_from_record(record: Record) -> dict[int, dict[int, int]]:
    """Replay a blowdown record in reverse, pulling cycles back.

    Reading the record backwards is the blowup history: when a vertex is
    created, every existing cycle gains the new exceptional curve with
    coefficient equal to the cycle's total at the blowup centre. Each created
    curve starts life as its own proper transform.
    """
    tables: dict[int, dict[int, int]] = {}
    for vid, nbrs in reversed(record):
        for row in tables.values():
            add = sum(row.get(n, 0) for n in nbrs)
            if add:
                row[vid] = add
        tables[vid] = {vid: 1}
    return tables


def intersection_number(
    tree: WeightedTree, za: Mapping[int, int], zb: Mapping[int, int]
) -> int:
    """Intersection of two cycles in the form given by weights + adjacency."""
    weights = tree.weights()
    total = sum(za.get(v, 0) * zb.get(v, 0) * w for v, w in weights.items())
    for a, b in tree.edges:
        total += za.get(a, 0) * zb.get(b, 0) + za.get(b, 0) * zb.get(a, 0)
    return total


def total_transforms(f: "FiberGraph") -> dict[int, dict[int, int]]:
    """Total-transform cycles for every contracted component of the fiber.

    The surviving 0-curve is the blowup base and has no entry. Orthonormality
    (each cycle squares to -1, distinct cycles meet trivially) is asserted
    because it is the correctness certificate of the replay.
    """
    tree = f.tree()
    ok, record = contracts_to_zero_fiber(tree)
    if not ok:
        raise InvalidFiber("not a zero fiber")
    tables = transforms_from_record(record)
    items = sorted(tables.items())
    for i, (va, ta) in enumerate(items):
        assert intersection_number(tree, ta, ta) == -1, f"cycle {va} not (-1)"
        for vb, tb in items[i + 1:]:
            assert intersection_number(tree, ta, tb) == 0, (
                f"cycles {va}, {vb} not orthogonal"
            )
    return tables


# --- zigzags ----------------------------------------------------------------

@dataclass(frozen=True)
class Zigzag:
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(self.weights))

    def is_standard(self) -> bool:
        w = self.weights
        return (
            len(w) >= 2
            and w[0] == 0
            and w[1] == 0
            and all(x <= -2 for x in w[2:])
        )

    @property
    def n(self) -> int:
        """Largest component index (components run C_0..C_n)."""
        return len(self.weights) - 1

    def __str__(self) -> str:
        return "[[" + ",".join(str(w) for w in self.weights) + "]]"


def reverse_zigzag(z: Zigzag) -> Zigzag:
    """[[0,0,w_2..w_n]] to [[0,0,w_n..w_2]]; an involution on standard forms."""
    if not z.is_standard():
        raise NotStandard(str(z))
    return Zigzag((0, 0) + tuple(reversed(z.weights[2:])))


# --- feathers and fibers ----------------------------------------------------

@dataclass(frozen=True)
class Feather:
    """Bridge curve plus box chain; the box resolves a cyclic singularity."""

    bridge_weight: int
    box: Chain = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "box", tuple(self.box))
        if self.bridge_weight > -1:
            raise ValueError(f"bridge weight {self.bridge_weight} > -1")
        if any(w > -2 for w in self.box):
            raise ValueError(f"box {self.box} contains a weight > -2")

    @property
    def is_ak_feather(self) -> bool:
        """A_k shape: (-1)-bridge and a (possibly empty) all-(-2) box."""
        return self.bridge_weight == -1 and all(w == -2 for w in self.box)

    def tree(self, bridge_id: int = 0) -> WeightedTree:
        verts = [(bridge_id, self.bridge_weight, ("bridge", 0))]
        edges = []
        prev = bridge_id
        for pos, w in enumerate(self.box):
            vid = bridge_id + 1 + pos
            verts.append((vid, w, ("box", 0, pos)))
            edges.append((prev, vid))
            prev = vid
        return WeightedTree(tuple(verts), tuple(edges))


def _assemble(
    spine: tuple[int, ...],
    feathers: tuple[tuple[int, "Feather"], ...],
) -> WeightedTree:
    verts = [(i, w, ("spine", i)) for i, w in enumerate(spine)]
    edges = [(i - 1, i) for i in range(1, len(spine))]
    nid = len(spine)
    for rho, (attach, fe) in enumerate(feathers):
        verts.append((nid, fe.bridge_weight, ("bridge", rho)))
        edges.append((attach, nid))
        prev = nid
        nid += 1
        for pos, w in enumerate(fe.box):
            verts.append((nid, w, ("box", rho, pos)))
            edges.append((prev, nid))
            prev = nid
            nid += 1
    return WeightedTree(tuple(verts), tuple(edges))


@dataclass(frozen=True)
class FiberGraph:
    """The degenerate fiber: spine D_0..D_N plus feathers.

    Feather entries are (attachment index, Feather); their list position rho
    is the feather's identity in reports. Construction validates that the
    whole graph contracts to a single 0-vertex, so invalid fibers cannot
    exist as values.
    """

    spine: tuple[int, ...]
    feathers: tuple[tuple[int, Feather], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "spine", tuple(self.spine))
        object.__setattr__(
            self, "feathers", tuple((i, fe) for i, fe in self.feathers)
        )
        if not self.spine:
            raise InvalidFiber("empty spine")
        for i, _ in self.feathers:
            if not 0 <= i < len(self.spine):
                raise InvalidFiber(f"feather attached at bad index {i}")
        ok, _ = contracts_to_zero_fiber(self.tree())
        if not ok:
            raise InvalidFiber(
                f"graph does not contract to a 0-vertex: spine={self.spine}, "
                f"feathers={self.feathers}"
            )

    @property
    def last_index(self) -> int:
        return len(self.spine) - 1

    def tree(self) -> WeightedTree:
        return _assemble(self.spine, self.feathers)

    def feather_vertex_ids(self, rho: int) -> tuple[int, tuple[int, ...]]:
        """(bridge id, box ids) of feather rho inside tree()."""
        nid = len(self.spine)
        for k, (_, fe) in enumerate(self.feathers):
            if k == rho:
                bridge = nid
                boxes = tuple(range(nid + 1, nid + 1 + len(fe.box)))
                return bridge, boxes
            nid += 1 + len(fe.box)
        raise IndexError(f"no feather {rho}")

    def feathers_at(self, i: int) -> tuple[int, ...]:
        """Indices rho of the feathers attached at spine position i."""
        return tuple(r for r, (a, _) in enumerate(self.feathers) if a == i)

    def all_bridges_minus_one(self) -> bool:
        return all(fe.bridge_weight == -1 for _, fe in self.feathers)


def _induced_components(
    tree: WeightedTree, keep: set[int]
) -> list[WeightedTree]:
    adj = tree.adjacency()
    roles = tree.roles()
    weights = tree.weights()
    remaining = set(keep)
    comps: list[WeightedTree] = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        stack = [seed]
        while stack:
            for n in adj[stack.pop()]:
                if n in keep and n not in comp:
                    comp.add(n)
                    stack.append(n)
        remaining -= comp
        verts = tuple(
            (v, weights[v], roles[v]) for v in sorted(comp)
        )
        edges = tuple(
            (a, b) for a, b in tree.edges if a in comp and b in comp
        )
        comps.append(WeightedTree(verts, edges))
    return comps


def subgraph_gt(f: FiberGraph, i: int) -> list[WeightedTree]:
    """Components of f minus D_i not containing D_0.

    That is the spine tail D_{i+1}.. with its feathers, plus each feather
    attached at D_i as a separate component. At i = N only the feathers at
    D_N remain; the forest may be empty.
    """
    if not 0 <= i <= f.last_index:
        raise IndexError(f"spine index {i} out of range")
    tree = f.tree()
    keep = set()
    for vid, _, role in tree.vertices:
        if role[0] == "spine":
            if role[1] > i:
                keep.add(vid)
        else:
            attach = f.feathers[role[1]][0]
            if attach >= i:
                keep.add(vid)
    return _induced_components(tree, keep)


def subgraph_ge(f: FiberGraph, i: int) -> WeightedTree:
    """Connected piece D_i..D_N with every feather attached there."""
    if not 1 <= i <= f.last_index:
        raise IndexError(f"spine index {i} out of range")
    tree = f.tree()
    keep = set()
    for vid, _, role in tree.vertices:
        if role[0] == "spine":
            if role[1] >= i:
                keep.add(vid)
        else:
            attach = f.feathers[role[1]][0]
            if attach >= i:
                keep.add(vid)
    comps = _induced_components(tree, keep)
    assert len(comps) == 1, "tail is connected by construction"
    return comps[0]


# --- extended divisors ------------------------------------------------------

@dataclass(frozen=True)
class ExtendedDivisor:
    """C_0(0) + C_1(0) + the degenerate fiber, with C_s marked.

    Extended indices are shifted by 2 against fiber indices: C_{i+2} is D_i.
    """

    fiber: FiberGraph
    s_index: int

    def __post_init__(self) -> None:
        if not 2 <= self.s_index <= self.n:
            raise ValueError(f"C_s index {self.s_index} outside 2..{self.n}")

    @property
    def c0_weight(self) -> int:
        return 0

    @property
    def c1_weight(self) -> int:
        return 0

    @property
    def n(self) -> int:
        """Index of the last component C_n."""
        return len(self.fiber.spine) + 1

    def zigzag(self) -> Zigzag:
        return Zigzag((0, 0) + self.fiber.spine)

    def tree(self) -> WeightedTree:
        shifted = tuple((i + 2, fe) for i, fe in self.fiber.feathers)
        return _assemble((0, 0) + self.fiber.spine, shifted)


# --- rendering ----------------------------------------------------------------

def _vertex_name(role: Role, spine_prefix: str) -> str:
    if role[0] == "spine":
        return f"{spine_prefix}{role[1]}"
    if role[0] == "bridge":
        return f"B{role[1] + 1}"
    return f"R{role[1] + 1}_{role[2] + 1}"


def to_dot(
    graph: WeightedTree | Iterable[WeightedTree],
    spine_prefix: str = "D",
) -> str:
    """Graphviz text for a tree or a forest with disjoint vertex ids."""
    trees = [graph] if isinstance(graph, WeightedTree) else list(graph)
    lines = ["graph {"]
    names: dict[int, str] = {}
    for tree in trees:
        for vid, w, role in tree.vertices:
            name = _vertex_name(role, spine_prefix)
            names[vid] = name
            lines.append(f'  "{name}" [label="{name}({w})"];')
    for tree in trees:
        for a, b in tree.edges:
            lines.append(f'  "{names[a]}" -- "{names[b]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _feather_token(fe: Feather) -> str:
    box = "[" + ",".join(str(w) for w in fe.box) + "]" if fe.box else ""
    return f"F:{fe.bridge_weight}{box}"


def _spine_tokens(
    spine: tuple[int, ...],
    feathers: tuple[tuple[int, Feather], ...],
) -> list[str]:
    by_attach: dict[int, list[str]] = {}
    for attach, fe in feathers:
        by_attach.setdefault(attach, []).append(_feather_token(fe))
    tokens = []
    for i, w in enumerate(spine):
        tok = str(w)
        if i in by_attach:
            tok += "{" + ",".join(by_attach[i]) + "}"
        tokens.append(tok)
    return tokens


def _compress(tokens: list[str], protect: int) -> list[str]:
    """Run-length compress repeated bare-weight tokens (runs of 3 or more)."""
    out: list[str] = []
    i = 0
    while i < len(tokens):
        j = i
        while (
            j < len(tokens)
            and tokens[j] == tokens[i]
            and "{" not in tokens[i]
            and j >= protect
        ):
            j += 1
        run = j - i
        if run >= 3:
            out.append(f"({tokens[i]})_{{{run}}}")
            i = j
        else:
            out.append(tokens[i])
            i += 1
    return out


def render_ascii(obj: ExtendedDivisor | FiberGraph) -> str:
    """Bracket notation with feather annotations in braces.

    Extended divisors render double-bracketed with the zero pair up front,
    e.g. [[0,0,-3,-2{F:-1},(-2)_{4}]]; bare fibers render single-bracketed.
    """
    if isinstance(obj, ExtendedDivisor):
        shifted = tuple((i + 2, fe) for i, fe in obj.fiber.feathers)
        tokens = _spine_tokens((0, 0) + obj.fiber.spine, shifted)
        return "[[" + ",".join(_compress(tokens, 2)) + "]]"
    tokens = _spine_tokens(obj.spine, obj.feathers)
    return "[" + ",".join(_compress(tokens, 0)) + "]"
