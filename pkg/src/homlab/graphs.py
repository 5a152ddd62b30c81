"""Graph representation, named constructions, transformations, and
small-graph enumeration with exact isomorphism dedup.

Vertices are 0..n-1.  Edges are unordered pairs without loops.  A graph is
immutable after construction, so instances are safely shareable.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from homlab.errors import InvalidSpec, LimitExceeded

ENUMERATION_VERTEX_LIMIT = 8


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[frozenset[int]]
    adjacency: tuple[int, ...] = field(init=False)  # neighbor bitsets

    def __post_init__(self):
        adj = [0] * self.n
        for e in self.edges:
            u, v = sorted(e)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidSpec("edge endpoint out of range: (%d, %d)" % (u, v))
            if u == v:
                raise InvalidSpec("self-loop at %d" % u)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "adjacency", tuple(adj))

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        return Graph(n, frozenset(frozenset(e) for e in edges))

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adjacency)

    def neighbors(self, v: int) -> list[int]:
        return [u for u in range(self.n) if self.adjacency[v] >> u & 1]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def __repr__(self):
        return "Graph(n=%d, edges=%s)" % (self.n, self.edge_list())


@dataclass(frozen=True)
class GraphFamilySpec:
    kind: str  # complete | biclique | cycle | path | star | petersen | edges
    params: tuple[int, ...] = ()
    edge_literal: tuple[tuple[int, int], ...] = ()
    n_literal: int = 0


def build_named(spec: GraphFamilySpec) -> Graph:
    """Construct a named graph with its canonical vertex numbering.

    Bicliques put part A first; stars are K_{1,k} with the center at 0.
    """
    kind, params = spec.kind, spec.params
    if kind == "complete":
        (n,) = params
        _require(n >= 1, "complete graph needs n >= 1")
        return Graph.from_edges(n, combinations(range(n), 2))
    if kind == "biclique":
        a, b = params
        _require(a >= 1 and b >= 1, "biclique parts must be nonempty")
        return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))
    if kind == "cycle":
        (n,) = params
        _require(n >= 3, "cycle needs n >= 3")
        return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))
    if kind == "path":
        (n,) = params
        _require(n >= 1, "path needs n >= 1")
        return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
    if kind == "star":
        (k,) = params
        _require(k >= 1, "star needs >= 1 leaf")
        return Graph.from_edges(k + 1, ((0, 1 + j) for j in range(k)))
    if kind == "petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        spokes = [(i, 5 + i) for i in range(5)]
        return Graph.from_edges(10, outer + inner + spokes)
    if kind == "edges":
        return Graph.from_edges(spec.n_literal, spec.edge_literal)
    raise InvalidSpec("unknown graph kind %r" % kind)


def _require(cond: bool, message: str):
    if not cond:
        raise InvalidSpec(message)


def parse_graph_name(name: str) -> Graph:
    """Parse CLI syntax like "K5", "K3,3", "C6", "P4", "S3", "petersen"."""
    name = name.strip()
    low = name.lower()
    if low == "petersen":
        return build_named(GraphFamilySpec("petersen"))
    head, rest = name[:1].upper(), name[1:]
    try:
        if head == "K" and "," in rest:
            a, b = (int(t) for t in rest.split(","))
            return build_named(GraphFamilySpec("biclique", (a, b)))
        if head == "K":
            return build_named(GraphFamilySpec("complete", (int(rest),)))
        if head == "C":
            return build_named(GraphFamilySpec("cycle", (int(rest),)))
        if head == "P":
            return build_named(GraphFamilySpec("path", (int(rest),)))
        if head == "S":
            return build_named(GraphFamilySpec("star", (int(rest),)))
    except ValueError:
        pass
    raise InvalidSpec("cannot parse graph name %r" % name)


def tensor_with_k2(g: Graph) -> Graph:
    """Bipartite double cover G x K_2.

    Vertex (v, i) maps to index v + i*n; (v,i) ~ (u,1-i) for uv in E(G).
    """
    n = g.n
    edges = []
    for u, v in g.edge_list():
        edges.append((u, v + n))
        edges.append((v, u + n))
    return Graph.from_edges(2 * n, edges)


def add_apexes(g: Graph, count: int) -> Graph:
    """G with `count` (1 or 2) new vertices joined to all original vertices.

    The apexes come last and are not adjacent to each other.
    """
    if count not in (1, 2):
        raise InvalidSpec("apex count must be 1 or 2")
    edges = list(g.edge_list())
    for k in range(count):
        apex = g.n + k
        edges.extend((v, apex) for v in range(g.n))
    return Graph.from_edges(g.n + count, edges)


def triangle_count(g: Graph) -> int:
    total = 0
    for u, v in g.edge_list():
        total += (g.adjacency[u] & g.adjacency[v]).bit_count()
    return total // 3


def is_triangle_free(g: Graph) -> bool:
    return all((g.adjacency[u] & g.adjacency[v]) == 0 for u, v in g.edge_list())


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        v = 0
        f = frontier
        while f:
            if f & 1:
                nxt |= g.adjacency[v]
            f >>= 1
            v += 1
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def graph_stats(g: Graph) -> dict:
    degs = g.degrees()
    return {
        "degrees": degs,
        "max_degree": max(degs, default=0),
        "has_isolated_vertex": any(d == 0 for d in degs),
        "triangle_free": is_triangle_free(g),
    }


# ---------------------------------------------------------------------------
# Bitmask representation for enumeration: bit k of the mask is edge k in the
# lexicographic ordering (0,1),(0,2),...,(0,n-1),(1,2),...,(n-2,n-1).


def _edge_index_table(n: int) -> dict[tuple[int, int], int]:
    table = {}
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            table[(u, v)] = k
            k += 1
    return table


def graph_to_mask(g: Graph) -> int:
    table = _edge_index_table(g.n)
    mask = 0
    for u, v in g.edge_list():
        mask |= 1 << table[(u, v)]
    return mask


def mask_to_graph(n: int, mask: int) -> Graph:
    edges = []
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if mask >> k & 1:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges)


def _mask_rows(n: int, mask: int) -> list[int]:
    """Adjacency as per-vertex neighbor bitsets, from an edge mask."""
    rows = [0] * n
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if mask >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            k += 1
    return rows


def canonical_mask(g: Graph) -> int:
    """Edge mask of the relabeling with the lexicographically minimal
    adjacency bitstring, minimized over all vertex permutations.

    The bitstring reads the upper triangle column by column (placing new
    vertex j contributes bits (0,j),...,(j-1,j)), which lets a
    branch-and-bound search prune on prefixes.  Exact for n <= 8.
    """
    n = g.n
    if n > ENUMERATION_VERTEX_LIMIT:
        raise LimitExceeded("canonical form limited to n <= %d" % ENUMERATION_VERTEX_LIMIT)
    adj = g.adjacency
    best: list[int | None] = [None]

    def prefix_bits(order: list[int]) -> int:
        # Bits contributed by the last placed vertex against earlier ones.
        bits = 0
        j = len(order) - 1
        w = order[j]
        for i in range(j):
            bits = bits << 1 | (adj[order[i]] >> w & 1)
        return bits

    def rec(order: list[int], value: int, remaining: list[int]):
        depth = len(order)
        if depth == n:
            if best[0] is None or value < best[0]:
                best[0] = value
            return
        for idx, w in enumerate(remaining):
            order.append(w)
            new_bits = prefix_bits(order)
            new_value = value << depth | new_bits
            # Compare against the best prefix of the same length.
            if best[0] is None or new_value <= best[0] >> _tail_bits(n, depth + 1):
                rec(order, new_value, remaining[:idx] + remaining[idx + 1 :])
            order.pop()

    rec([], 0, list(range(n)))
    return _colmajor_value_to_mask(n, best[0] or 0)


def _tail_bits(n: int, placed: int) -> int:
    """Bits of the row-major upper-triangle string not yet decided after
    `placed` vertices are assigned."""
    total = n * (n - 1) // 2
    decided = placed * (placed - 1) // 2
    return total - decided


def _colmajor_value_to_mask(n: int, value: int) -> int:
    """Convert the column-by-column B&B bitstring back to the edge mask.

    During the search, placing vertex j contributes bits (0,j),(1,j),...,
    (j-1,j); the edge mask uses row-major (u,v) with u < v.  Both orders
    contain each pair once, so this is a fixed permutation of bits.
    """
    pairs = []
    for j in range(1, n):
        for i in range(j):
            pairs.append((i, j))
    table = _edge_index_table(n)
    mask = 0
    nbits = len(pairs)
    for pos, (i, j) in enumerate(pairs):
        if value >> (nbits - 1 - pos) & 1:
            mask |= 1 << table[(i, j)]
    return mask


def _mask_to_colmajor_value(n: int, mask: int) -> int:
    table = _edge_index_table(n)
    value = 0
    for j in range(1, n):
        for i in range(j):
            value = value << 1 | (mask >> table[(i, j)] & 1)
    return value


def is_canonical_mask(n: int, mask: int) -> bool:
    """True iff no relabeling has a smaller column-major bitstring.

    Early-exit search: branches are pruned the moment their partial
    bitstring exceeds the mask's own prefix, and the search aborts the
    moment any strictly smaller relabeling appears.  Equivalent to
    canonical_mask(g) == mask but far cheaper on non-canonical masks,
    which is what a dedup sweep mostly sees.
    """
    rows = _mask_rows(n, mask)
    total_bits = n * (n - 1) // 2
    target = _mask_to_colmajor_value(n, mask)

    def rec(order: list[int], value: int, remaining: list[int]) -> bool:
        """Returns False as soon as a smaller relabeling is found."""
        depth = len(order)
        if depth == n:
            return True
        for idx, w in enumerate(remaining):
            bits = 0
            for i in range(depth):
                bits = bits << 1 | (rows[order[i]] >> w & 1)
            new_value = value << depth | bits
            decided = (depth + 1) * depth // 2
            prefix = target >> (total_bits - decided)
            if new_value > prefix:
                continue
            if new_value < prefix:
                return False
            order.append(w)
            ok = rec(order, new_value, remaining[:idx] + remaining[idx + 1 :])
            order.pop()
            if not ok:
                return False
        return True

    return rec([], 0, list(range(n)))


def enumerate_graphs(
    n: int,
    connected: bool = False,
    no_isolated: bool = False,
    triangle_free: bool = False,
    dedup_isomorphism: bool = False,
):
    """Yield graphs on n labeled vertices passing the filters.

    With dedup, yields exactly one representative per isomorphism class: the
    graph whose edge mask equals its own canonical mask.  Deduped sweeps are
    cached per (n, filters), so repeated scans pay the permutation search
    once per process.
    """
    if n > ENUMERATION_VERTEX_LIMIT:
        raise LimitExceeded("enumeration limited to n <= %d" % ENUMERATION_VERTEX_LIMIT)
    if dedup_isomorphism:
        for mask in _dedup_masks(n, connected, no_isolated, triangle_free):
            yield mask_to_graph(n, mask)
        return
    for mask in _filtered_masks(n, connected, no_isolated, triangle_free):
        yield mask_to_graph(n, mask)


def _filtered_masks(n: int, connected: bool, no_isolated: bool, triangle_free: bool):
    m = n * (n - 1) // 2
    for mask in range(1 << m):
        rows = _mask_rows(n, mask)
        if no_isolated and any(r == 0 for r in rows):
            continue
        if triangle_free and _mask_has_triangle(n, rows):
            continue
        if connected and not is_connected(mask_to_graph(n, mask)):
            continue
        yield mask


@lru_cache(maxsize=64)
def _dedup_masks(n: int, connected: bool, no_isolated: bool, triangle_free: bool) -> tuple[int, ...]:
    return tuple(
        mask
        for mask in _filtered_masks(n, connected, no_isolated, triangle_free)
        if is_canonical_mask(n, mask)
    )


def _mask_has_triangle(n: int, rows: list[int]) -> bool:
    for u in range(n):
        for j in range(u + 1, n):
            if rows[u] >> j & 1 and rows[u] & rows[j]:
                return True
    return False


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    return canonical_mask(g1) == canonical_mask(g2)


# ---------------------------------------------------------------------------
# Text formats.


def read_edge_list(text: str) -> Graph:
    """First line "n m", then m lines "u v" with 0-based vertex ids."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    n, m = (int(t) for t in lines[0].split())
    edges = []
    for ln in lines[1 : 1 + m]:
        u, v = (int(t) for t in ln.split())
        edges.append((u, v))
    if len(edges) != m:
        raise InvalidSpec("edge list declares %d edges, found %d" % (m, len(edges)))
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph) -> str:
    lines = ["%d %d" % (g.n, len(g.edges))]
    lines.extend("%d %d" % e for e in g.edge_list())
    return "\n".join(lines) + "\n"


def read_graph6(line: str) -> Graph:
    """Decode one graph6 line (standard small-graph corpus format)."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    data = [ord(c) - 63 for c in s]
    if data[0] <= 62:
        n, data = data[0], data[1:]
    else:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        data = data[4:]
    bits = []
    for value in data:
        bits.extend((value >> (5 - i)) & 1 for i in range(6))
    edges = []
    k = 0
    for v in range(n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges)
