"""Exhaustive multigraph enumeration, automorphisms, and orientability oracles.

Graphs are stored as symmetric adjacency matrices: A[i][i] counts loops at
vertex i (each loop adds 2 to the degree), A[i][j] the multiplicity of edges
between i and j.  Isomorphism classes are identified by a canonical form:
the lexicographically minimal lower-triangle encoding over all vertex
permutations that respect the (degree, loops) invariant classes, found by
backtracking with prefix pruning.

The half-edge view (pairing involution + incidence) is derived from the
reference edge order: edge j owns half-edges 2j (at the smaller endpoint)
and 2j+1.

Everything here is desk-scale by design: the enumeration caps keep the full
oracle suite in the minutes range and anything beyond raises
ResourceCapError with guidance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

# practical caps: the oracles are cross-checks, not production enumeration
CONNECTED_RANK_CAP = 5
DISCONNECTED_DEGREE_CAP = 4
PARTITION_EDGE_CAP = 6  # 2s <= 12


class ResourceCapError(Exception):
    """Requested range exceeds the desk-scale oracle caps."""


CanonicalForm = bytes
"""Byte encoding uniquely identifying an isomorphism class."""


def perm_sign(p) -> int:
    """Sign of a permutation given as a sequence p[i] = image of i."""
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# -- canonical labeling -------------------------------------------------

def _vertex_invariants(adj) -> list[tuple[int, int]]:
    n = len(adj)
    out = []
    for i in range(n):
        deg = 2 * adj[i][i] + sum(adj[i][j] for j in range(n) if j != i)
        out.append((-deg, -adj[i][i]))  # ascending sort = degree desc, loops desc
    return out


def canonical_form(adj) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Canonical adjacency matrix and one permutation realizing it.

    The returned perm maps new index -> original vertex.  The minimization
    runs over permutations that sort the (degree, loops) invariants, which
    is enough: isomorphisms preserve those invariants.  At each position
    only candidates attaining the lexicographically minimal row can lead to
    the minimal encoding, so the search branches only on ties (i.e. on
    symmetry), never on the full class.
    """
    n = len(adj)
    if n == 0:
        return (), ()
    inv = _vertex_invariants(adj)
    slots = sorted(inv)
    by_class: dict[tuple[int, int], list[int]] = {}
    for v, key in enumerate(inv):
        by_class.setdefault(key, []).append(v)

    best_rows: list = [None] * n
    best_perm: list = [None]
    perm: list[int] = []
    used = [False] * n

    def dfs():
        p = len(perm)
        if p == n:
            best_perm[0] = tuple(perm)
            return
        rmin = None
        argmins = []
        for w in by_class[slots[p]]:
            if used[w]:
                continue
            aw = adj[w]
            row = tuple(aw[q] for q in perm) + (aw[w],)
            if rmin is None or row < rmin:
                rmin = row
                argmins = [w]
            elif row == rmin:
                argmins.append(w)
        if rmin is None:
            return
        b = best_rows[p]
        if b is not None and rmin > b:
            return
        if b is None or rmin < b:
            best_rows[p] = rmin
            for q in range(p + 1, n):
                best_rows[q] = None
        for w in argmins:
            used[w] = True
            perm.append(w)
            dfs()
            perm.pop()
            used[w] = False

    dfs()
    order = best_perm[0]
    canon = tuple(
        tuple(adj[order[i]][order[j]] for j in range(n)) for i in range(n)
    )
    return canon, order


@lru_cache(maxsize=None)
def vertex_automorphisms(adj) -> tuple[tuple[int, ...], ...]:
    """All vertex permutations fixing the adjacency matrix (incl. identity)."""
    n = len(adj)
    if n == 0:
        return ((),)
    inv = _vertex_invariants(adj)
    by_class: dict[tuple[int, int], list[int]] = {}
    for v, key in enumerate(inv):
        by_class.setdefault(key, []).append(v)
    out: list[tuple[int, ...]] = []
    perm: list[int] = []
    used = [False] * n

    def dfs():
        p = len(perm)
        if p == n:
            out.append(tuple(perm))
            return
        for w in by_class.get(inv[p], ()):
            if used[w]:
                continue
            if adj[w][w] != adj[p][p]:
                continue
            if any(adj[w][perm[q]] != adj[p][q] for q in range(p)):
                continue
            used[w] = True
            perm.append(w)
            dfs()
            perm.pop()
            used[w] = False

    dfs()
    return tuple(out)


# -- the multigraph object ----------------------------------------------

def _encode(canon) -> bytes:
    rows = bytearray([len(canon)])
    for i in range(len(canon)):
        rows.extend(canon[i][j] for j in range(i + 1))
    return bytes(rows)


class MultiGraph:
    """Half-edge multigraph backed by an adjacency matrix (loops on the diagonal)."""

    __slots__ = ("adj", "_edges", "_edge_index", "_canonical_bytes")

    def __init__(self, adj):
        self.adj = tuple(tuple(row) for row in adj)
        self._edges = None
        self._edge_index = None
        self._canonical_bytes = None

    @property
    def vertex_count(self) -> int:
        return len(self.adj)

    @property
    def edges(self) -> tuple[tuple[int, int, int], ...]:
        """Reference-ordered edge list: (a, b, copy) with a <= b, lexicographic."""
        if self._edges is None:
            es = []
            n = len(self.adj)
            for a in range(n):
                for c in range(self.adj[a][a]):
                    es.append((a, a, c))
                for b in range(a + 1, n):
                    for c in range(self.adj[a][b]):
                        es.append((a, b, c))
            es.sort()
            self._edges = tuple(es)
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_index(self, edge) -> int:
        if self._edge_index is None:
            self._edge_index = {e: j for j, e in enumerate(self.edges)}
        return self._edge_index[edge]

    # half-edge view: edge j owns half-edges 2j (at a) and 2j+1 (at b)
    @property
    def half_edges(self) -> range:
        return range(2 * self.edge_count)

    def pairing(self, h: int) -> int:
        return h ^ 1

    def incidence(self, h: int) -> int:
        a, b, _ = self.edges[h // 2]
        return a if h % 2 == 0 else b

    def degree(self, i: int) -> int:
        return 2 * self.adj[i][i] + sum(
            self.adj[i][j] for j in range(len(self.adj)) if j != i
        )

    def is_admissible(self) -> bool:
        return all(self.degree(i) >= 3 for i in range(self.vertex_count))

    def component_ids(self) -> list[int]:
        n = self.vertex_count
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in range(n):
            for b in range(a + 1, n):
                if self.adj[a][b]:
                    parent[find(a)] = find(b)
        roots: dict[int, int] = {}
        return [roots.setdefault(find(v), len(roots)) for v in range(n)]

    def is_connected(self) -> bool:
        n = self.vertex_count
        return n <= 1 or max(self.component_ids()) == 0

    def rank(self) -> int:
        """First Betti number, e - v + #components."""
        comps = 1 + (max(self.component_ids()) if self.vertex_count else -1)
        return self.edge_count - self.vertex_count + comps

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count

    def canonical(self) -> "MultiGraph":
        canon, _ = canonical_form(self.adj)
        return MultiGraph(canon)

    @property
    def canonical_bytes(self) -> CanonicalForm:
        if self._canonical_bytes is None:
            canon, _ = canonical_form(self.adj)
            self._canonical_bytes = _encode(canon)
        return self._canonical_bytes

    def dump_line(self) -> str:
        pairs = ",".join(f"({a},{b})" for a, b, _ in self.edges)
        return f"v={self.vertex_count} edges=[{pairs}]"

    def __eq__(self, other):
        return isinstance(other, MultiGraph) and self.adj == other.adj

    def __hash__(self):
        return hash(self.adj)

    def __repr__(self):
        return f"MultiGraph({self.dump_line()})"


# -- enumeration ---------------------------------------------------------

def _degree_sequences(v: int, total: int, min_deg: int):
    """Non-increasing degree sequences of length v summing to total."""

    def rec(prefix, remaining, cap):
        k = len(prefix)
        if k == v:
            if remaining == 0:
                yield tuple(prefix)
            return
        slots_left = v - k - 1
        for d in range(min(cap, remaining - min_deg * slots_left), min_deg - 1, -1):
            yield from rec(prefix + [d], remaining - d, d)

    yield from rec([], total, total)


def _matrices_for_degrees(degs):
    """Symmetric adjacency matrices with exactly the given degrees."""
    n = len(degs)
    adj = [[0] * n for _ in range(n)]
    rem = list(degs)

    def with_loops(i):
        if i == n:
            yield tuple(tuple(row) for row in adj)
            return
        for loops in range(rem[i] // 2, -1, -1):
            adj[i][i] = loops
            saved = rem[i]
            rem[i] = 0
            yield from place_rest(i, saved - 2 * loops)
            rem[i] = saved
            adj[i][i] = 0

    def place_rest(i, need):
        if sum(rem[i + 1:]) < need:
            return
        yield from _distribute(i, i + 1, need)

    def _distribute(i, j, need):
        if need == 0:
            yield from with_loops(i + 1)
            return
        if j == n:
            return
        if sum(rem[j:]) < need:
            return
        for m in range(min(need, rem[j]), -1, -1):
            adj[i][j] = adj[j][i] = m
            rem[j] -= m
            yield from _distribute(i, j + 1, need - m)
            rem[j] += m
            adj[i][j] = adj[j][i] = 0

    yield from with_loops(0)


@lru_cache(maxsize=None)
def enumerate_multigraphs(
    v: int, e: int, connected: bool = True, admissible_only: bool = True
) -> tuple[MultiGraph, ...]:
    """One canonical representative per isomorphism class with v vertices, e edges."""
    if v < 0 or e < 0:
        raise ValueError("v and e must be non-negative")
    if v == 0:
        if e == 0:
            return (MultiGraph(()),)
        return ()
    min_deg = 3 if admissible_only else 0
    seen: dict[bytes, tuple] = {}
    for degs in _degree_sequences(v, 2 * e, min_deg):
        if min_deg == 0 and degs and degs[-1] == 0 and connected and v > 1:
            continue  # isolated vertex cannot occur in a connected graph
        for adj in _matrices_for_degrees(degs):
            g = MultiGraph(adj)
            if connected and not g.is_connected():
                continue
            canon, _ = canonical_form(adj)
            key = _encode(canon)
            if key not in seen:
                seen[key] = canon
    return tuple(MultiGraph(seen[k]) for k in sorted(seen))


# -- automorphisms on half-edges -----------------------------------------

def half_edge_lift(g: MultiGraph, vperm) -> tuple[int, ...]:
    """Lift a vertex automorphism to half-edges, matching parallel copies in order."""
    out = [0] * (2 * g.edge_count)
    for j, (a, b, c) in enumerate(g.edges):
        x, y = vperm[a], vperm[b]
        if x > y:
            x, y = y, x
        j2 = g.edge_index((x, y, c))
        if a == b:
            out[2 * j] = 2 * j2
            out[2 * j + 1] = 2 * j2 + 1
        else:
            if vperm[a] == x:
                out[2 * j] = 2 * j2
                out[2 * j + 1] = 2 * j2 + 1
            else:
                out[2 * j] = 2 * j2 + 1
                out[2 * j + 1] = 2 * j2
    return tuple(out)


@dataclass
class AutomorphismGroup:
    """Half-edge automorphisms: generators, with the full group on demand."""

    graph: MultiGraph
    generators: list[tuple[int, ...]]

    def elements(self, cap: int = 500_000) -> list[tuple[int, ...]]:
        identity = tuple(range(2 * self.graph.edge_count))
        group = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for a in frontier:
                for gen in self.generators:
                    comp = tuple(gen[a[i]] for i in range(len(a)))
                    if comp not in group:
                        group.add(comp)
                        nxt.append(comp)
                        if len(group) > cap:
                            raise ResourceCapError(
                                f"automorphism group exceeds cap {cap}"
                            )
            frontier = nxt
        return sorted(group)

    def order(self) -> int:
        return len(self.elements())


def automorphism_group(g: MultiGraph) -> AutomorphismGroup:
    """Generators: lifted vertex automorphisms, parallel-copy swaps, loop flips."""
    gens: list[tuple[int, ...]] = []
    n = g.vertex_count
    identity_v = tuple(range(n))
    for vperm in vertex_automorphisms(g.adj):
        if vperm != identity_v:
            gens.append(half_edge_lift(g, vperm))
    nh = 2 * g.edge_count
    for a in range(n):
        for b in range(a, n):
            m = g.adj[a][b] if a != b else g.adj[a][a]
            if a == b:
                for c in range(m):
                    j = g.edge_index((a, a, c))
                    flip = list(range(nh))
                    flip[2 * j], flip[2 * j + 1] = 2 * j + 1, 2 * j
                    gens.append(tuple(flip))
            for c in range(m - 1):
                j1 = g.edge_index((a, b, c))
                j2 = g.edge_index((a, b, c + 1))
                swap = list(range(nh))
                swap[2 * j1], swap[2 * j2] = 2 * j2, 2 * j1
                swap[2 * j1 + 1], swap[2 * j2 + 1] = 2 * j2 + 1, 2 * j1 + 1
                gens.append(tuple(swap))
    return AutomorphismGroup(g, gens)


# -- orientability -------------------------------------------------------

def _edge_perm_of_vertex_aut(g: MultiGraph, vperm) -> list[int]:
    out = []
    for a, b, c in g.edges:
        x, y = vperm[a], vperm[b]
        if x > y:
            x, y = y, x
        out.append(g.edge_index((x, y, c)))
    return out


def orientable(g: MultiGraph, parity: str) -> bool:
    """Even: no automorphism induces an odd edge permutation.

    Odd: no automorphism alpha with sign(alpha) * sign(alpha_V) = -1, the
    computational form of the half-edge/homology sign identity.  Structural
    shortcuts: a parallel pair or a double loop kills even orientability
    (their swap is an edge transposition); any loop kills odd orientability
    (its flip has half-edge sign -1 with trivial vertex action).  The
    remaining obstructions live on lifted vertex automorphisms, and the sign
    maps are group homomorphisms, so checking those suffices.
    """
    adj = g.adj
    n = g.vertex_count
    if parity == "even":
        for i in range(n):
            if adj[i][i] >= 2:
                return False
            for j in range(i + 1, n):
                if adj[i][j] >= 2:
                    return False
        for vperm in vertex_automorphisms(adj):
            if perm_sign(_edge_perm_of_vertex_aut(g, vperm)) < 0:
                return False
        return True
    if parity == "odd":
        if any(adj[i][i] for i in range(n)):
            return False
        for vperm in vertex_automorphisms(adj):
            if perm_sign(half_edge_lift(g, vperm)) * perm_sign(vperm) < 0:
                return False
        return True
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


# -- homology-flavoured data for sign cross-checks ------------------------

def spanning_forest(g: MultiGraph) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Tree edge indices (reference order) and per-vertex (parent, edge, dir).

    dir is +1 when the tree edge is traversed along its reference
    orientation (small endpoint -> large) on the path from the vertex to its
    parent; roots carry (-1, -1, 0).
    """
    n = g.vertex_count
    parent: list[tuple[int, int, int]] = [(-1, -1, 0)] * n
    comp = list(range(n))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    tree = []
    adjacency: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(n)}
    for j, (a, b, _) in enumerate(g.edges):
        if a == b:
            continue
        ra, rb = find(a), find(b)
        if ra != rb:
            comp[ra] = rb
            tree.append(j)
            adjacency[a].append((b, j, 1))
            adjacency[b].append((a, j, -1))
    # orient the forest by BFS from the smallest vertex of each component
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        while stack:
            u = stack.pop()
            for (w, j, d) in adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    # path w -> u uses edge j; d was recorded for a -> b
                    parent[w] = (u, j, -d)
                    stack.append(w)
    return tree, parent


def cycle_basis(g: MultiGraph) -> list[list[int]]:
    """Fundamental cycles (integer edge vectors) of the reference spanning forest.

    One column per non-tree edge, in reference order; a loop's cycle is the
    loop itself.  Non-tree rows of the resulting matrix form an identity.
    """
    tree, parent = spanning_forest(g)
    tree_set = set(tree)
    ncols = []
    for j, (a, b, _) in enumerate(g.edges):
        if j in tree_set:
            continue
        vec = [0] * g.edge_count
        vec[j] = 1
        if a != b:
            # walk b up to the root, and a up to the root, cancel common part
            def path_to_root(v):
                out = []
                while parent[v][0] != -1:
                    u, je, d = parent[v]
                    out.append((je, d))
                    v = u
                return out
            for je, d in path_to_root(b):
                vec[je] += d
            for je, d in path_to_root(a):
                vec[je] -= d
        ncols.append(vec)
    return ncols


def orientation_character(g: MultiGraph, half_perm) -> dict[str, int]:
    """All five signs of one half-edge automorphism.

    Returns sign_alpha (half-edge permutation), sign_v, sign_e (induced
    vertex/edge permutations), det_h0 (component permutation) and det_h1
    (determinant of the induced map on the fundamental cycle basis).
    """
    n = g.vertex_count
    ne = g.edge_count
    vmap = [-1] * n
    emap = [-1] * ne
    orient = [0] * ne
    for j in range(ne):
        j2, r = divmod(half_perm[2 * j], 2)
        if half_perm[2 * j + 1] // 2 != j2:
            raise ValueError("permutation does not preserve the edge pairing")
        emap[j] = j2
        orient[j] = 1 if r == 0 else -1
    for h in range(2 * ne):
        v = g.incidence(h)
        w = g.incidence(half_perm[h])
        if vmap[v] == -1:
            vmap[v] = w
        elif vmap[v] != w:
            raise ValueError("permutation does not preserve vertex blocks")
    comp = g.component_ids()
    ncomp = max(comp) + 1 if n else 0
    cmap = [-1] * ncomp
    for v in range(n):
        cmap[comp[v]] = comp[vmap[v]]
    basis = cycle_basis(g)
    rank = len(basis)
    mapped = []
    for vec in basis:
        out = [0] * ne
        for j, cj in enumerate(vec):
            if cj:
                out[emap[j]] += orient[j] * cj
        mapped.append(out)
    # express mapped vectors in the fundamental basis: non-tree rows are identity
    tree, _ = spanning_forest(g)
    nontree = [j for j in range(ne) if j not in set(tree)]
    mat = [[Fraction(mapped[col][j]) for col in range(rank)] for j in nontree]
    det = _det_fraction(mat)
    # consistency: the coordinates must reproduce the mapped vectors exactly
    for col in range(rank):
        recon = [0] * ne
        for bcol in range(rank):
            coeff = mat[bcol][col]
            if coeff:
                for j, cj in enumerate(basis[bcol]):
                    recon[j] += coeff * cj
        if recon != [Fraction(x) for x in mapped[col]]:
            raise ValueError("mapped cycle left the cycle space")
    if det.denominator != 1 or abs(det) != 1:
        raise ValueError(f"cycle-basis change has determinant {det}, expected +-1")
    return {
        "sign_alpha": perm_sign(half_perm),
        "sign_v": perm_sign(vmap),
        "sign_e": perm_sign(emap),
        "det_h0": perm_sign(cmap) if ncomp else 1,
        "det_h1": int(det),
    }


def _det_fraction(mat) -> Fraction:
    m = [row[:] for row in mat]
    k = len(m)
    det = Fraction(1)
    for col in range(k):
        pivot = next((r for r in range(col, k) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, k):
            if m[r][col]:
                factor = m[r][col] * inv
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


# -- chi oracles ----------------------------------------------------------

def connected_orientable_classes(g_rank: int, parity: str) -> list[MultiGraph]:
    """All connected admissible orientable classes of the given rank."""
    out = []
    for v in range(1, 2 * g_rank - 1):
        e = g_rank + v - 1
        for graph in enumerate_multigraphs(v, e, connected=True, admissible_only=True):
            if orientable(graph, parity):
                out.append(graph)
    return out


def chi_connected_oracle(g_rank: int, parity: str) -> int:
    """Signed count of connected orientable classes at fixed rank (brute force)."""
    if not 2 <= g_rank <= CONNECTED_RANK_CAP:
        raise ResourceCapError(
            f"connected oracle capped at rank {CONNECTED_RANK_CAP} (got {g_rank}); "
            "use the generating-function table beyond that"
        )
    total = 0
    for graph in connected_orientable_classes(g_rank, parity):
        deg = graph.edge_count if parity == "even" else graph.vertex_count
        total += (-1) ** deg
    return total


def chi_disconnected_oracle(n: int, parity: str) -> int:
    """Signed count over all (possibly disconnected) orientable graphs with chi = -n.

    Components are connected orientable classes; a class whose degree
    (edges for even, vertices for odd) is odd may appear at most once, an
    even-degree class any number of times.  Assembled as a truncated product
    of per-class factors in the bookkeeping variable t.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > DISCONNECTED_DEGREE_CAP:
        raise ResourceCapError(
            f"disconnected oracle capped at n = {DISCONNECTED_DEGREE_CAP} (got {n}); "
            "use the generating-function table beyond that"
        )
    poly = [0] * (n + 1)
    poly[0] = 1
    for g_rank in range(2, n + 2):
        j = g_rank - 1  # each component contributes -j to chi
        for graph in connected_orientable_classes(g_rank, parity):
            deg = graph.edge_count if parity == "even" else graph.vertex_count
            new = poly[:]
            if deg % 2 == 1:
                for i in range(n, j - 1, -1):
                    new[i] -= poly[i - j]
            else:
                # geometric factor: new = poly / (1 - t^j), computed in place
                for i in range(j, n + 1):
                    new[i] += new[i - j]
            poly = new
    return poly[n]


def chi_oracle(parity: str, *, g: int | None = None, n: int | None = None) -> int:
    """Dispatch to the connected-rank or disconnected-degree oracle."""
    if (g is None) == (n is None):
        raise ValueError("pass exactly one of g= (connected) or n= (disconnected)")
    if g is not None:
        return chi_connected_oracle(g, parity)
    return chi_disconnected_oracle(n, parity)


# -- cycle-index counting (set-partition generating functions) ------------

def _partitions(n: int):
    """Partitions of n as non-increasing tuples."""
    if n == 0:
        yield ()
        return

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for part in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - part, part):
                yield (part,) + rest

    yield from rec(n, n)


def _z_lambda(counts: dict[int, int]) -> int:
    z = 1
    for k, c in counts.items():
        z *= k**c
        for i in range(1, c + 1):
            z *= i
    return z


def _xkey(counts: dict[int, int], width: int) -> tuple[int, ...]:
    key = [0] * width
    for k, c in counts.items():
        key[k - 1] = c
    return tuple(key)


def _xweight(key) -> int:
    return sum((k + 1) * c for k, c in enumerate(key))


def _poly_mul(p, q, width, max_weight):
    out: dict = {}
    for (r1, x1), c1 in p.items():
        w1 = _xweight(x1)
        for (r2, x2), c2 in q.items():
            if w1 + _xweight(x2) > max_weight:
                continue
            key = (r1 + r2, tuple(a + b for a, b in zip(x1, x2)))
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return out


def _poly_exp(p, width, max_weight):
    """exp of a polynomial whose terms all have positive x-weight."""
    one = (0, (0,) * width)
    acc = {one: Fraction(1)}
    term = {one: Fraction(1)}
    i = 1
    while True:
        term = _poly_mul(term, p, width, max_weight)
        if not term:
            break
        for key, c in term.items():
            acc[key] = acc.get(key, Fraction(0)) + c / _factorial(i)
        i += 1
    return acc


@lru_cache(maxsize=None)
def _factorial(i: int) -> int:
    out = 1
    for j in range(2, i + 1):
        out *= j
    return out


@lru_cache(maxsize=None)
def _edge_side_poly(eta: int, width: int):
    """exp(eta * sum_k (x_k^2 + x_{2k}) / 2k) truncated to x-weight <= width."""
    arg: dict = {}
    zero = (0,) * width

    def bump(xs, coeff):
        key = (0, xs)
        arg[key] = arg.get(key, Fraction(0)) + coeff

    for k in range(1, width // 2 + 1):
        sq = list(zero)
        sq[k - 1] = 2
        bump(tuple(sq), Fraction(eta, 2 * k))
        dbl = list(zero)
        dbl[2 * k - 1] = 1
        bump(tuple(dbl), Fraction(eta, 2 * k))
    return _poly_exp(arg, width, width)


@lru_cache(maxsize=None)
def _vertex_side_poly(phi: int, width: int):
    """exp(phi * sum_j (lambda^j / j) V(x_j, x_2j, ...)) to x-weight <= width.

    V(y_1, y_2, ...) = exp(sum_l y_l / l) - 1 - y_1 - y_1^2/2 - y_2/2 keeps
    only blocks of size >= 3.  The lambda exponent counts vertex blocks.
    """
    zero = (0,) * width
    arg: dict = {}
    for j in range(1, width // 3 + 1):
        inner: dict = {}
        for ell in range(1, width // j + 1):
            xs = list(zero)
            xs[ell * j - 1] = 1
            inner[(0, tuple(xs))] = Fraction(1, ell)
        vj = _poly_exp(inner, width, width)
        vj[(0, zero)] = vj.get((0, zero), Fraction(0)) - 1
        y1 = list(zero)
        y1[j - 1] = 1
        vj[(0, tuple(y1))] = vj.get((0, tuple(y1)), Fraction(0)) - 1
        y1sq = list(zero)
        y1sq[j - 1] = 2
        vj[(0, tuple(y1sq))] = vj.get((0, tuple(y1sq)), Fraction(0)) - Fraction(1, 2)
        y2 = list(zero)
        if 2 * j <= width:
            y2[2 * j - 1] = 1
            vj[(0, tuple(y2))] = vj.get((0, tuple(y2)), Fraction(0)) - Fraction(1, 2)
        scaled = {
            (j, xs): c * Fraction(phi, j)
            for (_, xs), c in vj.items()
            if c != 0 and _xweight(xs) <= width
        }
        for key, c in scaled.items():
            arg[key] = arg.get(key, Fraction(0)) + c
    return _poly_exp(arg, width, width)


def partition_count_oracle(s: int, r: int, parity: str) -> int:
    """Number of orientable isomorphism classes with s edges and r vertices.

    Evaluates the signed set-partition sums per conjugacy class of S_2s:
    the edge- and vertex-side generating functions are combined over
    partitions lambda of 2s weighted by z_lambda, with eta/phi set to -1 on
    the side carrying the orientability sign and the global sign converting
    cycle counts to permutation signs.
    """
    if s < 0 or r < 0:
        raise ValueError("s and r must be non-negative")
    if s > PARTITION_EDGE_CAP:
        raise ResourceCapError(
            f"cycle-index oracle capped at s = {PARTITION_EDGE_CAP} edges (got {s})"
        )
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    width = 2 * s
    if s == 0:
        return 1 if r == 0 else 0
    if parity == "even":
        epoly = _edge_side_poly(-1, width)
        vpoly = _vertex_side_poly(1, width)
    else:
        epoly = _edge_side_poly(1, width)
        vpoly = _vertex_side_poly(-1, width)
    total = Fraction(0)
    for lam in _partitions(width):
        counts: dict[int, int] = {}
        for part in lam:
            counts[part] = counts.get(part, 0) + 1
        xs = _xkey(counts, width)
        ecoeff = epoly.get((0, xs), Fraction(0))
        vcoeff = vpoly.get((r, xs), Fraction(0))
        if not ecoeff or not vcoeff:
            continue
        contrib = _z_lambda(counts) * ecoeff * vcoeff
        if parity == "odd":
            c_lambda = sum(counts.values())
            if c_lambda % 2 == 1:
                contrib = -contrib
        total += contrib
    if parity == "even":
        total *= (-1) ** s
    else:
        total *= (-1) ** r
    if total.denominator != 1 or total < 0:
        raise ValueError(f"cycle-index count for (s={s}, r={r}) is not a count: {total}")
    return int(total)
