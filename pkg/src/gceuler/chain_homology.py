"""Even/odd graph complexes at small rank: boundaries, d^2 = 0, Betti numbers.

The even complex at rank g is graded by edge count (degrees g .. 3g-3), the
odd one by vertex count (degrees 1 .. 2g-2).  Generators are the connected,
admissible, orientable classes; the boundary contracts every non-loop edge,
drops contractions whose class is non-orientable, and carries the sign
described below through the canonical representative.

Sign of one contraction G -> G/e, with e at 1-indexed position i among G's
reference-ordered edges: (-1)^(i+1) times the sign of the permutation taking
the contraction-induced ordering of G/e's edges to the reference ordering of
its canonical representative.  For the odd complex the determinants of the
induced base changes on H_0 and H_1 multiply in; H_0 contributes +1 for
connected generators, H_1 is computed on the fundamental cycle bases.
Loops are never contracted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph_enum import (
    MultiGraph,
    ResourceCapError,
    canonical_form,
    cycle_basis,
    enumerate_multigraphs,
    orientable,
    perm_sign,
    spanning_forest,
)

HOMOLOGY_RANK_CAP = 5


@dataclass
class ChainComplex:
    parity: str
    g_rank: int
    degrees: list[int]
    generators: dict[int, list[MultiGraph]]
    boundaries: dict[int, list[list[int]]] = field(default_factory=dict)
    # boundaries[d]: dim C_{d-1} rows x dim C_d columns

    def dim(self, degree: int) -> int:
        return len(self.generators.get(degree, ()))

    def chi_from_dimensions(self) -> int:
        return sum((-1) ** d * self.dim(d) for d in self.degrees)


def _degree_range(parity: str, g_rank: int) -> list[int]:
    if parity == "even":
        return list(range(g_rank, 3 * g_rank - 2))  # edge counts
    if parity == "odd":
        return list(range(1, 2 * g_rank - 1))  # vertex counts
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def _ve_for_degree(parity: str, g_rank: int, degree: int) -> tuple[int, int]:
    if parity == "even":
        return degree - g_rank + 1, degree
    return degree, g_rank + degree - 1


def contract_edge(g: MultiGraph, pos: int):
    """Contract the non-loop edge at reference position `pos`.

    Returns (canonical contracted graph, phi, orsign) where, for every
    surviving edge position j of g, phi[j] is the edge index in the canonical
    representative and orsign[j] is +-1 recording whether the reference
    orientation (small endpoint -> large) survived relabeling.
    """
    a, b, _ = g.edges[pos]
    if a == b:
        raise ValueError("cannot contract a loop")
    n = g.vertex_count

    def rl(x: int) -> int:
        if x == b:
            return a
        return x if x < b else x - 1

    new_adj = [[0] * (n - 1) for _ in range(n - 1)]
    images: dict[int, tuple[int, int, int]] = {}  # surviving pos -> (x, y, or1)
    for j, (p, q, _) in enumerate(g.edges):
        if j == pos:
            continue
        x, y = rl(p), rl(q)
        or1 = 1
        if x > y:
            x, y = y, x
            or1 = -1
        if x == y:
            or1 = 1  # loop: orientation is immaterial (never reaches an H1 det)
            new_adj[x][x] += 1
        else:
            new_adj[x][y] += 1
            new_adj[y][x] += 1
        images[j] = (x, y, or1)
    canon, order = canonical_form(tuple(tuple(r) for r in new_adj))
    inv = [0] * (n - 1)
    for new_idx, old_idx in enumerate(order):
        inv[old_idx] = new_idx
    target = MultiGraph(canon)
    copies: dict[tuple[int, int], int] = {}
    phi: dict[int, int] = {}
    orsign: dict[int, int] = {}
    for j in sorted(images):
        x, y, or1 = images[j]
        cx, cy = inv[x], inv[y]
        or2 = 1
        if cx > cy:
            cx, cy = cy, cx
            or2 = -1
        c = copies.get((cx, cy), 0)
        copies[(cx, cy)] = c + 1
        phi[j] = target.edge_index((cx, cy, c))
        orsign[j] = or1 * or2
    return target, phi, orsign


class _GeneratorData:
    """Cached per-class data used while assembling boundary coefficients."""

    __slots__ = ("basis", "nontree")

    def __init__(self, g: MultiGraph):
        self.basis = cycle_basis(g)
        tree, _ = spanning_forest(g)
        tree_set = set(tree)
        self.nontree = [j for j in range(g.edge_count) if j not in tree_set]


def _h1_base_change_det(
    src: MultiGraph,
    src_data: _GeneratorData,
    pos: int,
    dst: MultiGraph,
    dst_data: _GeneratorData,
    phi: dict[int, int],
    orsign: dict[int, int],
) -> int:
    """det of the map on H_1 induced by contraction + canonical relabeling.

    Cycle vectors push forward by dropping the contracted coordinate and
    rerouting through phi with orientation signs; the coordinates in dst's
    fundamental basis are read off the non-tree rows (which form an identity
    block) and then verified against the full vectors.
    """
    rank = len(src_data.basis)
    ne = dst.edge_count
    mapped = []
    for vec in src_data.basis:
        out = [0] * ne
        for j, cj in enumerate(vec):
            if cj and j != pos:
                out[phi[j]] += orsign[j] * cj
        mapped.append(out)
    coords = [[mapped[col][j] for col in range(rank)] for j in dst_data.nontree]
    for col in range(rank):
        recon = [0] * ne
        for bcol in range(rank):
            c = coords[bcol][col]
            if c:
                for j, cj in enumerate(dst_data.basis[bcol]):
                    recon[j] += c * cj
        if recon != mapped[col]:
            raise ValueError("pushed-forward cycle left the target cycle space")
    det = _int_det(coords)
    if det not in (1, -1):
        raise ValueError(f"H1 base change determinant {det}, expected +-1")
    return det


def _int_det(mat: list[list[int]]) -> int:
    m = [[Fraction(x) for x in row] for row in mat]
    k = len(m)
    det = Fraction(1)
    for col in range(k):
        pivot = next((r for r in range(col, k) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, k):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    assert det.denominator == 1
    return int(det)


def build_complex(g_rank: int, parity: str, position_sign: int = 1) -> ChainComplex:
    """Assemble generators and boundary matrices for the rank-g complex.

    position_sign flips the (-1)^(i+1) edge-position convention to (-1)^i;
    this changes every boundary map by a global sign only, so ranks, d^2 = 0
    and Betti numbers are unaffected (asserted in the tests).
    """
    if not 2 <= g_rank <= HOMOLOGY_RANK_CAP:
        raise ResourceCapError(
            f"homology capped at rank {HOMOLOGY_RANK_CAP} (got {g_rank})"
        )
    if position_sign not in (1, -1):
        raise ValueError("position_sign must by +1 or -1")
    degrees = _degree_range(parity, g_rank)
    generators: dict[int, list[MultiGraph]] = {}
    index: dict[int, dict[bytes, int]] = {}
    data: dict[bytes, _GeneratorData] = {}
    for d in degrees:
        v, e = _ve_for_degree(parity, g_rank, d)
        gens = [
            gr
            for gr in enumerate_multigraphs(v, e, connected=True, admissible_only=True)
            if orientable(gr, parity)
        ]
        generators[d] = gens
        index[d] = {gr.canonical_bytes: i for i, gr in enumerate(gens)}
        for gr in gens:
            data[gr.canonical_bytes] = _GeneratorData(gr)
    complex_ = ChainComplex(parity, g_rank, degrees, generators)
    for d in degrees:
        rows = complex_.dim(d - 1) if d - 1 in generators else 0
        cols = complex_.dim(d)
        mat = [[0] * cols for _ in range(rows)]
        if rows and cols:
            for col, gen in enumerate(generators[d]):
                gen_data = data[gen.canonical_bytes]
                for pos, (a, b, _) in enumerate(gen.edges):
                    if a == b:
                        continue
                    target, phi, orsign = contract_edge(gen, pos)
                    row = index[d - 1].get(target.canonical_bytes)
                    if row is None:
                        if orientable(target, parity):
                            raise AssertionError(
                                "orientable contraction missing from generators"
                            )
                        continue
                    surviving = [phi[j] for j in sorted(phi)]
                    coeff = position_sign * (-1) ** pos * perm_sign(surviving)
                    if parity == "odd":
                        coeff *= _h1_base_change_det(
                            gen,
                            gen_data,
                            pos,
                            target,
                            data[target.canonical_bytes],
                            phi,
                            orsign,
                        )
                    mat[row][col] += coeff
        complex_.boundaries[d] = mat
    return complex_


def verify_d_squared(complex_: ChainComplex) -> bool:
    """True iff consecutive boundary maps compose to zero over the integers."""
    for d in complex_.degrees:
        if d - 1 not in complex_.boundaries:
            continue
        outer = complex_.boundaries[d - 1]  # C_{d-1} -> C_{d-2}
        inner = complex_.boundaries[d]  # C_d -> C_{d-1}
        if not outer or not inner or not inner[0]:
            continue
        rows, mid, cols = len(outer), len(inner), len(inner[0])
        for i in range(rows):
            oi = outer[i]
            for j in range(cols):
                if sum(oi[k] * inner[k][j] for k in range(mid)) != 0:
                    return False
    return True


def integer_rank(mat: list[list[int]]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    if not mat or not mat[0]:
        return 0
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][c]), None)
        if pivot is None:
            continue
        if pivot != rank:
            m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][c]
        for r in range(rank + 1, rows):
            mr, mp = m[r], m[rank]
            factor = mr[c]
            # Bareiss: transform every remaining row, the division is exact
            for j in range(c + 1, cols):
                mr[j] = (pv * mr[j] - factor * mp[j]) // prev
            mr[c] = 0
        prev = pv
        rank += 1
        if rank == rows:
            break
    return rank


def rank_mod_p(mat: list[list[int]], p: int) -> int:
    """Rank over GF(p); advisory cross-check (never exceeds the exact rank)."""
    if not mat or not mat[0]:
        return 0
    m = [[x % p for x in row] for row in mat]
    rows, cols = len(m), len(m[0])
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def betti_numbers(complex_: ChainComplex, modular_check: bool = True) -> dict[int, int]:
    """b_d = dim C_d - rank d_d - rank d_{d+1}, with exact integer ranks."""
    ranks: dict[int, int] = {}
    for d in complex_.degrees:
        mat = complex_.boundaries.get(d, [])
        r = integer_rank(mat)
        if modular_check:
            for p in (2**31 - 1, 2**61 - 1):
                if rank_mod_p(mat, p) > r:
                    raise AssertionError("modular rank exceeds exact rank")
        ranks[d] = r
    out: dict[int, int] = {}
    for d in complex_.degrees:
        b = complex_.dim(d) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if b < 0:
            raise AssertionError(f"negative Betti number at degree {d}")
        out[d] = b
    return out


def chi_from_betti(complex_: ChainComplex) -> int:
    betti = betti_numbers(complex_)
    return sum((-1) ** d * b for d, b in betti.items())


def homology_support_ok(parity: str, g_rank: int, betti: dict[int, int]) -> bool:
    """Even support within [2g, 3g-3], odd within [1, 2g-2]."""
    if parity == "even":
        lo, hi = 2 * g_rank, 3 * g_rank - 3
    else:
        lo, hi = 1, 2 * g_rank - 2
    return all(b == 0 for d, b in betti.items() if d < lo or d > hi)


def dump_boundaries(complex_: ChainComplex) -> str:
    """Coordinate-list text dump: one `row col value` line per nonzero entry."""
    lines = []
    for d in complex_.degrees:
        mat = complex_.boundaries.get(d, [])
        lines.append(f"# boundary out of degree {d}: {len(mat)} x {complex_.dim(d)}")
        for i, row in enumerate(mat):
            for j, val in enumerate(row):
                if val:
                    lines.append(f"{i} {j} {val}")
    return "\n".join(lines) + "\n"
