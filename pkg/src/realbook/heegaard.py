"""Real Heegaard data derived from a real open book.

The two invariant pages glue to the splitting surface; the involution on
it is carried as block data (the page actions of c and f o c plus the
binding identifications).  The real part of the ambient manifold is the
union of the two fixed sets, assembled into circles across the shared
binding fixed points; a component separates the splitting surface
exactly when its mod-2 class vanishes, which the declared crossing data
detects against an explicit basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intalg import IntMatrix
from .mcg import TwistWord, word_matrix
from .openbook import OpenBook, Reality, check_reality
from .surface import Involution, vec_dot


class RealPartUnavailable(RuntimeError):
    """The opposite page's fixed set is not tracked for this book."""


@dataclass(frozen=True)
class HeegaardData:
    genus: int
    gluing_involution: Involution          # c on the S- page
    gluing_word: TwistWord                 # f, so the gluing map is f o c
    minus_matrix: IntMatrix                # c on H1 of the page
    plus_matrix: IntMatrix                 # f o c on H1 of the page
    binding_fixed_points: dict


@dataclass(frozen=True)
class RealComponent:
    pieces: int
    h1_class: tuple[int, ...]              # mod-2 class in the closed-surface basis

    @property
    def separating(self) -> bool:
        return all(v == 0 for v in self.h1_class)


@dataclass(frozen=True)
class RealPartData:
    components: tuple[RealComponent, ...]

    @property
    def count(self) -> int:
        return len(self.components)

    def separating_flags(self) -> tuple[bool, ...]:
        return tuple(c.separating for c in self.components)


def heegaard_data(ob: OpenBook) -> HeegaardData:
    """The derived real splitting: genus and gluing block data."""
    status = check_reality(ob)
    if status.kind is Reality.NOT_REAL:
        raise ValueError("book is not real; no real Heegaard decomposition")
    page = ob.page
    genus = 2 * page.genus + page.boundary_count - 1
    c = ob.real_structure.matrix
    f = word_matrix(page, ob.monodromy)
    return HeegaardData(
        genus=genus,
        gluing_involution=ob.real_structure,
        gluing_word=ob.monodromy,
        minus_matrix=c,
        plus_matrix=f @ c,
        binding_fixed_points=dict(ob.real_structure.fixed_points),
    )


def validate_heegaard(hd: HeegaardData, ob: OpenBook) -> list[tuple[str, bool]]:
    """Closed-surface checks on the block data."""
    page = ob.page
    j = page.form
    out = []
    ident = IntMatrix.identity(page.h1_rank)
    out.append(("minus_involution", hd.minus_matrix @ hd.minus_matrix == ident))
    out.append(("plus_involution", hd.plus_matrix @ hd.plus_matrix == ident))
    if page.h1_rank:
        out.append(("minus_antisymplectic",
                    hd.minus_matrix.transpose() @ j @ hd.minus_matrix == -j))
        out.append(("plus_antisymplectic",
                    hd.plus_matrix.transpose() @ j @ hd.plus_matrix == -j))
    out.append(("genus", hd.genus == 2 * page.genus + page.boundary_count - 1))
    out.append(("minus_lefschetz",
                ob.real_structure.fixed_set.arc_count == 1 - hd.minus_matrix.trace()))
    if ob.fix_plus is not None:
        out.append(("plus_lefschetz",
                    ob.fix_plus.arc_count == 1 - hd.plus_matrix.trace()))
    return out


# ---------------------------------------------------------------------------
# real-part assembly


def _interior_basis_indices(ob: OpenBook) -> list[int]:
    """Basis indices independent of the boundary-class span mod 2.

    A binding circle is isotopic to its boundary-parallel pushoff on
    either page, so page classes in the boundary span are already
    represented by the binding block; keeping them twice would make the
    closed-surface basis redundant.
    """
    page = ob.page
    rank = page.h1_rank
    span: list[list[int]] = []

    def reduce(vec: list[int]) -> list[int]:
        for row in span:
            lead = next(i for i, x in enumerate(row) if x)
            if vec[lead]:
                vec = [a ^ b for a, b in zip(vec, row)]
        return vec

    for circle in page.circles:
        v = reduce([x % 2 for x in circle.pclass])
        if any(v):
            span.append(v)
    chosen = []
    for idx in range(rank):
        v = reduce([1 if i == idx else 0 for i in range(rank)])
        if any(v):
            span.append(v)
            chosen.append(idx)
    return chosen


def _closed_surface_basis(ob: OpenBook):
    """Basis of H1 of the doubled page, mod 2, with its pairing matrix.

    Blocks: interior page classes seen on each invariant page, the
    binding circles (all but the largest id), and the doubled reference
    arcs.  Binding circles pair with nothing in the page interior, so
    their rows carry only the reference-arc incidences.
    """
    page = ob.page
    interior = _interior_basis_indices(ob)
    n_int = len(interior)
    circles = sorted(c.cid for c in page.circles)
    d_ids = circles[:-1]
    m_ids = sorted(page.ref_arcs)
    bp = page.basepoint
    dim = 2 * n_int + len(d_ids) + len(m_ids)

    def d_pos(cid):
        return 2 * n_int + d_ids.index(cid)

    def m_pos(cid):
        return 2 * n_int + len(d_ids) + m_ids.index(cid)

    q = [[0] * dim for _ in range(dim)]
    jm = page.form
    for side in (0, 1):
        off = side * n_int
        for a, ia in enumerate(interior):
            for b, ib in enumerate(interior):
                q[off + a][off + b] = jm[ia, ib] % 2
    for l in m_ids:
        row = page.ref_arcs[l].pairings
        for a, ia in enumerate(interior):
            v = row[ia] % 2
            q[a][m_pos(l)] ^= v
            q[m_pos(l)][a] ^= v
            q[n_int + a][m_pos(l)] ^= v
            q[m_pos(l)][n_int + a] ^= v
    for d in d_ids:
        for l in m_ids:
            v = (1 if d == l else 0) ^ (1 if d == bp else 0)
            q[d_pos(d)][m_pos(l)] ^= v
            q[m_pos(l)][d_pos(d)] ^= v
    return dim, interior, d_pos, m_pos, q


def _gf2_solve(q: list[list[int]], rhs: list[int]) -> list[int] | None:
    n = len(q)
    a = [row[:] + [rhs[i]] for i, row in enumerate(q)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, n) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(n):
            if i != r and a[i][c]:
                a[i] = [x ^ y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, n):
        if a[i][n]:
            return None
    x = [0] * n
    for i, c in enumerate(piv_cols):
        x[c] = a[i][n]
    return x


def real_part(ob: OpenBook) -> RealPartData:
    """Assemble the fixed sets of the two invariant pages into circles.

    Arcs of the two pages share their boundary fixed points, so the
    union is a disjoint set of circles; fixed circles of either page
    pass through unchanged.  Per component the mod-2 class on the
    splitting surface is recovered from its declared crossing data.
    """
    status = check_reality(ob)
    if status.kind is Reality.NOT_REAL:
        raise ValueError("book is not real; no real part data")
    if ob.fix_plus is None:
        raise RealPartUnavailable(
            "opposite-page fixed set is not tracked for this book")
    page = ob.page
    minus = ob.real_structure.fixed_set
    plus = ob.fix_plus

    dim, interior, d_pos, m_pos, q = _closed_surface_basis(ob)
    n_int = len(interior)
    m_ids = sorted(page.ref_arcs)
    d_ids = sorted(c.cid for c in page.circles)[:-1]

    # graph on the binding fixed points: one arc of each page per point
    edges: list[tuple[tuple[int, int], tuple[int, int], int, object]] = []
    for side, fset in ((0, minus), (1, plus)):
        for arc in fset.arcs:
            edges.append((arc.ends[0], arc.ends[1], side, arc))
    adj: dict[tuple[int, int], list[int]] = {}
    for idx, (e1, e2, _side, _arc) in enumerate(edges):
        adj.setdefault(e1, []).append(idx)
        adj.setdefault(e2, []).append(idx)
    for pt, inc in adj.items():
        if len(inc) != 2:
            raise RealPartUnavailable(
                f"fixed point {pt} has {len(inc)} incident arcs; data incomplete")

    seen = [False] * len(edges)
    components: list[RealComponent] = []

    def piece_vector(side: int, arc) -> list[int]:
        vec = [0] * dim
        for a, ia in enumerate(interior):
            vec[side * n_int + a] ^= arc.pair_curves[ia] % 2
        for l in m_ids:
            vec[m_pos(l)] ^= arc.pair_arcs.get(l, 0) % 2
        return vec

    for start in range(len(edges)):
        if seen[start]:
            continue
        vec = [0] * dim
        count = 0
        stack = [start]
        pts: set[tuple[int, int]] = set()
        while stack:
            idx = stack.pop()
            if seen[idx]:
                continue
            seen[idx] = True
            count += 1
            e1, e2, side, arc = edges[idx]
            pts.update((e1, e2))
            pv = piece_vector(side, arc)
            vec = [a ^ b for a, b in zip(vec, pv)]
            for pt in (e1, e2):
                for nxt in adj[pt]:
                    if not seen[nxt]:
                        stack.append(nxt)
        # each binding fixed point on the component is one transversal
        # crossing of that binding circle
        for cid, _pid in pts:
            if cid in d_ids:
                vec[d_pos(cid)] ^= 1
        cls = _gf2_solve(q, vec)
        if cls is None:
            raise RealPartUnavailable("crossing data is not consistent on the closed surface")
        components.append(RealComponent(pieces=count, h1_class=tuple(cls)))

    for side, fset in ((0, minus), (1, plus)):
        for circ in fset.circles:
            vec = [0] * dim
            row = page.form.transpose().apply(circ.h1_class)
            for a, ia in enumerate(interior):
                vec[side * n_int + a] ^= row[ia] % 2
            for l in m_ids:
                cross = -vec_dot(page.ref_arcs[l].pairings, circ.h1_class)
                vec[m_pos(l)] ^= cross % 2
            cls = _gf2_solve(q, vec)
            if cls is None:
                raise RealPartUnavailable("crossing data is not consistent on the closed surface")
            components.append(RealComponent(pieces=1, h1_class=tuple(cls)))

    rp = RealPartData(components=tuple(components))
    genus = 2 * page.genus + page.boundary_count - 1
    if rp.count > genus + 1:
        raise RealPartUnavailable(
            f"assembled {rp.count} components on a genus-{genus} surface: "
            "violates the Harnack bound, data inconsistent")
    return rp


def is_maximal(hd: HeegaardData, rp: RealPartData) -> bool:
    """Maximal means the real part meets the Harnack bound exactly."""
    return rp.count == hd.genus + 1
