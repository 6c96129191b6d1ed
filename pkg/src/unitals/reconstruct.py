"""Rebuilding a unital from its confluence graph, and isomorphism tools.

For q > 2 the maximal cliques of size q^2 in the confluence graph of a
unital of order q are exactly the pencils, one per point, so the unital
can be rebuilt from the bare graph: take the size-q^2 cliques as points
and let each graph vertex give the block of cliques containing it. For
q = 2 pencil recognition fails (the 12-vertex graph has 81 maximal
cliques of size 4, far more than the 9 pencils); since all unitals of
order 2 are isomorphic, the canonical affine plane of order 3 is
returned instead, flagged as the shortcut.

Graph isomorphisms between confluence graphs of unitals of order q > 2
extend to incidence isomorphisms: the image of each pencil is a size-q^2
clique, hence itself a pencil, and mapping point to point recovers the
point bijection.

`isomorphic` is an independent incidence-structure isomorphism tester
(refinement plus backtracking) used to verify these claims; it never
consults clique or graph machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cliques import enumerate_maximal_cliques
from .confluence import ConfluenceGraph, build_confluence, infer_order
from .errors import (
    MalformedStructure,
    NotAGraphIsomorphism,
    NotAUnitalGraph,
    PencilImageNotAPencil,
)
from .incidence import IncidenceStructure, affine_plane, validate_unital


@dataclass
class Reconstruction:
    """A unital rebuilt from a confluence graph.

    point_cliques[j] is the vertex set of the clique realizing point j.
    Block indices of `structure` are in canonical sorted order, so the
    vertex <-> block correspondence is a relabeling; the isomorphism
    class is unaffected. For the q = 2 shortcut the clique list is empty
    and `via_q2_shortcut` is set.
    """
    q: int
    point_cliques: tuple[tuple[int, ...], ...]
    structure: IncidenceStructure
    via_q2_shortcut: bool = False


def reconstruct_unital(G: ConfluenceGraph) -> Reconstruction:
    """Rebuild a unital, up to isomorphism, from its confluence graph."""
    q = infer_order(G)
    if q is None:
        raise NotAUnitalGraph(
            f"no q >= 2 matches {G.n} vertices with the required regularity")
    if q == 2:
        return Reconstruction(q=2, point_cliques=(),
                              structure=affine_plane(3), via_q2_shortcut=True)
    point_cliques = tuple(c for c in enumerate_maximal_cliques(G)
                          if len(c) == q * q)
    if len(point_cliques) != q**3 + 1:
        raise NotAUnitalGraph(
            f"{len(point_cliques)} maximal cliques of size {q * q}, "
            f"expected {q**3 + 1}")
    membership: list[list[int]] = [[] for _ in range(G.n)]
    for j, clique in enumerate(point_cliques):
        for vertex in clique:
            membership[vertex].append(j)
    if any(len(m) != q + 1 for m in membership):
        raise NotAUnitalGraph("some block lies in a wrong number of point cliques")
    try:
        structure = IncidenceStructure(len(point_cliques), membership)
    except MalformedStructure as exc:
        raise NotAUnitalGraph(f"rebuilt blocks are degenerate: {exc}") from exc
    if validate_unital(structure) != q:
        raise NotAUnitalGraph("rebuilt structure fails the design validation")
    return Reconstruction(q=q, point_cliques=point_cliques, structure=structure)


def extend_graph_isomorphism(beta, S: IncidenceStructure,
                             S2: IncidenceStructure) -> list[int]:
    """Extend a confluence-graph isomorphism to a point bijection.

    beta maps block indices of S to block indices of S2 and must preserve
    adjacency (checked). Both structures must be unitals of equal order
    q > 2. Returns the point map u -> u' such that (point map, beta) is
    an incidence isomorphism (verified before returning).
    """
    q = validate_unital(S)
    q2 = validate_unital(S2)
    if q is None or q2 is None:
        raise ValueError("both structures must be unitals")
    if q == 2 or q2 == 2:
        raise ValueError("order-2 unitals are out of scope: pencil "
                         "recognition fails in their confluence graph")
    beta = list(beta)
    n = len(S.blocks)
    if sorted(beta) != list(range(n)) or len(S2.blocks) != n:
        raise NotAGraphIsomorphism("beta is not a bijection on block indices")
    g1 = build_confluence(S)
    g2 = build_confluence(S2)
    for i in range(n):
        for j in range(i + 1, n):
            if g1.adjacent(i, j) != g2.adjacent(beta[i], beta[j]):
                raise NotAGraphIsomorphism(
                    f"adjacency differs at block pair ({i}, {j})")

    point_map: list[int] = []
    for u in range(S.num_points):
        image = [beta[i] for i in S.point_blocks[u]]
        common = set(S2.blocks[image[0]])
        for i in image[1:]:
            common &= S2.block_sets[i]
        if len(common) != 1:
            raise PencilImageNotAPencil(
                f"image of the pencil of point {u} has no unique common point")
        u2 = common.pop()
        if set(S2.point_blocks[u2]) != set(image):
            raise PencilImageNotAPencil(
                f"image of the pencil of point {u} is not the full pencil of {u2}")
        point_map.append(u2)

    for i, block in enumerate(S.blocks):
        if tuple(sorted(point_map[x] for x in block)) != S2.blocks[beta[i]]:
            raise PencilImageNotAPencil(
                f"block {i} does not map onto block {beta[i]}; inputs invalid")
    return point_map


def _refined_colors(S1: IncidenceStructure,
                    S2: IncidenceStructure) -> tuple[list[int], list[int]] | None:
    """Jointly refine point colors of both structures.

    Start from (degree, incident block sizes), then repeatedly extend each
    point's color by the multiset of (other point's color, number of
    common blocks) over the points it shares a block with, renaming
    colors through a palette shared by both structures. Returns None as
    soon as the color multisets diverge (the structures cannot be
    isomorphic); otherwise the stable coloring.
    """
    n = S1.num_points

    def common_counts(S):
        counts = [dict() for _ in range(n)]
        for block in S.blocks:
            for i, a in enumerate(block):
                for b in block[i + 1:]:
                    counts[a][b] = counts[a].get(b, 0) + 1
                    counts[b][a] = counts[b].get(a, 0) + 1
        return counts

    cc1, cc2 = common_counts(S1), common_counts(S2)

    def initial(S):
        return [(len(S.point_blocks[p]),
                 tuple(sorted(len(S.blocks[i]) for i in S.point_blocks[p])))
                for p in range(n)]

    key1, key2 = initial(S1), initial(S2)
    col1 = col2 = None
    while True:
        palette = {k: i for i, k in enumerate(sorted(set(key1) | set(key2)))}
        new1 = [palette[k] for k in key1]
        new2 = [palette[k] for k in key2]
        if sorted(new1) != sorted(new2):
            return None
        if new1 == col1 and new2 == col2:
            return col1, col2
        col1, col2 = new1, new2
        key1 = [(col1[p], tuple(sorted((col1[x], c) for x, c in cc1[p].items())))
                for p in range(n)]
        key2 = [(col2[p], tuple(sorted((col2[x], c) for x, c in cc2[p].items())))
                for p in range(n)]


def isomorphic(S1: IncidenceStructure,
               S2: IncidenceStructure) -> list[int] | None:
    """Point bijection carrying blocks onto blocks, or None.

    Backtracking over point assignments, pruned by iterated pairwise
    point-degree refinement (see _refined_colors), partial block-image
    consistency, and forced-host-block claims: once the compatible hosts
    of a block shrink to a single candidate, that host is claimed and no
    other block may map into it. Deterministic order (most-constrained
    point first, lowest index on ties; candidates ascending), so testing
    a structure against itself yields the identity.
    """
    n = S1.num_points
    nb = len(S1.blocks)
    if n != S2.num_points or nb != len(S2.blocks):
        return None
    if sorted(map(len, S1.blocks)) != sorted(map(len, S2.blocks)):
        return None

    colors = _refined_colors(S1, S2)
    if colors is None:
        return None
    inv1, inv2 = colors

    pb1, pb2 = S1.point_blocks, S2.point_blocks
    bs2 = S2.block_sets
    size1 = [len(b) for b in S1.blocks]
    size2 = [len(b) for b in S2.blocks]

    sigma: list[int | None] = [None] * n
    used = [False] * n
    assigned_in = [0] * nb          # assigned points per S1 block
    block_img: list[set[int]] = [set() for _ in range(nb)]
    claim: list[int | None] = [None] * nb   # forced S2 host per S1 block
    claimed_by: dict[int, int] = {}

    def try_assign(p: int, h: int) -> list[tuple[int, int]] | None:
        """Apply sigma[p] = h; return the claim journal, or None on conflict."""
        sigma[p] = h
        used[h] = True
        for b in pb1[p]:
            assigned_in[b] += 1
            block_img[b].add(h)
        journal: list[tuple[int, int]] = []
        ok = True
        for b in pb1[p]:
            img = block_img[b]
            compat = [c for c in pb2[h]
                      if size2[c] == size1[b] and img <= bs2[c]]
            if not compat:
                ok = False
                break
            if len(compat) == 1:
                c = compat[0]
                owner = claimed_by.get(c)
                if owner is not None and owner != b:
                    ok = False
                    break
                if claim[b] is None:
                    claim[b] = c
                    claimed_by[c] = b
                    journal.append((b, c))
        if ok:
            return journal
        undo(p, h, journal)
        return None

    def undo(p: int, h: int, journal: list[tuple[int, int]]) -> None:
        for b, c in journal:
            claim[b] = None
            del claimed_by[c]
        for b in pb1[p]:
            assigned_in[b] -= 1
            block_img[b].discard(h)
        sigma[p] = None
        used[h] = False

    def pick() -> int | None:
        best_p, best_score = None, (-1, -1)
        for p in range(n):
            if sigma[p] is not None:
                continue
            n_claimed = n_touched = 0
            for b in pb1[p]:
                if claim[b] is not None:
                    n_claimed += 1
                if assigned_in[b]:
                    n_touched += 1
            score = (n_claimed, n_touched)
            if score > best_score:
                best_score, best_p = score, p
        return best_p

    def candidates(p: int) -> list[int]:
        allowed: set[int] | None = None
        for b in pb1[p]:
            if claim[b] is not None:
                row = bs2[claim[b]]
                allowed = set(row) if allowed is None else allowed & row
            elif assigned_in[b]:
                img = block_img[b]
                anchor = next(iter(img))
                pool: set[int] = set()
                for c in pb2[anchor]:
                    if size2[c] == size1[b] and img <= bs2[c]:
                        pool |= bs2[c]
                allowed = pool if allowed is None else allowed & pool
        if allowed is None:
            return [h for h in range(n) if not used[h] and inv2[h] == inv1[p]]
        return [h for h in sorted(allowed) if not used[h] and inv2[h] == inv1[p]]

    def search() -> bool:
        p = pick()
        if p is None:
            return True
        for h in candidates(p):
            journal = try_assign(p, h)
            if journal is None:
                continue
            if search():
                return True
            undo(p, h, journal)
        return False

    if not search():
        return None
    result = [int(x) for x in sigma]  # type: ignore[arg-type]
    # safety net; full-image compatibility already forces this
    blocks2_set = set(S2.blocks)
    image_blocks = [tuple(sorted(result[x] for x in b)) for b in S1.blocks]
    if len(set(image_blocks)) != len(image_blocks):
        return None
    if any(b not in blocks2_set for b in image_blocks):
        return None
    return result
