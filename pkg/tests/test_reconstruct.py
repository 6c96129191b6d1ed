"""Unital reconstruction, graph-isomorphism extension, structure isomorphism."""

import pytest

from unitals.cliques import enumerate_maximal_cliques
from unitals.confluence import ConfluenceGraph, build_confluence
from unitals.errors import NotAGraphIsomorphism, NotAUnitalGraph
from unitals.incidence import IncidenceStructure, affine_plane, validate, validate_unital
from unitals.reconstruct import (
    extend_graph_isomorphism,
    isomorphic,
    reconstruct_unital,
)


# --- isomorphic ---

def test_identity_found_first(h3):
    assert isomorphic(h3, h3) == list(range(28))


def test_unital2_isomorphic_to_affine_plane(h2):
    witness = isomorphic(h2, affine_plane(3))
    assert witness is not None
    _check_witness(h2, affine_plane(3), witness)


def test_point_count_mismatch(h3):
    assert isomorphic(h3, affine_plane(3)) is None


def test_relabeled_structure_is_isomorphic(h3):
    sigma = [(5 * i + 3) % 28 for i in range(28)]
    assert sorted(sigma) == list(range(28))
    relabeled = IncidenceStructure(28, [[sigma[x] for x in b] for b in h3.blocks])
    witness = isomorphic(h3, relabeled)
    assert witness is not None
    _check_witness(h3, relabeled, witness)


def test_nonisomorphic_same_parameters(pg3):
    # both have 9 points and 12 lines of size 3, but the line-swap puncture
    # of the plane is not an affine plane (it has size-4 lines)
    w = pg3.blocks[0]
    cut = (set(w) - {w[0]}) | {next(p for p in range(13) if p not in w)}
    from unitals.incidence import puncture
    other = puncture(pg3, cut)
    assert other.num_points == 9 and len(other.blocks) == 12
    assert isomorphic(affine_plane(3), other) is None


def _check_witness(S1, S2, witness):
    assert sorted(witness) == list(range(S1.num_points))
    mapped = sorted(tuple(sorted(witness[x] for x in b)) for b in S1.blocks)
    assert mapped == list(S2.blocks)


def _pasch_configs(S):
    """Block quadruples on 6 points, pairwise meeting once, each point on 2.

    Their count is an isomorphism invariant; it is the oracle that forces
    the negative answer in the test below.
    """
    from itertools import combinations as comb
    out = []
    for quad in comb(range(len(S.blocks)), 4):
        pts = set()
        for i in quad:
            pts |= S.block_sets[i]
        if len(pts) != 6:
            continue
        if all(len(S.block_sets[i] & S.block_sets[j]) == 1 for i, j in comb(quad, 2)):
            out.append(quad)
    return out


def test_negative_answer_needs_real_search():
    """Two triple systems on 13 points that no point invariant separates
    (all degrees 6, all sizes 3, every pair covered once): switching one
    quadrilateral changes the quadrilateral count, so they cannot be
    isomorphic, and the backtracking search must prove it."""
    blocks = [sorted(((0 + i) % 13, (1 + i) % 13, (4 + i) % 13)) for i in range(13)]
    blocks += [sorted(((0 + i) % 13, (2 + i) % 13, (7 + i) % 13)) for i in range(13)]
    sts = IncidenceStructure(13, blocks)
    assert validate_unital(sts) is None  # a triple system, not a unital
    quad = _pasch_configs(sts)[0]
    qs = [set(sts.blocks[i]) for i in quad]
    a = (qs[0] & qs[1]).pop()
    f = (qs[2] & qs[3]).pop()
    b = (qs[2] & (qs[0] - {a})).pop()
    c = (qs[0] - {a, b}).pop()
    d = (qs[2] & (qs[1] - {a})).pop()
    e = (qs[1] - {a, d}).pop()
    switched_blocks = [blk for i, blk in enumerate(sts.blocks) if i not in quad]
    switched_blocks += [sorted({f, b, c}), sorted({f, d, e}),
                        sorted({a, b, d}), sorted({a, c, e})]
    switched = IncidenceStructure(13, switched_blocks)
    assert validate(switched).is_linear_space
    n1, n2 = len(_pasch_configs(sts)), len(_pasch_configs(switched))
    assert (n1, n2) == (13, 8)  # invariant differs: non-isomorphic by force
    assert isomorphic(sts, switched) is None
    assert isomorphic(sts, sts) == list(range(13))


# --- reconstruction ---

def test_reconstruct_unital3(h3, cg3):
    rec = reconstruct_unital(cg3)
    assert rec.q == 3 and not rec.via_q2_shortcut
    assert len(rec.point_cliques) == 28
    assert validate_unital(rec.structure) == 3
    witness = isomorphic(rec.structure, h3)
    assert witness is not None
    _check_witness(rec.structure, h3, witness)


def test_reconstruct_q2_shortcut(h2, cg2):
    rec = reconstruct_unital(cg2)
    assert rec.q == 2 and rec.via_q2_shortcut
    assert rec.point_cliques == ()
    assert isomorphic(rec.structure, h2) is not None


def test_q2_pencil_recognition_fails(cg2):
    # size-4 maximal cliques vastly outnumber the 9 pencils
    size4 = [c for c in enumerate_maximal_cliques(cg2) if len(c) == 4]
    assert len(size4) == 81 > 9


def test_reconstruction_is_relabel_invariant(h3, cg3):
    perm = [(11 * v + 7) % 63 for v in range(63)]
    assert sorted(perm) == list(range(63))
    rows = [0] * 63
    for i in range(63):
        for j in range(63):
            if cg3.adjacent(i, j):
                rows[perm[i]] |= 1 << perm[j]
    shuffled = ConfluenceGraph(63, rows)
    rec = reconstruct_unital(shuffled)
    assert isomorphic(rec.structure, h3) is not None


def test_reconstruct_rejects_non_unital_graph():
    # deterministic 32-regular circulant on 63 vertices
    circulant = ConfluenceGraph.from_edges(
        63, [(i, (i + d) % 63) for i in range(63) for d in range(1, 17)])
    assert all(circulant.degree(i) == 32 for i in range(63))
    with pytest.raises(NotAUnitalGraph):
        reconstruct_unital(circulant)


def test_reconstruct_rejects_wrong_order():
    with pytest.raises(NotAUnitalGraph):
        reconstruct_unital(ConfluenceGraph(50, [0] * 50))


# --- extending graph isomorphisms ---

def test_extend_identity(h3):
    assert extend_graph_isomorphism(range(63), h3, h3) == list(range(28))


def test_extend_recovers_planted_point_permutation(h3):
    sigma = [27 - i for i in range(28)]
    relabeled = IncidenceStructure(28, [[sigma[x] for x in b] for b in h3.blocks])
    position = {b: i for i, b in enumerate(relabeled.blocks)}
    beta = [position[tuple(sorted(sigma[x] for x in b))] for b in h3.blocks]
    assert extend_graph_isomorphism(beta, h3, relabeled) == sigma


def test_extend_verifies_incidence_level(h3):
    sigma = [(9 * i + 1) % 28 for i in range(28)]
    assert sorted(sigma) == list(range(28))
    relabeled = IncidenceStructure(28, [[sigma[x] for x in b] for b in h3.blocks])
    position = {b: i for i, b in enumerate(relabeled.blocks)}
    beta = [position[tuple(sorted(sigma[x] for x in b))] for b in h3.blocks]
    pm = extend_graph_isomorphism(beta, h3, relabeled)
    assert pm == sigma
    for i, block in enumerate(h3.blocks):
        assert tuple(sorted(pm[x] for x in block)) == relabeled.blocks[beta[i]]


def test_extend_rejects_q2(h2):
    with pytest.raises(ValueError):
        extend_graph_isomorphism(range(12), h2, h2)


def test_extend_rejects_non_isomorphism(h3):
    # swap two vertices with different neighborhoods
    g = build_confluence(h3)
    i, j = next((i, j) for i in range(63) for j in range(i + 1, 63)
                if g.rows[i] & ~(1 << j) != g.rows[j] & ~(1 << i))
    beta = list(range(63))
    beta[i], beta[j] = j, i
    with pytest.raises(NotAGraphIsomorphism):
        extend_graph_isomorphism(beta, h3, h3)


def test_extend_rejects_non_bijection(h3):
    with pytest.raises(NotAGraphIsomorphism):
        extend_graph_isomorphism([0] * 63, h3, h3)


def test_extend_rejects_non_unital(pg3):
    with pytest.raises(ValueError):
        extend_graph_isomorphism(range(13), pg3, pg3)
