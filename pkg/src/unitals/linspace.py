"""Classification of q^2-point linear spaces and their plane embeddings.

Scope: linear spaces D with |D| = q^2 points, every pencil of size at
most q+1 and every line of size at most q+1. For q >= 3 every such space
arises from a projective plane of order q by deleting q+1 points, in one
of three ways:

  * "affine_plane":  no line has q+1 points; D is an affine plane of
    order q with q^2+q lines (the deleted points form a full line).
  * "thin_point":    some point u lies on only q lines; then exactly one
    line through u has q points and the rest have q+1. D comes from
    deleting a line W except one of its points u, plus one point off W.
  * "full_pencils":  every pencil has q+1 lines and there are q^2+q+1
    lines; the deleted set has no q collinear points, and every deleted
    point has a tangent (a size-q line of D through it in the plane).

Supporting facts checked as hard invariants (violations indicate a
corrupted input, not a classification):
  * a line with q+1 points meets every other line;
  * at most one point has a pencil of size <= q, and such a point has
    exactly q lines, exactly one of size q.

Completions produce an explicit EmbeddingWitness (host plane, point
injection, deleted point set) which an independent verifier re-checks.
For the "full_pencils" case the embedding is found by backtracking
search in the coordinatized plane; for q <= 4 that plane is the unique
projective plane of order q, so the search is complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .errors import (
    AssumptionViolation,
    ConstructionFailed,
    InternalCheckFailed,
    LemmaViolation,
    MalformedStructure,
    NoEmbeddingFound,
    NotAffinePlane,
    NotInScope,
    QTooLargeForSearch,
    QTooSmall,
)
from .incidence import IncidenceStructure, projective_plane, validate


@dataclass
class AssumptionReport:
    """Result of checking the standing assumptions for parameter q."""
    q: int
    is_linear_space: bool
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.is_linear_space and not self.violations


@dataclass(frozen=True)
class EmbeddingWitness:
    """Explicit embedding of a linear space into a projective plane.

    point_map[i] is the host point carrying point i; deleted lists the
    q+1 host points outside the image.
    """
    host: IncidenceStructure
    point_map: tuple[int, ...]
    deleted: tuple[int, ...]


@dataclass
class LinSpaceClass:
    q: int
    case: str                       # "affine_plane" | "thin_point" | "full_pencils"
    line_count: int
    projective_lines: tuple[int, ...]
    thin_point: int | None = None
    thin_line: int | None = None    # the unique size-q line through the thin point
    embedding: EmbeddingWitness | None = None


class Q2SpecialCase(Enum):
    AFFINE_PLANE_OF_ORDER_2 = "affine_plane_of_order_2"
    NEAR_PENCIL_STRUCTURE = "near_pencil_structure"


def check_assumptions(D: IncidenceStructure, q: int) -> AssumptionReport:
    """Verify: q^2 points, pencils <= q+1, line sizes <= q+1, linearity."""
    violations = []
    if D.num_points != q * q:
        violations.append(f"point count {D.num_points} != q^2 = {q * q}")
    for p, through in enumerate(D.point_blocks):
        if len(through) > q + 1:
            violations.append(f"pencil of point {p} has {len(through)} > q+1 lines")
    for i, block in enumerate(D.blocks):
        if len(block) > q + 1:
            violations.append(f"line {i} has {len(block)} > q+1 points")
    report = validate(D)
    return AssumptionReport(
        q=q, is_linear_space=report.is_linear_space, violations=tuple(violations))


def projective_lines(D: IncidenceStructure, q: int) -> tuple[int, ...]:
    """All lines with q+1 points; asserts each meets every other line."""
    full = tuple(i for i, b in enumerate(D.blocks) if len(b) == q + 1)
    for i in full:
        row = D.block_sets[i]
        for j, other in enumerate(D.block_sets):
            if not row & other:
                raise LemmaViolation(
                    f"size-(q+1) line {i} misses line {j}; input corrupted")
    return full


def thin_points(D: IncidenceStructure, q: int) -> list[int]:
    """Points with pencils of size <= q (at most one may exist).

    If one exists, its pencil has exactly q lines, exactly one of size q,
    all others of size q+1. Any other shape raises LemmaViolation.
    """
    thin = [p for p, through in enumerate(D.point_blocks) if len(through) <= q]
    if len(thin) > 1:
        raise LemmaViolation(f"multiple thin points {thin}; input corrupted")
    if thin:
        u = thin[0]
        through = D.point_blocks[u]
        if len(through) != q:
            raise LemmaViolation(
                f"thin point {u} has {len(through)} lines, expected exactly {q}")
        sizes = sorted(len(D.blocks[i]) for i in through)
        if sizes != [q] + [q + 1] * (q - 1):
            raise LemmaViolation(
                f"thin point {u} has line sizes {sizes}, expected one of {q} "
                f"and {q - 1} of {q + 1}")
    return thin


def classify(D: IncidenceStructure, q: int, embed: bool = True) -> LinSpaceClass:
    """Three-way classification, optionally with an embedding witness.

    Requires q >= 3 (4-point spaces go through q2_special_classify) and
    the standing assumptions. The returned embedding is re-checked by the
    independent witness verifier; pass embed=False to skip the embedding
    (mandatory for full-pencils inputs with q > 4, where the search is
    out of reach).
    """
    if q < 3:
        raise QTooSmall("classification requires q >= 3")
    report = check_assumptions(D, q)
    if not report.passed:
        detail = "; ".join(report.violations) or "not a linear space"
        raise AssumptionViolation(detail)
    full = projective_lines(D, q)
    thin = thin_points(D, q)
    line_count = len(D.blocks)

    if not full:
        if line_count != q * q + q:
            raise LemmaViolation(
                f"affine case must have q^2+q lines, found {line_count}")
        result = LinSpaceClass(q=q, case="affine_plane", line_count=line_count,
                               projective_lines=full)
        if embed:
            result.embedding = complete_affine(D)
    elif thin:
        if line_count != q * q + q:
            raise LemmaViolation(
                f"thin-point case must have q^2+q lines, found {line_count}")
        u = thin[0]
        s_line = next(i for i in D.point_blocks[u] if len(D.blocks[i]) == q)
        result = LinSpaceClass(q=q, case="thin_point", line_count=line_count,
                               projective_lines=full,
                               thin_point=u, thin_line=s_line)
        if embed:
            result.embedding = complete_thin_point(D, q, u)
    else:
        if line_count != q * q + q + 1:
            raise LemmaViolation(
                f"full-pencils case must have q^2+q+1 lines, found {line_count}")
        result = LinSpaceClass(q=q, case="full_pencils", line_count=line_count,
                               projective_lines=full)
        if embed:
            result.embedding = embed_full_pencils(D, q)

    if result.embedding is not None:
        problems = embedding_errors(D, result.embedding, q)
        if problems:
            raise InternalCheckFailed("; ".join(problems))
    return result


def complete_affine(D: IncidenceStructure) -> EmbeddingWitness:
    """Projective completion of an affine plane of order q.

    Adds one new point per parallel class and the line at infinity; old
    points map identically, the deleted set is the new line.
    """
    n = D.num_points
    q = isqrt(n)
    if q < 2 or q * q != n:
        raise NotAffinePlane(f"{n} points is not a square of an order >= 2")
    report = validate(D)
    if not report.is_linear_space:
        raise NotAffinePlane("not a linear space")
    if report.block_size_histogram != {q: q * q + q}:
        raise NotAffinePlane(
            f"line profile {report.block_size_histogram} != {{{q}: {q * q + q}}}")
    sets = D.block_sets
    nb = len(D.blocks)
    unassigned = set(range(nb))
    classes: list[list[int]] = []
    for i in range(nb):
        if i not in unassigned:
            continue
        cls = [j for j in range(nb) if j == i or not (sets[i] & sets[j])]
        covered: set[int] = set()
        for j in cls:
            if sets[j] & covered or j not in unassigned:
                raise NotAffinePlane("parallelism is not an equivalence relation")
            covered |= sets[j]
        if len(cls) != q or len(covered) != n:
            raise NotAffinePlane(f"parallel class of line {i} does not partition the points")
        unassigned -= set(cls)
        classes.append(cls)
    if len(classes) != q + 1:
        raise NotAffinePlane(f"{len(classes)} parallel classes, expected {q + 1}")
    class_of = {j: ci for ci, cls in enumerate(classes) for j in cls}
    host_blocks = [list(D.blocks[j]) + [n + class_of[j]] for j in range(nb)]
    host_blocks.append(list(range(n, n + q + 1)))
    host = IncidenceStructure(n + q + 1, host_blocks)
    return EmbeddingWitness(host=host, point_map=tuple(range(n)),
                            deleted=tuple(range(n, n + q + 1)))


def complete_thin_point(D: IncidenceStructure, q: int, u: int) -> EmbeddingWitness:
    """Embed the thin-point case by rebuilding the missing plane point.

    Construction: S is the unique size-q line through u. Every point p
    off S lies on exactly one line A_p disjoint from S. Replacing u by a
    new point incident with S and all the A_p turns D into an affine
    plane of order q (the new point reuses u's index slot); its
    projective completion hosts D, mapping u to the infinite point of
    S's parallel class. Deleted: the new point plus the other q infinite
    points.
    """
    if q < 3:
        raise QTooSmall("thin-point completion requires q >= 3")
    thin = thin_points(D, q)
    if thin != [u]:
        raise ValueError(f"point {u} is not the thin point of this space")
    s_line = next(i for i in D.point_blocks[u] if len(D.blocks[i]) == q)
    s_row = D.block_sets[s_line]
    v_lines = {s_line}
    for p in range(D.num_points):
        if p in s_row:
            continue
        cand = [i for i in D.point_blocks[p] if not (D.block_sets[i] & s_row)]
        if len(cand) != 1:
            raise ConstructionFailed(
                f"point {p} lies on {len(cand)} lines missing the short line; "
                "expected exactly one")
        v_lines.add(cand[0])

    # line-size profile forced by the construction
    for i, block in enumerate(D.blocks):
        size = len(block)
        if i == s_line or u in D.block_sets[i]:
            continue  # sizes through u were verified by thin_points
        expected = q - 1 if i in v_lines else q
        if size != expected:
            raise ConstructionFailed(
                f"line {i} has {size} points, expected {expected}")

    new_rows = []
    for i, block in enumerate(D.blocks):
        row = set(block) - {u}
        if i in v_lines:
            row.add(u)  # u's slot now carries the new point
        new_rows.append(row)
    try:
        affine = IncidenceStructure(D.num_points, new_rows)
        w = complete_affine(affine)
    except (NotAffinePlane, MalformedStructure) as exc:
        raise ConstructionFailed(f"rebuilt space is not an affine plane: {exc}") from exc

    host = w.host
    n = D.num_points
    infty_s = None
    s_as_indices = frozenset(s_row)  # A-row of S: (D_S - u) + new point at slot u
    for hb in host.block_sets:
        finite = {x for x in hb if x < n}
        if finite == s_as_indices:
            infty_s = min(hb - finite)
            break
    if infty_s is None:
        raise ConstructionFailed("no host line extends the short line")
    point_map = list(range(n))
    point_map[u] = infty_s
    deleted = sorted(({u} | set(range(n, host.num_points))) - {infty_s})
    return EmbeddingWitness(host=host, point_map=tuple(point_map),
                            deleted=tuple(deleted))


def embed_full_pencils(D: IncidenceStructure, q: int) -> EmbeddingWitness:
    """Backtracking embedding of the full-pencils case into PG(2,q).

    Points are assigned fail-first (most partially-mapped lines first,
    lowest index on ties); candidates are pruned by requiring partial
    line images to stay collinear and distinct lines to claim distinct
    host lines. On success the tangent property of every deleted point
    and the no-q-collinear property of the deleted set are verified.
    """
    if q > 4:
        raise QTooLargeForSearch("embedding search supports q <= 4 only")
    n = D.num_points
    nb = len(D.blocks)
    if (n != q * q or nb != q * q + q + 1
            or any(len(t) != q + 1 for t in D.point_blocks)):
        raise ValueError("input is not in the full-pencils case")
    host = projective_plane(q)
    nh = host.num_points
    join: dict[tuple[int, int], int] = {}
    for li, row in enumerate(host.blocks):
        for a in range(len(row)):
            for b in range(a + 1, len(row)):
                join[(row[a], row[b])] = li

    assign: list[int | None] = [None] * n
    used = [False] * nh
    line_img: list[int | None] = [None] * nb
    claimed: dict[int, int] = {}
    assigned_in = [0] * nb

    def pick() -> int | None:
        best_p, best_c = None, -1
        for p in range(n):
            if assign[p] is None:
                c = sum(1 for b in D.point_blocks[p] if assigned_in[b] > 0)
                if c > best_c:
                    best_c, best_p = c, p
        return best_p

    def candidates(p: int):
        cands: set[int] | None = None
        singles = []
        for b in D.point_blocks[p]:
            li = line_img[b]
            if li is not None:
                allowed = {h for h in host.blocks[li] if not used[h]}
                cands = allowed if cands is None else cands & allowed
            elif assigned_in[b] == 1:
                img = next(assign[x] for x in D.blocks[b] if assign[x] is not None)
                singles.append((b, img))
        if cands is None:
            cands = {h for h in range(nh) if not used[h]}
        for h in sorted(cands):
            newlines: dict[int, int] = {}
            ok = True
            for b, img in singles:
                key = (img, h) if img < h else (h, img)
                li = join[key]
                if li in newlines or claimed.get(li, b) != b:
                    ok = False
                    break
                newlines[li] = b
            if ok:
                yield h, newlines

    def search() -> bool:
        p = pick()
        if p is None:
            return True
        for h, newlines in candidates(p):
            assign[p] = h
            used[h] = True
            for b in D.point_blocks[p]:
                assigned_in[b] += 1
            for li, b in newlines.items():
                line_img[b] = li
                claimed[li] = b
            if search():
                return True
            assign[p] = None
            used[h] = False
            for b in D.point_blocks[p]:
                assigned_in[b] -= 1
            for li, b in newlines.items():
                line_img[b] = None
                del claimed[li]
        return False

    if not search():
        raise NoEmbeddingFound(
            "exhaustive search found no plane embedding; input is invalid")
    point_map = tuple(assign)  # type: ignore[arg-type]
    image = set(point_map)
    deleted = tuple(h for h in range(nh) if h not in image)

    # tangent: every deleted point lies on the host line of a size-q line of D
    short_lines = [i for i, b in enumerate(D.blocks) if len(b) == q]
    for y in deleted:
        if not any(y in host.block_sets[line_img[i]] for i in short_lines):
            raise LemmaViolation(f"deleted host point {y} has no tangent line")
    for row in host.block_sets:
        hit = len(row & set(deleted))
        if hit >= q:
            raise LemmaViolation(
                f"{hit} deleted points are collinear; at most {q - 1} allowed")
    return EmbeddingWitness(host=host, point_map=point_map, deleted=deleted)


def embedding_errors(D: IncidenceStructure, w: EmbeddingWitness, q: int) -> list[str]:
    """Independent witness verifier: collinearity preservation, line
    injectivity, and deleted-set size. Knows nothing about how the
    witness was produced."""
    problems = []
    pm = w.point_map
    if len(pm) != D.num_points:
        problems.append("point_map length differs from point count")
        return problems
    if any(not 0 <= h < w.host.num_points for h in pm):
        problems.append("point_map leaves the host point range")
        return problems
    if len(set(pm)) != len(pm):
        problems.append("point_map is not injective")
    images = []
    for i, block in enumerate(D.blocks):
        img = {pm[x] for x in block}
        containing = [j for j, hb in enumerate(w.host.block_sets) if img <= hb]
        if len(containing) != 1:
            problems.append(
                f"line {i} maps into {len(containing)} host lines, want exactly 1")
        else:
            images.append(containing[0])
    if len(set(images)) != len(images):
        problems.append("two lines map into the same host line")
    expected_deleted = tuple(sorted(set(range(w.host.num_points)) - set(pm)))
    if tuple(w.deleted) != expected_deleted:
        problems.append("deleted set is not the complement of the image")
    if len(w.deleted) != q + 1:
        problems.append(f"deleted set has {len(w.deleted)} points, want q+1 = {q + 1}")
    return problems


def q2_special_classify(D: IncidenceStructure) -> Q2SpecialCase:
    """Two-way classification of 4-point linear spaces with sizes <= 3.

    Either the affine plane of order 2 (six 2-point lines) or the
    structure with one 3-point line and three 2-point lines; the latter
    contains no quadrangle (it has three collinear points). Anything
    else raises NotInScope.
    """
    if D.num_points != 4:
        raise NotInScope(f"{D.num_points} points; this classification needs 4")
    report = validate(D)
    if not report.is_linear_space:
        raise NotInScope("not a linear space")
    if any(len(t) > 3 for t in D.point_blocks) or any(len(b) > 3 for b in D.blocks):
        raise NotInScope("a pencil or line exceeds size 3")
    sizes = sorted(len(b) for b in D.blocks)
    if sizes == [2] * 6:
        return Q2SpecialCase.AFFINE_PLANE_OF_ORDER_2
    if sizes == [2, 2, 2, 3]:
        # no quadrangle: some three points are collinear
        assert any(len(b) == 3 for b in D.blocks)
        return Q2SpecialCase.NEAR_PENCIL_STRUCTURE
    raise NotInScope(f"line size profile {sizes} is not covered")
