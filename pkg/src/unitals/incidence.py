"""Incidence structures: linear spaces, designs, unitals, and searches.

An IncidenceStructure is a finite point set {0..n-1} together with a list
of blocks (point-index sets). Blocks are stored canonically: each block
strictly increasing, the block list sorted lexicographically, no
duplicates, every block of size >= 2. Structures are immutable after
construction.

Provided constructions: the classical projective plane PG(2,q) over
GF(q), the affine plane AG(2,q), point-set deletions ("punctures"),
the Hermitian unital of order q (absolute points of a unitary polarity
of PG(2,q^2) with its secant-line sections), and duals.

Configuration searches: pencils, near pencils, and the 4-line/6-point
configuration in which every configuration line carries exactly 3 of the
points and every point lies on exactly 2 of the lines.

Serialization: the ``incidence-v1`` JSON format (see read_json/write_json).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import FieldSpec, field_create, prime_power, quadratic_extension
from .errors import (
    DegeneratePoint,
    FormatError,
    IncidentPair,
    InternalCheckFailed,
    InvalidPointSet,
    MalformedStructure,
    NotPrimePower,
)


class IncidenceStructure:
    """Finite point set plus canonical sorted block list.

    Blocks passed to the constructor may be in any order; they are
    normalized. A block with a repeated point, an out-of-range index, a
    size below 2, or a duplicate of another block raises
    MalformedStructure.
    """

    def __init__(self, num_points: int,
                 blocks: Iterable[Iterable[int]],
                 labels: Sequence[str] | None = None):
        if num_points < 0:
            raise MalformedStructure("negative point count")
        norm = []
        for raw in blocks:
            block = tuple(sorted(raw))
            if len(block) < 2:
                raise MalformedStructure(f"block {block} has fewer than 2 points")
            if any(block[i] == block[i + 1] for i in range(len(block) - 1)):
                raise MalformedStructure(f"block {block} repeats a point")
            if block[0] < 0 or block[-1] >= num_points:
                raise MalformedStructure(f"block {block} out of range 0..{num_points - 1}")
            norm.append(block)
        norm.sort()
        for i in range(len(norm) - 1):
            if norm[i] == norm[i + 1]:
                raise MalformedStructure(f"duplicate block {norm[i]}")
        self.num_points = num_points
        self.blocks: tuple[tuple[int, ...], ...] = tuple(norm)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != num_points:
                raise MalformedStructure("labels length differs from num_points")
        self.labels = labels

    @cached_property
    def block_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(b) for b in self.blocks)

    @cached_property
    def point_blocks(self) -> tuple[tuple[int, ...], ...]:
        """For each point, the sorted indices of blocks through it."""
        through: list[list[int]] = [[] for _ in range(self.num_points)]
        for i, block in enumerate(self.blocks):
            for p in block:
                through[p].append(i)
        return tuple(tuple(t) for t in through)

    @cached_property
    def pair_block(self) -> dict[tuple[int, int], int]:
        """Map from point pairs (a < b) covered exactly once to their block.

        Pairs covered more than once are absent; use validate() to detect
        non-partial-linear structures.
        """
        seen: dict[tuple[int, int], int] = {}
        dropped: set[tuple[int, int]] = set()
        for i, block in enumerate(self.blocks):
            for j, a in enumerate(block):
                for b in block[j + 1:]:
                    if (a, b) in seen or (a, b) in dropped:
                        seen.pop((a, b), None)
                        dropped.add((a, b))
                    else:
                        seen[(a, b)] = i
        return seen

    def __eq__(self, other) -> bool:
        return (isinstance(other, IncidenceStructure)
                and self.num_points == other.num_points
                and self.blocks == other.blocks)

    def __hash__(self) -> int:
        return hash((self.num_points, self.blocks))

    def __repr__(self) -> str:
        return f"IncidenceStructure({self.num_points} points, {len(self.blocks)} blocks)"


@dataclass
class DesignReport:
    """Pair-coverage and regularity summary of a structure."""
    is_partial_linear: bool          # every point pair on at most one block
    is_linear_space: bool            # every point pair on exactly one block
    pair_coverage_histogram: dict[int, int]   # coverage count -> number of pairs
    point_degree_histogram: dict[int, int]    # degree -> number of points
    block_size_histogram: dict[int, int]      # size -> number of blocks


@dataclass(frozen=True)
class OnanConfiguration:
    """Four mutually intersecting blocks whose six pairwise intersection
    points are distinct; each point then lies on exactly 2 of the blocks
    and each block carries exactly 3 of the points."""
    blocks: tuple[int, int, int, int]
    points: tuple[int, ...]

    def __post_init__(self):
        assert len(self.points) == 6


def validate(S: IncidenceStructure) -> DesignReport:
    """Exhaustive pair scan; histograms plus linearity flags."""
    coverage: Counter[tuple[int, int]] = Counter()
    for block in S.blocks:
        for j, a in enumerate(block):
            for b in block[j + 1:]:
                coverage[(a, b)] += 1
    total_pairs = S.num_points * (S.num_points - 1) // 2
    hist = Counter(coverage.values())
    hist[0] = total_pairs - len(coverage)
    if hist[0] == 0:
        del hist[0]
    degrees = Counter(len(t) for t in S.point_blocks)
    sizes = Counter(len(b) for b in S.blocks)
    max_cov = max(hist) if hist else 0
    return DesignReport(
        is_partial_linear=max_cov <= 1,
        is_linear_space=max_cov <= 1 and len(coverage) == total_pairs,
        pair_coverage_histogram=dict(sorted(hist.items())),
        point_degree_histogram=dict(sorted(degrees.items())),
        block_size_histogram=dict(sorted(sizes.items())),
    )


def validate_unital(S: IncidenceStructure) -> int | None:
    """Return q if S is a 2-(q^3+1, q+1, 1) design with q > 1, else None.

    Also requires the derived counts: q^2(q^2-q+1) blocks and constant
    point degree q^2.
    """
    if not S.blocks:
        return None
    sizes = {len(b) for b in S.blocks}
    if len(sizes) != 1:
        return None
    q = sizes.pop() - 1
    if q <= 1:
        return None
    if S.num_points != q**3 + 1:
        return None
    if len(S.blocks) != q * q * (q * q - q + 1):
        return None
    if {len(t) for t in S.point_blocks} != {q * q}:
        return None
    return q if validate(S).is_linear_space else None


# --- classical constructions ---

def _pg_data(field: FieldSpec) -> tuple[list[tuple[int, int, int]], list[list[int]]]:
    """Points and line rows of PG(2, field.order).

    Points are homogeneous coordinate triples of element encodings,
    normalized so the first nonzero coordinate is 1, listed in ascending
    lexicographic order. Line i has the same coordinate triple as point i
    (the standard duality); its row lists the indices of incident points.
    """
    q = field.order
    points = [(0, 0, 1)]
    points += [(0, 1, z) for z in range(q)]
    points += [(1, y, z) for y in range(q) for z in range(q)]
    add = [[field.add_idx(a, b) for b in range(q)] for a in range(q)]
    mul = [[field.mul_idx(a, b) for b in range(q)] for a in range(q)]
    rows = []
    for a, b, c in points:
        ma, mb, mc = mul[a], mul[b], mul[c]
        row = [i for i, (x, y, z) in enumerate(points)
               if add[add[ma[x]][mb[y]]][mc[z]] == 0]
        rows.append(row)
    return points, rows


def _label(triple: tuple[int, int, int]) -> str:
    return "({}:{}:{})".format(*triple)


def projective_plane(q: int) -> IncidenceStructure:
    """PG(2,q): q^2+q+1 points and lines, q+1 points per line.

    Point labels are "(x:y:z)" with coordinates shown as the integer
    encodings of GF(q) elements.
    """
    pe = prime_power(q)
    if pe is None:
        raise NotPrimePower(f"{q} is not a prime power")
    if q > 25:
        raise ValueError("projective_plane supports q <= 25")
    field = field_create(*pe)
    points, rows = _pg_data(field)
    return IncidenceStructure(len(points), rows, labels=[_label(t) for t in points])


def affine_plane(q: int) -> IncidenceStructure:
    """AG(2,q): q^2 points, q^2+q blocks of size q.

    Built by deleting the points of the line x=0 from PG(2,q).
    """
    plane = projective_plane(q)
    line_at_infinity = frozenset(range(q + 1))  # points (0:*:*) come first
    assert line_at_infinity in plane.block_sets
    return puncture(plane, line_at_infinity)


def puncture(P: IncidenceStructure, deleted: Iterable[int]) -> IncidenceStructure:
    """Delete a point set; restrict blocks to survivors.

    Restrictions with fewer than 2 points are discarded and duplicate
    restrictions collapse to a single block. Survivors are reindexed;
    the original identity of each point is recorded in the labels (the
    original label if present, else the original index as a string).
    """
    dset = set(deleted)
    if not all(isinstance(p, int) and 0 <= p < P.num_points for p in dset):
        raise InvalidPointSet(f"deleted set not within 0..{P.num_points - 1}")
    survivors = [p for p in range(P.num_points) if p not in dset]
    new_index = {p: i for i, p in enumerate(survivors)}
    restricted = set()
    for block in P.blocks:
        r = tuple(new_index[p] for p in block if p not in dset)
        if len(r) >= 2:
            restricted.add(r)
    labels = [P.labels[p] if P.labels else str(p) for p in survivors]
    return IncidenceStructure(len(survivors), restricted, labels=labels)


def hermitian_unital(q: int) -> IncidenceStructure:
    """The Hermitian unital of order q: q^3+1 points, q^2(q^2-q+1) blocks.

    Points are the points (x:y:z) of PG(2,q^2) with
    x^(q+1) + y^(q+1) + z^(q+1) = 0; blocks are the line sections of
    size q+1 (the secants). The construction self-checks its design
    parameters and raises InternalCheckFailed on any mismatch.
    """
    if prime_power(q) is None:
        raise NotPrimePower(f"{q} is not a prime power")
    if q > 5:
        raise ValueError("hermitian_unital supports q <= 5")
    field = quadratic_extension(q)
    points, rows = _pg_data(field)
    norm = [field.pow_idx(t, q + 1) for t in range(field.order)]
    add = [[field.add_idx(a, b) for b in range(field.order)] for a in range(field.order)]
    absolute = [i for i, (x, y, z) in enumerate(points)
                if add[add[norm[x]][norm[y]]][norm[z]] == 0]
    new_index = {p: i for i, p in enumerate(absolute)}
    keep = set(absolute)
    blocks = []
    for row in rows:
        r = [new_index[p] for p in row if p in keep]
        if len(r) == q + 1:
            blocks.append(r)
    labels = [_label(points[p]) for p in absolute]
    unital = IncidenceStructure(len(absolute), blocks, labels=labels)
    if validate_unital(unital) != q:
        raise InternalCheckFailed(f"Hermitian construction for q={q} failed self-check")
    return unital


def dual(S: IncidenceStructure) -> IncidenceStructure:
    """Swap points and blocks: dual block i = blocks through point i."""
    for p, through in enumerate(S.point_blocks):
        if len(through) < 2:
            raise DegeneratePoint(f"point {p} lies on {len(through)} block(s)")
    return IncidenceStructure(len(S.blocks), list(S.point_blocks))


# --- pencils, near pencils, configuration search ---

def pencil(S: IncidenceStructure, p: int) -> tuple[int, ...]:
    """All blocks through p (sorted block indices)."""
    if not 0 <= p < S.num_points:
        raise InvalidPointSet(f"point {p} out of range")
    return S.point_blocks[p]

def near_pencil(S: IncidenceStructure, p: int, L: int) -> tuple[int, ...]:
    """Block L plus all blocks joining p to points of L, for p not on L.

    Requires S to be a linear space so that each join exists and is
    unique. In a unital of order q the result has q+2 blocks.
    """
    if not 0 <= L < len(S.blocks):
        raise InvalidPointSet(f"block {L} out of range")
    block = S.blocks[L]
    if p in block:
        raise IncidentPair(f"point {p} lies on block {L}")
    out = {L}
    for x in block:
        key = (p, x) if p < x else (x, p)
        join = S.pair_block.get(key)
        if join is None:
            raise MalformedStructure(
                f"no unique block joins {p} and {x}; not a linear space")
        out.add(join)
    return tuple(sorted(out))


def _block_adjacency(S: IncidenceStructure) -> tuple[list[int], dict[int, int]]:
    """Bitset adjacency over blocks plus the meet point of adjacent pairs.

    Keyed (i << 20) | j with i < j; only valid for partial linear spaces,
    where two blocks meet in at most one point.
    """
    nb = len(S.blocks)
    rows = [0] * nb
    meet: dict[int, int] = {}
    for p, through in enumerate(S.point_blocks):
        for a in range(len(through)):
            i = through[a]
            for b in range(a + 1, len(through)):
                j = through[b]
                rows[i] |= 1 << j
                rows[j] |= 1 << i
                meet[(i << 20) | j] = p
    return rows, meet


def find_onan(S: IncidenceStructure, limit: int = 0) -> list[OnanConfiguration]:
    """All 4-block subsets, pairwise intersecting, with 6 distinct meets.

    Enumeration is exhaustive in lexicographic order over sorted block
    quadruples; a positive `limit` stops after that many hits. The input
    must be a partial linear space.
    """
    if not validate(S).is_partial_linear:
        raise ValueError("input is not a partial linear space")
    rows, meet = _block_adjacency(S)
    nb = len(S.blocks)
    found: list[OnanConfiguration] = []
    for i in range(nb):
        above_i = rows[i] >> (i + 1) << (i + 1)
        mj = above_i
        while mj:
            jbit = mj & -mj
            j = jbit.bit_length() - 1
            mj ^= jbit
            cand_k = above_i & rows[j] >> (j + 1) << (j + 1)
            mk = cand_k
            while mk:
                kbit = mk & -mk
                k = kbit.bit_length() - 1
                mk ^= kbit
                ml = cand_k & rows[k] >> (k + 1) << (k + 1)
                while ml:
                    lbit = ml & -ml
                    l = lbit.bit_length() - 1
                    ml ^= lbit
                    pts = (meet[(i << 20) | j], meet[(i << 20) | k],
                           meet[(i << 20) | l], meet[(j << 20) | k],
                           meet[(j << 20) | l], meet[(k << 20) | l])
                    if len(set(pts)) == 6:
                        found.append(OnanConfiguration(
                            blocks=(i, j, k, l), points=tuple(sorted(pts))))
                        if limit and len(found) >= limit:
                            return found
    return found


# --- incidence-v1 JSON ---

def to_json_dict(S: IncidenceStructure) -> dict:
    out: dict = {
        "format": "incidence-v1",
        "num_points": S.num_points,
        "blocks": [list(b) for b in S.blocks],
    }
    if S.labels is not None:
        out["labels"] = list(S.labels)
    return out


def from_json_dict(data: dict) -> IncidenceStructure:
    """Strict reader for incidence-v1; rejects any invariant violation."""
    if not isinstance(data, dict) or data.get("format") != "incidence-v1":
        raise FormatError('missing or wrong "format" key (want "incidence-v1")')
    n = data.get("num_points")
    if not isinstance(n, int) or n < 0:
        raise FormatError('"num_points" must be a non-negative integer')
    blocks = data.get("blocks")
    if not isinstance(blocks, list):
        raise FormatError('"blocks" must be an array')
    for block in blocks:
        if not isinstance(block, list) or not all(isinstance(x, int) for x in block):
            raise FormatError(f"block {block!r} is not an array of integers")
        if any(block[i] >= block[i + 1] for i in range(len(block) - 1)):
            raise FormatError(f"block {block} is not strictly increasing")
        if block and (block[0] < 0 or block[-1] >= n):
            raise FormatError(f"block {block} out of range")
    for i in range(len(blocks) - 1):
        if blocks[i] >= blocks[i + 1]:
            raise FormatError("blocks are not sorted lexicographically without duplicates")
    labels = data.get("labels")
    if labels is not None:
        if (not isinstance(labels, list) or len(labels) != n
                or not all(isinstance(s, str) for s in labels)):
            raise FormatError('"labels" must be an array of strings of length num_points')
    return IncidenceStructure(n, blocks, labels=labels)


def write_json(S: IncidenceStructure, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json_dict(S), fh, indent=1)
        fh.write("\n")


def read_json(path) -> IncidenceStructure:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from exc
    return from_json_dict(data)


def conic_points(q: int) -> tuple[int, ...]:
    """The deterministic conic {(1:t:t^2)} + {(0:0:1)} in projective_plane(q).

    Returns point indices in the canonical plane. The set has q+1 points
    and no 3 of them are collinear (a line meets it in at most 2 points).
    """
    pe = prime_power(q)
    if pe is None:
        raise NotPrimePower(f"{q} is not a prime power")
    field = field_create(*pe)
    points, _ = _pg_data(field)
    index = {pt: i for i, pt in enumerate(points)}
    out = {index[(0, 0, 1)]}
    for t in range(q):
        out.add(index[(1, t, field.mul_idx(t, t))])
    return tuple(sorted(out))
