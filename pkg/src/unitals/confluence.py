"""Block-intersection ("confluence") graphs and their regularity checks.

The confluence graph of an incidence structure has one vertex per block;
two vertices are adjacent iff their blocks share a point. Adjacency is
stored as one bitset row (a Python int) per vertex.

For a unital of order q the graph is strongly regular with parameters
    v = q^2 (q^2 - q + 1),  k = (q+1)^2 (q-1),
    lambda = 2 q^2 - 2,     mu = (q+1)^2,
and non-principal eigenvalues r = q^2 - q - 2, s = -(q+1). The ratio
bound 1 + k/(-s) then equals q^2 exactly. Eigenvalues are computed as
exact integer roots of x^2 - (lambda - mu) x - (k - mu); no floating
point is involved anywhere.

Serialization: DIMACS graph format (``p edge n m`` header, ``e i j``
lines with 1-based i < j, optional leading ``c`` comments).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import FormatError, NonNegativeSmallestEigenvalue
from .incidence import IncidenceStructure


class ConfluenceGraph:
    """Simple undirected graph with bitset adjacency rows.

    Vertex i corresponds to block i of the source structure when built
    by build_confluence. Equality compares (n, rows) and ignores the
    provenance note.
    """

    def __init__(self, n: int, rows: list[int], provenance: str | None = None):
        if len(rows) != n:
            raise ValueError("adjacency row count differs from n")
        mask = (1 << n) - 1
        for i, row in enumerate(rows):
            if row & ~mask:
                raise ValueError(f"row {i} has bits outside 0..{n - 1}")
            if row >> i & 1:
                raise ValueError(f"vertex {i} is self-adjacent")
        for i in range(n):
            for j in _bits(rows[i]):
                if not rows[j] >> i & 1:
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")
        self.n = n
        self.rows = tuple(rows)
        self.provenance = provenance

    @classmethod
    def from_edges(cls, n: int, edges, provenance: str | None = None) -> "ConfluenceGraph":
        rows = [0] * n
        for i, j in edges:
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bad edge ({i}, {j})")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, rows, provenance)

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.rows[i]) if i < j]

    def __eq__(self, other) -> bool:
        return (isinstance(other, ConfluenceGraph)
                and self.n == other.n and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"ConfluenceGraph({self.n} vertices, {self.edge_count()} edges)"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SrgParams:
    """Strongly regular graph parameters with exact integer eigenvalues."""
    v: int
    k: int
    lam: int
    mu: int
    r: int
    s: int

    def __post_init__(self):
        if self.r < self.s:
            raise ValueError("eigenvalues must satisfy r >= s")
        # r, s are the roots of x^2 - (lam - mu) x - (k - mu)
        if self.r + self.s != self.lam - self.mu or self.r * self.s != -(self.k - self.mu):
            raise ValueError("eigenvalues are not roots of the parameter quadratic")
        if self.k * (self.k - self.lam - 1) != (self.v - self.k - 1) * self.mu:
            raise ValueError("parameters violate the counting identity")


def build_confluence(S: IncidenceStructure) -> ConfluenceGraph:
    """Graph on the blocks of S; edges join blocks sharing a point."""
    n = len(S.blocks)
    rows = [0] * n
    for through in S.point_blocks:
        for a in range(len(through)):
            i = through[a]
            acc = 0
            for b in range(a + 1, len(through)):
                acc |= 1 << through[b]
            rows[i] |= acc
            for b in range(a + 1, len(through)):
                rows[through[b]] |= 1 << i
    return ConfluenceGraph(n, rows, provenance=repr(S))


def srg_check(G: ConfluenceGraph) -> SrgParams | None:
    """Parameters if G is strongly regular with integer eigenvalues.

    Verifies regularity and the common-neighbor counts of every pair by
    an O(n^2) popcount sweep. Complete and edgeless graphs (and graphs
    with fewer than 2 vertices) are not SRGs in the standard sense and
    yield None, as do the conference-type graphs whose eigenvalues are
    irrational.
    """
    n = G.n
    if n < 2:
        return None
    k = G.degree(0)
    if any(G.degree(i) != k for i in range(1, n)):
        return None
    if k == 0 or k == n - 1:
        return None
    lam = mu = None
    for i in range(n):
        row_i = G.rows[i]
        for j in range(i + 1, n):
            common = (row_i & G.rows[j]).bit_count()
            if row_i >> j & 1:
                if lam is None:
                    lam = common
                elif common != lam:
                    return None
            else:
                if mu is None:
                    mu = common
                elif common != mu:
                    return None
    assert lam is not None and mu is not None
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    d = isqrt(disc)
    if d * d != disc:
        return None  # irrational eigenvalue pair; outside supported scope
    if (lam - mu + d) % 2 != 0:
        return None
    r = (lam - mu + d) // 2
    s = (lam - mu - d) // 2
    return SrgParams(v=n, k=k, lam=lam, mu=mu, r=r, s=s)


def expected_unital_params(q: int) -> SrgParams:
    """The parameter set of the confluence graph of any unital of order q."""
    if q < 2:
        raise ValueError("unital order must be >= 2")
    v = (q * q - q + 1) * q * q
    k = (q + 1) ** 2 * (q - 1)
    mu = (q + 1) ** 2
    r = q * q - q - 2
    s = -(q + 1)
    lam = mu + r + s  # forced by the eigenvalue quadratic; equals 2q^2 - 2
    return SrgParams(v=v, k=k, lam=lam, mu=mu, r=r, s=s)


def hoffman_bound(params: SrgParams) -> Fraction:
    """The ratio bound 1 + k/(-s) on clique size, as an exact rational."""
    if params.s >= 0:
        raise NonNegativeSmallestEigenvalue(f"s = {params.s} is not negative")
    return 1 + Fraction(params.k, -params.s)


def infer_order(G: ConfluenceGraph) -> int | None:
    """The unique q >= 2 with n = q^2(q^2-q+1) vertices and regular
    degree (q+1)^2(q-1), if both hold."""
    n = G.n
    q = 2
    while q * q * (q * q - q + 1) < n:
        q += 1
    if q * q * (q * q - q + 1) != n:
        return None
    k = (q + 1) ** 2 * (q - 1)
    if any(G.degree(i) != k for i in range(n)):
        return None
    return q


# --- DIMACS ---

def write_dimacs(G: ConfluenceGraph, path, comments: tuple[str, ...] = ()) -> None:
    edges = G.edges()
    with open(path, "w", encoding="utf-8") as fh:
        for c in comments:
            fh.write(f"c {c}\n")
        fh.write(f"p edge {G.n} {len(edges)}\n")
        for i, j in edges:
            fh.write(f"e {i + 1} {j + 1}\n")


def read_dimacs(path) -> ConfluenceGraph:
    n = None
    m = None
    edges = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if n is not None:
                    raise FormatError(f"line {lineno}: repeated problem line")
                if len(parts) != 4 or parts[1] != "edge":
                    raise FormatError(f"line {lineno}: malformed problem line")
                try:
                    n, m = int(parts[2]), int(parts[3])
                except ValueError:
                    raise FormatError(f"line {lineno}: non-integer sizes") from None
            elif parts[0] == "e":
                if n is None:
                    raise FormatError(f"line {lineno}: edge before problem line")
                if len(parts) != 3:
                    raise FormatError(f"line {lineno}: malformed edge line")
                try:
                    i, j = int(parts[1]), int(parts[2])
                except ValueError:
                    raise FormatError(f"line {lineno}: non-integer endpoints") from None
                if not (1 <= i <= n and 1 <= j <= n) or i == j:
                    raise FormatError(f"line {lineno}: edge ({i}, {j}) out of range")
                edges.append((i - 1, j - 1))
            else:
                raise FormatError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise FormatError("missing problem line")
    if m != len(edges):
        raise FormatError(f"header announces {m} edges, file has {len(edges)}")
    return ConfluenceGraph.from_edges(n, edges)
