"""Shared test helpers: deterministic graph sweep and tiny oracles."""

from unitals.confluence import ConfluenceGraph


def lcg(seed: int):
    """Minimal 31-bit linear congruential generator; platform independent."""
    x = seed & 0x7FFFFFFF
    while True:
        x = (1103515245 * x + 12345) % (1 << 31)
        yield x


def sweep_graph(i: int) -> ConfluenceGraph:
    """Graph i of the fixed deterministic sweep (5..20 vertices)."""
    n = 5 + (i * 7) % 16
    density = 20 + (i * 13) % 61  # percent
    stream = lcg(1000 + i)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if next(stream) % 100 < density]
    return ConfluenceGraph.from_edges(n, edges)


def subset_filter_cliques(G: ConfluenceGraph) -> list[tuple[int, ...]]:
    """Third opinion for tiny graphs: test all 2^n subsets directly."""
    n = G.n
    assert n <= 14
    out = []
    for mask in range(1, 1 << n):
        members = [v for v in range(n) if mask >> v & 1]
        if any(not G.adjacent(a, b) for i, a in enumerate(members)
               for b in members[i + 1:]):
            continue
        inside = set(members)
        if any(all(G.adjacent(v, m) for m in members)
               for v in range(n) if v not in inside):
            continue
        out.append(tuple(members))
    out.sort()
    return out
