"""Uniform hypergraphs with a query-counting oracle view and simplex search.

Vertices are 1-based ([n] = {1, ..., n}).  An r-simplex is a set of r+1
vertices each r of which form a present hyperedge; finding one is the search
problem whose query complexity the rest of the package reasons about.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Iterator, Optional

Edge = tuple[int, ...]


class HypergraphError(ValueError):
    pass


def _canon_edge(vertices: Iterable[int], n: int, r: int) -> Edge:
    e = tuple(sorted(set(vertices)))
    if len(e) != r:
        raise HypergraphError(f"edge {vertices!r} must have exactly {r} distinct vertices")
    if e[0] < 1 or e[-1] > n:
        raise HypergraphError(f"edge {e} out of range [1, {n}]")
    return e


@dataclass(frozen=True)
class Hypergraph:
    """Immutable r-uniform hypergraph on [n].

    Membership is the union of an explicit stored edge set and an optional
    implicit predicate (for "known" edge classes such as complete multipartite
    blocks).  Queries against the stored set cost one oracle call each;
    implicit membership is free.
    """

    n: int
    r: int
    edges: frozenset[Edge]
    implicit_edge_predicate: Optional[Callable[[Edge], bool]] = None

    def __post_init__(self):
        if not (1 <= self.r <= self.n):
            raise HypergraphError(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
        for e in self.edges:
            _canon_edge(e, self.n, self.r)

    @staticmethod
    def from_edges(n: int, r: int, edges: Iterable[Iterable[int]],
                   implicit: Optional[Callable[[Edge], bool]] = None) -> "Hypergraph":
        canon = frozenset(_canon_edge(e, n, r) for e in edges)
        return Hypergraph(n, r, canon, implicit)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        """Zero-cost membership; use OracleView to count queries."""
        e = _canon_edge(vertices, self.n, self.r)
        if self.implicit_edge_predicate is not None and self.implicit_edge_predicate(e):
            return True
        return e in self.edges

    def iter_stored_edges(self) -> Iterator[Edge]:
        return iter(sorted(self.edges))


class OracleView:
    """Single-owner mutable view of a hypergraph counting stored-edge queries.

    The implicit predicate is consulted first and costs nothing; only tests
    against the stored set increment the counter.
    """

    def __init__(self, hypergraph: Hypergraph):
        self.hypergraph = hypergraph
        self.query_count = 0

    def is_edge(self, vertices: Iterable[int]) -> bool:
        g = self.hypergraph
        e = _canon_edge(vertices, g.n, g.r)
        if g.implicit_edge_predicate is not None and g.implicit_edge_predicate(e):
            return True
        self.query_count += 1
        return e in g.edges


@dataclass(frozen=True)
class Simplex:
    """r+1 vertices all of whose r-subsets are edges of the witnessing graph."""

    vertices: tuple[int, ...]

    def faces(self) -> list[Edge]:
        vs = self.vertices
        return [tuple(v for v in vs if v != skip) for skip in vs]


def verify_simplex(view: OracleView, vertices: Iterable[int]) -> bool:
    """Check all r+1 faces against the oracle (counted queries)."""
    vs = tuple(sorted(set(vertices)))
    if len(vs) != view.hypergraph.r + 1:
        return False
    return all(view.is_edge(tuple(v for v in vs if v != skip)) for skip in vs)


def find_simplex(view: OracleView) -> Optional[Simplex]:
    """Exhaustive simplex search, lexicographic over (r+1)-subsets.

    Short-circuits on the first missing face, so the query count is at most
    (r+1) * C(n, r+1) and is reproducible across runs.
    """
    g = view.hypergraph
    if g.r + 1 > g.n:
        raise HypergraphError(f"no (r+1)-subsets exist for r={g.r}, n={g.n}")
    for cand in itertools.combinations(range(1, g.n + 1), g.r + 1):
        ok = True
        for skip in cand:
            if not view.is_edge(tuple(v for v in cand if v != skip)):
                ok = False
                break
        if ok:
            return Simplex(cand)
    return None


def planted_instance(n: int, r: int, noise_density: float, seed: int) -> tuple[Hypergraph, Simplex]:
    """Random instance containing a planted simplex.

    Remaining potential edges are present independently with probability
    noise_density; deterministic per seed.
    """
    if r + 1 > n:
        raise HypergraphError(f"cannot plant an r-simplex with r={r}, n={n}")
    if not (0.0 <= noise_density <= 1.0):
        raise HypergraphError(f"noise_density {noise_density} outside [0, 1]")
    rng = random.Random(seed)
    planted = tuple(sorted(rng.sample(range(1, n + 1), r + 1)))
    simplex = Simplex(planted)
    edges = set(simplex.faces())
    if noise_density > 0.0:
        for e in itertools.combinations(range(1, n + 1), r):
            if e not in edges and rng.random() < noise_density:
                edges.add(e)
    return Hypergraph.from_edges(n, r, edges), simplex


def trivial_exponents(r: int) -> tuple[Fraction, Fraction]:
    """Known query-exponent window for simplex finding at rank r: [r/2, (r+1)/2]."""
    if r < 1:
        raise HypergraphError("rank must be >= 1")
    return Fraction(r, 2), Fraction(r + 1, 2)


def max_query_budget(n: int, r: int) -> int:
    return (r + 1) * comb(n, r + 1)


# --- text format -----------------------------------------------------------
#
# First line "n r"; one edge per subsequent line as r space-separated
# ascending vertex ids; '#' lines ignored; trailing newline required.

class FormatError(ValueError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


def format_hypergraph(g: Hypergraph) -> str:
    lines = [f"{g.n} {g.r}"]
    lines.extend(" ".join(str(v) for v in e) for e in g.iter_stored_edges())
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, ...]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise FormatError(line_no, f"non-integer field in {raw!r}")
        if header is None:
            if len(values) != 2:
                raise FormatError(line_no, "header must be 'n r'")
            header = (values[0], values[1])
            continue
        n, r = header
        if len(values) != r:
            raise FormatError(line_no, f"expected {r} vertex ids, got {len(values)}")
        if values != sorted(set(values)):
            raise FormatError(line_no, "vertex ids must be strictly ascending")
        if values[0] < 1 or values[-1] > n:
            raise FormatError(line_no, f"vertex id out of range [1, {n}]")
        edges.append(tuple(values))
    if header is None:
        raise FormatError(1, "missing 'n r' header")
    try:
        return Hypergraph.from_edges(header[0], header[1], edges)
    except HypergraphError as exc:
        raise FormatError(1, str(exc))
