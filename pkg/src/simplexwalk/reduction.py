"""Rank-increase reduction: OR of n rank-r instances into one rank-(r+1) instance.

n input hypergraphs G_v on a shared vertex set B are combined into a single
(r+1)-uniform hypergraph on A ∪ B, where each label vertex v ∈ A is joined to
the edges of its G_v (type-1 edges) and B carries the complete (r+1)-partite
hypergraph over a random equal partition (type-2 edges, query-free).  A
simplex of some G_v lifts to an (r+1)-simplex exactly when its r+1 vertices
land in distinct partition blocks.

Vertex convention for the combined graph: B keeps ids 1..n, A is n+1..2n
(label v ∈ [n] becomes combined vertex n+v).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .hypergraph import (
    FormatError,
    Hypergraph,
    HypergraphError,
    OracleView,
    Simplex,
    find_simplex,
    format_hypergraph,
    parse_hypergraph,
    verify_simplex,
)


@dataclass(frozen=True)
class ReductionInstance:
    """n rank-r input hypergraphs on shared vertex set B = [n], labeled by A."""

    n: int
    r: int
    inputs: tuple[tuple[int, Hypergraph], ...]  # (label v, G_v), labels distinct in [n]

    def __post_init__(self):
        if self.n % (self.r + 1) != 0:
            raise HypergraphError(f"n={self.n} must be divisible by r+1={self.r + 1}")
        if self.n <= self.r:
            raise HypergraphError("need n > r")
        seen = set()
        for v, g in self.inputs:
            if not (1 <= v <= self.n) or v in seen:
                raise HypergraphError(f"bad or duplicate label {v}")
            seen.add(v)
            if g.n != self.n or g.r != self.r:
                raise HypergraphError(
                    f"input G_{v} has (n, r)=({g.n}, {g.r}), expected ({self.n}, {self.r})"
                )

    @staticmethod
    def from_map(n: int, r: int, inputs: Mapping[int, Hypergraph]) -> "ReductionInstance":
        return ReductionInstance(n, r, tuple(sorted(inputs.items())))


Partition = tuple[frozenset[int], ...]


def sample_partition(n: int, r: int, rng: random.Random) -> Partition:
    """Uniform equal (r+1)-partition of [n]: seeded shuffle then chunking."""
    block = n // (r + 1)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    return tuple(
        frozenset(order[i * block : (i + 1) * block]) for i in range(r + 1)
    )


def _check_partition(partition: Partition, n: int, r: int) -> None:
    block = n // (r + 1)
    if len(partition) != r + 1:
        raise HypergraphError(f"partition must have {r + 1} blocks")
    union: set[int] = set()
    for b in partition:
        if len(b) != block:
            raise HypergraphError("partition blocks must have equal size n/(r+1)")
        union |= b
    if union != set(range(1, n + 1)):
        raise HypergraphError("partition must cover [n] exactly")


@dataclass(frozen=True)
class CombinedHypergraph:
    """Rank-(r+1) hypergraph on [2n] with stored type-1 and implicit type-2 edges."""

    graph: Hypergraph
    n: int
    r: int
    partition: Partition

    def label_of(self, combined_vertex: int) -> int:
        return combined_vertex - self.n

    def decode(self, simplex: Simplex) -> tuple[int, tuple[int, ...]]:
        """Split an (r+2)-vertex simplex into (label v, r-simplex vertices in B)."""
        a_side = [v for v in simplex.vertices if v > self.n]
        if len(a_side) != 1:
            raise HypergraphError(f"simplex {simplex.vertices} has {len(a_side)} A-vertices")
        b_side = tuple(v for v in simplex.vertices if v <= self.n)
        return self.label_of(a_side[0]), b_side


def build_reduction(
    instance: ReductionInstance,
    partition: Optional[Partition] = None,
    seed: Optional[int] = None,
) -> CombinedHypergraph:
    """Combine the instance into one rank-(r+1) hypergraph; costs zero queries.

    Pass an explicit partition, or a seed from which a uniform equal partition
    is drawn.
    """
    n, r = instance.n, instance.r
    if partition is None:
        if seed is None:
            raise HypergraphError("need a partition or a seed to draw one")
        partition = sample_partition(n, r, random.Random(seed))
    _check_partition(partition, n, r)

    type1 = set()
    for v, g in instance.inputs:
        for e in g.edges:
            if any(w > n for w in e):
                raise HypergraphError(f"G_{v} edge {e} leaves B=[{n}]")
            type1.add(tuple(sorted(e + (n + v,))))

    block_of = {}
    for idx, b in enumerate(partition):
        for w in b:
            block_of[w] = idx

    def type2(edge: tuple[int, ...]) -> bool:
        if any(w > n for w in edge):
            return False
        blocks = {block_of[w] for w in edge}
        return len(blocks) == len(edge)

    combined = Hypergraph(2 * n, r + 1, frozenset(type1), type2)
    return CombinedHypergraph(combined, n, r, partition)


def success_probability(n: int, r: int) -> Fraction:
    """Exact probability that r+1 fixed vertices fall in distinct equal blocks.

    Product form: prod_{i=1..r} ((r+1-i)/(r+1)) * (n/(n-i)).  Requires
    (r+1) | n and n > r; r = 0 gives the empty product 1.
    """
    if r == 0:
        return Fraction(1)
    if n % (r + 1) != 0:
        raise HypergraphError(f"n={n} not divisible by r+1={r + 1}")
    if n <= r:
        raise HypergraphError("need n > r")
    p = Fraction(1)
    for i in range(1, r + 1):
        p *= Fraction(r + 1 - i, r + 1) * Fraction(n, n - i)
    return p


def _find_witness(instance: ReductionInstance) -> Optional[tuple[int, Simplex]]:
    for v, g in instance.inputs:
        found = find_simplex(OracleView(g))
        if found is not None:
            return v, found
    return None


@dataclass(frozen=True)
class TrialReport:
    trials: int
    successes: int
    exact: Optional[Fraction]
    witness: Optional[tuple[int, tuple[int, ...]]]
    decode_failures: int

    @property
    def empirical_rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    def standard_error(self) -> float:
        if not self.trials or self.exact is None:
            return 0.0
        p = float(self.exact)
        return math.sqrt(p * (1.0 - p) / self.trials)

    def within_sigma(self, k: float = 3.0) -> bool:
        if self.exact is None or not self.trials:
            return False
        return abs(self.empirical_rate - float(self.exact)) <= k * self.standard_error()


def run_reduction_trials(instance: ReductionInstance, trials: int, seed: int) -> TrialReport:
    """Repeat the randomized reduction; verify every successful lift end to end.

    Each trial draws a fresh uniform equal partition.  Success means the
    witness simplex's vertices land in distinct blocks; the lifted
    (r+1)-simplex is then verified against the combined oracle and decoded
    back to (v, r-simplex), which is re-verified against G_v.
    """
    witness = _find_witness(instance)
    if witness is None:
        return TrialReport(trials, 0, None, None, 0)
    v_star, simplex = witness
    faces = simplex.faces()
    g_star = dict(instance.inputs)[v_star]
    rng = random.Random(seed)
    successes = 0
    decode_failures = 0
    for _ in range(trials):
        partition = sample_partition(instance.n, instance.r, rng)
        combined = build_reduction(instance, partition=partition)
        lifted = tuple(sorted(simplex.vertices + (instance.n + v_star,)))
        view = OracleView(combined.graph)
        if verify_simplex(view, lifted):
            successes += 1
            label, b_side = combined.decode(Simplex(lifted))
            ok = (
                label == v_star
                and b_side == simplex.vertices
                and all(g_star.has_edge(f) for f in faces)
            )
            if not ok:
                decode_failures += 1
    exact = success_probability(instance.n, instance.r)
    return TrialReport(trials, successes, exact, (v_star, simplex.vertices), decode_failures)


# --- multi-instance file format ---------------------------------------------
#
# Header "n r m", then m blocks: a line "v" followed by that G_v's edges in
# hypergraph text format (edges only), blocks separated by blank lines.

def format_instance(instance: ReductionInstance) -> str:
    chunks = [f"{instance.n} {instance.r} {len(instance.inputs)}"]
    for v, g in instance.inputs:
        block = [str(v)]
        block.extend(" ".join(str(w) for w in e) for e in g.iter_stored_edges())
        chunks.append("\n".join(block))
    return "\n\n".join(chunks) + "\n"


def parse_instance(text: str) -> ReductionInstance:
    lines = text.splitlines()
    idx = 0

    def next_content() -> Optional[tuple[int, str]]:
        nonlocal idx
        while idx < len(lines):
            line = lines[idx].strip()
            idx += 1
            if line and not line.startswith("#"):
                return idx, line
        return None

    head = next_content()
    if head is None:
        raise FormatError(1, "missing 'n r m' header")
    line_no, line = head
    fields = line.split()
    if len(fields) != 3:
        raise FormatError(line_no, "header must be 'n r m'")
    try:
        n, r, m = (int(f) for f in fields)
    except ValueError:
        raise FormatError(line_no, "non-integer header field")
    if r < 2:
        # single-integer lines would be ambiguous (label vs 1-edge)
        raise FormatError(line_no, "multi-instance format requires r >= 2")

    inputs: dict[int, Hypergraph] = {}
    current_label: Optional[int] = None
    current_edges: list[tuple[int, ...]] = []

    def flush(line_no: int) -> None:
        nonlocal current_label, current_edges
        if current_label is None:
            return
        if current_label in inputs:
            raise FormatError(line_no, f"duplicate block for label {current_label}")
        inputs[current_label] = Hypergraph.from_edges(n, r, current_edges)
        current_label, current_edges = None, []

    while True:
        item = next_content()
        if item is None:
            break
        line_no, line = item
        fields = line.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise FormatError(line_no, f"non-integer field in {line!r}")
        if len(values) == 1:
            flush(line_no)
            current_label = values[0]
        elif current_label is None:
            raise FormatError(line_no, "edge line before any label line")
        elif len(values) == r:
            current_edges.append(tuple(values))
        else:
            raise FormatError(line_no, f"expected a label or {r} vertex ids")
    flush(len(lines))
    if len(inputs) != m:
        raise FormatError(len(lines), f"expected {m} blocks, found {len(inputs)}")
    try:
        return ReductionInstance.from_map(n, r, inputs)
    except HypergraphError as exc:
        raise FormatError(1, str(exc))
