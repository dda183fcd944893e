"""Degree sequences, their summary statistics, and labelled pattern graphs.

A degree sequence d = (d_1, ..., d_n) determines the uniform random graph
model over all simple labelled graphs realizing it.  The four statistics

    mean_degree = (1/n) * sum(d_j)
    density     = mean_degree / (n - 1)
    spread      = (1/n) * sum((d_j - mean_degree)**2)
    max_dev     = max_j |d_j - mean_degree|

drive every asymptotic formula in this package.  This module also holds
the Erdos-Gallai graphicality test, the validity-condition checker used
to judge whether a sequence is in the dense regime the formulas target,
and the shared file formats for degree sequences and pattern graphs.

Vertices are 0-based internally; the file formats are 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union


class ParseError(ValueError):
    """Malformed degree-sequence or graph file."""


@dataclass(frozen=True)
class DegreeSequence:
    """A sequence of vertex degrees, each in {0, ..., n-1}.

    The sum need not be even and the sequence need not be graphical;
    those are checked where they matter (`is_graphical`, the oracle).
    """

    degrees: tuple

    def __post_init__(self):
        degs = tuple(int(x) for x in self.degrees)
        object.__setattr__(self, "degrees", degs)
        n = len(degs)
        if n == 0:
            raise ValueError("degree sequence must be nonempty")
        for d in degs:
            if not 0 <= d <= n - 1:
                raise ValueError(f"degree {d} outside range 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return sum(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    def complement(self) -> "DegreeSequence":
        """Degree sequence of the complement graph: d_j -> n-1-d_j."""
        n = self.n
        return DegreeSequence(tuple(n - 1 - d for d in self.degrees))


DegreeLike = Union[DegreeSequence, Sequence[int]]


def as_degrees(d: DegreeLike) -> DegreeSequence:
    if isinstance(d, DegreeSequence):
        return d
    return DegreeSequence(tuple(d))


@dataclass(frozen=True)
class DegreeStats:
    """Summary statistics of a degree sequence."""

    n: int
    mean_degree: float
    density: float    # mean_degree / (n - 1)
    spread: float     # mean square deviation from the mean
    max_dev: float    # infinity norm of the deviations

    @property
    def is_regular(self) -> bool:
        return self.max_dev == 0.0


def compute_stats(d: DegreeLike) -> DegreeStats:
    """Compute (n, mean, density, spread, max deviation) for a sequence.

    Sums are accumulated with compensated summation (math.fsum) so the
    statistics stay accurate when n is large and degrees are O(n).
    """
    d = as_degrees(d)
    n = d.n
    if n < 2:
        raise ValueError("need at least two vertices")
    mean = math.fsum(d) / n
    density = mean / (n - 1)
    spread = math.fsum((x - mean) ** 2 for x in d) / n
    max_dev = max(abs(x - mean) for x in d)
    return DegreeStats(n=n, mean_degree=mean, density=density,
                       spread=spread, max_dev=max_dev)


def exact_density(d: DegreeLike) -> Fraction:
    """Density as an exact rational, for oracle comparisons."""
    d = as_degrees(d)
    if d.n < 2:
        raise ValueError("need at least two vertices")
    return Fraction(d.total, d.n * (d.n - 1))


def is_graphical(d: DegreeLike) -> bool:
    """Whether some simple graph realizes the sequence (Erdos-Gallai).

    An odd degree sum returns False rather than raising.  The input is
    never mutated; a sorted copy is used internally.
    """
    d = as_degrees(d)
    if d.total % 2 == 1:
        return False
    degs = sorted(d, reverse=True)
    n = len(degs)
    prefix = 0
    for k in range(1, n + 1):
        prefix += degs[k - 1]
        tail = sum(min(x, k) for x in degs[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


@dataclass(frozen=True)
class PatternGraph:
    """A labelled simple graph on vertices {0, ..., vertex_count-1}.

    Serves both as a spanning pattern (isolated vertices allowed and
    meaningful) and as a small induced pattern on its own vertex set.
    """

    vertex_count: int
    edges: frozenset

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError("loops are not allowed")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge {e} outside vertex range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, vertex_count: int, pairs: Iterable) -> "PatternGraph":
        return cls(vertex_count=vertex_count, edges=frozenset(tuple(p) for p in pairs))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def degree_sequence(self) -> tuple:
        degs = [0] * self.vertex_count
        for u, v in self.edges:
            degs[u] += 1
            degs[v] += 1
        return tuple(degs)

    def adjacency(self) -> list:
        """Adjacency sets, index -> set of neighbours."""
        adj = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def nonisolated_vertices(self) -> tuple:
        seen = set()
        for u, v in self.edges:
            seen.add(u)
            seen.add(v)
        return tuple(sorted(seen))

    def is_regular(self, h: int | None = None) -> bool:
        degs = self.degree_sequence
        if not degs:
            return True
        if h is None:
            h = degs[0]
        return all(x == h for x in degs)

    def complement(self) -> "PatternGraph":
        n = self.vertex_count
        comp = {(u, v) for u in range(n) for v in range(u + 1, n)} - set(self.edges)
        return PatternGraph.from_edges(n, comp)

    def relabel(self, mapping: Sequence[int]) -> "PatternGraph":
        """Image under vertex map j -> mapping[j] (must be injective)."""
        return PatternGraph.from_edges(
            self.vertex_count, ((mapping[u], mapping[v]) for u, v in self.edges))


@dataclass(frozen=True)
class AssumptionReport:
    """Raw validity ratios for the dense-regime conditions.

    The regime conditions involve non-constructive constants, so raw
    real-valued ratios are reported alongside conventional flags; the
    caller judges thresholds.  `deviation_ratio` is max_dev / n**(1/2+eps)
    and `degree_ratio` is min(mean, n-1-mean) * (3*a*log n) / n, so the
    minimum-degree condition reads degree_ratio >= 1.
    """

    n: int
    a: float
    eps: float
    deviation_ratio: float
    deviation_ok: bool
    degree_ratio: float
    degree_ok: bool
    subgraph_ratio: float | None = None
    induced_ratio: float | None = None
    diagnostics: dict = field(default_factory=dict)


def check_assumptions(d: DegreeLike, a: float = 0.25, eps: float = 0.05,
                      pattern: PatternGraph | None = None,
                      induced_pattern: PatternGraph | None = None) -> AssumptionReport:
    """Evaluate the dense-regime conditions for a degree sequence.

    Optionally evaluates the pattern-dependent applicability ratios:
    max_dev**3 * mu3 / (density**3 * n**2) for a spanning pattern, and
    max_dev**3/(density**3*(1-density)**3*n**3) * sum |h_j - density*(r-1)|**3
    for an induced pattern.
    """
    if not 0 < a < 0.5:
        raise ValueError("a must lie in (0, 1/2)")
    if eps <= 0:
        raise ValueError("eps must be positive")
    d = as_degrees(d)
    stats = compute_stats(d)
    n = stats.n
    lam = stats.density

    deviation_ratio = stats.max_dev / n ** (0.5 + eps)
    floor = min(stats.mean_degree, n - stats.mean_degree - 1)
    degree_ratio = floor * (3.0 * a * math.log(n)) / n if n > 1 else 0.0

    subgraph_ratio = None
    if pattern is not None:
        mu3 = math.fsum(h ** 3 for h in pattern.degree_sequence) / pattern.vertex_count
        subgraph_ratio = stats.max_dev ** 3 * mu3 / (lam ** 3 * n ** 2) if lam > 0 else math.inf

    induced_ratio = None
    if induced_pattern is not None:
        r = induced_pattern.vertex_count
        if 0 < lam < 1:
            s = math.fsum(abs(h - lam * (r - 1)) ** 3
                          for h in induced_pattern.degree_sequence)
            induced_ratio = stats.max_dev ** 3 * s / (lam ** 3 * (1 - lam) ** 3 * n ** 3)
        else:
            induced_ratio = math.inf

    return AssumptionReport(
        n=n, a=a, eps=eps,
        deviation_ratio=deviation_ratio,
        deviation_ok=deviation_ratio <= 1.0,
        degree_ratio=degree_ratio,
        degree_ok=degree_ratio >= 1.0,
        subgraph_ratio=subgraph_ratio,
        induced_ratio=induced_ratio,
    )


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def parse_degree_text(text: str) -> DegreeSequence:
    """Whitespace-separated decimal integers; `#` starts a comment line."""
    values = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        for tok in line.split():
            try:
                values.append(int(tok))
            except ValueError as exc:
                raise ParseError(f"bad degree token {tok!r}") from exc
    if not values:
        raise ParseError("no degrees found")
    try:
        return DegreeSequence(tuple(values))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def read_degree_file(path) -> DegreeSequence:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_degree_text(fh.read())


def parse_graph_text(text: str) -> PatternGraph:
    """Graph file: first line ``n <count>``, then one 1-indexed ``u v`` per line."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty graph file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise ParseError("first line must be 'n <count>'")
    try:
        n = int(head[1])
    except ValueError as exc:
        raise ParseError("bad vertex count") from exc
    if n < 0:
        raise ParseError("vertex count must be nonnegative")
    edges = []
    for line in lines[1:]:
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"bad edge line {line!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError as exc:
            raise ParseError(f"bad edge line {line!r}") from exc
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"edge ({u}, {v}) outside 1..{n}")
        if u == v:
            raise ParseError(f"loop at vertex {u}")
        edges.append((u - 1, v - 1))
    try:
        return PatternGraph.from_edges(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def read_graph_file(path) -> PatternGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def format_graph(g: PatternGraph) -> str:
    lines = [f"n {g.vertex_count}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"
