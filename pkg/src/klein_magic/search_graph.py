"""Search graphs on complementary label pairs, and the labelings they encode.

For odd m every magic labeling is balanced, so row 1 determines a sequence
``a_j = x[1, j] + x[1, j + 1]`` for ``j < n/2`` and each row's left half (odd
rows) or right half read backwards (even rows) is a walk whose consecutive
labels sum to ``a_1, a_2, ...``.  Identifying each label ``q`` with its
complement ``mn + 1 - q`` turns the m rows into a partition of the pair
vertices into m paths.  Conversely, every such partition together with a row
order gives back magic labelings.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Mapping, Sequence

from klein_magic.grid import GridDims, GridError
from klein_magic.labeling import Labeling, row_pair_sums, verify

__all__ = [
    "AdmissiblePath",
    "EndLabelSet",
    "PartitionError",
    "PathPartition",
    "SearchEdge",
    "SearchGraph",
    "admissible_path_partitions",
    "admissible_paths",
    "build",
    "end_label_sets",
    "equivalent_sequences",
    "is_palindrome",
    "labeling_graph",
    "labelings_from_partition",
    "pair_of",
    "path_from_start",
    "path_partition_equivalent",
    "sequence_class_key",
    "standard_labeling",
]


class PartitionError(ValueError):
    """Paths that do not form an admissible partition of the pair vertices."""


def is_palindrome(seq: Sequence[int]) -> bool:
    return tuple(seq) == tuple(reversed(seq))


def pair_of(dims: GridDims, z: int) -> int:
    """The pair vertex ``{q, mn + 1 - q}`` holding label ``z``, keyed by ``q``."""
    return min(z, dims.half - z)


@dataclass(frozen=True)
class SearchEdge:
    neighbor: int
    label: int
    z: int
    w: int


@dataclass(frozen=True)
class SearchGraph:
    """``adjacency[q]`` lists edges out of pair ``q``: ``z + w == label``."""

    dims: GridDims
    seq: tuple[int, ...]
    adjacency: Mapping[int, tuple[SearchEdge, ...]]

    @property
    def vertices(self) -> range:
        return range(1, self.dims.cells // 2 + 1)

    def edges(self) -> list[tuple[int, int, int]]:
        """Undirected edges as ``(q, p, label)`` with ``q < p``, sorted."""
        return sorted({(q, e.neighbor, e.label) for q, es in self.adjacency.items() for e in es if q < e.neighbor})

    def degree(self, q: int) -> int:
        return len(self.adjacency[q])


def build(dims: GridDims, seq: Sequence[int]) -> SearchGraph:
    """Search graph for ``seq``; no loops, one edge per distinct realising label."""
    dims.require_even_n()
    seq = tuple(seq)
    if len(seq) != dims.n0:
        raise GridError(f"sequence length {len(seq)} does not match n/2 - 1 = {dims.n0}")
    if not seq:
        raise GridError("empty sum sequence")
    mn, half = dims.cells, dims.half
    adjacency: dict[int, tuple[SearchEdge, ...]] = {}
    for q in range(1, mn // 2 + 1):
        out = []
        for label in sorted(set(seq)):
            for z in (q, half - q):
                w = label - z
                if 1 <= w <= mn and pair_of(dims, w) != q:
                    out.append(SearchEdge(pair_of(dims, w), label, z, w))
        adjacency[q] = tuple(sorted(out, key=lambda e: (e.neighbor, e.label, e.z)))
    return SearchGraph(dims, seq, adjacency)


@dataclass(frozen=True, order=True)
class AdmissiblePath:
    """Labels ``z_1..z_{n/2}`` with ``z_j + z_{j+1} = a_j``, on distinct pairs."""

    labels: tuple[int, ...]
    vertices: tuple[int, ...]

    @classmethod
    def from_labels(cls, dims: GridDims, labels: Sequence[int]) -> AdmissiblePath:
        labels = tuple(labels)
        return cls(labels, tuple(pair_of(dims, z) for z in labels))

    def reversed(self) -> AdmissiblePath:
        return AdmissiblePath(self.labels[::-1], self.vertices[::-1])


def path_from_start(dims: GridDims, seq: Sequence[int], z1: int) -> AdmissiblePath | None:
    """The unique walk starting at label ``z1``, if it stays admissible."""
    mn = dims.cells
    labels = [z1]
    seen = {pair_of(dims, z1)}
    z = z1
    for a in seq:
        z = a - z
        if not 1 <= z <= mn:
            return None
        p = pair_of(dims, z)
        if p in seen:
            return None
        seen.add(p)
        labels.append(z)
    return AdmissiblePath.from_labels(dims, labels)


def admissible_paths(g: SearchGraph) -> list[AdmissiblePath]:
    """Every admissible path, read in the direction of ``seq``.

    For a palindromic sequence both readings of a path are admissible; only
    the one starting at its smaller end label is kept.
    """
    pal = is_palindrome(g.seq)
    out = []
    for z1 in range(1, g.dims.cells + 1):
        path = path_from_start(g.dims, g.seq, z1)
        if path is None:
            continue
        if pal and path.labels[0] > path.labels[-1]:
            continue
        out.append(path)
    return out


@dataclass(frozen=True)
class PathPartition:
    """m admissible paths covering every pair vertex exactly once.

    Paths are stored sorted by labels, so equality is equality of path sets.
    """

    dims: GridDims
    seq: tuple[int, ...]
    paths: tuple[AdmissiblePath, ...]

    def __post_init__(self) -> None:
        dims, seq = self.dims, tuple(self.seq)
        object.__setattr__(self, "seq", seq)
        pal = is_palindrome(seq)
        paths = []
        for p in self.paths:
            if not isinstance(p, AdmissiblePath):
                p = AdmissiblePath.from_labels(dims, p)
            if pal and p.labels[0] > p.labels[-1]:
                p = p.reversed()
            paths.append(p)
        object.__setattr__(self, "paths", tuple(sorted(paths)))
        self._check()

    def _check(self) -> None:
        dims = self.dims
        if len(self.paths) != dims.m:
            raise PartitionError(f"need {dims.m} paths, got {len(self.paths)}")
        covered: list[int] = []
        for p in self.paths:
            if len(p.labels) != dims.n1:
                raise PartitionError(f"path {p.labels} does not have n/2 = {dims.n1} vertices")
            if any(not 1 <= z <= dims.cells for z in p.labels):
                raise PartitionError(f"path {p.labels} has labels outside 1..{dims.cells}")
            for j, a in enumerate(self.seq):
                if p.labels[j] + p.labels[j + 1] != a:
                    raise PartitionError(f"path {p.labels} breaks sum a_{j + 1} = {a}")
            if len(set(p.vertices)) != len(p.vertices):
                raise PartitionError(f"path {p.labels} revisits a pair vertex")
            covered.extend(p.vertices)
        if sorted(covered) != list(range(1, dims.cells // 2 + 1)):
            raise PartitionError("paths do not cover each pair vertex exactly once")

    @property
    def is_palindromic(self) -> bool:
        return is_palindrome(self.seq)

    @property
    def label_sequences(self) -> list[list[int]]:
        return [list(p.labels) for p in self.paths]


def admissible_path_partitions(g: SearchGraph) -> Iterator[PathPartition]:
    """All admissible path partitions, by exact cover over pair vertices.

    Branches on the least uncovered vertex, trying every path through it.
    """
    dims = g.dims
    paths = admissible_paths(g)
    through: dict[int, list[AdmissiblePath]] = defaultdict(list)
    for p in paths:
        for v in p.vertices:
            through[v].append(p)
    nverts = dims.cells // 2
    covered = [False] * (nverts + 1)
    chosen: list[AdmissiblePath] = []

    def search(start: int) -> Iterator[PathPartition]:
        v = start
        while v <= nverts and covered[v]:
            v += 1
        if v > nverts:
            yield PathPartition(dims, g.seq, tuple(chosen))
            return
        for p in through.get(v, ()):
            if any(covered[w] for w in p.vertices):
                continue
            for w in p.vertices:
                covered[w] = True
            chosen.append(p)
            yield from search(v + 1)
            chosen.pop()
            for w in p.vertices:
                covered[w] = False

    yield from search(1)


@dataclass(frozen=True)
class EndLabelSet:
    """End labels of each path as ``(first, last)``, sorted by first label.

    Without a palindrome only the first labels matter (the set T).  With one,
    each pair is an unordered pair of ends with the smaller listed first.
    """

    ends: tuple[tuple[int, int], ...]
    palindromic: bool

    @property
    def starts(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.ends)


def end_label_sets(k: PathPartition) -> EndLabelSet:
    return EndLabelSet(tuple((p.labels[0], p.labels[-1]) for p in k.paths), k.is_palindromic)


def _check_permutation(alpha: Sequence[int], m: int) -> tuple[int, ...]:
    alpha = tuple(alpha)
    if sorted(alpha) != list(range(1, m + 1)):
        raise ValueError(f"alpha {alpha} is not a permutation of 1..{m}")
    return alpha


def standard_labeling(
    k: PathPartition, alpha: Sequence[int], rho: Sequence[int] | None = None
) -> Labeling:
    """Rebuild the magic labeling that lays path ``alpha(i)`` into slot ``i``.

    Slots ``1..(m+1)/2`` fill odd rows left to right; the remaining slots fill
    even rows right to left.  ``rho(i) = 2`` lays the path in reverse, which
    is only meaningful (and required) for a palindromic sequence.
    """
    dims = k.dims
    dims.require_odd_m()
    m, n, half = dims.m, dims.n, dims.half
    alpha = _check_permutation(alpha, m)
    if k.is_palindromic:
        if rho is None:
            raise ValueError("a palindromic sequence needs an orientation map rho")
        rho = tuple(rho)
        if len(rho) != m or any(r not in (1, 2) for r in rho):
            raise ValueError(f"rho {rho} must give 1 or 2 for each of the {m} slots")
    elif rho is not None:
        raise ValueError("rho only applies to palindromic sequences")
    else:
        rho = (1,) * m

    paths = k.paths
    grid = [[0] * n for _ in range(m)]
    m_plus = dims.half_m_plus
    for slot in range(1, m + 1):
        labels = paths[alpha[slot - 1] - 1].labels
        if rho[slot - 1] == 2:
            labels = labels[::-1]
        if slot <= m_plus:
            row = grid[2 * slot - 2]
            for j, z in enumerate(labels, start=1):
                row[j - 1] = z
                row[n - j] = half - z
        else:
            row = grid[2 * (slot - m_plus) - 1]
            for j, z in enumerate(labels, start=1):
                row[n - j] = z
                row[j - 1] = half - z
    x = Labeling.from_rows(grid)
    if not verify(x).is_magic:
        raise PartitionError("partition did not produce a magic labeling")
    return x


def labeling_graph(x: Labeling) -> tuple[tuple[int, ...], PathPartition]:
    """Sum sequence and path partition read off a magic labeling with odd m."""
    dims = x.dims
    dims.require_odd_m()
    dims.require_even_n()
    if not verify(x).is_magic:
        raise ValueError("labeling is not face-magic")
    n, n1 = dims.n, dims.n1
    seq = row_pair_sums(x)
    paths = []
    for i in range(1, dims.m + 1):
        if i % 2:
            labels = [x[i, j] for j in range(1, n1 + 1)]
        else:
            labels = [x[i, n + 1 - j] for j in range(1, n1 + 1)]
        paths.append(AdmissiblePath.from_labels(dims, labels))
    return seq, PathPartition(dims, seq, tuple(paths))


def labelings_from_partition(k: PathPartition) -> Iterator[Labeling]:
    """Standard labelings with ``alpha(1) = 1`` (and ``rho(1) = 1``)."""
    m = k.dims.m
    for rest in permutations(range(2, m + 1)):
        alpha = (1, *rest)
        if k.is_palindromic:
            for tail in product((1, 2), repeat=m - 1):
                yield standard_labeling(k, alpha, (1, *tail))
        else:
            yield standard_labeling(k, alpha)


def equivalent_sequences(dims: GridDims, seq: Sequence[int]) -> set[tuple[int, ...]]:
    """Sequences whose partitions correspond to those of ``seq`` under symmetry."""
    s = dims.magic
    a = tuple(seq)
    comp = tuple(s - v for v in a)
    if is_palindrome(a):
        return {a, comp}
    return {a, a[::-1], comp, comp[::-1]}


def path_partition_equivalent(dims: GridDims, seq_a: Sequence[int], seq_b: Sequence[int]) -> bool:
    return tuple(seq_b) in equivalent_sequences(dims, seq_a)


def sequence_class_key(dims: GridDims, seq: Sequence[int]) -> tuple[int, ...]:
    """Least member of the symmetry class of ``seq``."""
    return min(equivalent_sequences(dims, seq))
