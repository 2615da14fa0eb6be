"""Set partitions in restricted-growth-string form."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, StructuralError


class SetPartition:
    """A partition of an ordered ground set, stored as its RGS.

    ``rgs[i]`` is the block of ``ground[i]``; blocks are numbered in order
    of their smallest (first-listed) element.
    """

    def __init__(self, ground: Sequence, rgs: Sequence[int]) -> None:
        ground = tuple(ground)
        rgs = tuple(int(r) for r in rgs)
        if len(ground) != len(rgs):
            raise StructuralError("RGS length must match the ground set")
        top = -1
        for r in rgs:
            if r < 0 or r > top + 1:
                raise StructuralError(f"{rgs} is not a restricted growth string")
            top = max(top, r)
        self.ground = ground
        self.rgs = rgs

    @classmethod
    def from_blocks(cls, ground: Sequence, blocks: Iterable[Iterable]) -> "SetPartition":
        ground = tuple(ground)
        where = {}
        for b, block in enumerate(blocks):
            for x in block:
                if x in where:
                    raise StructuralError(f"element {x!r} appears in two blocks")
                where[x] = b
        if set(where) != set(ground):
            raise StructuralError("blocks do not cover the ground set exactly")
        relabel: dict[int, int] = {}
        rgs = []
        for x in ground:
            b = where[x]
            if b not in relabel:
                relabel[b] = len(relabel)
            rgs.append(relabel[b])
        return cls(ground, rgs)

    @classmethod
    def finest(cls, ground: Sequence) -> "SetPartition":
        return cls(ground, range(len(tuple(ground))))

    @classmethod
    def coarsest(cls, ground: Sequence) -> "SetPartition":
        ground = tuple(ground)
        return cls(ground, [0] * len(ground))

    @cached_property
    def blocks(self) -> tuple[tuple, ...]:
        out: list[list] = []
        for x, r in zip(self.ground, self.rgs):
            if r == len(out):
                out.append([])
            out[r].append(x)
        return tuple(tuple(b) for b in out)

    def __len__(self) -> int:
        """Number of blocks, |pi|."""
        return max(self.rgs) + 1 if self.rgs else 0

    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.ground == other.ground and self.rgs == other.rgs

    def __hash__(self) -> int:
        return hash((self.ground, self.rgs))

    def __lt__(self, other: "SetPartition") -> bool:
        return self.rgs < other.rgs

    def to_text(self) -> str:
        def key(x):
            return (0, int(x)) if str(x).isdigit() else (1, str(x))
        blocks = sorted((sorted(b, key=key) for b in self.blocks), key=lambda b: key(b[0]))
        return "{" + "|".join(",".join(str(x) for x in b) for b in blocks) + "}"

    __str__ = to_text

    def __repr__(self) -> str:
        return f"SetPartition({self.to_text()})"


def enumerate_partitions(ground: Sequence) -> Iterator[SetPartition]:
    """All partitions of ``ground`` in lexicographic RGS order."""
    ground = tuple(ground)
    n = len(ground)
    if n == 0:
        yield SetPartition((), ())
        return
    rgs = [0] * n
    maxes = [0] * n  # maxes[i] = max(rgs[:i+1])
    while True:
        yield SetPartition(ground, rgs)
        i = n - 1
        while i > 0 and rgs[i] > maxes[i - 1]:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        maxes[i] = max(maxes[i - 1], rgs[i])
        for k in range(i + 1, n):
            rgs[k] = 0
            maxes[k] = maxes[i]


def refines(sigma: SetPartition, pi: SetPartition) -> bool:
    """True iff every block of ``sigma`` lies inside a block of ``pi``."""
    if sigma.ground != pi.ground:
        raise StructuralError("partitions live on different ground sets")
    image: dict[int, int] = {}
    for s, p in zip(sigma.rgs, pi.rgs):
        if image.setdefault(s, p) != p:
            return False
    return True


def refinement_profile(sigma: SetPartition, pi: SetPartition) -> list[int]:
    """For sigma <= pi: how many sigma-blocks each pi-block contains."""
    counts: dict[int, set] = {}
    for s, p in zip(sigma.rgs, pi.rgs):
        counts.setdefault(p, set()).add(s)
    return [len(counts[p]) for p in sorted(counts)]


def stirling2(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise DomainError("Stirling numbers need n, k >= 0")
    row = [1]  # S(0, .)
    for m in range(1, n + 1):
        new = [0] * (m + 1)
        for j in range(1, m + 1):
            new[j] = j * (row[j] if j < len(row) else 0) + row[j - 1]
        row = new
    return row[k] if k < len(row) else 0


def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    row = [1]
    for _ in range(n):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
    return row[0]


def cross_edges(pi: SetPartition) -> int:
    n = len(pi.ground)
    return (n * n - sum(s * s for s in pi.block_sizes())) // 2


def components_partition(g, edge_set: Iterable[int]) -> SetPartition:
    """Partition of V(g) into the components of the spanning subgraph (V, A)."""
    from .graphs import component_labels

    labels = component_labels(g, edge_set)
    relabel: dict[int, int] = {}
    rgs = []
    for lab in labels:
        if lab not in relabel:
            relabel[lab] = len(relabel)
        rgs.append(relabel[lab])
    return SetPartition(g.vertices, rgs)
