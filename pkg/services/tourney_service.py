"""Tournament encoding, exact largest transitive subtournaments and the E'(T) compression.

E(T) holds one bit per pair {i, j}, i < j, in the order (1,2),(1,3),...,(1,n),
(2,3),...; the bit is 1 iff (i, j) is in T, i.e. j dominates i. E'(T) prefixes
the nodes of a transitive subtournament S in order of dominance (each label
ceil(log2 n) bits wide) and drops every bit for a pair inside S.
"""
from __future__ import annotations

import logging
import math
from itertools import combinations
from typing import List, Sequence, Union

import numpy as np

from clients.worker_pool import map_ordered
from core.errors import LengthMismatchError, NonTransitiveWitnessError
from models import CompressedTournament, SampleCheckReport, Tournament, TransitiveWitness

logger = logging.getLogger(__name__)

MAX_EXACT_NODES = 12
WILSON_Z = 1.959964


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def label_width(n: int) -> int:
    """ceil(log2 n)."""
    return (n - 1).bit_length()


def encode(tournament: Tournament) -> str:
    return tournament.orientation


def decode(bits: str, n: int) -> Tournament:
    if len(bits) != pair_count(n):
        raise LengthMismatchError(f"{len(bits)} bits cannot encode a tournament on {n} nodes")
    return Tournament(n=n, orientation=bits)


def random_tournament(n: int, rng: np.random.Generator) -> Tournament:
    bits = rng.integers(0, 2, size=pair_count(n), dtype=np.uint8)
    return Tournament(n=n, orientation="".join("1" if bit else "0" for bit in bits))


def transitive_tournament(n: int) -> Tournament:
    """All edges low to high: node n dominates everything."""
    return Tournament(n=n, orientation="1" * pair_count(n))


def is_transitive_order(tournament: Tournament, nodes: Sequence[int]) -> bool:
    """True when every later node of ``nodes`` dominates every earlier one."""
    return all(
        tournament.has_edge(nodes[a], nodes[b]) for a in range(len(nodes)) for b in range(a + 1, len(nodes))
    )


def dominance_order(tournament: Tournament, nodes: Sequence[int]) -> List[int]:
    """Sort a node set by wins inside the set; for a transitive set this is its dominance order."""
    members = list(nodes)

    def wins(u: int) -> int:
        return sum(1 for w in members if w != u and tournament.has_edge(w, u))

    return sorted(members, key=lambda u: (wins(u), u))


def _is_transitive_set(tournament: Tournament, nodes: Sequence[int]) -> bool:
    return is_transitive_order(tournament, dominance_order(tournament, nodes))


def _max_transitive_size(tournament: Tournament) -> int:
    """Branch and bound over chains built from the most dominated node upward."""
    n = tournament.n
    # dominators[u]: bitmask of nodes w with (u, w) in T
    dominators = [0] * (n + 1)
    for u in range(1, n + 1):
        for w in range(1, n + 1):
            if tournament.has_edge(u, w):
                dominators[u] |= 1 << w

    best = 0

    def search(candidates: int, size: int) -> None:
        nonlocal best
        best = max(best, size)
        if size + bin(candidates).count("1") <= best:
            return
        members = [u for u in range(1, n + 1) if candidates >> u & 1]
        members.sort(key=lambda u: -bin(candidates & dominators[u]).count("1"))
        for u in members:
            search(candidates & dominators[u], size + 1)

    search(sum(1 << u for u in range(1, n + 1)), 0)
    return best


def largest_transitive(tournament: Tournament) -> TransitiveWitness:
    """A maximum transitive subtournament; among those, the lexicographically least node set."""
    if tournament.n > MAX_EXACT_NODES:
        raise ValueError(f"exact search supports n <= {MAX_EXACT_NODES}, got {tournament.n}")
    size = _max_transitive_size(tournament)
    for nodes in combinations(range(1, tournament.n + 1), size):
        if _is_transitive_set(tournament, nodes):
            return TransitiveWitness(nodes=dominance_order(tournament, nodes))
    raise AssertionError("branch and bound reported a size no subset attains")


def compress_with_witness(
    tournament: Tournament, witness: Union[TransitiveWitness, Sequence[int]]
) -> CompressedTournament:
    nodes = list(witness.nodes if isinstance(witness, TransitiveWitness) else witness)
    n = tournament.n
    if len(set(nodes)) != len(nodes) or any(not 1 <= u <= n for u in nodes):
        raise NonTransitiveWitnessError(f"witness {nodes} is not a set of nodes of 1..{n}")
    if not is_transitive_order(tournament, nodes):
        raise NonTransitiveWitnessError(f"witness {nodes} is not transitive in dominance order")

    width = label_width(n)
    members = set(nodes)
    labels = "".join(format(u - 1, f"0{width}b") for u in nodes) if width else ""
    kept = "".join(
        tournament.orientation[tournament.pair_index(i, j)]
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if not (i in members and j in members)
    )
    return CompressedTournament(bits=labels + kept, n=n, v=len(nodes))


def savings(n: int, v: int) -> float:
    """l(E) - l(E'): (v / 2)(v - 1 - 2 ceil(log2 n))."""
    return v * (v - 1 - 2 * label_width(n)) / 2


def reconstruct(compressed: CompressedTournament) -> Tournament:
    n, v = compressed.n, compressed.v
    width = label_width(n)
    expected = v * width + pair_count(n) - pair_count(v)
    if len(compressed.bits) != expected:
        raise LengthMismatchError(f"E' has {len(compressed.bits)} bits, expected {expected} for n={n}, v={v}")

    labels = compressed.bits[: v * width]
    nodes = [int(labels[k * width : (k + 1) * width], 2) + 1 if width else 1 for k in range(v)]
    if len(set(nodes)) != v or any(u > n for u in nodes):
        raise NonTransitiveWitnessError(f"decoded node list {nodes} is not a node set of 1..{n}")
    rank = {u: position for position, u in enumerate(nodes)}

    rest = iter(compressed.bits[v * width :])
    orientation = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if i in rank and j in rank:
                orientation.append("1" if rank[j] > rank[i] else "0")
            else:
                orientation.append(next(rest))
    return Tournament(n=n, orientation="".join(orientation))


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z) -> tuple:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = successes / trials
    denominator = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denominator
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denominator
    return max(center - half, 0.0), min(center + half, 1.0)


def sample_and_check(n: int, trials: int, seed: int = 0) -> SampleCheckReport:
    """Fraction of random tournaments whose largest transitive subtournament has v <= 1 + 2 ceil(2 log2 n)."""
    if n > MAX_EXACT_NODES:
        raise ValueError(f"exact search supports n <= {MAX_EXACT_NODES}, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    tournaments = [random_tournament(n, rng) for _ in range(trials)]
    sizes = [witness.size for witness in map_ordered(largest_transitive, tournaments)]

    bound = 1 + 2 * (n * n - 1).bit_length()
    theorem_bound = (n * n).bit_length()
    hits = sum(1 for v in sizes if v <= bound)
    low, high = wilson_interval(hits, trials)
    report = SampleCheckReport(
        n=n,
        trials=trials,
        seed=seed,
        bound=bound,
        fraction=hits / trials,
        ci_low=low,
        ci_high=high,
        theorem_bound=theorem_bound,
        theorem_fraction=sum(1 for v in sizes if v <= theorem_bound) / trials,
        target=1 - 1 / n,
    )
    logger.info(
        f"Tournaments n={n}: {hits}/{trials} with v <= {bound}, "
        f"{report.theorem_fraction:.3f} with v <= {theorem_bound}"
    )
    return report
