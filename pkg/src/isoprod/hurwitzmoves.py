"""Braid moves on genus-0 generating vectors and orbit enumeration.

The braid generator sigma_i acts on a branch tuple by

    (g_i, g_{i+1})  ->  (g_i g_{i+1} g_i^-1, g_i)

with inverse (g_i, g_{i+1}) -> (g_{i+1}, g_{i+1}^-1 g_i g_{i+1}).  Two vectors
define coverings in the same connected family exactly when they are related
by a chain of these moves together with group automorphisms applied
entrywise.  Orbits are computed by breadth-first closure; the sphere relation
among the braid generators is automatic on this action and is checked as a
test property rather than imposed as an extra move.

Genus >= 1 bases are deliberately unsupported here: the mapping-class moves
mixing branch loops with handles are never needed (genus-1 sides are
classified under automorphisms only), so we do not invent them.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .genvec import GeneratingVector
from .smallgroups import Automorphism

DEFAULT_ORBIT_CAP = 10 ** 6


class OrbitError(ValueError):
    """Raised for unsupported moves, blown caps, or open-world input sets."""


def braid_act(v: GeneratingVector, i: int, inverse: bool = False) -> GeneratingVector:
    """Apply the braid generator at slot ``i`` (0-based, acting on positions i, i+1)."""
    if v.signature.base_genus != 0:
        raise OrbitError("braid moves are only defined over a genus-0 base")
    r = v.signature.r
    if not 0 <= i <= r - 2:
        raise OrbitError(f"braid index {i} out of range for {r} branch points")
    g = v.group
    a, b = v.branch[i], v.branch[i + 1]
    if g.element_order(a) != g.element_order(b):
        raise OrbitError("braid move across unequal branch orders is unsupported")
    if inverse:
        pair = (b, g.mul(g.inv(b), g.mul(a, b)))
    else:
        pair = (g.mul(a, g.mul(b, g.inv(a))), a)
    branch = v.branch[:i] + pair + v.branch[i + 2:]
    return GeneratingVector(g, v.signature, branch, v.handles)


def aut_act(v: GeneratingVector, a: Automorphism) -> GeneratingVector:
    """Apply a group automorphism entrywise; admissibility is preserved."""
    branch = tuple(a(x) for x in v.branch)
    handles = tuple(a(x) for x in v.handles)
    return GeneratingVector(v.group, v.signature, branch, handles)


@dataclass
class OrbitReport:
    """Partition of an input vector list into move-equivalence classes.

    ``orbit_sizes`` counts input vectors per class, so the sizes always sum
    to the input size even when the closure of an orbit leaves the input set.
    ``representatives`` are the lexicographic minima over the full closures,
    hence independent of input order and worker count.
    """

    orbit_count: int
    representatives: list[GeneratingVector]
    orbit_sizes: list[int]
    closure_sizes: list[int]
    move_log_available: bool
    aut_used: bool
    _move_log: dict | None = field(default=None, repr=False)

    def move_chain(self, v: GeneratingVector) -> list[str]:
        """Moves leading from the BFS root of v's orbit to v (if logging was on)."""
        if self._move_log is None:
            raise OrbitError("orbit enumeration ran without move logging")
        chain = []
        key = v.key()
        while True:
            parent = self._move_log.get(key)
            if parent is None:
                raise OrbitError("vector not seen during orbit enumeration")
            prev, move = parent
            if move is None:
                break
            chain.append(move)
            key = prev
        chain.reverse()
        return chain


def _neighbor_fn(group, auts):
    """Key-level move expansion: moves preserve admissibility, so the BFS works
    on bare (branch, handles) tuples and vectors are materialized only for the
    final representatives."""
    table = group.table
    inv = [group.inv(x) for x in group.elements()]
    order_of = [group.element_order(x) for x in group.elements()]
    aut_images = [a.images for a in auts]

    def neighbors(key):
        branch, handles = key
        out = []
        for i in range(len(branch) - 1):
            a, b = branch[i], branch[i + 1]
            if order_of[a] != order_of[b]:
                # positions keep their branch order; cross-order slots stay put
                continue
            fwd = branch[:i] + (table[table[a][b]][inv[a]], a) + branch[i + 2:]
            bwd = branch[:i] + (b, table[table[inv[b]][a]][b]) + branch[i + 2:]
            out.append(((fwd, handles), f"sigma{i}"))
            out.append(((bwd, handles), f"sigma{i}^-1"))
        for j, images in enumerate(aut_images):
            out.append(((tuple(images[x] for x in branch),
                         tuple(images[x] for x in handles)), f"aut{j}"))
        return out

    return neighbors


def hurwitz_orbits(vectors: list[GeneratingVector], use_aut: bool = True,
                   closed_world: bool = False, workers: int = 1,
                   orbit_cap: int = DEFAULT_ORBIT_CAP,
                   log_moves: bool = False) -> OrbitReport:
    """Group the input vectors into orbits under braid moves (and automorphisms).

    Each orbit is explored by BFS through its full closure (capped at
    ``orbit_cap`` vectors).  With ``closed_world`` set, reaching a vector
    outside the input set raises, signalling an incomplete enumeration
    upstream.  The report is deterministic for any worker count.
    """
    if not vectors:
        return OrbitReport(0, [], [], [], log_moves, use_aut,
                           _move_log={} if log_moves else None)
    group = vectors[0].group
    sig = vectors[0].signature
    for v in vectors:
        if v.group is not group and v.group != group:
            raise OrbitError("vectors must share one group")
        if v.signature != sig:
            raise OrbitError("vectors must share one signature")
    if sig.base_genus != 0:
        raise OrbitError("orbit enumeration requires a genus-0 base")
    auts = group.automorphisms() if use_aut else ()
    input_keys = {v.key() for v in vectors}
    by_key = {v.key(): v for v in vectors}
    expand_one = _neighbor_fn(group, auts)

    seen_global: set = set()
    reps, input_counts, closure_sizes = [], [], []
    move_log: dict | None = {} if log_moves else None

    def expand(batch: list[tuple]):
        return [(expand_one(key), key) for key in batch]

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for root in sorted(vectors, key=GeneratingVector.key):
            if root.key() in seen_global:
                continue
            orbit: set = {root.key()}
            if move_log is not None:
                move_log[root.key()] = (None, None)
            frontier = [root.key()]
            while frontier:
                if pool is not None and len(frontier) > 1:
                    chunk = max(1, len(frontier) // workers)
                    batches = [frontier[k:k + chunk] for k in range(0, len(frontier), chunk)]
                    results = [item for part in pool.map(expand, batches) for item in part]
                else:
                    results = expand(frontier)
                nxt = []
                for neighbors, src_key in results:
                    for key, move in neighbors:
                        if key in orbit:
                            continue
                        orbit.add(key)
                        if len(orbit) > orbit_cap:
                            raise OrbitError(f"orbit exceeds cap {orbit_cap}")
                        if move_log is not None:
                            move_log[key] = (src_key, move)
                        if closed_world and key not in input_keys:
                            raise OrbitError(
                                "move reached a vector outside the input set "
                                "(incomplete enumeration upstream)")
                        nxt.append(key)
                frontier = nxt
            seen_global |= orbit
            min_key = min(orbit)
            # materializing the representative re-validates admissibility
            reps.append(by_key.get(min_key)
                        or GeneratingVector(group, sig, min_key[0], min_key[1]))
            input_counts.append(sum(1 for k in orbit if k in input_keys))
            closure_sizes.append(len(orbit))
    finally:
        if pool is not None:
            pool.shutdown()

    order = sorted(range(len(reps)), key=lambda i: reps[i].key())
    return OrbitReport(
        orbit_count=len(reps),
        representatives=[reps[i] for i in order],
        orbit_sizes=[input_counts[i] for i in order],
        closure_sizes=[closure_sizes[i] for i in order],
        move_log_available=log_moves,
        aut_used=use_aut,
        _move_log=move_log,
    )
