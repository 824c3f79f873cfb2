"""Isomorphisms between separation systems.

An isomorphism is a bijection of oriented ids that commutes with the
involution and preserves the order in both directions.  Only relabelings
are ever generated here: they are produced with their witnessing map, and
they are exactly what the canonicity guarantee quantifies over in tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .orientations import Orientation, OrientationFamily
from .sepsys import SeparationSystem


@dataclass(frozen=True)
class SystemIsomorphism:
    """A bijective map between the oriented ids of two systems."""

    source: SeparationSystem
    target: SeparationSystem
    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def inverse(self) -> "SystemIsomorphism":
        back = [0] * len(self.mapping)
        for x, y in enumerate(self.mapping):
            back[y] = x
        return SystemIsomorphism(self.target, self.source, tuple(back))

    def image_unoriented(self, ids: Iterable[int]) -> tuple[int, ...]:
        """Image of a set of canonical unoriented ids, again canonical."""
        t_inv = self.target.inv
        out = set()
        for u in ids:
            y = self.mapping[u]
            out.add(min(y, t_inv[y]))
        return tuple(sorted(out))


def verify_iso(phi: SystemIsomorphism) -> tuple[bool, Optional[tuple]]:
    """Check both isomorphism laws exhaustively; the witness names the failure.

    The map must be a bijection onto the target's ids, must send inverses to
    inverses, and must satisfy ``r <= s`` iff ``phi(r) <= phi(s)`` for every
    pair.
    """
    src, dst, f = phi.source, phi.target, phi.mapping
    n = src.size
    if dst.size != n or sorted(f) != list(range(n)):
        return False, ("bijection",)
    for x in range(n):
        if f[src.inv[x]] != dst.inv[f[x]]:
            return False, ("involution", x)
    for a in range(n):
        for b in range(n):
            if bool(src.leq[a, b]) != bool(dst.leq[f[a], f[b]]):
                return False, ("order", a, b)
    return True, None


def apply_iso(phi: SystemIsomorphism, fam: OrientationFamily) -> OrientationFamily:
    """Image of a family under an isomorphism.

    Consistency of every member is preserved and re-checked by the family
    constructor on the target system.
    """
    members = [
        Orientation.from_chosen(phi.target, [phi.mapping[x] for x in o.chosen()])
        for o in fam.members
    ]
    return OrientationFamily(phi.target, members)


def relabel_system(sys: SeparationSystem,
                   perm: Sequence[int]) -> tuple[SeparationSystem, SystemIsomorphism]:
    """Transport a system along an explicit permutation of oriented ids."""
    target = sys.relabel(perm)
    return target, SystemIsomorphism(sys, target, tuple(perm))


def random_relabeling(sys: SeparationSystem,
                      seed: int) -> tuple[SeparationSystem, SystemIsomorphism]:
    """A seed-deterministic relabeled copy with the witnessing isomorphism."""
    perm = list(range(sys.size))
    random.Random(seed).shuffle(perm)
    return relabel_system(sys, perm)
