"""Orientations of separation systems, consistency, profiles, and the
family-relative join/meet notions used by the distinguishing-tree algorithm.

An orientation picks exactly one of the two orientations of every
separation.  It is stored as one bit per unoriented separation, bit ``i``
set meaning the lower-id orientation of the ``i``-th separation is chosen;
this makes equality and hashing independent of construction order.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Callable, Iterable, Optional

from .errors import PreconditionError, SizeCapError
from .sepsys import SeparationSystem

if TYPE_CHECKING:
    from .graphs import GraphSystem

CONSISTENT_ENUM_CAP = 30
PROFILE_ENUM_CAP = 20


class Orientation:
    """One chosen orientation for every separation of a system."""

    __slots__ = ("system", "bits", "mask")

    def __init__(self, system: SeparationSystem, bits: int):
        if bits < 0 or bits >> system.m:
            raise ValueError(f"bit pattern {bits:#x} out of range for m={system.m}")
        mask = 0
        for i, u in enumerate(system.unoriented):
            chosen = u if bits >> i & 1 else system.inv[u]
            mask |= 1 << chosen
        self.system = system
        self.bits = bits
        self.mask = mask

    @classmethod
    def from_chosen(cls, system: SeparationSystem, ids: Iterable[int]) -> "Orientation":
        """Build from explicit oriented ids, one per separation."""
        picked: dict[int, int] = {}
        for x in ids:
            u = system.rep(x)
            if u in picked and picked[u] != x:
                raise ValueError(f"both orientations of separation {u} chosen")
            picked[u] = x
        if len(picked) != system.m:
            raise ValueError(
                f"{len(picked)} of {system.m} separations oriented; need all"
            )
        bits = 0
        for i, u in enumerate(system.unoriented):
            if picked[u] == u:
                bits |= 1 << i
        return cls(system, bits)

    @classmethod
    def from_bitstring(cls, system: SeparationSystem, s: str) -> "Orientation":
        if len(s) != system.m or set(s) - {"0", "1"}:
            raise ValueError(f"bitstring {s!r} is not {system.m} binary digits")
        bits = 0
        for i, c in enumerate(s):
            if c == "1":
                bits |= 1 << i
        return cls(system, bits)

    def contains(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def chosen(self) -> tuple[int, ...]:
        """The chosen oriented ids, indexed by unoriented position."""
        sys = self.system
        return tuple(
            u if self.bits >> i & 1 else sys.inv[u]
            for i, u in enumerate(sys.unoriented)
        )

    def bitstring(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.system.m))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Orientation):
            return NotImplemented
        return self.system is other.system and self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __repr__(self) -> str:
        return f"Orientation({self.bitstring()!r})"


class OrientationFamily:
    """An ordered family of distinct consistent orientations of one system."""

    __slots__ = ("system", "members")

    def __init__(self, system: SeparationSystem, members: Iterable[Orientation]):
        members = tuple(members)
        seen: set[int] = set()
        for i, o in enumerate(members):
            if o.system is not system:
                raise PreconditionError(
                    f"member {i} belongs to a different system",
                    invariant="family-same-system",
                )
            if o.bits in seen:
                raise PreconditionError(
                    f"member {i} duplicates an earlier member; duplicate "
                    "orientations can never be distinguished",
                    invariant="family-distinct",
                )
            seen.add(o.bits)
            witness = consistency_violation(o)
            if witness is not None:
                raise PreconditionError(
                    f"member {i} is inconsistent at pair {witness}",
                    invariant="family-consistent",
                    witness=witness,
                )
        self.system = system
        self.members = members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> Orientation:
        return self.members[i]

    def __repr__(self) -> str:
        return f"OrientationFamily({len(self.members)} members, m={self.system.m})"


def consistency_violation(o: Orientation) -> Optional[tuple[int, int]]:
    """First pair ``(x, y)`` of chosen orientations with ``x* <= y``, if any.

    Such a pair points away from each other across two distinct separations,
    which is exactly what consistency forbids.
    """
    sys = o.system
    mask = o.mask
    for x in o.chosen():
        hits = sys.up_mask(sys.inv[x]) & mask & ~(1 << x)
        if hits:
            y = (hits & -hits).bit_length() - 1
            return (x, y)
    return None


def is_consistent(o: Orientation) -> bool:
    return consistency_violation(o) is None


def profile_violation(gs: "GraphSystem", o: Orientation) -> Optional[tuple[int, int, int]]:
    """First profile-property failure ``(x, y, z)``: the ambient-lattice meet
    ``z`` of the inverses of the chosen ``x`` and ``y`` is itself chosen.

    Requires a graph-built system because the meet is taken in the ambient
    lattice of all separations of the graph, not in the poset.
    """
    if o.system is not gs.system:
        raise PreconditionError(
            "orientation does not belong to the graph-built system; the profile "
            "property needs the ambient lattice",
            invariant="universe-provenance",
        )
    ch = o.chosen()
    inv = gs.system.inv
    for i, x in enumerate(ch):
        for y in ch[i + 1:]:
            z = gs.meet_id(inv[x], inv[y])
            if z is not None and o.contains(z):
                return (x, y, z)
    return None


def is_profile(gs: "GraphSystem", o: Orientation) -> bool:
    """Whether a consistent orientation also satisfies the profile property."""
    return is_consistent(o) and profile_violation(gs, o) is None


def _enumerate(system: SeparationSystem,
               meet_id: Optional[Callable[[int, int], Optional[int]]],
               cap: Optional[int], what: str) -> list[Orientation]:
    # Depth-first over unoriented separations.  Choosing ``c`` blocks every
    # future ``y`` with ``c* <= y`` (consistency) and, when a lattice is
    # available, the meet of inverses against every earlier choice (profile
    # property).  Both constraints only ever get worse along a branch, so
    # pruning is sound.
    if cap is not None and system.m > cap:
        raise SizeCapError(what, system.m, cap)
    reps = system.unoriented
    inv = system.inv
    m = system.m
    found: list[int] = []
    chosen: list[int] = []

    def descend(i: int, blocked: int, mask: int) -> None:
        if i == m:
            found.append(mask)
            return
        u = reps[i]
        for cand in (u, inv[u]):
            bit = 1 << cand
            if blocked & bit:
                continue
            nb = blocked | system.up_mask(inv[cand])
            nm = mask | bit
            viable = True
            if meet_id is not None:
                for y in chosen:
                    z = meet_id(inv[cand], inv[y])
                    if z is not None:
                        zbit = 1 << z
                        if nm & zbit:
                            viable = False
                            break
                        nb |= zbit
            if viable:
                chosen.append(cand)
                descend(i + 1, nb, nm)
                chosen.pop()

    descend(0, 0, 0)
    out = [_from_mask(system, mask) for mask in found]
    out.sort(key=Orientation.bitstring)
    return out


def _from_mask(system: SeparationSystem, mask: int) -> Orientation:
    bits = 0
    for i, u in enumerate(system.unoriented):
        if mask >> u & 1:
            bits |= 1 << i
    return Orientation(system, bits)


def enumerate_consistent(system: SeparationSystem,
                         cap: Optional[int] = CONSISTENT_ENUM_CAP) -> list[Orientation]:
    """All consistent orientations of the system, ordered by bit pattern.

    Equivalent to filtering all 2^m candidate orientations through
    :func:`is_consistent`; the search just prunes inconsistent prefixes.
    """
    return _enumerate(system, None, cap, "unoriented separation count")


def enumerate_profiles(gs: "GraphSystem",
                       cap: Optional[int] = PROFILE_ENUM_CAP) -> list[Orientation]:
    """All profiles of a graph-built system, ordered by bit pattern."""
    return _enumerate(gs.system, gs.meet_id, cap, "unoriented separation count")


def p_join(x: int, y: int, fam: OrientationFamily) -> Optional[int]:
    """The family-respecting join of two oriented separations, if it exists.

    The poset supremum of ``{x, y}`` qualifies only when every family member
    containing both ``x`` and ``y`` contains the supremum as well.
    """
    sup = fam.system.supremum((x, y))
    if sup is None:
        return None
    need = (1 << x) | (1 << y)
    sbit = 1 << sup
    for o in fam.members:
        if o.mask & need == need and not o.mask & sbit:
            return None
    return sup


def p_meet(x: int, y: int, fam: OrientationFamily) -> Optional[int]:
    """The family-respecting meet, dual to :func:`p_join`.

    The poset infimum of ``{x, y}`` qualifies only when every family member
    containing both inverses contains the infimum's inverse.
    """
    inf = fam.system.infimum((x, y))
    if inf is None:
        return None
    inv = fam.system.inv
    need = (1 << inv[x]) | (1 << inv[y])
    ibit = 1 << inv[inf]
    for o in fam.members:
        if o.mask & need == need and not o.mask & ibit:
            return None
    return inf


def is_p_submodular(fam: OrientationFamily) -> tuple[bool, Optional[tuple[int, int]]]:
    """Whether every crossing oriented pair has a family-respecting join or meet.

    Checked for every choice of orientations of every crossing pair of
    unoriented separations; the witness is the first oriented pair with
    neither.
    """
    sys = fam.system
    inv = sys.inv
    for u, v in sys.crossing_pairs():
        for x in (u, inv[u]):
            for y in (v, inv[v]):
                if p_join(x, y, fam) is None and p_meet(x, y, fam) is None:
                    return False, (x, y)
    return True, None
