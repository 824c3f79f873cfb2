"""Canonical construction of a nested set distinguishing a family of
consistent orientations.

Each round finds, for every family member, the maximal separations lying in
that member alone; takes the poset infimum of each such set as the member's
canonical representative; keeps only the separations nested with all of the
maximal sets; and recurses on the members that had no exclusive separation.
Every object along the way (exclusive sets, maximal elements, infima,
restrictions) is uniquely determined, which is what makes the output
invariant under isomorphisms: the construction never chooses.

Where a uniquely-determined object fails to exist the input family was not
jointly submodular or not consistent, and a :class:`PreconditionError`
naming the violated guarantee is raised instead of picking arbitrarily.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import PreconditionError
from .orientations import Orientation, OrientationFamily, is_p_submodular
from .sepsys import SeparationSystem


@dataclass(frozen=True)
class RoundTrace:
    """What one round of the construction did, in original-system ids."""

    exclusive_max: tuple[tuple[int, tuple[int, ...]], ...]
    representatives: tuple[tuple[int, int], ...]
    added: tuple[int, ...]
    remaining_members: tuple[int, ...]
    surviving: tuple[int, ...]


@dataclass(frozen=True)
class TreeSetResult:
    """A nested distinguishing set over the original system.

    ``separations`` holds canonical (lower-id) unoriented ids, sorted;
    ``certificates`` holds one distinguishing separation per member pair.
    """

    system: SeparationSystem
    family: OrientationFamily
    separations: tuple[int, ...]
    certificates: tuple[tuple[int, int, int], ...]
    rounds: tuple[RoundTrace, ...]


def exclusivity_counts(fam: OrientationFamily) -> list[int]:
    """For every oriented id, the number of family members containing it.

    The two counts of an orientation pair always sum to the family size.
    """
    counts = [0] * fam.system.size
    for o in fam.members:
        mask = o.mask
        while mask:
            low = mask & -mask
            counts[low.bit_length() - 1] += 1
            mask &= mask - 1
    return counts


def compute_mp(fam: OrientationFamily,
               counts: Optional[list[int]] = None) -> list[tuple[int, ...]]:
    """Per member, the maximal separations contained in that member alone.

    A separation is exclusive when exactly one member contains it; the
    result lists the maximal elements of each member's exclusive set
    (possibly empty), sorted by id.
    """
    if counts is None:
        counts = exclusivity_counts(fam)
    sys = fam.system
    out = []
    for o in fam.members:
        exclusive = [x for x in o.chosen() if counts[x] == 1]
        ex_mask = 0
        for x in exclusive:
            ex_mask |= 1 << x
        maximal = [x for x in exclusive
                   if not (sys.up_mask(x) & ex_mask & ~(1 << x))]
        out.append(tuple(sorted(maximal)))
    return out


def infimum_representative(fam: OrientationFamily, member: int,
                           mp: Iterable[int], check: bool = True) -> int:
    """The poset infimum of a member's maximal exclusive set.

    The infimum is guaranteed to exist, to be exclusive to the same member,
    and to be nested with everything nested with the whole set; all three
    guarantees are asserted and their failure means the family did not meet
    the algorithm's preconditions.
    """
    mp = tuple(mp)
    if not mp:
        raise PreconditionError(
            f"member {member} has no exclusive separations to represent it",
            invariant="representative-nonempty",
        )
    sys = fam.system
    inf = sys.infimum(mp)
    if inf is None:
        raise PreconditionError(
            f"the maximal exclusive set {mp} of member {member} has no infimum; "
            "the family is not jointly submodular or not consistent",
            invariant="representative-infimum",
            witness=mp,
        )
    holders = [i for i, o in enumerate(fam.members) if o.contains(inf)]
    if holders != [member]:
        raise PreconditionError(
            f"infimum {inf} of member {member}'s exclusive set is contained in "
            f"members {holders}, not exclusively in {member}",
            invariant="representative-exclusive",
            witness=(inf,),
        )
    if check:
        for t in sys.unoriented:
            if all(sys.nested(t, x) for x in mp) and not sys.nested(t, inf):
                raise PreconditionError(
                    f"separation {t} is nested with all of {mp} but crosses "
                    f"their infimum {inf}",
                    invariant="representative-nestedness-inherited",
                    witness=(t, inf),
                )
    return inf


def restrict_family(fam: OrientationFamily, mps: list[tuple[int, ...]]
                    ) -> tuple[OrientationFamily, tuple[int, ...], tuple[int, ...]]:
    """Restrict to the separations nested with every maximal exclusive set.

    Returns ``(subfamily, to_orig, kept_members)``: the members with empty
    exclusive sets, restricted to the subsystem; the map from subsystem ids
    back to the current system; and the positions of the surviving members.
    The restriction is guaranteed to keep the survivors distinct, which is
    asserted.
    """
    sys = fam.system
    anchors = sorted({x for mp in mps for x in mp})
    keep = [x for x in range(sys.size)
            if all(sys.nested(x, y) for y in anchors)]
    sub, to_sub, to_orig = sys.restrict(keep)
    keep_set = set(keep)
    kept_members = tuple(i for i, mp in enumerate(mps) if not mp)
    restricted = []
    for i in kept_members:
        ids = [to_sub[x] for x in fam.members[i].chosen() if x in keep_set]
        restricted.append(Orientation.from_chosen(sub, ids))
    for a in range(len(restricted)):
        for b in range(a + 1, len(restricted)):
            if restricted[a].bits == restricted[b].bits:
                raise PreconditionError(
                    f"members {kept_members[a]} and {kept_members[b]} become "
                    "identical after restriction and can no longer be "
                    "distinguished",
                    invariant="restriction-distinguishes",
                    witness=(kept_members[a], kept_members[b]),
                )
    return OrientationFamily(sub, restricted), to_orig, kept_members


def canonical_tree_set(fam: OrientationFamily, check: bool = True) -> TreeSetResult:
    """The canonical nested set distinguishing ``fam``, with certificates.

    With ``check`` the family is verified to be jointly submodular up front,
    the property is re-asserted after every restriction, and every internal
    guarantee is checked in full; disabling it skips only the expensive
    whole-system scans, never the construction itself.
    """
    orig_sys = fam.system
    if len(fam) <= 1:
        # nothing to distinguish; the empty set works for any system
        return TreeSetResult(orig_sys, fam, (), (), ())
    if check:
        ok, witness = is_p_submodular(fam)
        if not ok:
            raise PreconditionError(
                f"crossing pair {witness} has neither a family-respecting "
                "join nor meet",
                invariant="family-submodular",
                witness=witness,
            )

    cur = fam
    to_orig = tuple(range(orig_sys.size))
    member_ids = tuple(range(len(fam)))
    selected: set[int] = set()
    rounds: list[RoundTrace] = []

    while len(cur) > 1:
        sys = cur.system
        counts = exclusivity_counts(cur)
        mps = compute_mp(cur, counts)
        if not any(mps):
            raise PreconditionError(
                "no family member has an exclusive separation, so no canonical "
                "representative can be selected; the family is not jointly "
                "submodular or not consistent",
                invariant="exclusive-representatives-exist",
            )
        if check:
            _assert_cross_nested(sys, mps, member_ids)
        reps: dict[int, int] = {}
        for i, mp in enumerate(mps):
            if mp:
                reps[i] = infimum_representative(cur, i, mp, check=check)
        added = sorted({orig_sys.rep(to_orig[r]) for r in reps.values()})
        selected.update(added)

        sub_fam, sub_to_cur, kept = restrict_family(cur, mps)
        new_to_orig = tuple(to_orig[x] for x in sub_to_cur)
        rounds.append(RoundTrace(
            exclusive_max=tuple(
                (member_ids[i], tuple(sorted(to_orig[x] for x in mp)))
                for i, mp in enumerate(mps)
            ),
            representatives=tuple(
                (member_ids[i], to_orig[r]) for i, r in sorted(reps.items())
            ),
            added=tuple(added),
            remaining_members=tuple(member_ids[i] for i in kept),
            surviving=tuple(sorted({orig_sys.rep(x) for x in new_to_orig})),
        ))
        if check:
            ok, witness = is_p_submodular(sub_fam)
            if not ok:
                w = (new_to_orig[witness[0]], new_to_orig[witness[1]])
                raise PreconditionError(
                    f"after restriction, crossing pair {w} has neither a "
                    "family-respecting join nor meet",
                    invariant="restriction-submodular",
                    witness=w,
                )
        cur = sub_fam
        to_orig = new_to_orig
        member_ids = tuple(member_ids[i] for i in kept)

    separations = tuple(sorted(selected))
    certificates = _certificates(fam, separations)
    return TreeSetResult(orig_sys, fam, separations, certificates, tuple(rounds))


def _assert_cross_nested(sys: SeparationSystem, mps: list[tuple[int, ...]],
                         member_ids: tuple[int, ...]) -> None:
    for i in range(len(mps)):
        for j in range(i + 1, len(mps)):
            for x in mps[i]:
                for y in mps[j]:
                    if not sys.nested(x, y):
                        raise PreconditionError(
                            f"maximal exclusive separations {x} (member "
                            f"{member_ids[i]}) and {y} (member {member_ids[j]}) "
                            "cross",
                            invariant="cross-exclusive-nested",
                            witness=(x, y),
                        )


def _certificates(fam: OrientationFamily,
                  separations: tuple[int, ...]) -> tuple[tuple[int, int, int], ...]:
    certs = []
    for i in range(len(fam)):
        for j in range(i + 1, len(fam)):
            pick = None
            for u in separations:
                if fam[i].contains(u) != fam[j].contains(u):
                    pick = u
                    break
            if pick is None:
                raise PreconditionError(
                    f"constructed set fails to distinguish members {i} and {j}",
                    invariant="output-distinguishes",
                    witness=(i, j),
                )
            certs.append((i, j, pick))
    return tuple(certs)


# -- independent verification -------------------------------------------------


@dataclass(frozen=True)
class CheckFailure:
    kind: str
    witness: tuple
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.witness}: {self.detail}"


@dataclass(frozen=True)
class TreeSetReport:
    failures: tuple[CheckFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        if self.ok:
            return "nested, distinguishing, and a tree set"
        return "; ".join(str(f) for f in self.failures)


def verify_nested_set(target: Union[TreeSetResult, Iterable[int]],
                      fam: OrientationFamily) -> TreeSetReport:
    """Re-check a claimed distinguishing set straight from the definitions.

    Deliberately shares no code with the construction: nestedness, the
    distinguishing property, the tree-set condition and membership are all
    evaluated by raw reads of the relation matrix and the member bit masks.
    Certificates are checked too when a full result is supplied.
    """
    if isinstance(target, TreeSetResult):
        ids = list(target.separations)
        certificates = target.certificates
    else:
        ids = sorted(set(target))
        certificates = None
    sys = fam.system
    leq = sys.leq
    inv = sys.inv
    failures: list[CheckFailure] = []

    valid: list[int] = []
    for u in ids:
        if not (0 <= u < sys.size) or min(u, inv[u]) != u:
            failures.append(CheckFailure(
                "not-in-system", (u,),
                "not a canonical unoriented separation id of the system"))
        else:
            valid.append(u)

    for a in range(len(valid)):
        for b in range(a + 1, len(valid)):
            u, v = valid[a], valid[b]
            iu, iv = inv[u], inv[v]
            if not (leq[u, v] or leq[u, iv] or leq[iu, v] or leq[iu, iv]):
                failures.append(CheckFailure(
                    "nestedness", (u, v), "separations cross"))

    for u in valid:
        for v in valid:
            if u == v:
                continue
            for x in (u, inv[u]):
                if leq[x, v] and leq[x, inv[v]]:
                    failures.append(CheckFailure(
                        "tree-set", (u, v, x),
                        f"orientation {x} lies below both orientations of {v}"))

    members = fam.members
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if not any(
                (members[i].mask >> u & 1) != (members[j].mask >> u & 1)
                for u in valid
            ):
                failures.append(CheckFailure(
                    "undistinguished", (i, j),
                    "no separation in the set has opposite orientations in "
                    "these two members"))

    if certificates is not None:
        covered = set()
        for i, j, s in certificates:
            covered.add((i, j))
            if s not in valid:
                failures.append(CheckFailure(
                    "certificate", (i, j, s), "certificate separation not in set"))
            elif (members[i].mask >> s & 1) == (members[j].mask >> s & 1):
                failures.append(CheckFailure(
                    "certificate", (i, j, s),
                    "certificate does not distinguish the pair"))
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                if (i, j) not in covered:
                    failures.append(CheckFailure(
                        "certificate", (i, j), "member pair has no certificate"))

    return TreeSetReport(tuple(failures))
