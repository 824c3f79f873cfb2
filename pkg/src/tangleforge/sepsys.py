"""Finite separation systems: posets of oriented separations with an
order-reversing involution.

Oriented separations are dense integer ids ``0 .. 2m-1``.  The partial order
is stored as a full boolean relation, so every predicate is a matrix lookup;
the involution is a fixed-point-free pairing of the ids.  Element identity is
positional: labels are metadata only and never enter any computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import AxiomError


@dataclass(frozen=True)
class AxiomViolation:
    """One failed axiom together with the elements witnessing the failure."""

    axiom: str
    witness: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.axiom} violated at {self.witness}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking the separation-system axioms on raw relations."""

    violations: tuple[AxiomViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "all separation-system axioms hold"
        return "; ".join(str(v) for v in self.violations)


def _first_pair(mask: np.ndarray) -> tuple[int, int]:
    a, b = np.argwhere(mask)[0]
    return int(a), int(b)


def validate_relations(leq: np.ndarray, inv: Sequence[int]) -> ValidationReport:
    """Check a raw relation matrix and pairing against every axiom.

    Every violated axiom is reported with one witness: reflexivity,
    antisymmetry, transitivity, the involution being a fixed-point-free
    pairing, and the order-reversal law ``r <= s  iff  s* <= r*``.
    """
    n = len(inv)
    leq = np.asarray(leq, dtype=bool)
    if leq.shape != (n, n):
        raise ValueError(f"relation shape {leq.shape} does not match {n} elements")
    violations: list[AxiomViolation] = []

    inv_ok = True
    for x, y in enumerate(inv):
        if not (0 <= y < n):
            violations.append(
                AxiomViolation("involution", (x,), f"partner {y} out of range")
            )
            inv_ok = False
            break
        if y == x:
            violations.append(
                AxiomViolation("involution", (x,), f"fixed point at {x}")
            )
            inv_ok = False
            break
        if inv[y] != x:
            violations.append(
                AxiomViolation(
                    "involution", (x, y), f"inv(inv({x})) = {inv[y]} != {x}"
                )
            )
            inv_ok = False
            break

    diag = np.diagonal(leq)
    if not diag.all():
        x = int(np.flatnonzero(~diag)[0])
        violations.append(AxiomViolation("reflexivity", (x,), f"{x} <= {x} missing"))

    anti = leq & leq.T
    np.fill_diagonal(anti, False)
    if anti.any():
        a, b = _first_pair(anti)
        violations.append(
            AxiomViolation("antisymmetry", (a, b), f"both {a} <= {b} and {b} <= {a}")
        )

    implied = (leq.astype(np.uint8) @ leq.astype(np.uint8)) > 0
    missing = implied & ~leq
    if missing.any():
        a, b = _first_pair(missing)
        k = int(np.flatnonzero(leq[a] & leq[:, b])[0])
        violations.append(
            AxiomViolation(
                "transitivity", (a, k, b), f"{a} <= {k} <= {b} but {a} <= {b} missing"
            )
        )

    if inv_ok and n:
        perm = np.asarray(inv)
        reversed_leq = leq[np.ix_(perm, perm)].T
        broken = leq & ~reversed_leq
        if broken.any():
            a, b = _first_pair(broken)
            violations.append(
                AxiomViolation(
                    "order-reversal",
                    (a, b),
                    f"{a} <= {b} but inv({b}) <= inv({a}) missing",
                )
            )

    return ValidationReport(tuple(violations))


class SeparationSystem:
    """A finite poset of oriented separations with an order-reversing involution.

    Instances are immutable after construction and all predicates are pure
    reads, so a system may be shared freely across threads.
    """

    __slots__ = ("leq", "inv", "labels", "size", "m", "unoriented",
                 "_uindex", "_up", "_down")

    def __init__(self, leq, inv, labels: Optional[Mapping[int, str]] = None,
                 _skip_validation: bool = False):
        leq = np.array(leq, dtype=bool)
        inv = tuple(int(x) for x in inv)
        n = len(inv)
        if leq.shape != (n, n):
            raise ValueError(f"relation shape {leq.shape} does not match {n} elements")
        if n % 2:
            raise ValueError("oriented separations must come in pairs")
        if not _skip_validation:
            report = validate_relations(leq, inv)
            if not report.ok:
                raise AxiomError(report)
        leq.flags.writeable = False
        self.leq = leq
        self.inv = inv
        self.labels = dict(labels) if labels else {}
        self.size = n
        self.m = n // 2
        self.unoriented = tuple(sorted(x for x in range(n) if x < inv[x]))
        self._uindex = {u: i for i, u in enumerate(self.unoriented)}
        up = []
        down = []
        for a in range(n):
            up.append(sum(1 << int(b) for b in np.flatnonzero(leq[a])))
            down.append(sum(1 << int(b) for b in np.flatnonzero(leq[:, a])))
        self._up = tuple(up)
        self._down = tuple(down)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_pairs(cls, m: int, inv_pairs: Iterable[Sequence[int]],
                   leq_pairs: Iterable[Sequence[int]],
                   labels: Optional[Mapping[int, str]] = None) -> "SeparationSystem":
        """Build from explicit pairs; input must already be transitive.

        ``leq_pairs`` lists strict-or-equal related pairs; reflexivity is
        added, but no transitive or order-reversal completion is performed,
        so modelling mistakes surface as validation errors.
        """
        n = 2 * m
        inv = _pairing_from_pairs(n, inv_pairs)
        leq = np.eye(n, dtype=bool)
        for a, b in leq_pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"leq pair ({a},{b}) out of range for {n} elements")
            leq[a, b] = True
        return cls(leq, inv, labels)

    @classmethod
    def from_generators(cls, m: int, inv_pairs: Iterable[Sequence[int]],
                        leq_pairs: Iterable[Sequence[int]],
                        labels: Optional[Mapping[int, str]] = None) -> "SeparationSystem":
        """Build from generating relations, convenient for hand-written fixtures.

        Each generator ``a <= b`` is completed with its forced mirror
        ``inv(b) <= inv(a)`` and the whole relation is closed transitively
        before validation.  Both completions are deterministic consequences
        of the axioms, so nothing is guessed.
        """
        n = 2 * m
        inv = _pairing_from_pairs(n, inv_pairs)
        leq = np.eye(n, dtype=bool)
        for a, b in leq_pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"leq pair ({a},{b}) out of range for {n} elements")
            leq[a, b] = True
            leq[inv[b], inv[a]] = True
        changed = True
        while changed:
            closed = leq | ((leq.astype(np.uint8) @ leq.astype(np.uint8)) > 0)
            changed = bool((closed & ~leq).any())
            leq = closed
        return cls(leq, inv, labels)

    # -- basic predicates --------------------------------------------------

    def le(self, a: int, b: int) -> bool:
        """Whether ``a <= b`` in the partial order."""
        return bool(self.leq[a, b])

    def rep(self, x: int) -> int:
        """Canonical id of the unoriented separation underlying ``x``."""
        y = self.inv[x]
        return x if x < y else y

    def uindex(self, x: int) -> int:
        """Position of ``x``'s unoriented separation in ``self.unoriented``."""
        return self._uindex[self.rep(x)]

    def label(self, x: int) -> str:
        return self.labels.get(x, f"s{x}")

    def comparable(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b] or self.leq[b, a])

    def points_towards(self, a: int, b: int) -> bool:
        """Whether ``a`` and ``b`` point towards each other: ``a <= b*``."""
        return bool(self.leq[a, self.inv[b]])

    def points_away(self, a: int, b: int) -> bool:
        """Whether ``a`` and ``b`` point away from each other: ``a* <= b``."""
        return bool(self.leq[self.inv[a], b])

    def nested(self, a: int, b: int) -> bool:
        """Whether the underlying separations of ``a`` and ``b`` are nested.

        True iff some orientation of one is below some orientation of the
        other; equivalently the two are comparable, point towards each
        other, or point away from each other.
        """
        ia, ib = self.inv[a], self.inv[b]
        leq = self.leq
        return bool(leq[a, b] or leq[a, ib] or leq[ia, b] or leq[ia, ib])

    def crosses(self, a: int, b: int) -> bool:
        return not self.nested(a, b)

    def crossing_pairs(self) -> list[tuple[int, int]]:
        """All crossing pairs of unoriented separations, as canonical ids."""
        out = []
        reps = self.unoriented
        for i, u in enumerate(reps):
            for v in reps[i + 1:]:
                if not self.nested(u, v):
                    out.append((u, v))
        return out

    # -- bounds ------------------------------------------------------------

    def up_mask(self, x: int) -> int:
        """Bitmask of all ``b`` with ``x <= b``."""
        return self._up[x]

    def down_mask(self, x: int) -> int:
        """Bitmask of all ``a`` with ``a <= x``."""
        return self._down[x]

    def infimum(self, ids: Iterable[int]) -> Optional[int]:
        """Greatest lower bound of ``ids`` within this poset, if it exists.

        The infimum must itself be an element of the system: below every
        member of ``ids`` and above every common lower bound.  Unique by
        antisymmetry.  Raises on an empty collection.
        """
        ids = list(ids)
        if not ids:
            raise ValueError("infimum of an empty collection is undefined")
        lb = self._down[ids[0]]
        for x in ids[1:]:
            lb &= self._down[x]
        rest = lb
        while rest:
            g = rest & -rest
            gi = g.bit_length() - 1
            if self._down[gi] & lb == lb:
                return gi
            rest ^= g
        return None

    def supremum(self, ids: Iterable[int]) -> Optional[int]:
        """Least upper bound of ``ids`` within this poset, if it exists."""
        ids = list(ids)
        if not ids:
            raise ValueError("supremum of an empty collection is undefined")
        ub = self._up[ids[0]]
        for x in ids[1:]:
            ub &= self._up[x]
        rest = ub
        while rest:
            g = rest & -rest
            gi = g.bit_length() - 1
            if self._up[gi] & ub == ub:
                return gi
            rest ^= g
        return None

    # -- derived systems ----------------------------------------------------

    def restrict(self, keep: Iterable[int]) -> tuple["SeparationSystem", dict[int, int], tuple[int, ...]]:
        """Subsystem on ``keep``, which must be closed under the involution.

        Returns ``(subsystem, to_sub, to_orig)`` where ``to_sub`` maps
        surviving original ids to subsystem ids and ``to_orig`` is the
        inverse lookup.  Order and involution are inherited by restriction,
        so no re-validation is needed.
        """
        kept = sorted(set(keep))
        for x in kept:
            if self.inv[x] not in kept:
                raise ValueError(f"restriction not closed under involution at {x}")
        to_orig = tuple(kept)
        to_sub = {x: i for i, x in enumerate(kept)}
        sub_leq = self.leq[np.ix_(kept, kept)]
        sub_inv = [to_sub[self.inv[x]] for x in kept]
        sub_labels = {to_sub[x]: self.labels[x] for x in kept if x in self.labels}
        sub = SeparationSystem(sub_leq, sub_inv, sub_labels, _skip_validation=True)
        return sub, to_sub, to_orig

    def relabel(self, perm: Sequence[int]) -> "SeparationSystem":
        """Transport the system along a permutation of oriented ids.

        ``perm[x]`` is the new id of old element ``x``.  The transported
        structure is again a valid system and the permutation is an
        isomorphism onto it.
        """
        n = self.size
        perm = list(perm)
        if sorted(perm) != list(range(n)):
            raise ValueError("not a permutation of the oriented ids")
        new_leq = np.zeros((n, n), dtype=bool)
        idx = np.asarray(perm)
        new_leq[np.ix_(idx, idx)] = self.leq
        new_inv = [0] * n
        for x in range(n):
            new_inv[perm[x]] = perm[self.inv[x]]
        new_labels = {perm[x]: lab for x, lab in self.labels.items()}
        return SeparationSystem(new_leq, new_inv, new_labels, _skip_validation=True)

    # -- misc ----------------------------------------------------------------

    def validation_report(self) -> ValidationReport:
        """Re-run the axiom checks on this system's own relations."""
        return validate_relations(self.leq, self.inv)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeparationSystem):
            return NotImplemented
        return (self.inv == other.inv
                and np.array_equal(self.leq, other.leq)
                and self.labels == other.labels)

    def __hash__(self):
        return hash((self.inv, self.leq.tobytes()))

    def __repr__(self) -> str:
        return f"SeparationSystem(m={self.m}, relations={int(self.leq.sum())})"


def _pairing_from_pairs(n: int, inv_pairs: Iterable[Sequence[int]]) -> list[int]:
    # A fixed point (a, a) is representable here on purpose: it is an axiom
    # violation, not a schema error, and must reach the validation report.
    inv = [-1] * n
    for a, b in inv_pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"involution pair ({a},{b}) out of range for {n} elements")
        if inv[a] != -1 or (a != b and inv[b] != -1):
            raise ValueError(f"element of involution pair ({a},{b}) paired twice")
        inv[a] = b
        inv[b] = a
    if any(x == -1 for x in inv):
        missing = inv.index(-1)
        raise ValueError(f"element {missing} missing from the involution pairing")
    return inv
