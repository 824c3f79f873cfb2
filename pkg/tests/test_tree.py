import random

import pytest

import tangleforge as tf
from tangleforge.orientations import Orientation
from tangleforge.tree import (compute_mp, exclusivity_counts,
                              infimum_representative, restrict_family)

from oracles import (all_small_systems, distinguishing_nested_subset_exists,
                     naive_infimum, naive_nested, system_from_up_masks)


def family_of(system, *chosen_sets):
    return tf.OrientationFamily(
        system, [Orientation.from_chosen(system, ids) for ids in chosen_sets])


def crossing_exclusives_family():
    """Two-member family on the 4-cycle's diagonal-rich system whose second
    member has the two crossing diagonals as its maximal exclusive set."""
    gs = tf.build_sk(tf.cycle_graph(4), 3)
    fam = tf.OrientationFamily(gs.system, [
        Orientation.from_bitstring(gs.system, "1110111011101"),
        Orientation.from_bitstring(gs.system, "1111111111111"),
    ])
    return gs, fam


class TestExclusivity:
    def test_counts_sum_to_family_size(self, chain_family):
        counts = exclusivity_counts(chain_family)
        sys = chain_family.system
        for x in range(sys.size):
            assert counts[x] + counts[sys.inv[x]] == len(chain_family)

    def test_single_separation_both_orientations(self, single_system):
        fam = family_of(single_system, [0], [1])
        assert compute_mp(fam) == [(0,), (1,)]

    def test_chain_table(self, chain_system):
        # members ordered by bit pattern: {r*,s*}, {r,s*}, {r,s}
        fam = tf.OrientationFamily(chain_system,
                                   tf.enumerate_consistent(chain_system))
        assert [o.chosen() for o in fam] == [(1, 3), (0, 3), (0, 2)]
        assert compute_mp(fam) == [(1,), (), (2,)]

    def test_singleton_family_takes_maximal_elements(self, chain_system):
        fam = family_of(chain_system, [0, 2])
        [mp] = compute_mp(fam)
        assert mp == (2,)        # s is the maximal element of {r, s}

    def test_monotone_exclusivity(self, corpus_instances):
        # anything above an exclusive separation inside the same member is
        # itself exclusive
        for _, _, gs, fam in corpus_instances:
            if len(fam) < 2:
                continue
            counts = exclusivity_counts(fam)
            sys = fam.system
            for o in fam:
                for x in o.chosen():
                    if counts[x] != 1:
                        continue
                    above = sys.up_mask(x) & o.mask
                    while above:
                        y = (above & -above).bit_length() - 1
                        assert counts[y] == 1
                        above &= above - 1

    def test_multi_element_exclusive_sets_pairwise_cross(self):
        gs, fam = crossing_exclusives_family()
        mps = compute_mp(fam)
        assert any(len(mp) >= 2 for mp in mps)
        for mp in mps:
            for i, x in enumerate(mp):
                for y in mp[i + 1:]:
                    assert gs.system.crosses(x, y)


class TestInfimumRepresentative:
    def test_singleton_set(self, chain_system):
        fam = tf.OrientationFamily(chain_system,
                                   tf.enumerate_consistent(chain_system))
        assert infimum_representative(fam, 2, (2,)) == 2

    def test_chain_representatives(self, chain_family):
        mps = compute_mp(chain_family)
        reps = {i: infimum_representative(chain_family, i, mp)
                for i, mp in enumerate(mps) if mp}
        assert reps == {0: 1, 2: 2}      # r* for the down member, s for the up

    def test_crossing_pair_infimum_is_exclusive(self):
        # two crossing maximal exclusives: the representative is their poset
        # infimum, found by exhaustive scan, and lies in that member alone
        gs, fam = crossing_exclusives_family()
        mps = compute_mp(fam)
        [(i, mp)] = [(i, mp) for i, mp in enumerate(mps) if len(mp) == 2]
        assert gs.system.crosses(*mp)
        rep = infimum_representative(fam, i, mp)
        assert rep == naive_infimum(gs.system, mp)
        holders = [j for j, o in enumerate(fam) if o.contains(rep)]
        assert holders == [i]

    def test_missing_infimum_raises_naming_the_guarantee(self):
        system = tf.SeparationSystem.from_generators(
            3, [(0, 1), (2, 3), (4, 5)], [(0, 4), (2, 4)])
        fam = family_of(system, [0, 2, 5], [1, 3, 5])
        with pytest.raises(tf.PreconditionError) as err:
            infimum_representative(fam, 0, (0, 2))
        assert err.value.invariant == "representative-infimum"


class TestRestriction:
    def test_all_nonempty_ends_recursion(self, single_system):
        fam = family_of(single_system, [0], [1])
        sub_fam, to_orig, kept = restrict_family(fam, compute_mp(fam))
        assert kept == ()
        assert len(sub_fam) == 0

    def test_chain_survivor_is_middle_member(self, chain_family):
        sub_fam, to_orig, kept = restrict_family(chain_family,
                                                 compute_mp(chain_family))
        assert kept == (1,)              # the {r, s*} member
        assert len(sub_fam) == 1
        # chain is fully nested, so nothing is cut away
        assert to_orig == (0, 1, 2, 3)

    def test_restriction_matches_definition(self):
        gs, fam = crossing_exclusives_family()
        mps = compute_mp(fam)
        sub_fam, to_orig, kept = restrict_family(fam, mps)
        anchors = [x for mp in mps for x in mp]
        expected = [x for x in range(gs.system.size)
                    if all(naive_nested(gs.system, gs.system.rep(x),
                                        gs.system.rep(y)) for y in anchors)]
        assert list(to_orig) == expected


class TestCanonicalTreeSet:
    def test_empty_and_singleton_families(self, chain_system):
        empty = tf.OrientationFamily(chain_system, [])
        assert tf.canonical_tree_set(empty).separations == ()
        solo = family_of(chain_system, [0, 2])
        assert tf.canonical_tree_set(solo).separations == ()

    def test_single_separation(self, single_system):
        fam = family_of(single_system, [0], [1])
        result = tf.canonical_tree_set(fam)
        assert result.separations == (0,)
        assert result.certificates == ((0, 1, 0),)
        assert tf.verify_nested_set(result, fam).ok

    def test_chain_full_run(self, chain_family):
        result = tf.canonical_tree_set(chain_family)
        assert result.separations == (0, 2)
        assert len(result.rounds) == 1
        r = result.rounds[0]
        assert dict(r.exclusive_max) == {0: (1,), 1: (), 2: (2,)}
        assert dict(r.representatives) == {0: 1, 2: 2}
        assert r.added == (0, 2)
        assert r.remaining_members == (1,)
        assert tf.verify_nested_set(result, fam=chain_family).ok

    def test_crossing_fixture_resolves_to_infimum(self):
        gs, fam = crossing_exclusives_family()
        result = tf.canonical_tree_set(fam)
        assert tf.verify_nested_set(result, fam).ok
        mps = compute_mp(fam)
        [(i, mp)] = [(i, mp) for i, mp in enumerate(mps) if len(mp) == 2]
        rep = infimum_representative(fam, i, mp)
        assert gs.system.rep(rep) in result.separations

    def test_not_submodular_rejected_with_witness(self):
        system = tf.SeparationSystem.from_generators(
            3, [(0, 1), (2, 3), (4, 5)], [(0, 4), (2, 4)])
        fam = family_of(system, [0, 2, 5], [1, 3, 5])
        with pytest.raises(tf.PreconditionError) as err:
            tf.canonical_tree_set(fam)
        assert err.value.invariant == "family-submodular"
        x, y = err.value.witness
        assert system.crosses(x, y)

    def test_unchecked_still_fails_fast_on_bad_family(self):
        system = tf.SeparationSystem.from_generators(
            3, [(0, 1), (2, 3), (4, 5)], [(0, 4), (2, 4)])
        fam = family_of(system, [0, 2, 5], [1, 3, 5])
        with pytest.raises(tf.PreconditionError):
            tf.canonical_tree_set(fam, check=False)

    def test_small_systems_sweep(self):
        # every system with up to three separations, against the maximal
        # consistent family whenever it is jointly submodular
        ran = 0
        for m, up in all_small_systems(3):
            system = system_from_up_masks(m, up)
            fam = tf.OrientationFamily(
                system, tf.enumerate_consistent(system, cap=None))
            if len(fam) > 1 and not tf.is_p_submodular(fam)[0]:
                continue
            result = tf.canonical_tree_set(fam)
            report = tf.verify_nested_set(result, fam)
            assert report.ok, (m, up, str(report))
            if len(fam) > 1:
                assert distinguishing_nested_subset_exists(fam)
                ran += 1
        assert ran > 100

    def test_round_anchors_stay_nested_with_survivors(self, corpus_instances):
        for _, _, gs, fam in corpus_instances:
            if len(fam) < 2:
                continue
            result = tf.canonical_tree_set(fam)
            sys = fam.system
            for r in result.rounds:
                for i, a in enumerate(r.added):
                    for b in r.added[i + 1:]:
                        assert naive_nested(sys, a, b)
                    for s in r.surviving:
                        assert naive_nested(sys, a, s)


class TestVerifier:
    def test_accepts_corpus_outputs(self, corpus_instances):
        for name, k, gs, fam in corpus_instances:
            result = tf.canonical_tree_set(fam)
            report = tf.verify_nested_set(result, fam)
            assert report.ok, (name, k, str(report))

    def test_rejects_empty_set_for_two_members(self, single_system):
        fam = family_of(single_system, [0], [1])
        report = tf.verify_nested_set([], fam)
        assert not report.ok
        assert any(f.kind == "undistinguished" for f in report.failures)

    def test_rejects_crossing_pair(self):
        gs, fam = crossing_exclusives_family()
        crossing = gs.system.crossing_pairs()
        u, v = crossing[0]
        report = tf.verify_nested_set([u, v], fam)
        assert any(f.kind == "nestedness" and set(f.witness) == {u, v}
                   for f in report.failures)

    def test_rejects_non_canonical_ids(self, chain_family):
        report = tf.verify_nested_set([1], chain_family)
        assert any(f.kind == "not-in-system" for f in report.failures)

    def test_rejects_forged_certificates(self, chain_family):
        result = tf.canonical_tree_set(chain_family)
        forged = tf.TreeSetResult(
            result.system, result.family, result.separations,
            ((0, 1, 2), (0, 2, 0), (1, 2, 2)), result.rounds)
        # (0,1) are {r*,s*} and {r,s*}: separation s does not split them
        report = tf.verify_nested_set(forged, chain_family)
        assert any(f.kind == "certificate" for f in report.failures)


def fish_property(system, u, v, t):
    """Any existing pairwise bound of crossing u, v is nested with t."""
    inv = system.inv
    for x in (u, inv[u]):
        for y in (v, inv[v]):
            for bound in (system.supremum((x, y)), system.infimum((x, y))):
                if bound is not None and not system.nested(bound, t):
                    return False
    return True


class TestFishProperty:
    def test_on_crossing_rich_systems(self, corpus):
        rng = random.Random(20240817)
        checked = 0
        for name in ("C4", "C5", "P5", "K1,3", "grid2x3"):
            gs = tf.build_sk(corpus[name], 3)
            sys = gs.system
            crossing = sys.crossing_pairs()
            if not crossing:
                continue
            for _ in range(400):
                u, v = rng.choice(crossing)
                candidates = [t for t in sys.unoriented
                              if sys.nested(t, u) and sys.nested(t, v)]
                if not candidates:
                    continue
                t = rng.choice(candidates)
                assert fish_property(sys, u, v, t), (name, u, v, t)
                checked += 1
        assert checked >= 1000
