import tangleforge as tf
from tangleforge.iso import SystemIsomorphism
from tangleforge.orientations import Orientation


def test_identity_map_verifies(chain_system):
    target, phi = tf.relabel_system(chain_system, range(chain_system.size))
    assert target == chain_system
    assert tf.verify_iso(phi) == (True, None)


def test_swapping_one_orientation_pair_breaks_order(chain_system):
    # map r to r* while fixing everything else: involution law survives only
    # if the pair is swapped jointly, but order preservation breaks
    phi = SystemIsomorphism(chain_system, chain_system, (1, 0, 2, 3))
    ok, witness = tf.verify_iso(phi)
    assert not ok
    assert witness[0] in ("order", "involution")


def test_non_bijection_detected(chain_system):
    phi = SystemIsomorphism(chain_system, chain_system, (0, 0, 2, 3))
    assert tf.verify_iso(phi) == (False, ("bijection",))


def test_random_relabelings_verify(chain_system):
    for seed in range(100):
        target, phi = tf.random_relabeling(chain_system, seed)
        assert tf.verify_iso(phi) == (True, None)
        assert target.validation_report().ok


def test_seed_determinism(chain_system):
    a1, phi1 = tf.random_relabeling(chain_system, 5)
    a2, phi2 = tf.random_relabeling(chain_system, 5)
    assert phi1.mapping == phi2.mapping and a1 == a2
    b, psi = tf.random_relabeling(chain_system, 6)
    assert psi.mapping != phi1.mapping or b == a1


def test_apply_identity_is_same_family(chain_family):
    _, phi = tf.relabel_system(chain_family.system, range(4))
    image = tf.apply_iso(phi, chain_family)
    assert [o.bits for o in image] == [o.bits for o in chain_family]


def test_apply_iso_permutes_choices(chain_family):
    sys = chain_family.system
    target, phi = tf.relabel_system(sys, [2, 3, 0, 1])   # swap r and s roles
    image = tf.apply_iso(phi, chain_family)
    for before, after in zip(chain_family, image):
        assert sorted(phi(x) for x in before.chosen()) == sorted(after.chosen())
        assert tf.is_consistent(after)


def test_round_trip_restores_family(chain_family):
    for seed in range(10):
        target, phi = tf.random_relabeling(chain_family.system, seed)
        image = tf.apply_iso(phi, chain_family)
        back = tf.apply_iso(phi.inverse(), image)
        assert [o.bits for o in back] == [o.bits for o in chain_family]


def test_image_unoriented_respects_pairing(chain_system):
    target, phi = tf.random_relabeling(chain_system, 3)
    image = phi.image_unoriented([0, 2])
    assert len(image) == 2
    for u in image:
        assert u == min(u, target.inv[u])


def test_canonicity_on_small_fixtures(chain_family):
    fixtures = [chain_family]
    gs = tf.build_sk(tf.cycle_graph(4), 3)
    fixtures.append(tf.OrientationFamily(gs.system, [
        Orientation.from_bitstring(gs.system, "1110111011101"),
        Orientation.from_bitstring(gs.system, "1111111111111"),
    ]))
    gs2 = tf.build_sk(tf.star_graph(3), 2)
    fixtures.append(tf.OrientationFamily(gs2.system, tf.enumerate_profiles(gs2)))
    for fam in fixtures:
        base = tf.canonical_tree_set(fam)
        for seed in range(20):
            target, phi = tf.random_relabeling(fam.system, seed)
            relabeled = tf.canonical_tree_set(tf.apply_iso(phi, fam))
            assert phi.image_unoriented(base.separations) == relabeled.separations
