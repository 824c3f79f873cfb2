import pytest

import tangleforge as tf


@pytest.fixture
def chain_system():
    """Two separations r < s: ids 0/1 are r's orientations, 2/3 are s's."""
    return tf.SeparationSystem.from_generators(
        2, [(0, 1), (2, 3)], [(0, 2)],
        labels={0: "r", 1: "r*", 2: "s", 3: "s*"},
    )


@pytest.fixture
def chain_family(chain_system):
    return tf.OrientationFamily(chain_system,
                                tf.enumerate_consistent(chain_system))


@pytest.fixture
def single_system():
    return tf.SeparationSystem.from_generators(1, [(0, 1)], [])


def corpus_graphs():
    graphs = {}
    for n in range(2, 7):
        graphs[f"P{n}"] = tf.path_graph(n)
    for n in range(3, 7):
        graphs[f"C{n}"] = tf.cycle_graph(n)
    graphs["K1,3"] = tf.star_graph(3)
    graphs["K1,4"] = tf.star_graph(4)
    graphs["K4"] = tf.complete_graph(4)
    graphs["K5"] = tf.complete_graph(5)
    graphs["grid2x3"] = tf.grid_graph(2, 3)
    return graphs


@pytest.fixture(scope="session")
def corpus():
    return corpus_graphs()


@pytest.fixture(scope="session")
def corpus_instances():
    """Every (name, k, graph system, full profile family) of the corpus."""
    instances = []
    for name, g in corpus_graphs().items():
        for k in (1, 2, 3, 4):
            gs = tf.build_sk(g, k)
            profiles = tf.enumerate_profiles(gs, cap=None)
            fam = tf.OrientationFamily(gs.system, profiles)
            instances.append((name, k, gs, fam))
    return instances
