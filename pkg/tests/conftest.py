import random

import pytest

from helly import geometry


@pytest.fixture(scope="session")
def corpus():
    return geometry.corpus()


@pytest.fixture(scope="session")
def small_corpus(corpus):
    """Corpus members small enough for exponential oracles."""
    return {name: g for name, g in corpus.items() if g.n <= 10}


def random_graphs(count, max_n, seed):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(2, max_n)
        p = rng.uniform(0.15, 0.6)
        out.append(geometry.random_connected_graph(n, p, seed=rng.randrange(10 ** 9)))
    return out


def random_hypergraphs(count, max_n, max_edges, seed):
    from helly.hypergraphs import Hypergraph
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, max_n)
        k = rng.randint(1, max_edges)
        edges = [tuple(sorted(rng.sample(range(n), rng.randint(1, n))))
                 for _ in range(k)]
        out.append(Hypergraph.of(n, edges))
    return out
