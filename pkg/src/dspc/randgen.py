"""Seeded random DAG instances for tests, benchmarks, and the CLI."""

from __future__ import annotations

import random

from .core import Dag, Instance, VERTEX


def random_dag(rng: random.Random, n: int, edge_prob: float = 0.5, max_weight: int = 2) -> Dag:
    """A random DAG on n vertices; edges point from lower to higher ids."""
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < edge_prob:
                edges.append((u, v, rng.randint(1, max_weight)))
    return Dag(n, tuple(edges))


def random_instance(
    rng: random.Random,
    n: int,
    k: int,
    congestion: int,
    mode: str = VERTEX,
    edge_prob: float = 0.5,
    max_weight: int = 2,
) -> Instance:
    """A random instance; demands are forward-oriented but may be unreachable."""
    dag = random_dag(rng, n, edge_prob, max_weight)
    demands = []
    for _ in range(k):
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        if u > v:
            u, v = v, u
        demands.append((u, v))
    return Instance(dag, tuple(demands), congestion, mode)
