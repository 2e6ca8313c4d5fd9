import numpy as np

import matmeasure as mm

# 3x3 worked example: row sums (2, 1, 2), commutant of order 2.
EXAMPLE_A = np.array([[0.0, 1.0, 1.0],
                      [0.0, 1.0, 0.0],
                      [1.0, 1.0, 0.0]])

# 2x2 worked example with an irreducible and a non-irreducible vector.
EXAMPLE_B = np.array([[0.0, 2.0],
                      [3.0, 1.0]])


def random_weights(rng: np.random.Generator, m: int) -> np.ndarray:
    w = rng.random(m) + 0.1
    return w / w.sum()


def random_measure(rng: np.random.Generator, dim: int = 2, max_atoms: int = 4,
                   scale: float = 1.0) -> mm.WeightedPointMeasure:
    m = int(rng.integers(1, max_atoms + 1))
    points = rng.uniform(-1.0, 1.0, (m, dim)) * scale
    return mm.WeightedPointMeasure(points, random_weights(rng, m))


def four_vertex_classes() -> dict[str, mm.Graph]:
    """One representative per isomorphism class of graphs on 4 vertices."""
    return {
        "empty": mm.Graph(4, []),
        "edge": mm.Graph(4, [(0, 1)]),
        "matching": mm.Graph(4, [(0, 1), (2, 3)]),
        "path3": mm.Graph(4, [(0, 1), (1, 2)]),
        "triangle": mm.Graph(4, [(0, 1), (1, 2), (0, 2)]),
        "path4": mm.Graph(4, [(0, 1), (1, 2), (2, 3)]),
        "star": mm.Graph(4, [(0, 1), (0, 2), (0, 3)]),
        "cycle4": mm.Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
        "paw": mm.Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]),
        "diamond": mm.Graph(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)]),
        "k4": mm.Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    }


def all_labeled_graphs(n: int):
    """Every labeled simple graph on n vertices (use only for small n)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for bits in range(1 << len(pairs)):
        yield mm.Graph(n, [pairs[t] for t in range(len(pairs)) if bits >> t & 1])
