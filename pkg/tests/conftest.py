import random

from rigidity.flatsurf import NonTransitive, build_origami


def random_transitive_origami(rnd: random.Random, n_min=2, n_max=8):
    """Uniformly shuffled gluings, resampled until the surface is connected."""
    while True:
        n = rnd.randint(n_min, n_max)
        h = list(range(1, n + 1))
        v = list(range(1, n + 1))
        rnd.shuffle(h)
        rnd.shuffle(v)
        try:
            return build_origami(n, h, v)
        except NonTransitive:
            continue
