"""Counter-based random streams and deterministic parallel maps.

Monte-Carlo work is cut into fixed-size chunks.  Chunk ``i`` of a run with
seed ``s`` always draws from a Philox stream keyed by ``s`` whose counter
starts at ``i << 192``, so results never depend on how chunks are scheduled.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

CHUNK = 1 << 16
THREADS_ENV = "MAXLAB_THREADS"


def thread_count(threads=None):
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def parallel_map(fn, items, threads=None):
    """``list(map(fn, items))``, optionally on a thread pool; order is preserved."""
    items = list(items)
    k = thread_count(threads)
    if k == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))


def chunk_rng(seed, index):
    bitgen = np.random.Philox(key=int(seed), counter=[0, 0, 0, int(index)])
    return np.random.Generator(bitgen)


def chunk_sizes(total, chunk=CHUNK):
    full, rest = divmod(int(total), chunk)
    return [chunk] * full + ([rest] if rest else [])


def mc_moments(draw, total, seed, threads=None, chunk=CHUNK):
    """Mean and standard error of ``draw(rng, size)`` over ``total`` samples.

    ``draw`` returns an array of per-sample values (or a stack of such
    arrays along axis 0 for several estimands).  Per-chunk sums are combined
    in chunk order.
    """
    sizes = chunk_sizes(total, chunk)

    def work(i):
        vals = np.asarray(draw(chunk_rng(seed, i), sizes[i]), dtype=float)
        return vals.sum(axis=-1), (vals ** 2).sum(axis=-1)

    parts = parallel_map(work, range(len(sizes)), threads)
    s = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    n = float(sum(sizes))
    mean = s / n
    var = np.maximum(s2 / n - mean ** 2, 0.0) * n / max(n - 1, 1)
    return mean, np.sqrt(var / n)


def mc_cross(draw, total, seed, threads=None, chunk=CHUNK):
    """Sums of ``x``, ``y``, ``x^2``, ``y^2``, ``x y`` for paired draws, plus the count."""
    sizes = chunk_sizes(total, chunk)

    def work(i):
        x, y = draw(chunk_rng(seed, i), sizes[i])
        return np.array([x.sum(), y.sum(), (x * x).sum(), (y * y).sum(), (x * y).sum()])

    parts = parallel_map(work, range(len(sizes)), threads)
    acc = np.zeros(5)
    for p in parts:
        acc = acc + p
    return acc, float(sum(sizes))


def sphere_points(rng, size, n):
    """Uniform points on ``S^{n-1}``."""
    if n == 2:
        phi = rng.uniform(0.0, 2 * np.pi, size)
        return np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    v = rng.standard_normal((size, n))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)
