"""Pure-Python orbit kernels.

Same algorithms and signatures as the compiled ``_ckernels`` module; used
when the extension is not built.
"""

from __future__ import annotations

import numpy as np


def _rows(cartan):
    return [list(map(int, row)) for row in np.asarray(cartan)]


def _walk(cartan, dominant, visit):
    # Every non-dominant orbit element has a unique parent s_i(nu), i being
    # the first negative coordinate of nu, so the walk needs no visited set.
    alpha = _rows(cartan)
    r = len(alpha)
    start = [int(x) for x in dominant]
    if any(x < 0 for x in start):
        raise ValueError("orbit walk must start at a dominant weight")
    stack = [start]
    while stack:
        mu = stack.pop()
        visit(mu)
        for i in range(r):
            c = mu[i]
            if c <= 0:
                continue
            row = alpha[i]
            nu = [mu[k] - c * row[k] for k in range(r)]
            for j in range(i):
                if nu[j] < 0:
                    break
            else:
                stack.append(nu)


def orbit_stats(cartan, dominant):
    """Return ``(size, S)`` with ``S = sum of outer products theta theta^T``."""
    r = len(dominant)
    acc = [[0] * r for _ in range(r)]
    count = 0

    def visit(mu):
        nonlocal count
        count += 1
        for a in range(r):
            ma = mu[a]
            if ma:
                row = acc[a]
                for b in range(r):
                    row[b] += ma * mu[b]

    _walk(cartan, dominant, visit)
    return count, np.array(acc, dtype=np.int64).reshape(r, r)


def orbit_points(cartan, dominant):
    """All orbit elements as an ``(size, rank)`` int64 array (walk order)."""
    out = []
    _walk(cartan, dominant, lambda mu: out.append(mu))
    return np.array(out, dtype=np.int64).reshape(len(out), len(dominant))


def dominant_batch(cartan, weights):
    """Dominant representative of each row of ``weights``."""
    alpha = _rows(cartan)
    r = len(alpha)
    w = np.asarray(weights, dtype=np.int64)
    out = np.empty_like(w)
    for n in range(w.shape[0]):
        mu = [int(x) for x in w[n]]
        while True:
            for i in range(r):
                c = mu[i]
                if c < 0:
                    row = alpha[i]
                    for k in range(r):
                        mu[k] -= c * row[k]
                    break
            else:
                break
        out[n] = mu
    return out
