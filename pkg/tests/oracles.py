"""Independent brute-force oracles used by the tests.

Nothing here calls into the library's linear algebra: maps and extensions are
enumerated entry by entry over a tiny prime field.
"""

import itertools

import numpy as np


def _block_shapes(x, y):
    return [(dy, dx) for dx, dy in zip(x.dims, y.dims)]


def _all_tuples(shapes, p):
    sizes = [r * c for r, c in shapes]
    for flat in itertools.product(range(p), repeat=sum(sizes)):
        out, k = [], 0
        for (r, c), s in zip(shapes, sizes):
            out.append(np.array(flat[k:k + s], dtype=np.int64).reshape(r, c))
            k += s
        yield out


def all_homs(x, y):
    """Every vertex-wise block tuple X -> Y commuting with all arrows."""
    q = x.algebra.quiver
    p = x.p
    for blocks in _all_tuples(_block_shapes(x, y), p):
        if all(
            not ((y.action[a.name] @ blocks[q.vertex_index(a.source)]
                  - blocks[q.vertex_index(a.target)] @ x.action[a.name]) % p).any()
            for a in q.arrows
        ):
            yield blocks


def count_homs(x, y):
    return sum(1 for _ in all_homs(x, y))


def log_p(n, p):
    k = 0
    while n > 1:
        assert n % p == 0
        n //= p
        k += 1
    return k


def brute_ext1(c, y):
    """dim Ext^1(C, Y) = log_p(#cocycles / #coboundaries), by enumeration.

    A cocycle is a tuple d_a : C_{s(a)} -> Y_{t(a)} such that the block upper
    triangular representation [[Y_a, d_a], [0, C_a]] satisfies the relations.
    """
    from nart.algcore import Module

    alg = c.algebra
    q = alg.quiver
    p = alg.p
    shapes = [(y.dims[q.vertex_index(a.target)], c.dims[q.vertex_index(a.source)]) for a in q.arrows]
    cocycles = set()
    for ds in _all_tuples(shapes, p):
        action = {}
        for a, d in zip(q.arrows, ds):
            ya, ca = y.action[a.name], c.action[a.name]
            top = np.hstack([ya, d])
            bot = np.hstack([np.zeros((ca.shape[0], ya.shape[1]), dtype=np.int64), ca])
            action[a.name] = np.vstack([top, bot])
        e = Module(alg, [a + b for a, b in zip(y.dims, c.dims)], action, check=False)
        if not e.violated_relations():
            cocycles.add(tuple(tuple(d.ravel()) for d in ds))
    cobound = set()
    for fs in _all_tuples(_block_shapes(c, y), p):
        key = []
        for a in q.arrows:
            i, j = q.vertex_index(a.source), q.vertex_index(a.target)
            key.append(tuple(((y.action[a.name] @ fs[i] - fs[j] @ c.action[a.name]) % p).ravel()))
        cobound.add(tuple(key))
    return log_p(len(cocycles), p) - log_p(len(cobound), p)


def interval_modules(alg):
    """All interval representations [i, j] of a linearly oriented A_m (identity maps inside)."""
    from nart.algcore import Module

    q = alg.quiver
    m = len(q.vertices)
    out = []
    for i in range(m):
        for j in range(i, m):
            dims = [1 if i <= k <= j else 0 for k in range(m)]
            action = {}
            for a in q.arrows:
                s, t = q.vertex_index(a.source), q.vertex_index(a.target)
                action[a.name] = np.array([[1]]) if dims[s] and dims[t] else None
            out.append(Module(alg, dims, {k: v for k, v in action.items() if v is not None}))
    return out


def euler_form(x, y, alg):
    """Ringel form sum_i x_i y_i - sum_{a: i->j} x_i y_j of a quiver without relations."""
    q = alg.quiver
    val = sum(a * b for a, b in zip(x.dims, y.dims))
    for a in q.arrows:
        val -= x.dims[q.vertex_index(a.source)] * y.dims[q.vertex_index(a.target)]
    return val
