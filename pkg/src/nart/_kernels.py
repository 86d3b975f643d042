"""Row-reduction kernels over prime fields.

The numba path is used by default; set ``NART_DISABLE_NUMBA=1`` to force the
pure-numpy implementation (useful for debugging and for benchmarking).
"""

import os

import numpy as np

_DISABLED = os.environ.get("NART_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via env flag in CI
    numba = None
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _rref_inplace_loops(a, p):
    rows, cols = a.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        # extended Euclid, inlined so the kernel compiles standalone
        t, new_t = 0, 1
        q_r, new_r = p, a[r, c] % p
        while new_r != 0:
            q = q_r // new_r
            t, new_t = new_t, t - q * new_t
            q_r, new_r = new_r, q_r - q * new_r
        inv = t % p
        if inv != 1:
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r:
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[r] = c
        r += 1
    return r, pivots[:r]


def _rref_inplace_numpy(a, p):
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        f = a[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            a[np.ix_(hit, np.arange(c, cols))] = (
                a[np.ix_(hit, np.arange(c, cols))] - np.outer(f[hit], a[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return r, np.asarray(pivots, dtype=np.int64)


if HAVE_NUMBA:
    _rref_inplace_jit = numba.njit(cache=True)(_rref_inplace_loops)
else:
    _rref_inplace_jit = None


def rref_inplace(a, p, backend=None):
    """Reduce ``a`` (int64, entries in [0, p)) to reduced row echelon form in place.

    Returns ``(rank, pivot_columns)``.
    """
    backend = backend or BACKEND
    if backend == "numba":
        if _rref_inplace_jit is None:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return _rref_inplace_jit(a, p)
    if backend == "numpy":
        return _rref_inplace_numpy(a, p)
    if backend == "python":
        return _rref_inplace_loops(a, p)
    raise ValueError(f"unknown backend {backend!r}")
