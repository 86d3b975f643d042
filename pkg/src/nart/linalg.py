"""Exact linear algebra over a prime field F_p on int64 numpy arrays.

All inputs are reduced mod p on entry; all outputs have entries in [0, p).
Vectors are rows: a "basis" is a 2-D array whose rows are the basis vectors.
"""

from functools import reduce

import numpy as np
import sympy

from . import _kernels


def as_mod(a, p):
    return np.asarray(a, dtype=np.int64) % p


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n):
    return np.eye(n, dtype=np.int64)


def matmul(a, b, p):
    return (a @ b) % p


def rref(a, p):
    """Return ``(R, pivots)`` with R the nonzero rows of the reduced echelon form."""
    m = as_mod(a, p)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-D array")
    m = np.ascontiguousarray(m.copy())
    if m.size == 0:
        return m[:0], np.zeros(0, dtype=np.int64)
    rank, pivots = _kernels.rref_inplace(m, p)
    return m[:rank], np.asarray(pivots, dtype=np.int64)


def rank(a, p):
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def row_basis(a, p):
    """Rows of the reduced echelon form: a canonical basis of the row space."""
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return rref(a, p)[0]


def nullspace(a, p):
    """Basis (as rows) of ``{x : a @ x = 0}``."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0 or cols == 0:
        return eye(cols)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots.tolist())]
    basis = zeros(len(free), cols)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def left_nullspace(a, p):
    """Basis (as rows) of ``{y : y @ a = 0}``."""
    return nullspace(np.asarray(a, dtype=np.int64).T, p)


def solve(a, b, p):
    """Solve ``a @ x = b``; ``b`` may be a vector or a matrix of right-hand sides.

    Returns one particular solution, or None if the system is inconsistent.
    """
    a = as_mod(a, p)
    b = as_mod(b, p)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    rows, cols = a.shape
    if rows == 0:
        x = zeros(cols, b.shape[1])
        return x[:, 0] if vec else x
    aug = np.hstack([a, b])
    r, pivots = rref(aug, p)
    if np.any(pivots >= cols):
        return None
    x = zeros(cols, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x[:, 0] if vec else x


def coordinates(basis, vectors, p):
    """Express each row of ``vectors`` in terms of the rows of ``basis``.

    Raises ValueError if some vector is outside the span.
    """
    basis = np.asarray(basis, dtype=np.int64)
    vectors = np.asarray(vectors, dtype=np.int64)
    single = vectors.ndim == 1
    if single:
        vectors = vectors.reshape(1, -1)
    if basis.shape[0] == 0:
        if np.any(vectors % p):
            raise ValueError("vector outside the span of an empty basis")
        out = zeros(vectors.shape[0], 0)
        return out[0] if single else out
    x = solve(basis.T, vectors.T, p)
    if x is None:
        raise ValueError("vector outside the span")
    out = x.T
    return out[0] if single else out


def in_span(basis, v, p):
    basis = np.asarray(basis, dtype=np.int64)
    v = as_mod(v, p)
    if not v.any():
        return True
    if basis.shape[0] == 0:
        return False
    return rank(np.vstack([basis, v.reshape(1, -1)]), p) == rank(basis, p)


def complement(sub, dim, p):
    """Rows of standard unit vectors completing the row space of ``sub`` to F_p^dim."""
    sub = np.asarray(sub, dtype=np.int64)
    sub = zeros(0, dim) if sub.size == 0 else sub.reshape(-1, dim)
    pivots = set(rref(sub, p)[1].tolist()) if sub.shape[0] else set()
    free = [c for c in range(dim) if c not in pivots]
    out = zeros(len(free), dim)
    for k, c in enumerate(free):
        out[k, c] = 1
    return out


def intersect(u, w, p):
    """Row basis of the intersection of two row spaces in the same ambient space."""
    u = row_basis(u, p) if np.asarray(u).size else np.asarray(u, dtype=np.int64)
    w = row_basis(w, p) if np.asarray(w).size else np.asarray(w, dtype=np.int64)
    if u.shape[0] == 0 or w.shape[0] == 0:
        return zeros(0, u.shape[1] if u.ndim == 2 else w.shape[1])
    # x u = y w  <=>  [x, -y] [u; w] = 0
    k = left_nullspace(np.vstack([u, w]), p)
    inter = matmul(k[:, : u.shape[0]], u, p)
    return row_basis(inter, p) if inter.size else inter


def inverse(a, p):
    a = as_mod(a, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return a.copy()
    r, pivots = rref(np.hstack([a, eye(n)]), p)
    if len(pivots) < n or pivots[n - 1] >= n:
        raise ZeroDivisionError("singular matrix")
    return r[:, n:]


def is_invertible(a, p):
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def matrix_power(a, k, p):
    result = eye(a.shape[0])
    base = as_mod(a, p)
    while k:
        if k & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return result


def minimal_polynomial(a, p):
    """Monic minimal polynomial of a square matrix, coefficients low degree first."""
    a = as_mod(a, p)
    n = a.shape[0]
    powers = [eye(n).ravel()]
    cur = eye(n)
    for d in range(1, n + 1):
        cur = matmul(cur, a, p)
        powers.append(cur.ravel())
        stacked = np.vstack(powers)
        # dependency c_0 I + ... + c_d A^d = 0 with c_d = 1
        sol = solve(stacked[:-1].T, (-stacked[-1]) % p, p)
        if sol is not None:
            return [int(c) for c in sol] + [1]
    raise AssertionError("Cayley-Hamilton violated")


def poly_eval_matrix(coeffs, a, p):
    """Evaluate a polynomial (low degree first) at a square matrix by Horner's rule."""
    n = a.shape[0]
    result = zeros(n, n)
    for c in reversed(coeffs):
        result = (matmul(result, a, p) + c * eye(n)) % p
    return result


_X = sympy.Symbol("x")


def factor_polynomial(coeffs, p):
    """Factor a polynomial over F_p into monic irreducibles.

    Returns a list of ``(factor_coeffs_low_first, multiplicity)``.
    """
    poly = sympy.Poly(list(reversed([int(c) for c in coeffs])), _X, modulus=p)
    _, factors = poly.factor_list()
    out = []
    for f, e in factors:
        lead = int(f.LC()) % p
        inv = pow(lead, p - 2, p)
        cs = [(int(c) * inv) % p for c in reversed(f.all_coeffs())]
        out.append((cs, int(e)))
    return out


def poly_mul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return out


def poly_pow(f, e, p):
    return reduce(lambda acc, _: poly_mul(acc, f, p), range(e), [1])


def block_diag(blocks):
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out
