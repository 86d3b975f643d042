"""Integer lattices: Hermite and Smith normal forms over Python ints."""

from __future__ import annotations

from typing import NamedTuple


def _mat(a) -> list[list[int]]:
    return [[int(x) for x in row] for row in a]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_form(a, ncols: int | None = None) -> list[list[int]]:
    """Row-style Hermite normal form: nonzero rows, positive pivots, reduced above."""
    rows = _mat(a)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    h, _ = _hermite_with_transform(rows, ncols)
    return [r for r in h if any(r)]


def _hermite_with_transform(rows: list[list[int]], ncols: int):
    m = len(rows)
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            if a[r][c] and a[i][c] % a[r][c] == 0:
                f = a[i][c] // a[r][c]
                a[i] = [t - f * s for s, t in zip(a[r], a[i])]
                u[i] = [t - f * s for s, t in zip(u[r], u[i])]
                continue
            g, x, y = _ext_gcd(a[r][c], a[i][c])
            p, q = a[r][c] // g, a[i][c] // g
            a[r], a[i] = (
                [x * s + y * t for s, t in zip(a[r], a[i])],
                [-q * s + p * t for s, t in zip(a[r], a[i])],
            )
            u[r], u[i] = (
                [x * s + y * t for s, t in zip(u[r], u[i])],
                [-q * s + p * t for s, t in zip(u[r], u[i])],
            )
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-v for v in a[r]]
            u[r] = [-v for v in u[r]]
        piv = a[r][c]
        for i in range(r):
            f = a[i][c] // piv
            if f:
                a[i] = [s - f * t for s, t in zip(a[i], a[r])]
                u[i] = [s - f * t for s, t in zip(u[i], u[r])]
        r += 1
    return a, u


def integer_kernel(a) -> list[list[int]]:
    """Basis of {x in Z^rows : x A = 0} (a saturated lattice)."""
    rows = _mat(a)
    m = len(rows)
    if m == 0:
        return []
    ncols = len(rows[0])
    h, u = _hermite_with_transform(rows, ncols)
    basis = [u[i] for i in range(m) if not any(h[i])]
    return hermite_form(basis, m) if basis else []


class SNF(NamedTuple):
    U: list[list[int]]
    D: list[list[int]]
    V: list[list[int]]

    @property
    def invariant_factors(self) -> list[int]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k) if self.D[i][i]]


def smith_normal_form(a) -> SNF:
    """U A V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal."""
    d = _mat(a)
    m = len(d)
    n = len(d[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if d[i][t] and d[i][t] % d[t][t] == 0:
                    f = d[i][t] // d[t][t]
                    d[i] = [r - f * s for s, r in zip(d[t], d[i])]
                    u[i] = [r - f * s for s, r in zip(u[t], u[i])]
                elif d[i][t]:
                    g, x, y = _ext_gcd(d[t][t], d[i][t])
                    p, q = d[t][t] // g, d[i][t] // g
                    d[t], d[i] = [x * s + y * r for s, r in zip(d[t], d[i])], [-q * s + p * r for s, r in zip(d[t], d[i])]
                    u[t], u[i] = [x * s + y * r for s, r in zip(u[t], u[i])], [-q * s + p * r for s, r in zip(u[t], u[i])]
            for j in range(t + 1, n):
                if d[t][j] and d[t][j] % d[t][t] == 0:
                    f = d[t][j] // d[t][t]
                    for mat in (d, v):
                        for row in mat:
                            row[j] -= f * row[t]
                elif d[t][j]:
                    done = False
                    g, x, y = _ext_gcd(d[t][t], d[t][j])
                    p, q = d[t][t] // g, d[t][j] // g
                    for mat in (d, v):
                        for row in mat:
                            s, r = row[t], row[j]
                            row[t], row[j] = x * s + y * r, -q * s + p * r
            if any(d[i][t] for i in range(t + 1, m)):
                done = False
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        # divisibility: fold a non-multiple entry into the pivot row and retry
        bad = next(
            ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]),
            None,
        )
        if bad is not None:
            i, _ = bad
            d[t] = [s + r for s, r in zip(d[t], d[i])]
            u[t] = [s + r for s, r in zip(u[t], u[i])]
            continue
        t += 1
    return SNF(u, d, v)


def invariant_factors(a) -> list[int]:
    rows = _mat(a)
    if not rows or not rows[0]:
        return []
    return smith_normal_form(rows).invariant_factors


def matmul(a, b) -> list[list[int]]:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


class Lattice:
    """A sublattice of Z^rank given by generators; equality compares Hermite forms."""

    def __init__(self, rank: int, generators=()):
        self.rank = int(rank)
        self.generators = _mat(generators)
        for g in self.generators:
            if len(g) != self.rank:
                raise ValueError("generator length differs from the ambient rank")
        self.hermite = hermite_form(self.generators, self.rank) if self.generators else []

    @property
    def dimension(self) -> int:
        return len(self.hermite)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.rank == other.rank and self.hermite == other.hermite

    def __hash__(self):
        return hash((self.rank, tuple(map(tuple, self.hermite))))

    def __repr__(self):
        return f"Lattice(rank={self.rank}, hermite={self.hermite})"

    def contains(self, vec) -> bool:
        vec = [int(x) for x in vec]
        if not any(vec):
            return True
        return Lattice(self.rank, self.hermite + [vec]) == self

    def intersect_coordinates(self, coords) -> Lattice:
        """Vectors of the lattice supported on the given coordinate positions."""
        keep = set(coords)
        others = [j for j in range(self.rank) if j not in keep]
        if not self.hermite:
            return Lattice(self.rank)
        proj = [[row[j] for j in others] for row in self.hermite]
        if not others:
            return Lattice(self.rank, self.hermite)
        combos = integer_kernel(proj)
        return Lattice(self.rank, matmul(combos, self.hermite) if combos else [])

    def index_of(self, sub: Lattice) -> int | None:
        """[self : sub] when sub is a full-rank sublattice of self, else None."""
        if sub.dimension != self.dimension or not all(self.contains(v) for v in sub.hermite):
            return None
        if not self.hermite:
            return 1
        coords = [_solve_in_basis(self.hermite, v) for v in sub.hermite]
        prod = 1
        for f in invariant_factors(coords):
            prod *= f
        return prod


def _solve_in_basis(hermite: list[list[int]], vec: list[int]) -> list[int]:
    """Integer coordinates of vec in a Hermite basis (forward substitution on pivots)."""
    rest = list(vec)
    out = []
    for row in hermite:
        c = next(j for j, x in enumerate(row) if x)
        q, r = divmod(rest[c], row[c])
        if r:
            raise ValueError("vector not in lattice")
        out.append(q)
        rest = [a - q * b for a, b in zip(rest, row)]
    if any(rest):
        raise ValueError("vector not in lattice")
    return out


def lattice_equal(a: Lattice, b: Lattice) -> bool:
    return a == b
