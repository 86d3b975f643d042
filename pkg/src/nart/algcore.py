"""Bound quiver algebras over prime fields and their finite-dimensional modules.

Conventions
-----------
* Left modules are covariant representations: an arrow ``a: i -> j`` acts by a
  matrix of shape ``(dims[j], dims[i])``.
* A path is written first-to-last: ``("a", "b")`` means "a, then b".  On a module
  it acts as ``M_b @ M_a``.
* ``P_i`` is spanned by the residue paths starting at ``i``; ``I_i = D(e_i Lambda)``.
* Relations are read in the arrow-ideal-adic completion of the path algebra, the
  usual convention for bound quiver algebras.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import sympy

from . import linalg as la
from .errors import (
    AlgebraMismatch,
    InfiniteDimensional,
    NonAdmissibleIdeal,
    SplittingFailure,
)

DEFAULT_PRIME = 101
DEFAULT_PATH_CAP = 10_000
DEFAULT_SPLIT_ATTEMPTS = 64
DEFAULT_SEED = 0


# ---------------------------------------------------------------------------
# quivers and algebras


@dataclass(frozen=True)
class FieldSpec:
    prime: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isinstance(self.prime, int) or self.prime < 2 or not sympy.isprime(self.prime):
            raise ValueError(f"field characteristic must be a prime, got {self.prime!r}")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow ids")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} has an undeclared endpoint")

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def opposite(self) -> Quiver:
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))

    def path_endpoints(self, path: tuple[str, ...]) -> tuple[str, str]:
        arrows = [self.arrow(n) for n in path]
        for x, y in zip(arrows, arrows[1:]):
            if x.target != y.source:
                raise ValueError(f"arrows {x.name}, {y.name} do not compose")
        return arrows[0].source, arrows[-1].target


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths of length >= 2."""

    terms: tuple[tuple[int, tuple[str, ...]], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "terms", tuple((int(c), tuple(path)) for c, path in self.terms)
        )

    def reduced(self, p: int) -> Relation:
        acc: dict[tuple[str, ...], int] = {}
        for c, path in self.terms:
            acc[path] = (acc.get(path, 0) + c) % p
        return Relation(tuple((c, path) for path, c in sorted(acc.items()) if c))

    def opposite(self) -> Relation:
        return Relation(tuple((c, tuple(reversed(path))) for c, path in self.terms))


class BasisPath(NamedTuple):
    source: str
    target: str
    arrows: tuple[str, ...]

    def __len__(self):  # path length, not tuple length
        return len(self.arrows)


class BoundAlgebra:
    """``kQ/I`` with a residue-path basis; build with :func:`validate_algebra`."""

    def __init__(self, quiver, relations, field, path_basis, normal_forms, monomial):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.field = field
        self.path_basis: tuple[BasisPath, ...] = tuple(path_basis)
        self._index = {(b.source, b.arrows): k for k, b in enumerate(self.path_basis)}
        self._nf = normal_forms
        self._monomial = monomial
        self._opposite = None
        self._standard = None

    @property
    def p(self) -> int:
        return self.field.prime

    @property
    def dimension(self) -> int:
        return len(self.path_basis)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    def _key(self):
        return (self.quiver, self.relations, self.field)

    def __eq__(self, other):
        return isinstance(other, BoundAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"BoundAlgebra(vertices={list(self.vertices)}, arrows={len(self.quiver.arrows)}, "
            f"relations={len(self.relations)}, p={self.p}, dim={self.dimension})"
        )

    def reduce(self, source: str, arrows: tuple[str, ...]) -> dict[int, int]:
        """Normal form of a path as ``{basis index: coefficient}``."""
        k = self._index.get((source, tuple(arrows)))
        if k is not None:
            return {k: 1}
        if self._monomial or self._nf is None:
            return {}
        return dict(self._nf.get((source, tuple(arrows)), {}))

    def paths_between(self, i: str, j: str) -> list[int]:
        return [k for k, b in enumerate(self.path_basis) if b.source == i and b.target == j]

    def opposite(self) -> BoundAlgebra:
        if self._opposite is None:
            nf = None
            if self._nf is not None:
                nf = {}
                for (s, arrows), vec in self._nf.items():
                    if arrows:
                        t = self.quiver.arrow(arrows[-1]).target
                    else:
                        t = s
                    nf[(t, tuple(reversed(arrows)))] = vec
            basis = [BasisPath(b.target, b.source, tuple(reversed(b.arrows))) for b in self.path_basis]
            op = BoundAlgebra(
                self.quiver.opposite(),
                tuple(r.opposite() for r in self.relations),
                self.field,
                basis,
                nf,
                self._monomial,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def to_json(self) -> dict:
        return {
            "field": {"prime": self.p},
            "quiver": {
                "vertices": list(self.vertices),
                "arrows": [
                    {"name": a.name, "from": a.source, "to": a.target} for a in self.quiver.arrows
                ],
            },
            "relations": [
                [{"coeff": c, "path": list(path)} for c, path in r.terms] for r in self.relations
            ],
        }


def _check_relation(quiver: Quiver, rel: Relation) -> None:
    ends = set()
    for _, path in rel.terms:
        if len(path) < 2:
            raise NonAdmissibleIdeal(f"relation path {list(path)} has length < 2")
        try:
            ends.add(quiver.path_endpoints(path))
        except (KeyError, ValueError) as exc:
            raise NonAdmissibleIdeal(f"invalid relation path {list(path)}: {exc}") from exc
    if len(ends) > 1:
        raise NonAdmissibleIdeal("relation mixes paths with different endpoints")


def _monomial_basis(quiver, rel_paths, cap, bound):
    rel_set = set(rel_paths)
    lengths = sorted({len(r) for r in rel_set})
    longest = max(lengths, default=0)
    # trie nodes: (source, target, parent, arrow, suffix) keep memory linear in the node count
    nodes = [(v, v, -1, None, ()) for v in quiver.vertices]
    depth = [0] * len(nodes)
    frontier = list(range(len(nodes)))
    out_arrows = {v: quiver.arrows_from(v) for v in quiver.vertices}
    while frontier:
        nxt = []
        for idx in frontier:
            s, t, _, _, suffix = nodes[idx]
            for a in out_arrows[t]:
                cand = suffix + (a.name,)
                if any(k <= len(cand) and cand[-k:] in rel_set for k in lengths):
                    continue
                if bound is not None and depth[idx] + 1 >= bound:
                    raise NonAdmissibleIdeal(
                        f"no power J^m with m <= {bound} lies in the relation ideal"
                    )
                nodes.append((s, a.target, idx, a.name, cand[-longest:] if longest else ()))
                depth.append(depth[idx] + 1)
                nxt.append(len(nodes) - 1)
                if len(nodes) > cap:
                    raise InfiniteDimensional(f"residue paths exceed the cap of {cap}")
        frontier = nxt
    basis = []
    for idx, (s, t, _, _, _) in enumerate(nodes):
        arrows = []
        k = idx
        while nodes[k][2] >= 0:
            arrows.append(nodes[k][3])
            k = nodes[k][2]
        basis.append(BasisPath(s, t, tuple(reversed(arrows))))
    return basis


def _all_paths(quiver, max_len, cap):
    by_len = [[BasisPath(v, v, ()) for v in quiver.vertices]]
    total = len(by_len[0])
    out_arrows = {v: quiver.arrows_from(v) for v in quiver.vertices}
    for _ in range(max_len):
        layer = [
            BasisPath(q.source, a.target, q.arrows + (a.name,))
            for q in by_len[-1]
            for a in out_arrows[q.target]
        ]
        total += len(layer)
        if total > cap:
            raise InfiniteDimensional(f"path closure exceeds the cap of {cap}")
        by_len.append(layer)
    return by_len


def _truncated_quotient(quiver, relations, p, by_len):
    """Row-reduce the relation ideal inside paths of length <= N (longest paths pivot first)."""
    n_max = len(by_len) - 1
    paths = [q for layer in by_len for q in layer]
    order = sorted(range(len(paths)), key=lambda k: (-len(paths[k]), paths[k].source, paths[k].arrows))
    col = {(paths[k].source, paths[k].arrows): c for c, k in enumerate(order)}
    ending = {}
    starting = {}
    for q in paths:
        ending.setdefault(q.target, []).append(q)
        starting.setdefault(q.source, []).append(q)
    rows = []
    for rel in relations:
        s, t = quiver.path_endpoints(rel.terms[0][1])
        shortest = min(len(path) for _, path in rel.terms)
        for pre in ending.get(s, []):
            for post in starting.get(t, []):
                if len(pre) + shortest + len(post) > n_max:
                    continue
                row = np.zeros(len(paths), dtype=np.int64)
                for c, path in rel.terms:
                    full = pre.arrows + path + post.arrows
                    if len(full) <= n_max:
                        row[col[(pre.source, full)]] += c
                if (row % p).any():
                    rows.append(row % p)
    if rows:
        r, pivots = la.rref(np.vstack(rows), p)
    else:
        r, pivots = la.zeros(0, len(paths)), np.zeros(0, dtype=np.int64)
    pivot_set = set(pivots.tolist())
    free_cols = [c for c in range(len(paths)) if c not in pivot_set]
    ordered = [paths[k] for k in order]
    return ordered, r, pivots, free_cols


def validate_algebra(
    quiver: Quiver,
    relations=(),
    field: FieldSpec | None = None,
    *,
    path_cap: int = DEFAULT_PATH_CAP,
    nilpotency_bound: int | None = None,
) -> BoundAlgebra:
    """Check admissibility and compute a residue-path basis.

    Raises NonAdmissibleIdeal or InfiniteDimensional (a subclass) on failure.
    """
    field = field or FieldSpec()
    p = field.prime
    rels = []
    for r in relations:
        if not isinstance(r, Relation):
            r = Relation(tuple(r))
        _check_relation(quiver, r)
        r = r.reduced(p)
        if r.terms:
            rels.append(r)
    if all(len(r.terms) == 1 for r in rels):
        basis = _monomial_basis(quiver, [r.terms[0][1] for r in rels], path_cap, nilpotency_bound)
        nf = None
        monomial = True
    else:
        monomial = False
        prev_dim = None
        prev = None
        n = 0
        while True:
            if nilpotency_bound is not None and n > nilpotency_bound:
                raise NonAdmissibleIdeal(
                    f"no power J^m with m <= {nilpotency_bound} lies in the relation ideal"
                )
            by_len = _all_paths(quiver, n, path_cap)
            ordered, r, pivots, free_cols = _truncated_quotient(quiver, rels, p, by_len)
            if prev_dim is not None and len(free_cols) == prev_dim:
                break
            prev_dim = len(free_cols)
            prev = (ordered, r, pivots, free_cols)
            n += 1
        ordered, r, pivots, free_cols = prev
        free_paths = [ordered[c] for c in free_cols]
        basis = sorted(free_paths, key=lambda b: (len(b), quiver.vertex_index(b.source), quiver.vertex_index(b.target), b.arrows))
        bidx = {(b.source, b.arrows): k for k, b in enumerate(basis)}
        col_to_basis = {c: bidx[(ordered[c].source, ordered[c].arrows)] for c in free_cols}
        nf = {}
        for i, pc in enumerate(pivots.tolist()):
            vec = {}
            for c in free_cols:
                if r[i, c]:
                    vec[col_to_basis[c]] = int((-r[i, c]) % p)
            nf[(ordered[pc].source, ordered[pc].arrows)] = vec
    basis = sorted(basis, key=lambda b: (len(b), quiver.vertex_index(b.source), quiver.vertex_index(b.target), b.arrows))
    return BoundAlgebra(quiver, tuple(rels), field, basis, nf, monomial)


def algebra_from_json(data: dict, **kwargs) -> BoundAlgebra:
    """Parse the algebra input schema (see README) and validate it."""
    field = FieldSpec(int(data.get("field", {}).get("prime", DEFAULT_PRIME)))
    q = data["quiver"]
    quiver = Quiver(
        tuple(str(v) for v in q["vertices"]),
        tuple(Arrow(str(a["name"]), str(a["from"]), str(a["to"])) for a in q.get("arrows", [])),
    )
    relations = [
        Relation(tuple((int(t["coeff"]), tuple(str(x) for x in t["path"])) for t in rel))
        for rel in data.get("relations", [])
    ]
    return validate_algebra(quiver, relations, field, **kwargs)


def load_algebra(path, **kwargs) -> BoundAlgebra:
    with open(path, encoding="utf-8") as fh:
        return algebra_from_json(json.load(fh), **kwargs)


def linear_quiver(m: int) -> Quiver:
    vs = tuple(str(i) for i in range(1, m + 1))
    arrows = tuple(Arrow(f"a{i}", str(i), str(i + 1)) for i in range(1, m))
    return Quiver(vs, arrows)


def nakayama_algebra(m: int, l: int, prime: int = DEFAULT_PRIME) -> BoundAlgebra:
    """``k A_m / J^l`` for the linearly oriented A_m quiver."""
    q = linear_quiver(m)
    rels = [
        Relation(((1, tuple(f"a{j}" for j in range(i, i + l))),))
        for i in range(1, m - l + 1)
    ]
    return validate_algebra(q, rels, FieldSpec(prime))


# ---------------------------------------------------------------------------
# modules and morphisms


def _rows(b, d):
    b = np.asarray(b, dtype=np.int64)
    return la.zeros(0, d) if b.size == 0 else b.reshape(-1, d)


def _frozen(a):
    a = np.asarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class Module:
    """A finite-dimensional representation satisfying the algebra's relations."""

    def __init__(self, algebra: BoundAlgebra, dims, action=None, *, name=None, check=True):
        self.algebra = algebra
        q = algebra.quiver
        if isinstance(dims, dict):
            dims = [dims.get(v, 0) for v in q.vertices]
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != len(q.vertices) or min(self.dims, default=0) < 0:
            raise ValueError("dims must give a nonnegative integer per vertex")
        action = action or {}
        p = algebra.p
        acts = {}
        for a in q.arrows:
            shape = (self.dims[q.vertex_index(a.target)], self.dims[q.vertex_index(a.source)])
            m = action.get(a.name)
            m = la.zeros(*shape) if m is None else la.as_mod(m, p).reshape(shape)
            acts[a.name] = _frozen(m)
        self.action = acts
        self.name = name
        self._cache = {}
        if check:
            bad = self.violated_relations()
            if bad:
                raise ValueError(f"module violates relations {bad}")

    @property
    def p(self):
        return self.algebra.p

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> list[int]:
        return list(itertools.accumulate((0,) + self.dims))

    def dim_at(self, v: str) -> int:
        return self.dims[self.algebra.quiver.vertex_index(v)]

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, source: str, arrows) -> np.ndarray:
        d = self.dim_at(source)
        m = la.eye(d)
        for name in arrows:
            m = la.matmul(self.action[name], m, self.p)
        return m

    def violated_relations(self):
        bad = []
        for k, rel in enumerate(self.algebra.relations):
            s, t = self.algebra.quiver.path_endpoints(rel.terms[0][1])
            acc = la.zeros(self.dim_at(t), self.dim_at(s))
            for c, path in rel.terms:
                acc = (acc + c * self.path_matrix(s, path)) % self.p
            if acc.any():
                bad.append(k)
        return bad

    def total_action(self, arrow: str) -> np.ndarray:
        """The arrow as an endomorphism of the total space (block matrix)."""
        q = self.algebra.quiver
        a = q.arrow(arrow)
        off = self.offsets
        out = la.zeros(self.total_dim, self.total_dim)
        i, j = q.vertex_index(a.source), q.vertex_index(a.target)
        out[off[j] : off[j + 1], off[i] : off[i + 1]] = self.action[arrow]
        return out

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<Module {label}dims={self.dims}>"


class Morphism:
    """A family of vertexwise linear maps intertwining the arrow actions."""

    def __init__(self, source: Module, target: Module, blocks, *, check=True):
        if source.algebra != target.algebra:
            raise AlgebraMismatch("morphism between modules over different algebras")
        self.source = source
        self.target = target
        p = source.p
        bl = []
        for v, (ds, dt) in enumerate(zip(source.dims, target.dims)):
            b = la.zeros(dt, ds) if blocks is None else la.as_mod(blocks[v], p).reshape(dt, ds)
            bl.append(_frozen(b))
        self.blocks = tuple(bl)
        if check and not self.is_homomorphism():
            raise ValueError("blocks do not intertwine the arrow actions")

    @property
    def p(self):
        return self.source.p

    @classmethod
    def identity(cls, m: Module) -> Morphism:
        return cls(m, m, [la.eye(d) for d in m.dims], check=False)

    @classmethod
    def zero(cls, x: Module, y: Module) -> Morphism:
        return cls(x, y, None, check=False)

    @classmethod
    def from_flat(cls, x: Module, y: Module, vec, *, check=False) -> Morphism:
        blocks = []
        k = 0
        for ds, dt in zip(x.dims, y.dims):
            blocks.append(np.asarray(vec[k : k + ds * dt]).reshape(dt, ds))
            k += ds * dt
        return cls(x, y, blocks, check=check)

    def is_homomorphism(self) -> bool:
        q = self.source.algebra.quiver
        for a in q.arrows:
            i, j = q.vertex_index(a.source), q.vertex_index(a.target)
            lhs = la.matmul(self.target.action[a.name], self.blocks[i], self.p)
            rhs = la.matmul(self.blocks[j], self.source.action[a.name], self.p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def flat(self) -> np.ndarray:
        if not self.blocks:
            return la.zeros(1, 0)[0]
        return np.concatenate([b.ravel() for b in self.blocks])

    def matrix(self) -> np.ndarray:
        return la.block_diag(list(self.blocks))

    def __matmul__(self, other: Morphism) -> Morphism:
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise ValueError("morphisms do not compose")
        return Morphism(
            other.source,
            self.target,
            [la.matmul(a, b, self.p) for a, b in zip(self.blocks, other.blocks)],
            check=False,
        )

    def __add__(self, other: Morphism) -> Morphism:
        return Morphism(
            self.source, self.target, [(a + b) % self.p for a, b in zip(self.blocks, other.blocks)], check=False
        )

    def __sub__(self, other: Morphism) -> Morphism:
        return Morphism(
            self.source, self.target, [(a - b) % self.p for a, b in zip(self.blocks, other.blocks)], check=False
        )

    def scale(self, c: int) -> Morphism:
        return Morphism(self.source, self.target, [(c * b) % self.p for b in self.blocks], check=False)

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks)

    def ranks(self) -> list[int]:
        return [la.rank(b, self.p) for b in self.blocks]

    def is_mono(self) -> bool:
        return self.ranks() == list(self.source.dims)

    def is_epi(self) -> bool:
        return self.ranks() == list(self.target.dims)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_mono()

    def inverse(self) -> Morphism:
        return Morphism(self.target, self.source, [la.inverse(b, self.p) for b in self.blocks], check=False)

    def __repr__(self):
        return f"<Morphism {self.source.dims} -> {self.target.dims}>"


def poly_of_endomorphism(coeffs, f: Morphism) -> Morphism:
    return Morphism(f.source, f.target, [la.poly_eval_matrix(coeffs, b, f.p) for b in f.blocks], check=False)


def zero_module(algebra: BoundAlgebra) -> Module:
    return Module(algebra, [0] * len(algebra.vertices), check=False)


class DirectSum(NamedTuple):
    module: Module
    inclusions: list[Morphism]
    projections: list[Morphism]


def direct_sum(modules, algebra: BoundAlgebra | None = None) -> DirectSum:
    modules = list(modules)
    if not modules:
        if algebra is None:
            raise ValueError("empty direct sum needs an algebra")
        return DirectSum(zero_module(algebra), [], [])
    alg = modules[0].algebra
    for m in modules:
        if m.algebra != alg:
            raise AlgebraMismatch("direct sum over different algebras")
    q = alg.quiver
    dims = [sum(m.dims[v] for m in modules) for v in range(len(q.vertices))]
    action = {}
    for a in q.arrows:
        action[a.name] = la.block_diag([m.action[a.name] for m in modules])
    total = Module(alg, dims, action, check=False)
    incs, projs = [], []
    starts = [[0] * len(q.vertices)]
    for m in modules:
        starts.append([s + d for s, d in zip(starts[-1], m.dims)])
    for k, m in enumerate(modules):
        ib, pb = [], []
        for v in range(len(q.vertices)):
            i = la.zeros(dims[v], m.dims[v])
            s = starts[k][v]
            i[s : s + m.dims[v], :] = la.eye(m.dims[v])
            ib.append(i)
            pb.append(i.T.copy())
        incs.append(Morphism(m, total, ib, check=False))
        projs.append(Morphism(total, m, pb, check=False))
    return DirectSum(total, incs, projs)


def direct_sum_morphism(maps_grid, sources: DirectSum, targets: DirectSum) -> Morphism:
    """Assemble ``sum_{t,s} incl_t . grid[t][s] . proj_s`` between two direct sums."""
    total = Morphism.zero(sources.module, targets.module)
    for t, row in enumerate(maps_grid):
        for s, f in enumerate(row):
            if f is not None:
                total = total + targets.inclusions[t] @ f @ sources.projections[s]
    return total


def matrix_morphism(source_parts, target_parts, grid) -> tuple[Morphism, DirectSum, DirectSum]:
    """Morphism ``(+) source_parts -> (+) target_parts`` from a grid of components."""
    alg = (list(source_parts) + list(target_parts))[0].algebra
    src = direct_sum(source_parts, alg)
    tgt = direct_sum(target_parts, alg)
    return direct_sum_morphism(grid, src, tgt), src, tgt


# ---------------------------------------------------------------------------
# Hom spaces


class HomBasis:
    def __init__(self, source: Module, target: Module, basis: list[Morphism], matrix: np.ndarray):
        self.source = source
        self.target = target
        self.basis = basis
        self.matrix = matrix  # rows = flattened basis morphisms

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def combination(self, coeffs) -> Morphism:
        p = self.source.p
        if not self.basis:
            return Morphism.zero(self.source, self.target)
        vec = la.matmul(np.asarray(coeffs, dtype=np.int64).reshape(1, -1), self.matrix, p)[0]
        return Morphism.from_flat(self.source, self.target, vec)

    def coordinates(self, f: Morphism) -> np.ndarray:
        return la.coordinates(self.matrix, f.flat(), self.source.p)

    def random(self, rng) -> Morphism:
        return self.combination(rng.integers(0, self.source.p, self.dimension))

    def __repr__(self):
        return f"<HomBasis {self.source.dims} -> {self.target.dims}, dim {self.dimension}>"


def _check_same_algebra(x: Module, y: Module):
    if x.algebra != y.algebra:
        raise AlgebraMismatch("modules live over different algebras")


def hom_basis(x: Module, y: Module) -> HomBasis:
    """Basis of Hom(X, Y): the nullspace of the intertwining constraints."""
    _check_same_algebra(x, y)
    hit = x._cache.get(("hom", id(y)))
    if hit is not None and hit[0] is y:
        return hit[1]
    q = x.algebra.quiver
    p = x.p
    sizes = [dy * dx for dx, dy in zip(x.dims, y.dims)]
    offs = list(itertools.accumulate([0] + sizes))
    n_unknowns = offs[-1]
    rows = []
    for a in q.arrows:
        i, j = q.vertex_index(a.source), q.vertex_index(a.target)
        neq = y.dims[j] * x.dims[i]
        if neq == 0:
            continue
        block = la.zeros(neq, n_unknowns)
        if sizes[i]:
            block[:, offs[i] : offs[i + 1]] += np.kron(y.action[a.name], la.eye(x.dims[i]))
        if sizes[j]:
            block[:, offs[j] : offs[j + 1]] -= np.kron(la.eye(y.dims[j]), x.action[a.name].T)
        rows.append(block % p)
    if rows and n_unknowns:
        null = la.nullspace(np.vstack(rows), p)
    else:
        null = la.eye(n_unknowns)
    basis = [Morphism.from_flat(x, y, v) for v in null]
    hb = HomBasis(x, y, basis, null)
    x._cache[("hom", id(y))] = (y, hb)
    return hb


def endomorphism_basis(m: Module) -> HomBasis:
    return hom_basis(m, m)


# ---------------------------------------------------------------------------
# submodules, quotients, kernels, images


def submodule(m: Module, bases) -> tuple[Module, Morphism]:
    """Submodule spanned vertexwise by the rows of ``bases`` (assumed independent and invariant)."""
    q = m.algebra.quiver
    p = m.p
    bases = [_rows(b, d) for b, d in zip(bases, m.dims)]
    dims = [b.shape[0] for b in bases]
    action = {}
    for a in q.arrows:
        i, j = q.vertex_index(a.source), q.vertex_index(a.target)
        if dims[i] == 0 or dims[j] == 0:
            action[a.name] = la.zeros(dims[j], dims[i])
            continue
        images = la.matmul(m.action[a.name], bases[i].T, p)  # columns
        coords = la.coordinates(bases[j], images.T, p)  # rows = images of basis_i
        action[a.name] = coords.T
    sub = Module(m.algebra, dims, action, check=False)
    inc = Morphism(sub, m, [b.T for b in bases], check=False)
    return sub, inc


def quotient(m: Module, bases) -> tuple[Module, Morphism]:
    """Quotient of ``m`` by the submodule spanned vertexwise by ``bases``."""
    q = m.algebra.quiver
    p = m.p
    comps, projs = [], []
    for b, d in zip(bases, m.dims):
        u = _rows(b, d)
        u = la.row_basis(u, p) if u.shape[0] else u
        c = la.complement(u, d, p)
        comps.append(c)
        if d == 0:
            projs.append(la.zeros(0, 0))
            continue
        t = np.vstack([u, c])
        coords = la.inverse(t.T, p)  # coords of x in basis rows of t
        projs.append(coords[u.shape[0] :, :])
    dims = [c.shape[0] for c in comps]
    action = {}
    for a in q.arrows:
        i, j = q.vertex_index(a.source), q.vertex_index(a.target)
        action[a.name] = la.matmul(la.matmul(projs[j], m.action[a.name], p), comps[i].T, p) if dims[i] and dims[j] else la.zeros(dims[j], dims[i])
    quo = Module(m.algebra, dims, action, check=False)
    epi = Morphism(m, quo, projs, check=False)
    return quo, epi


class Factorization(NamedTuple):
    kernel: Module
    kernel_map: Morphism  # mono kernel -> source
    image: Module
    coimage_map: Morphism  # epi source -> image
    image_map: Morphism  # mono image -> target
    cokernel: Module
    cokernel_map: Morphism  # epi target -> cokernel


def factorize(f: Morphism) -> Factorization:
    p = f.p
    ker_bases = [la.nullspace(b, p) if b.shape[1] else la.zeros(0, 0) for b in f.blocks]
    ker, kmap = submodule(f.source, ker_bases)
    img_bases = [
        la.row_basis(b.T, p) if b.size else la.zeros(0, b.shape[0]) for b in f.blocks
    ]
    img, imap = submodule(f.target, img_bases)
    coim_blocks = []
    for b, ib in zip(f.blocks, img_bases):
        if ib.shape[0] == 0:
            coim_blocks.append(la.zeros(0, b.shape[1]))
        else:
            coim_blocks.append(la.coordinates(ib, b.T, p).T)
    coim = Morphism(f.source, img, coim_blocks, check=False)
    coker, cmap = quotient(f.target, img_bases)
    return Factorization(ker, kmap, img, coim, imap, coker, cmap)


def kernel(f: Morphism) -> tuple[Module, Morphism]:
    fz = factorize(f)
    return fz.kernel, fz.kernel_map


def cokernel(f: Morphism) -> tuple[Module, Morphism]:
    fz = factorize(f)
    return fz.cokernel, fz.cokernel_map


def radical_submodule(m: Module) -> tuple[Module, Morphism]:
    """rad M: the sum of the images of all arrows."""
    q = m.algebra.quiver
    p = m.p
    gens = [[] for _ in q.vertices]
    for a in q.arrows:
        j = q.vertex_index(a.target)
        if m.action[a.name].size:
            gens[j].append(m.action[a.name].T)
    bases = []
    for v, d in enumerate(m.dims):
        if gens[v]:
            bases.append(la.row_basis(np.vstack(gens[v]), p))
        else:
            bases.append(la.zeros(0, d))
    return submodule(m, bases)


def socle_bases(m: Module):
    """Vertexwise basis of soc M: vectors killed by every arrow."""
    q = m.algebra.quiver
    p = m.p
    out = []
    for v, d in enumerate(m.dims):
        mats = [m.action[a.name] for a in q.arrows_from(q.vertices[v]) if m.action[a.name].shape[0]]
        if mats and d:
            out.append(la.nullspace(np.vstack(mats), p))
        else:
            out.append(la.eye(d))
    return out


def is_submodule_basis(m: Module, bases) -> bool:
    q = m.algebra.quiver
    for a in q.arrows:
        i, j = q.vertex_index(a.source), q.vertex_index(a.target)
        for vec in bases[i]:
            img = la.matmul(m.action[a.name], vec.reshape(-1, 1), m.p).ravel()
            if not la.in_span(bases[j], img, m.p):
                return False
    return True


# ---------------------------------------------------------------------------
# standard modules, duality


class StandardModules(NamedTuple):
    simples: list[Module]
    projectives: list[Module]
    injectives: list[Module]


def simple_module(algebra: BoundAlgebra, v: str) -> Module:
    dims = [1 if w == v else 0 for w in algebra.vertices]
    return Module(algebra, dims, name=f"S{v}", check=False)


def projective_module(algebra: BoundAlgebra, i: str) -> Module:
    """``P_i``: residue paths starting at ``i``; arrows act by post-concatenation."""
    q = algebra.quiver
    p = algebra.p
    by_vertex = {v: algebra.paths_between(i, v) for v in q.vertices}
    local = {v: {k: n for n, k in enumerate(ks)} for v, ks in by_vertex.items()}
    action = {}
    for a in q.arrows:
        src, tgt = by_vertex[a.source], by_vertex[a.target]
        mat = la.zeros(len(tgt), len(src))
        for col, k in enumerate(src):
            b = algebra.path_basis[k]
            for idx, c in algebra.reduce(i, b.arrows + (a.name,)).items():
                mat[local[a.target][idx], col] = (mat[local[a.target][idx], col] + c) % p
        action[a.name] = mat
    dims = [len(by_vertex[v]) for v in q.vertices]
    return Module(algebra, dims, action, name=f"P{i}", check=False)


def dual(m: Module) -> Module:
    """``D M``, a module over the opposite algebra."""
    op = m.algebra.opposite()
    action = {name: mat.T.copy() for name, mat in m.action.items()}
    name = f"D{m.name}" if m.name else None
    return Module(op, m.dims, action, name=name, check=False)


def dual_morphism(f: Morphism) -> Morphism:
    return Morphism(dual(f.target), dual(f.source), [b.T.copy() for b in f.blocks], check=False)


def standard_modules(algebra: BoundAlgebra) -> StandardModules:
    if algebra._standard is None:
        simples = [simple_module(algebra, v) for v in algebra.vertices]
        projectives = [projective_module(algebra, v) for v in algebra.vertices]
        op = algebra.opposite()
        injectives = []
        for v in algebra.vertices:
            inj = dual(projective_module(op, v))
            inj = Module(algebra, inj.dims, inj.action, name=f"I{v}", check=False)
            injectives.append(inj)
        algebra._standard = StandardModules(simples, projectives, injectives)
    return algebra._standard


def hom_from_projective(algebra: BoundAlgebra, i: str, target: Module, element) -> Morphism:
    """The map ``P_i -> M`` sending ``e_i`` to ``element`` in ``M_i`` (Yoneda)."""
    proj = standard_modules(algebra).projectives[algebra.quiver.vertex_index(i)]
    element = la.as_mod(element, algebra.p).reshape(-1)
    blocks = []
    for v in algebra.vertices:
        cols = []
        for k in algebra.paths_between(i, v):
            b = algebra.path_basis[k]
            cols.append(la.matmul(target.path_matrix(i, b.arrows), element.reshape(-1, 1), algebra.p).ravel())
        d = target.dim_at(v)
        blocks.append(np.column_stack(cols) if cols else la.zeros(d, 0))
    return Morphism(proj, target, blocks, check=False)


# ---------------------------------------------------------------------------
# endomorphism rings, radicals, Krull-Schmidt


class LocalData(NamedTuple):
    end: HomBasis
    radical: np.ndarray  # rows: coordinates (in end basis) of a basis of rad End
    residue_dim: int  # l_A = dim End/rad End


def _ideal_closure(gens, basis_mats, p):
    n = basis_mats[0].size
    if not gens:
        return la.zeros(0, n)
    span = la.row_basis(np.vstack([g.ravel() for g in gens]), p)
    while True:
        new = [span]
        for row in span:
            g = row.reshape(basis_mats[0].shape)
            for b in basis_mats:
                new.append(la.matmul(b, g, p).ravel().reshape(1, -1))
                new.append(la.matmul(g, b, p).ravel().reshape(1, -1))
        grown = la.row_basis(np.vstack(new), p)
        if grown.shape[0] == span.shape[0]:
            return span
        span = grown


def _is_nilpotent_ideal(ideal_rows, shape, p):
    if ideal_rows.shape[0] == 0:
        return True
    mats = [r.reshape(shape) for r in ideal_rows]
    power = ideal_rows
    while power.shape[0]:
        prods = [la.matmul(x.reshape(shape), y, p).ravel() for x in power for y in mats]
        nxt = la.row_basis(np.vstack(prods), p)
        if nxt.shape[0] >= power.shape[0]:
            return False
        power = nxt
    return True


def _squarefree_part(coeffs, p):
    out = [1]
    for f, _ in la.factor_polynomial(coeffs, p):
        out = la.poly_mul(out, f, p)
    return out


def local_data(m: Module, rng=None, tries: int = 12) -> LocalData | None:
    """Certify that End(M) is local; return its radical and residue dimension, else None."""
    hit = m._cache.get("local")
    if hit is not None:
        return hit if hit != "nonlocal" else None
    p = m.p
    end = endomorphism_basis(m)
    if m.total_dim == 0 or end.dimension == 0:
        return None
    mats = [f.matrix() for f in end.basis]
    if end.dimension == 1:
        res = LocalData(end, la.zeros(0, 1), 1)
        m._cache["local"] = res
        return res
    gens = []
    for b in mats:
        sq = _squarefree_part(la.minimal_polynomial(b, p), p)
        gens.append(la.poly_eval_matrix(sq, b, p))
    for x, y in itertools.combinations(mats, 2):
        gens.append((la.matmul(x, y, p) - la.matmul(y, x, p)) % p)
    gens = [g for g in gens if g.any()]
    ideal = _ideal_closure(gens, mats, p)
    flat_basis = np.vstack([b.ravel() for b in mats])
    ok = _is_nilpotent_ideal(ideal, mats[0].shape, p)
    result = None
    if ok:
        ideal_coords = la.coordinates(flat_basis, ideal, p) if ideal.shape[0] else la.zeros(0, end.dimension)
        d = end.dimension - ideal_coords.shape[0]
        if d == 1:
            result = LocalData(end, ideal_coords, 1)
        elif d > 1:
            rng = rng if rng is not None else np.random.default_rng(DEFAULT_SEED)
            comp = la.complement(ideal_coords, end.dimension, p)
            # E/I is commutative and reduced; it is a field iff some element has degree d
            for _ in range(tries):
                z = rng.integers(0, p, end.dimension)
                zm = sum(int(c) * b for c, b in zip(z, mats)) % p
                op = la.zeros(d, d)
                for col, cvec in enumerate(comp):
                    bm = sum(int(c) * b for c, b in zip(cvec, mats)) % p
                    prod = la.matmul(zm, bm, p).ravel()
                    coords = la.coordinates(flat_basis, prod, p)
                    full = la.coordinates(np.vstack([ideal_coords, comp]) if ideal_coords.shape[0] else comp, coords, p)
                    op[:, col] = full[ideal_coords.shape[0] :]
                mp = la.minimal_polynomial(op, p)
                if len(mp) - 1 == d:
                    facs = la.factor_polynomial(mp, p)
                    if len(facs) == 1 and facs[0][1] == 1:
                        result = LocalData(end, ideal_coords, d)
                        break
    m._cache["local"] = result if result is not None else "nonlocal"
    return result


def residue_dimension(m: Module) -> int:
    """l_A = dim_k End(A)/J(A, A) for indecomposable A."""
    ld = local_data(m)
    if ld is None:
        raise ValueError("module is not indecomposable")
    return ld.residue_dim


class Summand(NamedTuple):
    module: Module
    inclusion: Morphism
    projection: Morphism


def _primary_split(m: Module, r: Morphism, factors, p):
    f1 = la.poly_pow(factors[0][0], factors[0][1], p)
    rest = [1]
    for f, e in factors[1:]:
        rest = la.poly_mul(rest, la.poly_pow(f, e, p), p)
    parts = []
    for poly in (f1, rest):
        g = poly_of_endomorphism(poly, r)
        bases = [la.nullspace(b, p) if b.shape[1] else la.zeros(0, 0) for b in g.blocks]
        parts.append(submodule(m, bases))
    (k1, i1), (k2, i2) = parts
    proj1, proj2 = [], []
    for v, d in enumerate(m.dims):
        if d == 0:
            proj1.append(la.zeros(k1.dims[v], 0))
            proj2.append(la.zeros(k2.dims[v], 0))
            continue
        t = np.hstack([i1.blocks[v], i2.blocks[v]])
        inv = la.inverse(t, p)
        proj1.append(inv[: k1.dims[v]])
        proj2.append(inv[k1.dims[v] :])
    return [
        Summand(k1, i1, Morphism(m, k1, proj1, check=False)),
        Summand(k2, i2, Morphism(m, k2, proj2, check=False)),
    ]


def split_module(m: Module, *, seed: int | None = None, attempts: int = DEFAULT_SPLIT_ATTEMPTS) -> list[Summand]:
    """Krull-Schmidt splitting by Fitting's lemma on random endomorphisms."""
    hit = m._cache.get("split")
    if hit is not None:
        return hit
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    out = _split(m, rng, attempts)
    m._cache["split"] = out
    return out


def _split(m: Module, rng, attempts) -> list[Summand]:
    p = m.p
    if m.total_dim == 0:
        return []
    end = endomorphism_basis(m)
    if end.dimension == 1:
        m._cache.setdefault("local", LocalData(end, la.zeros(0, 1), 1))
        return [Summand(m, Morphism.identity(m), Morphism.identity(m))]
    for attempt in range(attempts):
        r = end.random(rng)
        mp = la.minimal_polynomial(r.matrix(), p)
        factors = la.factor_polynomial(mp, p)
        if len(factors) >= 2:
            out = []
            for part in _primary_split(m, r, factors, p):
                for sub in _split(part.module, rng, attempts):
                    out.append(
                        Summand(sub.module, part.inclusion @ sub.inclusion, sub.projection @ part.projection)
                    )
            return out
        if attempt in (3, attempts - 1) and local_data(m, rng) is not None:
            return [Summand(m, Morphism.identity(m), Morphism.identity(m))]
    raise SplittingFailure(f"could not split or certify module with dims {m.dims}")


def is_indecomposable(m: Module) -> bool:
    return m.total_dim > 0 and len(split_module(m)) == 1


def _iso_indecomposable(a: Module, b: Module) -> Morphism | None:
    if a.dims != b.dims:
        return None
    fwd = hom_basis(a, b)
    back = hom_basis(b, a)
    for f in fwd.basis:
        for g in back.basis:
            if la.is_invertible((g @ f).matrix(), a.p):
                return f
    return None


def find_isomorphism(x: Module, y: Module, *, tries: int = 3, seed: int | None = None) -> Morphism | None:
    """Some isomorphism X -> Y, or None."""
    _check_same_algebra(x, y)
    if x.dims != y.dims:
        return None
    if x.total_dim == 0:
        return Morphism.zero(x, y)
    hb = hom_basis(x, y)
    if hb.dimension == 0:
        return None
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    for _ in range(tries):
        f = hb.random(rng)
        if f.is_iso():
            return f
    sx, sy = split_module(x), split_module(y)
    if len(sx) != len(sy):
        return None
    used = [False] * len(sy)
    pairs = []
    for s in sx:
        for k, t in enumerate(sy):
            if used[k]:
                continue
            f = _iso_indecomposable(s.module, t.module)
            if f is not None:
                used[k] = True
                pairs.append((s, t, f))
                break
        else:
            return None
    total = Morphism.zero(x, y)
    for s, t, f in pairs:
        total = total + t.inclusion @ f @ s.projection
    return total


def is_isomorphic(x: Module, y: Module) -> bool:
    return find_isomorphism(x, y) is not None


def decompose(m: Module, *, seed: int | None = None, attempts: int = DEFAULT_SPLIT_ATTEMPTS) -> list[tuple[Module, int]]:
    """Indecomposable summands up to isomorphism, with multiplicities."""
    groups: list[list] = []
    for s in split_module(m, seed=seed, attempts=attempts):
        for g in groups:
            if _iso_indecomposable(g[0], s.module) is not None:
                g[1] += 1
                break
        else:
            groups.append([s.module, 1])
    return [(g[0], g[1]) for g in groups]


# ---------------------------------------------------------------------------
# the radical of mod Lambda


def _radical_of_indecomposable_pair(a: Module, b: Module):
    """Rows spanning J(A, B) inside the flattened Hom(A, B) space, for indecomposable A, B."""
    p = a.p
    hb = hom_basis(a, b)
    iso = _iso_indecomposable(a, b)
    if iso is None:
        return hb.matrix, hb
    ld = local_data(a)
    if ld is None:
        raise SplittingFailure("summand without a certified local endomorphism ring")
    rad_maps = [ld.end.combination(c) for c in ld.radical]
    rows = [(iso @ r).flat() for r in rad_maps]
    if not rows:
        return la.zeros(0, hb.matrix.shape[1]), hb
    return la.row_basis(np.vstack(rows), p), hb


def radical_hom_basis(x: Module, y: Module) -> HomBasis:
    """Basis of J(X, Y): maps whose components between indecomposable summands are non-isomorphisms."""
    _check_same_algebra(x, y)
    hit = x._cache.get(("rad", id(y)))
    if hit is not None and hit[0] is y:
        return hit[1]
    p = x.p
    hb = hom_basis(x, y)
    sx, sy = split_module(x), split_module(y)
    constraints = []
    for s in sx:
        for t in sy:
            if s.module.dims != t.module.dims:
                continue
            if _iso_indecomposable(s.module, t.module) is None:
                continue
            jrows, comp_hb = _radical_of_indecomposable_pair(s.module, t.module)
            # functionals on Hom(X_s, Y_t)'s ambient space vanishing exactly on J(X_s, Y_t)
            ambient = comp_hb.matrix.shape[1]
            q = la.left_nullspace(jrows.T, p) if jrows.shape[0] else la.eye(ambient)
            comps = np.vstack([(t.projection @ f @ s.inclusion).flat() for f in hb.basis]) if hb.basis else la.zeros(0, ambient)
            constraints.append(la.matmul(q, comps.T, p))
    if constraints and hb.dimension:
        coeffs = la.nullspace(np.vstack(constraints), p)
        mat = la.matmul(coeffs, hb.matrix, p) if coeffs.shape[0] else la.zeros(0, hb.matrix.shape[1])
    else:
        mat = hb.matrix
    basis = [Morphism.from_flat(x, y, v) for v in mat]
    res = HomBasis(x, y, basis, mat)
    x._cache[("rad", id(y))] = (y, res)
    return res


def is_radical_map(f: Morphism) -> bool:
    rb = radical_hom_basis(f.source, f.target)
    return la.in_span(rb.matrix, f.flat(), f.p) if rb.dimension else f.is_zero()
