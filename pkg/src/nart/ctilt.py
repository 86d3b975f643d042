"""n-cluster tilting subcategories, n-exact and n-almost split sequences, defects and indices."""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from . import linalg as la
from .algcore import (
    BoundAlgebra,
    Module,
    Morphism,
    _iso_indecomposable,
    factorize,
    hom_basis,
    radical_hom_basis,
    residue_dimension,
    split_module,
)
from .errors import (
    ConstructionFailure,
    IncompleteARQuiver,
    MemberEscape,
    ProjectiveEnd,
    SearchSpaceTooLarge,
    ShapeMismatch,
)
from .homlab import (
    ARQuiver,
    ext_dim,
    is_projective,
    minimal_right_approximation,
    right_M_resolution,
)

DEFAULT_SEARCH_CAP = 24


@dataclass
class Subcategory:
    """add of finitely many pairwise non-isomorphic indecomposables."""

    algebra: BoundAlgebra
    members: list[Module]
    ids: list[int] | None = None  # positions in the AR quiver, when known
    ar: ARQuiver | None = None

    @classmethod
    def from_ids(cls, ar: ARQuiver, ids) -> Subcategory:
        ids = sorted(set(int(i) for i in ids))
        for i in ids:
            if not 0 <= i < len(ar.indecomposables):
                raise IndexError(f"member index {i} outside the AR quiver")
        return cls(ar.algebra, [ar.indecomposables[i] for i in ids], ids, ar)

    @classmethod
    def everything(cls, ar: ARQuiver) -> Subcategory:
        return cls.from_ids(ar, range(len(ar.indecomposables)))

    def __len__(self):
        return len(self.members)

    @property
    def contains_projectives(self) -> bool:
        from .algcore import standard_modules

        return all(self.index_of(p) is not None for p in standard_modules(self.algebra).projectives)

    def index_of(self, m: Module) -> int | None:
        for k, x in enumerate(self.members):
            if x is m:
                return k
        for k, x in enumerate(self.members):
            if x.dims == m.dims and _iso_indecomposable(x, m) is not None:
                return k
        return None

    def multiplicities(self, m: Module) -> list[int]:
        """Multiplicity vector of m over the members; MemberEscape if m is not in add(M)."""
        out = [0] * len(self.members)
        for s in split_module(m):
            k = self.index_of(s.module)
            if k is None:
                raise MemberEscape(f"summand with dims {s.module.dims} is not in add(M)")
            out[k] += 1
        return out

    def residue_dims(self) -> list[int]:
        return [residue_dimension(x) for x in self.members]


@dataclass
class NExactSequence:
    """X_{n+1} -> ... -> X_0 with ``maps[k]: terms[k] -> terms[k+1]``."""

    length_n: int
    terms: list[Module]
    maps: list[Morphism]
    parts: list[list[int]] | None = None  # member indices of each term's summands

    def check_shape(self) -> None:
        n = self.length_n
        if n < 1 or len(self.terms) != n + 2 or len(self.maps) != n + 1:
            raise ShapeMismatch(
                f"n = {n} needs {n + 2} terms and {n + 1} maps, got {len(self.terms)} and {len(self.maps)}"
            )
        for k, f in enumerate(self.maps):
            if f.source.dims != self.terms[k].dims or f.target.dims != self.terms[k + 1].dims:
                raise ShapeMismatch(f"map {k} does not connect terms {k} and {k + 1}")

    def dimension_euler(self) -> tuple[int, ...]:
        acc = np.zeros(len(self.terms[0].dims), dtype=np.int64)
        for k, t in enumerate(reversed(self.terms)):
            acc += (-1) ** k * np.asarray(t.dims)
        return tuple(int(v) for v in acc)


@dataclass
class Verdict:
    ok: bool
    witness: dict | None = None

    def __bool__(self):
        return self.ok


@dataclass
class DefectVector:
    subcat: Subcategory
    values: list[int]


@dataclass
class IndexVector:
    subcat: Subcategory
    coeffs: list[int]
    resolution: object = field(default=None, repr=False)


# ---------------------------------------------------------------------------
# n-cluster tilting


def ext_table(ar: ARQuiver, i: int) -> np.ndarray:
    """Matrix of dim Ext^i(X, Y) over the knitted indecomposables (cached on ar)."""
    cache = ar.__dict__.setdefault("_ext", {})
    if i not in cache:
        ind = ar.indecomposables
        cache[i] = np.array([[ext_dim(x, y, i) for y in ind] for x in ind], dtype=np.int64)
    return cache[i]


def _ar_ids(subcat: Subcategory, ar: ARQuiver) -> list[int]:
    if subcat.ids is not None and subcat.ar is ar:
        return list(subcat.ids)
    ids = []
    for m in subcat.members:
        k = ar.index_of(m)
        if k is None:
            raise MemberEscape("member not found among the knitted indecomposables")
        ids.append(k)
    return ids


def is_n_cluster_tilting(algebra: BoundAlgebra, subcat: Subcategory, n: int, ar: ARQuiver) -> Verdict:
    """X in M  <=>  Ext^i(X, M) = 0 (0<i<n)  <=>  Ext^i(M, X) = 0 (0<i<n), over all of ind(mod Lambda)."""
    if not ar.complete:
        raise IncompleteARQuiver("AR quiver is partial; cannot quantify over ind(mod Lambda)")
    if n < 1:
        raise ValueError("n must be positive")
    ids = _ar_ids(subcat, ar)
    member = set(ids)
    tables = [ext_table(ar, i) for i in range(1, n)]
    for x in range(len(ar.indecomposables)):
        left = next(((y, i + 1) for i, t in enumerate(tables) for y in ids if t[x, y]), None)
        right = next(((y, i + 1) for i, t in enumerate(tables) for y in ids if t[y, x]), None)
        if x in member:
            if left is not None:
                return Verdict(False, {"kind": "ext-nonvanishing", "X": x, "M": left[0], "i": left[1], "side": "Ext(X,M)"})
            if right is not None:
                return Verdict(False, {"kind": "ext-nonvanishing", "X": right[0], "M": x, "i": right[1], "side": "Ext(M,X)"})
        else:
            if left is None and right is None:
                return Verdict(False, {"kind": "missing-member", "X": x, "M": None, "i": None})
            if (left is None) != (right is None):
                return Verdict(False, {"kind": "asymmetric", "X": x, "left": left, "right": right})
    return Verdict(True, None)


def search_n_cluster_tilting(algebra: BoundAlgebra, n: int, ar: ARQuiver, cap: int = DEFAULT_SEARCH_CAP) -> list[Subcategory]:
    """All n-cluster tilting subcategories: maximal Ext-orthogonal sets containing proj and inj."""
    if not ar.complete:
        raise IncompleteARQuiver("AR quiver is partial")
    k = len(ar.indecomposables)
    if k > cap:
        raise SearchSpaceTooLarge(f"{k} indecomposables exceed the search cap {cap}")
    tables = [ext_table(ar, i) for i in range(1, n)]

    def compatible(x, y):
        return all(t[x, y] == 0 and t[y, x] == 0 for t in tables)

    mandatory = sorted(set(ar.projective_ids) | set(ar.injective_ids))
    if not all(compatible(x, y) for x in mandatory for y in mandatory):
        return []
    free = [x for x in range(k) if x not in mandatory and all(compatible(x, m) for m in mandatory)]
    g = nx.Graph()
    g.add_nodes_from(free)
    g.add_edges_from((x, y) for i, x in enumerate(free) for y in free[i + 1 :] if compatible(x, y))
    cliques = [sorted(c) for c in nx.find_cliques(g)] if free else [[]]
    out = []
    for clique in sorted(cliques):
        cand = Subcategory.from_ids(ar, mandatory + clique)
        if is_n_cluster_tilting(algebra, cand, n, ar):
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# n-exactness


def _rank_of_maps(maps, p) -> int:
    vecs = [f.flat() for f in maps]
    vecs = [v for v in vecs if v.size]
    return la.rank(np.vstack(vecs), p) if vecs else 0


def check_n_exact(seq: NExactSequence, probe) -> Verdict:
    seq.check_shape()
    p = seq.terms[0].p
    for k in range(len(seq.maps) - 1):
        if not (seq.maps[k + 1] @ seq.maps[k]).is_zero():
            return Verdict(False, {"kind": "nonzero-composite", "at": k})
    last = len(seq.terms) - 1
    for yi, y in enumerate(probe):
        # covariant Hom(Y, -): exact at terms 0 .. n (injective at term 0)
        rin = 0
        for k in range(last):
            hb = hom_basis(y, seq.terms[k])
            rout = _rank_of_maps([seq.maps[k] @ h for h in hb.basis], p)
            if hb.dimension - rout != rin:
                return Verdict(False, {"kind": "covariant", "probe": yi, "term": k})
            rin = rout
        # contravariant Hom(-, Y): exact at terms last .. 1 (injective at the last term)
        rin = 0
        for k in range(last, 0, -1):
            hb = hom_basis(seq.terms[k], y)
            rout = _rank_of_maps([h @ seq.maps[k - 1] for h in hb.basis], p)
            if hb.dimension - rout != rin:
                return Verdict(False, {"kind": "contravariant", "probe": yi, "term": k})
            rin = rout
    return Verdict(True, None)


def is_n_exact(seq: NExactSequence, probe) -> bool:
    return check_n_exact(seq, probe).ok


# ---------------------------------------------------------------------------
# n-almost split sequences


def _iso_component(f: Morphism) -> dict | None:
    """An isomorphism between indecomposable summands appearing as a component of f."""
    sx, sy = split_module(f.source), split_module(f.target)
    for a, s in enumerate(sx):
        for b, t in enumerate(sy):
            if s.module.dims != t.module.dims:
                continue
            comp = t.projection @ f @ s.inclusion
            if comp.is_iso():
                return {"source_summand": a, "target_summand": b, "dims": list(s.module.dims)}
    return None


def _is_radical(f: Morphism) -> bool:
    rb = radical_hom_basis(f.source, f.target)
    if f.is_zero():
        return True
    return rb.dimension > 0 and la.in_span(rb.matrix, f.flat(), f.p)


def check_n_almost_split(subcat: Subcategory, seq: NExactSequence) -> Verdict:
    seq.check_shape()
    p = seq.terms[0].p
    for k, f in enumerate(seq.maps):
        if not _is_radical(f):
            comp = _iso_component(f)
            return Verdict(False, {"kind": "identity-component" if comp else "non-radical", "map": k, "component": comp})
    ex = check_n_exact(seq, subcat.members)
    if not ex.ok:
        return Verdict(False, {"kind": "not-n-exact", "detail": ex.witness})
    a0 = seq.terms[-1]
    d1 = seq.maps[-1]
    last = len(seq.terms) - 1
    for zi, z in enumerate(subcat.members):
        rin = 0
        for k in range(last - 1):
            hb = hom_basis(z, seq.terms[k])
            rout = _rank_of_maps([seq.maps[k] @ h for h in hb.basis], p)
            if hb.dimension - rout != rin:
                return Verdict(False, {"kind": "hom-exactness", "probe": zi, "term": k})
            rin = rout
        hb = hom_basis(z, seq.terms[last - 1])
        img = _rank_of_maps([d1 @ h for h in hb.basis], p)
        if hb.dimension - img != rin:
            return Verdict(False, {"kind": "hom-exactness", "probe": zi, "term": last - 1})
        if img != radical_hom_basis(z, a0).dimension:
            return Verdict(False, {"kind": "radical-image", "probe": zi})
    return Verdict(True, None)


def is_n_almost_split(subcat: Subcategory, seq: NExactSequence) -> bool:
    return check_n_almost_split(subcat, seq).ok


def n_almost_split_ending_at(subcat: Subcategory, a0: Module, n: int) -> NExactSequence:
    """Cover J(-, A_0)|_M, then approximate successive kernels; the last kernel must be indecomposable in M."""
    if is_projective(a0):
        raise ProjectiveEnd("A_0 is projective")
    end_idx = subcat.index_of(a0)
    if end_idx is None:
        raise MemberEscape("A_0 is not a member")
    a0 = subcat.members[end_idx]
    members = subcat.members
    targets = [radical_hom_basis(m, a0).basis for m in members]
    cover = minimal_right_approximation(members, a0, targets)
    terms = [a0, cover.source]
    maps = [cover.map]
    parts = [[end_idx], cover.parts]
    fz = factorize(cover.map)
    k, kinc = fz.kernel, fz.kernel_map
    for _ in range(n - 1):
        if k.total_dim == 0:
            raise ConstructionFailure("kernel vanished before n steps")
        a = minimal_right_approximation(members, k)
        if not a.map.is_epi():
            raise ConstructionFailure("approximation of a kernel is not surjective")
        terms.append(a.source)
        maps.append(kinc @ a.map)
        parts.append(a.parts)
        fz = factorize(a.map)
        k, kinc = fz.kernel, fz.kernel_map
    if k.total_dim == 0 or len(split_module(k)) != 1:
        raise ConstructionFailure("last kernel is not indecomposable")
    last = subcat.index_of(k)
    if last is None:
        raise ConstructionFailure("last kernel is not in M")
    iso = _iso_indecomposable(members[last], k)
    terms.append(members[last])
    maps.append(kinc @ iso)
    parts.append([last])
    seq = NExactSequence(n, terms[::-1], maps[::-1], parts[::-1])
    return seq


# ---------------------------------------------------------------------------
# defects and indices


def contravariant_defect(subcat: Subcategory, seq: NExactSequence) -> DefectVector:
    seq.check_shape()
    p = seq.terms[0].p
    x0, d1 = seq.terms[-1], seq.maps[-1]
    vals = []
    for z in subcat.members:
        total = hom_basis(z, x0).dimension
        img = _rank_of_maps([d1 @ h for h in hom_basis(z, d1.source).basis], p)
        vals.append(total - img)
    return DefectVector(subcat, vals)


def index_vector(subcat: Subcategory, x: Module, n: int, strategy: str = "minimal") -> IndexVector:
    """Alternating sum of the terms of a right M-resolution, in the member basis."""
    res = right_M_resolution(subcat.members, x, n, strategy)
    coeffs = [0] * len(subcat.members)
    for i, part in enumerate(res.parts):
        for j in part:
            coeffs[j] += (-1) ** i
    return IndexVector(subcat, coeffs, res)
