"""Projective covers, Ext, the AR translate, almost split sequences, knitting, approximations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import linalg as la
from .algcore import (
    BoundAlgebra,
    DirectSum,
    Module,
    Morphism,
    direct_sum,
    dual,
    factorize,
    hom_basis,
    hom_from_projective,
    local_data,
    matrix_morphism,
    quotient,
    radical_hom_basis,
    radical_submodule,
    socle_bases,
    split_module,
    standard_modules,
    _iso_indecomposable,
)
from .errors import ProjectiveInput, ResolutionOverrun, SocleSearchFailure

DEFAULT_KNIT_CAP = 512


# ---------------------------------------------------------------------------
# small morphism utilities


def solve_lift(epi: Morphism, g: Morphism) -> Morphism | None:
    """Some h with ``epi @ h == g`` (h: g.source -> epi.source), or None."""
    hb = hom_basis(g.source, epi.source)
    p = g.p
    if hb.dimension == 0:
        return Morphism.zero(g.source, epi.source) if g.is_zero() else None
    cols = np.vstack([(epi @ h).flat() for h in hb.basis])
    c = la.solve(cols.T, g.flat(), p)
    return None if c is None else hb.combination(c)


def solve_extension(mono: Morphism, g: Morphism) -> Morphism | None:
    """Some h with ``h @ mono == g`` (h: mono.target -> g.target), or None."""
    hb = hom_basis(mono.target, g.target)
    p = g.p
    if hb.dimension == 0:
        return Morphism.zero(mono.target, g.target) if g.is_zero() else None
    cols = np.vstack([(h @ mono).flat() for h in hb.basis])
    c = la.solve(cols.T, g.flat(), p)
    return None if c is None else hb.combination(c)


def factor_through_mono(mono: Morphism, g: Morphism) -> Morphism:
    """The unique h with ``mono @ h == g``; requires im g inside im mono."""
    p = g.p
    blocks = []
    for m, b in zip(mono.blocks, g.blocks):
        if m.shape[1] == 0:
            blocks.append(la.zeros(0, b.shape[1]))
        else:
            blocks.append(la.coordinates(m.T, b.T, p).T)
    return Morphism(g.source, mono.source, blocks, check=False)


def factor_through_epi(epi: Morphism, g: Morphism) -> Morphism:
    """The unique h with ``h @ epi == g``; requires ker epi inside ker g."""
    p = g.p
    blocks = []
    for e, b in zip(epi.blocks, g.blocks):
        if e.shape[0] == 0:
            blocks.append(la.zeros(b.shape[0], 0))
            continue
        section = la.solve(e, la.eye(e.shape[0]), p)
        blocks.append(la.matmul(b, section, p))
    return Morphism(epi.target, g.target, blocks, check=False)


def has_section(epi: Morphism) -> bool:
    """True if some s satisfies ``epi @ s == id``."""
    return solve_lift(epi, Morphism.identity(epi.target)) is not None


def has_retraction(mono: Morphism) -> bool:
    return solve_extension(mono, Morphism.identity(mono.source)) is not None


# ---------------------------------------------------------------------------
# projective covers and resolutions


class Cover(NamedTuple):
    module: Module
    epi: Morphism
    vertices: list[str]  # P = (+) P_v over this list


def projective_cover(m: Module) -> Cover:
    alg = m.algebra
    p = m.p
    rad, rinc = radical_submodule(m)
    projs = standard_modules(alg).projectives
    parts, verts, maps = [], [], []
    for v, d in enumerate(m.dims):
        if d == 0:
            continue
        sub = rinc.blocks[v].T
        for vec in la.complement(sub, d, p):
            verts.append(alg.vertices[v])
            parts.append(projs[v])
            maps.append(hom_from_projective(alg, alg.vertices[v], m, vec))
    ds = direct_sum(parts, alg)
    epi = Morphism.zero(ds.module, m)
    for f, pr in zip(maps, ds.projections):
        epi = epi + f @ pr
    return Cover(ds.module, epi, verts)


@dataclass
class ProjectiveResolution:
    """Minimal projective resolution, computed lazily.

    ``syzygies[0]`` is the module itself; ``covers[i]`` covers ``syzygies[i]`` and
    ``inclusions[i]`` embeds ``syzygies[i+1]`` into ``covers[i].module``.
    """

    syzygies: list[Module]
    covers: list[Cover] = field(default_factory=list)
    inclusions: list[Morphism] = field(default_factory=list)

    def extend_to(self, i: int) -> None:
        while len(self.covers) < i:
            top = self.syzygies[-1]
            cov = projective_cover(top)
            fz = factorize(cov.epi)
            self.covers.append(cov)
            self.inclusions.append(fz.kernel_map)
            self.syzygies.append(fz.kernel)


def projective_resolution(m: Module, length: int = 1) -> ProjectiveResolution:
    res = m._cache.get("projres")
    if res is None:
        res = ProjectiveResolution([m])
        m._cache["projres"] = res
    res.extend_to(length)
    return res


def ext_dim(x: Module, y: Module, i: int) -> int:
    """dim Ext^i(X, Y) = dim Hom(Omega^i X, Y) - dim(image of Hom(P_{i-1}, Y))."""
    if i < 1:
        raise ValueError("ext_dim needs i >= 1")
    res = projective_resolution(x, i)
    omega = res.syzygies[i]
    if omega.total_dim == 0:
        return 0
    inc = res.inclusions[i - 1]
    total = hom_basis(omega, y).dimension
    restricted = [(g @ inc).flat() for g in hom_basis(inc.target, y).basis]
    r = la.rank(np.vstack(restricted), x.p) if restricted else 0
    return total - r


def is_projective(m: Module) -> bool:
    hit = m._cache.get("isproj")
    if hit is None:
        hit = projective_cover(m).module.dims == m.dims
        m._cache["isproj"] = hit
    return hit


def is_injective(m: Module) -> bool:
    return is_projective(dual(m))


# ---------------------------------------------------------------------------
# Auslander-Reiten translate


def _presentation_elements(d: Morphism, src: Cover, tgt: Cover):
    """Component (t, s) of d: src -> tgt as an element of (P_{tgt_s})_{src_t} in path coordinates."""
    alg = d.source.algebra
    ds_src = direct_sum([standard_modules(alg).projectives[alg.quiver.vertex_index(v)] for v in src.vertices], alg)
    ds_tgt = direct_sum([standard_modules(alg).projectives[alg.quiver.vertex_index(v)] for v in tgt.vertices], alg)
    out = {}
    for t, j in enumerate(src.vertices):
        jx = alg.quiver.vertex_index(j)
        unit = alg.paths_between(j, j).index(alg._index[(j, ())])
        for s, i in enumerate(tgt.vertices):
            comp = ds_tgt.projections[s] @ d @ ds_src.inclusions[t]
            out[(t, s)] = comp.blocks[jx][:, unit].copy()
    return out


def transpose(m: Module) -> Module:
    """Tr M, a module over the opposite algebra (from a minimal presentation)."""
    alg = m.algebra
    op = alg.opposite()
    res = projective_resolution(m, 2)
    c0, c1 = res.covers[0], res.covers[1]
    d = res.inclusions[0] @ c1.epi  # p1 -> p0
    elems = _presentation_elements(d, c1, c0)
    op_proj = standard_modules(op).projectives
    src_parts = [op_proj[alg.quiver.vertex_index(v)] for v in c0.vertices]
    tgt_parts = [op_proj[alg.quiver.vertex_index(v)] for v in c1.vertices]
    grid = []
    for t, j in enumerate(c1.vertices):
        row = []
        for s, i in enumerate(c0.vertices):
            vec = elems[(t, s)]
            row.append(hom_from_projective(op, i, tgt_parts[t], vec) if vec.size else None)
        grid.append(row)
    f, _, _ = matrix_morphism(src_parts, tgt_parts, grid) if tgt_parts else (None, None, None)
    if f is None:
        return Module(op, [0] * len(op.vertices), check=False)
    return factorize(f).cokernel


def ar_translate(m: Module) -> Module:
    """tau M = D Tr M."""
    if is_projective(m):
        raise ProjectiveInput("AR translate of a projective module")
    hit = m._cache.get("tau")
    if hit is None:
        hit = dual(transpose(m))
        m._cache["tau"] = hit
    return hit


def ar_translate_inverse(m: Module) -> Module:
    """tau^{-1} M = Tr D M."""
    if is_injective(m):
        raise ProjectiveInput("inverse AR translate of an injective module")
    hit = m._cache.get("tauinv")
    if hit is None:
        hit = transpose(dual(m))
        m._cache["tauinv"] = hit
    return hit


# ---------------------------------------------------------------------------
# extensions and almost split sequences


@dataclass
class ShortExact:
    """0 -> left --mono--> middle --epi--> right -> 0."""

    left: Module
    middle: Module
    right: Module
    mono: Morphism
    epi: Morphism

    @property
    def terms(self):
        return [self.left, self.middle, self.right]

    @property
    def maps(self):
        return [self.mono, self.epi]


class Ext1Space(NamedTuple):
    """Ext^1(C, Y) = Hom(Omega C, Y) / restrictions from Hom(P_0, Y)."""

    c: Module
    y: Module
    hom: object  # HomBasis(Omega C, Y)
    coboundaries: np.ndarray  # rows in hom coordinates
    representatives: np.ndarray  # rows in hom coordinates, a basis of a complement

    @property
    def dimension(self) -> int:
        return self.representatives.shape[0]


def ext1_space(c: Module, y: Module) -> Ext1Space:
    res = projective_resolution(c, 1)
    omega, inc = res.syzygies[1], res.inclusions[0]
    hb = hom_basis(omega, y)
    p = c.p
    rows = []
    for g in hom_basis(inc.target, y).basis:
        rows.append(hb.coordinates(g @ inc))
    cob = la.row_basis(np.vstack(rows), p) if rows and hb.dimension else la.zeros(0, hb.dimension)
    reps = la.complement(cob, hb.dimension, p)
    return Ext1Space(c, y, hb, cob, reps)


def extension_from_cocycle(c: Module, y: Module, eta: Morphism) -> ShortExact:
    """Pushout of 0 -> Omega C -> P_0 -> C -> 0 along eta: Omega C -> Y."""
    res = projective_resolution(c, 1)
    inc, cover = res.inclusions[0], res.covers[0]
    omega, p0 = res.syzygies[1], cover.module
    f, src, tgt = matrix_morphism([omega], [p0, y], [[inc], [-eta]])
    fz = factorize(f)
    mid = fz.cokernel
    mono = fz.cokernel_map @ tgt.inclusions[1]
    epi = factor_through_epi(fz.cokernel_map, cover.epi @ tgt.projections[0])
    return ShortExact(y, mid, c, mono, epi)


def _endo_action_on_omega(c: Module, phi: Morphism) -> Morphism:
    res = projective_resolution(c, 1)
    inc, cover = res.inclusions[0], res.covers[0]
    lift = solve_lift(cover.epi, phi @ cover.epi)
    return factor_through_mono(inc, lift @ inc)


def almost_split_sequence(c: Module) -> ShortExact:
    """The almost split sequence 0 -> tau C -> E -> C -> 0 for indecomposable non-projective C."""
    hit = c._cache.get("ass")
    if hit is not None:
        return hit
    if is_projective(c):
        raise ProjectiveInput("no almost split sequence ends at a projective module")
    y = ar_translate(c)
    ext = ext1_space(c, y)
    p = c.p
    if ext.dimension == 0:
        raise SocleSearchFailure("Ext^1(C, tau C) vanished")
    ld = local_data(c)
    if ld is None:
        raise SocleSearchFailure("C has no certified local endomorphism ring")
    hb = ext.hom
    # functionals on Hom(Omega C, Y) whose common kernel is the coboundaries
    q = la.left_nullspace(ext.coboundaries.T, p) if ext.coboundaries.shape[0] else la.eye(hb.dimension)
    constraints = []
    for coeffs in ld.radical:
        r1 = _endo_action_on_omega(c, ld.end.combination(coeffs))
        t = np.vstack([hb.coordinates(g @ r1) for g in hb.basis]).T  # column k = image of basis k
        constraints.append(la.matmul(q, t, p))
    socle = la.nullspace(np.vstack(constraints), p) if constraints else la.eye(hb.dimension)
    for vec in socle:
        if not la.in_span(ext.coboundaries, vec, p):
            seq = extension_from_cocycle(c, y, hb.combination(vec))
            if not has_section(seq.epi):
                c._cache["ass"] = seq
                return seq
    raise SocleSearchFailure("no socle element of Ext^1(C, tau C) gave a non-split extension")


# ---------------------------------------------------------------------------
# AR quiver knitting


@dataclass
class ARQuiver:
    algebra: BoundAlgebra
    indecomposables: list[Module]
    irreducible_multiplicities: dict[tuple[int, int], int]
    translate: dict[int, int]
    complete: bool
    sequences: dict[int, ShortExact] = field(default_factory=dict)
    projective_ids: list[int] = field(default_factory=list)
    injective_ids: list[int] = field(default_factory=list)

    def __len__(self):
        return len(self.indecomposables)

    def index_of(self, m: Module) -> int | None:
        for k, x in enumerate(self.indecomposables):
            if x is m:
                return k
        for k, x in enumerate(self.indecomposables):
            if x.dims == m.dims and _iso_indecomposable(x, m) is not None:
                return k
        return None

    def multiplicities(self, m: Module) -> list[int]:
        """Multiplicity vector of a module over the indecomposables (Krull-Schmidt)."""
        out = [0] * len(self.indecomposables)
        for s in split_module(m):
            k = self.index_of(s.module)
            if k is None:
                raise KeyError("summand not among the knitted indecomposables")
            out[k] += 1
        return out


def knit_ar_quiver(algebra: BoundAlgebra, cap: int = DEFAULT_KNIT_CAP) -> ARQuiver:
    """Enumerate ind(mod Lambda) by closing the injectives under AR sequences and tau^{-1}."""
    std = standard_modules(algebra)
    ar = ARQuiver(algebra, [], {}, {}, False)

    def register(m: Module) -> tuple[int, bool]:
        k = ar.index_of(m)
        if k is not None:
            return k, False
        if len(ar.indecomposables) >= cap:
            raise _CapHit
        ar.indecomposables.append(m)
        queue.append(len(ar.indecomposables) - 1)
        return len(ar.indecomposables) - 1, True

    def summands(m: Module):
        counts: dict[int, int] = {}
        for s in split_module(m):
            k, _ = register(s.module)
            counts[k] = counts.get(k, 0) + 1
        return counts

    queue: deque[int] = deque()
    try:
        for inj in std.injectives:
            register(inj)
        while queue:
            k = queue.popleft()
            x = ar.indecomposables[k]
            if is_projective(x):
                rad, _ = radical_submodule(x)
                for j, mult in summands(rad).items():
                    ar.irreducible_multiplicities[(j, k)] = mult
            else:
                seq = almost_split_sequence(x)
                ar.sequences[k] = seq
                for j, mult in summands(seq.middle).items():
                    ar.irreducible_multiplicities[(j, k)] = mult
                t, _ = register(seq.left)
                ar.translate[k] = t
            if is_injective(x):
                q, _ = quotient(x, socle_bases(x))
                for j, mult in summands(q).items():
                    ar.irreducible_multiplicities[(k, j)] = mult
            else:
                register(ar_translate_inverse(x))
        ar.complete = True
    except _CapHit:
        ar.complete = False
    n = len(ar.indecomposables)
    ar.projective_ids = [k for k in range(n) if is_projective(ar.indecomposables[k])]
    ar.injective_ids = [k for k in range(n) if is_injective(ar.indecomposables[k])]
    return ar


class _CapHit(Exception):
    pass


# ---------------------------------------------------------------------------
# approximations and resolutions


@dataclass
class Approximation:
    source: Module
    map: Morphism
    parts: list[int]  # member index of each summand of source
    summands: DirectSum


def _precompose_span(members, targets, n_idx, p):
    """span{ g @ j : g in targets[N'], j in J(N, N') } inside Hom(N, X)."""
    n = members[n_idx]
    rows = []
    for k, other in enumerate(members):
        if not targets[k]:
            continue
        for j in radical_hom_basis(n, other).basis:
            for g in targets[k]:
                rows.append((g @ j).flat())
    return rows


def minimal_right_approximation(members, x: Module, targets=None) -> Approximation:
    """Minimal right add(members)-approximation of X.

    With ``targets`` (one list of maps N -> X per member, spanning a subfunctor of
    Hom(-, X)), this is instead a minimal cover of that subfunctor.
    """
    p = x.p
    alg = x.algebra
    if targets is None:
        targets = [hom_basis(n, x).basis for n in members]
    parts, maps = [], []
    for idx, n in enumerate(members):
        if not targets[idx]:
            continue
        cur = _precompose_span(members, targets, idx, p)
        width = targets[idx][0].flat().shape[0]
        span = la.row_basis(np.vstack(cur), p) if cur else la.zeros(0, width)
        endo = hom_basis(n, n).basis
        for h in targets[idx]:
            if la.in_span(span, h.flat(), p):
                continue
            parts.append(idx)
            maps.append(h)
            new = [(h @ e).flat() for e in endo]
            span = la.row_basis(np.vstack([span] + new) if span.shape[0] else np.vstack(new), p)
    ds = direct_sum([members[i] for i in parts], alg)
    total = Morphism.zero(ds.module, x)
    for h, pr in zip(maps, ds.projections):
        total = total + h @ pr
    return Approximation(ds.module, total, parts, ds)


def generous_right_approximation(members, x: Module) -> Approximation:
    """Non-minimal approximation using every Hom basis map from every member."""
    alg = x.algebra
    parts, maps = [], []
    for idx, n in enumerate(members):
        for h in hom_basis(n, x).basis:
            parts.append(idx)
            maps.append(h)
    ds = direct_sum([members[i] for i in parts], alg)
    total = Morphism.zero(ds.module, x)
    for h, pr in zip(maps, ds.projections):
        total = total + h @ pr
    return Approximation(ds.module, total, parts, ds)


@dataclass
class Resolution:
    """0 -> t_{k-1} -> ... -> t_0 -> X -> 0 with ``maps[i]: t_i -> t_{i-1}`` (i >= 1)."""

    x: Module
    terms: list[Module]
    maps: list[Morphism]
    augmentation: Morphism
    parts: list[list[int]]  # member indices of the summands of each term


def add_multiplicities(members, m: Module) -> list[int] | None:
    """Multiplicities of the members in m, or None if m is not in add(members)."""
    out = [0] * len(members)
    for s in split_module(m):
        for k, x in enumerate(members):
            if x.dims == s.module.dims and _iso_indecomposable(x, s.module) is not None:
                out[k] += 1
                break
        else:
            return None
    return out


def right_M_resolution(members, x: Module, n: int, strategy: str = "minimal") -> Resolution:
    """Approximate successive kernels until one lies in add(members); at most n terms."""
    approx = {"minimal": minimal_right_approximation, "generous": generous_right_approximation}[strategy]
    terms, maps, parts = [], [], []
    aug = None
    k, kinc = x, Morphism.identity(x)
    for step in range(n):
        if k.total_dim == 0:
            break
        mult = add_multiplicities(members, k)
        if mult is not None:
            terms.append(k)
            parts.append([j for j, c in enumerate(mult) for _ in range(c)])
            if step == 0:
                aug = kinc
            else:
                maps.append(kinc)
            k = None
            break
        if step == n - 1:
            break
        a = approx(members, k)
        if not a.map.is_epi():
            raise ResolutionOverrun("approximation is not surjective (projectives missing?)")
        fz = factorize(a.map)
        terms.append(a.source)
        parts.append(a.parts)
        if step == 0:
            aug = a.map
        else:
            maps.append(kinc @ a.map)
        k, kinc = fz.kernel, fz.kernel_map
    if k is not None and k.total_dim:
        raise ResolutionOverrun(f"kernel not in add(M) after {n} steps")
    if aug is None:
        aug = Morphism.zero(x, x)
    return Resolution(x, terms, maps, aug, parts)
