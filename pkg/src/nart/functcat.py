"""Finitely presented functors on a finite subcategory M, given by presentations in add(M).

A morphism ``f: X -> Y`` in add(M) presents ``F = coker Hom(-, f)``, so that
``F(Z) = Hom(Z, Y) / f Hom(Z, X)``.  Under projectivization F becomes a right
module over Gamma = End(G), G the direct sum of the members; composition series
are read off from its radical filtration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algcore import Module, Morphism, factorize, hom_basis, matrix_morphism, radical_hom_basis, zero_module
from .ctilt import NExactSequence, Subcategory
from .homlab import minimal_right_approximation, right_M_resolution


def _span_rows(rows, width, p):
    rows = [r for r in rows if r.size]
    return la.row_basis(np.vstack(rows), p) if rows else la.zeros(0, width)


@dataclass
class GammaModule:
    """F(G) as a right End(G)-module, kept member by member.

    ``ambient[k]`` is Hom(A_k, Y) (rows = flattened maps) and ``image[k]`` the
    span of ``f Hom(A_k, X)`` inside it; F(A_k) is their quotient.
    """

    subcat: Subcategory
    target: Module
    ambient: list[np.ndarray]
    image: list[np.ndarray]

    @property
    def dimension(self) -> int:
        return sum(a.shape[0] - i.shape[0] for a, i in zip(self.ambient, self.image))

    def radical_layers(self) -> list[list[int]]:
        """dim of (F J^k / F J^{k+1}) at each member, for k = 0, 1, ..."""
        p = self.target.p
        members = self.subcat.members
        cur = [la.row_basis(a, p) if a.shape[0] else a for a in self.ambient]
        layers = []
        while any(c.shape[0] > i.shape[0] for c, i in zip(cur, self.image)):
            nxt = []
            for k, a in enumerate(members):
                width = self.ambient[k].shape[1]
                rows = [self.image[k]]
                for b_idx, b in enumerate(members):
                    if cur[b_idx].shape[0] == 0:
                        continue
                    for j in radical_hom_basis(a, b).basis:
                        for vec in cur[b_idx]:
                            g = Morphism.from_flat(b, self.target, vec)
                            rows.append((g @ j).flat().reshape(1, -1))
                nxt.append(_span_rows(rows, width, p))
            layers.append([c.shape[0] - n.shape[0] for c, n in zip(cur, nxt)])
            cur = nxt
        return layers


@dataclass
class FpFunctor:
    subcat: Subcategory
    presentation: Morphism
    values: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.values:
            self.values = [_evaluate_raw(self.presentation, z) for z in self.subcat.members]

    def gamma_module(self) -> GammaModule:
        f = self.presentation
        p = f.p
        amb, img = [], []
        for z in self.subcat.members:
            hb = hom_basis(z, f.target)
            width = hb.matrix.shape[1]
            amb.append(hb.matrix if hb.dimension else la.zeros(0, width))
            img.append(_span_rows([(f @ h).flat().reshape(1, -1) for h in hom_basis(z, f.source).basis], width, p))
        return GammaModule(self.subcat, f.target, amb, img)


def _evaluate_raw(f: Morphism, z: Module) -> int:
    total = hom_basis(z, f.target).dimension
    vecs = [(f @ h).flat() for h in hom_basis(z, f.source).basis]
    vecs = [v for v in vecs if v.size]
    return total - (la.rank(np.vstack(vecs), f.p) if vecs else 0)


def make_functor(subcat: Subcategory, f: Morphism) -> FpFunctor:
    subcat.multiplicities(f.source)  # MemberEscape if outside add(M)
    subcat.multiplicities(f.target)
    return FpFunctor(subcat, f)


def evaluate(functor: FpFunctor, z: Module) -> int:
    """dim F(Z) for Z in add(M)."""
    mult = functor.subcat.multiplicities(z)
    return sum(c * v for c, v in zip(mult, functor.values))


def is_effaceable(functor: FpFunctor) -> bool:
    return functor.presentation.is_epi()


def simple_functor(subcat: Subcategory, a: Module) -> FpFunctor:
    """S_A = Hom(-, A)/J(-, A) on M, presented by a minimal cover of J(-, A)|_M."""
    k = subcat.index_of(a)
    if k is None:
        raise ValueError("A is not a member")
    a = subcat.members[k]
    targets = [radical_hom_basis(m, a).basis for m in subcat.members]
    cover = minimal_right_approximation(subcat.members, a, targets)
    return FpFunctor(subcat, cover.map)


def length_and_factors(functor: FpFunctor) -> dict[int, int]:
    """Composition factors as ``{member index: multiplicity}``."""
    gm = functor.gamma_module()
    l = functor.subcat.residue_dims()
    out: dict[int, int] = {}
    for layer in gm.radical_layers():
        for k, d in enumerate(layer):
            if d % l[k]:
                raise ArithmeticError("radical layer not a multiple of the residue dimension")
            if d:
                out[k] = out.get(k, 0) + d // l[k]
    return out


def functor_length(functor: FpFunctor) -> int:
    return sum(length_and_factors(functor).values())


def support(functor: FpFunctor) -> set[int]:
    return {k for k, v in enumerate(functor.values) if v}


def restrict_to_M(subcat: Subcategory, f: Morphism) -> FpFunctor:
    """Re-present coker Hom(-, f) restricted to M with terms in add(M).

    With eps: t_0 -> Y an approximation and P the pullback of eps and f,
    F(Z) = Hom(Z, t_0) / (maps through P); approximating P closes the presentation.
    """
    members = subcat.members
    eps = minimal_right_approximation(members, f.target)
    pull, src, _ = matrix_morphism([eps.source, f.source], [f.target], [[eps.map, -f]])
    fz = factorize(pull)
    to_t0 = src.projections[0] @ fz.kernel_map
    cover = minimal_right_approximation(members, fz.kernel)
    return FpFunctor(subcat, to_t0 @ cover.map)


def n_exact_from_epi(subcat: Subcategory, g: Morphism, n: int) -> NExactSequence:
    """X_{n+1} -> ... -> X_2 -> X -> Y from an epi g: X -> Y in add(M) (its n-kernel).

    The contravariant defect of the result is the effaceable functor presented by g.
    """
    if not g.is_epi():
        raise ValueError("presentation must be an epimorphism")
    fz = factorize(g)
    res = right_M_resolution(subcat.members, fz.kernel, n)
    chain = list(res.terms)
    maps = list(res.maps)
    into_x = [fz.kernel_map @ res.augmentation] if chain else []
    # pad with zero terms so there are n + 2 of them
    z = zero_module(g.source.algebra)
    while len(chain) < n:
        chain.append(z)
        if len(chain) == 1:
            into_x = [Morphism.zero(z, g.source)]
        else:
            maps.append(Morphism.zero(z, chain[-2]))
    return NExactSequence(n, chain[::-1] + [g.source, g.target], maps[::-1] + into_x + [g])
