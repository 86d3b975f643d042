"""Grothendieck groups of n-cluster tilting subcategories and the verifiers built on them.

Vectors are indexed by the members of a Subcategory (or by the knitted
indecomposables for mod Lambda itself).  A relation vector of an n-exact
sequence X_{n+1} -> ... -> X_0 is sum_i (-1)^i [X_i], so X_0 enters with +1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import sympy

from .algcore import BoundAlgebra, Module, direct_sum, hom_basis, radical_submodule
from .ctilt import (
    NExactSequence,
    Subcategory,
    check_n_almost_split,
    contravariant_defect,
    index_vector,
    is_n_cluster_tilting,
    is_n_exact,
    n_almost_split_ending_at,
)
from .errors import ConstructionFailure, IncompleteARQuiver, NotNExact, ResolutionOverrun
from .functcat import length_and_factors, restrict_to_M
from .homlab import ARQuiver, ShortExact, ext1_space, extension_from_cocycle, is_projective
from .lattice import SNF, Lattice, integer_kernel, invariant_factors, smith_normal_form
from .report import FAIL, UNVERIFIABLE, Report


@dataclass
class K0Presentation:
    basis_labels: list[str]
    relation_matrix: list[list[int]]
    snf: SNF | None
    invariant_factors: list[int]

    @property
    def free_rank(self) -> int:
        return len(self.basis_labels) - len(self.invariant_factors)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.invariant_factors if d != 1]


def member_labels(subcat: Subcategory) -> list[str]:
    ids = subcat.ids if subcat.ids is not None else range(len(subcat.members))
    return [f"X{i}[{','.join(map(str, m.dims))}]" for i, m in zip(ids, subcat.members)]


def ar_labels(ar: ARQuiver) -> list[str]:
    return [f"X{i}[{','.join(map(str, m.dims))}]" for i, m in enumerate(ar.indecomposables)]


# ---------------------------------------------------------------------------
# basic vectors and matrices


def relation_vector(subcat: Subcategory, seq: NExactSequence, *, check: bool = True) -> list[int]:
    if check and not is_n_exact(seq, subcat.members):
        raise NotNExact("sequence is not n-exact on M")
    out = [0] * len(subcat.members)
    parts = seq.parts
    for k, term in enumerate(reversed(seq.terms)):
        sign = (-1) ** k
        if parts is not None:
            mult = [0] * len(out)
            for j in parts[len(parts) - 1 - k]:
                mult[j] += 1
        else:
            mult = subcat.multiplicities(term)
        out = [a + sign * b for a, b in zip(out, mult)]
    return out


def composition_factor_matrix(ar: ARQuiver) -> list[list[int]]:
    """Rows: dimension vectors (simples are one-dimensional for bound quiver algebras)."""
    if not ar.complete:
        raise IncompleteARQuiver("AR quiver is partial")
    return [list(m.dims) for m in ar.indecomposables]


def relation_lattice_mod_lambda(ar: ARQuiver) -> Lattice:
    c = composition_factor_matrix(ar)
    return Lattice(len(c), integer_kernel(c))


def gram_matrix(subcat: Subcategory) -> list[list[int]]:
    return [[hom_basis(x, y).dimension for y in subcat.members] for x in subcat.members]


def _nass_cache(subcat: Subcategory, n: int) -> dict:
    return subcat.__dict__.setdefault("_nass", {}).setdefault(n, {})


def nass_sequence(subcat: Subcategory, k: int, n: int) -> NExactSequence:
    cache = _nass_cache(subcat, n)
    if k not in cache:
        cache[k] = n_almost_split_ending_at(subcat, subcat.members[k], n)
    return cache[k]


def beta_vector(subcat: Subcategory, a: Module, n: int) -> list[int]:
    """Relation of the n-almost split sequence ending at A, or [A] - Ind(rad A) for projective A."""
    k = subcat.index_of(a)
    if k is None:
        raise ValueError("A is not a member")
    if is_projective(subcat.members[k]):
        rad, _ = radical_submodule(subcat.members[k])
        ind = index_vector(subcat, rad, n).coeffs
        return [int(j == k) - c for j, c in enumerate(ind)]
    return relation_vector(subcat, nass_sequence(subcat, k, n), check=False)


def beta_matrix(subcat: Subcategory, n: int) -> list[list[int]]:
    return [beta_vector(subcat, a, n) for a in subcat.members]


def k0_presentation(subcat: Subcategory, n: int) -> K0Presentation:
    """K_0(M) = Z^members / (n-almost split relations)."""
    rows = [beta_vector(subcat, a, n) for a in subcat.members if not is_projective(a)]
    if rows:
        snf = smith_normal_form(rows)
        inv = snf.invariant_factors
    else:
        snf, inv = None, []
    return K0Presentation(member_labels(subcat), rows, snf, inv)


def _det(rows) -> int:
    return int(sympy.Matrix(rows).det()) if rows else 1


# ---------------------------------------------------------------------------
# verifiers


def _require_ct(report: Report, algebra: BoundAlgebra, subcat: Subcategory, n: int, ar: ARQuiver) -> bool:
    if not ar.complete:
        raise IncompleteARQuiver("AR quiver is partial; finite type not certified")
    verdict = is_n_cluster_tilting(algebra, subcat, n, ar)
    report.add("n-cluster tilting", verdict.ok, verdict.witness)
    if not verdict.ok:
        report.verdict = UNVERIFIABLE
    return verdict.ok


def verify_orthogonality(subcat: Subcategory, n: int) -> Report:
    """<[X], beta_A> = l_A if X = A and 0 otherwise; the beta vectors are independent."""
    rep = Report(title=f"orthogonality (n = {n})", basis_order=member_labels(subcat))
    g = gram_matrix(subcat)
    l = subcat.residue_dims()
    betas = beta_matrix(subcat, n)
    for k, beta in enumerate(betas):
        pairing = [sum(a * b for a, b in zip(row, beta)) for row in g]
        expected = [l[k] if j == k else 0 for j in range(len(g))]
        rep.add(f"<G, beta_{k}> = l e_{k}", pairing == expected, None if pairing == expected else {"got": pairing, "want": expected})
    det = _det(betas)
    rep.add("beta vectors independent", det != 0, {"det": det})
    rep.relation_matrix = betas
    rep.extra = {"gram": g, "residue_dims": l, "beta_det": det}
    return rep.finalize()


def verify_theorem_a(algebra: BoundAlgebra, subcat: Subcategory, n: int, ar: ARQuiver) -> Report:
    """The n-almost split relations form a basis of the relation lattice of K_0(M)."""
    rep = Report(title=f"theorem A (n = {n})", basis_order=member_labels(subcat))
    if not _require_ct(rep, algebra, subcat, n, ar):
        return rep.finalize()
    members = subcat.members
    cm = [list(m.dims) for m in members]
    rows, ends = [], []
    for k, a in enumerate(members):
        if is_projective(a):
            continue
        try:
            seq = nass_sequence(subcat, k, n)
        except ConstructionFailure as exc:
            rep.add(f"construct sequence ending at {k}", False, str(exc))
            continue
        v = check_n_almost_split(subcat, seq)
        rep.add(f"n-almost split at {k}", v.ok, v.witness)
        rows.append(relation_vector(subcat, seq, check=False))
        ends.append(k)
    rep.relation_matrix = rows
    width = len(members)
    # (i) every relation dies under the composition-factor map
    bad = [r for r in rows if any(sum(r[i] * cm[i][j] for i in range(width)) for j in range(len(cm[0])))]
    rep.add("relations in ker(pi)", not bad, bad or None)
    # (ii) independence
    rel = Lattice(width, rows)
    rep.add("relations independent", rel.dimension == len(rows), {"rank": rel.dimension, "count": len(rows)})
    # (iii) equality with the full kernel, for M and after embedding into ind(mod Lambda)
    kern = Lattice(width, integer_kernel(cm))
    index = kern.index_of(rel)
    rep.add("span = ker(composition map on M)", rel == kern, {"index": index, "hermite": rel.hermite})
    ids = subcat.ids if subcat.ids is not None and subcat.ar is ar else [ar.index_of(m) for m in members]
    full = relation_lattice_mod_lambda(ar).intersect_coordinates(ids)
    embedded = []
    for r in rows:
        e = [0] * len(ar.indecomposables)
        for i, c in zip(ids, r):
            e[i] = c
        embedded.append(e)
    emb = Lattice(len(ar.indecomposables), embedded)
    rep.add("span = ker(pi_Lambda) on member coordinates", emb == full, {"hermite": full.hermite})
    # (iv) one relation per non-projective member
    nonproj = sum(1 for m in members if not is_projective(m))
    rep.add("count = non-projective members", len(rows) == nonproj, {"relations": len(rows), "non_projective": nonproj})
    rep.invariant_factors = invariant_factors(rows) if rows else []
    rep.extra = {"lattice_index": index, "kernel_rank": kern.dimension, "ends": ends}
    return rep.finalize()


def random_short_exact(ar: ARQuiver, rng, split_prob: float = 0.25, max_summands: int = 2) -> ShortExact:
    """0 -> X -> Y -> Z -> 0 with X, Z random sums of indecomposables; non-split when Ext allows."""
    ind = ar.indecomposables

    def pick():
        k = int(rng.integers(1, max_summands + 1))
        parts = [ind[int(i)] for i in rng.integers(0, len(ind), k)]
        return parts[0] if k == 1 else direct_sum(parts).module

    x, z = pick(), pick()
    ext = ext1_space(z, x)
    if ext.dimension and rng.random() >= split_prob:
        coeffs = rng.integers(0, x.p, ext.dimension)
        if not coeffs.any():
            coeffs[0] = 1
        vec = (coeffs @ ext.representatives) % x.p
        return extension_from_cocycle(z, x, ext.hom.combination(vec))
    ds = direct_sum([x, z])
    return ShortExact(x, ds.module, z, ds.inclusions[0], ds.projections[1])


def index_defect_check(subcat: Subcategory, n: int, seq: ShortExact) -> dict:
    """Ind(X) - Ind(Y) + Ind(Z) and the beta-combination given by the factors of the defect on M."""
    ix = index_vector(subcat, seq.left, n).coeffs
    iy = index_vector(subcat, seq.middle, n).coeffs
    iz = index_vector(subcat, seq.right, n).coeffs
    v = [a - b + c for a, b, c in zip(ix, iy, iz)]
    factors = length_and_factors(restrict_to_M(subcat, seq.epi))
    w = [0] * len(v)
    for k, mult in factors.items():
        beta = beta_vector(subcat, subcat.members[k], n)
        w = [a + mult * b for a, b in zip(w, beta)]
    return {"index_sum": v, "defect_sum": w, "factors": factors}


def verify_k0_iso(
    algebra: BoundAlgebra, subcat: Subcategory, n: int, ar: ARQuiver, *, samples: int = 12, seed: int = 0
) -> Report:
    """K_0(M) is free on #simples generators and the composition map identifies it with K_0(mod Lambda)."""
    rep = Report(title=f"K0 isomorphism (n = {n})", basis_order=member_labels(subcat))
    if not _require_ct(rep, algebra, subcat, n, ar):
        return rep.finalize()
    pres = k0_presentation(subcat, n)
    rows = pres.relation_matrix
    rep.relation_matrix = rows
    rep.invariant_factors = pres.invariant_factors
    simples = len(algebra.vertices)
    rep.add("invariant factors all 1", all(d == 1 for d in pres.invariant_factors), pres.invariant_factors)
    rep.add("rank K0(M) = #simples", pres.free_rank == simples, {"rank": pres.free_rank, "simples": simples})
    cm = [list(m.dims) for m in subcat.members]
    cinv = invariant_factors(cm)
    rep.add("composition map onto Z^simples", len(cinv) == simples and all(d == 1 for d in cinv), cinv)
    width = len(subcat.members)
    rel = Lattice(width, rows)
    rep.add("kernel of composition map = relations", rel == Lattice(width, integer_kernel(cm)), None)
    rng = np.random.default_rng(seed)
    rel_fail, def_fail = [], []
    for s in range(samples):
        seq = random_short_exact(ar, rng)
        try:
            got = index_defect_check(subcat, n, seq)
        except ResolutionOverrun as exc:
            rel_fail.append({"sample": s, "error": str(exc)})
            continue
        if not rel.contains(got["index_sum"]):
            rel_fail.append({"sample": s, **got})
        if got["index_sum"] != got["defect_sum"]:
            def_fail.append({"sample": s, **got})
    rep.add(f"index additivity in ker(pi) ({samples} samples)", not rel_fail, rel_fail or None)
    rep.add("index sum = beta-combination of defect factors", not def_fail, def_fail or None)
    rep.extra = {"simples": simples, "samples": samples, "seed": seed}
    return rep.finalize()


def defect_report(subcat: Subcategory, n: int) -> Report:
    """Defects of the n-almost split sequences: supported at the end term with value l_A."""
    rep = Report(title=f"defects (n = {n})", basis_order=member_labels(subcat))
    g = gram_matrix(subcat)
    l = subcat.residue_dims()
    for k, a in enumerate(subcat.members):
        if is_projective(a):
            continue
        seq = nass_sequence(subcat, k, n)
        d = contravariant_defect(subcat, seq).values
        want = [l[k] if j == k else 0 for j in range(len(d))]
        rep.add(f"defect at {k} = l e_{k}", d == want, {"defect": d})
        r = relation_vector(subcat, seq, check=False)
        gr = [sum(x * y for x, y in zip(row, r)) for row in g]
        rep.add(f"G r_{k} = l e_{k}", gr == want, {"G r": gr})
    return rep.finalize()


__all__ = [
    "FAIL",
    "K0Presentation",
    "beta_matrix",
    "beta_vector",
    "composition_factor_matrix",
    "defect_report",
    "gram_matrix",
    "index_defect_check",
    "k0_presentation",
    "random_short_exact",
    "relation_lattice_mod_lambda",
    "relation_vector",
    "verify_k0_iso",
    "verify_orthogonality",
    "verify_theorem_a",
]
