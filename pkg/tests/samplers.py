"""Random objects for property tests."""

from nart.algcore import Morphism, direct_sum, hom_basis, matrix_morphism
from nart.homlab import minimal_right_approximation, projective_cover


def random_object(pool, rng, max_parts=2, allow_zero=False):
    lo = 0 if allow_zero else 1
    k = int(rng.integers(lo, max_parts + 1))
    parts = [pool[int(i)] for i in rng.integers(0, len(pool), k)]
    return parts


def random_map(src_parts, tgt_parts, rng, alg):
    grid = [[hom_basis(s, t).random(rng) for s in src_parts] for t in tgt_parts]
    if not src_parts or not tgt_parts:
        src = direct_sum(src_parts, alg).module
        tgt = direct_sum(tgt_parts, alg).module
        return Morphism.zero(src, tgt)
    f, _, _ = matrix_morphism(src_parts, tgt_parts, grid)
    return f


def random_presentation(subcat, rng):
    """A random morphism in add(M); about a third of the time an epimorphism."""
    alg = subcat.algebra
    members = subcat.members
    tgt = random_object(members, rng)
    if rng.random() < 1 / 3:
        y = direct_sum(tgt, alg).module
        approx = minimal_right_approximation(members, y)
        extra = random_object(members, rng, 1, allow_zero=True)
        rest = random_map(extra, tgt, rng, alg)
        f, _, _ = matrix_morphism([approx.source] + ([rest.source] if extra else []), [y],
                                  [[approx.map] + ([rest] if extra else [])])
        return f
    src = random_object(members, rng, 2, allow_zero=True)
    return random_map(src, tgt, rng, alg)


def random_epi(pool, rng):
    """A random epimorphism X -> Y between sums of modules from pool."""
    alg = pool[0].algebra
    tgt = random_object(pool, rng)
    y = direct_sum(tgt, alg).module
    cover = projective_cover(y)
    extra = random_object(pool, rng, 1, allow_zero=True)
    if extra:
        rest = random_map(extra, tgt, rng, alg)
        f, _, _ = matrix_morphism([cover.module, rest.source], [y], [[cover.epi, rest]])
        return f
    return cover.epi
