"""Bundled example algebras."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algcore import (
    DEFAULT_PRIME,
    Arrow,
    BoundAlgebra,
    FieldSpec,
    Quiver,
    Relation,
    linear_quiver,
    nakayama_algebra,
    validate_algebra,
)
from .errors import UnknownEntry

# (m, l) in the bundled sweep that carry a 2-cluster tilting subcategory
NAKAYAMA_2CT = {(3, 2), (4, 3), (5, 2), (5, 4)}
SWEEP_M = range(2, 7)
SWEEP_L = range(2, 5)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: BoundAlgebra
    suggested_n: int
    notes: str = ""


def loop_algebra(prime: int = DEFAULT_PRIME) -> BoundAlgebra:
    q = Quiver(("1",), (Arrow("x", "1", "1"),))
    return validate_algebra(q, [Relation(((1, ("x", "x")),))], FieldSpec(prime))


def catalog_names() -> list[str]:
    names = [f"a{m}" for m in range(1, 7)]
    names += [f"nakayama-m{m}-l{l}" for m in SWEEP_M for l in SWEEP_L]
    names.append("loop-x2")
    return names


def load_catalog(name: str, prime: int = DEFAULT_PRIME) -> CatalogEntry:
    if name == "loop-x2":
        return CatalogEntry(name, loop_algebra(prime), 1, "k[x]/(x^2), the self-injective local algebra of length 2")
    m = re.fullmatch(r"a([1-9]\d*)", name)
    if m:
        k = int(m.group(1))
        alg = validate_algebra(linear_quiver(k), [], FieldSpec(prime))
        return CatalogEntry(name, alg, 1, f"linearly oriented A_{k}, hereditary")
    m = re.fullmatch(r"nakayama-m([1-9]\d*)-l([2-9]\d*)", name)
    if m:
        k, l = int(m.group(1)), int(m.group(2))
        n = 2 if (k, l) in NAKAYAMA_2CT else 1
        return CatalogEntry(name, nakayama_algebra(k, l, prime), n, f"kA_{k} modulo paths of length {l}")
    raise UnknownEntry(name)


def bundled_entries() -> list[CatalogEntry]:
    return [load_catalog(n) for n in catalog_names()]
