"""Command-line front end: ``nart <command> --algebra FILE | --catalog NAME [options]``."""

from __future__ import annotations

import argparse
import json
import sys

from . import algcore
from .algcore import load_algebra
from .catalog import catalog_names, load_catalog
from .ctilt import (
    Subcategory,
    check_n_almost_split,
    contravariant_defect,
    index_vector,
    is_n_cluster_tilting,
    search_n_cluster_tilting,
)
from .errors import ConstructionFailure, NartError, ProjectiveEnd
from .groth import (
    ar_labels,
    defect_report,
    k0_presentation,
    member_labels,
    nass_sequence,
    relation_vector,
    verify_k0_iso,
    verify_orthogonality,
    verify_theorem_a,
)
from .homlab import DEFAULT_KNIT_CAP, is_projective, knit_ar_quiver
from .report import UNVERIFIABLE, Report

COMMANDS = (
    "knit",
    "check-ct",
    "search-ct",
    "nass",
    "defect",
    "index",
    "k0",
    "verify-theorem-a",
    "verify-k0-iso",
    "orthogonality",
    "catalog",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nart", description="Higher Auslander-Reiten computations over bound quiver algebras.")
    parser.add_argument("command", choices=COMMANDS)
    src = parser.add_mutually_exclusive_group()
    src.add_argument("--algebra", metavar="FILE", help="algebra description (JSON)")
    src.add_argument("--catalog", metavar="NAME", help="bundled example, see `nart catalog`")
    parser.add_argument("--n", type=int, default=None, help="homological degree (default: the catalog suggestion, else 1)")
    parser.add_argument("--subcat", default="all", help="'all' or comma-separated AR-quiver ids")
    parser.add_argument("--module", type=int, default=None, help="AR-quiver id for nass / index")
    parser.add_argument("--cap", type=int, default=DEFAULT_KNIT_CAP, help="knitting cap")
    parser.add_argument("--format", choices=("table", "json"), default="table")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=12, help="short exact sequences sampled by verify-k0-iso")
    return parser


def _parse_ids(text: str) -> list[int] | None:
    if text == "all":
        return None
    try:
        ids = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ValueError(f"bad --subcat value {text!r}") from exc
    if not ids:
        raise ValueError("empty --subcat")
    return ids


class _Context:
    def __init__(self, args):
        self.args = args
        if args.catalog:
            entry = load_catalog(args.catalog)
            self.algebra, suggested = entry.algebra, entry.suggested_n
        elif args.algebra:
            self.algebra, suggested = load_algebra(args.algebra), 1
        else:
            raise ValueError("one of --algebra or --catalog is required")
        self.n = args.n if args.n is not None else suggested
        if self.n < 1:
            raise ValueError("--n must be positive")
        self._ar = None

    @property
    def ar(self):
        if self._ar is None:
            self._ar = knit_ar_quiver(self.algebra, cap=self.args.cap)
        return self._ar

    def subcat(self) -> Subcategory:
        ids = _parse_ids(self.args.subcat)
        return Subcategory.everything(self.ar) if ids is None else Subcategory.from_ids(self.ar, ids)


def _ct_gate(ctx: _Context, rep: Report, subcat: Subcategory) -> bool:
    verdict = is_n_cluster_tilting(ctx.algebra, subcat, ctx.n, ctx.ar)
    rep.add("n-cluster tilting", verdict.ok, verdict.witness)
    if not verdict.ok:
        rep.verdict = UNVERIFIABLE
    return verdict.ok


def cmd_knit(ctx: _Context) -> Report:
    ar = ctx.ar
    rep = Report(title="AR quiver", basis_order=ar_labels(ar))
    rows = []
    for k, m in enumerate(ar.indecomposables):
        rows.append({
            "id": k,
            "dims": list(m.dims),
            "projective": k in ar.projective_ids,
            "injective": k in ar.injective_ids,
            "tau": ar.translate.get(k),
        })
    arrows = [{"from": i, "to": j, "mult": c} for (i, j), c in sorted(ar.irreducible_multiplicities.items())]
    rep.extra = {"indecomposables": rows, "irreducible": arrows, "almost_split_sequences": len(ar.sequences)}
    rep.add("knitting complete", ar.complete, None if ar.complete else {"found": len(ar), "cap": ctx.args.cap})
    if not ar.complete:
        rep.verdict = UNVERIFIABLE
    return rep.finalize()


def cmd_check_ct(ctx: _Context) -> Report:
    subcat = ctx.subcat()
    rep = Report(title=f"{ctx.n}-cluster tilting check", basis_order=member_labels(subcat))
    verdict = is_n_cluster_tilting(ctx.algebra, subcat, ctx.n, ctx.ar)
    rep.add("n-cluster tilting", verdict.ok, verdict.witness)
    return rep.finalize()


def cmd_search_ct(ctx: _Context) -> Report:
    found = search_n_cluster_tilting(ctx.algebra, ctx.n, ctx.ar)
    rep = Report(title=f"{ctx.n}-cluster tilting search", basis_order=ar_labels(ctx.ar))
    rep.extra = {"found": [s.ids for s in found]}
    rep.add("at least one subcategory found", bool(found), {"count": len(found)})
    return rep.finalize()


def cmd_nass(ctx: _Context) -> Report:
    subcat = ctx.subcat()
    rep = Report(title=f"{ctx.n}-almost split sequences", basis_order=member_labels(subcat))
    if not _ct_gate(ctx, rep, subcat):
        return rep.finalize()
    targets = range(len(subcat.members))
    if ctx.args.module is not None:
        k = subcat.index_of(ctx.ar.indecomposables[ctx.args.module])
        if k is None:
            raise ValueError(f"module {ctx.args.module} is not a member")
        targets = [k]
    seqs = {}
    for k in targets:
        if is_projective(subcat.members[k]):
            continue
        try:
            seq = nass_sequence(subcat, k, ctx.n)
        except (ConstructionFailure, ProjectiveEnd) as exc:
            rep.add(f"construct sequence ending at {k}", False, str(exc))
            continue
        verdict = check_n_almost_split(subcat, seq)
        rep.add(f"n-almost split at {k}", verdict.ok, verdict.witness)
        rel = relation_vector(subcat, seq, check=False)
        rep.relation_matrix.append(rel)
        seqs[k] = {"terms": [list(t.dims) for t in seq.terms], "relation": rel}
    rep.extra = {"sequences": seqs}
    return rep.finalize()


def cmd_defect(ctx: _Context) -> Report:
    subcat = ctx.subcat()
    rep = Report(title=f"defects (n = {ctx.n})", basis_order=member_labels(subcat))
    if not _ct_gate(ctx, rep, subcat):
        return rep.finalize()
    inner = defect_report(subcat, ctx.n)
    rep.checks.extend(inner.checks)
    values = {}
    for k, a in enumerate(subcat.members):
        if not is_projective(a):
            values[k] = contravariant_defect(subcat, nass_sequence(subcat, k, ctx.n)).values
    rep.extra = {"defects": values}
    return rep.finalize()


def cmd_index(ctx: _Context) -> Report:
    subcat = ctx.subcat()
    rep = Report(title=f"index vectors (n = {ctx.n})", basis_order=member_labels(subcat))
    if not _ct_gate(ctx, rep, subcat):
        return rep.finalize()
    ids = [ctx.args.module] if ctx.args.module is not None else range(len(ctx.ar))
    out = {}
    for i in ids:
        x = ctx.ar.indecomposables[i]
        a = index_vector(subcat, x, ctx.n, "minimal").coeffs
        b = index_vector(subcat, x, ctx.n, "generous").coeffs
        rep.add(f"strategies agree at {i}", a == b, None if a == b else {"minimal": a, "generous": b})
        out[i] = a
    rep.extra = {"index": out}
    return rep.finalize()


def cmd_k0(ctx: _Context) -> Report:
    subcat = ctx.subcat()
    rep = Report(title=f"K0 presentation (n = {ctx.n})", basis_order=member_labels(subcat))
    if not _ct_gate(ctx, rep, subcat):
        return rep.finalize()
    pres = k0_presentation(subcat, ctx.n)
    rep.relation_matrix = pres.relation_matrix
    rep.invariant_factors = pres.invariant_factors
    rep.extra = {"free_rank": pres.free_rank, "torsion": pres.torsion}
    return rep.finalize()


def cmd_verify_theorem_a(ctx: _Context) -> Report:
    return verify_theorem_a(ctx.algebra, ctx.subcat(), ctx.n, ctx.ar)


def cmd_verify_k0_iso(ctx: _Context) -> Report:
    return verify_k0_iso(ctx.algebra, ctx.subcat(), ctx.n, ctx.ar, samples=ctx.args.samples, seed=ctx.args.seed)


def cmd_orthogonality(ctx: _Context) -> Report:
    subcat = ctx.subcat()
    rep = Report(title=f"orthogonality (n = {ctx.n})", basis_order=member_labels(subcat))
    if not _ct_gate(ctx, rep, subcat):
        return rep.finalize()
    inner = verify_orthogonality(subcat, ctx.n)
    inner.checks.insert(0, rep.checks[0])
    return inner.finalize()


def cmd_catalog(_args) -> Report:
    rep = Report(title="catalog")
    entries = {}
    for name in catalog_names():
        entry = load_catalog(name)
        entries[name] = {"suggested_n": entry.suggested_n, "dimension": entry.algebra.dimension, "notes": entry.notes}
    rep.extra = {"entries": entries}
    return rep.finalize()


HANDLERS = {
    "knit": cmd_knit,
    "check-ct": cmd_check_ct,
    "search-ct": cmd_search_ct,
    "nass": cmd_nass,
    "defect": cmd_defect,
    "index": cmd_index,
    "k0": cmd_k0,
    "verify-theorem-a": cmd_verify_theorem_a,
    "verify-k0-iso": cmd_verify_k0_iso,
    "orthogonality": cmd_orthogonality,
}


def _emit(rep: Report, fmt: str, stream) -> None:
    stream.write((rep.dumps() if fmt == "json" else rep.table()) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    algcore.DEFAULT_SEED = args.seed
    try:
        if args.command == "catalog":
            rep = cmd_catalog(args)
        else:
            rep = HANDLERS[args.command](_Context(args))
    except (NartError, ValueError, IndexError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"nart: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2
    _emit(rep, args.format, sys.stdout)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
