"""Command-line front end: ``ngonal-atlas <command> ...``.

Every command prints a short text report, or with ``--json`` a deterministic JSON
record. Exit codes: 0 success, 1 domain rejection, 2 resource bound.
"""
from __future__ import annotations

import json
import sys
import time

import click

from . import __version__
from .constraints import (branching_report, finitely_maximal, match_table5, normality_consequence,
                          strong_branching, supergroup_candidates, weakly_malnormal)
from .errors import DomainError, ResourceBound
from .fixtures import by_name
from .genvectors import normalizer_extension_exists
from .kmaps import kcompatible_enumerate, kernel_signature, order_of_C, reproduce_table4, table_rows
from .monodromy import (DEFAULT_BOUND, classify_pair, compatible_cycle_vectors, find_monodromy_vectors,
                        fuse_triple, word_map)
from .orbits import (check_weak_malnormal_orbit_laws, format_table, genus_triple,
                     induced_signature_from_orbits, orbit_decomposition, table7_layout)
from .sigcore import (NGonalData, SphericalGroup, is_hyperbolic, ngonal_genus,
                      ngonal_signature, riemann_hurwitz_genus, sig)
from .tables import TABLES

SCHEMA = "ngonal-atlas/1"


def record(command, arguments, result):
    return {"schema": SCHEMA, "command": command, "arguments": arguments,
            "version": __version__, "result": result}


def dumps(rec):
    return json.dumps(rec, indent=2, ensure_ascii=False) + "\n"


def emit(ctx, command, arguments, result, text):
    if ctx.obj["json"]:
        click.echo(dumps(record(command, arguments, result)), nl=False)
    else:
        click.echo(text)
        click.echo(f"[{command} done in {time.perf_counter() - ctx.obj['t0']:.2f}s]", err=True)


def parse_family(text):
    """'all', 'C', 'D', 'C3', 'D_k', 'A4', ... -> list of SphericalGroup or None for all."""
    t = text.strip()
    if t.lower() == "all":
        return None
    out = []
    for part in t.split(","):
        part = part.strip()
        if part in ("A4", "S4", "A5"):
            out.append(SphericalGroup(part))
        elif part and part[0] in "CD":
            rest = part[1:].lstrip("_")
            out.append(SphericalGroup(part[0], int(rest) if rest.isdigit() else None))
        else:
            raise DomainError(f"unknown group family {part!r}")
    return out


def _families(text):
    fams = parse_family(text)
    return fams if fams is not None else [SphericalGroup(f) for f in ("C", "D", "A4", "S4", "A5")]


# ---------------------------------------------------------------- commands

@click.group()
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON record instead of text.")
@click.option("--cap", type=int, default=None, help="Resource cap for enumerations and searches.")
@click.version_option(__version__)
@click.pass_context
def cli(ctx, as_json, cap):
    """Cyclic n-gonal surfaces: signatures, factorizations, monodromy and orbit tables."""
    ctx.ensure_object(dict)
    ctx.obj.update(json=as_json, cap=cap, t0=time.perf_counter())


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "exps", required=True, help="Comma-separated exponents p_1..p_r.")
@click.pass_context
def genus(ctx, n, exps):
    """Genus and signature of y^n = prod (x - e_i)^p_i."""
    try:
        ps = tuple(int(x) for x in exps.split(","))
    except ValueError:
        raise DomainError(f"bad exponent list {exps!r}") from None
    data = NGonalData(n, ps)
    g = ngonal_genus(data)
    s = ngonal_signature(data)
    res = {"n": n, "exponents": list(ps), "signature": str(s), "genus": g}
    emit(ctx, "genus", {"n": n, "p": list(ps)}, res, f"genus {g}, signature {s}")


def _row_text(r):
    flag = f"  [{r.flag}]" if r.flag else ""
    mirror = " (+mirror)" if r.mirror else ""
    return (f"{r.K:6} {r.factored:32} d={r.d:6} n={r.n:16} kernel={r.kernel:28} "
            f"{r.condition}{mirror}{flag}")


@cli.command()
@click.option("--sig", "signature", default=None, help="Signature, e.g. '(2,x1,2*x1)'.")
@click.option("--K", "family", default="all", show_default=True, help="all, C, D, C3, D_k, A4, S4, A5.")
@click.option("--table4", is_flag=True, help="Factorizations of (2,d,2d) over every sphere group.")
@click.option("--max-d", type=int, default=24, show_default=True, help="Largest d used to read off conditions.")
@click.pass_context
def factor(ctx, signature, family, table4, max_d):
    """K-compatible factorizations with kernel signatures and validity conditions."""
    if table4:
        acc, rej = reproduce_table4(max_d)
        res = {"accepted": [r.as_dict() for r in acc], "rejected": [r.as_dict() for r in rej]}
        text = "\n".join([_row_text(r) for r in acc] + ["-- rejected by Harvey's conditions --"]
                         + [_row_text(r) for r in rej])
        emit(ctx, "factor", {"table4": True, "max_d": max_d}, res, text)
        return
    if signature is None:
        raise DomainError("give --sig or --table4")
    rows = table_rows(sig(signature), _families(family), max_d)
    res = {"rows": [r.as_dict() for r in rows]}
    text = "\n".join(_row_text(r) for r in rows) or "no K-compatible factorization"
    emit(ctx, "factor", {"sig": signature, "K": family, "max_d": max_d}, res, text)


def _kfixed_payload(signature, family):
    out = []
    for K in _families(family):
        for br in kcompatible_enumerate(sig(signature), K):
            f = br.factored
            if not f.K.is_concrete or f.symbols():
                raise DomainError("kfixed needs a concrete signature")
            kern = kernel_signature(f)
            verdict = normalizer_extension_exists(f)
            out.append({"factored": str(f), "K": f.K.label, "kernel": str(kern),
                        "n": order_of_C(kern), **verdict.as_dict()})
    return out


@cli.command()
@click.option("--sig", "signature", required=True)
@click.option("--K", "family", default="all", show_default=True)
@click.pass_context
def kfixed(ctx, signature, family):
    """K-fixed generating vectors: does the cyclic action extend to the normalizer?"""
    rows = _kfixed_payload(signature, family)
    lines = []
    for r in rows:
        lines.append(f"{r['factored']}  kernel {r['kernel']}  n={r['n']}  extends: {r['exists']}"
                     + (f" ({r['reason']})" if r["reason"] else ""))
        for w in r["witnesses"]:
            lines.append(f"    omega={tuple(w['omega'])}  vector={tuple(w['vector'])}")
    emit(ctx, "kfixed", {"sig": signature, "K": family}, {"factorizations": rows},
         "\n".join(lines) or "no K-compatible factorization")


def _monodromy_payload(sub, sup, m, bound, cap, words=False):
    sub_s, sup_s = sig(sub), sig(sup)
    out = []
    for P in compatible_cycle_vectors(sub_s, sup_s, m):
        classes = []
        for M in find_monodromy_vectors(P, bound=bound, cap=cap):
            item = {"perms": [str(p) for p in M.perms], "image_order": M.image().order,
                    "class": classify_pair(sub_s, sup_s, P).as_dict()}
            if words:
                item["word_map"] = word_map(M, sup_s).as_dict()
            classes.append(item)
        out.append({"cycle_vector": str(P), "m": P.m, "classes": classes})
    return out


def _monodromy_text(rows, words=False):
    lines = []
    for r in rows:
        lines.append(f"cycle vector {r['cycle_vector']} (index {r['m']}): {len(r['classes'])} class(es)")
        for c in r["classes"]:
            lines.append(f"    {' '.join(c['perms'])}   |image|={c['image_order']}  {c['class']['verdict']}")
            if words:
                wm = c["word_map"]
                for w, o in zip(wm["words"], wm["orders"]):
                    lines.append(f"        {w}   order {o}")
    return "\n".join(lines) or "no compatible cycle vector"


@cli.command()
@click.option("--sub", required=True, help="Signature of the subgroup.")
@click.option("--sup", required=True, help="Signature of the supergroup.")
@click.option("--m", type=int, default=None, help="Index (derived from the areas when omitted).")
@click.option("--bound", type=int, default=DEFAULT_BOUND, show_default=True)
@click.pass_context
def monodromy(ctx, sub, sup, m, bound):
    """Transitive monodromy vectors for an inclusion, one per conjugacy class."""
    rows = _monodromy_payload(sub, sup, m, bound, ctx.obj["cap"])
    emit(ctx, "monodromy", {"sub": sub, "sup": sup, "m": m, "bound": bound},
         {"cycle_vectors": rows}, _monodromy_text(rows))


@cli.command()
@click.option("--sub", required=True)
@click.option("--sup", required=True)
@click.option("--m", type=int, default=None)
@click.option("--bound", type=int, default=DEFAULT_BOUND, show_default=True)
@click.pass_context
def wordmap(ctx, sub, sup, m, bound):
    """Canonical generators of the subgroup as words in the supergroup's generators."""
    rows = _monodromy_payload(sub, sup, m, bound, ctx.obj["cap"], words=True)
    emit(ctx, "wordmap", {"sub": sub, "sup": sup, "m": m, "bound": bound},
         {"cycle_vectors": rows}, _monodromy_text(rows, words=True))


@cli.command()
@click.option("--sig", "signature", required=True)
@click.option("--bound", type=int, default=50, show_default=True)
@click.pass_context
def maximal(ctx, signature, bound):
    """Finite maximality test with its certificate."""
    v = finitely_maximal(sig(signature), bound)
    lines = [f"{v.signature}: {'maximal' if v.maximal else 'not shown maximal'} ({v.method})"]
    lines += [f"    eliminated {e.signature}: {e.reason}" for e in v.eliminated]
    lines += [f"    candidate {s} with index {k}" for s, k in v.candidates]
    emit(ctx, "maximal", {"sig": signature, "bound": bound}, v.as_dict(), "\n".join(lines))


def _orbits_payload(name):
    t = by_name(name)
    decomp = orbit_decomposition(t.A, t.N, t.C, t.vector_A, t.signature_A)
    sN, sC = induced_signature_from_orbits(decomp, t.N, t.C)
    wm = weakly_malnormal(t.A, t.C)
    laws = check_weak_malnormal_orbit_laws(decomp, wm)
    genera = genus_triple(t.A.order, t.signature_A, t.N.order, sN, t.C.order, sC)
    rep = branching_report(t.C.order, sC)
    res = {"fixture": t.name, "orders": {"A": t.A.order, "N": t.N.order, "C": t.C.order},
           "signature_A": str(t.signature_A), "signature_N": str(sN), "signature_C": str(sC),
           "genus": [str(g) for g in genera],
           "rows": [r.as_dict() for r in decomp],
           "table": [[str(c) for c in row] for row in table7_layout(decomp)],
           "weakly_malnormal": wm, "orbit_laws": laws.as_dict(),
           "strongly_branched": rep.strongly_branched,
           "normality": normality_consequence(t.C.order, rep.sigma1, wm)}
    return res, decomp


@cli.command()
@click.option("--fixture", required=True, help="klein, bring or fermat:<n>.")
@click.pass_context
def orbits(ctx, fixture):
    """Split the singular A-orbits of a fixture into N-orbits."""
    res, decomp = _orbits_payload(fixture)
    text = "\n".join([format_table(table7_layout(decomp)), "",
                      f"S(Gamma_A)={res['signature_A']}  S(Gamma_N)={res['signature_N']}  "
                      f"S(Gamma_C)={res['signature_C']}  genus={res['genus'][0]}",
                      f"weakly malnormal: {res['weakly_malnormal']}  orbit laws ok: {res['orbit_laws']['ok']}"])
    emit(ctx, "orbits", {"fixture": fixture}, res, text)


def classify_signature(signature, fixture=None, bound=30):
    """Factorizations -> kernel + Harvey -> fixed vectors -> candidate Gamma_A -> fusion."""
    s = sig(signature)
    if s.is_concrete and not is_hyperbolic(s):
        raise DomainError(f"{s} is not hyperbolic")
    stages = []
    for K in _families("all"):
        try:
            branches = kcompatible_enumerate(s, K)
        except DomainError as exc:
            stages.append({"K": K.label, "stage": "factorization", "error": str(exc)})
            continue
        for br in branches:
            f = br.factored
            entry = {"K": f.K.label, "factored": str(f)}
            try:
                kern = kernel_signature(f)
                n = order_of_C(kern)
                entry.update(kernel=str(kern), n=n)
                if not f.K.is_concrete or f.symbols():
                    entry["note"] = "parametric branch: instantiate to continue"
                    stages.append(entry)
                    continue
                ext = normalizer_extension_exists(f)
                entry["extends"] = ext.exists
                entry["witnesses"] = [dict(omega=list(a.omega_gens), vector=list(v.entries))
                                      for a, v in ext.witnesses]
                if not ext.exists:
                    entry["reason"] = ext.reason
                    stages.append(entry)
                    continue
                sigma = riemann_hurwitz_genus(n, kern)
                entry["genus"] = int(sigma)
                cands = []
                if s.is_concrete:
                    for cand, m in supergroup_candidates(s, bound):
                        cases = match_table5(s, cand, f.K)
                        if cases:
                            cands.append({"signature": str(cand), "index": m, "cases": cases,
                                          "order_A": m * n * f.K.order})
                entry["candidates_A"] = cands
            except DomainError as exc:
                entry["error"] = str(exc)
            stages.append(entry)
    res = {"signature": str(s), "branches": stages}
    if fixture:
        t = by_name(fixture)
        rep = fuse_triple(t.A, t.N, t.C)
        res["fixture"] = {"name": t.name, "order_A": t.A.order, "order_N": t.N.order,
                          "order_C": t.C.order, "index": t.A.order // t.N.order,
                          "bookkeeping": (t.A.order // t.N.order) * t.C.order * (t.N.order // t.C.order)
                          == t.A.order, "fusion": rep.as_dict()}
    return res


@cli.command()
@click.option("--sig", "signature", required=True, help="Signature of the normalizer N.")
@click.option("--fixture", default=None, help="Concrete triple to fuse (klein, bring, fermat:<n>).")
@click.option("--bound", type=int, default=30, show_default=True)
@click.pass_context
def classify(ctx, signature, fixture, bound):
    """End-to-end report for a candidate normalizer signature."""
    res = classify_signature(signature, fixture, bound)
    lines = [f"N signature {res['signature']}"]
    for b in res["branches"]:
        if "factored" not in b:
            lines.append(f"  {b['K']}: {b['stage']} failed: {b['error']}")
            continue
        line = f"  {b['factored']}  kernel {b.get('kernel', '?')}  n={b.get('n', '?')}"
        if "extends" in b:
            line += f"  extends: {b['extends']}"
        if "genus" in b:
            line += f"  genus {b['genus']}"
        lines.append(line)
        for k in ("note", "reason", "error"):
            if k in b:
                lines.append(f"      {b[k]}")
        for c in b.get("candidates_A", []):
            lines.append(f"      Gamma_A candidate {c['signature']} index {c['index']} "
                         f"cases {','.join(c['cases'])} |A|={c['order_A']}")
    if "fixture" in res:
        fx = res["fixture"]
        lines.append(f"  fixture {fx['name']}: |A|={fx['order_A']} |N|={fx['order_N']} |C|={fx['order_C']} "
                     f"core trivial: {fx['fusion']['core_trivial']}")
    emit(ctx, "classify", {"sig": signature, "fixture": fixture, "bound": bound}, res, "\n".join(lines))


@cli.command()
@click.option("--which", type=click.Choice(["1", "2", "3"]), required=True)
@click.pass_context
def tables(ctx, which):
    """Sphere-group catalog (1), abelianizations (2), involutions of Z_(p^e) (3)."""
    rows = TABLES[int(which)]()
    text = "\n".join("  ".join(str(v) for v in r.values()) for r in rows)
    emit(ctx, "tables", {"which": int(which)}, {"rows": rows}, text)


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--sigma2", type=int, default=0, show_default=True)
@click.option("--R", "R", type=int, required=True)
@click.pass_context
def branching(ctx, n, sigma2, R):
    """Strong branching test R > 2n(n-1)(sigma2+1)."""
    res = {"strongly_branched": strong_branching(n, sigma2, R)}
    emit(ctx, "branching", {"n": n, "sigma2": sigma2, "R": R}, res, str(res["strongly_branched"]))


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="ngonal-atlas", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 1
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except ResourceBound as exc:
        click.echo(f"resource bound: {exc}", err=True)
        return 2
    return 0


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
