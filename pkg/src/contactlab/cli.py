"""contactlab command line: validate | analyze | classify5 | realize | catalog | fuzz.

Exit codes: 0 ok, 1 identity/jacobi failure, 2 parse error, 3 no contact form,
4 wrong dimension, 5 construction gate, 6 unknown catalog name.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fuzz
from .analysis import classify_dim5
from .catalog import catalog, get
from .constructions import FrobeniusInput, realize_line_ideal, realize_q2
from .errors import ConstructionError, JacobiError, NotApplicable, ParseError
from .forms import contact_structure, is_contact
from .io import (AlgebraFile, analysis_report, dump, dumps, fmt_vec, load, parse_rational, report_json,
                 search_contact_form)
from .linalg import Matrix

OK, FAILED, PARSE, NO_CONTACT, WRONG_DIM, GATE, UNKNOWN = range(7)


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def cmd_validate(args) -> int:
    try:
        f = load(args.path)
    except ParseError as exc:
        _err(str(exc))
        return PARSE
    viol = f.algebra.jacobi_violations
    if not viol:
        print(f"{f.name}: Jacobi identity holds (dim {f.algebra.dim})")
        return OK
    lab = f.algebra.labels
    print(f"{f.name}: Jacobi identity fails on {len(viol)} triple(s)")
    for i, j, k, res in viol:
        print(f"  ({i}, {j}, {k}) = ({lab[i]}, {lab[j]}, {lab[k]}): residual [{', '.join(fmt_vec(res))}]")
    return FAILED


def _report(f: AlgebraFile, search: bool = True):
    """(report, exit code) with the report possibly None."""
    if f.algebra.jacobi_violations:
        _err(f"{f.name}: structure constants violate Jacobi")
        return None, FAILED
    try:
        rep = analysis_report(f, search=search)
    except NotApplicable:
        _err("no contact form found")
        return None, NO_CONTACT
    if not rep["verdicts"].get("contact"):
        _err("the contact form is degenerate")
        return rep, NO_CONTACT
    return rep, (OK if rep["clean"] else FAILED)


def cmd_analyze(args) -> int:
    try:
        f = load(args.path)
    except ParseError as exc:
        _err(str(exc))
        return PARSE
    rep, code = _report(f, search=not args.no_search)
    if rep is None:
        return code
    if args.report:
        Path(args.report).write_text(report_json(rep), encoding="utf-8")
    v = rep["verdicts"]
    print(f"{rep['name']} (dim {rep['dim']}, {rep['input_digest'][:19]})")
    for key in ("contact", "reeb", "unimodular", "transversely_unimodular", "ds", "ad_xi_nilpotent", "classification"):
        if key in v:
            val = v[key]
            print(f"  {key}: {', '.join(val) if isinstance(val, list) else str(val).lower() if isinstance(val, bool) else val}")
    if "decomposition" in rep:
        dd = rep["decomposition"]
        print(f"  dims t, q, t0: {dd['dim_t']}, {dd['dim_q']}, {dd['dim_t0']}")
        c = rep["identities"]["counts"]
        print(f"  identities: {c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped")
        w = rep["witness"]
        if "e" in w:
            print(f"  witness e = [{', '.join(w['e'])}], traces (t, q, total) = ({w['tr_t']}, {w['tr_q']}, {w['tr_total']})")
        else:
            print(f"  witness: skipped ({w['skipped']})")
        print(f"  main theorem audit: {'pass' if rep['audit']['passed'] else 'FAIL'}"
              + (" (three-dimensional simple)" if rep["audit"]["three_dim_simple"] else ""))
        print(f"  betti: {rep['betti']}; basic betti: {rep['basic_betti']}")
    return code


def cmd_classify5(args) -> int:
    try:
        f = load(args.path)
    except ParseError as exc:
        _err(str(exc))
        return PARSE
    if f.algebra.dim != 5:
        _err(f"classify5 needs dimension 5, got {f.algebra.dim}")
        return WRONG_DIM
    if f.algebra.jacobi_violations:
        _err("structure constants violate Jacobi")
        return FAILED
    eta = f.contact_form if f.contact_form is not None else search_contact_form(f.algebra)
    if eta is None or not is_contact(f.algebra, eta):
        _err("no contact form")
        return NO_CONTACT
    print(classify_dim5(contact_structure(f.algebra, eta)))
    return OK


def _read_matrix(path):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(data, list) or not data or not all(isinstance(r, list) and len(r) == len(data) for r in data):
        raise ParseError(f"{path}: expected a square list of rows of rational strings")
    return Matrix([[parse_rational(x, f"A[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(data)])


def cmd_realize(args) -> int:
    try:
        f = load(args.frobenius)
        A = _read_matrix(args.A)
    except ParseError as exc:
        _err(str(exc))
        return PARSE
    try:
        if f.primitive is None:
            raise ConstructionError("Frobenius file needs a 'primitive' field")
        fi = FrobeniusInput(f.algebra, f.primitive)
        if args.mode == "q2":
            c = realize_q2(fi, A)
        else:
            if args.z is None:
                raise ConstructionError("line-ideal mode needs --z")
            if args.m is not None and A.nrows != 2 * args.m:
                raise ConstructionError(f"A must be {2 * args.m}x{2 * args.m} for m = {args.m}")
            c = realize_line_ideal(fi, args.z, A).structure
    except JacobiError as exc:
        _err(str(exc))
        return FAILED
    except ConstructionError as exc:
        _err(f"construction gate: {exc}")
        return GATE
    out = AlgebraFile(f"{f.name}_{args.mode}", c.algebra, c.eta)
    rep, code = _report(out)
    if code != OK:
        _err("constructed algebra did not pass the analysis; nothing written")
        return code
    if args.out:
        dump(out, args.out)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(dumps(out))
    return OK


def cmd_catalog(args) -> int:
    if args.emit:
        try:
            e = get(args.emit)
        except KeyError:
            _err(f"unknown catalog name {args.emit!r}")
            return UNKNOWN
        f = AlgebraFile(e.name, e.algebra, e.contact_form)
        if args.out:
            dump(f, args.out)
            print(f"wrote {args.out}")
        else:
            sys.stdout.write(dumps(f))
        return OK
    for e in catalog():
        note = f" [{e.expected['note']}]" if "note" in e.expected else ""
        print(f"{e.name}\t{e.provenance}{note}")
    return OK


def cmd_fuzz(args) -> int:
    outcomes = fuzz.run(args.seed, args.count, args.max_dim)
    sys.stdout.write(fuzz.summary(args.seed, outcomes))
    bad = [o for o in outcomes if not o.ok]
    if bad and args.dump_dir:
        d = Path(args.dump_dir)
        d.mkdir(parents=True, exist_ok=True)
        for o in bad:
            if o.structure is not None:
                name = f"fuzz_s{args.seed}_i{o.index}"
                dump(AlgebraFile(name, o.structure.algebra, o.structure.eta), d / f"{name}.json")
    return FAILED if bad else OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="contactlab", description="Exact analysis of contact Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("validate", help="parse an algebra file and check Jacobi")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)
    s = sub.add_parser("analyze", help="full analysis report")
    s.add_argument("path")
    s.add_argument("--report", help="write the JSON report here")
    s.add_argument("--no-search", action="store_true", help="do not search for a contact form when absent")
    s.set_defaults(func=cmd_analyze)
    s = sub.add_parser("classify5", help="label a five-dimensional contact algebra")
    s.add_argument("path")
    s.set_defaults(func=cmd_classify5)
    s = sub.add_parser("realize", help="build a DS-contact algebra from a Frobenius input")
    s.add_argument("--mode", choices=("q2", "line-ideal"), required=True)
    s.add_argument("--frobenius", required=True, help="algebra file with a 'primitive' field")
    s.add_argument("--A", required=True, help="JSON square matrix of rational strings")
    s.add_argument("--z", type=int, help="basis index spanning a one-dimensional ideal")
    s.add_argument("--m", type=int, help="half the dimension of q (line-ideal mode)")
    s.add_argument("--out", help="output algebra file (stdout if omitted)")
    s.set_defaults(func=cmd_realize)
    s = sub.add_parser("catalog", help="list or export the built-in examples")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit", metavar="NAME")
    s.add_argument("--out")
    s.set_defaults(func=cmd_catalog)
    s = sub.add_parser("fuzz", help="randomized audit of constructed contact algebras")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--max-dim", type=int, default=9)
    s.add_argument("--dump-dir", default="fuzz_failures", help="where failing instances are written")
    s.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
