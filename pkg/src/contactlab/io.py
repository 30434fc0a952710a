"""JSON surface: algebra files and analysis reports, all rationals as strings."""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path
from typing import Any

from .analysis import (check_identities, classify_dim5, decompose, frobenius_check, is_ds_contact,
                       main_theorem_audit, witness_e)
from .errors import ContactLabError, NotApplicable, ParseError
from .forms import (KForm, basic_betti, betti_numbers, contact_structure, is_contact,
                    is_transversely_unimodular)
from .lie import LieAlgebra, is_unimodular
from .linalg import Matrix, char_poly

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def fmt(x) -> str:
    """Canonical rational string: "p" or "p/q" in lowest terms, q > 0."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v) -> list[str]:
    return [fmt(c) for c in v]


def parse_rational(s: Any, where: str) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL.match(s):
        raise ParseError(f"{where}: expected a rational string 'p' or 'p/q', got {s!r}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"{where}: zero denominator in {s!r}")
    return Fraction(int(num), int(den) if den else 1)


@dataclass(frozen=True)
class AlgebraFile:
    name: str
    algebra: LieAlgebra
    contact_form: KForm | None = None
    primitive: KForm | None = None  # only for Frobenius inputs


def _sparse(obj: Any, dim: int, where: str) -> list[Fraction]:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object mapping index to rational string")
    out = [Fraction(0)] * dim
    for key, val in obj.items():
        if not re.fullmatch(r"\d+", str(key)) or int(key) >= dim:
            raise ParseError(f"{where}: index {key!r} out of range for dim {dim}")
        out[int(key)] = parse_rational(val, f"{where}[{key}]")
    return out


def loads(text: str) -> AlgebraFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")
    for key in ("name", "dim", "basis", "brackets"):
        if key not in data:
            raise ParseError(f"missing field '{key}'")
    name, dim, basis = data["name"], data["dim"], data["basis"]
    if not isinstance(name, str):
        raise ParseError("name: expected a string")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("dim: expected a positive integer")
    if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise ParseError(f"basis: expected {dim} label strings")
    if len(set(basis)) != dim:
        raise ParseError("basis: labels must be distinct")
    if not isinstance(data["brackets"], list):
        raise ParseError("brackets: expected a list")
    structure = {}
    for n, rec in enumerate(data["brackets"]):
        where = f"brackets[{n}]"
        if not isinstance(rec, dict) or not {"lhs", "rhs", "result"} <= set(rec):
            raise ParseError(f"{where}: expected fields lhs, rhs, result")
        i, j = rec["lhs"], rec["rhs"]
        if not all(isinstance(t, int) and not isinstance(t, bool) for t in (i, j)):
            raise ParseError(f"{where}: lhs and rhs must be integers")
        if not 0 <= i < j < dim:
            raise ParseError(f"{where}: need 0 <= lhs < rhs < dim, got ({i}, {j})")
        if (i, j) in structure:
            raise ParseError(f"{where}: duplicate pair ({i}, {j})")
        structure[(i, j)] = _sparse(rec["result"], dim, f"{where}.result")
    forms = {}
    for key in ("contact_form", "primitive"):
        if data.get(key) is not None:
            forms[key] = KForm.covector(_sparse(data[key], dim, key))
    return AlgebraFile(name, LieAlgebra(dim, structure, basis), forms.get("contact_form"), forms.get("primitive"))


def load(path) -> AlgebraFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def _sparse_out(v) -> dict[str, str]:
    return {str(i): fmt(c) for i, c in enumerate(v) if c}


def to_dict(f: AlgebraFile) -> dict:
    alg = f.algebra
    brackets = []
    for i, j in combinations(range(alg.dim), 2):
        v = alg.bracket_basis(i, j)
        if any(v):
            brackets.append({"lhs": i, "rhs": j, "result": _sparse_out(v)})
    out = {"name": f.name, "dim": alg.dim, "basis": list(alg.labels), "brackets": brackets,
           "contact_form": _sparse_out(f.contact_form.covector_coeffs()) if f.contact_form is not None else None}
    if f.primitive is not None:
        out["primitive"] = _sparse_out(f.primitive.covector_coeffs())
    return out


def dumps(f: AlgebraFile) -> str:
    return json.dumps(to_dict(f), indent=2) + "\n"


def dump(f: AlgebraFile, path) -> None:
    Path(path).write_text(dumps(f), encoding="utf-8")


def digest(f: AlgebraFile) -> str:
    canon = json.dumps(to_dict(f), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


# ----------------------------------------------------------------- reports

def search_contact_form(alg: LieAlgebra) -> KForm | None:
    """Heuristic: sums of dual basis covectors with coefficients in {-1, 0, 1}, fewest terms first."""
    n = alg.dim
    if n % 2 == 0:
        return None
    for size in range(1, n + 1):
        for support in combinations(range(n), size):
            for signs in product((1, -1), repeat=size):
                if signs[0] != 1:
                    continue
                v = [0] * n
                for i, s in zip(support, signs):
                    v[i] = s
                eta = KForm.covector(v)
                if is_contact(alg, eta):
                    return eta
    return None


def analysis_report(f: AlgebraFile, search: bool = True) -> dict:
    """Everything the analysis layer can say about one algebra file, in a fixed key order.

    Raises NotApplicable("no contact form") when no form is given and the search finds none.
    """

    alg = f.algebra
    rep: dict = {"name": f.name, "input_digest": digest(f), "dim": alg.dim}
    viol = alg.jacobi_violations
    rep["verdicts"] = {"jacobi": not viol}
    if viol:
        rep["jacobi_violations"] = [[i, j, k, fmt_vec(r)] for i, j, k, r in viol]
        return rep
    eta, source = f.contact_form, "given"
    if eta is None:
        eta, source = (search_contact_form(alg) if search else None), "heuristic search over +-1 dual-basis sums"
        if eta is None:
            raise NotApplicable("no contact form")
    rep["contact_form"] = {"source": source, "eta": fmt_vec(eta.covector_coeffs())}
    v = rep["verdicts"]
    v["contact"] = is_contact(alg, eta)
    if not v["contact"]:
        return rep
    c = contact_structure(alg, eta)
    d = decompose(c)
    v["reeb"] = fmt_vec(c.reeb)
    v["unimodular"] = is_unimodular(alg)
    v["transversely_unimodular"] = is_transversely_unimodular(c)
    v["ds"] = is_ds_contact(d)
    v["ad_xi_nilpotent"] = d.K_s.is_zero() and (d.K ** alg.dim).is_zero()
    if alg.dim == 5:
        try:
            v["classification"] = classify_dim5(c)
        except ContactLabError as exc:
            v["classification"] = f"error: {exc}"
    rank_beta = 0
    if d.r and d.p:
        cols = [d.beta[i][j] for i, j in combinations(range(d.r), 2)]
        rank_beta = Matrix.from_columns(cols).rank() if cols else 0
    rep["decomposition"] = {
        "dim_t": d.t.dim, "dim_q": d.q.dim, "dim_t0": d.t0.dim,
        "A_char_poly": fmt_vec(char_poly(d.A).coeffs) if d.r else [],
        "beta_rank": rank_beta,
        "gamma_zero": all(not any(g) for row in d.gamma for g in row),
        "flags": list(d.flags),
    }
    ids = check_identities(d)
    rep["identities"] = {
        "counts": ids.counts(),
        "checks": {k: ({"status": r.status, "reason": r.reason} if r.reason else {"status": r.status})
                   for k, r in ids.verdicts.items()},
    }
    try:
        we = witness_e(d)
        rep["witness"] = {"e": fmt_vec(we.e), "tr_t": fmt(we.tr_t), "tr_q": fmt(we.tr_q),
                          "tr_total": fmt(we.tr_total), "checks": dict(we.checks)}
    except NotApplicable as exc:
        rep["witness"] = {"skipped": str(exc)}
    try:
        fr = frobenius_check(d)
        rep["frobenius"] = {"passed": fr.passed()}
    except NotApplicable as exc:
        rep["frobenius"] = {"skipped": str(exc)}
    audit = main_theorem_audit(c, d)
    rep["audit"] = {"passed": audit.passed, "three_dim_simple": audit.three_dim_simple,
                    "details": dict(audit.details)}
    rep["betti"] = list(betti_numbers(alg))
    rep["basic_betti"] = list(basic_betti(c))
    rep["clean"] = ids.passed() and audit.passed and rep["frobenius"].get("passed", True)
    return rep


def report_json(rep: dict) -> str:
    return json.dumps(rep, indent=2) + "\n"
