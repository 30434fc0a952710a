"""Deterministic generator of contact Lie algebras that stay inside the class by construction.

Four sources: random basis changes of catalog contact entries, realize_q2 on a Frobenius input
with random sp(2) data, realize_line_ideal with random A = Omega^{-1} S, and contactizations of
symplectic catalog algebras with the form perturbed by an exact 2-form.  Instance ``i`` of seed
``s`` depends only on ``(s, i)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import check_identities, decompose, frobenius_check, is_ds_contact, main_theorem_audit
from .catalog import catalog, contact_entries, frobenius_inputs
from .constructions import (FrobeniusInput, SymplecticAlgebra, contactize, random_basis_change,
                            realize_line_ideal, realize_q2, standard_symplectic, transport)
from .errors import ConstructionError, ContactLabError
from .forms import ContactStructure, KForm, ce_differential
from .lie import commutator_subalgebra
from .linalg import Matrix, kernel_basis, unit_vec

KINDS = ("basis_change", "realize_q2", "line_ideal", "contactize")


def _rat(rng: random.Random, spread: int = 3) -> Fraction:
    return Fraction(rng.randint(-spread, spread), rng.choice((1, 1, 2, 3)))


def _sp2(rng: random.Random) -> Matrix:
    while True:
        a, b, c = _rat(rng), _rat(rng), _rat(rng)
        if a * a + b * c != 0:
            return Matrix([[a, b], [c, -a]])


def _sp_symmetric(rng: random.Random, m: int) -> Matrix:
    """A = Omega^{-1} S for a random symmetric S, so A lies in sp(2m); retried until invertible."""
    om_inv = standard_symplectic(m).inverse()
    n = 2 * m
    while True:
        s = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                s[i][j] = s[j][i] = _rat(rng, 2)
        a = om_inv @ Matrix(s)
        if a.det() != 0:
            return a


def _closed_shift(rng: random.Random, f: FrobeniusInput) -> FrobeniusInput:
    """Add a random closed 1-form to the primitive; d(primitive) is unchanged."""
    alg = f.algebra
    der = commutator_subalgebra(alg).basis
    # closed 1-forms are exactly the covectors annihilating [a, a]
    closed = kernel_basis(Matrix(der)) if der else [unit_vec(alg.dim, i) for i in range(alg.dim)]
    prim = list(f.primitive.covector_coeffs())
    for w in closed:
        c = _rat(rng, 1)
        prim = [a + c * b for a, b in zip(prim, w)]
    return FrobeniusInput(alg, KForm.covector(prim), f.nu)


@dataclass
class Instance:
    index: int
    kind: str
    source: str
    structure: ContactStructure


@dataclass
class Outcome:
    index: int
    kind: str
    source: str
    dim: int
    ok: bool
    problems: list[str] = field(default_factory=list)
    structure: ContactStructure | None = None


def _contact_entries(max_dim: int):
    return [e for e in contact_entries() if e.algebra.dim <= max_dim]


def _frobenius(max_dim: int, extra: int):
    return [(k, f) for k, f in sorted(frobenius_inputs().items()) if f.algebra.dim + extra <= max_dim]


def _line_inputs():
    """(name, Frobenius input, generator index of a 1-dim ideal)."""
    fi = frobenius_inputs()
    return [("aff", fi["aff"], 1), ("a1", fi["a1"], 1), ("aff_aff", fi["aff_aff"], 1), ("aff_aff", fi["aff_aff"], 3)]


def _symplectic_bases(max_dim: int):
    out = [(e.name, SymplecticAlgebra(e.algebra, e.symplectic)) for e in catalog()
           if e.symplectic is not None and e.expected.get("jacobi", True)]
    out += [(k, f.symplectic) for k, f in sorted(frobenius_inputs().items())]
    return [(k, s) for k, s in out if s.algebra.dim + 1 <= max_dim]


def generate(seed: int, index: int, max_dim: int = 9) -> Instance:
    rng = random.Random(f"{seed}:{index}")
    kind = KINDS[index % len(KINDS)]
    if kind == "basis_change":
        e = rng.choice(_contact_entries(max_dim))
        c = e.structure()
        return Instance(index, kind, e.name, transport(c, random_basis_change(rng, c.algebra.dim)))
    if kind == "realize_q2":
        name, f = rng.choice(_frobenius(max_dim, 3))
        c = realize_q2(_closed_shift(rng, f), _sp2(rng))
        if rng.random() < 0.5:
            c = transport(c, random_basis_change(rng, c.algebra.dim))
        return Instance(index, kind, name, c)
    if kind == "line_ideal":
        choices = [(n, f, z) for n, f, z in _line_inputs() if f.algebra.dim + 3 <= max_dim]
        name, f, z = rng.choice(choices)
        m = 2 if f.algebra.dim + 5 <= max_dim and rng.random() < 0.5 else 1
        zv = [Fraction(0)] * f.algebra.dim
        zv[z] = Fraction(rng.choice((1, 2, -1, Fraction(1, 2))))
        c = realize_line_ideal(f, zv, _sp_symmetric(rng, m)).structure
        return Instance(index, kind, f"{name}/m={m}", c)
    name, s = rng.choice(_symplectic_bases(max_dim))
    alg = s.algebra
    while True:
        theta = KForm.covector([_rat(rng, 1) for _ in range(alg.dim)])
        om = s.omega + ce_differential(alg, theta)
        if om.gram().det() != 0:
            break
    c = contactize(SymplecticAlgebra(alg, om))
    return Instance(index, kind, name, transport(c, random_basis_change(rng, c.algebra.dim)))


def run_instance(inst: Instance) -> Outcome:
    c = inst.structure
    problems = []
    try:
        d = decompose(c)
        ids = check_identities(d)
        problems += [f"identity {k}: {v}" for k, v in ids.failures().items()]
        audit = main_theorem_audit(c, d)
        if not audit.passed:
            problems.append(f"main theorem audit: {audit.details}")
        if d.p and d.r and is_ds_contact(d):
            fr = frobenius_check(d)
            if not fr.passed():
                problems.append(f"frobenius: {fr}")
        if inst.kind in ("realize_q2", "line_ideal") and not is_ds_contact(d):
            problems.append("realization output is not DS-contact")
    except ContactLabError as exc:
        problems.append(f"{type(exc).__name__}: {exc}")
    return Outcome(inst.index, inst.kind, inst.source, c.algebra.dim, not problems, problems, c)


def run(seed: int, count: int, max_dim: int = 9) -> list[Outcome]:
    out = []
    for i in range(count):
        try:
            inst = generate(seed, i, max_dim)
        except ConstructionError as exc:
            out.append(Outcome(i, KINDS[i % len(KINDS)], "generator", 0, False, [f"generator: {exc}"]))
            continue
        out.append(run_instance(inst))
    return out


def summary(seed: int, outcomes: list[Outcome]) -> str:
    lines = [f"fuzz seed={seed} count={len(outcomes)} failures={sum(not o.ok for o in outcomes)}"]
    by_kind: dict[str, int] = {}
    for o in outcomes:
        by_kind[o.kind] = by_kind.get(o.kind, 0) + 1
    lines.append("kinds: " + ", ".join(f"{k}={by_kind.get(k, 0)}" for k in KINDS))
    for o in outcomes:
        status = "ok" if o.ok else "FAIL"
        lines.append(f"{o.index:5d} {o.kind:12s} {o.source:18s} dim={o.dim} {status}")
        lines.extend(f"      {p}" for p in o.problems)
    return "\n".join(lines) + "\n"
