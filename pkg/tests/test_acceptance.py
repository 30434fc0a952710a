"""Acceptance suite: one PASS/FAIL line per criterion, printed past pytest's capture."""
import random
import time
from fractions import Fraction
from itertools import product

import pytest

from contactlab import cli, fuzz
from contactlab.analysis import (check_identities, classify_dim5, decompose, eigen_pairing_checks, ell_sigma,
                                 frobenius_check, is_ds_contact, main_theorem_audit, t0_algebra, witness_e)
from contactlab.catalog import (ENTRY_NAME, SL2, SU2, catalog, contact_entries, derive, flagged_entries,
                                frobenius_inputs, get, verify_entry)
from contactlab.constructions import (build_an, obstruction_check, random_basis_change, realize_line_ideal,
                                      realize_q2, transport)
from contactlab.forms import (KForm, basic_betti, betti_numbers, ce_differential, is_transversely_unimodular,
                              xi_commutator_equivalences)
from contactlab.lie import contains_in_commutator, fingerprint, is_unimodular
from contactlab.linalg import Matrix, Polynomial, char_poly, coordinates, generalized_eigenspace

F = Fraction
H = [[1, 0], [0, -1]]
J = [[0, -1], [1, 0]]
FUZZ_SEED, FUZZ_COUNT = 0, 200


@pytest.fixture
def report(capsys):
    def emit(n, failures, detail=""):
        status = "PASS" if not failures else "FAIL"
        line = f"criterion {n}: {status}" + (f" ({detail})" if detail else "")
        with capsys.disabled():
            print("\n" + line)
            for f in failures[:10]:
                print(f"    {f}")
        assert not failures, line
    return emit


@pytest.fixture(scope="module")
def fuzzed():
    return [fuzz.generate(FUZZ_SEED, i) for i in range(FUZZ_COUNT)]


def _instances(fuzzed):
    out = [(e.name, e.structure()) for e in contact_entries()]
    out += [(f"fuzz[{i.index}] {i.kind}/{i.source}", i.structure) for i in fuzzed]
    return out


def test_criterion_1_identity_suite(report):
    t = time.perf_counter()
    entries = contact_entries()
    bad, total = [], 0
    for e in entries:
        rep = check_identities(decompose(e.structure()))
        total += len(rep.verdicts)
        bad += [f"{e.name}: {k} {v}" for k, v in rep.failures().items()]
    dt = time.perf_counter() - t
    if len(entries) < 14:
        bad.append(f"only {len(entries)} contact entries")
    if dt >= 10:
        bad.append(f"runtime {dt:.1f} s")
    report(1, bad, f"{len(entries)} entries, {total} checks, 0 failures required, {dt:.1f} s")


def _trace_on(alg, e, basis):
    """Trace of ad_e on span(basis), for an ad_e-invariant subspace, by coordinates."""
    return sum((coordinates(alg.bracket(e, b), basis)[k] for k, b in enumerate(basis)), F(0))


def test_criterion_2_main_theorem(report, fuzzed):
    t = time.perf_counter()
    code = cli.main(["fuzz", "--seed", str(FUZZ_SEED), "--count", str(FUZZ_COUNT), "--dump-dir", ""])
    dt_cli = time.perf_counter() - t
    bad = [] if code == 0 else [f"cmd_fuzz exit {code}"]
    simple = {fingerprint(SL2), fingerprint(SU2)}
    witnessed = 0
    for name, c in _instances(fuzzed):
        alg = c.algebra
        d = decompose(c)
        tu = is_transversely_unimodular(c)
        if tu and not (d.K_s.is_zero() or fingerprint(alg) in simple):
            bad.append(f"{name}: transversely unimodular with K_s != 0 and not sl2/su2")
        if d.p and d.r:
            witnessed += 1
            we = witness_e(d)
            tr_t = _trace_on(alg, we.e, d.t.basis)
            tr_q = _trace_on(alg, we.e, d.q.basis)
            tr = alg.ad(we.e).trace()
            if tr_t != F(d.t0.dim, 2) or (we.tr_t, we.tr_q, we.tr_total) != (tr_t, tr_q, tr):
                bad.append(f"{name}: tr_t = {tr_t}, dim t0 = {d.t0.dim}")
            if tr_q < 0 or tr <= 0 or tr != tr_t + tr_q:
                bad.append(f"{name}: traces (t, q, total) = ({tr_t}, {tr_q}, {tr})")
            if tu:
                bad.append(f"{name}: transversely unimodular though t0, q != 0")
    dt = time.perf_counter() - t
    if dt_cli >= 60:
        bad.append(f"cmd_fuzz runtime {dt_cli:.1f} s")
    report(2, bad, f"{len(contact_entries())} catalog + {FUZZ_COUNT} fuzzed, {witnessed} with t0, q != 0; "
                   f"cmd_fuzz {dt_cli:.1f} s, total {dt:.1f} s")


def test_criterion_3_frobenius(report, fuzzed):
    bad, n = [], 0
    for name, c in _instances(fuzzed):
        d = decompose(c)
        if not (d.p and d.r and is_ds_contact(d)):
            continue
        n += 1
        fr = frobenius_check(d)
        # second route: rebuild d_{t0} ell from the tensors and compare entrywise
        es = ell_sigma(d)
        dl = ce_differential(t0_algebra(d), KForm.covector(es.ell_t0)).gram()
        if not es.sigma_t0.is_zero() or dl != d.omega_t:
            bad.append(f"{name}: sigma or omega_t mismatch")
        if fr.t0_unimodular or fr.t_unimodular or not fr.passed():
            bad.append(f"{name}: {fr}")
    report(3, bad, f"{n} DS-contact instances with t0, q != 0")


def test_criterion_4_dim5_classification(report):
    bad = []
    fi = frobenius_inputs()["aff"]
    built = {
        "realize_q2(aff, H)": (realize_q2(fi, H), "g1+"),
        "realize_q2(aff, J)": (realize_q2(fi, J), "g0+"),
        "line_ideal(aff, m=1, hyperbolic)": (realize_line_ideal(fi, 1, H).structure, "g1-"),
        "line_ideal(aff, m=1, elliptic)": (realize_line_ideal(fi, 1, J).structure, "g0-"),
    }
    cases = {name: (get(name).structure(), label) for label, name in ENTRY_NAME.items()}
    cases.update(built)
    rng = random.Random("criterion 4")
    for name, (c, label) in cases.items():
        if classify_dim5(c) != label:
            bad.append(f"{name}: {classify_dim5(c)} != {label}")
        for k in range(20):
            got = classify_dim5(transport(c, random_basis_change(rng, 5)))
            if got != label:
                bad.append(f"{name}, basis change {k}: {got}")
    fps = [fingerprint(get(n).algebra) for n in ENTRY_NAME.values()]
    if len(set(fps)) != 4:
        bad.append("normal form fingerprints collide")
    report(4, bad, f"{len(cases)} algebras x 20 basis changes, 4 distinct fingerprints")


def test_criterion_5_cohomology(report):
    t = time.perf_counter()
    bad = []
    valid = [e for e in catalog() if e.expected.get("jacobi", True)]
    for e in valid:
        alg = e.algebra
        b = betti_numbers(alg)
        uni = is_unimodular(alg)
        if (b[-1] == 1) != uni or b[-1] not in (0, 1):
            bad.append(f"{e.name}: b_top = {b[-1]}, unimodular = {uni}")
        if uni and b != b[::-1]:
            bad.append(f"{e.name}: Poincare duality fails {b}")
        if e.contact_form is None:
            continue
        c = e.structure()
        if (basic_betti(c)[-1] != 0) != is_transversely_unimodular(c):
            bad.append(f"{e.name}: top basic Betti vs transverse unimodularity")
        eq = xi_commutator_equivalences(c)
        if len(set(eq.values())) != 1 or eq["xi_in_commutator"] != contains_in_commutator(alg, c.reeb):
            bad.append(f"{e.name}: xi-in-commutator equivalences disagree {eq}")
    dt = time.perf_counter() - t
    if dt >= 30:
        bad.append(f"runtime {dt:.1f} s")
    skipped = ", ".join(e.name for e in flagged_entries())
    report(5, bad, f"{len(valid)} Jacobi-valid entries, {dt:.1f} s; flagged transcriptions without a complex: {skipped}")


def _tr(name, label):
    alg = get(name).algebra
    return alg.ad_basis(alg.labels.index(label)).trace()


def test_criterion_6_spot_values(report):
    bad = []
    df = get("diatta_foreman").structure()
    ad = df.algebra.ad(df.reeb)
    if not (ad @ ad).is_zero() or not is_unimodular(df.algebra):
        bad.append("Diatta-Foreman: ad_xi^2 or unimodularity")
    for name, lab in (("h4_symplectic", "e4"), ("sasakian_2", "e1"), ("sasakian_2_signfix", "e1"), ("converse_2", "e2")):
        if _tr(name, lab) != 1:
            bad.append(f"{name}: tr(ad_{lab}) = {_tr(name, lab)}")
    g = get("gamma_example")
    if verify_entry(g):
        bad.append(f"gamma_example: {verify_entry(g)}")
    recorded = ["contactization_h4", "converse_1", "converse_2", "sasakian_2_signfix"]
    for name in recorded:
        e = get(name)
        if derive(e, ["xi_witness"])["xi_witness_value"] != e.structure().reeb:
            bad.append(f"{name}: recorded witness does not give xi")
    # sasakian_1 fails Jacobi as transcribed; its recorded combination evaluates to xi + e4
    s1 = get("sasakian_1")
    got = derive(s1, ["xi_witness"])["xi_witness_value"]
    if s1.algebra.is_valid or got != s1.expected["xi_witness_value"]:
        bad.append("sasakian_1: recorded discrepancy changed")
    report(6, bad, f"5 traces/gamma, witnesses for {len(recorded)} examples; sasakian_1 witness not reproducible "
                   "(flagged record: fails Jacobi, combination gives xi + e4)")


def _full_audit(c):
    d = decompose(c)
    problems = [f"{k}" for k in check_identities(d).failures()]
    if not main_theorem_audit(c, d).passed:
        problems.append("main theorem audit")
    if not is_ds_contact(d):
        problems.append("not DS")
    elif d.p and d.r and not frobenius_check(d).passed():
        problems.append("frobenius")
    return problems


def test_criterion_7_constructions(report):
    bad = []
    inputs = frobenius_inputs()
    if len(inputs) < 5 or not {"a1", "a2"} <= set(inputs):
        bad.append("need 5 Frobenius inputs including a1, a2")
    for name, f in sorted(inputs.items()):
        bad += [f"realize_q2({name}): {p}" for p in _full_audit(realize_q2(f, H))]
    aff = inputs["aff"]
    A4 = Matrix([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, -1, 0], [0, 0, 0, -2]])
    for m, A in ((1, Matrix(H)), (2, A4)):
        r = realize_line_ideal(aff, 1, A)
        if r.structure.algebra.dim != 3 + 2 * m:
            bad.append(f"line ideal m={m}: dim")
        bad += [f"line ideal m={m}: {p}" for p in _full_audit(r.structure)]
    for n in (1, 2, 3):
        f = build_an(n)
        rk = f.omega.gram().rank()
        if rk != n * n + n:
            bad.append(f"build_an({n}): omega rank {rk}")
    if obstruction_check(build_an(5), 5, 2) != "excluded":
        bad.append("a5 with k = 2 not excluded")
    report(7, bad, f"realize_q2 on {len(inputs)} inputs, line ideal m = 1, 2, build_an ranks, a5 excludes k = 2")


def test_criterion_8_eigen_pairing(report):
    bad, skipped = [], []
    x = Polynomial.x()
    for name in ("g1_plus", "g1_minus", "g0_plus", "g0_minus"):
        d = decompose(get(name).structure())
        ep = eigen_pairing_checks(d)
        if ep.skipped:
            skipped.append(name)
            if name.startswith("g1"):
                bad.append(f"{name}: unexpectedly skipped ({ep.skipped})")
            continue
        if not all(ep.orthogonality.values()):
            bad.append(f"{name}: orthogonality {ep.orthogonality}")
        # second route: omega_q(E_lam, E_mu) = 0 unless lam + mu = 0, from the eigenspaces of A directly
        spaces = {lam: generalized_eigenspace(d.A, lam) for lam in char_poly(d.A).rational_roots()}
        for (l1, E1), (l2, E2) in product(spaces.items(), repeat=2):
            if l1 + l2 != 0 and any(d.wq(u, v) for u in E1 for v in E2):
                bad.append(f"{name}: omega_q pairs E_{l1} with E_{l2}")
        for blk in ep.blocks:
            roots = blk.char_poly.rational_roots()
            a, b = roots.get(F(0), 0), roots.get(F(1), 0)
            if blk.char_poly != x ** a * (x - 1) ** b:
                bad.append(f"{name}: char poly {blk.char_poly}")
            if blk.T != blk.P + blk.Q_dagger:
                bad.append(f"{name}: T != P + Q^dagger")
        if not ep.passed():
            bad.append(f"{name}: checks")
    report(8, bad, f"split: g1+, g1-; skipped (non-rational spectrum): {', '.join(skipped)}")
