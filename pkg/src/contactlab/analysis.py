"""Structure of a contact Lie algebra relative to the semisimple part of ad_xi.

With K = ad_xi = K_s + K_n, the algebra splits as g = t + q with t = ker K_s and
q = im K_s, and t = R xi + t0 with t0 = t cap ker eta.  In the adapted frame
(xi, t0 basis, q basis) the brackets read

    [xi, x] = C x                 [xi, u] = A u
    [x, y]  = omega_t(x, y) xi + alpha(x, y)
    [x, u]  = rho(x) u
    [u, v]  = omega_q(u, v) xi + beta(u, v) + gamma(u, v)

for x, y in t0 and u, v in q.  Tensors are stored in frame coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Sequence

from .errors import DegenerateError, InconsistencyError, NotApplicable
from .forms import (ContactStructure, KForm, ce_differential, contact_structure, transverse_data,
                    is_transversely_unimodular, betti_numbers)
from .lie import (LieAlgebra, Subspace, center, commutator_subalgebra, fingerprint, is_unimodular,
                  is_subalgebra)
from .linalg import (Matrix, Polynomial, Vector, char_poly, column_space_basis, coordinates,
                     generalized_eigenspace, in_span, is_zero_vec, jordan_chevalley, kernel_basis,
                     minimal_poly, solve, unit_vec, vadd, vcomb, vsub, vscale, wedge_square_operator,
                     zero_vec, dot, row_space_basis)

NOT_APPLICABLE = "K_s = 0: main-theorem pipeline not applicable"
SL2_REGIME = "sl(2,R)/su(2) regime"
NILPOTENT_REGIME = "nilpotent-ad_xi regime"


@dataclass(frozen=True)
class ContactDecomposition:
    structure: ContactStructure
    K: Matrix
    K_s: Matrix
    K_n: Matrix
    t: Subspace
    q: Subspace
    t0: Subspace
    t0_basis: tuple[Vector, ...]
    q_basis: tuple[Vector, ...]
    frame: Matrix            # columns: xi, t0 basis, q basis
    frame_inv: Matrix
    C: Matrix                # ad_xi on t0 (t0 coordinates); ad_xi kills xi
    A: Matrix                # ad_xi on q
    omega_t: Matrix          # Gram matrix on t0
    omega_q: Matrix          # Gram matrix on q
    alpha: tuple             # alpha[a][b]: t0 coordinates of the t0-part of [x_a, x_b]
    beta: tuple              # beta[i][j]: t0 coordinates of the t0-part of [u_i, u_j]
    gamma: tuple             # gamma[i][j]: q coordinates of the q-part of [u_i, u_j]
    rho: tuple               # rho[a] = ad_{x_a} on q
    flags: tuple[str, ...] = ()

    @property
    def algebra(self) -> LieAlgebra:
        return self.structure.algebra

    @property
    def xi(self) -> Vector:
        return self.structure.reeb

    @property
    def p(self) -> int:
        return len(self.t0_basis)

    @property
    def r(self) -> int:
        return len(self.q_basis)

    # bilinear extensions in frame coordinates
    def al(self, x: Sequence, y: Sequence) -> Vector:
        return _bilinear(self.alpha, x, y, self.p)

    def be(self, u: Sequence, v: Sequence) -> Vector:
        return _bilinear(self.beta, u, v, self.p)

    def ga(self, u: Sequence, v: Sequence) -> Vector:
        return _bilinear(self.gamma, u, v, self.r)

    def wt(self, x: Sequence, y: Sequence) -> Fraction:
        return dot(x, self.omega_t @ tuple(y)) if self.p else Fraction(0)

    def wq(self, u: Sequence, v: Sequence) -> Fraction:
        return dot(u, self.omega_q @ tuple(v)) if self.r else Fraction(0)

    def rho_of(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.r, self.r)
        for a, c in enumerate(x):
            if c:
                out = out + self.rho[a] * c
        return out

    def t0_vector(self, x: Sequence) -> Vector:
        """Embed t0 coordinates into g."""
        return vcomb(x, self.t0_basis, self.algebra.dim)

    def q_vector(self, u: Sequence) -> Vector:
        return vcomb(u, self.q_basis, self.algebra.dim)

    def split(self, v: Sequence) -> tuple[Fraction, Vector, Vector]:
        """(xi, t0, q) frame coordinates of a vector of g."""
        c = self.frame_inv @ tuple(v)
        return c[0], c[1:1 + self.p], c[1 + self.p:]


def _bilinear(table, x, y, n) -> Vector:
    out = [Fraction(0)] * n
    for a, xa in enumerate(x):
        if xa:
            row = table[a]
            for b, yb in enumerate(y):
                if yb:
                    c = xa * yb
                    for k, v in enumerate(row[b]):
                        if v:
                            out[k] += c * v
    return tuple(out)


def decompose(c: ContactStructure) -> ContactDecomposition:
    alg, xi, eta = c.algebra, c.reeb, c.eta
    alg.require_valid()
    n = alg.dim
    K = alg.ad(xi)
    K_s, K_n = jordan_chevalley(K)
    t = Subspace(n, kernel_basis(K_s))
    q_basis = tuple(column_space_basis(K_s))
    t0_basis = tuple(kernel_basis(K_s.vstack(Matrix([eta.covector_coeffs()]))))
    qs = Subspace(n, q_basis)
    t0 = Subspace(n, t0_basis)
    p, r = len(t0_basis), len(q_basis)
    if 1 + p + r != n:
        raise InconsistencyError("t0 + R xi + q does not fill g")
    frame = Matrix.from_columns([xi, *t0_basis, *q_basis])
    try:
        finv = frame.inverse()
    except ZeroDivisionError:
        raise InconsistencyError("adapted frame is singular") from None

    def fc(v):
        return finv @ tuple(v)

    A = Matrix.from_columns([fc(alg.bracket(xi, u))[1 + p:] for u in q_basis], r) if r else Matrix.zeros(0, 0)
    C = Matrix.from_columns([fc(alg.bracket(xi, x))[1:1 + p] for x in t0_basis], p) if p else Matrix.zeros(0, 0)
    omega_t = Matrix([[fc(alg.bracket(x, y))[0] for y in t0_basis] for x in t0_basis]) if p else Matrix.zeros(0, 0)
    omega_q = Matrix([[fc(alg.bracket(u, v))[0] for v in q_basis] for u in q_basis]) if r else Matrix.zeros(0, 0)
    alpha = tuple(tuple(fc(alg.bracket(x, y))[1:1 + p] for y in t0_basis) for x in t0_basis)
    bq = [[fc(alg.bracket(u, v)) for v in q_basis] for u in q_basis]
    beta = tuple(tuple(w[1:1 + p] for w in row) for row in bq)
    gamma = tuple(tuple(w[1 + p:] for w in row) for row in bq)
    rho = tuple(Matrix.from_columns([fc(alg.bracket(x, u))[1 + p:] for u in q_basis], r) if r else Matrix.zeros(0, 0)
                for x in t0_basis)
    flags = []
    if r == 0:
        flags.append(NOT_APPLICABLE)
    elif p == 0:
        flags.append(SL2_REGIME)
    d = ContactDecomposition(c, K, K_s, K_n, t, qs, t0, t0_basis, q_basis, frame, finv, C, A,
                             omega_t, omega_q, alpha, beta, gamma, rho, tuple(flags))
    _verify_decomposition(d)
    return d


def reconstruct_bracket(d: ContactDecomposition, a: int, b: int) -> Vector:
    """Frame coordinates of [f_a, f_b] assembled from the tensors alone."""
    p, r, n = d.p, d.r, d.algebra.dim

    def kind(i):
        return ("xi", 0) if i == 0 else (("t0", i - 1) if i <= p else ("q", i - 1 - p))

    (ka, ia), (kb, ib) = kind(a), kind(b)
    out = [Fraction(0)] * n
    sign = 1
    order = {"xi": 0, "t0": 1, "q": 2}
    if order[ka] > order[kb]:
        (ka, ia), (kb, ib), sign = (kb, ib), (ka, ia), -1
    if ka == "xi" and kb == "xi":
        pass
    elif ka == "xi" and kb == "t0":
        out[1:1 + p] = d.C.col(ib)
    elif ka == "xi" and kb == "q":
        out[1 + p:] = d.A.col(ib)
    elif ka == "t0" and kb == "t0":
        out[0] = d.omega_t[ia, ib]
        out[1:1 + p] = d.alpha[ia][ib]
    elif ka == "t0" and kb == "q":
        out[1 + p:] = d.rho[ia].col(ib)
    else:
        out[0] = d.omega_q[ia, ib]
        out[1:1 + p] = d.beta[ia][ib]
        out[1 + p:] = d.gamma[ia][ib]
    return tuple(sign * x for x in out)


def _verify_decomposition(d: ContactDecomposition) -> None:
    alg = d.algebra
    n = alg.dim
    cols = d.frame.columns()
    for a in range(n):
        for b in range(a + 1, n):
            want = alg.bracket(cols[a], cols[b])
            got = d.frame @ reconstruct_bracket(d, a, b)
            if want != got:
                raise InconsistencyError(f"bracket reconstruction fails on frame pair ({a}, {b})")
    if d.r and not d.A.is_invertible():
        raise InconsistencyError("ad_xi is not invertible on q")
    if any(d.structure.eta(v) for v in d.q_basis):
        raise InconsistencyError("q is not contained in ker eta")


# ------------------------------------------------------------------ verdicts

@dataclass(frozen=True)
class Verdict:
    status: str                      # "pass" | "fail" | "skipped"
    witness: tuple | None = None
    reason: str | None = None

    def __str__(self) -> str:
        if self.status == "fail":
            return f"fail({self.witness})"
        if self.status == "skipped":
            return f"skipped({self.reason})"
        return "pass"


PASS = Verdict("pass")


def _fail(*w) -> Verdict:
    return Verdict("fail", tuple(w))


def _skip(reason: str) -> Verdict:
    return Verdict("skipped", reason=reason)


@dataclass
class IdentityReport:
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    def failures(self) -> dict[str, Verdict]:
        return {k: v for k, v in self.verdicts.items() if v.status == "fail"}

    def passed(self) -> bool:
        return not self.failures()

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for v in self.verdicts.values():
            out[v.status] += 1
        return out


IDENTITY_IDS = (
    [f"symplectic.{i}" for i in ("i", "ii", "iii", "iv", "v", "vi")]
    + ["t_module.tt", "t_module.tq"]
    + [f"jacobi.{i}" for i in ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x",
                               "xi", "xii", "xiii", "xiv", "xv")]
    + [f"b_bomega.{i}" for i in ("i", "ii", "iii", "iv")]
    + [f"obstruction.{i}" for i in ("i", "ii", "iii", "iv", "v")]
    + [f"jacobi_ds.{i}" for i in ("i", "ii", "iii", "iv")]
)
COROLLARY_IDS = ("corollary.gamma_q2", "corollary.beta_q4", "corollary.alpha_bracket")


def _eye(n, i):
    return unit_vec(n, i)


def _first(cases, test: Callable) -> Verdict:
    """PASS unless test(*case) is falsy for some case, whose labels become the witness."""
    for labels, args in cases:
        if not test(*args):
            return _fail(*labels)
    return PASS


def _pull(m: Matrix, f: Callable, u, v):
    # (M^* f)(u, v) = f(Mu, v) + f(u, Mv)
    a = f(m @ tuple(u), v)
    b = f(u, m @ tuple(v))
    return tuple(x + y for x, y in zip(a, b)) if isinstance(a, tuple) else a + b


def _cyc(f: Callable, x, y, z):
    a, b, c = f(x, y, z), f(y, z, x), f(z, x, y)
    if isinstance(a, tuple):
        return tuple(i + j + k for i, j, k in zip(a, b, c))
    return a + b + c


def ds_formulations(d: ContactDecomposition) -> dict[str, bool]:
    """Five equivalent forms of ker ad_xi cap im ad_xi = 0."""
    K, n = d.K, d.algebra.dim
    ker = Subspace(n, kernel_basis(K))
    im = Subspace(n, column_space_basis(K))
    ker2 = Subspace(n, kernel_basis(K @ K))
    mp = minimal_poly(K)
    return {
        "ker_cap_im_zero": ker.intersect(im).is_zero(),
        "ker_sq_eq_ker": ker2 == ker,
        "nilpotent_part_kills_t": all(is_zero_vec(d.K_n @ v) for v in d.t.basis),
        "C_zero": d.C.is_zero(),
        "min_poly_simple_zero": mp.coeffs[0] == 0 and (mp.degree < 2 or mp.coeffs[1] != 0),
    }


def is_ds_contact(c) -> bool:
    d = c if isinstance(c, ContactDecomposition) else decompose(c)
    f = ds_formulations(d)
    if len(set(f.values())) != 1:
        raise InconsistencyError(f"DS formulations disagree: {f}")
    return f["C_zero"]


def check_identities(d: ContactDecomposition) -> IdentityReport:
    alg, p, r, n = d.algebra, d.p, d.r, d.algebra.dim
    rep = IdentityReport()
    V = rep.verdicts
    X = [(f"t0:{a}", _eye(p, a)) for a in range(p)]
    U = [(f"q:{i}", _eye(r, i)) for i in range(r)]

    def pairs(S, T=None):
        T = S if T is None else T
        return [((a, b), (x, y)) for (a, x), (b, y) in product(S, T)]

    def triples(S):
        return [((a, b, c), (x, y, z)) for (a, x), (b, y), (c, z) in combinations(S, 3)]

    C, A, W, Wq = d.C, d.A, d.omega_t, d.omega_q

    # -- symplectic structure of h
    G = d.structure.omega.gram()
    H = list(d.structure.h_basis)
    om = lambda u, v: dot(u, G @ tuple(v))
    hcases = [((f"h:{i}", f"h:{j}"), (a, b)) for i, a in enumerate(H) for j, b in enumerate(H)]
    V["symplectic.i"] = _first(hcases, lambda a, b: om(d.K @ a, b) + om(a, d.K @ b) == 0
                               and om(d.K_s @ a, b) + om(a, d.K_s @ b) == 0)
    ker_ks_h = Subspace(n, [vcomb(k, H, n) for k in kernel_basis(d.K_s @ Matrix.from_columns(H))]) if H else Subspace(n)
    im_ks_h = [d.K_s @ h for h in H]
    perp_rows = [tuple(dot(hh, G @ s) for hh in H) for s in im_ks_h]
    perp = Subspace(n, [vcomb(k, H, n) for k in kernel_basis(Matrix(perp_rows))]) if perp_rows and H else Subspace(n, H)
    V["symplectic.ii"] = PASS if ker_ks_h == perp else _fail("ker K_s|h", "im K_s|h perp")
    t0q = [((f"t0:{a}", f"q:{i}"), (x, u)) for a, x in enumerate(d.t0_basis) for i, u in enumerate(d.q_basis)]
    V["symplectic.iii"] = _first(t0q, lambda x, u: om(x, u) == 0)

    def split_h(v):
        _, a, b = d.split(v)
        return a, b

    V["symplectic.iv"] = _first(hcases, lambda a, b: om(a, b) == d.wt(split_h(a)[0], split_h(b)[0]) + d.wq(split_h(a)[1], split_h(b)[1]))
    V["symplectic.v"] = PASS if p == 0 or W.det() != 0 else _fail("omega_t degenerate")
    V["symplectic.vi"] = PASS if r == 0 or Wq.det() != 0 else _fail("omega_q degenerate")

    # -- t-module
    tb = d.t.basis
    V["t_module.tt"] = _first([((f"t:{i}", f"t:{j}"), (a, b)) for i, a in enumerate(tb) for j, b in enumerate(tb)],
                              lambda a, b: d.t.contains(alg.bracket(a, b)))
    V["t_module.tq"] = _first([((f"t:{i}", f"q:{j}"), (a, b)) for i, a in enumerate(tb) for j, b in enumerate(d.q_basis)],
                              lambda a, b: d.q.contains(alg.bracket(a, b)))

    # -- Jacobi consequences
    Cx = lambda x: C @ tuple(x) if p else ()
    Au = lambda u: A @ tuple(u) if r else ()
    V["jacobi.i"] = _first(pairs(X), lambda x, y: _pull(C, d.wt, x, y) == 0)
    V["jacobi.ii"] = _first(pairs(U), lambda u, v: _pull(A, d.wq, u, v) == 0)
    V["jacobi.iii"] = _first(pairs(X), lambda x, y: _pull(C, d.al, x, y) == Cx(d.al(x, y)))
    V["jacobi.iv"] = _first(pairs(U), lambda u, v: _pull(A, d.be, u, v) == Cx(d.be(u, v)))
    V["jacobi.v"] = _first(pairs(U), lambda u, v: _pull(A, d.ga, u, v) == Au(d.ga(u, v)))
    V["jacobi.vi"] = _first([((lab,), (x,)) for lab, x in X],
                            lambda x: A @ d.rho_of(x) - d.rho_of(x) @ A == d.rho_of(Cx(x)))

    def j7(x, y):
        rx, ry = d.rho_of(x), d.rho_of(y)
        return rx @ ry - ry @ rx == d.rho_of(d.al(x, y)) + A * d.wt(x, y)

    V["jacobi.vii"] = _first(pairs(X), j7)
    xuv = [((a, b, c), (x, u, v)) for (a, x), (b, u), (c, v) in product(X, U, U)]
    V["jacobi.viii"] = _first(xuv, lambda x, u, v: _pull(d.rho_of(x), d.wq, u, v) == d.wt(x, d.be(u, v)))
    V["jacobi.ix"] = _first(xuv, lambda x, u, v: _pull(d.rho_of(x), d.be, u, v)
                            == vsub(d.al(x, d.be(u, v)), vscale(d.wq(u, v), Cx(x))))
    V["jacobi.x"] = _first(xuv, lambda x, u, v: _pull(d.rho_of(x), d.ga, u, v) == d.rho_of(x) @ d.ga(u, v))
    V["jacobi.xi"] = _first(triples(X), lambda x, y, z: _cyc(lambda a, b, c: d.wt(d.al(a, b), c), x, y, z) == 0)
    V["jacobi.xii"] = _first(triples(U), lambda u, v, w: _cyc(lambda a, b, c: d.wq(d.ga(a, b), c), u, v, w) == 0)
    V["jacobi.xiii"] = _first(triples(U), lambda u, v, w: is_zero_vec(_cyc(lambda a, b, c: d.be(d.ga(a, b), c), u, v, w)))
    # the cyclic sums below carry the sign produced by expanding [x, [y, z]] in the frame
    V["jacobi.xiv"] = _first(triples(X), lambda x, y, z:
                             _cyc(lambda a, b, c: d.al(d.al(a, b), c), x, y, z)
                             == vscale(-1, _cyc(lambda a, b, c: vscale(d.wt(a, b), Cx(c)), x, y, z)))

    def T(u, v, w):
        return vadd(vscale(d.wq(u, v), Au(w)), d.rho_of(d.be(u, v)) @ tuple(w))

    V["jacobi.xv"] = _first(triples(U), lambda u, v, w:
                            _cyc(lambda a, b, c: d.ga(d.ga(a, b), c), u, v, w) == vscale(-1, _cyc(T, u, v, w)))

    # -- b and its omega_t-orthogonal
    bb = b_bomega_analysis(d)
    b, bw = bb.b, bb.bomega
    rho_bw = [d.rho_of(x).flat() for x in bw.basis]
    V["b_bomega.i"] = PASS if all(b.contains(Cx(x)) for x in b.basis) and all(bw.contains(Cx(x)) for x in bw.basis) \
        else _fail("C does not preserve b or b^omega")
    V["b_bomega.ii"] = _first([((f"bw:{k}",), (x,)) for k, x in enumerate(bw.basis)],
                              lambda x: in_span((A @ d.rho_of(x) - d.rho_of(x) @ A).flat(), rho_bw))
    V["b_bomega.iii"] = PASS if bb.sp_preimage == bw else _fail("{x : rho(x) in sp(q)}", "b^omega")
    V["b_bomega.iv"] = _first([((f"bw:{k}",), (x,)) for k, x in enumerate(bw.basis)],
                              lambda x: d.rho_of(x).trace() == 0 if r else True)

    # -- DS-only statements
    ds = is_ds_contact(d)
    if ds:
        bound = (r // 2) ** 2
        V["obstruction.i"] = PASS if bb.b_is_ideal and b.dim <= bound else _fail("b", b.dim, bound)
        V["obstruction.ii"] = PASS if bb.bomega_is_subalgebra and p - bw.dim <= bound else _fail("b^omega", p - bw.dim, bound)
        V["obstruction.iii"] = _first([((f"bw:{k}",), (x,)) for k, x in enumerate(bw.basis)],
                                      lambda x: (A @ d.rho_of(x) - d.rho_of(x) @ A).is_zero() and _in_sp(d.rho_of(x), Wq))
        V["obstruction.iv"] = PASS if bb.k_is_ideal_of_bomega and bb.descends_nondegenerate else _fail("k = b cap b^omega")
        V["obstruction.v"] = PASS if bb.mu_closed and bb.bomega_in_ker_mu else _fail("mu = tr rho")
        V["jacobi_ds.i"] = _first(pairs(U), lambda u, v: is_zero_vec(_pull(A, d.be, u, v)))
        V["jacobi_ds.ii"] = _first([((lab,), (x,)) for lab, x in X],
                                   lambda x: (A @ d.rho_of(x) - d.rho_of(x) @ A).is_zero())
        V["jacobi_ds.iii"] = _first(xuv, lambda x, u, v: _pull(d.rho_of(x), d.be, u, v) == d.al(x, d.be(u, v)))
        V["jacobi_ds.iv"] = _first(triples(X), lambda x, y, z:
                                   is_zero_vec(_cyc(lambda a, b_, c: d.al(a, d.al(b_, c)), x, y, z)))
    else:
        for k in IDENTITY_IDS:
            if k.startswith(("obstruction.", "jacobi_ds.")):
                V[k] = _skip("not DS-contact")

    # -- structural corollaries
    if r == 2:
        V["corollary.gamma_q2"] = PASS if all(is_zero_vec(d.ga(u, v)) for _, (u, v) in pairs(U)) \
            else _fail("gamma != 0 with dim q = 2")
    else:
        V["corollary.gamma_q2"] = _skip("dim q != 2")
    if r >= 4 and ds:
        V["corollary.beta_q4"] = PASS if not b.is_zero() else _fail("beta = 0 with dim q >= 4")
    else:
        V["corollary.beta_q4"] = _skip("needs DS-contact with dim q >= 4")
    is_bracket = alpha_is_bracket(d)
    crit = p <= 2 or C.is_zero()
    V["corollary.alpha_bracket"] = PASS if is_bracket == crit else _fail("alpha Jacobi", is_bracket, "criterion", crit)
    return rep


def _in_sp(m: Matrix, w: Matrix) -> bool:
    return (m.T @ w + w @ m).is_zero()


def alpha_is_bracket(d: ContactDecomposition) -> bool:
    return _t0_structure(d).is_valid


def _t0_structure(d: ContactDecomposition) -> LieAlgebra:
    p = d.p
    return LieAlgebra(p, {(a, b): d.alpha[a][b] for a, b in combinations(range(p), 2)},
                      [f"x{a + 1}" for a in range(p)])


def t0_algebra(d: ContactDecomposition) -> LieAlgebra:
    """(t0, alpha) as a Lie algebra."""
    alg = _t0_structure(d)
    if not alg.is_valid:
        raise NotApplicable("α is not a bracket unless C = 0 or dim t0 = 2")
    return alg


def t_algebra(d: ContactDecomposition) -> LieAlgebra:
    """t on the basis (xi, t0 basis) with [x, y] = omega_t(x, y) xi + alpha(x, y)."""
    p = d.p
    structure = {}
    for a in range(p):
        structure[(0, a + 1)] = (Fraction(0),) + d.C.col(a)
        for b in range(a + 1, p):
            structure[(a + 1, b + 1)] = (d.omega_t[a, b],) + d.alpha[a][b]
    return LieAlgebra(p + 1, structure, ["xi"] + [f"x{a + 1}" for a in range(p)])


# ------------------------------------------------------------- b, b^omega

@dataclass(frozen=True)
class BBomega:
    b: Subspace
    bomega: Subspace
    k: Subspace
    sp_preimage: Subspace
    dim_q: int
    bound: int
    wedge_square_kernel_dim: int
    b_is_ideal: bool
    bomega_is_subalgebra: bool
    k_is_ideal_of_bomega: bool
    descends_nondegenerate: bool
    mu_closed: bool
    bomega_in_ker_mu: bool


def b_bomega_analysis(d: ContactDecomposition) -> BBomega:
    p, r = d.p, d.r
    b = Subspace(p, [d.beta[i][j] for i, j in combinations(range(r), 2)])
    W = d.omega_t
    rows = [W @ y for y in b.basis]
    bw = Subspace(p, kernel_basis(Matrix(rows))) if rows else Subspace.full(p)
    k = b.intersect(bw)
    # x with rho(x) in sp(q, omega_q)
    if r and p:
        cols = [(d.rho[a].T @ d.omega_q + d.omega_q @ d.rho[a]).flat() for a in range(p)]
        sp_pre = Subspace(p, kernel_basis(Matrix.from_columns(cols)))
    else:
        sp_pre = Subspace.full(p)
    eye = [_eye(p, a) for a in range(p)]
    b_ideal = all(b.contains(d.al(x, y)) for x in eye for y in b.basis)
    bw_sub = all(bw.contains(d.al(x, y)) for x in bw.basis for y in bw.basis)
    k_ideal = all(k.contains(d.al(x, y)) for x in bw.basis for y in k.basis)
    # radical of omega_t on b^omega
    if bw.dim:
        gram = Matrix([[d.wt(x, y) for y in bw.basis] for x in bw.basis])
        radical = Subspace(p, [vcomb(c, bw.basis, p) for c in kernel_basis(gram)])
    else:
        radical = Subspace(p)
    mu = [d.rho[a].trace() if r else Fraction(0) for a in range(p)]
    mu_closed = all(dot(mu, d.al(x, y)) == 0 for x in eye for y in eye)
    ker_l2 = len(kernel_basis(wedge_square_operator(d.A))) if r >= 2 else 0
    return BBomega(b, bw, k, sp_pre, r, (r // 2) ** 2, ker_l2, b_ideal, bw_sub, k_ideal,
                   radical == k, mu_closed, all(dot(mu, x) == 0 for x in bw.basis))


# ------------------------------------------------------------ ell, sigma, e

@dataclass(frozen=True)
class EllSigma:
    ell_t0: Vector          # ell on the t0 basis
    sigma_t0: Matrix        # sigma on the t0 basis
    ell: KForm              # on g, zero on xi and q
    sigma: KForm            # on g, zero on xi and q


def _gate_pipeline(d: ContactDecomposition) -> None:
    if d.r == 0 or d.p == 0:
        raise NotApplicable("pipeline not applicable")


def ell_sigma(d: ContactDecomposition) -> EllSigma:
    _gate_pipeline(d)
    p, r, n = d.p, d.r, d.algebra.dim
    Ainv = d.A.inverse()
    ell = tuple((Ainv @ d.rho[a]).trace() / r for a in range(p))
    sig = Matrix([[(Ainv @ (d.rho[a] @ d.rho[b] - d.rho[b] @ d.rho[a])).trace() / r for b in range(p)]
                  for a in range(p)])
    fi = d.frame_inv
    c = (Fraction(0),) + ell + (Fraction(0),) * r
    ell_g = KForm.covector(fi.T @ c)
    big = Matrix.zeros(n, n).rows
    gram = [list(row) for row in big]
    for a in range(p):
        for b in range(p):
            gram[1 + a][1 + b] = sig[a, b]
    sigma_g = KForm.from_gram(fi.T @ Matrix(gram) @ fi)
    return EllSigma(ell, sig, ell_g, sigma_g)


def verify_ell_properties(d: ContactDecomposition, es: EllSigma | None = None) -> dict[str, bool]:
    """d_t ell = omega_t - sigma on t, and ell o C = 0."""
    es = es or ell_sigma(d)
    alg = d.algebra
    tb = [d.xi, *d.t0_basis]
    dl = ce_differential(alg, es.ell).restrict(tb)
    rhs = (d.structure.omega - es.sigma).restrict(tb)
    ell_c = all(dot(es.ell_t0, d.C @ _eye(d.p, a)) == 0 for a in range(d.p))
    return {"d_ell_eq_omega_t_minus_sigma": dl == rhs, "ell_C_zero": ell_c}


@dataclass(frozen=True)
class WitnessE:
    e: Vector        # in g
    e_t0: Vector     # t0 coordinates
    tr_t: Fraction
    tr_q: Fraction
    tr_total: Fraction
    checks: dict

    def passed(self) -> bool:
        return all(self.checks.values())


def witness_e(d: ContactDecomposition, es: EllSigma | None = None) -> WitnessE:
    """The e in t0 with ell = -i_e omega_t, and its trace data."""
    if d.r == 0:
        raise NotApplicable(NILPOTENT_REGIME)
    if d.p == 0:
        raise NotApplicable(SL2_REGIME)
    es = es or ell_sigma(d)
    p = d.p
    # ell(y) = -omega_t(e, y)  <=>  omega_t^T e = -ell
    e_t0 = solve(d.omega_t.T, tuple(-x for x in es.ell_t0))
    if e_t0 is None:
        raise InconsistencyError("omega_t is degenerate")
    e = d.t0_vector(e_t0)
    alg = d.algebra
    ad = d.frame_inv @ alg.ad(e) @ d.frame
    tdim = 1 + p
    blocks_ok = all(ad[i, j] == 0 for i in range(tdim) for j in range(tdim, alg.dim)) and \
        all(ad[i, j] == 0 for i in range(tdim, alg.dim) for j in range(tdim))
    tr_t = sum((ad[i, i] for i in range(tdim)), Fraction(0))
    tr_q = sum((ad[i, i] for i in range(tdim, alg.dim)), Fraction(0))
    tr_tot = alg.ad(e).trace()
    td = transverse_data(d.structure)
    z = Subspace(alg.dim, td.kernel_basis)
    tr_M = _transverse_trace(d.structure, e)
    checks = {
        "xi_commutes": is_zero_vec(alg.bracket(d.xi, e)),
        "iota_e_sigma_zero": all(dot(e_t0, es.sigma_t0 @ _eye(p, b)) == 0 for b in range(p)),
        "t_q_invariant": blocks_ok,
        "tr_t_half_dim_t0": tr_t == Fraction(p, 2),
        "tr_q_nonnegative": tr_q >= 0,
        "tr_total_positive": tr_tot > 0 and tr_tot == tr_t + tr_q,
        "transverse_obstruction": z.contains(e) and tr_M != 0,
    }
    return WitnessE(e, e_t0, tr_t, tr_q, tr_tot, checks)


def _transverse_trace(c: ContactStructure, x: Sequence) -> Fraction:
    alg, xi, eta = c.algebra, c.reeb, c.eta
    hb = list(c.h_basis)
    tr = Fraction(0)
    for k, b in enumerate(hb):
        w = alg.bracket(x, b)
        lam = eta(w)
        tr += coordinates(tuple(a - lam * s for a, s in zip(w, xi)), hb)[k]
    return tr


# ------------------------------------------------------------ eigen pairing

@dataclass(frozen=True)
class EigenBlock:
    lam: Fraction
    dim: int
    T: Matrix
    P: Matrix
    Q_dagger: Matrix
    char_poly: Polynomial
    checks: dict


@dataclass(frozen=True)
class EigenPairing:
    skipped: str | None
    orthogonality: dict
    blocks: tuple[EigenBlock, ...] = ()

    def passed(self) -> bool:
        if self.skipped:
            return True
        return all(self.orthogonality.values()) and all(all(b.checks.values()) for b in self.blocks)


def eigen_pairing_checks(d: ContactDecomposition, es: EllSigma | None = None) -> EigenPairing:
    if d.r == 0 or d.p == 0:
        return EigenPairing("pipeline not applicable", {})
    cp = char_poly(d.A)
    if not cp.splits_over_q():
        return EigenPairing("non-rational spectrum", {})
    es = es or ell_sigma(d)
    we = witness_e(d, es)
    r = d.r
    spaces = {lam: generalized_eigenspace(d.A, lam) for lam in cp.rational_roots()}
    ell = es.ell_t0

    def Om(u, v):
        return -dot(ell, d.be(u, v))

    orth_w = orth_o = True
    for l1, E1 in spaces.items():
        for l2, E2 in spaces.items():
            if l1 + l2 != 0:
                orth_w &= all(d.wq(u, v) == 0 for u in E1 for v in E2)
                orth_o &= all(Om(u, v) == 0 for u in E1 for v in E2)
    orth = {"omega_q_pairs_opposite": orth_w, "Omega_q_pairs_opposite": orth_o,
            "spectrum_symmetric": all(-lam in spaces and len(spaces[-lam]) == len(E) for lam, E in spaces.items())}
    rho_e = d.rho_of(we.e_t0)
    blocks = []
    for lam in sorted(l for l in spaces if l > 0):
        U, Vb = spaces[lam], spaces.get(-lam, [])
        m = len(U)
        G = Matrix([[d.wq(u, v) for v in Vb] for u in U])
        Om_m = Matrix([[Om(u, v) for v in Vb] for u in U])
        Ginv = G.inverse()
        T = (Om_m @ Ginv).T
        P = Matrix.from_columns([coordinates(rho_e @ u, U) for u in U])
        Qm = Matrix.from_columns([coordinates(rho_e @ v, Vb) for v in Vb])
        Qd = (G @ Qm @ Ginv).T
        cpT = char_poly(T)
        roots = cpT.rational_roots()
        checks = {
            "defining_relation": all(d.wq(vcomb(T.col(a), U, r), Vb[b]) == Om(U[a], Vb[b])
                                     for a in range(m) for b in range(m)),
            "T_eq_P_plus_Qdagger": T == P + Qd,
            "T_eq_TP_plus_QdaggerT": T == T @ P + Qd @ T,
            "spectrum_in_01": sum(roots.values()) == m and set(roots) <= {Fraction(0), Fraction(1)},
        }
        blocks.append(EigenBlock(lam, m, T, P, Qd, cpT, checks))
    return EigenPairing(None, orth, tuple(blocks))


# --------------------------------------------------------------- Frobenius

@dataclass(frozen=True)
class FrobeniusReport:
    sigma_zero: bool
    omega_t_eq_d_ell: bool
    omega_t_nondegenerate: bool
    t0_unimodular: bool
    t_unimodular: bool

    def passed(self) -> bool:
        return (self.sigma_zero and self.omega_t_eq_d_ell and self.omega_t_nondegenerate
                and not self.t0_unimodular and not self.t_unimodular)


def frobenius_check(d: ContactDecomposition) -> FrobeniusReport:
    if not is_ds_contact(d):
        raise NotApplicable("Frobenius structure on t0 needs a DS-contact algebra")
    es = ell_sigma(d)
    t0 = t0_algebra(d)
    dl = ce_differential(t0, KForm.covector(es.ell_t0)).gram()
    return FrobeniusReport(
        sigma_zero=es.sigma_t0.is_zero(),
        omega_t_eq_d_ell=dl == d.omega_t,
        omega_t_nondegenerate=d.omega_t.det() != 0,
        t0_unimodular=is_unimodular(t0),
        t_unimodular=is_unimodular(t_algebra(d)),
    )


# ------------------------------------------------------ dimension five

DIM5_LABELS = ("g0+", "g1+", "g0-", "g1-")


def classify_dim5(c: ContactStructure, cross_check: bool = True) -> str:
    """Label a 5-dimensional contact Lie algebra by the DS case analysis."""
    alg = c.algebra
    if alg.dim != 5:
        return "dim ≠ 5"
    if not center(alg).is_zero():
        return "has nontrivial center"
    d = decompose(c)
    if not is_ds_contact(d):
        return "not DS-contact"
    if d.p != 2 or d.r != 2:
        raise InconsistencyError("centerless DS-contact algebra of dim 5 without dim t0 = dim q = 2")
    beta_zero = all(is_zero_vec(d.beta[i][j]) for i in range(2) for j in range(2))
    det = d.A.det()
    if beta_zero:
        # A = cJ with c > 0 gives su(2); every other A gives sl(2, R)
        u = _eye(2, 0)
        elliptic_su2 = det > 0 and d.wq(d.A @ u, u) < 0
        label = "g0+" if elliptic_su2 else "g1+"
    else:
        label = "g0-" if det > 0 else "g1-"
    if cross_check:
        from .catalog import normal_form_fingerprints
        fps = normal_form_fingerprints()
        fp = fingerprint(alg)
        if fp != fps[label] or [k for k, v in fps.items() if v == fp] != [label]:
            raise InconsistencyError(f"fingerprint does not match the normal form {label}")
    return label


# ---------------------------------------------------- first cohomology

@dataclass(frozen=True)
class Section54:
    z1_t0_dim: int
    ker_beta_star_dim: int
    ker_F_dim: int
    b1: int
    xi_in_commutator: bool
    delta_not_in_image: bool
    b1_eq_ker_beta_star: bool
    checks: dict

    def passed(self) -> bool:
        return all(self.checks.values())


def section54_analysis(d: ContactDecomposition) -> Section54:
    """H^1(g) through F(c, sigma) = c delta_ell + sigma o beta on Z^1(t0)."""
    if d.r == 0:
        raise NotApplicable(NILPOTENT_REGIME)
    if not is_ds_contact(d):
        raise NotApplicable("needs a DS-contact algebra")
    p, r = d.p, d.r
    ell = ell_sigma(d).ell_t0 if p else ()
    rows = [d.alpha[a][b] for a, b in combinations(range(p), 2)]
    z1 = kernel_basis(Matrix(rows)) if rows else [_eye(p, a) for a in range(p)]
    qpairs = list(combinations(range(r), 2))
    delta = tuple(d.omega_q[i, j] + dot(ell, d.beta[i][j]) for i, j in qpairs)
    bstar_cols = [tuple(dot(s, d.beta[i][j]) for i, j in qpairs) for s in z1]
    rank_b = Matrix.from_columns(bstar_cols).rank() if bstar_cols else 0
    rank_f = Matrix.from_columns([delta] + bstar_cols).rank()
    ker_b = len(z1) - rank_b
    ker_f = 1 + len(z1) - rank_f
    b1 = betti_numbers(d.algebra)[1]
    in_comm = commutator_subalgebra(d.algebra).contains(d.xi)
    not_in_im = rank_f > rank_b
    eq = b1 == ker_b
    checks = {
        "ker_F_is_b1": ker_f == b1,
        "equivalences_agree": in_comm == not_in_im == eq,
        "negative_case_count": in_comm or b1 == ker_b + 1,
    }
    return Section54(len(z1), ker_b, ker_f, b1, in_comm, not_in_im, eq, checks)


# -------------------------------------------------------- main statement

@dataclass(frozen=True)
class Audit:
    passed: bool
    transversely_unimodular: bool
    ad_xi_nilpotent: bool
    three_dim_simple: bool
    details: dict


def main_theorem_audit(c: ContactStructure, d: ContactDecomposition | None = None) -> Audit:
    """Transversely unimodular implies ad_xi nilpotent or g is sl(2, R) / su(2)."""
    d = d or decompose(c)
    tu = is_transversely_unimodular(c)
    nil = d.K_s.is_zero()
    simple3 = False
    details: dict = {}
    if c.algebra.dim == 3:
        from .catalog import simple3_fingerprints
        simple3 = fingerprint(c.algebra) in simple3_fingerprints()
    ok = (not tu) or nil or simple3
    details["implication"] = ok
    if d.r and not d.p:
        # t = R xi forces sl(2, R) or su(2)
        details["t_eq_Rxi_is_simple3"] = simple3
        ok = ok and simple3
    if d.r and d.p:
        we = witness_e(d)
        details["witness_e"] = we.passed()
        details["witness_blocks_tu"] = not tu
        ok = ok and we.passed() and not tu
    return Audit(ok, tu, nil, simple3, details)
