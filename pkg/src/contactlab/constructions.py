"""Builders for contact Lie algebras from symplectic and Frobenius data."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .analysis import ContactDecomposition, decompose, is_ds_contact
from .errors import ConstructionError, InconsistencyError, NotApplicable
from .forms import ContactStructure, KForm, ce_differential, contact_structure, is_contact
from .lie import LieAlgebra
from .linalg import Matrix, Vector, dot, is_zero_vec, kernel_basis, q, unit_vec, vec


@dataclass(frozen=True)
class SymplecticAlgebra:
    algebra: LieAlgebra
    omega: KForm

    def __post_init__(self):
        self.algebra.require_valid()
        if self.omega.degree != 2 or self.omega.n != self.algebra.dim:
            raise ConstructionError("omega must be a 2-form on the algebra")
        if self.algebra.dim > 2 and not ce_differential(self.algebra, self.omega).is_zero():
            raise ConstructionError("omega is not closed")
        if self.algebra.dim % 2 or self.omega.gram().det() == 0:
            raise ConstructionError("omega is degenerate")


@dataclass(frozen=True)
class FrobeniusInput:
    """Exact symplectic Lie algebra (a, omega = d(primitive))."""
    algebra: LieAlgebra
    primitive: KForm
    nu: int | None = None  # known minimal dimension of a nonzero ideal, if recorded

    def __post_init__(self):
        self.algebra.require_valid()
        if self.primitive.degree != 1 or self.primitive.n != self.algebra.dim:
            raise ConstructionError("primitive must be a 1-form on the algebra")
        if self.algebra.dim % 2 or self.omega.gram().det() == 0:
            raise ConstructionError("d(primitive) is degenerate")

    @property
    def omega(self) -> KForm:
        return ce_differential(self.algebra, self.primitive)

    @property
    def symplectic(self) -> SymplecticAlgebra:
        return SymplecticAlgebra(self.algebra, self.omega)


def _shift(v: Sequence, offset: int, n: int) -> list:
    out = [Fraction(0)] * n
    for i, c in enumerate(v):
        out[offset + i] = q(c)
    return out


def contactize(s: SymplecticAlgebra) -> ContactStructure:
    """g = R xi + h with [x, y]_g = omega(x, y) xi + [x, y]_h and eta = xi^*."""
    h = s.algebra
    m = h.dim
    n = m + 1
    g = s.omega.gram()
    structure = {}
    for i, j in combinations(range(m), 2):
        v = _shift(h.bracket_basis(i, j), 1, n)
        v[0] = g[i, j]
        structure[(i + 1, j + 1)] = v
    alg = LieAlgebra(n, structure, ("xi",) + tuple(h.labels))
    return contact_structure(alg, unit_vec(n, 0))


def _check_Jacobi_gate(alg: LieAlgebra, what: str) -> None:
    if not alg.is_valid:
        raise ConstructionError(f"{what}: output violates Jacobi")


def realize_q2(f: FrobeniusInput, a_mat) -> ContactStructure:
    """DS-contact algebra with t0 = a and dim q = 2.

    g = R xi + a + q, [xi, a] = 0, [xi, u] = A u, [a, q] = 0, [x, y] = [x, y]_a,
    [u, v] = omega_q(u, v) xi with omega_q(u, v) = 1, and eta = xi^* - primitive.
    """
    A = a_mat if isinstance(a_mat, Matrix) else Matrix(a_mat)
    if A.shape != (2, 2):
        raise ConstructionError("A must be 2x2")
    if A.trace() != 0:
        raise ConstructionError("A must be traceless")
    if A.det() == 0:
        raise ConstructionError("A must be invertible")
    a = f.algebra
    k = a.dim
    n = k + 3
    structure = {}
    for i, j in combinations(range(k), 2):
        structure[(i + 1, j + 1)] = _shift(a.bracket_basis(i, j), 1, n)
    u, v = k + 1, k + 2
    structure[(0, u)] = _shift(A.col(0), u, n)
    structure[(0, v)] = _shift(A.col(1), u, n)
    structure[(u, v)] = unit_vec(n, 0)
    alg = LieAlgebra(n, structure, ("xi",) + tuple(a.labels) + ("u", "v"))
    _check_Jacobi_gate(alg, "realize_q2")
    eta = [Fraction(1)] + [-c for c in f.primitive.covector_coeffs()] + [Fraction(0)] * 2
    return contact_structure(alg, eta)


def t0_embedding(f: FrobeniusInput) -> list[Vector]:
    """x -> x + primitive(x) xi, the copy of a inside t0 for realize_q2 output."""
    k = f.algebra.dim
    n = k + 3
    prim = f.primitive.covector_coeffs()
    out = []
    for i in range(k):
        v = [Fraction(0)] * n
        v[0] = prim[i]
        v[i + 1] = Fraction(1)
        out.append(tuple(v))
    return out


def standard_symplectic(m: int) -> Matrix:
    """Gram matrix of sum u_i^* ^ v_i^* on the basis u_1..u_m, v_1..v_m."""
    rows = [[0] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        rows[i][m + i] = 1
        rows[m + i][i] = -1
    return Matrix(rows)


@dataclass(frozen=True)
class LineIdealRealization:
    structure: ContactStructure
    z: Vector          # the generator actually used, with primitive(z) = -1
    scale: Fraction    # z_used = scale * z_given
    chi: Vector        # [x, z] = chi(x) z


def realize_line_ideal(f: FrobeniusInput, z, a_mat, omega_q=None, normalize: bool = True) -> LineIdealRealization:
    """DS-contact algebra with t0 = a, b = span{z}, and q symplectic of dim 2m.

    Brackets: [xi, u] = A u, [x, u] = (chi(x)/2 + alpha(x) A) u,
    [x, y] = [x, y]_a + omega_a(x, y) xi, [u, v] = omega_q(u, v)(xi + z), eta = xi^*.
    """
    a = f.algebra
    k = a.dim
    if isinstance(z, int):
        z = unit_vec(k, z)
    z = vec(z)
    if len(z) != k or is_zero_vec(z):
        raise ConstructionError("z must be a nonzero vector of a")
    alpha = f.primitive
    az = alpha(z)
    if az == 0:
        raise ConstructionError("inconsistent input: primitive vanishes on z, so omega_a would be degenerate")
    scale = Fraction(1)
    if az != -1:
        if not normalize:
            raise ConstructionError("primitive(z) must equal -1")
        scale = -1 / az
        z = tuple(scale * c for c in z)
    chi = []
    for i in range(k):
        w = a.bracket(unit_vec(k, i), z)
        lam = _proportionality(w, z)
        if lam is None:
            raise ConstructionError("span{z} is not an ideal")
        chi.append(lam)
    A = a_mat if isinstance(a_mat, Matrix) else Matrix(a_mat)
    d2 = A.nrows
    if A.shape != (d2, d2) or d2 == 0 or d2 % 2:
        raise ConstructionError("A must be a square matrix of even size")
    m = d2 // 2
    Om = standard_symplectic(m) if omega_q is None else (omega_q if isinstance(omega_q, Matrix) else Matrix(omega_q))
    if Om.shape != (d2, d2) or Om.T != -Om or Om.det() == 0:
        raise ConstructionError("omega_q must be a nondegenerate alternating matrix")
    if not (A.T @ Om + Om @ A).is_zero():
        raise ConstructionError("A must lie in sp(q, omega_q)")
    if A.det() == 0:
        raise ConstructionError("A must be invertible")
    n = 1 + k + d2
    q0 = 1 + k
    omega_a = ce_differential(a, alpha).gram()
    structure: dict = {}
    for i, j in combinations(range(k), 2):
        v = _shift(a.bracket_basis(i, j), 1, n)
        v[0] += omega_a[i, j]
        structure[(i + 1, j + 1)] = v
    for j in range(d2):
        structure[(0, q0 + j)] = _shift(A.col(j), q0, n)
    prim = alpha.covector_coeffs()
    for i in range(k):
        rho = Matrix.identity(d2) * (chi[i] / 2) + A * prim[i]
        for j in range(d2):
            structure[(i + 1, q0 + j)] = _shift(rho.col(j), q0, n)
    zg = _shift(z, 1, n)
    for i, j in combinations(range(d2), 2):
        w = Om[i, j]
        if w:
            v = [w * c for c in zg]
            v[0] += w
            structure[(q0 + i, q0 + j)] = v
    labels = ("xi",) + tuple(a.labels) + tuple(f"u{i + 1}" for i in range(m)) + tuple(f"v{i + 1}" for i in range(m))
    alg = LieAlgebra(n, structure, labels)
    _check_Jacobi_gate(alg, "realize_line_ideal")
    return LineIdealRealization(contact_structure(alg, unit_vec(n, 0)), z, scale, tuple(chi))


def _proportionality(w: Sequence, z: Sequence) -> Fraction | None:
    """lam with w = lam z, or None."""
    i = next(i for i, c in enumerate(z) if c)
    lam = w[i] / z[i]
    return lam if all(a == lam * b for a, b in zip(w, z)) else None


def build_an(n: int) -> FrobeniusInput:
    """a_n = gl(n) + R^n with [(X,u),(Y,v)] = ([X,Y], Xv - Yu) and primitive tr(TX) + b(u).

    T = diag(1..n), b = (1..1).  The ideal R^n has dimension nu = n.
    """
    if n < 1:
        raise ConstructionError("n must be positive")
    idx = {}
    labels = []
    for i in range(n):
        for j in range(n):
            idx[("E", i, j)] = len(labels)
            labels.append(f"E{i + 1}{j + 1}")
    for i in range(n):
        idx[("f", i)] = len(labels)
        labels.append(f"f{i + 1}")
    dim = n * n + n
    structure: dict = {}

    def put(a, b, v):
        if a < b:
            structure[(a, b)] = v
        else:
            structure[(b, a)] = [-c for c in v]

    for i, j, k, l in ((i, j, k, l) for i in range(n) for j in range(n) for k in range(n) for l in range(n)):
        a, b = idx[("E", i, j)], idx[("E", k, l)]
        if a >= b:
            continue
        v = [Fraction(0)] * dim
        if j == k:
            v[idx[("E", i, l)]] += 1
        if l == i:
            v[idx[("E", k, j)]] -= 1
        put(a, b, v)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if j == k:
                    v = [Fraction(0)] * dim
                    v[idx[("f", i)]] = Fraction(1)
                    put(idx[("E", i, j)], idx[("f", k)], v)
    alg = LieAlgebra(dim, structure, labels)
    prim = [Fraction(0)] * dim
    for i in range(n):
        prim[idx[("E", i, i)]] = Fraction(i + 1)
        prim[idx[("f", i)]] = Fraction(1)
    return FrobeniusInput(alg, KForm.covector(prim), nu=n)


def obstruction_check(f: FrobeniusInput | None, nu: int, k: int) -> str:
    """Necessary condition on (t0, q) with b = 0 impossible: need k^2 >= nu, where dim q = 2k."""
    if k < 2:
        raise NotApplicable("criterion inapplicable for k < 2")
    return "excluded" if k * k < nu else "not excluded"


@dataclass(frozen=True)
class TwistResult:
    structure: ContactStructure | None
    degenerate_block: str | None = None
    witness: Vector | None = None


def twist_eta(d, tau: KForm | Sequence) -> TwistResult:
    """eta - tau for tau supported on t0; contact with the same Reeb vector or a degeneracy witness."""
    if not isinstance(d, ContactDecomposition):
        d = decompose(d)
    c = d.structure
    alg = c.algebra
    if not isinstance(tau, KForm):
        tau = KForm.covector(vec(tau))
    if tau(d.xi) != 0 or any(tau(u) for u in d.q_basis):
        raise ConstructionError("tau must vanish on xi and on q")
    if not is_ds_contact(d):
        raise NotApplicable("twisting needs a DS-contact algebra")
    t_t0 = tuple(tau(x) for x in d.t0_basis)
    p, r = d.p, d.r
    blk_t = Matrix([[d.omega_t[a, b] - dot(t_t0, d.alpha[a][b]) for b in range(p)] for a in range(p)]) if p else None
    blk_q = Matrix([[d.omega_q[i, j] - dot(t_t0, d.beta[i][j]) for j in range(r)] for i in range(r)]) if r else None
    eta2 = c.eta - tau
    contact = is_contact(alg, eta2)
    bad = None
    for name, blk, basis in (("t0", blk_t, d.t0_basis), ("q", blk_q, d.q_basis)):
        if blk is not None and blk.det() == 0:
            kv = kernel_basis(blk)[0]
            bad = (name, tuple(sum((c_ * v[i] for c_, v in zip(kv, basis)), Fraction(0)) for i in range(alg.dim)))
            break
    if contact != (bad is None):
        raise InconsistencyError("block criterion and eta ^ (d eta)^n disagree")
    if bad:
        return TwistResult(None, bad[0], bad[1])
    s = contact_structure(alg, eta2)
    if s.reeb != d.xi:
        raise InconsistencyError("twisted form has a different Reeb vector")
    return TwistResult(s)


# ------------------------------------------------------------ basis changes

def random_basis_change(rng: random.Random, n: int, spread: int = 2) -> Matrix:
    """Random invertible integer matrix L U P with small entries."""
    while True:
        lower = [[(1 if i == j else (rng.randint(-spread, spread) if i > j else 0)) for j in range(n)] for i in range(n)]
        upper = [[(rng.choice((-1, 1, 2)) if i == j else (rng.randint(-spread, spread) if i < j else 0)) for j in range(n)] for i in range(n)]
        perm = list(range(n))
        rng.shuffle(perm)
        pm = Matrix([[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)])
        m = Matrix(lower) @ Matrix(upper) @ pm
        if m.det() != 0:
            return m


def transport(c: ContactStructure, p: Matrix) -> ContactStructure:
    """The same contact pair written on the basis given by the columns of p."""
    alg = c.algebra.change_basis(p)
    eta = tuple(dot(c.eta.covector_coeffs(), col) for col in p.columns())
    return contact_structure(alg, eta)
