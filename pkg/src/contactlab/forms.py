"""Chevalley-Eilenberg complex with trivial coefficients, contact forms and Reeb vectors.

A k-form is stored by its coefficients on e^I = e^{i_1} ^ ... ^ e^{i_k}, I strictly
increasing, with e^I(e_{j_1}, ..., e_{j_k}) = det[delta]; on 1-forms the
differential is d(a)(x, y) = -a([x, y]).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .errors import DegenerateError
from .lie import LieAlgebra, Subspace, commutator_subalgebra
from .linalg import Matrix, Vector, kernel_basis, q, rref, solve, unit_vec, vec, coordinates, in_span


@lru_cache(maxsize=None)
def tuples(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Strictly increasing k-tuples from range(n), lexicographic."""
    if k < 0 or k > n:
        return ()
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def tuple_pos(n: int, k: int) -> dict:
    return {t: i for i, t in enumerate(tuples(n, k))}


def _sort_sign(seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation (0 if there is a repeat) and the sorted tuple."""
    s = list(seq)
    sign = 1
    for i in range(1, len(s)):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            s[j - 1], s[j] = s[j], s[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and s[j - 1] == s[j]:
            return 0, ()
    return sign, tuple(s)


class KForm:
    """Alternating k-form on an n-dimensional Lie algebra."""

    __slots__ = ("degree", "n", "coeffs")

    def __init__(self, degree: int, n: int, coeffs: Mapping[tuple, object] | None = None):
        self.degree = degree
        self.n = n
        clean = {}
        for key, c in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != degree or any(a >= b for a, b in zip(key, key[1:])) or (key and not 0 <= key[0] <= key[-1] < n):
                raise ValueError(f"bad index tuple {key} for a {degree}-form on dimension {n}")
            c = q(c)
            if c:
                clean[key] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, degree: int, n: int, coeffs: dict) -> "KForm":
        f = object.__new__(cls)
        f.degree, f.n = degree, n
        f.coeffs = {k: c for k, c in coeffs.items() if c}
        return f

    @classmethod
    def zero(cls, degree: int, n: int) -> "KForm":
        return cls._raw(degree, n, {})

    @classmethod
    def covector(cls, coeffs: Sequence) -> "KForm":
        return cls._raw(1, len(coeffs), {(i,): q(c) for i, c in enumerate(coeffs)})

    @classmethod
    def from_vector(cls, degree: int, n: int, v: Sequence) -> "KForm":
        return cls._raw(degree, n, {t: q(c) for t, c in zip(tuples(n, degree), v)})

    @classmethod
    def from_gram(cls, gram: Matrix) -> "KForm":
        n = gram.nrows
        return cls._raw(2, n, {(i, j): gram[i, j] for i, j in combinations(range(n), 2)})

    def to_vector(self) -> Vector:
        return tuple(self.coeffs.get(t, Fraction(0)) for t in tuples(self.n, self.degree))

    def covector_coeffs(self) -> Vector:
        assert self.degree == 1
        return tuple(self.coeffs.get((i,), Fraction(0)) for i in range(self.n))

    def gram(self) -> Matrix:
        """Matrix of a 2-form: entry (i, j) is the value on (e_i, e_j)."""
        assert self.degree == 2
        rows = [[Fraction(0)] * self.n for _ in range(self.n)]
        for (i, j), c in self.coeffs.items():
            rows[i][j] = c
            rows[j][i] = -c
        return Matrix(rows) if self.n else Matrix.zeros(0, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "KForm") -> None:
        if (self.degree, self.n) != (other.degree, other.n):
            raise ValueError("forms of different degree or dimension")

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return KForm._raw(self.degree, self.n, out)

    def __neg__(self) -> "KForm":
        return KForm._raw(self.degree, self.n, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __mul__(self, c) -> "KForm":
        c = q(c)
        return KForm._raw(self.degree, self.n, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, KForm) and (self.degree, self.n) == (other.degree, other.n) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.n, tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"KForm(0, degree={self.degree})"
        terms = " + ".join(f"{c}*e^{''.join(str(i + 1) for i in k)}" for k, c in sorted(self.coeffs.items()))
        return f"KForm({terms})"

    def __call__(self, *vectors: Sequence) -> Fraction:
        """Evaluate on k vectors."""
        if len(vectors) != self.degree:
            raise ValueError(f"{self.degree}-form needs {self.degree} arguments")
        if self.degree == 0:
            return self.coeffs.get((), Fraction(0))
        total = Fraction(0)
        for key, c in self.coeffs.items():
            total += c * Matrix([[v[i] for v in vectors] for i in key]).det()
        return total

    def restrict(self, basis: Sequence[Sequence]) -> "KForm":
        """Pullback to the span of the given vectors, in their coordinates."""
        m = len(basis)
        return KForm._raw(self.degree, m, {t: self(*[basis[i] for i in t]) for t in tuples(m, self.degree)})


def wedge(a: KForm, b: KForm) -> KForm:
    if a.n != b.n:
        raise ValueError("forms on different algebras")
    deg = a.degree + b.degree
    if deg > a.n:
        return KForm.zero(a.n, a.n)
    out: dict = {}
    for ka, ca in a.coeffs.items():
        for kb, cb in b.coeffs.items():
            s, key = _sort_sign(ka + kb)
            if s:
                out[key] = out.get(key, 0) + s * ca * cb
    return KForm._raw(deg, a.n, out)


def wedge_power(a: KForm, k: int) -> KForm:
    out = KForm._raw(0, a.n, {(): Fraction(1)})
    for _ in range(k):
        out = wedge(out, a)
    return out


def interior(x: Sequence, a: KForm) -> KForm:
    """i_x a, contraction in the first slot."""
    if a.degree == 0:
        raise ValueError("interior product of a 0-form")
    out: dict = {}
    for key, c in a.coeffs.items():
        for p, i in enumerate(key):
            xi = x[i]
            if xi:
                rest = key[:p] + key[p + 1:]
                out[rest] = out.get(rest, 0) + (-1) ** p * xi * c
    return KForm._raw(a.degree - 1, a.n, out)


def _d_basis_covectors(alg: LieAlgebra) -> list[dict]:
    # d e^k = -sum_{i<j} c_ij^k e^{ij}
    de: list[dict] = [dict() for _ in range(alg.dim)]
    for (i, j), v in alg.structure.items():
        for k, c in enumerate(v):
            if c:
                de[k][(i, j)] = -c
    return de


def ce_differential(alg: LieAlgebra, a: KForm) -> KForm:
    if a.n != alg.dim:
        raise ValueError("form and algebra dimensions differ")
    n = alg.dim
    if a.degree == 0 or a.degree >= n:
        return KForm.zero(min(a.degree + 1, n), n)
    de = _d_basis_covectors(alg)
    out: dict = {}
    for key, c in a.coeffs.items():
        for s, i in enumerate(key):
            sign0 = -c if s % 2 else c
            for (u, v), dc in de[i].items():
                sgn, new = _sort_sign(key[:s] + (u, v) + key[s + 1:])
                if sgn:
                    out[new] = out.get(new, 0) + sgn * sign0 * dc
    return KForm._raw(a.degree + 1, n, out)


def ce_differential_matrix(alg: LieAlgebra, k: int) -> Matrix:
    """Matrix of d: Lambda^k -> Lambda^{k+1} on the lexicographic tuple bases."""
    n = alg.dim
    rows = comb(n, k + 1) if k + 1 <= n else 0
    cols = []
    for t in tuples(n, k):
        cols.append(ce_differential(alg, KForm._raw(k, n, {t: Fraction(1)})).to_vector() if rows else ())
    if not cols:
        return Matrix.zeros(rows, 0)
    if not rows:
        return Matrix._raw((), len(cols))
    return Matrix.from_columns(cols)


def lie_derivative(alg: LieAlgebra, x: Sequence, a: KForm) -> KForm:
    """L_x a = d i_x a + i_x d a."""
    if a.degree == 0:
        return KForm.zero(0, a.n)
    first = ce_differential(alg, interior(x, a))
    if a.degree == alg.dim:
        return first
    return first + interior(x, ce_differential(alg, a))


def betti_numbers(alg: LieAlgebra) -> tuple[int, ...]:
    alg.require_valid()
    n = alg.dim
    ranks = [ce_differential_matrix(alg, k).rank() if k < n else 0 for k in range(n + 1)]
    return tuple(comb(n, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1))


# ------------------------------------------------------------------ contact

def is_contact(alg: LieAlgebra, eta: KForm) -> bool:
    if alg.dim % 2 == 0 or eta.degree != 1 or eta.n != alg.dim:
        return False
    deta = ce_differential(alg, eta)
    return not wedge(eta, wedge_power(deta, alg.dim // 2)).is_zero()


def reeb_vector(alg: LieAlgebra, eta: KForm) -> Vector:
    """The unique xi with eta(xi) = 1 and i_xi d(eta) = 0."""
    n = alg.dim
    g = ce_differential(alg, eta).gram()
    system = Matrix([eta.covector_coeffs()]).vstack(g.T)
    red, rank, _ = rref(system)
    if rank < n:
        raise DegenerateError("degenerate: Reeb system singular")
    sol = solve(system, (Fraction(1),) + (Fraction(0),) * n)
    if sol is None:
        raise DegenerateError("degenerate: Reeb system singular")
    return sol


@dataclass(frozen=True)
class ContactStructure:
    algebra: LieAlgebra
    eta: KForm
    reeb: Vector
    h_basis: tuple[Vector, ...]  # basis of ker eta
    omega: KForm  # -d(eta)

    @property
    def h(self) -> Subspace:
        return Subspace(self.algebra.dim, self.h_basis)


def contact_structure(alg: LieAlgebra, eta: KForm | Sequence) -> ContactStructure:
    alg.require_valid()
    if not isinstance(eta, KForm):
        eta = KForm.covector(vec(eta))
    if not is_contact(alg, eta):
        raise DegenerateError("form is not contact")
    xi = reeb_vector(alg, eta)
    h = tuple(kernel_basis(Matrix([eta.covector_coeffs()])))
    return ContactStructure(alg, eta, xi, h, -ce_differential(alg, eta))


# ---------------------------------------------------- transverse structure

@dataclass(frozen=True)
class TransverseData:
    kernel_basis: tuple[Vector, ...]  # basis of ker(ad_xi) restricted to h
    traces: tuple[Fraction, ...]      # tr M_x on that basis
    witness: Vector | None            # some x with tr M_x != 0


def transverse_data(c: ContactStructure) -> TransverseData:
    """M_x = pr_h o ad_x on h, for x in h with [xi, x] = 0."""
    alg, xi, eta = c.algebra, c.reeb, c.eta
    n = alg.dim
    rows = alg.ad(xi).vstack(Matrix([eta.covector_coeffs()]))
    zb = tuple(kernel_basis(rows))
    hb = list(c.h_basis)
    traces = []
    for x in zb:
        tr = Fraction(0)
        for k, b in enumerate(hb):
            w = alg.bracket(x, b)
            lam = eta(w)
            w = tuple(a - lam * s for a, s in zip(w, xi))
            tr += coordinates(w, hb)[k]
        traces.append(tr)
    witness = next((x for x, t in zip(zb, traces) if t), None)
    return TransverseData(zb, tuple(traces), witness)


def is_transversely_unimodular(c: ContactStructure) -> bool:
    return transverse_data(c).witness is None


def _form_basis(n: int, k: int) -> list[KForm]:
    return [KForm._raw(k, n, {t: Fraction(1)}) for t in tuples(n, k)]


def basic_forms(c: ContactStructure, k: int) -> list[Vector]:
    """Basis (as coefficient vectors) of the k-forms with i_xi a = 0 and L_xi a = 0."""
    alg, xi = c.algebra, c.reeb
    n = alg.dim
    if k == 0:
        return [(Fraction(1),)]
    if k > n:
        return []
    cols = []
    for f in _form_basis(n, k):
        cols.append(interior(xi, f).to_vector() + lie_derivative(alg, xi, f).to_vector())
    m = Matrix.from_columns(cols)
    return kernel_basis(m)


@dataclass(frozen=True)
class BasicComplex:
    forms: tuple[tuple[Vector, ...], ...]  # per degree, basis in the full Lambda^k coordinates
    ranks: tuple[int, ...]                 # rank of d on basic k-forms


def basic_complex(c: ContactStructure) -> BasicComplex:
    alg = c.algebra
    n = alg.dim
    top = n - 1
    forms = [tuple(basic_forms(c, k)) for k in range(top + 1)]
    ranks = []
    for k in range(top + 1):
        if k == 0 or k == n:
            ranks.append(0)
            continue
        d = ce_differential_matrix(alg, k)
        images = [d @ v for v in forms[k]]
        nxt = forms[k + 1] if k + 1 <= top else ()
        for w in images:
            if not in_span(w, nxt):
                raise AssertionError("d does not preserve basic forms")
        ranks.append(Matrix.from_columns(images).rank() if images else 0)
    return BasicComplex(tuple(forms), tuple(ranks))


def basic_betti(c: ContactStructure) -> tuple[int, ...]:
    bc = basic_complex(c)
    return tuple(len(bc.forms[k]) - bc.ranks[k] - (bc.ranks[k - 1] if k else 0) for k in range(len(bc.forms)))


def xi_commutator_equivalences(c: ContactStructure) -> dict[str, bool]:
    """Three independent tests that must agree: xi in [g, g], basic H^1, [omega]_B != 0."""
    alg, xi = c.algebra, c.reeb
    n = alg.dim
    in_comm = commutator_subalgebra(alg).contains(xi)
    z1 = kernel_basis(ce_differential_matrix(alg, 1)) if n > 1 else [unit_vec(n, i) for i in range(n)]
    basic_h1 = all(sum((a * b for a, b in zip(z, xi)), Fraction(0)) == 0 for z in z1)
    b1 = basic_forms(c, 1)
    d1 = ce_differential_matrix(alg, 1)
    exact = [d1 @ v for v in b1]
    omega_nonzero = not in_span(c.omega.to_vector(), exact)
    return {"xi_in_commutator": in_comm, "basic_h1_representatives": basic_h1, "basic_omega_nonzero": omega_nonzero}
