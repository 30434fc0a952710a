"""Finite-dimensional real Lie algebras given by rational structure constants."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import JacobiError
from .linalg import (Matrix, Vector, in_span, is_zero_vec, q, row_space_basis, kernel_basis,
                     unit_vec, vadd, vcomb, vec, zero_vec, congruence_signature, coordinates)


class LieAlgebra:
    """Lie algebra on the basis e_0..e_{n-1} with [e_i, e_j] = structure[(i, j)] for i < j.

    Missing pairs bracket to zero.  The object is immutable; Jacobi is checked
    lazily and every structural analysis refuses an invalid algebra.
    """

    def __init__(self, dim: int, structure: Mapping[tuple[int, int], Sequence], labels: Sequence[str] | None = None):
        self.dim = dim
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i + 1}" for i in range(dim))
        if len(self.labels) != dim:
            raise ValueError("need one label per basis vector")
        if len(set(self.labels)) != dim:
            raise ValueError("basis labels must be distinct")
        clean: dict[tuple[int, int], Vector] = {}
        for (i, j), v in structure.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"structure key ({i}, {j}) must satisfy 0 <= i < j < dim")
            v = vec(v)
            if len(v) != dim:
                raise ValueError(f"bracket [{i},{j}] has length {len(v)}, expected {dim}")
            if any(v):
                clean[(i, j)] = v
        self.structure = clean
        z = zero_vec(dim)
        table = [[z] * dim for _ in range(dim)]
        for (i, j), v in clean.items():
            table[i][j] = v
            table[j][i] = tuple(-x for x in v)
        self._table = table

    @classmethod
    def from_brackets(cls, labels: Sequence[str], brackets: Mapping[tuple[str, str], Mapping[str, object]]) -> "LieAlgebra":
        """Build from labelled brackets, e.g. {("x", "y"): {"xi": 1, "y": 1}}; order of a pair is free."""
        idx = {s: k for k, s in enumerate(labels)}
        n = len(labels)
        structure: dict[tuple[int, int], list] = {}
        for (a, b), rhs in brackets.items():
            i, j = idx[a], idx[b]
            if i == j:
                raise ValueError(f"[{a}, {a}] must vanish")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            if (i, j) in structure:
                raise ValueError(f"bracket [{a}, {b}] given twice")
            v = [Fraction(0)] * n
            for lab, c in rhs.items():
                v[idx[lab]] += sign * q(c)
            structure[(i, j)] = v
        return cls(n, structure, labels)

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, labels={self.labels})"

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self.structure == other.structure

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.structure.items()))))

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self._table[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        out = [Fraction(0)] * n
        for i, a in enumerate(x):
            if not a:
                continue
            row = self._table[i]
            for j, b in enumerate(y):
                if b and i != j:
                    c = a * b
                    for k, v in enumerate(row[j]):
                        if v:
                            out[k] += c * v
        return tuple(out)

    def ad_basis(self, i: int) -> Matrix:
        return self._ad_cache[i]

    @cached_property
    def _ad_cache(self) -> list[Matrix]:
        return [Matrix.from_columns([self._table[i][j] for j in range(self.dim)]) for i in range(self.dim)]

    def ad(self, x: Sequence) -> Matrix:
        n = self.dim
        out = Matrix.zeros(n, n)
        for i, a in enumerate(x):
            if a:
                out = out + self._ad_cache[i] * a
        return out

    @cached_property
    def jacobi_violations(self) -> list[tuple[int, int, int, Vector]]:
        bad = []
        for i, j, k in combinations(range(self.dim), 3):
            e = self._basis
            r = vadd(vadd(self.bracket(e[i], self._table[j][k]),
                          self.bracket(e[j], self._table[k][i])),
                     self.bracket(e[k], self._table[i][j]))
            if any(r):
                bad.append((i, j, k, r))
        return bad

    @cached_property
    def _basis(self) -> list[Vector]:
        return [unit_vec(self.dim, i) for i in range(self.dim)]

    @property
    def is_valid(self) -> bool:
        return not self.jacobi_violations

    def require_valid(self) -> None:
        if self.jacobi_violations:
            raise JacobiError(self.jacobi_violations)

    def change_basis(self, p, labels: Sequence[str] | None = None) -> "LieAlgebra":
        """Same algebra on the new basis f_a = sum_i p[i][a] e_i (columns of p)."""
        p = p if isinstance(p, Matrix) else Matrix(p)
        pinv = p.inverse()
        cols = p.columns()
        structure = {}
        for a, b in combinations(range(self.dim), 2):
            structure[(a, b)] = pinv @ self.bracket(cols[a], cols[b])
        return LieAlgebra(self.dim, structure, labels or self.labels)


def validate_jacobi(alg: LieAlgebra) -> list[tuple[int, int, int, Vector]]:
    """Violating triples (i, j, k, residual) with i < j < k; empty when Jacobi holds."""
    return list(alg.jacobi_violations)


def bracket(alg: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    return alg.bracket(x, y)


def ad_matrix(alg: LieAlgebra, x: Sequence) -> Matrix:
    """Matrix of ad_x; column j is [x, e_j]."""
    return alg.ad(x)


class Subspace:
    """Linear subspace of Q^n, stored by its reduced echelon basis."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = ()):
        self.ambient = ambient
        vs = [vec(v) for v in vectors]
        for v in vs:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        self.basis = tuple(row_space_basis(vs, ambient))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [unit_vec(n, i) for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, v: Sequence) -> bool:
        return in_span(v, self.basis)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.is_zero() or other.is_zero():
            return Subspace(self.ambient)
        a, b = list(self.basis), list(other.basis)
        m = Matrix.from_columns(a + [tuple(-x for x in v) for v in b])
        sols = kernel_basis(m)
        return Subspace(self.ambient, [vcomb(s[:len(a)], a, self.ambient) for s in sols])

    def coordinates(self, v: Sequence) -> Vector:
        return coordinates(v, self.basis)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def span_of_brackets(alg: LieAlgebra, u: Subspace, v: Subspace) -> Subspace:
    return Subspace(alg.dim, [alg.bracket(a, b) for a in u.basis for b in v.basis])


def center(alg: LieAlgebra) -> Subspace:
    alg.require_valid()
    n = alg.dim
    if n == 0:
        return Subspace(0)
    stacked = Matrix.zeros(0, n)
    for i in range(n):
        stacked = stacked.vstack(alg.ad_basis(i))
    return Subspace(n, kernel_basis(stacked))


def derived_series(alg: LieAlgebra) -> list[Subspace]:
    """g, [g, g], ... until it stabilizes."""
    alg.require_valid()
    series = [Subspace.full(alg.dim)]
    while True:
        nxt = span_of_brackets(alg, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def lower_central_series(alg: LieAlgebra) -> list[Subspace]:
    alg.require_valid()
    g = Subspace.full(alg.dim)
    series = [g]
    while True:
        nxt = span_of_brackets(alg, g, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_solvable(alg: LieAlgebra) -> bool:
    return derived_series(alg)[-1].is_zero()


def is_nilpotent(alg: LieAlgebra) -> bool:
    return lower_central_series(alg)[-1].is_zero()


def unimodularity_witness(alg: LieAlgebra) -> int | None:
    """Index of a basis vector with tr ad != 0, or None if the algebra is unimodular."""
    alg.require_valid()
    for i in range(alg.dim):
        if alg.ad_basis(i).trace() != 0:
            return i
    return None


def is_unimodular(alg: LieAlgebra) -> bool:
    return unimodularity_witness(alg) is None


def trace_form(alg: LieAlgebra) -> Vector:
    """The character x -> tr ad_x, as a coefficient vector."""
    return tuple(alg.ad_basis(i).trace() for i in range(alg.dim))


def commutator_subalgebra(alg: LieAlgebra) -> Subspace:
    alg.require_valid()
    return Subspace(alg.dim, [alg.bracket_basis(i, j) for i, j in combinations(range(alg.dim), 2)])


def contains_in_commutator(alg: LieAlgebra, x: Sequence) -> bool:
    return commutator_subalgebra(alg).contains(x)


def is_ideal(alg: LieAlgebra, s: Subspace) -> bool:
    alg.require_valid()
    return all(s.contains(alg.bracket(unit_vec(alg.dim, i), v)) for i in range(alg.dim) for v in s.basis)


def is_subalgebra(alg: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(alg.bracket(a, b)) for a, b in combinations(s.basis, 2))


def ideal_closure(alg: LieAlgebra, vectors: Iterable[Sequence]) -> Subspace:
    """Smallest ideal containing the given vectors."""
    alg.require_valid()
    s = Subspace(alg.dim, vectors)
    while True:
        new = s + Subspace(alg.dim, [alg.bracket(unit_vec(alg.dim, i), v) for i in range(alg.dim) for v in s.basis])
        if new == s:
            return s
        s = new


def minimal_ideal_candidates(alg: LieAlgebra, candidates: Iterable[Sequence] = ()) -> list[tuple[Vector, Subspace]]:
    n = alg.dim
    gens = [unit_vec(n, i) for i in range(n)]
    for i, j in combinations(range(n), 2):
        gens.append(vadd(gens[i], gens[j]))
        gens.append(tuple(a - b for a, b in zip(gens[i], gens[j])))
    gens.extend(vec(c) for c in candidates)
    out = []
    for g in gens:
        if not is_zero_vec(g):
            out.append((g, ideal_closure(alg, [g])))
    return out


def minimal_ideal_dim_upper_bound(alg: LieAlgebra, candidates: Iterable[Sequence] = ()) -> int:
    """Upper bound for the least dimension of a nonzero ideal.

    Minimum over ideals generated by basis vectors, by pairwise sums and
    differences of basis vectors, and by any extra candidate vectors.
    """
    if alg.dim == 0:
        return 0
    return min(s.dim for _, s in minimal_ideal_candidates(alg, candidates))


def killing_form(alg: LieAlgebra) -> Matrix:
    alg.require_valid()
    ads = [alg.ad_basis(i) for i in range(alg.dim)]
    return Matrix([[(ads[i] @ ads[j]).trace() for j in range(alg.dim)] for i in range(alg.dim)])


def killing_signature(alg: LieAlgebra) -> tuple[int, int, int]:
    return congruence_signature(killing_form(alg))


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    center_dim: int
    derived_dims: tuple[int, ...]
    lower_central_dims: tuple[int, ...]
    solvable: bool
    nilpotent: bool
    unimodular: bool
    killing_rank: int
    killing_signature: tuple[int, int, int]
    betti: tuple[int, ...]


def fingerprint(alg: LieAlgebra) -> Fingerprint:
    """Basis-independent invariants, used to tell normal forms apart."""
    from .forms import betti_numbers
    ds = derived_series(alg)
    lc = lower_central_series(alg)
    kf = killing_form(alg)
    return Fingerprint(
        dim=alg.dim,
        center_dim=center(alg).dim,
        derived_dims=tuple(s.dim for s in ds),
        lower_central_dims=tuple(s.dim for s in lc),
        solvable=ds[-1].is_zero(),
        nilpotent=lc[-1].is_zero(),
        unimodular=is_unimodular(alg),
        killing_rank=kf.rank(),
        killing_signature=congruence_signature(kf),
        betti=betti_numbers(alg),
    )
