"""Exact linear algebra over the rationals.

Everything here works on ``fractions.Fraction`` entries; there is no floating
point anywhere in the package.  Matrices are small, immutable and row-major.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import ceil, log2
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple  # tuple of Fraction


def q(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(q(x) for x in xs)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def vadd(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def vcomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    """Linear combination sum(c_i v_i) of length-n vectors."""
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


def is_zero_vec(a: Sequence) -> bool:
    return not any(a)


class Matrix:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self.rows = tuple(tuple(q(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged matrix")
        else:
            self.ncols = ncols or 0
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Matrix":
        # trusted constructor, rows already tuples of Fraction
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, r: int, c: int) -> "Matrix":
        return cls._raw(tuple((Fraction(0),) * c for _ in range(r)), c)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not cols:
            return cls._raw(tuple(() for _ in range(nrows or 0)), 0)
        n = len(cols[0])
        return cls._raw(tuple(tuple(q(c[i]) for c in cols) for i in range(n)), len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols)), self.nrows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix([{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(vadd(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(vsub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self.rows), self.ncols)

    def __mul__(self, c) -> "Matrix":
        c = q(c)
        return Matrix._raw(tuple(tuple(c * x for x in r) for r in self.rows), self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return Matrix._raw(tuple(tuple(dot(r, c) for c in cols) for r in self.rows), other.ncols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(dot(r, v) for r in self.rows)

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def trace(self) -> Fraction:
        self._need_square()
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def __pow__(self, k: int) -> "Matrix":
        self._need_square()
        out = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def _need_square(self) -> None:
        if not self.is_square:
            raise ValueError(f"square matrix required, got {self.shape}")

    def flat(self) -> Vector:
        return tuple(x for r in self.rows for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return Matrix._raw(tuple(a + b for a, b in zip(self.rows, other.rows)), self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.nrows and other.nrows and self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix._raw(self.rows + other.rows, max(self.ncols, other.ncols))

    def rank(self) -> int:
        return rref(self)[1]

    def det(self) -> Fraction:
        self._need_square()
        n = self.nrows
        a = [list(r) for r in self.rows]
        d = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                d = -d
            d *= a[c][c]
            inv = 1 / a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] * inv
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return d

    def inverse(self) -> "Matrix":
        self._need_square()
        n = self.nrows
        red, rank, _ = rref(self.hstack(Matrix.identity(n)))
        if rank < n or any(red.rows[i][i] != 1 for i in range(n)):
            raise ZeroDivisionError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.nrows


def as_matrix(m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(m)


def rref(m) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form; returns (reduced, rank, pivot columns)."""
    m = as_matrix(m)
    a = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix._raw(tuple(tuple(row) for row in a), nc), r, pivots


def kernel_basis(m) -> list[Vector]:
    """Basis of the null space, one vector per free column, in column order."""
    m = as_matrix(m)
    red, rank, pivots = rref(m)
    n = m.ncols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red.rows[i][f]
        basis.append(tuple(v))
    return basis


def row_space_basis(vectors: Sequence[Sequence], n: int) -> list[Vector]:
    """Canonical (reduced echelon) basis of the span of the given vectors."""
    if not vectors:
        return []
    red, rank, _ = rref(Matrix(vectors))
    return [red.rows[i] for i in range(rank)]


def column_space_basis(m) -> list[Vector]:
    m = as_matrix(m)
    return row_space_basis(m.T.rows, m.nrows)


def solve(m, b: Sequence) -> Vector | None:
    """One solution of m x = b, or None if the system is inconsistent."""
    m = as_matrix(m)
    aug = m.hstack(Matrix.from_columns([tuple(b)]) if m.nrows else Matrix.zeros(0, 1))
    red, rank, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [Fraction(0)] * m.ncols
    for i, p in enumerate(pivots):
        x[p] = red.rows[i][m.ncols]
    return tuple(x)


def in_span(v: Sequence, vectors: Sequence[Sequence]) -> bool:
    if is_zero_vec(v):
        return True
    if not vectors:
        return False
    return solve(Matrix.from_columns(list(vectors)), v) is not None


def coordinates(v: Sequence, basis: Sequence[Sequence]) -> Vector:
    """Coordinates of v in a linearly independent list; raises if v is outside the span."""
    if not basis:
        if not is_zero_vec(v):
            raise ValueError("vector not in span")
        return ()
    x = solve(Matrix.from_columns(list(basis)), v)
    if x is None:
        raise ValueError("vector not in span")
    return x


# ---------------------------------------------------------------- polynomials

class Polynomial:
    """Univariate polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        c = [q(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise ValueError("zero polynomial has no monic normalization")
        return self * (1 / self.lead)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c:
                mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
                if mono and c in (1, -1):
                    terms.append(("-" if c < 0 else "+") + mono)
                else:
                    terms.append(("+" if c > 0 else "-") + str(abs(c)) + ("*" + mono if mono else ""))
        s = " ".join(terms)
        return s[1:] if s.startswith("+") else s

    def __add__(self, other) -> "Polynomial":
        other = _poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(vadd(a, b))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "Polynomial"):
        other = _poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv = 1 / other.lead
        dg = other.degree
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k] * inv
            if c:
                quo[k - dg] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dg + j] -= c * b
        return Polynomial(quo), Polynomial(rem[:dg] if dg > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x):
        if isinstance(x, Matrix):
            n = x.nrows
            out = Matrix.zeros(n, n)
            eye = Matrix.identity(n)
            for c in reversed(self.coeffs):
                out = out @ x + eye * c
            return out
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def rational_roots(self) -> dict[Fraction, int]:
        """Rational roots with multiplicity."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        roots: dict[Fraction, int] = {}
        p = self
        while p.degree >= 1 and p.coeffs[0] == 0:
            roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
            p = Polynomial(p.coeffs[1:])
        if p.degree < 1:
            return roots
        # integer coefficients, then rational root theorem
        den = 1
        for c in p.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in p.coeffs]
        cands = set()
        for a in _divisors(abs(ints[0])):
            for b in _divisors(abs(ints[-1])):
                cands.add(Fraction(a, b))
                cands.add(Fraction(-a, b))
        for r in sorted(cands):
            lin = Polynomial([-r, 1])
            while p.degree >= 1:
                quo, rem = divmod(p, lin)
                if not rem.is_zero():
                    break
                roots[r] = roots.get(r, 0) + 1
                p = quo
        return roots

    def splits_over_q(self) -> bool:
        return sum(self.rational_roots().values()) == self.degree


def _poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def char_poly(m) -> Polynomial:
    """det(xI - m), via the Faddeev-LeVerrier recursion."""
    m = as_matrix(m)
    if not m.is_square:
        raise ValueError(f"characteristic polynomial needs a square matrix, got {m.shape}")
    n = m.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = Matrix.zeros(n, n)
    eye = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ (mk + eye * coeffs[n - k + 1])
        coeffs[n - k] = -mk.trace() / k
    return Polynomial(coeffs)


def minimal_poly(m) -> Polynomial:
    """Monic minimal polynomial, from the first linear dependency among powers of m."""
    m = as_matrix(m)
    n = m.nrows
    powers = [Matrix.identity(n).flat()]
    p = Matrix.identity(n)
    for k in range(1, n + 1):
        p = p @ m
        sol = solve(Matrix.from_columns(powers), p.flat())
        if sol is not None:
            return Polynomial([-c for c in sol] + [1])
        powers.append(p.flat())
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


def squarefree_part(p: Polynomial) -> Polynomial:
    """p / gcd(p, p'), made monic."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial is undefined")
    if p.degree == 0:
        return Polynomial([1])
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def in_polynomial_span(s: Matrix, m: Matrix) -> bool:
    """Is s a polynomial in m?"""
    n = m.nrows
    powers = [Matrix.identity(n)]
    for _ in range(1, max(n, 1)):
        powers.append(powers[-1] @ m)
    return in_span(s.flat(), [p.flat() for p in powers])


def jordan_chevalley(m) -> tuple[Matrix, Matrix]:
    """Additive Jordan-Chevalley decomposition m = S + N.

    S is semisimple over the algebraic closure, N nilpotent, [S, N] = 0 and both
    are polynomials in m.  S comes from Newton's iteration on the squarefree
    part g of the characteristic polynomial, started at m; each step doubles
    the power of g(m) dividing g(S).
    """
    m = as_matrix(m)
    n = m.nrows
    if not m.is_square:
        raise ValueError("Jordan-Chevalley needs a square matrix")
    if n == 0:
        return m, m
    g = squarefree_part(char_poly(m))
    dg = g.derivative()
    s = m
    for _ in range(ceil(log2(n)) + 1 if n > 1 else 1):
        gs = g(s)
        if gs.is_zero():
            break
        s = s - gs @ dg(s).inverse()
    nil = m - s
    if not g(s).is_zero():
        raise ArithmeticError("Newton iteration did not terminate")
    if not (s @ nil - nil @ s).is_zero():
        raise ArithmeticError("S and N do not commute")
    if not (nil ** n).is_zero():
        raise ArithmeticError("N is not nilpotent")
    if not in_polynomial_span(s, m):
        raise ArithmeticError("S is not a polynomial in m")
    if squarefree_part(minimal_poly(s)) != minimal_poly(s):
        raise ArithmeticError("S is not semisimple")
    return s, nil


def generalized_eigenspace(m, lam) -> list[Vector]:
    """Basis of ker (m - lam)^n."""
    m = as_matrix(m)
    n = m.nrows
    return kernel_basis((m - Matrix.identity(n) * q(lam)) ** n)


def pair_index(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def wedge_square_operator(a) -> Matrix:
    """Matrix of u^v -> Au^v + u^Av on 2-vectors, basis e_i^e_j (i<j) in lex order."""
    a = as_matrix(a)
    n = a.nrows
    pairs = pair_index(n)
    pos = {p: k for k, p in enumerate(pairs)}
    cols = []
    for (i, j) in pairs:
        out = [Fraction(0)] * len(pairs)
        # A e_i ^ e_j
        for k in range(n):
            c = a.rows[k][i]
            if c and k != j:
                if k < j:
                    out[pos[(k, j)]] += c
                else:
                    out[pos[(j, k)]] -= c
        # e_i ^ A e_j
        for k in range(n):
            c = a.rows[k][j]
            if c and k != i:
                if i < k:
                    out[pos[(i, k)]] += c
                else:
                    out[pos[(k, i)]] -= c
        cols.append(tuple(out))
    return Matrix.from_columns(cols, len(pairs)) if cols else Matrix.zeros(0, 0)


def congruence_signature(b) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric matrix by exact congruence."""
    b = as_matrix(b)
    n = b.nrows
    a = [list(r) for r in b.rows]
    if any(a[i][j] != a[j][i] for i in range(n) for j in range(n)):
        raise ValueError("matrix is not symmetric")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # e_i -> e_i + e_j makes the diagonal entry 2 a_ij
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            f = a[r][piv] / d
            if f:
                for k in range(n):
                    a[r][k] -= f * a[piv][k]
                for k in range(n):
                    a[k][r] -= f * a[k][piv]
    return pos, neg, n - pos - neg
