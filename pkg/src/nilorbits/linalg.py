"""Exact rational matrices and the classical-group membership tests.

Everything downstream (pattern representatives, rank signatures, orbit
dimensions) reduces to exact linear algebra over Q, so this module has no
floating point anywhere: entries are fractions.Fraction, rank is computed by
fraction-free (Bareiss) elimination on cleared integer rows, and nullspaces
by rational row reduction.

Index conventions follow the classical setup: matrix positions are 1-based
at every interface, and the starred index is p* = n + 1 - p (reflection
across the anti-diagonal).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Sequence


class DomainError(ValueError):
    """An argument is outside the domain an operation is defined on."""


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise DomainError(f"entries must be exact rationals, got {type(value).__name__}")


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with Fraction entries (internal storage 0-based)."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.entries:
            width = len(self.entries[0])
            if any(len(row) != width for row in self.entries):
                raise DomainError("ragged rows")

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_rows(rows: Iterable[Sequence]) -> "Matrix":
        return Matrix(tuple(tuple(_frac(v) for v in row) for row in rows))

    @staticmethod
    def zero(rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        z = Fraction(0)
        return Matrix(tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(tuple(tuple(Fraction(1 if p == q else 0) for q in range(n))
                            for p in range(n)))

    @staticmethod
    def unit(n: int, r: int, c: int, value=1) -> "Matrix":
        """Matrix unit: `value` at 1-based position (r, c), zero elsewhere."""
        if not (1 <= r <= n and 1 <= c <= n):
            raise DomainError(f"unit position ({r},{c}) outside 1..{n}")
        v = _frac(value)
        z = Fraction(0)
        return Matrix(tuple(tuple(v if (p, q) == (r - 1, c - 1) else z
                                  for q in range(n)) for p in range(n)))

    # -- shape and access --------------------------------------------------

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, r: int, c: int) -> Fraction:
        """Entry at 1-based position (r, c)."""
        if not (1 <= r <= self.rows and 1 <= c <= self.cols):
            raise DomainError(f"position ({r},{c}) outside {self.rows}x{self.cols}")
        return self.entries[r - 1][c - 1]

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def is_upper_triangular(self, strict: bool = False) -> bool:
        bound = 0 if strict else -1
        return all(self.entries[p][q] == 0
                   for p in range(self.rows) for q in range(self.cols)
                   if q - p <= bound and (p != q or strict))

    def support(self) -> list[tuple[int, int]]:
        """1-based positions of nonzero entries, row-major."""
        return [(p + 1, q + 1)
                for p in range(self.rows) for q in range(self.cols)
                if self.entries[p][q] != 0]

    # -- arithmetic --------------------------------------------------------

    def _same_shape(self, other: "Matrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DomainError("shape mismatch")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(tuple(tuple(a + b for a, b in zip(ra, rb))
                            for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(tuple(tuple(a - b for a, b in zip(ra, rb))
                            for ra, rb in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(tuple(-a for a in row) for row in self.entries))

    def scale(self, s) -> "Matrix":
        f = _frac(s)
        return Matrix(tuple(tuple(f * a for a in row) for row in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DomainError("inner dimension mismatch")
        cols = list(zip(*other.entries)) if other.entries else []
        return Matrix(tuple(tuple(sum(a * b for a, b in zip(row, col))
                                  for col in cols)
                            for row in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.entries)) if self.entries else ())

    def submatrix(self, row_lo: int, row_hi: int, col_lo: int, col_hi: int) -> "Matrix":
        """Rows row_lo..row_hi and columns col_lo..col_hi, 1-based inclusive."""
        return Matrix(tuple(row[col_lo - 1:col_hi]
                            for row in self.entries[row_lo - 1:row_hi]))


def jay(l: int) -> Matrix:
    """The l x l anti-diagonal matrix with ones on the anti-diagonal."""
    if l < 1:
        raise DomainError("jay needs l >= 1")
    return Matrix(tuple(tuple(Fraction(1 if p + q == l - 1 else 0)
                              for q in range(l)) for p in range(l)))


def t_transpose(a: Matrix) -> Matrix:
    """Anti-transpose J * transpose(a) * J: reflection across the anti-diagonal."""
    if not a.is_square:
        raise DomainError("anti-transpose needs a square matrix")
    n = a.rows
    return Matrix(tuple(tuple(a.entries[n - 1 - q][n - 1 - p] for q in range(n))
                        for p in range(n)))


# -- group kinds and flags --------------------------------------------------

SYMPLECTIC = "symplectic"
ORTHOGONAL = "orthogonal"


@dataclass(frozen=True)
class GroupKind:
    """A classical group family together with its matrix size n.

    family "symplectic" requires n even (type C); "orthogonal" covers both
    the even (type D) and odd (type B) cases.  l = n // 2 is the rank.
    """

    family: str
    n: int

    def __post_init__(self):
        if self.family not in (SYMPLECTIC, ORTHOGONAL):
            raise DomainError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise DomainError("n must be positive")
        if self.family == SYMPLECTIC and self.n % 2 != 0:
            raise DomainError("symplectic groups need even n")

    @staticmethod
    def symplectic(n: int) -> "GroupKind":
        return GroupKind(SYMPLECTIC, n)

    @staticmethod
    def orthogonal(n: int) -> "GroupKind":
        return GroupKind(ORTHOGONAL, n)

    @property
    def l(self) -> int:
        return self.n // 2

    @property
    def is_symplectic(self) -> bool:
        return self.family == SYMPLECTIC

    @property
    def is_odd_orthogonal(self) -> bool:
        return self.family == ORTHOGONAL and self.n % 2 == 1

    @property
    def name(self) -> str:
        return ("sp_" if self.is_symplectic else "o_") + str(self.n)


def star(p: int, n: int) -> int:
    """The mirrored index p* = n + 1 - p."""
    return n + 1 - p


def form_matrix(g: GroupKind) -> Matrix:
    """Gram matrix of the defining bilinear form.

    Symplectic: [[0, J_l], [-J_l, 0]] (skew).  Orthogonal: J_n (symmetric).
    """
    n = g.n
    if not g.is_symplectic:
        return jay(n)
    l = g.l
    sign = lambda p, q: 1 if p <= l else -1
    return Matrix(tuple(tuple(Fraction(sign(p + 1, q + 1) if p + q == n - 1 else 0)
                              for q in range(n)) for p in range(n)))


def lie_member(a: Matrix, g: GroupKind) -> bool:
    """True iff transpose(a) F + F a = 0 exactly."""
    if a.rows != g.n or a.cols != g.n:
        raise DomainError(f"expected a {g.n}x{g.n} matrix, got {a.rows}x{a.cols}")
    f = form_matrix(g)
    return (a.transpose() @ f + f @ a).is_zero()


def group_member(u: Matrix, g: GroupKind) -> bool:
    """True iff transpose(u) F u = F exactly."""
    if u.rows != g.n or u.cols != g.n:
        raise DomainError(f"expected a {g.n}x{g.n} matrix, got {u.rows}x{u.cols}")
    f = form_matrix(g)
    return (u.transpose() @ f @ u - f).is_zero()


def is_two_nilpotent(a: Matrix) -> bool:
    """True iff a @ a = 0 exactly."""
    if not a.is_square:
        raise DomainError("nilpotency test needs a square matrix")
    return (a @ a).is_zero()


@dataclass(frozen=True)
class SpaceSpec:
    """A group together with a totally isotropic flag d_1 < ... < d_k <= l.

    The flag step d_s is the dimension of the s-th subspace; the stabilizer
    of the standard flag <e_1..e_{d_1}> c ... c <e_1..e_{d_k}> is the
    parabolic subgroup the spec describes.  blocks is the block vector
    (d_1, d_2 - d_1, ..., d_k - d_{k-1}).
    """

    group: GroupKind
    flag: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "flag", tuple(int(d) for d in self.flag))
        d = self.flag
        if any(b <= 0 for b in d) or any(d[s] >= d[s + 1] for s in range(len(d) - 1)):
            raise DomainError(f"flag must be strictly increasing positive, got {d}")
        if d and d[-1] > self.group.l:
            raise DomainError(f"flag step {d[-1]} exceeds the isotropic bound l={self.group.l}")

    @staticmethod
    def borel(g: GroupKind) -> "SpaceSpec":
        return SpaceSpec(g, tuple(range(1, g.l + 1)))

    @staticmethod
    def from_blocks(g: GroupKind, blocks: Sequence[int]) -> "SpaceSpec":
        flag, total = [], 0
        for b in blocks:
            total += int(b)
            flag.append(total)
        return SpaceSpec(g, tuple(flag))

    @property
    def k(self) -> int:
        return len(self.flag)

    @property
    def blocks(self) -> tuple[int, ...]:
        return tuple(d - prev for d, prev in zip(self.flag, (0,) + self.flag[:-1]))

    @property
    def is_borel(self) -> bool:
        return self.flag == tuple(range(1, self.group.l + 1))

    @property
    def is_complete(self) -> bool:
        """Whether the flag reaches the maximal isotropic dimension l."""
        return bool(self.flag) and self.flag[-1] == self.group.l

    def dimension_vector(self) -> tuple[int, ...]:
        """The palindrome (d_1, ..., d_k, n, d_k, ..., d_1)."""
        return self.flag + (self.group.n,) + self.flag[::-1]

    def block_of(self, v: int) -> int:
        """1-based flag block containing vertex v (d_{s-1} < v <= d_s)."""
        for s, d in enumerate(self.flag, start=1):
            if v <= d:
                return s
        raise DomainError(f"vertex {v} beyond the last flag step {self.flag[-1] if self.flag else 0}")


# -- rank and nullspace ------------------------------------------------------


def _integer_rows(m: Matrix) -> list[list[int]]:
    # Clearing denominators row by row keeps elimination in plain integers.
    out = []
    for row in m.entries:
        mult = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * mult) for v in row])
    return out


def _int_rank(rows: list[list[int]], cols: int) -> int:
    # One-step Bareiss: the division by the previous pivot is exact, so
    # intermediate entries stay integral and of modest size.
    rank = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][c]
        for i in range(rank + 1, len(rows)):
            head = rows[i][c]
            if head == 0 and all(v == 0 for v in rows[i][c + 1:]):
                continue
            ri, rr = rows[i], rows[rank]
            for j in range(c + 1, cols):
                ri[j] = (lead * ri[j] - head * rr[j]) // prev
            ri[c] = 0
        prev = lead
        rank += 1
    return rank


def rank(m: Matrix) -> int:
    """Exact rank via fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _int_rank(_integer_rows(m), m.cols)


def nullspace(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right nullspace (one vector per free column of the RREF)."""
    rows = [list(row) for row in m.entries]
    cols = m.cols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for c in free:
        vec = [Fraction(0)] * cols
        vec[c] = Fraction(1)
        for pr, pc in enumerate(pivots):
            vec[pc] = -rows[pr][c]
        basis.append(tuple(vec))
    return basis


# -- dimensions of membership subspaces --------------------------------------


def _lie_constraint(p: int, q: int, f: Matrix, n: int) -> list[tuple[int, int, Fraction]]:
    # (transpose(a) F + F a)_{pq} has at most two terms because F is
    # anti-diagonal: F_{q*,q} a_{q*,p} + F_{p,p*} a_{p*,q}.
    ps, qs = star(p, n), star(q, n)
    return [(qs, p, f.entry(qs, q)), (ps, q, f.entry(p, ps))]


def _sparse_rank(rows: list[dict[int, Fraction]], cols: int) -> int:
    dense = Matrix(tuple(tuple(row.get(c, Fraction(0)) for c in range(cols))
                         for row in rows))
    return rank(dense)


def _flag_allows(flag: tuple[int, ...]) -> Callable[[int, int], bool]:
    # Entry (r, c) kills flag invariance iff some step d has c <= d < r.
    def allowed(r: int, c: int) -> bool:
        return not any(c <= d < r for d in flag)
    return allowed


def membership_dim(g: GroupKind, allowed: Callable[[int, int], bool],
                   x: Matrix | None = None) -> int:
    """Dimension of {a in g : a supported on allowed positions, [a, x] = 0}.

    `allowed` is a predicate on 1-based (row, col); forbidden positions are
    treated as hard zeros.  Pass x=None to drop the commutant condition.
    """
    n = g.n
    f = form_matrix(g)
    unknowns = [(p, q) for p in range(1, n + 1) for q in range(1, n + 1)
                if allowed(p, q)]
    index = {pq: i for i, pq in enumerate(unknowns)}
    rows: list[dict[int, Fraction]] = []
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            row: dict[int, Fraction] = {}
            for (r, c, coef) in _lie_constraint(p, q, f, n):
                if coef != 0 and (r, c) in index:
                    i = index[(r, c)]
                    row[i] = row.get(i, Fraction(0)) + coef
            if row:
                rows.append(row)
    if x is not None:
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                row = {}
                for r in range(1, n + 1):
                    if (p, r) in index and x.entry(r, q) != 0:
                        i = index[(p, r)]
                        row[i] = row.get(i, Fraction(0)) + x.entry(r, q)
                    if (r, q) in index and x.entry(p, r) != 0:
                        i = index[(r, q)]
                        row[i] = row.get(i, Fraction(0)) - x.entry(p, r)
                row = {i: v for i, v in row.items() if v != 0}
                if row:
                    rows.append(row)
    return len(unknowns) - _sparse_rank(rows, len(unknowns))


def lie_algebra_dim(g: GroupKind) -> int:
    """Dimension of {a : lie_member(a, g)}, solved exactly."""
    return membership_dim(g, lambda r, c: True)


def borel_subalgebra_dim(g: GroupKind) -> int:
    """Dimension of the upper-triangular members of g, solved exactly."""
    return membership_dim(g, lambda r, c: r <= c)


def parabolic_dim(spec: SpaceSpec) -> int:
    """Dimension of the flag-stabilizing members of the algebra."""
    return membership_dim(spec.group, _flag_allows(spec.flag))


def centralizer_dim_in(x: Matrix, g: GroupKind, flag: SpaceSpec) -> int:
    """Dimension of {a in the parabolic of `flag` : a x = x a}."""
    if not lie_member(x, g):
        raise DomainError(f"matrix not in {g.name}: the form condition fails")
    if not is_two_nilpotent(x):
        raise DomainError("matrix is not 2-nilpotent: x @ x != 0")
    return membership_dim(g, _flag_allows(flag.flag), x)


def orbit_dimension(x: Matrix, spec: SpaceSpec) -> int:
    """dim(parabolic orbit of x) = dim p - dim centralizer_p(x)."""
    return parabolic_dim(spec) - centralizer_dim_in(x, spec.group, spec)


def lie_algebra_basis(g: GroupKind, allowed: Callable[[int, int], bool] | None = None
                      ) -> list[Matrix]:
    """Basis of the members of g supported on `allowed` positions."""
    n = g.n
    f = form_matrix(g)
    if allowed is None:
        allowed = lambda r, c: True
    unknowns = [(p, q) for p in range(1, n + 1) for q in range(1, n + 1)
                if allowed(p, q)]
    index = {pq: i for i, pq in enumerate(unknowns)}
    rows = []
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            row = [Fraction(0)] * len(unknowns)
            hit = False
            for (r, c, coef) in _lie_constraint(p, q, f, n):
                if coef != 0 and (r, c) in index:
                    row[index[(r, c)]] += coef
                    hit = True
            if hit:
                rows.append(tuple(row))
    if not rows:
        rows = [tuple([Fraction(0)] * len(unknowns))]
    basis = []
    for vec in nullspace(Matrix(tuple(rows))):
        m = [[Fraction(0)] * n for _ in range(n)]
        for (p, q), v in zip(unknowns, vec):
            m[p - 1][q - 1] = v
        basis.append(Matrix.from_rows(m))
    return basis


# -- JSON ---------------------------------------------------------------------


def _scalar_to_obj(v: Fraction):
    return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _scalar_from_obj(v) -> Fraction:
    if isinstance(v, bool):
        raise DomainError("matrix entries must be rationals")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad rational literal {v!r}") from exc
    raise DomainError(f"matrix entries must be integers or 'p/q' strings, got {type(v).__name__}")


def matrix_to_obj(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[_scalar_to_obj(v) for v in row] for row in m.entries]}


def matrix_from_obj(obj) -> Matrix:
    if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= set(obj):
        raise DomainError("matrix object needs keys rows, cols, entries")
    entries = obj["entries"]
    if len(entries) != obj["rows"] or any(len(row) != obj["cols"] for row in entries):
        raise DomainError("matrix entries do not match the declared shape")
    return Matrix(tuple(tuple(_scalar_from_obj(v) for v in row) for row in entries))


def matrix_to_json(m: Matrix) -> str:
    return json.dumps(matrix_to_obj(m), sort_keys=True, separators=(",", ":"))


def matrix_from_json(text: str) -> Matrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"bad JSON: {exc}") from exc
    return matrix_from_obj(obj)
