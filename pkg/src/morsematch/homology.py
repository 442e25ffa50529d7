"""Simplicial homology ranks: Betti numbers over the rationals or a prime field.

Used to lower-bound the number of critical faces per dimension; the bounds are
per-field, and taking the per-dimension maximum over several fields is valid
because each field's inequality holds on its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .complexes import SimplicialComplex, connected_components

__all__ = [
    "FieldSpec",
    "BettiVector",
    "BoundaryMatrix",
    "boundary_matrix",
    "rank",
    "betti_numbers",
    "euler_characteristic",
    "best_betti_bounds",
    "DEFAULT_FIELDS",
]

_PRIME_LIMIT = 1 << 15


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: ``p is None`` means the rationals, else GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not (2 <= self.p <= _PRIME_LIMIT and _is_prime(self.p)):
                raise ValueError(
                    f"field order must be a prime <= {_PRIME_LIMIT}, got {self.p}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().lower()
        if t in ("q", "rational", "rationals"):
            return cls(None)
        if t.startswith("gf(") and t.endswith(")"):
            t = t[3:-1]
        elif t.startswith("gf"):
            t = t[2:]
        if not t.isdigit():
            raise ValueError(f"cannot parse field {text!r}; use 'q' or 'gf<p>'")
        return cls(int(t))

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"


DEFAULT_FIELDS: tuple[FieldSpec, ...] = (FieldSpec.rationals(), FieldSpec.gf(2))


@dataclass(frozen=True)
class BettiVector:
    field: FieldSpec
    betti: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.betti[i]

    def __iter__(self):
        return iter(self.betti)

    def __len__(self) -> int:
        return len(self.betti)


@dataclass(frozen=True)
class BoundaryMatrix:
    """Signed incidence of i-faces (columns) on (i-1)-faces (rows).

    Column entries carry the sign (-1)^k for omitting the k-th vertex of the
    sorted vertex tuple; entries are field-independent, ranks are not.
    """

    dim: int
    num_rows: int
    num_cols: int
    columns: tuple[tuple[tuple[int, int], ...], ...]  # per column: (row, sign)


def boundary_matrix(cx: SimplicialComplex, i: int) -> BoundaryMatrix:
    if not 0 <= i <= cx.dim:
        raise IndexError(f"no dimension {i} in a {cx.dim}-complex")
    if i == 0:
        return BoundaryMatrix(0, 0, cx.f_vector[0], ((),) * cx.f_vector[0])
    row_base = cx.ids_of_dim(i - 1).start
    cols = []
    for fid in cx.ids_of_dim(i):
        key = cx.face_key(fid)
        col = tuple(
            (cx.id_of(key[:k] + key[k + 1:]) - row_base, -1 if k % 2 else 1)
            for k in range(len(key)))
        cols.append(col)
    return BoundaryMatrix(i, cx.f_vector[i - 1], cx.f_vector[i], tuple(cols))


def _rank_mod_p(mat: BoundaryMatrix, p: int) -> int:
    rows = [[0] * mat.num_cols for _ in range(mat.num_rows)]
    for j, col in enumerate(mat.columns):
        for r, s in col:
            rows[r][j] = s % p
    rk = 0
    for col in range(mat.num_cols):
        piv = next((i for i in range(rk, mat.num_rows) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][col], p - 2, p)
        rows[rk] = [(x * inv) % p for x in rows[rk]]
        for i in range(rk + 1, mat.num_rows):
            x = rows[i][col]
            if x:
                rows[i] = [(a - x * b) % p for a, b in zip(rows[i], rows[rk])]
        rk += 1
        if rk == mat.num_rows:
            break
    return rk


def _rank_rationals(mat: BoundaryMatrix) -> int:
    rows = [[Fraction(0)] * mat.num_cols for _ in range(mat.num_rows)]
    for j, col in enumerate(mat.columns):
        for r, s in col:
            rows[r][j] = Fraction(s)
    rk = 0
    for col in range(mat.num_cols):
        # pivot on the largest |numerator * denominator| among candidates
        piv, best = None, -1
        for i in range(rk, mat.num_rows):
            x = rows[i][col]
            if x:
                key = abs(x.numerator * x.denominator)
                if key > best:
                    piv, best = i, key
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = rows[rk][col]
        for i in range(rk + 1, mat.num_rows):
            x = rows[i][col]
            if x:
                f = x / inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rk])]
        rk += 1
        if rk == mat.num_rows:
            break
    return rk


def rank(mat: BoundaryMatrix, field: FieldSpec) -> int:
    if field.p is None:
        return _rank_rationals(mat)
    return _rank_mod_p(mat, field.p)


def betti_numbers(cx: SimplicialComplex,
                  field: FieldSpec = FieldSpec.rationals()) -> BettiVector:
    """Betti numbers beta_i = f_i - rank d_i - rank d_(i+1) over the field."""
    ranks = [0] * (cx.dim + 2)
    for i in range(1, cx.dim + 1):
        ranks[i] = rank(boundary_matrix(cx, i), field)
    betti = tuple(cx.f_vector[i] - ranks[i] - ranks[i + 1]
                  for i in range(cx.dim + 1))
    if betti[0] != len(connected_components(cx)):
        raise AssertionError(
            f"beta_0 = {betti[0]} disagrees with component count")
    if any(b < 0 for b in betti):
        raise AssertionError(f"negative Betti number in {betti}")
    return BettiVector(field, betti)


def euler_characteristic(cx: SimplicialComplex) -> int:
    return sum(f if i % 2 == 0 else -f for i, f in enumerate(cx.f_vector))


def best_betti_bounds(cx: SimplicialComplex,
                      fields: Iterable[FieldSpec] = DEFAULT_FIELDS) -> tuple[int, ...]:
    """Per-dimension max of the Betti numbers over the given fields."""
    fields = tuple(fields)
    if not fields:
        raise ValueError("need at least one field")
    vectors = [betti_numbers(cx, f).betti for f in fields]
    return tuple(max(v[i] for v in vectors) for i in range(cx.dim + 1))
