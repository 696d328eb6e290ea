"""
Exact 2x2 integer matrix algebra.

Smith normal form with transform tracking, SL(2,Z) trace classes, the
conjugacy reduction for trace 2, reversing symmetries and the rank of the
center of Z^2 x|_A Z. All arithmetic is checked against the signed 64-bit
range.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import HypothesisError, IntRangeError, ParseError
from .limits import INT64_MAX, INT64_MIN, MAX_MATRIX_POWER

Vec2 = Tuple[int, int]


def _checked(value: int) -> int:
    if value < INT64_MIN or value > INT64_MAX:
        raise IntRangeError(f"integer {value} leaves the signed 64-bit range")
    return value


def _dot(x: int, y: int, z: int, w: int) -> int:
    return _checked(_checked(x * y) + _checked(z * w))


def _egcd(x: int, y: int) -> tuple[int, int, int]:
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class IntMatrix2:
    """Row-major integer matrix [[a, b], [c, d]]."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                try:
                    coerced = int(value)
                except (TypeError, ValueError) as ex:
                    raise TypeError(f"matrix entry {name} must be an integer") from ex
                if coerced != value:
                    raise TypeError(f"matrix entry {name} must be an integer")
                object.__setattr__(self, name, coerced)
            _checked(getattr(self, name))

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def zero(cls) -> "IntMatrix2":
        return cls(0, 0, 0, 0)

    @classmethod
    def from_rows(cls, rows: object) -> "IntMatrix2":
        (a, b), (c, d) = rows  # type: ignore[misc]
        return cls(a, b, c, d)

    def rows(self) -> tuple[Vec2, Vec2]:
        return (self.a, self.b), (self.c, self.d)

    def det(self) -> int:
        return _checked(_checked(self.a * self.d) - _checked(self.b * self.c))

    def trace(self) -> int:
        return _checked(self.a + self.d)

    def is_sl2(self) -> bool:
        return self.det() == 1

    def is_gl2(self) -> bool:
        return self.det() in (1, -1)

    def transpose(self) -> "IntMatrix2":
        return IntMatrix2(self.a, self.c, self.b, self.d)

    def __neg__(self) -> "IntMatrix2":
        return IntMatrix2(-self.a, -self.b, -self.c, -self.d)

    def __add__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            _checked(self.a + other.a),
            _checked(self.b + other.b),
            _checked(self.c + other.c),
            _checked(self.d + other.d),
        )

    def __sub__(self, other: "IntMatrix2") -> "IntMatrix2":
        return self + (-other)

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        if not isinstance(other, IntMatrix2):
            return NotImplemented
        return IntMatrix2(
            _dot(self.a, other.a, self.b, other.c),
            _dot(self.a, other.b, self.b, other.d),
            _dot(self.c, other.a, self.d, other.c),
            _dot(self.c, other.b, self.d, other.d),
        )

    def apply(self, v: Vec2) -> Vec2:
        x1, x2 = v
        return _dot(self.a, x1, self.b, x2), _dot(self.c, x1, self.d, x2)

    def inverse(self) -> "IntMatrix2":
        det = self.det()
        if det == 1:
            return IntMatrix2(self.d, -self.b, -self.c, self.a)
        if det == -1:
            return IntMatrix2(-self.d, self.b, self.c, -self.a)
        raise HypothesisError(f"matrix {format_matrix(self)} is not invertible over Z (det={det})")

    def power(self, n: int) -> "IntMatrix2":
        if abs(n) > MAX_MATRIX_POWER:
            raise IntRangeError(f"matrix power {n} exceeds the cap of {MAX_MATRIX_POWER}")
        base = self if n >= 0 else self.inverse()
        out = IntMatrix2.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out

    def __str__(self) -> str:
        return format_matrix(self)


IDENTITY = IntMatrix2.identity()
ZERO = IntMatrix2.zero()
# Rotation by a quarter turn; conjugating with it swaps the two trace-2 forms.
QUARTER_TURN = IntMatrix2(0, -1, 1, 0)
_SWAP = IntMatrix2(0, 1, 1, 0)


def parse_matrix(text: str) -> IntMatrix2:
    """Parse the row-major text form ``"a,b;c,d"``."""
    rows = text.strip().split(";")
    if len(rows) != 2:
        raise ParseError(f"invalid matrix '{text}' (expected a,b;c,d)")
    entries: list[int] = []
    for row in rows:
        cells = row.split(",")
        if len(cells) != 2:
            raise ParseError(f"invalid matrix '{text}' (expected a,b;c,d)")
        for cell in cells:
            try:
                entries.append(int(cell.strip(), 10))
            except ValueError as ex:
                raise ParseError(f"invalid matrix entry '{cell.strip()}' in '{text}'") from ex
    try:
        return IntMatrix2(*entries)
    except IntRangeError as ex:
        raise ParseError(f"matrix entry out of range in '{text}'") from ex


def format_matrix(m: IntMatrix2) -> str:
    return f"{m.a},{m.b};{m.c},{m.d}"


@dataclass(frozen=True)
class SNFDecomposition:
    left: IntMatrix2
    diag: tuple[int, int]
    right: IntMatrix2

    @property
    def h1(self) -> int:
        return self.diag[0]

    @property
    def h2(self) -> int:
        return self.diag[1]

    @property
    def rank(self) -> int:
        return sum(1 for h in self.diag if h != 0)

    def diagonal_matrix(self) -> IntMatrix2:
        return IntMatrix2(self.diag[0], 0, 0, self.diag[1])

    def reproduces(self, m: IntMatrix2) -> bool:
        return self.left @ m @ self.right == self.diagonal_matrix()


def _clearing(x: int, y: int) -> IntMatrix2:
    # Determinant-one E with E @ (x, y)^T = (g, 0)^T.
    if x != 0 and y % x == 0:
        return IntMatrix2(1, 0, -(y // x), 1)
    g, s, t = _egcd(x, y)
    return IntMatrix2(s, t, -(y // g), x // g)


def smith_normal_form(m: IntMatrix2) -> SNFDecomposition:
    """
    Smith normal form ``U @ M @ V = diag(h1, h2)``.

    The diagonal is nonnegative and h1 divides h2 (with 0 divisible by
    everything, so a rank-one matrix gives ``(h1, 0)``). Signs are absorbed
    into ``U``.
    """
    u = IDENTITY
    v = IDENTITY
    cur = m
    if cur == ZERO:
        return SNFDecomposition(u, (0, 0), v)

    while True:
        if cur.c != 0:
            e = _clearing(cur.a, cur.c)
            cur = e @ cur
            u = e @ u
        if cur.b != 0:
            f = _clearing(cur.a, cur.b).transpose()
            cur = cur @ f
            v = v @ f
            continue
        if cur.c != 0:
            continue
        if cur.a == 0:
            # Only d can be nonzero here; move it to the pivot.
            cur = _SWAP @ cur @ _SWAP
            u = _SWAP @ u
            v = v @ _SWAP
            continue
        if cur.d % cur.a != 0:
            t = IntMatrix2(1, 1, 0, 1)
            cur = t @ cur
            u = t @ u
            continue
        break

    if cur.a < 0:
        s = IntMatrix2(-1, 0, 0, 1)
        cur = s @ cur
        u = s @ u
    if cur.d < 0:
        s = IntMatrix2(1, 0, 0, -1)
        cur = s @ cur
        u = s @ u
    return SNFDecomposition(u, (cur.a, cur.d), v)


def equivalent_matrices(m: IntMatrix2, n: IntMatrix2) -> bool:
    return smith_normal_form(m).diag == smith_normal_form(n).diag


class TraceClass(str, enum.Enum):
    HYPERBOLIC = "hyperbolic"
    UNIPOTENT_PLUS = "unipotent_plus"
    FINITE_ORDER = "finite_order"
    IDENTITY = "identity"
    MINUS_IDENTITY = "minus_identity"

    @property
    def infinite_order(self) -> bool:
        return self in (TraceClass.HYPERBOLIC, TraceClass.UNIPOTENT_PLUS)


def _require_sl2(a: IntMatrix2) -> None:
    det = a.det()
    if det != 1:
        raise HypothesisError(f"matrix {format_matrix(a)} is not in SL(2,Z) (det={det})")


def trace_class(a: IntMatrix2) -> TraceClass:
    _require_sl2(a)
    if a == IDENTITY:
        return TraceClass.IDENTITY
    if a == -IDENTITY:
        return TraceClass.MINUS_IDENTITY
    tr = a.trace()
    if tr in (-1, 0, 1):
        return TraceClass.FINITE_ORDER
    if tr == 2:
        return TraceClass.UNIPOTENT_PLUS
    # Includes trace -2 with A != -I: infinite order, outside {0, +-1, 2}.
    return TraceClass.HYPERBOLIC


def fixed_vector(a: IntMatrix2) -> Vec2:
    """
    Primitive generator of ker(A - I) for a trace-2 matrix A != I.

    The first nonzero coordinate is positive.
    """
    if trace_class(a) is not TraceClass.UNIPOTENT_PLUS:
        raise HypothesisError(f"matrix {format_matrix(a)} has no rank-one fixed lattice")
    n = a - IDENTITY
    r1, r2 = (n.a, n.b) if (n.a, n.b) != (0, 0) else (n.c, n.d)
    g = math.gcd(r1, r2)
    v1, v2 = r2 // g, -r1 // g
    if v1 < 0 or (v1 == 0 and v2 < 0):
        v1, v2 = -v1, -v2
    return v1, v2


class ReducedForm(str, enum.Enum):
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class Trace2NormalForm:
    h1: int
    form: ReducedForm
    conjugator: IntMatrix2

    def reduced_matrix(self) -> IntMatrix2:
        if self.form is ReducedForm.UPPER:
            return IntMatrix2(1, self.h1, 0, 1)
        return IntMatrix2(1, 0, self.h1, 1)


def trace2_normal_form(a: IntMatrix2) -> Trace2NormalForm:
    """
    Conjugate a trace-2 matrix A != I to [[1,h],[0,1]] or [[1,0],[h,1]].

    The fixed vector v is extended to a unimodular basis (v, w); in that basis
    A is [[1,k],[0,1]]. A negative k is flipped to the lower form with the
    quarter turn.
    """
    v1, v2 = fixed_vector(a)
    _, s, t = _egcd(v1, v2)
    q = IntMatrix2(v1, -t, v2, s)
    p = q.inverse()
    reduced = p @ a @ q
    if reduced.a != 1 or reduced.d != 1 or reduced.c != 0 or reduced.b == 0:
        raise RuntimeError(f"conjugacy reduction failed for {format_matrix(a)}")
    k = reduced.b
    if k > 0:
        result = Trace2NormalForm(k, ReducedForm.UPPER, p)
    else:
        result = Trace2NormalForm(-k, ReducedForm.LOWER, QUARTER_TURN @ p)

    p = result.conjugator
    if p.det() != 1 or p @ a @ p.inverse() != result.reduced_matrix():
        raise RuntimeError(f"conjugator check failed for {format_matrix(a)}")
    return result


def _require_reversible(a: IntMatrix2) -> None:
    _require_sl2(a)
    if a == IDENTITY or a == -IDENTITY:
        raise HypothesisError("reversing symmetries are not searched for A = +-I")


def _is_reversor(a: IntMatrix2, a_inv: IntMatrix2, b: IntMatrix2) -> bool:
    return b.det() == -1 and b @ a == a_inv @ b


def reversing_symmetry(a: IntMatrix2, bound: int) -> Optional[IntMatrix2]:
    """
    Find B with det(B) = -1 and B @ A = A^-1 @ B.

    The divisibility shortcuts (c | a-d, then b | a-d) are tried first. The
    fallback visits every B with entries in [-bound, bound] in lexicographic
    order of (b11, b12, b21, b22) and returns the first hit. ``None`` means
    nothing was found within the bound, never that no reversor exists.
    """
    _require_reversible(a)
    if bound < 1:
        raise ValueError(f"reversor search bound must be positive, got {bound}")
    a_inv = a.inverse()
    diff = a.a - a.d

    candidate: Optional[IntMatrix2] = None
    if a.c != 0 and diff % a.c == 0:
        candidate = IntMatrix2(1, -(diff // a.c), 0, -1)
    elif a.b != 0 and diff % a.b == 0:
        candidate = IntMatrix2(1, 0, -(diff // a.b), -1)
    if candidate is not None:
        if not _is_reversor(a, a_inv, candidate):
            raise RuntimeError(f"divisibility reversor failed for {format_matrix(a)}")
        return candidate

    # B A = A^-1 B forces b22 = -b11 and (a-d) b11 + c b12 + b b21 = 0 once A != +-I;
    # det(B) = -1 then reads b11^2 + b12 b21 = 1.
    span = range(-bound, bound + 1)
    for p in span:
        for q in span:
            if a.b != 0:
                num = -(diff * p + a.c * q)
                if num % a.b != 0:
                    continue
                r = num // a.b
                if abs(r) > bound:
                    continue
                choices: range | tuple[int, ...] = (r,)
            else:
                if diff * p + a.c * q != 0:
                    continue
                choices = span
            for r in choices:
                if p * p + q * r != 1:
                    continue
                b = IntMatrix2(p, q, r, -p)
                if _is_reversor(a, a_inv, b):
                    return b
    return None


def center_rank(a: IntMatrix2) -> int:
    """Rank of Fix(A) = ker(A - I), the center of Z^2 x|_A Z for infinite-order A."""
    _require_sl2(a)
    snf = smith_normal_form(a - IDENTITY)
    return 2 - snf.rank


_ELEMENTARY = (
    IntMatrix2(1, 1, 0, 1),
    IntMatrix2(1, -1, 0, 1),
    IntMatrix2(1, 0, 1, 1),
    IntMatrix2(1, 0, -1, 1),
)


def random_sl2(rng: object, steps: int = 6) -> IntMatrix2:
    """Random word of ``steps`` elementary SL(2,Z) generators."""
    out = IDENTITY
    for _ in range(steps):
        out = out @ _ELEMENTARY[int(rng.integers(0, len(_ELEMENTARY)))]  # type: ignore[attr-defined]
    return out
