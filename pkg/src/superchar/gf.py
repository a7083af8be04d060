"""Exact arithmetic over small finite fields and in Z[zeta_p].

Field elements are plain ints in ``range(q)``.  The base-p digits of an
element are the coefficients of its residue polynomial, least significant
digit first, so prime fields are the ordinary residues ``0..p-1``.  All
arithmetic goes through the owning :class:`Fq`; elements carry no field
reference, so layers above never mix encodings from different fields
(matrices, groups and algebras each hold a single field and raise
``SpecMismatch`` when combined across fields).

Character values live in the ring of cyclotomic integers Z[zeta_p].
:class:`CycInt` is the full ring, used by brute-force orbit sums;
:class:`CharValue` is the closed multiplicative form ``q**m * zeta_p**k``
that the character formulas produce.  The additive character is fixed once
and for all as ``theta(t) = zeta_p ** trace(t)``: any nontrivial character
would do, and this one makes every emitted table reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import BadField, InternalInvariantViolation, SpecMismatch

MAX_Q = 1 << 16

# Lexicographically minimal monic irreducible polynomials, coefficients
# constant-term first.  Overridable per input file.
DEFAULT_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 0, 1),
    27: (1, 2, 0, 1),
}

_TABLE_LIMIT = 256  # precompute op tables up to this q


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_power(q: int) -> tuple[int, int]:
    """Split q = p**r or raise BadField."""
    if q < 2:
        raise BadField(f"q must be at least 2, got {q}")
    p = None
    for d in itertools.chain([2], range(3, q + 1, 2)):
        if d * d > q:
            break
        if q % d == 0:
            p = d
            break
    if p is None:
        return q, 1  # q itself is prime
    r = 0
    m = q
    while m % p == 0:
        m //= p
        r += 1
    if m != 1:
        raise BadField(f"{q} is not a prime power")
    return p, r


# -- polynomial helpers over F_p (coefficient tuples, constant term first) --


def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mod(a, m, p):
    a = [x % p for x in a]
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            f = (c * inv_lead) % p
            for k in range(dm + 1):
                a[i - dm + k] = (a[i - dm + k] - f * m[k]) % p
    return _poly_trim(a)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _irreducible(modulus, p) -> bool:
    """No roots and no monic factor of degree <= deg/2, by trial division."""
    r = len(modulus) - 1
    for t in range(p):
        acc = 0
        for c in reversed(modulus):
            acc = (acc * t + c) % p
        if acc == 0:
            return False
    for d in range(2, r // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = tail + (1,)
            if not _poly_mod(modulus, cand, p):
                return False
    return True


@dataclass(frozen=True)
class Fq:
    """The finite field F_q, q = p**r, with elements encoded as ints in range(q)."""

    p: int
    r: int
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not _is_prime(self.p):
            raise BadField(f"{self.p} is not prime")
        if self.r < 1:
            raise BadField(f"extension degree must be positive, got {self.r}")
        if self.p ** self.r > MAX_Q:
            raise BadField(f"q = {self.p}**{self.r} exceeds the supported limit {MAX_Q}")
        if self.r == 1:
            if self.modulus is not None:
                raise BadField("a modulus is only meaningful for proper prime powers")
        else:
            m = self.modulus
            if m is None:
                raise BadField(f"q = {self.q} needs a modulus polynomial")
            if len(m) != self.r + 1:
                raise BadField(f"modulus must have degree {self.r}")
            if any(not (0 <= c < self.p) for c in m):
                raise BadField("modulus coefficients must be reduced mod p")
            if m[-1] != 1:
                raise BadField("modulus must be monic")
            if not _irreducible(m, self.p):
                raise BadField(f"reducible polynomial: {list(m)} over F_{self.p}")

    @classmethod
    def of(cls, q: int, modulus=None) -> "Fq":
        p, r = _prime_power(q)
        if r == 1:
            return cls(p, 1, None)
        if modulus is None:
            if q not in DEFAULT_MODULI:
                raise BadField(f"no built-in modulus for q = {q}; supply one")
            modulus = DEFAULT_MODULI[q]
        return cls(p, r, tuple(int(c) % p for c in modulus))

    @property
    def q(self) -> int:
        return self.p ** self.r

    def __repr__(self):
        if self.r == 1:
            return f"Fq({self.p})"
        return f"Fq({self.q}, modulus={list(self.modulus)})"

    # -- element encoding -------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.r):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.r:
            raise BadField(f"too many coefficients for degree-{self.r} extension")
        a = 0
        for c in reversed(cs):
            a = a * self.p + (int(c) % self.p)
        return a

    def check(self, a: int) -> int:
        if not (0 <= a < self.q):
            raise BadField(f"{a} is not an element of F_{self.q}")
        return a

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def additive_generators(self) -> tuple[int, ...]:
        """A basis of F_q over F_p: 1, X, ..., X**(r-1)."""
        return tuple(self.p ** i for i in range(self.r))

    # -- arithmetic --------------------------------------------------------

    @cached_property
    def _tables(self):
        if self.q > _TABLE_LIMIT:
            return None
        q = self.q
        add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        neg = [self._neg_slow(a) for a in range(q)]
        inv = [0] + [self._inv_slow(a) for a in range(1, q)]
        return add, mul, neg, inv

    @cached_property
    def _xk_reduction(self):
        # X**(r+i) reduced mod the modulus, for i = 0 .. r-2
        p, r, m = self.p, self.r, self.modulus
        red = []
        cur = tuple((-c) % p for c in m[:r])  # X**r
        red.append(cur)
        for _ in range(r - 2):
            nxt = [0] * r
            for k in range(r - 1):
                nxt[k + 1] = cur[k]
            if cur[r - 1]:
                hi = cur[r - 1]
                for k in range(r):
                    nxt[k] = (nxt[k] + hi * red[0][k]) % p
            cur = tuple(nxt)
            red.append(cur)
        return red

    def _add_slow(self, a, b):
        if self.r == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.r):
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def _neg_slow(self, a):
        if self.r == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.r):
            out += ((-(a % p)) % p) * mult
            a //= p
            mult *= p
        return out

    def _mul_slow(self, a, b):
        p = self.p
        if self.r == 1:
            return (a * b) % p
        ca, cb = self.coeffs(a), self.coeffs(b)
        r = self.r
        conv = [0] * (2 * r - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    conv[i + j] = (conv[i + j] + x * y) % p
        out = conv[:r]
        red = self._xk_reduction
        for i in range(r, 2 * r - 1):
            c = conv[i]
            if c:
                rr = red[i - r]
                for k in range(r):
                    out[k] = (out[k] + c * rr[k]) % p
        return self.from_coeffs(out)

    def _inv_slow(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        out, base, e = 1, a, self.q - 2
        while e:
            if e & 1:
                out = self._mul_slow(out, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return out

    def add(self, a: int, b: int) -> int:
        t = self._tables
        if t is not None:
            return t[0][a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        t = self._tables
        if t is not None:
            return t[2][a]
        return self._neg_slow(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        t = self._tables
        if t is not None:
            return t[1][a][b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        t = self._tables
        if t is not None:
            return t[3][a]
        return self._inv_slow(a)

    def power(self, a: int, e: int) -> int:
        if e < 0:
            return self.power(self.inv(a), -e)
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def dot(self, u, v) -> int:
        acc = 0
        for a, b in zip(u, v):
            if a and b:
                acc = self.add(acc, self.mul(a, b))
        return acc

    # -- trace and the fixed additive character ----------------------------

    def trace(self, a: int) -> int:
        """Tr(a) = a + a**p + ... + a**(p**(r-1)), an element of F_p."""
        if self.r == 1:
            return a % self.p
        acc = a
        frob = a
        for _ in range(self.r - 1):
            frob = self.power(frob, self.p)
            acc = self.add(acc, frob)
        cs = self.coeffs(acc)
        if any(cs[1:]):  # pragma: no cover - theory guarantees
            raise InternalInvariantViolation(f"trace left the prime field: {acc}")
        return cs[0]


# ---------------------------------------------------------------------------
# dense matrices over F_q


@dataclass(frozen=True)
class FqMatrix:
    """A dense matrix over F_q; rows are tuples of element codes."""

    field: Fq
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, field: Fq, rows, ncols: int | None = None) -> "FqMatrix":
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, rows, ncols)

    @classmethod
    def zero(cls, field: Fq, nrows: int, ncols: int) -> "FqMatrix":
        return cls(field, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field: Fq, n: int) -> "FqMatrix":
        return cls(field, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def mul_vector(self, v) -> tuple[int, ...]:
        F = self.field
        return tuple(F.dot(row, v) for row in self.rows)


def _rref(field: Fq, rows, ncols):
    """Reduced row echelon form; pivot = leftmost nonzero, rows scanned top-down."""
    R = [list(r) for r in rows]
    pivots = []
    prow = 0
    nrows = len(R)
    for col in range(ncols):
        pr = None
        for i in range(prow, nrows):
            if R[i][col]:
                pr = i
                break
        if pr is None:
            continue
        R[prow], R[pr] = R[pr], R[prow]
        inv = field.inv(R[prow][col])
        if inv != 1:
            R[prow] = [field.mul(inv, x) for x in R[prow]]
        lead = R[prow]
        for i in range(nrows):
            f = R[i][col]
            if i != prow and f:
                row = R[i]
                R[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(row, lead)]
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    return R, pivots


def rank(M: FqMatrix) -> int:
    _, pivots = _rref(M.field, M.rows, M.ncols)
    return len(pivots)


def nullspace_basis(M: FqMatrix) -> list[tuple[int, ...]]:
    """Basis of the right nullspace, one vector per free column in ascending order."""
    F = M.field
    R, pivots = _rref(F, M.rows, M.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivot_set:
            continue
        v = [0] * M.ncols
        v[free] = 1
        for k, pc in enumerate(pivots):
            v[pc] = F.neg(R[k][free])
        basis.append(tuple(v))
    return basis


def solve(M: FqMatrix, rhs) -> tuple[int, ...] | None:
    """A particular solution of M x = rhs with free variables set to 0, or None."""
    rhs = tuple(rhs)
    if len(rhs) != M.nrows:
        raise ValueError("right-hand side has the wrong length")
    F = M.field
    aug = [row + (c,) for row, c in zip(M.rows, rhs)]
    R, pivots = _rref(F, aug, M.ncols + 1)
    if pivots and pivots[-1] == M.ncols:
        return None
    x = [0] * M.ncols
    for k, pc in enumerate(pivots):
        x[pc] = R[k][M.ncols]
    return tuple(x)


def perp_to_nullspace(M: FqMatrix, b) -> bool:
    """True iff b is orthogonal to every nullspace basis vector (i.e. b in rowspace)."""
    b = tuple(b)
    if len(b) != M.ncols:
        raise ValueError("vector has the wrong length")
    F = M.field
    return all(F.dot(b, v) == 0 for v in nullspace_basis(M))


# ---------------------------------------------------------------------------
# cyclotomic integers

_COEFF_LIMIT = 1 << 63  # checked arithmetic; overflow is a hard error


def _check_coeffs(cs):
    for c in cs:
        if not (-_COEFF_LIMIT < c < _COEFF_LIMIT):
            raise OverflowError("cyclotomic coefficient exceeds 64-bit range")
    return cs


@dataclass(frozen=True)
class CycInt:
    """An element of Z[zeta_p] in the reduced basis 1, zeta, ..., zeta**(p-2)."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError(f"need {self.p - 1} coefficients for p = {self.p}")
        _check_coeffs(self.coeffs)

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def integer(cls, p: int, n: int) -> "CycInt":
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def root(cls, p: int, k: int, scale: int = 1) -> "CycInt":
        """scale * zeta_p**k, canonicalized via 1 + zeta + ... + zeta**(p-1) = 0."""
        k %= p
        if k < p - 1:
            cs = [0] * (p - 1)
            cs[k] = scale
        else:
            cs = [-scale] * (p - 1)
        return cls(p, tuple(cs))

    def _match(self, other: "CycInt"):
        if self.p != other.p:
            raise SpecMismatch(f"cyclotomic orders differ: {self.p} vs {other.p}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        self._match(other)
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, tuple(a * other for a in self.coeffs))
        self._match(other)
        p = self.p
        acc = [0] * p  # coefficients on zeta**0 .. zeta**(p-1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        acc[(i + j) % p] += a * b
        top = acc[p - 1]
        return CycInt(p, tuple(acc[k] - top for k in range(p - 1)))

    __rmul__ = __mul__

    def conjugate(self) -> "CycInt":
        """Complex conjugation zeta -> zeta**-1; identity for p = 2."""
        p = self.p
        acc = [0] * p
        for i, a in enumerate(self.coeffs):
            acc[(-i) % p] += a
        top = acc[p - 1]
        return CycInt(p, tuple(acc[k] - top for k in range(p - 1)))

    def __bool__(self):
        return any(self.coeffs)

    def to_json(self):
        return {"p": self.p, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj) -> "CycInt":
        return cls(int(obj["p"]), tuple(int(c) for c in obj["coeffs"]))


# ---------------------------------------------------------------------------
# closed-form character values


@dataclass(frozen=True)
class CharValue:
    """A supercharacter value: zero, or q**q_exp * zeta_p**zeta_exp."""

    q_exp: int = 0
    zeta_exp: int = 0
    is_zero: bool = False

    @classmethod
    def zero(cls) -> "CharValue":
        return cls(0, 0, True)

    @classmethod
    def of(cls, q_exp: int, zeta_exp: int, p: int) -> "CharValue":
        if q_exp < 0:
            raise ValueError("nonzero character values have nonnegative q-exponent")
        return cls(q_exp, zeta_exp % p, False)

    def conjugate(self, p: int) -> "CharValue":
        if self.is_zero:
            return self
        return CharValue(self.q_exp, (-self.zeta_exp) % p, False)

    def to_cyc(self, field: Fq) -> CycInt:
        if self.is_zero:
            return CycInt.zero(field.p)
        return CycInt.root(field.p, self.zeta_exp, scale=field.q ** self.q_exp)

    def as_int(self, field: Fq) -> int | None:
        """The value as a rational integer, when it is one (always for p = 2)."""
        if self.is_zero:
            return 0
        if self.zeta_exp == 0:
            return field.q ** self.q_exp
        if field.p == 2 and self.zeta_exp == 1:
            return -(field.q ** self.q_exp)
        return None

    def render(self, field: Fq) -> str:
        if self.is_zero:
            return "0"
        return f"q^{self.q_exp}*z^{self.zeta_exp}"

    def to_json(self):
        if self.is_zero:
            return None
        return {"q_exp": self.q_exp, "zeta_exp": self.zeta_exp}

    @classmethod
    def from_json(cls, obj) -> "CharValue":
        if obj is None:
            return cls.zero()
        return cls(int(obj["q_exp"]), int(obj["zeta_exp"]), False)


def theta(field: Fq, t: int) -> CharValue:
    """The fixed additive character theta(t) = zeta_p**trace(t)."""
    return CharValue.of(0, field.trace(t), field.p)
