"""Definitional brute force on fully enumerated groups.

Everything here is computed from first principles so that agreement with the
closed-form machinery is meaningful: generator actions are derived by dense
matrix products (pattern groups) or raw coordinate products (structure
constants), never from the chain-indexed update rules in :mod:`.core`; the
only shared code is the generic set-closure plumbing.

The supercharacter of eta is the scaled orbit sum

    chi^eta(x_phi) = (|lambda_eta U| / |U lambda_eta U|)
                     * sum over mu in the two-sided co-orbit of theta(mu . phi)

with the scaling division performed exactly (and loudly checked).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    InternalInvariantViolation,
    NonIntegralScaling,
    SizeCapExceeded,
)
from .gf import CycInt, Fq
from .core import OrbitPartition, PatternGroup, _bfs, _codes_to_digits, orbit_partition_from_moves
from .algebra import StructureAlgebra

DEFAULT_ORACLE_CAP = 1 << 12


# ---------------------------------------------------------------------------
# backends: definitional generator actions


class PatternBackend:
    """Dense matrix realization of a pattern group's actions."""

    def __init__(self, G: PatternGroup):
        self.field = G.field
        self.dim = len(G.J)
        self.J = G.J
        n = G.J.n
        F = G.field
        order = G.J.order
        index = G.J.index

        def dense(pairs):  # strictly upper triangular matrix from {(i,j): v}
            M = [[0] * n for _ in range(n)]
            for (i, j), v in pairs.items():
                M[i - 1][j - 1] = v
            return M

        def mat_mul(A, B):
            return [
                [
                    _dot_dense(F, A[i], [B[k][j] for k in range(n)])
                    for j in range(n)
                ]
                for i in range(n)
            ]

        def coords(M):
            out = [0] * self.dim
            for k, (i, j) in enumerate(order):
                out[k] = M[i - 1][j - 1]
            for i in range(n):
                for j in range(n):
                    if M[i][j] and (i + 1, j + 1) not in index:
                        raise InternalInvariantViolation(
                            f"dense action left the closed set at ({i + 1}, {j + 1})"
                        )
            return out

        def delta_updates(f, transpose=False):
            """Linear map on coordinates from a dense map on basis matrices."""
            ups = []
            for src, (i, j) in enumerate(order):
                e = dense({(i, j): 1})
                d = coords(f(e))
                d[src] = F.sub(d[src], 1)
                for tgt, c in enumerate(d):
                    if c:
                        if transpose:
                            ups.append((src, tgt, c))
                        else:
                            ups.append((tgt, src, c))
            return tuple(ups)

        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

        mult_left, mult_right, dual_left, dual_right, conj = [], [], [], [], []
        for alpha in order:
            for t in F.additive_generators():
                g = [row[:] for row in ident]
                g[alpha[0] - 1][alpha[1] - 1] = t
                g_inv = [row[:] for row in ident]
                g_inv[alpha[0] - 1][alpha[1] - 1] = F.neg(t)
                mult_left.append((1, delta_updates(lambda e: mat_mul(g, e))))
                mult_right.append((1, delta_updates(lambda e: mat_mul(e, g))))
                # (g lambda)(X) = lambda(g^-1 X): transpose of multiplication by g^-1
                dual_left.append((1, delta_updates(lambda e: mat_mul(g_inv, e), transpose=True)))
                dual_right.append((1, delta_updates(lambda e: mat_mul(e, g_inv), transpose=True)))
                conj.append((1, delta_updates(lambda e: mat_mul(g, mat_mul(e, g_inv)))))
        self.mult_left = tuple(m for m in mult_left if m[1])
        self.mult_right = tuple(m for m in mult_right if m[1])
        self.dual_left = tuple(m for m in dual_left if m[1])
        self.dual_right = tuple(m for m in dual_right if m[1])
        self.conj = tuple(m for m in conj if m[1])


def _dot_dense(F: Fq, row, col) -> int:
    acc = 0
    for a, b in zip(row, col):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


class AlgebraBackend:
    """Coordinate-product realization of a structure-constant group's actions."""

    def __init__(self, alg: StructureAlgebra):
        self.field = alg.field
        self.dim = alg.d
        self.alg = alg
        F = alg.field
        d = alg.d

        def basis(i):
            return tuple(1 if k == i else 0 for k in range(d))

        def delta_updates(f, transpose=False):
            ups = []
            for src in range(d):
                out = list(f(basis(src)))
                out[src] = F.sub(out[src], 1)
                for tgt, c in enumerate(out):
                    if c:
                        ups.append((src, tgt, c) if transpose else (tgt, src, c))
            return tuple(ups)

        mult_left, mult_right, dual_left, dual_right, conj = [], [], [], [], []
        for gidx in range(d):
            for t in F.additive_generators():
                g = tuple(t if k == gidx else 0 for k in range(d))
                g_inv = alg.inverse(g)

                def lmul(e, g=g):
                    return _affine_image(alg, g, e, side="left")

                def rmul(e, g=g):
                    return _affine_image(alg, g, e, side="right")

                def lmul_inv(e, g_inv=g_inv):
                    return _affine_image(alg, g_inv, e, side="left")

                def rmul_inv(e, g_inv=g_inv):
                    return _affine_image(alg, g_inv, e, side="right")

                def sandwich(e, g=g, g_inv=g_inv):
                    return _affine_image(alg, g_inv, _affine_image(alg, g, e, side="left"), side="right")

                mult_left.append((1, delta_updates(lmul)))
                mult_right.append((1, delta_updates(rmul)))
                dual_left.append((1, delta_updates(lmul_inv, transpose=True)))
                dual_right.append((1, delta_updates(rmul_inv, transpose=True)))
                conj.append((1, delta_updates(sandwich)))
        self.mult_left = tuple(m for m in mult_left if m[1])
        self.mult_right = tuple(m for m in mult_right if m[1])
        self.dual_left = tuple(m for m in dual_left if m[1])
        self.dual_right = tuple(m for m in dual_right if m[1])
        self.conj = tuple(m for m in conj if m[1])


def _affine_image(alg: StructureAlgebra, g, e, side: str):
    """(1 + X_g) * X_e or X_e * (1 + X_g), as coordinates."""
    F = alg.field
    if side == "left":
        prod = alg.product(g, e)
    else:
        prod = alg.product(e, g)
    return tuple(F.add(a, b) for a, b in zip(e, prod))


# ---------------------------------------------------------------------------
# the oracle proper


class Oracle:
    """Brute-force superclasses, co-orbits, conjugacy classes and orbit sums."""

    def __init__(self, source, cap: int | None = None):
        if isinstance(source, PatternGroup):
            self.backend = PatternBackend(source)
        elif isinstance(source, StructureAlgebra):
            self.backend = AlgebraBackend(source)
        else:
            self.backend = source
        self.field: Fq = self.backend.field
        self.dim: int = self.backend.dim
        self.cap = DEFAULT_ORACLE_CAP if cap is None else cap
        total = self.field.q ** self.dim
        if total > self.cap:
            raise SizeCapExceeded(total, self.cap, "group enumeration")
        self.order = total

    # -- partitions ---------------------------------------------------------

    def superclass_partition(self) -> OrbitPartition:
        b = self.backend
        return orbit_partition_from_moves(
            self.field, self.dim, b.mult_left + b.mult_right, self.cap
        )

    def coorbit_partition(self) -> OrbitPartition:
        b = self.backend
        return orbit_partition_from_moves(
            self.field, self.dim, b.dual_left + b.dual_right, self.cap
        )

    def conjugacy_partition(self) -> OrbitPartition:
        return orbit_partition_from_moves(self.field, self.dim, self.backend.conj, self.cap)

    def right_coorbit_size(self, eta) -> int:
        return len(_bfs(self.field, tuple(eta), self.backend.dual_right))

    def coorbit_elements(self, eta) -> list[tuple[int, ...]]:
        b = self.backend
        return sorted(_bfs(self.field, tuple(eta), b.dual_left + b.dual_right))

    # -- orbit sums -----------------------------------------------------------

    def value_row(self, eta, class_digits: np.ndarray, elements=None) -> np.ndarray:
        """Scaled orbit-sum values of chi^eta at the given representatives,
        as a (p-1, count) array of cyclotomic coefficients.

        ``elements`` can supply the two-sided co-orbit of eta (as a digit
        array) when the caller already holds the full dual partition.
        """
        F = self.field
        p = F.p
        if elements is None:
            co = self.coorbit_elements(eta)
            O = np.array(co, dtype=np.int64).reshape(len(co), self.dim)
        else:
            O = np.asarray(elements, dtype=np.int64)
            co = [tuple(int(v) for v in row) for row in O] if F.r > 1 else None
        m = len(O)
        nright = self.right_coorbit_size(eta)
        count = len(class_digits)
        counts = np.zeros((p, count), dtype=np.int64)
        if F.r == 1:
            # float64 matmul is exact here (entries < p, sums < 2**53) and an
            # order of magnitude faster than integer matmul
            Pf = O.astype(np.float64) @ np.asarray(class_digits, dtype=np.float64).T
            P = Pf.astype(np.int32)
            P %= p
            for k in range(p):
                counts[k] = (P == k).sum(axis=0)
        else:
            for c in range(count):
                phi = tuple(int(v) for v in class_digits[c])
                for mu in co:
                    counts[F.trace(F.dot(mu, phi))][c] += 1
        num = (counts[: p - 1] - counts[p - 1]) * nright
        if (num % m).any():
            raise NonIntegralScaling(f"co-orbit size {m} does not divide the scaled sum")
        return num // m

    def supercharacter(self, eta) -> dict[tuple, CycInt]:
        """The orbit-sum supercharacter as {superclass representative: value}."""
        part = self.superclass_partition()
        digits = np.array([list(r) for r in part.reps], dtype=np.int64).reshape(
            len(part.reps), self.dim
        )
        row = self.value_row(tuple(eta), digits)
        p = self.field.p
        return {
            rep: CycInt(p, tuple(int(row[k][c]) for k in range(p - 1)))
            for c, rep in enumerate(part.reps)
        }

    def inner_product(self, f, g) -> tuple[CycInt, int]:
        """|G| times <f, g> for class functions given per group element."""
        if len(f) != len(g):
            raise ValueError("class functions must have equal length")
        p = self.field.p
        acc = CycInt.zero(p)
        for a, b in zip(f, g):
            acc = acc + a * b.conjugate()
        return acc, len(f)

    # -- axioms ------------------------------------------------------------------

    def verify_axioms(self) -> "AxiomReport":
        sc = self.superclass_partition()
        co = self.coorbit_partition()
        conj = self.conjugacy_partition()
        report = AxiomReport()
        zero_class = sc.class_of((0,) * self.dim)
        report.record(
            "identity_superclass_is_singleton",
            sc.sizes[zero_class] == 1,
            f"size {sc.sizes[zero_class]}",
        )
        report.record(
            "superclass_and_coorbit_counts_equal",
            len(sc) == len(co),
            f"{len(sc)} superclasses vs {len(co)} co-orbits",
        )
        sc_codes = sc.canonical_codes()
        conj_codes = conj.canonical_codes()
        refine_ok = bool(np.array_equal(sc_codes, sc_codes[conj_codes]))
        report.record(
            "superclasses_union_conjugacy_classes",
            refine_ok,
            f"{len(conj)} conjugacy classes",
        )
        constant = self._check_constancy(sc, co)
        report.record("supercharacters_constant_on_superclasses", constant, "")
        return report

    def _check_constancy(self, sc: OrbitPartition, co: OrbitPartition) -> bool:
        F = self.field
        p = F.p
        total = self.order
        all_digits = _codes_to_digits(np.arange(total, dtype=np.int64), F.q, self.dim)
        sc_codes = sc.canonical_codes()
        for eta in co.reps:
            row = self.value_row(eta, all_digits)  # (p-1, |G|)
            if not np.array_equal(row, row[:, sc_codes]):
                return False
        return True


@dataclass
class AxiomReport:
    checks: list = dc_field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str):
        self.checks.append((name, bool(ok), detail))

    @property
    def all_ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self):
        for name, ok, detail in self.checks:
            suffix = f" ({detail})" if detail else ""
            yield f"{'ok' if ok else 'FAIL'}: {name}{suffix}"


# ---------------------------------------------------------------------------
# the formula-vs-oracle equivalence check


@dataclass
class CheckReport:
    classes: int = 0
    characters: int = 0
    partitions_match: bool = False
    values_match: bool = False
    witness: tuple | None = None  # (eta, phi, formula CharValue, oracle coeffs)
    axioms: AxiomReport | None = None

    @property
    def ok(self) -> bool:
        return (
            self.partitions_match
            and self.values_match
            and (self.axioms is None or self.axioms.all_ok)
        )

    def lines(self):
        yield f"{'ok' if self.partitions_match else 'FAIL'}: orbit partitions agree"
        yield (
            f"{'ok' if self.values_match else 'FAIL'}: formula matches orbit sums "
            f"({self.characters} characters x {self.classes} superclasses)"
        )
        if self.witness is not None:
            eta, phi, f_val, o_val = self.witness
            yield f"  first mismatch: eta={eta} phi={phi} formula={f_val} oracle={o_val}"
        if self.axioms is not None:
            yield from self.axioms.lines()


def charvalue_coeff_rows(p: int, q: int, zero, qexp, zexp) -> np.ndarray:
    """CharValue arrays -> cyclotomic coefficient rows, shape (p-1, count)."""
    zero = np.asarray(zero, dtype=bool)
    mag = np.where(zero, 0, np.power(np.int64(q), np.asarray(qexp, dtype=np.int64)))
    zexp = np.asarray(zexp, dtype=np.int64)
    out = np.zeros((p - 1, len(mag)), dtype=np.int64)
    for k in range(p):
        mask = (~zero) & (zexp == k)
        if not mask.any():
            continue
        if k < p - 1:
            out[k][mask] += mag[mask]
        else:
            out[:, mask] -= mag[mask]
    return out


def full_check(source, oracle_cap: int | None = None, with_axioms: bool = True) -> CheckReport:
    """Compare the closed-form values against orbit sums on every
    representative pair, after checking the two orbit decompositions agree."""
    from .formula import CharacterEvaluator  # local import to avoid a cycle

    report = CheckReport()
    oracle = Oracle(source, cap=oracle_cap)
    is_pattern = isinstance(source, PatternGroup)
    core_sc = source.orbit_partition(oracle.cap)
    core_co = source.coorbit_partition(oracle.cap)
    orc_sc = oracle.superclass_partition()
    orc_co = oracle.coorbit_partition()
    report.partitions_match = bool(
        np.array_equal(core_sc.canonical_codes(), orc_sc.canonical_codes())
        and np.array_equal(core_co.canonical_codes(), orc_co.canonical_codes())
    )
    report.classes = len(core_sc)
    report.characters = len(core_co)

    dim = oracle.dim
    class_digits = np.array([list(r) for r in core_sc.reps], dtype=np.int64).reshape(
        len(core_sc.reps), dim
    )
    F = oracle.field
    report.values_match = True
    for k, eta in enumerate(core_co.reps):
        # reuse the dual partition's element groups when it agreed; otherwise
        # enumerate the co-orbit of eta from scratch
        elements = orc_co.elements_digits(k) if report.partitions_match else None
        oracle_row = oracle.value_row(eta, class_digits, elements=elements)
        if is_pattern:
            zero, qexp, zexp = CharacterEvaluator(source, eta).value_block(class_digits)
        else:
            corank = source.corank(eta, cap=oracle.cap)
            vals = [
                source.value(eta, tuple(int(v) for v in class_digits[c]), corank=corank)
                for c in range(len(class_digits))
            ]
            zero = [v.is_zero for v in vals]
            qexp = [v.q_exp for v in vals]
            zexp = [v.zeta_exp for v in vals]
        formula_row = charvalue_coeff_rows(F.p, F.q, zero, qexp, zexp)
        if not np.array_equal(formula_row, oracle_row):
            diff = np.nonzero((formula_row != oracle_row).any(axis=0))[0]
            c = int(diff[0])
            report.values_match = False
            report.witness = (
                eta,
                core_sc.reps[c],
                tuple(int(x) for x in formula_row[:, c]),
                tuple(int(x) for x in oracle_row[:, c]),
            )
            break
    if with_axioms:
        report.axioms = oracle.verify_axioms()
    return report
