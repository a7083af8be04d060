"""The closed-form supercharacter formula for pattern groups.

For a ClosedSet J with functionals phi (superclass label) and eta
(character label), the mesh data is

    M[(i,j),(k,l)] = phi_jk * eta_il   for 4-chains (i,j,k,l), else 0
    a[(i,j)]       = sum over 3-chains (i,j,k) of phi_jk * eta_ik
    b[(j,k)]       = sum over 3-chains (i,j,k) of phi_ij * eta_ik

phi meshes with eta when M x = -a is solvable and b is perpendicular to the
nullspace of M; then

    chi^eta(x_phi) = q**(corank(eta) - rank(M)) * theta(b0.b + sum phi*eta)

with b0 the particular solution, and chi^eta(x_phi) = 0 otherwise.  (The
orbit-sum definition fixes the sign of the exponent of theta here; the
brute-force oracle pins it in the tests.)

Everything below is pure; :class:`CharacterEvaluator` just caches the
eta-dependent parts so table builders don't recompute the corank per entry,
and knows how to evaluate a whole block of superclass columns at once over a
prime field.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InternalInvariantViolation,
    NonMonomialRepresentative,
    ShapeMismatch,
)
from .gf import (
    CharValue,
    Fq,
    FqMatrix,
    _rref,
    nullspace_basis,
    perp_to_nullspace,
    rank,
    solve,
)
from .core import PatternGroup
from .poset import is_monomial, support


@dataclass(frozen=True)
class MeshData:
    """The matrix M and vectors a, b attached to a pair (phi, eta)."""

    matrix: FqMatrix
    a: tuple[int, ...]
    b: tuple[int, ...]


def mesh_data(G: PatternGroup, phi, eta) -> MeshData:
    F = G.field
    d = len(G.J)
    rows = [[0] * d for _ in range(d)]
    a = [0] * d
    b = [0] * d
    for ab, bc, cd, ad in G.J.chain4_idx:
        v = phi[bc]
        e = eta[ad]
        if v and e:
            rows[ab][cd] = F.mul(v, e)
    for ab, bc, ac in G.J.chain3_idx:
        e = eta[ac]
        if not e:
            continue
        v = phi[bc]
        if v:
            a[ab] = F.add(a[ab], F.mul(v, e))
        v = phi[ab]
        if v:
            b[bc] = F.add(b[bc], F.mul(v, e))
    return MeshData(FqMatrix.from_rows(F, rows, d), tuple(a), tuple(b))


def meshes(G: PatternGroup, phi, eta) -> tuple[bool, tuple[int, ...] | None]:
    """Whether phi meshes with eta; the deterministic witness b0 when it does."""
    md = mesh_data(G, phi, eta)
    F = G.field
    b0 = solve(md.matrix, tuple(F.neg(x) for x in md.a))
    if b0 is None or not perp_to_nullspace(md.matrix, md.b):
        return False, None
    return True, b0


def value(G: PatternGroup, eta, phi) -> CharValue:
    """chi^eta evaluated at the superclass of x_phi."""
    return CharacterEvaluator(G, eta).value(phi)


def degree(G: PatternGroup, eta) -> int:
    """chi^eta(1) = q**corank(eta)."""
    return G.field.q ** G.corank(eta)


class CharacterEvaluator:
    """chi^eta as a reusable evaluator over many superclass representatives.

    Precomputes corank(eta) and the eta-filtered chain lists, so a single
    value costs O(chains through supp(eta)) plus a small solve when the mesh
    matrix is nonzero.
    """

    def __init__(self, G: PatternGroup, eta):
        self.G = G
        self.eta = eta = G._check_like(eta)
        self.corank = G.corank(eta)
        J, F = G.J, G.field
        self._a_terms = []  # (a-slot, phi-slot, coefficient)
        self._b_terms = []
        for ab, bc, ac in J.chain3_idx:
            e = eta[ac]
            if e:
                self._a_terms.append((ab, bc, e))
                self._b_terms.append((bc, ab, e))
        self._m_terms = []  # (row, col, phi-slot, coefficient)
        for ab, bc, cd, ad in J.chain4_idx:
            e = eta[ad]
            if e:
                self._m_terms.append((ab, cd, bc, e))
        # Fixed submatrix frame for the nonzero-mesh-matrix branch: every
        # possibly-nonzero entry of M lives at these row/column slots, so the
        # small system below never changes shape for a given eta.
        self._m_rows = sorted({r for r, _, _, _ in self._m_terms})
        self._m_cols = sorted({c for _, c, _, _ in self._m_terms})
        self._m_row_set = set(self._m_rows)
        self._m_col_set = set(self._m_cols)
        row_pos = {r: k for k, r in enumerate(self._m_rows)}
        col_pos = {c: k for k, c in enumerate(self._m_cols)}
        self._m_pos = [(row_pos[r], col_pos[c]) for r, c, _, _ in self._m_terms]

    def value(self, phi) -> CharValue:
        G, F, eta = self.G, self.G.field, self.eta
        phi = G._check_like(phi)
        a = {}
        for tgt, src, coeff in self._a_terms:
            v = phi[src]
            if v:
                a[tgt] = F.add(a.get(tgt, 0), F.mul(v, coeff))
        b = {}
        for tgt, src, coeff in self._b_terms:
            v = phi[src]
            if v:
                b[tgt] = F.add(b.get(tgt, 0), F.mul(v, coeff))
        m = [F.mul(phi[src], coeff) if phi[src] else 0 for _, _, src, coeff in self._m_terms]
        theta_arg = F.dot(phi, eta)
        if not any(m):
            # M = 0: meshed iff a = 0 and b = 0, and then b0 = 0.
            if any(a.values()) or any(b.values()):
                return CharValue.zero()
            return CharValue.of(self.corank, F.trace(theta_arg), F.p)
        return self._value_hard(m, a, b, theta_arg)

    def _value_hard(self, m_vals, a, b, theta_arg) -> CharValue:
        """The nonzero-mesh-matrix branch: one small row reduction decides
        solvability, the particular solution, the rank and the nullspace.

        Zero rows of M force the matching entries of a to vanish; standard
        basis vectors at zero columns lie in the nullspace, so b must vanish
        off the fixed column frame too.
        """
        F = self.G.field
        if any(v and t not in self._m_row_set for t, v in a.items()):
            return CharValue.zero()
        if any(v and t not in self._m_col_set for t, v in b.items()):
            return CharValue.zero()
        ncols = len(self._m_cols)
        rows = [[0] * (ncols + 1) for _ in self._m_rows]
        for (ri, ci), v in zip(self._m_pos, m_vals):
            rows[ri][ci] = v
        for ri, t in enumerate(self._m_rows):
            rows[ri][ncols] = F.neg(a.get(t, 0))
        R, pivots = _rref(F, rows, ncols + 1)
        if pivots and pivots[-1] == ncols:
            return CharValue.zero()  # M x = -a is inconsistent
        b_active = [b.get(t, 0) for t in self._m_cols]
        pivot_set = set(pivots)
        for free in range(ncols):
            if free in pivot_set:
                continue
            acc = b_active[free]
            for k, pc in enumerate(pivots):
                if R[k][free] and b_active[pc]:
                    acc = F.sub(acc, F.mul(R[k][free], b_active[pc]))
            if acc:
                return CharValue.zero()  # b not perpendicular to the nullspace
        r = len(pivots)
        if self.corank < r:
            raise InternalInvariantViolation("rank of the mesh matrix exceeds the corank")
        dot = 0
        for k, pc in enumerate(pivots):
            if R[k][ncols] and b_active[pc]:
                dot = F.add(dot, F.mul(R[k][ncols], b_active[pc]))
        zeta = F.trace(F.add(dot, theta_arg))
        return CharValue.of(self.corank - r, zeta, F.p)

    # -- block evaluation -------------------------------------------------

    def value_block(self, digits: np.ndarray):
        """Values over a block of superclass representatives.

        ``digits`` is a (count, |J|) integer array of packed functionals.
        Returns (is_zero, q_exp, zeta_exp) arrays.  Prime fields take a
        vectorized path for the (typical) rows whose mesh matrix vanishes.
        """
        G, F = self.G, self.G.field
        count = len(digits)
        if F.r != 1:
            out_zero = np.empty(count, dtype=bool)
            out_q = np.zeros(count, dtype=np.int64)
            out_z = np.zeros(count, dtype=np.int64)
            for k in range(count):
                cv = self.value(tuple(int(v) for v in digits[k]))
                out_zero[k] = cv.is_zero
                out_q[k] = cv.q_exp
                out_z[k] = cv.zeta_exp
            return out_zero, out_q, out_z

        p = F.p
        eta_vec = np.array(self.eta, dtype=np.int64)
        zdot = (digits @ eta_vec) % p
        a_cols = []  # (target slot, accumulated values mod p)
        a_ok = np.ones(count, dtype=bool)
        for tgt, src, coeff in _grouped(self._a_terms):
            acc = np.zeros(count, dtype=np.int64)
            for s, c in zip(src, coeff):
                acc += c * digits[:, s]
            acc %= p
            a_cols.append((tgt, acc))
            a_ok &= acc == 0
        b_cols = []
        b_ok = np.ones(count, dtype=bool)
        for tgt, src, coeff in _grouped(self._b_terms):
            acc = np.zeros(count, dtype=np.int64)
            for s, c in zip(src, coeff):
                acc += c * digits[:, s]
            acc %= p
            b_cols.append((tgt, acc))
            b_ok &= acc == 0
        if self._m_terms:
            m_vals = np.stack(
                [(coeff * digits[:, src]) % p for _, _, src, coeff in self._m_terms], axis=1
            )
            easy = ~m_vals.any(axis=1)
        else:
            easy = np.ones(count, dtype=bool)
        out_zero = np.empty(count, dtype=bool)
        out_q = np.zeros(count, dtype=np.int64)
        out_z = np.zeros(count, dtype=np.int64)
        meshed = easy & a_ok & b_ok
        out_zero[easy] = ~meshed[easy]
        out_q[meshed] = self.corank
        out_z[meshed] = zdot[meshed]
        for k in np.nonzero(~easy)[0]:
            a = {tgt: int(col[k]) for tgt, col in a_cols if col[k]}
            b = {tgt: int(col[k]) for tgt, col in b_cols if col[k]}
            m = [int(v) for v in m_vals[k]]
            cv = self._value_hard(m, a, b, int(zdot[k]))
            out_zero[k] = cv.is_zero
            out_q[k] = cv.q_exp
            out_z[k] = cv.zeta_exp
        return out_zero, out_q, out_z


def _grouped(terms):
    """Group (tgt, src, coeff) terms by target slot."""
    by_tgt: dict[int, tuple[list, list]] = {}
    for tgt, src, coeff in terms:
        srcs, coeffs = by_tgt.setdefault(tgt, ([], []))
        srcs.append(src)
        coeffs.append(coeff)
    return [(tgt, srcs, coeffs) for tgt, (srcs, coeffs) in sorted(by_tgt.items())]


# ---------------------------------------------------------------------------
# closed-form specializations


def _heisenberg_n(G: PatternGroup) -> int:
    n = G.J.n
    expected = {(1, j) for j in range(2, n + 1)} | {(i, n) for i in range(2, n)}
    if G.J.pairs != frozenset(expected):
        raise ShapeMismatch("closed set is not the Heisenberg pattern (top row and last column)")
    return n


def value_heisenberg(G: PatternGroup, eta, phi) -> CharValue:
    """chi^eta(x_phi) for the Heisenberg pattern: nonzero entries confined to
    the top row and last column, everything indexed by the corner (1, n)."""
    n = _heisenberg_n(G)
    F = G.field
    corner = G.J.index[(1, n)]
    if eta[corner] == 0:
        return CharValue.of(0, F.trace(F.dot(phi, eta)), F.p)
    if any(v for k, v in enumerate(phi) if k != corner):
        return CharValue.zero()
    return CharValue.of(n - 2, F.trace(F.mul(phi[corner], eta[corner])), F.p)


def value_un(G: PatternGroup, eta, phi) -> CharValue:
    """chi^eta(x_phi) on the full triangular group, for monomial representatives.

    Meshing reduces to two support conditions, and the q-exponent counts, for
    each (i, l) in supp(eta), the interior positions i < j < k < l minus the
    support of phi strictly inside that interval.
    """
    if not G.J.is_full_triangular():
        raise ShapeMismatch("closed set is not the full triangular position set")
    if not is_monomial(G.J, eta) or not is_monomial(G.J, phi):
        raise NonMonomialRepresentative("representatives must be monomial in rows and columns")
    F = G.field
    supp_eta = support(G.J, eta)
    supp_phi = support(G.J, phi)
    # In a shared row, eta must sit weakly left of phi; in a shared column,
    # weakly below: each strict violation leaves a nonzero entry in b or a.
    for i, j in supp_phi:
        for ii, l in supp_eta:
            if i == ii and j < l:
                return CharValue.zero()
    for j, k in supp_phi:
        for i, kk in supp_eta:
            if k == kk and i < j:
                return CharValue.zero()
    exponent = 0
    for i, l in supp_eta:
        exponent += l - i - 1
        exponent -= sum(1 for j, k in supp_phi if i < j and k < l)
    if exponent < 0:
        raise InternalInvariantViolation("negative exponent in the monomial formula")
    return CharValue.of(exponent, F.trace(F.dot(phi, eta)), F.p)


def value_no4chain(G: PatternGroup, eta, phi) -> CharValue:
    """chi^eta(x_phi) when the poset has no 4-chains.

    The mesh matrix vanishes identically, so the value is nonzero exactly
    when a = b = 0, and the q-exponent is the corank: a sum over middle
    elements j of the rank of the block of eta-values eta_ik with
    (i, j) and (j, k) in J.
    """
    if G.J.has_4chain:
        raise ShapeMismatch("poset has a 4-chain")
    F = G.field
    md = mesh_data(G, phi, eta)
    if any(md.a) or any(md.b):
        return CharValue.zero()
    middles = sorted({b for _, b, _ in G.J.chains3})
    exponent = 0
    for j in middles:
        rows = sorted({a for a, bb, _ in G.J.chains3 if bb == j})
        cols = sorted({c for _, bb, c in G.J.chains3 if bb == j})
        block = [[eta[G.J.index[(i, k)]] for k in cols] for i in rows]
        exponent += rank(FqMatrix.from_rows(F, block, len(cols)))
    return CharValue.of(exponent, F.trace(F.dot(phi, eta)), F.p)


# ---------------------------------------------------------------------------
# irreducibility


def ann_spaces(G: PatternGroup, eta):
    """Echelonized bases of the right and left annihilator spaces of eta.

    ann_R = all rho with lambda_eta(X_phi X_rho) = 0 for every phi, which is
    the nullspace of the dual right action matrix; ann_L likewise on the
    other side.
    """
    basis_r = nullspace_basis(G.dual_right_action_matrix(eta))
    basis_l = nullspace_basis(G.dual_left_action_matrix(eta))
    return basis_r, basis_l


def is_irreducible(G: PatternGroup, eta) -> bool:
    """True iff ann_R(eta) + ann_L(eta) fills the whole functional space."""
    basis_r, basis_l = ann_spaces(G, eta)
    d = len(G.J)
    if not basis_r and not basis_l:
        return d == 0
    stacked = FqMatrix.from_rows(G.field, list(basis_r) + list(basis_l), d)
    return rank(stacked) == d


def superclass_is_class_sufficient(G: PatternGroup, phi) -> bool:
    """No 4-chain hits supp(phi) at both ends: the superclass of x_phi is then
    a single conjugacy class.  (Sufficient, not necessary.)"""
    supp = set(support(G.J, phi))
    return not any(
        ((i, j) in supp and (k, l) in supp) for i, j, k, l in G.J.chains4
    )


def irreducible_sufficient(G: PatternGroup, eta) -> bool:
    """No 4-chain (i,j,k,l) with (i,k) and (j,l) in supp(eta): chi^eta is then
    irreducible.  (Sufficient, not necessary.)"""
    supp = set(support(G.J, eta))
    return not any(
        ((i, k) in supp and (j, l) in supp) for i, j, k, l in G.J.chains4
    )


def full_un_irreducible(G: PatternGroup, eta) -> bool:
    """On the full triangular group with monomial eta the sufficient condition
    is also necessary."""
    if not G.J.is_full_triangular():
        raise ShapeMismatch("closed set is not the full triangular position set")
    if not is_monomial(G.J, eta):
        raise NonMonomialRepresentative("eta must be monomial in rows and columns")
    return irreducible_sufficient(G, eta)
