"""The bundled corpus: named closed sets and algebra presentations used by
the command-line samples and the verification suite."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import StructureAlgebra, constants_from_matrices
from .gf import Fq
from .poset import ClosedSet, close_covers, validate_closed


def heisenberg_pairs(n: int) -> set:
    """Nonzero entries confined to the top row and the last column."""
    return {(1, j) for j in range(2, n + 1)} | {(i, n) for i in range(2, n)}


def full_pairs(n: int) -> set:
    return {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}


def heisenberg(n: int) -> ClosedSet:
    return validate_closed(n, heisenberg_pairs(n))


def full_triangular(n: int) -> ClosedSet:
    return validate_closed(n, full_pairs(n))


def orbit_shape_poset() -> ClosedSet:
    """n = 5: 1, 2 below 3, 4 below 5; orbit sizes here depend on values,
    not just on the support shape."""
    return close_covers(5, {(1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)})


def coorbit_shape_poset() -> ClosedSet:
    """n = 5: 1, 2 below 3 below 4, 5; the dual-side analogue of the above."""
    return close_covers(5, {(1, 3), (2, 3), (3, 4), (3, 5)})


def class_counterexample_poset() -> ClosedSet:
    """n = 5 chain-with-diamond: 1 < 2 < {3, 4} < 5."""
    return close_covers(5, {(1, 2), (2, 3), (2, 4), (3, 5), (4, 5)})


def annihilator_example_poset() -> ClosedSet:
    """n = 5: 1 < 2 < {3, 4}, 4 < 5."""
    return close_covers(5, {(1, 2), (2, 3), (2, 4), (4, 5)})


def determinant_poset() -> ClosedSet:
    """n = 6: {1, 2} < 3 < {4, 5}, 5 < 6; irreducibility on it depends on a
    2x2 determinant in the character label, not just its support."""
    return close_covers(6, {(1, 3), (2, 3), (3, 4), (3, 5), (5, 6)})


def two_step_poset() -> ClosedSet:
    """n = 5 two-step block radical: 1 < {2, 3} < {4, 5}."""
    return close_covers(5, {(1, 2), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5)})


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    J: ClosedSet
    qs: tuple[int, ...] = (2, 3)


def corpus() -> list[CorpusEntry]:
    entries = [CorpusEntry(f"heisenberg{n}", heisenberg(n)) for n in (3, 4, 5)]
    entries += [CorpusEntry(f"full_u{n}", full_triangular(n)) for n in (3, 4)]
    entries += [
        CorpusEntry("orbit_shape", orbit_shape_poset()),
        CorpusEntry("coorbit_shape", coorbit_shape_poset()),
        CorpusEntry("class_counterexample", class_counterexample_poset()),
        CorpusEntry("annihilator_example", annihilator_example_poset()),
        CorpusEntry("determinant", determinant_poset()),
        CorpusEntry("two_step", two_step_poset()),
    ]
    return entries


def semidirect_basis(n: int) -> list[dict]:
    """Basis matrices of the truncated-polynomial group acting on a vector
    column: shifts N**(i-1) on the first n-1 coordinates (i = 2..n-1) plus
    the single entries (j, n) for j = 1..n-1."""
    basis = []
    for i in range(2, n):
        basis.append({(r, r + i - 1): 1 for r in range(1, n - i + 1)})
    for j in range(1, n):
        basis.append({(j, n): 1})
    return basis


def semidirect_algebra(n: int, field: Fq) -> StructureAlgebra:
    basis = semidirect_basis(n)
    constants = constants_from_matrices(n, field, basis)
    return StructureAlgebra(len(basis), field, constants)


# ---------------------------------------------------------------------------
# the 16-element algebra group inside U_4(F_2)


def sixteen_group_basis() -> list[dict]:
    """Basis of the span {a(E12+E23+E34) + b E13 + c E24 + d E14}."""
    return [
        {(1, 2): 1, (2, 3): 1, (3, 4): 1},
        {(1, 3): 1},
        {(2, 4): 1},
        {(1, 4): 1},
    ]


def sixteen_group() -> StructureAlgebra:
    field = Fq.of(2)
    constants = constants_from_matrices(4, field, sixteen_group_basis())
    return StructureAlgebra(4, field, constants)


# The supercharacter table of the 16-element group, keyed by labelled class
# and character representatives in (a, b, c, d) coordinates.  Entries are
# plain integers (p = 2).  Classes are identified by a known member; the
# column order here is one, z, lr, x, r, l, xr.
SIXTEEN_CLASS_MEMBERS = {
    "one": (0, 0, 0, 0),
    "z": (0, 0, 0, 1),
    "lr": (0, 1, 1, 0),
    "x": (1, 0, 0, 0),
    "r": (0, 0, 1, 0),
    "l": (0, 1, 0, 0),
    "xr": (1, 0, 1, 1),
}

SIXTEEN_CLASS_SIZES = {
    "one": 1,
    "z": 1,
    "lr": 2,
    "x": 4,
    "r": 2,
    "l": 2,
    "xr": 4,
}

SIXTEEN_TABLE = {
    "chi_1": {"one": 1, "z": 1, "lr": 1, "x": 1, "r": 1, "l": 1, "xr": 1},
    "chi_x": {"one": 1, "z": 1, "lr": 1, "x": -1, "r": 1, "l": 1, "xr": -1},
    "chi_lr": {"one": 1, "z": 1, "lr": 1, "x": 1, "r": -1, "l": -1, "xr": -1},
    "chi_rxl": {"one": 1, "z": 1, "lr": 1, "x": -1, "r": -1, "l": -1, "xr": 1},
    "chi_r": {"one": 2, "z": 2, "lr": -2, "x": 0, "r": -2, "l": 2, "xr": 0},
    "chi_l": {"one": 2, "z": 2, "lr": -2, "x": 0, "r": 2, "l": -2, "xr": 0},
    "chi_z": {"one": 4, "z": -4, "lr": 0, "x": 0, "r": 0, "l": 0, "xr": 0},
}
