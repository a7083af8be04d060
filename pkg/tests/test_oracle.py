"""Brute-force superclasses, orbit sums, inner products, and axiom checks."""

import numpy as np
import pytest

from superchar.catalog import (
    class_counterexample_poset,
    full_triangular,
    heisenberg,
    sixteen_group,
    SIXTEEN_CLASS_MEMBERS,
    SIXTEEN_TABLE,
)
from superchar.core import PatternGroup
from superchar.errors import SizeCapExceeded
from superchar.formula import CharacterEvaluator
from superchar.gf import CycInt, Fq, theta
from superchar.oracle import Oracle, full_check
from superchar.poset import functional, validate_closed

F2 = Fq.of(2)
F3 = Fq.of(3)


def test_trivial_supercharacter_is_constant_one():
    G = PatternGroup(heisenberg(4), F2)
    o = Oracle(G)
    values = o.supercharacter(G.zero())
    assert all(v == CycInt.integer(2, 1) for v in values.values())


def test_oracle_matches_formula_heisenberg3_q3():
    G = PatternGroup(heisenberg(3), F3)
    o = Oracle(G)
    for ch in G.all_coorbit_reps():
        ev = CharacterEvaluator(G, ch.rep)
        for rep, cyc in o.supercharacter(ch.rep).items():
            assert cyc == ev.value(rep).to_cyc(F3)


def test_sixteen_group_chi_z_row_matches_printed_table():
    alg = sixteen_group()
    o = Oracle(alg)
    part = o.superclass_partition()
    values = o.supercharacter((0, 0, 0, 1))  # the degree-4 character
    for name, member in SIXTEEN_CLASS_MEMBERS.items():
        rep = part.reps[part.class_of(member)]
        expected = SIXTEEN_TABLE["chi_z"][name]
        assert values[rep] == CycInt.integer(2, expected)


def test_conjugacy_classes_abelian_are_singletons():
    J = validate_closed(4, {(1, 2), (3, 4)})  # no chains: abelian group
    o = Oracle(PatternGroup(J, F3))
    conj = o.conjugacy_partition()
    assert all(s == 1 for s in conj.sizes)
    assert len(conj) == 9  # q ** |J|


def test_class_counterexample_orbit_is_a_single_class():
    J = class_counterexample_poset()
    G = PatternGroup(J, F2)
    phi = functional(J, F2, {(1, 2): 1, (2, 4): 1, (3, 5): 1})
    o = Oracle(G)
    sc = o.superclass_partition()
    conj = o.conjugacy_partition()
    assert sc.sizes[sc.class_of(phi)] == conj.sizes[conj.class_of(phi)]


def test_heisenberg4_q2_superclasses_are_conjugacy_classes():
    G = PatternGroup(heisenberg(4), F2)
    o = Oracle(G)
    sc = o.superclass_partition()
    conj = o.conjugacy_partition()
    assert len(conj) == 17  # q + (q^(2n-4) - 1) center cosets
    assert np.array_equal(sc.canonical_codes(), conj.canonical_codes())


def test_inner_product_examples():
    alg = sixteen_group()
    o = Oracle(alg)
    ones = [CycInt.integer(2, 1)] * 16
    acc, order = o.inner_product(ones, ones)
    assert acc == CycInt.integer(2, 16) and order == 16  # <1, 1> = 1

    part = o.superclass_partition()
    chi_z = o.supercharacter((0, 0, 0, 1))
    dense = [chi_z[part.reps[part.class_of(part.decode(c))]] for c in range(16)]
    acc, order = o.inner_product(dense, dense)
    assert acc == CycInt.integer(2, 32)  # <chi_z, chi_z> = 2


def test_supercharacters_are_orthogonal_small():
    G = PatternGroup(full_triangular(3), F3)
    o = Oracle(G)
    part = o.superclass_partition()
    chars = G.all_coorbit_reps()
    dense_rows = []
    for ch in chars:
        table = o.supercharacter(ch.rep)
        dense_rows.append(
            [table[part.reps[part.class_of(part.decode(c))]] for c in range(G.order())]
        )
    for a, ch_a in enumerate(chars):
        for b in range(len(chars)):
            acc, order = o.inner_product(dense_rows[a], dense_rows[b])
            if a == b:
                c = G.corank(ch_a.rep)
                expected = order * F3.q ** (2 * c) // G.coorbit(ch_a.rep).size
                assert acc == CycInt.integer(3, expected)
            else:
                assert not acc


def test_verify_axioms_passes_on_small_corpus():
    for J, q in (
        (heisenberg(4), 2),
        (heisenberg(3), 3),
        (full_triangular(3), 2),
        (class_counterexample_poset(), 2),
    ):
        o = Oracle(PatternGroup(J, Fq.of(q)))
        report = o.verify_axioms()
        assert report.all_ok, list(report.lines())


def test_full_u3_counts():
    o = Oracle(PatternGroup(full_triangular(3), F2))
    assert len(o.superclass_partition()) == 5
    assert len(o.coorbit_partition()) == 5


def test_oracle_cap():
    with pytest.raises(SizeCapExceeded):
        Oracle(PatternGroup(full_triangular(4), F3), cap=100)


def test_fourier_completeness_and_regular_grouping():
    for J, q in ((heisenberg(3), 3), (full_triangular(3), 2)):
        F = Fq.of(q)
        G = PatternGroup(J, F)
        o = Oracle(G)
        d = len(J)
        part = o.superclass_partition()
        # sum over all functionals of theta(lambda_eta(X_phi)) is |G| at phi = 0,
        # and 0 elsewhere
        for k, phi in enumerate(part.reps):
            total = CycInt.zero(F.p)
            for code in range(G.order()):
                mu = part.decode(code)
                total = total + theta(F, F.dot(mu, phi)).to_cyc(F)
            expected = CycInt.integer(F.p, G.order()) if not any(phi) else CycInt.zero(F.p)
            assert total == expected
        # the same identity grouped over co-orbits with weights |O^eta| / |lambda U|
        for k, phi in enumerate(part.reps):
            total = CycInt.zero(F.p)
            for ch in G.all_coorbit_reps():
                weight = ch.size // o.right_coorbit_size(ch.rep)
                val = o.supercharacter(ch.rep)[phi]
                total = total + val * weight
            expected = CycInt.integer(F.p, G.order()) if not any(phi) else CycInt.zero(F.p)
            assert total == expected


def test_full_check_passes_on_pattern_and_algebra():
    rep = full_check(PatternGroup(heisenberg(4), F3))
    assert rep.ok and rep.classes == 83
    rep = full_check(sixteen_group())
    assert rep.ok and rep.classes == 7
