from fractions import Fraction
from random import Random

import pytest

from graphcurves.graphs import CATALOG_NAMES, catalog_graph
from graphcurves.matrices import adjoint_matrix, conj, mat_close
from graphcurves.scalars import EXACT, FLOAT
from graphcurves.framings import Framing, GaugeTransform, apply_gauge, zero_section, flat_linearization
from graphcurves.higgs import (
    HiggsField,
    assemble_higgs_constraints,
    gauge_transform_higgs,
    higgs_from_edge_residues,
    higgs_residual,
    higgs_space,
    random_higgs_field,
    residue_matrix,
    residue_parameterization,
    residue_parameterization_matrix,
)

from helpers import minor_rank


GENERIC_DIM = {name: 3 * catalog_graph(name).genus - 3 for name in CATALOG_NAMES}


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_higgs_dimension_generic(name):
    g = catalog_graph(name)
    for seed in range(3):
        sp = higgs_space(Framing.random(g, seed=seed))
        assert sp.dim == GENERIC_DIM[name]
        assert sp.rank == 9 * g.genus - 9


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_higgs_dimension_identity_framing(name):
    # at the fully trivial framing the three matrix entries decouple,
    # so the space is three copies of the weight-one section space
    g = catalog_graph(name)
    sp = higgs_space(Framing.identity(g))
    assert sp.dim == 3 * g.genus


def test_higgs_ranks_against_minor_oracle():
    g = catalog_graph("theta")
    rows = assemble_higgs_constraints(Framing.random(g, seed=1))
    assert len(rows) == 9 and len(rows[0]) == 12
    assert minor_rank(rows) == 9
    rows = assemble_higgs_constraints(Framing.identity(g))
    assert minor_rank(rows) == 6


def test_basis_fields_satisfy_constraints_exactly():
    for name in CATALOG_NAMES:
        g = catalog_graph(name)
        a = Framing.random(g, seed=5)
        for phi in higgs_space(a).basis:
            assert higgs_residual(phi, a) == 0


def test_float_domain_dimension():
    g = catalog_graph("k4")
    a = Framing.random(g, seed=5, domain=FLOAT)
    sp = higgs_space(a)
    assert sp.dim == 6
    for phi in sp.basis:
        assert higgs_residual(phi, a) < 1e-9


def test_orientation_choice_does_not_change_kernel():
    g = catalog_graph("k4")
    a = Framing.random(g, seed=6)
    low = assemble_higgs_constraints(a, orientation="low")
    high = assemble_higgs_constraints(a, orientation="high")
    for phi in higgs_space(a).basis:
        vec = phi.coefficient_vector()
        for rows in (low, high):
            for row in rows:
                assert sum(c * x for c, x in zip(row, vec)) == 0


def test_residue_matrix_diagonal_example():
    g = catalog_graph("theta")
    vec = [Fraction(1), Fraction(-1), 0, 0, 0, 0] + [Fraction(0)] * 6
    phi = HiggsField.from_coefficient_vector(g, vec)
    assert phi.residue_matrix(0, 0).entries() == (1, 0, 0, -1)
    # residues (1, -1) cancel, so nothing survives at the third point
    assert phi.residue_matrix(0, 2).entries() == (0, 0, 0, 0)
    zero = HiggsField.from_coefficient_vector(g, [Fraction(0)] * 12)
    for v in range(2):
        for k in range(3):
            assert zero.residue_matrix(v, k).entries() == (0, 0, 0, 0)


def test_residue_matrices_are_traceless():
    g = catalog_graph("dumbbell")
    phi = random_higgs_field(Framing.random(g, seed=7), seed=8)
    for v in range(g.vertex_count):
        for k in range(3):
            assert phi.residue_matrix(v, k).trace() == 0


def test_vertex_residue_sum_vanishes():
    # holds for any field, constrained or not: each entry is a
    # differential whose three residues cancel
    g = catalog_graph("k33")
    phi = random_higgs_field(Framing.random(g, seed=9), seed=10)
    for v in range(g.vertex_count):
        total = (phi.residue_matrix(v, 0) + phi.residue_matrix(v, 1)
                 + phi.residue_matrix(v, 2))
        assert total.entries() == (0, 0, 0, 0)


def test_random_field_deterministic_and_constrained():
    g = catalog_graph("prism")
    a = Framing.random(g, seed=11)
    p1 = random_higgs_field(a, seed=3)
    p2 = random_higgs_field(a, seed=3)
    assert p1.coefficient_vector() == p2.coefficient_vector()
    assert higgs_residual(p1, a) == 0
    p3 = random_higgs_field(a, seed=4)
    assert p1.coefficient_vector() != p3.coefficient_vector()


def test_coefficient_vector_round_trip():
    g = catalog_graph("theta")
    phi = random_higgs_field(Framing.random(g, seed=1), seed=2)
    vec = phi.coefficient_vector()
    assert len(vec) == 6 * g.vertex_count
    back = HiggsField.from_coefficient_vector(g, vec)
    assert back.coefficient_vector() == vec


def test_json_round_trip():
    g = catalog_graph("k4")
    phi = random_higgs_field(Framing.random(g, seed=2), seed=5)
    back = HiggsField.from_json(g, phi.to_json(), EXACT)
    assert back.coefficient_vector() == phi.coefficient_vector()


def test_scale_and_add():
    g = catalog_graph("theta")
    a = Framing.random(g, seed=1)
    sp = higgs_space(a)
    phi, psi = sp.basis[0], sp.basis[1]
    combo = phi.scale(Fraction(2)) + psi.scale(Fraction(-3))
    assert higgs_residual(combo, a) == 0


# -- gauge action -------------------------------------------------------


def test_gauge_moves_solutions_to_solutions():
    g = catalog_graph("k4")
    a = Framing.random(g, seed=21)
    u = GaugeTransform.random(g, seed=22)
    ag = apply_gauge(u, a)
    for phi in higgs_space(a).basis:
        phig = gauge_transform_higgs(u, phi)
        assert higgs_residual(phig, ag) == 0


def test_gauge_acts_by_conjugation_on_residues():
    g = catalog_graph("theta")
    a = Framing.random(g, seed=23)
    u = GaugeTransform.random(g, seed=24)
    phi = random_higgs_field(a, seed=25)
    phig = gauge_transform_higgs(u, phi)
    for v in range(g.vertex_count):
        for k in range(3):
            expected = conj(u.matrix(v), phi.residue_matrix(v, k))
            assert phig.residue_matrix(v, k).entries() == expected.entries()


def test_identity_gauge_fixes_fields():
    g = catalog_graph("dumbbell")
    phi = random_higgs_field(Framing.random(g, seed=1), seed=1)
    same = gauge_transform_higgs(GaugeTransform.identity(g), phi)
    assert same.coefficient_vector() == phi.coefficient_vector()


# -- residue parameterization ------------------------------------------


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_parameterization_matches_flat_linearization(name):
    g = catalog_graph(name)
    for seed in (0, 1):
        a = Framing.random(g, seed=seed)
        rep = residue_parameterization(a)
        assert rep.matches_flat_linearization
        assert rep.kernel.dim == 3 * g.genus - 3
        for phi in rep.basis_fields:
            assert higgs_residual(phi, a) == 0


def test_parameterization_matrix_equals_linearization_rows():
    g = catalog_graph("k33")
    a = Framing.random(g, seed=31)
    assert residue_parameterization_matrix(a) == \
        flat_linearization(zero_section(a))


def test_edge_residue_lift():
    g = catalog_graph("theta")
    a = Framing.random(g, seed=32)
    rep = residue_parameterization(a)
    for vec in rep.kernel.basis:
        phi = higgs_from_edge_residues(a, vec)
        assert higgs_residual(phi, a) == 0
