"""Pytest test suite for the connection module."""

from fractions import Fraction

import numpy as np
import pytest

from nkverify import connection, manifold, sl2
from nkverify.connection import (
    PRINTED_LEVI_CIVITA,
    E1,
    E2,
    E3,
    F1,
    F2,
    F3,
)
from nkverify.manifold import FRAME, FrameCoeffs, NKPoint


@pytest.mark.parametrize("pair", list(PRINTED_LEVI_CIVITA))
def test_koszul_connection_matches_printed_table(pair):
    """Confirm that every printed Levi-Civita entry agrees with the Koszul formula."""
    assert connection.koszul_connection(*pair) == PRINTED_LEVI_CIVITA[pair]


def test_gram_matrix_matches_printed_metric():
    """Confirm that the Gram matrix is symmetric and matches the printed metric."""
    gram = connection.gram_matrix()
    for (m, i) in enumerate(FRAME):
        for (n, j) in enumerate(FRAME):
            assert gram[m][n] == gram[n][m]
            assert gram[m][n] == connection.printed_metric(i, j)
    assert gram[0][0] == Fraction(2, 3)
    assert gram[2][5] == Fraction(1, 3)


def test_lie_bracket_values():
    """Confirm the brackets that follow from the matrix commutator."""
    assert connection.lie_bracket(E1, E2) == connection.combo(E3=2)
    assert connection.lie_bracket(E2, E3) == connection.combo(E1=-2)
    assert connection.lie_bracket(F2, F3) == connection.combo(F1=-2)
    assert connection.lie_bracket(E1, F2) == connection.ZERO


def test_bracket_ledger_flags_one_line():
    """Confirm that exactly the printed [E2, E3] line disagrees with the commutator."""
    discrepancies = connection.bracket_discrepancies()
    assert [entry.entry for entry in discrepancies] == ["[,](E2,E3)"]
    assert discrepancies[0].derived == str(connection.combo(E1=-2))


def test_j_ledger_flags_second_factor():
    """Confirm that the printed J lines disagree only on the F fields."""
    discrepancies = connection.j_table_discrepancies()
    assert sorted(entry.entry for entry in discrepancies) == ["JF1", "JF2", "JF3"]


def test_nabla_j_table_has_one_blank_entry():
    """Confirm that the printed nabla J entries agree and one entry is blank."""
    (worst, discrepancies) = connection.compare_table(
        "nablaJ", dict(connection.PRINTED_NABLA_J), connection.nabla_J_frame
    )
    assert worst == 0
    assert len(discrepancies) == 1
    assert discrepancies[0].entry == "nablaJ(E1,F1)"
    assert discrepancies[0].printed == "blank"


def test_nabla_j_on_first_pair_is_derived():
    """Confirm the derived value of the blank nabla J entry."""
    assert connection.nabla_J_frame(E1, F1) == connection.ZERO
    assert connection.nabla_J_frame(F1, E1) == connection.ZERO


@pytest.mark.parametrize(
    "triple",
    [(E1, E2, E2), (E1, F1, E1), (E2, F3, F2), (E3, E1, F3), (F1, F2, F2)],
)
def test_frame_curvature_matches_closed_form(triple):
    """Confirm the frame curvature against the closed form at the identity."""
    fields = [manifold.frame_field(index, NKPoint.identity()) for index in triple]
    assert connection.frame_curvature(*triple) == manifold.curvature(
        *fields
    ).coefficients()


def test_frame_nabla_g_matches_closed_form():
    """Confirm the Leibniz rule for nabla G against the closed form."""
    identity = NKPoint.identity()
    for triple in [(E1, E2, F3), (F2, E3, F1), (E3, F3, E1)]:
        fields = [manifold.frame_field(index, identity) for index in triple]
        assert connection.frame_nabla_G(*triple) == manifold.nabla_G(
            *fields
        ).coefficients()


@pytest.mark.parametrize("pair", [(E1, E2), (E3, F1), (F2, F3), (F1, E3)])
def test_flow_connection_matches_koszul(pair):
    """Confirm that differentiating along flows recovers the Koszul connection."""
    rng = np.random.default_rng(7)
    point = manifold.random_point(rng)
    flowed = connection.flow_connection(*pair, point)
    difference = flowed - connection.koszul_connection(*pair)
    assert difference.max_abs() <= 1e-6  # noqa: PLR2004


def test_solve_linear_exact_and_singular():
    """Confirm exact elimination and the detection of a singular system."""
    solution = connection.solve_linear(
        [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]],
        [Fraction(3), Fraction(5)],
    )
    assert solution == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(sl2.SingularMatrixError):
        connection.solve_linear([[1, 2], [2, 4]], [1, 1])


def test_frame_metric_agrees_with_nk_metric():
    """Confirm that pairing coefficients matches the metric of the fields."""
    a = connection.combo(E1=1, F3=2)
    b = connection.combo(F1=3, E3=-1)
    identity = NKPoint.identity()
    assert connection.frame_metric(a, b) == manifold.nk_metric(
        a.to_tangent(identity), b.to_tangent(identity)
    )
    assert connection.frame_metric(FrameCoeffs.zero(), a) == 0


@pytest.mark.parametrize(
    "pair,expected",
    [
        ((E2, E1), connection.combo(E3=-1)),
        ((E2, F1), connection.combo(E3=Fraction(1, 3), F3=Fraction(-1, 3))),
        ((F1, F1), connection.ZERO),
    ],
)
def test_levi_civita_frame_entries(pair, expected):
    """Confirm the listed entries of the connection table."""
    assert connection.levi_civita_frame(*pair) == expected
    assert connection.levi_civita_frame(*pair) == connection.koszul_connection(*pair)


def test_levi_civita_frame_is_torsion_free():
    """Confirm nabla_X Y - nabla_Y X = [X, Y] on every pair of the table."""
    for i in FRAME:
        for j in FRAME:
            difference = (
                connection.levi_civita_frame(i, j)
                - connection.levi_civita_frame(j, i)
                - connection.lie_bracket(i, j)
            )
            assert difference == connection.ZERO
