"""Pytest test suite for the frame module."""

from fractions import Fraction

import pytest
import sympy

from nkverify import frame, manifold
from nkverify.frame import TWO_THIRDS, unit, vector


@pytest.mark.parametrize(
    "i,j,expected",
    [
        (1, 3, unit(5)),
        (3, 1, vector(e5=-1)),
        (2, 3, vector(e6=-1)),
        (1, 5, vector(e3=TWO_THIRDS)),
        (3, 5, vector(e1=-TWO_THIRDS)),
        (4, 6, vector(e1=TWO_THIRDS)),
        (5, 5, frame.ZERO),
        (5, 6, frame.ZERO),
    ],
)
def test_g_mult_table(i, j, expected):
    """Confirm entries of the derived G table."""
    assert frame.g_mult_table(i, j) == expected


def test_g_mult_table_refuses_other_indices():
    """Confirm that indices outside of 1..6 are refused."""
    with pytest.raises(ValueError):
        frame.g_mult_table(0, 7)


def test_g_table_consistency():
    """Confirm that the derived G table satisfies every identity."""
    assert frame.g_table_consistency() == []


def test_g_table_ledger_flags_one_entry():
    """Confirm that the printed G table disagrees only at G(e3, e5)."""
    discrepancies = frame.g_table_discrepancies()
    assert [entry.entry for entry in discrepancies] == ["G(e3,e5)"]
    assert discrepancies[0].printed == "(2/3)e1"
    assert discrepancies[0].derived == "(-2/3)e1"


def test_j_and_p_tables():
    """Confirm that J squares to -1 and P to 1 on the adapted frame."""
    for i in frame.INDICES:
        assert frame.frame_J(frame.frame_J(unit(i))) == vector(**{f"e{i}": -1})
    for i in (1, 2, 3, 4):
        assert frame.frame_P(frame.frame_P(unit(i))) == unit(i)
    with pytest.raises(ValueError):
        frame.frame_P(unit(5))


def test_adapted_metric_and_render():
    """Confirm the metric of the orthogonal frame and the rendering of vectors."""
    assert frame.adapted_metric(unit(5), unit(5)) == -TWO_THIRDS
    assert frame.adapted_metric(unit(1), unit(2)) == 0
    assert frame.render(vector(e1=2, e6=-1)) == "(2)e1 + (-1)e6"
    assert frame.render(frame.ZERO) == "0"


def test_realized_frame_matches_tables():
    """Confirm that the frame built from a unit vector reproduces every table."""
    v = frame.hyperbolic_unit_vector()
    assert manifold.nk_metric(v, v) == 1
    realized = frame.realize_adapted_frame(v)
    assert realized[1] == v
    assert frame.realized_discrepancies(realized) == []


def test_connection_table():
    """Confirm that the connection table is metric compatible for any coefficients."""
    assert frame.metric_compatibility() == []
    c = frame.FrameConnection(a1=1, a2=Fraction(1, 2), a3=0, b1=-1)
    assert frame.metric_compatibility(c) == []
    assert frame.frame_connection_table(1, 1, c) == vector(e2=1, e5=Fraction(1, 2))
    with pytest.raises(ValueError):
        frame.frame_connection_table(3, 1)


def test_curvature_defect_matches_first_curvature_equation():
    """Confirm that the tangential curvature defect is the first curvature equation."""
    defect = frame.frame_curvature_defect(1)[1]
    constrained = defect.subs(frame.a3, sympy.sqrt(sympy.Rational(7, 12) - frame.a2**2))
    (first, _, _) = frame.curvature_consistency_symbolic()
    assert sympy.simplify(sympy.expand(constrained + first / 3)) == 0


def test_closed_curvature_on_tangent_plane():
    """Confirm that the closed form gives R(e1, e2)e1 = (4/3)e2."""
    assert frame.closed_curvature(1) == vector(e2=sympy.Rational(4, 3))


@pytest.mark.parametrize(
    "curvature,expected",
    [
        (Fraction(-5, 9), Fraction(7, 12)),
        (Fraction(-4, 3), Fraction(0)),
        (0, Fraction(1)),
    ],
)
def test_gauss_constraint(curvature, expected):
    """Confirm the value of a2^2 + a3^2 forced by the Gaussian curvature."""
    assert frame.gauss_constraint(curvature) == expected


def test_gauss_constraint_float():
    """Confirm the floating point form of the Gauss constraint."""
    assert frame.gauss_constraint(-5.0 / 9.0) == pytest.approx(7.0 / 12.0)


def test_curvature_dichotomy():
    """Confirm that -4/3 and -5/9 are the only constant curvatures."""
    assert frame.curvature_dichotomy() == [sympy.Rational(-4, 3), sympy.Rational(-5, 9)]


def test_curvature_consistency():
    """Confirm the curvature equations at a zero connection and on their symbolic form."""
    (first, second, third) = frame.curvature_consistency(
        frame.FrameConnection(), frame.FrameDerivatives()
    )
    assert first == Fraction(5, 3)
    assert second == 0
    assert third == 0
    symbolic = frame.curvature_consistency_symbolic()
    assert symbolic[0].subs({frame.a1: 0, frame.b1: 0}).free_symbols
    assert len(symbolic) == 3  # noqa: PLR2004


def test_p_normal_signature_note():
    """Confirm that the note names the negative directions."""
    assert "e5 and e6" in frame.p_normal_signature_note()
