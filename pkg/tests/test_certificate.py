"""Pytest test suite for the certificate module."""

from fractions import Fraction

import pytest
import sympy

from nkverify import certificate
from nkverify.field import Scalar
from nkverify.frame import a2, a3

QUARTER = Fraction(1, 4)
EXPECTED = [
    (Scalar(0, -QUARTER), Scalar(-QUARTER)),
    (Scalar(0), Scalar(0)),
    (Scalar(0), Scalar(Fraction(1, 2))),
    (Scalar(0, QUARTER), Scalar(-QUARTER)),
]


def reaching_system():
    """Return a parallel system whose a3 = -1/4 branch reaches a2^2 + a3^2 = 7/12."""
    (_, second) = certificate.parallel_polynomials()
    # 2/3 a2^2 + 25/27 (1 - 2 a3) a3 leaves a2^2 = 25/48 on the branch a3 = -1/4
    first = sympy.expand(
        sympy.Rational(2, 3) * a2**2 + sympy.Rational(25, 27) * (1 - 2 * a3) * a3
    )
    return (first, second)


def test_factored_solutions():
    """Confirm the four real solutions of the parallel system."""
    assert certificate.factored_solutions() == EXPECTED


def test_factored_solutions_follow_the_polynomials():
    """Confirm that the branch solver recomputes its answer when a coefficient changes."""
    solutions = certificate.factored_solutions(reaching_system())
    five_twelfths = Fraction(5, 12)
    assert solutions == [
        (Scalar(0, -five_twelfths), Scalar(-QUARTER)),
        (Scalar(0), Scalar(0)),
        (Scalar(0), Scalar(Fraction(1, 2))),
        (Scalar(0, five_twelfths), Scalar(-QUARTER)),
    ]
    assert certificate.resultant_solutions(reaching_system()) == solutions


def test_factored_solutions_reject_a_curve_of_solutions():
    """Confirm that a branch solving the first equation identically is an error."""
    (_, second) = certificate.parallel_polynomials()
    with pytest.raises(certificate.InfiniteSolutionsError):
        certificate.factored_solutions((sympy.expand(a2 * (4 * a3 + 1)), second))


def test_resultant_solutions_agree():
    """Confirm that elimination by a resultant finds the same solutions."""
    assert certificate.resultant_solutions() == certificate.factored_solutions()


def test_float_solutions_agree():
    """Confirm that the floating point solutions match the exact ones."""
    approximate = certificate.float_solutions()
    assert len(approximate) == 4  # noqa: PLR2004
    assert certificate.float_gap(EXPECTED, approximate) <= 1e-12  # noqa: PLR2004
    assert certificate.float_gap(EXPECTED, approximate[:2]) == float("inf")


@pytest.mark.parametrize("solution", EXPECTED)
def test_back_substitution_is_exact(solution):
    """Confirm that each solution satisfies both equations exactly."""
    (first, second) = certificate.parallel_polynomials()
    assert certificate.substitute(first, solution) == 0
    assert certificate.substitute(second, solution) == 0


def test_substitute_reports_a_residual():
    """Confirm that a point off the solution set leaves an exact residual."""
    (first, _) = certificate.parallel_polynomials()
    assert certificate.substitute(first, (Scalar(1), Scalar(0))) == Fraction(2, 3)


def test_to_scalar():
    """Confirm the conversion of sympy values in Q(sqrt(3))."""
    assert certificate.to_scalar(sympy.sqrt(3) / 4) == Scalar(0, QUARTER)
    assert certificate.to_scalar(sympy.Rational(1, 2) - sympy.sqrt(3)) == Scalar(
        Fraction(1, 2), -1
    )
    assert certificate.to_scalar(certificate.to_sympy(Scalar(Fraction(2, 3), -5))) == Scalar(
        Fraction(2, 3), -5
    )
    with pytest.raises(ValueError):
        certificate.to_scalar(sympy.sqrt(2))


def test_solution_set_norms():
    """Confirm the exact back substitution and the two values of a2^2 + a3^2."""
    solutions = certificate.parallel_system_solutions()
    assert solutions.exact
    assert solutions.solvers_agree
    assert solutions.norms() == [0, QUARTER]


def test_branch_condition():
    """Confirm that a1 is only free at the null solution."""
    assert certificate.branch_condition((Scalar(0), Scalar(0))) == "a1 free"
    assert certificate.branch_condition(EXPECTED[0]) == "a1 = 0"
    assert certificate.branch_condition(EXPECTED[2]) == "a1 = 0"


def test_nonexistence_certificate():
    """Confirm that no solution reaches the curvature constraint 7/12."""
    result = certificate.nonexistence_certificate()
    assert result.constraint == Fraction(7, 12)
    assert isinstance(result.constraint, Fraction)
    assert result.disjoint
    assert "no parallel" in result.verdict
    assert not result.unique_null_solution
    assert result.branches.count("a1 free") == 1


def test_certificate_fails_when_a_solution_reaches_the_constraint():
    """Confirm that a changed coefficient that admits a2^2 + a3^2 = 7/12 fails the certificate."""
    result = certificate.nonexistence_certificate(reaching_system())
    assert Fraction(7, 12) in result.norms
    assert not result.disjoint
    assert result.verdict == "certificate failed"


def test_certificate_fails_when_the_solvers_disagree(monkeypatch):
    """Confirm that the certificate fails when the resultant solver finds a different set."""
    monkeypatch.setattr(certificate, "resultant_solutions", lambda polynomials=None: EXPECTED[:1])
    certificate.parallel_system_solutions.cache_clear()
    try:
        result = certificate.nonexistence_certificate()
    finally:
        certificate.parallel_system_solutions.cache_clear()
    assert result.solutions.exact
    assert not result.solutions.solvers_agree
    assert not result.disjoint
    assert result.verdict == "certificate failed"


def test_render_solution():
    """Confirm that solutions render with exact entries."""
    assert certificate.render_solution((Scalar(0), Scalar(Fraction(1, 2)))) == "(0, 1/2)"
