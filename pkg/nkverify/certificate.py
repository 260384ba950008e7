"""Exact solution of the parallel surface system and the nonexistence certificate.

A parallel almost complex surface of the P-normal kind with Gaussian curvature
-5/9 would need a2^2 + a3^2 = 7/12, while the parallel condition forces
(a2, a3) into a finite set. Everything here is decided in exact arithmetic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from nkverify import constants, field
from nkverify.field import Scalar
from nkverify.frame import DERIVATIVES, a1, a2, a3, gauss_constraint

logger = logging.getLogger(__name__)

Solution = Tuple[Scalar, Scalar]
System = Tuple[sympy.Expr, sympy.Expr]

TARGET_CURVATURE = Fraction(-5, 9)

TOLERANCE = constants.tolerances.Sampled_Identity


class InfiniteSolutionsError(ValueError):
    """Raised when a branch of the parallel system leaves a curve of solutions."""


def parallel_polynomials() -> System:
    """Return the two algebraic equations in (a2, a3) of a parallel surface."""
    first = sympy.Rational(2, 3) * a2**2 + sympy.Rational(1, 3) * (1 - 2 * a3) * a3
    second = sympy.Rational(2, 3) * a2 * a3 + sympy.Rational(1, 3) * (1 + 2 * a3) * a2
    return (sympy.expand(first), sympy.expand(second))


def derivative_polynomials() -> Tuple[sympy.Expr, sympy.Expr]:
    """Return the derivative pair 2 a1 a3 + e1(a2) and -2 a1 a2 + e1(a3)."""
    e1 = DERIVATIVES[1]
    return (2 * a1 * a3 + e1[a2], -2 * a1 * a2 + e1[a3])


def to_sympy(value: Scalar) -> sympy.Expr:
    """Write a + b sqrt(3) as a sympy number."""
    return sympy.Rational(value.a.numerator, value.a.denominator) + sympy.Rational(
        value.b.numerator, value.b.denominator
    ) * sympy.sqrt(3)


def to_scalar(value: sympy.Expr) -> Scalar:
    """Convert an element of Q(sqrt(3)) written by sympy to a Scalar."""
    value = sympy.nsimplify(sympy.expand(value))
    irrational = value.coeff(sympy.sqrt(3))
    rational = sympy.nsimplify(sympy.expand(value - irrational * sympy.sqrt(3)))
    if not (rational.is_Rational and sympy.nsimplify(irrational).is_Rational):
        raise ValueError(f"Value {value} does not lie in Q(sqrt(3))")
    irrational = sympy.nsimplify(irrational)
    return Scalar(
        Fraction(int(rational.p), int(rational.q)),
        Fraction(int(irrational.p), int(irrational.q)),
    )


def substitute(polynomial: sympy.Expr, solution: Solution) -> Scalar:
    """Evaluate a polynomial in (a2, a3) exactly at a solution."""
    (x, y) = solution
    return to_scalar(polynomial.subs({a2: to_sympy(x), a3: to_sympy(y)}))


def _system(polynomials: Optional[System]) -> System:
    return polynomials if polynomials is not None else parallel_polynomials()


# ---
# Region: Solvers {{{
# ---


@lru_cache(maxsize=None)
def factored_solutions(polynomials: Optional[System] = None) -> List[Solution]:
    """Solve the parallel system branch by branch over the factors of the second equation.

    Each irreducible factor of the second equation is solved for one unknown,
    the result is substituted into the first equation and the remaining
    polynomial in the other unknown is solved exactly.
    """
    (first, second) = _system(polynomials)
    (_, factors) = sympy.factor_list(second, a2, a3)
    solutions = set()
    for (factor, _) in factors:
        variable = a2 if factor.has(a2) else a3
        other = a3 if variable == a2 else a2
        for branch in sympy.solve(factor, variable):
            reduced = sympy.expand(sympy.numer(sympy.together(first.subs(variable, branch))))
            if reduced == 0:
                raise InfiniteSolutionsError(
                    f"Branch {variable} = {branch} solves the first equation identically"
                )
            logger.debug(f"Branch {variable} = {branch} leaves {reduced} = 0")
            for root in sympy.solve(reduced, other):
                if not root.is_real:
                    continue
                value = sympy.simplify(branch.subs(other, root))
                pair = {variable: value, other: root}
                solutions.add((to_scalar(pair[a2]), to_scalar(pair[a3])))
    return sorted(solutions)


@lru_cache(maxsize=None)
def resultant_solutions(polynomials: Optional[System] = None) -> List[Solution]:
    """Solve the parallel system by eliminating a2 with a resultant."""
    (first, second) = _system(polynomials)
    eliminated = sympy.Poly(sympy.resultant(first, second, a2), a3)
    logger.debug(f"Resultant in a3: {eliminated.as_expr()}")
    solutions = []
    for root in sympy.roots(eliminated):
        if not root.is_real:
            continue
        (left, right) = (
            sympy.Poly(first.subs(a3, root), a2),
            sympy.Poly(second.subs(a3, root), a2),
        )
        common = left if right.is_zero else sympy.gcd(left, right)
        for value in sympy.roots(common):
            if value.is_real:
                solutions.append((to_scalar(value), to_scalar(root)))
    return sorted(set(solutions))


def float_solutions(polynomials: Optional[System] = None) -> List[Tuple[float, float]]:
    """Solve the parallel system in floating point with numpy polynomial roots."""
    (first, second) = _system(polynomials)
    eliminated = sympy.Poly(sympy.sqf_part(sympy.resultant(first, second, a2)), a3)
    coefficients = [float(c) for c in eliminated.all_coeffs()]
    solutions = []
    for root in np.roots(coefficients):
        if abs(root.imag) > TOLERANCE:
            continue
        y = float(root.real)
        # coefficients below the tolerance are rounding noise of the root y
        quadratic = [
            c if abs(c) > TOLERANCE else 0.0
            for c in (float(c) for c in sympy.Poly(first.subs(a3, y), a2).all_coeffs())
        ]
        for candidate in np.roots(quadratic):
            if abs(candidate.imag) > TOLERANCE:
                continue
            x = float(candidate.real)
            if abs(float(first.subs({a2: x, a3: y}))) > TOLERANCE:
                continue
            if abs(float(second.subs({a2: x, a3: y}))) <= TOLERANCE:
                solutions.append((x, y))
    # repeated roots collapse on a rounded key while the unrounded value is kept
    unique: Dict[Tuple[float, float], Tuple[float, float]] = {}
    for (x, y) in solutions:
        unique.setdefault((round(x, 9) + 0.0, round(y, 9) + 0.0), (x + 0.0, y + 0.0))
    return sorted(unique.values())


def float_gap(exact: Sequence[Solution], approximate: Sequence[Tuple[float, float]]) -> float:
    """Return the largest distance between matched exact and float solutions."""
    if len(exact) != len(approximate):
        return float("inf")
    gaps = [
        max(abs(float(x) - u), abs(float(y) - v))
        for ((x, y), (u, v)) in zip(sorted(exact), sorted(approximate))
    ]
    return max(gaps, default=0.0)


# ---
# End region: Solvers }}}
# ---

# ---
# Region: Certificate {{{
# ---


@dataclass(frozen=True)
class SolutionSet:
    """The exact solutions of the parallel system with their back-substitution residuals."""

    solutions: Tuple[Solution, ...]
    residuals: Tuple[Tuple[Scalar, Scalar], ...]
    solvers_agree: bool = True

    @property
    def exact(self) -> bool:
        """Determine whether every residual is exactly zero."""
        return all(first == 0 and second == 0 for (first, second) in self.residuals)

    def norms(self) -> List[field.Number]:
        """Return the distinct values of a2^2 + a3^2, sorted."""
        return sorted({x * x + y * y for (x, y) in self.solutions})


@lru_cache(maxsize=None)
def parallel_system_solutions(polynomials: Optional[System] = None) -> SolutionSet:
    """Return every real solution of the parallel system, checked by back substitution.

    The branch solver and the resultant solver run independently; when they
    disagree the set is marked and the certificate built on it fails.
    """
    (first, second) = _system(polynomials)
    solutions = factored_solutions(polynomials)
    resultant = resultant_solutions(polynomials)
    agree = resultant == solutions
    if not agree:
        logger.warning(
            f"Resultant solutions {resultant} differ from factored solutions {solutions}"
        )
    residuals = tuple(
        (substitute(first, solution), substitute(second, solution))
        for solution in solutions
    )
    return SolutionSet(tuple(solutions), residuals, agree)


def branch_condition(solution: Solution) -> str:
    """Describe what the derivative pair forces on a1 for a constant solution."""
    e1 = DERIVATIVES[1]
    (x, y) = solution
    # constant (a2, a3) make e1(a2) = e1(a3) = 0
    constant = {e1[a2]: 0, e1[a3]: 0, a2: to_sympy(x), a3: to_sympy(y)}
    equations = [
        sympy.expand(p.subs(constant)) for p in derivative_polynomials()
    ]
    equations = [e for e in equations if e != 0]
    if not equations:
        return "a1 free"
    values = sympy.solve(equations, a1, dict=True)
    if not values:
        return "no a1"
    return ", ".join(f"a1 = {value[a1]}" for value in values)


@dataclass(frozen=True)
class Certificate:
    """The verdict that a parallel P-normal surface must be totally geodesic."""

    solutions: SolutionSet
    constraint: Fraction
    norms: Tuple[field.Number, ...]
    disjoint: bool
    branches: Tuple[str, ...]
    verdict: str

    @property
    def unique_null_solution(self) -> bool:
        """Determine whether (0, 0) is the only solution."""
        return len(self.solutions.solutions) == 1


def nonexistence_certificate(polynomials: Optional[System] = None) -> Certificate:
    """Decide exactly that no solution of the parallel system meets the curvature constraint."""
    solutions = parallel_system_solutions(polynomials)
    constraint = Fraction(gauss_constraint(TARGET_CURVATURE))
    norms = tuple(solutions.norms())
    disjoint = (
        solutions.solvers_agree
        and solutions.exact
        and all(value != constraint for value in norms)
    )
    if disjoint:
        verdict = (
            "no parallel non-totally-geodesic surface in the P-normal,"
            " positive-definite case"
        )
    else:
        verdict = "certificate failed"
    return Certificate(
        solutions=solutions,
        constraint=constraint,
        norms=norms,
        disjoint=disjoint,
        branches=tuple(branch_condition(s) for s in solutions.solutions),
        verdict=verdict,
    )


def render_solution(solution: Solution) -> str:
    """Render a solution pair for a report witness."""
    return f"({field.render(solution[0])}, {field.render(solution[1])})"


# ---
# End region: Certificate }}}
# ---
