"""Frame tables of the nearly Kähler structure and their independent derivations.

The left-invariant frame E1, E2, E3, F1, F2, F3 has constant metric
coefficients, so the Levi-Civita connection follows from the Koszul formula
and the structure constants alone. The printed tables below are compared with
these derived values entry by entry in exact arithmetic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from nkverify import field, manifold, sl2
from nkverify.field import Number
from nkverify.manifold import FRAME, FrameCoeffs, FrameIndex, NKPoint, Tangent
from nkverify.sl2 import Mat2, TraceZero

logger = logging.getLogger(__name__)

E1, E2, E3, F1, F2, F3 = FRAME
THIRD = Fraction(1, 3)
G_COEFF = manifold.G_COEFFICIENT

FramePair = Tuple[FrameIndex, FrameIndex]


def combo(**terms: Number) -> FrameCoeffs:
    """Build frame coefficients from keyword terms such as E3=1, F3=-1."""
    return FrameCoeffs.from_mapping(
        {FrameIndex[name]: value for (name, value) in terms.items()}
    )


ZERO = FrameCoeffs.zero()

# ---
# Region: Printed tables {{{
# ---

PRINTED_BRACKETS: Dict[FramePair, FrameCoeffs] = {
    (E1, E2): combo(E3=2),
    (F1, F2): combo(F3=2),
    (E1, E3): combo(E2=2),
    (F1, F3): combo(F2=2),
    (E2, E3): combo(E3=-2),
    (F2, F3): combo(F1=-2),
}

PRINTED_J: Dict[FrameIndex, FrameCoeffs] = {
    **{
        e: FrameCoeffs.from_mapping({e: field.INV_SQRT3, f: 2 * field.INV_SQRT3})
        for (e, f) in ((E1, F1), (E2, F2), (E3, F3))
    },
    **{
        f: FrameCoeffs.from_mapping({e: -field.INV_SQRT3, f: -field.INV_SQRT3})
        for (e, f) in ((E1, F1), (E2, F2), (E3, F3))
    },
}

PRINTED_LEVI_CIVITA: Dict[FramePair, FrameCoeffs] = {
    (E1, E1): ZERO,
    (E1, E2): combo(E3=1),
    (E1, E3): combo(E2=1),
    (E1, F1): ZERO,
    (E1, F2): combo(E3=-THIRD, F3=THIRD),
    (E1, F3): combo(E2=-THIRD, F2=THIRD),
    (E2, E1): combo(E3=-1),
    (E2, E2): ZERO,
    (E2, E3): combo(E1=-1),
    (E2, F1): combo(E3=THIRD, F3=-THIRD),
    (E2, F2): ZERO,
    (E2, F3): combo(E1=THIRD, F1=-THIRD),
    (E3, E1): combo(E2=-1),
    (E3, E2): combo(E1=1),
    (E3, E3): ZERO,
    (E3, F1): combo(E2=THIRD, F2=-THIRD),
    (E3, F2): combo(E1=-THIRD, F1=THIRD),
    (E3, F3): ZERO,
    (F1, E1): ZERO,
    (F1, E2): combo(E3=THIRD, F3=-THIRD),
    (F1, E3): combo(E2=THIRD, F2=-THIRD),
    (F1, F1): ZERO,
    (F1, F2): combo(F3=1),
    (F1, F3): combo(F2=1),
    (F2, E1): combo(E3=-THIRD, F3=THIRD),
    (F2, E2): ZERO,
    (F2, E3): combo(E1=-THIRD, F1=THIRD),
    (F2, F1): combo(F3=-1),
    (F2, F2): ZERO,
    (F2, F3): combo(F1=-1),
    (F3, E1): combo(E2=-THIRD, F2=THIRD),
    (F3, E2): combo(E1=THIRD, F1=-THIRD),
    (F3, E3): ZERO,
    (F3, F1): combo(F2=-1),
    (F3, F2): combo(F1=1),
    (F3, F3): ZERO,
}

# None marks the entry (nabla_E1 J)F1 whose right-hand side is blank in print
PRINTED_NABLA_J: Dict[FramePair, Optional[FrameCoeffs]] = {
    (E1, E1): ZERO,
    (E2, E1): combo(E3=1, F3=2) * G_COEFF,
    (E3, E1): combo(E2=1, F2=2) * G_COEFF,
    (E1, E2): combo(E3=-1, F3=-2) * G_COEFF,
    (E2, E2): ZERO,
    (E3, E2): combo(E1=-1, F1=-2) * G_COEFF,
    (E1, E3): combo(E2=-1, F2=-2) * G_COEFF,
    (E2, E3): combo(E1=1, F1=2) * G_COEFF,
    (E3, E3): ZERO,
    (E1, F1): None,
    (E2, F1): combo(E3=1, F3=-1) * G_COEFF,
    (E3, F1): combo(E2=1, F2=-1) * G_COEFF,
    (E1, F2): combo(E3=-1, F3=1) * G_COEFF,
    (E2, F2): ZERO,
    (E3, F2): combo(E1=-1, F1=1) * G_COEFF,
    (E1, F3): combo(E2=-1, F2=1) * G_COEFF,
    (E2, F3): combo(E1=1, F1=-1) * G_COEFF,
    (E3, F3): ZERO,
    (F1, E1): ZERO,
    (F2, E1): combo(E3=1, F3=-1) * G_COEFF,
    (F3, E1): combo(E2=1, F2=-1) * G_COEFF,
    (F1, E2): combo(E3=-1, F3=1) * G_COEFF,
    (F2, E2): ZERO,
    (F3, E2): combo(E1=-1, F1=1) * G_COEFF,
    (F1, E3): combo(E2=-1, F2=1) * G_COEFF,
    (F2, E3): combo(E1=1, F1=-1) * G_COEFF,
    (F3, E3): ZERO,
    (F1, F1): ZERO,
    (F2, F1): combo(E3=-2, F3=-1) * G_COEFF,
    (F3, F1): combo(E2=-2, F2=-1) * G_COEFF,
    (F1, F2): combo(E3=2, F3=1) * G_COEFF,
    (F2, F2): ZERO,
    (F3, F2): combo(E1=2, F1=1) * G_COEFF,
    (F1, F3): combo(E2=2, F2=1) * G_COEFF,
    (F2, F3): combo(E1=-2, F1=-1) * G_COEFF,
    (F3, F3): ZERO,
}


def printed_metric(i: FrameIndex, j: FrameIndex) -> Number:
    """Return the printed value of g on a pair of frame fields."""
    if i.basis != j.basis:
        return field.ZERO
    sign = -1 if i.basis == 3 else 1
    if i.factor == j.factor:
        return field.Scalar(Fraction(2 * sign, 3))
    return field.Scalar(Fraction(-sign, 3))


# ---
# End region: Printed tables }}}
# ---

# ---
# Region: Derived tables {{{
# ---


def solve_linear(
    matrix: Sequence[Sequence[Number]], rhs: Sequence[Number]
) -> List[Number]:
    """Solve a square nonsingular system by Gauss-Jordan elimination.

    Pivots are selected by exact comparison with zero, so the solution stays
    in the arithmetic of the inputs.
    """
    size = len(matrix)
    rows = [list(row) + [value] for (row, value) in zip(matrix, rhs)]
    for column in range(size):
        pivot_row = next(
            (r for r in range(column, size) if not field.is_zero(rows[r][column])),
            None,
        )
        if pivot_row is None:
            raise sl2.SingularMatrixError("Linear system is singular")
        rows[column], rows[pivot_row] = rows[pivot_row], rows[column]
        pivot = field.reciprocal(rows[column][column])
        rows[column] = [entry * pivot for entry in rows[column]]
        for r in range(size):
            factor = rows[r][column]
            if r == column or field.is_zero(factor):
                continue
            rows[r] = [a - factor * b for (a, b) in zip(rows[r], rows[column])]
    return [row[size] for row in rows]


def _identity_field(index: FrameIndex) -> Tangent:
    return manifold.frame_field(index, NKPoint.identity())


def _tangent(coefficients: FrameCoeffs) -> Tangent:
    return coefficients.to_tangent(NKPoint.identity())


@lru_cache(maxsize=None)
def gram_matrix() -> Tuple[Tuple[Number, ...], ...]:
    """Return the matrix of g on the frame, computed from the metric formula."""
    fields = [_identity_field(index) for index in FRAME]
    return tuple(
        tuple(manifold.nk_metric(x, y) for y in fields) for x in fields
    )


def frame_metric(a: FrameCoeffs, b: FrameCoeffs) -> Number:
    """Pair two coefficient vectors through the Gram matrix."""
    gram = gram_matrix()
    return sum(
        (
            a.values[m] * gram[m][n] * b.values[n]
            for m in range(len(FRAME))
            for n in range(len(FRAME))
            if not field.is_zero(a.values[m]) and not field.is_zero(b.values[n])
        ),
        field.ZERO,
    )


@lru_cache(maxsize=None)
def lie_bracket(i: FrameIndex, j: FrameIndex) -> FrameCoeffs:
    """Return [X_i, X_j] from the matrix commutator of the basis matrices."""
    if i.factor != j.factor:
        return ZERO
    bracket = sl2.commutator(TraceZero.basis(i.basis), TraceZero.basis(j.basis))
    if i.factor == "E":
        return Tangent(NKPoint.identity(), bracket, TraceZero.zero()).coefficients()
    return Tangent(NKPoint.identity(), TraceZero.zero(), bracket).coefficients()


@lru_cache(maxsize=None)
def koszul_connection(i: FrameIndex, j: FrameIndex) -> FrameCoeffs:
    """Return nabla_{X_i} X_j from the Koszul formula on the frame."""
    unit = {index: FrameCoeffs.unit(index) for index in FRAME}
    # 2g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y) for constant g
    rhs = [
        (
            frame_metric(lie_bracket(i, j), unit[m])
            - frame_metric(lie_bracket(j, m), unit[i])
            + frame_metric(lie_bracket(m, i), unit[j])
        )
        * Fraction(1, 2)
        for m in FRAME
    ]
    solution = solve_linear(gram_matrix(), rhs)
    return FrameCoeffs(tuple(solution))


def levi_civita_frame(i: FrameIndex, j: FrameIndex) -> FrameCoeffs:
    """Return the printed table entry nabla_{X_i} X_j."""
    return PRINTED_LEVI_CIVITA[(i, j)]


def frame_covariant(i: FrameIndex, coefficients: FrameCoeffs) -> FrameCoeffs:
    """Differentiate a constant-coefficient field along X_i."""
    total = ZERO
    for (k, c) in zip(FRAME, coefficients.values):
        if not field.is_zero(c):
            total = total + koszul_connection(i, k) * c
    return total


def apply_J_frame(coefficients: FrameCoeffs) -> FrameCoeffs:
    """Apply J to constant frame coefficients."""
    return manifold.apply_J(_tangent(coefficients)).coefficients()


@lru_cache(maxsize=None)
def nabla_J_frame(i: FrameIndex, j: FrameIndex) -> FrameCoeffs:
    """Return (nabla_{X_i} J) X_j as nabla(J X_j) - J(nabla X_j)."""
    J_xj = apply_J_frame(FrameCoeffs.unit(j))
    return frame_covariant(i, J_xj) - apply_J_frame(koszul_connection(i, j))


@lru_cache(maxsize=None)
def frame_curvature(i: FrameIndex, j: FrameIndex, k: FrameIndex) -> FrameCoeffs:
    """Return R(X_i, X_j)X_k from the Koszul connection and the brackets."""
    first = frame_covariant(i, koszul_connection(j, k))
    second = frame_covariant(j, koszul_connection(i, k))
    third = ZERO
    for (m, c) in zip(FRAME, lie_bracket(i, j).values):
        if not field.is_zero(c):
            third = third + koszul_connection(m, k) * c
    return first - second - third


def frame_tensor_G(a: FrameCoeffs, b: FrameCoeffs) -> FrameCoeffs:
    """Evaluate G on constant frame coefficients through the frame table."""
    total = ZERO
    for (m, x) in zip(FRAME, a.values):
        if field.is_zero(x):
            continue
        for (n, y) in zip(FRAME, b.values):
            if not field.is_zero(y):
                total = total + frame_G(m, n) * (x * y)
    return total


@lru_cache(maxsize=None)
def frame_G(i: FrameIndex, j: FrameIndex) -> FrameCoeffs:
    """Return G(X_i, X_j) from the cross product formula."""
    return manifold.tensor_G(
        _identity_field(i), _identity_field(j)
    ).coefficients()


@lru_cache(maxsize=None)
def frame_nabla_G(i: FrameIndex, j: FrameIndex, k: FrameIndex) -> FrameCoeffs:
    """Return (nabla_{X_i} G)(X_j, X_k) by the Leibniz rule on the frame."""
    (unit_j, unit_k) = (FrameCoeffs.unit(j), FrameCoeffs.unit(k))
    return (
        frame_covariant(i, frame_G(j, k))
        - frame_tensor_G(koszul_connection(i, j), unit_k)
        - frame_tensor_G(unit_j, koszul_connection(i, k))
    )


def flow_derivative(
    i: FrameIndex, j: FrameIndex, p: NKPoint, step: float = 1e-3
) -> Tuple[Mat2, Mat2]:
    """Differentiate the raw matrices of X_j along the flow of X_i.

    The integral curve of a left-invariant field through (A, B) is
    (A exp(h a), B exp(h b)), so the derivative is a Richardson-extrapolated
    central difference of X_j evaluated along that curve.
    """
    direction = manifold.frame_field(i, p)

    def sample(h: float) -> Tuple[Mat2, Mat2]:
        moved = NKPoint(
            sl2.Sl2Point(p.A.matrix @ sl2.sl2_exp(direction.alpha * h).matrix),
            sl2.Sl2Point(p.B.matrix @ sl2.sl2_exp(direction.beta * h).matrix),
        )
        return manifold.frame_field(j, moved).raw()

    def central(h: float) -> Tuple[Mat2, Mat2]:
        (plus, minus) = (sample(h), sample(-h))
        return (
            (plus[0] - minus[0]) * (0.5 / h),
            (plus[1] - minus[1]) * (0.5 / h),
        )

    (coarse, fine) = (central(step), central(step / 2))
    return (
        fine[0] * (4.0 / 3.0) - coarse[0] * (1.0 / 3.0),
        fine[1] * (4.0 / 3.0) - coarse[1] * (1.0 / 3.0),
    )


def flow_connection(
    i: FrameIndex, j: FrameIndex, p: NKPoint, step: float = 1e-3
) -> FrameCoeffs:
    """Recover nabla_{X_i} X_j from the flow derivative at a point."""
    derivative = flow_derivative(i, j, p, step)
    return manifold.ambient_to_nk(
        derivative, manifold.frame_field(i, p), manifold.frame_field(j, p), p
    ).coefficients()


# ---
# End region: Derived tables }}}
# ---

# ---
# Region: Discrepancy ledger {{{
# ---


@dataclass(frozen=True)
class Discrepancy:
    """A printed table entry that disagrees with its derived value."""

    entry: str
    printed: str
    derived: str


def compare_table(
    label: str,
    printed: Dict[FramePair, Optional[FrameCoeffs]],
    derive: Callable[[FrameIndex, FrameIndex], FrameCoeffs],
) -> Tuple[float, List[Discrepancy]]:
    """Compare a printed two-index table with its derived counterpart.

    Returns the largest coefficient difference over the entries that are
    printed together with the list of entries that disagree or are blank.
    """
    worst = 0.0
    discrepancies: List[Discrepancy] = []
    for (key, value) in printed.items():
        derived = derive(*key)
        name = f"{label}({key[0].value},{key[1].value})"
        if value is None:
            discrepancies.append(Discrepancy(name, "blank", str(derived)))
            continue
        difference = (value - derived).max_abs()
        if difference > 0:
            discrepancies.append(Discrepancy(name, str(value), str(derived)))
            logger.warning(f"Printed entry {name} = {value} but derived {derived}")
        worst = max(worst, difference)
    return (worst, discrepancies)


def bracket_discrepancies() -> List[Discrepancy]:
    """List the printed bracket lines that disagree with the commutators."""
    (_, discrepancies) = compare_table("[,]", dict(PRINTED_BRACKETS), lie_bracket)
    return discrepancies


def j_table_discrepancies() -> List[Discrepancy]:
    """List the printed J table lines that disagree with the J formula."""
    discrepancies = []
    for (index, printed) in PRINTED_J.items():
        derived = apply_J_frame(FrameCoeffs.unit(index))
        if printed != derived:
            discrepancies.append(
                Discrepancy(f"J{index.value}", str(printed), str(derived))
            )
    return discrepancies


# ---
# End region: Discrepancy ledger }}}
# ---
