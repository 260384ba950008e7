"""The adapted frame of a P-normal almost complex surface and its structure tables."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

import sympy

from nkverify import field
from nkverify.connection import Discrepancy
from nkverify.field import Scalar
from nkverify.manifold import (
    NKPoint,
    Tangent,
    apply_J,
    apply_P,
    nk_metric,
    tensor_G,
)
from nkverify.sl2 import TraceZero

logger = logging.getLogger(__name__)

# six coefficients in the adapted frame e1, ..., e6
AdaptedVector = Tuple[sympy.Expr, ...]

INDICES: Tuple[int, ...] = (1, 2, 3, 4, 5, 6)

TWO_THIRDS = sympy.Rational(2, 3)
HALF = sympy.Rational(1, 2)

# lengths of e1, ..., e6; the frame is orthogonal
METRIC: Tuple[sympy.Expr, ...] = (1, 1, 1, 1, -TWO_THIRDS, -TWO_THIRDS)

a1, a2, a3, b1 = sympy.symbols("a1 a2 a3 b1", real=True)
CONNECTION_SYMBOLS = (a1, a2, a3, b1)

# e1(f) and e2(f) for each connection coefficient f
DERIVATIVES: Dict[int, Dict[sympy.Symbol, sympy.Symbol]] = {
    direction: {
        symbol: sympy.Symbol(f"e{direction}({symbol})", real=True)
        for symbol in CONNECTION_SYMBOLS
    }
    for direction in (1, 2)
}


# ---
# Region: Frame vectors {{{
# ---


def vector(**terms: Union[int, sympy.Expr]) -> AdaptedVector:
    """Build a frame vector from keyword terms such as e5=1."""
    coefficients = [sympy.Integer(0)] * 6
    for (name, amount) in terms.items():
        coefficients[int(name[1]) - 1] = sympy.sympify(amount)
    return tuple(coefficients)


def unit(i: int) -> AdaptedVector:
    """Return the frame vector e_i."""
    return vector(**{f"e{i}": 1})


ZERO: AdaptedVector = vector()


def combine(*terms: Tuple[sympy.Expr, AdaptedVector]) -> AdaptedVector:
    """Return the linear combination of (coefficient, vector) pairs."""
    total = [sympy.Integer(0)] * 6
    for (amount, x) in terms:
        for k in range(6):
            total[k] = total[k] + amount * x[k]
    return tuple(sympy.expand(value) for value in total)


def adapted_metric(x: AdaptedVector, y: AdaptedVector) -> sympy.Expr:
    """Return g(x, y) in the orthogonal adapted frame."""
    return sympy.expand(sum(METRIC[k] * x[k] * y[k] for k in range(6)))


def is_zero_vector(x: AdaptedVector) -> bool:
    """Determine whether every coefficient simplifies to zero."""
    return all(sympy.simplify(value) == 0 for value in x)


def render(x: AdaptedVector) -> str:
    """Render a frame vector as a sum of terms."""
    terms = [f"({value})e{k + 1}" for (k, value) in enumerate(x) if value != 0]
    return " + ".join(terms) if terms else "0"


# ---
# End region: Frame vectors }}}
# ---

# ---
# Region: J, P and G tables {{{
# ---

FRAME_J_TABLE: Dict[int, AdaptedVector] = {
    1: unit(2),
    2: vector(e1=-1),
    3: unit(4),
    4: vector(e3=-1),
    5: unit(6),
    6: vector(e5=-1),
}

# P is only tabulated on the P-image of the tangent plane
FRAME_P_TABLE: Dict[int, AdaptedVector] = {
    1: unit(3),
    2: vector(e4=-1),
    3: unit(1),
    4: vector(e2=-1),
}


def frame_J(x: AdaptedVector) -> AdaptedVector:
    """Apply J to a frame vector through its table."""
    return combine(*((x[k], FRAME_J_TABLE[k + 1]) for k in range(6)))


def frame_P(x: AdaptedVector) -> AdaptedVector:
    """Apply P to a vector in the span of e1, ..., e4."""
    if any(value != 0 for value in x[4:]):
        raise ValueError("P is only tabulated on e1, e2, e3, e4")
    return combine(*((x[k], FRAME_P_TABLE[k + 1]) for k in range(4)))


PRINTED_G_TABLE: Dict[Tuple[int, int], AdaptedVector] = {
    (1, 2): ZERO,
    (1, 3): unit(5),
    (1, 4): vector(e6=-1),
    (1, 5): vector(e3=TWO_THIRDS),
    (1, 6): vector(e4=-TWO_THIRDS),
    (2, 3): vector(e6=-1),
    (2, 4): vector(e5=-1),
    (2, 5): vector(e4=-TWO_THIRDS),
    (2, 6): vector(e3=-TWO_THIRDS),
    (3, 4): ZERO,
    (3, 5): vector(e1=TWO_THIRDS),
    (3, 6): vector(e2=TWO_THIRDS),
    (4, 5): vector(e2=TWO_THIRDS),
    (4, 6): vector(e1=TWO_THIRDS),
    (5, 6): ZERO,
}

# e5 = G(e1, e3) and e6 = -G(e2, e3); the rest follow from G(X, JY) = -JG(X, Y)
_DEFINING_G: Dict[Tuple[int, int], AdaptedVector] = {
    (1, 2): ZERO,
    (1, 3): unit(5),
    (1, 4): vector(e6=-1),
    (2, 3): vector(e6=-1),
    (2, 4): vector(e5=-1),
    (3, 4): ZERO,
}


def g_of_g_closed(x: AdaptedVector, z: AdaptedVector, w: AdaptedVector) -> AdaptedVector:
    """Return G(x, G(z, w)) = 2/3 (g(x,z)w - g(x,w)z + g(Jx,z)Jw - g(Jx,w)Jz)."""
    g = adapted_metric
    jx = frame_J(x)
    inner = combine(
        (g(x, z), w),
        (-g(x, w), z),
        (g(jx, z), frame_J(w)),
        (-g(jx, w), frame_J(z)),
    )
    return combine((TWO_THIRDS, inner))


@lru_cache(maxsize=None)
def g_mult_table(i: int, j: int) -> AdaptedVector:
    """Return G(e_i, e_j) derived from the defining entries and the closed form of G(X, G(Z, W))."""
    if i not in INDICES or j not in INDICES:
        raise ValueError(f"Frame indices must lie in 1..6, not ({i}, {j})")
    if i == j:
        return ZERO
    if i > j:
        return combine((-1, g_mult_table(j, i)))
    if j <= 4:
        return _DEFINING_G[(i, j)]
    if j == 5:
        return g_of_g_closed(unit(i), unit(1), unit(3))
    return combine((-1, g_of_g_closed(unit(i), unit(2), unit(3))))


def printed_g_entry(i: int, j: int) -> AdaptedVector:
    """Return the printed table value of G(e_i, e_j), extended by antisymmetry."""
    if i == j:
        return ZERO
    if i > j:
        return combine((-1, PRINTED_G_TABLE[(j, i)]))
    return PRINTED_G_TABLE[(i, j)]


def adapted_G(x: AdaptedVector, y: AdaptedVector) -> AdaptedVector:
    """Extend the G table bilinearly."""
    return combine(
        *(
            (x[i - 1] * y[j - 1], g_mult_table(i, j))
            for i in INDICES
            for j in INDICES
            if x[i - 1] != 0 and y[j - 1] != 0
        )
    )


def g_table_discrepancies() -> List[Discrepancy]:
    """Compare the printed G table with the derived table."""
    found = []
    for (i, j) in PRINTED_G_TABLE:
        printed = printed_g_entry(i, j)
        derived = g_mult_table(i, j)
        if printed != derived:
            logger.warning(f"G(e{i}, e{j}) printed {render(printed)}, derived {render(derived)}")
            found.append(Discrepancy(f"G(e{i},e{j})", render(printed), render(derived)))
    return found


def g_table_consistency() -> List[str]:
    """Return every failed antisymmetry, skew or composition identity of the G table."""
    failures = []
    for i in INDICES:
        for j in INDICES:
            if combine((1, g_mult_table(i, j)), (1, g_mult_table(j, i))) != ZERO:
                failures.append(f"antisymmetry ({i}, {j})")
            for k in INDICES:
                (ei, ej, ek) = (unit(i), unit(j), unit(k))
                skew = adapted_metric(adapted_G(ei, ej), ek) + adapted_metric(
                    adapted_G(ei, ek), ej
                )
                if skew != 0:
                    failures.append(f"skew ({i}, {j}, {k})")
                nested = adapted_G(ei, g_mult_table(j, k))
                if not is_zero_vector(
                    combine((1, nested), (-1, g_of_g_closed(ei, ej, ek)))
                ):
                    failures.append(f"composition ({i}, {j}, {k})")
    return failures


# ---
# End region: J, P and G tables }}}
# ---

# ---
# Region: Realized frame {{{
# ---


def hyperbolic_unit_vector() -> Tangent:
    """Return an exact unit vector at the identity spanning a P-normal J-plane with Jv."""
    half = Fraction(1, 2)
    return Tangent(
        NKPoint.identity(),
        TraceZero(Scalar(half), Scalar(0, -half), field.ZERO),
        TraceZero(Scalar(-half), Scalar(0, -half), field.ZERO),
    )


@dataclass(frozen=True)
class RealizedFrame:
    """The concrete vectors e1, ..., e6 built from a unit tangent vector."""

    vectors: Tuple[Tangent, ...]

    def __getitem__(self, i: int) -> Tangent:
        return self.vectors[i - 1]


def realize_adapted_frame(v: Tangent) -> RealizedFrame:
    """Build e1 = v, e2 = Jv, e3 = Pv, e4 = JPv, e5 = G(v, Pv), e6 = -G(Jv, Pv)."""
    Jv = apply_J(v)
    Pv = apply_P(v)
    return RealizedFrame(
        (v, Jv, Pv, apply_J(Pv), tensor_G(v, Pv), -tensor_G(Jv, Pv))
    )


def _sympify(x: field.Number) -> sympy.Expr:
    if isinstance(x, Scalar):
        return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(
            x.b.numerator, x.b.denominator
        ) * sympy.sqrt(3)
    if isinstance(x, float):
        return sympy.Float(x)
    return sympy.Rational(Fraction(x).numerator, Fraction(x).denominator)


def realized_gram(frame: RealizedFrame) -> List[List[sympy.Expr]]:
    """Return the Gram matrix g(e_i, e_j) of a realized frame."""
    return [
        [sympy.nsimplify(_sympify(nk_metric(frame[i], frame[j]))) for j in INDICES]
        for i in INDICES
    ]


def realized_coordinates(frame: RealizedFrame, x: Tangent) -> AdaptedVector:
    """Return the coordinates of a tangent vector in an orthogonal realized frame."""
    return tuple(
        sympy.nsimplify(_sympify(nk_metric(x, frame[k])) / METRIC[k - 1])
        for k in INDICES
    )


def realized_discrepancies(frame: RealizedFrame) -> List[str]:
    """Return every Gram, J, P or G entry of a realized frame that disagrees with the tables."""
    failures = []
    gram = realized_gram(frame)
    for i in INDICES:
        for j in INDICES:
            expected = METRIC[i - 1] if i == j else 0
            if sympy.simplify(gram[i - 1][j - 1] - expected) != 0:
                failures.append(f"g(e{i},e{j})")
    for i in INDICES:
        if realized_coordinates(frame, apply_J(frame[i])) != FRAME_J_TABLE[i]:
            failures.append(f"Je{i}")
        if i in FRAME_P_TABLE and realized_coordinates(
            frame, apply_P(frame[i])
        ) != FRAME_P_TABLE[i]:
            failures.append(f"Pe{i}")
        for j in INDICES:
            value = realized_coordinates(frame, tensor_G(frame[i], frame[j]))
            if value != g_mult_table(i, j):
                failures.append(f"G(e{i},e{j})")
    return failures


# ---
# End region: Realized frame }}}
# ---

# ---
# Region: Connection table {{{
# ---


@dataclass(frozen=True)
class FrameConnection:
    """The coefficients a1, a2, a3, b1 of the connection in the adapted frame."""

    a1: Union[int, Fraction, float, sympy.Expr] = 0
    a2: Union[int, Fraction, float, sympy.Expr] = 0
    a3: Union[int, Fraction, float, sympy.Expr] = 0
    b1: Union[int, Fraction, float, sympy.Expr] = 0

    def substitution(self) -> Dict[sympy.Symbol, sympy.Expr]:
        """Return the mapping of symbols to values."""
        values = (self.a1, self.a2, self.a3, self.b1)
        return {
            symbol: sympy.Float(value) if isinstance(value, float) else sympy.nsimplify(value)
            for (symbol, value) in zip(CONNECTION_SYMBOLS, values)
        }


# nabla_{e_a} e_j for a = 1, 2 as affine expressions in a1, a2, a3, b1
CONNECTION_TABLE: Dict[Tuple[int, int], AdaptedVector] = {
    (1, 1): vector(e2=a1, e5=a2, e6=a3),
    (1, 2): vector(e1=-a1, e5=-a3, e6=a2),
    (1, 3): vector(e4=-a1, e5=a2, e6=HALF - a3),
    (1, 4): vector(e3=a1, e5=HALF + a3, e6=a2),
    (1, 5): vector(
        e1=TWO_THIRDS * a2,
        e2=-TWO_THIRDS * a3,
        e3=TWO_THIRDS * a2,
        e4=TWO_THIRDS * (HALF + a3),
    ),
    (1, 6): vector(
        e1=TWO_THIRDS * a3,
        e2=TWO_THIRDS * a2,
        e3=TWO_THIRDS * (HALF - a3),
        e4=TWO_THIRDS * a2,
    ),
    (2, 1): vector(e2=b1, e5=-a3, e6=a2),
    (2, 2): vector(e1=-b1, e5=-a2, e6=-a3),
    (2, 3): vector(e4=-b1, e5=HALF - a3, e6=-a2),
    (2, 4): vector(e3=b1, e5=a2, e6=-(HALF + a3)),
    (2, 5): vector(
        e1=-TWO_THIRDS * a3,
        e2=-TWO_THIRDS * a2,
        e3=TWO_THIRDS * (HALF - a3),
        e4=TWO_THIRDS * a2,
    ),
    (2, 6): vector(
        e1=TWO_THIRDS * a2,
        e2=-TWO_THIRDS * a3,
        e3=-TWO_THIRDS * a2,
        e4=-TWO_THIRDS * (HALF + a3),
    ),
}


def frame_connection_table(
    i: int, j: int, c: Optional[FrameConnection] = None
) -> AdaptedVector:
    """Return nabla_{e_i} e_j, symbolic when no coefficients are given."""
    if (i, j) not in CONNECTION_TABLE:
        raise ValueError(f"Connection table holds i in 1..2 and j in 1..6, not ({i}, {j})")
    entry = CONNECTION_TABLE[(i, j)]
    if c is None:
        return entry
    substitution = c.substitution()
    return tuple(sympy.expand(value.subs(substitution)) for value in entry)


def frame_bracket() -> AdaptedVector:
    """Return [e1, e2] = nabla_{e1} e2 - nabla_{e2} e1 restricted to the tangent plane."""
    return vector(e1=-a1, e2=-b1)


def metric_compatibility(c: Optional[FrameConnection] = None) -> List[str]:
    """Return every g(nabla_a e_i, e_j) + g(e_i, nabla_a e_j) that is not identically zero."""
    failures = []
    for direction in (1, 2):
        for i in INDICES:
            for j in INDICES:
                total = adapted_metric(
                    frame_connection_table(direction, i, c), unit(j)
                ) + adapted_metric(unit(i), frame_connection_table(direction, j, c))
                polynomial = sympy.Poly(sympy.expand(total), *CONNECTION_SYMBOLS)
                if any(coefficient != 0 for coefficient in polynomial.coeffs()):
                    failures.append(f"nabla_e{direction}: ({i}, {j})")
    return failures


def _differentiate(expression: sympy.Expr, direction: int) -> sympy.Expr:
    derivatives = DERIVATIVES[direction]
    return sympy.expand(
        sum(sympy.diff(expression, symbol) * derivatives[symbol] for symbol in CONNECTION_SYMBOLS)
    )


def _covariant(direction: int, x: AdaptedVector) -> AdaptedVector:
    # nabla_{e_direction} of a field with the given coefficient functions
    return combine(
        (1, tuple(_differentiate(value, direction) for value in x)),
        *((x[k], frame_connection_table(direction, k + 1)) for k in range(6)),
    )


@lru_cache(maxsize=None)
def symbolic_curvature(k: int) -> AdaptedVector:
    """Return R(e1, e2)e_k from the connection table."""
    bracket = frame_bracket()
    return combine(
        (1, _covariant(1, frame_connection_table(2, k))),
        (-1, _covariant(2, frame_connection_table(1, k))),
        (-bracket[0], frame_connection_table(1, k)),
        (-bracket[1], frame_connection_table(2, k)),
    )


@lru_cache(maxsize=None)
def closed_curvature(k: int) -> AdaptedVector:
    """Return the closed-form ambient curvature R(e1, e2)e_k on the adapted frame."""
    g = adapted_metric
    (U, V, W) = (unit(1), unit(2), unit(k))
    (JU, JV) = (frame_J(U), frame_J(V))
    (PU, PV) = (frame_P(U), frame_P(V))
    (JPU, JPV) = (frame_J(PU), frame_J(PV))
    first = combine((g(V, W), U), (-g(U, W), V))
    second = combine((g(JV, W), JU), (-g(JU, W), JV), (-2 * g(JU, V), frame_J(W)))
    third = combine(
        (g(PV, W), PU), (-g(PU, W), PV), (g(JPV, W), JPU), (-g(JPU, W), JPV)
    )
    return combine(
        (sympy.Rational(-5, 6), first),
        (sympy.Rational(-1, 6), second),
        (sympy.Rational(-2, 3), third),
    )


def frame_curvature_defect(k: int) -> AdaptedVector:
    """Return the symbolic curvature R(e1, e2)e_k minus its closed form."""
    return combine((1, symbolic_curvature(k)), (-1, closed_curvature(k)))


# ---
# End region: Connection table }}}
# ---

# ---
# Region: Gauss constraint {{{
# ---


def gauss_constraint(K: Union[int, Fraction, float]) -> Union[Fraction, float]:
    """Return the value of a2^2 + a3^2 forced by Gaussian curvature K in the P-normal case."""
    if isinstance(K, float):
        return (K + 4.0 / 3.0) * 0.75
    return (Fraction(K) + Fraction(4, 3)) * Fraction(3, 4)


@dataclass(frozen=True)
class FrameDerivatives:
    """Values of e1(.) and e2(.) applied to the connection coefficients."""

    e1_a1: Union[int, Fraction, float] = 0
    e2_a1: Union[int, Fraction, float] = 0
    e1_b1: Union[int, Fraction, float] = 0
    e1_a2: Union[int, Fraction, float] = 0
    e2_a2: Union[int, Fraction, float] = 0
    e1_a3: Union[int, Fraction, float] = 0
    e2_a3: Union[int, Fraction, float] = 0


def curvature_consistency(
    c: FrameConnection, d: FrameDerivatives
) -> Tuple[object, object, object]:
    """Return the three residuals of the curvature equations of a surface with K = -5/9."""
    first = -3 * (c.a1 * c.a1 + c.b1 * c.b1 - d.e2_a1 + d.e1_b1) + Fraction(5, 3)
    second = 2 * (c.a1 * c.a3 + c.a2 * c.b1) + d.e1_a2 - d.e2_a3
    third = 2 * (c.a1 * c.a2 - c.a3 * c.b1) - d.e2_a2 - d.e1_a3
    return (first, second, third)


def curvature_consistency_symbolic() -> Tuple[sympy.Expr, sympy.Expr, sympy.Expr]:
    """Return the three curvature equations as polynomials in the symbols."""
    (e1, e2) = (DERIVATIVES[1], DERIVATIVES[2])
    return (
        sympy.expand(-3 * (a1**2 + b1**2 - e2[a1] + e1[b1]) + sympy.Rational(5, 3)),
        sympy.expand(2 * (a1 * a3 + a2 * b1) + e1[a2] - e2[a3]),
        sympy.expand(2 * (a1 * a2 - a3 * b1) - e2[a2] - e1[a3]),
    )


def curvature_dichotomy() -> List[sympy.Expr]:
    """Return the roots of 3/2 K^2 + 17/6 K + 10/9, the only possible constant curvatures."""
    K = sympy.Symbol("K")
    polynomial = sympy.Rational(3, 2) * K**2 + sympy.Rational(17, 6) * K + sympy.Rational(10, 9)
    return sorted(sympy.solve(polynomial, K))


def p_normal_signature_note() -> str:
    """Describe why the case g(v, v) = -1 needs no computation."""
    return (
        "g(v, v) = -1 would give the frame e1, ..., e4 negative lengths while the"
        " metric has exactly two negative directions, spanned by e5 and e6"
    )


# ---
# End region: Gauss constraint }}}
# ---
