"""Hahn-classicality machinery for third-order operator eigenpairs.

Given an isomorphism J = a_0 I + a_1 D + a_2/2 D^2 + a_3/6 D^3 whose monic
eigenpolynomials are 2-orthogonal, the shifted transpose actions on the
regular vector (u_0, u_1) expand as J^(1)(u_0) = p_0 u_0 + p_1 u_1 and so
on; those coefficient polynomials feed three functional identities, the
matrix system D(Phi U) + Psi U = 0 of both classicality theorems, and the
derivative-sequence (Hahn) test itself.
"""
from __future__ import annotations

from typing import Sequence

from .backend import Rat as Rational
from .diffop import DiffOperator
from .errors import (ClosedFormMismatch, HypothesisViolated, NotTwoOrthogonal,
                     OrderExceeded)
from .forms import MomentForm, combine, require_equal
from .poly import ONE, Polynomial, X, as_rational
from .reporting import Report
from .two_orth import EABF, DualPair, MPSPrefix, RecurrenceCoeffs, fit_2orth_recurrence

__all__ = [
    "Intermediates", "intermediates", "ClassicalSystem",
    "implied_first_coeffs", "j_expansion_check", "lemma_identities_check",
    "phi_theorem4", "varpi_theorem5", "classical_system_check",
    "derivative_mps", "HahnVerdict", "hahn_check",
]

_HALF = Rational(1, 2)


def implied_first_coeffs(J: DiffOperator):
    """(beta_0, gamma_1) implied by a_1 through the coupling
    a_1 = -(1/(3 gamma_1)) (x - beta_0); needs deg a_1 = 1."""
    a1 = J.coeff(1)
    if a1.degree != 1:
        raise HypothesisViolated("deg a1 = 1", witness=str(a1))
    c1 = a1[1]
    return -a1[0] / c1, Rational(-1, 3) / c1


class Intermediates:
    """The eight expansion polynomials over (u_0, u_1):
    J^(1)(u_0) = p0 u_0 + p1 u_1,     J^(1)(u_1) = f0 u_0 + f1 u_1,
    J^(2)(u_0) = pbar0 u_0 + pbar1 u_1, J^(2)(u_1) = fbar0 u_0 + fbar1 u_1,
    together with lambda_0..lambda_5 and the E/A/B/F pieces they came from.
    """

    __slots__ = ("p0", "p1", "f0", "f1", "pbar0", "pbar1", "fbar0", "fbar1",
                 "lambdas", "E1", "E2", "A0", "A1", "B1", "B2", "F1", "F2")

    def __init__(self, **kw):
        for name in self.__slots__:
            setattr(self, name, kw[name])
        bounds = (("p0", 1), ("p1", 0), ("pbar0", 2), ("pbar1", 1),
                  ("fbar0", 2), ("fbar1", 2))
        for name, bound in bounds:
            p = getattr(self, name)
            if p.degree > bound:
                raise ArithmeticError(f"deg {name} = {p.degree} > {bound}")


def intermediates(J: DiffOperator, rc: RecurrenceCoeffs) -> Intermediates:
    """Build p/f/pbar/fbar from the lambda scalars of J and the E/A/B/F
    closed forms of rc (which must reach index 4)."""
    if J.shifted_form or J.order > 3:
        raise HypothesisViolated("third-order normal-form operator",
                                 witness=f"order {J.order}")
    lam = J.lambda_seq(0, 5)
    eabf = EABF(rc)
    E1, E2 = eabf.E(1), eabf.E(2)
    A0, A1 = eabf.A(0), eabf.A(1)
    B1, B2 = eabf.B(1), eabf.B(2)
    F1, F2 = eabf.F(1), eabf.F(2)
    g1, g2, g3, g4 = (rc.gamma(i) for i in (1, 2, 3, 4))
    al2 = rc.alpha(2)

    p0 = (lam[0] - lam[2]) * g1 * E1
    p1 = (lam[1] - lam[2]) * g1 * A0
    f0 = (lam[0] - lam[3]) * g2 * B1 + (lam[0] - lam[2]) * al2 * E1
    f1 = (lam[1] - lam[3]) * g2 * F1 + (lam[1] - lam[2]) * al2 * A0

    E2p, A1p = E2.derivative(), A1.derivative()
    pbar0 = (g1 * g3) * ((lam[4] - lam[0]) * E2 + E2p * p0 + A1p * f0)
    pbar1 = (g1 * g3) * ((lam[4] - lam[1]) * A1 + E2p * p1 + A1p * f1)

    B2p, F2p, B2pp = B2.derivative(), F2.derivative(), B2.derivative(2)
    fbar0 = (g2 * g4) * ((lam[5] - lam[0]) * B2 + B2p * p0 + F2p * f0
                         - _HALF * B2pp * pbar0)
    fbar1 = (g2 * g4) * ((lam[5] - lam[1]) * F2 + B2p * p1 + F2p * f1
                         - _HALF * B2pp * pbar1)

    return Intermediates(p0=p0, p1=p1, f0=f0, f1=f1, pbar0=pbar0, pbar1=pbar1,
                         fbar0=fbar0, fbar1=fbar1, lambdas=tuple(lam),
                         E1=E1, E2=E2, A0=A0, A1=A1, B1=B1, B2=B2, F1=F1, F2=F2)


def _as_pair(duals) -> tuple:
    if isinstance(duals, DualPair):
        return duals.u0, duals.u1
    return duals[0], duals[1]


def j_expansion_check(J: DiffOperator, rc: RecurrenceCoeffs,
                      duals: Sequence[MomentForm], M: int) -> Report:
    """Verify the four shifted-transpose expansions (tags Eq-9.1..Eq-9.4),
    the eigen transport J(u_n) = lambda_n u_n on the available duals, and
    the source identities Eq-7.1, Eq-7.2, Eq-8.1, Eq-8.2, all moment-wise
    to order M. Needs duals u_0..u_5 carrying order >= M + 4."""
    if len(duals) < 6:
        raise ValueError("need the duals u_0..u_5")
    for u in duals[:6]:
        if u.order < M + 4:
            raise OrderExceeded(f"duals must carry order >= {M + 4}")
    it = intermediates(J, rc)
    lam = it.lambdas
    u0, u1 = duals[0], duals[1]
    report = Report("j-expansions")

    for n in range(6):
        require_equal(J.transpose_apply(duals[n]), lam[n] * duals[n], M,
                      f"Eq-J(u_n)(n={n})")
        report.add(f"Eq-J(u_n)(n={n})", horizon=M)

    j1u0 = J.shifted(1).transpose_apply(u0)
    j1u1 = J.shifted(1).transpose_apply(u1)
    j2u0 = J.shifted(2).transpose_apply(u0)
    j2u1 = J.shifted(2).transpose_apply(u1)

    expansions = (
        ("Eq-9.1", j1u0, it.p0, it.p1),
        ("Eq-9.2", j1u1, it.f0, it.f1),
        ("Eq-9.3", j2u0, it.pbar0, it.pbar1),
        ("Eq-9.4", j2u1, it.fbar0, it.fbar1),
    )
    for tag, lhs, c0, c1 in expansions:
        require_equal(lhs, combine([(c0, u0), (c1, u1)]), M, tag)
        report.add(tag, horizon=M)

    # Eq-7.1:  lam2 u2 = lam0 E1 u0 - (1/gamma1) J^(1)(u0) + lam1 A0 u1
    lhs = lam[2] * duals[2]
    rhs = (lam[0] * u0.left_mul(it.E1)
           - (1 / rc.gamma(1)) * j1u0
           + lam[1] * u1.left_mul(it.A0))
    require_equal(lhs, rhs, M, "Eq-7.1")
    report.add("Eq-7.1", horizon=M)

    # Eq-8.1:  lam3 u3 = lam0 B1 u0 - B1' J^(1)(u0) + lam1 F1 u1 - F1' J^(1)(u1)
    lhs = lam[3] * duals[3]
    rhs = (lam[0] * u0.left_mul(it.B1) - j1u0.left_mul(it.B1.derivative())
           + lam[1] * u1.left_mul(it.F1) - j1u1.left_mul(it.F1.derivative()))
    require_equal(lhs, rhs, M, "Eq-8.1")
    report.add("Eq-8.1", horizon=M)

    # Eq-7.2:  lam4 u4 = lam0 E2 u0 - E2' J^(1)(u0) + (1/2) E2'' J^(2)(u0)
    #                    + lam1 A1 u1 - A1' J^(1)(u1)
    lhs = lam[4] * duals[4]
    rhs = (lam[0] * u0.left_mul(it.E2)
           - j1u0.left_mul(it.E2.derivative())
           + _HALF * j2u0.left_mul(it.E2.derivative(2))
           + lam[1] * u1.left_mul(it.A1)
           - j1u1.left_mul(it.A1.derivative()))
    require_equal(lhs, rhs, M, "Eq-7.2")
    report.add("Eq-7.2", horizon=M)

    # Eq-8.2:  lam5 u5 = lam0 B2 u0 - B2' J^(1)(u0) + (1/2) B2'' J^(2)(u0)
    #                    + lam1 F2 u1 - F2' J^(1)(u1) + (1/2) F2'' J^(2)(u1)
    lhs = lam[5] * duals[5]
    rhs = (lam[0] * u0.left_mul(it.B2)
           - j1u0.left_mul(it.B2.derivative())
           + _HALF * j2u0.left_mul(it.B2.derivative(2))
           + lam[1] * u1.left_mul(it.F2)
           - j1u1.left_mul(it.F2.derivative())
           + _HALF * j2u1.left_mul(it.F2.derivative(2)))
    require_equal(lhs, rhs, M, "Eq-8.2")
    report.add("Eq-8.2", horizon=M)
    return report


def lemma_identities_check(J: DiffOperator, rc: RecurrenceCoeffs, duals,
                           M: int) -> Report:
    """Verify the three fundamental-pair identities to order M
    (tags Eq-Da2u0, Eq-Da2u1, Eq-Dcomplete); duals must carry M + 4."""
    u0, u1 = _as_pair(duals)
    for u in (u0, u1):
        if u.order < M + 4:
            raise OrderExceeded(f"duals must carry order >= {M + 4}")
    it = intermediates(J, rc)
    a1, a2 = J.coeff(1), J.coeff(2)
    a11 = a1[1]
    report = Report("fundamental-pair-identities")

    # Eq-Da2u0:  D(a2 u0) = (2 p0 + 4 a1) u0 + 2 p1 u1
    lhs = u0.left_mul(a2).derivative()
    rhs = combine([(2 * it.p0 + 4 * a1, u0), (2 * it.p1, u1)])
    require_equal(lhs, rhs, M, "Eq-Da2u0")
    report.add("Eq-Da2u0", horizon=M)

    # Eq-Da2u1:  (1/2) D^2(a2 u1) - 3 a1^[1] u1 = D(f0 u0 + (2 a1 + f1) u1)
    lhs = _HALF * u1.left_mul(a2).derivative().derivative() - 3 * a11 * u1
    rhs = combine([(it.f0, u0), (2 * a1 + it.f1, u1)]).derivative()
    require_equal(lhs, rhs, M, "Eq-Da2u1")
    report.add("Eq-Da2u1", horizon=M)

    # Eq-Dcomplete:  D(pbar0 u0 + pbar1 u1) + (2 a1 + 4 p0) u0 + 4 p1 u1 = 0
    expr = (combine([(it.pbar0, u0), (it.pbar1, u1)]).derivative()
            + combine([(2 * a1 + 4 * it.p0, u0), (4 * it.p1, u1)]))
    require_equal(expr, MomentForm.zero(expr.order), M, "Eq-Dcomplete")
    report.add("Eq-Dcomplete", horizon=M)
    return report


class ClassicalSystem:
    """The matrix functional system D(Phi U) + Psi U = 0 on U = (u_0, u_1).

    Degree bounds: deg phi11 <= 1, deg phi12 <= 1, deg phi21 <= 2,
    deg phi22 <= 1; Psi row one is (0, 1), row two is (2 E1, 2 A0).
    """

    __slots__ = ("phi", "psi")

    def __init__(self, phi, psi):
        phi = tuple(tuple(row) for row in phi)
        psi = tuple(tuple(row) for row in psi)
        bounds = ((1, 1), (2, 1))
        for i in range(2):
            for j in range(2):
                if phi[i][j].degree > bounds[i][j]:
                    raise ArithmeticError(
                        f"deg phi[{i + 1},{j + 1}] exceeds {bounds[i][j]}")
        if not psi[0][0].is_zero() or psi[0][1] != ONE:
            raise ArithmeticError("Psi row one must be (0, 1)")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "psi", psi)


def _check_a1_coupling(J: DiffOperator, rc: RecurrenceCoeffs):
    """a_1 = -(1/(3 gamma_1))(x - beta_0) with rc's own beta_0, gamma_1."""
    b0, g1 = rc.beta(0), rc.gamma(1)
    expected = Rational(-1, 3) / g1 * (X - Polynomial.constant(b0))
    if J.coeff(1) != expected:
        raise HypothesisViolated(
            "a1 = -(1/(3 gamma1))(x - beta0)",
            witness=f"a1 = {J.coeff(1)}, expected {expected}")


def _integer_reciprocal_m(value: Rational):
    """The m >= 0 with value = 1/(m+1), or None if there is none; a rational
    equals 1/(m+1) for at most one m, so this decides every m at once."""
    if value == 0:
        return None
    r = 1 / value
    if r.denominator == 1 and r >= 1:
        return int(r.numerator) - 1
    return None


def phi_theorem4(J: DiffOperator, rc: RecurrenceCoeffs) -> ClassicalSystem:
    """The classical system of the a_2 = 0 family.

    Hypothesis gates: a_2 = 0; a_1 tied to (beta_0, gamma_1); alpha_1 = 0
    (forced, tag Eq-p1=0); admissibility a_3^[3] != 1/(gamma_1 (m+1)).
    Each Phi entry is built from its defining form and from its printed
    closed form; any disagreement raises ClosedFormMismatch.
    """
    if J.shifted_form or J.order > 3:
        raise HypothesisViolated("third-order normal-form operator",
                                 witness=f"order {J.order}")
    if not J.coeff(2).is_zero():
        raise HypothesisViolated("a2 = 0", witness=str(J.coeff(2)))
    _check_a1_coupling(J, rc)
    if rc.alpha(1) != 0:
        raise HypothesisViolated("alpha1 = 0 (forced by the a2 = 0 family)",
                                 witness=str(rc.alpha(1)))
    g1, g2 = rc.gamma(1), rc.gamma(2)
    t3 = J.coef(3, 3)
    m = _integer_reciprocal_m(t3 * g1)
    if m is not None:
        raise HypothesisViolated("a3^[3] != 1/(gamma1 (m+1))", witness=f"m = {m}")

    it = intermediates(J, rc)
    a1 = J.coeff(1)
    b0, b1, b2 = rc.beta(0), rc.beta(1), rc.beta(2)
    al2, al3 = rc.alpha(2), rc.alpha(3)

    built = {
        "phi11": -g1 * it.f0,
        "phi12": -g1 * (2 * a1 + it.f1),
        "phi21": it.pbar0,
        "phi22": it.pbar1,
    }
    closed = {
        "phi11": Polynomial([
            t3 * (al2 * b0 - g1) - al2 * b0 / (3 * g1) + 1,
            al2 * (Rational(1, 3) / g1 - t3),
        ]),
        "phi12": Polynomial([
            (-2 * b0 + b1 * (2 - 3 * t3 * g1)) / 3,
            t3 * g1,
        ]),
        "phi21": Polynomial([
            (al3 * (al2 * b0 - g1) * (1 - 9 * t3 * g1)
             + 2 * b0 * (b0 + b2 * (-1 + 6 * t3 * g1)) * g2) / (3 * g1 * g2),
            (al2 * al3 * (-1 + 9 * t3 * g1)
             - 2 * (b2 * (-1 + 6 * t3 * g1) + b0 * (1 + 6 * t3 * g1)) * g2)
            / (3 * g1 * g2),
            4 * t3,
        ]),
        "phi22": Polynomial([
            (al3 * b1 * (-1 + 9 * t3 * g1) + 3 * (1 - 4 * t3 * g1) * g2) / (3 * g2),
            al3 * (1 - 9 * t3 * g1) / (3 * g2),
        ]),
    }
    for entry in built:
        if built[entry] != closed[entry]:
            raise ClosedFormMismatch(entry, built[entry], closed[entry])

    psi = ((Polynomial.zero(), ONE), (2 * it.E1, 2 * it.A0))
    return ClassicalSystem((
        (built["phi11"], built["phi12"]),
        (built["phi21"], built["phi22"]),
    ), psi)


def varpi_theorem5(J: DiffOperator, rc: RecurrenceCoeffs, tau) -> ClassicalSystem:
    """The classical system of the a_3 = tau a_2 family.

    Hypothesis gates: tau != 0; a_3 = tau a_2 exactly; deg a_2 <= 1
    (a_2^[2] = 0); a_1 tied to (beta_0, gamma_1); alpha_4 = alpha_2
    gamma_3 / gamma_2; the x-coefficient of varpi12 differs from every
    1/(m+1). Entries are cross-checked against the tabulated closed forms.
    """
    tau = as_rational(tau)
    if tau == 0:
        raise HypothesisViolated("tau != 0")
    if J.shifted_form or J.order > 3:
        raise HypothesisViolated("third-order normal-form operator",
                                 witness=f"order {J.order}")
    a1, a2, a3 = J.coeff(1), J.coeff(2), J.coeff(3)
    if a3 != tau * a2:
        raise HypothesisViolated("a3 = tau a2",
                                 witness=f"a3 = {a3}, tau a2 = {tau * a2}")
    if a2.degree > 1:
        raise HypothesisViolated("a2^[2] = 0", witness=str(a2))
    _check_a1_coupling(J, rc)
    if rc.alpha(4) != rc.alpha(2) * rc.gamma(3) / rc.gamma(2):
        raise HypothesisViolated(
            "alpha4 = alpha2 gamma3 / gamma2",
            witness=f"alpha4 = {rc.alpha(4)}")
    g1, g2 = rc.gamma(1), rc.gamma(2)
    b0, b1, b2, b3 = (rc.beta(i) for i in range(4))
    a02, a12 = a2[0], a2[1]
    w = (2 * (b1 - b3) + 3 * g1 * a12) / (6 * tau)
    m = _integer_reciprocal_m(w)
    if m is not None:
        raise HypothesisViolated(
            "a1^[2] != 2 tau/(gamma1 (m+1)) - (2/(3 gamma1))(beta1 - beta3)",
            witness=f"m = {m}")

    it = intermediates(J, rc)
    a11 = a1[1]
    scale = 1 / (3 * a11)
    varpi11 = scale * (1 / (2 * tau) * it.fbar0 + it.f0)
    varpi12 = scale * (2 * a1 + it.f1 - 1 / (2 * tau) * (a2 - it.fbar1))
    varpi21 = it.pbar0 + Rational(2, 3) * it.A0 * varpi11
    varpi22 = it.pbar1 + Rational(2, 3) * it.A0 * varpi12
    for name, p in (("varpi11", varpi11), ("varpi12", varpi12)):
        if p.degree > 1:
            raise ClosedFormMismatch(name, p, "(degree <= 1 required)")

    al1, al2, al3 = rc.alpha(1), rc.alpha(2), rc.alpha(3)
    built = {
        "varpi11": varpi11, "varpi12": varpi12,
        "varpi21": varpi21, "varpi22": varpi22,
    }
    closed = {
        "varpi11": Polynomial([
            (3 * b0 * g2 + al2 * b0 * (b1 + b2 - 2 * (b3 + tau))
             + g1 * (-2 * b0 - 3 * b1 + 2 * b3 + 6 * tau)) / (6 * g1 * tau),
            (3 * (g1 - g2) - al2 * (b1 + b2 - 2 * (b3 + tau))) / (6 * g1 * tau),
        ]),
        "varpi12": Polynomial([
            (g1 * (3 * g1 * a02 - 2 * (al2 + 2 * b0 * tau + b1 * (b1 - b3 - 2 * tau)))
             + al1 * (-g1 + 3 * g2 + al2 * (b1 + b2 - 2 * (b3 + tau))))
            / (6 * g1 * tau),
            (3 * g1 * a12 + 2 * b1 - 2 * b3) / (6 * tau),
        ]),
        "varpi21": Polynomial([
            (-3 * al1 * b0 * g2 ** 2
             + g2 * g1 * (al1 * (2 * b0 - 2 * b3 + 3 * (b1 + tau))
                          + 6 * b0 * (b0 - b2) * tau)
             + al2 * b0 * (3 * al3 * g1 * tau
                           - al1 * g2 * (b1 + b2 - 2 * b3 + tau))
             - 3 * al3 * g1 ** 2 * tau) / (9 * g1 ** 2 * g2 * tau),
            (al2 * (al1 * g2 * (b1 + b2 - 2 * b3 + tau) - 3 * al3 * g1 * tau)
             + 3 * g2 * (al1 * (g2 - g1) + 2 * (b2 - b0) * g1 * tau))
            / (9 * g1 ** 2 * g2 * tau),
        ]),
        "varpi22": Polynomial([
            (al1 * g1 * (g2 * (-3 * g1 * a02 + 7 * b0 * tau
                               + 2 * (b1 ** 2 + b1 * (tau - b3) - 3 * b2 * tau))
                         + al2 * (2 * g2 + 3 * al3 * tau))
             + al1 ** 2 * (-g2) * (-g1 + 3 * g2 + al2 * (b1 + b2 - 2 * b3 + tau))
             - 3 * g1 ** 2 * tau * (al3 * b1 - 3 * g2)) / (9 * g1 ** 2 * g2 * tau),
            (3 * al3 * g1 * tau - al1 * g2 * (3 * g1 * a12 + 2 * b1 - 2 * b3 + 3 * tau))
            / (9 * g1 * g2 * tau),
        ]),
    }
    for entry in built:
        if built[entry] != closed[entry]:
            raise ClosedFormMismatch(f"Table-1-{entry}", built[entry], closed[entry])

    psi = ((Polynomial.zero(), ONE), (2 * it.E1, 2 * it.A0))
    return ClassicalSystem((
        (varpi11, varpi12),
        (varpi21, varpi22),
    ), psi)


def classical_system_check(sys, duals, M: int) -> Report:
    """Verify both rows of D(Phi U) + Psi U = 0 moment-wise to order M
    (tags Eq-EqClassic-1/2); duals must carry order >= M + 3. Accepts a
    ClassicalSystem or a raw (phi, psi) pair of 2x2 polynomial matrices."""
    if isinstance(sys, ClassicalSystem):
        phi, psi = sys.phi, sys.psi
    else:
        phi, psi = sys
    u0, u1 = _as_pair(duals)
    for u in (u0, u1):
        if u.order < M + 3:
            raise OrderExceeded(f"duals must carry order >= {M + 3}")
    report = Report("classical-system")
    for r, tag in enumerate(("Eq-EqClassic-1", "Eq-EqClassic-2")):
        expr = (combine([(phi[r][0], u0), (phi[r][1], u1)]).derivative()
                + combine([(psi[r][0], u0), (psi[r][1], u1)]))
        require_equal(expr, MomentForm.zero(expr.order), M, tag)
        report.add(tag, horizon=M)
    return report


def derivative_mps(P) -> MPSPrefix:
    """The normalized derivative sequence Q_n = P'_{n+1} / (n+1)."""
    if len(P) < 2:
        raise ValueError("need at least P_0 and P_1")
    return MPSPrefix([P[n + 1].derivative() / (n + 1) for n in range(len(P) - 1)])


class HahnVerdict:
    """Outcome of the derivative-sequence test: positive iff the derivative
    MPS is itself 2-orthogonal; carries the fitted recurrence or the
    failure witness."""

    __slots__ = ("positive", "rc", "witness")

    def __init__(self, positive, rc=None, witness=None):
        self.positive = positive
        self.rc = rc
        self.witness = witness

    def __bool__(self):
        return self.positive

    def __repr__(self):
        if self.positive:
            return "HahnVerdict(positive)"
        return f"HahnVerdict(negative: {self.witness})"


def hahn_check(P) -> HahnVerdict:
    """Hahn's property of P: fit a four-term recurrence on the normalized
    derivative sequence; a fit failure is a negative verdict, not an error."""
    if len(P) < 5:
        raise ValueError("need P_0..P_4 to test the derivative sequence")
    try:
        fitted = fit_2orth_recurrence(derivative_mps(P))
    except NotTwoOrthogonal as exc:
        return HahnVerdict(False, witness=(exc.index, exc.reason))
    return HahnVerdict(True, rc=fitted)
