"""Seeded random generation of rationals, recurrence coefficients, and
operator families for sweeps and property suites.

Rationals draw numerator and denominator uniformly from [1, 20] with a
random sign, rejection-resampled against every nonzero/admissibility
constraint; small magnitudes keep intermediate values compact.

Theorem sweeps draw a deterministic mixture of operator shapes: the
qualifying subfamily whose eigen-MPS is 2-orthogonal with matching
(beta_0, gamma_1), plus deliberate scope-miss shapes exercising the
hypotheses-unmet path (see the sample_theorem* docstrings).
"""
from __future__ import annotations

import random
from math import comb

from .backend import Rat as Rational
from .diffop import DiffOperator
from .poly import Polynomial
from .two_orth import RecurrenceCoeffs

__all__ = ["ParamSampler"]


class ParamSampler:
    """Deterministic rational/operator sampler over random.Random(seed)."""

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def rat(self, nonzero: bool = False) -> Rational:
        v = Rational(self.rng.randint(1, 20) * self.rng.choice((1, -1)),
                     self.rng.randint(1, 20))
        # sampled numerators never vanish, so v != 0 already
        assert not nonzero or v != 0
        return v

    def rat_avoiding(self, *banned) -> Rational:
        while True:
            v = self.rat()
            if all(v != b for b in banned):
                return v

    def poly(self, max_degree: int, monic: bool = False) -> Polynomial:
        coeffs = [self.rat() for _ in range(max_degree + 1)]
        if monic:
            coeffs[-1] = Rational(1)
        return Polynomial(coeffs)

    def recurrence(self, depth: int, *, alpha1_zero: bool = False,
                   tie_alpha4: bool = False) -> RecurrenceCoeffs:
        """A regular random rc with beta_0..beta_{depth-1}, alpha_1..alpha_depth,
        gamma_1..gamma_depth (all gammas nonzero)."""
        betas = [self.rat() for _ in range(depth)]
        alphas = [self.rat() for _ in range(depth)]
        gammas = [self.rat(nonzero=True) for _ in range(depth)]
        if alpha1_zero:
            alphas[0] = Rational(0)
        if tie_alpha4:
            if depth < 4:
                raise ValueError("tie_alpha4 needs depth >= 4")
            alphas[3] = alphas[1] * gammas[2] / gammas[1]
        return RecurrenceCoeffs(betas, alphas, gammas)

    def mps_polys(self, n_max: int) -> list:
        """An arbitrary random MPS prefix (monic, full degrees)."""
        out = []
        for n in range(n_max + 1):
            out.append(Polynomial([self.rat() for _ in range(n)] + [1]))
        return out

    def operator(self, max_order: int = 3, lowering: int | None = None) -> DiffOperator:
        """A random normal-form operator; with lowering=k the coefficients
        satisfy a_nu = 0 below k and deg a_nu <= nu - k."""
        k = lowering if lowering is not None else 0
        coeffs = [Polynomial.zero()] * k
        for nu in range(k, max_order + 1):
            coeffs.append(self.poly(self.rng.randint(0, nu - k)))
        return DiffOperator(coeffs)

    def _a0_avoiding(self, base: list) -> Rational:
        """A constant a_0 making every lambda_n = a_0 + base_n nonzero."""
        while True:
            a0 = self.rat(nonzero=True)
            if all(a0 + b != 0 for b in base):
                return a0

    def sample_theorem4(self, horizon: int) -> dict:
        """One seeded draw for the a_2 = 0 family.

        Shapes (deterministic mixture): 'qualifying' (a_3 = 1, whose
        eigen-MPS is 2-orthogonal with matching implied values),
        'const-offscale' (a_3 a nonunit constant: 2-orthogonal eigen-MPS
        but mismatched gamma_1), 'generic-cubic' (full random a_3: the
        eigen-MPS is not 2-orthogonal). All shapes keep lambda_n nonzero
        and pairwise distinct up to the horizon.
        """
        while True:
            c1 = self.rat(nonzero=True)
            c0 = self.rat()
            roll = self.rng.random()
            if roll < 0.7:
                shape = "qualifying"
                a3 = Polynomial([1])
            elif roll < 0.85:
                shape = "const-offscale"
                a3 = Polynomial([self.rat_avoiding(Rational(0), Rational(1))])
            else:
                shape = "generic-cubic"
                a3 = self.poly(3)
                if a3.degree != 3:
                    continue
            t3 = a3[3]
            g1_implied = Rational(-1, 3) / c1
            m = _reciprocal_m(t3 * g1_implied)
            if m is not None:
                continue  # inadmissible a_3^[3]
            base = [n * c1 + comb(n, 3) * t3 for n in range(horizon + 1)]
            if len(set(base)) != len(base):
                continue  # repeated eigenvalues
            a0 = self._a0_avoiding(base)
            J = DiffOperator([Polynomial([a0]), Polynomial([c0, c1]),
                              Polynomial.zero(), a3])
            return {"J": J, "shape": shape}

    def sample_theorem5(self, horizon: int) -> dict:
        """One seeded draw for the a_3 = tau a_2 family.

        Shapes: 'qualifying' (a_2 = s_0 constant, tau = 1/s_0, so a_3 = 1),
        'tau-offscale' (constant a_2 but tau s_0 != 1: mismatched gamma_1),
        'linear-a2' (deg a_2 = 1: eigen-MPS not 2-orthogonal).
        """
        while True:
            c1 = self.rat(nonzero=True)
            c0 = self.rat()
            s0 = self.rat(nonzero=True)
            roll = self.rng.random()
            if roll < 0.7:
                shape = "qualifying"
                a2 = Polynomial([s0])
                tau = 1 / s0
            elif roll < 0.85:
                shape = "tau-offscale"
                a2 = Polynomial([s0])
                tau = self.rat_avoiding(Rational(0), 1 / s0)
            else:
                shape = "linear-a2"
                a2 = Polynomial([s0, self.rat(nonzero=True)])
                tau = self.rat(nonzero=True)
            # a_2^[2] = a_3^[3] = 0 here, so lambda_n = a_0 + n c_1: distinct
            base = [n * c1 for n in range(horizon + 1)]
            a0 = self._a0_avoiding(base)
            J = DiffOperator([Polynomial([a0]), Polynomial([c0, c1]),
                              a2, tau * a2])
            return {"J": J, "tau": tau, "shape": shape}


def _reciprocal_m(value) -> int | None:
    """m >= 0 with value = 1/(m+1), if any."""
    if value == 0:
        return None
    r = 1 / value
    if r.denominator == 1 and r >= 1:
        return int(r.numerator) - 1
    return None
