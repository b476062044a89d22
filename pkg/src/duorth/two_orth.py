"""2-orthogonal monic polynomial sequences.

Generation from recurrence coefficients, four-term-recurrence fitting,
dual-sequence moments by triangular basis change, the coupled E/A/B/F
polynomial pairs expressing every dual element over (u_0, u_1), and the
moment-level identity checks for the dual recurrence, the decompositions
and the orthogonality conditions.
"""
from __future__ import annotations

from typing import Sequence

from .backend import Rat as Rational
from .errors import (IdentityViolated, MissingCoefficient, NotTwoOrthogonal,
                     OrderExceeded, ZeroGamma)
from .forms import MomentForm, combine, require_equal as _require_equal
from .poly import ONE, Polynomial, X, as_rational
from .reporting import Report

__all__ = [
    "RecurrenceCoeffs", "MPSPrefix", "DualPair", "generate",
    "expand_in_basis", "structure_coeffs", "fit_2orth_recurrence",
    "dual_table", "dual_moments", "dual_sequence", "dual_pair",
    "EABF", "eabf_polys", "check_dual_identities", "orthogonality_check",
]


class RecurrenceCoeffs:
    """The sequences beta_n (n >= 0), alpha_{n+1} and gamma_{n+1} (n >= 0)
    defining a 2-orthogonal MPS; every stored gamma must be nonzero."""

    __slots__ = ("betas", "alphas", "gammas")

    def __init__(self, betas, alphas, gammas):
        b = tuple(as_rational(v) for v in betas)
        a = tuple(as_rational(v) for v in alphas)
        g = tuple(as_rational(v) for v in gammas)
        for i, v in enumerate(g):
            if v == 0:
                raise ZeroGamma(f"gamma_{i + 1} = 0 breaks regularity")
        object.__setattr__(self, "betas", b)
        object.__setattr__(self, "alphas", a)
        object.__setattr__(self, "gammas", g)

    def beta(self, n: int) -> Rational:
        if not 0 <= n < len(self.betas):
            raise MissingCoefficient(f"beta_{n} not stored")
        return self.betas[n]

    def alpha(self, n: int) -> Rational:
        if not 1 <= n <= len(self.alphas):
            raise MissingCoefficient(f"alpha_{n} not stored")
        return self.alphas[n - 1]

    def gamma(self, n: int) -> Rational:
        if not 1 <= n <= len(self.gammas):
            raise MissingCoefficient(f"gamma_{n} not stored")
        return self.gammas[n - 1]

    def __eq__(self, other):
        if isinstance(other, RecurrenceCoeffs):
            return (self.betas == other.betas and self.alphas == other.alphas
                    and self.gammas == other.gammas)
        return NotImplemented

    def __hash__(self):
        return hash((self.betas, self.alphas, self.gammas))

    def agrees_with(self, other: "RecurrenceCoeffs") -> bool:
        """Equality on the common stored prefix of each sequence."""
        nb = min(len(self.betas), len(other.betas))
        na = min(len(self.alphas), len(other.alphas))
        ng = min(len(self.gammas), len(other.gammas))
        return (self.betas[:nb] == other.betas[:nb]
                and self.alphas[:na] == other.alphas[:na]
                and self.gammas[:ng] == other.gammas[:ng])

    def __repr__(self):
        return (f"RecurrenceCoeffs(beta[0..{len(self.betas) - 1}], "
                f"alpha[1..{len(self.alphas)}], gamma[1..{len(self.gammas)}])")


class MPSPrefix:
    """A monic polynomial sequence prefix: entry n has degree exactly n."""

    __slots__ = ("polys",)

    def __init__(self, polys: Sequence[Polynomial]):
        ps = tuple(polys)
        for n, p in enumerate(ps):
            if p.degree != n or not p.is_monic():
                raise ValueError(f"entry {n} is not monic of degree {n}")
        object.__setattr__(self, "polys", ps)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, n):
        return self.polys[n]

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other):
        if isinstance(other, MPSPrefix):
            return self.polys == other.polys
        return NotImplemented

    def __repr__(self):
        return f"MPSPrefix(n <= {len(self.polys) - 1})"


class DualPair:
    """The canonical regular functional vector (u_0, u_1)."""

    __slots__ = ("u0", "u1")

    def __init__(self, u0: MomentForm, u1: MomentForm, P1: Polynomial | None = None):
        if u0.moment(0) != 1:
            raise ValueError("(u_0)_0 must be 1")
        if P1 is not None:
            if u0.act(P1) != 0:
                raise ValueError("<u_0, P_1> must vanish")
            if u1.act(P1) != 1:
                raise ValueError("<u_1, P_1> must be 1")
        self.u0 = u0
        self.u1 = u1


def generate(rc: RecurrenceCoeffs, n_max: int) -> MPSPrefix:
    """Run the four-term recurrence exactly: P_0 = 1, P_1 = x - beta_0,
    P_2 = (x - beta_1) P_1 - alpha_1, and
    P_{n+3} = (x - beta_{n+2}) P_{n+2} - alpha_{n+2} P_{n+1} - gamma_{n+1} P_n.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    polys = [ONE]
    if n_max >= 1:
        polys.append(X - Polynomial.constant(rc.beta(0)))
    if n_max >= 2:
        polys.append((X - Polynomial.constant(rc.beta(1))) * polys[1]
                     - Polynomial.constant(rc.alpha(1)))
    for m in range(3, n_max + 1):
        nxt = ((X - Polynomial.constant(rc.beta(m - 1))) * polys[m - 1]
               - rc.alpha(m - 1) * polys[m - 2]
               - rc.gamma(m - 2) * polys[m - 3])
        polys.append(nxt)
    return MPSPrefix(polys)


def expand_in_basis(q: Polynomial, P: Sequence[Polynomial]) -> list:
    """Coefficients c with q = sum_m c_m P_m, by descending triangular
    elimination; requires deg q < len(P)."""
    if not q.is_zero() and q.degree >= len(P):
        raise OrderExceeded(f"degree {q.degree} exceeds basis length {len(P)}")
    coefs = [Rational(0)] * len(P)
    while not q.is_zero():
        d = q.degree
        c = q[d] / P[d].leading()
        coefs[d] = c
        q = q - c * P[d]
        if not q.is_zero() and q.degree >= d:
            raise ArithmeticError("basis elimination failed to reduce degree")
    return coefs


def structure_coeffs(P: MPSPrefix | Sequence[Polynomial]):
    """Expand x P_m over the P basis for m <= len(P)-2.

    Returns (betas, chi) with betas[m] the coefficient on P_m, and
    chi[n] the row (chi_{n,0}, .., chi_{n,n}) from x P_{n+1}.
    """
    if len(P) < 2:
        raise ValueError("need at least P_0 and P_1")
    betas = []
    chi = []
    for m in range(len(P) - 1):
        coefs = expand_in_basis(X * P[m], P)
        if coefs[m + 1] != 1:
            raise ArithmeticError("monicity lost in structure expansion")
        betas.append(coefs[m])
        if m >= 1:
            chi.append(tuple(coefs[:m]))
    return betas, chi


def fit_2orth_recurrence(P: MPSPrefix | Sequence[Polynomial]) -> RecurrenceCoeffs:
    """Recover (beta, alpha, gamma) from the structure expansion.

    Succeeds iff every chi_{n,nu} with nu < n-1 vanishes exactly and every
    recovered gamma is nonzero; raises NotTwoOrthogonal with the first
    failing structure row otherwise.
    """
    if len(P) < 4:
        raise ValueError("need P_0..P_3 to fit a four-term recurrence")
    betas, chi = structure_coeffs(P)
    alphas = []
    gammas = []
    for n, row in enumerate(chi):
        # row comes from x P_{n+1}; entries chi_{n, 0..n}
        for nu in range(len(row) - 2):
            if row[nu] != 0:
                raise NotTwoOrthogonal(n, f"chi_{{{n},{nu}}} = {row[nu]} != 0")
        alphas.append(row[-1])  # chi_{n,n} = alpha_{n+1}
        if len(row) >= 2:
            g = row[-2]  # chi_{n,n-1} = gamma_n
            if g == 0:
                raise NotTwoOrthogonal(n, f"gamma_{n} = 0 breaks regularity")
            gammas.append(g)
    return RecurrenceCoeffs(betas, alphas, gammas)


def dual_table(P: MPSPrefix | Sequence[Polynomial], N: int) -> list:
    """Rows c_{n, .} of the basis change x^n = sum_m c_{n,m} P_m, n <= N."""
    if len(P) <= N:
        raise OrderExceeded(f"need P_0..P_{N}, got {len(P)} polynomials")
    return [expand_in_basis(Polynomial.monomial(n), P) for n in range(N + 1)]


def dual_moments(P: MPSPrefix | Sequence[Polynomial], k: int, N: int) -> MomentForm:
    """Moments of the dual form u_k to order N: (u_k)_n = c_{n,k}."""
    if k > N:
        raise OrderExceeded(f"dual index {k} exceeds requested order {N}")
    table = dual_table(P, N)
    return MomentForm([table[n][k] for n in range(N + 1)])


def dual_sequence(P, k_max: int, N: int) -> list:
    """[u_0, .., u_{k_max}] to order N from a single basis-change table."""
    if k_max > N:
        raise OrderExceeded(f"dual index {k_max} exceeds requested order {N}")
    table = dual_table(P, N)
    return [MomentForm([table[n][k] for n in range(N + 1)])
            for k in range(k_max + 1)]


def dual_pair(P, N: int) -> DualPair:
    u0, u1 = dual_sequence(P, 1, N)
    return DualPair(u0, u1, P[1])


class EABF:
    """Lazy E/A/B/F polynomial pairs over the regular vector (u_0, u_1):
    u_{2n} = E_n u_0 + A_{n-1} u_1 and u_{2n+1} = B_n u_0 + F_n u_1.

    Half-stage schedule: (B_{j}, F_{j}) need rc through index 2j;
    (E_{j+1}, A_j) need rc through index 2j+1. Coefficients are pulled
    from rc only as far as actually demanded.
    """

    def __init__(self, rc: RecurrenceCoeffs):
        self.rc = rc
        g1 = rc.gamma(1)
        self._E = [ONE, (X - Polynomial.constant(rc.beta(0))) / g1]
        self._A = [Polynomial.constant(-rc.alpha(1) / g1)]  # A_0; A_{-1} = 0
        self._B = [Polynomial.zero()]
        self._F = [ONE]
        self._stage = 0
        self._first_pending = True

    def _advance(self):
        """Run the next half-stage. Stage n runs as two halves:
        (B_{n+1}, F_{n+1}) then (E_{n+2}, A_{n+1})."""
        rc = self.rc
        n = self._stage
        if self._first_pending:
            xb = X - Polynomial.constant(rc.beta(2 * n + 1))
            al, g = rc.alpha(2 * n + 2), rc.gamma(2 * n + 2)
            self._B.append((xb * self._B[n] - al * self._E[n + 1] - self._E[n]) / g)
            a_prev = self._A[n - 1] if n >= 1 else Polynomial.zero()
            self._F.append((xb * self._F[n] - a_prev - al * self._A[n]) / g)
            self._first_pending = False
        else:
            xb = X - Polynomial.constant(rc.beta(2 * n + 2))
            al, g = rc.alpha(2 * n + 3), rc.gamma(2 * n + 3)
            self._E.append((xb * self._E[n + 1] - self._B[n] - al * self._B[n + 1]) / g)
            self._A.append((xb * self._A[n] - al * self._F[n + 1] - self._F[n]) / g)
            self._first_pending = True
            self._stage = n + 1

    def E(self, n: int) -> Polynomial:
        while len(self._E) <= n:
            self._advance()
        p = self._E[n]
        if p.degree != n:
            raise ArithmeticError(f"deg E_{n} != {n}")
        return p

    def A(self, n: int) -> Polynomial:
        if n == -1:
            return Polynomial.zero()
        while len(self._A) <= n:
            self._advance()
        p = self._A[n]
        if p.degree > n:
            raise ArithmeticError(f"deg A_{n} > {n}")
        return p

    def B(self, n: int) -> Polynomial:
        while len(self._B) <= n:
            self._advance()
        p = self._B[n]
        if p.degree > n:
            raise ArithmeticError(f"deg B_{n} > {n}")
        return p

    def F(self, n: int) -> Polynomial:
        while len(self._F) <= n:
            self._advance()
        p = self._F[n]
        if p.degree != n:
            raise ArithmeticError(f"deg F_{n} != {n}")
        return p

    def even_pair(self, n: int):
        """(E_n, A_{n-1}) with u_{2n} = E_n u_0 + A_{n-1} u_1."""
        return self.E(n), self.A(n - 1)

    def odd_pair(self, n: int):
        """(B_n, F_n) with u_{2n+1} = B_n u_0 + F_n u_1."""
        return self.B(n), self.F(n)


def eabf_polys(rc: RecurrenceCoeffs, n_max: int):
    """The four lists E_n, A_n, B_n, F_n for 0 <= n <= n_max."""
    eabf = EABF(rc)
    E = [eabf.E(n) for n in range(n_max + 1)]
    B = [eabf.B(n) for n in range(n_max + 1)]
    F = [eabf.F(n) for n in range(n_max + 1)]
    A = [eabf.A(n) for n in range(n_max + 1)]
    return E, A, B, F


def check_dual_identities(rc: RecurrenceCoeffs, P, duals: Sequence[MomentForm],
                          M: int) -> Report:
    """Verify the dual four-term recurrence
    x u_n = u_{n-1} + beta_n u_n + alpha_{n+1} u_{n+1} + gamma_{n+1} u_{n+2}
    moment-wise to order M for every n with u_{n+2} available, and the
    decompositions of u_2..u_5 over (u_0, u_1) via the E/A/B/F pairs.
    """
    if len(duals) < 3:
        raise ValueError("need at least u_0..u_2")
    for u in duals:
        if u.order < M + 1:
            raise OrderExceeded(f"duals must carry order >= {M + 1}")
    report = Report("dual-identities")
    x = X
    for n in range(len(duals) - 2):
        lhs = duals[n].left_mul(x)
        rhs = (rc.beta(n) * duals[n]
               + rc.alpha(n + 1) * duals[n + 1]
               + rc.gamma(n + 1) * duals[n + 2])
        if n >= 1:
            rhs = rhs + duals[n - 1]
        _require_equal(lhs, rhs, M, f"dual-recurrence(n={n})")
        report.add(f"dual-recurrence(n={n})", horizon=M)
    eabf = EABF(rc)
    pairs = {
        "Eq-u2": (2, eabf.even_pair(1)),
        "Eq-u3": (3, eabf.odd_pair(1)),
        "Eq-u4": (4, eabf.even_pair(2)),
        "Eq-u5": (5, eabf.odd_pair(2)),
    }
    for tag, (idx, (c0, c1)) in pairs.items():
        if idx >= len(duals):
            continue
        rhs = combine([(c0, duals[0]), (c1, duals[1])])
        upto = min(M, rhs.order, duals[idx].order)
        _require_equal(duals[idx], rhs, upto, tag)
        report.add(tag, horizon=upto)
    return report


def orthogonality_check(P, duals, m_max: int) -> Report:
    """d = 2 orthogonality of the canonical pair: <u_nu, P_m P_n> = 0 for
    n >= 2m + nu + 1, and <u_nu, P_m P_{2m+nu}> != 0, for nu in {0, 1}."""
    if isinstance(duals, DualPair):
        pair = (duals.u0, duals.u1)
    else:
        pair = tuple(duals)[:2]
    report = Report("orthogonality")
    for nu, u in enumerate(pair):
        for m in range(m_max + 1):
            reg_index = 2 * m + nu
            if reg_index >= len(P) or P[m].degree + P[reg_index].degree > u.order:
                break
            val = u.act(P[m] * P[reg_index])
            if val == 0:
                raise IdentityViolated(
                    f"regularity(nu={nu},m={m})", f"<u_{nu}, P_{m} P_{reg_index}>",
                    val, "nonzero")
            n = reg_index + 1
            while n < len(P) and P[m].degree + P[n].degree <= u.order:
                val = u.act(P[m] * P[n])
                if val != 0:
                    raise IdentityViolated(
                        f"orthogonality(nu={nu},m={m})",
                        f"<u_{nu}, P_{m} P_{n}>", val, 0)
                n += 1
            report.add(f"orthogonality(nu={nu},m={m})", horizon=n - 1)
    return report
