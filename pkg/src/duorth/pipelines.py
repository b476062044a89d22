"""End-to-end verification pipelines and seeded sweeps.

A theorem run eigensolves the operator, fits the four-term recurrence,
checks the scope coupling (fitted beta_0, gamma_1 against the values the
operator's a_1 implies) and the theorem hypotheses, then verifies every
functional identity exactly at the requested moment order. Outcomes are
three-valued: "passed", "hypotheses-unmet" (instance outside theorem
scope), or "violated" (an exact identity failed; always reported with its
witness)."""
from __future__ import annotations

from .diffop import DiffOperator
from .errors import (ClosedFormMismatch, HypothesisViolated, IdentityViolated,
                     NonInvertible, NotTwoOrthogonal, RepeatedEigenvalue)
from .eigensolver import eigen_mps, verify_eigen
from .hahn import (classical_system_check, hahn_check, implied_first_coeffs,
                   intermediates, j_expansion_check, lemma_identities_check,
                   phi_theorem4, varpi_theorem5)
from .reporting import Report
from .sampling import ParamSampler
from .serialize import operator_to_tree, poly_to_list, rat_to_str
from .two_orth import (RecurrenceCoeffs, check_dual_identities, dual_sequence,
                       fit_2orth_recurrence, generate, orthogonality_check)

__all__ = ["InstanceResult", "run_theorem4", "run_theorem5",
           "run_identities_rc", "run_identities_operator", "run_sweep"]

PASSED = "passed"
UNMET = "hypotheses-unmet"
VIOLATED = "violated"


class InstanceResult:
    """Outcome of one verification run."""

    def __init__(self, status, report: Report, failure=None, extras=None):
        self.status = status
        self.report = report
        self.failure = failure
        self.extras = extras or {}

    def to_tree(self) -> dict:
        tree = {"status": self.status, "report": self.report.to_tree()}
        if self.failure is not None:
            tree["failure"] = self.failure
        if self.extras:
            tree["extras"] = self.extras
        return tree


def _unmet(report, reason, witness=""):
    failure = {"reason": reason}
    if witness:
        failure["witness"] = str(witness)
    return InstanceResult(UNMET, report, failure)


def _violated(report, exc):
    if isinstance(exc, IdentityViolated):
        failure = {"tag": exc.tag, "where": exc.where,
                   "lhs": exc.lhs, "rhs": exc.rhs}
    elif isinstance(exc, ClosedFormMismatch):
        failure = {"tag": exc.entry, "built": exc.built, "closed": exc.closed}
    else:
        failure = {"tag": "internal", "detail": str(exc)}
    return InstanceResult(VIOLATED, report, failure)


def _eigen_and_fit(J, depth, report):
    try:
        P, lam = eigen_mps(J, depth)
    except NonInvertible as exc:
        return None, _unmet(report, "operator is not an isomorphism", exc)
    except RepeatedEigenvalue as exc:
        return None, _unmet(report, "repeated eigenvalue", exc)
    report.add("eigen-solve", horizon=depth)
    try:
        rc = fit_2orth_recurrence(P)
    except NotTwoOrthogonal as exc:
        return None, _unmet(report, "eigen-MPS is not 2-orthogonal",
                            f"index {exc.index}: {exc.reason}")
    report.add("Eq-rr-2orto-fit", horizon=depth)
    return (P, lam, rc), None


def _scope_match(J, rc, report):
    try:
        b0, g1 = implied_first_coeffs(J)
    except HypothesisViolated as exc:
        return _unmet(report, exc.hypothesis, exc.witness)
    if rc.beta(0) != b0 or rc.gamma(1) != g1:
        return _unmet(
            report, "instance outside theorem scope",
            f"fitted (beta0, gamma1) = ({rc.beta(0)}, {rc.gamma(1)}), "
            f"implied ({b0}, {g1})")
    report.add("scope(beta0,gamma1)", detail="fitted values match implied")
    return None


def _biorthogonality(P, duals, report, k_max=5, m_max=8):
    for k in range(min(k_max, len(duals) - 1) + 1):
        for m in range(min(m_max, len(P) - 1) + 1):
            val = duals[k].act(P[m])
            want = 1 if k == m else 0
            if val != want:
                raise IdentityViolated("biorthogonality", f"<u_{k}, P_{m}>",
                                       val, want)
    report.add("biorthogonality", horizon=f"k<={k_max}, m<={m_max}")


def _identity_phase(J, rc, P, lam, duals, check_order, hahn_n, report):
    """Shared exact-identity checks for both theorem pipelines; raises
    IdentityViolated / ClosedFormMismatch on the first failure."""
    if not verify_eigen(J, P[: check_order + 1], lam):
        raise IdentityViolated("eigen-relation", "polynomial", "J(P_n)",
                               "lambda_n P_n")
    report.add("eigen-relation", horizon=check_order)
    _biorthogonality(P, duals, report)
    report.merge(check_dual_identities(rc, P, duals, check_order))
    report.merge(orthogonality_check(P, duals[:2], m_max=2))
    report.merge(j_expansion_check(J, rc, duals, check_order))
    report.merge(lemma_identities_check(J, rc, duals[:2], check_order))
    verdict = hahn_check(P.polys[: hahn_n + 2])
    if not verdict:
        raise IdentityViolated("Hahn", f"derivative sequence to n={hahn_n}",
                               f"not 2-orthogonal: {verdict.witness}", "2-orthogonal")
    report.add("Hahn", horizon=hahn_n)
    return verdict


def run_theorem4(J: DiffOperator, *, moment_order: int = 40,
                 check_order: int = 24, hahn_n: int = 10) -> InstanceResult:
    """Full verification of the a_2 = 0 classicality theorem on one operator."""
    report = Report("theorem4")
    solved, failed = _eigen_and_fit(J, moment_order, report)
    if failed:
        return failed
    P, lam, rc = solved
    failed = _scope_match(J, rc, report)
    if failed:
        return failed
    if not J.coeff(2).is_zero():
        return _unmet(report, "a2 = 0", J.coeff(2))
    try:
        duals = dual_sequence(P, 5, moment_order)
        if rc.alpha(1) != 0:
            raise IdentityViolated("Eq-p1=0", "alpha_1", rc.alpha(1), 0)
        report.add("Eq-p1=0", detail="alpha1 = 0")
        it = intermediates(J, rc)
        if it.p0 != -2 * J.coeff(1):
            raise IdentityViolated("Eq-p0", "polynomial", it.p0, -2 * J.coeff(1))
        report.add("Eq-p0", detail="p0 = -2 a1")
        try:
            system = phi_theorem4(J, rc)
        except HypothesisViolated as exc:
            return _unmet(report, exc.hypothesis, exc.witness)
        for tag in ("Eq-phi-1,1", "Eq-phi-1,2", "Eq-phi-2,1", "Eq-phi-2,2"):
            report.add(tag, detail="defining form equals printed closed form")
        verdict = _identity_phase(J, rc, P, lam, duals, check_order, hahn_n, report)
        report.merge(classical_system_check(system, duals[:2], check_order))
    except (IdentityViolated, ClosedFormMismatch) as exc:
        return _violated(report, exc)
    extras = _extras(J, rc, lam, system, verdict, hahn_n)
    return InstanceResult(PASSED, report, extras=extras)


def run_theorem5(J: DiffOperator, tau, *, moment_order: int = 40,
                 check_order: int = 24, hahn_n: int = 10) -> InstanceResult:
    """Full verification of the a_3 = tau a_2 classicality theorem."""
    report = Report("theorem5")
    solved, failed = _eigen_and_fit(J, moment_order, report)
    if failed:
        return failed
    P, lam, rc = solved
    failed = _scope_match(J, rc, report)
    if failed:
        return failed
    try:
        duals = dual_sequence(P, 5, moment_order)
        try:
            system = varpi_theorem5(J, rc, tau)
        except HypothesisViolated as exc:
            return _unmet(report, exc.hypothesis, exc.witness)
        for tag in ("Table-1-varpi11", "Table-1-varpi12",
                    "Table-1-varpi21", "Table-1-varpi22"):
            report.add(tag, detail="defining form equals tabulated closed form")
        verdict = _identity_phase(J, rc, P, lam, duals, check_order, hahn_n, report)
        report.merge(classical_system_check(system, duals[:2], check_order))
    except (IdentityViolated, ClosedFormMismatch) as exc:
        return _violated(report, exc)
    extras = _extras(J, rc, lam, system, verdict, hahn_n)
    extras["tau"] = rat_to_str(tau)
    return InstanceResult(PASSED, report, extras=extras)


def _extras(J, rc, lam, system, hahn_verdict, hahn_n) -> dict:
    return {
        "operator": operator_to_tree(J),
        "lambda": [rat_to_str(v) for v in lam[:8]],
        "fitted_rc_prefix": {
            "beta": [rat_to_str(v) for v in rc.betas[:6]],
            "alpha": [rat_to_str(v) for v in rc.alphas[:6]],
            "gamma": [rat_to_str(v) for v in rc.gammas[:6]],
        },
        "phi": [[poly_to_list(p) for p in row] for row in system.phi],
        "psi": [[poly_to_list(p) for p in row] for row in system.psi],
        "hahn": {"positive": hahn_verdict.positive, "horizon": hahn_n},
    }


def run_identities_rc(rc: RecurrenceCoeffs, *, moment_order: int = 40,
                      check_order: int = 24) -> InstanceResult:
    """Recurrence-level identity suite: generation round trip,
    biorthogonality, dual recurrence, u_2..u_5 decompositions, and the
    d = 2 orthogonality conditions."""
    report = Report("identities")
    depth = min(moment_order, len(rc.betas), len(rc.alphas) + 1,
                len(rc.gammas) + 2)
    if depth < 8:
        raise ValueError("recurrence too shallow: need coefficients to depth 8")
    M = min(check_order, depth - 4)
    P = generate(rc, depth)
    refit = fit_2orth_recurrence(P)
    try:
        if not refit.agrees_with(rc):
            raise IdentityViolated("round-trip", "recurrence coefficients",
                                   "fit(generate(rc))", "rc")
        report.add("round-trip", horizon=depth)
        duals = dual_sequence(P, 5, depth - 1)
        _biorthogonality(P, duals, report)
        report.merge(check_dual_identities(rc, P, duals, M))
        report.merge(orthogonality_check(P, duals[:2], m_max=2))
    except IdentityViolated as exc:
        return _violated(report, exc)
    return InstanceResult(PASSED, report, extras={"depth": depth, "order": M})


def run_identities_operator(J: DiffOperator, *, moment_order: int = 40,
                            check_order: int = 24) -> InstanceResult:
    """Operator-level identity suite: eigensolve, fit, then the recurrence
    suite plus the shifted-transpose expansions and the fundamental-pair
    identities (no theorem-specific hypotheses)."""
    report = Report("identities")
    solved, failed = _eigen_and_fit(J, moment_order, report)
    if failed:
        return failed
    P, lam, rc = solved
    try:
        duals = dual_sequence(P, 5, moment_order)
        if not verify_eigen(J, P[: check_order + 1], lam):
            raise IdentityViolated("eigen-relation", "polynomial",
                                   "J(P_n)", "lambda_n P_n")
        report.add("eigen-relation", horizon=check_order)
        _biorthogonality(P, duals, report)
        report.merge(check_dual_identities(rc, P, duals, check_order))
        report.merge(orthogonality_check(P, duals[:2], m_max=2))
        report.merge(j_expansion_check(J, rc, duals, check_order))
        report.merge(lemma_identities_check(J, rc, duals[:2], check_order))
    except (IdentityViolated, ClosedFormMismatch) as exc:
        return _violated(report, exc)
    return InstanceResult(PASSED, report)


def run_sweep(target: str, seed: int, draws: int, *, moment_order: int = 40,
              check_order: int = 24, n_max: int = 12, hahn_n: int = 10) -> dict:
    """Repeat the selected verification over seeded random admissible
    parameter sets; any violated instance is dumped in full."""
    sampler = ParamSampler(seed)
    counts = {PASSED: 0, UNMET: 0, VIOLATED: 0}
    entries = []
    for index in range(draws):
        if target == "verify-theorem4":
            draw = sampler.sample_theorem4(moment_order)
            result = run_theorem4(draw["J"], moment_order=moment_order,
                                  check_order=check_order, hahn_n=hahn_n)
            entry = {"draw": index, "shape": draw["shape"],
                     "status": result.status}
            if result.status == VIOLATED:
                entry["operator"] = operator_to_tree(draw["J"])
                entry["detail"] = result.to_tree()
        elif target == "verify-theorem5":
            draw = sampler.sample_theorem5(moment_order)
            result = run_theorem5(draw["J"], draw["tau"],
                                  moment_order=moment_order,
                                  check_order=check_order, hahn_n=hahn_n)
            entry = {"draw": index, "shape": draw["shape"],
                     "status": result.status, "tau": rat_to_str(draw["tau"])}
            if result.status == VIOLATED:
                entry["operator"] = operator_to_tree(draw["J"])
                entry["detail"] = result.to_tree()
        elif target == "verify-identities":
            rc = sampler.recurrence(moment_order + 2)
            result = run_identities_rc(rc, moment_order=moment_order,
                                       check_order=check_order)
            entry = {"draw": index, "status": result.status}
            if result.status == VIOLATED:
                entry["detail"] = result.to_tree()
        else:
            raise ValueError(f"unknown sweep target {target!r}")
        if result.status == UNMET and result.failure:
            entry["reason"] = result.failure.get("reason", "")
        counts[result.status] += 1
        entries.append(entry)
    return {
        "target": target, "seed": seed, "draws": draws,
        "moment_order": moment_order, "check_order": check_order,
        "summary": counts, "entries": entries,
    }
