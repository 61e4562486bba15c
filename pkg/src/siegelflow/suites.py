"""Named verification suites: each runs a property battery and returns
per-check rows with residuals and tolerances.

The randomized suites draw from numpy's PCG64 generator seeded explicitly,
so a (suite, seed) pair is fully reproducible.
"""

from __future__ import annotations

import numpy as np

from ._point import SiegelPoint, diagonal_point, standard_point
from .sections import (
    CorrectedSection,
    GaussianSection,
    HalfFormFrame,
    coherent_state,
    corrected_inner_product,
    difference_norm,
    inner_product,
    norm,
    oracle_inner_product,
    vacuum,
)
from .siegel import LagrangianFrame, geodesic_between
from .sympl import (
    MetaplecticElement,
    act_on_siegel,
    compose,
    random_siegel,
    random_symplectic,
    xi_matrix,
)
from .transforms import (
    BoundaryPolarization,
    composition_identities_check,
    limit_transport_to_bargmann,
    limit_transport_to_fourier,
)
from .transport import (
    bogoliubov_scale,
    bogoliubov_scale_via_structures,
    fock_connection_matrix,
    transport_corrected,
    transport_equals_scaled_projection_check,
    transport_uncorrected,
)


def _row(name: str, residual: float, tolerance: float) -> dict:
    return {
        "name": name,
        "residual": float(residual),
        "tolerance": float(tolerance),
        "passed": bool(residual <= tolerance),
    }


def _random_gaussian_section(rng: np.random.Generator, omega: SiegelPoint, m_cap: float = 0.8) -> GaussianSection:
    n = omega.n
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = 0.5 * (m + m.T)
    nrm = np.linalg.norm(m, 2)
    if nrm > 0:
        m = m * (m_cap * rng.uniform(0.2, 1.0) / max(nrm, m_cap))
    b = 0.7 * (rng.normal(size=n) + 1j * rng.normal(size=n))
    return GaussianSection(omega, m, b, 0.1 * (rng.normal() + 1j * rng.normal()))


def suite_lemma21(seed: int = 42, trials: int = 200, dims=(1, 2, 3), tol: float = 1e-9) -> list[dict]:
    """The change-of-point identities for Xi under the group action, plus the
    action's compatibility with composition; residuals are scale-relative."""
    rng = np.random.default_rng(seed)
    worst = {
        "imag_part_transformation": 0.0,
        "xi_transformation": 0.0,
        "first_quotient_identity": 0.0,
        "second_quotient_identity": 0.0,
        "group_action_composes": 0.0,
    }
    for k in range(trials):
        n = dims[k % len(dims)]
        g = random_symplectic(rng, n)
        om0 = random_siegel(rng, n)
        omp0 = random_siegel(rng, n)
        om = act_on_siegel(g, om0)
        omp = act_on_siegel(g, omp0)
        cd = g.cz_plus_d(om0)
        cdp = g.cz_plus_d(omp0)
        cd_inv = np.linalg.inv(cd)
        cdp_bar_invT = np.linalg.inv(np.conj(cdp)).T
        cd_bar_inv = np.linalg.inv(np.conj(cd))
        scale = max(1.0, np.abs(om.omega).max(), np.abs(omp.omega).max())

        pred = np.linalg.inv(np.conj(cd)).T @ om0.omega2 @ cd_inv
        worst["imag_part_transformation"] = max(
            worst["imag_part_transformation"], np.abs(om.omega2 - pred).max() / scale
        )

        xi = xi_matrix(om, omp)
        xi0 = xi_matrix(om0, omp0)
        worst["xi_transformation"] = max(
            worst["xi_transformation"],
            np.abs(xi - cdp_bar_invT @ xi0 @ cd_inv).max() / scale,
        )

        xi_inv = np.linalg.inv(xi)
        q1_a = (np.linalg.inv(om.omega2) - xi_inv) @ om.omega2
        q1_b = np.linalg.solve(
            om.omega - np.conj(omp.omega), np.conj(om.omega) - np.conj(omp.omega)
        )
        q1_c = cd @ np.linalg.solve(
            om0.omega - np.conj(omp0.omega), np.conj(om0.omega) - np.conj(omp0.omega)
        ) @ cd_bar_inv
        worst["first_quotient_identity"] = max(
            worst["first_quotient_identity"],
            max(np.abs(q1_a - q1_b).max(), np.abs(q1_b - q1_c).max()) / scale,
        )

        q2_a = omp.omega2 @ (np.linalg.inv(omp.omega2) - xi_inv)
        q2_b = (om.omega - omp.omega) @ np.linalg.inv(om.omega - np.conj(omp.omega))
        q2_c = np.linalg.inv(cdp).T @ (
            (om0.omega - omp0.omega)
            @ np.linalg.solve(om0.omega - np.conj(omp0.omega), np.conj(cdp).T)
        )
        worst["second_quotient_identity"] = max(
            worst["second_quotient_identity"],
            max(np.abs(q2_a - q2_b).max(), np.abs(q2_b - q2_c).max()) / scale,
        )

        h = random_symplectic(rng, n)
        two_step = act_on_siegel(h, act_on_siegel(g, om0))
        one_step = act_on_siegel(compose(h, g), om0)
        worst["group_action_composes"] = max(
            worst["group_action_composes"],
            np.abs(two_step.omega - one_step.omega).max() / scale,
        )
    return [_row(f"lemma21/{k}", v, tol) for k, v in worst.items()]


def suite_unitarity(seed: int = 42, trials: int = 20, oracle_trials: int = 6, tol: float = 1e-8, oracle_tol: float = 1e-5, nodes: int = 64) -> list[dict]:
    rng = np.random.default_rng(seed)
    worst_closed = 0.0
    worst_corrected = 0.0
    for k in range(trials):
        n = 1 if k % 2 == 0 else 2
        om, omp = random_siegel(rng, n), random_siegel(rng, n)
        p1 = _random_gaussian_section(rng, om)
        p2 = _random_gaussian_section(rng, om)
        before = inner_product(p1, p2)
        after = inner_product(transport_uncorrected(p1, omp), transport_uncorrected(p2, omp))
        worst_closed = max(worst_closed, abs(after - before) / max(1.0, abs(before)))

        c1 = CorrectedSection(p1, HalfFormFrame(om))
        c2 = CorrectedSection(p2, HalfFormFrame(om))
        t1 = transport_corrected(c1, omp).corrected()
        t2 = transport_corrected(c2, omp).corrected()
        after_c = corrected_inner_product(t1, t2)
        worst_corrected = max(worst_corrected, abs(after_c - before) / max(1.0, abs(before)))

    worst_oracle = 0.0
    for k in range(oracle_trials):
        n = 1 if k < oracle_trials - 2 else 2
        om, omp = random_siegel(rng, n), random_siegel(rng, n)
        p1 = _random_gaussian_section(rng, om, m_cap=0.6)
        p2 = _random_gaussian_section(rng, om, m_cap=0.6)
        before = inner_product(p1, p2)
        after = oracle_inner_product(
            transport_uncorrected(p1, omp), transport_uncorrected(p2, omp), nodes=nodes
        )
        worst_oracle = max(worst_oracle, abs(after - before) / max(1.0, abs(before)))
    return [
        _row("unitarity/uncorrected_closed_form", worst_closed, tol),
        _row("unitarity/corrected_closed_form", worst_corrected, tol),
        _row("unitarity/quadrature_oracle", worst_oracle, oracle_tol),
    ]


def suite_bogoliubov(seed: int = 42, trials: int = 100, tol: float = 1e-8) -> list[dict]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_scale = 0.0
    for k in range(trials):
        n = 1 if k % 2 == 0 else 2
        om, omp = random_siegel(rng, n), random_siegel(rng, n)
        alpha = rng.normal(size=n) + 1j * rng.normal(size=n)
        worst = max(worst, transport_equals_scaled_projection_check(alpha, om, omp))
        worst_scale = max(
            worst_scale,
            abs(bogoliubov_scale(om, omp) - bogoliubov_scale_via_structures(om, omp))
            / bogoliubov_scale(om, omp),
        )
    ts = np.linspace(0.1, 2.0, 8)
    worst_alpha = max(
        abs(bogoliubov_scale(standard_point(1), diagonal_point([np.exp(2 * t)])) - np.sqrt(np.cosh(t)))
        for t in ts
    )
    return [
        _row("bogoliubov/transport_equals_scaled_projection", worst, tol),
        _row("bogoliubov/scale_formulas_agree", worst_scale, 1e-10),
        _row("bogoliubov/standard_scale_sqrt_cosh", worst_alpha, 1e-12),
    ]


def suite_flatness(seed: int = 42, trials: int = 50, tol: float = 1e-8) -> list[dict]:
    rng = np.random.default_rng(seed)
    worst_corrected = 0.0
    worst_modulus = 0.0
    worst_scalar = 0.0
    for k in range(trials):
        n = 1 if k % 2 == 0 else 2
        pts = [random_siegel(rng, n) for _ in range(3)]
        alpha = rng.normal(size=n) + 1j * rng.normal(size=n)
        start = CorrectedSection(coherent_state(alpha, pts[0]), HalfFormFrame(pts[0]))
        leg1 = transport_corrected(start, pts[1]).corrected()
        leg2 = transport_corrected(leg1, pts[2]).corrected()
        around = transport_corrected(leg2, pts[0]).corrected()
        worst_corrected = max(
            worst_corrected, difference_norm(around, start) / norm(start.section)
        )

        # uncorrected holonomy: a unit-modulus scalar multiple of the identity
        states = [coherent_state(alpha, pts[0]), vacuum(pts[0]),
                  coherent_state(0.5j * alpha + 0.3, pts[0])]
        ratios = []
        for s in states:
            h1 = transport_uncorrected(s, pts[1])
            h2 = transport_uncorrected(h1, pts[2])
            h3 = transport_uncorrected(h2, pts[0])
            val = inner_product(s, h3) / inner_product(s, s)
            ratios.append(val)
            worst_modulus = max(worst_modulus, abs(abs(val) - 1.0))
        worst_scalar = max(
            worst_scalar, max(abs(r - ratios[0]) for r in ratios[1:])
        )
    return [
        _row("flatness/corrected_triangle_identity", worst_corrected, tol),
        _row("flatness/uncorrected_unit_modulus", worst_modulus, tol),
        _row("flatness/uncorrected_scalar_consistency", worst_scalar, 1e-7),
    ]


def suite_curvature(n_trunc: int = 20, window: int = 16, h: float = 1e-3, tol: float = 1e-5) -> list[dict]:
    def conn(tau):
        return fock_connection_matrix(tau, n_trunc)

    at_p, atb_p = conn(1j + h)
    at_m, atb_m = conn(1j - h)
    at_pi, atb_pi = conn(1j * (1 + h))
    at_mi, atb_mi = conn(1j * (1 - h))
    d1 = ((at_p - at_m) / (2 * h), (atb_p - atb_m) / (2 * h))
    d2 = ((at_pi - at_mi) / (2 * h), (atb_pi - atb_mi) / (2 * h))
    d_tau_ataubar = 0.5 * (d1[1] - 1j * d2[1])
    d_taubar_atau = 0.5 * (d1[0] + 1j * d2[0])
    a_tau, a_taubar = conn(1j)
    f = d_tau_ataubar - d_taubar_atau + a_tau @ a_taubar - a_taubar @ a_tau
    resid = np.abs(f[:window, :window] - np.eye(window) / 8.0).max()

    skew = np.abs((a_tau * 1.0 + a_taubar * 1.0).conj().T + (a_tau + a_taubar)).max()
    return [
        _row("curvature/finite_difference_vs_eighth", resid, tol),
        _row("curvature/connection_skew_hermitian", skew, 1e-12),
    ]


def suite_limits(t_max: float = 8.0, tol: float = 1e-3, slope_rel: float = 0.2) -> list[dict]:
    i1 = standard_point(1)
    spec = geodesic_between(i1, diagonal_point([float(np.exp(2.0))]))
    psi = CorrectedSection(vacuum(i1), HalfFormFrame(i1))
    ts = [2.0, 3.0, 4.0, 5.0, 6.0, t_max]
    rep_b = limit_transport_to_bargmann(psi, spec, [-t for t in ts])
    rep_f = limit_transport_to_fourier(psi, spec, ts)
    rows = [
        _row("limits/bargmann_sup_error_at_-8", rep_b.rows[-1].sup_error, tol),
        _row(
            "limits/bargmann_slope_vs_heat_width",
            abs(rep_b.slope - rep_b.predicted_slope) / abs(rep_b.predicted_slope),
            slope_rel,
        ),
        _row("limits/fourier_sup_error_at_+8", rep_f.rows[-1].sup_error, tol),
        _row(
            "limits/fourier_slope_vs_heat_width",
            abs(rep_f.slope - rep_f.predicted_slope) / abs(rep_f.predicted_slope),
            slope_rel,
        ),
        _row("limits/bargmann_monotone", 0.0 if rep_b.monotone_decreasing() else 1.0, 0.5),
        _row("limits/fourier_monotone", 0.0 if rep_f.monotone_decreasing() else 1.0, 0.5),
    ]
    return rows


def suite_identities(seed: int = 42, trials: int = 50, tol: float = 1e-8) -> list[dict]:
    rng = np.random.default_rng(seed)
    worst = {"transport_vs_pairing": 0.0, "fourier_vs_pairing_pair": 0.0, "fourier_triple": 0.0}
    for _ in range(trials):
        g = random_symplectic(rng, 1)
        pol_l = BoundaryPolarization.from_metaplectic(MetaplecticElement.principal_lift(g))
        pol_lp = BoundaryPolarization.from_frame(LagrangianFrame(g, plus=True))
        shear = np.array([[rng.normal()]])
        pol_lpp = BoundaryPolarization.from_frame(LagrangianFrame.graph_of_shear(shear))
        if not (
            pol_l.frame.transverse_to(pol_lpp.frame)
            and pol_lp.frame.transverse_to(pol_lpp.frame)
        ):
            continue
        om, omp = random_siegel(rng, 1), random_siegel(rng, 1)
        rep = composition_identities_check(om, omp, pol_l, pol_lp, pol_lpp)
        worst["transport_vs_pairing"] = max(worst["transport_vs_pairing"], rep.transport_vs_pairing)
        worst["fourier_vs_pairing_pair"] = max(
            worst["fourier_vs_pairing_pair"], rep.fourier_vs_pairing_pair
        )
        worst["fourier_triple"] = max(worst["fourier_triple"], rep.fourier_triple)
    return [_row(f"identities/{k}", v, tol) for k, v in worst.items()]


SUITES = {
    "lemma21": suite_lemma21,
    "unitarity": suite_unitarity,
    "bogoliubov": suite_bogoliubov,
    "flatness": suite_flatness,
    "curvature": suite_curvature,
    "limits": suite_limits,
    "identities": suite_identities,
}
