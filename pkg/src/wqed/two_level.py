"""Closed-form scattering observables for a side-coupled two-level emitter.

Single-photon amplitudes, one- and two-photon reflection currents, the
coherent-input current with its weak-field expansion, transmitted
first-order coherence for two-photon and coherent inputs, the Kerr
coefficient, and the stationary two-photon eigenstate whose wedge
amplitudes can be integrated numerically as an independent check of every
closed form.

A beam at carrier frequency omega has detuning ``delta = omega - omega21``.
The transmission amplitude of one photon is ``t1 = delta/(delta + 2i gamma)``
and the reflection amplitude ``r1 = t1 - 1``; the Lorentzian denominator
``delta^2 + 4 gamma^2`` recurs in every observable below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .core import (
    CoherenceResult,
    EmitterConfig,
    PhaseDecomposition,
    QuadratureError,
    ResonancePoleError,
    UnsupportedPhotonNumberError,
    ZeroDriveError,
    complex_phase,
    coupling_from_gamma,
    resonance_limit_phases,
)

__all__ = [
    "SinglePhotonSolution",
    "single_photon_solution",
    "transmission_amplitude",
    "reflection_current_fock",
    "reflection_current_coherent",
    "coherent_expansion_coefficients",
    "g1_fock_two_photon",
    "g1_coherent",
    "KerrCoefficient",
    "kerr_coefficient",
    "TwoPhotonEigenstate",
    "two_photon_eigenstate",
    "g1_two_photon_quadrature",
    "g1_two_photon_closed_terms",
    "reflection_current_2_from_eigenstate",
    "reflection_current_2_closed_parts",
]


def _lorentz(delta: float, gamma: float) -> float:
    return delta * delta + 4.0 * gamma * gamma


@dataclass(frozen=True)
class SinglePhotonSolution:
    """Stationary single-photon amplitudes at one detuning."""

    t1p: complex
    r1p: complex
    ep: complex
    detuning: float
    gamma: float

    @property
    def transmission(self) -> float:
        return abs(self.t1p) ** 2

    @property
    def reflection(self) -> float:
        return abs(self.r1p) ** 2


def transmission_amplitude(delta, gamma):
    """t1 = delta/(delta + 2i gamma); accepts scalars or arrays."""
    return delta / (delta + 2j * gamma)


def single_photon_solution(
    detuning: float, gamma: float, vg: float = 1.0
) -> SinglePhotonSolution:
    """Transmission, reflection and emitter amplitudes for one photon."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    den = detuning + 2j * gamma
    t1p = detuning / den
    return SinglePhotonSolution(
        t1p=t1p,
        r1p=t1p - 1.0,
        ep=coupling_from_gamma(gamma, vg) / den,
        detuning=detuning,
        gamma=gamma,
    )


def reflection_current_fock(
    n: int, detuning: float, gamma: float, length: float, vg: float = 1.0
) -> float:
    """Reflected photon current for an n-photon Fock input (n = 1 or 2).

    For two photons the current splits into twice the independent
    single-photon piece minus a correlated part of order (1/length)^2.
    """
    if gamma <= 0 or length <= 0:
        raise ValueError("gamma and length must be positive")
    if n not in (1, 2):
        raise UnsupportedPhotonNumberError(f"no closed form for n={n}")
    den = _lorentz(detuning, gamma)
    i1 = 1.0 / length
    j_single = vg * i1 * 4.0 * gamma**2 / den
    if n == 1:
        return j_single
    return 2.0 * j_single - (vg * i1) ** 2 * 16.0 * gamma**3 / den**2


def reflection_current_coherent(
    detuning: float, gamma: float, omega_rabi: float
) -> float:
    """Steady-state reflected current for a coherent input; exact in the drive."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if omega_rabi < 0:
        raise ValueError("Rabi frequency must be non-negative")
    om2 = omega_rabi * omega_rabi
    return 2.0 * gamma * om2 / (_lorentz(detuning, gamma) + 2.0 * om2)


def coherent_expansion_coefficients(
    detuning: float, gamma: float, vg: float = 1.0
) -> tuple[float, float]:
    """Coefficients (c1, c2) of Jc = c1 I + c2 I^2 + O(I^3) in the intensity.

    c1 reproduces the single-photon current per unit intensity and c2 the
    correlated two-photon term, which is how Fock and faint-coherent
    transport are compared.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    den = _lorentz(detuning, gamma)
    c1 = vg * 4.0 * gamma**2 / den
    c2 = -(vg**2) * 16.0 * gamma**3 / den**2
    return c1, c2


def _fock_bracket_terms(
    detuning: float, gamma: float, intensity: float, vg: float
) -> tuple[complex, complex, complex]:
    den = _lorentz(detuning, gamma)
    second = -8.0 * gamma**2 * vg * intensity / (1j * detuning * den)
    third = complex(2.0 * gamma * vg * intensity / den)
    return 1.0 + 0.0j, second, third


def g1_fock_two_photon(
    detuning: float,
    gamma: float,
    length: float,
    vg: float = 1.0,
    resonance_limit: str | None = None,
) -> CoherenceResult:
    """Transmitted coherence decomposition for a two-photon Fock input.

    The nonlinear bracket has a 1/detuning pole; exactly on resonance the
    one-sided limit must be requested explicitly (nonlinear phase +-pi/2,
    total phase zero).
    """
    if gamma <= 0 or length <= 0:
        raise ValueError("gamma and length must be positive")
    prefactor = 2.0 / length
    if detuning == 0.0:
        if resonance_limit is None:
            raise ResonancePoleError(
                "two-photon bracket diverges at zero detuning; pass "
                "resonance_limit='above' or 'below'"
            )
        return CoherenceResult(
            prefactor=prefactor,
            linear_amplitude=0.0j,
            bracket=None,
            phase=resonance_limit_phases(resonance_limit),
            resonance_limit=resonance_limit,
        )
    t1p = transmission_amplitude(detuning, gamma)
    terms = _fock_bracket_terms(detuning, gamma, 1.0 / length, vg)
    bracket = sum(terms)
    return CoherenceResult(
        prefactor=prefactor,
        linear_amplitude=t1p,
        bracket=bracket,
        phase=PhaseDecomposition.from_amplitudes(t1p, bracket),
        bracket_terms=terms,
    )


def g1_coherent(
    detuning: float,
    gamma: float,
    omega_rabi: float,
    mode: str = "exact",
    vg: float = 1.0,
    resonance_limit: str | None = None,
) -> CoherenceResult:
    """Transmitted coherence for a coherent input.

    ``mode='exact'`` uses the steady-state dipole and holds at any drive
    strength; ``mode='weak_expansion'`` keeps the second-order bracket,
    valid for omega_rabi^2/(2 gamma^2) << 1.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if omega_rabi < 0:
        raise ValueError("Rabi frequency must be non-negative")
    if mode not in ("exact", "weak_expansion"):
        raise ValueError("mode must be 'exact' or 'weak_expansion'")
    icp = omega_rabi**2 / (2.0 * vg * gamma)
    zero_drive = False
    if mode == "exact":
        if omega_rabi == 0.0:
            # 0/0 in (2i gamma/Omega) S1; the limit is the linear amplitude.
            zero_drive = True
            amp = transmission_amplitude(detuning, gamma)
        else:
            den = _lorentz(detuning, gamma) + 2.0 * omega_rabi**2
            s1 = 1j * omega_rabi * (-1j * detuning - 2.0 * gamma) / den
            amp = 1.0 - (2j * gamma / omega_rabi) * s1
        if detuning == 0.0:
            if resonance_limit is None:
                raise ResonancePoleError(
                    "linear amplitude vanishes at zero detuning; pass "
                    "resonance_limit to decompose the phase"
                )
            total = complex_phase(amp) if amp != 0 else 0.0
            return CoherenceResult(
                prefactor=icp,
                linear_amplitude=0.0j,
                bracket=None,
                phase=resonance_limit_phases(resonance_limit, total=total),
                resonance_limit=resonance_limit,
                zero_drive_limit=zero_drive,
            )
        t1p = transmission_amplitude(detuning, gamma)
        bracket = amp / t1p
        return CoherenceResult(
            prefactor=icp,
            linear_amplitude=t1p,
            bracket=bracket,
            phase=PhaseDecomposition.from_amplitudes(t1p, bracket),
            zero_drive_limit=zero_drive,
        )
    # weak expansion: same bracket as the Fock case without its third term
    if detuning == 0.0:
        if resonance_limit is None:
            raise ResonancePoleError(
                "weak-field bracket diverges at zero detuning; pass "
                "resonance_limit='above' or 'below'"
            )
        return CoherenceResult(
            prefactor=icp,
            linear_amplitude=0.0j,
            bracket=None,
            phase=resonance_limit_phases(resonance_limit),
            resonance_limit=resonance_limit,
        )
    t1p = transmission_amplitude(detuning, gamma)
    one, second, _ = _fock_bracket_terms(detuning, gamma, icp, vg)
    bracket = one + second
    return CoherenceResult(
        prefactor=icp,
        linear_amplitude=t1p,
        bracket=bracket,
        phase=PhaseDecomposition.from_amplitudes(t1p, bracket),
        bracket_terms=(one, second),
    )


@dataclass(frozen=True)
class KerrCoefficient:
    """Kerr coefficient K with phi_nl = K * E^2 for field amplitude E.

    ``arctan_form``/``small_angle_form`` carry the published denominator
    delta (delta^2 + gamma^2); ``bracket_form`` uses the weak-field bracket
    denominator delta (delta^2 + 4 gamma^2).  Both are reported because the
    two published expressions disagree by that factor.
    """

    arctan_form: float
    small_angle_form: float
    bracket_form: float
    in_validity: bool


def kerr_coefficient(
    detuning: float, gamma: float, field_amplitude: float, vg: float = 1.0
) -> KerrCoefficient:
    """Nonlinear phase per squared field amplitude of a weak coherent beam.

    Validity regime |detuning| >= gamma; outside it the result carries
    ``in_validity=False`` rather than raising.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if field_amplitude <= 0:
        raise ValueError("field amplitude must be positive")
    if detuning == 0.0:
        raise ResonancePoleError("Kerr coefficient undefined at zero detuning")
    ep2 = field_amplitude**2
    icp = ep2 / vg**2
    arg = 8.0 * gamma**2 * vg * icp / (detuning * (detuning**2 + gamma**2))
    arctan_form = math.atan(arg) / ep2
    small_angle = 8.0 * gamma**2 / (vg * detuning * (detuning**2 + gamma**2))
    bracket_form = 8.0 * gamma**2 / (vg * detuning * _lorentz(detuning, gamma))
    return KerrCoefficient(
        arctan_form=arctan_form,
        small_angle_form=small_angle,
        bracket_form=bracket_form,
        in_validity=abs(detuning) >= gamma,
    )


# ---------------------------------------------------------------------------
# Stationary two-photon eigenstate and quadrature checks
# ---------------------------------------------------------------------------


def _theta(x):
    """Heaviside step, symmetric convention theta(0) = 1/2.

    The symmetric value is required for the reflection-current integrands,
    which evaluate wedge amplitudes exactly on their support boundary.
    """
    return np.heaviside(x, 0.5)


@dataclass(frozen=True)
class TwoPhotonEigenstate:
    """Wedge amplitudes of the stationary two-photon scattering state.

    Evaluators are vectorized over positions in [-L/2, L/2].  g_rr/g_ll are
    bosonic-symmetric; the pair corrections decay like exp(-2 gamma |.|/vg)
    away from the emitter within their wedges.
    """

    kp: float
    gamma: float
    omega21: float
    vg: float
    length: float
    t1p: complex
    r1p: complex
    ep: complex

    @property
    def detuning(self) -> float:
        return self.vg * self.kp - self.omega21

    @property
    def _etp2(self) -> complex:
        return self.ep * self.ep / self.length

    @property
    def _phase_a(self) -> complex:
        # 2 vg kp - omega21 + 2i gamma, the doubly-excited-propagation phase
        return 2.0 * self.vg * self.kp - self.omega21 + 2j * self.gamma

    @property
    def _phase_b(self) -> complex:
        return self.omega21 - 2j * self.gamma

    def g_r(self, x):
        x = np.asarray(x, dtype=float)
        return (
            np.exp(1j * self.kp * x)
            / math.sqrt(self.length)
            * (_theta(-x) + self.t1p * _theta(x))
        )

    def g_l(self, x):
        x = np.asarray(x, dtype=float)
        return (
            np.exp(-1j * self.kp * x) / math.sqrt(self.length) * self.r1p * _theta(-x)
        )

    def g_rr(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        a, b, vg = self._phase_a, self._phase_b, self.vg
        corr = (2.0 * self.gamma / vg) * self._etp2 * (
            np.exp(1j * (a * x2 + b * x1) / vg) * _theta(x2 - x1) * _theta(x1)
            + np.exp(1j * (a * x1 + b * x2) / vg) * _theta(x1 - x2) * _theta(x2)
        )
        return self.g_r(x1) * self.g_r(x2) + corr

    def g_rl(self, x1, x2):
        """Right photon at x1, left photon at x2.

        Pair term lives on x1 > 0, x2 < 0 and switches exponent across the
        characteristic x1 = -x2 (right photon transmitted before vs after
        the left one was emitted).
        """
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        a, b, vg = self._phase_a, self._phase_b, self.vg
        corr = (2.0 * math.sqrt(2.0) * self.gamma / vg) * self._etp2 * _theta(x1) * _theta(-x2) * (
            np.exp(1j * (-a * x2 + b * x1) / vg) * _theta(-x2 - x1)
            + np.exp(1j * (a * x1 - b * x2) / vg) * _theta(x1 + x2)
        )
        return math.sqrt(2.0) * self.g_r(x1) * self.g_l(x2) + corr

    def g_ll(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        a, b, vg = self._phase_a, self._phase_b, self.vg
        corr = (2.0 * self.gamma / vg) * self._etp2 * _theta(-x1) * _theta(-x2) * (
            np.exp(-1j * (a * x2 + b * x1) / vg) * _theta(x1 - x2)
            + np.exp(-1j * (a * x1 + b * x2) / vg) * _theta(x2 - x1)
        )
        return self.g_l(x1) * self.g_l(x2) + corr

    def e_r(self, x):
        x = np.asarray(x, dtype=float)
        pre = math.sqrt(2.0) * self.ep / math.sqrt(self.length)
        bound = (
            math.sqrt(2.0)
            * 1j
            * coupling_from_gamma(self.gamma, self.vg)
            / self.vg
            * self._etp2
            * np.exp(1j * self._phase_a * x / self.vg)
            * _theta(x)
        )
        return pre * self.g_r(x) + bound

    def e_l(self, x):
        x = np.asarray(x, dtype=float)
        pre = math.sqrt(2.0) * self.ep / math.sqrt(self.length)
        bound = (
            math.sqrt(2.0)
            * 1j
            * coupling_from_gamma(self.gamma, self.vg)
            / self.vg
            * self._etp2
            * np.exp(-1j * self._phase_a * x / self.vg)
            * _theta(-x)
        )
        return pre * self.g_l(x) + bound


def two_photon_eigenstate(
    kp: float, config: EmitterConfig, length: float, vg: float = 1.0
) -> TwoPhotonEigenstate:
    """Stationary eigenstate for two degenerate photons at wavevector kp."""
    if length <= 0:
        raise ValueError("length must be positive")
    sol = single_photon_solution(vg * kp - config.omega21, config.gamma_p, vg)
    return TwoPhotonEigenstate(
        kp=kp,
        gamma=config.gamma_p,
        omega21=config.omega21,
        vg=vg,
        length=length,
        t1p=sol.t1p,
        r1p=sol.r1p,
        ep=sol.ep,
    )


def _complex_quad(
    f: Callable[[float], complex],
    a: float,
    b: float,
    points: list[float],
    tol: float,
) -> complex:
    pts = sorted(p for p in points if a < p < b)
    re, re_err = quad(
        lambda y: f(y).real, a, b, points=pts, limit=4000, epsabs=tol / 10, epsrel=1e-11
    )
    im, im_err = quad(
        lambda y: f(y).imag, a, b, points=pts, limit=4000, epsabs=tol / 10, epsrel=1e-11
    )
    if re_err + im_err > tol:
        raise QuadratureError(
            f"quadrature error estimate {re_err + im_err:.2e} exceeds {tol:.2e}"
        )
    return re + 1j * im


def g1_two_photon_quadrature(
    state: TwoPhotonEigenstate, x_out: float, x_in: float, tol: float = 1e-9
) -> dict[str, complex]:
    """Transmitted coherence of the eigenstate by direct integration.

    Returns the three contributions (pair-RR trace, pair-RL trace, emitter
    term) and their sum, i.e. G1(x_in < 0, x_out > 0) with all finite-size
    terms retained.
    """
    if not (x_out > 0 > x_in):
        raise ValueError("requires x_in < 0 < x_out")
    half = state.length / 2.0
    pts = [x_in, -x_out, 0.0, x_out, -x_in]
    rr = 2.0 * _complex_quad(
        lambda y: np.conj(state.g_rr(x_in, y)) * state.g_rr(x_out, y),
        -half,
        half,
        pts,
        tol,
    )
    rl = _complex_quad(
        lambda y: np.conj(state.g_rl(x_in, y)) * state.g_rl(x_out, y),
        -half,
        half,
        pts,
        tol,
    )
    er = complex(np.conj(state.e_r(x_in)) * state.e_r(x_out))
    return {"rr": rr, "rl": rl, "emitter": er, "total": rr + rl + er}


def g1_two_photon_closed_terms(
    state: TwoPhotonEigenstate, x_out: float, x_in: float
) -> dict[str, complex]:
    """Closed forms of the same three contributions, finite-size terms kept."""
    t1p, r1p, ep = state.t1p, state.r1p, state.ep
    L, vg = state.length, state.vg
    dp = state.detuning
    ph = np.exp(1j * state.kp * (x_out - x_in))
    e_decay = np.exp(1j * (dp + 2j * state.gamma) * x_out / vg)
    e_edge = np.exp(-1j * (dp + 2j * state.gamma) * (x_out - L / 2.0) / vg)
    rr = (ph / L) * (
        (1.0 + abs(t1p) ** 2) * t1p
        - (4.0 / L) * r1p * np.conj(t1p) * ep**2
        + (2.0 / L) * r1p * np.conj(t1p) * ep**2 * (e_decay + e_edge)
    )
    rl = (ph / L) * (
        abs(r1p) ** 2 * t1p
        - (2.0 / L) * abs(r1p) ** 2 * ep**2 * (1.0 - e_edge)
        + (2.0 / L) * abs(r1p) ** 2 * ep**2 * (e_decay - 1.0)
    )
    er = (2.0 / L**2) * abs(ep) ** 2 * ph * (t1p - r1p * e_decay)
    return {"rr": complex(rr), "rl": complex(rl), "emitter": complex(er),
            "total": complex(rr + rl + er)}


def reflection_current_2_closed_parts(
    detuning: float, gamma: float, length: float, vg: float = 1.0
) -> tuple[complex, complex]:
    """Closed forms of the two reflection-current integrals, finite size kept.

    Their doubled real-part sum is the two-photon current; the terms in
    exp(-2 gamma L / vg) and exp(+-i(detuning + 2i gamma) L/(2 vg)) survive
    only on short waveguides.
    """
    sol = single_photon_solution(detuning, gamma, vg)
    t1p, r1p, ep = sol.t1p, sol.r1p, sol.ep
    gbar = coupling_from_gamma(gamma, vg)
    L = length
    edge_p = np.exp(1j * (detuning + 2j * gamma) * L / (2.0 * vg))
    edge_m = np.exp(1j * (-detuning + 2j * gamma) * L / (2.0 * vg))
    ring = 1.0 - np.exp(-2.0 * gamma * L / vg)
    part_rl = (
        (1j * gbar / (2.0 * L)) * np.conj(ep) * r1p
        + (gamma / L) * abs(t1p) ** 2 * abs(ep) ** 2
        + (gamma / L**2) * abs(ep) ** 4 * ring
        + (2.0 * gamma / L**2)
        * (
            ep**3 * np.conj(ep) * np.conj(t1p) * (edge_p - 1.0)
            + np.conj(ep) ** 3 * ep * t1p * (edge_m - 1.0)
        )
    )
    part_ll = (
        (1j * gbar / (2.0 * L)) * abs(r1p) ** 2 * np.conj(ep) * r1p
        + (gamma / L**2) * abs(ep) ** 4 * ring
        + (2.0 * gamma * vg / (1j * L**2 * gbar))
        * (
            r1p**2 * np.conj(ep) ** 3 * (1.0 - edge_m)
            - np.conj(r1p) ** 2 * ep**3 * (1.0 - edge_p)
        )
    )
    return complex(part_rl), complex(part_ll)


def reflection_current_2_from_eigenstate(
    kp: float,
    config: EmitterConfig,
    length: float,
    vg: float = 1.0,
    tol: float = 1e-9,
) -> float:
    """Two-photon reflection current by integrating the eigenstate overlaps.

    Independent numerical route to the closed-form two-photon current; on
    long waveguides (length >> vg/gamma) the two agree, on short ones the
    finite-size terms produce a real deviation.
    """
    state = two_photon_eigenstate(kp, config, length, vg)
    gbar = coupling_from_gamma(config.gamma_p, vg)
    half = length / 2.0
    t_rl = 1j * gbar * _complex_quad(
        lambda x: np.conj(state.e_r(x)) * state.g_rl(x, 0.0), -half, half, [0.0], tol
    )
    t_ll = 1j * gbar * _complex_quad(
        lambda x: math.sqrt(2.0) * np.conj(state.e_l(x)) * state.g_ll(x, 0.0),
        -half,
        half,
        [0.0],
        tol,
    )
    return 2.0 * (t_rl + t_ll).real
