"""Cross-Kerr observables for a ladder three-level emitter.

A probe beam addresses the 1<->2 transition (linewidth gamma_p) and a
drive beam the 2<->3 transition (gamma_d); the beams live on orthogonal
polarizations.  The drive imprints a phase on the transmitted probe, the
cross-Kerr shift, captured by the bracket

    1 - 4 gamma_p gamma_d vg I_d / (i dp (i dp - 2 gamma_p) (i(dp+dd) - 2 gamma_d))

with I_d the drive intensity (1/L for a single-photon drive, the weak
expansion of a coherent one otherwise).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    CoherenceResult,
    CoherentInput,
    EmitterConfig,
    EmitterKind,
    FockInput,
    PhaseDecomposition,
    ResonancePoleError,
    complex_phase,
    coupling_from_gamma,
    resonance_limit_phases,
)
from .two_level import _complex_quad, _theta, transmission_amplitude

__all__ = [
    "cross_bracket",
    "cross_g1",
    "cross_kerr_coefficient",
    "LadderTwoPhotonEigenstate",
    "ladder_two_photon_eigenstate",
    "cross_g1_quadrature",
    "cross_g1_closed",
]


def cross_bracket(
    probe_detuning: float,
    drive_detuning: float,
    gamma_p: float,
    gamma_d: float,
    drive_intensity: float,
    vg: float = 1.0,
) -> complex:
    """Nonlinear bracket of the probe coherence in presence of the drive."""
    dp, dd = probe_detuning, drive_detuning
    den = 1j * dp * (1j * dp - 2.0 * gamma_p) * (1j * (dp + dd) - 2.0 * gamma_d)
    return 1.0 - 4.0 * gamma_p * gamma_d * vg * drive_intensity / den


def cross_g1(
    probe_detuning: float,
    drive_detuning: float,
    gamma_p: float,
    gamma_d: float,
    drive: FockInput | CoherentInput,
    vg: float = 1.0,
    resonance_limit: str | None = None,
) -> CoherenceResult:
    """Transmitted probe coherence decomposition with the drive on.

    A Fock drive uses its exact intensity 1/L; a coherent drive enters
    through the second-order weak expansion, the two coinciding under
    I_cd <-> I_1d.  The probe is taken in the linear (single-photon or
    faint) regime throughout.
    """
    if gamma_p <= 0 or gamma_d <= 0:
        raise ValueError("gamma_p and gamma_d must be positive")
    if isinstance(drive, FockInput):
        if drive.n != 1:
            raise ValueError("only a single-photon Fock drive has a closed form")
        i_d = drive.intensity
    elif isinstance(drive, CoherentInput):
        i_d = drive.intensity(gamma_d, vg)
    else:
        raise TypeError("drive must be FockInput or CoherentInput")
    prefactor = 1.0  # per unit probe intensity
    if probe_detuning == 0.0:
        if resonance_limit is None:
            raise ResonancePoleError(
                "cross-Kerr bracket diverges at zero probe detuning; pass "
                "resonance_limit='above' or 'below'"
            )
        return CoherenceResult(
            prefactor=prefactor,
            linear_amplitude=0.0j,
            bracket=None,
            phase=resonance_limit_phases(resonance_limit),
            resonance_limit=resonance_limit,
        )
    t1p = transmission_amplitude(probe_detuning, gamma_p)
    bracket = cross_bracket(
        probe_detuning, drive_detuning, gamma_p, gamma_d, i_d, vg
    )
    return CoherenceResult(
        prefactor=prefactor,
        linear_amplitude=t1p,
        bracket=bracket,
        phase=PhaseDecomposition.from_amplitudes(t1p, bracket),
        bracket_terms=(1.0 + 0.0j, bracket - 1.0),
    )


def cross_kerr_coefficient(
    probe_detuning: float,
    drive_detuning: float,
    gamma_p: float,
    gamma_d: float,
    drive_amplitude: float,
    vg: float = 1.0,
) -> float:
    """Cross-Kerr coefficient Kc with delta_phi = Kc * E_d^2.

    Weak-drive regime; the drive intensity is E_d^2/vg^2.
    """
    if drive_amplitude <= 0:
        raise ValueError("drive amplitude must be positive")
    i_cd = drive_amplitude**2 / vg**2
    bracket = cross_bracket(
        probe_detuning, drive_detuning, gamma_p, gamma_d, i_cd, vg
    )
    return complex_phase(bracket) / drive_amplitude**2


# ---------------------------------------------------------------------------
# Stationary probe+drive eigenstate and quadrature check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LadderTwoPhotonEigenstate:
    """Wedge amplitudes of the probe+drive scattering state.

    Index 1 is the probe photon, index 2 the drive photon; R/L refer to
    propagation direction within each polarization.
    """

    kp: float
    kd: float
    gamma_p: float
    gamma_d: float
    omega21: float
    omega32: float
    vg: float
    length: float

    @property
    def probe_detuning(self) -> float:
        return self.vg * self.kp - self.omega21

    @property
    def drive_detuning(self) -> float:
        return self.vg * self.kd - self.omega32

    @property
    def t1p(self) -> complex:
        return transmission_amplitude(self.probe_detuning, self.gamma_p)

    @property
    def ep(self) -> complex:
        return coupling_from_gamma(self.gamma_p, self.vg) / (
            self.probe_detuning + 2j * self.gamma_p
        )

    @property
    def ed(self) -> complex:
        return coupling_from_gamma(self.gamma_d, self.vg) / (
            self.probe_detuning + self.drive_detuning + 2j * self.gamma_d
        )

    def _g_r(self, x):
        x = np.asarray(x, dtype=float)
        return (
            np.exp(1j * self.kp * x)
            / math.sqrt(self.length)
            * (_theta(-x) + self.t1p * _theta(x))
        )

    def _g_l(self, x):
        x = np.asarray(x, dtype=float)
        r1p = self.t1p - 1.0
        return np.exp(-1j * self.kp * x) / math.sqrt(self.length) * r1p * _theta(-x)

    @property
    def _pair_pre(self) -> complex:
        # 2 sqrt(gp gd) etp etd with etX = eX/sqrt(L)
        return (
            2.0
            * math.sqrt(self.gamma_p * self.gamma_d)
            / self.vg
            * self.ep
            * self.ed
            / self.length
        )

    def _drive_plane(self, x):
        return np.exp(1j * self.kd * np.asarray(x, dtype=float)) / math.sqrt(
            self.length
        )

    def g_rr(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        decay = np.exp(
            1j * (self.probe_detuning + 2j * self.gamma_p) * (x2 - x1) / self.vg
        )
        corr = (
            self._pair_pre
            * np.exp(1j * (self.kp * x1 + self.kd * x2))
            * decay
            * _theta(x2 - x1)
            * _theta(x1)
        )
        return self._g_r(x1) * self._drive_plane(x2) - corr

    def g_lr(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        decay = np.exp(
            1j * (self.probe_detuning + 2j * self.gamma_p) * (x2 + x1) / self.vg
        )
        corr = (
            self._pair_pre
            * np.exp(1j * (-self.kp * x1 + self.kd * x2))
            * decay
            * _theta(x2 + x1)
            * _theta(-x1)
        )
        return self._g_l(x1) * self._drive_plane(x2) - corr

    def g_rl(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        decay = np.exp(
            -1j * (self.probe_detuning + 2j * self.gamma_p) * (x2 + x1) / self.vg
        )
        return (
            -self._pair_pre
            * np.exp(1j * (self.kp * x1 - self.kd * x2))
            * decay
            * _theta(-x2 - x1)
            * _theta(x1)
        )

    def g_ll(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        decay = np.exp(
            -1j * (self.probe_detuning + 2j * self.gamma_p) * (x2 - x1) / self.vg
        )
        return (
            -self._pair_pre
            * np.exp(-1j * (self.kp * x1 + self.kd * x2))
            * decay
            * _theta(-x2 + x1)
            * _theta(-x1)
        )

    def e_r(self, x):
        """Emitter in level 2 with the drive photon right-moving at x."""
        x = np.asarray(x, dtype=float)
        gbar_d = coupling_from_gamma(self.gamma_d, self.vg)
        etp = self.ep / math.sqrt(self.length)
        bound = (
            1j
            * gbar_d
            / self.vg
            * etp
            * self.ed
            / math.sqrt(self.length)
            * np.exp(
                1j
                * (self.vg * (self.kp + self.kd) - self.omega21 + 2j * self.gamma_p)
                * x
                / self.vg
            )
            * _theta(x)
        )
        return self._drive_plane(x) * etp - bound

    def e_l(self, x):
        x = np.asarray(x, dtype=float)
        gbar_d = coupling_from_gamma(self.gamma_d, self.vg)
        etp = self.ep / math.sqrt(self.length)
        return (
            -1j
            * gbar_d
            / self.vg
            * etp
            * self.ed
            / math.sqrt(self.length)
            * np.exp(
                -1j
                * (self.vg * (self.kp + self.kd) - self.omega21 + 2j * self.gamma_p)
                * x
                / self.vg
            )
            * _theta(-x)
        )


def ladder_two_photon_eigenstate(
    kp: float, kd: float, config: EmitterConfig, length: float, vg: float = 1.0
) -> LadderTwoPhotonEigenstate:
    if config.kind is not EmitterKind.LADDER_THREE_LEVEL:
        raise ValueError("config must describe a ladder three-level emitter")
    if length <= 0:
        raise ValueError("length must be positive")
    assert config.gamma_d is not None and config.omega32 is not None
    return LadderTwoPhotonEigenstate(
        kp=kp,
        kd=kd,
        gamma_p=config.gamma_p,
        gamma_d=config.gamma_d,
        omega21=config.omega21,
        omega32=config.omega32,
        vg=vg,
        length=length,
    )


def cross_g1_quadrature(
    state: LadderTwoPhotonEigenstate,
    x_out: float,
    x_in: float,
    tol: float = 1e-9,
) -> dict[str, complex]:
    """Probe coherence G1 of the eigenstate, integrating over the drive photon.

    The RL overlap vanishes identically (its wedge excludes x < 0 in the
    probe coordinate); it is still integrated as a consistency output.
    """
    if not (x_out > 0 > x_in):
        raise ValueError("requires x_in < 0 < x_out")
    half = state.length / 2.0
    pts = [x_in, -x_out, 0.0, x_out, -x_in]
    rr = _complex_quad(
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
    return {"rr": rr, "rl": rl, "total": rr + rl}


def cross_g1_closed(
    state: LadderTwoPhotonEigenstate, x_out: float, x_in: float
) -> dict[str, complex]:
    """Closed form of the RR overlap with its finite-size term, plus the
    bulk form whose bracket appears in the cross-Kerr phase."""
    L, vg = state.length, state.vg
    dp = state.probe_detuning
    gbar_d = coupling_from_gamma(state.gamma_d, vg)
    ph = np.exp(1j * state.kp * (x_out - x_in))
    etp2 = state.ep**2 / L
    edge = np.exp(-1j * (dp + 2j * state.gamma_p) * (x_out - L / 2.0) / vg)
    with_edge = (ph / L) * (
        state.t1p - (1j * gbar_d / vg) * state.ed * etp2 * (1.0 - edge)
    )
    bracket = cross_bracket(
        dp,
        state.drive_detuning,
        state.gamma_p,
        state.gamma_d,
        1.0 / L,
        vg,
    )
    bulk = (ph / L) * state.t1p * bracket
    return {"with_edge": complex(with_edge), "bulk": complex(bulk)}
