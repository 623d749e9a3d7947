"""Driven two-level-emitter dynamics in the rotating frame.

State variables: the frame-rotated dipole expectation ``s1`` (complex) and
the excited-state population ``s2`` (real), obeying

    ds1/dt = (i detuning - 2 gamma) s1 - i omega_rabi (1 - 2 s2)
    ds2/dt = -4 gamma s2 + i omega_rabi (s1 - s1*)

for an emitter driven through a waveguide it decays into at rate
``2 gamma`` (amplitude).  The closed-form steady state feeds the coherent
reflection current and transmission amplitude.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    NonFiniteStateError,
    StepTooLargeError,
    ZeroDriveError,
    complex_phase,
)
from .two_level import transmission_amplitude

__all__ = [
    "BlochParams",
    "BlochState",
    "BlochTrajectory",
    "bloch_rhs",
    "steady_state",
    "integrate",
    "CoherentObservables",
    "coherent_observables",
    "transient_transmission_amplitude",
    "trajectory_to_csv",
]

GROUND = (0.0 + 0.0j, 0.0)


@dataclass(frozen=True)
class BlochParams:
    detuning: float
    gamma: float
    omega_rabi: float

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if self.omega_rabi < 0:
            raise ValueError("Rabi frequency must be non-negative")

    @property
    def rate_scale(self) -> float:
        return max(self.gamma, self.omega_rabi, abs(self.detuning))


@dataclass(frozen=True)
class BlochState:
    s1: complex
    s2: float
    time: float = 0.0

    def physical(self, tol: float = 1e-9) -> bool:
        """Population bounds and the pure-state dipole bound |s1|^2 <= s2(1-s2)."""
        if not (-tol <= self.s2 <= 1.0 + tol):
            return False
        return abs(self.s1) ** 2 <= self.s2 * (1.0 - self.s2) + tol


def bloch_rhs(state: BlochState, params: BlochParams) -> tuple[complex, float]:
    """Time derivatives (ds1/dt, ds2/dt); ds2/dt is real by construction."""
    s1, s2 = state.s1, state.s2
    om = params.omega_rabi
    ds1 = (1j * params.detuning - 2.0 * params.gamma) * s1 - 1j * om + 2j * om * s2
    ds2c = -4.0 * params.gamma * s2 + 1j * om * (s1 - s1.conjugate())
    assert abs(ds2c.imag) < 1e-15
    return ds1, ds2c.real


def steady_state(params: BlochParams) -> BlochState:
    """Closed-form fixed point, independent of the initial state."""
    om = params.omega_rabi
    den = params.detuning**2 + 4.0 * params.gamma**2 + 2.0 * om * om
    s1 = 1j * om * (-1j * params.detuning - 2.0 * params.gamma) / den
    return BlochState(s1=s1, s2=om * om / den, time=math.inf)


@dataclass(frozen=True)
class BlochTrajectory:
    """Sampled trajectory; arrays share one time grid."""

    times: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    params: BlochParams

    def final(self) -> BlochState:
        return BlochState(
            s1=complex(self.s1[-1]), s2=float(self.s2[-1]), time=float(self.times[-1])
        )

    def instantaneous_current(self) -> np.ndarray:
        return 2.0 * self.params.gamma * self.s2


def _rhs_vec(u: np.ndarray, params: BlochParams) -> np.ndarray:
    re1, im1, s2 = u
    om = params.omega_rabi
    return np.array(
        [
            -params.detuning * im1 - 2.0 * params.gamma * re1,
            params.detuning * re1 - 2.0 * params.gamma * im1 - om + 2.0 * om * s2,
            -4.0 * params.gamma * s2 - 2.0 * om * im1,
        ]
    )


def integrate(
    params: BlochParams,
    t_end: float,
    dt: float,
    initial: BlochState | None = None,
    stride: int = 1,
) -> BlochTrajectory:
    """Fixed-step classic 4th-order integration from the ground state.

    The step guard dt <= 0.1/max(gamma, omega_rabi, |detuning|) keeps the
    scheme well inside its stability region; violating it raises rather
    than silently degrading.  Physicality of the state is checked along the
    way (tolerance 1e-6).
    """
    if t_end <= 0 or dt <= 0:
        raise ValueError("t_end and dt must be positive")
    guard = 0.1 / params.rate_scale
    if dt > guard * (1.0 + 1e-12):
        raise StepTooLargeError(f"dt={dt} exceeds stability guard {guard:.3g}")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    if initial is None:
        s1_0, s2_0 = GROUND
    else:
        s1_0, s2_0 = initial.s1, initial.s2
    n_steps = int(math.ceil(t_end / dt - 1e-12))
    u = np.array([s1_0.real, s1_0.imag, s2_0])
    times = [0.0]
    out = [u.copy()]
    t = 0.0
    for step in range(1, n_steps + 1):
        h = min(dt, t_end - t)
        k1 = _rhs_vec(u, params)
        k2 = _rhs_vec(u + 0.5 * h * k1, params)
        k3 = _rhs_vec(u + 0.5 * h * k2, params)
        k4 = _rhs_vec(u + h * k3, params)
        u = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += h
        if not np.all(np.isfinite(u)):
            raise NonFiniteStateError(f"non-finite state at t={t}")
        s2 = u[2]
        if s2 < -1e-6 or s2 > 1.0 + 1e-6:
            raise NonFiniteStateError(f"population {s2} out of bounds at t={t}")
        if u[0] ** 2 + u[1] ** 2 > s2 * (1.0 - s2) + 1e-6:
            raise NonFiniteStateError(f"dipole bound violated at t={t}")
        if step % stride == 0 or step == n_steps:
            times.append(t)
            out.append(u.copy())
    arr = np.array(out)
    return BlochTrajectory(
        times=np.array(times),
        s1=arr[:, 0] + 1j * arr[:, 1],
        s2=arr[:, 2],
        params=params,
    )


@dataclass(frozen=True)
class CoherentObservables:
    """Steady-state outputs for a coherent input."""

    current: float
    tilde_tp: complex
    phi_total: float
    susceptibility: complex
    zero_drive_limit: bool = False


def coherent_observables(params: BlochParams) -> CoherentObservables:
    """Reflected current, transmission amplitude and total phase.

    The current is 2 gamma s2(inf); the transmission amplitude
    1 - (2i gamma/omega) s1(inf) reduces to the linear amplitude as the
    drive vanishes (flagged limit rather than 0/0).
    """
    ss = steady_state(params)
    current = 2.0 * params.gamma * ss.s2
    if params.omega_rabi == 0.0:
        tp = complex(transmission_amplitude(params.detuning, params.gamma))
        return CoherentObservables(
            current=0.0,
            tilde_tp=tp,
            phi_total=complex_phase(tp) if tp != 0 else 0.0,
            susceptibility=(tp - 1.0) / 2j,
            zero_drive_limit=True,
        )
    tp = 1.0 - (2j * params.gamma / params.omega_rabi) * ss.s1
    return CoherentObservables(
        current=current,
        tilde_tp=tp,
        phi_total=complex_phase(tp),
        susceptibility=(tp - 1.0) / 2j,
    )


def transient_transmission_amplitude(
    traj: BlochTrajectory, x: float, t: float, vg: float = 1.0
) -> complex:
    """Finite-time transmission amplitude at position x > 0 and time t.

    Built from s1 at the retarded time t - x/vg; defined only after the
    wavefront has passed (vg t > x), zero-drive inputs raise.
    """
    params = traj.params
    if params.omega_rabi == 0.0:
        raise ZeroDriveError("transient amplitude undefined at zero drive")
    if x <= 0:
        raise ValueError("transmitted amplitude is defined at x > 0")
    t_ret = t - x / vg
    if t_ret < 0:
        raise ValueError("wavefront has not reached x at this time")
    s1 = complex(np.interp(t_ret, traj.times, traj.s1.real)
                 + 1j * np.interp(t_ret, traj.times, traj.s1.imag))
    return 1.0 - (2j * params.gamma / params.omega_rabi) * s1


def trajectory_to_csv(traj: BlochTrajectory, path) -> None:
    """Columns: t, Re(S1), Im(S1), S2, instantaneous reflected current."""
    jc = traj.instantaneous_current()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("t,re_s1,im_s1,s2,jc_instantaneous\n")
        for i in range(len(traj.times)):
            fh.write(
                f"{traj.times[i]:.12g},{traj.s1[i].real:.12g},"
                f"{traj.s1[i].imag:.12g},{traj.s2[i]:.12g},{jc[i]:.12g}\n"
            )
