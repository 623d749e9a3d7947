"""Shared domain types, unit conventions and phase arithmetic.

Conventions used throughout the package: hbar = 1, the photon group
velocity ``vg`` defaults to 1, and every frequency (detunings, linewidths,
Rabi frequencies) is quoted in units of the lower transition frequency
``omega21``.  A radiative linewidth ``gamma`` and the point-coupling
amplitude ``gbar`` are related by ``gamma = gbar**2 / (2 vg)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "TWO_PI",
    "UnitSystem",
    "EmitterKind",
    "EmitterConfig",
    "Channel",
    "FockInput",
    "CoherentInput",
    "PhaseDecomposition",
    "CoherenceResult",
    "complex_phase",
    "wrap_angle",
    "resonance_limit_phases",
    "coupling_from_gamma",
    "gamma_from_coupling",
    "WqedError",
    "ZeroAmplitudeError",
    "UnsupportedPhotonNumberError",
    "ResonancePoleError",
    "ZeroDriveError",
    "StepTooLargeError",
    "NonFiniteStateError",
    "DimensionOverflowError",
    "NormDriftError",
    "PacketOverlapError",
    "InsufficientOverlapError",
    "QuadratureError",
]

TWO_PI = 2.0 * math.pi


class WqedError(Exception):
    """Base class for all package-specific errors."""


class ZeroAmplitudeError(WqedError):
    """Phase of a zero amplitude requested (perfect-reflection point)."""


class UnsupportedPhotonNumberError(WqedError, NotImplementedError):
    """Fock photon number outside the supported set {1, 2}."""


class ResonancePoleError(WqedError):
    """Nonlinear bracket evaluated at its 1/detuning pole without a limit."""


class ZeroDriveError(WqedError):
    """Coherent transmission amplitude requested at zero Rabi frequency."""


class StepTooLargeError(WqedError):
    """Integrator step exceeds the stability guard."""


class NonFiniteStateError(WqedError):
    """Integrator state left the physical bounds."""


class DimensionOverflowError(WqedError):
    """Lattice basis would exceed the configured state cap."""


class NormDriftError(WqedError):
    """State norm drifted beyond tolerance during evolution."""


class PacketOverlapError(WqedError):
    """Scattered packets failed to separate before measurement."""


class InsufficientOverlapError(WqedError):
    """Probe and drive packets do not overlap at the emitter."""


class QuadratureError(WqedError):
    """Adaptive quadrature failed to reach the requested accuracy."""


@dataclass(frozen=True)
class UnitSystem:
    """hbar = 1 units with configurable group velocity.

    ``frequency_unit`` records the reference frequency (omega21) that all
    dimensionless outputs are quoted against; it is metadata only.
    """

    vg: float = 1.0
    frequency_unit: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        if self.vg <= 0:
            raise ValueError("group velocity must be positive")
        if self.hbar != 1.0:
            raise ValueError("only hbar = 1 units are supported")


class EmitterKind(enum.Enum):
    TWO_LEVEL = "two_level"
    LADDER_THREE_LEVEL = "ladder_three_level"


def coupling_from_gamma(gamma: float, vg: float = 1.0) -> float:
    """Point-coupling amplitude gbar with gamma = gbar^2/(2 vg)."""
    if gamma <= 0:
        raise ValueError("relaxation rate must be positive")
    return math.sqrt(2.0 * vg * gamma)


def gamma_from_coupling(gbar: float, vg: float = 1.0) -> float:
    """Relaxation rate gamma = gbar^2/(2 vg)."""
    return gbar * gbar / (2.0 * vg)


@dataclass(frozen=True)
class EmitterConfig:
    """Level splittings and radiative rates of the emitter.

    ``gamma_p`` is the linewidth of the 1<->2 transition (probe),
    ``gamma_d`` of the 2<->3 transition (drive, ladder emitters only).
    """

    kind: EmitterKind = EmitterKind.TWO_LEVEL
    omega21: float = 1.0
    gamma_p: float = 0.1
    omega32: float | None = None
    gamma_d: float | None = None

    def __post_init__(self) -> None:
        if self.gamma_p <= 0:
            raise ValueError("gamma_p must be positive")
        if self.omega21 <= 0:
            raise ValueError("omega21 must be positive")
        if self.kind is EmitterKind.LADDER_THREE_LEVEL:
            if self.gamma_d is None or self.gamma_d <= 0:
                raise ValueError("ladder emitter needs gamma_d > 0")
            if self.omega32 is None or self.omega32 <= 0:
                raise ValueError("ladder emitter needs omega32 > 0")
        else:
            if self.gamma_d is not None or self.omega32 is not None:
                raise ValueError("two-level emitter takes no drive transition")

    @staticmethod
    def two_level(omega21: float = 1.0, gamma_p: float = 0.1) -> "EmitterConfig":
        return EmitterConfig(EmitterKind.TWO_LEVEL, omega21, gamma_p)

    @staticmethod
    def ladder(
        omega21: float = 1.0,
        gamma_p: float = 0.1,
        omega32: float = 1.0,
        gamma_d: float = 0.1,
    ) -> "EmitterConfig":
        return EmitterConfig(
            EmitterKind.LADDER_THREE_LEVEL, omega21, gamma_p, omega32, gamma_d
        )

    def coupling_p(self, vg: float = 1.0) -> float:
        return coupling_from_gamma(self.gamma_p, vg)

    def coupling_d(self, vg: float = 1.0) -> float:
        if self.gamma_d is None:
            raise ValueError("two-level emitter has no drive coupling")
        return coupling_from_gamma(self.gamma_d, vg)


class Channel(enum.Enum):
    PROBE = "probe"
    DRIVE = "drive"


@dataclass(frozen=True)
class FockInput:
    """Photon-number input: n photons at one carrier on quantization length L.

    The beam intensity (photons per length) is n / L.  Only n = 1 and n = 2
    carry closed-form results; larger n is rejected.
    """

    n: int
    length: float
    detuning: float = 0.0
    channel: Channel = Channel.PROBE

    def __post_init__(self) -> None:
        if self.n not in (1, 2):
            raise UnsupportedPhotonNumberError(
                f"Fock input supports n in {{1, 2}}, got n={self.n}"
            )
        if self.length <= 0:
            raise ValueError("quantization length must be positive")

    @property
    def intensity(self) -> float:
        return self.n / self.length


@dataclass(frozen=True)
class CoherentInput:
    """Continuous-wave coherent input characterized by its Rabi frequency."""

    omega_rabi: float
    detuning: float = 0.0
    channel: Channel = Channel.PROBE

    def __post_init__(self) -> None:
        if self.omega_rabi < 0:
            raise ValueError("Rabi frequency must be non-negative")

    def intensity(self, gamma: float, vg: float = 1.0) -> float:
        """Photon density Omega^2/(2 vg gamma) of the addressed transition."""
        if gamma <= 0:
            raise ValueError("relaxation rate must be positive")
        return self.omega_rabi**2 / (2.0 * vg * gamma)


def complex_phase(z: complex) -> float:
    """Principal-value argument of ``z`` in (-pi, pi].

    Raises ZeroAmplitudeError at z = 0, where the phase is undefined; for
    scattering amplitudes that point is the perfect-reflection point.
    """
    if z == 0:
        raise ZeroAmplitudeError("phase of zero amplitude is undefined")
    phi = math.atan2(z.imag, z.real)
    if phi <= -math.pi:
        phi = math.pi
    return phi


def wrap_angle(phi: float) -> float:
    """Wrap an angle to the principal branch (-pi, pi]."""
    w = math.remainder(phi, TWO_PI)
    if w <= -math.pi:
        w += TWO_PI
    return w


@dataclass(frozen=True)
class PhaseDecomposition:
    """Linear, nonlinear and total phase of a transmitted beam, in radians.

    The total phase is the principal argument of (linear amplitude x
    nonlinear bracket); linear and nonlinear parts add to it modulo 2 pi.
    """

    linear: float
    nonlinear: float
    total: float

    def __post_init__(self) -> None:
        for name in ("linear", "nonlinear", "total"):
            v = getattr(self, name)
            if not (-math.pi < v <= math.pi + 1e-15):
                raise ValueError(f"{name} phase {v} outside (-pi, pi]")

    @staticmethod
    def from_amplitudes(linear_amplitude: complex, bracket: complex) -> "PhaseDecomposition":
        return PhaseDecomposition(
            linear=complex_phase(linear_amplitude),
            nonlinear=complex_phase(bracket),
            total=complex_phase(linear_amplitude * bracket),
        )

    def consistent(self, tol: float = 1e-10) -> bool:
        return abs(wrap_angle(self.linear + self.nonlinear - self.total)) < tol


@dataclass(frozen=True)
class CoherenceResult:
    """Decomposition of the transmitted first-order coherence G1(x'<0, x>0).

    G1 = prefactor * exp(i omega (x - x')/vg) * linear_amplitude * bracket.
    ``bracket_terms`` lists the bracket's additive terms (starting with 1)
    where a term-by-term form exists.  At the bracket's resonance pole the
    amplitudes are undefined and the one-sided limit is recorded instead.
    """

    prefactor: float
    linear_amplitude: complex
    bracket: complex | None
    phase: PhaseDecomposition
    bracket_terms: tuple[complex, ...] | None = None
    resonance_limit: str | None = None
    zero_drive_limit: bool = False

    def amplitude(self) -> complex:
        """Full coherence amplitude without the propagation phase factor."""
        if self.bracket is None:
            raise ResonancePoleError("amplitude undefined at the resonance pole")
        return self.prefactor * self.linear_amplitude * self.bracket


def resonance_limit_phases(limit: str, total: float = 0.0) -> PhaseDecomposition:
    """One-sided limits of the phase decomposition at zero detuning.

    The linear phase tends to -pi/2 (+pi/2) as the detuning approaches zero
    from above (below); the nonlinear phase makes up the difference to the
    stated total, which vanishes for the closed-form brackets.
    """
    if limit not in ("above", "below"):
        raise ValueError("limit must be 'above' or 'below'")
    sign = -1.0 if limit == "above" else 1.0
    linear = sign * math.pi / 2.0
    return PhaseDecomposition(
        linear=linear, nonlinear=wrap_angle(total - linear), total=wrap_angle(total)
    )
