"""Exact state-vector computations for the singlet and four-spin entangled states.

States live in the computational basis indexed big-endian by qubit, with the
spin-up basis state mapped to bit 0.  All operators are dense complex
matrices; the systems are 2 and 4 qubits, so everything stays tiny.

Profile builders compute every correlation twice, once through matrices and
once through the closed forms, and refuse to return on disagreement.  That
keeps the two derivation routes honest against each other on every call.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NumericsError
from .geometry import Direction, gram_of
from .inequalities import CorrelationProfile, epr_profile_from_dots, ghz_profile_from_angles

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

#: Largest imaginary residue tolerated on an expectation of a Hermitian pair.
IMAG_TOL = 1e-9

#: Matrix-vs-closed-form agreement required of the profile builders; roughly
#: 100x the roundoff accumulated by 16x16 matrix products.
PROFILE_SELF_CHECK_TOL = 1e-10


def pauli_dot(direction) -> np.ndarray:
    """2x2 spin observable along a unit direction: x*sx + y*sy + z*sz."""
    if not isinstance(direction, Direction):
        direction = Direction(*(float(v) for v in direction))
    return direction.x * PAULI_X + direction.y * PAULI_Y + direction.z * PAULI_Z


def lift(op: np.ndarray, slot: int, n: int) -> np.ndarray:
    """Embed a single-qubit operator at the given slot of an n-qubit register.

    Slot 0 is the leftmost tensor factor, matching the big-endian basis order.
    """
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise ValueError(f"expected a 2x2 single-qubit operator, got shape {op.shape}")
    if not 0 <= slot < n:
        raise ValueError(f"slot {slot} out of range for {n} qubits")
    out = np.eye(1, dtype=complex)
    for position in range(n):
        out = np.kron(out, op if position == slot else np.eye(2, dtype=complex))
    return out


def epr_state() -> np.ndarray:
    """Two-qubit singlet (|+-> - |-+>)/sqrt(2)."""
    amplitudes = np.zeros(4, dtype=complex)
    amplitudes[0b01] = 1.0 / math.sqrt(2.0)
    amplitudes[0b10] = -1.0 / math.sqrt(2.0)
    return amplitudes


def ghz_state() -> np.ndarray:
    """Four-qubit entangled state (|++--> - |--++>)/sqrt(2)."""
    amplitudes = np.zeros(16, dtype=complex)
    amplitudes[0b0011] = 1.0 / math.sqrt(2.0)
    amplitudes[0b1100] = -1.0 / math.sqrt(2.0)
    return amplitudes


def _check_dims(state: np.ndarray, op: np.ndarray) -> None:
    if op.shape != (state.size, state.size):
        raise ValueError(f"operator shape {op.shape} does not match state dimension {state.size}")


def expectation(state: np.ndarray, op: np.ndarray) -> float:
    """<psi|O|psi> for a Hermitian operator, returned as a real number."""
    state = np.asarray(state, dtype=complex)
    op = np.asarray(op, dtype=complex)
    _check_dims(state, op)
    value = complex(np.vdot(state, op @ state))
    if abs(value.imag) > IMAG_TOL:
        raise NumericsError(f"expectation has imaginary residue {value.imag!r}")
    return value.real


def covariance(state: np.ndarray, x_op: np.ndarray, y_op: np.ndarray) -> float:
    """Symmetrized covariance <(XY + YX)/2> - <X><Y>.

    Symmetrizing keeps the value real for any Hermitian pair, whether or not
    the operators commute; for commuting pairs it reduces to <XY> - <X><Y>.
    """
    state = np.asarray(state, dtype=complex)
    x_op = np.asarray(x_op, dtype=complex)
    y_op = np.asarray(y_op, dtype=complex)
    _check_dims(state, x_op)
    _check_dims(state, y_op)
    # <psi|XY|psi> = <X psi|Y psi> for Hermitian X; the real part is the
    # symmetrized product expectation since <YX> is its conjugate.
    sym = float(np.vdot(x_op @ state, y_op @ state).real)
    return sym - expectation(state, x_op) * expectation(state, y_op)


def variance(state: np.ndarray, op: np.ndarray) -> float:
    return covariance(state, op, op)


def epr_observables(
    a: Direction, b: Direction, c: Direction, d: Direction
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Spin observables A, B on qubit 0 and C, D on qubit 1 of the singlet."""
    return (
        lift(pauli_dot(a), 0, 2),
        lift(pauli_dot(b), 0, 2),
        lift(pauli_dot(c), 1, 2),
        lift(pauli_dot(d), 1, 2),
    )


def ghz_observables(
    alpha: float, beta: float, gamma: float, delta: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Pair-product observables: A, B act on qubits (0, 1), C, D on qubits (2, 3).

    Each observable measures both spins of its pair along one planar axis,
    e.g. A = (s1 . a)(s2 . a) with a at angle alpha in the x-y plane.
    """

    def pair(theta: float, first_slot: int) -> np.ndarray:
        op = pauli_dot(Direction.planar(theta))
        return lift(op, first_slot, 4) @ lift(op, first_slot + 1, 4)

    return pair(alpha, 0), pair(beta, 0), pair(gamma, 2), pair(delta, 2)


def _profile_from_state(state, op_a, op_b, op_c, op_d) -> CorrelationProfile:
    return CorrelationProfile(
        e_ac=covariance(state, op_a, op_c),
        e_ad=covariance(state, op_a, op_d),
        e_bc=covariance(state, op_b, op_c),
        e_bd=covariance(state, op_b, op_d),
        e_ab=covariance(state, op_a, op_b),
        e_cd=covariance(state, op_c, op_d),
        var_a=variance(state, op_a),
        var_b=variance(state, op_b),
        var_c=variance(state, op_c),
        var_d=variance(state, op_d),
    )


def _assert_profile_close(
    computed: CorrelationProfile, expected: CorrelationProfile, tol: float
) -> None:
    worst_name, worst = None, 0.0
    for name, value in computed.as_dict().items():
        diff = abs(value - getattr(expected, name))
        if diff > worst:
            worst_name, worst = name, diff
    if worst > tol:
        raise NumericsError(
            f"matrix profile disagrees with closed form on {worst_name} by {worst!r}"
        )


def epr_profile(a: Direction, b: Direction, c: Direction, d: Direction) -> CorrelationProfile:
    """Matrix-computed singlet profile, self-checked against the closed forms."""
    computed = _profile_from_state(epr_state(), *epr_observables(a, b, c, d))
    expected = epr_profile_from_dots(gram_of(a, b, c, d))
    _assert_profile_close(computed, expected, PROFILE_SELF_CHECK_TOL)
    return computed


def ghz_profile(alpha: float, beta: float, gamma: float, delta: float) -> CorrelationProfile:
    """Matrix-computed four-spin profile, self-checked against the closed forms."""
    computed = _profile_from_state(ghz_state(), *ghz_observables(alpha, beta, gamma, delta))
    expected = ghz_profile_from_angles(alpha, beta, gamma, delta)
    _assert_profile_close(computed, expected, PROFILE_SELF_CHECK_TOL)
    return computed
