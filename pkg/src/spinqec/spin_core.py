"""Exact half-integer labels and the dense spin-j operator algebra.

Every (2j+1)-dimensional array in this package uses the descending magnetic
number convention: index 0 holds m = j, index 2j holds m = -j.  Spin and
magnetic labels are stored exactly as the integer 2x value, so integer and
half-integer cases never rely on float equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HalfInt",
    "StateVec",
    "Operator",
    "m_values",
    "m_index",
    "l3_operator",
    "ladder_operators",
    "axis_operator",
    "matexp_antihermitian",
]


@dataclass(frozen=True, order=True)
class HalfInt:
    """A half-integer stored exactly as twice its value.

    Spin labels j are nonnegative; magnetic labels m may be negative.
    Functions that take a spin label validate nonnegativity themselves.
    """

    twice: int

    def __post_init__(self):
        if isinstance(self.twice, (bool, float)) or not isinstance(
            self.twice, (int, np.integer)
        ):
            raise TypeError(f"twice must be an integer, got {self.twice!r}")
        object.__setattr__(self, "twice", int(self.twice))

    @staticmethod
    def of(value) -> "HalfInt":
        """Coerce an int, an exact multiple of 1/2, or a HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            return HalfInt(2 * int(value))
        doubled = 2.0 * float(value)
        rounded = round(doubled)
        if abs(doubled - rounded) > 1e-9:
            raise ValueError(f"{value!r} is not a half-integer")
        return HalfInt(int(rounded))

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    @property
    def dim(self) -> int:
        """Dimension 2j+1 of the spin-j space (spin labels only)."""
        if self.twice < 0:
            raise ValueError("dimension is defined for nonnegative labels only")
        return self.twice + 1

    def __float__(self) -> float:
        return self.twice / 2.0

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __repr__(self) -> str:
        if self.twice % 2 == 0:
            return f"HalfInt({self.twice // 2})"
        return f"HalfInt({self.twice}/2)"


def _spin(j) -> HalfInt:
    j = HalfInt.of(j)
    if j.twice < 0:
        raise ValueError(f"spin label must be nonnegative, got {j.value}")
    return j


def m_values(j) -> np.ndarray:
    """Magnetic numbers j, j-1, ..., -j as floats, in storage order."""
    j = _spin(j)
    return (j.twice - 2 * np.arange(j.dim)) / 2.0


def m_index(j, m) -> int:
    """Storage index of magnetic number m in the spin-j basis."""
    j = _spin(j)
    m = HalfInt.of(m)
    if (j.twice - m.twice) % 2 != 0 or abs(m.twice) > j.twice:
        raise ValueError(f"m = {m.value} is not a level of spin {j.value}")
    return (j.twice - m.twice) // 2


@dataclass(frozen=True)
class StateVec:
    """A vector in the spin-j space, basis descending in m."""

    j: HalfInt
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        j = _spin(self.j)
        object.__setattr__(self, "j", j)
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (j.dim,):
            raise ValueError(f"expected shape ({j.dim},), got {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @staticmethod
    def basis_state(j, m) -> "StateVec":
        j = _spin(j)
        amps = np.zeros(j.dim, dtype=complex)
        amps[m_index(j, m)] = 1.0
        return StateVec(j, amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "StateVec":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVec(self.j, self.amps / n)

    def inner(self, other: "StateVec") -> complex:
        """<self|other> with the bra conjugated."""
        if self.j != other.j:
            raise ValueError("mismatched spin labels")
        return complex(np.vdot(self.amps, other.amps))

    def fidelity(self, other: "StateVec") -> float:
        return abs(self.inner(other)) ** 2


@dataclass(frozen=True)
class Operator:
    """A dense operator on the spin-j space."""

    j: HalfInt
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        j = _spin(self.j)
        object.__setattr__(self, "j", j)
        mat = np.array(self.mat, dtype=complex)
        if mat.shape != (j.dim, j.dim):
            raise ValueError(f"expected shape ({j.dim}, {j.dim}), got {mat.shape}")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @staticmethod
    def identity(j) -> "Operator":
        j = _spin(j)
        return Operator(j, np.eye(j.dim, dtype=complex))

    def dagger(self) -> "Operator":
        return Operator(self.j, self.mat.conj().T)

    def __matmul__(self, other):
        if isinstance(other, Operator):
            if self.j != other.j:
                raise ValueError("mismatched spin labels")
            return Operator(self.j, self.mat @ other.mat)
        if isinstance(other, StateVec):
            return self.apply(other)
        return NotImplemented

    def apply(self, vec: StateVec) -> StateVec:
        if self.j != vec.j:
            raise ValueError("mismatched spin labels")
        return StateVec(self.j, self.mat @ vec.amps)

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self.mat - self.mat.conj().T)) <= tol)

    def is_unitary(self, tol: float = 1e-10) -> bool:
        probe = self.mat.conj().T @ self.mat - np.eye(self.j.dim)
        return bool(np.max(np.abs(probe)) <= tol)

    def max_diff(self, other: "Operator") -> float:
        if self.j != other.j:
            raise ValueError("mismatched spin labels")
        return float(np.max(np.abs(self.mat - other.mat)))

    def sandwich(self, bra: StateVec, ket: StateVec) -> complex:
        """<bra| self |ket> with the bra conjugated."""
        if not (self.j == bra.j == ket.j):
            raise ValueError("mismatched spin labels")
        return complex(np.vdot(bra.amps, self.mat @ ket.amps))


def l3_operator(j) -> Operator:
    """L3 = diag(j, j-1, ..., -j)."""
    j = _spin(j)
    return Operator(j, np.diag(m_values(j)).astype(complex))


def ladder_operators(j) -> tuple[Operator, Operator]:
    """(L+, L-) with L+|j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>.

    In descending storage order L+ is superdiagonal and L- subdiagonal.
    """
    j = _spin(j)
    jv = j.value
    mv = m_values(j)
    lp = np.zeros((j.dim, j.dim), dtype=complex)
    # Column c holds m = mv[c]; raising lands on row c-1 (m+1).
    for c in range(1, j.dim):
        m = mv[c]
        lp[c - 1, c] = math.sqrt(jv * (jv + 1.0) - m * (m + 1.0))
    return Operator(j, lp), Operator(j, lp.conj().T)


def axis_operator(j, n) -> Operator:
    """L . n for a unit 3-vector n = (nx, ny, nz)."""
    j = _spin(j)
    n = np.asarray(n, dtype=float)
    if n.shape != (3,):
        raise ValueError("axis must be a 3-vector")
    length = float(np.linalg.norm(n))
    if abs(length - 1.0) > 1e-12:
        raise ValueError(f"axis must be a unit vector, |n| = {length}")
    lp, lm = ladder_operators(j)
    l1 = (lp.mat + lm.mat) / 2.0
    l2 = (lp.mat - lm.mat) / 2.0j
    l3 = l3_operator(j).mat
    return Operator(j, n[0] * l1 + n[1] * l2 + n[2] * l3)


def matexp_antihermitian(a: Operator, t: float) -> Operator:
    """exp(-i t A) for Hermitian A, by eigendecomposition.

    Rejects non-Hermitian input rather than silently symmetrizing.
    """
    if not a.is_hermitian(1e-10):
        raise ValueError("generator must be Hermitian to 1e-10")
    w, v = np.linalg.eigh(a.mat)
    phases = np.exp(-1j * t * w)
    return Operator(a.j, (v * phases) @ v.conj().T)
