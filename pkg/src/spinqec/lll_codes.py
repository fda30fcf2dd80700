"""Codeword families built from spin coherent states.

Three constructions on the spin-j sphere:

* Antipodal: the two poles, {|j,j>, exp(2ij phi0)|j,-j>}; exactly
  orthogonal.
* EquatorialQudit(d): d coherent states equally spaced around the
  equator, with a phase convention making the clock rotation
  exp(-i(2pi/d) L3) a strict cyclic shift of the codewords.
* CyclicQubit(N): the two coset superpositions of 2N equatorial points,
  normalized by the binomial sum N^2/2^(2j) * sum_k C(2j, kN).

Codewords carry their coherent-point decomposition so downstream checks
can evaluate matrix elements in closed form instead of building dense
rotation matrices.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .coherent import (
    SphPoint,
    coherent_state,
    diagonal_operator,
    overlap,
    rotation_matrix_element,
)
from .rotations import EulerAngles, wigner_D_matrix
from .spin_core import HalfInt, Operator, StateVec, _spin, m_values

__all__ = [
    "CodeSpec",
    "Codewords",
    "LogicalSet",
    "antipodal",
    "equatorial_qudit",
    "cyclic_qubit",
    "build_codewords",
    "logical_operators",
    "antipodal_logical_x",
    "hermitian_check_ops",
    "cyclic_normalization",
    "cyclic_overlap_closed_form",
    "matrix_element_table",
]

_FAMILIES = ("Antipodal", "EquatorialQudit", "CyclicQubit")


@dataclass(frozen=True)
class CodeSpec:
    """Parameters selecting one codeword family on the spin-j sphere."""

    j: HalfInt
    family: str
    d: int | None = None
    n_cosets: int | None = None
    phase_convention: str = "Option1"
    phi0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "j", _spin(self.j))
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.phase_convention not in ("Option1", "Option2"):
            raise ValueError(f"unknown phase convention {self.phase_convention!r}")
        if self.family == "EquatorialQudit":
            if self.d is None or self.d < 2:
                raise ValueError("EquatorialQudit needs d >= 2")
            if not self.j.is_integer:
                raise ValueError("EquatorialQudit requires integer j")
            if self.phase_convention == "Option2" and (self.j.twice // 2) % self.d:
                raise ValueError("Option2 requires d to divide j")
        if self.family == "CyclicQubit":
            if self.n_cosets is None or self.n_cosets < 1:
                raise ValueError("CyclicQubit needs N >= 1")

    @property
    def dimension(self) -> int:
        """Number of codewords."""
        if self.family == "EquatorialQudit":
            return self.d
        return 2


def antipodal(j, phi0: float = 0.0) -> CodeSpec:
    return CodeSpec(HalfInt.of(j), "Antipodal", phi0=float(phi0))


def equatorial_qudit(j, d: int, phase_convention: str = "Option1") -> CodeSpec:
    return CodeSpec(HalfInt.of(j), "EquatorialQudit", d=int(d), phase_convention=phase_convention)


def cyclic_qubit(j, n_cosets: int) -> CodeSpec:
    return CodeSpec(HalfInt.of(j), "CyclicQubit", n_cosets=int(n_cosets))


@dataclass(frozen=True)
class Codewords:
    """Codeword basis with its gram matrix and coherent decomposition.

    components[k] lists (point, coefficient) pairs such that the k-th
    codeword equals sum_i coefficient_i |Omega_i>; the gram matrix is
    assembled from closed-form overlaps, so antipodal off-diagonals are
    exact zeros.
    """

    spec: CodeSpec
    basis: list[StateVec] = field(repr=False)
    gram: np.ndarray = field(repr=False)
    components: list[list[tuple[SphPoint, complex]]] = field(repr=False)

    def to_json_dict(self) -> dict:
        spec = self.spec
        return {
            "j": spec.j.value,
            "family": spec.family,
            "d": spec.d,
            "n_cosets": spec.n_cosets,
            "phase_convention": spec.phase_convention,
            "phi0": spec.phi0,
            "basis": [
                [[float(a.real), float(a.imag)] for a in vec.amps] for vec in self.basis
            ],
        }


def cyclic_normalization(j, n_cosets: int) -> float:
    """The binomial normalization N^2/2^(2j) sum_k C(2j, kN), exactly."""
    j = _spin(j)
    tj = j.twice
    total = sum(math.comb(tj, k) for k in range(0, tj + 1, n_cosets))
    return float(n_cosets * n_cosets * total) / float(2**tj)


def build_codewords(spec: CodeSpec) -> Codewords:
    """Construct the codeword basis for the given family."""
    j = spec.j
    components: list[list[tuple[SphPoint, complex]]] = []
    if spec.family == "Antipodal":
        components.append([(SphPoint.north(), 1.0 + 0.0j)])
        components.append([(SphPoint(math.pi, spec.phi0), 1.0 + 0.0j)])
    elif spec.family == "EquatorialQudit":
        d = spec.d
        jv = j.twice // 2
        for k in range(d):
            if spec.phase_convention == "Option1":
                phase = cmath.exp(-2j * math.pi * ((jv * k) % d) / d)
            else:
                phase = 1.0 + 0.0j
            components.append([(SphPoint(math.pi / 2.0, 2.0 * math.pi * k / d), phase)])
    else:
        n = spec.n_cosets
        coeff = complex(1.0 / math.sqrt(cyclic_normalization(j, n)))
        for r in range(2):
            components.append(
                [
                    (SphPoint(math.pi / 2.0, (2 * s + r) * math.pi / n), coeff)
                    for s in range(n)
                ]
            )
    basis = []
    for comp in components:
        amps = np.zeros(j.dim, dtype=complex)
        for point, coeff in comp:
            amps = amps + coeff * coherent_state(j, point).amps
        basis.append(StateVec(j, amps))
    size = len(components)
    gram = np.zeros((size, size), dtype=complex)
    for a in range(size):
        for b in range(size):
            gram[a, b] = sum(
                ca.conjugate() * cb * overlap(j, pa, pb)
                for pa, ca in components[a]
                for pb, cb in components[b]
            )
    return Codewords(spec, basis, gram, components)


def _clock_diagonal(j: HalfInt, d: int, power: int = 1) -> np.ndarray:
    """Diagonal of exp(-i (2pi/d) L3)^power via exact residue arithmetic.

    Computing exp(-2i pi (power * m mod d)/d) from the reduced residue
    makes the d-th power the exact identity matrix, not just to
    rounding.
    """
    ms = [(j.twice - 2 * i) // 2 for i in range(j.dim)]
    residues = [(power * m) % d for m in ms]
    return np.array([cmath.exp(-2j * math.pi * r / d) for r in residues])


@dataclass(frozen=True)
class LogicalSet:
    """Clock-shift logical pair and the Z-type check for an equatorial qudit."""

    spec: CodeSpec
    xbar: Operator
    zbar: Operator
    zcheck: Operator

    def xbar_power(self, power: int) -> Operator:
        """Exact X-bar^power; power = d gives the exact identity."""
        return Operator(self.spec.j, np.diag(_clock_diagonal(self.spec.j, self.spec.d, power)))


def logical_operators(spec: CodeSpec) -> LogicalSet:
    """X-bar = exp(-i(2pi/d) L3); Z-bar and the Z-check by exact quadrature.

    The azimuthal node count is forced to a multiple of d so the clock
    rotation permutes the quadrature nodes exactly; the covariance
    Z-bar X-bar = exp(2pi i/d) X-bar Z-bar then holds to rounding.
    """
    if spec.family != "EquatorialQudit":
        raise ValueError("logical_operators applies to EquatorialQudit specs")
    j, d = spec.j, spec.d
    xbar = Operator(j, np.diag(_clock_diagonal(j, d)))
    zbar = diagonal_operator(
        j, lambda t, p: np.exp(1j * p), band_limit=(1, 0), phi_multiple=d
    ).realized
    zcheck = diagonal_operator(
        j, lambda t, p: np.exp(1j * d * p), band_limit=(d, 0), phi_multiple=d
    ).realized
    return LogicalSet(spec, xbar, zbar, zcheck)


def antipodal_logical_x(j, phi0: float = 0.0) -> Operator:
    """The pi-rotation about the equatorial axis at azimuth phi0.

    Swaps the antipodal codewords with the stated phases; its square is
    (-1)^(2j) times the identity.
    """
    j = _spin(j)
    return wigner_D_matrix(j, EulerAngles(phi0, math.pi, -phi0))


def hermitian_check_ops(j, d: int = 1) -> tuple[Operator, Operator]:
    """Realized cos(d phi) and sin(d phi) diagonal operators.

    Both are Hermitian; they commute only approximately.  The commutator
    is diagonal with bulk entries that shrink as j grows, but the d levels
    clipped at each band edge leave a d-dependent constant there (pi/8 in
    the limit for d = 1), so the max entry never vanishes.  On coherent
    states the action of the commutator does go to zero.
    """
    j = _spin(j)
    cos_op = diagonal_operator(j, lambda t, p: np.cos(d * p), band_limit=(d, 0))
    sin_op = diagonal_operator(j, lambda t, p: np.sin(d * p), band_limit=(d, 0))
    return cos_op.realized, sin_op.realized


def cyclic_overlap_closed_form(j, n_cosets: int, big_theta: float) -> complex:
    """<0bar| exp(-i Theta L3) |1bar> for the cyclic qubit, in closed form.

    Equals exp(-ij Theta) sum_k (-1)^k exp(ik N Theta) C(2j, kN) divided
    by sum_k C(2j, kN); invariant under Theta -> Theta + 2pi/N up to the
    alternating sign pattern absorbed in the sum.
    """
    j = _spin(j)
    tj = j.twice
    n = int(n_cosets)
    num = 0.0 + 0.0j
    den = 0.0
    for idx, k_n in enumerate(range(0, tj + 1, n)):
        c = math.comb(tj, k_n)
        den += c
        num += (-1.0) ** idx * cmath.exp(1j * k_n * big_theta) * c
    return cmath.exp(-1j * j.value * big_theta) * num / den


def matrix_element_table(code: Codewords, r: EulerAngles) -> np.ndarray:
    """<a| X_R |b> over all codeword pairs, via closed-form elements."""
    j = code.spec.j
    size = len(code.basis)
    table = np.zeros((size, size), dtype=complex)
    for a in range(size):
        for b in range(size):
            table[a, b] = sum(
                ca.conjugate() * cb * rotation_matrix_element(j, pa, r, pb)
                for pa, ca in code.components[a]
                for pb, cb in code.components[b]
            )
    return table
