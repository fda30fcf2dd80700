"""Knill-Laflamme checks for coherent-state codes under rotation errors.

Error families are one-parameter rotation sets closed under composition:
z-rotations (equatorial clock errors), rotations about a fixed
equatorial axis, and z-rotations conjugated by a fixed x-rotation.  The
relative error T = R^(-1) R' between two family members stays in the
family, so scanning pairs probes exactly the operators the recovery
argument needs.

Matrix elements between codewords are evaluated in closed form through
the coherent decomposition; an optional brute-force path sandwiches the
dense rotation matrix instead, for cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lll_codes import Codewords, matrix_element_table
from .rotations import EulerAngles, Su2, compose, euler_from_su2, inverse, su2_from_euler, wigner_D_matrix
from .spin_core import _spin

__all__ = [
    "ErrorSet",
    "KLReport",
    "PairRecord",
    "CorrectableAngle",
    "equatorial_z",
    "conjugated_y",
    "conjugated_z_about_x",
    "explicit_list",
    "sample_rotations",
    "kl_check",
    "correctable_angle",
    "diagonal_scan",
    "equatorial_offdiag_bound",
]

_KINDS = ("EquatorialZ", "ConjugatedY", "ConjugatedZaboutX", "ExplicitList")
_PAIR_CAP = 10_000


@dataclass(frozen=True)
class ErrorSet:
    """A parametrized family of unitary rotation errors.

    max_angle is the half-range of the family parameter: members are
    R(t) for t in [-max_angle, max_angle].  Sampling mixes a uniform
    grid with seeded uniform draws, so endpoints are always present.
    """

    kind: str
    max_angle: float = 0.0
    phi0: float = 0.0
    x_angle: float = 0.9
    samples: int = 32
    rotations: tuple[EulerAngles, ...] = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown error-set kind {self.kind!r}")
        if self.kind == "ExplicitList":
            if not self.rotations:
                raise ValueError("ExplicitList needs at least one rotation")
        elif self.max_angle < 0.0:
            raise ValueError("max_angle must be nonnegative")
        if self.samples < 1:
            raise ValueError("samples must be positive")

    @property
    def closed_under_composition(self) -> bool:
        """Whether T = R^(-1) R' stays in the family (true for all
        one-parameter kinds; conjugation does not break closure)."""
        return self.kind != "ExplicitList"

    def member(self, t: float) -> EulerAngles:
        """The rotation at family parameter t."""
        if self.kind == "EquatorialZ":
            return EulerAngles(t, 0.0, 0.0)
        if self.kind == "ConjugatedY":
            return EulerAngles(self.phi0, t, -self.phi0)
        if self.kind == "ConjugatedZaboutX":
            x_half = 0.5 * self.x_angle
            u_x = Su2(math.cos(x_half), -1j * math.sin(x_half))
            u_z = su2_from_euler(EulerAngles(t, 0.0, 0.0))
            angles, _ = euler_from_su2(u_x @ u_z @ u_x.inverse())
            return angles
        raise ValueError("ExplicitList has no parametric members")


def equatorial_z(theta_max: float, samples: int = 32) -> ErrorSet:
    return ErrorSet("EquatorialZ", max_angle=float(theta_max), samples=samples)


def conjugated_y(phi0: float, theta_max: float, samples: int = 32) -> ErrorSet:
    return ErrorSet("ConjugatedY", max_angle=float(theta_max), phi0=float(phi0), samples=samples)


def conjugated_z_about_x(alpha_max: float, x_angle: float = 0.9, samples: int = 32) -> ErrorSet:
    return ErrorSet("ConjugatedZaboutX", max_angle=float(alpha_max), x_angle=float(x_angle), samples=samples)


def explicit_list(rotations) -> ErrorSet:
    rotations = tuple(rotations)
    return ErrorSet("ExplicitList", samples=len(rotations), rotations=rotations)


def sample_rotations(errs: ErrorSet, seed: int) -> list[EulerAngles]:
    """Deterministic sample of the error set: grid half, seeded half."""
    if errs.kind == "ExplicitList":
        return list(errs.rotations)
    n_grid = max(2, errs.samples // 2) if errs.samples >= 2 else 1
    n_grid = min(n_grid, errs.samples)
    ts = list(np.linspace(-errs.max_angle, errs.max_angle, n_grid))
    if errs.samples > n_grid:
        rng = np.random.default_rng(seed)
        ts.extend(rng.uniform(-errs.max_angle, errs.max_angle, errs.samples - n_grid))
    return [errs.member(float(t)) for t in ts]


@dataclass(frozen=True)
class PairRecord:
    """One evaluated relative error T = R1^(-1) R2."""

    r1: EulerAngles
    r2: EulerAngles
    t: EulerAngles
    delta: float
    eps: float


@dataclass(frozen=True)
class KLReport:
    """Worst-case Knill-Laflamme discrepancies over the sampled pairs.

    delta_star is the largest spread among diagonal entries <k|X_T|k>
    (global-phase invariant); eps_star the largest off-diagonal
    magnitude; worst_pair attains max(delta, eps).
    """

    delta_star: float
    eps_star: float
    worst_pair: tuple[EulerAngles, EulerAngles]
    pairs: list[PairRecord] = field(repr=False)

    def __post_init__(self):
        if self.delta_star < 0.0 or self.eps_star < 0.0:
            raise ValueError("discrepancies must be nonnegative")


def _pair_indices(n: int, seed: int) -> list[tuple[int, int]]:
    if n * n <= _PAIR_CAP:
        return [(i, k) for i in range(n) for k in range(n)]
    # Stratified cap: every left index keeps an equal quota of partners.
    quota = max(1, _PAIR_CAP // n)
    rng = np.random.default_rng(seed + 1)
    out = []
    for i in range(n):
        partners = rng.choice(n, size=min(quota, n), replace=False)
        out.extend((i, int(k)) for k in partners)
    return out


def _scan_tables(code: Codewords, errs: ErrorSet, seed: int, brute_force: bool):
    rotations = sample_rotations(errs, seed)
    pairs = _pair_indices(len(rotations), seed)
    j = code.spec.j
    for i, k in pairs:
        t_angles, _ = compose(inverse(rotations[i]), rotations[k])
        if brute_force:
            x_t = wigner_D_matrix(j, t_angles).mat
            table = np.array(
                [[np.vdot(a.amps, x_t @ b.amps) for b in code.basis] for a in code.basis]
            )
        else:
            table = matrix_element_table(code, t_angles)
        yield rotations[i], rotations[k], t_angles, table


def kl_check(code: Codewords, errs: ErrorSet, seed: int, brute_force: bool = False) -> KLReport:
    """Evaluate the approximate Knill-Laflamme conditions over T = R^(-1) R'.

    Closed-form matrix elements by default; brute_force=True rebuilds
    each X_T densely and sandwiches codewords, as an independent check.
    """
    if len(code.basis) < 2:
        raise ValueError("need at least two codewords")
    delta_star = 0.0
    eps_star = 0.0
    worst = None
    worst_score = -1.0
    records = []
    size = len(code.basis)
    for r1, r2, t_angles, table in _scan_tables(code, errs, seed, brute_force):
        diag = np.diag(table)
        delta = max(
            abs(diag[a] - diag[b]) for a in range(size) for b in range(a + 1, size)
        )
        off = table - np.diag(diag)
        eps = float(np.max(np.abs(off)))
        records.append(PairRecord(r1, r2, t_angles, float(delta), eps))
        delta_star = max(delta_star, float(delta))
        eps_star = max(eps_star, eps)
        score = max(float(delta), eps)
        if score > worst_score:
            worst_score = score
            worst = (r1, r2)
    return KLReport(delta_star, eps_star, worst, records)


def diagonal_scan(code: Codewords, errs: ErrorSet, seed: int) -> list[tuple[EulerAngles, np.ndarray]]:
    """Diagonal codeword amplitudes <k|X_T|k> over the sampled pairs."""
    out = []
    for _, _, t_angles, table in _scan_tables(code, errs, seed, brute_force=False):
        out.append((t_angles, np.diag(table).copy()))
    return out


@dataclass(frozen=True)
class CorrectableAngle:
    """T-rotation budget for eps-approximate correction.

    t_budget bounds the relative rotation T = R^(-1) R'; a single
    correctable rotation gets half of it.  no_budget marks parameter
    choices whose bound is empty.
    """

    t_budget: float
    single_rotation_budget: float
    no_budget: bool


def correctable_angle(j, d: int, eps: float) -> CorrectableAngle:
    """|Theta| < 2pi/d - arccos(2 eps^(1/j) - 1), the qudit budget.

    At d = 2 this reproduces the antipodal bound arccos(1 - 2 eps^(1/j))
    exactly (arccos(-x) = pi - arccos(x)).
    """
    j = _spin(j)
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    if d < 2:
        raise ValueError("d must be at least 2")
    arg = 2.0 * eps ** (1.0 / j.value) - 1.0
    arg = max(-1.0, min(1.0, arg))
    budget = 2.0 * math.pi / d - math.acos(arg)
    if budget <= 0.0:
        return CorrectableAngle(0.0, 0.0, True)
    return CorrectableAngle(budget, budget / 2.0, False)


def equatorial_offdiag_bound(j, d: int, t_max: float) -> float:
    """((1 + cos(2pi/d - t_max))/2)^j: the nearest-neighbor overlap bound
    for relative rotations up to t_max."""
    j = _spin(j)
    base = (1.0 + math.cos(2.0 * math.pi / d - t_max)) / 2.0
    base = max(0.0, min(1.0, base))
    if base == 0.0:
        return 0.0
    return math.exp(j.value * math.log(base)) if base < 1.0 else 1.0
