"""Closed-form four-level Hamiltonian with even PT symmetry.

The model is fixed by a real ``a0`` and two complex numbers ``A``, ``B``::

        [  a0     0     iB*   iA*  ]
    H = [  0      a0    iA    iB   ]
        [  iB    -iA*  -a0    0    ]
        [ -iA     iB*   0    -a0   ]

It is pseudo-Hermitian with respect to the indefinite metric
``diag(1, -1, -1, 1)``, commutes with ``PT = (S Z) K``, and has the doubly
degenerate spectrum ``+-sqrt(D)`` with ``D = a0^2 + |A|^2 - |B|^2``. Real
spectrum for ``D > 0``, complex pairs ``+-i sqrt(-D)`` for ``D < 0`` and an
exceptional point (``H^2 = 0``) at ``D = 0``.
"""
import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import antilinear, splitq
from .errors import BrokenPhase, KreinSpecError, SingularNormalization
from .kreindeg import PtPhase
from .numkernel import frob

ETA = np.diag([1.0, -1.0, -1.0, 1.0]).astype(np.complex128)
PHASE_EPS = 1e-12
BISECT_TOL = 1e-8
AXES = ("a0", "absA", "absB", "argA", "argB")


def indefinite_metric():
    return ETA.copy()


def pt_operator():
    return antilinear.build_pt(4)


@dataclass(frozen=True)
class FourLevelParams:
    a0: float
    A: complex
    B: complex

    def __post_init__(self):
        a0, A, B = float(self.a0), complex(self.A), complex(self.B)
        if not all(math.isfinite(x) for x in (a0, A.real, A.imag, B.real, B.imag)):
            raise ValueError("four-level parameters must be finite")
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def discriminant(self):
        return self.a0 ** 2 + abs(self.A) ** 2 - abs(self.B) ** 2

    @property
    def eps(self):
        return PHASE_EPS * (self.a0 ** 2 + abs(self.A) ** 2 + abs(self.B) ** 2)

    def split_quaternions(self):
        """``(b, c)`` with ``b = (b0, b1, b2, b3)`` from ``A = b1 + i b2``, ``B = b0 + i b3``."""
        b = splitq.SplitQuaternion(self.B.real, self.A.real, self.A.imag, self.B.imag)
        return b, splitq.sq_conj(b)


class OmegaKind(enum.Enum):
    REAL = "Real"
    BROKEN_PAIR = "BrokenPair"
    ZERO = "Zero"


@dataclass(frozen=True)
class Omega:
    kind: OmegaKind
    value: float = 0.0

    def eigenvalues(self):
        """The two distinct eigenvalues, each doubly degenerate."""
        if self.kind is OmegaKind.REAL:
            return (self.value, -self.value)
        if self.kind is OmegaKind.BROKEN_PAIR:
            return (1j * self.value, -1j * self.value)
        return (0.0, 0.0)


def omega(p):
    d = p.discriminant
    if d > p.eps:
        return Omega(OmegaKind.REAL, math.sqrt(d))
    if d < -p.eps:
        return Omega(OmegaKind.BROKEN_PAIR, math.sqrt(-d))
    return Omega(OmegaKind.ZERO, 0.0)


def phase_of(p):
    kind = omega(p).kind
    if kind is OmegaKind.REAL:
        return PtPhase.UNBROKEN
    if kind is OmegaKind.BROKEN_PAIR:
        return PtPhase.BROKEN
    return PtPhase.EXCEPTIONAL_POINT


def build_hamiltonian(p):
    a0, A, B = p.a0, p.A, p.B
    Ac, Bc = A.conjugate(), B.conjugate()
    return np.array(
        [
            [a0, 0, 1j * Bc, 1j * Ac],
            [0, a0, 1j * A, 1j * B],
            [1j * B, -1j * Ac, -a0, 0],
            [-1j * A, 1j * Bc, 0, -a0],
        ],
        dtype=np.complex128,
    )


def build_hamiltonian_blocks(p):
    """Same matrix assembled from split-quaternion embeddings.

    With ``b`` the split-quaternion of ``(B, A)`` and ``c`` its conjugate,
    the explicit matrix equals ``[[a, i c], [i b, -a]]`` with ``a = a0 s0``.
    """
    b, c = p.split_quaternions()
    a = splitq.sq_embed(splitq.SplitQuaternion(p.a0, 0.0, 0.0, 0.0))
    return np.block([[a, 1j * splitq.sq_embed(c)], [1j * splitq.sq_embed(b), -a]])


LABELS = ("++", "+-", "-+", "--")
# expected <psi_l|phi_l> per label
DIAGONAL_SIGNS = {"++": 1.0, "+-": -1.0, "-+": 1.0, "--": -1.0}


@dataclass(frozen=True)
class AnalyticEigensystem:
    params: FourLevelParams
    omega: float
    k: float
    psi: dict
    phi: dict

    def energy(self, label):
        return self.omega if label[0] == "+" else -self.omega

    @property
    def psi_pp(self):
        return self.psi["++"]

    @property
    def psi_pm(self):
        return self.psi["+-"]

    @property
    def psi_mp(self):
        return self.psi["-+"]

    @property
    def psi_mm(self):
        return self.psi["--"]


def analytic_eigensystem(p, verify_tol=1e-12):
    """Closed-form eigenvectors ``psi_{m alpha}`` and ``phi = eta psi``.

    ``m`` is the sign of the eigenvalue and ``alpha`` the PT partner index;
    ``psi_{m-} = PT psi_{m+}``. The normalization ``k`` is real positive with
    ``2 Omega (Omega + a0) k^2 = 1``.
    """
    om = omega(p)
    if om.kind is not OmegaKind.REAL:
        raise BrokenPhase(f"discriminant {p.discriminant:.6g} is not positive")
    w = om.value
    wa = w + p.a0
    if wa <= p.eps:
        raise SingularNormalization(f"Omega + a0 = {wa:.3e}")
    k = 1.0 / math.sqrt(2.0 * w * wa)
    A, B = p.A, p.B
    Ac, Bc = A.conjugate(), B.conjugate()
    psi = {
        "-+": k * np.array([1j * Ac, 1j * B, 0, -wa], dtype=np.complex128),
        "--": k * np.array([-1j * Bc, -1j * A, wa, 0], dtype=np.complex128),
        "++": k * np.array([wa, 0, 1j * B, -1j * A], dtype=np.complex128),
        "+-": k * np.array([0, wa, -1j * Ac, 1j * Bc], dtype=np.complex128),
    }
    phi = {label: ETA @ v for label, v in psi.items()}
    system = AnalyticEigensystem(p, w, k, psi, phi)
    H = build_hamiltonian(p)
    scale = max(1.0, frob(H))
    for label, v in psi.items():
        res = np.linalg.norm(H @ v - system.energy(label) * v)
        if res > verify_tol * scale * np.linalg.norm(v):
            raise KreinSpecError(f"analytic psi_{label} residual {res:.3e}")
    return system


@dataclass(frozen=True)
class AbnormalReport:
    pairings: dict
    completeness: float
    violations: tuple
    sign_deviations: tuple

    @property
    def ok(self):
        return not self.violations


def abnormal_relations_check(system, tol=1e-10):
    """Check all 16 pairings ``<psi_l|phi_l'>`` and the signed completeness sum.

    Diagonal pairings must equal ``+1, -1, +1, -1`` for ``++, +-, -+, --``;
    off-diagonal ones must vanish. ``sign_deviations`` lists diagonal
    pairings whose sign disagrees with that pattern.
    """
    pairings = {}
    violations = []
    signs = []
    for lp in LABELS:
        for lf in LABELS:
            val = complex(np.vdot(system.psi[lp], system.phi[lf]))
            pairings[(lp, lf)] = val
            expected = DIAGONAL_SIGNS[lp] if lp == lf else 0.0
            if abs(val - expected) > tol:
                violations.append((lp, lf, val, expected))
            if lp == lf and np.sign(val.real) != np.sign(expected):
                signs.append((lp, val))
    total = sum(
        DIAGONAL_SIGNS[lab] * np.outer(system.psi[lab], system.phi[lab].conj()) for lab in LABELS
    )
    completeness = frob(total - np.eye(4))
    if completeness > tol:
        violations.append(("completeness", "", completeness, 0.0))
    return AbnormalReport(pairings, completeness, tuple(violations), tuple(signs))


def with_axis(p, axis, t):
    """Copy of ``p`` with one coordinate replaced by ``t``."""
    if axis == "a0":
        return FourLevelParams(t, p.A, p.B)
    if axis == "absA":
        return FourLevelParams(p.a0, cmath.rect(t, cmath.phase(p.A)), p.B)
    if axis == "absB":
        return FourLevelParams(p.a0, p.A, cmath.rect(t, cmath.phase(p.B)))
    if axis == "argA":
        return FourLevelParams(p.a0, cmath.rect(abs(p.A), t), p.B)
    if axis == "argB":
        return FourLevelParams(p.a0, p.A, cmath.rect(abs(p.B), t))
    raise ValueError(f"unknown axis {axis!r}; expected one of {', '.join(AXES)}")


@dataclass(frozen=True)
class SweepPoint:
    t: float
    D: float
    phase: PtPhase


@dataclass(frozen=True)
class ExceptionalPointHit:
    t: float
    lo: float
    hi: float


@dataclass(frozen=True)
class SweepResult:
    axis: str
    points: tuple
    exceptional_points: tuple


def _bisect(f, lo, hi, tol):
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


def sweep_exceptional_point(p0, axis, lo, hi, steps, tol=BISECT_TOL):
    """Phase along one parameter axis, with EPs located by bisection on ``D``."""
    if axis not in AXES:
        raise ValueError(f"unknown axis {axis!r}; expected one of {', '.join(AXES)}")
    if not lo < hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if steps < 2:
        raise ValueError("need at least two grid points")
    if axis in ("absA", "absB") and lo < 0:
        raise ValueError(f"{axis} is a modulus; range must start at 0 or above")
    grid = np.linspace(lo, hi, steps)

    def disc(t):
        return with_axis(p0, axis, float(t)).discriminant

    points = []
    for t in grid:
        q = with_axis(p0, axis, float(t))
        points.append(SweepPoint(float(t), q.discriminant, phase_of(q)))
    hits = [ExceptionalPointHit(pt.t, pt.t, pt.t) for pt in points if pt.phase is PtPhase.EXCEPTIONAL_POINT]
    for a, b in zip(points, points[1:]):
        if PtPhase.EXCEPTIONAL_POINT in (a.phase, b.phase):
            continue
        if (a.D > 0) != (b.D > 0):
            blo, bhi = _bisect(disc, a.t, b.t, tol)
            hits.append(ExceptionalPointHit(0.5 * (blo + bhi), blo, bhi))
    hits.sort(key=lambda h: h.t)
    return SweepResult(axis, tuple(points), tuple(hits))
