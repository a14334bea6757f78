"""Construction of SIC-POVM candidates from Hadamard rows and their verification.

The construction takes a d x d complex Hadamard matrix H and a complex scalar v
and forms the d^2 vectors obtained from each row of H by multiplying one chosen
coordinate by v.  For specific (d, v) listed in ``ADMISSIBLE_V`` (d = 2, 3, 8)
the resulting lines are equiangular and the normalized rank-one effects form a
SIC-POVM; for d = 8 over the real Sylvester matrix with v = -1 +- 2i they are
the Hoggar lines.

Inner products follow the convention ``inner(x, y) = sum_l x_l * conj(y_l)``.
All projective comparisons use the phase-free entrywise-max distance between
rank-one projectors.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import DEFAULT_TOL, HadamardMatrix, bits_to_int, int_to_bits, sylvester_hadamard
from .errors import InvalidArgumentError, UnsupportedError

_SQRT3 = math.sqrt(3.0)

# Parameters for which the construction is known to yield equiangular lines.
ADMISSIBLE_V = {
    2: tuple(
        s1 * (1 + s2 * _SQRT3) * (1 + s3 * 1j) / 2
        for s1 in (1, -1)
        for s2 in (1, -1)
        for s3 in (1, -1)
    ),
    3: (0j, -2 + 0j, 1 + _SQRT3 * 1j, 1 - _SQRT3 * 1j),
    8: (-1 + 2j, -1 - 2j),
}

ADMISSIBLE_TOL = 1e-9


def admissible_parameter(d, v, real_hadamard):
    """Whether (d, v) is on the known admissible list (d=8 needs a real Hadamard)."""
    if d not in ADMISSIBLE_V:
        return False
    if d == 8 and not real_hadamard:
        return False
    return any(abs(v - a) <= ADMISSIBLE_TOL for a in ADMISSIBLE_V[d])


@dataclass(frozen=True)
class ConstructionVector:
    """Row j of the source Hadamard with coordinate k multiplied by v."""

    j: int
    k: int
    coords: np.ndarray
    squared_norm: float

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=np.complex128).copy()
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)


@dataclass(frozen=True)
class SicFamily:
    """The d^2 construction vectors of a (H, v) family plus derived effects.

    ``raw`` stacks the unnormalized vectors (row j*d+k for label (j,k)),
    ``states`` the unit-normalized ones, and ``effects`` the d x d matrices
    |phi><phi| / d.  Effects are materialized so identity-resolution checks are
    direct sums; memory is negligible at d <= 8.
    """

    d: int
    v: complex
    hadamard: HadamardMatrix
    vectors: tuple[ConstructionVector, ...]
    raw: np.ndarray = field(repr=False)
    states: np.ndarray = field(repr=False)
    effects: np.ndarray = field(repr=False)
    admissible: bool = False

    def __post_init__(self):
        for name in ("raw", "states", "effects"):
            a = np.asarray(getattr(self, name), dtype=np.complex128).copy()
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @property
    def k(self):
        return self.d * self.d

    def flat_index(self, j, k):
        if not (0 <= j < self.d and 0 <= k < self.d):
            raise InvalidArgumentError(f"label ({j},{k}) out of range for d={self.d}")
        return j * self.d + k

    def vector(self, j, k):
        return self.vectors[self.flat_index(j, k)]

    def state(self, j, k):
        return self.states[self.flat_index(j, k)]

    def effect(self, j, k):
        return self.effects[self.flat_index(j, k)]


def hadamard_sic_family(hadamard, v):
    """Build the d^2-vector family for (hadamard, v); admissibility is advisory.

    Any d >= 2 is accepted so that degenerate and inadmissible parameters stay
    constructible for negative tests; ``admissible`` records whether (d, v)
    is on the known list.
    """
    if not isinstance(hadamard, HadamardMatrix):
        hadamard = HadamardMatrix.from_array(hadamard)
    d = hadamard.d
    if d < 2:
        raise InvalidArgumentError("construction requires d >= 2")
    v = complex(v)
    raw = np.repeat(hadamard.matrix[:, None, :], d, axis=1).reshape(d * d, d).copy()
    cols = np.tile(np.arange(d), d)
    raw[np.arange(d * d), cols] *= v
    norms_sq = np.einsum("ni,ni->n", raw, raw.conj()).real
    if hadamard.is_real and np.abs(norms_sq - (d - 1 + abs(v) ** 2)).max() > 1e-10:
        raise InvalidArgumentError("construction vectors violate the (d-1)+|v|^2 norm identity")
    states = raw / np.sqrt(norms_sq)[:, None]
    effects = np.einsum("ni,nj->nij", states, states.conj()) / d
    vectors = tuple(
        ConstructionVector(j=idx // d, k=idx % d, coords=raw[idx], squared_norm=float(norms_sq[idx]))
        for idx in range(d * d)
    )
    return SicFamily(
        d=d,
        v=v,
        hadamard=hadamard,
        vectors=vectors,
        raw=raw,
        states=states,
        effects=effects,
        admissible=admissible_parameter(d, v, hadamard.is_real),
    )


def hoggar_family(conjugate=False):
    """The d=8 family over the Sylvester matrix with v = -1+2i (or its twin)."""
    v = -1 - 2j if conjugate else -1 + 2j
    return hadamard_sic_family(sylvester_hadamard(3), v)


def tetrahedral_family(conjugate=False):
    """The d=2 family with v = (1+sqrt3)(1+i)/2 (or its twin)."""
    v = (1 + _SQRT3) * (1 + 1j) / 2
    if conjugate:
        v = v.conjugate()
    return hadamard_sic_family(sylvester_hadamard(1), v)


def conjugate_set(fam):
    """The twin family (same Hadamard, conjugated parameter).

    For a real source this equals conjugating every coordinate in the
    canonical basis (the distinguished conjugation basis), entrywise; for a
    diagonally-rescaled real source the two agree projectively, the
    conjugation basis being the rescaled one.
    """
    return hadamard_sic_family(fam.hadamard, complex(fam.v).conjugate())


@dataclass(frozen=True)
class SicReport:
    is_sic: bool
    overlap_value: float
    expected_overlap: float
    max_deviation: float
    identity_deviation: float
    tolerance: float

    def to_dict(self):
        return {
            "check": "sic",
            "pass": self.is_sic,
            "overlap_value": self.overlap_value,
            "expected_overlap": self.expected_overlap,
            "deviation": self.max_deviation,
            "identity_deviation": self.identity_deviation,
            "tolerance": self.tolerance,
        }


def verify_sic(fam, tol=DEFAULT_TOL):
    """Check identity resolution and constant pairwise Hilbert-Schmidt products.

    ``is_sic`` holds iff the effects sum to the identity within ``tol`` and all
    distinct-pair products tr(Pi_i Pi_j) equal 1/(d^2 (d+1)) within ``tol``.
    """
    if fam.k == 0:
        raise InvalidArgumentError("empty family")
    d, k = fam.d, fam.k
    identity_dev = float(np.abs(fam.effects.sum(axis=0) - np.eye(d)).max())
    gram = fam.states.conj() @ fam.states.T
    hs = np.abs(gram) ** 2 / (d * d)
    expected = 1.0 / (d * d * (d + 1))
    off = ~np.eye(k, dtype=bool)
    overlap_dev = float(np.abs(hs[off] - expected).max())
    worst = max(overlap_dev, identity_dev)
    return SicReport(
        is_sic=worst <= tol,
        overlap_value=float(hs[off].mean()),
        expected_overlap=expected,
        max_deviation=overlap_dev,
        identity_deviation=identity_dev,
        tolerance=float(tol),
    )


@dataclass(frozen=True)
class OverlapTable:
    """Squared magnitudes |inner(H_jk(v), H_mn(vbar))|^2 for one target (m, n)."""

    m: int
    n: int
    values: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.values, dtype=np.float64).copy()
        a.setflags(write=False)
        object.__setattr__(self, "values", a)

    def zero_count(self, threshold=1e-10):
        return int((self.values < threshold).sum())

    def distinct_values(self, rtol=1e-9):
        """Sorted representatives of the value multiset, merged within rtol."""
        vals = np.sort(self.values.ravel())
        scale = max(vals[-1], 1.0)
        reps = [float(vals[0])]
        for x in vals[1:]:
            if x - reps[-1] > rtol * scale:
                reps.append(float(x))
        return reps


def _check_twin_pair(fam_v, fam_vbar):
    if fam_v.d != fam_vbar.d:
        raise InvalidArgumentError("families differ in dimension")
    if abs(complex(fam_v.v).conjugate() - complex(fam_vbar.v)) > 1e-12:
        raise InvalidArgumentError("family parameters are not complex conjugates")
    if not np.allclose(fam_v.hadamard.matrix, fam_vbar.hadamard.matrix, atol=1e-12):
        raise InvalidArgumentError("families are not built over the same Hadamard matrix")


def overlap_table(fam_v, fam_vbar, m, n):
    """Raw inner-product table of the (v, vbar) pair against target vector (m, n)."""
    _check_twin_pair(fam_v, fam_vbar)
    d = fam_v.d
    target = fam_vbar.raw[fam_vbar.flat_index(m, n)]
    inner = fam_v.raw @ target.conj()
    return OverlapTable(m=m, n=n, values=(np.abs(inner) ** 2).reshape(d, d))


def all_overlap_tables(fam_v, fam_vbar):
    """All d^2 overlap tables as one (d^2, d^2) array, row = target flat index."""
    _check_twin_pair(fam_v, fam_vbar)
    return np.abs(fam_vbar.raw.conj() @ fam_v.raw.T) ** 2


@dataclass(frozen=True)
class PauliLabel:
    """A pair of binary triples (alpha, beta) indexing the three-qubit Pauli group."""

    alpha: tuple[int, int, int]
    beta: tuple[int, int, int]

    @classmethod
    def from_ints(cls, a, b):
        return cls(alpha=int_to_bits(a, 3), beta=int_to_bits(b, 3))

    @property
    def alpha_int(self):
        return bits_to_int(self.alpha)

    @property
    def beta_int(self):
        return bits_to_int(self.beta)

    def __add__(self, other):
        return PauliLabel(
            alpha=tuple(a ^ b for a, b in zip(self.alpha, other.alpha)),
            beta=tuple(a ^ b for a, b in zip(self.beta, other.beta)),
        )


_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def pauli_operator(label, d=8):
    """The 8x8 unitary Z^a1 X^b1 (x) Z^a2 X^b2 (x) Z^a3 X^b3, MSB-first qubit order."""
    if d != 8:
        raise UnsupportedError("Pauli operators are implemented for d=8 (three qubits) only")
    if not isinstance(label, PauliLabel):
        alpha, beta = label
        if isinstance(alpha, (int, np.integer)):
            label = PauliLabel.from_ints(alpha, beta)
        else:
            label = PauliLabel(alpha=tuple(alpha), beta=tuple(beta))
    op = np.eye(1, dtype=np.complex128)
    for a, b in zip(label.alpha, label.beta):
        factor = np.linalg.matrix_power(_SIGMA_Z, a) @ np.linalg.matrix_power(_SIGMA_X, b)
        op = np.kron(op, factor)
    return op


def projector_distance(x, y):
    """Entrywise-max distance between the rank-one projectors of unit vectors."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    x = x / np.linalg.norm(x)
    y = y / np.linalg.norm(y)
    return float(np.abs(np.outer(x, x.conj()) - np.outer(y, y.conj())).max())


@dataclass(frozen=True)
class CovarianceReport:
    covariant: bool
    worst_deviation: float
    tolerance: float

    def to_dict(self):
        return {
            "check": "pauli_covariance",
            "pass": self.covariant,
            "deviation": self.worst_deviation,
            "tolerance": self.tolerance,
        }


def _is_sylvester_source(fam):
    if fam.d != 8 or not fam.hadamard.is_real:
        return False
    return np.array_equal(fam.hadamard.signs, sylvester_hadamard(3).signs)


def _covariance_deviation_for_label(fam, a, b):
    op = pauli_operator(PauliLabel.from_ints(a, b))
    moved = fam.states @ op.T
    perm = (np.arange(64) // 8 ^ a) * 8 + (np.arange(64) % 8 ^ b)
    target = fam.states[perm]
    p_moved = np.einsum("ni,nj->nij", moved, moved.conj())
    p_target = np.einsum("ni,nj->nij", target, target.conj())
    return float(np.abs(p_moved - p_target).max())


def verify_covariance(fam, tol=DEFAULT_TOL, jobs=1):
    """Check that every Pauli label permutes the 64 projectors by label addition.

    Requires the Sylvester source (the action formula is convention dependent).
    Comparisons are projective, so phases never enter.
    """
    if not _is_sylvester_source(fam):
        raise UnsupportedError("covariance check requires a d=8 family over the Sylvester matrix")
    labels = [(a, b) for a in range(8) for b in range(8)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            devs = list(pool.map(lambda ab: _covariance_deviation_for_label(fam, *ab), labels))
    else:
        devs = [_covariance_deviation_for_label(fam, a, b) for a, b in labels]
    worst = max(devs)
    return CovarianceReport(covariant=worst <= tol, worst_deviation=worst, tolerance=float(tol))
