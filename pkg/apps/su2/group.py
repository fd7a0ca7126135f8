"""
SU(2) group and su(2) algebra arithmetic.

An SU(2) element is stored as a real unit quaternion (a0, a1, a2, a3) with

    U = a0 * 1 + i (a1 s1 + a2 s2 + a3 s3)

which as an explicit 2x2 complex matrix reads

    [[ a0 + i a3,  a2 + i a1],
     [-a2 + i a1,  a0 - i a3]]

Two layers are provided:

* ``GroupElement`` / ``AlgebraElement``: immutable scalar values used by the
  public API and the tests.
* ``qmul``, ``qdag``, ``qnormalize``, ... : vectorised kernels acting on
  numpy arrays whose last axis has length 4. The lattice code works on whole
  link arrays through these.
"""

from dataclasses import dataclass

import numpy as np

IDENTITY_ARRAY = np.array([1.0, 0.0, 0.0, 0.0])
PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


# ---------------------------------------------------------------------------
# Vectorised kernels
# ---------------------------------------------------------------------------

def qnormalize(a):
    """Project quaternions back onto the unit sphere S^3."""
    a = np.asarray(a, dtype=float)
    return a / np.linalg.norm(a, axis=-1, keepdims=True)


def qmul(a, b, normalize=True):
    """
    Product of SU(2) elements in quaternion form, broadcasting over leading axes.

    c0 = a0 b0 - a.b
    c  = a0 b + b0 a - a x b
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a0, av = a[..., 0], a[..., 1:]
    b0, bv = b[..., 0], b[..., 1:]
    c0 = a0 * b0 - np.sum(av * bv, axis=-1)
    cv = a0[..., None] * bv + b0[..., None] * av - np.cross(av, bv)
    c = np.concatenate([c0[..., None], cv], axis=-1)
    return qnormalize(c) if normalize else c


def qdag(a):
    """Hermitian conjugate (quaternion conjugate)."""
    a = np.asarray(a, dtype=float)
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def qtrace(a):
    """Re Tr U = 2 a0."""
    return 2.0 * np.asarray(a, dtype=float)[..., 0]


def haar_array(rng, shape=()):
    """Haar-random SU(2) elements: 4-D Gaussian vectors projected onto S^3."""
    return qnormalize(rng.standard_normal(tuple(shape) + (4,)))


def exp_array(c):
    """exp(i c_a s_a / 2) for an array of algebra coefficients (..., 3)."""
    c = np.asarray(c, dtype=float)
    norm = np.linalg.norm(c, axis=-1)
    half = 0.5 * norm
    # sin(|c|/2)/|c| with its finite limit 1/2 at the origin
    ratio = np.where(norm > 0.0, np.sin(half) / np.where(norm > 0.0, norm, 1.0), 0.5)
    return np.concatenate([np.cos(half)[..., None], ratio[..., None] * c], axis=-1)


def to_matrix_array(a):
    """Expand quaternions (..., 4) into 2x2 complex matrices (..., 2, 2)."""
    a = np.asarray(a, dtype=float)
    m = np.empty(a.shape[:-1] + (2, 2), dtype=complex)
    m[..., 0, 0] = a[..., 0] + 1j * a[..., 3]
    m[..., 0, 1] = a[..., 2] + 1j * a[..., 1]
    m[..., 1, 0] = -a[..., 2] + 1j * a[..., 1]
    m[..., 1, 1] = a[..., 0] - 1j * a[..., 3]
    return m


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    """SU(2) element as a unit quaternion."""

    a0: float = 1.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def from_array(cls, a):
        a0, a1, a2, a3 = (float(x) for x in np.asarray(a, dtype=float).reshape(4))
        return cls(a0, a1, a2, a3)

    def as_array(self):
        return np.array([self.a0, self.a1, self.a2, self.a3])

    def norm2(self):
        return self.a0 ** 2 + self.a1 ** 2 + self.a2 ** 2 + self.a3 ** 2

    def normalize(self):
        return GroupElement.from_array(qnormalize(self.as_array()))

    def to_matrix(self):
        return to_matrix_array(self.as_array())

    def __mul__(self, other):
        return multiply(self, other)


@dataclass(frozen=True)
class AlgebraElement:
    """X = c_a T^a with T^a = s_a / 2."""

    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0

    def as_array(self):
        return np.array([self.c1, self.c2, self.c3])

    def __neg__(self):
        return AlgebraElement(-self.c1, -self.c2, -self.c3)

    def to_matrix(self):
        """Anti-hermitian traceless matrix i c_a s_a / 2."""
        return 0.5j * np.einsum("a,aij->ij", self.as_array(), PAULI)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def multiply(u, v):
    """Quaternion product u v, renormalised."""
    return GroupElement.from_array(qmul(u.as_array(), v.as_array()))


def dagger(u):
    return GroupElement(u.a0, -u.a1, -u.a2, -u.a3)


def re_trace(u):
    return 2.0 * u.a0


def haar_random(rng):
    """Uniform element of S^3; ``rng`` is a caller-owned numpy Generator."""
    return GroupElement.from_array(haar_array(rng))


def exp_algebra(x):
    return GroupElement.from_array(exp_array(x.as_array()))
