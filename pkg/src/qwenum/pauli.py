"""Bit-packed n-qubit Pauli strings with exact phase tracking.

A Pauli string is stored as two n-bit masks ``x`` and ``z`` plus a phase
exponent ``phase`` so that the operator equals

    i**phase * X**x[0] Z**z[0] (x) ... (x) X**x[n-1] Z**z[n-1]

Qubit 0 is the leftmost letter of a label and the most significant bit of
each mask and of every computational basis index.  With this ordering
``Y = i X Z``, so the unsigned label ``"Y"`` has ``phase == 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator

MAX_QUBITS = 63

_SIGN_PREFIXES = {"": 0, "+": 0, "i": 1, "-": 2, "-i": 3}
_SIGN_LABELS = {0: "", 1: "i", 2: "-", 3: "-i"}
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}


class PauliError(ValueError):
    """Base class for Pauli string errors."""


class LabelError(PauliError):
    """Raised for malformed Pauli labels."""


class DimensionError(PauliError):
    """Raised when operands act on different numbers of qubits."""


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True, slots=True)
class WeightProfile:
    wt: int
    wt_X: int
    wt_Z: int
    n_X: int
    n_Y: int
    n_Z: int


@dataclass(frozen=True, slots=True)
class PauliString:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_QUBITS:
            raise DimensionError(f"qubit count must be in 1..{MAX_QUBITS}, got {self.n}")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise DimensionError(f"masks do not fit in {self.n} bits")
        if not 0 <= self.phase < 4:
            object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n, 0, 0, 0)

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        return from_label(label)

    @property
    def n_y(self) -> int:
        return _popcount(self.x & self.z)

    @property
    def sign_exp(self) -> int:
        """Exponent of the prefix ``i**sign_exp`` in front of the letter form."""
        return (self.phase - self.n_y) % 4

    @property
    def is_hermitian(self) -> bool:
        return self.sign_exp % 2 == 0

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def packed(self) -> int:
        """Symplectic vector ``(x | z)`` packed into one integer, x in the high bits."""
        return (self.x << self.n) | self.z

    def letters(self) -> str:
        out = []
        for j in range(self.n):
            b = self.n - 1 - j
            out.append(_BITS_LETTER[((self.x >> b) & 1, (self.z >> b) & 1)])
        return "".join(out)

    def to_label(self) -> str:
        return _SIGN_LABELS[self.sign_exp] + self.letters()

    def unsigned(self) -> PauliString:
        """The same letters with no sign prefix."""
        return PauliString(self.n, self.x, self.z, self.n_y % 4)

    def with_sign(self, sign_exp: int) -> PauliString:
        return PauliString(self.n, self.x, self.z, (self.n_y + sign_exp) % 4)

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __neg__(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, (self.phase + 2) % 4)

    def __str__(self) -> str:
        return self.to_label()


def from_label(label: str) -> PauliString:
    """Parse ``sign? letter{n}`` with sign in ``+ - i -i``."""
    if not label:
        raise LabelError("empty Pauli label")
    if label.startswith("-i"):
        prefix = "-i"
    elif label[0] in "+-i":
        prefix = label[0]
    else:
        prefix = ""
    body = label[len(prefix):]
    if not body:
        raise LabelError(f"Pauli label {label!r} has no letters")
    n = len(body)
    if n > MAX_QUBITS:
        raise LabelError(f"Pauli label longer than {MAX_QUBITS} qubits")
    x = z = 0
    for pos, ch in enumerate(body):
        try:
            xb, zb = _LETTER_BITS[ch]
        except KeyError:
            raise LabelError(
                f"invalid character {ch!r} at position {pos + len(prefix)} in {label!r}"
            ) from None
        x = (x << 1) | xb
        z = (z << 1) | zb
    n_y = _popcount(x & z)
    return PauliString(n, x, z, (n_y + _SIGN_PREFIXES[prefix]) % 4)


def weight_profile(p: PauliString) -> WeightProfile:
    wt_x = _popcount(p.x)
    wt_z = _popcount(p.z)
    n_y = _popcount(p.x & p.z)
    return WeightProfile(
        wt=_popcount(p.x | p.z),
        wt_X=wt_x,
        wt_Z=wt_z,
        n_X=wt_x - n_y,
        n_Y=n_y,
        n_Z=wt_z - n_y,
    )


def is_symmetric(p: PauliString) -> bool:
    """True iff the matrix of ``p`` equals its transpose (an even number of Y's)."""
    return p.n_y % 2 == 0


def _check_dims(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise DimensionError(f"qubit counts differ: {p.n} vs {q.n}")


def multiply(p: PauliString, q: PauliString) -> PauliString:
    # X^a Z^b X^c Z^d = (-1)^(b.c) X^(a^c) Z^(b^d)
    _check_dims(p, q)
    phase = p.phase + q.phase + 2 * _popcount(p.z & q.x)
    return PauliString(p.n, p.x ^ q.x, p.z ^ q.z, phase % 4)


def symplectic_product(p: PauliString, q: PauliString) -> int:
    _check_dims(p, q)
    return (_popcount(p.x & q.z) + _popcount(p.z & q.x)) & 1


def commutes(p: PauliString, q: PauliString) -> bool:
    return symplectic_product(p, q) == 0


def apply_to_basis(p: PauliString, basis: int) -> tuple[int, int]:
    """Act on ``|basis>``; returns ``(new_basis, k)`` meaning ``i**k |new_basis>``."""
    if not 0 <= basis < (1 << p.n):
        raise DimensionError(f"basis index {basis} out of range for n={p.n}")
    return basis ^ p.x, (p.phase + 2 * (_popcount(p.z & basis) & 1)) % 4


def weight_class_size(n: int, weight: int) -> int:
    return comb(n, weight) * 3**weight


def enumerate_weight_class(n: int, weight: int) -> Iterator[PauliString]:
    """Yield every unsigned Pauli string of the given weight.

    Supports come in lexicographic order and, within a support, letters vary
    in X < Y < Z order with the last qubit fastest.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise DimensionError(f"qubit count must be in 1..{MAX_QUBITS}, got {n}")
    if not 0 <= weight <= n:
        raise ValueError(f"weight {weight} out of range 0..{n}")
    for support in itertools.combinations(range(n), weight):
        bits = [1 << (n - 1 - j) for j in support]
        for letters in itertools.product((1, 3, 2), repeat=weight):
            # 1 = X, 3 = Y, 2 = Z as (x | z << 1)
            x = z = 0
            for bit, code in zip(bits, letters):
                if code & 1:
                    x |= bit
                if code & 2:
                    z |= bit
            yield PauliString(n, x, z, _popcount(x & z) % 4)
