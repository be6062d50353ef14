"""Codeword spaces over the computational basis.

Two backends share one contract:

* ``exact``: codeword ``j`` is a sparse map ``basis -> (re, im)`` of Python
  integers carrying an implicit factor ``1/sqrt(scale[j])``.
* ``float``: codeword ``j`` is a sparse map ``basis -> complex`` already
  normalized (``scale[j] == 1``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .pauli import DimensionError, PauliString, apply_to_basis

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

FLOAT_TOL = 1e-9
REAL_TOL = 1e-12

# i**k as Gaussian integers
_I_POWERS = ((1, 0), (0, 1), (-1, 0), (0, -1))


class CodeSpaceError(ValueError):
    """Raised when codewords fail validation."""


class CodewordParseError(CodeSpaceError):
    """Raised for malformed codeword tables or files."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _gmul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class ExactAmplitude:
    """The value ``(re + i*im) / sqrt(scale)``."""

    re: int
    im: int
    scale: int = 1

    def conjugate(self) -> ExactAmplitude:
        return ExactAmplitude(self.re, -self.im, self.scale)

    def abs2(self) -> Fraction:
        return Fraction(self.re * self.re + self.im * self.im, self.scale)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def rational_parts(self) -> tuple[Fraction, Fraction]:
        """Real and imaginary parts, available when ``scale`` is a perfect square."""
        root = math.isqrt(self.scale)
        if root * root != self.scale:
            raise ArithmeticError(f"scale {self.scale} is not a perfect square")
        return Fraction(self.re, root), Fraction(self.im, root)

    def __complex__(self) -> complex:
        return complex(self.re, self.im) / math.sqrt(self.scale)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            other = ExactAmplitude(other.numerator, 0, other.denominator**2)
        if not isinstance(other, ExactAmplitude):
            return NotImplemented
        # a/sqrt(s) == b/sqrt(t)  <=>  same sign and a^2 t == b^2 s
        for a, b in ((self.re, other.re), (self.im, other.im)):
            if _sign(a) != _sign(b) or a * a * other.scale != b * b * self.scale:
                return False
        return True

    def __hash__(self) -> int:
        return hash(complex(self))


@dataclass(frozen=True)
class CodeSpace:
    n: int
    K: int
    backend: str
    codewords: tuple[Mapping[int, object], ...]
    scales: tuple[int, ...]

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def real(self) -> bool:
        return is_real(self)

    def support_size(self, j: int) -> int:
        return len(self.codewords[j])

    def dense(self) -> tuple[np.ndarray, np.ndarray] | np.ndarray:
        """Dense codeword arrays of shape ``(K, 2**n)``.

        Exact backend: ``(re, im)`` integer arrays (``object`` dtype when an
        amplitude does not fit in int64).  Float backend: one complex array.
        """
        if self.backend == FLOAT:
            out = np.zeros((self.K, self.dim), dtype=np.complex128)
            for j, word in enumerate(self.codewords):
                for basis, amp in word.items():
                    out[j, basis] = amp
            return out
        biggest = max(
            (max(abs(r), abs(i)) for word in self.codewords for r, i in word.values()),
            default=0,
        )
        dtype = np.int64 if biggest < 2**62 else object
        re = np.zeros((self.K, self.dim), dtype=dtype)
        im = np.zeros((self.K, self.dim), dtype=dtype)
        for j, word in enumerate(self.codewords):
            for basis, (r, i) in word.items():
                re[j, basis] = r
                im[j, basis] = i
        return re, im


def _coerce_exact(value: object) -> tuple[int, int]:
    if isinstance(value, tuple) and len(value) == 2:
        r, i = value
    elif isinstance(value, complex):
        r, i = value.real, value.imag
    else:
        r, i = value, 0
    if isinstance(r, float) and r.is_integer():
        r = int(r)
    if isinstance(i, float) and i.is_integer():
        i = int(i)
    if not (isinstance(r, int) and isinstance(i, int)):
        raise CodewordParseError(f"exact amplitudes must be integers, got {value!r}")
    return r, i


def _coerce_float(value: object) -> complex:
    if isinstance(value, tuple) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    return complex(value)  # type: ignore[arg-type]


def from_amplitude_table(
    n: int,
    K: int,
    entries: Sequence[Iterable[tuple[int, object]]],
    scales: Sequence[int] | None = None,
    backend: str = EXACT,
) -> CodeSpace:
    """Build and validate a code space.

    ``entries[j]`` lists ``(basis_index, amplitude)`` pairs for codeword ``j``;
    omitted basis states are zero.  Amplitudes are integers or ``(re, im)``
    pairs for the exact backend, numbers or pairs for the float backend.
    """
    if backend not in BACKENDS:
        raise CodewordParseError(f"unknown backend {backend!r}")
    if n < 1 or K < 1:
        raise CodewordParseError("n and K must be positive")
    if len(entries) != K:
        raise CodewordParseError(f"expected {K} codewords, got {len(entries)}")
    scales = tuple(scales) if scales is not None else (1,) * K
    if len(scales) != K or any(not isinstance(s, int) or s <= 0 for s in scales):
        raise CodewordParseError("scales must be K positive integers")
    dim = 1 << n
    words: list[dict[int, object]] = []
    for j, rows in enumerate(entries):
        word: dict[int, object] = {}
        seen: set[int] = set()
        for basis, amp in rows:
            if not 0 <= basis < dim:
                raise CodewordParseError(f"codeword {j}: basis index {basis} out of range")
            if basis in seen:
                raise CodewordParseError(f"codeword {j}: duplicate basis index {basis}")
            seen.add(basis)
            if backend == EXACT:
                value = _coerce_exact(amp)
                if value != (0, 0):
                    word[basis] = value
            else:
                c = _coerce_float(amp) / math.sqrt(scales[j])
                if c != 0:
                    word[basis] = c
        words.append(word)
    if backend == FLOAT:
        scales = (1,) * K
    space = CodeSpace(n, K, backend, tuple(words), tuple(scales))
    _check_orthonormal(space)
    return space


def _check_orthonormal(space: CodeSpace) -> None:
    for a in range(space.K):
        for b in range(a, space.K):
            wa, wb = space.codewords[a], space.codewords[b]
            if space.backend == EXACT:
                re = im = 0
                for basis, (rb, ib) in wb.items():
                    ra, ia = wa.get(basis, (0, 0))
                    re += ra * rb + ia * ib
                    im += ra * ib - ia * rb
                target = space.scales[a] if a == b else 0
                ok = im == 0 and re == target
                shown = (
                    f"({re}{im:+d}i)/{space.scales[a]}"
                    if a == b
                    else f"({re}{im:+d}i)/sqrt({space.scales[a] * space.scales[b]})"
                )
            else:
                s = sum(wa.get(basis, 0).conjugate() * amp for basis, amp in wb.items())
                ok = abs(s - (1 if a == b else 0)) <= FLOAT_TOL
                shown = f"{s:.12g}"
            if not ok:
                raise CodeSpaceError(f"codewords not orthonormal: Gram entry ({a},{b}) = {shown}")


def is_real(space: CodeSpace) -> bool:
    """True iff every amplitude of the given basis is real."""
    if space.backend == EXACT:
        return all(i == 0 for word in space.codewords for _, i in word.values())
    return all(abs(c.imag) <= REAL_TOL for word in space.codewords for c in word.values())


def matrix_element(space: CodeSpace, a: int, p: PauliString, b: int) -> ExactAmplitude | complex:
    """``<psi_a| p |psi_b>``, computed over the support of ``psi_b``."""
    if not (0 <= a < space.K and 0 <= b < space.K):
        raise IndexError(f"codeword index out of range for K={space.K}")
    if p.n != space.n:
        raise DimensionError(f"Pauli acts on {p.n} qubits, space has {space.n}")
    wa, wb = space.codewords[a], space.codewords[b]
    if space.backend == FLOAT:
        total = 0j
        for basis, amp in wb.items():
            target, k = apply_to_basis(p, basis)
            other = wa.get(target)
            if other is not None:
                total += other.conjugate() * (1j**k) * amp
        return total
    re = im = 0
    for basis, amp in wb.items():
        target, k = apply_to_basis(p, basis)
        other = wa.get(target)
        if other is None:
            continue
        r, i = _gmul(_gmul((other[0], -other[1]), _I_POWERS[k]), amp)
        re += r
        im += i
    return ExactAmplitude(re, im, space.scales[a] * space.scales[b])


def amplitude_is(value: ExactAmplitude | complex, target: int) -> bool:
    """Backend-aware equality against a small integer."""
    if isinstance(value, ExactAmplitude):
        return value == target
    return abs(value - target) <= FLOAT_TOL


def xz_exactly_transversal(space: CodeSpace) -> tuple[bool, bool]:
    """Whether ``X^n`` and ``Z^n`` act as logical X and Z on the given labeling.

    Logical X must swap codewords 0 and 1 with no phase; logical Z must be
    ``diag(+1, -1)``.  Only meaningful for ``K == 2``.
    """
    if space.K != 2:
        return False, False
    full = (1 << space.n) - 1
    xs = PauliString(space.n, full, 0, 0)
    zs = PauliString(space.n, 0, full, 0)
    x_ok = all(
        amplitude_is(matrix_element(space, a, xs, b), 1 if a != b else 0)
        for a in range(2)
        for b in range(2)
    )
    z_ok = all(
        amplitude_is(matrix_element(space, a, zs, b), (1 - 2 * a) if a == b else 0)
        for a in range(2)
        for b in range(2)
    )
    return x_ok, z_ok


# -- matrix-element identities -----------------------------------------------
# Each predicate returns True when the stated implication holds for ``e`` on
# ``space`` (vacuously when its premise is false).  K = 2 predicates read
# codeword 0 and 1 as the logical basis states.


def antisymmetric_vanishes(space: CodeSpace, e: PauliString) -> bool:
    """For real codewords and ``n_Y(e)`` odd, every expectation ``<v|e|v>`` is 0.

    Checked on the basis and on the sums ``v = psi_a + psi_b``.
    """
    if e.n_y % 2 == 0:
        return True
    for a in range(space.K):
        if not amplitude_is(matrix_element(space, a, e, a), 0):
            return False
        for b in range(a + 1, space.K):
            ab = complex(matrix_element(space, a, e, b))
            ba = complex(matrix_element(space, b, e, a))
            if abs(ab + ba) > FLOAT_TOL:
                return False
    return True


def xweight_parity(space: CodeSpace, e: PauliString) -> bool:
    """Z^n exactly transversal: odd ``wt_X`` kills the diagonal, even ``wt_X`` the off-diagonal."""
    if e.x.bit_count() % 2:
        pairs = ((0, 0), (1, 1))
    else:
        pairs = ((0, 1), (1, 0))
    return all(amplitude_is(matrix_element(space, a, e, b), 0) for a, b in pairs)


def zweight_diagonal(space: CodeSpace, e: PauliString) -> bool:
    """X^n exactly transversal and ``wt_Z(e)`` even imply ``<0|e|0> == <1|e|1>``."""
    if e.z.bit_count() % 2:
        return True
    d0, d1 = matrix_element(space, 0, e, 0), matrix_element(space, 1, e, 1)
    if isinstance(d0, ExactAmplitude):
        return d0 == d1
    return abs(d0 - d1) <= FLOAT_TOL


def zweight_offdiagonal(space: CodeSpace, e: PauliString) -> bool:
    """Real, X^n exactly transversal: ``n_Y + wt_Z`` odd implies ``<0|e|1> == 0``."""
    if (e.n_y + e.z.bit_count()) % 2 == 0:
        return True
    return amplitude_is(matrix_element(space, 0, e, 1), 0)


# -- file format -----------------------------------------------------------


def _parse_header(line: str, lineno: int) -> tuple[int, int, str]:
    fields: dict[str, str] = {}
    for token in line.split():
        key, sep, value = token.partition("=")
        if not sep:
            raise CodewordParseError(f"malformed header token {token!r}", lineno)
        fields[key] = value
    try:
        n = int(fields["n"])
        K = int(fields["K"])
    except (KeyError, ValueError):
        raise CodewordParseError("header must give integer n= and K=", lineno) from None
    backend = fields.get("backend", EXACT)
    if backend not in BACKENDS:
        raise CodewordParseError(f"unknown backend {backend!r}", lineno)
    return n, K, backend


def parse_codeword_text(text: str) -> CodeSpace:
    """Parse the line-oriented codeword format.

    ::

        n=<int> K=<int> backend=<exact|float>
        codeword <j> scale=<positive int>
        <n-char bitstring> <re>[,<im>]
    """
    header: tuple[int, int, str] | None = None
    rows: dict[int, list[tuple[int, object]]] = {}
    scales: dict[int, int] = {}
    seen: dict[int, set[int]] = {}
    current: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = _parse_header(line, lineno)
            continue
        n, K, backend = header
        parts = line.split()
        if parts[0] == "codeword":
            if len(parts) != 3 or not parts[2].startswith("scale="):
                raise CodewordParseError("expected 'codeword <j> scale=<int>'", lineno)
            try:
                j = int(parts[1])
                scale = int(parts[2][len("scale="):])
            except ValueError:
                raise CodewordParseError("codeword index and scale must be integers", lineno) from None
            if not 0 <= j < K:
                raise CodewordParseError(f"codeword index {j} out of range for K={K}", lineno)
            if j in rows:
                raise CodewordParseError(f"codeword {j} defined twice", lineno)
            if scale <= 0:
                raise CodewordParseError("scale must be positive", lineno)
            rows[j], scales[j], seen[j] = [], scale, set()
            current = j
            continue
        if current is None:
            raise CodewordParseError("amplitude line before any codeword header", lineno)
        if len(parts) != 2:
            raise CodewordParseError("expected '<bitstring> <re>[,<im>]'", lineno)
        bits, amp_text = parts
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise CodewordParseError(f"basis label {bits!r} is not an {n}-bit string", lineno)
        basis = int(bits, 2)
        if basis in seen[current]:
            raise CodewordParseError(f"duplicate basis state {bits} in codeword {current}", lineno)
        seen[current].add(basis)
        re_text, _, im_text = amp_text.partition(",")
        try:
            if backend == EXACT:
                amp: object = (int(re_text), int(im_text or 0))
            else:
                amp = (float(re_text), float(im_text or 0))
        except ValueError:
            raise CodewordParseError(f"bad amplitude {amp_text!r}", lineno) from None
        rows[current].append((basis, amp))
    if header is None:
        raise CodewordParseError("empty codeword file")
    n, K, backend = header
    missing = [j for j in range(K) if j not in rows]
    if missing:
        raise CodewordParseError(f"missing codewords {missing}")
    return from_amplitude_table(
        n, K, [rows[j] for j in range(K)], [scales[j] for j in range(K)], backend
    )


def format_codeword_text(space: CodeSpace) -> str:
    lines = [f"n={space.n} K={space.K} backend={space.backend}"]
    for j, word in enumerate(space.codewords):
        lines.append(f"codeword {j} scale={space.scales[j]}")
        for basis in sorted(word):
            amp = word[basis]
            if space.backend == EXACT:
                r, i = amp  # type: ignore[misc]
                text = f"{r}" if i == 0 else f"{r},{i}"
            else:
                text = f"{amp.real!r},{amp.imag!r}"  # type: ignore[union-attr]
            lines.append(f"{basis:0{space.n}b} {text}")
    return "\n".join(lines) + "\n"

