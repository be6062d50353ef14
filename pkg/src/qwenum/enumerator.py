"""Shor-Laflamme weight enumerators and the identities they satisfy for real
codes with X and Z exactly transversal.

``A_i = K**-2 * sum_{wt(E)=i} Tr(E P)**2`` and
``B_i = K**-1 * sum_{wt(E)=i} Tr(E P E P)`` where ``P`` is the code
projector and ``E`` runs over unsigned Pauli strings.  For Hermitian ``E``,
``Tr(E P E P) = sum_{a,b} |<a|E|b>|**2`` and ``Tr(E P)**2 = |sum_a <a|E|a>|**2``,
which is what every path below evaluates.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .codespace import EXACT, FLOAT, FLOAT_TOL, CodeSpace, matrix_element, xz_exactly_transversal
from .pauli import enumerate_weight_class
from .stabilizer import (
    StabilizerGroup,
    centralizer_weight_histogram,
    group_weight_histogram,
)

BRUTE_FORCE_MAX_N = 11
_BLOCK_ELEMENTS = 1 << 17
_INT64_SAFE = 1 << 62

Number = Fraction | float


class PreconditionError(ValueError):
    """Raised when an operation's hypotheses do not hold for its input."""


@dataclass(frozen=True)
class EnumeratorPair:
    n: int
    A: tuple[Number, ...]
    B: tuple[Number, ...]
    backend: str = EXACT

    def __post_init__(self) -> None:
        if len(self.A) != self.n + 1 or len(self.B) != self.n + 1:
            raise ValueError("enumerator vectors must have length n + 1")


# -- dense sweep kernel ----------------------------------------------------------


def _wht(arr: np.ndarray) -> np.ndarray:
    """Walsh-Hadamard transform along the last axis: out[z] = sum_x (-1)**(z.x) arr[x]."""
    rows, size = arr.shape
    h = 1
    while h < size:
        a = arr.reshape(rows, size // (2 * h), 2, h)
        arr = np.stack((a[:, :, 0] + a[:, :, 1], a[:, :, 0] - a[:, :, 1]), axis=2)
        h *= 2
    return arr.reshape(rows, size)


class _Sweep:
    """Evaluates ``S_ab(x, z) = sum_v conj(u_a(v ^ x)) u_b(v) (-1)**(z.v)`` for
    blocks of X-masks ``x`` and all Z-masks ``z`` at once.

    Exact backend: ``u`` are the unscaled Gaussian-integer codewords, so
    ``<a|E|b> = i**n_Y(E) * S_ab / sqrt(N_a N_b)``.  Float backend: ``u`` are
    the normalized complex codewords.
    """

    def __init__(self, space: CodeSpace):
        self.space = space
        self.n = space.n
        self.dim = 1 << space.n
        self.exact = space.backend == EXACT
        self.lcm = math.lcm(*space.scales)
        self.basis = np.arange(self.dim, dtype=np.int64)
        self.block = max(1, _BLOCK_ELEMENTS // self.dim)
        if self.exact:
            re, im = space.dense()
            # |S_ab|^2 (L^2 / N_a N_b) <= L^2 by Cauchy-Schwarz; totals add K^2 4^n of those
            bound = 4 * space.K**2 * self.lcm**2 * self.dim * self.dim
            if bound >= _INT64_SAFE or re.dtype == object:
                re, im = re.astype(object), im.astype(object)
            self.re, self.im = re, im
            self.has_imag = bool(np.any(im != 0))
        else:
            self.amps = space.dense()

    def blocks(self, x_masks: np.ndarray | None = None) -> list[np.ndarray]:
        if x_masks is None:
            x_masks = self.basis
        return [x_masks[i : i + self.block] for i in range(0, len(x_masks), self.block)]

    def weights(self, xm: np.ndarray) -> np.ndarray:
        return np.bitwise_count(xm[:, None] | self.basis[None, :]).astype(np.int64)

    def transform(self, xm: np.ndarray, combo: Sequence[tuple[int, int, int]]) -> np.ndarray:
        """``|sum_(a, b, c) c * S_ab|^2`` over the block, as an integer or float array."""
        idx = xm[:, None] ^ self.basis[None, :]
        if not self.exact:
            prod = 0
            for a, b, c in combo:
                prod = prod + c * np.conj(self.amps[a][idx]) * self.amps[b][None, :]
            s = _wht(np.asarray(prod, dtype=np.complex128))
            return (s.real**2 + s.imag**2)
        pre = pim = 0
        for a, b, c in combo:
            ra, ia = self.re[a][idx], self.im[a][idx]
            rb, ib = self.re[b][None, :], self.im[b][None, :]
            if self.has_imag:
                pre = pre + c * (ra * rb + ia * ib)
                pim = pim + c * (ra * ib - ia * rb)
            else:
                pre = pre + c * (ra * rb)
        total = _wht(pre) ** 2
        if self.has_imag:
            total = total + _wht(pim) ** 2
        return total


def _accumulate(values: np.ndarray, weights: np.ndarray, n: int, exact: bool) -> list:
    out = []
    for w in range(n + 1):
        sel = values[weights == w]
        out.append(int(sel.sum()) if exact else float(sel.sum()))
    return out


def _run_blocks(
    blocks: list[np.ndarray], work: Callable[[np.ndarray], list], threads: int
) -> list[list]:
    # blocks are fixed by n alone, and merged in block order
    if threads <= 1 or len(blocks) == 1:
        return [work(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(work, blocks))


def _merge(parts: list[list], width: int) -> list:
    total = [0] * width
    for part in parts:
        total = [t + p for t, p in zip(total, part)]
    return total


def _check_size(space: CodeSpace, allow_large: bool) -> None:
    if space.n > BRUTE_FORCE_MAX_N and not allow_large:
        raise PreconditionError(
            f"brute force is capped at n = {BRUTE_FORCE_MAX_N} (n = {space.n}); pass allow_large=True"
        )


# -- definitions -----------------------------------------------------------------


def brute_force_enumerators(
    space: CodeSpace,
    *,
    allow_large: bool = False,
    threads: int = 1,
    method: str = "transform",
) -> EnumeratorPair:
    """A and B straight from the definitions, for any code space.

    ``method="transform"`` evaluates every Pauli through one Walsh-Hadamard
    transform per X-mask; ``method="direct"`` walks each weight class and
    calls :func:`matrix_element` per operator (slow, kept as a reference).
    """
    _check_size(space, allow_large)
    if method == "direct":
        return _direct_enumerators(space)
    if method != "transform":
        raise ValueError(f"unknown method {method!r}")
    n, K = space.n, space.K
    sweep = _Sweep(space)
    L = sweep.lcm
    diag = [(a, a, L // space.scales[a] if sweep.exact else 1) for a in range(K)]
    pairs = []
    for a in range(K):
        for b in range(a, K):
            mult = 1 if a == b else 2  # |S_ba| == |S_ab|
            if sweep.exact:
                mult *= (L // space.scales[a]) * (L // space.scales[b])
            pairs.append((a, b, mult))

    def work(xm: np.ndarray) -> list:
        w = sweep.weights(xm)
        row = _accumulate(sweep.transform(xm, diag), w, n, sweep.exact)
        for a, b, mult in pairs:
            part = _accumulate(sweep.transform(xm, [(a, b, 1)]), w, n, sweep.exact)
            row.extend(mult * p for p in part)
        return row

    parts = _run_blocks(sweep.blocks(), work, threads)
    sums = [_merge([p[: n + 1] for p in parts], n + 1)]
    for j in range(len(pairs)):
        lo = (n + 1) * (j + 1)
        sums.append(_merge([p[lo : lo + n + 1] for p in parts], n + 1))
    a_raw = sums[0]
    b_raw = [sum(col) for col in zip(*sums[1:])]
    if sweep.exact:
        A = tuple(Fraction(v, L * L * K * K) for v in a_raw)
        B = tuple(Fraction(v, L * L * K) for v in b_raw)
    else:
        A = tuple(v / (K * K) for v in a_raw)
        B = tuple(v / K for v in b_raw)
    return EnumeratorPair(n, A, B, space.backend)


def _direct_enumerators(space: CodeSpace) -> EnumeratorPair:
    n, K = space.n, space.K
    exact = space.backend == EXACT
    A: list[Number] = []
    B: list[Number] = []
    for i in range(n + 1):
        a_i: Number = Fraction(0) if exact else 0.0
        b_i: Number = Fraction(0) if exact else 0.0
        for e in enumerate_weight_class(n, i):
            elems = [[matrix_element(space, a, e, b) for b in range(K)] for a in range(K)]
            if exact:
                trace = sum((elems[a][a].rational_parts()[0] for a in range(K)), Fraction(0))
                a_i += trace * trace
                b_i += sum((m.abs2() for row in elems for m in row), Fraction(0))
            else:
                trace = sum(elems[a][a] for a in range(K))
                a_i += abs(trace) ** 2
                b_i += sum(abs(m) ** 2 for row in elems for m in row)
        A.append(a_i / (K * K))
        B.append(b_i / K)
    return EnumeratorPair(n, tuple(A), tuple(B), space.backend)


def stabilizer_enumerators(group: StabilizerGroup) -> EnumeratorPair:
    """Weight histograms of the group (A) and of its centralizer (B)."""
    A = tuple(Fraction(c) for c in group_weight_histogram(group))
    B = tuple(Fraction(c) for c in centralizer_weight_histogram(group))
    return EnumeratorPair(group.n, A, B, EXACT)


def _differs(a: Number, b: Number, backend: str) -> bool:
    if backend == EXACT:
        return a != b
    return abs(a - b) > FLOAT_TOL * max(1.0, abs(float(b)))


def distance(pair: EnumeratorPair) -> int | None:
    """Smallest ``i`` with ``A_i != B_i``; ``None`` when the vectors agree everywhere."""
    for i, (a, b) in enumerate(zip(pair.A, pair.B)):
        if _differs(a, b, pair.backend):
            return i
    return None


# -- the restricted sums ---------------------------------------------------------------


def _require_qualifying(space: CodeSpace, need_z: bool = True) -> None:
    if space.K != 2:
        raise PreconditionError(f"needs K = 2, got K = {space.K}")
    if not space.real:
        raise PreconditionError("codewords are not real")
    x_ok, z_ok = xz_exactly_transversal(space)
    if not x_ok:
        raise PreconditionError("X^n does not act as logical X on this labeling")
    if need_z and not z_ok:
        raise PreconditionError("Z^n does not act as logical Z on this labeling")


def _parity_sums(
    space: CodeSpace,
    a: int,
    b: int,
    x_parity: int,
    z_parity: int | None,
    threads: int,
) -> list[Number]:
    """``sum |<a|E|b>|^2`` per weight over E with the given X/Z weight parities."""
    sweep = _Sweep(space)
    n = space.n
    x_masks = sweep.basis[np.bitwise_count(sweep.basis) % 2 == x_parity]
    z_keep = None
    if z_parity is not None:
        z_keep = (np.bitwise_count(sweep.basis) % 2 == z_parity)[None, :]

    def work(xm: np.ndarray) -> list:
        vals = sweep.transform(xm, [(a, b, 1)])
        w = sweep.weights(xm)
        if z_keep is not None:
            w = np.where(z_keep, w, -1)
        return _accumulate(vals, w, n, sweep.exact)

    raw = _merge(_run_blocks(sweep.blocks(x_masks), work, threads), n + 1)
    if sweep.exact:
        return [Fraction(v, space.scales[a] * space.scales[b]) for v in raw]
    return [float(v) for v in raw]


def restricted_A(space: CodeSpace, *, allow_large: bool = False, threads: int = 1) -> list[Number]:
    """``sum |<0|E|0>|^2`` per weight over E with wt_X and wt_Z both even."""
    _check_size(space, allow_large)
    _require_qualifying(space)
    return _parity_sums(space, 0, 0, 0, 0, threads)


def cd_decomposition(
    space: CodeSpace, *, allow_large: bool = False, threads: int = 1
) -> tuple[list[Number], list[Number]]:
    """The two remainders in ``B = A + C + D``.

    ``C_i`` sums ``|<0|E|0>|^2`` over wt_X even, wt_Z odd; ``D_i`` sums
    ``|<0|E|1>|^2`` over wt_X odd.
    """
    _check_size(space, allow_large)
    _require_qualifying(space, need_z=False)
    C = _parity_sums(space, 0, 0, 0, 1, threads)
    D = _parity_sums(space, 0, 1, 1, None, threads)
    return C, D


# -- theorem verification ------------------------------------------------------------------


@dataclass(frozen=True)
class TheoremReport:
    applicable: bool
    odd_A_zero: dict[int, bool] = field(default_factory=dict)
    even_A_equals_B: dict[int, bool] = field(default_factory=dict)
    distance: int | None = None
    reason: str = ""

    @property
    def distance_odd(self) -> bool:
        return self.distance is not None and self.distance % 2 == 1

    @property
    def passed(self) -> bool | None:
        """True/False when applicable, None when the hypotheses were not asserted."""
        if not self.applicable:
            return None
        return (
            all(self.odd_A_zero.values())
            and all(self.even_A_equals_B.values())
            and self.distance_odd
        )


def theorem_check(pair: EnumeratorPair, *, real: bool, xz_transversal: bool) -> TheoremReport:
    """Check ``A_odd == 0``, ``A_even == B_even`` and odd distance.

    ``real`` and ``xz_transversal`` assert the hypotheses; without both the
    report is marked not applicable instead of pass/fail.
    """
    if not (real and xz_transversal):
        missing = [name for name, ok in (("real", real), ("X/Z exactly transversal", xz_transversal)) if not ok]
        return TheoremReport(applicable=False, reason="hypotheses not met: " + ", ".join(missing))
    zero = Fraction(0) if pair.backend == EXACT else 0.0
    odd = {i: not _differs(pair.A[i], zero, pair.backend) for i in range(1, pair.n + 1, 2)}
    even = {i: not _differs(pair.A[i], pair.B[i], pair.backend) for i in range(0, pair.n + 1, 2)}
    return TheoremReport(True, odd, even, distance(pair))


# -- MacWilliams -------------------------------------------------------------------------------


def krawtchouk(j: int, i: int, n: int) -> int:
    """Quaternary Krawtchouk value: coefficient of y**j in (1+3y)**(n-i) (1-y)**i."""
    return sum(
        (-1) ** s * 3 ** (j - s) * math.comb(i, s) * math.comb(n - i, j - s)
        for s in range(0, j + 1)
    )


def macwilliams_normalization(n: int, K: int) -> Fraction:
    return Fraction(K, 2**n)


def macwilliams_transform(A: Sequence[Number], n: int, K: int) -> list[Number]:
    """``B_j = (K / 2**n) * sum_i A_i * krawtchouk(j, i, n)``."""
    if len(A) != n + 1:
        raise ValueError("A must have length n + 1")
    c = macwilliams_normalization(n, K)
    exact = all(isinstance(a, (int, Fraction)) for a in A)
    out = []
    for j in range(n + 1):
        s = sum(a * krawtchouk(j, i, n) for i, a in enumerate(A))
        out.append(c * s if exact else float(c) * s)
    return out


# -- rendering ---------------------------------------------------------------------------------


def render_number(v: Number) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def parse_number(text: str) -> Number:
    if any(ch in text for ch in ".eE") or text in ("inf", "nan", "-inf"):
        return float(text)
    return Fraction(text)


def format_lines(pair: EnumeratorPair) -> str:
    return "".join(
        f"{i} {render_number(a)} {render_number(b)}\n" for i, (a, b) in enumerate(zip(pair.A, pair.B))
    )


def parse_lines(text: str) -> EnumeratorPair:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    for expected, row in enumerate(rows):
        if len(row) != 3 or int(row[0]) != expected:
            raise ValueError(f"malformed enumerator line {' '.join(row)!r}")
    A = tuple(parse_number(r[1]) for r in rows)
    B = tuple(parse_number(r[2]) for r in rows)
    backend = FLOAT if any(isinstance(v, float) for v in A + B) else EXACT
    return EnumeratorPair(len(rows) - 1, A, B, backend)


def format_table(pair: EnumeratorPair) -> str:
    """Two aligned rows, ``A`` then ``B``, under a header of weights."""
    cols = [(str(i), render_number(a), render_number(b)) for i, (a, b) in enumerate(zip(pair.A, pair.B))]
    widths = [max(len(c) for c in col) for col in cols]
    lines = []
    for k, name in enumerate(("i", "A", "B")):
        lines.append(name + "  " + " ".join(col[k].rjust(w) for col, w in zip(cols, widths)))
    return "\n".join(lines) + "\n"
