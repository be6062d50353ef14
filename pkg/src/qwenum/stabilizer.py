"""Stabilizer groups: validation, group/centralizer enumeration, codewords,
and the realness / transversality predicates for stabilizer codes.

Symplectic vectors are packed integers ``(x << n) | z`` throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import codespace
from .pauli import (
    LabelError,
    PauliString,
    apply_to_basis,
    commutes,
    from_label,
    weight_profile,
)

EXACTLY_TRANSVERSAL = "exactly_transversal"
SWAPPED = "swapped"
NOT_TRANSVERSAL = "not_transversal"

# letter ranks used to break ties between logical classes: Z < X < Y
_TIE_RANK = {(0, 1): 0, (1, 0): 1, (1, 1): 2}


class StabilizerError(ValueError):
    """Raised when a generator list does not define a stabilizer group."""


class StabilizerParseError(StabilizerError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


# -- GF(2) helpers ---------------------------------------------------------


def _symp(u: int, v: int, n: int) -> int:
    mask = (1 << n) - 1
    return (((u >> n) & v) ^ ((v >> n) & u) & mask).bit_count() & 1


def _swap_halves(v: int, n: int) -> int:
    mask = (1 << n) - 1
    return ((v & mask) << n) | (v >> n)


def _rref(vectors: Iterable[int]) -> dict[int, int]:
    """Fully reduced row echelon form keyed by pivot (highest set bit)."""
    rows: dict[int, int] = {}
    for v in vectors:
        for p in sorted(rows, reverse=True):
            if (v >> p) & 1:
                v ^= rows[p]
        if not v:
            continue
        p = v.bit_length() - 1
        for q in rows:
            if (rows[q] >> p) & 1:
                rows[q] ^= v
        rows[p] = v
    return rows


def _reduce(v: int, rows: dict[int, int]) -> int:
    for p in sorted(rows, reverse=True):
        if (v >> p) & 1:
            v ^= rows[p]
    return v


def _nullspace(constraints: Sequence[int], nbits: int) -> list[int]:
    """Basis of ``{v : popcount(v & c) even for every c}``, one vector per free bit."""
    rows = _rref(constraints)
    basis = []
    for f in range(nbits):
        if f in rows:
            continue
        v = 1 << f
        for p, row in rows.items():
            if (row >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def _solve(equations: Sequence[tuple[int, int]]) -> int | None:
    """A solution of ``popcount(mask & x) % 2 == rhs`` with free variables zero."""
    rows: dict[int, tuple[int, int]] = {}
    for mask, rhs in equations:
        for p in sorted(rows, reverse=True):
            if (mask >> p) & 1:
                mask ^= rows[p][0]
                rhs ^= rows[p][1]
        if not mask:
            if rhs:
                return None
            continue
        p = mask.bit_length() - 1
        for q, (m2, r2) in list(rows.items()):
            if (m2 >> p) & 1:
                rows[q] = (m2 ^ mask, r2 ^ rhs)
        rows[p] = (mask, rhs)
    x = 0
    for p, (_, rhs) in rows.items():
        if rhs:
            x |= 1 << p
    return x


def _packed_weights(v: np.ndarray, n: int) -> np.ndarray:
    mask = np.int64((1 << n) - 1)
    return np.bitwise_count((v >> n) | (v & mask)).astype(np.int64)


def _span_array(basis: Sequence[int]) -> np.ndarray:
    out = np.zeros(1, dtype=np.int64)
    for b in basis:
        out = np.concatenate([out, out ^ np.int64(b)])
    return out


def span_weight_histogram(basis: Sequence[int], n: int) -> list[int]:
    """Weight histogram of every element in the GF(2) span of ``basis``.

    The span is split in two halves and combined chunk-wise, so memory stays
    bounded at about a million entries for any span size.
    """
    if 2 * n > 62:
        raise ValueError("packed vectors need n <= 31")
    basis = list(basis)
    low_count = min(len(basis), 16)
    low = _span_array(basis[:low_count])
    high_basis = basis[low_count:]
    hist = np.zeros(n + 1, dtype=np.int64)
    chunk = max(1, (1 << 20) // len(low))
    high_total = 1 << len(high_basis)
    for start in range(0, high_total, chunk):
        idx = np.arange(start, min(start + chunk, high_total), dtype=np.int64)
        high = np.zeros(len(idx), dtype=np.int64)
        for j, b in enumerate(high_basis):
            high ^= np.where((idx >> j) & 1, np.int64(b), np.int64(0))
        w = _packed_weights(high[:, None] ^ low[None, :], n)
        hist += np.bincount(w.ravel(), minlength=n + 1)
    return [int(h) for h in hist]


# -- the group -------------------------------------------------------------


@dataclass(frozen=True)
class StabilizerGroup:
    n: int
    k: int
    generators: tuple[PauliString, ...]

    @cached_property
    def packed(self) -> tuple[int, ...]:
        return tuple(g.packed for g in self.generators)

    @cached_property
    def _rows(self) -> dict[int, int]:
        return _rref(self.packed)

    @cached_property
    def centralizer_basis(self) -> tuple[int, ...]:
        constraints = [_swap_halves(v, self.n) for v in self.packed]
        return tuple(_nullspace(constraints, 2 * self.n))

    def contains_unsigned(self, p: PauliString) -> bool:
        return _reduce(p.packed, self._rows) == 0

    def in_centralizer(self, p: PauliString) -> bool:
        return all(commutes(p, g) for g in self.generators)

    def labels(self) -> list[str]:
        return [g.to_label() for g in self.generators]


def _as_pauli(g: PauliString | str) -> PauliString:
    return from_label(g) if isinstance(g, str) else g


def validate(generators: Iterable[PauliString | str]) -> StabilizerGroup:
    gens = [_as_pauli(g) for g in generators]
    if not gens:
        raise StabilizerError("no generators given")
    n = gens[0].n
    for i, g in enumerate(gens):
        if g.n != n:
            raise StabilizerError(f"generator {i} ({g}) acts on {g.n} qubits, expected {n}")
        if not g.is_hermitian:
            raise StabilizerError(f"generator {i} ({g}) has an imaginary sign")
    if len(gens) > n:
        raise StabilizerError(f"{len(gens)} generators on {n} qubits")
    for i, g in enumerate(gens):
        for j in range(i + 1, len(gens)):
            if not commutes(g, gens[j]):
                raise StabilizerError(
                    f"generators {i} ({g}) and {j} ({gens[j]}) do not commute"
                )
    # echelon reduction with exact signs, so a dependency is classified as
    # either a redundant generator (+I) or an inconsistent one (-I)
    rows: dict[int, PauliString] = {}
    for i, g in enumerate(gens):
        r = g
        for p in sorted(rows, reverse=True):
            if (r.packed >> p) & 1:
                r = r * rows[p]
        if r.packed == 0:
            if r.phase == 2:
                raise StabilizerError(f"-I is in the group (generator {i}: {g})")
            raise StabilizerError(f"generator {i} ({g}) is dependent on earlier generators")
        rows[r.packed.bit_length() - 1] = r
    return StabilizerGroup(n, n - len(gens), tuple(gens))


def parse_stabilizer_text(text: str) -> StabilizerGroup:
    labels: list[str] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            p = from_label(line)
        except LabelError as exc:
            raise StabilizerParseError(str(exc), lineno) from None
        if width is None:
            width = p.n
        elif p.n != width:
            raise StabilizerParseError(
                f"generator has {p.n} qubits, earlier lines have {width}", lineno
            )
        labels.append(line)
    if not labels:
        raise StabilizerParseError("no generators in stabilizer text")
    return validate(labels)


def format_stabilizer_text(group: StabilizerGroup) -> str:
    return "\n".join(group.labels()) + "\n"


def enumerate_group(group: StabilizerGroup) -> Iterator[PauliString]:
    """All ``2**(n-k)`` signed elements; element ``s`` is the product of the
    generators selected by the bits of ``s``."""
    elements = [PauliString.identity(group.n)]
    for g in group.generators:
        elements += [e * g for e in elements]
    yield from elements


def enumerate_centralizer(group: StabilizerGroup) -> Iterator[PauliString]:
    """All ``2**(n+k)`` unsigned Pauli strings commuting with the group."""
    n = group.n
    mask = (1 << n) - 1
    for v in _span_array(group.centralizer_basis).tolist():
        x, z = v >> n, v & mask
        yield PauliString(n, x, z, (x & z).bit_count() % 4)


def group_weight_histogram(group: StabilizerGroup) -> list[int]:
    return span_weight_histogram(group.packed, group.n)


def centralizer_weight_histogram(group: StabilizerGroup) -> list[int]:
    return span_weight_histogram(group.centralizer_basis, group.n)


# -- predicates --------------------------------------------------------------


def is_real_code(group: StabilizerGroup) -> bool:
    return all(weight_profile(g).n_Y % 2 == 0 for g in group.generators)


def all_even_check(group: StabilizerGroup) -> bool:
    if group.n % 2 == 0:
        return False
    for g in group.generators:
        w = weight_profile(g)
        if w.n_X % 2 or w.n_Y % 2 or w.n_Z % 2:
            return False
    return True


def hadamard_conjugate(group: StabilizerGroup) -> StabilizerGroup:
    """Conjugate every generator by ``H`` on every qubit (``HYH = -Y``)."""
    out = []
    for g in group.generators:
        sign = (g.sign_exp + 2 * g.n_y) % 4
        out.append(PauliString(group.n, g.z, g.x, 0).with_sign(sign))
    return validate(out)


def permute_qubits(group: StabilizerGroup, perm: Sequence[int]) -> StabilizerGroup:
    """Relabel qubits so that new qubit ``i`` is old qubit ``perm[i]``."""
    if sorted(perm) != list(range(group.n)):
        raise ValueError(f"{perm!r} is not a permutation of range({group.n})")
    out = []
    for g in group.generators:
        letters = g.letters()
        prefix = g.to_label()[: -group.n]
        out.append(from_label(prefix + "".join(letters[perm[i]] for i in range(group.n))))
    return validate(out)


# -- logical operators -------------------------------------------------------


def _full(n: int) -> int:
    return (1 << n) - 1


def _logical_basis(group: StabilizerGroup) -> list[int]:
    """Centralizer basis vectors independent of the group, reduced modulo it."""
    rows = dict(group._rows)
    found = []
    for v in group.centralizer_basis:
        r = _reduce(v, rows)
        if r:
            found.append(_reduce(v, group._rows))
            rows = _rref(list(rows.values()) + [r])
    return found


def _n_y_parity(v: int, n: int) -> int:
    return ((v >> n) & v & _full(n)).bit_count() & 1


def _class_key(rep: int, group_span: np.ndarray, n: int) -> tuple[tuple, int]:
    """Ordering key of a logical class and its minimal representative.

    The key is (minimum weight, lexicographically first support, letters with
    Z < X < Y); the representative is the coset element realizing it.
    """
    coset = group_span ^ np.int64(rep)
    w = _packed_weights(coset, n)
    best = coset[w == w.min()]
    support = (best >> n) | (best & np.int64(_full(n)))
    # a larger mask means a lexicographically smaller sorted support tuple
    best = best[support == support.max()]
    candidates = []
    for v in best.tolist():
        letters = []
        for j in range(n):
            b = n - 1 - j
            xb, zb = (v >> (n + b)) & 1, (v >> b) & 1
            if xb or zb:
                letters.append(_TIE_RANK[(xb, zb)])
        candidates.append((tuple(letters), v))
    letters, v = min(candidates)
    return (int(w.min()), -int(support.max()), letters), v


def _unsigned_from_packed(v: int, n: int) -> PauliString:
    x, z = v >> n, v & _full(n)
    return PauliString(n, x, z, (x & z).bit_count() % 4)


def canonical_logicals(group: StabilizerGroup) -> tuple[list[PauliString], list[PauliString]]:
    """Canonical ``(X-bar, Z-bar)`` lists, one pair per logical qubit.

    For ``k == 1`` the three nontrivial logical classes are ranked by their
    minimum-weight representative: lowest weight, then lexicographically
    first support, then the class of ``Z^n`` before that of ``X^n`` before
    any other, then letters with Z < X < Y.  The best class becomes
    logical Z and the next one logical X.  The ranking is restricted to the
    classes of ``X^n`` and ``Z^n`` when both are logical, and otherwise to
    the real classes of a real code.  A class containing ``X^n`` or ``Z^n``
    is represented by that operator with a + sign; any other class by its
    minimal representative with a + sign.

    For ``k > 1`` a symplectic Gram-Schmidt pass over the centralizer basis
    (free-column order) pairs the logicals, preferring real operators for
    real codes.
    """
    n, k = group.n, group.k
    if k == 0:
        return [], []
    basis = _logical_basis(group)
    if k == 1:
        return _canonical_single(group, basis)
    real = is_real_code(group)
    pending = list(basis)
    xs: list[PauliString] = []
    zs: list[PauliString] = []
    while pending:
        u_idx = 0
        if real:
            u_idx = next((i for i, v in enumerate(pending) if not _n_y_parity(v, n)), 0)
        u = pending.pop(u_idx)
        v_idx = next(i for i, w in enumerate(pending) if _symp(u, w, n))
        v = pending.pop(v_idx)
        if real and _n_y_parity(v, n):
            v ^= u
        pending = [
            w ^ (u if _symp(w, v, n) else 0) ^ (v if _symp(w, u, n) else 0) for w in pending
        ]
        zs.append(_unsigned_from_packed(u, n))
        xs.append(_unsigned_from_packed(v, n))
    return xs, zs


def _canonical_single(
    group: StabilizerGroup, basis: list[int]
) -> tuple[list[PauliString], list[PauliString]]:
    n = group.n
    l1, l2 = basis
    classes = [l1, l2, _reduce(l1 ^ l2, group._rows)]
    full = _full(n)
    x_all, z_all = full << n, full
    x_class = _reduce(x_all, group._rows)
    z_class = _reduce(z_all, group._rows)
    both_logical = (
        n % 2 == 1
        and group.in_centralizer(PauliString(n, full, 0, 0))
        and group.in_centralizer(PauliString(n, 0, full, 0))
    )
    if both_logical:
        candidates = [c for c in classes if c in (x_class, z_class)]
    elif is_real_code(group):
        candidates = [c for c in classes if not _n_y_parity(c, n)]
    else:
        candidates = classes
    span = _span_array(group.packed)
    keyed = []
    for c in candidates:
        (weight, support, letters), minimal = _class_key(c, span, n)
        preference = 0 if c == z_class else 1 if c == x_class else 2
        keyed.append(((weight, support, preference, letters), minimal, c))
    ranked = [((key, minimal), c) for key, minimal, c in sorted(keyed)]
    reps = []
    for (_, minimal), c in ranked[:2]:
        if c == z_class:
            reps.append(PauliString(n, 0, full, 0))
        elif c == x_class:
            reps.append(PauliString(n, full, 0, 0))
        else:
            reps.append(_unsigned_from_packed(minimal, n))
    z_bar, x_bar = reps
    return [x_bar], [z_bar]


# -- codewords ---------------------------------------------------------------


def _seed(generators: Sequence[PauliString], n: int) -> int:
    """Basis state in the support of the stabilizer state fixed by ``generators``."""
    rows: dict[int, PauliString] = {}
    z_only: list[PauliString] = []
    for g in generators:
        r = g
        for p in sorted(rows, reverse=True):
            if (r.x >> p) & 1:
                r = r * rows[p]
        if r.x == 0:
            z_only.append(r)
        else:
            rows[r.x.bit_length() - 1] = r
    # i**phase (-1)**(z.x) == +1  <=>  z.x == phase/2 (mod 2)
    x0 = _solve([(g.z, (g.phase // 2) & 1) for g in z_only])
    if x0 is None:
        raise StabilizerError("inconsistent signs: the stabilizer state is empty")
    return x0


def _apply(p: PauliString, state: dict[int, tuple[int, int]]) -> dict[int, tuple[int, int]]:
    out = {}
    for basis, amp in state.items():
        target, k = apply_to_basis(p, basis)
        out[target] = codespace._gmul(codespace._I_POWERS[k], amp)
    return out


def synthesize_codewords(group: StabilizerGroup) -> codespace.CodeSpace:
    """Exact codewords ``|c>`` for ``c`` in ``range(2**k)``.

    ``|0...0>`` is the projection of a seed basis state onto the joint +1
    eigenspace of the group and the canonical logical Z operators, with the
    seed amplitude made positive; ``|c>`` applies the canonical logical X
    operators selected by the bits of ``c`` (logical qubit 0 is the most
    significant bit).
    """
    n, k = group.n, group.k
    xbars, zbars = canonical_logicals(group)
    full_gens = list(group.generators) + zbars
    x0 = _seed(full_gens, n)
    acc: dict[int, list[int]] = {}
    for g in enumerate_group(StabilizerGroup(n, 0, tuple(full_gens))):
        target, phase = apply_to_basis(g, x0)
        re, im = codespace._I_POWERS[phase]
        cell = acc.setdefault(target, [0, 0])
        cell[0] += re
        cell[1] += im
    entries = {b: (r, i) for b, (r, i) in acc.items() if r or i}
    g = 0
    for r, i in entries.values():
        g = math.gcd(g, r, i)
    base = {b: (r // g, i // g) for b, (r, i) in entries.items()}
    # rotate the global phase so the seed amplitude is +1
    r0, i0 = base[x0]
    rot = (r0, -i0)
    base = {b: codespace._gmul(rot, amp) for b, amp in base.items()}
    scale = sum(r * r + i * i for r, i in base.values())
    words = []
    for c in range(1 << k):
        state = base
        for j, xbar in enumerate(xbars):
            if (c >> (k - 1 - j)) & 1:
                state = _apply(xbar, state)
        words.append(sorted(state.items()))
    return codespace.from_amplitude_table(n, 1 << k, words, [scale] * (1 << k))


# -- transversality ------------------------------------------------------------


@dataclass(frozen=True)
class TransversalityReport:
    n: int
    n_parity: str
    x_in_centralizer: bool
    z_in_centralizer: bool
    x_in_group: bool
    z_in_group: bool
    x_implements: str | None
    z_implements: str | None
    verdict: str

    @property
    def normalizing_witness(self) -> str | None:
        """Transversal gate giving an equivalent code with X and Z exact, if known."""
        if self.verdict == EXACTLY_TRANSVERSAL:
            return "identity"
        if self.verdict == SWAPPED:
            return "hadamard"
        return None


def _implements(group: StabilizerGroup, p: PauliString, xbar: PauliString, zbar: PauliString) -> str | None:
    if not group.in_centralizer(p):
        return None
    if group.contains_unsigned(p):
        return "I"
    anti_x = not commutes(p, xbar)
    anti_z = not commutes(p, zbar)
    return {(False, True): "X", (True, False): "Z", (True, True): "Y"}.get((anti_x, anti_z), "I")


def transversality_report(group: StabilizerGroup) -> TransversalityReport:
    if group.k != 1:
        raise StabilizerError(f"transversality report needs k = 1, got k = {group.k}")
    n = group.n
    full = _full(n)
    xs = PauliString(n, full, 0, 0)
    zs = PauliString(n, 0, full, 0)
    (xbar,), (zbar,) = canonical_logicals(group)
    x_impl = _implements(group, xs, xbar, zbar)
    z_impl = _implements(group, zs, xbar, zbar)
    x_cent, z_cent = group.in_centralizer(xs), group.in_centralizer(zs)
    verdict = NOT_TRANSVERSAL
    if n % 2 == 1 and x_cent and z_cent:
        if (x_impl, z_impl) == ("X", "Z"):
            verdict = EXACTLY_TRANSVERSAL
        elif (x_impl, z_impl) == ("Z", "X"):
            verdict = SWAPPED
    return TransversalityReport(
        n=n,
        n_parity="odd" if n % 2 else "even",
        x_in_centralizer=x_cent,
        z_in_centralizer=z_cent,
        x_in_group=group.contains_unsigned(xs),
        z_in_group=group.contains_unsigned(zs),
        x_implements=x_impl,
        z_implements=z_impl,
        verdict=verdict,
    )


def normalize_transversal(group: StabilizerGroup) -> StabilizerGroup | None:
    """An equivalent group on which ``X^n`` and ``Z^n`` are exactly transversal.

    Only the transversal-Hadamard witness is known; other cases return None.
    """
    if group.k != 1:
        return None
    verdict = transversality_report(group).verdict
    if verdict == EXACTLY_TRANSVERSAL:
        return group
    if verdict == SWAPPED:
        conjugated = hadamard_conjugate(group)
        if transversality_report(conjugated).verdict == EXACTLY_TRANSVERSAL:
            return conjugated
    return None
