import random
from functools import reduce

import numpy as np
import pytest

from qwenum.pauli import PauliString
from qwenum.stabilizer import StabilizerError, validate

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def dense(p: PauliString) -> np.ndarray:
    """Matrix of ``p`` from 2x2 factors, qubit 0 as the leftmost tensor factor."""
    factors = []
    for j in range(p.n):
        b = p.n - 1 - j
        xb, zb = (p.x >> b) & 1, (p.z >> b) & 1
        factors.append((_X if xb else _I2) @ (_Z if zb else _I2))
    return (1j ** p.phase) * reduce(np.kron, factors)


def dense_state(space, j: int) -> np.ndarray:
    v = np.zeros(1 << space.n, dtype=complex)
    for basis, amp in space.codewords[j].items():
        v[basis] = complex(*amp) if isinstance(amp, tuple) else amp
    return v / np.sqrt(space.scales[j])


def random_pauli(rng: random.Random, n: int) -> PauliString:
    return PauliString(n, rng.getrandbits(n), rng.getrandbits(n), rng.randrange(4))


def _letter_counts_even(x: int, z: int) -> bool:
    n_y = (x & z).bit_count()
    return (x & ~z).bit_count() % 2 == 0 and (z & ~x).bit_count() % 2 == 0 and n_y % 2 == 0


def random_all_even_group(rng: random.Random, n: int, k: int = 1):
    """Random valid group whose generators have even X, Y and Z counts.

    Greedy: draw random commuting candidates with the right letter counts
    until there are ``n - k`` independent ones; restart on a dead end.
    """
    full = (1 << n) - 1
    while True:
        gens: list[PauliString] = []
        tries = 0
        while len(gens) < n - k and tries < 4000:
            tries += 1
            x, z = rng.getrandbits(n), rng.getrandbits(n)
            if not (x | z) or not _letter_counts_even(x, z):
                continue
            p = PauliString(n, x, z, 0).with_sign(rng.choice((0, 2)))
            if any(((p.x & g.z).bit_count() + (p.z & g.x).bit_count()) % 2 for g in gens):
                continue
            try:
                validate(gens + [p])
            except StabilizerError:
                continue
            gens.append(p)
        if len(gens) == n - k:
            assert all(g.x | g.z <= full for g in gens)
            return validate(gens)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
