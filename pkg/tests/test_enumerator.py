import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_all_even_group
from qwenum.catalog import builtin_codes, get_entry
from qwenum.codespace import FLOAT, from_amplitude_table
from qwenum.enumerator import (
    EnumeratorPair,
    PreconditionError,
    brute_force_enumerators,
    cd_decomposition,
    distance,
    format_lines,
    format_table,
    krawtchouk,
    macwilliams_transform,
    parse_lines,
    render_number,
    restricted_A,
    stabilizer_enumerators,
    theorem_check,
)
from qwenum.pauli import enumerate_weight_class
from qwenum.stabilizer import (
    hadamard_conjugate,
    normalize_transversal,
    permute_qubits,
    synthesize_codewords,
    validate,
)


def F(*vals):
    return tuple(Fraction(v) for v in vals)


def trivial():
    return from_amplitude_table(1, 2, [[(0, 1)], [(1, 1)]])


def five_space():
    return synthesize_codewords(get_entry("five-qubit").group())


def test_trivial_code():
    pair = brute_force_enumerators(trivial())
    assert pair.A == F(1, 0) and pair.B == F(1, 3)
    assert distance(pair) == 1


@pytest.mark.parametrize("method", ["transform", "direct"])
def test_five_qubit_brute(method):
    pair = brute_force_enumerators(five_space(), method=method)
    assert pair.A == F(1, 0, 0, 0, 15, 0)
    assert pair.B == F(1, 0, 0, 30, 15, 18)
    assert distance(pair) == 3


def test_steane_brute():
    pair = brute_force_enumerators(get_entry("steane").codespace())
    assert pair.A == F(1, 0, 0, 0, 21, 0, 42, 0)
    assert pair.B == F(1, 0, 0, 21, 21, 126, 42, 45)


def test_group_path_examples():
    assert stabilizer_enumerators(get_entry("shor").group()).B == F(1, 0, 9, 39, 27, 207, 75, 333, 144, 189)
    e = stabilizer_enumerators(get_entry("eleven-one-five").group())
    assert e.A == F(1, 0, 0, 0, 0, 0, 198, 0, 495, 0, 330, 0)
    assert distance(e) == 5


def test_brute_force_cap():
    big = synthesize_codewords(get_entry("reed-muller-15").group())
    with pytest.raises(PreconditionError):
        brute_force_enumerators(big)


def test_thread_count_does_not_change_result():
    space = get_entry("shor").codespace()
    assert brute_force_enumerators(space, threads=1) == brute_force_enumerators(space, threads=3)


def test_float_backend_matches_exact():
    exact = five_space()
    words = [
        [(b, r / exact.scales[j] ** 0.5) for b, (r, _) in w.items()] for j, w in enumerate(exact.codewords)
    ]
    fl = from_amplitude_table(5, 2, words, backend=FLOAT)
    pair = brute_force_enumerators(fl)
    assert pair.backend == FLOAT
    want = brute_force_enumerators(exact)
    assert all(abs(a - float(b)) < 1e-9 for a, b in zip(pair.A + pair.B, want.A + want.B))
    assert distance(pair) == 3


def test_complex_codewords_brute_matches_direct():
    # a K = 2 code with complex amplitudes and unequal scales
    s = from_amplitude_table(
        3, 2, [[(0b000, 1), (0b011, (0, 1))], [(0b101, (1, 1)), (0b110, (-1, 1))]], [2, 4]
    )
    assert brute_force_enumerators(s) == brute_force_enumerators(s, method="direct")


def test_distance_no_discrepancy():
    pair = EnumeratorPair(2, F(1, 0, 0), F(1, 0, 0))
    assert distance(pair) is None


def test_local_equivalence_invariance():
    shor = get_entry("shor").group()
    ref = stabilizer_enumerators(shor)
    assert stabilizer_enumerators(hadamard_conjugate(shor)) == ref
    perm = list(range(9))
    random.Random(3).shuffle(perm)
    assert stabilizer_enumerators(permute_qubits(shor, perm)) == ref


@pytest.mark.parametrize("name", ["five-qubit", "steane"])
def test_restricted_and_cd(name):
    space = get_entry(name).codespace()
    pair = brute_force_enumerators(space)
    assert tuple(restricted_A(space)) == pair.A
    C, D = cd_decomposition(space)
    assert all(b == a + c + d for a, b, c, d in zip(pair.A, pair.B, C, D))
    assert all(C[i] == 0 and D[i] == 0 for i in range(0, space.n + 1, 2))
    assert C[0] == D[0] == 0


def test_five_qubit_cd_split():
    C, D = cd_decomposition(five_space())
    assert C[3] + D[3] == 30
    assert restricted_A(five_space())[0] == 1


def test_restricted_preconditions():
    with pytest.raises(PreconditionError):
        restricted_A(synthesize_codewords(get_entry("shor").group()))
    with pytest.raises(PreconditionError):
        restricted_A(synthesize_codewords(validate(["XX", "ZZ"])))
    complex_space = from_amplitude_table(1, 2, [[(0, 1), (1, (0, 1))], [(0, 1), (1, (0, -1))]], [2, 2])
    with pytest.raises(PreconditionError):
        cd_decomposition(complex_space)


def test_theorem_check_examples():
    rep = theorem_check(stabilizer_enumerators(get_entry("five-qubit").group()), real=True, xz_transversal=True)
    assert rep.applicable and rep.passed and rep.distance == 3
    bell = stabilizer_enumerators(validate(["XX", "ZZ"]))
    rep = theorem_check(bell, real=True, xz_transversal=False)
    assert not rep.applicable and rep.passed is None
    bad = EnumeratorPair(3, F(1, 1, 0, 0), F(1, 1, 1, 5))
    rep = theorem_check(bad, real=True, xz_transversal=True)
    assert rep.passed is False and rep.odd_A_zero[1] is False


def test_shor_theorems_after_normalization():
    h = normalize_transversal(get_entry("shor").group())
    rep = theorem_check(stabilizer_enumerators(h), real=True, xz_transversal=True)
    assert rep.passed and rep.distance == 3


def test_krawtchouk_generating_function():
    n = 4
    for i in range(n + 1):
        # coefficient extraction from (1+3y)^(n-i) (1-y)^i
        poly = [1]
        for f in [(1, 3)] * (n - i) + [(1, -1)] * i:
            poly = [a + b for a, b in zip(poly + [0], [0] + [c * f[1] for c in poly])]
        assert [krawtchouk(j, i, n) for j in range(n + 1)] == poly


def test_macwilliams_trivial_and_five():
    assert macwilliams_transform(F(1, 0), 1, 2) == list(F(1, 3))
    assert macwilliams_transform(F(1, 0, 0, 0, 15, 0), 5, 2) == list(F(1, 0, 0, 30, 15, 18))


@pytest.mark.parametrize("entry", [e for e in builtin_codes() if e.expected_A], ids=lambda e: e.name)
def test_macwilliams_catalog_rows(entry):
    assert macwilliams_transform(entry.expected_A, entry.n, entry.K) == list(entry.expected_B)


def test_rendering():
    assert render_number(Fraction(110, 3)) == "110/3"
    assert render_number(Fraction(6, 2)) == "3"
    assert render_number(2.5) == "2.5"
    pair = EnumeratorPair(2, F(1, "1/3", 0), F(1, "4400/3", 2))
    assert parse_lines(format_lines(pair)) == pair
    table = format_table(pair)
    assert table.splitlines()[1].split() == ["A", "1", "1/3", "0"]


def test_float_lines_round_trip():
    pair = EnumeratorPair(1, (1.0, 0.1), (1.0, 3.0000000001), FLOAT)
    assert parse_lines(format_lines(pair)) == pair


def test_parse_lines_rejects_gaps():
    with pytest.raises(ValueError):
        parse_lines("0 1 1\n2 0 0\n")


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([3, 5]))
def test_random_groups_brute_equals_group(seed, n):
    g = random_all_even_group(random.Random(seed), n)
    assert brute_force_enumerators(synthesize_codewords(g)) == stabilizer_enumerators(g)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([3, 5, 7]))
def test_random_groups_totals(seed, n):
    g = random_all_even_group(random.Random(seed), n)
    pair = stabilizer_enumerators(g)
    assert sum(pair.A) == 2 ** (n - 1) and sum(pair.B) == 2 ** (n + 1)
    assert all(b >= a >= 0 for a, b in zip(pair.A, pair.B))
    assert macwilliams_transform(pair.A, n, 2) == list(pair.B)


def _dense_oracle(space):
    """A and B from the literal trace formulas with a dense projector."""
    import numpy as np

    from conftest import dense, dense_state

    vecs = [dense_state(space, j) for j in range(space.K)]
    proj = sum(np.outer(v, v.conj()) for v in vecs)
    A, B = [], []
    for w in range(space.n + 1):
        a = b = 0.0
        for e in enumerate_weight_class(space.n, w):
            m = dense(e)
            a += abs(np.trace(m @ proj)) ** 2
            b += np.trace(m @ proj @ m @ proj).real
        A.append(a / space.K**2)
        B.append(b / space.K)
    return A, B


def test_rational_amplitudes_give_exact_fractions(tmp_path, monkeypatch):
    from qwenum.catalog import ELEVEN_TWO_THREE_ENV
    from qwenum.codespace import format_codeword_text

    space = from_amplitude_table(
        2, 2, [[(0b00, 3), (0b11, 4)], [(0b01, 4), (0b10, -3)]], [25, 25]
    )
    pair = brute_force_enumerators(space)
    assert any(v.denominator > 1 for v in pair.A + pair.B)
    A, B = _dense_oracle(space)
    assert all(abs(float(x) - y) < 1e-12 for x, y in zip(pair.A + pair.B, A + B))
    # the external-file route used for non-additive fixtures
    path = tmp_path / "rational.cw"
    path.write_text(format_codeword_text(space))
    monkeypatch.setenv(ELEVEN_TWO_THREE_ENV, str(path))
    assert brute_force_enumerators(get_entry("eleven-two-three").codespace()) == pair


def test_literal_trace_oracle():
    space = five_space()
    pair = brute_force_enumerators(space)
    A, B = _dense_oracle(space)
    assert all(abs(float(x) - y) < 1e-9 for x, y in zip(pair.A + pair.B, A + B))
