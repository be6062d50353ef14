"""Built-in example codes with their known enumerators, plus file loaders.

Expected rows are stored as exact fractions so that comparisons against
computed enumerators are equalities.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .codespace import CodeSpace, parse_codeword_text
from .stabilizer import (
    EXACTLY_TRANSVERSAL,
    SWAPPED,
    StabilizerGroup,
    parse_stabilizer_text,
    synthesize_codewords,
    validate,
)

STABILIZER = "stabilizer"
EXTERNAL = "external-codewords"

# where to look for the ((11,2,3)) codewords; the construction is not shipped
ELEVEN_TWO_THREE_ENV = "QWENUM_ELEVEN_TWO_THREE"


class CatalogError(LookupError):
    pass


def _row(*values: int | str) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    title: str
    kind: str
    n: int
    K: int
    generators: tuple[str, ...] = ()
    codeword_file: str | None = None
    expected_A: tuple[Fraction, ...] | None = None
    expected_B: tuple[Fraction, ...] | None = None
    expected_distance: int | None = None
    expected_real: bool = True
    expected_verdict: str | None = None

    def __post_init__(self) -> None:
        for row in (self.expected_A, self.expected_B):
            if row is None:
                continue
            if len(row) != self.n + 1 or row[0] != 1:
                raise ValueError(f"{self.name}: expected rows need length n + 1 and a leading 1")

    @property
    def is_stabilizer(self) -> bool:
        return self.kind == STABILIZER

    def group(self) -> StabilizerGroup:
        if not self.is_stabilizer:
            raise CatalogError(f"{self.name} is not a stabilizer code")
        return validate(self.generators)

    def resolve_codeword_file(self) -> Path | None:
        """Path of the external codeword file, or None when it is not available."""
        if self.codeword_file is None:
            return None
        path = Path(os.environ.get(ELEVEN_TWO_THREE_ENV, self.codeword_file))
        return path if path.is_file() else None

    def codespace(self) -> CodeSpace:
        """Codewords of the entry (synthesized for stabilizer codes)."""
        if self.is_stabilizer:
            return synthesize_codewords(self.group())
        path = self.resolve_codeword_file()
        if path is None:
            raise CatalogError(
                f"{self.name} needs an external codeword file; set {ELEVEN_TWO_THREE_ENV}"
            )
        return load_codeword_file(path)


_FIVE = ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")

# Hamming [7,4] parity checks, once as X-type and once as Z-type
_STEANE = ("IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ")

_SHOR = (
    "ZZIIIIIII",
    "IZZIIIIII",
    "IIIZZIIII",
    "IIIIZZIII",
    "IIIIIIZZI",
    "IIIIIIIZZ",
    "XXXXXXIII",
    "IIIXXXXXX",
)

# shortened dodecacode (circulant graph state on Z_12 with offsets +-1, +-3, 6),
# relabeled qubit-wise so that X^11 and Z^11 are the logical X and Z
_ELEVEN = (
    "ZIIXZIYYIIX",
    "XZXIZIIYIIY",
    "IIZXZXIYXYX",
    "XIXZZIYIIYI",
    "IXIXXXIYIIY",
    "IXXIIYYYXYX",
    "XIIXIXXYIYI",
    "IXIIZIYZXIY",
    "IXXIZXIIZIX",
    "XIIXIIYIXXY",
)

# punctured Reed-Muller: RM(1,4)* as X-type, the even part of RM(2,4)* as Z-type
_REED_MULLER = (
    "XIXIXIXIXIXIXIX",
    "IXXIIXXIIXXIIXX",
    "IIIXXXXIIIIXXXX",
    "IIIIIIIXXXXXXXX",
    "ZIZIZIZIZIZIZIZ",
    "IZZIIZZIIZZIIZZ",
    "IIIZZZZIIIIZZZZ",
    "IIIIIIIZZZZZZZZ",
    "IIZIIIZIIIZIIIZ",
    "IIIIZIZIIIIIZIZ",
    "IIIIIIIIZIZIZIZ",
    "IIIIIZZIIIIIIZZ",
    "IIIIIIIIIZZIIZZ",
    "IIIIIIIIIIIZZZZ",
)

_DATA_DIR = Path(__file__).resolve().parent / "data"

_ENTRIES = (
    CatalogEntry(
        "five-qubit", "[[5,1,3]]", STABILIZER, 5, 2, _FIVE,
        expected_A=_row(1, 0, 0, 0, 15, 0),
        expected_B=_row(1, 0, 0, 30, 15, 18),
        expected_distance=3,
        expected_verdict=EXACTLY_TRANSVERSAL,
    ),
    CatalogEntry(
        "steane", "[[7,1,3]] Steane", STABILIZER, 7, 2, _STEANE,
        expected_A=_row(1, 0, 0, 0, 21, 0, 42, 0),
        expected_B=_row(1, 0, 0, 21, 21, 126, 42, 45),
        expected_distance=3,
        expected_verdict=EXACTLY_TRANSVERSAL,
    ),
    CatalogEntry(
        "shor", "[[9,1,3]] Shor", STABILIZER, 9, 2, _SHOR,
        expected_A=_row(1, 0, 9, 0, 27, 0, 75, 0, 144, 0),
        expected_B=_row(1, 0, 9, 39, 27, 207, 75, 333, 144, 189),
        expected_distance=3,
        expected_verdict=SWAPPED,
    ),
    CatalogEntry(
        "eleven-one-five", "[[11,1,5]]", STABILIZER, 11, 2, _ELEVEN,
        expected_A=_row(1, 0, 0, 0, 0, 0, 198, 0, 495, 0, 330, 0),
        expected_B=_row(1, 0, 0, 0, 0, 198, 198, 990, 495, 1650, 330, 234),
        expected_distance=5,
        expected_verdict=EXACTLY_TRANSVERSAL,
    ),
    CatalogEntry(
        "eleven-two-three", "((11,2,3))", EXTERNAL, 11, 2,
        codeword_file=str(_DATA_DIR / "eleven_two_three.cw"),
        expected_A=_row(1, 0, 0, 0, "110/3", 0, 88, 0, 605, 0, "880/3", 0),
        expected_B=_row(1, 0, 0, "55/3", "110/3", 88, 88, 1210, 605, "4400/3", "880/3", 289),
        expected_distance=3,
    ),
    CatalogEntry(
        "reed-muller-15", "[[15,1,3]] Reed-Muller", STABILIZER, 15, 2, _REED_MULLER,
        expected_distance=3,
        expected_verdict=EXACTLY_TRANSVERSAL,
    ),
)


def builtin_codes() -> list[CatalogEntry]:
    return list(_ENTRIES)


def names() -> list[str]:
    return [e.name for e in _ENTRIES]


def get_entry(name: str) -> CatalogEntry:
    for e in _ENTRIES:
        if e.name == name:
            return e
    raise CatalogError(f"unknown catalog name {name!r} (known: {', '.join(names())})")


def load_stabilizer_file(path: str | os.PathLike) -> StabilizerGroup:
    return parse_stabilizer_text(Path(path).read_text())


def load_codeword_file(path: str | os.PathLike) -> CodeSpace:
    return parse_codeword_text(Path(path).read_text())


def row_diff(expected: Sequence[Fraction], computed: Sequence) -> list[int]:
    """Indices where the computed row differs from the expected one."""
    if len(expected) != len(computed):
        return list(range(max(len(expected), len(computed))))
    return [i for i, (e, c) in enumerate(zip(expected, computed)) if e != c]
