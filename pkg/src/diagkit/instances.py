"""Named finite instantiations of the diagonal construction.

Each instance packages a concrete table (set membership, a describes
relation, three-valued self-description, decimal digits) as an evaluation
matrix, applies the appropriate fixed-point-free twist to its diagonal, and
returns the twisted vector together with a certificate that it matches no
column. Demo tables ship with the package as JSON data files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from .core import (
    Carrier,
    EndoMap,
    EvalMatrix,
    NonRepresentabilityReport,
    cantor_witness,
)
from .errors import InputError

BIT_CARRIER = Carrier(2)
TRI_LEVELS = ("T", "M", "F")
TRI_CARRIER = Carrier(3, TRI_LEVELS)
DIGIT_CARRIER = Carrier(10)

# 0 <-> 1 on bits
negation = EndoMap(BIT_CARRIER, (1, 0))
# true of itself becomes F; meaningless or false of itself becomes T
strong_liar_twist = EndoMap(TRI_CARRIER, (2, 0, 0))
# digit d becomes 9 - d; no digit is its own image
digit_flip = EndoMap(DIGIT_CARRIER, tuple(9 - d for d in range(10)))


@dataclass(frozen=True)
class SubsetFamily:
    """A proposed enumeration S_0 .. S_{n-1} of subsets of {0, .., n-1}."""

    subsets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "subsets", tuple(tuple(s) for s in self.subsets))
        n = len(self.subsets)
        if n < 1:
            raise InputError("family must enumerate at least one subset")
        for i, bits in enumerate(self.subsets):
            if len(bits) != n:
                raise InputError(f"subset {i} must be a bit-vector of length {n}")
            if any(b not in (0, 1) for b in bits):
                raise InputError(f"subset {i} must contain only bits")

    @property
    def size(self) -> int:
        return len(self.subsets)


@dataclass(frozen=True)
class DescribesMatrix:
    """rel[i][j] = 1 iff item j describes (or contains) item i."""

    labels: tuple[str, ...]
    rel: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "rel", tuple(tuple(r) for r in self.rel))
        n = len(self.labels)
        if len(self.rel) != n:
            raise InputError("relation must be square over the labels")
        for i, row in enumerate(self.rel):
            if len(row) != n:
                raise InputError(f"relation row {i} has the wrong length")
            if any(b not in (0, 1) for b in row):
                raise InputError(f"relation row {i} must contain only bits")


@dataclass(frozen=True)
class TriValuedMatrix:
    """Self-description table over T(rue) / M(eaningless) / F(alse)."""

    labels: tuple[str, ...]
    table: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        n = len(self.labels)
        if len(self.table) != n:
            raise InputError("table must be square over the labels")
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise InputError(f"table row {i} has the wrong length")
            if any(v not in TRI_LEVELS for v in row):
                raise InputError(f"table row {i} must contain only T, M or F")


@dataclass(frozen=True)
class DigitMatrix:
    """digits[i][j] = decimal place i of the j-th described real in [0, 1).

    Place 0 is the units digit (zero for every such real), so place i is
    floor(x * 10^i) mod 10.
    """

    labels: tuple[str, ...]
    digits: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "digits", tuple(tuple(r) for r in self.digits))
        n = len(self.labels)
        if len(self.digits) != n:
            raise InputError("digit table must be square over the labels")
        for i, row in enumerate(self.digits):
            if len(row) != n:
                raise InputError(f"digit row {i} has the wrong length")
            if any(not 0 <= d <= 9 for d in row):
                raise InputError(f"digit row {i} must contain digits 0-9")


def membership_matrix(fam: SubsetFamily) -> EvalMatrix:
    """Rows are elements, columns are subsets: cell[n][m] = 1 iff n in S_m."""
    n = fam.size
    carrier = Carrier(n)
    cell = tuple(tuple(fam.subsets[m][i] for m in range(n)) for i in range(n))
    return EvalMatrix(rows=carrier, cols=carrier, y=BIT_CARRIER, cell=cell)


def describes_matrix(m: DescribesMatrix) -> EvalMatrix:
    carrier = Carrier(len(m.labels), m.labels)
    return EvalMatrix(rows=carrier, cols=carrier, y=BIT_CARRIER, cell=m.rel)


def tri_valued_matrix(m: TriValuedMatrix) -> EvalMatrix:
    carrier = Carrier(len(m.labels), m.labels)
    cell = tuple(tuple(TRI_LEVELS.index(v) for v in row) for row in m.table)
    return EvalMatrix(rows=carrier, cols=carrier, y=TRI_CARRIER, cell=cell)


def digit_matrix(m: DigitMatrix) -> EvalMatrix:
    carrier = Carrier(len(m.labels), m.labels)
    return EvalMatrix(rows=carrier, cols=carrier, y=DIGIT_CARRIER, cell=m.digits)


def powerset_instance(
    fam: SubsetFamily,
) -> tuple[tuple[int, ...], NonRepresentabilityReport]:
    """The set G = {i : i not in S_i}, absent from the family.

    Returns G as a characteristic bit-vector plus the certificate; the
    witness row for column m is m itself.
    """
    report = cantor_witness(membership_matrix(fam), negation)
    return report.g.values, report


def relation_instance(
    m: DescribesMatrix,
) -> tuple[tuple[int, ...], NonRepresentabilityReport]:
    """Characteristic vector of the items that do not describe themselves.

    The vector is no column of the relation: nothing describes exactly the
    self-undescribers.
    """
    report = cantor_witness(describes_matrix(m), negation)
    return report.g.values, report


def strong_liar_instance(
    m: TriValuedMatrix,
) -> tuple[tuple[str, ...], NonRepresentabilityReport]:
    """Three-valued diagonal twist: T on the diagonal becomes F, M and F become T."""
    report = cantor_witness(tri_valued_matrix(m), strong_liar_twist)
    letters = tuple(TRI_LEVELS[v] for v in report.g.values)
    return letters, report


def richard_instance(
    m: DigitMatrix,
) -> tuple[tuple[int, ...], NonRepresentabilityReport]:
    """The real whose place-i digit is 9 minus the table's diagonal digit.

    The resulting digit sequence differs from every column at its diagonal
    place, so the real it spells is none of the described ones.
    """
    report = cantor_witness(digit_matrix(m), digit_flip)
    return report.g.values, report


def heterological_labels(m: DescribesMatrix) -> tuple[str, ...]:
    """Labels of the items that do not describe themselves."""
    het, _ = relation_instance(m)
    return tuple(label for label, bit in zip(m.labels, het) if bit == 1)


def _load_data(name: str) -> dict:
    text = resources.files("diagkit.data").joinpath(name).read_text(encoding="utf-8")
    return json.loads(text)


def demo_subset_family() -> tuple[SubsetFamily, str]:
    raw = _load_data("powerset.json")
    return SubsetFamily(tuple(tuple(s) for s in raw["subsets"])), "powerset.json"


def demo_russell() -> tuple[DescribesMatrix, str]:
    raw = _load_data("russell.json")
    return DescribesMatrix(tuple(raw["t_labels"]), tuple(tuple(r) for r in raw["f"])), "russell.json"


def demo_grelling() -> tuple[DescribesMatrix, str]:
    raw = _load_data("grelling.json")
    return DescribesMatrix(tuple(raw["t_labels"]), tuple(tuple(r) for r in raw["f"])), "grelling.json"


def demo_strong_liar() -> tuple[TriValuedMatrix, str]:
    raw = _load_data("strong_liar.json")
    return TriValuedMatrix(tuple(raw["labels"]), tuple(tuple(r) for r in raw["table"])), "strong_liar.json"


def demo_richard() -> tuple[DigitMatrix, str]:
    raw = _load_data("richard_digits.json")
    return DigitMatrix(tuple(raw["labels"]), tuple(tuple(r) for r in raw["digits"])), "richard_digits.json"
