"""Exact incremental row reduction over Q on sparse vectors (dicts)."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Optional

Vector = Mapping[Hashable, Fraction]


class Span:
    """Reduced row echelon form of the span of the vectors added so far.

    Each row also records how it combines the accepted (independent) input
    vectors, so membership queries can return coordinates.
    """

    def __init__(self):
        self.rows: list[dict] = []
        self.combos: list[dict[int, Fraction]] = []
        self.pivots: dict[Hashable, int] = {}
        self.basis: list[dict] = []

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: Vector) -> tuple[dict, dict[int, Fraction]]:
        row = {k: Fraction(c) for k, c in vec.items() if c}
        combo: dict[int, Fraction] = {}
        for key in [k for k in row if k in self.pivots]:
            c = row.get(key)
            if not c:
                continue
            i = self.pivots[key]
            for k2, c2 in self.rows[i].items():
                val = row.get(k2, 0) - c * c2
                if val:
                    row[k2] = val
                else:
                    row.pop(k2, None)
            for j, c2 in self.combos[i].items():
                val = combo.get(j, 0) - c * c2
                if val:
                    combo[j] = val
                else:
                    combo.pop(j, None)
        return row, combo

    def add(self, vec: Vector) -> bool:
        """Insert ``vec``; True when it was independent of the span."""
        row, combo = self._reduce(vec)
        if not row:
            return False
        idx = len(self.basis)
        self.basis.append(dict(vec))
        combo[idx] = Fraction(1)
        pivot = min(row, key=repr)
        scale = row[pivot]
        row = {k: c / scale for k, c in row.items()}
        combo = {j: c / scale for j, c in combo.items()}
        # clear the new pivot from existing rows
        for i, other in enumerate(self.rows):
            c = other.get(pivot)
            if not c:
                continue
            for k2, c2 in row.items():
                val = other.get(k2, 0) - c * c2
                if val:
                    other[k2] = val
                else:
                    other.pop(k2, None)
            oc = self.combos[i]
            for j, c2 in combo.items():
                val = oc.get(j, 0) - c * c2
                if val:
                    oc[j] = val
                else:
                    oc.pop(j, None)
        self.pivots[pivot] = len(self.rows)
        self.rows.append(row)
        self.combos.append(combo)
        return True

    def contains(self, vec: Vector) -> bool:
        row, _ = self._reduce(vec)
        return not row

    def coordinates(self, vec: Vector) -> Optional[list[Fraction]]:
        """Coefficients c_i with vec = sum c_i basis[i], or None."""
        row, combo = self._reduce(vec)
        if row:
            return None
        # vec - sum(coeff * row) = 0 and each row = sum combo * basis
        coords = [Fraction(0)] * len(self.basis)
        for j, c in combo.items():
            coords[j] -= c
        return coords


def rank(vectors) -> int:
    s = Span()
    for v in vectors:
        s.add(v)
    return len(s)
