"""Meeting invariants m_{beta1,beta2} from the genus-0 GV tables.

Rules: m vanishes unless both classes are effective; for beta1 != beta2

    m_{b1,b2} = sum n_{0,b1}(S_i) g^{ij} n_{0,b2}(S_j) + m_{b1,b2-b1} + m_{b1-b2,b2}

and on the diagonal

    m_{b,b} = n_{0,b}(c_2) + sum n_{0,b}(S_i) g^{ij} n_{0,b}(S_j) - sum_{b'+b''=b} m_{b',b''}

with the last sum over ordered splittings. Entries are filled in by increasing
total degree, so every right-hand side is already known.
"""
from __future__ import annotations

import json
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from .foundation import CurveClass, decompositions, degree, effective_classes, format_rational
from .geometry import GeometryData, gv_pairing, n0


def _key(b1: CurveClass, b2: CurveClass) -> tuple[CurveClass, CurveClass]:
    return (b1, b2) if tuple(b1) <= tuple(b2) else (b2, b1)


class MeetingTable:
    """Symmetric table of meeting invariants for pairs with deg(b1)+deg(b2) <= degree_bound."""

    __slots__ = ("ample", "degree_bound", "_entries")

    def __init__(self, ample: Sequence[int], degree_bound: int, entries: Mapping):
        self.ample = tuple(ample)
        self.degree_bound = degree_bound
        clean = {}
        for (b1, b2), value in entries.items():
            b1, b2 = CurveClass(b1), CurveClass(b2)
            clean[_key(b1, b2)] = Fraction(value)
        self._entries = MappingProxyType(clean)

    @property
    def entries(self) -> Mapping[tuple[CurveClass, CurveClass], Fraction]:
        return self._entries

    def get(self, b1, b2) -> Fraction:
        b1, b2 = CurveClass(b1), CurveClass(b2)
        if not (b1.is_effective() and b2.is_effective()):
            return Fraction(0)
        if degree(b1, self.ample) + degree(b2, self.ample) > self.degree_bound:
            raise KeyError(f"incomplete meeting table: ({b1.key()}),({b2.key()}) beyond degree {self.degree_bound}")
        try:
            return self._entries[_key(b1, b2)]
        except KeyError:
            raise KeyError(f"incomplete meeting table: ({b1.key()}),({b2.key()}) missing") from None

    __call__ = get

    def replace(self, b1, b2, value) -> "MeetingTable":
        """A copy with one entry overwritten (used for negative controls)."""
        entries = dict(self._entries)
        entries[_key(CurveClass(b1), CurveClass(b2))] = Fraction(value)
        return MeetingTable(self.ample, self.degree_bound, entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, MeetingTable):
            return NotImplemented
        return (self.ample, self.degree_bound, dict(self._entries)) == (
            other.ample, other.degree_bound, dict(other._entries)
        )

    def to_json(self) -> str:
        rows = [
            {"beta1": b1.key(), "beta2": b2.key(), "m": format_rational(v)}
            for (b1, b2), v in sorted(
                self._entries.items(),
                key=lambda kv: (degree(kv[0][0] + kv[0][1], self.ample), tuple(kv[0][0]), tuple(kv[0][1])),
            )
        ]
        return json.dumps({"degree_bound": self.degree_bound, "entries": rows}, indent=1)


def meeting_table(geom: GeometryData, degree_bound: int | None = None) -> MeetingTable:
    bound = geom.degree_bound if degree_bound is None else degree_bound
    if bound > geom.degree_bound:
        raise ValueError(f"meeting table to degree {bound} needs GV data beyond {geom.degree_bound}")
    entries: dict[tuple[CurveClass, CurveClass], Fraction] = {}

    def m(b1: CurveClass, b2: CurveClass) -> Fraction:
        if not (b1.is_effective() and b2.is_effective()):
            return Fraction(0)
        key = _key(b1, b2)
        if key not in entries:
            raise RuntimeError(f"meeting recursion reached uncomputed pair {key}")
        return entries[key]

    for beta in effective_classes(geom.curve_rank, geom.ample, bound):
        for b1, b2 in decompositions(beta):
            if tuple(b1) > tuple(b2):
                continue
            if b1 != b2:
                value = gv_pairing(geom, b1, b2) + m(b1, b2 - b1) + m(b1 - b2, b2)
            else:
                value = n0(geom, b1, geom.c2) + gv_pairing(geom, b1, b1)
                value -= sum((m(x, y) for x, y in decompositions(b1)), Fraction(0))
            entries[(b1, b2)] = value
    return MeetingTable(geom.ample, bound, entries)
