"""Multiple-cover conversions between GW series and GV tables in genus 0 and 1."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from .foundation import (
    CurveClass,
    NovikovSeries,
    decompositions,
    divisors_of,
    effective_classes,
    sigma,
)
from .geometry import GeometryData, n0, n0_vector, n1


@dataclass(frozen=True)
class GVTable:
    genus: int
    entries: Mapping[CurveClass, Fraction]
    degree_bound: int
    insertion: str | None = None

    def __getitem__(self, beta) -> Fraction:
        return self.entries.get(CurveClass(beta), Fraction(0))


def _classes(ample: Sequence[int], cutoff: int) -> list[CurveClass]:
    return effective_classes(len(ample), ample, cutoff)


# --- genus 0 ---------------------------------------------------------------

def gw0_from_table(table: Mapping, ample: Sequence[int], cutoff: int) -> NovikovSeries:
    """sum_beta n_beta sum_d d^-2 q^(d beta), truncated at cutoff."""
    terms = {}
    for beta in _classes(ample, cutoff):
        terms[beta] = sum(
            (Fraction(table.get(small, 0)) / (k * k) for k, small in divisors_of(beta)),
            Fraction(0),
        )
    return NovikovSeries(ample, cutoff, terms)


def gw0_from_gv0(geom: GeometryData, a: int, cutoff: int) -> NovikovSeries:
    """Genus-0 GW series with insertion S_a."""
    _check_cutoff(geom.degree_bound, cutoff)
    table = {beta: n0_vector(geom, beta)[a] for beta in geom.classes(cutoff)}
    return gw0_from_table(table, geom.ample, cutoff)


def gw0_series(geom: GeometryData, gamma: Sequence, cutoff: int) -> NovikovSeries:
    """Genus-0 GW series with an arbitrary H^4 insertion gamma."""
    _check_cutoff(geom.degree_bound, cutoff)
    table = {beta: n0(geom, beta, gamma) for beta in geom.classes(cutoff)}
    return gw0_from_table(table, geom.ample, cutoff)


def gv0_from_gw0(series: NovikovSeries, insertion: str | None = None) -> GVTable:
    """Invert the d^-2 multiple-cover formula, by increasing divisibility."""
    out: dict[CurveClass, Fraction] = {}
    for beta in _classes(series.ample, series.cutoff):
        value = series[beta]
        for k, small in divisors_of(beta)[1:]:
            value -= out[small] / (k * k)
        out[beta] = value
    return GVTable(0, MappingProxyType(out), series.cutoff, insertion)


# --- genus 1 ---------------------------------------------------------------

def meeting_sum(meeting, beta: CurveClass) -> Fraction:
    """sum over ordered beta1 + beta2 = beta of m_{beta1, beta2}."""
    return sum((meeting.get(b1, b2) for b1, b2 in decompositions(beta)), Fraction(0))


def gw1_from_tables(
    gv1: Mapping, n0_c2: Mapping, meeting, ample: Sequence[int], cutoff: int
) -> NovikovSeries:
    """Coefficient at beta:
    sum_{k|beta} sigma(k)/k n1_{beta/k} - 1/24 sum_{k|beta} n0_{beta/k}(c2)/k
    + 1/24 sum_{k|beta} 1/k sum_{beta1+beta2=beta/k} m_{beta1,beta2}.
    """
    terms = {}
    for beta in _classes(ample, cutoff):
        value = Fraction(0)
        for k, small in divisors_of(beta):
            value += Fraction(sigma(k), k) * Fraction(gv1.get(small, 0))
            value -= Fraction(n0_c2.get(small, 0)) / (24 * k)
            value += meeting_sum(meeting, small) / (24 * k)
        terms[beta] = value
    return NovikovSeries(ample, cutoff, terms)


def _genus1_inputs(geom: GeometryData, cutoff: int):
    classes = effective_classes(geom.curve_rank, geom.ample, cutoff)
    return {beta: n0(geom, beta, geom.c2) for beta in classes}


def gw1_from_gv1(geom: GeometryData, meeting, cutoff: int) -> NovikovSeries:
    _check_cutoff(min(geom.degree_bound, geom.gv1_degree_bound), cutoff)
    _check_meeting(meeting, cutoff)
    gv1 = {beta: n1(geom, beta) for beta in geom.classes(cutoff)}
    return gw1_from_tables(gv1, _genus1_inputs(geom, cutoff), meeting, geom.ample, cutoff)


def gv1_from_tables(series: NovikovSeries, n0_c2: Mapping, meeting) -> GVTable:
    """Invert gw1_from_tables by induction on degree."""
    out: dict[CurveClass, Fraction] = {}
    for beta in _classes(series.ample, series.cutoff):
        value = series[beta]
        for k, small in divisors_of(beta):
            value += Fraction(n0_c2.get(small, 0)) / (24 * k)
            value -= meeting_sum(meeting, small) / (24 * k)
            if k > 1:
                value -= Fraction(sigma(k), k) * out[small]
        out[beta] = value
    return GVTable(1, MappingProxyType(out), series.cutoff)


def gv1_from_gw1(geom: GeometryData, series: NovikovSeries, meeting) -> GVTable:
    _check_cutoff(geom.degree_bound, series.cutoff)
    _check_meeting(meeting, series.cutoff)
    return gv1_from_tables(series, _genus1_inputs(geom, series.cutoff), meeting)


def _check_cutoff(bound: int, cutoff: int) -> None:
    if cutoff > bound:
        raise ValueError(f"cutoff {cutoff} exceeds the table degree bound {bound}")


def _check_meeting(meeting, cutoff: int) -> None:
    if meeting.degree_bound < cutoff:
        raise ValueError(
            f"incomplete meeting table: covers total degree {meeting.degree_bound}, need {cutoff}"
        )
