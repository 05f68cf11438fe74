# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Exact rational points, segments and the predicates built on them.

Coordinates are ``fractions.Fraction``; no predicate ever rounds.
"""
from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings. Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError('boolean is not a coordinate')
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError('cannot use {!r} as an exact coordinate'.format(value))


def format_rational(value: Fraction) -> str:
    value = to_rational(value)
    return '{}/{}'.format(value.numerator, value.denominator)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def make(cls, x, y) -> 'Point':
        return cls(to_rational(x), to_rational(y))

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, factor) -> 'Point':
        return Point(self.x * factor, self.y * factor)

    def to_json(self):
        return [format_rational(self.x), format_rational(self.y)]

    @classmethod
    def from_json(cls, pair) -> 'Point':
        if len(pair) != 2:
            raise ValueError('a point needs exactly two coordinates, got {!r}'.format(pair))
        return cls.make(pair[0], pair[1])

    def __repr__(self):
        return 'Point({}, {})'.format(self.x, self.y)


class Segment(NamedTuple):
    a: Point
    b: Point

    @classmethod
    def make(cls, a, b) -> 'Segment':
        a = a if isinstance(a, Point) else Point.make(*a)
        b = b if isinstance(b, Point) else Point.make(*b)
        if a == b:
            raise ValueError('degenerate segment at {!r}'.format(a))
        return cls(a, b)

    def to_json(self):
        return [self.a.to_json(), self.b.to_json()]

    @classmethod
    def from_json(cls, pair) -> 'Segment':
        return cls.make(Point.from_json(pair[0]), Point.from_json(pair[1]))


class Orientation(Enum):
    Clockwise = -1
    Collinear = 0
    CounterClockwise = 1


class Side(Enum):
    Right = -1
    On = 0
    Left = 1


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Determinant of (a - o, b - o)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def orientation(p: Point, q: Point, r: Point) -> Orientation:
    return Orientation(_sign(cross(p, q, r)))


def side_of_line(p: Point, s: Segment) -> Side:
    return Side(_sign(cross(s.a, s.b, p)))


def _within_box(p: Point, s: Segment) -> bool:
    return (min(s.a.x, s.b.x) <= p.x <= max(s.a.x, s.b.x)
            and min(s.a.y, s.b.y) <= p.y <= max(s.a.y, s.b.y))


def point_on_segment(p: Point, s: Segment) -> bool:
    return cross(s.a, s.b, p) == 0 and _within_box(p, s)


def segments_properly_cross(s: Segment, t: Segment) -> Optional[Point]:
    """Interior crossing point of two transversal segments, else None."""
    d1 = _sign(cross(s.a, s.b, t.a))
    d2 = _sign(cross(s.a, s.b, t.b))
    if d1 == 0 or d2 == 0 or d1 == d2:
        return None
    d3 = _sign(cross(t.a, t.b, s.a))
    d4 = _sign(cross(t.a, t.b, s.b))
    if d3 == 0 or d4 == 0 or d3 == d4:
        return None
    return line_intersection(s, t)


def line_intersection(s: Segment, t: Segment) -> Optional[Point]:
    """Meeting point of the two carrier lines; None for parallel carriers."""
    rx, ry = s.b.x - s.a.x, s.b.y - s.a.y
    qx, qy = t.b.x - t.a.x, t.b.y - t.a.y
    denom = rx * qy - ry * qx
    if denom == 0:
        return None
    lam = ((t.a.x - s.a.x) * qy - (t.a.y - s.a.y) * qx) / denom
    return Point(s.a.x + lam * rx, s.a.y + lam * ry)


def segments_conflict(s: Segment, t: Segment) -> bool:
    """Closed segments share a point: crossing, touching or overlapping."""
    if segments_properly_cross(s, t) is not None:
        return True
    return (point_on_segment(t.a, s) or point_on_segment(t.b, s)
            or point_on_segment(s.a, t) or point_on_segment(s.b, t))


def dist_sq(p: Point, q: Point) -> Fraction:
    dx, dy = p.x - q.x, p.y - q.y
    return dx * dx + dy * dy


def point_segment_dist_sq(p: Point, s: Segment) -> Fraction:
    rx, ry = s.b.x - s.a.x, s.b.y - s.a.y
    length_sq = rx * rx + ry * ry
    lam = ((p.x - s.a.x) * rx + (p.y - s.a.y) * ry) / length_sq
    if lam <= 0:
        return dist_sq(p, s.a)
    if lam >= 1:
        return dist_sq(p, s.b)
    foot = Point(s.a.x + lam * rx, s.a.y + lam * ry)
    return dist_sq(p, foot)
