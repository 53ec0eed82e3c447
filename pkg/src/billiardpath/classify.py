"""Code types, unstable lines, shooting angles, and bounding polygons.

A legal code paired with an angle assignment lands in one of five types.
Stability is measured by the defect triple; unstable codes live on a line in
the (x, y) angle map.  Where the geometry pins down the first shooting angle
it is solved exactly; the reflecting-angle expansion then bounds the code's
region by a convex polygon.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .geometry import (
    intersect_halfplanes,
    line_segment_in_halfplanes,
    normalize_halfplane,
    point_satisfies,
    polygon_area2,
    polygon_bbox,
)
from .numeric import AffineForm
from .sequences import AngleAssignment, CodeSequence, assign_angles, \
    symbol_value

CODE_TYPES = ("CS", "CNS", "OSO", "ONS", "OSNO")

_ASSIGNMENT_ORDER = (("X", "Y"), ("X", "Z"), ("Y", "X"), ("Y", "Z"),
                     ("Z", "X"), ("Z", "Y"))


def stability_defect(code: CodeSequence, asg: AngleAssignment):
    """Per-symbol difference of top and bottom code sums (dX, dY, dZ).

    Odd-length codes are measured over their doubled traversal, where the
    rows swap on the second pass; their defect therefore always vanishes.
    """
    k = len(code)
    span = k if k % 2 == 0 else 2 * k
    d = {"X": 0, "Y": 0, "Z": 0}
    for i in range(1, span + 1):
        v = code.codes[(i - 1) % k]
        d[asg.symbol(i)] += v if i % 2 else -v
    return d["X"], d["Y"], d["Z"]


def is_stable(code: CodeSequence) -> bool:
    return stability_defect(code, assign_angles(code, "X", "Y")) == (0, 0, 0)


def palindromic_pivots(code: CodeSequence):
    """1-based positions whose rotation reads E p1..pq E pq..p1.

    Both bracketing numbers must be even; such positions are the fans where
    the path meets a side at a right angle.  Empty for odd lengths and for
    codes without the shape.
    """
    k = len(code)
    if k % 2:
        return []
    c = code.codes
    q = k // 2 - 1
    out = []
    for p in range(k):
        w = c[p:] + c[:p]
        if (w[0] % 2 == 0 and w[q + 1] % 2 == 0
                and w[1:q + 1] == w[q + 2:][::-1]):
            out.append(p + 1)
    return out


def classify_code(code: CodeSequence) -> str:
    """One of CS, CNS, OSO, ONS, OSNO for a legal code."""
    if not code.is_legal():
        raise ValueError(f"not a legal code sequence: {code}")
    if len(code) % 2:
        return "OSO"
    if palindromic_pivots(code):
        return "CS" if is_stable(code) else "CNS"
    if code.minimal_period() % 2:
        # an even repetition of an odd code travels the odd path
        return "OSO"
    return "OSNO" if is_stable(code) else "ONS"


# --- shooting angles --------------------------------------------------

def shooting_angle_sequence(code: CodeSequence, asg: AngleAssignment):
    """First shooting angle of every fan, as affine forms carrying theta."""
    phis = [AffineForm.var_theta()]
    for i in range(len(code) - 1):
        w = symbol_value(asg.symbol(i + 1))
        phis.append(AffineForm.const(180) - phis[-1] - code.codes[i] * w)
    return phis


def fan_angle_expansion(code: CodeSequence, asg: AngleAssignment):
    """Reflecting angles inside each fan: rising run, then falling run.

    A fan with code n and vertex angle w entered at angle phi reflects at
    phi, phi+w, ... on the way in and at 180-phi-j*w on the way out; the
    exact middle bounce of an even fan (a right angle at the palindrome
    pivots) is left out.
    """
    phis = shooting_angle_sequence(code, asg)
    out = []
    for i, n in enumerate(code.codes):
        w = symbol_value(asg.symbol(i + 1))
        phi = phis[i]
        half = n // 2
        rise_top = half if n % 2 else half - 1
        fan = [phi + j * w for j in range(rise_top + 1)]
        for j in range(half + 1, n + 1):
            fan.append(AffineForm.const(180) - phi - j * w)
        out.append(fan)
    return out


def solve_theta(code: CodeSequence, asg: AngleAssignment):
    """Exact first shooting angle, or None when the type leaves it free.

    Odd codes close up perpendicular to their start, which fixes theta from
    the alternating sum of fan turns.  Codes with palindromic pivots are
    fixed by the right angle at the first pivot.  Everything else has a
    one-parameter family and returns None.
    """
    k = len(code)
    c = code.codes
    if k % 2:
        s = AffineForm.const(180)
        for i in range(1, k + 1):
            v = c[i - 1] * symbol_value(asg.symbol(i))
            s = (s + v) if i % 2 == 0 else (s - v)
        return s * Fraction(1, 2)
    pivots = palindromic_pivots(code)
    if not pivots:
        return None
    p = pivots[0]
    phi = shooting_angle_sequence(code, asg)[p - 1]
    target = (AffineForm.const(180) - c[p - 1] * symbol_value(asg.symbol(p))) \
        * Fraction(1, 2)
    rest = AffineForm(phi.ax, phi.ay, phi.c, 0)
    return (target - rest) * (1 if phi.t > 0 else -1)


def _primitive_direction(a, b, c):
    """Scale a*x + b*y + c >= 0 so (a, b) is a primitive integer pair."""
    scale = 1
    for v in (a, b, c):
        if isinstance(v, Fraction):
            scale = scale * v.denominator // gcd(scale, v.denominator)
    if scale != 1:
        a, b, c = a * scale, b * scale, c * scale
    g = gcd(int(a), int(b))
    if g > 1:
        return int(a) // g, int(b) // g, Fraction(c, g)
    return int(a), int(b), Fraction(c)


# --- unstable lines ---------------------------------------------------

def _normalize_line(a: int, b: int, c: int):
    g = gcd(gcd(abs(a), abs(b)), abs(c))
    if g:
        a, b, c = a // g, b // g, c // g
    lead = a if a else (b if b else c)
    if lead < 0:
        a, b, c = -a, -b, -c
    return a, b, c


def unstable_line(code: CodeSequence, asg: AngleAssignment):
    """Line a*x + b*y = c*90 forced by a nonzero defect, else None."""
    dx, dy, dz = stability_defect(code, asg)
    if dx == dy == dz == 0:
        return None
    return _normalize_line(dx - dz, dy - dz, -2 * dz)


def canonical_unstable_line(code: CodeSequence):
    """Preferred (line, assignment) pair among the six relabelings.

    The candidates describe the same geometry with symbols permuted; ties
    are broken toward lines solvable as Y = slope*X + shift, then toward
    fewer zero coefficients and smaller shifts.  Returns None for stable
    codes.
    """
    best = None
    for first, second in _ASSIGNMENT_ORDER:
        try:
            asg = assign_angles(code, first, second)
        except ValueError:
            continue
        line = unstable_line(code, asg)
        if line is None:
            return None
        a, b, c = line
        zeros = (a == 0) + (b == 0) + (c == 0)
        key = (b >= 0, zeros, c, abs(b), a, b)
        if best is None or key < best[0]:
            best = (key, line, asg)
    if best is None:
        raise ValueError(f"no consistent assignment for {code}")
    return best[1], best[2]


def reduce_on_line(form: AffineForm, line) -> AffineForm:
    """Restrict a theta-free form to the line a*x + b*y = c*90."""
    a, b, c = line
    if form.t:
        raise ValueError("form still mentions theta")
    if b != 0:
        return AffineForm(form.ax - form.ay * Fraction(a, b), 0,
                          form.c + form.ay * Fraction(c, b), 0)
    if a == 0:
        raise ValueError("degenerate line")
    return AffineForm(0, form.ay, form.c + form.ax * Fraction(c, a), 0)


# --- bounding polygons ------------------------------------------------

class BoundingPolygon:
    """Convex outer bound of a code region.

    ``bounds`` lists (form, upper) pairs meaning 0 < form < upper; the
    derived halfplanes always include the open base triangle.  ``vertices``
    is the clipped closure, empty when the constraints are infeasible.
    """

    __slots__ = ("bounds", "halfplanes", "vertices", "infeasible", "faces")

    def __init__(self, bounds):
        self.bounds = []
        self.infeasible = False
        seen = set()
        raw = [(1, 0, Fraction(0)), (0, 1, Fraction(0)),
               (-1, -1, Fraction(180))]
        for form, upper in bounds:
            if form.t != 0:
                raise ValueError("bound still mentions theta")
            key = (form.ax, form.ay, form.c, upper)
            if key in seen:
                continue
            seen.add(key)
            self.bounds.append((form, upper))
            if form.is_constant():
                if not 0 < form.c * 90 < upper:
                    self.infeasible = True
                continue
            raw.append((form.ax, form.ay, form.c * 90))
            raw.append((-form.ax, -form.ay, upper - form.c * 90))
        # same direction: only the tightest offset can bind
        best = {}
        for a, b, c in raw:
            a, b, c = _primitive_direction(a, b, c)
            off = best.get((a, b))
            if off is None or c < off:
                best[(a, b)] = c
        self.halfplanes = sorted(normalize_halfplane(a, b, c)
                                 for (a, b), c in best.items())
        self.vertices = [] if self.infeasible else \
            intersect_halfplanes(self.halfplanes)
        # constraints tight somewhere on the result delimit the same region
        # as the whole set; point and segment tests use just those
        if len(self.vertices) >= 3 and polygon_area2(self.vertices) != 0:
            self.faces = [hp for hp in self.halfplanes
                          if min(hp[0] * vx + hp[1] * vy + hp[2]
                                 for vx, vy in self.vertices) == 0]
        else:
            self.faces = self.halfplanes

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) < 3 or polygon_area2(self.vertices) == 0

    def contains_point(self, x, y, strict: bool = True) -> bool:
        if self.infeasible:
            return False
        return point_satisfies(self.faces, x, y, strict)

    def bbox(self):
        if not self.vertices:
            return None
        return polygon_bbox(self.vertices)

    def __repr__(self):
        inner = "infeasible" if self.is_empty else \
            " ".join(f"({float(x):.4g},{float(y):.4g})"
                     for x, y in self.vertices)
        return f"BoundingPolygon[{inner}]"


def corner_bounding_polygon(code: CodeSequence,
                            asg: AngleAssignment) -> BoundingPolygon:
    """Bounds 0 < n*angle < 180 from the largest fan at each symbol."""
    mx: dict[str, int] = {}
    for i, v in enumerate(code.codes):
        s = asg.symbol(i + 1)
        mx[s] = max(mx.get(s, 0), v)
    return BoundingPolygon([(n * symbol_value(s), Fraction(180))
                            for s, n in sorted(mx.items())])


_POLYGON_CACHE: dict = {}


def angle_bounding_polygon(code: CodeSequence,
                           asg: AngleAssignment) -> BoundingPolygon:
    """Bounds 0 < angle < 90 over every listed reflecting angle.

    With theta solved the forms are direct.  Otherwise every theta-carrying
    form is averaged against every form carrying -theta (complements join
    both pools), which cancels theta exactly; the corner bounds are merged
    in at the end.
    """
    cache_key = (tuple(code.codes), asg.symbol(1), asg.symbol(2))
    cached = _POLYGON_CACHE.get(cache_key)
    if cached is not None:
        return cached
    forms = [f for fan in fan_angle_expansion(code, asg) for f in fan]
    theta = solve_theta(code, asg)
    bounds = []
    if theta is not None:
        for f in forms:
            bounds.append((f.substitute_theta(theta), Fraction(90)))
    else:
        # integer triples (a, b, c): a*x + b*y + c in degrees, theta dropped
        plus, minus = set(), set()
        for f in forms:
            tri = (int(f.ax), int(f.ay), int(f.c) * 90)
            (plus if f.t > 0 else minus).add(tri)
        pool_p = plus | {(-a, -b, 90 - c) for a, b, c in minus}
        pool_m = minus | {(-a, -b, 90 - c) for a, b, c in plus}
        sums = set()
        for pa, pb, pc in pool_p:
            for ma, mb, mc in pool_m:
                sums.add((pa + ma, pb + mb, pc + mc))
        half = Fraction(1, 2)
        for a, b, c in sorted(sums):
            bounds.append((AffineForm(a * half, b * half,
                                      Fraction(c, 180), 0), Fraction(90)))
    bounds.extend(corner_bounding_polygon(code, asg).bounds)
    poly = BoundingPolygon(bounds)
    _POLYGON_CACHE[cache_key] = poly
    return poly


class LineRegion:
    """Unstable code line with its polygon-clipped segment."""

    __slots__ = ("a", "b", "c", "segment")

    def __init__(self, line, segment):
        self.a, self.b, self.c = line
        self.segment = segment  # (p0, p1) or None

    @property
    def line(self):
        return self.a, self.b, self.c

    def contains_point(self, x, y) -> bool:
        return self.a * Fraction(x) + self.b * Fraction(y) == self.c * 90

    def __repr__(self):
        return f"LineRegion({self.a}x + {self.b}y = {self.c}*90, " \
               f"segment={self.segment})"


def line_region(code: CodeSequence, asg: AngleAssignment):
    """LineRegion for an unstable pair, None for stable ones."""
    line = unstable_line(code, asg)
    if line is None:
        return None
    a, b, _ = line
    if a == 0 and b == 0:
        return LineRegion(line, None)
    poly = angle_bounding_polygon(code, asg)
    if poly.infeasible:
        return LineRegion(line, None)
    seg = line_segment_in_halfplanes(line, poly.halfplanes)
    return LineRegion(line, seg)
