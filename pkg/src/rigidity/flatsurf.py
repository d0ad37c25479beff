"""Square-tiled translation surfaces and their flat geometry.

An origami is a finite set of unit squares glued along edges by two
permutations: ``h`` sends each square to its right neighbor and ``v`` to its
top neighbor.  The glued surface carries a flat metric whose cone points are
the vertex classes of the tiling (cycles of the commutator of ``h`` and
``v``); every vertex is treated as a marked point, including the regular
ones of angle 2*pi.

On top of that combinatorial core the module provides:

* exact enumeration of saddle connections by developing straight segments
  through the square grid,
* cylinder decompositions in arbitrary primitive rational directions via the
  first-return map of the straight-line flow,
* flat multicurves and the rotation profile theta -> sum |Re(e^{i theta/2} v)|
  of their intersection with the rotated vertical foliation,
* the extremal-length scaling along the diagonal stretch flow.

All operations are pure functions of immutable inputs.
"""

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

TOLERANCE = 1e-9
DEFAULT_LENGTH_BOUND = 10.0

__all__ = [
    "BadPermutation",
    "NonTransitive",
    "NotPrimitive",
    "ConstantProfile",
    "Origami",
    "SaddleConnection",
    "Cylinder",
    "CylinderDecomposition",
    "FlatMulticurve",
    "FlowedFoliation",
    "ProfileExtrema",
    "build_origami",
    "load_origami",
    "area",
    "saddle_connections",
    "cylinder_decomposition",
    "horizontal_multicurve",
    "intersection_profile",
    "profile_nonconstancy",
    "intersection_q_horizontal",
    "extremal_length_flowed",
    "rotate_differential",
    "teich_disk_distance",
]


class BadPermutation(ValueError):
    """Raised when a gluing map is not a bijection of {1..n}."""


class NonTransitive(ValueError):
    """Raised when the gluing permutations do not generate a connected surface."""


class NotPrimitive(ValueError):
    """Raised when a rational direction does not have coprime entries."""


class ConstantProfile(ValueError):
    """Raised when a rotation profile is flat to within tolerance."""


def _check_permutation(images, n, name):
    """Validate a 1-indexed image array and return the 0-indexed tuple."""
    seq = list(images)
    if len(seq) != n:
        raise BadPermutation(f"{name} has {len(seq)} entries, expected {n}")
    seen = [False] * n
    out = []
    for x in seq:
        if not isinstance(x, int) or not 1 <= x <= n:
            raise BadPermutation(f"{name} entry {x!r} is not in 1..{n}")
        if seen[x - 1]:
            raise BadPermutation(f"{name} repeats the image {x}")
        seen[x - 1] = True
        out.append(x - 1)
    return tuple(out)


def _inverse(perm):
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv)


def _cycles(perm):
    """Cycles of a 0-indexed permutation, each rotated to start at its minimum."""
    n = len(perm)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        cycles.append(tuple(cyc))
    return tuple(sorted(cycles))


class Origami:
    """Connected square-tiled surface given by right/top gluing permutations.

    Squares are labelled 1..n in the public interface.  ``h`` and ``v`` are
    1-indexed image arrays: ``h[i-1]`` is the square to the right of square i
    and ``v[i-1]`` the square above it.  Vertex classes of the tiling are the
    cycles of the commutator v^-1 h^-1 v h acting on squares; a cycle of
    length k is a cone point of angle 2*pi*k.
    """

    def __init__(self, h, v):
        n = len(list(h))
        self.n = n
        if n < 1:
            raise BadPermutation("need at least one square")
        self._h = _check_permutation(h, n, "h")
        self._v = _check_permutation(v, n, "v")
        self._h_inv = _inverse(self._h)
        self._v_inv = _inverse(self._v)
        self._check_transitive()
        # commutator c = v^-1 h^-1 v h, applied left to right as functions
        comm = tuple(
            self._v_inv[self._h_inv[self._v[self._h[i]]]] for i in range(n)
        )
        self.cone_cycles = _cycles(comm)
        excess = sum(len(c) - 1 for c in self.cone_cycles)
        if excess % 2:
            raise RuntimeError("angle excess came out odd; gluing bookkeeping broken")
        self.genus = excess // 2 + 1
        if 2 - 2 * self.genus != self.vertex_count - self.n:
            raise RuntimeError("Euler characteristic bookkeeping broken")
        self._vertex_of_square = [0] * n
        for idx, cyc in enumerate(self.cone_cycles):
            for s in cyc:
                self._vertex_of_square[s] = idx

    def _check_transitive(self):
        reached = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in (self._h[i], self._v[i], self._h_inv[i], self._v_inv[i]):
                if j not in reached:
                    reached.add(j)
                    stack.append(j)
        if len(reached) != self.n:
            raise NonTransitive(
                f"gluings reach only {len(reached)} of {self.n} squares"
            )

    # -- public 1-indexed views ------------------------------------------
    def h(self, i):
        """Square to the right of square i (1-indexed)."""
        return self._h[i - 1] + 1

    def v(self, i):
        """Square above square i (1-indexed)."""
        return self._v[i - 1] + 1

    @property
    def h_images(self):
        return tuple(x + 1 for x in self._h)

    @property
    def v_images(self):
        return tuple(x + 1 for x in self._v)

    @property
    def vertex_count(self):
        return len(self.cone_cycles)

    @property
    def cone_angles(self):
        """Cone angle of each vertex class, in units of 2*pi."""
        return tuple(len(c) for c in self.cone_cycles)

    @cached_property
    def _corner_vertex(self):
        """Vertex id of each corner type, indexed [square][corner].

        Corners are reduced to bottom-left representatives: the bottom-right
        corner of square i is the bottom-left corner of h(i), the top-left is
        the bottom-left of v(i), and the top-right the bottom-left of v(h(i)).
        """
        table = []
        for i in range(self.n):
            table.append({
                "bl": self._vertex_of_square[i],
                "br": self._vertex_of_square[self._h[i]],
                "tl": self._vertex_of_square[self._v[i]],
                "tr": self._vertex_of_square[self._v[self._h[i]]],
            })
        return table

    @classmethod
    def from_json(cls, payload):
        data = json.loads(payload) if isinstance(payload, str) else payload
        try:
            n, h, v = data["n"], data["h"], data["v"]
        except (TypeError, KeyError) as exc:
            raise BadPermutation(f"origami JSON must carry n, h and v: {exc}") from exc
        return build_origami(n, h, v)

    def to_json(self):
        return json.dumps(
            {"n": self.n, "h": list(self.h_images), "v": list(self.v_images)},
            sort_keys=True,
        )

    def __eq__(self, other):
        if isinstance(other, Origami):
            return self._h == other._h and self._v == other._v
        return NotImplemented

    def __hash__(self):
        return hash((self._h, self._v))

    def __repr__(self):
        return f"Origami(h={list(self.h_images)}, v={list(self.v_images)})"


def build_origami(n, h, v):
    """Construct and validate an origami from 1-indexed image arrays."""
    if len(list(h)) != n or len(list(v)) != n:
        raise BadPermutation(f"h and v must both have {n} entries")
    return Origami(h, v)


def load_origami(path):
    """Read an origami from a JSON file {"n": int, "h": [...], "v": [...]}."""
    with open(path, encoding="utf-8") as fh:
        return Origami.from_json(json.load(fh))


def area(origami):
    """Total flat area; one unit per square."""
    return origami.n


@dataclass(frozen=True)
class SaddleConnection:
    """Oriented flat segment between marked points with no marked point inside."""

    start: int
    end: int
    holonomy: complex

    def __post_init__(self):
        if self.holonomy == 0:
            raise ValueError("saddle connection must have nonzero holonomy")

    @property
    def length(self):
        return abs(self.holonomy)

    def reversed(self):
        return SaddleConnection(self.end, self.start, -self.holonomy)


def _primitive_upper_directions(max_length):
    """Primitive integer vectors with angle in [0, pi) and length <= bound."""
    out = []
    limit = max_length * max_length
    if 1 <= limit:
        out.append((1, 0))
    q = 1
    while q * q <= limit:
        p_max = math.isqrt(int(limit - q * q)) if limit >= q * q else -1
        # float bounds can under-count by one; verify the edge explicitly
        while (p_max + 1) ** 2 + q * q <= limit:
            p_max += 1
        for p in range(-p_max, p_max + 1):
            if math.gcd(abs(p), q) == 1:
                out.append((p, q))
        q += 1
    return out


def _develop_segment(origami, square, p, q):
    """Develop the straight germ with primitive displacement (p, q), q > 0,
    entering the given square (0-indexed); returns (start_corner, end_corner,
    final_square).

    Crossing a vertical grid line applies h (or its inverse when moving
    left), crossing a horizontal line applies v.  For a primitive vector no
    two crossings coincide, and the open segment meets no grid vertex.
    """
    events = [(Fraction(j, q), "v") for j in range(1, q)]
    if p > 0:
        events += [(Fraction(j, p), "h") for j in range(1, p)]
    elif p < 0:
        events += [(Fraction(j, -p), "h-") for j in range(1, -p)]
    events.sort()
    u = square
    for _, kind in events:
        if kind == "v":
            u = origami._v[u]
        elif kind == "h":
            u = origami._h[u]
        else:
            u = origami._h_inv[u]
    start_corner = "bl" if p >= 0 else "br"
    end_corner = "tr" if p > 0 else "tl"
    return start_corner, end_corner, u


def saddle_connections(origami, max_length=DEFAULT_LENGTH_BOUND):
    """Every oriented saddle connection with |holonomy| <= max_length.

    Enumeration is exact: each oriented saddle connection with direction in
    the upper half plane arises from exactly one (square, direction) germ,
    since every grid vertex is a marked point (so holonomies are primitive
    integer vectors).  The opposite orientations are mirrored in afterwards.
    Output is sorted by (length, angle, endpoints) and hence deterministic.
    """
    out = []
    for p, q in _primitive_upper_directions(max_length):
        for s in range(origami.n):
            if q == 0:
                # horizontal unit segment along the bottom edge of s
                start = origami._corner_vertex[s]["bl"]
                end = origami._corner_vertex[s]["br"]
            else:
                c0, c1, u = _develop_segment(origami, s, p, q)
                start = origami._corner_vertex[s][c0]
                end = origami._corner_vertex[u][c1]
            sc = SaddleConnection(start, end, complex(p, q))
            out.append(sc)
            out.append(sc.reversed())

    def sort_key(sc):
        ang = math.atan2(sc.holonomy.imag, sc.holonomy.real) % (2 * math.pi)
        return (abs(sc.holonomy), ang, sc.start, sc.end)

    out.sort(key=sort_key)
    return out


@dataclass(frozen=True)
class Cylinder:
    circumference: float
    height: float
    core_holonomy: complex

    def __post_init__(self):
        if self.circumference <= 0 or self.height <= 0:
            raise ValueError("cylinder dimensions must be positive")

    @property
    def area(self):
        return self.circumference * self.height


@dataclass(frozen=True)
class CylinderDecomposition:
    direction: tuple
    cylinders: tuple

    def __post_init__(self):
        if not self.cylinders:
            raise ValueError("a decomposition holds at least one cylinder")

    def total_area(self):
        return sum(c.area for c in self.cylinders)


def _return_word_exponents(p, q):
    """Horizontal crossing counts between consecutive bottom-edge returns.

    The straight flow in direction (p, q) with q > 0 crosses a bottom edge
    once per unit of height gained; between two returns it crosses e_j
    vertical grid lines (signed by the sign of p).  The counts depend only on
    the phase x mod 1, which advances by p/q per return, so one band midpoint
    determines them for a full period of q returns.
    """
    x = Fraction(1, 2 * q)
    step = Fraction(p, q)
    exponents = []
    for _ in range(q):
        nxt = x + step
        exponents.append(math.floor(nxt) - math.floor(x))
        x = nxt - math.floor(nxt)
    assert sum(exponents) == p
    return exponents


def cylinder_decomposition(origami, direction):
    """Cylinders of the straight-line flow in a primitive rational direction.

    For (1, 0) these are the cycles of h with circumference equal to the
    cycle length and height one; a general direction is handled through the
    first-return permutation of the flow on the union of bottom edges.  Every
    cylinder in a primitive direction (p, q) has height 1/|(p, q)| because
    every grid vertex is marked.
    """
    p_in, q_in = direction
    if p_in == 0 and q_in == 0:
        raise NotPrimitive("direction must be nonzero")
    if math.gcd(abs(p_in), abs(q_in)) != 1:
        raise NotPrimitive(f"direction {direction} has non-coprime entries")
    # compute with the representative in the upper half plane
    p, q = (p_in, q_in) if (q_in > 0 or (q_in == 0 and p_in > 0)) else (-p_in, -q_in)

    if q == 0:
        word = origami._h
    else:
        exponents = _return_word_exponents(p, q)
        word = list(range(origami.n))
        for e in exponents:
            perm = origami._h if e >= 0 else origami._h_inv
            for _ in range(abs(e)):
                word = [perm[u] for u in word]
            word = [origami._v[u] for u in word]
        word = tuple(word)

    norm = math.hypot(p, q)
    cylinders = []
    for cyc in _cycles(word):
        m = len(cyc)
        cylinders.append(
            Cylinder(
                circumference=m * norm,
                height=1.0 / norm,
                core_holonomy=complex(m * p_in, m * q_in),
            )
        )
    decomp = CylinderDecomposition((p_in, q_in), tuple(cylinders))
    if abs(decomp.total_area() - origami.n) > TOLERANCE:
        raise RuntimeError("cylinder areas do not fill the surface")
    return decomp


@dataclass(frozen=True)
class FlatMulticurve:
    """Weighted union of flat geodesics, each a chain of holonomy vectors."""

    components: tuple

    def __post_init__(self):
        comps = []
        for weight, holonomies in self.components:
            weight = float(weight)
            holonomies = tuple(complex(v) for v in holonomies)
            if weight <= 0:
                raise ValueError("component weights must be positive")
            if not holonomies or any(v == 0 for v in holonomies):
                raise ValueError("holonomy lists must be nonempty and nonzero")
            comps.append((weight, holonomies))
        object.__setattr__(self, "components", tuple(comps))

    @classmethod
    def from_cylinders(cls, decomposition):
        """Core curves of a cylinder decomposition, weighted by height."""
        return cls(tuple(
            (cyl.height, (cyl.core_holonomy,)) for cyl in decomposition.cylinders
        ))

    @classmethod
    def single(cls, holonomy, weight=1.0):
        return cls(((weight, (holonomy,)),))

    def scaled(self, factor):
        return FlatMulticurve(tuple(
            (w * factor, hs) for w, hs in self.components
        ))


def horizontal_multicurve(origami):
    """Weighted horizontal core curves, one per cycle of h."""
    return FlatMulticurve.from_cylinders(cylinder_decomposition(origami, (1, 0)))


def intersection_profile(multicurve, theta):
    """Pairing of the multicurve with the vertical foliation rotated by theta.

    Rotating the flat structure by theta moves each holonomy vector v to
    e^{i theta/2} v, and the pairing integrates the horizontal variation
    |Re(.)| over every segment; the result is 2*pi periodic in theta.
    """
    rot = cmath.exp(0.5j * theta)
    total = 0.0
    for weight, holonomies in multicurve.components:
        total += weight * sum(abs((rot * v).real) for v in holonomies)
    return total


@dataclass(frozen=True)
class ProfileExtrema:
    max: float
    min: float
    witness_theta: float


def profile_nonconstancy(multicurve, samples, tolerance=TOLERANCE):
    """Extrema of the rotation profile over a uniform angle grid.

    Returns the grid maximum and minimum together with a witness angle whose
    value deviates most from the value at theta = 0.  A profile that is flat
    to within the tolerance raises ConstantProfile; for a nonzero multicurve
    this only happens when the tolerance swamps the actual variation.
    """
    if samples < 8:
        raise ValueError("need at least 8 samples")
    thetas = [2 * math.pi * j / samples for j in range(samples)]
    values = [intersection_profile(multicurve, th) for th in thetas]
    vmax, vmin = max(values), min(values)
    if vmax - vmin <= tolerance:
        raise ConstantProfile(
            f"profile spread {vmax - vmin:.3e} is within tolerance {tolerance:.3e}"
        )
    base = values[0]
    witness = thetas[max(range(samples), key=lambda j: abs(values[j] - base))]
    return ProfileExtrema(max=vmax, min=vmin, witness_theta=witness)


def intersection_q_horizontal(origami):
    """Mass of the flat structure as the pairing of its two foliations.

    Computed exactly as the sum of height times circumference over the
    horizontal cylinders; asserts agreement with the area.
    """
    mass = 0
    for cyc in _cycles(origami._h):
        mass += len(cyc) * 1  # circumference * height, both exact integers
    if mass != area(origami):
        raise RuntimeError("horizontal mass does not match the area")
    return mass


def extremal_length_flowed(origami, t, s):
    """Extremal length of the time-t vertical foliation on the time-s surface.

    The diagonal stretch flow scales the vertical foliation by e^{t-s}
    relative to the surface, and extremal length is homogeneous of degree two
    in the foliation, so the value is scale**2 times the mass of the
    unit-normalized structure.
    """
    scale = math.exp(t - s)
    unit_mass = Fraction(intersection_q_horizontal(origami), origami.n)
    return scale * scale * float(unit_mass)


@dataclass(frozen=True)
class FlowedFoliation:
    """Vertical foliation after rotating by theta and scaling the measure.

    The foliation itself only depends on theta modulo 2*pi, but the stored
    representative angle matters for the induced half-angle action on
    holonomy vectors: rotating by a full 2*pi flips their sign while leaving
    every intersection pairing unchanged.
    """

    base: Origami
    theta: float
    scale: float

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    def rotated(self, extra_theta):
        """Compose with a further rotation; angles add (modulo 2*pi as
        foliations)."""
        return FlowedFoliation(self.base, self.theta + extra_theta, self.scale)

    def holonomy_image(self, v):
        """Action on a holonomy vector: rotation by theta/2 and scaling."""
        return self.scale * cmath.exp(0.5j * self.theta) * complex(v)

    def pair_multicurve(self, multicurve):
        """Intersection pairing with a flat multicurve."""
        return self.scale * intersection_profile(multicurve, self.theta)


def rotate_differential(origami, theta):
    """Rotate the flat structure by theta; holonomies rotate by theta/2.

    The sign ambiguity of the half angle never reaches an intersection value
    because the pairing only consumes |Re(.)| of each holonomy.
    """
    return FlowedFoliation(origami, theta, 1.0)


def teich_disk_distance(t1, t2):
    """Distance between two points of a unit-speed stretch line."""
    return abs(t1 - t2)
