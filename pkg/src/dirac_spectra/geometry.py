"""Domain construction and discretisation.

Every generator returns a :class:`DiscretizedDomain`: boundary collocation
points with outward normals and arc-length weights, exterior source points
displaced along the normals, quasi-random interior probe points, and exact
area/perimeter. Supported families: disks (including disjoint unions),
rectangles, simple polygons, triangles from the admissible parameter region,
regular and random polygons, and star-shaped Fourier radial domains.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull

from .errors import (
    DomainError,
    FitFailureError,
    InvalidGeometryError,
    InvalidShapeError,
    PlacementError,
)

_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# core data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundarySample:
    """A collocation point with its outward unit normal."""

    position: np.ndarray
    normal: np.ndarray


@dataclass
class DiscretizedDomain:
    """Discrete representation of a planar domain for the MFS solver.

    ``boundary_points``/``boundary_normals``/``boundary_weights`` hold the
    collocation nodes, outward unit normals and arc-length quadrature weights.
    ``inside`` is a vectorised strict-interior predicate on (n, 2) arrays.
    """

    boundary_points: np.ndarray
    boundary_normals: np.ndarray
    boundary_weights: np.ndarray
    sources: np.ndarray
    interior: np.ndarray
    area: float
    perimeter: float
    components: int = 1
    # corner domains have non-smooth eigenfunctions, so residual minima at
    # eigenvalues stay well above machine precision; consumers may loosen
    # their detection threshold accordingly
    has_corners: bool = False
    inside: callable = field(default=None, repr=False)

    @property
    def boundary(self):
        return [
            BoundarySample(p, n)
            for p, n in zip(self.boundary_points, self.boundary_normals)
        ]

    def recomputed_area(self):
        """Area from the boundary quadrature, 0.5 * sum (x . n) ds."""
        dots = np.einsum("ij,ij->i", self.boundary_points, self.boundary_normals)
        return 0.5 * float(np.sum(dots * self.boundary_weights))

    def contains(self, point):
        return bool(self.inside(np.asarray(point, dtype=float)[None, :])[0])


@dataclass(frozen=True)
class TriangleParam:
    """Third-vertex coordinates of a triangle with base (-1,0)-(1,0).

    Constrained to the admissible region x >= 0, y > 0, (x+1)^2 + y^2 <= 4;
    every triangle is congruent to exactly one of these.
    """

    x: float
    y: float

    def __post_init__(self):
        if not (self.x >= 0 and self.y > 0 and (self.x + 1) ** 2 + self.y**2 <= 4):
            raise DomainError(f"({self.x}, {self.y}) outside the admissible region")


@dataclass(frozen=True)
class FourierShape:
    """Trigonometric coefficients of a star-shaped radial boundary.

    The induced radius function is normalised so the enclosed area is 1 for
    any non-zero coefficient vector; the shape depends only on the direction
    of the vector.
    """

    a0: float
    a: tuple = ()
    b: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if self._norm() == 0.0:
            raise InvalidShapeError("all Fourier coefficients are zero")

    def _norm(self):
        return math.sqrt(
            2.0 * self.a0**2 + sum(v * v for v in self.a) + sum(v * v for v in self.b)
        )

    @property
    def n_modes(self):
        return max(len(self.a), len(self.b))

    def coefficient_vector(self):
        m = self.n_modes
        a = np.zeros(m)
        b = np.zeros(m)
        a[: len(self.a)] = self.a
        b[: len(self.b)] = self.b
        return np.concatenate(([self.a0], a, b))

    def radius(self, theta):
        """Normalised radius r(theta); may be negative for invalid shapes."""
        theta = np.asarray(theta, dtype=float)
        num = np.full_like(theta, self.a0)
        for m, am in enumerate(self.a, start=1):
            num = num + am * np.cos(m * theta)
        for m, bm in enumerate(self.b, start=1):
            num = num + bm * np.sin(m * theta)
        return math.sqrt(2.0 / math.pi) * num / self._norm()

    def radius_derivative(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros_like(theta)
        for m, am in enumerate(self.a, start=1):
            out = out - m * am * np.sin(m * theta)
        for m, bm in enumerate(self.b, start=1):
            out = out + m * bm * np.cos(m * theta)
        return math.sqrt(2.0 / math.pi) * out / self._norm()

    def is_positive(self, grid=2048):
        theta = np.linspace(0.0, _TWO_PI, grid, endpoint=False)
        return bool(np.all(self.radius(theta) > 0.0))


def disk_shape():
    """Coefficients of the unit-area disk."""
    return FourierShape(1.0)


# ---------------------------------------------------------------------------
# Halton sequence and point placement
# ---------------------------------------------------------------------------

def _radical_inverse(indices, base):
    indices = np.asarray(indices, dtype=np.int64)
    out = np.zeros(indices.shape, dtype=float)
    factor = 1.0 / base
    work = indices.copy()
    while np.any(work > 0):
        out += factor * (work % base)
        work //= base
        factor /= base
    return out


def halton_points(count, start=1, bases=(2, 3)):
    """Points ``start .. start+count-1`` of the Halton sequence in [0,1)^2."""
    idx = np.arange(start, start + count)
    return np.column_stack([_radical_inverse(idx, b) for b in bases])


def halton_interior(domain, count, bases=(2, 3)):
    """First ``count`` Halton points that fall strictly inside the domain.

    ``domain`` may be a DiscretizedDomain or any object with an ``inside``
    predicate and boundary points to bound the search box. Deterministic.
    """
    inside = domain.inside
    pts = domain.boundary_points
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    return _halton_interior(inside, lo, hi, count, bases)


def _halton_interior(inside, lo, hi, count, bases=(2, 3)):
    span = hi - lo
    found = []
    start = 1
    n_found = 0
    chunk = max(4 * count, 64)
    while n_found < count:
        raw = halton_points(chunk, start=start, bases=bases)
        start += chunk
        cand = lo + raw * span
        mask = inside(cand)
        sel = cand[mask]
        found.append(sel)
        n_found += len(sel)
        if start > 10_000_000:
            raise DomainError("could not place interior points in the domain")
    return np.concatenate(found)[:count]


def source_points(boundary, eta, count=None, inside=None):
    """Exterior source points, boundary samples displaced outward by eta.

    ``boundary`` is a list of BoundarySample or a (positions, normals) pair.
    When ``count`` is below the number of boundary samples, sources are taken
    from an evenly strided subset. If an ``inside`` predicate is supplied,
    sources falling inside the domain raise PlacementError.
    """
    if eta <= 0:
        raise PlacementError("source displacement must be strictly positive")
    if isinstance(boundary, tuple):
        positions, normals = boundary
    else:
        positions = np.array([s.position for s in boundary], dtype=float)
        normals = np.array([s.normal for s in boundary], dtype=float)
    m = len(positions)
    if count is None:
        count = m
    if count > m:
        raise PlacementError(f"cannot place {count} sources on {m} boundary samples")
    idx = (np.arange(count) * m) // count
    srcs = positions[idx] + eta * normals[idx]
    if inside is not None and np.any(inside(srcs)):
        raise PlacementError(
            "a source point fell inside the domain; reduce the displacement"
        )
    return srcs


def _finalize(positions, normals, weights, inside, area, perimeter, cfg,
              components=1, has_corners=False):
    srcs = source_points((positions, normals), cfg.displacement,
                         count=cfg.n_sources, inside=inside)
    lo = positions.min(axis=0)
    hi = positions.max(axis=0)
    interior = _halton_interior(inside, lo, hi, cfg.n_interior)
    return DiscretizedDomain(
        boundary_points=positions,
        boundary_normals=normals,
        boundary_weights=weights,
        sources=srcs,
        interior=interior,
        area=float(area),
        perimeter=float(perimeter),
        components=components,
        has_corners=has_corners,
        inside=inside,
    )


# ---------------------------------------------------------------------------
# polygon helpers
# ---------------------------------------------------------------------------

def shoelace_area(vertices):
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_perimeter(vertices):
    v = np.asarray(vertices, dtype=float)
    return float(np.sum(np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)))


def _segments_intersect(p1, p2, p3, p4):
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def is_simple_polygon(vertices):
    v = np.asarray(vertices, dtype=float)
    n = len(v)
    for i in range(n):
        a1, a2 = v[i], v[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            b1, b2 = v[j], v[(j + 1) % n]
            if _segments_intersect(a1, a2, b1, b2):
                return False
    return True


def _polygon_inside(vertices):
    v = np.asarray(vertices, dtype=float)
    x1 = v
    x2 = np.roll(v, -1, axis=0)

    def inside(pts):
        pts = np.asarray(pts, dtype=float)
        px = pts[:, 0][:, None]
        py = pts[:, 1][:, None]
        cond = (x1[:, 1] > py) != (x2[:, 1] > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = x1[:, 0] + (py - x1[:, 1]) / (x2[:, 1] - x1[:, 1]) * (
                x2[:, 0] - x1[:, 0]
            )
        crossings = np.sum(cond & (px < xint), axis=1)
        return (crossings % 2) == 1

    return inside


def _polygon_boundary(vertices, n_samples):
    """Edge-interior collocation nodes, normals and weights on a CCW polygon."""
    v = np.asarray(vertices, dtype=float)
    edges = np.roll(v, -1, axis=0) - v
    lengths = np.linalg.norm(edges, axis=1)
    total = lengths.sum()
    # distribute proportionally, at least one node per edge
    counts = np.maximum(1, np.round(n_samples * lengths / total).astype(int))
    while counts.sum() > n_samples:
        counts[np.argmax(counts)] -= 1
    while counts.sum() < n_samples:
        counts[np.argmax(lengths / counts)] += 1
    positions, normals, weights = [], [], []
    for vi, edge, length, cnt in zip(v, edges, lengths, counts):
        frac = (np.arange(cnt) + 0.5) / cnt
        positions.append(vi + frac[:, None] * edge)
        tangent = edge / length
        normal = np.array([tangent[1], -tangent[0]])
        normals.append(np.tile(normal, (cnt, 1)))
        weights.append(np.full(cnt, length / cnt))
    return (
        np.concatenate(positions),
        np.concatenate(normals),
        np.concatenate(weights),
    )


# ---------------------------------------------------------------------------
# domain generators
# ---------------------------------------------------------------------------

def disk(radius, cfg, center=(0.0, 0.0)):
    """Disk of the given radius discretised with equispaced boundary angles."""
    if radius <= 0:
        raise DomainError(f"radius must be positive, got {radius}")
    center = np.asarray(center, dtype=float)
    m = cfg.n_collocation
    theta = _TWO_PI * np.arange(m) / m
    normals = np.column_stack([np.cos(theta), np.sin(theta)])
    positions = center + radius * normals
    weights = np.full(m, _TWO_PI * radius / m)

    def inside(pts):
        pts = np.asarray(pts, dtype=float)
        return np.hypot(pts[:, 0] - center[0], pts[:, 1] - center[1]) < radius

    return _finalize(positions, normals, weights, inside,
                     math.pi * radius**2, _TWO_PI * radius, cfg)


def disjoint_disks(centers, radii, cfg):
    """Union of pairwise disjoint disks as a multi-component domain.

    Collocation points are split between components proportionally to
    perimeter; sources and interior points are taken over the union.
    """
    centers = np.asarray(centers, dtype=float)
    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0):
        raise DomainError("disk radii must be positive")
    k = len(centers)
    for i in range(k):
        for j in range(i + 1, k):
            if np.linalg.norm(centers[i] - centers[j]) <= radii[i] + radii[j]:
                raise InvalidGeometryError("disks overlap or touch")
    perims = _TWO_PI * radii
    counts = np.maximum(1, np.round(cfg.n_collocation * perims / perims.sum()).astype(int))
    while counts.sum() > cfg.n_collocation:
        counts[np.argmax(counts)] -= 1
    while counts.sum() < cfg.n_collocation:
        counts[np.argmin(counts)] += 1
    positions, normals, weights = [], [], []
    for c, r, m in zip(centers, radii, counts):
        theta = _TWO_PI * np.arange(m) / m
        nrm = np.column_stack([np.cos(theta), np.sin(theta)])
        positions.append(c + r * nrm)
        normals.append(nrm)
        weights.append(np.full(m, _TWO_PI * r / m))
    positions = np.concatenate(positions)
    normals = np.concatenate(normals)
    weights = np.concatenate(weights)

    def inside(pts):
        pts = np.asarray(pts, dtype=float)
        hit = np.zeros(len(pts), dtype=bool)
        for c, r in zip(centers, radii):
            hit |= np.hypot(pts[:, 0] - c[0], pts[:, 1] - c[1]) < r
        return hit

    return _finalize(positions, normals, weights, inside,
                     float(np.sum(math.pi * radii**2)), float(perims.sum()),
                     cfg, components=k)


def rectangle(a, b, cfg):
    """Axis-aligned rectangle of sides a, b centred at the origin."""
    if a <= 0 or b <= 0:
        raise DomainError(f"rectangle sides must be positive, got ({a}, {b})")
    vertices = np.array([
        [-a / 2, -b / 2],
        [a / 2, -b / 2],
        [a / 2, b / 2],
        [-a / 2, b / 2],
    ])
    positions, normals, weights = _polygon_boundary(vertices, cfg.n_collocation)

    def inside(pts):
        pts = np.asarray(pts, dtype=float)
        return (np.abs(pts[:, 0]) < a / 2) & (np.abs(pts[:, 1]) < b / 2)

    return _finalize(positions, normals, weights, inside, a * b, 2 * (a + b),
                     cfg, has_corners=True)


def polygon(vertices, cfg):
    """Simple counterclockwise polygon with edge-interior collocation nodes."""
    v = np.asarray(vertices, dtype=float)
    if len(v) < 3:
        raise InvalidGeometryError("a polygon needs at least 3 vertices")
    area = shoelace_area(v)
    if area <= 0:
        raise InvalidGeometryError("vertices must be in counterclockwise order")
    if not is_simple_polygon(v):
        raise InvalidGeometryError("polygon is self-intersecting")
    positions, normals, weights = _polygon_boundary(v, cfg.n_collocation)
    return _finalize(positions, normals, weights, _polygon_inside(v),
                     area, polygon_perimeter(v), cfg, has_corners=True)


def triangle_vertices(param, unit_area=False):
    """Vertices of the admissible triangle, optionally rescaled to area 1."""
    v = np.array([[-1.0, 0.0], [1.0, 0.0], [param.x, param.y]])
    if unit_area:
        v = v / math.sqrt(param.y)
    return v


def admissible_triangle(param, cfg, unit_area=False):
    """Triangle with base (-1,0)-(1,0) and third vertex from the admissible set."""
    return polygon(triangle_vertices(param, unit_area=unit_area), cfg)


def regular_polygon_vertices(n, area):
    if n < 3:
        raise DomainError(f"a polygon needs n >= 3 sides, got {n}")
    if area <= 0:
        raise DomainError(f"area must be positive, got {area}")
    circumradius = math.sqrt(2.0 * area / (n * math.sin(_TWO_PI / n)))
    theta = _TWO_PI * np.arange(n) / n
    return circumradius * np.column_stack([np.cos(theta), np.sin(theta)])


def regular_polygon(n, area, cfg):
    """Regular n-gon of the given area centred at the origin."""
    return polygon(regular_polygon_vertices(n, area), cfg)


def _chain_deltas(rng, coords):
    """Split sorted coordinates into two monotone chains of differences."""
    lo, hi = coords[0], coords[-1]
    interior = coords[1:-1]
    mask = rng.random(len(interior)) < 0.5
    chain1 = np.concatenate(([lo], interior[mask], [hi]))
    chain2 = np.concatenate(([lo], interior[~mask], [hi]))
    return np.concatenate([np.diff(chain1), -np.diff(chain2)])


def random_convex_polygon(n, seed, area=1.0):
    """Random convex n-gon rescaled to the requested area; seed-deterministic.

    Uses Valtr's construction: random monotone chains of x and y increments
    are paired and sorted by angle, so exactly n vertices are produced with
    no rejection loop.
    """
    if n < 3:
        raise DomainError(f"need n >= 3 vertices, got {n}")
    rng = np.random.default_rng(seed)
    while True:
        dx = _chain_deltas(rng, np.sort(rng.random(n)))
        dy = rng.permutation(_chain_deltas(rng, np.sort(rng.random(n))))
        order = np.argsort(np.arctan2(dy, dx))
        verts = np.cumsum(np.column_stack([dx[order], dy[order]]), axis=0)
        got_area = shoelace_area(verts)
        if got_area <= 1e-9:
            continue
        # degenerate (collinear) edge directions would merge vertices
        if np.min(np.linalg.norm(np.roll(verts, -1, axis=0) - verts, axis=1)) < 1e-9:
            continue
        verts = verts - verts.mean(axis=0)
        return verts * math.sqrt(area / got_area)


def random_quadrilateral(seed, area=1.0, convex=True):
    """Random simple quadrilateral of the requested area.

    Non-convex samples are admitted when ``convex`` is false. Samples with
    P^2 < 16 A (for which the quadrilateral bound formula is not real) are
    rejected and resampled.
    """
    rng = np.random.default_rng(seed)
    for _ in range(100_000):
        pts = rng.random((4, 2))
        centroid = pts.mean(axis=0)
        order = np.argsort(np.arctan2(pts[:, 1] - centroid[1], pts[:, 0] - centroid[0]))
        verts = pts[order]
        if shoelace_area(verts) <= 0 or not is_simple_polygon(verts):
            continue
        if convex:
            hull = ConvexHull(pts)
            if len(hull.vertices) != 4:
                continue
        verts = verts - verts.mean(axis=0)
        verts = verts * math.sqrt(area / shoelace_area(verts))
        p = polygon_perimeter(verts)
        if p * p < 16.0 * area:
            continue
        return verts
    raise RuntimeError("quadrilateral sampling did not converge")


# ---------------------------------------------------------------------------
# Fourier radial domains
# ---------------------------------------------------------------------------

def fourier_domain(shape, cfg):
    """Unit-area star-shaped domain from a Fourier radial boundary."""
    fine = np.linspace(0.0, _TWO_PI, 4096, endpoint=False)
    if np.any(shape.radius(fine) <= 0.0):
        raise InvalidShapeError("radius function is not positive everywhere")
    m = cfg.n_collocation
    theta = _TWO_PI * np.arange(m) / m
    r = shape.radius(theta)
    dr = shape.radius_derivative(theta)
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    positions = np.column_stack([r * cos_t, r * sin_t])
    tx = dr * cos_t - r * sin_t
    ty = dr * sin_t + r * cos_t
    speed = np.hypot(tx, ty)
    normals = np.column_stack([ty / speed, -tx / speed])
    weights = speed * (_TWO_PI / m)

    fine_r = shape.radius(fine)

    def inside(pts):
        pts = np.asarray(pts, dtype=float)
        ang = np.mod(np.arctan2(pts[:, 1], pts[:, 0]), _TWO_PI)
        rad = np.interp(ang, fine, fine_r, period=_TWO_PI)
        return np.hypot(pts[:, 0], pts[:, 1]) < rad

    fr = shape.radius(fine)
    fdr = shape.radius_derivative(fine)
    perimeter = float(np.mean(np.hypot(fdr, fr)) * _TWO_PI)
    return _finalize(positions, normals, weights, inside, 1.0, perimeter, cfg)


def fit_fourier(points, n_modes):
    """Least-squares Fourier radial fit of a star-shaped boundary trace.

    Points are referred to their centroid; the angular coordinate must be
    monotone along the trace (single-valued radius), otherwise the fit fails.
    """
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2 * n_modes + 1:
        raise FitFailureError("not enough points for the requested mode count")
    centroid = pts.mean(axis=0)
    rel = pts - centroid
    theta = np.arctan2(rel[:, 1], rel[:, 0])
    radius = np.hypot(rel[:, 0], rel[:, 1])
    dtheta = np.diff(np.unwrap(theta))
    if not (np.all(dtheta > 0) or np.all(dtheta < 0)):
        raise FitFailureError("boundary is not star-shaped about its centroid")
    cols = [np.ones_like(theta)]
    for m in range(1, n_modes + 1):
        cols.append(np.cos(m * theta))
    for m in range(1, n_modes + 1):
        cols.append(np.sin(m * theta))
    design = np.column_stack(cols)
    coeffs, *_ = np.linalg.lstsq(design, radius, rcond=None)
    return FourierShape(coeffs[0], coeffs[1 : n_modes + 1], coeffs[n_modes + 1 :])


def _unit_direction(shape, n_modes):
    vec = FourierShape(
        shape.a0,
        tuple(shape.a) + (0.0,) * (n_modes - len(shape.a)),
        tuple(shape.b) + (0.0,) * (n_modes - len(shape.b)),
    ).coefficient_vector()
    return vec / np.linalg.norm(vec)


def interpolate_shapes(disk_coeffs, shape, t):
    """Coefficientwise interpolation between the disk and a target shape.

    Both coefficient vectors are normalised before mixing so the endpoints
    are reproduced exactly; the result keeps unit area by construction.
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"interpolation parameter must be in [0, 1], got {t}")
    m = max(disk_coeffs.n_modes, shape.n_modes)
    v = (1.0 - t) * _unit_direction(disk_coeffs, m) + t * _unit_direction(shape, m)
    return FourierShape(v[0], v[1 : m + 1], v[m + 1 :])


# ---------------------------------------------------------------------------
# JSON records
# ---------------------------------------------------------------------------

def shape_record(shape):
    fine = np.linspace(0.0, _TWO_PI, 4096, endpoint=False)
    r = shape.radius(fine)
    dr = shape.radius_derivative(fine)
    return {
        "kind": "fourier",
        "a0": shape.a0,
        "a": list(shape.a),
        "b": list(shape.b),
        "area": 1.0,
        "perimeter": float(np.mean(np.hypot(dr, r)) * _TWO_PI),
    }


def polygon_record(vertices):
    v = np.asarray(vertices, dtype=float)
    return {
        "kind": "polygon",
        "vertices": v.tolist(),
        "area": shoelace_area(v),
        "perimeter": polygon_perimeter(v),
    }


def shape_from_record(record):
    if record.get("kind") != "fourier":
        raise InvalidShapeError(f"not a Fourier shape record: {record.get('kind')}")
    return FourierShape(record["a0"], record.get("a", ()), record.get("b", ()))
