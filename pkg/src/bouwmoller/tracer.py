"""Linear trajectories and their cutting sequences on the polygon chain."""

import math

EPS_GEO = 1e-9


class VertexHit(Exception):
    """Trajectory passed within EPS_GEO of a polygon vertex."""


class NotCoAdjacent(ValueError):
    """The two sides are not adjacent in the same row of any transition diagram."""


class Crossing:
    """One side crossing: label, polygon left behind, hit point, ray parameter."""

    def __init__(self, label, polygon, point, t):
        self.label = label
        self.polygon = polygon
        self.point = point
        self.t = t

    def as_dict(self):
        return {"label": self.label, "polygon": self.polygon,
                "point": [self.point[0], self.point[1]], "t": self.t}


class CuttingWord:
    """Cutting sequence of one traced trajectory window."""

    def __init__(self, labels, crossings, direction, start):
        self.labels = labels
        self.crossings = crossings
        self.direction = direction
        self.start = start

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)


def sector_of(direction, n, tol=1e-12):
    """Sector index in 0..2n-1 for a direction angle, and a boundary flag.

    Directions within tol of a sector boundary are assigned the smaller of
    the two adjacent indices.
    """
    step = math.pi / n
    t = direction % (2 * math.pi)
    q = t / step
    r = round(q)
    if abs(t - r * step) < tol:
        return (0 if r % (2 * n) == 0 else r - 1), True
    return int(math.floor(q)) % (2 * n), False


def _exit(poly, p, d, skip=-1):
    """Exit edge, ray parameter and hit point leaving poly from p along d."""
    best = None
    for i in range(2 * poly.n):
        if i == skip or poly.is_degenerate(i):
            continue
        (ax, ay), (bx, by) = poly.edge(i)
        ex, ey = bx - ax, by - ay
        den = d[0] * ey - d[1] * ex
        if abs(den) < 1e-15:
            continue
        t = ((ax - p[0]) * ey - (ay - p[1]) * ex) / den
        s = ((ax - p[0]) * d[1] - (ay - p[1]) * d[0]) / den
        if t > EPS_GEO * 1e-3 and -1e-9 <= s <= 1 + 1e-9 and (best is None or t < best[1]):
            best = (i, t, s)
    if best is None:
        raise VertexHit("no exit edge (degenerate or boundary-parallel ray)")
    i, t, s = best
    a, b = poly.edge(i)
    q = (p[0] + t * d[0], p[1] + t * d[1])
    if (math.hypot(q[0] - a[0], q[1] - a[1]) < EPS_GEO
            or math.hypot(q[0] - b[0], q[1] - b[1]) < EPS_GEO):
        raise VertexHit(f"hit vertex of edge {i} at {q}")
    return i, t, q


def trace(surf, start, direction, max_crossings):
    """Cutting sequence of the trajectory from start in the given direction.

    start is a pair (polygon index, point).  Raises VertexHit if the
    trajectory passes within EPS_GEO of a vertex; the caller may perturb
    the start and retry.
    """
    k, p = start
    d = (math.cos(direction), math.sin(direction))
    labels, crossings = [], []
    t_acc = 0.0
    entry = -1
    for _ in range(max_crossings):
        e, t, q = _exit(surf.polygons[k], p, d, skip=entry)
        t_acc += t
        label = surf.seat_label[(k, e)]
        labels.append(label)
        crossings.append(Crossing(label, k, q, t_acc))
        (k, entry), shift = surf.glue(k, e)
        p = (q[0] + shift[0], q[1] + shift[1])
    return CuttingWord(labels, crossings, direction, start)


def start_through(surf, label, direction):
    """Start (polygon, point) just behind the side so the first crossing is it."""
    d = (math.cos(direction), math.sin(direction))
    for k, e in surf.seats(label):
        vx, vy = surf.polygons[k].edge_vector(e)
        if d[0] * vy - d[1] * vx > 1e-12:  # d exits through this seat
            mx, my = surf.polygons[k].edge_midpoint(e)
            back = 1e-7
            return k, (mx - back * d[0], my - back * d[1])
    raise VertexHit(f"direction {direction} is parallel to side {label}")


def realize_periodic(m, n, n1, n2):
    """Periodic direction and start whose cutting sequence is (n1 n2)-repeating.

    The pair must sit in adjacent same-row slots of some transition diagram
    T_i; the trajectory follows the core of the cylinder through their
    shared Hooper node.  Raises NotCoAdjacent otherwise.
    """
    from . import diagrams
    from .surface import build_surface

    surf = build_surface(m, n)
    if surf.row(n1) != surf.row(n2):
        raise NotCoAdjacent(f"sides {n1}, {n2} lie in different rows")
    found = None
    for i in range(n):
        perm = diagrams.sector_permutation(m, n, i)
        u1, u2 = perm[n1], perm[n2]
        r = surf.row(u1)
        grid_row = diagrams.t0_grid(m, n)[r - 1]
        if abs(grid_row.index(u1) - grid_row.index(u2)) == 1:
            found = (i, u1, u2, r, grid_row)
            break
    if found is None:
        raise NotCoAdjacent(f"sides {n1}, {n2} are nowhere adjacent in a row")
    i, u1, u2, r, grid_row = found
    col = max(grid_row.index(u1), grid_row.index(u2))  # shared node (r, col)
    white = (r + col) % 2 == 0
    # white nodes carry horizontal cylinders, black ones pi/n ones; for
    # i > 0 the reflection bringing sector i to the standard one swaps the
    # two boundary directions.
    base = 0.0 if white else math.pi / n
    theta = base if i == 0 else (i + 1) * math.pi / n - base
    d = (math.cos(theta), math.sin(theta))
    # start just behind whichever of the two sides the direction crosses
    # transversally; the core of the cylinder through their shared node
    # then alternates between them.
    period = 40
    for trial in range(12):
        frac = 0.37 + 0.05 * trial
        for label in (n1, n2):
            for k, e in surf.seats(label):
                a, b = surf.polygons[k].edge(e)
                vx, vy = b[0] - a[0], b[1] - a[1]
                if d[0] * vy - d[1] * vx <= 1e-9:  # d does not exit here
                    continue
                pt = (a[0] + frac * (b[0] - a[0]), a[1] + frac * (b[1] - a[1]))
                back = 1e-7
                start = (k, (pt[0] - back * d[0], pt[1] - back * d[1]))
                try:
                    word = trace(surf, start, theta, period)
                except VertexHit:
                    continue
                return theta, start, word
    raise VertexHit(f"no vertex-free core trajectory found for ({n1}, {n2})")
