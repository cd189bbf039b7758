"""Deterministic SVG drawings of decorated Dyck paths, wall fans and broken lines."""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .dyckpath import DyckPath
from .pairs import cascade
from .scattering import (BrokenLine, Realization, negative_wall, positive_wall,
                         realize_geometrically, slope_one_wall)

UNIT = 24
MARGIN = 20


def _num(x) -> str:
    return f"{float(x):.3f}".rstrip("0").rstrip(".")


def _svg(width, height, body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" '
            f'height="{_num(height)}" viewBox="0 0 {_num(width)} {_num(height)}">')
    return "\n".join([head, *body, "</svg>", ""])


def dyck_pair_svg(path: DyckPath, S1=(), S2=(), r: int | None = None, title: str = "") -> str:
    """The path with S1 edges and S2 edges thickened, plus one arc per nu in S2
    to its cascade partner when r is given and r|S2| <= ell."""
    S1, S2 = set(S1), set(S2)
    width = path.ell * UNIT + 2 * MARGIN
    height = path.h * UNIT + 2 * MARGIN + path.ell * UNIT // 2

    def pt(x, y):
        return MARGIN + x * UNIT, height - MARGIN - y * UNIT

    body = []
    if title:
        body.append(f"<title>{escape(title)}</title>")
    for e, (x0, y0), (x1, y1) in zip(path.edges, path.vertices, path.vertices[1:]):
        chosen = (e.index in S1) if e.horizontal else (e.index in S2)
        cls = ("s1" if e.horizontal else "s2") if chosen else "edge"
        colour, stroke = ("#c00", 4) if chosen else ("#000", 1.5)
        (a, b), (c, d) = pt(x0, y0), pt(x1, y1)
        name = f"eta{e.index}" if e.horizontal else f"nu{e.index}"
        body.append(f'<line class="{cls}" id="{name}" x1="{_num(a)}" y1="{_num(b)}" '
                    f'x2="{_num(c)}" y2="{_num(d)}" stroke="{colour}" stroke-width="{stroke}"/>')
    if r and S2 and r * len(S2) <= path.ell:
        cas = cascade(path, S2, r)
        for j in sorted(S2):
            i = cas.partner(j)
            if i is None:
                continue
            e_pos, n_pos = path.eta_positions[i], path.nu_positions[j]
            ex, ey = pt(*path.vertices[e_pos])
            ex += UNIT / 2
            nx, ny = pt(*path.vertices[n_pos])
            ny -= UNIT / 2
            lift = UNIT * (1 + abs(n_pos - e_pos) / 4)
            cx, cy = (ex + nx) / 2, min(ey, ny) - lift
            body.append(f'<path class="arc" d="M {_num(nx)} {_num(ny)} Q {_num(cx)} {_num(cy)} '
                        f'{_num(ex)} {_num(ey)}" fill="none" stroke="#06c" stroke-width="2"/>')
    return _svg(width, height, body)


def fan_walls(r: int, depth: int = 6):
    walls = [negative_wall(r, k) for k in range(depth)]
    walls += [positive_wall(r, k) for k in range(2, depth)]
    if r == 2:
        walls.append(slope_one_wall())
    return walls


class _Frame:
    """Maps the square [-R, R]^2 onto the canvas."""

    def __init__(self, radius: Fraction, size: int = 480):
        self.radius, self.size = Fraction(radius), size

    def __call__(self, p):
        s = self.size / 2
        return (s + float(p[0] / self.radius) * s * 0.9,
                s - float(p[1] / self.radius) * s * 0.9)


def _wall_lines(frame: _Frame, walls) -> list[str]:
    out = []
    for wall in walls:
        dx, dy = wall.direction
        scale = frame.radius / max(abs(dx), abs(dy))
        far = (dx * scale, dy * scale)
        start = (-far[0], -far[1]) if wall.is_full_line else (0, 0)
        # rays point away from the direction vector: R<=0 times it
        end = far if wall.is_full_line else (-far[0], -far[1])
        (a, b), (c, d) = frame(start), frame(end)
        out.append(f'<line class="wall" data-wall="{escape(wall.label)}" x1="{_num(a)}" '
                   f'y1="{_num(b)}" x2="{_num(c)}" y2="{_num(d)}" stroke="#555" stroke-width="1"/>')
    return out


def diagram_svg(r: int, depth: int = 6, radius=Fraction(1, 2)) -> str:
    frame = _Frame(radius)
    return _svg(frame.size, frame.size, _wall_lines(frame, fan_walls(r, depth)))


def line_svg(line: BrokenLine, Q=(Fraction(1, 4), Fraction(3, 8)), depth: int = 6) -> str:
    """The wall fan with the broken line traced back from Q; raises ValueError
    if the line is not realized at Q."""
    result = realize_geometrically(line, Q)
    if not isinstance(result, Realization):
        raise ValueError(f"line not realized at Q: {result.kind.value} {result.detail}")
    points = list(result.points)
    radius = max(max(abs(x), abs(y)) for x, y in points) * Fraction(3, 2)
    frame = _Frame(radius)
    # the initial segment runs off to infinity along the initial exponent
    x0, y0 = line.exponents[0]
    tail = points[-1]
    stretch = radius * 2 / max(abs(x0), abs(y0))
    points.append((tail[0] + stretch * x0, tail[1] + stretch * y0))
    body = _wall_lines(frame, fan_walls(line.r, depth))
    coords = " ".join(f"{_num(a)},{_num(b)}" for a, b in map(frame, points))
    body.append(f'<polyline class="broken-line" points="{coords}" fill="none" '
                f'stroke="#00c" stroke-width="2"/>')
    qx, qy = frame(points[0])
    body.append(f'<circle class="endpoint" cx="{_num(qx)}" cy="{_num(qy)}" r="4" fill="#000"/>')
    for p in points[1:-1]:
        cx, cy = frame(p)
        body.append(f'<circle class="bend" cx="{_num(cx)}" cy="{_num(cy)}" r="4" fill="#00c"/>')
    return _svg(frame.size, frame.size, body)
