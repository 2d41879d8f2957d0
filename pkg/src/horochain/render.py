"""Deterministic SVG drawings of horocycle chains.

Chains are first turned into a flat list of :class:`Shape` records in model
coordinates ``(u, v)``; the SVG writer then fits them into the canvas.  Both
planar chains and plane sections of multidimensional chains go through the
same writer, so the two pictures can be compared shape by shape.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, replace
from decimal import Decimal
from typing import Optional, Sequence

from .chain2d import ChainLink
from .clifford import CycleND, NDChain
from .cycle2d import Cycle2, reflect
from .errors import DegenerateView, ParseError
from .multivector import dot, lift, norm2

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class RenderConfig:
    width: int = 800
    height: int = 600
    viewport: Optional[tuple] = None  # (umin, umax, vmin, vmax)
    margin: float = 0.05
    stroke_width: float = 1.0
    axis_width: float = 1.0
    min_radius_px: float = 0.5
    dot_radius_px: float = 1.5
    horocycle_colors: tuple = ("#1f77b4", "#d62728")
    connecting_color: str = "#2ca02c"
    axis_color: str = "#000000"
    mirror_dash: str = "4 3"
    background: str = "#ffffff"


_CONFIG_KEYS = {
    "width": int,
    "height": int,
    "margin": float,
    "stroke_width": float,
    "axis_width": float,
    "min_radius_px": float,
    "dot_radius_px": float,
    "connecting_color": str,
    "axis_color": str,
    "mirror_dash": str,
    "background": str,
}


def parse_config(text: str) -> RenderConfig:
    """``key = value`` lines; ``viewport = umin umax vmin vmax``.

    Whole-line comments start with ``#`` or ``;``.  Inline comments are not
    supported because colour values themselves start with ``#``.
    """
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string("[render]\n" + text)
    except configparser.Error as exc:
        raise ParseError(f"bad config: {exc}") from exc
    if cp.sections() != ["render"]:
        raise ParseError("config files take plain key = value lines, without sections")
    cfg = RenderConfig()
    updates = {}
    colors = list(cfg.horocycle_colors)
    for key, raw in cp["render"].items():
        try:
            if key in _CONFIG_KEYS:
                updates[key] = _CONFIG_KEYS[key](raw)
            elif key == "viewport":
                vals = tuple(float(t) for t in raw.split())
                if len(vals) != 4 or vals[0] >= vals[1] or vals[2] >= vals[3]:
                    raise ValueError("viewport needs umin < umax and vmin < vmax")
                updates["viewport"] = vals
            elif key == "horocycle_color_a":
                colors[0] = raw
            elif key == "horocycle_color_b":
                colors[1] = raw
            else:
                raise ParseError(f"unknown config key {key!r}")
        except ValueError as exc:
            raise ParseError(f"bad value for {key}: {exc}") from exc
    updates["horocycle_colors"] = tuple(colors)
    cfg = replace(cfg, **updates)
    if cfg.width <= 0 or cfg.height <= 0:
        raise ParseError("width and height must be positive")
    return cfg


def load_config(path) -> RenderConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    return parse_config(text)


# ---------------------------------------------------------------------------
# shapes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Shape:
    """A circle ``(cu, cv, r)`` or a line ``a u + b v = c`` in model coordinates."""

    kind: str  # "circle" | "line"
    role: str  # "horocycle" | "connecting" | "mirror"
    link: int
    params: tuple
    parity: int = 0


def _circle_or_line(k, lu, lv, m):
    """Shape parameters of ``k(u^2+v^2) - 2 lu u - 2 lv v + m = 0``."""
    k, lu, lv, m = float(k), float(lu), float(lv), float(m)
    if k == 0:
        return "line", (2 * lu, 2 * lv, m)
    r2 = (lu * lu + lv * lv - k * m) / (k * k)
    return "circle", (lu / k, lv / k, math.sqrt(max(r2, 0.0)))


def _upper(kind, params):
    """Mirror into the closed upper half-plane."""
    if kind == "circle":
        cu, cv, r = params
        return kind, (cu, abs(cv), r)
    a, b, c = params
    if a == 0 and b != 0 and c / b < 0:
        return kind, (a, -b, c)
    return kind, params


def _cycle2_shape(c: Cycle2):
    return _circle_or_line(c.k, c.l, c.n, c.m)


def _connecting_pair(conn, mirror):
    """Order so the solid cycle is the one with centre above the axis."""
    if mirror is None:
        return conn, None
    kind, p = conn
    if kind == "circle" and p[1] < 0:
        return mirror, conn
    return conn, mirror


def _link_shapes(index, prev, curr, conn, mirror, first):
    out = []
    if first and prev is not None:
        kind, p = _upper(*prev)
        out.append(Shape(kind, "horocycle", index, p, (index - 1) % 2))
    kind, p = _upper(*curr)
    out.append(Shape(kind, "horocycle", index, p, index % 2))
    solid, dashed = _connecting_pair(conn, mirror)
    out.append(Shape(solid[0], "connecting", index, solid[1]))
    if dashed is not None:
        out.append(Shape(dashed[0], "mirror", index, dashed[1]))
    return out


def chain_shapes(chain: Sequence[ChainLink]) -> list[Shape]:
    """Shapes of a planar chain; each horocycle appears once."""
    out = []
    for i, lk in enumerate(chain):
        out += _link_shapes(
            lk.index,
            _cycle2_shape(lk.horo_prev),
            _cycle2_shape(lk.horo_curr),
            _cycle2_shape(lk.connecting),
            _cycle2_shape(lk.mirror_connecting) if lk.mirror_connecting is not None else None,
            i == 0,
        )
    return out


@dataclass(frozen=True)
class SectionPlane:
    """The plane through ``origin`` spanned by the unit vector ``w`` of R^n and ``e_{n+1}``."""

    origin: tuple
    w: tuple

    def coords(self, x) -> tuple:
        """``(s, h)`` of a point of R^{n+1} given by its vector components."""
        n = len(self.w)
        return sum(a * b for a, b in zip(x[:n], self.w)), x[n]

    def section(self, c: CycleND):
        """Intersection of ``c`` with the plane as shape parameters, or ``None``."""
        n = len(self.w)
        lv = [float(t) for t in c.l.vector_components()]
        k, m = float(c.k), float(c.m)
        ow = sum(a * b for a, b in zip(self.origin, self.w))
        if k == 0:
            lw = sum(a * b for a, b in zip(lv[:n], self.w))
            lo = sum(a * b for a, b in zip(lv[:n], self.origin))
            a, b, cc = 2 * lw, 2 * lv[n], m - 2 * lo
            if a == 0 and b == 0:
                return None
            return "line", (a, b, cc)
        center = [t / k for t in lv]
        r2 = (sum(t * t for t in lv) - k * m) / (k * k)
        rel = [center[i] - self.origin[i] for i in range(n)]
        along = sum(a * b for a, b in zip(rel, self.w))
        off2 = sum((rel[i] - along * self.w[i]) ** 2 for i in range(n))
        rr = r2 - off2
        if rr < 0:
            return None
        return "circle", (along + ow, center[n], math.sqrt(rr))


def _canonical_direction(v):
    for t in v:
        if t != 0:
            return v if t > 0 else [-x for x in v]
    return v


def section_plane(chain: NDChain, link: Optional[int] = None) -> SectionPlane:
    """Plane through the touch points of one link (the first usable link by default)."""
    links = list(chain)
    cand = links if link is None else [lk for lk in links if lk.index == link]
    if link is not None and not cand:
        raise DegenerateView(f"no link {link} in the chain")
    for lk in cand:
        if lk.touch_prev is None:
            if link is None:
                continue
            raise DegenerateView(f"link {lk.index} has its first touch point at infinity")
        p = [float(t) for t in lk.touch_prev.vector_components()]
        q = [float(t) for t in lk.touch_curr.vector_components()]
        d = [b - a for a, b in zip(p, q)]
        norm = math.sqrt(sum(t * t for t in d))
        if norm == 0:
            raise DegenerateView(f"link {lk.index}: consecutive touch points coincide")
        w = _canonical_direction([t / norm for t in d])
        along = sum(a * b for a, b in zip(p, w))
        origin = tuple(a - along * b for a, b in zip(p, w))
        return SectionPlane(origin, tuple(w))
    raise DegenerateView("no link with two finite touch points")


def nd_section_shapes(chain: NDChain, link: Optional[int] = None) -> list[Shape]:
    plane = section_plane(chain, link)
    out = []
    for i, lk in enumerate(chain):
        prev = plane.section(lk.horo_prev) if lk.horo_prev is not None else None
        curr = plane.section(lk.horo_curr)
        conn = plane.section(lk.connecting)
        mirror = plane.section(lk.mirror_connecting) if lk.mirror_connecting is not None else None
        if curr is None or conn is None:
            continue
        out += _link_shapes(lk.index, prev, curr, conn, mirror, i == 0)
    return out


# ---------------------------------------------------------------------------
# SVG writer
# ---------------------------------------------------------------------------


def fmt(x: float) -> str:
    """Six significant digits in fixed notation, trailing zeros removed."""
    x = float(x)
    if x == 0 or not math.isfinite(x):
        return "0"
    s = format(Decimal(f"{x:.5e}"), "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _bbox(shapes):
    us, vs = [0.0], [0.0]  # the real axis is always drawn
    for s in shapes:
        if s.kind == "circle":
            cu, cv, r = s.params
            us += [cu - r, cu + r]
            vs += [cv - r, cv + r]
        else:
            a, b, c = s.params
            if a == 0 and b != 0:
                vs.append(c / b)
            elif b == 0 and a != 0:
                us.append(c / a)
    return min(us), max(us), min(vs), max(vs)


def _viewport(shapes, cfg: RenderConfig):
    if cfg.viewport is not None:
        return cfg.viewport
    u0, u1, v0, v1 = _bbox(shapes)
    du, dv = u1 - u0, v1 - v0
    if du == 0:
        du = dv or 1.0
        u0, u1 = u0 - du / 2, u1 + du / 2
    if dv == 0:
        dv = du
        v0, v1 = v0 - dv / 2, v1 + dv / 2
    mu, mv = cfg.margin * du, cfg.margin * dv
    return u0 - mu, u1 + mu, v0 - mv, v1 + mv


@dataclass
class _Transform:
    scale: float
    ox: float
    oy: float
    vp: tuple

    def x(self, u):
        return self.ox + (u - self.vp[0]) * self.scale

    def y(self, v):
        return self.oy + (self.vp[3] - v) * self.scale


def _transform(vp, cfg: RenderConfig) -> _Transform:
    u0, u1, v0, v1 = vp
    s = min(cfg.width / (u1 - u0), cfg.height / (v1 - v0))
    ox = (cfg.width - (u1 - u0) * s) / 2
    oy = (cfg.height - (v1 - v0) * s) / 2
    return _Transform(s, ox, oy, vp)


def _clip_line(a, b, c, vp):
    """Segment of ``a u + b v = c`` inside the viewport rectangle, or ``None``."""
    u0, u1, v0, v1 = vp
    pts = []
    if b != 0:
        for u in (u0, u1):
            v = (c - a * u) / b
            if v0 <= v <= v1:
                pts.append((u, v))
    if a != 0:
        for v in (v0, v1):
            u = (c - b * v) / a
            if u0 <= u <= u1:
                pts.append((u, v))
    pts = sorted(set(pts))
    if len(pts) < 2:
        return None
    return pts[0], pts[-1]


def _stroke(shape: Shape, cfg: RenderConfig) -> str:
    if shape.role == "horocycle":
        color = cfg.horocycle_colors[shape.parity % 2]
    else:
        color = cfg.connecting_color
    attrs = f'stroke="{color}" stroke-width="{fmt(cfg.stroke_width)}" fill="none"'
    if shape.role == "mirror":
        attrs += f' stroke-dasharray="{cfg.mirror_dash}"'
    return attrs, color


def render_shapes_svg(shapes: Sequence[Shape], cfg: RenderConfig = RenderConfig(), title: str = "") -> bytes:
    vp = _viewport(shapes, cfg)
    T = _transform(vp, cfg)
    W, H = cfg.width, cfg.height
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="{SVG_NS}" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
    ]
    if title:
        lines.append(f"<title>{_escape(title)}</title>")
    lines.append(f'<rect x="0" y="0" width="{W}" height="{H}" fill="{cfg.background}"/>')
    axis = _clip_line(0.0, 1.0, 0.0, vp)
    if axis is not None:
        (ua, va), (ub, vb) = axis
        lines.append(
            f'<line class="axis" x1="{fmt(T.x(ua))}" y1="{fmt(T.y(va))}" x2="{fmt(T.x(ub))}" '
            f'y2="{fmt(T.y(vb))}" stroke="{cfg.axis_color}" stroke-width="{fmt(cfg.axis_width)}"/>'
        )
    for s in shapes:
        attrs, color = _stroke(s, cfg)
        tag = f'class="{s.role}" data-link="{s.link}"'
        if s.kind == "circle":
            cu, cv, r = s.params
            rp = r * T.scale
            if rp < cfg.min_radius_px:
                lines.append(
                    f'<circle class="{s.role} dot" data-link="{s.link}" cx="{fmt(T.x(cu))}" '
                    f'cy="{fmt(T.y(cv))}" r="{fmt(cfg.dot_radius_px)}" fill="{color}" stroke="none"/>'
                )
            else:
                lines.append(
                    f'<circle {tag} cx="{fmt(T.x(cu))}" cy="{fmt(T.y(cv))}" r="{fmt(rp)}" {attrs}/>'
                )
        else:
            seg = _clip_line(*s.params, vp)
            if seg is None:
                continue
            (ua, va), (ub, vb) = seg
            lines.append(
                f'<line {tag} x1="{fmt(T.x(ua))}" y1="{fmt(T.y(va))}" x2="{fmt(T.x(ub))}" '
                f'y2="{fmt(T.y(vb))}" {attrs}/>'
            )
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_chain_svg(chain: Sequence[ChainLink], cfg: RenderConfig = RenderConfig(), title: str = "") -> bytes:
    if not chain:
        raise ValueError("cannot render an empty chain")
    return render_shapes_svg(chain_shapes(chain), cfg, title)


def render_section_plane(chain: NDChain, cfg: RenderConfig = RenderConfig(),
                         link: Optional[int] = None, title: str = "") -> bytes:
    if not len(chain):
        raise ValueError("cannot render an empty chain")
    return render_shapes_svg(nd_section_shapes(chain, link), cfg, title)
