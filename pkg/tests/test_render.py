import math
import re
from fractions import Fraction as F

import pytest

from horochain.cf import ContinuedFraction, coefficient_source
from horochain.chain2d import MIXED, ORTHOGONAL, TANGENT, build_chain
from horochain.clifford import build_nd_chain, nd_tangency_residual
from horochain.cycle2d import Cycle2, center_radius
from horochain.errors import DegenerateView, ParseError
from horochain.render import (
    RenderConfig,
    Shape,
    _transform,
    _viewport,
    chain_shapes,
    fmt,
    nd_section_shapes,
    parse_config,
    render_chain_svg,
    render_section_plane,
    render_shapes_svg,
    section_plane,
)

CIRCLE = re.compile(r'<circle class="([a-z ]+)" data-link="(\d+)" cx="([^"]+)" cy="([^"]+)" r="([^"]+)"')


def circles(svg: bytes):
    return [(cls, int(link), float(x), float(y), float(r))
            for cls, link, x, y, r in CIRCLE.findall(svg.decode())]


@pytest.mark.parametrize("x,text", [
    (0, "0"), (1, "1"), (-2.5, "-2.5"), (1 / 3, "0.333333"), (123456.7, "123457"),
    (1e-7, "0.0000001"), (2.5e7, "25000000"), (-0.0, "0"),
])
def test_fmt(x, text):
    assert fmt(x) == text


def test_parse_config():
    cfg = parse_config("# size in px\nwidth = 400\nviewport = 0 1 -1 1\nhorocycle_color_b = #000\n")
    assert cfg.width == 400 and cfg.viewport == (0, 1, -1, 1)
    assert cfg.horocycle_colors == ("#1f77b4", "#000")
    assert parse_config("") == RenderConfig()


@pytest.mark.parametrize("text", ["colour = red", "width = wide", "viewport = 1 0 0 1", "width = 0", "[x]\n"])
def test_parse_config_errors(text):
    with pytest.raises(ParseError):
        parse_config(text)


def test_pi_third_horocycle_is_a_dot():
    chain = build_chain(coefficient_source("pi", 4), TANGENT, 4)
    cfg = RenderConfig(viewport=(3, 3.2, 0, 0.15))
    T = _transform(cfg.viewport, cfg)
    assert T.scale == pytest.approx(800 / 0.2)
    r3 = 1 / (2 * 106 ** 2)
    assert r3 * T.scale < 0.5
    found = [c for c in circles(render_chain_svg(chain, cfg)) if c[0].startswith("horocycle")]
    by_link = {}
    for cls, link, *_ in found:
        by_link.setdefault(link, []).append(cls)
    assert "horocycle dot" in by_link[3]
    assert by_link[1][0] == "horocycle"  # radius 1/2: plainly visible


def test_unit_circle_with_viewport():
    cfg = RenderConfig(width=200, height=200, viewport=(-2, 2, -2, 2))
    svg = render_shapes_svg([Shape("circle", "connecting", 1, (0.0, 0.0, 1.0))], cfg)
    (_, _, x, y, r), = circles(svg)
    assert (x, y, r) == (100, 100, 50)
    assert b'class="axis"' in svg


def test_auto_fit_margin():
    cfg = RenderConfig(width=200, height=200)
    shapes = [Shape("circle", "connecting", 1, (0.0, 1.0, 1.0))]
    vp = _viewport(shapes, cfg)
    assert vp == pytest.approx((-1.1, 1.1, -0.1, 2.1))


def test_determinism():
    for arr in (TANGENT, ORTHOGONAL, MIXED):
        chain = build_chain(coefficient_source("e", 6), arr, 6)
        assert render_chain_svg(chain) == render_chain_svg(build_chain(coefficient_source("e", 6), arr, 6))


def test_empty_chain_rejected():
    with pytest.raises(ValueError):
        render_chain_svg([])


def test_e_chain_contents():
    chain = build_chain(coefficient_source("e", 5), TANGENT, 5)
    shapes = chain_shapes(chain)
    horos = [s for s in shapes if s.role == "horocycle"]
    assert len(horos) == 6  # the seed horocycle plus one per link
    assert sum(s.role == "connecting" for s in shapes) == 5
    assert all(s.params[1] >= 0 for s in horos if s.kind == "circle")


def test_mixed_has_dashed_mirror():
    chain = build_chain(coefficient_source("pi", 4), MIXED, 4)
    svg = render_chain_svg(chain).decode()
    assert svg.count('class="mirror"') + svg.count('class="mirror dot"') == 4
    assert 'stroke-dasharray="4 3"' in svg
    for s in chain_shapes(chain):
        if s.role == "connecting" and s.kind == "circle":
            assert s.params[1] > 0


def test_drawn_circles_match_cycles():
    chain = build_chain(coefficient_source("e", 6), ORTHOGONAL, 6)
    cfg = RenderConfig()
    shapes = chain_shapes(chain)
    T = _transform(_viewport(shapes, cfg), cfg)
    cycles = {("connecting", lk.index): lk.connecting for lk in chain}
    for cls, link, x, y, r in circles(render_chain_svg(chain, cfg)):
        if cls != "connecting":
            continue
        circ = center_radius(cycles[("connecting", link)])
        (cu, cv), rad = circ.center, circ.radius
        assert abs(x - T.x(float(cu))) <= 0.5
        assert abs(y - T.y(abs(float(cv)))) <= 0.5
        assert abs(r - float(rad) * T.scale) <= 0.5


def test_lines_are_clipped_to_canvas():
    cfg = RenderConfig(width=100, height=100, viewport=(0, 1, 0, 1))
    svg = render_shapes_svg([Shape("line", "connecting", 1, (1.0, 0.0, 0.5))], cfg).decode()
    m = re.search(r'<line class="connecting" data-link="1" x1="([^"]+)" y1="([^"]+)" x2="([^"]+)" y2="([^"]+)"', svg)
    assert [float(t) for t in m.groups()] == [50, 100, 50, 0]
    outside = render_shapes_svg([Shape("line", "connecting", 1, (1.0, 0.0, 5.0))], cfg).decode()
    assert 'class="connecting"' not in outside


def _shape_close(a, b, tol):
    return a.kind == b.kind and a.role == b.role and all(abs(x - y) <= tol for x, y in zip(a.params, b.params))


@pytest.mark.parametrize("arr", [TANGENT, ORTHOGONAL, MIXED])
def test_cl1_section_matches_planar_chain(arr):
    bs = [1, 2, 3, 4, 5]
    nd = build_nd_chain([[F(b)] for b in bs], arr)
    planar = build_chain(ContinuedFraction.from_pairs([(-1, b) for b in bs]), arr, len(bs))
    a, b = nd_section_shapes(nd), chain_shapes(planar)
    assert len(a) == len(b)
    for s, t in zip(a, b):
        assert _shape_close(s, t, 1e-9), (s, t)


def test_cl2_section_horocycles_tangent():
    bs = [[F(j), F(1)] for j in range(1, 5)]
    chain = build_nd_chain(bs, TANGENT)
    for lk in chain:
        if lk.horo_prev is not None:
            assert nd_tangency_residual(lk.horo_prev, lk.horo_curr) == 0
        plane = section_plane(chain, lk.index) if lk.touch_prev is not None else None
        if plane is None:
            continue
        (k1, p1), (k2, p2) = plane.section(lk.horo_prev), plane.section(lk.horo_curr)
        assert k1 == k2 == "circle"
        # in-plane external tangency: centre distance equals the sum of radii
        d = math.hypot(p1[0] - p2[0], p1[1] - p2[1])
        assert d == pytest.approx(p1[2] + p2[2], abs=1e-9)


def test_section_plane_errors():
    chain = build_nd_chain([[F(1), F(0)]], TANGENT)
    with pytest.raises(DegenerateView):
        section_plane(chain, link=7)
    assert section_plane(build_nd_chain([[F(-1), F(1)]], TANGENT)).w[0] > 0


def test_coincident_touch_points():
    from horochain.clifford import NDChain, NDLink
    lk = build_nd_chain([[F(2)]], TANGENT).links[0]
    bad = NDChain(1, TANGENT, (NDLink(1, lk.matrix, lk.horo_prev, lk.horo_curr, lk.connecting, None,
                                      lk.touch_curr, lk.touch_curr),))
    with pytest.raises(DegenerateView):
        render_section_plane(bad)


def test_single_link_section():
    chain = build_nd_chain([[F(2), F(1)]], TANGENT)
    shapes = nd_section_shapes(chain)
    assert [s.role for s in shapes] == ["horocycle", "horocycle", "connecting"]
    svg = render_section_plane(chain)
    assert svg == render_section_plane(chain)
