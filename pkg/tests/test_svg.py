import re
import xml.etree.ElementTree as ET

import pytest

from cramerv.svg import render_histogram_svg

NS = "{http://www.w3.org/2000/svg}"


def bars(svg):
    root = ET.fromstring(svg)
    return [r for r in root.iter(NS + "rect") if r.get("class") == "bar"]


def test_heights_proportional():
    svg = render_histogram_svg([(0, 1, 1), (1, 2, 2)], 400, 300, "t")
    h = [float(b.get("height")) for b in bars(svg)]
    assert len(h) == 2
    assert h[1] == pytest.approx(2 * h[0], abs=0.01)


def test_all_zero():
    svg = render_histogram_svg([(0, 1, 0), (1, 2, 0)])
    assert [float(b.get("height")) for b in bars(svg)] == [0.0, 0.0]
    assert len(ET.fromstring(svg).findall(NS + "line")) > 2


def test_ticks_at_edges():
    svg = render_histogram_svg([(0, 0.5, 3), (0.5, 1, 1)])
    labels = [t.text for t in ET.fromstring(svg).iter(NS + "text")]
    assert {"0", "0.5", "1"} <= set(labels)


def test_deterministic():
    b = [(0, 0.1, 4), (0.1, 0.2, 7)]
    assert render_histogram_svg(b, title="x") == render_histogram_svg(b, title="x")


def test_title_escaped():
    svg = render_histogram_svg([(0, 1, 1)], title="a < b & c")
    assert "a &lt; b &amp; c" in svg
    ET.fromstring(svg)


@pytest.mark.parametrize("w, h", [(0, 100), (100, 0), (20, 20)])
def test_bad_canvas(w, h):
    with pytest.raises(ValueError):
        render_histogram_svg([(0, 1, 1)], w, h)


def test_no_bins():
    with pytest.raises(ValueError):
        render_histogram_svg([])
