from xml.etree import ElementTree

import pytest

from convbodies import fixture
from convbodies.geom import ConvexBody, GeometryError, Line, pt
from convbodies.render import render_svg


def parse(svg: str):
    return ElementTree.fromstring(svg.split("?>", 1)[1])


def tags(root, name):
    return [e for e in root.iter() if e.tag.endswith(name)]


def test_every_body_drawn_and_listed():
    fam = fixture("tri3") + [ConvexBody("p<&>", (pt(9, 9),)), ConvexBody("s", (pt(6, 0), pt(7, 2)))]
    root = parse(render_svg(fam, title="mixed"))
    assert len(tags(root, "circle")) == 1
    assert len(tags(root, "polyline")) == 1
    # three triangles plus the dashed hull
    assert len(tags(root, "polygon")) == 4
    legend = tags(root, "text")[-1].text
    assert legend == "bodies: 1, 2, 3, p<&>, s"


def test_certificate_line_and_caption():
    root = parse(render_svg(fixture("bar"), line=Line.from_normal((1, 0), 2), ordering=["3", "1", "2"]))
    assert len(tags(root, "line")) == 1
    texts = [t.text for t in tags(root, "text")]
    assert "3 (#1)" in texts
    assert any("hull boundary word (ccw): 1 2 3 2" == t for t in texts)


def test_shared_boundary_is_reported_not_raised():
    a = ConvexBody("A", (pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)))
    b = ConvexBody("B", (pt(1, 0), pt(2, 0), pt(2, 1), pt(1, 1)))
    texts = [t.text for t in tags(parse(render_svg([a, b])), "text")]
    assert any(t.startswith("hull boundary word unavailable") for t in texts)


def test_empty_family():
    with pytest.raises(GeometryError):
        render_svg([])
