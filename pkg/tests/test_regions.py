"""Tilings of dented half hexagons and the bijection to path families."""

import itertools
import json
import pathlib

import pytest

from dentedhex.exactalg import RF_X, RF_Y, substitute
from dentedhex.lgv import (determinant, enumerate_families, family_gf_brute,
                           family_weight, lgv_matrix_half, quarter_endpoints)
from dentedhex.paths import WeightMode
from dentedhex.regions import (Orientation, Region, RegionError, RegionKind,
                               Tiling, enumerate_tilings, mirror,
                               paths_from_tiling, region_to_endpoints,
                               render_svg, tiling_gf, tiling_weight)

DATA = pathlib.Path(__file__).parent / "data"


def _dent_patterns(h):
    for rd in itertools.chain.from_iterable(
            itertools.combinations(range(1, h + 1), k) for k in range(h + 1)):
        ld = tuple(r for r in range(1, h + 1) if r not in rd)
        yield ld, rd


def test_region_validation():
    with pytest.raises(RegionError):
        Region(RegionKind.HALF_HEXAGON, 0, 1)
    with pytest.raises(RegionError):
        Region(RegionKind.HALF_HEXAGON, 2, 2, left_dents=(2, 1))
    with pytest.raises(RegionError):
        Region(RegionKind.HALF_HEXAGON, 2, 2, left_dents=(1,))  # count != height
    with pytest.raises(RegionError):
        Region(RegionKind.QUARTER_HEXAGON, 2, 2, left_dents=(1,),
               right_dents=(2,))


def test_json_roundtrip():
    reg = Region(RegionKind.HALF_HEXAGON, 3, 2, left_dents=(1,),
                 right_dents=(2,))
    assert Region.from_json(json.loads(json.dumps(reg.to_json()))) == reg


def test_tiling_gf_matches_determinant():
    for w in (1, 2, 3):
        for h in (1, 2, 3):
            for ld, rd in _dent_patterns(h):
                reg = Region(RegionKind.HALF_HEXAGON, w, h,
                             left_dents=ld, right_dents=rd)
                ep = region_to_endpoints(reg)
                if ep.count:
                    det = determinant(lgv_matrix_half(
                        [p.x for p in ep.starts], [p.x for p in ep.ends]))
                else:
                    det = family_gf_brute(ep)
                assert tiling_gf(reg) == det, (w, h, ld, rd)


def test_weight_multisets_agree():
    for w in (1, 2):
        for h in (1, 2, 3):
            for ld, rd in _dent_patterns(h):
                reg = Region(RegionKind.HALF_HEXAGON, w, h,
                             left_dents=ld, right_dents=rd)
                ep = region_to_endpoints(reg)
                tw = sorted(tiling_weight(t).canonical()
                            for t in enumerate_tilings(reg))
                fw = sorted(family_weight(f, WeightMode.GENERAL_XY).canonical()
                            for f in enumerate_families(ep))
                assert tw == fw, (w, h, ld, rd)


def test_paths_from_tiling_reach_dents():
    reg = Region(RegionKind.HALF_HEXAGON, 2, 3, left_dents=(2,),
                 right_dents=(1, 3))
    for t in enumerate_tilings(reg):
        ps = paths_from_tiling(t)
        assert len(ps) == 2
        ep = region_to_endpoints(reg)
        assert tuple(p[0] for p in ps) == ep.starts
        assert tuple(sorted(p[-1] for p in ps)) == ep.ends


def test_mirror_swaps_side_variables():
    for w in (1, 2):
        for h in (1, 2):
            for ld, rd in _dent_patterns(h):
                reg = Region(RegionKind.HALF_HEXAGON, w, h,
                             left_dents=ld, right_dents=rd)
                swapped = substitute(tiling_gf(reg), {"X": RF_Y, "Y": RF_X})
                assert swapped == tiling_gf(mirror(reg)), (w, h, ld, rd)


def test_untileable_region_has_no_tilings():
    # all rows right-dented and width 1: row 1 loses its only up triangle
    reg = Region(RegionKind.HALF_HEXAGON, 1, 2, right_dents=(1, 2))
    counts = len(enumerate_tilings(reg))
    gf = tiling_gf(reg)
    if counts == 0:
        assert gf.is_zero()
    else:
        assert not gf.is_zero()


def test_quarter_endpoints_match_path_module():
    for x in (1, 2):
        for a in ((1,), (2,), (1, 3), (2, 4)):
            reg = Region(RegionKind.QUARTER_HEXAGON, x, max(a),
                         left_dents=a, label_offset=1)
            assert region_to_endpoints(reg) == quarter_endpoints(len(a), x, a)


def test_quarter_offset_shifts_endpoints():
    a = (1, 3)
    r1 = Region(RegionKind.QUARTER_HEXAGON, 2, 3, left_dents=a, label_offset=1)
    r0 = Region(RegionKind.QUARTER_HEXAGON, 2, 3, left_dents=a, label_offset=0)
    e1 = region_to_endpoints(r1)
    e0 = region_to_endpoints(r0)
    assert all(p1.x - p0.x == 1 and p1.y == p0.y
               for p1, p0 in zip(e1.starts, e0.starts))
    assert all(p1.x - p0.x == 1 for p1, p0 in zip(e1.ends, e0.ends))


def test_vertical_labels_are_sorted_and_bounded():
    reg = Region(RegionKind.HALF_HEXAGON, 3, 2, left_dents=(1,),
                 right_dents=(2,))
    for t in enumerate_tilings(reg):
        labels = t.vertical_labels()
        assert labels == sorted(labels)
        assert all(-reg.height - reg.width < l < reg.width + reg.height
                   for l in labels)


def test_svg_golden():
    reg = Region(RegionKind.HALF_HEXAGON, 2, 3, left_dents=(2,),
                 right_dents=(1, 3))
    t = enumerate_tilings(reg)[0]
    svg = render_svg(reg, t, show_paths=True)
    golden = (DATA / "half_hexagon_w2_h3.svg").read_text()
    assert svg == golden


def test_svg_structure():
    reg = Region(RegionKind.HALF_HEXAGON, 2, 2, left_dents=(1,),
                 right_dents=(2,))
    svg = render_svg(reg, enumerate_tilings(reg)[0])
    assert svg.startswith('<?xml version="1.0"')
    assert 'version="1.1"' in svg
    assert svg.rstrip().endswith("</svg>")
    assert svg == render_svg(reg, enumerate_tilings(reg)[0])


def test_lozenge_cap():
    with pytest.raises(RegionError):
        enumerate_tilings(Region(RegionKind.HALF_HEXAGON, 20, 8,
                                 right_dents=tuple(range(1, 9))))
