"""Python access to the unmate core."""

import json as _json

from ._unmate import (
    UnmateError,
    capture_parameters,
    catalog_ids,
    census_csv,
    closure_size,
    julia_proximity,
    reference_curve_ids,
    series,
)
from . import _unmate


def _sel(x):
    return x if isinstance(x, str) else _json.dumps(x)


def map_coefficients(map):
    return _json.loads(_unmate.map_json(_sel(map)))


def orbits(map):
    return _json.loads(_unmate.orbits_json(_sel(map)))


def classify(map, curve, level=1, resolution=512, eps_orbit=1e-9, eps_curve=1e-3):
    return _json.loads(_unmate.classify_json(_sel(map), _sel(curve), level, resolution, eps_orbit, eps_curve))


def fold(map, depth, resolution=512):
    return _json.loads(_unmate.fold_json(_sel(map), depth, resolution))


def render_figure(tag, out_dir, image_resolution=512, basins=True):
    return _json.loads(_unmate.render_figure(tag, str(out_dir), image_resolution, basins))
