"""Python bindings for the simmap map-package pipeline."""

import json as _json

from ._core import (  # noqa: F401
    Projection,
    SimmapError,
    __version__,
    buffer_polyline,
    convert_pcd,
    default_config,
    lanelet_nullify,
    lanelet_validate,
    load_config,
    read_pcd,
    sample_obj,
    set_log_level,
    signed_area,
    transform_pcd,
    triangulate_polygon,
    verify_package,
)
from . import _core


def _config_text(config):
    if config is None:
        return ""
    if isinstance(config, str):
        return config
    return _json.dumps(config)


def parse_config(config):
    """Validate a config dict (or JSON text) and return it with defaults filled in."""
    return _core._parse_config(_config_text(config) or "{}")


def run_pipeline(input, out_dir, config=None, lanelet_in=None, force=False, lenient=False):
    """Run every stage and package into ``out_dir``; returns the manifest dict."""
    return _core._run_pipeline(str(input), str(out_dir), _config_text(config),
                               None if lanelet_in is None else str(lanelet_in), force, lenient)


def build_mesh(osm, obj, mtl, config=None):
    """Write the OBJ/MTL model for an OSM extract; returns triangle/vertex/area stats."""
    return _core._build_mesh(str(osm), str(obj), str(mtl), _config_text(config))


def lanelet_derive(osm, output, config=None):
    """Derive a Lanelet2 map from OSM highways; returns the lanelet count."""
    return _core._lanelet_derive(str(osm), str(output), _config_text(config))
