"""Central registry of built-in surfaces.

Surface specs on the command line have the form ``name`` or
``name:key=value,key=value`` (e.g. ``torus:R=2,a=0.5``). Accepted parameter
names are derived by introspecting each chart class constructor, so adding
a surface only means adding one line to :data:`SURFACES`.
"""

from __future__ import annotations

import importlib
import inspect
from typing import Any

from geomomentum.exceptions import GeomomentumError, UnknownChart
from geomomentum.surfaces.base import SurfaceChart

# Surface name -> (module path, class name).
SURFACES: dict[str, tuple[str, str]] = {
    "sphere": ("geomomentum.surfaces.builtin", "Sphere"),
    "cylinder": ("geomomentum.surfaces.builtin", "Cylinder"),
    "torus": ("geomomentum.surfaces.builtin", "Torus"),
    "plane": ("geomomentum.surfaces.builtin", "Plane"),
    "catenoid": ("geomomentum.surfaces.builtin", "Catenoid"),
}


def surface_names() -> list[str]:
    return list(SURFACES)


def _load(module_path: str, class_name: str) -> type:
    return getattr(importlib.import_module(module_path), class_name)


def _parameters(cls: type) -> dict[str, Any]:
    params = inspect.signature(cls.__init__).parameters
    return {
        name: (None if p.default is inspect.Parameter.empty else p.default)
        for name, p in params.items()
        if name != "self"
    }


def parse_surface(spec: str) -> SurfaceChart:
    """Build a chart from a spec string; raise :class:`UnknownChart` on error."""
    name, _, arg_text = (spec or "").strip().partition(":")
    if name not in SURFACES:
        raise UnknownChart(
            f"unknown surface {name!r}; expected one of {', '.join(SURFACES)}"
        )
    cls = _load(*SURFACES[name])
    allowed = _parameters(cls)

    kwargs: dict[str, float] = {}
    for item in filter(None, (part.strip() for part in arg_text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in allowed:
            raise UnknownChart(
                f"bad parameter {item!r} for {name}; accepted: {', '.join(allowed) or 'none'}"
            )
        try:
            kwargs[key] = float(value)
        except ValueError:
            raise UnknownChart(f"parameter {key} must be a number, got {value!r}") from None

    try:
        return cls(**kwargs)
    except GeomomentumError:
        raise
    except ValueError as exc:
        raise UnknownChart(f"invalid {name} parameters: {exc}") from exc


def capabilities() -> dict[str, dict[str, Any]]:
    """Introspect chart classes and return their parameters and defaults.

    Shape::

        {"sphere": {"parameters": {"r": 1.0}, "closed_form_derivatives": true}, ...}

    A chart whose class cannot be imported is reported with an ``"error"``
    field so one broken entry never hides the others.
    """
    out: dict[str, dict[str, Any]] = {}
    for name, (module_path, class_name) in SURFACES.items():
        try:
            cls = _load(module_path, class_name)
            out[name] = {
                "parameters": _parameters(cls),
                "closed_form_derivatives": cls.tangents is not SurfaceChart.tangents,
            }
        except Exception as exc:  # noqa: BLE001 - surfaced in payload
            out[name] = {"error": f"{type(exc).__name__}: {exc}"}
    return out
