"""Run configuration: strict JSON schema with units in the key names.

Unknown keys are rejected everywhere so a typo cannot silently fall back to
a default.  Quantities, filters and interpolations are given by their
lowercase names; the recon section is a list of filter x interpolation
matrices that expand to individual reconstruction configs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .fbp import FilterKind, InterpKind, ReconConfig
from .phantom import Circle, Phantom, PhantomError, validate
from .projector import InvalidAngleStep, Quantity, slice_count, sweep_angles

EMIT_KINDS = ("sinogram_csv", "target_image", "recon_images", "metrics_json")


class ParseError(ValueError):
    """Malformed config file: bad JSON, wrong type, or unknown key."""


class ValidationError(ValueError):
    """Well-formed config that violates a domain rule (phantom, angles, ...)."""


@dataclass(frozen=True)
class RunConfig:
    phantom: Phantom
    angle_step: float
    quantities: tuple[Quantity, ...]
    recon: tuple[ReconConfig, ...]
    output_dir: str
    emit: tuple[str, ...]


def parse_config(path: str | Path) -> RunConfig:
    """Read and fully validate a JSON config file."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read config file {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e
    return parse_config_dict(data)


def parse_config_dict(data: object) -> RunConfig:
    """Build a validated RunConfig from an already-decoded JSON document."""
    top = _mapping(data, "config")
    phantom = _parse_phantom(_take(top, "phantom", required=True))
    angle_step = _number(_take(top, "angle_step_deg", required=True), "angle_step_deg")
    quantities = _parse_quantities(_take(top, "quantities", required=True))
    recon = _parse_recon(_take(top, "recon", required=True), phantom)
    output_dir = _take(top, "output_dir", default="out")
    if not isinstance(output_dir, str):
        raise ParseError(f"output_dir must be a string, got {type(output_dir).__name__}")
    emit = _parse_emit(_take(top, "emit", default=list(EMIT_KINDS)))
    _reject_unknown(top, "config")

    try:
        validate(phantom)
    except PhantomError as e:
        raise ValidationError(f"invalid phantom: {e}") from e
    try:
        sweep_angles(angle_step)
    except InvalidAngleStep as e:
        raise ValidationError(str(e)) from e

    return RunConfig(
        phantom=phantom,
        angle_step=float(angle_step),
        quantities=quantities,
        recon=recon,
        output_dir=output_dir,
        emit=emit,
    )


def config_to_dict(cfg: RunConfig) -> dict:
    """Canonical JSON-ready echo of a RunConfig; re-parsing it round-trips."""
    return {
        "phantom": {
            "subject_radius_mm": cfg.phantom.subject_radius,
            "subject_resistivity_ohm_m": cfg.phantom.subject_resistivity,
            "depth_mm": cfg.phantom.depth,
            "slice_width_mm": cfg.phantom.slice_width,
            "perturbations": [
                {
                    "center_x_mm": c.center_x,
                    "center_y_mm": c.center_y,
                    "radius_mm": c.radius,
                    "resistivity_ohm_m": c.resistivity,
                }
                for c in cfg.phantom.perturbations
            ],
        },
        "angle_step_deg": cfg.angle_step,
        "quantities": [q.value for q in cfg.quantities],
        "recon": [
            {
                "filters": [rc.filter.value],
                "interps": [rc.interp.value],
                "grid_size": rc.grid_size,
                "normalize": rc.normalize,
            }
            for rc in cfg.recon
        ],
        "output_dir": cfg.output_dir,
        "emit": list(cfg.emit),
    }


_MISSING = object()


def _take(mapping: dict, key: str, required: bool = False, default: object = None):
    value = mapping.pop(key, _MISSING)
    if value is _MISSING:
        if required:
            raise ParseError(f"missing required key '{key}'")
        return default
    return value


def _mapping(value: object, where: str) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"{where} must be a JSON object, got {type(value).__name__}")
    return dict(value)


def _reject_unknown(mapping: dict, where: str) -> None:
    if mapping:
        raise ParseError(f"unknown key '{sorted(mapping)[0]}' in {where}")


def _number(value: object, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{key} must be a number, got {type(value).__name__}")
    return float(value)


def _parse_phantom(data: object) -> Phantom:
    m = _mapping(data, "phantom")
    radius = _number(_take(m, "subject_radius_mm", required=True), "subject_radius_mm")
    resistivity = _number(
        _take(m, "subject_resistivity_ohm_m", required=True), "subject_resistivity_ohm_m"
    )
    depth = _number(_take(m, "depth_mm", required=True), "depth_mm")
    width = _number(_take(m, "slice_width_mm", required=True), "slice_width_mm")
    raw = _take(m, "perturbations", default=[])
    _reject_unknown(m, "phantom")
    if not isinstance(raw, list):
        raise ParseError("phantom.perturbations must be a list")
    circles = []
    for i, item in enumerate(raw):
        cm = _mapping(item, f"perturbations[{i}]")
        circles.append(
            Circle(
                center_x=_number(_take(cm, "center_x_mm", required=True), "center_x_mm"),
                center_y=_number(_take(cm, "center_y_mm", required=True), "center_y_mm"),
                radius=_number(_take(cm, "radius_mm", required=True), "radius_mm"),
                resistivity=_number(
                    _take(cm, "resistivity_ohm_m", required=True), "resistivity_ohm_m"
                ),
            )
        )
        _reject_unknown(cm, f"perturbations[{i}]")
    return Phantom(
        subject_radius=radius,
        subject_resistivity=resistivity,
        depth=depth,
        slice_width=width,
        perturbations=tuple(circles),
    )


def _parse_quantities(data: object) -> tuple[Quantity, ...]:
    if not isinstance(data, list):
        raise ParseError("quantities must be a list")
    out: list[Quantity] = []
    for name in data:
        try:
            q = Quantity(name)
        except ValueError:
            raise ParseError(
                f"unknown quantity '{name}'; expected one of "
                f"{[q.value for q in Quantity]}"
            ) from None
        if q not in out:
            out.append(q)
    if not out:
        raise ValidationError("at least one quantity is required")
    return tuple(out)


def _parse_recon(data: object, phantom: Phantom) -> tuple[ReconConfig, ...]:
    if not isinstance(data, list):
        raise ParseError("recon must be a list")
    default_grid = slice_count(phantom.subject_radius, phantom.slice_width)
    out: list[ReconConfig] = []
    for i, item in enumerate(data):
        m = _mapping(item, f"recon[{i}]")
        filters = _enum_list(_take(m, "filters", required=True), FilterKind, f"recon[{i}].filters")
        interps = _enum_list(_take(m, "interps", required=True), InterpKind, f"recon[{i}].interps")
        grid_raw = _take(m, "grid_size", default=default_grid)
        normalize = _take(m, "normalize", default=True)
        _reject_unknown(m, f"recon[{i}]")
        if isinstance(grid_raw, bool) or not isinstance(grid_raw, int):
            raise ParseError(f"recon[{i}].grid_size must be an integer")
        if not isinstance(normalize, bool):
            raise ParseError(f"recon[{i}].normalize must be a boolean")
        for flt in filters:
            for interp in interps:
                try:
                    out.append(
                        ReconConfig(
                            filter=flt, interp=interp, grid_size=grid_raw, normalize=normalize
                        )
                    )
                except ValueError as e:
                    raise ValidationError(str(e)) from e
    if not out:
        raise ValidationError("at least one reconstruction config is required")
    return tuple(out)


def _enum_list(data: object, enum_cls, where: str) -> list:
    if not isinstance(data, list) or not data:
        raise ParseError(f"{where} must be a non-empty list")
    out = []
    for name in data:
        try:
            out.append(enum_cls(name))
        except ValueError:
            raise ParseError(
                f"unknown value '{name}' in {where}; expected one of "
                f"{[e.value for e in enum_cls]}"
            ) from None
    return out


def _parse_emit(data: object) -> tuple[str, ...]:
    if not isinstance(data, list):
        raise ParseError("emit must be a list")
    for name in data:
        if name not in EMIT_KINDS:
            raise ParseError(f"unknown emit kind '{name}'; expected one of {list(EMIT_KINDS)}")
    # canonical order, deduplicated
    return tuple(kind for kind in EMIT_KINDS if kind in data)
