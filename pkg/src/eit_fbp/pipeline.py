"""Batch pipeline: forward project, reconstruct, compare, write artifacts.

Artifact layout inside the output directory:

* ``sinogram_<quantity>.csv``  -- header row of angles, one row per slice
* ``target.pgm`` / ``target.png`` -- normalized ground-truth image
  (suffixed ``_g<N>`` when recon configs use several grid sizes)
* ``<quantity>_<filter>_<interp>[_raw].pgm/.png`` -- reconstructions
* ``metrics.json`` -- config echo, metrics, timings and display mappings

CSV and image bytes depend only on the config, never on wall-clock state.
"""

from __future__ import annotations

import json
import math
import time
from pathlib import Path

from .config import RunConfig, config_to_dict
from .fbp import reconstruct
from .imageio import write_pgm, write_png
from .projector import Quantity, Sinogram, compute_sinogram
from .raster import MetricsReport, TargetQuantity, compare, normalize_image, rasterize_target

QUANTITY_SHORT = {Quantity.CONDUCTANCE: "conductance", Quantity.AVG_CONDUCTIVITY: "avgcond"}


def sinogram_csv_text(sino: Sinogram) -> str:
    """Angles as the header row, then one full-precision row per slice."""
    lines = [",".join(repr(a) for a in sino.angles_deg)]
    for row in sino.data:
        lines.append(",".join("%.17e" % v for v in row))
    return "\n".join(lines) + "\n"


def _json_safe(value: float) -> float | str:
    return "inf" if math.isinf(value) else value


def run_pipeline(config: RunConfig) -> list[MetricsReport]:
    """Run every quantity x recon combination, writing the requested artifacts.

    On failure an ``INCOMPLETE`` marker naming the error is left in the
    output directory so partial artifacts are never mistaken for a full run.
    """
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    marker = out_dir / "INCOMPLETE"
    if marker.exists():
        marker.unlink()
    try:
        return _run(config, out_dir)
    except Exception as e:
        try:
            marker.write_text(f"pipeline failed: {e}\n")
        except OSError:
            pass
        raise


def _run(config: RunConfig, out_dir: Path) -> list[MetricsReport]:
    emit = set(config.emit)
    doc: dict = {"config": config_to_dict(config), "sinograms": [], "targets": [], "results": []}
    reports: list[MetricsReport] = []

    sinograms: dict[Quantity, Sinogram] = {}
    for quantity in config.quantities:
        sino = compute_sinogram(config.phantom, config.angle_step, quantity)
        sinograms[quantity] = sino
        if "sinogram_csv" in emit:
            name = f"sinogram_{QUANTITY_SHORT[quantity]}.csv"
            (out_dir / name).write_text(sinogram_csv_text(sino))
            doc["sinograms"].append({"quantity": quantity.value, "csv": name})

    grid_sizes = sorted({rc.grid_size for rc in config.recon})
    targets = {}
    for grid in grid_sizes:
        target = normalize_image(
            rasterize_target(config.phantom, grid, TargetQuantity.CONDUCTIVITY)
        )
        targets[grid] = target
        if "target_image" in emit:
            stem = "target" if len(grid_sizes) == 1 else f"target_g{grid}"
            lo, hi = write_pgm(out_dir / f"{stem}.pgm", target)
            write_png(out_dir / f"{stem}.png", target)
            doc["targets"].append(
                {
                    "grid_size": grid,
                    "pgm": f"{stem}.pgm",
                    "png": f"{stem}.png",
                    "display_lo": lo,
                    "display_hi": hi,
                }
            )

    for quantity in config.quantities:
        for rc in config.recon:
            start = time.perf_counter()
            image = reconstruct(sinograms[quantity], rc)
            metrics = compare(image, targets[rc.grid_size])
            seconds = time.perf_counter() - start
            reports.append(metrics)

            entry = {
                "quantity": quantity.value,
                "filter": rc.filter.value,
                "interp": rc.interp.value,
                "normalize": rc.normalize,
                "grid_size": rc.grid_size,
                "rmse": metrics.rmse,
                "pearson": metrics.pearson,
                "psnr": _json_safe(metrics.psnr),
                "seconds": seconds,
            }
            if "recon_images" in emit:
                stem = f"{QUANTITY_SHORT[quantity]}_{rc.filter.value}_{rc.interp.value}"
                if not rc.normalize:
                    stem += "_raw"
                lo, hi = write_pgm(out_dir / f"{stem}.pgm", image)
                write_png(out_dir / f"{stem}.png", image)
                entry.update(
                    {"pgm": f"{stem}.pgm", "png": f"{stem}.png", "display_lo": lo, "display_hi": hi}
                )
            doc["results"].append(entry)

    if "metrics_json" in emit:
        with open(out_dir / "metrics.json", "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return reports
