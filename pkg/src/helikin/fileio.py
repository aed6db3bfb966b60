"""File formats: JSON specs and CSV curves/trajectories/joint sweeps.

All files use millimeters, newtons and radians, except the tube JSON where
the remaining half-angle is written in degrees (converted on load) and the
tendon JSON which keeps its customary m^2 / GPa units. Floats are written
with 12 significant digits so round-trips preserve values well beyond the
tolerances used anywhere in the package. Writes are atomic
(write-then-rename) so a crashed run never leaves a truncated file.
"""

from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .estimation import TrajectoryComparison
from .geometry import DerivedGeometry, TendonSpec, TubeSpec
from .kinematics import BackboneCurve, JointState, TipTrajectory
from .simulation import PhantomSpec, SyntheticDataset

__all__ = [
    "atomic_write_text",
    "load_device_spec",
    "dump_tube_spec",
    "dump_derived_geometry",
    "load_phantom_spec",
    "dump_phantom_spec",
    "write_backbone_csv",
    "read_backbone_csv",
    "write_tip_csv",
    "read_tip_csv",
    "write_joints_csv",
    "read_strokes_csv",
    "write_marker_csv",
    "read_marker_csv",
    "comparison_to_json",
    "write_comparison_csv",
    "write_dataset_bundle",
]

_FLOAT_FMT = "{:.12g}"

_TUBE_FIELDS = (
    "inner_radius",
    "outer_radius",
    "notch_axial_width",
    "notch_circumferential_extent",
    "bridge_length",
    "circumferential_offset",
    "patterned_length",
    "remaining_half_angle",
    "turn_count",
    "tendon_radius",
)
_TENDON_FIELDS = ("total_length", "cross_section_area", "elastic_modulus")


def _fmt(value: float) -> str:
    return _FLOAT_FMT.format(float(value))


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write text to path via a temp file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _require_fields(payload: dict, fields: tuple[str, ...], what: str) -> None:
    for name in fields:
        if name not in payload:
            raise ValidationError(f"{what} is missing required field '{name}'")


def load_device_spec(path: str | Path) -> tuple[TubeSpec, TendonSpec | None]:
    """Load a tube (and optionally tendon) spec from JSON.

    The document either holds the tube fields at the top level or nests
    them under "tube" with an optional "tendon" sibling. The remaining
    half-angle is stored in degrees.
    """
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValidationError(f"{path}: expected a JSON object at the top level")

    tube_payload = payload.get("tube", payload)
    if not isinstance(tube_payload, dict):
        raise ValidationError(f"{path}: 'tube' must be a JSON object")
    _require_fields(tube_payload, _TUBE_FIELDS, "tube spec")
    values = {name: tube_payload[name] for name in _TUBE_FIELDS}
    try:
        values["remaining_half_angle"] = math.radians(float(values["remaining_half_angle"]))
        values["turn_count"] = int(values["turn_count"])
        tube = TubeSpec(**{k: float(v) if k != "turn_count" else v for k, v in values.items()})
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"{path}: bad tube field value: {exc}") from exc

    tendon = None
    if "tendon" in payload:
        tendon_payload = payload["tendon"]
        if not isinstance(tendon_payload, dict):
            raise ValidationError(f"{path}: 'tendon' must be a JSON object")
        _require_fields(tendon_payload, _TENDON_FIELDS, "tendon spec")
        try:
            tendon = TendonSpec(**{k: float(tendon_payload[k]) for k in _TENDON_FIELDS})
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"{path}: bad tendon field value: {exc}") from exc
    return tube, tendon


def dump_tube_spec(tube: TubeSpec, tendon: TendonSpec | None = None) -> str:
    """Serialize specs to the JSON layout accepted by :func:`load_device_spec`."""
    tube_payload = asdict(tube)
    tube_payload["remaining_half_angle"] = math.degrees(tube.remaining_half_angle)
    document: dict = {"tube": tube_payload}
    if tendon is not None:
        document["tendon"] = asdict(tendon)
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def dump_derived_geometry(geom: DerivedGeometry) -> str:
    """DerivedGeometry as JSON, five fields, all in mm."""
    return json.dumps({k: float(v) for k, v in asdict(geom).items()}, indent=2, sort_keys=True) + "\n"


def load_phantom_spec(path: str | Path) -> PhantomSpec:
    """Phantom JSON: {"axis_point_mm": [x,y,z], "axis_direction": [x,y,z], "radius_mm": r}."""
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    _require_fields(payload, ("axis_point_mm", "axis_direction", "radius_mm"), "phantom spec")
    return PhantomSpec(
        axis_point=np.asarray(payload["axis_point_mm"], dtype=float),
        axis_direction=np.asarray(payload["axis_direction"], dtype=float),
        radius=float(payload["radius_mm"]),
    )


def dump_phantom_spec(phantom: PhantomSpec) -> str:
    return (
        json.dumps(
            {
                "axis_point_mm": [float(v) for v in phantom.axis_point],
                "axis_direction": [float(v) for v in phantom.axis_direction],
                "radius_mm": float(phantom.radius),
            },
            indent=2,
            sort_keys=True,
        )
        + "\n"
    )


def _csv_rows(path: str | Path, expected_header: list[str], optional: int = 0) -> list[list[float]]:
    """Read a CSV, check the header (allowing `optional` trailing columns)."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{path}: empty CSV") from None
        required = expected_header[: len(expected_header) - optional]
        if header[: len(required)] != required:
            raise ValidationError(
                f"{path}: expected header starting with {','.join(required)}, "
                f"got {','.join(header)}"
            )
        if optional and header[len(required):] not in (
            [],
            expected_header[len(required):],
        ):
            raise ValidationError(
                f"{path}: optional columns must be exactly "
                f"{','.join(expected_header[len(required):])}"
            )
        width = len(header)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != width:
                raise ValidationError(f"{path}:{lineno}: expected {width} columns, got {len(row)}")
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: {exc}") from exc
    return rows


def _table(header: list[str], columns: list[np.ndarray]) -> str:
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def write_backbone_csv(path: str | Path, curve: BackboneCurve) -> None:
    atomic_write_text(
        path,
        _table(
            ["s_mm", "x_mm", "y_mm", "z_mm"],
            [curve.s, curve.points[:, 0], curve.points[:, 1], curve.points[:, 2]],
        ),
    )


def read_backbone_csv(path: str | Path) -> BackboneCurve:
    rows = _csv_rows(path, ["s_mm", "x_mm", "y_mm", "z_mm"])
    data = np.asarray(rows, dtype=float)
    return BackboneCurve(s=data[:, 0], points=data[:, 1:4])


def write_tip_csv(path: str | Path, trajectory: TipTrajectory) -> None:
    atomic_write_text(
        path,
        _table(
            ["eta", "x_mm", "y_mm", "z_mm"],
            [
                trajectory.eta,
                trajectory.points[:, 0],
                trajectory.points[:, 1],
                trajectory.points[:, 2],
            ],
        ),
    )


def read_tip_csv(path: str | Path) -> TipTrajectory:
    rows = _csv_rows(path, ["eta", "x_mm", "y_mm", "z_mm"])
    data = np.asarray(rows, dtype=float)
    return TipTrajectory(eta=data[:, 0], points=data[:, 1:4])


def write_joints_csv(
    path: str | Path,
    strokes: np.ndarray,
    tensions: np.ndarray,
    joints: list[JointState | None],
) -> None:
    """Joint sweep CSV; failed samples serialize as nan joint columns."""
    lines = ["dl_t_mm,T_N,R_mm,H_mm,phi_rad,theta_rad"]
    for stroke, tension, joint in zip(strokes, tensions, joints):
        if joint is None:
            cells = [_fmt(stroke), _fmt(tension), "nan", "nan", "nan", "nan"]
        else:
            cells = [
                _fmt(stroke),
                _fmt(tension),
                _fmt(joint.cylinder_radius),
                _fmt(joint.cylinder_height),
                _fmt(joint.deflection),
                _fmt(joint.roll),
            ]
        lines.append(",".join(cells))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_strokes_csv(path: str | Path) -> list[tuple[float, float]]:
    """Actuation profile CSV with header dl_t_mm[,T_N]; tension defaults to 0."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{path}: empty CSV") from None
        if header[:1] != ["dl_t_mm"] or header not in (["dl_t_mm"], ["dl_t_mm", "T_N"]):
            raise ValidationError(f"{path}: expected header dl_t_mm[,T_N], got {','.join(header)}")
        profile = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                stroke = float(row[0])
                tension = float(row[1]) if len(row) > 1 else 0.0
            except (ValueError, IndexError) as exc:
                raise ValidationError(f"{path}:{lineno}: {exc}") from exc
            profile.append((stroke, tension))
    if not profile:
        raise ValidationError(f"{path}: no actuation samples")
    return profile


def write_marker_csv(
    path: str | Path,
    index: np.ndarray,
    points: np.ndarray,
    strokes: np.ndarray | None = None,
    tensions: np.ndarray | None = None,
) -> None:
    header = ["eta", "x_mm", "y_mm", "z_mm"]
    columns = [np.asarray(index, dtype=float)] + [np.asarray(points)[:, k] for k in range(3)]
    if strokes is not None:
        if tensions is None:
            tensions = np.zeros_like(np.asarray(strokes, dtype=float))
        header += ["dl_t_mm", "T_N"]
        columns += [np.asarray(strokes, dtype=float), np.asarray(tensions, dtype=float)]
    atomic_write_text(path, _table(header, columns))


def read_marker_csv(path: str | Path) -> dict[str, np.ndarray | None]:
    """Marker/trajectory CSV -> dict with index, points and optional actuation."""
    rows = _csv_rows(path, ["eta", "x_mm", "y_mm", "z_mm", "dl_t_mm", "T_N"], optional=2)
    data = np.asarray(rows, dtype=float)
    has_actuation = data.shape[1] == 6
    return {
        "index": data[:, 0],
        "points": data[:, 1:4],
        "strokes": data[:, 4] if has_actuation else None,
        "tensions": data[:, 5] if has_actuation else None,
    }


def comparison_to_json(comparison: TrajectoryComparison) -> str:
    return (
        json.dumps(
            {
                "max_de_mm": float(comparison.max_distance),
                "rmse_mm": float(comparison.rmse),
                "n_samples": int(comparison.n_samples),
            },
            indent=2,
            sort_keys=True,
        )
        + "\n"
    )


def write_comparison_csv(path: str | Path, index: np.ndarray, comparison: TrajectoryComparison) -> None:
    atomic_write_text(
        path,
        _table(["eta", "d_e_mm"], [np.asarray(index, dtype=float), comparison.per_sample_distances]),
    )


def _marker_file_tag(arclength: float) -> str:
    return _fmt(arclength).replace(".", "p").replace("-", "m")


def write_dataset_bundle(directory: str | Path, dataset: SyntheticDataset) -> list[Path]:
    """Write a synthetic dataset as a directory of spec + CSV files.

    Layout: spec.json, joints.csv, tip.csv, then per marker
    marker_<s>.csv (noisy) and marker_<s>_truth.csv (noiseless).
    Returns the list of files written.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    spec_payload = json.loads(dump_tube_spec(dataset.tube))
    spec_payload["noise"] = {
        "position_sigma_mm": dataset.noise.position_sigma,
        "stroke_sigma_mm": dataset.noise.stroke_sigma,
        "seed": dataset.noise.seed,
    }
    spec_payload["theta_rad"] = dataset.roll
    spec_payload["marker_arclengths_mm"] = [float(s) for s in dataset.marker_arclengths]
    path = directory / "spec.json"
    atomic_write_text(path, json.dumps(spec_payload, indent=2, sort_keys=True) + "\n")
    written.append(path)

    path = directory / "joints.csv"
    write_joints_csv(path, dataset.strokes, dataset.tensions, list(dataset.joints))
    written.append(path)

    index = dataset.sample_index()
    ok = np.array([j is not None for j in dataset.joints])
    path = directory / "tip.csv"
    write_marker_csv(path, index[ok], dataset.tips_true[ok], dataset.strokes[ok], dataset.tensions[ok])
    written.append(path)

    for s in dataset.marker_arclengths:
        tag = _marker_file_tag(s)
        path = directory / f"marker_{tag}.csv"
        write_marker_csv(
            path, index[ok], dataset.tracks_noisy[s][ok], dataset.strokes_noisy[ok], dataset.tensions[ok]
        )
        written.append(path)
        path = directory / f"marker_{tag}_truth.csv"
        write_marker_csv(path, index[ok], dataset.tracks_true[s][ok], dataset.strokes[ok], dataset.tensions[ok])
        written.append(path)
    return written
