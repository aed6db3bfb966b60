"""Bundled device parameters and reference measurement records.

The default specs describe the helically notched nitinol prototype this
model was developed around. The reference error tables record accuracy
numbers measured on the physical device with optical/electromagnetic
tracking; they depend on hardware effects (dead zones, friction, actuator
backlash) that the geometric model deliberately does not include, so they
are documentation, not reproduction targets. The synthetic pipeline in
:mod:`helikin.simulation` demonstrates the identical metric computations
on model-generated data instead.
"""

from __future__ import annotations

import math

from .geometry import TendonSpec, TubeSpec

__all__ = [
    "default_tube",
    "default_tendon",
    "compact_prototype_tube",
    "MARKER_ARCLENGTHS_MM",
    "MARKER_S1_ALTERNATE_MM",
    "REFERENCE_MARKER_ERRORS_MM",
    "REFERENCE_FTL_ERRORS_MM",
    "REFERENCE_REPEATABILITY_MM",
]


def default_tube() -> TubeSpec:
    """The 64 mm, single-turn notched tube used throughout the docs and demo."""
    return TubeSpec(
        inner_radius=0.851,
        outer_radius=0.953,
        notch_axial_width=0.5,
        notch_circumferential_extent=3.892,
        bridge_length=0.3,
        circumferential_offset=0.075,
        patterned_length=64.0,
        remaining_half_angle=math.radians(63.0),
        turn_count=1,
        tendon_radius=0.115,
    )


def default_tendon() -> TendonSpec:
    """Tendon matching the default tube.

    The recorded cross-section area (1.135e-6 m^2) is kept verbatim even
    though it is inconsistent with the 0.115 mm tendon radius (pi r^2 is
    about 4.15e-8 m^2); it only enters through the elastic elongation term
    and is configurable where that matters.
    """
    return TendonSpec(
        total_length=475.0,
        cross_section_area=1.135e-6,
        elastic_modulus=53.97,
    )


def compact_prototype_tube() -> TubeSpec:
    """Smaller, more compliant prototype variant.

    Only partial dimensions were recorded for this build and two of its
    field labels did not match the main naming scheme; the notch extent
    and bridge length used here are a best-effort mapping (flagged
    unverified in the README). The remaining half-angle, circumferential
    offset and tendon radius are back-filled from the pattern-closure
    relations and the default tendon.
    """
    outer_radius = 0.57
    notch_extent = 2.15
    half_angle = (2.0 * math.pi - notch_extent / outer_radius) / 2.0
    notch_count = 75.4 / (0.4 + 0.2)
    return TubeSpec(
        inner_radius=0.46,
        outer_radius=outer_radius,
        notch_axial_width=0.4,
        notch_circumferential_extent=notch_extent,
        bridge_length=0.2,
        circumferential_offset=2.0 * math.pi * outer_radius / notch_count,
        patterned_length=75.4,
        remaining_half_angle=half_angle,
        turn_count=1,
        tendon_radius=0.115,
    )


# Marker arc lengths (mm) used in the physical tracking experiments. The
# written record of the first marker disagrees between 16.74 mm (text) and
# 18.24 mm (results table); the table values are used as the preset and the
# alternate is kept for reference.
MARKER_ARCLENGTHS_MM = (18.24, 33.20, 48.05, 63.61)
MARKER_S1_ALTERNATE_MM = 16.74

# Measured marker-position errors on the physical device, per marker
# arc length: {s: {"stroke_based": (max_dE, rmse), "position_based": ...}}.
REFERENCE_MARKER_ERRORS_MM = {
    18.24: {"stroke_based": (10.22, 8.17), "position_based": (5.35, 4.43)},
    33.20: {"stroke_based": (19.84, 14.42), "position_based": (10.54, 8.04)},
    48.05: {"stroke_based": (17.45, 8.70), "position_based": (9.33, 5.40)},
    63.61: {"stroke_based": (14.27, 4.25), "position_based": (7.52, 2.89)},
}

# Measured end-effector trajectory errors in the progressive-motion
# experiments: {"estimation"/"desired": {method: (max_dE, rmse)}}.
REFERENCE_FTL_ERRORS_MM = {
    "estimation": {"stroke_based": (11.45, 8.82), "position_based": (7.08, 5.10)},
    "desired": {"stroke_based": (11.24, 8.67), "position_based": (7.32, 5.18)},
}

# Tip-trajectory mismatch between two repeated physical runs: the maximum
# distance occurs at full deployment; the RMSE is across the whole run.
REFERENCE_REPEATABILITY_MM = {"max_distance": 8.23, "rmse": 2.62}
