"""Independent oracles used to pin expected values.

Each oracle deliberately avoids the code path it checks: quadrature
instead of the closed-form centroid, chord summation instead of the helix
length formula, root finding on the defining equations instead of the
eliminated closed form.
"""

import math

import numpy as np
from scipy.optimize import brentq


def midpoint_notch_offset(inner_radius, outer_radius, half_angle, m_r=4096, m_psi=16384):
    """2-D midpoint-rule quadrature of the sector-centroid integrals.

    The integrands factor as f(r) g(psi), so the double midpoint sum
    sum_ij f(r_i) g(psi_j) dr dpsi equals (sum_i f(r_i) dr)(sum_j g(psi_j)
    dpsi) exactly; computing it factored just avoids materializing the
    m_r x m_psi product grid.
    """
    dr = (outer_radius - inner_radius) / m_r
    dpsi = 2.0 * half_angle / m_psi
    r = inner_radius + (np.arange(m_r) + 0.5) * dr
    psi = -half_angle + (np.arange(m_psi) + 0.5) * dpsi
    numerator = np.sum(r**2) * dr * np.sum(np.cos(psi)) * dpsi
    denominator = np.sum(r) * dr * (m_psi * dpsi)
    return numerator / denominator


def helix_arclength_chords(axial_length, radius, turns=1, segments=200_000):
    """Numeric arc length of the helix x(t) = l t, radius about the x axis."""
    t = np.linspace(0.0, 1.0, segments + 1)
    angle = 2.0 * math.pi * turns * t
    points = np.column_stack(
        [axial_length * t, radius * np.cos(angle), radius * np.sin(angle)]
    )
    return float(np.sum(np.linalg.norm(np.diff(points, axis=0), axis=1)))


def solve_cylinder_rootfind(tendon_length, na_length, tendon_na_distance, turns=1):
    """(R, H) by root finding on the two helix-length equations.

    Uses the constraint pair directly: the neutral fiber keeps length
    na_length at radius R and the tendon has length tendon_length at
    radius R - tendon_na_distance, both sharing the height H.
    """
    two_pi_n = 2.0 * math.pi * turns

    def residual(radius):
        height_sq = na_length**2 - (two_pi_n * radius) ** 2
        height = math.sqrt(max(height_sq, 0.0))
        return math.hypot(height, two_pi_n * (radius - tendon_na_distance)) - tendon_length

    upper = na_length / two_pi_n * (1.0 - 1e-12)
    radius = brentq(residual, 1e-9, upper, xtol=1e-13, rtol=1e-15)
    height = math.sqrt(na_length**2 - (two_pi_n * radius) ** 2)
    return radius, height


def point_line_distance(points, line_point, line_direction):
    """Brute-force distances from points to an infinite line."""
    direction = np.asarray(line_direction, dtype=float)
    direction = direction / np.linalg.norm(direction)
    offsets = np.atleast_2d(points) - np.asarray(line_point, dtype=float)
    along = offsets @ direction
    return np.linalg.norm(offsets - np.outer(along, direction), axis=1)
