"""JSON file formats shared by the CLI and the harness."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .exact import ExactnessError, Point2, format_rational, parse_rational


def points_to_json(points) -> dict:
    return {"points": [[format_rational(p[0]), format_rational(p[1])] for p in points]}


def points_from_json(doc, exact: bool = True) -> list[Point2]:
    if not isinstance(doc, dict) or "points" not in doc:
        raise ExactnessError('point-set document must be an object with a "points" key')
    out = []
    for entry in doc["points"]:
        if len(entry) != 2:
            raise ExactnessError(f"point must have two coordinates: {entry!r}")
        out.append(Point2(parse_rational(entry[0], exact), parse_rational(entry[1], exact)))
    return out


def _read_json(path):
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ExactnessError(f"{path}: invalid JSON ({exc})") from exc


def load_points(path, exact: bool = True) -> list[Point2]:
    return points_from_json(_read_json(path), exact)


def save_points(path, points) -> None:
    Path(path).write_text(json.dumps(points_to_json(points), indent=1) + "\n")


def poly_to_json(poly) -> list:
    return [[i, j, format_rational(c)] for (i, j), c in sorted(poly.coeffs.items())]


def poly_from_json(doc):
    from .polynomials import BivarPoly

    coeffs: dict[tuple[int, int], Fraction] = {}
    for i, j, c in doc:
        coeffs[(int(i), int(j))] = coeffs.get((int(i), int(j)), Fraction(0)) + parse_rational(c)
    return BivarPoly(coeffs)


def load_poly(path):
    return poly_from_json(_read_json(path))


def save_poly(path, poly) -> None:
    Path(path).write_text(json.dumps(poly_to_json(poly)) + "\n")


def read_json(path):
    return _read_json(path)
