"""JSON and CSV file formats."""
import csv
import json

import numpy as np

from .diversity import FiniteDiversity, SplitWeighting
from .embedding import phi, x_of_ell
from .points import PointConfiguration
from .subsets import from_mask, popcount, to_mask


class FormatError(ValueError):
    pass


def fmt(v):
    """Floats are written with 12 significant digits."""
    return f"{float(v):.12g}"


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON ({exc})") from exc


def _require(doc, *keys):
    if not isinstance(doc, dict) or any(k not in doc for k in keys):
        raise FormatError(f"expected an object with keys {keys}")


def diversity_to_json(div):
    return {
        "n": div.n,
        "values": [{"set": from_mask(m), "value": v} for m, v in div.items()],
    }


def diversity_from_json(doc, validate=True):
    _require(doc, "n", "values")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise FormatError("'n' must be a positive integer")
    seen = {}
    try:
        for entry in doc["values"]:
            mask = to_mask(entry["set"])
            if mask in seen:
                raise FormatError(f"subset {sorted(entry['set'])} listed twice")
            seen[mask] = float(entry["value"])
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"bad 'values' entry: {exc}") from exc
    if any(popcount(m) < 2 for m in seen):
        raise FormatError("only subsets of size >= 2 may be listed")
    try:
        return FiniteDiversity.from_mapping(n, seen, validate=validate)
    except IndexError as exc:
        raise FormatError(str(exc)) from exc


def profile_to_json(profile):
    return {"n": len(profile.f), "f": [float(v) for v in profile.f]}


def profile_from_json(doc):
    _require(doc, "n", "f")
    f = doc["f"]
    if not isinstance(f, list) or len(f) != doc["n"]:
        raise FormatError("'f' must be a list of length n")
    return [float(v) for v in f]


def weights_to_json(w):
    return {
        "n": w.n,
        "splits": [{"set": from_mask(m), "weight": v} for m, v in w.weights.items()],
    }


def weights_from_json(doc):
    _require(doc, "n", "splits")
    try:
        items = {to_mask(s["set"]): float(s["weight"]) for s in doc["splits"]}
        return SplitWeighting(doc["n"], items)
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"bad split entry: {exc}") from exc


def points_to_json(ps):
    return {"dim": ps.dim, "points": ps.points.tolist()}


def points_from_json(doc):
    _require(doc, "dim", "points")
    ps = PointConfiguration(doc["points"]) if doc["points"] else None
    if ps is None or ps.dim != doc["dim"]:
        raise FormatError("points must be a non-empty list of length-dim coordinates")
    return ps


def read_json(path, kind):
    doc = _load(path)
    reader = {
        "diversity": diversity_from_json,
        "profile": profile_from_json,
        "weights": weights_from_json,
        "points": points_from_json,
    }[kind]
    return reader(doc)


def write_json(path, doc):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def write_coords_csv(path, ps):
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["point"] + [f"coord_{j}" for j in range(ps.dim)])
        for i, row in enumerate(ps.points):
            out.writerow([i] + [fmt(v) for v in row])


def read_coords_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][0] != "point":
        raise FormatError("coordinates CSV must start with a 'point' header")
    width = len(rows[0]) - 1
    pts = np.array([[float(v) for v in r[1:]] for r in rows[1:]]).reshape(len(rows) - 1, width)
    return PointConfiguration(pts)


def phi_table_rows(n):
    """Rows ``(n, ell, k, phi, psi_cap)`` for ``1 <= ell <= n-1``."""
    for ell in range(1, n):
        x = x_of_ell(n, ell)
        for k in range(n):
            yield n, ell, k, phi(n, ell, k), min(x, k)


def psi_table_rows(n):
    for i in range(1, n):
        for k in range(n):
            yield n, i, k, min(i, k)


def write_tables(path, n):
    """PhiTable CSV at ``path`` and the truncation table next to it (``*_psi.csv``)."""
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["n", "ell", "k", "phi", "psi_cap"])
        for n_, ell, k, p, cap in phi_table_rows(n):
            out.writerow([n_, ell, k, fmt(p), fmt(cap)])
    psi_path = _psi_path(path)
    with open(psi_path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["n", "i", "k", "psi"])
        for row in psi_table_rows(n):
            out.writerow(row)
    return psi_path


def _psi_path(path):
    path = str(path)
    stem = path[:-4] if path.endswith(".csv") else path
    return stem + "_psi.csv"


__all__ = [
    "FormatError",
    "fmt",
    "diversity_to_json",
    "diversity_from_json",
    "profile_to_json",
    "profile_from_json",
    "weights_to_json",
    "weights_from_json",
    "points_to_json",
    "points_from_json",
    "read_json",
    "write_json",
    "write_coords_csv",
    "read_coords_csv",
    "write_tables",
    "phi_table_rows",
    "psi_table_rows",
]
