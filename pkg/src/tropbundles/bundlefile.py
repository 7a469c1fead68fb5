"""Reading and writing bundle description files (JSON).

Layout::

    {
      "curve": {"length": "5/2", "charts": 3},
      "rank": 2,
      "transitions": [
        {"overlap": 1, "perm": [2, 1],
         "entries": [{"slope": -1, "value_at_ref": "0"}, {"slope": 0, "value_at_ref": "1/2"}]}
      ]
    }

``perm`` lists the column of the finite entry of each row (images of 1..r),
``entries`` the row entries in row order.  ``value_at_ref`` is the entry's
value at the left endpoint of its overlap.  Overlaps that are not listed are
identity.  Rationals are written as reduced ``"p/q"`` strings (``"p"`` for
integers); plain JSON integers are accepted on input.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .bundles import Bundle, identity_transition, transition
from .curve import AffineFn, Curve
from .trop_core import is_permutation


class BundleFileError(ValueError):
    """Malformed bundle file; ``where`` locates the problem."""

    def __init__(self, where: str, message: str):
        self.where = where
        self.message = message
        super().__init__(f"{where}: {message}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise BundleFileError(where, "expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
        raise BundleFileError(where, f"{value!r} is not a rational of the form p/q")
    raise BundleFileError(where, f"expected a rational string, got {type(value).__name__}")


def _integer(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise BundleFileError(where, f"expected an integer, got {value!r}")
    return value


def _field(obj: dict, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise BundleFileError(where, "expected an object")
    if key not in obj:
        raise BundleFileError(where, f"missing field {key!r}")
    return obj[key]


def bundle_from_data(data: Any) -> Bundle:
    curve_data = _field(data, "curve", "$")
    length = _rational(_field(curve_data, "length", "curve"), "curve.length")
    charts = _integer(_field(curve_data, "charts", "curve"), "curve.charts")
    try:
        curve = Curve(length, charts)
    except ValueError as exc:
        raise BundleFileError("curve", str(exc)) from None
    rank = _integer(_field(data, "rank", "$"), "rank")
    if rank < 1:
        raise BundleFileError("rank", f"rank must be at least 1, got {rank}")
    items = data.get("transitions", [])
    if not isinstance(items, list):
        raise BundleFileError("transitions", "expected a list")
    maps: dict[int, Any] = {}
    for n, item in enumerate(items):
        where = f"transitions[{n}]"
        k = _integer(_field(item, "overlap", where), f"{where}.overlap")
        if not 1 <= k <= charts:
            raise BundleFileError(f"{where}.overlap", f"overlap {k} outside 1..{charts}")
        if k in maps:
            raise BundleFileError(f"{where}.overlap", f"overlap {k} listed twice")
        perm = _field(item, "perm", where)
        if not isinstance(perm, list) or not all(isinstance(p, int) and not isinstance(p, bool) for p in perm):
            raise BundleFileError(f"{where}.perm", "expected a list of integers")
        if len(perm) != rank or not is_permutation(perm):
            raise BundleFileError(f"{where}.perm", f"{perm} is not a permutation of 1..{rank}")
        entries = _field(item, "entries", where)
        if not isinstance(entries, list) or len(entries) != rank:
            raise BundleFileError(f"{where}.entries", f"expected a list of {rank} entries")
        ref = curve.overlap_ref(k)
        fns = []
        for i, e in enumerate(entries):
            ew = f"{where}.entries[{i}]"
            slope = _rational(_field(e, "slope", ew), f"{ew}.slope")
            value = _rational(_field(e, "value_at_ref", ew), f"{ew}.value_at_ref")
            fns.append(AffineFn.through(slope, ref, value))
        maps[k] = transition(perm, fns)
    return Bundle.from_transitions(curve, rank, maps)


def load_bundle(path: str | Path) -> Bundle:
    """Parse a bundle file; raises :class:`BundleFileError` with position info."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleFileError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return bundle_from_data(data)


def bundle_to_data(bundle: Bundle) -> dict:
    curve = bundle.curve
    ident = identity_transition(bundle.rank)
    transitions = []
    for k, m in enumerate(bundle.transitions, start=1):
        if m == ident:
            continue
        ref = curve.overlap_ref(k)
        transitions.append(
            {
                "overlap": k,
                "perm": list(m.perm),
                "entries": [
                    {"slope": int(f.slope) if f.slope.denominator == 1 else format_rational(f.slope),
                     "value_at_ref": format_rational(f(ref))}
                    for f in m.values
                ],
            }
        )
    return {
        "curve": {"length": format_rational(curve.length), "charts": curve.charts},
        "rank": bundle.rank,
        "transitions": transitions,
    }


def dump_bundle(bundle: Bundle) -> str:
    return json.dumps(bundle_to_data(bundle), indent=2) + "\n"


def save_bundle(bundle: Bundle, path: str | Path) -> None:
    Path(path).write_text(dump_bundle(bundle), encoding="utf-8")
