"""LAS 2.0 well-log ingestion.

Parses LAS text into a depth-indexed, immutable curve table (CurveSet) with
explicit null handling, and writes the table back out as LAS text. Only
LAS 2.0 is supported; 3.0 files are rejected.
"""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CurveCountMismatchError,
    EmptySliceError,
    LasParseError,
    MissingCurveError,
    MissingSectionError,
    NonMonotoneDepthError,
    NonNumericDataError,
    UnsupportedLasError,
)

logger = logging.getLogger(__name__)

DEFAULT_NULL = -999.25
FEET_TO_METERS = 0.3048

# Section letters LAS 2.0 defines; anything else is treated as 3.0-style.
_KNOWN_SECTIONS = frozenset("VWCPOA")
_FEET_UNITS = frozenset({"F", "FT", "FEET"})


@dataclass(frozen=True)
class CurveSet:
    """Depth-indexed collection of named log curves.

    Depth is strictly increasing. Every curve array has one value per depth
    sample; missing values carry the null sentinel in the value array and
    True in the matching mask. Instances are treated as immutable.
    """

    well_name: str
    depth: np.ndarray
    curves: dict[str, np.ndarray]
    masks: dict[str, np.ndarray]
    null_value: float = DEFAULT_NULL
    units: dict[str, str] = field(default_factory=dict)
    depth_unit: str = "M"

    def __post_init__(self):
        n = len(self.depth)
        for mnem, values in self.curves.items():
            if len(values) != n:
                raise ValueError(f"curve {mnem!r} has {len(values)} values for {n} depths")
            if len(self.masks[mnem]) != n:
                raise ValueError(f"mask for {mnem!r} misaligned")
        if n > 1 and not np.all(np.diff(self.depth) > 0):
            raise ValueError("depth must be strictly increasing")

    @classmethod
    def build(cls, well_name, depth, curves, null_value=DEFAULT_NULL, units=None,
              depth_unit="M"):
        """Construct a CurveSet, deriving masks from null-value equality."""
        depth = np.asarray(depth, dtype=float)
        curve_arrays = {m: np.asarray(v, dtype=float) for m, v in curves.items()}
        masks = {m: v == null_value for m, v in curve_arrays.items()}
        return cls(well_name, depth, curve_arrays, masks,
                   null_value=null_value, units=dict(units or {}), depth_unit=depth_unit)

    @property
    def n_rows(self) -> int:
        return len(self.depth)

    @property
    def mnemonics(self) -> list[str]:
        return list(self.curves)

    def require(self, mnemonic: str) -> np.ndarray:
        """Return the value array for a mnemonic, or raise MissingCurveError."""
        try:
            return self.curves[mnemonic]
        except KeyError:
            raise MissingCurveError(
                f"curve {mnemonic!r} not found; available: {', '.join(self.curves)}"
            ) from None

    def mask(self, mnemonic: str) -> np.ndarray:
        self.require(mnemonic)
        return self.masks[mnemonic]

    def take(self, row_index: np.ndarray) -> "CurveSet":
        """Return a new CurveSet keeping only the given rows (sorted index)."""
        return CurveSet(
            self.well_name,
            self.depth[row_index],
            {m: v[row_index] for m, v in self.curves.items()},
            {m: v[row_index] for m, v in self.masks.items()},
            null_value=self.null_value,
            units=dict(self.units),
            depth_unit=self.depth_unit,
        )


@dataclass(frozen=True)
class CurveSelection:
    """Curves used as clustering features plus optional washout inputs."""

    mnemonics: tuple[str, ...]
    caliper_mnemonic: str | None = None
    bit_size: float | None = None

    def __post_init__(self):
        if not self.mnemonics:
            raise ValueError("at least one feature mnemonic is required")
        if len(set(self.mnemonics)) != len(self.mnemonics):
            raise ValueError("feature mnemonics must be duplicate-free")
        object.__setattr__(self, "mnemonics", tuple(self.mnemonics))

    def validate_against(self, cs: CurveSet) -> None:
        for m in self.mnemonics:
            cs.require(m)


def _read_text(source) -> str:
    if isinstance(source, bytes):
        return source.decode("ascii", errors="replace")
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("ascii", errors="replace")
    return data


def _parse_header_line(line: str):
    """Split 'MNEM.UNIT  DATA : DESCR' into (mnemonic, unit, data)."""
    body = line.rsplit(":", 1)[0]
    if "." not in body:
        return None
    name, rest = body.split(".", 1)
    # Unit runs from the dot to the first whitespace.
    if rest[:1].isspace() or rest == "":
        unit, data = "", rest
    else:
        parts = rest.split(None, 1)
        unit = parts[0]
        data = parts[1] if len(parts) > 1 else ""
    return name.strip(), unit.strip(), data.strip()


def parse_las(source) -> CurveSet:
    """Parse LAS 2.0 text (str, bytes, or file object) into a CurveSet.

    The NULL sentinel comes from the ~W section (default -999.25). Wrapped
    and unwrapped data are both handled. Depths logged in feet are converted
    to meters; descending files are flipped so depth always increases.
    """
    text = _read_text(source)
    lines = text.splitlines()

    section = None
    wrap = False
    version = None
    null_value = DEFAULT_NULL
    well_name = ""
    curve_names: list[str] = []
    curve_units: list[str] = []
    data_tokens: list[tuple[str, int]] = []  # (token, line_no) for wrapped files
    rows: list[list[float]] = []
    row_lines: list[int] = []
    saw_data_section = False

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("~"):
            letter = line[1:2].upper()
            if letter not in _KNOWN_SECTIONS:
                raise UnsupportedLasError(
                    f"unsupported section {line.split()[0]!r} (LAS 3.0?)", line_no
                )
            section = letter
            if section == "A":
                saw_data_section = True
                if not curve_names:
                    raise MissingSectionError("~A section before ~C curve list", line_no)
            continue

        if section == "V":
            parsed = _parse_header_line(line)
            if parsed is None:
                continue
            name, _, data = parsed
            key = name.upper()
            if key == "VERS":
                try:
                    version = float(data)
                except ValueError:
                    raise LasParseError(f"unreadable VERS value {data!r}", line_no)
                if version >= 3.0:
                    raise UnsupportedLasError(
                        f"LAS {data} not supported; only 2.0 files are read", line_no
                    )
            elif key == "WRAP":
                wrap = data.upper().startswith("Y")
        elif section == "W":
            parsed = _parse_header_line(line)
            if parsed is None:
                continue
            name, _, data = parsed
            key = name.upper()
            if key == "NULL" and data:
                try:
                    null_value = float(data)
                except ValueError:
                    raise LasParseError(f"unreadable NULL value {data!r}", line_no)
            elif key == "WELL":
                well_name = data
        elif section == "C":
            parsed = _parse_header_line(line)
            if parsed is None:
                continue
            name, unit, _ = parsed
            if name in curve_names:
                # Tools occasionally repeat a mnemonic; keep both columns.
                suffix = 2
                while f"{name}_{suffix}" in curve_names:
                    suffix += 1
                logger.warning("duplicate curve mnemonic %r renamed to %s_%d",
                               name, name, suffix)
                name = f"{name}_{suffix}"
            curve_names.append(name)
            curve_units.append(unit)
        elif section == "A":
            tokens = line.split()
            if wrap:
                data_tokens.extend((tok, line_no) for tok in tokens)
            else:
                if len(tokens) != len(curve_names):
                    raise CurveCountMismatchError(
                        f"expected {len(curve_names)} values, found {len(tokens)}",
                        line_no,
                    )
                rows.append(_floats(tokens, line_no))
                row_lines.append(line_no)

    if not saw_data_section:
        raise MissingSectionError("no ~A data section found")
    if not curve_names:
        raise MissingSectionError("no ~C curve section found")

    if wrap:
        ncurves = len(curve_names)
        for start in range(0, len(data_tokens) - ncurves + 1, ncurves):
            chunk = data_tokens[start:start + ncurves]
            rows.append(_floats([t for t, _ in chunk], chunk[0][1]))
            row_lines.append(chunk[0][1])
        leftover = len(data_tokens) % ncurves
        if leftover:
            raise CurveCountMismatchError(
                f"{leftover} trailing values do not fill a {ncurves}-curve record",
                data_tokens[-1][1],
            )

    if not rows:
        raise MissingSectionError("~A section contains no data rows")

    table = np.array(rows, dtype=float)
    depth = table[:, 0]

    keep, descending = _depth_order(depth, row_lines)
    table = table[keep]
    if descending:
        table = table[::-1]

    depth_unit = curve_units[0].upper() if curve_units else "M"
    if depth_unit in _FEET_UNITS:
        table[:, 0] = table[:, 0] * FEET_TO_METERS
        depth_unit = "M"

    curves = {name: table[:, j] for j, name in enumerate(curve_names[1:], start=1)}
    units = dict(zip(curve_names, curve_units))
    units[curve_names[0]] = depth_unit
    return CurveSet.build(
        well_name, table[:, 0].copy(), curves,
        null_value=null_value, units=units, depth_unit=depth_unit,
    )


def _floats(tokens: list[str], line_no: int) -> list[float]:
    out = []
    for tok in tokens:
        try:
            out.append(float(tok))
        except ValueError:
            raise NonNumericDataError(f"non-numeric token {tok!r}", line_no) from None
    return out


def _depth_order(depth: np.ndarray, row_lines: list[int]):
    """Validate monotone depth, dropping duplicate rows (keep-first).

    Returns (row indices to keep, file-order-is-descending flag).
    """
    keep = [0]
    direction = 0  # +1 increasing, -1 decreasing, 0 unknown
    last = depth[0]
    for i in range(1, len(depth)):
        d = depth[i] - last
        if d == 0:
            logger.warning("duplicate depth %s at line %d; keeping first occurrence",
                           depth[i], row_lines[i])
            continue
        step = 1 if d > 0 else -1
        if direction == 0:
            direction = step
        elif step != direction:
            raise NonMonotoneDepthError(
                f"depth {depth[i]} breaks {'increasing' if direction > 0 else 'decreasing'} order",
                row_lines[i],
            )
        keep.append(i)
        last = depth[i]
    return np.array(keep, dtype=int), direction < 0


def slice_depth(cs: CurveSet, top: float, base: float) -> CurveSet:
    """Return the rows with top <= depth <= base (inclusive on both ends)."""
    if not top < base:
        raise ValueError(f"top ({top}) must be less than base ({base})")
    index = np.nonzero((cs.depth >= top) & (cs.depth <= base))[0]
    if index.size == 0:
        raise EmptySliceError(
            f"no samples between {top} m and {base} m "
            f"(well covers {cs.depth[0]} m to {cs.depth[-1]} m)"
        )
    return cs.take(index)


def _fmt(value: float) -> str:
    # repr keeps the shortest digit string that round-trips the double.
    return repr(float(value))


def write_las(cs: CurveSet) -> str:
    """Serialize a CurveSet back to unwrapped LAS 2.0 text.

    Masked values are written as the null sentinel, so parse_las(write_las(cs))
    reproduces depth, curve arrays, and masks bit for bit.
    """
    depth = cs.depth
    step = depth[1] - depth[0] if len(depth) > 1 else 0.0
    if len(depth) > 2 and not np.allclose(np.diff(depth), step):
        step = 0.0  # LAS convention for irregular sampling

    out = io.StringIO()
    out.write("~Version\n")
    out.write(" VERS.                 2.0 : CWLS Log ASCII Standard - VERSION 2.0\n")
    out.write(" WRAP.                  NO : One line per depth step\n")
    out.write("~Well\n")
    out.write(f" STRT.{cs.depth_unit}     {_fmt(depth[0])} : first depth\n")
    out.write(f" STOP.{cs.depth_unit}     {_fmt(depth[-1])} : last depth\n")
    out.write(f" STEP.{cs.depth_unit}     {_fmt(step)} : depth increment\n")
    out.write(f" NULL.     {_fmt(cs.null_value)} : null value\n")
    out.write(f" WELL.     {cs.well_name} : well name\n")
    out.write("~Curve\n")
    out.write(f" DEPT.{cs.depth_unit} : depth\n")
    for mnem in cs.curves:
        unit = cs.units.get(mnem, "")
        out.write(f" {mnem}.{unit} :\n")
    out.write("~ASCII\n")
    columns = [depth]
    for mnem, values in cs.curves.items():
        col = values.copy()
        col[cs.masks[mnem]] = cs.null_value
        columns.append(col)
    for i in range(len(depth)):
        out.write(" ".join(_fmt(col[i]) for col in columns))
        out.write("\n")
    return out.getvalue()


def curveset_to_csv(cs: CurveSet) -> str:
    """Normalized CSV dump: depth plus one column per curve, masked cells empty."""
    header = ["depth"] + list(cs.curves)
    out = io.StringIO()
    out.write(",".join(header) + "\n")
    for i in range(cs.n_rows):
        cells = [_fmt(cs.depth[i])]
        for mnem, values in cs.curves.items():
            cells.append("" if cs.masks[mnem][i] else _fmt(values[i]))
        out.write(",".join(cells) + "\n")
    return out.getvalue()
