"""File formats: density JSON, Wigner-table CSVs, grid and symbol JSON.

All floats are written with 17 significant digits (enough to round-trip a
double exactly) and a locale-independent decimal point. Readers raise
FormatError for malformed documents and NumericValidationError (via the type
constructors) for well-formed documents whose payload violates invariants.
"""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .config import DEFAULT_TOLERANCES, FormatError, Tolerances
from .fock import DensityMatrix
from .grids import PhaseGrid, PolarGrid
from .npw import NPWignerTable
from .phase_ops import FourierSymbol
from .reconstruct import FourierLadder
from .cahill_glauber import CGTable

__all__ = [
    "format_float",
    "density_to_json",
    "density_from_json",
    "npw_table_to_csv",
    "npw_table_from_csv",
    "cg_table_to_csv",
    "cg_table_from_csv",
    "polar_grid_to_json",
    "polar_grid_from_json",
    "fourier_symbol_to_json",
    "fourier_symbol_from_json",
    "ladder_to_debug_json",
    "ladder_from_debug_json",
]

# Grid nodes recomputed from metadata must match the file's coordinate
# columns; 17-digit output round-trips doubles exactly, so this is loose.
_NODE_TOL = 1e-9


def format_float(x: float) -> str:
    """17-significant-digit decimal form of a finite double."""
    if not math.isfinite(x):
        raise FormatError(f"cannot serialize non-finite value {x!r}")
    return format(float(x), ".17g")


def _render_json(obj) -> str:
    """json.dumps with floats forced through format_float."""
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_render_json(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_render_json(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    raise FormatError(f"cannot serialize object of type {type(obj).__name__}")


def _parse_json(text: str, what: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid {what} JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError(f"{what} JSON must be an object, got {type(doc).__name__}")
    return doc


def _require(doc: dict, key: str, what: str):
    if key not in doc:
        raise FormatError(f"{what} JSON is missing key {key!r}")
    return doc[key]


def _float_matrix(raw, shape: tuple[int, int], what: str) -> np.ndarray:
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError):
        raise FormatError(f"{what} must be a rectangular numeric array") from None
    if arr.shape != shape:
        raise FormatError(f"{what} has shape {arr.shape}, expected {shape}")
    return arr


# -- density matrix -----------------------------------------------------------

def density_to_json(rho: DensityMatrix) -> str:
    doc = {
        "dim": rho.dim,
        "re": rho.matrix.real.tolist(),
        "im": rho.matrix.imag.tolist(),
    }
    return _render_json(doc) + "\n"


def density_from_json(text: str, *, tolerances: Tolerances | None = None) -> DensityMatrix:
    doc = _parse_json(text, "density")
    dim = _require(doc, "dim", "density")
    if not isinstance(dim, int) or dim < 1:
        raise FormatError(f"density dim must be a positive integer, got {dim!r}")
    re = _float_matrix(_require(doc, "re", "density"), (dim, dim), "density 're'")
    im = _float_matrix(_require(doc, "im", "density"), (dim, dim), "density 'im'")
    tolerances = tolerances if tolerances is not None else DEFAULT_TOLERANCES
    return DensityMatrix.from_matrix(re + 1j * im, tolerances=tolerances)


# -- number-phase Wigner table -------------------------------------------------

def npw_table_to_csv(table: NPWignerTable, rows: list[int] | None = None) -> str:
    """CSV with header phi,n,rho_w in (phi-major, n-minor) order.

    rows selects a subset of Fock levels (plot emission); the full table is
    required for a lossless reload.
    """
    dim = table.dim
    if rows is None:
        selected = list(range(dim))
    else:
        selected = [int(n) for n in rows]
        bad = [n for n in selected if not 0 <= n < dim]
        if bad:
            raise FormatError(f"row selection {bad} outside Fock range 0..{dim - 1}")
    out = io.StringIO()
    out.write("phi,n,rho_w\n")
    nodes = table.grid.nodes
    for j in range(table.grid.m_points):
        phi = format_float(nodes[j])
        for n in selected:
            out.write(f"{phi},{n},{format_float(table.values[j, n])}\n")
    return out.getvalue()


def _read_csv_rows(text: str, header: list[str], what: str) -> list[list[str]]:
    reader = csv.reader(io.StringIO(text))
    try:
        first = next(reader)
    except StopIteration:
        raise FormatError(f"{what} CSV is empty") from None
    if [h.strip() for h in first] != header:
        raise FormatError(f"{what} CSV header {first} != expected {header}")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise FormatError(f"{what} CSV line {lineno}: {len(row)} fields, expected {len(header)}")
        rows.append(row)
    if not rows:
        raise FormatError(f"{what} CSV has a header but no data rows")
    return rows


def _parse_float_field(token: str, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise FormatError(f"{what}: not a number: {token!r}") from None
    if not math.isfinite(value):
        raise FormatError(f"{what}: non-finite value {token!r}")
    return value


def npw_table_from_csv(text: str, *, norm_tol: float = 1e-10) -> NPWignerTable:
    rows = _read_csv_rows(text, ["phi", "n", "rho_w"], "Wigner table")
    phis: list[float] = []
    levels: list[int] = []
    vals: list[float] = []
    for row in rows:
        phis.append(_parse_float_field(row[0], "phi column"))
        try:
            levels.append(int(row[1]))
        except ValueError:
            raise FormatError(f"n column: not an integer: {row[1]!r}") from None
        vals.append(_parse_float_field(row[2], "rho_w column"))
    n_arr = np.asarray(levels)
    dim = int(n_arr.max()) + 1
    if n_arr.min() < 0:
        raise FormatError("n column contains negative Fock levels")
    if len(rows) % dim != 0:
        raise FormatError(f"row count {len(rows)} is not a multiple of dim {dim}")
    m_points = len(rows) // dim
    expected_n = np.tile(np.arange(dim), m_points)
    if not np.array_equal(n_arr, expected_n):
        raise FormatError("rows are not a full (phi-major, n-minor) grid over 0..dim-1")
    grid = PhaseGrid(m_points)
    phi_arr = np.asarray(phis).reshape(m_points, dim)
    if np.max(np.abs(phi_arr - grid.nodes[:, None])) > _NODE_TOL:
        raise FormatError(
            f"phi column does not match the uniform grid of {m_points} points on [-pi, pi)"
        )
    values = np.asarray(vals).reshape(m_points, dim)
    return NPWignerTable(grid, values, norm_tol)


# -- polar grid and W^(s) table ------------------------------------------------

def polar_grid_to_json(grid: PolarGrid) -> str:
    doc = {"r_max": grid.r_max, "n_r": grid.n_r, "m_gamma": grid.m_gamma}
    return _render_json(doc) + "\n"


def polar_grid_from_json(text: str) -> PolarGrid:
    doc = _parse_json(text, "polar grid")
    r_max = _require(doc, "r_max", "polar grid")
    n_r = _require(doc, "n_r", "polar grid")
    m_gamma = _require(doc, "m_gamma", "polar grid")
    if not isinstance(n_r, int) or not isinstance(m_gamma, int):
        raise FormatError("polar grid n_r and m_gamma must be integers")
    if not isinstance(r_max, (int, float)) or isinstance(r_max, bool):
        raise FormatError("polar grid r_max must be a number")
    return PolarGrid(float(r_max), n_r, m_gamma)


def cg_table_to_csv(table: CGTable) -> str:
    """CSV with header abs_alpha,gamma,s,re,im in (radius-major, angle-minor) order."""
    out = io.StringIO()
    out.write("abs_alpha,gamma,s,re,im\n")
    grid = table.grid
    s_txt = format_float(table.s)
    gammas = [format_float(g) for g in grid.gamma_nodes]
    for i in range(grid.n_r):
        r_txt = format_float(grid.r_nodes[i])
        for q in range(grid.m_gamma):
            v = table.values[i, q]
            out.write(f"{r_txt},{gammas[q]},{s_txt},{format_float(v.real)},{format_float(v.imag)}\n")
    return out.getvalue()


def cg_table_from_csv(text: str, grid: PolarGrid) -> CGTable:
    rows = _read_csv_rows(text, ["abs_alpha", "gamma", "s", "re", "im"], "W^(s) table")
    expected = grid.n_r * grid.m_gamma
    if len(rows) != expected:
        raise FormatError(
            f"W^(s) CSV has {len(rows)} rows; grid (n_r={grid.n_r}, m_gamma={grid.m_gamma}) "
            f"needs {expected}"
        )
    data = np.empty((expected, 5))
    for idx, row in enumerate(rows):
        for c, name in enumerate(("abs_alpha", "gamma", "s", "re", "im")):
            data[idx, c] = _parse_float_field(row[c], f"{name} column")
    s_col = data[:, 2]
    if np.ptp(s_col) != 0.0:
        raise FormatError("s column is not constant across the table")
    r_col = data[:, 0].reshape(grid.n_r, grid.m_gamma)
    g_col = data[:, 1].reshape(grid.n_r, grid.m_gamma)
    if np.max(np.abs(r_col - grid.r_nodes[:, None])) > _NODE_TOL:
        raise FormatError("abs_alpha column does not match the radial quadrature nodes")
    if np.max(np.abs(g_col - grid.gamma_nodes[None, :])) > _NODE_TOL:
        raise FormatError("gamma column does not match the uniform angular nodes")
    values = (data[:, 3] + 1j * data[:, 4]).reshape(grid.n_r, grid.m_gamma)
    return CGTable(grid, float(s_col[0]), values)


# -- phase-function Fourier symbol ----------------------------------------------

def fourier_symbol_to_json(symbol: FourierSymbol) -> str:
    doc = {
        "m_max": symbol.m_max,
        "coef_re": symbol.coefficients.real.tolist(),
        "coef_im": symbol.coefficients.imag.tolist(),
    }
    return _render_json(doc) + "\n"


def fourier_symbol_from_json(text: str) -> FourierSymbol:
    doc = _parse_json(text, "Fourier symbol")
    m_max = _require(doc, "m_max", "Fourier symbol")
    if not isinstance(m_max, int) or m_max < 0:
        raise FormatError(f"Fourier symbol m_max must be a non-negative integer, got {m_max!r}")
    n = 2 * m_max + 1
    re = _float_matrix(_require(doc, "coef_re", "Fourier symbol"), (n,), "Fourier symbol 'coef_re'")
    im = _float_matrix(_require(doc, "coef_im", "Fourier symbol"), (n,), "Fourier symbol 'coef_im'")
    return FourierSymbol(re + 1j * im)


# -- ladder debug dump -----------------------------------------------------------

def ladder_to_debug_json(ladder: FourierLadder) -> str:
    """Diagnostic dump: diagonal sums plus (m, n, re, im) triples of the coefficients."""
    dim = ladder.dim
    ms: list[int] = []
    ns: list[int] = []
    res: list[float] = []
    ims: list[float] = []
    for m in range(1, dim):
        for n in range(dim - m):
            c = ladder.coeffs[m, n]
            ms.append(m)
            ns.append(n)
            res.append(float(c.real))
            ims.append(float(c.imag))
    doc = {
        "dim": dim,
        "d": ladder.diag_sum.tolist(),
        "m": ms,
        "n": ns,
        "re": res,
        "im": ims,
    }
    return _render_json(doc) + "\n"


def ladder_from_debug_json(text: str, *, norm_tol: float = 1e-10) -> FourierLadder:
    doc = _parse_json(text, "ladder dump")
    dim = _require(doc, "dim", "ladder dump")
    if not isinstance(dim, int) or dim < 1:
        raise FormatError(f"ladder dump dim must be a positive integer, got {dim!r}")
    d = _float_matrix(_require(doc, "d", "ladder dump"), (dim,), "ladder dump 'd'")
    count = (dim * (dim - 1)) // 2
    ms = _float_matrix(_require(doc, "m", "ladder dump"), (count,), "ladder dump 'm'")
    ns = _float_matrix(_require(doc, "n", "ladder dump"), (count,), "ladder dump 'n'")
    res = _float_matrix(_require(doc, "re", "ladder dump"), (count,), "ladder dump 're'")
    ims = _float_matrix(_require(doc, "im", "ladder dump"), (count,), "ladder dump 'im'")
    coeffs = np.zeros((dim, dim), dtype=complex)
    for m, n, re, im in zip(ms, ns, res, ims):
        mi, ni = int(m), int(n)
        if mi != m or ni != n or not (1 <= mi < dim) or not (0 <= ni < dim - mi):
            raise FormatError(f"ladder dump entry (m={m}, n={n}) outside the valid triangle")
        coeffs[mi, ni] = re + 1j * im
    return FourierLadder(d, coeffs, norm_tol)
