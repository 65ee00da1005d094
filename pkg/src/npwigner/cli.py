"""Command-line front end.

Every command marshals files and flags into a request against the HTTP
service (in-process by default, remote with --base-url) and writes the
response payload back out; no numeric work happens client-side. The path "-"
means stdin/stdout. Exit codes: 0 success, 1 verification failure, 2
usage/parse error, 3 numeric-validation error.
"""

from __future__ import annotations

import asyncio
import sys
from pathlib import Path

import click
import httpx

from . import __version__
from .grids import PolarGrid
from .serialization import _render_json as render_json, polar_grid_to_json
from .service import create_app

__all__ = ["main"]

_EXIT_VERIFY = 1
_EXIT_USAGE = 2
_EXIT_NUMERIC = 3


class ToolError(click.ClickException):
    """ClickException with a configurable exit code."""

    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


class ServiceClient:
    """POSTs to the in-process app unless a remote base URL is given."""

    def __init__(self, base_url: str | None):
        self.base_url = base_url

    async def _post(self, path: str, payload: dict) -> httpx.Response:
        if self.base_url is not None:
            async with httpx.AsyncClient(base_url=self.base_url, timeout=600.0) as client:
                return await client.post(path, json=payload)
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://npwigner.internal",
                                     timeout=600.0) as client:
            return await client.post(path, json=payload)

    def post(self, path: str, payload: dict) -> dict:
        try:
            response = asyncio.run(self._post(path, payload))
        except httpx.HTTPError as exc:
            raise ToolError(f"service unreachable: {exc}", _EXIT_USAGE) from None
        if response.status_code == 200:
            return response.json()
        try:
            body = response.json()
        except ValueError:
            body = {}
        message = body.get("message", response.text or f"HTTP {response.status_code}")
        kind = body.get("kind")
        if kind == "numeric":
            raise ToolError(str(message), _EXIT_NUMERIC)
        if kind == "parse" or response.status_code == 400:
            raise ToolError(str(message), _EXIT_USAGE)
        raise ToolError(str(message), _EXIT_VERIFY)


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ToolError(f"cannot read {path}: {exc}", _EXIT_USAGE) from None


def write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ToolError(f"cannot write {path}: {exc}", _EXIT_USAGE) from None


def _parse_rows(rows: str | None) -> list[int] | None:
    if rows is None:
        return None
    try:
        return [int(tok) for tok in rows.split(",") if tok.strip() != ""]
    except ValueError:
        raise ToolError(f"--rows expects comma-separated integers, got {rows!r}",
                        _EXIT_USAGE) from None


def _sidecar_path(path: str) -> Path:
    return Path(path).with_name(Path(path).name + ".grid.json")


_dim_option = click.option("--dim", type=click.IntRange(min=2), required=True,
                           help="Fock-space dimension D (levels 0..D-1).")
_seed_option = click.option("--seed", type=int, default=0, show_default=True,
                            help="Seed for random:<seed> descriptors.")
_tol_option = click.option("--tol", type=float, default=None,
                           help="Override every validation tolerance with one value.")
_tail_option = click.option("--allow-tail", is_flag=True,
                            help="Accept states whose truncation tail exceeds the tolerance.")


@click.group()
@click.version_option(version=__version__, prog_name="npwigner")
@click.option("--base-url", envvar="NPWIGNER_URL", default=None,
              help="Remote service URL; default runs the service in-process.")
@click.pass_context
def main(ctx: click.Context, base_url: str | None) -> None:
    """Number-phase Wigner toolkit."""
    ctx.obj = ServiceClient(base_url)


@main.command()
@_dim_option
@click.option("--state", required=True,
              help="Descriptor: number:n | coherent:re[,im] | cps:abs,phase | thermal:nbar | random[:seed].")
@_seed_option
@_tail_option
@click.option("--out", default="-", show_default=True, help="Density JSON path.")
@click.pass_obj
def state(client: ServiceClient, dim: int, state: str, seed: int, allow_tail: bool, out: str) -> None:
    """Write the density matrix of a named state."""
    body = client.post("/state", {"dim": dim, "state": state, "seed": seed,
                                  "allow_tail": allow_tail})
    write_text(out, body["density_json"])


@main.command()
@_dim_option
@click.option("--state", default=None, help="State descriptor (alternative to --in).")
@click.option("--in", "in_path", default=None, help="Density JSON path (alternative to --state).")
@click.option("--grid", type=click.IntRange(min=2), default=None,
              help="Phase-grid points M (default: smallest power of two >= 4*dim).")
@click.option("--rows", default=None, help="Comma-separated Fock rows to emit (plot data).")
@_seed_option
@_tol_option
@_tail_option
@click.option("--out", default="-", show_default=True, help="Wigner-table CSV path.")
@click.pass_obj
def npw(client: ServiceClient, dim: int, state: str | None, in_path: str | None,
        grid: int | None, rows: str | None, seed: int, tol: float | None,
        allow_tail: bool, out: str) -> None:
    """Tabulate the number-phase Wigner function of a state."""
    payload = {
        "dim": dim,
        "state": state,
        "density_json": read_text(in_path) if in_path is not None else None,
        "grid_points": grid,
        "rows": _parse_rows(rows),
        "seed": seed,
        "tol": tol,
        "allow_tail": allow_tail,
    }
    body = client.post("/npw", payload)
    write_text(out, body["csv"])


@main.command()
@click.option("--in", "in_path", required=True, help="Wigner-table CSV path.")
@click.option("--out", default="-", show_default=True, help="Reconstructed density JSON path.")
@click.option("--route", type=click.Choice(["closed_form", "recursive"]),
              default="closed_form", show_default=True)
@click.option("--ref", default=None, help="Reference density JSON to report the distance to.")
@_tol_option
@click.pass_obj
def reconstruct(client: ServiceClient, in_path: str, out: str, route: str,
                ref: str | None, tol: float | None) -> None:
    """Rebuild the density matrix from a Wigner table; print a diagnostics report.

    The report goes to stdout, or to stderr when the matrix itself is written
    to stdout.
    """
    payload = {
        "csv": read_text(in_path),
        "route": route,
        "reference_json": read_text(ref) if ref is not None else None,
        "tol": tol,
    }
    body = client.post("/reconstruct", payload)
    write_text(out, body["density_json"])
    click.echo(body["report"], nl=False, err=(out == "-"))


@main.command()
@_dim_option
@click.option("--state", default=None, help="State descriptor (alternative to --in).")
@click.option("--in", "in_path", default=None, help="Density JSON path (alternative to --state).")
@click.option("--s", "s_value", type=float, required=True, help="Ordering parameter s in [-1, 1).")
@click.option("--rmax", type=float, default=None, help="Radial cutoff (default max(4.5, 1.5*sqrt(dim))).")
@click.option("--nr", type=click.IntRange(min=1), default=None, help="Radial quadrature nodes (default 200).")
@click.option("--mgamma", type=click.IntRange(min=1), default=None,
              help="Angular nodes (default: power of two >= 4*dim).")
@_seed_option
@_tol_option
@_tail_option
@click.option("--out", default="-", show_default=True, help="W^(s) CSV path; a .grid.json sidecar is written next to it.")
@click.pass_obj
def cg(client: ServiceClient, dim: int, state: str | None, in_path: str | None,
       s_value: float, rmax: float | None, nr: int | None, mgamma: int | None,
       seed: int, tol: float | None, allow_tail: bool, out: str) -> None:
    """Tabulate the s-parametrized phase-space function W^(s) on a polar grid."""
    payload = {
        "dim": dim,
        "s": s_value,
        "state": state,
        "density_json": read_text(in_path) if in_path is not None else None,
        "r_max": rmax,
        "n_r": nr,
        "m_gamma": mgamma,
        "seed": seed,
        "tol": tol,
        "allow_tail": allow_tail,
    }
    body = client.post("/cg", payload)
    write_text(out, body["csv"])
    if out != "-":
        write_text(str(_sidecar_path(out)), body["grid_json"])


@main.command()
@_dim_option
@click.option("--in", "in_path", required=True, help="W^(s) CSV path (grid read from <in>.grid.json if present).")
@click.option("--grid", type=click.IntRange(min=2), default=None, help="Phase-grid points M.")
@click.option("--method", type=click.Choice(["direct", "composed"]), default="direct",
              show_default=True)
@click.option("--rmax", type=float, default=None, help="Radial cutoff if no sidecar is present.")
@click.option("--nr", type=click.IntRange(min=1), default=None, help="Radial nodes if no sidecar is present.")
@click.option("--mgamma", type=click.IntRange(min=1), default=None, help="Angular nodes if no sidecar is present.")
@click.option("--out", default="-", show_default=True, help="Wigner-table CSV path.")
@click.pass_obj
def bridge(client: ServiceClient, dim: int, in_path: str, grid: int | None, method: str,
           rmax: float | None, nr: int | None, mgamma: int | None, out: str) -> None:
    """Convert a W^(s) table into the number-phase Wigner table."""
    body = client.post("/bridge", {
        "dim": dim,
        "csv": read_text(in_path),
        "grid_json": _polar_grid_json(in_path, dim, rmax, nr, mgamma),
        "grid_points": grid,
        "method": method,
    })
    write_text(out, body["csv"])


@main.command()
@_dim_option
@click.option("--state", default=None, help="thermal:<nbar>, whose P function is sampled analytically.")
@click.option("--in", "in_path", default=None, help="CSV of P samples in W^(s)-table format with s = 1.")
@click.option("--grid", type=click.IntRange(min=2), default=None, help="Phase-grid points M.")
@click.option("--rmax", type=float, default=None, help="Radial cutoff.")
@click.option("--nr", type=click.IntRange(min=1), default=None, help="Radial nodes.")
@click.option("--mgamma", type=click.IntRange(min=1), default=None, help="Angular nodes.")
@click.option("--out", default="-", show_default=True, help="Wigner-table CSV path.")
@click.pass_obj
def pbridge(client: ServiceClient, dim: int, state: str | None, in_path: str | None,
            grid: int | None, rmax: float | None, nr: int | None, mgamma: int | None,
            out: str) -> None:
    """Convert Glauber-Sudarshan P samples into the number-phase Wigner table."""
    payload = {
        "dim": dim,
        "state": state,
        "p_csv": read_text(in_path) if in_path is not None else None,
        "grid_json": _polar_grid_json(in_path, dim, rmax, nr, mgamma)
        if in_path is not None else None,
        "grid_points": grid,
        "r_max": rmax,
        "n_r": nr,
        "m_gamma": mgamma,
    }
    body = client.post("/pbridge", payload)
    write_text(out, body["csv"])


@main.command()
@click.option("--dim", type=click.IntRange(min=2), default=16, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--corrupt", is_flag=True,
              help="Debug: flip the sign of one density entry after loading.")
@click.option("--out", default="-", show_default=True, help="JSON report path.")
@click.pass_obj
def verify(client: ServiceClient, dim: int, seed: int, corrupt: bool, out: str) -> None:
    """Run the identity-check suite; exit 0 only if every check passes."""
    body = client.post("/verify", {"dim": dim, "seed": seed, "corrupt": corrupt})
    write_text(out, render_json(body["checks"]) + "\n")
    if not body["passed"]:
        failed = sorted(name for name, entry in body["checks"].items() if not entry["pass"])
        raise ToolError(f"checks failed: {', '.join(failed)}", _EXIT_VERIFY)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)


def _polar_grid_json(in_path: str, dim: int, rmax: float | None, nr: int | None,
                     mgamma: int | None) -> str:
    """Grid metadata for a CSV: the sidecar written next to it, or flag overrides."""
    if in_path != "-":
        sidecar = _sidecar_path(in_path)
        if sidecar.exists():
            return read_text(str(sidecar))
    # No sidecar: rebuild the grid metadata from flags/defaults; node mismatches
    # are caught when the CSV coordinates are checked against it server-side.
    return polar_grid_to_json(PolarGrid.default_for(dim, r_max=rmax, n_r=nr, m_gamma=mgamma))


if __name__ == "__main__":
    main()
