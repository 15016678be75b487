"""Command-line front end; a thin client over the service layer.

Exit codes: 0 success, 2 input error, 3 numerical degeneracy (boundary or
identically-zero polynomial), 4 verification failure.
"""

from __future__ import annotations

import json
import sys

import click

from .client import ServiceClient, ServiceError


def _parse_floats(text: str, n: int, what: str) -> tuple[float, ...]:
    try:
        parts = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise click.UsageError(f"{what} must be {n} comma-separated numbers")
    if len(parts) != n:
        raise click.UsageError(f"{what} must have exactly {n} components")
    return parts


def _parse_grid(text: str) -> dict:
    try:
        spec1, spec2 = text.split(",")
        lo1, hi1, n1 = spec1.split(":")
        lo2, hi2, n2 = spec2.split(":")
        return {
            "b1_min": float(lo1),
            "b1_max": float(hi1),
            "n1": int(n1),
            "b2_min": float(lo2),
            "b2_max": float(hi2),
            "n2": int(n2),
        }
    except ValueError:
        raise click.UsageError("grid must look like min1:max1:n1,min2:max2:n2")


def _coupling_payload(alpha, beta, gravitational) -> dict:
    picked = sum([alpha is not None, beta is not None, bool(gravitational)])
    if picked != 1:
        raise click.UsageError("give exactly one of --alpha, --beta, --gravitational")
    if alpha is not None:
        return {"alpha": _parse_floats(alpha, 3, "--alpha")}
    if beta is not None:
        return {"beta": _parse_floats(beta, 2, "--beta")}
    return {"gravitational": True}


def _emit_json(data: dict):
    click.echo(json.dumps(data, indent=2, sort_keys=True))


def _run(client: ServiceClient, path: str, payload: dict) -> dict:
    try:
        return client.post(path, payload)
    except ServiceError as exc:
        click.echo(json.dumps({"error": {"kind": exc.kind, "message": str(exc)}}), err=True)
        sys.exit(exc.exit_code)


_server_option = click.option(
    "--server", default=None, help="service base URL; default runs in-process"
)
_mass_option = click.option("--m", "masses", default="1,1,1", help="masses m1,m2,m3")


@click.group()
def main():
    """Central configurations of the charged three-body problem."""


@main.command()
@_mass_option
@click.option("--alpha", default=None, help="couplings a1,a2,a3")
@click.option("--beta", default=None, help="reduced couplings b1,b2 (a3 = 1)")
@click.option("--gravitational", is_flag=True, help="use a_i = m_j * m_k")
@click.option("--tol", default=1e-8, show_default=True, help="CC residual tolerance")
@click.option("--json", "as_json", is_flag=True, default=True, help="JSON to stdout")
@_server_option
def roots(masses, alpha, beta, gravitational, tol, as_json, server):
    """Isolate the real roots of the reduced quintic and certify the
    associated collinear central configurations."""
    payload = {"m": _parse_floats(masses, 3, "--m"), "tol": tol}
    payload.update(_coupling_payload(alpha, beta, gravitational))
    with ServiceClient(server) as client:
        data = _run(client, "/api/roots", payload)
    _emit_json(data)


@main.command()
@_mass_option
@click.option(
    "--grid",
    default="-5:5:201,-5:5:201",
    show_default=True,
    help="sweep grid min1:max1:n1,min2:max2:n2",
)
@click.option("--csv", "csv_path", type=click.Path(writable=True), default=None, help="CSV output path")
@click.option("--svg", "svg_path", type=click.Path(writable=True), default=None, help="SVG output path")
@_server_option
def regions(masses, grid, csv_path, svg_path, server):
    """Classify every grid point into its root-count region; write CSV and
    optionally an SVG figure with the fold curve overlaid."""
    payload = {
        "m": _parse_floats(masses, 3, "--m"),
        "grid": _parse_grid(grid),
        "include_svg": svg_path is not None,
    }
    with ServiceClient(server) as client:
        data = _run(client, "/api/regions", payload)
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            fh.write(data["csv"])
    else:
        click.echo(data["csv"], nl=False)
    if svg_path:
        with open(svg_path, "w", newline="") as fh:
            fh.write(data["svg"])
    summary = {
        "cells": data["cells"],
        "boundary_cells": data["boundary_cells"],
        "distinct_triples": data["distinct_triples"],
        "regions_seen": data["regions_seen"],
    }
    click.echo(json.dumps(summary, sort_keys=True), err=True)


@main.command()
@click.option("--m", "masses", default=None, help="masses m1,m2,m3")
@click.option("--mu", type=float, default=None, help="masses (mu, mu, 1)")
@click.option("--samples", default=200, show_default=True, help="base samples per branch")
@click.option("--csv", "csv_path", type=click.Path(writable=True), default=None, help="CSV output path")
@_server_option
def curve(masses, mu, samples, csv_path, server):
    """Trace the double-root (fold) curve of the parameter plane."""
    if (masses is None) == (mu is None):
        raise click.UsageError("give exactly one of --m or --mu")
    payload: dict = {"samples": samples}
    if masses is not None:
        payload["m"] = _parse_floats(masses, 3, "--m")
    else:
        payload["mu"] = mu
    with ServiceClient(server) as client:
        data = _run(client, "/api/curve", payload)
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            fh.write(data["csv"])
    else:
        click.echo(data["csv"], nl=False)
    meta = {k: data[k] for k in ("samples", "cusps", "infinity_parameters")}
    click.echo(json.dumps(meta, sort_keys=True), err=True)


@main.command(name="special-points")
@click.option("--mu", type=float, required=True, help="masses (mu, mu, 1), mu > 0")
@_server_option
def special_points(mu, server):
    """Closed-form cusps and points at infinity of the fold curve, with
    residual certificates."""
    if not mu > 0:
        raise click.UsageError("--mu must be positive")
    with ServiceClient(server) as client:
        data = _run(client, "/api/special-points", {"mu": mu})
    _emit_json(data)


@main.command()
@_mass_option
@click.option("--alpha", default=None, help="couplings a1,a2,a3")
@click.option("--beta", default=None, help="reduced couplings b1,b2 (a3 = 1)")
@click.option("--gravitational", is_flag=True, help="use a_i = m_j * m_k")
@click.option("--u", type=float, default=None, help="collinear root to use")
@click.option("--noncollinear", is_flag=True, help="use the non-collinear CC")
@click.option("--lam", type=float, default=None, help="multiplier gauge (default: I = 1)")
@click.option("--tol", default=1e-9, show_default=True, help="rank threshold")
@_server_option
def releq(masses, alpha, beta, gravitational, u, noncollinear, lam, tol, server):
    """Build the relative equilibrium over a central configuration and test
    the integral map's Jacobian rank."""
    if (u is None) == (not noncollinear):
        raise click.UsageError("give exactly one of --u or --noncollinear")
    payload = {"m": _parse_floats(masses, 3, "--m"), "tol": tol, "noncollinear": noncollinear}
    if u is not None:
        payload["u"] = u
    if lam is not None:
        payload["lam"] = lam
    payload.update(_coupling_payload(alpha, beta, gravitational))
    with ServiceClient(server) as client:
        data = _run(client, "/api/releq", payload)
    _emit_json(data)


@main.command()
@click.option("--seed", default=2024, show_default=True)
@click.option("--iterations", default=100, show_default=True)
@_server_option
def verify(seed, iterations, server):
    """Run the seeded cross-module property suites; exit 4 on any failure."""
    if iterations < 0:
        raise click.UsageError("--iterations must be >= 0")
    with ServiceClient(server) as client:
        data = _run(client, "/api/verify", {"seed": seed, "iterations": iterations})
    for line in data["lines"]:
        click.echo(line)
    if not data["passed"]:
        click.echo("verification FAILED", err=True)
        sys.exit(4)
    click.echo("verification passed" if data["lines"] else "verification passed (vacuous)")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("charged3body.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
