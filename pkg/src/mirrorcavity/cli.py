"""Command-line front end: a thin client of the HTTP service.

Every compute subcommand builds one request, posts it to the service, writes
the returned CSV document verbatim, and prints the service's one-line summary.
By default the app is mounted in-process (no network, no daemon); pass
--server to target a running instance instead.  `serve` starts the service.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from dataclasses import dataclass
from pathlib import Path

import httpx

from .errors import ConfigError
from .params import parse_config
from .service import create_app

# flag/field name -> request payload key
PARAM_FLAGS = {
    "L0": "L0_m",
    "M": "M_kg",
    "omega_osc": "omega_osc",
    "omega_cut": "omega_cut",
    "hbar": "hbar",
    "c": "c",
}


@dataclass
class RunConfig:
    """One resolved invocation: command, request payload, and output path."""

    command: str
    payload: dict
    out: Path
    server: str | None


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _caps(text: str) -> tuple[int, int]:
    try:
        photons, mirror = (int(part) for part in text.split(","))
        return photons, mirror
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected PHOTONS,MIRROR integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrorcavity",
        description="Vacuum-field observables of a cavity with a harmonically bound quantum mirror.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value parameter file")
    common.add_argument("--out", metavar="PATH", help="output CSV path (default: <command>.csv)")
    common.add_argument("--server", metavar="URL", help="remote service URL (default: in-process)")
    for flag, _ in PARAM_FLAGS.items():
        common.add_argument(f"--{flag.replace('_', '-')}", type=float, dest=flag)

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="virtual photon number per mode")
    sub.add_parser("budget", parents=[common], help="second-order energy shift bookkeeping")

    force = sub.add_parser("force", parents=[common], help="Casimir energy/force correction")
    force.add_argument("--delta", type=float, default=1e-4, help="relative finite-difference step")
    force.add_argument("--strict", action="store_true", help="escalate cutoff-crossing warnings")

    dens = sub.add_parser("density", parents=[common], help="energy-density profile")
    dens.add_argument("--grid", type=int, default=1000, help="grid points over [0, L0]")
    dens.add_argument("--workers", type=int, default=1, help="parallel workers over grid chunks")

    sweep = sub.add_parser("sweep", parents=[common], help="stacked runs along one parameter axis")
    sweep.add_argument("--axis", required=True, choices=("omega_osc", "omega_cut", "M", "L0"))
    sweep.add_argument("--values", required=True, type=_float_list, metavar="CSVLIST")
    sweep.add_argument("--target", choices=("spectrum", "density"), default="spectrum")
    sweep.add_argument("--grid", type=int, default=1000)
    sweep.add_argument("--workers", type=int, default=1)

    oracle = sub.add_parser("oracle-check", parents=[common],
                            help="exact-diagonalization validation ladder (natural units)")
    oracle.add_argument("--lambda-ladder", type=_float_list, metavar="CSVLIST",
                        default=[0.1, 0.05, 0.025], dest="lambda_ladder")
    oracle.add_argument("--modes", type=int, default=2)
    oracle.add_argument("--caps", type=_caps, default=(4, 2), metavar="PHOTONS,MIRROR")
    oracle.add_argument("--mirror-mass", type=float, default=100.0,
                        help="natural-unit mirror mass for the oracle regime")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _resolve_params_payload(args: argparse.Namespace) -> dict:
    config_values: dict[str, float] = {}
    if args.config:
        try:
            config_values = parse_config(Path(args.config).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
    payload: dict[str, float] = {}
    for field, key in PARAM_FLAGS.items():
        if field in config_values:
            payload[key] = config_values[field]
    for flag, key in PARAM_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            payload[key] = value
    return payload


def build_run_config(args: argparse.Namespace) -> RunConfig:
    params = _resolve_params_payload(args)
    command = args.command
    if command in ("spectrum", "budget"):
        payload: dict = {"params": params}
    elif command == "force":
        payload = {"params": params, "delta": args.delta, "strict": args.strict}
    elif command == "density":
        payload = {"params": params, "grid_size": args.grid, "workers": args.workers}
    elif command == "sweep":
        payload = {
            "params": params,
            "axis": args.axis,
            "values": args.values,
            "target": args.target,
            "grid_size": args.grid,
            "workers": args.workers,
        }
    elif command == "oracle-check":
        photons, mirror = args.caps
        payload = {
            "n_modes": args.modes,
            "max_total_photons": photons,
            "max_mirror_quanta": mirror,
            "lambdas": args.lambda_ladder,
            "mirror_mass": args.mirror_mass,
        }
    else:  # pragma: no cover - parser restricts commands
        raise ValueError(command)
    out = Path(args.out) if args.out else Path(f"{command}.csv")
    return RunConfig(command=command, payload=payload, out=out, server=args.server)


def call_service(command: str, payload: dict, server: str | None = None) -> tuple[int, dict]:
    """POST one request; in-process ASGI by default, HTTP when server is given."""
    path = f"/{command}"
    timeout = httpx.Timeout(600.0)
    if server:
        response = httpx.post(server.rstrip("/") + path, json=payload, timeout=timeout)
        return response.status_code, response.json()

    async def _post() -> tuple[int, dict]:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://mirrorcavity.internal", timeout=timeout
        ) as client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()

    return asyncio.run(_post())


def run(config: RunConfig) -> int:
    status, body = call_service(config.command, config.payload, config.server)
    if status != 200:
        detail = body.get("detail", body)
        print(f"error ({status}): {detail}", file=sys.stderr)
        return 1
    config.out.parent.mkdir(parents=True, exist_ok=True)
    config.out.write_bytes(body["csv"].encode("utf-8"))
    for note in body.get("warnings", []):
        print(f"warning: {note}", file=sys.stderr)
    print(body["summary"])
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        import uvicorn

        uvicorn.run("mirrorcavity.service:app", host=args.host, port=args.port)
        return 0
    try:
        config = build_run_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return run(config)
    except httpx.HTTPError as exc:
        print(f"error: service request failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
