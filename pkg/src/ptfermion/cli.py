"""Command-line client for the service.

The CLI is a thin HTTP client: it marshals flags into a request, posts it
to the service (in-process by default, or a remote instance via --url),
and prints the response body verbatim.  Exit codes: 0 when every check in
the report passes, 1 when any verification fails, 2 for invalid input.
"""

from __future__ import annotations

import argparse
import asyncio
import sys

import httpx

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--tol", type=float, default=1e-10, help="residual tolerance")
    sub.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format"
    )
    sub.add_argument(
        "--url",
        default=None,
        help="base URL of a running service (default: run in process)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptfermion",
        description=(
            "PT-/CPT-symmetric fermionic algebra toolkit: construct the "
            "nilpotent families, verify their closed-form identities, and "
            "solve the fermion-boson model by three cross-checking routes."
        ),
    )
    cmds = parser.add_subparsers(dest="command", required=True)

    rep2 = cmds.add_parser("rep2", help="construct the 2x2 family")
    rep2.add_argument("--b", type=float, required=True)
    rep2.add_argument("--c", type=float, required=True)
    rep2.add_argument("--a-sign", type=int, choices=(1, -1), default=1)
    rep2.add_argument("--alpha", type=float, default=None)
    rep2.add_argument("--beta", type=float, default=None)
    rep2.add_argument("--gamma", type=float, default=None)
    _add_common(rep2)

    rep4 = cmds.add_parser("rep4", help="construct a 4x4 family")
    rep4.add_argument(
        "--family", choices=("rep4-12", "rep4-block"), required=True
    )
    rep4.add_argument(
        "--a", default="0", help="complex, e.g. '1+2i' (write --a=-i for a leading minus)"
    )
    rep4.add_argument("--b", default="0", help="complex")
    rep4.add_argument("--c", default="0", help="complex")
    rep4.add_argument("--f", default="0", help="complex")
    rep4.add_argument("--g4", default="0", help="complex")
    rep4.add_argument("--h", default="0", help="complex")
    rep4.add_argument("--alpha", type=float, default=None)
    rep4.add_argument("--beta4", type=float, default=None)
    rep4.add_argument("--f-sign", type=int, choices=(1, -1), default=1)
    rep4.add_argument("--gamma", type=float, default=None)
    rep4.add_argument("--g-sign", type=int, choices=(1, -1), default=1)
    _add_common(rep4)

    ver = cmds.add_parser("verify", help="randomized identity verification")
    ver.add_argument(
        "--family", choices=("rep2", "rep4-12", "rep4-block"), required=True
    )
    ver.add_argument("--trials", type=int, default=1000)
    ver.add_argument("--seed", type=int, default=0)
    _add_common(ver)

    spectrum = cmds.add_parser("lee-spectrum", help="truncated vs exact spectrum")
    spectrum.add_argument("--m", type=float, required=True)
    spectrum.add_argument("--M", type=float, required=True)
    spectrum.add_argument("--g", type=float, required=True)
    spectrum.add_argument("--nmax", type=int, default=64)
    spectrum.add_argument("--threshold", type=float, default=1e-8)
    _add_common(spectrum)

    coef = cmds.add_parser("lee-coeffs", help="coefficient routes, termwise")
    coef.add_argument("--m", type=float, required=True)
    coef.add_argument("--M", type=float, required=True)
    coef.add_argument("--g", type=float, required=True)
    coef.add_argument("--N", type=int, default=0)
    coef.add_argument("--terms", type=int, default=20)
    coef.add_argument(
        "--route", choices=("recursion", "genfunc", "both"), default="both"
    )
    _add_common(coef)

    conv = cmds.add_parser(
        "lee-converge", help="normalizability of the coefficient tail"
    )
    conv.add_argument("--m", type=float, required=True)
    conv.add_argument("--M", type=float, required=True)
    conv.add_argument("--g", type=float, required=True)
    conv.add_argument("--N", type=int, default=0)
    conv.add_argument("--terms", type=int, default=24)
    conv.add_argument("--offset", type=float, default=0.3)
    _add_common(conv)

    serve = cmds.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _request_body(args: argparse.Namespace) -> tuple[str, dict]:
    if args.command == "rep2":
        body = {
            "b": args.b,
            "c": args.c,
            "a_sign": args.a_sign,
            "tolerance": args.tol,
        }
        for key in ("alpha", "beta", "gamma"):
            value = getattr(args, key)
            if value is not None:
                body[key] = value
        return "/rep2", body
    if args.command == "rep4":
        if args.family == "rep4-12":
            body = {
                "family": "rep4-12",
                "a": args.a,
                "b": args.b,
                "c": args.c,
                "f": args.f,
                "g4": args.g4,
                "h": args.h,
                "tolerance": args.tol,
            }
        else:
            if args.alpha is None or args.beta4 is None:
                raise SystemExit(
                    "ptfermion rep4: --alpha and --beta4 are required for rep4-block"
                )
            body = {
                "family": "rep4-block",
                "b": args.b,
                "c": args.c,
                "alpha": args.alpha,
                "beta4": args.beta4,
                "f_sign": args.f_sign,
                "g_sign": args.g_sign,
                "tolerance": args.tol,
            }
            if args.gamma is not None:
                body["gamma"] = args.gamma
        return "/rep4", body
    if args.command == "verify":
        return "/verify", {
            "family": args.family,
            "trials": args.trials,
            "seed": args.seed,
            "tolerance": args.tol,
        }
    if args.command == "lee-spectrum":
        return "/lee/spectrum", {
            "m": args.m,
            "M": args.M,
            "g": args.g,
            "nmax": args.nmax,
            "threshold": args.threshold,
            "tolerance": args.tol,
        }
    if args.command == "lee-coeffs":
        return "/lee/coeffs", {
            "m": args.m,
            "M": args.M,
            "g": args.g,
            "N": args.N,
            "terms": args.terms,
            "route": args.route,
            "tolerance": args.tol,
        }
    if args.command == "lee-converge":
        return "/lee/converge", {
            "m": args.m,
            "M": args.M,
            "g": args.g,
            "N": args.N,
            "terms": args.terms,
            "offset": args.offset,
            "tolerance": args.tol,
        }
    raise SystemExit(f"unknown command {args.command!r}")


async def _post(url: str | None, path: str, body: dict, fmt: str) -> httpx.Response:
    params = {"format": fmt}
    if url:
        async with httpx.AsyncClient(base_url=url, timeout=600.0) as client:
            return await client.post(path, json=body, params=params)
    from .service.app import app

    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(
        transport=transport, base_url="http://ptfermion.internal", timeout=600.0
    ) as client:
        return await client.post(path, json=body, params=params)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        uvicorn.run("ptfermion.service.app:app", host=args.host, port=args.port)
        return EXIT_OK

    try:
        path, body = _request_body(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return EXIT_BAD_INPUT
        raise

    try:
        response = asyncio.run(_post(args.url, path, body, args.format))
    except httpx.HTTPError as exc:
        print(f"ptfermion: request failed: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    if response.status_code == 200:
        sys.stdout.write(response.text)
        if not response.text.endswith("\n"):
            sys.stdout.write("\n")
        passed = response.headers.get("x-report-pass", "true") == "true"
        return EXIT_OK if passed else EXIT_CHECK_FAILED
    if response.status_code in (400, 422):
        print(f"ptfermion: invalid input: {response.text}", file=sys.stderr)
        return EXIT_BAD_INPUT
    print(
        f"ptfermion: service error {response.status_code}: {response.text}",
        file=sys.stderr,
    )
    return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
