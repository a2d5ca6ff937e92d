"""Command-line client for the counting service.

The CLI is a thin client over the same request/response models the HTTP
service uses.  By default requests are dispatched in-process; with
``--server URL`` they are POSTed to a running instance instead, and the
output is identical either way.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 internal identity violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    BudgetError,
    ConditioningError,
    DomainError,
    HeightCapError,
    IdentityError,
    PrecisionError,
    RadsumError,
    ZeroTableDataError,
    ZeroTableParseError,
)
from .radical import set_default_compare_bits
from .service import handlers
from .service.models import (
    CountRequest,
    EstimateSRequest,
    StaircaseRequest,
    VerifyRequest,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_IDENTITY = 3

# the validated run configuration is the pydantic request model each
# subcommand builds (service.models); argparse only collects raw flags


def _add_common(p: argparse.ArgumentParser, needs_pair: bool = True) -> None:
    if needs_pair:
        p.add_argument("--j", type=int, required=True, help="numerator of the exponent j/k")
        p.add_argument("--k", type=int, required=True, help="denominator of the exponent (k >= 2)")
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.add_argument("--prec-bits", type=int, default=64,
                   help="starting precision for certified radical comparisons")
    p.add_argument("--server", default=None, metavar="URL",
                   help="POST to a running radsum service instead of computing in-process")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="radsum", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact count of sums at or below w")
    _add_common(p)
    p.add_argument("--w", required=True, help="threshold, as an integer, decimal, or p/q")
    p.add_argument("--via-conv-exp", action="store_true",
                   help="also compute through the convolution exponential and compare")
    p.add_argument("--budget", type=int, default=2_000_000,
                   help="refuse thresholds whose predicted support exceeds this size")

    p = sub.add_parser("staircase", help="CSV of the exponent staircase and its estimates")
    _add_common(p)
    p.add_argument("--w-max", required=True)
    p.add_argument("--step", default="1/10")
    p.add_argument("--zeros-file", type=Path, default=None)
    p.add_argument("--height", type=float, default=None,
                   help="zero-sum truncation height (adds the I_residue column)")

    p = sub.add_parser("estimate-s", help="CSV of exact and estimated counts")
    _add_common(p)
    p.add_argument("--w-max", required=True)
    p.add_argument("--step", default="1/2")
    p.add_argument("--grid-step", default="1/256")
    p.add_argument("--hybrid-w0", type=float, default=0.0,
                   help="exact jumps up to w0, analytic density beyond (0 disables)")
    p.add_argument("--budget", type=int, default=2_000_000)

    p = sub.add_parser("verify", help="run the verification suite")
    _add_common(p, needs_pair=False)
    p.add_argument("--only", default=None, help="run a single named check")
    p.add_argument("--zeros-file", type=Path, default=None)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return ap


def _read_zeros(path: Path | None) -> str | None:
    if path is None:
        return None
    if str(path) == "builtin":
        from .zeta import default_zeros_path

        return default_zeros_path().read_text(encoding="utf-8")
    return path.read_text(encoding="utf-8")


def _post(server: str, endpoint: str, payload: dict, params: dict | None = None):
    import httpx

    resp = httpx.post(f"{server.rstrip('/')}{endpoint}", json=payload,
                      params=params, timeout=600.0)
    if resp.status_code >= 400:
        try:
            message = resp.json().get("message", resp.text)
            kind = resp.json().get("error", "")
        except Exception:
            message, kind = resp.text, ""
        code = EXIT_IDENTITY if kind == "IdentityError" else EXIT_CONFIG
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(code)
    return resp


def cmd_count(args) -> int:
    req = CountRequest(j=args.j, k=args.k, w=args.w,
                       via_conv_exp=args.via_conv_exp, budget=args.budget)
    if args.server:
        data = _post(args.server, "/api/count", req.model_dump()).json()
    else:
        data = handlers.handle_count(req).model_dump()
    if args.format == "json":
        print(json.dumps(data, indent=2))
    elif args.format == "csv":
        header = ["j", "k", "w", "s"] + (["s_conv_exp", "consistent"] if args.via_conv_exp else [])
        row = [str(data[h]) for h in header]
        print(",".join(header))
        print(",".join(row))
    else:
        if args.via_conv_exp:
            print(f"{data['s']} {data['s_conv_exp']} {'OK' if data['consistent'] else 'MISMATCH'}")
        else:
            print(data["s"])
    return EXIT_OK


def _print_table(data: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({"header": data["header"], "rows": data["rows"]}, indent=2))
    else:
        sys.stdout.write(data["csv"])


def cmd_staircase(args) -> int:
    req = StaircaseRequest(j=args.j, k=args.k, w_max=args.w_max, step=args.step,
                           height=args.height, zeros_text=_read_zeros(args.zeros_file))
    if args.server:
        data = _post(args.server, "/api/staircase", req.model_dump()).json()
    else:
        data = handlers.handle_staircase(req).model_dump()
    _print_table(data, args.format)
    return EXIT_OK


def cmd_estimate_s(args) -> int:
    req = EstimateSRequest(j=args.j, k=args.k, w_max=args.w_max, step=args.step,
                           grid_step=args.grid_step, budget=args.budget,
                           hybrid_w0=args.hybrid_w0)
    if args.server:
        data = _post(args.server, "/api/estimate-s", req.model_dump()).json()
    else:
        data = handlers.handle_estimate_s(req).model_dump()
    _print_table(data, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    req = VerifyRequest(only=args.only, zeros_text=_read_zeros(args.zeros_file))
    if args.server:
        data = _post(args.server, "/api/verify", req.model_dump()).json()
    else:
        data = handlers.handle_verify(req).model_dump()
    for check in data["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"{status} {check['name']}: {check['detail']}")
    return EXIT_OK if data["all_passed"] else EXIT_FAILURE


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "prec_bits", None):
        try:
            set_default_compare_bits(args.prec_bits)
        except DomainError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    commands = {
        "count": cmd_count,
        "staircase": cmd_staircase,
        "estimate-s": cmd_estimate_s,
        "verify": cmd_verify,
        "serve": cmd_serve,
    }
    try:
        return commands[args.command](args)
    except IdentityError as exc:
        print(f"internal identity violation: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    except (DomainError, BudgetError, HeightCapError,
            ZeroTableParseError, ZeroTableDataError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConditioningError, PrecisionError, RadsumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
