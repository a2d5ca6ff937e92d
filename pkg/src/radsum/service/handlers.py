"""Request handlers shared by the HTTP routes and the in-process CLI client."""

from __future__ import annotations

from .. import counting, reports, verify, zeta
from ..errors import DomainError, IdentityError
from .models import (
    CheckOutcome,
    CountRequest,
    CountResponse,
    EstimateSRequest,
    StaircaseRequest,
    TableResponse,
    VerifyRequest,
    VerifyResponse,
    ZerosValidateRequest,
    ZerosValidateResponse,
)


def handle_count(req: CountRequest) -> CountResponse:
    w = req.w_fraction()
    reports.check_budget(req.j, req.k, float(w), req.budget)
    s = counting.s_exact(req.j, req.k, w)
    out = CountResponse(j=req.j, k=req.k, w=str(w), s=s)
    if req.via_conv_exp:
        out.s_conv_exp = counting.s_via_conv_exp(req.j, req.k, w)
        out.consistent = out.s_conv_exp == s
        if not out.consistent:
            raise IdentityError(
                f"s_exact={s} but conv-exp gives {out.s_conv_exp} at w={w}"
            )
    return out


def handle_staircase(req: StaircaseRequest) -> TableResponse:
    zeros = None
    if req.height is not None:
        if req.zeros_text is None:
            raise DomainError("a zeros file is required when a truncation height is given")
        zeros = zeta.load_zeros_text(req.zeros_text)
    table = reports.staircase_table(
        req.j, req.k, req.w_max_fraction(), req.step_fraction(), req.height, zeros
    )
    return TableResponse(header=table.header, rows=table.rows, csv=table.to_csv())


def handle_estimate_s(req: EstimateSRequest) -> TableResponse:
    table = reports.estimate_s_table(
        req.j,
        req.k,
        req.w_max_fraction(),
        req.step_fraction(),
        req.grid_step_fraction(),
        req.budget,
        req.hybrid_w0,
    )
    return TableResponse(header=table.header, rows=table.rows, csv=table.to_csv())


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    results = verify.run_checks(only=req.only, zeros_text=req.zeros_text)
    checks = [CheckOutcome(name=r.name, passed=r.passed, detail=r.detail) for r in results]
    return VerifyResponse(checks=checks, all_passed=all(c.passed for c in checks))


def handle_zeros_validate(req: ZerosValidateRequest) -> ZerosValidateResponse:
    table = zeta.load_zeros_text(req.zeros_text)
    return ZerosValidateResponse(count=len(table), max_ordinate=table.max_height())
