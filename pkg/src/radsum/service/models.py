"""Pydantic request/response models for the HTTP service.

Rational parameters travel as strings ("7/2", "0.1", "3"); they are parsed
into exact fractions before any computation, so thresholds never suffer
float rounding on the wire.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from pydantic import BaseModel, Field, field_validator, model_validator


def parse_rational(value: str | int | float) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # decimal-literal reading, not the binary expansion
        return Fraction(str(value))
    return Fraction(str(value).strip())


class PairParams(BaseModel):
    j: int = Field(ge=1)
    k: int = Field(ge=2)

    @model_validator(mode="after")
    def _lowest_terms(self):
        if gcd(self.j, self.k) != 1:
            raise ValueError(f"j/k must be in lowest terms, got {self.j}/{self.k}")
        return self


class CountRequest(PairParams):
    w: str | int | float
    via_conv_exp: bool = False
    budget: int = 2_000_000

    @field_validator("w")
    @classmethod
    def _valid_rational(cls, v):
        parse_rational(v)
        return v

    def w_fraction(self) -> Fraction:
        return parse_rational(self.w)


class CountResponse(BaseModel):
    j: int
    k: int
    w: str
    s: int
    s_conv_exp: int | None = None
    consistent: bool | None = None


class StaircaseRequest(PairParams):
    w_max: str | int | float
    step: str | int | float = "1/10"
    height: float | None = None
    zeros_text: str | None = None

    def w_max_fraction(self) -> Fraction:
        return parse_rational(self.w_max)

    def step_fraction(self) -> Fraction:
        return parse_rational(self.step)


class EstimateSRequest(PairParams):
    w_max: str | int | float
    step: str | int | float = "1/2"
    grid_step: str | int | float = "1/256"
    budget: int = 2_000_000
    hybrid_w0: float = 0.0

    def w_max_fraction(self) -> Fraction:
        return parse_rational(self.w_max)

    def step_fraction(self) -> Fraction:
        return parse_rational(self.step)

    def grid_step_fraction(self) -> Fraction:
        return parse_rational(self.grid_step)


class TableResponse(BaseModel):
    header: list[str]
    rows: list[list[str]]
    csv: str


class VerifyRequest(BaseModel):
    only: str | None = None
    zeros_text: str | None = None


class CheckOutcome(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    checks: list[CheckOutcome]
    all_passed: bool


class ZerosValidateRequest(BaseModel):
    zeros_text: str


class ZerosValidateResponse(BaseModel):
    count: int
    max_ordinate: float


class HealthResponse(BaseModel):
    status: str
    version: str
