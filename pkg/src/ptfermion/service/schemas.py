"""Pydantic request/response models for the HTTP service.

Complex-valued parameters are accepted either as "re+imi" strings
(e.g. "1+2i", "-0.5i") or as plain real numbers.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def parse_complex(value: object) -> complex:
    """Parse 'a+bi' strings (or bare numbers) into a complex value."""
    if isinstance(value, complex):
        return value
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        text = value.strip().replace(" ", "").replace("i", "j")
        try:
            return complex(text)
        except ValueError as exc:
            raise ValueError(f"cannot parse complex value {value!r}") from exc
    raise ValueError(f"cannot parse complex value {value!r}")


def format_complex(z: complex) -> str:
    """Inverse of ``parse_complex``: render as 're+imi'."""
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:g}{sign}{abs(z.imag):g}i"


class _Base(BaseModel):
    model_config = ConfigDict(extra="forbid")


class Rep2Request(_Base):
    """2x2 family construction; include (alpha, beta, gamma) to also build
    the Hamiltonian story (eigensystem, K matrix, ladder operators)."""

    b: float
    c: float
    a_sign: Literal[1, -1] = 1
    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None
    tolerance: float = Field(default=1e-10, gt=0.0)

    @model_validator(mode="after")
    def _hamiltonian_all_or_none(self):
        given = [v is not None for v in (self.alpha, self.beta, self.gamma)]
        if any(given) and not all(given):
            raise ValueError("give all of alpha, beta, gamma or none of them")
        return self

    @property
    def has_hamiltonian(self) -> bool:
        return self.alpha is not None


class Rep4TwelveRequest(_Base):
    family: Literal["rep4-12"]
    a: complex = 0j
    b: complex = 0j
    c: complex = 0j
    f: complex = 0j
    g4: complex = 0j
    h: complex = 0j
    tolerance: float = Field(default=1e-10, gt=0.0)

    @field_validator("a", "b", "c", "f", "g4", "h", mode="before")
    @classmethod
    def _complex(cls, v):
        return parse_complex(v)


class Rep4BlockRequest(_Base):
    family: Literal["rep4-block"]
    b: complex
    c: complex = 0j
    alpha: float
    beta4: float
    f_sign: Literal[1, -1] = 1
    gamma: float | None = None
    g_sign: Literal[1, -1] = 1
    tolerance: float = Field(default=1e-10, gt=0.0)

    @field_validator("b", "c", mode="before")
    @classmethod
    def _complex(cls, v):
        return parse_complex(v)


class VerifyRequest(_Base):
    family: Literal["rep2", "rep4-12", "rep4-block"]
    trials: int = Field(default=1000, ge=1, le=1_000_000)
    seed: int = 0
    tolerance: float = Field(default=1e-10, gt=0.0)


class LeeSpectrumRequest(_Base):
    m: float = Field(gt=0.0)
    M: float
    g: float
    nmax: int = Field(default=64, ge=1, le=100_000)
    threshold: float = Field(default=1e-8, gt=0.0)
    tolerance: float = Field(default=1e-10, gt=0.0)


class LeeCoeffsRequest(_Base):
    # terms capped: the exact-rational recursion costs O(terms^2) bignum
    # digits for non-dyadic inputs, and the scaled coefficients underflow
    # double precision long before n = 2000 anyway.
    m: float = Field(gt=0.0)
    M: float
    g: float
    N: int = Field(default=0, ge=0)
    terms: int = Field(default=20, ge=2, le=2_000)
    route: Literal["recursion", "genfunc", "both"] = "both"
    tolerance: float = Field(default=1e-10, gt=0.0)


class LeeConvergeRequest(_Base):
    m: float = Field(gt=0.0)
    M: float
    g: float
    N: int = Field(default=0, ge=0)
    terms: int = Field(default=24, ge=10, le=2_000)
    offset: float = Field(default=0.3)
    tolerance: float = Field(default=1e-10, gt=0.0)


class Report(BaseModel):
    """Uniform response envelope: machine-readable results plus per-check
    residuals and an overall pass flag."""

    model_config = ConfigDict(populate_by_name=True)

    command: str
    parameters: dict
    results: dict
    residuals: dict[str, float]
    passed: bool = Field(alias="pass")

    def payload(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "residuals": self.residuals,
            "pass": self.passed,
        }
