"""FastAPI service exposing construction, verification, and spectrum routes.

Every POST endpoint returns the uniform report envelope
{command, parameters, results, residuals, pass} serialized with
17-significant-digit floats, so identical requests produce byte-identical
bodies.  Domain errors (invalid parameter combinations) map to HTTP 400;
schema violations map to the usual 422.  Endpoints with tabular output
also accept ?format=csv.
"""

from __future__ import annotations

from typing import Annotated, Literal, Union

import numpy as np
from fastapi import Body, FastAPI, HTTPException, Query, Response

from .. import __version__, jsonio, lee_model, pt_algebra, rep2, rep4, verify
from ..linalg import anticommutator, commutator, identity, max_abs
from .schemas import (
    LeeCoeffsRequest,
    LeeConvergeRequest,
    LeeSpectrumRequest,
    Rep2Request,
    Rep4BlockRequest,
    Rep4TwelveRequest,
    Report,
    VerifyRequest,
    format_complex,
)

app = FastAPI(
    title="ptfermion",
    version=__version__,
    description=(
        "PT- and CPT-symmetric fermionic operator algebras: nilpotent "
        "representations, identity verification, and the exactly solvable "
        "fermion-boson model."
    ),
)

Rep4Request = Annotated[
    Union[Rep4TwelveRequest, Rep4BlockRequest], Body(discriminator="family")
]

PASS_HEADER = "x-report-pass"


def _respond(report: Report, fmt: str, csv_text: str | None = None) -> Response:
    headers = {PASS_HEADER: "true" if report.passed else "false"}
    if fmt == "csv":
        if csv_text is None:
            raise HTTPException(
                status_code=400, detail="csv output is not available for this command"
            )
        return Response(content=csv_text, media_type="text/csv", headers=headers)
    return Response(
        content=jsonio.dumps(report.payload()),
        media_type="application/json",
        headers=headers,
    )


def _rel_nilpotency(m: np.ndarray) -> float:
    return max_abs(m @ m) / max(1.0, max_abs(m) ** 2)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/rep2", response_model=Report)
def rep2_endpoint(
    req: Rep2Request, format: Literal["json", "csv"] = Query(default="json")
) -> Response:
    try:
        p = rep2.Rep2Params(b=req.b, c=req.c, a_sign=req.a_sign)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc

    em, pm = rep2.eta(p), rep2.eta_pt(p)
    sym = rep2.standard_symmetry()
    eye = identity(2)
    scalar = rep2.pt_anticommutator_scalar(p)
    results: dict = {
        "a": p.a,
        "eta": em,
        "eta_pt": pm,
        "pt_anticommutator_scalar": scalar,
        "grassmann_member": rep2.grassmann_member(p),
    }
    residuals: dict = {
        "eta_nilpotent": _rel_nilpotency(em),
        "eta_pt_nilpotent": _rel_nilpotency(pm),
        "eta_pt_matches_generic_adjoint": max_abs(pm - pt_algebra.pt_adjoint(em, sym)),
        "pt_anticommutator_closed_form": max_abs(
            anticommutator(em, pm) - scalar * eye
        ),
    }
    if p.a != 0.0 or p.b != 0.0:
        ground, excited = rep2.states(p)
        results["ground_state"] = ground
        results["excited_state"] = excited
        residuals["ground_annihilated"] = max_abs(em @ ground) / max(
            1.0, float(np.linalg.norm(ground))
        )
    if p.a != 0.0:
        en, pn = rep2.normalized_pair(p)
        results["eta_normalized"] = en
        results["eta_pt_normalized"] = pn
        residuals["normalized_pair_anticommutator"] = max_abs(
            anticommutator(en, pn) + eye
        )

    if req.has_hamiltonian:
        h = rep2.Ham2Params(alpha=req.alpha, beta=req.beta, gamma=req.gamma)
        ham = rep2.hamiltonian(h)
        sol = rep2.eigensystem(h)
        results["hamiltonian"] = ham
        results["eigenvalues"] = [sol.lam_plus, sol.lam_minus]
        results["eigenvectors"] = [sol.v_plus, sol.v_minus]
        results["phase"] = sol.phase
        # Diagnostic in either phase: self norms are +1/-1 when unbroken
        # and vanish pairwise when broken.
        norms = [
            pt_algebra.pt_inner(sol.v_plus, sol.v_plus, sym),
            pt_algebra.pt_inner(sol.v_minus, sol.v_minus, sym),
            pt_algebra.pt_inner(sol.v_plus, sol.v_minus, sym),
        ]
        results["pt_norms"] = norms
        scale = max(1.0, max_abs(ham))
        residuals["eigenvector_residual"] = (
            max(
                max_abs(ham @ sol.v_plus - sol.lam_plus * sol.v_plus),
                max_abs(ham @ sol.v_minus - sol.lam_minus * sol.v_minus),
            )
            / scale
        )
        if h.beta > 0.0 and h.gamma > 0.0:
            k = rep2.c_matrix(h)
            ladder = rep2.eta_from_hamiltonian(h)
            sym_k = rep2.standard_symmetry(k)
            ecpt = pt_algebra.cpt_adjoint(ladder, sym_k)
            results["c_matrix"] = k
            results["eta_ladder"] = ladder
            residuals["pt_norms"] = max(
                abs(norms[0] - 1.0), abs(norms[1] + 1.0), abs(norms[2])
            )
            residuals["k_squares_to_identity"] = max_abs(k @ k - eye)
            residuals["k_commutes_with_hamiltonian"] = max_abs(commutator(k, ham))
            residuals["cpt_anticommutator_identity"] = max_abs(
                anticommutator(ladder, ecpt) - eye
            )
            residuals["hamiltonian_from_ladder"] = (
                max_abs(rep2.hamiltonian_from_ladder(h) - ham) / scale
            )

    report = Report(
        command="rep2",
        parameters=req.model_dump(),
        results=results,
        residuals=residuals,
        passed=all(r <= req.tolerance for r in residuals.values()),
    )
    return _respond(report, format)


def _rep4_twelve_report(req: Rep4TwelveRequest) -> Report:
    p = rep4.Rep4TwelveParams(
        a=req.a, b=req.b, c=req.c, f=req.f, g=req.g4, h=req.h
    )
    em = rep4.eta_twelve(p)
    pm = pt_algebra.pt_adjoint(em, rep4.standard_symmetry())
    blocks = rep4.anticommutator_blocks(p)
    grassmann = rep4.grassmann_relations_hold(p, tol=req.tolerance)
    results: dict = {
        "eta": em,
        "big_f": p.big_f,
        "j_scalar": blocks.j_scalar,
        "k_scalar": blocks.k_scalar,
        "grassmann_relations_hold": grassmann,
        "anticommutator": blocks.direct,
    }
    residuals: dict = {
        "eta_nilpotent": _rel_nilpotency(em),
        "eta_pt_nilpotent": _rel_nilpotency(pm),
        "anticommutator_block_closed_form": blocks.max_residual,
    }
    if grassmann:
        residuals["grassmann_anticommutator_vanishes"] = max_abs(blocks.direct)
    parameters = req.model_dump()
    for key in ("a", "b", "c", "f", "g4", "h"):
        parameters[key] = format_complex(parameters[key])
    return Report(
        command="rep4",
        parameters=parameters,
        results=results,
        residuals=residuals,
        passed=all(r <= req.tolerance for r in residuals.values()),
    )


def _rep4_block_report(req: Rep4BlockRequest) -> Report:
    p = rep4.Rep4BlockParams(
        b=req.b, c=req.c, alpha=req.alpha, beta=req.beta4, f_sign=req.f_sign
    )
    em = rep4.eta_block(p)
    sym = rep4.standard_symmetry()
    pm = pt_algebra.pt_adjoint(em, sym)
    scalar = rep4.pt_anticommutator_scalar(p)
    eye = identity(4)
    results: dict = {
        "f": p.f,
        "eta": em,
        "eta_pt": pm,
        "pt_anticommutator_scalar": scalar,
        "grassmann_member": p.alpha == -p.beta,
    }
    residuals: dict = {
        "eta_nilpotent": _rel_nilpotency(em),
        "eta_pt_nilpotent": _rel_nilpotency(pm),
        "pt_anticommutator_closed_form": max_abs(
            anticommutator(em, pm) - scalar * eye
        ),
    }
    if p.pair_norm_sq > 0.0:
        ground, excited = rep4.states(p)
        results["ground_state"] = ground
        results["excited_state"] = excited
        scale = max(1.0, float(np.linalg.norm(ground)))
        residuals["ground_annihilated"] = max_abs(em @ ground) / scale
        residuals["excited_is_raised_ground"] = (
            max_abs(pm @ ground + (p.alpha + p.beta) * excited) / scale
        )
    if req.gamma is not None:
        k_par = rep4.Rep4CParams.from_gamma(req.gamma, p, g_sign=req.g_sign)
        k = rep4.c_matrix(p, k_par)
        sym_k = rep4.standard_symmetry(k)
        ecpt = pt_algebra.cpt_adjoint(em, sym_k)
        cpt_scalar = rep4.cpt_anticommutator_scalar(p, k_par)
        results["g"] = k_par.g
        results["c_matrix"] = k
        results["eta_cpt"] = ecpt
        results["cpt_anticommutator_scalar"] = cpt_scalar
        residuals["k_squares_to_identity"] = max_abs(k @ k - eye)
        residuals["k_constraint"] = k_par.constraint_residual(p)
        residuals["k_commutes_with_pt"] = max_abs(
            k @ sym.s @ sym.z - sym.s @ sym.z @ k.conj()
        )
        residuals["cpt_adjoint_closed_form"] = max_abs(
            rep4.cpt_adjoint_closed(p, k_par) - ecpt
        )
        residuals["cpt_anticommutator_closed_form"] = max_abs(
            anticommutator(em, ecpt) - cpt_scalar * eye
        )
        residuals["cpt_anticommutator_nonnegative"] = max(-cpt_scalar, 0.0)
    parameters = req.model_dump()
    parameters["b"] = format_complex(parameters["b"])
    parameters["c"] = format_complex(parameters["c"])
    return Report(
        command="rep4",
        parameters=parameters,
        results=results,
        residuals=residuals,
        passed=all(r <= req.tolerance for r in residuals.values()),
    )


@app.post("/rep4", response_model=Report)
def rep4_endpoint(
    req: Rep4Request, format: Literal["json", "csv"] = Query(default="json")
) -> Response:
    try:
        if isinstance(req, Rep4TwelveRequest):
            report = _rep4_twelve_report(req)
        else:
            report = _rep4_block_report(req)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return _respond(report, format)


@app.post("/verify", response_model=Report)
def verify_endpoint(
    req: VerifyRequest, format: Literal["json", "csv"] = Query(default="json")
) -> Response:
    rep = verify.run_family(req.family, req.trials, req.seed, req.tolerance)
    report = Report(
        command="verify",
        parameters=req.model_dump(),
        results={
            "identities": [
                {
                    "name": c.name,
                    "max_residual": c.residual,
                    "tolerance": c.tolerance,
                    "pass": c.passed,
                }
                for c in rep.checks
            ]
        },
        residuals=rep.residuals(),
        passed=rep.ok,
    )
    csv_text = jsonio.csv_table(
        ["identity", "max_residual", "tolerance", "pass"],
        [[c.name, c.residual, c.tolerance, c.passed] for c in rep.checks],
    )
    return _respond(report, format, csv_text)


@app.post("/lee/spectrum", response_model=Report)
def lee_spectrum_endpoint(
    req: LeeSpectrumRequest, format: Literal["json", "csv"] = Query(default="json")
) -> Response:
    try:
        p = lee_model.LeeParams(m=req.m, M=req.M, g=req.g, n_max=req.nmax)
        rep = lee_model.truncated_spectrum(p, threshold=req.threshold)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    scored = rep.scored_levels
    report = Report(
        command="lee-spectrum",
        parameters=req.model_dump(),
        results={
            "levels": [
                {
                    "N": int(n),
                    "truncated": float(rep.truncated[n]),
                    "exact": float(rep.exact[n]),
                    "abs_err": float(rep.abs_errors[n]),
                }
                for n in range(scored)
            ],
            "renormalized_mass": lee_model.renormalized_mass(p),
            "scored_levels": scored,
            "converged_levels": rep.converged_levels,
            "threshold": rep.threshold,
        },
        residuals={"max_scored_abs_err": float(rep.abs_errors[:scored].max())},
        passed=rep.converged_levels == scored,
    )
    csv_text = jsonio.csv_table(
        ["N", "truncated", "exact", "abs_err"],
        [
            [int(n), float(rep.truncated[n]), float(rep.exact[n]), float(rep.abs_errors[n])]
            for n in range(scored)
        ],
    )
    return _respond(report, format, csv_text)


@app.post("/lee/coeffs", response_model=Report)
def lee_coeffs_endpoint(
    req: LeeCoeffsRequest, format: Literal["json", "csv"] = Query(default="json")
) -> Response:
    try:
        p = lee_model.LeeParams(m=req.m, M=req.M, g=req.g, n_max=1)
        results: dict = {}
        rec = gen = None
        if req.route in ("recursion", "both"):
            energy = lee_model.exact_spectrum_fraction(p, req.N)
            rec = lee_model.recursion_coeffs(p, energy, req.terms)
            results["recursion"] = list(rec.values)
        if req.route in ("genfunc", "both"):
            gen = lee_model.generating_coeffs(p, req.N, req.terms)
            results["genfunc"] = list(gen.values)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc

    residuals: dict = {}
    rel_diffs = []
    if rec is not None and gen is not None:
        for x, y in zip(rec.values, gen.values):
            rel_diffs.append(abs(x - y) / max(abs(x), abs(y), 1e-300))
        results["max_rel_diff"] = max(rel_diffs)
        residuals["coeff_routes_max_rel_diff"] = max(rel_diffs)
    results["energy"] = lee_model.exact_spectrum(p, req.N)
    report = Report(
        command="lee-coeffs",
        parameters=req.model_dump(),
        results=results,
        residuals=residuals,
        passed=all(r <= req.tolerance for r in residuals.values()),
    )
    rows = []
    for n in range(req.terms):
        row: list = [n]
        row.append(rec.values[n] if rec is not None else "")
        row.append(gen.values[n] if gen is not None else "")
        row.append(rel_diffs[n] if rel_diffs else "")
        rows.append(row)
    csv_text = jsonio.csv_table(["n", "recursion", "genfunc", "rel_diff"], rows)
    return _respond(report, format, csv_text)


@app.post("/lee/converge", response_model=Report)
def lee_converge_endpoint(
    req: LeeConvergeRequest, format: Literal["json", "csv"] = Query(default="json")
) -> Response:
    try:
        p = lee_model.LeeParams(m=req.m, M=req.M, g=req.g, n_max=1)
        energy = lee_model.exact_spectrum_fraction(p, req.N)
        seq_level = lee_model.recursion_coeffs(p, energy, req.terms)
        offset_energy = float(energy) + req.offset * req.m
        seq_offset = lee_model.recursion_coeffs(p, offset_energy, req.terms)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc

    balance_level = lee_model.classify_balance(seq_level, p)
    balance_offset = lee_model.classify_balance(seq_offset, p)

    def norm_info(seq: lee_model.CoeffSequence) -> dict:
        last = len(seq.values) - 1
        try:
            total = lee_model.norm_partial_sum(seq, last)
            prev = lee_model.norm_partial_sum(seq, last - 1)
            return {
                "partial_sum": total,
                "last_increment": total - prev,
                "diverged": False,
            }
        except OverflowError:
            return {"partial_sum": None, "last_increment": None, "diverged": True}

    results = {
        "energy": float(energy),
        "offset_energy": offset_energy,
        "balance_at_level": balance_level,
        "balance_at_offset": balance_offset,
        "norm_at_level": norm_info(seq_level),
        "norm_at_offset": norm_info(seq_offset),
    }
    report = Report(
        command="lee-converge",
        parameters=req.model_dump(),
        results=results,
        residuals={},
        passed=(
            balance_level == lee_model.BALANCE_NORMALIZABLE
            and balance_offset == lee_model.BALANCE_NON_NORMALIZABLE
        ),
    )
    return _respond(report, format)
