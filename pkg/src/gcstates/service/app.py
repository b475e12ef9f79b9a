"""FastAPI service exposing the verification suites, the dynamics
simulator, the lattice analyzer, the overlap evaluator and the P/Q round
trip.

Domain errors (bad parameter combinations that pass schema validation)
are reported as HTTP 400; schema violations surface as FastAPI's usual
422.  The CLI maps both to exit code 2.
"""

import math
import time

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import dynamics, frames, su2, su11, weyl
from ..quadrature import disk_invariant_grid, plane_grid, sphere_grid
from .schemas import (Check, DynamicsRequest, DynamicsResponse,
                      LatticeRequest, OverlapRequest, OverlapResponse,
                      PQRequest, RunReport, TrajectoryPayload, VerifyRequest)

app = FastAPI(title="gcstates", version="0.1.0")


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health")
def health():
    return {"status": "ok"}


def _timer():
    t0 = time.perf_counter()
    return lambda: (time.perf_counter() - t0) * 1000.0


def _verify_su2(req: VerifyRequest, elapsed) -> RunReport:
    rep = su2.spin_rep(req.j)
    mu = req.j if req.mu is None else req.mu
    grid = sphere_grid(req.grid.n_theta or 64, req.grid.n_phi or 128)
    d_num = su2.d_constant(rep, mu, grid)
    d_th = 4.0 * math.pi / (rep.two_j + 1)
    dev = su2.identity_check(rep, mu, grid)
    tol = req.tol or 1e-10
    return RunReport(
        command="verify", parameters={"group": "su2", "j": req.j, "mu": mu},
        checks=[
            Check(name="d_constant", value=d_num, expected=d_th,
                  tolerance=tol * d_th),
            Check(name="identity_deviation", value=dev, expected=0.0,
                  tolerance=tol),
        ],
        runtime_ms=elapsed())


def _verify_su11(req: VerifyRequest, elapsed) -> RunReport:
    rep = su11.DiskRep(req.k, cutoff=max(req.cutoff, 256))
    grid = disk_invariant_grid(req.grid.n_r or 64, req.grid.n_phi or 128,
                               eps=req.grid.eps or 1e-8)
    d_num = su11.d_constant(rep, grid)
    d_th = math.pi / (2.0 * req.k - 1.0)
    probe = req.probe_dim or 16
    dev = su11.identity_check(rep, grid, probe)
    tol = req.tol or 1e-6
    return RunReport(
        command="verify", parameters={"group": "su11", "k": req.k,
                                      "probe_dim": probe},
        checks=[
            Check(name="d_constant", value=d_num, expected=d_th,
                  tolerance=tol),
            Check(name="identity_deviation", value=dev, expected=0.0,
                  tolerance=tol),
        ],
        runtime_ms=elapsed())


def _verify_weyl(req: VerifyRequest, elapsed) -> RunReport:
    space = weyl.FockSpace(1, req.cutoff)
    grid = plane_grid(req.grid.radius or 6.0, req.grid.n_r or 48,
                      req.grid.n_phi or 96)
    probe = req.probe_dim or 8
    psi0 = space.vacuum()
    dev = weyl.weyl_identity_check(space, grid, psi0, probe)
    # d-constant route: integral |<psi0|alpha>|^2 d^2 alpha = pi
    states = frames.weyl_family(space, psi0, grid=grid, dim=space.dim)
    amp = states.grid_states() @ psi0.conj()
    d_num = float(np.sum(grid.weights * np.abs(amp) ** 2))
    tol = req.tol or 1e-8
    return RunReport(
        command="verify", parameters={"group": "weyl", "cutoff": req.cutoff,
                                      "probe_dim": probe},
        checks=[
            Check(name="d_constant", value=d_num, expected=math.pi,
                  tolerance=tol),
            Check(name="identity_deviation", value=dev, expected=0.0,
                  tolerance=tol),
        ],
        runtime_ms=elapsed())


@app.post("/verify")
def verify(req: VerifyRequest) -> RunReport:
    elapsed = _timer()
    if req.group == "su2":
        return _verify_su2(req, elapsed)
    if req.group == "su11":
        return _verify_su11(req, elapsed)
    return _verify_weyl(req, elapsed)


def _build_field(spec):
    if spec.type == "constant":
        return dynamics.constant_field(spec.a)
    if spec.type == "rotating":
        return dynamics.rotating_field(spec.amplitude, spec.omega, spec.a3)
    return dynamics.chirped_field(spec.amplitude, spec.rate, spec.a3)


@app.post("/dynamics")
def run_dynamics(req: DynamicsRequest) -> DynamicsResponse:
    elapsed = _timer()
    rep = su2.spin_rep(req.j)
    mu = req.j if req.mu is None else req.mu
    field = _build_field(req.field)
    point0 = su2.SpherePoint(req.theta0, req.phi0)
    result = dynamics.run_dynamics(rep, mu, field, point0, req.t_end, req.dt)
    # <J>/j along the trajectory vs the classical vector
    expectation = np.stack([
        np.real(np.einsum("na,ab,nb->n", result.states.conj(), jm,
                          result.states))
        for jm in rep.J
    ], axis=1) / rep.j
    expect_dev = float(np.linalg.norm(expectation - result.classical,
                                      axis=1).max())
    tol = req.tol or 1e-8
    report = RunReport(
        command="dynamics",
        parameters={"j": req.j, "mu": mu, "field": req.field.type,
                    "t_end": req.t_end, "dt": req.dt},
        checks=[
            Check(name="fidelity_deficit", value=result.max_fidelity_deficit,
                  expected=0.0, tolerance=tol),
            Check(name="norm_drift", value=result.norm_drift, expected=0.0,
                  tolerance=tol),
            Check(name="classical_drift", value=result.classical_drift,
                  expected=0.0, tolerance=tol),
            Check(name="expectation_deviation", value=expect_dev,
                  expected=0.0, tolerance=max(tol, 1e-6)),
        ],
        runtime_ms=elapsed())
    trajectory = None
    if req.include_trajectory:
        trajectory = TrajectoryPayload(
            times=result.times.tolist(),
            states_re=result.states.real.tolist(),
            states_im=result.states.imag.tolist(),
            classical=result.classical.tolist(),
            fidelity=result.fidelity.tolist())
    return DynamicsResponse(report=report, trajectory=trajectory)


@app.post("/lattice")
def lattice(req: LatticeRequest) -> RunReport:
    elapsed = _timer()
    checks = []
    if req.group == "weyl":
        lat = weyl.Lattice(
            req.lattice.get("n_modes", 1),
            np.array([[complex(re, im) for re, im in row]
                      for row in req.lattice["periods"]]),
            np.asarray(req.lattice["epsilon"])
            if "epsilon" in req.lattice else None)
        adm = weyl.lattice_admissible(lat, req.tol)
        space = weyl.FockSpace(1, req.cutoff)
        fam = frames.weyl_family(space, space.vacuum())
        sub = frames.weyl_lattice_subsystem(fam, lat, req.index_range)
        report = frames.frame_report(sub, req.probe_dim)
        checks.append(Check(name="admissibility_deviation",
                            value=adm.max_deviation, expected=0.0,
                            tolerance=req.tol))
        extra = {"admissible": adm.admissible,
                 "matrix": adm.matrix.tolist(),
                 "frame_report": report}
    elif req.group == "su2":
        rep = su2.spin_rep(req.j)
        mu = req.j if req.mu is None else req.mu
        fam = frames.su2_family(rep, mu)
        sub = frames.LatticeSubsystem(fam, [tuple(p) for p in req.points])
        extra = {"frame_report": frames.frame_report(sub, req.probe_dim)}
    else:
        drep = su11.DiskRep(req.k, cutoff=max(req.cutoff, 256))
        fam = frames.su11_family(drep)
        pts = [complex(re, im) for re, im in req.points]
        sub = frames.LatticeSubsystem(fam, pts)
        extra = {"frame_report": frames.frame_report(sub, req.probe_dim)}
    a = extra["frame_report"]["A"]
    checks.append(Check(name="frame_lower_bound", value=min(a, 0.0),
                        expected=0.0, tolerance=1e-12))
    return RunReport(command="lattice",
                     parameters={"group": req.group,
                                 "probe_dim": req.probe_dim},
                     checks=checks, runtime_ms=elapsed(), extra=extra)


@app.post("/overlap")
def overlap(req: OverlapRequest) -> OverlapResponse:
    elapsed = _timer()
    tol = req.tol or 1e-10
    if req.group == "su2":
        rep = su2.spin_rep(req.j)
        p1 = su2.SpherePoint(req.x1[0], req.x1[1])
        p2 = su2.SpherePoint(req.x2[0], req.x2[1])
        value = su2.overlap(rep, req.mu, p1, p2)
        closed = su2.overlap_mu_j(rep, p1, p2)
        check = Check(name="modulus_closed_form", value=abs(value) ** 2,
                      expected=closed, tolerance=tol) \
            if req.mu == req.j else \
            Check(name="modulus_bound", value=min(1.0 - abs(value), 0.0),
                  expected=0.0, tolerance=1e-12)
        params = {"group": "su2", "j": req.j, "mu": req.mu}
    elif req.group == "su11":
        rep = su11.DiskRep(req.k, cutoff=256)
        p1 = su11.DiskPoint(complex(req.x1[0], req.x1[1]))
        p2 = su11.DiskPoint(complex(req.x2[0], req.x2[1]))
        value = su11.overlap(rep, p1, p2)
        brute = su11.inner_product(rep, su11.coherent_state(rep, p1),
                                   su11.coherent_state(rep, p2))
        check = Check(name="series_vs_closed_form", value=abs(value - brute),
                      expected=0.0, tolerance=tol)
        params = {"group": "su11", "k": req.k}
    else:
        space = weyl.FockSpace(1, req.cutoff)
        a1 = complex(req.x1[0], req.x1[1])
        a2 = complex(req.x2[0], req.x2[1])
        v1 = space.vacuum()
        s1 = weyl.weyl_coherent_state(a1, v1, space)
        s2 = weyl.weyl_coherent_state(a2, v1, space)
        value = complex(np.vdot(s1, s2))
        closed = (math.exp(-abs(a2 - a1) ** 2 / 2.0)
                  * np.exp(-1j * np.imag(a1 * np.conj(a2))))
        check = Check(name="matrix_vs_closed_form", value=abs(value - closed),
                      expected=0.0, tolerance=tol)
        params = {"group": "weyl", "cutoff": req.cutoff}
    report = RunReport(command="overlap", parameters=params, checks=[check],
                       runtime_ms=elapsed())
    return OverlapResponse(report=report, overlap_re=value.real,
                           overlap_im=value.imag)


@app.post("/pq")
def pq_roundtrip(req: PQRequest) -> RunReport:
    elapsed = _timer()
    rep = su2.spin_rep(req.j)
    mu = req.j if req.mu is None else req.mu
    rng = np.random.default_rng(req.seed)
    a = rng.normal(size=(rep.dim, rep.dim)) + 1j * rng.normal(
        size=(rep.dim, rep.dim))
    rho = a @ a.conj().T
    rho /= np.trace(rho).real
    coeffs = su2.rho_to_p(rep, mu, rho)
    back, min_eig = su2.p_to_rho(rep, mu, coeffs)
    dev = float(np.abs(back - rho).max())
    tol = req.tol or 1e-8
    return RunReport(
        command="pq",
        parameters={"j": req.j, "mu": mu, "seed": req.seed},
        checks=[Check(name="roundtrip_deviation", value=dev, expected=0.0,
                      tolerance=tol)],
        runtime_ms=elapsed(),
        extra={"min_eigenvalue": min_eig,
               "num_coefficients": len(coeffs)})
