"""FastAPI service exposing the atlas, root, and phase computations.

The CLI talks to this app through an in-process ASGI transport by default,
or over HTTP against a running instance; either way this module is the one
place where library results are serialized.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import atlas, phase, quintic, svgplot, verify
from .errors import (
    Charged3BodyError,
    DegeneracyError,
    InputError,
    NoSuchRootError,
    NonpositiveMultiplierError,
)
from .quintic import CouplingTriple, MassTriple
from .schemas import (
    CentralConfigModel,
    CurveRequest,
    CurveResponse,
    ErrorBody,
    GridModel,
    RegionsRequest,
    RegionsResponse,
    ReleqRequest,
    ReleqResponse,
    RootInfo,
    RootsReport,
    RootsRequest,
    SpecialPointsRequest,
    SpecialPointsResponse,
    SuiteModel,
    VerifyRequest,
    VerifyResponse,
)

CSV_REGION_HEADER = "beta1,beta2,n1,n2,n3,region,neg_u_count_i1,neg_u_count_i2,neg_u_count_i3"
CSV_CURVE_HEADER = "u,beta1,beta2,branch,at_infinity"


def _g17(x: float) -> str:
    return f"{float(x):.17g}"


def _masses(m) -> MassTriple:
    try:
        return MassTriple(*m)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _couplings(req, m: MassTriple) -> CouplingTriple:
    if req.gravitational:
        return CouplingTriple.gravitational(m)
    if req.beta is not None:
        return CouplingTriple.from_beta(*req.beta)
    return CouplingTriple(*req.alpha)


def _sign_char(s: int) -> str:
    return {1: "+", -1: "-", 0: "0"}[s]


def create_app() -> FastAPI:
    app = FastAPI(title="charged3body", docs_url="/docs")

    @app.exception_handler(Charged3BodyError)
    async def _domain_error(request: Request, exc: Charged3BodyError):
        status = 409 if isinstance(exc, DegeneracyError) else 400
        body = ErrorBody(kind=exc.kind, message=str(exc))
        return JSONResponse(status_code=status, content={"error": body.model_dump()})

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/roots", response_model=RootsReport)
    def roots(req: RootsRequest) -> RootsReport:
        m = _masses(req.m)
        alpha = _couplings(req, m)
        q = quintic.build_quintic(alpha, m)
        rootlist = quintic.isolate_real_roots(q)
        a1, a2, a3 = alpha.rational()
        beta = None
        region = region_alt = None
        boundary = False
        boundary_reason = None
        sign_by_index: list[int] | None = None
        if a3 != 0:
            beta = (float(a1 / a3), float(a2 / a3))
            rep = atlas.classify(atlas.BetaPoint(a1 / a3, a2 / a3), m)
            region, region_alt = rep.region, rep.region_alt
            boundary, boundary_reason = rep.boundary, rep.boundary_reason
            if len(rep.roots) == len(rootlist.roots):
                sign_by_index = [rs.u_sign for rs in rep.roots]
        infos = []
        for idx, r in enumerate(rootlist.roots):
            cc_model = None
            eff = phase.effective_couplings(alpha, r.interval)
            try:
                cfg = phase.reconstruct_collinear(r.value, 1.0, m)
                cc = phase.multiplier_of(cfg, eff, tol=req.tol)
                cc_model = CentralConfigModel(
                    positions=cfg.positions.tolist(),
                    multiplier=cc.multiplier,
                    potential=cc.potential,
                    inertia=cc.inertia,
                    residual=cc.residual,
                    effective_couplings=eff.as_tuple(),
                    kind=cc.kind,
                )
            except Charged3BodyError:
                cc_model = None
            try:
                up = atlas.reduced_potential(
                    r.value, atlas.BetaPoint(a1 / a3, a2 / a3)
                ) if a3 != 0 else None
            except Charged3BodyError:
                up = None
            if sign_by_index is not None:
                sign = sign_by_index[idx]
            elif up is not None:
                sign = 1 if up > 0 else (-1 if up < 0 else 0)
            else:
                sign = None
            infos.append(
                RootInfo(
                    u=r.value,
                    interval=r.interval.value,
                    multiplicity=r.multiplicity,
                    enclosure=r.enclosure,
                    enclosure_width=r.enclosure_width,
                    reduced_potential=float(up) if up is not None else None,
                    u_sign=_sign_char(sign) if sign is not None else "?",
                    central_configuration=cc_model,
                )
            )
        return RootsReport(
            masses=m.as_tuple(),
            couplings=alpha.as_tuple(),
            beta=beta,
            coefficients=tuple(float(c) for c in q.coeffs),
            degree=q.degree,
            triple=rootlist.counts(),
            region=region,
            region_alt=region_alt,
            boundary=boundary,
            boundary_reason=boundary_reason,
            infinity_multiplicity=rootlist.infinity_multiplicity,
            roots=infos,
        )

    @app.post("/api/regions", response_model=RegionsResponse)
    def regions(req: RegionsRequest) -> RegionsResponse:
        m = _masses(req.m)
        grid = atlas.GridSpec(
            req.grid.b1_min, req.grid.b1_max, req.grid.n1,
            req.grid.b2_min, req.grid.b2_max, req.grid.n2,
        )
        lines = [CSV_REGION_HEADER]
        rows = []
        triples: dict[tuple[int, int, int], None] = {}
        regions_seen: dict[str, None] = {}
        boundary_cells = 0
        for rep in atlas.raster_sweep(grid, m):
            rows.append(rep)
            t = rep.triple or (0, 0, 0)
            if rep.boundary:
                boundary_cells += 1
            else:
                triples.setdefault(t, None)
            regions_seen.setdefault(rep.region_label, None)
            lines.append(
                ",".join(
                    (
                        _g17(rep.beta[0]),
                        _g17(rep.beta[1]),
                        str(t[0]),
                        str(t[1]),
                        str(t[2]),
                        rep.region_label,
                        str(rep.neg_u_counts[0]),
                        str(rep.neg_u_counts[1]),
                        str(rep.neg_u_counts[2]),
                    )
                )
            )
        svg = None
        if req.include_svg:
            trace = atlas.trace_gamma(m)
            cusp_pts = []
            for eta in atlas.cusp_parameters(m):
                g = atlas.gamma_point(eta, m)
                if not g.at_infinity:
                    cusp_pts.append((float(g.point[0]), float(g.point[1])))
            svg = svgplot.render_regions_svg(grid, rows, trace, cusp_pts, title="parameter-plane regions")
        return RegionsResponse(
            csv="\n".join(lines) + "\n",
            svg=svg,
            distinct_triples=sorted(triples),
            regions_seen=sorted(regions_seen),
            cells=len(rows),
            boundary_cells=boundary_cells,
        )

    @app.post("/api/curve", response_model=CurveResponse)
    def curve(req: CurveRequest) -> CurveResponse:
        m = _masses(req.masses())
        trace = atlas.trace_gamma(m, samples_per_branch=req.samples)
        lines = [CSV_CURVE_HEADER]
        count = 0
        for g in trace:
            if g.at_infinity:
                b1, b2 = g.direction
                flag = "1"
            else:
                b1, b2 = float(g.point[0]), float(g.point[1])
                flag = "0"
            lines.append(
                ",".join((_g17(g.u), _g17(b1), _g17(b2), str(g.branch), flag))
            )
            count += 1
        return CurveResponse(
            csv="\n".join(lines) + "\n",
            samples=count,
            cusps=[float(x) for x in atlas.cusp_parameters(m)],
            infinity_parameters=[float(x) for x in atlas.infinity_parameters(m)],
        )

    @app.post("/api/special-points", response_model=SpecialPointsResponse)
    def special_points(req: SpecialPointsRequest) -> SpecialPointsResponse:
        sp = atlas.special_points(req.mu)
        m = MassTriple(req.mu, req.mu, 1)
        g1, g2, g3 = atlas._g_polys(m)
        g3f = [float(c) for c in g3]
        scale = max(abs(c) for c in g3f)
        res_xi = max(
            abs(np.polyval(g3f[::-1], sp.xi_minus)) / (scale * max(1.0, abs(sp.xi_minus)) ** 5),
            abs(np.polyval(g3f[::-1], sp.xi_plus)) / (scale * max(1.0, abs(sp.xi_plus)) ** 5),
        )
        res_eta = max(
            atlas._curve_derivative_norm(sp.eta_minus, m)
            / max(1.0, _curve_scale(sp.eta_minus, m)),
            atlas._curve_derivative_norm(sp.eta_plus, m)
            / max(1.0, _curve_scale(sp.eta_plus, m)),
        )
        o = sp.ordered()
        return SpecialPointsResponse(
            mu=req.mu,
            xi_minus=sp.xi_minus,
            xi_zero=sp.xi_zero,
            xi_plus=sp.xi_plus,
            eta_minus=sp.eta_minus,
            eta_zero=sp.eta_zero,
            eta_plus=sp.eta_plus,
            xi_product=sp.xi_minus * sp.xi_plus,
            eta_product=sp.eta_minus * sp.eta_plus,
            ordering_ok=all(a < b for a, b in zip(o, o[1:])),
            residual_g3_at_xi=res_xi,
            residual_curve_derivative_at_eta=res_eta,
        )

    @app.post("/api/releq", response_model=ReleqResponse)
    def releq(req: ReleqRequest) -> ReleqResponse:
        m = _masses(req.m)
        gamma = _couplings(req, m)
        if req.noncollinear:
            lam = req.lam
            if lam is None:
                # gauge: fix the moment of inertia at 1
                sign = 1.0 if float(gamma.a1) > 0 else -1.0
                probe = phase.noncollinear_cc(gamma, m, sign)
                if probe is None:
                    raise NoSuchRootError("no non-collinear central configuration exists")
                i1 = probe[0].inertia
                lam = sign * i1 ** (3.0 / 2.0)
            out = phase.noncollinear_cc(gamma, m, lam)
            if out is None:
                raise NoSuchRootError("no non-collinear central configuration exists")
            cc, cfg = out
            eff = gamma
            uval = None
        else:
            q = quintic.build_quintic(gamma, m)
            roots = quintic.isolate_real_roots(q)
            target = float(req.u)
            nearest = None
            for r in roots.roots:
                if nearest is None or abs(r.value - target) < abs(nearest.value - target):
                    nearest = r
            if nearest is None or abs(nearest.value - target) > 1e-3 * max(1.0, abs(target)):
                raise NoSuchRootError(f"no root of the reduced quintic near u={target}")
            eff = phase.effective_couplings(gamma, nearest.interval)
            cfg = phase.reconstruct_collinear(nearest.value, 1.0, m)
            cc = phase.multiplier_of(cfg, eff, tol=1e-6)
            uval = nearest.value
        # dilation gauge: rescale the configuration so I = 1
        inertia = phase.moment_of_inertia_config(cfg)
        t = inertia ** (-0.5)
        cfg = phase.make_configuration(cfg.positions * t, m, recenter=False)
        cc = phase.multiplier_of(cfg, eff, tol=1e-6)
        if not cc.multiplier > 0:
            raise NonpositiveMultiplierError(
                f"multiplier {cc.multiplier:.6g} is not positive; no relative equilibrium"
            )
        pp = phase.build_relative_equilibrium(cfg, eff, tol=1e-7)
        iv = phase.integral_map(pp, eff)
        rank = phase.jacobian_rank(pp, eff, tol=req.tol)
        return ReleqResponse(
            masses=m.as_tuple(),
            couplings=gamma.as_tuple(),
            effective_couplings=eff.as_tuple(),
            u=uval,
            positions=pp.q.tolist(),
            momenta=pp.p.tolist(),
            multiplier=cc.multiplier,
            cc_residual=cc.residual,
            energy=iv.h,
            angular_momentum=tuple(iv.l.tolist()),
            total_momentum=tuple(iv.p.tolist()),
            center_of_mass=tuple(iv.q.tolist()),
            singular_values=[float(s) for s in rank.singular_values],
            rank=rank.rank,
            rank_gap=rank.rank_gap,
            classification=rank.classification.value,
        )

    @app.post("/api/verify", response_model=VerifyResponse)
    def verify_endpoint(req: VerifyRequest) -> VerifyResponse:
        rep = verify.run_all(seed=req.seed, iterations=req.iterations)
        suites = [
            SuiteModel(
                name=s.name,
                passed=bool(s.passed),
                checks=s.checks,
                max_residual=float(min(s.max_residual, 1e308)),
                tolerance=s.tolerance,
                detail=s.detail,
            )
            for s in rep.suites
        ]
        return VerifyResponse(
            passed=rep.passed,
            seed=rep.seed,
            iterations=rep.iterations,
            suites=suites,
            lines=rep.lines(),
        )

    return app


def _curve_scale(u: float, m: MassTriple) -> float:
    g = atlas.gamma_point(u, m)
    if g.at_infinity:
        return math.inf
    return math.hypot(float(g.point[0]), float(g.point[1]))


app = create_app()
