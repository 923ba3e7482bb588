"""FastAPI application wrapping the core package.

Domain negatives (a pattern outside the range, a search that found nothing)
are ordinary 200 responses with a status field; HTTP error codes are
reserved for malformed input (400/422) and internal construction bugs (500).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..classify import classify
from ..decompose import plan_decomposition, realize
from ..errors import (
    BordaRangeError,
    BudgetExceeded,
    ConstructionError,
    InvalidPattern,
    NotDecomposable,
    NotInRangeError,
    UnsupportedConstruction,
)
from ..model import Profile, borda_scores, weak_order_of
from ..oracle import WitnessCache, cross_check, enumerate_range, search_witness
from . import schemas


def _checked_pattern(raw: list[int]) -> tuple[int, ...]:
    pattern = tuple(raw)
    if not pattern or any(s < 1 for s in pattern):
        raise HTTPException(status_code=400, detail=f"invalid pattern {raw}")
    return pattern


def _checked_profile(model: schemas.ProfileModel) -> Profile:
    try:
        return model.to_profile()
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def create_app(cache_path=None) -> FastAPI:
    app = FastAPI(
        title="bordarange",
        version=__version__,
        description="Borda range membership, witness construction, and brute-force verification",
    )
    cache = WitnessCache(cache_path)

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify_endpoint(request: schemas.ClassifyRequest):
        pattern = _checked_pattern(request.pattern)
        try:
            result = classify(pattern)
        except InvalidPattern as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return schemas.ClassifyResponse(
            pattern=list(pattern),
            verdict=result.verdict.value,
            rule=result.rule.value if result.rule else None,
            applicable_n=result.applicable_n,
        )

    @app.post("/construct", response_model=schemas.ConstructResponse)
    def construct_endpoint(request: schemas.ConstructRequest):
        pattern = _checked_pattern(request.pattern)
        if request.n % 2 == 0 or request.n < 3:
            raise HTTPException(status_code=400, detail="n must be odd and >= 3")
        verdict = classify(pattern)
        try:
            profile = realize(pattern, request.n, cache=cache, seed=request.seed)
        except NotInRangeError as exc:
            return schemas.ConstructResponse(
                status="not_in_range",
                pattern=list(pattern),
                n=request.n,
                rule=verdict.rule.value if verdict.rule else None,
                detail=str(exc),
            )
        except UnsupportedConstruction as exc:
            return schemas.ConstructResponse(
                status="unsupported",
                pattern=list(pattern),
                n=request.n,
                rule=verdict.rule.value if verdict.rule else None,
                detail=str(exc),
            )
        except (NotDecomposable, InvalidPattern) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except ConstructionError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc
        plan_names: list[str] | None = None
        twos = pattern.count(2)
        if set(pattern) <= {2, 4} and twos >= 2 and twos % 2 == 0:
            plan_names = [repr(block) for block in plan_decomposition(pattern).blocks]
        return schemas.ConstructResponse(
            status="ok",
            pattern=list(pattern),
            n=request.n,
            rule=verdict.rule.value if verdict.rule else None,
            profile=schemas.ProfileModel.from_profile(profile),
            scores=list(borda_scores(profile)),
            plan=plan_names,
        )

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify_endpoint(request: schemas.VerifyRequest):
        profile = _checked_profile(request.profile)
        order = weak_order_of(profile)
        matches = None
        if request.expect is not None:
            matches = order.pattern == _checked_pattern(request.expect)
        return schemas.VerifyResponse(
            m=profile.m,
            n=profile.n,
            scores=list(borda_scores(profile)),
            pattern=list(order.pattern),
            levels=[list(level) for level in order.levels],
            matches_expected=matches,
        )

    @app.post("/search", response_model=schemas.SearchResponse)
    def search_endpoint(request: schemas.SearchRequest):
        pattern = _checked_pattern(request.pattern)
        if request.n % 2 == 0 or request.n < 1:
            raise HTTPException(status_code=400, detail="n must be odd")
        cached = cache.get(pattern, request.n)
        if cached is not None:
            return schemas.SearchResponse(
                status="found",
                pattern=list(pattern),
                n=request.n,
                exhaustive=False,
                evaluations=0,
                profile=schemas.ProfileModel.from_profile(cached),
                cached=True,
            )
        kwargs = {"seed": request.seed}
        if request.budget is not None:
            kwargs["budget"] = request.budget
        try:
            result = search_witness(pattern, request.n, **kwargs)
        except (InvalidPattern, BudgetExceeded) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if result.profile is not None:
            cache.put(pattern, request.n, result.profile, provenance="searched")
            return schemas.SearchResponse(
                status="found",
                pattern=list(pattern),
                n=request.n,
                exhaustive=result.exhaustive,
                evaluations=result.evaluations,
                profile=schemas.ProfileModel.from_profile(result.profile),
            )
        return schemas.SearchResponse(
            status="not_found",
            pattern=list(pattern),
            n=request.n,
            exhaustive=result.exhaustive,
            evaluations=result.evaluations,
        )

    @app.post("/enumerate", response_model=schemas.EnumerateResponse)
    def enumerate_endpoint(request: schemas.EnumerateRequest):
        if request.n % 2 == 0 or request.n < 1:
            raise HTTPException(status_code=400, detail="n must be odd")
        try:
            atlas = enumerate_range(
                request.m,
                request.n,
                request.mode,
                trials=request.trials,
                seed=request.seed,
            )
        except BudgetExceeded as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        entries = [
            schemas.AtlasEntryModel(
                pattern=list(pattern),
                count=atlas.achieved[pattern].count,
                witness=schemas.ProfileModel.from_profile(atlas.achieved[pattern].witness),
            )
            for pattern in atlas.patterns()
        ]
        return schemas.EnumerateResponse(
            m=atlas.m, n=atlas.n, mode=atlas.mode, trials=atlas.trials, achieved=entries
        )

    @app.post("/cross-check", response_model=schemas.CrossCheckResponse)
    def cross_check_endpoint(request: schemas.CrossCheckRequest):
        if request.n % 2 == 0 or request.n < 3:
            raise HTTPException(status_code=400, detail="n must be odd and >= 3")
        try:
            report = cross_check(request.max_m, request.n)
        except (BudgetExceeded, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return schemas.CrossCheckResponse(
            max_m=report.max_m,
            n=report.n,
            patterns_checked=report.patterns_checked,
            consistent=report.consistent,
            contradictions=[
                schemas.ContradictionModel(
                    pattern=list(c.pattern), verdict=c.verdict.value, achieved=c.achieved
                )
                for c in report.contradictions
            ],
            unknown=[
                schemas.UnknownStatusModel(pattern=list(p), achieved=achieved)
                for p, achieved in sorted(report.unknown_status.items())
            ],
            in_range_present=report.in_range_present,
            not_in_range_absent=report.not_in_range_absent,
        )

    @app.exception_handler(BordaRangeError)
    async def domain_error_handler(_, exc: BordaRangeError):
        from fastapi.responses import JSONResponse

        status = 500 if isinstance(exc, ConstructionError) else 400
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    return app


app = create_app()
