"""FastAPI application: thin HTTP veneer over the report handlers."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__, reports
from ..corpus import DEFAULT_CORPUS, DescriptorError, corpus_from_payload, resolve_group
from ..groups import Group, GroupError
from ..units import BudgetError
from . import schemas


def _group_of(request: schemas.GroupRequest) -> Group:
    try:
        return resolve_group(request.spec())
    except (DescriptorError, GroupError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def create_app() -> FastAPI:
    app = FastAPI(
        title="burnside",
        version=__version__,
        description="Burnside ring units of small finite groups: lattices, "
                    "marks, genetic bases, and cross-checked unit groups.",
    )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/corpus/default", response_model=schemas.CorpusResponse)
    def default_corpus() -> dict:
        return {"groups": list(DEFAULT_CORPUS)}

    @app.post("/describe", response_model=schemas.DescribeResponse)
    def describe(request: schemas.GroupRequest) -> dict:
        return reports.describe_report(_group_of(request))

    @app.post("/lattice", response_model=schemas.LatticeResponse)
    def lattice(request: schemas.GroupRequest) -> dict:
        return reports.lattice_report(_group_of(request))

    @app.post("/marks", response_model=schemas.MarksResponse)
    def marks(request: schemas.MarksRequest) -> dict:
        return reports.marks_report(
            _group_of(request), include_idempotents=request.include_idempotents)

    @app.post("/units", response_model=schemas.UnitsResponse)
    def units(request: schemas.UnitsRequest) -> dict:
        group = _group_of(request)
        try:
            return reports.units_report(group, method=request.method,
                                        budget=request.budget)
        except BudgetError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/genetic", response_model=schemas.GeneticResponse)
    def genetic(request: schemas.GroupRequest) -> dict:
        return reports.genetic_report(_group_of(request))

    @app.post("/exp", response_model=schemas.ExpResponse)
    def exp(request: schemas.ExpRequest) -> dict:
        group = _group_of(request)
        try:
            return reports.exp_report(group, budget=request.budget)
        except BudgetError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(request: schemas.VerifyRequest) -> dict:
        try:
            corpus = corpus_from_payload(request.corpus_payload())
            return reports.verify_report(corpus, jobs=request.jobs,
                                         include_timings=request.include_timings)
        except (DescriptorError, GroupError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except BudgetError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    return app


app = create_app()
