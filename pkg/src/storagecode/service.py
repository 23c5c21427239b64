"""HTTP service wrapping the library: one endpoint per CLI subcommand.

Run with ``uvicorn storagecode.service:app``. Requests and responses are
the same JSON documents the CLI reads and writes; semantic failures map to
400 (invalid input), 409 (no applicable construction), and 413 (a path or
enumeration limit was exceeded).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .classify import classify_capacity
from .construct import (
    ConstructionFailure,
    LinearCode,
    NoApplicableConstruction,
    auto_construct,
)
from .fields import FieldError
from .graphs import GraphError, StorageGraph, parse_graph
from .structure import DEFAULT_PATH_LIMIT, PathOverflowError, analysis_report
from .verify import (
    DEFAULT_ORACLE_CAP,
    CodeMismatchError,
    OracleInfeasibleError,
    check_compatible,
    oracle_exhaustive_decode,
    verify_code,
    verify_edge,
)


class EdgeModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    u: str
    v: str
    w: int


class GraphModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    K: int
    nodes: list[str]
    edges: list[EdgeModel]


class CodeModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    p: int
    K: int
    lw: int
    lv: int
    nodes: dict[str, list[list[int]]]


class AnalyzeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    graph: GraphModel
    path_limit: int = DEFAULT_PATH_LIMIT


class ClassifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    graph: GraphModel
    seed: int = 0
    path_limit: int = DEFAULT_PATH_LIMIT
    strict_thm4: bool = False
    include_code: bool = True


class ConstructRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    graph: GraphModel
    rate: str = Field(default="auto", pattern="^(auto|2|3/2|4/3)$")
    seed: int = 0
    path_limit: int = DEFAULT_PATH_LIMIT
    strict_thm4: bool = False


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    graph: GraphModel
    code: CodeModel
    jobs: int = 1


class OracleRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    graph: GraphModel
    code: CodeModel
    cap: int = DEFAULT_ORACLE_CAP


class ConstructResponse(BaseModel):
    code: dict
    rule: str
    attempts: int


class HealthResponse(BaseModel):
    status: str
    version: str


app = FastAPI(
    title="storagecode",
    version=__version__,
    description=(
        "Capacity classification, code construction, and decodability "
        "verification for storage over source-labeled graphs."
    ),
)


def _graph(model: GraphModel) -> StorageGraph:
    try:
        return parse_graph(model.model_dump())
    except GraphError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def _code(model: CodeModel, g: StorageGraph) -> LinearCode:
    try:
        code = LinearCode.from_dict(model.model_dump())
        check_compatible(code, g)
        return code
    except (GraphError, CodeMismatchError, FieldError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/analyze")
def analyze(request: AnalyzeRequest) -> dict:
    g = _graph(request.graph)
    try:
        return analysis_report(g, path_limit=request.path_limit)
    except PathOverflowError as exc:
        raise HTTPException(status_code=413, detail=str(exc)) from exc


@app.post("/classify")
def classify(request: ClassifyRequest) -> dict:
    g = _graph(request.graph)
    verdict = classify_capacity(
        g,
        seed=request.seed,
        path_limit=request.path_limit,
        strict_thm4=request.strict_thm4,
    )
    payload = verdict.to_dict(include_code=request.include_code)
    payload["seed"] = request.seed
    return payload


@app.post("/construct", response_model=ConstructResponse)
def construct(request: ConstructRequest) -> ConstructResponse:
    g = _graph(request.graph)
    try:
        result = auto_construct(
            g,
            rate=request.rate,
            seed=request.seed,
            strict_thm4=request.strict_thm4,
            path_limit=request.path_limit,
        )
    except NoApplicableConstruction as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from exc
    except PathOverflowError as exc:
        raise HTTPException(status_code=413, detail=str(exc)) from exc
    except ConstructionFailure as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc
    return ConstructResponse(
        code=result.code.to_dict(), rule=result.rule, attempts=result.attempts
    )


@app.post("/verify")
def verify(request: VerifyRequest) -> dict:
    g = _graph(request.graph)
    code = _code(request.code, g)
    return verify_code(code, g, jobs=request.jobs).to_dict()


@app.post("/oracle")
def oracle(request: OracleRequest) -> dict:
    g = _graph(request.graph)
    code = _code(request.code, g)
    edges = []
    agree = True
    try:
        for e in g.edges:
            rank_says = verify_edge(code, g, e)
            oracle_says = oracle_exhaustive_decode(code, g, e, cap=request.cap)
            agree = agree and (rank_says == oracle_says)
            edges.append(
                {
                    "u": e.u,
                    "v": e.v,
                    "w": e.w,
                    "rank_criterion": rank_says,
                    "exhaustive": oracle_says,
                }
            )
    except OracleInfeasibleError as exc:
        raise HTTPException(status_code=413, detail=str(exc)) from exc
    return {"agree": agree, "edges": edges}
