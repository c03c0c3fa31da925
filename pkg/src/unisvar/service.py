"""HTTP front end: the operation layer behind a FastAPI app.

Every endpoint takes the quiver document inline, so one running service
can answer for any algebra.  Domain errors map to 400 with the same
structured payload the CLI prints.

Run with:  uvicorn unisvar.service:app
"""

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import ops
from .enumeration import DEFAULT_BUDGET
from .errors import UnisvarError

app = FastAPI(
    title="unisvar",
    description="Uniserial variety computations for bounden quiver algebras",
)


class SeriesRequest(BaseModel):
    quiver: str = Field(description="quiver-with-relations document text")
    series: str = Field(description="comma-separated vertex list, e.g. 1,2,3")


class MastRequest(SeriesRequest):
    mast: str = Field(description="mast named by its arrow list, e.g. b*a")


class EnumerateRequest(MastRequest):
    budget: int = DEFAULT_BUDGET
    jobs: int = 1


class FibresRequest(EnumerateRequest):
    seed: int = 0


class PointRequest(MastRequest):
    point: str = Field(default="", description="e.g. k[1;b;0]=1,k[2;c;1]=1/2")


class CountRequest(SeriesRequest):
    budget: int = DEFAULT_BUDGET
    jobs: int = 1


class DegenRequest(BaseModel):
    quiver: str
    left: dict
    right: dict
    seed: int = 0


@app.exception_handler(UnisvarError)
def domain_error_handler(request, exc):
    return JSONResponse(status_code=400, content=exc.payload())


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/masts")
def masts_endpoint(request: SeriesRequest):
    workspace = ops.Workspace(request.quiver)
    return ops.op_masts(workspace, request.series)


@app.post("/detours")
def detours_endpoint(request: MastRequest):
    workspace = ops.Workspace(request.quiver)
    return ops.op_detours(workspace, request.series, request.mast)


@app.post("/equations")
def equations_endpoint(request: MastRequest):
    workspace = ops.Workspace(request.quiver)
    return ops.op_equations(workspace, request.series, request.mast)


@app.post("/enumerate")
def enumerate_endpoint(request: EnumerateRequest):
    workspace = ops.Workspace(request.quiver)
    return ops.op_enumerate(
        workspace,
        request.series,
        request.mast,
        budget=request.budget,
        jobs=request.jobs,
    )


@app.post("/fibres")
def fibres_endpoint(request: FibresRequest):
    workspace = ops.Workspace(request.quiver)
    return ops.op_fibres(
        workspace,
        request.series,
        request.mast,
        budget=request.budget,
        jobs=request.jobs,
        seed=request.seed,
    )


@app.post("/module")
def module_endpoint(request: PointRequest):
    workspace = ops.Workspace(request.quiver)
    return ops.op_module(workspace, request.series, request.mast, request.point)


@app.post("/psi")
def psi_endpoint(request: PointRequest):
    workspace = ops.Workspace(request.quiver)
    return ops.op_psi(workspace, request.series, request.mast, request.point)


@app.post("/pluecker")
def pluecker_endpoint(request: PointRequest):
    workspace = ops.Workspace(request.quiver)
    return ops.op_pluecker(
        workspace, request.series, request.mast, request.point
    )


@app.post("/guni-count")
def guni_count_endpoint(request: CountRequest):
    workspace = ops.Workspace(request.quiver)
    return ops.op_guni_count(
        workspace, request.series, budget=request.budget, jobs=request.jobs
    )


@app.post("/degen")
def degen_endpoint(request: DegenRequest):
    workspace = ops.Workspace(request.quiver)
    return ops.op_degen(
        workspace, request.left, request.right, seed=request.seed
    )


def main():
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)


if __name__ == "__main__":
    main()
