"""JSON-over-HTTP service backing the browser explorer.

Analyses run as asynchronous jobs: POST /api/analyze enqueues, GET
/api/jobs/{id} polls state and (when done) returns the results payload.
One shared FIFO worker pool executes grid runs; the job table is in-memory
only and serialized behind a lock.
"""

from __future__ import annotations

import argparse
import itertools
import os
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .data_model import (
    DATASET_KINDS,
    _RANDOMIZED_KINDS,
    SyntheticSpec,
    TableError,
    UnknownKindError,
    generate_synthetic,
    parse_table,
    serialize_table,
)
from .grid import (
    AllInfeasibleError,
    AnalysisResult,
    GridConfig,
    HyperParams,
    result_to_dict,
    run_grid,
)


class AnalyzeRequest(BaseModel):
    table: str
    scaleSteps: list[float] | None = None
    precisionSteps: list[int] | None = None
    parsimonySteps: list[float] | None = None
    axes: list[int] | None = None
    subsetSize: int | None = None
    budget: int | None = None
    seed: int = 0


@dataclass
class Job:
    job_id: str
    state: str = "queued"  # queued | running | done | failed
    cells_done: int = 0
    cells_total: int = 0
    error: str | None = None
    result: AnalysisResult | None = None
    payload: dict | None = None
    submitted_config: dict = field(default_factory=dict)


class JobStore:
    def __init__(self, workers: int = 1):
        self._jobs: dict[str, Job] = {}
        self._lock = threading.Lock()
        self._pool = ThreadPoolExecutor(max_workers=workers)

    def submit(self, request: AnalyzeRequest) -> Job:
        table = parse_table(request.table)
        kwargs = {}
        if request.scaleSteps is not None:
            kwargs["scale_steps"] = tuple(request.scaleSteps)
        if request.precisionSteps is not None:
            kwargs["precision_steps"] = tuple(request.precisionSteps)
        if request.parsimonySteps is not None:
            kwargs["parsimony_steps"] = tuple(request.parsimonySteps)
        if request.axes is not None:
            kwargs["axes"] = tuple(request.axes)
        if request.subsetSize is not None:
            kwargs["subset_size"] = request.subsetSize
        if request.budget is not None:
            kwargs["subset_budget"] = request.budget
        kwargs["rng_seed"] = request.seed
        cfg = GridConfig(**kwargs)

        job = Job(job_id=uuid.uuid4().hex,
                  submitted_config=request.model_dump(exclude={"table"}))
        with self._lock:
            self._jobs[job.job_id] = job
        self._pool.submit(self._run, job, table, cfg)
        return job

    def _run(self, job: Job, table, cfg: GridConfig):
        def progress(done: int, total: int):
            with self._lock:
                job.cells_done = done
                job.cells_total = total

        with self._lock:
            job.state = "running"
        try:
            result = run_grid(table, cfg, progress=progress)
            payload = result_to_dict(result)
        except (AllInfeasibleError, TableError, ValueError) as err:
            with self._lock:
                job.state = "failed"
                job.error = str(err)
            return
        with self._lock:
            job.result = result
            job.payload = payload
            job.state = "done"

    def get(self, job_id: str) -> Job:
        with self._lock:
            job = self._jobs.get(job_id)
        if job is None:
            raise KeyError(job_id)
        return job


def create_app(static_dir: str | None = None, workers: int = 1) -> FastAPI:
    app = FastAPI(title="modalfit")
    store = JobStore(workers=workers)
    app.state.jobs = store

    @app.post("/api/analyze", status_code=202)
    def post_analyze(request: AnalyzeRequest):
        try:
            job = store.submit(request)
        except TableError as err:
            raise HTTPException(status_code=400, detail=str(err))
        except ValueError as err:
            raise HTTPException(status_code=400, detail=f"bad config: {err}")
        return {"jobId": job.job_id}

    @app.get("/api/jobs/{job_id}")
    def get_job(job_id: str):
        try:
            job = store.get(job_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown job")
        body = {
            "jobId": job.job_id,
            "state": job.state,
            "cellsDone": job.cells_done,
            "cellsTotal": job.cells_total,
            "submittedConfig": job.submitted_config,
        }
        if job.state == "failed":
            body["error"] = job.error
        if job.state == "done":
            body["result"] = job.payload
        return body

    @app.get("/api/jobs/{job_id}/affinity")
    def get_affinity(job_id: str, axis: int, scale: float,
                     precision: int, parsimony: float):
        try:
            job = store.get(job_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown job")
        if job.state != "done" or job.result is None:
            raise HTTPException(status_code=404, detail="job not finished")
        hp = HyperParams(axis, scale, precision, parsimony)
        cell = job.result.cells.get(hp)
        if cell is None:
            raise HTTPException(status_code=404, detail="no such cell")
        matrix = [] if cell.affinity is None else cell.affinity.tolist()
        order = (
            [] if cell.clustering is None
            else [int(v) for v in cell.clustering.display_order]
        )
        return {"matrix": matrix, "displayOrder": order}

    @app.get("/api/datasets")
    def get_datasets():
        return [
            {"kind": kind, "description": desc,
             "defaultSeed": 1 if kind in _RANDOMIZED_KINDS else None}
            for kind, desc in sorted(DATASET_KINDS.items())
        ]

    @app.get("/api/datasets/{kind}", response_class=PlainTextResponse)
    def get_dataset(kind: str, seed: int = 1):
        try:
            table = generate_synthetic(SyntheticSpec(kind, seed=seed))
        except UnknownKindError:
            raise HTTPException(status_code=404, detail=f"unknown dataset {kind!r}")
        return serialize_table(table)

    if static_dir and os.path.isdir(static_dir):
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


def main(argv=None) -> int:
    import uvicorn

    parser = argparse.ArgumentParser(prog="modalfit-serve")
    parser.add_argument(
        "--listen",
        default=os.environ.get("MODALFIT_LISTEN", "127.0.0.1:8777"),
        help="host:port to bind (env MODALFIT_LISTEN)",
    )
    parser.add_argument(
        "--static-dir",
        default=os.environ.get("MODALFIT_STATIC", None),
        help="directory with the built explorer bundle (env MODALFIT_STATIC)",
    )
    parser.add_argument("--workers", type=int, default=1,
                        help="analysis worker threads")
    args = parser.parse_args(argv)
    host, _, port = args.listen.rpartition(":")
    app = create_app(static_dir=args.static_dir, workers=args.workers)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
