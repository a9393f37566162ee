from pathlib import Path
from typing import Any, AsyncGenerator

import pytest
from fastapi import FastAPI
from httpx import ASGITransport, AsyncClient

from cfevrp.application import get_app
from cfevrp.backend.config import SolverConfig
from cfevrp.db.dao.artifact_dao import artifact_dao
from cfevrp.db.models.instance import Instance
from cfevrp.db.models.schedule import (
    MoveEvent,
    Schedule,
    ServiceEvent,
    VehicleTimeline,
)
from cfevrp.settings import settings
from cfevrp.utils.solver_locator import resolve_solver


@pytest.fixture(scope="session")
def anyio_backend() -> str:
    """
    Backend for anyio pytest plugin.

    :return: backend name.
    """
    return "asyncio"


@pytest.fixture
def fig1() -> Instance:
    return artifact_dao.load_fig1()


def line_instance(jobs: list[dict] | None = None, **battery: Any) -> Instance:
    """
    Two nodes A <-> B, one vehicle parked at A, charger at B only.

    :param jobs: job documents; one pickup-at-B, delivery-at-A job by default.
    :param battery: overrides of the battery parameters.
    """
    if jobs is None:
        jobs = [
            {
                "id": "1",
                "eligible": ["a"],
                "tasks": [
                    {"id": "pickup", "location": "B", "tw": [0, 5]},
                    {"id": "delivery", "location": "A", "predecessors": ["pickup"], "tw": [0, 5]},
                ],
            }
        ]
    document = {
        "nodes": ["A", "B"],
        "edges": [{"from": "A", "to": "B"}, {"from": "B", "to": "A"}],
        "vehicles": [{"id": "a", "start": "A"}],
        "jobs": jobs,
        "battery": {"operating_range": 5, "charge": 1, "discharge": 1, "stations": ["B"]}
        | battery,
        "deadline": 4,
    }
    return Instance.model_validate(document)


@pytest.fixture
def line() -> Instance:
    """Horizon 5; the only job needs a round trip A -> B -> A."""
    return line_instance()


@pytest.fixture
def line_schedule() -> Schedule:
    """Optimal schedule of ``line``: out at 0, back at 1, cost 2."""
    return Schedule(
        deadline=4,
        horizon=5,
        vehicles={
            "a": VehicleTimeline(
                locations={0: "A", 1: "B", 2: "A", 3: "A", 4: "A", 5: "A"},
                moves=[
                    MoveEvent(time=0, source="A", target="B"),
                    MoveEvent(time=1, source="B", target="A"),
                ],
                services=[
                    ServiceEvent(job="1", task="pickup", time=1),
                    ServiceEvent(job="1", task="delivery", time=2),
                ],
                charge={0: 5, 1: 4, 2: 3, 3: 3, 4: 3, 5: 3},
            )
        },
        total_cost=2,
    )


@pytest.fixture
def swap() -> Instance:
    """
    Two vehicles on a path A - B - C with a hub in the middle.

    Each vehicle carries one job to the other end and back.
    """
    return Instance.model_validate(
        {
            "nodes": ["A", "B", "C"],
            "hubs": ["B"],
            "edges": [
                {"from": "A", "to": "B"},
                {"from": "B", "to": "A"},
                {"from": "B", "to": "C"},
                {"from": "C", "to": "B"},
            ],
            "vehicles": [{"id": "a", "start": "A"}, {"id": "c", "start": "C"}],
            "jobs": [
                {
                    "id": "1",
                    "eligible": ["a"],
                    "tasks": [
                        {"id": "p", "location": "B", "tw": [0, 7]},
                        {"id": "d", "location": "A", "predecessors": ["p"], "tw": [0, 7]},
                    ],
                },
                {
                    "id": "2",
                    "eligible": ["c"],
                    "tasks": [
                        {"id": "p", "location": "B", "tw": [0, 7]},
                        {"id": "d", "location": "C", "predecessors": ["p"], "tw": [0, 7]},
                    ],
                },
            ],
            "battery": {"operating_range": 6, "charge": 1, "discharge": 1},
            "deadline": 6,
        }
    )


@pytest.fixture
def solver_config() -> SolverConfig:
    """Solver from settings; skips the test when none is installed."""
    path = resolve_solver(settings.solver_path)
    if path is None:
        pytest.skip(f"SMT solver '{settings.solver_path}' not available")
    return SolverConfig.from_settings(path=path, time_limit=120)


@pytest.fixture
def instance_file(tmp_path: Path, line: Instance) -> Path:
    path = tmp_path / "line.json"
    artifact_dao.save_instance(line, path)
    return path


@pytest.fixture
def fastapi_app() -> FastAPI:
    """
    Fixture for creating FastAPI app.

    :return: fastapi app.
    """
    application = get_app()
    return application  # noqa: RET504


@pytest.fixture
async def client(
    fastapi_app: FastAPI,
    anyio_backend: Any,
) -> AsyncGenerator[AsyncClient, None]:
    """
    Fixture that creates client for requesting server.

    :param fastapi_app: the application.
    :yield: client for the app.
    """
    transport = ASGITransport(app=fastapi_app)
    async with AsyncClient(transport=transport, base_url="http://test", timeout=60.0) as ac:
        yield ac
