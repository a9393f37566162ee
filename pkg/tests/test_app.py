import pytest
from fastapi import FastAPI
from httpx import AsyncClient
from starlette import status

from cfevrp.backend.config import SolverConfig
from cfevrp.db.models.instance import Instance
from cfevrp.db.models.schedule import Schedule


@pytest.mark.anyio
async def test_health(client: AsyncClient, fastapi_app: FastAPI) -> None:
    """
    Checks the health endpoint.

    :param client: client for the app.
    :param fastapi_app: current FastAPI application.
    """
    url = fastapi_app.url_path_for("health_check")
    response = await client.get(url)
    assert response.status_code == status.HTTP_200_OK
    assert set(response.json()) == {"status", "solver"}


@pytest.mark.anyio
async def test_generate(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("generate_instance")
    spec = {"class": "15-3-5", "edge_reduction": 0, "deadline": 15, "seed": 0}
    response = await client.post(url, json=spec)
    assert response.status_code == status.HTTP_200_OK
    instance = Instance.model_validate(response.json())
    assert len(instance.nodes) == 15
    assert len(instance.vehicles) == 3
    assert len(instance.jobs) == 5

    again = await client.post(url, json=spec)
    assert again.json() == response.json()


@pytest.mark.anyio
async def test_generate_rejects_unknown_reduction(
    client: AsyncClient,
    fastapi_app: FastAPI,
) -> None:
    url = fastapi_app.url_path_for("generate_instance")
    spec = {"class": "15-3-5", "edge_reduction": 10, "deadline": 15, "seed": 0}
    response = await client.post(url, json=spec)
    assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY


@pytest.mark.anyio
async def test_encode(client: AsyncClient, fastapi_app: FastAPI, line: Instance) -> None:
    url = fastapi_app.url_path_for("encode_instance")
    response = await client.post(
        url, json={"instance": line.model_dump(mode="json", by_alias=True)}
    )
    assert response.status_code == status.HTTP_200_OK
    stats = response.json()
    assert stats["families"]["25"] == 1
    assert stats["assertions"] == sum(stats["families"].values())
    assert stats["declarations"] > 0


@pytest.mark.anyio
async def test_encode_rejects_bad_instance(
    client: AsyncClient,
    fastapi_app: FastAPI,
    line: Instance,
) -> None:
    url = fastapi_app.url_path_for("encode_instance")
    document = line.model_dump(mode="json", by_alias=True)
    document["vehicles"][0]["start"] = "Z"
    response = await client.post(url, json={"instance": document})
    assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY


@pytest.mark.anyio
async def test_validate(
    client: AsyncClient,
    fastapi_app: FastAPI,
    line: Instance,
    line_schedule: Schedule,
) -> None:
    url = fastapi_app.url_path_for("validate_schedule")
    body = {
        "instance": line.model_dump(mode="json", by_alias=True),
        "schedule": line_schedule.model_dump(mode="json"),
    }
    response = await client.post(url, json=body)
    assert response.status_code == status.HTTP_200_OK
    report = response.json()
    assert report["overall"] is True
    assert report["cost"] == 2

    body["schedule"]["total_cost"] = 3
    response = await client.post(url, json=body)
    assert response.json()["overall"] is False
    assert response.json()["families"]["25"]["passed"] is False


@pytest.mark.anyio
async def test_oracle(client: AsyncClient, fastapi_app: FastAPI, line: Instance) -> None:
    url = fastapi_app.url_path_for("oracle_schedule")
    response = await client.post(
        url, json={"instance": line.model_dump(mode="json", by_alias=True)}
    )
    assert response.status_code == status.HTTP_200_OK
    result = response.json()
    assert result["status"] == "sat"
    assert result["cost"] == 2
    assert result["optimal"] is True


@pytest.mark.anyio
async def test_oracle_refuses_large_instance(
    client: AsyncClient,
    fastapi_app: FastAPI,
    fig1: Instance,
) -> None:
    url = fastapi_app.url_path_for("oracle_schedule")
    response = await client.post(
        url, json={"instance": fig1.model_dump(mode="json", by_alias=True)}
    )
    assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY


@pytest.mark.anyio
async def test_solve_without_solver(
    client: AsyncClient,
    fastapi_app: FastAPI,
    line: Instance,
) -> None:
    fastapi_app.state.solver_path = None
    url = fastapi_app.url_path_for("solve_schedule")
    response = await client.post(
        url, json={"instance": line.model_dump(mode="json", by_alias=True)}
    )
    assert response.status_code == status.HTTP_503_SERVICE_UNAVAILABLE


@pytest.mark.anyio
async def test_solve(
    client: AsyncClient,
    fastapi_app: FastAPI,
    line: Instance,
    solver_config: SolverConfig,
) -> None:
    fastapi_app.state.solver_path = solver_config.path
    url = fastapi_app.url_path_for("solve_schedule")
    body = {
        "instance": line.model_dump(mode="json", by_alias=True),
        "mode": "optimize-bound-search",
    }
    response = await client.post(url, json=body)
    assert response.status_code == status.HTTP_200_OK
    result = response.json()
    assert result["record"]["status"] == "sat"
    assert result["record"]["cost"] == 2
    assert result["report"]["overall"] is True
