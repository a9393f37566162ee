"""Instance generation and encoding routes."""

import asyncio

from fastapi import APIRouter

from cfevrp.api.errors import http_error
from cfevrp.api.instances.schema import EncodeRequest, EncodeStats
from cfevrp.db.models.instance import Instance
from cfevrp.encoder.encode import EncodeOptions, encode
from cfevrp.exceptions import CfevrpError
from cfevrp.generator.generate import generate
from cfevrp.generator.spec import GenSpec

router = APIRouter()


@router.post("/generate", response_model=Instance)
async def generate_instance(spec: GenSpec) -> Instance:
    """
    Generate a random instance.

    :param spec: class, edge reduction, deadline and seed.
    :return: generated instance.
    """
    try:
        return await asyncio.to_thread(generate, spec)
    except CfevrpError as e:
        raise http_error(e)


@router.post("/encode", response_model=EncodeStats)
async def encode_instance(request: EncodeRequest) -> EncodeStats:
    """
    Encode an instance and report the size of the encoding.

    :param request: instance and encoder options.
    :return: declaration and assertion counts, assertions per family.
    """
    options = EncodeOptions(include_capacity=request.include_capacity)
    try:
        encoded = await asyncio.to_thread(encode, request.instance, options)
    except CfevrpError as e:
        raise http_error(e)
    return EncodeStats(
        declarations=len(encoded.declarations),
        assertions=encoded.assertion_count,
        families=encoded.stats,
    )
