from fastapi import HTTPException, status

from cfevrp.exceptions import (
    CfevrpError,
    InstanceError,
    OracleLimitError,
    PipelineError,
    SolverError,
)


def http_error(error: CfevrpError) -> HTTPException:
    """
    Map a toolkit error to an HTTP error.

    Input problems are 422, solver problems 503, anything else 500.
    Pipeline errors are mapped by their cause.

    :param error: raised toolkit error.
    :return: exception to raise from the route.
    """
    cause = error.cause if isinstance(error, PipelineError) else error
    if isinstance(cause, (InstanceError, OracleLimitError)):
        code = status.HTTP_422_UNPROCESSABLE_ENTITY
    elif isinstance(cause, SolverError):
        code = status.HTTP_503_SERVICE_UNAVAILABLE
    else:
        code = status.HTTP_500_INTERNAL_SERVER_ERROR
    return HTTPException(status_code=code, detail=str(error))
