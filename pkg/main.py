"""
In the main.py file, the FastAPI application is initialized, including the routes, middleware and error handlers.
The uvicorn library is used to run the application.
"""
import uvicorn
from fastapi import FastAPI, Request, status
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from src.conf import messages
from src.database.db import init_db
from src.routes import exclusivity, graphs, inequalities, polytopes, prepnc, quantum
from src.services.errors import EventGraphError, LimitExceededError

app = FastAPI()

app.include_router(graphs.router, prefix="/api")
app.include_router(exclusivity.router, prefix="/api")
app.include_router(inequalities.router, prefix="/api")
app.include_router(quantum.router, prefix="/api")
app.include_router(prepnc.router, prefix="/api")
app.include_router(polytopes.router, prefix="/api")

app.add_middleware(
    CORSMiddleware,
    allow_origins=['*'],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(EventGraphError)
async def event_graph_error_handler(request: Request, exc: EventGraphError) -> JSONResponse:
    """
    Answers invalid input with 400, and a computation over a configured size limit with 413.

    :return: JSONResponse
    """
    code = status.HTTP_413_REQUEST_ENTITY_TOO_LARGE if isinstance(exc, LimitExceededError) \
        else status.HTTP_400_BAD_REQUEST
    return JSONResponse(status_code=code, content={"detail": str(exc)})


@app.on_event("startup")
async def startup() -> None:
    """
    Creates the polytope cache tables.
    :return: None
    """
    init_db()


@app.get("/")
def read_root() -> dict:
    """
    Returns the root of the API. It is the entry point for the application.
    :return: dict
    """
    return {"message": messages.API_GREETING}


if __name__ == "__main__":
    uvicorn.run("main:app", host="0.0.0.0", port=8000, reload=True)
