import pytest
from fastapi.testclient import TestClient
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

from main import app
from src.database.models import Base
from src.database.db import get_db
from src.services.event_graph import complete_graph, cycle_graph, wheel_graph

SQLALCHEMY_DATABASE_URL = "sqlite:///./test.db"

engine = create_engine(
    SQLALCHEMY_DATABASE_URL, connect_args={"check_same_thread": False}
)
TestingSessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the long acceptance runs")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long acceptance run, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="module")
def session():
    Base.metadata.drop_all(bind=engine)
    Base.metadata.create_all(bind=engine)

    db = TestingSessionLocal()
    try:
        yield db
    finally:
        db.close()


@pytest.fixture(scope="module")
def client(session):
    def override_get_db():
        try:
            yield session
        finally:
            session.close()

    app.dependency_overrides[get_db] = override_get_db
    yield TestClient(app)


@pytest.fixture(scope="module")
def k3():
    return complete_graph(3)


@pytest.fixture(scope="module")
def k5():
    return complete_graph(5)


@pytest.fixture(scope="module")
def c4():
    return cycle_graph(4)


@pytest.fixture(scope="module")
def w6():
    return wheel_graph(6)
