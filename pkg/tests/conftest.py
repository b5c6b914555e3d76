"""Shared pytest configuration."""

import os

import pytest

from src.core.config import get_settings
from src.models.diagram import DynkinDiagram
from src.models.groupoid import ExplorationCaps
from src.models.scalar import TorsionConfig

os.environ.setdefault("APP_ENV", "test")
get_settings.cache_clear()


def _path(vertices, edges) -> DynkinDiagram:
    return DynkinDiagram.from_labels(
        vertices, {(k, k + 1): label for k, label in enumerate(edges)}
    )


@pytest.fixture
def config() -> TorsionConfig:
    return TorsionConfig(2520)


@pytest.fixture
def q(config):
    return config.generic()


@pytest.fixture
def path():
    """Build a path graph from vertex labels and consecutive edge labels."""
    return _path


@pytest.fixture
def caps() -> ExplorationCaps:
    return ExplorationCaps(max_bases=50_000, max_coeff=200)


@pytest.fixture
def explorer(caps):
    from src.services.groupoid_service import WeylGroupoidExplorer

    return WeylGroupoidExplorer(caps=caps)


@pytest.fixture
def repository(config):
    from src.services.catalog_repository import FileCatalogRepository

    return FileCatalogRepository(config=config)


@pytest.fixture
def catalog(repository, explorer, config):
    from src.services.catalog_service import CatalogService

    return CatalogService(
        repository=repository,
        explorer=explorer,
        config=config,
        cross_row_pairs=4,
        workers=1,
    )


@pytest.fixture
def a4(q):
    """Cartan type A_4 at a generic parameter."""
    return _path([q] * 4, [q.inverse()] * 3)


@pytest.fixture
def d4(q):
    """Cartan type D_4: vertex 2 joined to 1, 3 and 4."""
    return DynkinDiagram.from_labels(
        [q] * 4, {(0, 1): q.inverse(), (1, 2): q.inverse(), (1, 3): q.inverse()}
    )
