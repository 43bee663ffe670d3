import pytest

from tstructkit.quiver import QuiverSpec, build_backend


@pytest.fixture(scope="session")
def a1():
    return build_backend(QuiverSpec(1, (), 2))


@pytest.fixture(scope="session")
def a2():
    return build_backend(QuiverSpec(2, ((0, 1),), 2))


@pytest.fixture(scope="session")
def a3():
    return build_backend(QuiverSpec(3, ((0, 1), (1, 2)), 2))


@pytest.fixture(scope="session")
def kronecker():
    return build_backend(QuiverSpec(2, ((0, 1), (0, 1)), 2, (1, 1)))


def id_by_dims(backend, dims):
    """The table id of the unique indecomposable with the given dimension
    vector, for fixtures where that is unambiguous."""
    hits = [i for i, ind in enumerate(backend.indecs) if tuple(ind.dims) == tuple(dims)]
    assert len(hits) == 1, f"expected one indecomposable with dims {dims}, found {hits}"
    return hits[0]


@pytest.fixture(scope="session")
def a2_ids(a2):
    return {"S2": id_by_dims(a2, (0, 1)), "S1": id_by_dims(a2, (1, 0)),
            "P1": id_by_dims(a2, (1, 1))}
