import pytest

from relcell import (
    EMPTY,
    Factorizer,
    SimplicialMap,
    boundary_complex,
    coproduct,
    identity_map,
    inclusion_map,
    standard_simplex,
)


@pytest.fixture(scope="session")
def fz():
    """A factorization cache shared across the whole test session."""
    return Factorizer()


def boundary_inclusion(k):
    return inclusion_map(boundary_complex(k), standard_simplex(k))


def fold_map():
    pt = standard_simplex(0)
    two, _ = coproduct([pt, pt])
    return SimplicialMap(two, pt, {s: "0" for s in two.id_set})


def law_fixtures():
    """The built-in law-check corpus (named, in a fixed order)."""
    pt = standard_simplex(0)
    return [
        ("empty-to-point", SimplicialMap(EMPTY, pt, {})),
        ("boundary-1", boundary_inclusion(1)),
        ("fold", fold_map()),
        ("boundary-2", boundary_inclusion(2)),
        ("identity-1", identity_map(standard_simplex(1))),
    ]
