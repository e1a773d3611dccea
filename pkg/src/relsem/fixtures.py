"""Checked-in Cayley-table fixtures used by tests and the verify harness."""

from __future__ import annotations

from importlib.resources import files

from .semigroups import AbstractSemigroup, parse_cay


def seven_element_absorbing_union() -> AbstractSemigroup:
    """The 7-element identity-absorbing union of a 5-element core and a
    2-element group.

    It satisfies the first four band-with-core conditions but fails the
    fifth, so it separates the symmetrized class from near misses.
    """
    text = files("relsem").joinpath("data/absorbing_union7.cay").read_text()
    return parse_cay(text)
