"""JSON forms of the core objects.

Elements t^mu w serialize as {"mu": [ints], "w": [simple-reflection
indices]} with the word reduced; length-zero elements additionally carry
their pi_1 label.
"""

from __future__ import annotations

from fractions import Fraction

from .root_data import RootDatum
from .affine import ExtAffine, engine, kottwitz
from .weyl import from_word, reduced_word


def element_to_json(datum: RootDatum, x: ExtAffine) -> dict:
    out = {"mu": list(x.mu), "w": list(reduced_word(datum, x.w))}
    if engine(datum).length(x) == 0:
        out["pi1"] = list(kottwitz(datum, x))
    return out


def element_from_json(datum: RootDatum, data: dict) -> ExtAffine:
    return ExtAffine(tuple(data["mu"]), from_word(datum, data["w"]))


def coweight_to_json(v) -> list:
    return [str(c) if isinstance(c, Fraction) else c for c in v]
