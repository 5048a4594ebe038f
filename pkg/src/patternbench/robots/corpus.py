"""Bundled robot corpus: the eleven reference strings used across the
test suite and the gate/adder simulations.
"""

from __future__ import annotations

from importlib import resources

from .assembly import Assembly, merge, parse_and_expand

CORPUS_NAMES = (
    "w_scar",
    "w_fire",
    "w_acar",
    "w_caterpillar",
    "w_lg",
    "w_lg_tape",
    "w_tm",
    "w_majgate_i",
    "w_majgate_o",
    "w_nmajgate_o",
    "w_ba",
)


def corpus_text(name: str) -> str:
    if name not in CORPUS_NAMES:
        raise KeyError(f"unknown corpus robot {name!r}")
    return (resources.files("patternbench.corpus") / f"{name}.robot").read_text("utf-8")


def load(name: str) -> Assembly:
    return parse_and_expand(corpus_text(name), name=name)


def majority_gate_assembly() -> Assembly:
    """Input and output parts of the majority gate as one two-part assembly."""
    return merge(load("w_majgate_i"), load("w_majgate_o"), name="w_majgate")


def not_majority_gate_assembly() -> Assembly:
    return merge(load("w_majgate_i"), load("w_nmajgate_o"), name="w_nmajgate")
