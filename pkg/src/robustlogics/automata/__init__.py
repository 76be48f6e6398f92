"""rLDL to alternating parity automata to Büchi automata."""
from .apa import APA, apa_accepts_lasso, apa_intersect, apa_union, dualize
from .build import build_apa, build_prompt_apa
from .hoa import HoaError, export_hoa, parse_hoa
from .nba import NBA, explicit_nba, nba_accepts_lasso, nba_is_empty, remove_alternation

__all__ = [
    "APA", "NBA", "HoaError", "apa_accepts_lasso", "apa_intersect", "apa_union",
    "build_apa", "build_prompt_apa", "dualize", "explicit_nba", "export_hoa",
    "nba_accepts_lasso", "nba_is_empty", "parse_hoa", "remove_alternation",
]
