"""Parameter bundles behind the published figure set.

Domain maps (figures 2, 4, 6, 8) are scans of one case each.  The indicator
panels (3, 5, 7, 9) show one row per labelled domain; the exact points used
originally were never printed, so each row uses a representative (V, F) taken
from inside the labelled region.  Figure 10 is the exponent against F at V=0.5.
"""
from __future__ import annotations

DOMAIN_FIGURES = {"2": "A", "4": "B", "6": "C", "8": "D"}

# figure -> (case, [(row label, V, F), ...])
PANEL_FIGURES = {
    "3": ("A", [("A1", 0.5, 0.0), ("B1", 0.5, 0.35), ("C1", 0.5, 0.7), ("D1", 0.5, 0.9)]),
    "5": ("B", [("A2", 0.2, 0.1), ("B2", 0.4, 0.35), ("C2", 0.6, 0.7), ("D2", 0.8, 0.9)]),
    "7": ("C", [("A3", 0.25, 0.05), ("B3", 0.25, 0.3), ("C3", 0.75, 0.1),
                ("D3", 0.75, 0.35), ("E3", 0.5, 0.8)]),
    "9": ("D", [("A4", 0.05, 0.0), ("B4", 0.5, 0.15), ("C4", 0.5, 0.4), ("D4", 0.5, 0.9)]),
}

CURVE_FIGURE = "10"
CURVE_V = 0.5

ALL_FIGURES = tuple(sorted([*DOMAIN_FIGURES, *PANEL_FIGURES, CURVE_FIGURE], key=int))
