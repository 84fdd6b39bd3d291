"""Batch rendering of benchmark trace CSVs into publication-style figures."""

from .render import (FIGURE_SPECS, SchemaError, build_figures, load_params,
                     parse_trace, render, series_from_trace)

__all__ = ["FIGURE_SPECS", "SchemaError", "build_figures", "load_params",
           "parse_trace", "render", "series_from_trace"]
