"""Static curvature figures."""

import logging
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd
import plotly.graph_objects as go

from mappings.base import GridSpec

logger = logging.getLogger(__name__)


def ratio_heatmap(frame: pd.DataFrame, grid: GridSpec, title: str = "") -> go.Figure:
    """Heatmap of |K| (Im z)^2 over the parameter grid, maximum marked."""
    n_im, n_re = grid.shape
    ratio = frame["ratio"].to_numpy(dtype=float).reshape(n_im, n_re)
    xs = np.linspace(grid.re_min, grid.re_max, grid.n_re)
    ys = np.linspace(grid.im_min, grid.im_max, grid.n_im)

    fig = go.Figure(
        go.Heatmap(
            x=xs,
            y=ys,
            z=ratio,
            colorscale="Viridis",
            colorbar=dict(title="|K| (Im z)²"),
        )
    )
    if np.isfinite(ratio).any():
        row, col = np.unravel_index(np.nanargmax(ratio), ratio.shape)
        fig.add_trace(
            go.Scatter(
                x=[xs[col]],
                y=[ys[row]],
                mode="markers+text",
                marker=dict(symbol="x", size=12, color="red"),
                text=[f"max {ratio[row, col]:.6f}"],
                textposition="top center",
                showlegend=False,
            )
        )
    fig.update_layout(
        title=title or "Curvature against the sharp bound",
        xaxis_title="Re z",
        yaxis_title="Im z",
        template="plotly_white",
    )
    return fig


def write_svg(fig: go.Figure, path: Union[str, Path]) -> None:
    try:
        fig.write_image(str(path), format="svg")
    except Exception as e:
        raise RuntimeError(f"Failed to render {path}: {e}") from e
    logger.info("Wrote %s", path)
