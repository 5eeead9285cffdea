import logging
from typing import List, Sequence

import numpy as np

from expressions.base import Expr
from expressions.evaluation import evaluate_lenient
from integrators.base import BaseIntegrator, QuadratureConfig, QuadratureResult

logger = logging.getLogger(__name__)

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1] (QUADPACK qk15).
_XGK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WGK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod nodes.
GAUSS_INDEX = np.array([1, 3, 5, 7, 9, 11, 13])
GAUSS_WEIGHTS = np.concatenate([_WG[:-1], _WG[::-1]])


class GaussKronrodIntegrator(BaseIntegrator):
    """Adaptive bisection driven by the Gauss 7 / Kronrod 15 pair.

    All pending subintervals of all segments are evaluated together, one
    vectorized expression evaluation per refinement level. Each segment is
    refined independently, so results do not depend on what else is in the
    batch.
    """

    def integrate_segments(
        self,
        f: Expr,
        starts: Sequence[complex],
        ends: Sequence[complex],
        config: QuadratureConfig,
    ) -> List[QuadratureResult]:
        starts = np.asarray(starts, dtype=np.complex128).ravel()
        ends = np.asarray(ends, dtype=np.complex128).ravel()
        n = starts.size

        totals = np.zeros(n, dtype=np.complex128)
        errors = np.zeros(n)
        counts = np.zeros(n, dtype=np.int64)
        converged = np.ones(n, dtype=bool)
        failed = np.zeros(n, dtype=bool)

        segment = np.arange(n)
        lo = np.zeros(n)
        hi = np.ones(n)
        depth = np.zeros(n, dtype=np.int64)
        level = 0

        while segment.size:
            centre = 0.5 * (lo + hi)
            half = 0.5 * (hi - lo)
            delta = ends[segment] - starts[segment]
            params = centre[:, None] + half[:, None] * NODES[None, :]
            points = starts[segment][:, None] + params * delta[:, None]
            values = evaluate_lenient(f, points)

            bad = ~np.all(np.isfinite(values), axis=1)
            failed[segment[bad]] = True
            live = ~failed[segment]
            values = np.where(live[:, None], values, 0)

            scale = half * delta
            kronrod = (values @ KRONROD_WEIGHTS) * scale
            gauss = (values[:, GAUSS_INDEX] @ GAUSS_WEIGHTS) * scale
            error = np.abs(kronrod - gauss)

            width = hi - lo
            allowed = np.maximum(config.abs_tol * width, config.rel_tol * np.abs(kronrod))
            accept = live & (error <= allowed)

            pending = np.bincount(segment[live], minlength=n)
            over_budget = (counts + 2 * pending) > config.max_intervals
            exhausted = live & ~accept & ((depth >= config.max_depth) | over_budget[segment])
            done = accept | exhausted

            np.add.at(totals, segment[done], kronrod[done])
            np.add.at(errors, segment[done], error[done])
            np.add.at(counts, segment[done], 1)
            converged[segment[exhausted]] = False

            split = live & ~done
            middle = centre[split]
            segment = np.concatenate([segment[split], segment[split]])
            lo, hi = (
                np.concatenate([lo[split], middle]),
                np.concatenate([middle, hi[split]]),
            )
            depth = np.concatenate([depth[split] + 1, depth[split] + 1])
            level += 1
            logger.debug("Refinement level %d: %d pending subintervals", level, segment.size)

        results = []
        for k in range(n):
            if failed[k]:
                results.append(
                    QuadratureResult(
                        value=complex(np.nan, np.nan),
                        error=float("inf"),
                        converged=False,
                        intervals=int(counts[k]),
                        failure=(
                            f"'{f.render()}' could not be evaluated on "
                            f"[{complex(starts[k])}, {complex(ends[k])}]"
                        ),
                    )
                )
                continue
            results.append(
                QuadratureResult(
                    value=complex(totals[k]),
                    error=float(errors[k]),
                    converged=bool(converged[k]),
                    intervals=int(counts[k]),
                )
            )
        return results
