#!/usr/bin/env python3
"""Large-N Ginibre moment grid as CSV.

One row per ``(k, h)`` with ``k = 1..max_k`` and ``h = 0..k``: the exact
polynomial in ``t = |chi|^2`` together with its prefactor exponents.

Usage:

    python scripts/build_moment_grid.py --max-k 4 --out grid.csv
    python scripts/build_moment_grid.py --max-k 3 --threads 4     # to stdout

Cells are independent; with ``--threads > 1`` they run on worker threads and
are written back in grid order, so the output bytes do not depend on the
thread count.
"""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from pathlib import Path

from charderiv.core.errors import CharDerivError
from charderiv.emit import MOMENT_FIELDS, emit_csv, moment_rows
from charderiv.rmt import GinibreMomentResult, ginibre_moment_first

logger = logging.getLogger(__name__)


def grid_cells(max_k: int) -> list[tuple[int, int]]:
    return [(k, h) for k in range(1, max_k + 1) for h in range(k + 1)]


async def build_grid(max_k: int, threads: int = 1) -> list[GinibreMomentResult]:
    semaphore = asyncio.Semaphore(max(threads, 1))

    async def cell(k: int, h: int) -> GinibreMomentResult:
        async with semaphore:
            result = await asyncio.to_thread(ginibre_moment_first, k, h)
        logger.debug("k=%d h=%d degree=%d", k, h, result.degree)
        return result

    return list(await asyncio.gather(*(cell(k, h) for k, h in grid_cells(max_k))))


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", default=None, help="CSV path (default: stdout)")
    args = ap.parse_args(argv)

    if args.max_k < 1:
        logger.error("--max-k must be >= 1, got %d", args.max_k)
        return 1
    try:
        results = asyncio.run(build_grid(args.max_k, args.threads))
    except CharDerivError as e:
        logger.error("%s", e)
        return 1

    data = emit_csv(moment_rows(results), MOMENT_FIELDS)
    if args.out:
        Path(args.out).write_bytes(data)
        logger.info("wrote %d rows to %s", len(results), args.out)
    else:
        sys.stdout.buffer.write(data)
    return 0


if __name__ == "__main__":
    sys.exit(main())
