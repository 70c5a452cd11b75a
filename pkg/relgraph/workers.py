"""Fan independent cells out over worker threads."""
import asyncio
import logging
from typing import Callable, List, Optional, Sequence, TypeVar

from .config import setting

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


async def _gather(fn: Callable[[T], R], cells: Sequence[T], threads: int) -> List[R]:
    gate = asyncio.Semaphore(threads)

    async def one(cell: T) -> R:
        async with gate:
            return await asyncio.to_thread(fn, cell)

    return list(await asyncio.gather(*(one(c) for c in cells)))


def run_cells(fn: Callable[[T], R], cells: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """Apply ``fn`` to every cell; results come back in input order."""
    threads = int(setting("workers", "threads", 1) if threads is None else threads)
    cells = list(cells)
    if threads <= 1 or len(cells) <= 1:
        return [fn(c) for c in cells]
    logger.debug("running %d cells on %d threads", len(cells), threads)
    return asyncio.run(_gather(fn, cells, threads))
