"""
Seed fan-out: run one job per seed on a bounded thread pool.

Each job owns its random generator, so results do not depend on how many
threads are used or in which order jobs finish.
"""

import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence, TypeVar

from ..telemetry.metrics import get_metrics_collector
from .base import FanoutResult, RunResult, RunStatus

logger = logging.getLogger("BaryOpt.Workflows.Fanout")

T = TypeVar("T")


class SeedFanout:
    """
    Runs `job(seed)` for every seed with at most `max_concurrency` in flight.

    Example:
        ```python
        fanout = SeedFanout("optimize", max_concurrency=4)
        result = fanout.run(lambda seed: run_one(config, seed), [0, 1, 2])
        ```
    """

    def __init__(self, name: str, max_concurrency: int = 1, fail_fast: bool = False):
        """
        Initialize a fan-out.

        Args:
            name: Batch name used in run names and logs
            max_concurrency: Maximum number of concurrent jobs (threads)
            fail_fast: Skip jobs not yet started once one fails
        """
        self.name = name
        self.max_concurrency = max(1, int(max_concurrency))
        self.fail_fast = fail_fast

    async def execute(self, job: Callable[[int], T], seeds: Sequence[int]) -> FanoutResult:
        """
        Execute the job for every seed.

        Returns:
            FanoutResult with one RunResult per seed, in seed order
        """
        semaphore = asyncio.Semaphore(self.max_concurrency)
        loop = asyncio.get_running_loop()
        failed = asyncio.Event()
        result = FanoutResult(name=self.name, metadata={"seeds": list(seeds),
                                                        "max_concurrency": self.max_concurrency})

        with ThreadPoolExecutor(max_workers=self.max_concurrency,
                                thread_name_prefix=f"baryopt-{self.name}") as executor:

            async def run_seed(seed: int) -> RunResult:
                run = RunResult(name=f"{self.name}.seed{seed}", seed=seed)
                async with semaphore:
                    if self.fail_fast and failed.is_set():
                        run.complete(error=RuntimeError("skipped after an earlier failure"))
                        return run
                    run.status = RunStatus.RUNNING
                    try:
                        output = await loop.run_in_executor(executor, job, seed)
                        run.complete(output=output)
                    except Exception as e:
                        logger.error(f"Run {run.name} failed: {e}")
                        get_metrics_collector().increment_counter("run.error.count", labels={"batch": self.name})
                        run.complete(error=e)
                        failed.set()
                return run

            result.runs = list(await asyncio.gather(*(run_seed(s) for s in seeds)))

        logger.info(f"{self.name}: {len(result.runs) - len(result.failed)}/{len(result.runs)} runs completed")
        return result

    def run(self, job: Callable[[int], T], seeds: Sequence[int]) -> FanoutResult:
        """Blocking wrapper around execute()."""
        return asyncio.run(self.execute(job, seeds))


def resolve_threads(requested: Optional[int], seeds: int) -> int:
    """Worker count: requested (>= 1) but never more than the number of seeds."""
    return max(1, min(int(requested or 1), max(seeds, 1)))
