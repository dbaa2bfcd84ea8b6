import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Sequence[T], jobs: int) -> List[R]:
    """
    Order-preserving map over contiguous chunks of `items`

    Output is identical for every job count; jobs <= 1 runs inline.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    size = math.ceil(len(items) / jobs)
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = pool.map(lambda chunk: [fn(x) for x in chunk], chunks)
        return [r for chunk in results for r in chunk]
