from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, Optional, Sequence, TypeVar

from rich.console import Console
from rich.progress import Progress

from ..settings import resolve_num_threads

console = Console()

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    fn: Callable[[T], R],
    items: Sequence[T],
    description: str = "Evaluating grid...",
    max_workers: Optional[int] = None,
    show_progress: bool = True,
) -> list[R]:
    """Evaluate fn over items in a thread pool; results keep the input order.

    The first failure is re-raised after the remaining futures finish.
    """
    workers = max_workers or resolve_num_threads()
    results: list[Optional[R]] = [None] * len(items)
    failure: Optional[BaseException] = None

    with Progress(disable=not show_progress, console=console) as progress:
        task = progress.add_task(f"[green]{description}", total=len(items))
        with ThreadPoolExecutor(max_workers=workers) as executor:
            future_to_index = {executor.submit(fn, item): i for i, item in enumerate(items)}
            for future in as_completed(future_to_index):
                index = future_to_index[future]
                try:
                    results[index] = future.result()
                except Exception as e:
                    console.print(f"  [red]✗[/red] grid point {index} failed: {e}")
                    if failure is None:
                        failure = e
                progress.advance(task)

    if failure is not None:
        raise failure
    return results  # type: ignore[return-value]
