import asyncio
import time
from functools import wraps

from app.pipeline.state import SolveState
from app.utils.logging import logger


def _record(log_label: str, duration: float, args: tuple) -> None:
    state = next((a for a in args if isinstance(a, SolveState)), None)
    if state:
        msg = f"{log_label} for {state.problem.case.value} problem execution time: {duration:.2f} seconds"
        state.timings[log_label] = round(duration, 6)
        state.event_log.append(msg)
    else:
        msg = f"{log_label} execution time: {duration:.2f} seconds"
    logger.debug({'message': msg})


def timed(log_label: str):
    def decorator(func):
        if asyncio.iscoroutinefunction(func):
            @wraps(func)
            async def async_wrapper(*args, **kwargs):
                start = time.time()
                try:
                    return await func(*args, **kwargs)
                finally:
                    _record(log_label, time.time() - start, args)
            return async_wrapper
        else:
            @wraps(func)
            def wrapper(*args, **kwargs):
                start = time.time()
                try:
                    return func(*args, **kwargs)
                finally:
                    _record(log_label, time.time() - start, args)
            return wrapper
    return decorator
