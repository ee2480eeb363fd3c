from contextvars import ContextVar
import os

budget = ContextVar("budget", default=int(os.getenv("MIXWITT_SEARCH_BUDGET", 10_000)))
