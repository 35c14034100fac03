"""Zero-error capacity toolkit for binary channels with order-1 memory:
exact code search, explicit constructions, and analytic capacity solvers."""

__version__ = "0.1.0"
