"""Exact-arithmetic engine for cubic Dirac operators on category-O weight windows."""

__version__ = "0.1.0"
