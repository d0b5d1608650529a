"""Hessian graphs of plane cubics over finite fields."""

__version__ = "0.1.0"
