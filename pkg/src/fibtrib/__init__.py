"""Certified replay of the Fibonacci-minus-Tribonacci representation theorem."""

__version__ = "0.1.0"
