"""
Parallel evaluation helpers.
"""
