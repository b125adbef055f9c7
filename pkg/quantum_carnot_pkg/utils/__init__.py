"""
Utility modules: logging setup, settings and host information.
"""
