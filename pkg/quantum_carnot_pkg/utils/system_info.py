"""
Host information attached to verification reports.

Floating-point results can differ in the last bits between CPUs and BLAS
builds, so a verification report records where it ran.
"""

import datetime
import logging
import platform
from typing import Any, Dict

import numpy as np
import psutil
import scipy

try:
    import cpuinfo
    CPUINFO_AVAILABLE = True
except ImportError:
    CPUINFO_AVAILABLE = False


def library_versions() -> Dict[str, str]:
    return {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "psutil": psutil.__version__,
    }


def _cpu_details() -> Dict[str, Any]:
    """Brand, clock and word size from py-cpuinfo, or the platform fallback."""
    fallback = {"brand": platform.processor() or "Unknown"}
    if not CPUINFO_AVAILABLE:
        return fallback
    try:
        info = cpuinfo.get_cpu_info()
    except Exception:
        return fallback
    return {
        "brand": info.get("brand_raw", "Unknown"),
        "hz": info.get("hz_advertised_friendly", "Unknown"),
        "bits": info.get("bits", 64),
        "flags_fma": "fma" in info.get("flags", []),
    }


def get_cpu_info() -> Dict[str, Any]:
    return {
        "count": psutil.cpu_count(logical=True),
        "physical_count": psutil.cpu_count(logical=False) or 1,
        **_cpu_details(),
    }


def get_system_info() -> Dict[str, Any]:
    """
    Describe the machine and numerical stack a verification ran on.

    Returns:
        Dictionary with timestamp, platform, CPU, memory and library versions,
        or {"error": ...} if the host could not be inspected
    """
    try:
        versions = library_versions()
        return {
            "timestamp": datetime.datetime.now().isoformat(),
            "platform": platform.system(),
            "platform_version": platform.version(),
            "architecture": platform.machine(),
            "python_version": versions["python"],
            "numpy_version": versions["numpy"],
            "scipy_version": versions["scipy"],
            "libraries": versions,
            "cpu_info": get_cpu_info(),
            "memory_total_gb": psutil.virtual_memory().total / (1024 ** 3),
        }
    except Exception as e:
        logging.getLogger(__name__).error(f"Error getting system info: {e}")
        return {"error": str(e)}
