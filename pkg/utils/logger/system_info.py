"""
System and numerical-library information for the session log.
"""

import logging
import platform

import psutil


def get_cpu_model() -> str:
    """
    Get a readable CPU model name.

    Returns:
        str: CPU model, or the raw processor string if nothing better is found
    """
    try:
        if platform.system() == "Linux":
            with open('/proc/cpuinfo', 'r') as f:
                for line in f:
                    if line.startswith('model name'):
                        return line.split(':', 1)[1].strip()
        raw_info = platform.processor()
        if raw_info:
            return raw_info
    except Exception:
        pass
    return "Unknown CPU"


def _library_version(module_name: str) -> str:
    try:
        module = __import__(module_name)
        return getattr(module, "__version__", "Unknown version")
    except ImportError:
        return "Not installed"


def collect_system_info() -> dict:
    """
    Collect hardware and library information relevant to dense linear algebra runs.

    Returns:
        A dictionary containing system information
    """
    mem = psutil.virtual_memory()
    system_info = {
        "platform": platform.platform(),
        "python_version": platform.python_version(),
        "processor": get_cpu_model(),
        "cpu_count_physical": psutil.cpu_count(logical=False),
        "cpu_count_logical": psutil.cpu_count(logical=True),
        "total_memory_gb": round(mem.total / (1024 ** 3), 2),
        "available_memory_gb": round(mem.available / (1024 ** 3), 2),
    }
    for name in ("numpy", "scipy", "numba", "pandas"):
        system_info[f"{name}_version"] = _library_version(name)

    try:
        import numba
        system_info["numba_threads"] = numba.get_num_threads()
    except ImportError:
        system_info["numba_threads"] = "Unknown (numba not installed)"

    return system_info


def write_system_info_section(log_file: str, system_info: dict) -> None:
    """
    Append a system information block to the log file.

    Args:
        log_file: Path to the log file
        system_info: Dictionary from collect_system_info
    """
    try:
        with open(log_file, 'a') as f:
            f.write("\n" + "=" * 80 + "\n")
            f.write("SYSTEM INFORMATION\n")
            f.write("=" * 80 + "\n")
            for key, value in system_info.items():
                f.write(f"{key.replace('_', ' ').title()}: {value}\n")
            f.write("=" * 80 + "\n\n")
    except Exception as e:
        logging.getLogger("system_info").error(f"Failed to write system information section: {e}")


def log_system_info(logger: logging.Logger) -> None:
    """
    Write system information into the logger's file handler, if it has one.

    Args:
        logger: The session logger
    """
    try:
        system_info = collect_system_info()
        for handler in logger.handlers:
            if isinstance(handler, logging.FileHandler):
                write_system_info_section(handler.baseFilename, system_info)
                break
        available_gb = system_info["available_memory_gb"]
        logger.debug(f"Available memory: {available_gb} GB, numba threads: {system_info['numba_threads']}")
    except Exception as e:
        logger.error(f"Failed to collect system information: {e}")
