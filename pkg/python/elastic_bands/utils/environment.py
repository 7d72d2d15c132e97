import os
import platform


def host_descriptor() -> str:
    """Free-form machine description recorded next to every timing."""
    cpu = platform.processor() or platform.machine() or "unknown-cpu"
    return (
        f"{platform.node() or 'unknown-host'}; {cpu}; cpus={os.cpu_count() or 1}; "
        f"{platform.system()} {platform.release()}; python {platform.python_version()}"
    )
