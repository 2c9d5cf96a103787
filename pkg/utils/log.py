"""
Logging setup for the command-line entry point.
"""
import logging
import sys

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


def configure_logging(verbosity: int = 0, quiet: bool = False) -> None:
    """
    Install a stderr handler on the root logger.

    Args:
        verbosity: 0 = WARNING, 1 = INFO, 2+ = DEBUG
        quiet: Only errors are shown
    """
    if quiet:
        level = logging.ERROR
    elif verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING

    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_nondisturb", False):
            root.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._nondisturb = True
    root.addHandler(handler)
    root.setLevel(level)

    # solver backends are chatty at DEBUG
    logging.getLogger("cvxpy").setLevel(max(level, logging.WARNING))
