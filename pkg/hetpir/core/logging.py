"""hetpir Logging Module

All logging functionality for hetpir is controlled from
``hetpir.core.logging``. A logger object ``logging.getLogger("hetpir")`` is
created internally.

The primary means of configuration is via environment variables, the
same way that the standard Python root logger is. See the
:mod:`logging` page for details.

Set ``HETPIR_LOG_LEVEL`` to any of ``DEBUG``, ``INFO``, ``WARNING``,
``ERROR`` or ``CRITICAL`` (from most verbose to least verbose).

Additionally the level of console (`stderr`) logging and logfile based
logging can be controlled separately. Console logging verbosity is set
using ``HETPIR_CONSOLE_LOG_LEVEL``. Logfile logging verbosity is set using
``HETPIR_FILE_LOG_LEVEL``.

By default a script that imports hetpir will log to the console and to a
temporary file inside the ``results`` directory. The directory can be changed
with ``HETPIR_LOG_DIR`` and the logfile switched off entirely by setting
``HETPIR_LOGFILE=0``.
"""

import logging
import sys
import os
import shutil

from datetime import datetime
from logging import NOTSET, DEBUG, INFO, WARNING, ERROR, CRITICAL  # noqa: F401
from pathlib import Path

__all__ = [
    "logger", "set_log_handler", "update_logfile_location", "LoggingError",
    "NOTSET", "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"
]


class LoggingError(Exception):
    pass


logging.captureWarnings(True)
logger = logging.getLogger("hetpir")


def capture_exceptions(exception_type, exception_value, traceback, logger=logger):
    """ This function allows all unhandled exceptions to be logged to
    hetpir's logs
    """
    logger.error(
        "hetpir is logging this unhandled exception:",
        exc_info=(exception_type, exception_value, traceback)
    )


sys.excepthook = capture_exceptions

# Set the log level based on environment variables
log_level = os.environ.get("HETPIR_LOG_LEVEL", WARNING)
logfile_level = os.environ.get("HETPIR_FILE_LOG_LEVEL", DEBUG)
logconsole_level = os.environ.get("HETPIR_CONSOLE_LOG_LEVEL", INFO)
log_level_list = [log_level, logfile_level, logconsole_level]
log_levels = [
    logging.getLevelName(x) if isinstance(x, str)
    else x
    for x in log_level_list
]
logger.setLevel(min(log_levels))

log_dir = os.environ.get("HETPIR_LOG_DIR", "results")
logfile_enabled = os.environ.get("HETPIR_LOGFILE", "1").strip().lower() not in ["0", "false", "no", "off"]


def create_logfile_handler(path, mode="w"):
    """ Handler for logfiles.

    Args:
        path: path to log file

    """
    logfile = logging.FileHandler(filename=path, mode=mode)
    logfile.setLevel(logfile_level)
    logfile_formatter = logging.Formatter(
        '%(asctime)s %(levelname)-8s %(name)s %(message)s'
    )
    logfile.setFormatter(logfile_formatter)
    return logfile


def create_console_handler(fmt):
    """ Handler for console logging.

    Args:
        fmt: format string for log output
    """
    console = logging.StreamHandler()
    console.setLevel(logconsole_level)
    console_formatter = logging.Formatter(fmt)
    console.setFormatter(console_formatter)
    return console


def set_log_handler():
    """ Set all handlers for logging.

    Calling this more than once is harmless: handlers that already exist are
    left in place.
    """
    existing = {h.name for h in logger.handlers}

    if logfile_enabled and "hetpir-temp-file-log" not in existing \
            and "hetpir-file-log" not in existing:
        timestamp = datetime.now()
        # PID is required here for running pytest with xdist
        logfile_name = f"temp-hetpir-{timestamp.strftime('%Y-%m-%dT%H%M%S')}_{os.getpid()}.log"
        os.makedirs(log_dir, exist_ok=True)
        lfh = create_logfile_handler(os.path.join(log_dir, logfile_name))
        lfh.name = "hetpir-temp-file-log"
        logger.addHandler(lfh)

    if "hetpir-console-log" not in existing:
        ch = create_console_handler('%(levelname)-8s %(message)s')
        ch.name = "hetpir-console-log"
        logger.addHandler(ch)

    logger.debug("Running %s" % " ".join(sys.argv))


def update_logfile_location(new_path):
    """ Update the location of the logfile.

    This is used to move the temporary log file created in the results
    directory to the output directory of a command.

    Args:
        new_path (str or :class:`Path`): the directory to move the log into.
    """
    new_path = Path(new_path)
    fh = [*filter(lambda x: x.name == "hetpir-temp-file-log", logger.handlers)]

    if len(fh) == 1:
        fh = fh[0]
        logger.debug("Closing temporary logger and moving logfile")
        old_path = Path(fh.baseFilename)
        filename = Path(old_path.name.removeprefix("temp-"))
        fh.flush()
        fh.close()
        logger.removeHandler(fh)

        os.makedirs(new_path, exist_ok=True)
        # Use shutil.move and not os.rename as new path may be on a
        # different file system
        shutil.move(old_path, new_path/filename)

        new_fh = create_logfile_handler(new_path/filename, mode="a")
        new_fh.name = "hetpir-file-log"
        logger.addHandler(new_fh)
        logger.debug("Re-opening logger")
    elif len(fh) > 1:
        raise LoggingError(
            "More than one log handler with name `hetpir-temp-file-log`\n"
            "Logging has been set up incorrectly"
        )
