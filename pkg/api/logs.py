from api.settings import read_config
import logging
import sys

_LOGGER_NAME = "clasp"


def logger():
    """A Wrapper for logging to write to console, a log file, or both

    Defaults
    --------
    read_config() : ConfigParser
        configuration file clasp.ini
    log_file : str
        filename for logs in configuration file, empty disables the file handler
    log_to_console : str
        "True" adds a stderr handler, "False" keeps the console quiet
    log_level : str
        name of a logging level, DEBUG .. CRITICAL

    Returns
    -------
    Instance : logging.Logger
        the "clasp" logger, configured once per process
        If config["log"]["log_to_console"] not in ("True", "False")
            exits with message to set True or False in configuration
    Log format : %(asctime)s %(levelname)s %(message)s
    Log encoding : utf-8
    """
    log = logging.getLogger(_LOGGER_NAME)
    if getattr(log, "_clasp_configured", False):
        return log

    config = read_config()
    console_output = config["log"]["log_to_console"]
    log_file = config["log"].get("log_file", "").strip()
    level = getattr(logging, config["log"].get("log_level", "WARNING").upper(), logging.WARNING)
    log_format = '%(asctime)s %(levelname)s %(message)s'

    if console_output not in ("False", "True"):
        return sys.exit("Incorrect value for log_to_console toggle, set False or True")

    log.handlers = []
    log.setLevel(level)
    log.propagate = False
    formatter = logging.Formatter(log_format)
    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(formatter)
        log.addHandler(file_handler)
    if console_output == "True":
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        log.addHandler(console_handler)
    if not log.handlers:
        log.addHandler(logging.NullHandler())
    log._clasp_configured = True
    return log
