from configparser import ConfigParser
from functools import lru_cache
import os

_REPO_INI = os.path.abspath(
    os.path.join(os.path.dirname(__file__), os.pardir, "clasp.ini"))


@lru_cache(maxsize=None)
def read_config(path=None):
    """Reads the clasp configuration file

    Lookup order
    ------------
    path : str
        explicit argument
    CLASP_CONFIG : env
        environment override
    clasp.ini : file
        next to the repository root, then the working directory

    Returns
    -------
    ConfigParser instance, cached per path
    """
    candidates = [path, os.environ.get("CLASP_CONFIG"), _REPO_INI, "clasp.ini"]
    config = ConfigParser()
    for candidate in candidates:
        if candidate and os.path.exists(candidate):
            config.read(candidate, encoding="utf-8")
            return config
    raise FileNotFoundError("clasp.ini not found; set CLASP_CONFIG")


def section(name):
    """Dictionary of one configuration section"""
    return dict(read_config()[name])


def worker_count(jobs):
    """Thread pool size: CLASP_THREADS, else [grid] default_workers, never above jobs"""
    cap = os.environ.get("CLASP_THREADS") or read_config()["grid"]["default_workers"]
    cap = int(cap)
    if cap < 1:
        raise ValueError("CLASP_THREADS must be a positive integer, got {}".format(cap))
    return max(1, min(cap, jobs))


def message(section_name, key, *args):
    """Formats a ``msg_*`` template, stripping the INI quoting"""
    template = read_config()[section_name][key].strip('"')
    return template.format(*args)
