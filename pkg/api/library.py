"""Bundled example models

Each model ships as ``api/library/<name>.json``. PROVENANCE records where the data
comes from and which metadata values are inferred rather than read off a printed
source.
"""
import os
import shutil

from api.errors import DomainError
from api.logs import logger as logger_wrapper
from api.model import ColoredLinkModel, load
from api.settings import message

LIBRARY_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "library")

PROVENANCE = {
    "unknot": "1-colored unknot, empty Seifert family (disc)",
    "hopf1": "1-colored Hopf link, V = (-1) from an annulus; sigma = -1 everywhere",
    "hopf2": "2-colored Hopf link, contractible C-complex (two discs, one clasp)",
    "trefoil": "right-handed trefoil, V = [[-1, 1], [0, -1]]",
    "clasp2": "2-colored link with A^eps = (-1) for eps_1 = eps_2, (0) otherwise; "
              "clasp_count 2 inferred from the clasp parity constraint",
    "threecolor": "3-colored link with A^{+++} = A^{---} = (1), rest (0); "
                  "pairwise linking numbers -1 inferred",
    "fox": "3-colored link with A^eps = (-1) iff eps = +-+ or -+-; total linking -1 "
           "inferred, pairwise values (lk12, lk13, lk23) = (-1, 1, -1) chosen to match",
}


def names():
    """Bundled model names in display order"""
    return list(PROVENANCE)


def bundled_path(name):
    if name not in PROVENANCE:
        raise DomainError("no bundled model named '{}' (known: {})".format(name, ", ".join(names())))
    return os.path.join(LIBRARY_DIR, "{}.json".format(name))


def load_bundled(name) -> ColoredLinkModel:
    return load(bundled_path(name))


def load_all():
    return [load_bundled(name) for name in names()]


def emit(name, path):
    """Copies a bundled model file to path"""
    shutil.copyfile(bundled_path(name), path)
    logger_wrapper().info(message("cli", "msg_examples_emitted", name, path))
    return path
