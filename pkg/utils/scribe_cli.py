import os
import subprocess
import sys

REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir))


def cli_whisper(args, config=None):
    """Runs clasp.py in a subprocess

    Args
    ----
    args : list of str
        verb and flags
    config : str
        clasp.ini to use, passed through CLASP_CONFIG

    Returns
    -------
    tuple : (exit code, stdout, stderr)
    """
    env = dict(os.environ)
    if config:
        env["CLASP_CONFIG"] = config
    execute_command = subprocess.run(
        [sys.executable, os.path.join(REPO_ROOT, "clasp.py")] + list(args),
        cwd=REPO_ROOT,
        env=env,
        text=True,
        stdin=subprocess.DEVNULL,
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        encoding="utf-8")
    return execute_command.returncode, execute_command.stdout, execute_command.stderr
