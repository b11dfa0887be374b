import json
import os
import tempfile
import unittest

from api.model import load
from utils.scribe_cli import cli_whisper as scribe

TEST_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "test_clasp.ini")
DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


class CliVerbs(unittest.TestCase):
    """TestCase Class
    Runs clasp.py in a subprocess and checks standard output and exit codes
    """

    @classmethod
    def setUpClass(self):
        self.eval_run = scribe(["eval", "--model", "clasp2", "--omega", "1/4,1/4"], TEST_CONFIG)

    def test_eval(self):
        code, out, _ = self.eval_run
        self.assertEqual(code, 0)
        self.assertEqual(out, "sigma=0 eta=1 exact=true\n")

    def test_deterministic_output(self):
        self.assertEqual(scribe(["eval", "--model", "clasp2", "--omega", "1/4,1/4"], TEST_CONFIG), self.eval_run)

    def test_delta_prints_caveat(self):
        code, out, _ = scribe(["delta", "--model", "threecolor"], TEST_CONFIG)
        lines = out.splitlines()
        self.assertEqual(code, 0)
        self.assertEqual(lines[0], "t1*t2*t3 - 1")
        self.assertTrue(lines[1].startswith("note:"))

    def test_potential(self):
        code, out, _ = scribe(["potential", "--model", "hopf2"], TEST_CONFIG)
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), ["numerator: 1", "denominator: 1"])

    def test_grid(self):
        code, out, _ = scribe(["grid", "--model", "trefoil", "--q", "6"], TEST_CONFIG)
        lines = out.splitlines()
        self.assertEqual(code, 0)
        self.assertEqual(len(lines), 6)
        self.assertIn("1,6,-1,1,1,1", lines)

    def test_obstruct(self):
        code, out, _ = scribe(["obstruct", "--model", "fox", "--max-q", "2"], TEST_CONFIG)
        self.assertEqual(code, 0)
        self.assertEqual(len(json.loads(out)), 2)

    def test_casson_gordon(self):
        code, out, _ = scribe(["casson-gordon", "--linking", "[[2]]", "--q", "2", "--n", "1", "--sigma", "0"],
                              TEST_CONFIG)
        self.assertEqual(code, 0)
        self.assertEqual(out, "sigma=0\n")

    def test_diagonal(self):
        code, out, _ = scribe(["diagonal", "--model", "hopf2", "--omega", "1/2"], TEST_CONFIG)
        self.assertEqual(code, 0)
        self.assertEqual(out, "sigma=-1 eta=0\n")


class CliErrors(unittest.TestCase):
    """TestCase Class
    Domain errors exit 1, usage errors exit 2
    """

    def test_excluded_point(self):
        code, out, err = scribe(["eval", "--model", "trefoil", "--omega", "1/1"], TEST_CONFIG)
        self.assertEqual(code, 1)
        self.assertEqual(out, "")
        self.assertIn("error:", err)

    def test_unknown_verb(self):
        code, _, _ = scribe(["frobnicate"], TEST_CONFIG)
        self.assertEqual(code, 2)

    def test_invalid_model(self):
        path = os.path.join(DATA_DIR, "broken_transpose.json")
        code, out, err = scribe(["eval", "--model", path, "--omega", "1/2"], TEST_CONFIG)
        self.assertEqual(code, 1)
        self.assertIn("error:", err)


class CliExamples(unittest.TestCase):
    """TestCase Class
    Bundled model listing and emission
    """

    def test_list(self):
        code, out, _ = scribe(["examples", "list"], TEST_CONFIG)
        self.assertEqual(code, 0)
        self.assertTrue(any(line.startswith("fox: ") for line in out.splitlines()))

    def test_emit(self):
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "trefoil.json")
            code, out, _ = scribe(["examples", "emit", "trefoil", "--out", path], TEST_CONFIG)
            self.assertEqual(code, 0)
            self.assertEqual(out.strip(), path)
            self.assertEqual(load(path).seifert.matrix("+"), ((-1, 0), (1, -1)))


class CliVerify(unittest.TestCase):
    """TestCase Class
    Property suites through the verify verb
    """

    def test_broken_model_fails(self):
        path = os.path.join(DATA_DIR, "broken_transpose.json")
        code, out, _ = scribe(["verify", "--model", path], TEST_CONFIG)
        self.assertEqual(code, 1)
        self.assertTrue(out.splitlines()[0].startswith("FAIL validate[broken_transpose]"))

    def test_trefoil_closed_form(self):
        _, out, _ = scribe(["verify", "--model", "trefoil", "--q", "24"], TEST_CONFIG)
        self.assertIn("PASS closed-form[trefoil]", out.splitlines())


if __name__ == '__main__':
    unittest.main()
