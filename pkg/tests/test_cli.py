import io
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest import mock

import config
import main


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main.run(list(argv))
    return code, out.getvalue().splitlines(), err.getvalue()


class TestCli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        patcher = mock.patch.object(config, "DB_FILE", os.path.join(self.tmp.name, "runs.db"))
        patcher.start()
        self.addCleanup(patcher.stop)
        self.addCleanup(self.tmp.cleanup)

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def test_classify(self):
        code, lines, _ = invoke("--no-record", "classify", "--sig", "1,1,1,1,1,1")
        self.assertEqual(code, main.EXIT_OK)
        self.assertIn("; case ", lines[0])

    def test_bad_signature_is_validation_error(self):
        code, _, err = invoke("--no-record", "classify", "--sig", "1,2")
        self.assertEqual(code, main.EXIT_VALIDATION)
        self.assertIn("error:", err)

    def test_usage_error(self):
        with redirect_stderr(io.StringIO()), self.assertRaises(SystemExit) as ctx:
            main.run(["classify"])
        self.assertEqual(ctx.exception.code, main.EXIT_USAGE)

    def test_tutte_check(self):
        code, lines, _ = invoke("--no-record", "eval", "--tutte", "--graph", "cycle:3")
        self.assertEqual(code, main.EXIT_OK)
        self.assertIn("match=yes", lines)

    def test_gen_then_eval(self):
        out = self.path("cycle.sixv")
        code, _, _ = invoke("--no-record", "gen", "--kind", "cycle", "--n", "3", "--sig", "1,2,0,1,2,0",
                            "--out", out)
        self.assertEqual(code, main.EXIT_OK)
        code, lines, _ = invoke("--no-record", "eval", "--instance", out, "--verify")
        self.assertEqual(code, main.EXIT_OK)
        self.assertIn("method=loopspace", lines)
        self.assertIn("verified=yes", lines)

    def test_missing_instance_file(self):
        code, _, err = invoke("--no-record", "eval", "--instance", self.path("missing.sixv"))
        self.assertEqual(code, main.EXIT_VALIDATION)
        self.assertIn("not found", err)

    def test_compile_plcsp(self):
        code, lines, _ = invoke("--no-record", "compile", "--from", "plcsp", "--vars", "2",
                                "--constraint", "0,1:1,2,3,4")
        self.assertEqual(code, main.EXIT_OK)
        self.assertIn("match=yes", lines)

    def test_square_harness(self):
        code, lines, _ = invoke("--no-record", "harness", "square")
        self.assertEqual(code, main.EXIT_OK)
        self.assertTrue(lines[0].startswith("b=2 outer=17 inner=16"))

    def test_mobius(self):
        code, lines, _ = invoke("--no-record", "mobius", "--coeffs", "0,1,-1,1", "--t0", "2", "--count", "10")
        self.assertEqual(code, main.EXIT_OK)
        self.assertIn("order=3", lines)
        self.assertIn("period=3", lines)

    def test_sweep_csv(self):
        out = self.path("sweep.csv")
        code, _, _ = invoke("--no-record", "sweep", "--p", "0:1", "--q", "0:1", "--out", out)
        self.assertEqual(code, main.EXIT_OK)
        with open(out) as handle:
            rows = handle.read().splitlines()
        self.assertEqual(rows[0], "p,q,planar_class,general_class,case,witnesses")
        self.assertEqual(len(rows), 5)

    def test_history_records_runs(self):
        invoke("classify", "--sig", "1,1,1,1,1,1")
        code, lines, _ = invoke("history")
        self.assertEqual(code, main.EXIT_OK)
        self.assertTrue(any("classify" in line for line in lines))


if __name__ == "__main__":
    unittest.main()
