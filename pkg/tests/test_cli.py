import unittest
import os, sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import json

from click.testing import CliRunner

from app import cli, parse_csv_triangle, parse_json_triangle, render_csv, render_json
from Associated import associated_triangle
from Families import family

os.environ["UMBRAL_CONFIG"] = "Test"


class CLITestCase(unittest.TestCase):
    def setUp(self):
        self.runner = CliRunner(mix_stderr=False)

    def invoke(self, *args):
        return self.runner.invoke(cli, list(args))

    def assertErrorEnvelope(self, result):
        self.assertEqual(result.exit_code, 2)
        envelope = json.loads(result.stderr.strip().splitlines()[-1])
        self.assertEqual(envelope["status"], "error")
        self.assertEqual(envelope["code"], 2)
        return envelope


class TriangleCommandTestCase(CLITestCase):
    def test_monomial_second_kind(self):
        result = self.invoke("triangle", "--family", "monomial", "--kind", "s2", "--max-n", "4")
        self.assertEqual(result.exit_code, 0, result.stderr)
        lines = result.stdout.splitlines()
        self.assertEqual(lines[0], "n,k,value")
        self.assertIn("4,2,7", lines)
        self.assertEqual(len(lines), 1 + 15)

    def test_rising_first_kind(self):
        result = self.invoke("triangle", "--family", "rising", "--kind", "s1", "--max-n", "3")
        self.assertEqual(result.exit_code, 0, result.stderr)
        self.assertIn("3,2,-6", result.stdout.splitlines())

    def test_degenerate_parameter(self):
        result = self.invoke("triangle", "--family", "falling_deg", "--lambda", "1/2", "--max-n", "2")
        self.assertEqual(result.exit_code, 0, result.stderr)
        self.assertIn("2,1,1/2", result.stdout.splitlines())

    def test_classical_eulerian_json(self):
        result = self.invoke("triangle", "--classical", "eulerian", "--max-n", "4", "--format", "json")
        self.assertEqual(result.exit_code, 0, result.stderr)
        data = json.loads(result.stdout)
        self.assertEqual(data["meta"]["family"], "classical")
        self.assertEqual(data["meta"]["max_n"], 4)
        self.assertEqual(data["rows"][4], ["1", "11", "11", "1", "0"])

    def test_json_meta_carries_params(self):
        result = self.invoke("triangle", "--family", "poisson_charlier", "--a=-1/2", "--max-n", "2",
                             "--format", "json")
        self.assertEqual(result.exit_code, 0, result.stderr)
        meta = json.loads(result.stdout)["meta"]
        self.assertEqual(meta["family"], "poisson_charlier")
        self.assertEqual(meta["params"], {"a": "-1/2"})

    def test_ascii(self):
        result = self.invoke("triangle", "--classical", "s2", "--max-n", "3", "--format", "ascii")
        self.assertEqual(result.exit_code, 0, result.stderr)
        self.assertIn("k=3", result.stdout)
        self.assertIn("+", result.stdout)

    def test_unknown_family(self):
        envelope = self.assertErrorEnvelope(self.invoke("triangle", "--family", "catalan"))
        self.assertIn("catalan", envelope["message"])

    def test_missing_parameter(self):
        self.assertErrorEnvelope(self.invoke("triangle", "--family", "central_deg"))

    def test_negative_max_n(self):
        for kind in ("s1", "s2", "eulerian"):
            with self.subTest(kind=kind):
                result = self.invoke("triangle", "--family", "monomial", "--kind", kind, "--max-n", "-1")
                envelope = self.assertErrorEnvelope(result)
                self.assertIn("max_n", envelope["message"])
                self.assertEqual(result.stdout, "")

    def test_float_refused(self):
        result = self.invoke("triangle", "--family", "falling_deg", "--lambda", "0.5")
        self.assertEqual(result.exit_code, 2)


class VerifyCommandTestCase(CLITestCase):
    def test_eulerian_bernoulli(self):
        result = self.invoke("verify", "--suite", "eulerian", "--family", "bernoulli", "--max-n", "5")
        self.assertEqual(result.exit_code, 0, result.stderr)
        data = json.loads(result.stdout)
        self.assertTrue(data["passed"])
        [report] = data["reports"]
        self.assertEqual(report["family"], "bernoulli")
        statuses = {check["identity_id"]: check["status"] for check in report["checks"]}
        self.assertEqual(statuses["eulerian.frobenius_round_trip"], "skipped")

    def test_unknown_family(self):
        self.assertErrorEnvelope(self.invoke("verify", "--family", "catalan"))

    def test_nothing_to_run(self):
        envelope = self.assertErrorEnvelope(
            self.invoke("verify", "--suite", "orthogonality", "--family", "classical"))
        self.assertIn("nothing to run", envelope["message"])

    def test_parameters_need_one_family(self):
        self.assertErrorEnvelope(self.invoke("verify", "--family", "all", "--lambda", "1/2"))


class GfCommandTestCase(CLITestCase):
    def test_first_kind_column(self):
        result = self.invoke("gf", "--family", "monomial", "--kind", "s1", "--k", "1", "--order", "4")
        self.assertEqual(result.exit_code, 0, result.stderr)
        self.assertEqual(result.stdout.splitlines(), ["n,value", "0,0", "1,1", "2,-1", "3,2", "4,-6"])

    def test_eulerian_dump(self):
        result = self.invoke("gf", "--family", "monomial", "--kind", "eulerian", "--order", "3")
        self.assertEqual(result.exit_code, 0, result.stderr)
        lines = result.stdout.splitlines()
        self.assertEqual(lines[0], "n,k,value")
        self.assertIn("3,1,4", lines)

    def test_first_kind_needs_associated(self):
        self.assertErrorEnvelope(self.invoke("gf", "--family", "bernoulli", "--kind", "s1", "--k", "1"))

    def test_no_pair(self):
        self.assertErrorEnvelope(self.invoke("gf", "--family", "bernoulli_product", "--k", "1"))

    def test_negative_column(self):
        for kind in ("s1", "s2"):
            with self.subTest(kind=kind):
                envelope = self.assertErrorEnvelope(
                    self.invoke("gf", "--family", "bell", "--kind", kind, "--k=-1", "--order", "4"))
                self.assertIn("Column index", envelope["message"])


class RoundTripTestCase(unittest.TestCase):
    def test_csv_and_json(self):
        triangle = associated_triangle(family("gould_hopper", {"r": 2, "s": 3}), "first", 5)
        self.assertEqual(parse_csv_triangle(render_csv(triangle), triangle.name), triangle)
        parsed = parse_json_triangle(render_json(triangle, "gould_hopper", "s1"))
        self.assertEqual(parsed.rows, triangle.rows)
        self.assertEqual(parsed.param_dict(), triangle.param_dict())


if __name__ == "__main__":
    unittest.main()
