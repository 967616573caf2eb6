"""End-to-end checks of rescorr_cli: exit codes, JSON schema, worked examples.

usage: cli_test.py <path to rescorr_cli> <project dir>
"""

import json
import subprocess
import sys
import unittest
from pathlib import Path

import jsonschema

CLI = None
ROOT = None
SCHEMA = None


def run(*args):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, timeout=120)
    return proc.returncode, proc.stdout


def run_json(*args):
    code, out = run(*args, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def example(name):
    return str(ROOT / "data" / "examples" / name)


class Analyze(unittest.TestCase):
    def test_rank_two_example(self):
        code, doc = run_json("analyze", "--file", example("p32.poly"))
        self.assertEqual(code, 0)
        self.assertEqual(doc["rank"], 2)
        self.assertEqual(doc["verdict"], "IrreducibleRestrictive")
        self.assertIsNotNone(doc["separation"])
        self.assertEqual(doc["bidegree"], [3, 2])
        self.assertEqual(len(doc["decomposition"]), 2)

    def test_square_is_reducible(self):
        code, doc = run_json("analyze", "--file", example("p32_squared.poly"))
        self.assertEqual(code, 0)
        self.assertEqual(doc["rank"], 3)
        self.assertEqual(doc["verdict"], "ReducibleRestrictive")
        self.assertEqual(doc["power"], 2)
        self.assertIsNone(doc["separation"])

    def test_validation_failure(self):
        code, doc = run_json("analyze", "--expr", "z w + 1")
        self.assertEqual(code, 3)
        self.assertEqual(doc["error"]["kind"], "DegreeTooLow")
        code, doc = run_json("analyze", "--expr", "z w - z - w + 1")
        self.assertEqual(code, 3)
        self.assertIn("(P1)", doc["error"]["message"])

    def test_parse_and_usage_errors(self):
        code, doc = run_json("analyze", "--expr", "z + ")
        self.assertEqual(code, 2)
        self.assertIn("offset 4", doc["error"]["message"])
        self.assertEqual(run("analyze")[0], 2)
        self.assertEqual(run("analyze", "--file", "/nonexistent.poly")[0], 2)
        self.assertEqual(run("nosuchcommand")[0], 2)
        self.assertEqual(run()[0], 2)

    def test_human_readable_matrix(self):
        code, out = run("analyze", "--file", example("p32.poly"))
        self.assertEqual(code, 0)
        self.assertIn("w^2 w^1 w^0", out)
        self.assertIn("IrreducibleRestrictive", out)


class Star(unittest.TestCase):
    def test_zero_product(self):
        code, doc = run_json("star", "--p-file", example("star_zero_p.poly"), "--q-file", example("star_zero_q.poly"))
        self.assertEqual(code, 0)
        self.assertEqual(doc["product"], "0")
        self.assertEqual(doc["diagnostics"]["verdict"], "Degenerate")

    def test_split_product(self):
        code, doc = run_json("star", "--p-file", example("star_split_p.poly"), "--q-file", example("star_split_q.poly"))
        self.assertEqual(code, 0)
        self.assertEqual(doc["product"], "2i z^3 w^3 + z^3 + 2i z w^3 + z + 2i w^3 + 1")
        self.assertEqual(doc["diagnostics"]["verdict"], "Degenerate")

    def test_valid_product(self):
        code, doc = run_json(
            "star", "--p-file", example("star_valid_p.poly"), "--q-file", example("star_valid_q.poly"), "--check"
        )
        self.assertEqual(code, 0)
        _, expected = run_json("analyze", "--file", example("star_valid_product.poly"))
        self.assertEqual(doc["product"], expected["polynomial"])
        self.assertEqual(doc["product_rank"], 2)
        self.assertEqual(doc["diagnostics"]["verdict"], "Valid")
        self.assertTrue(doc["check"]["t_equals_star"])

    def test_scalar_s_is_degenerate(self):
        code, doc = run_json(
            "star", "--p-file", example("star_scalar_p.poly"), "--q-file", example("star_scalar_q.poly"), "--check"
        )
        self.assertEqual(code, 0)
        self.assertTrue(doc["diagnostics"]["beta_degenerate"])
        self.assertIsNotNone(doc["check"]["degenerate"])

    def test_degree_mismatch(self):
        code, doc = run_json("star", "--p-file", example("p32.poly"), "--q-file", example("p32.poly"))
        self.assertEqual(code, 4)
        self.assertEqual(doc["error"]["code"], 4)


class Verify(unittest.TestCase):
    def test_restrictive_example(self):
        code, doc = run_json("verify", "--file", example("p32.poly"), "--samples", "20", "--seed", "7")
        self.assertEqual(code, 0)
        self.assertEqual(doc["verdict"], "RestrictiveEvidence")
        self.assertEqual(doc["failures"], [])

    def test_product_refuted(self):
        code, doc = run_json("verify", "--file", example("product_54.poly"))
        self.assertEqual(code, 0)
        self.assertEqual(doc["verdict"], "Refuted")
        self.assertGreater(len(doc["failures"]), 0)

    def test_deterministic(self):
        args = ("verify", "--file", example("product_54.poly"), "--seed", "99", "--json")
        self.assertEqual(run(*args), run(*args))

    def test_errors(self):
        self.assertEqual(run("verify", "--file", example("p32.poly"), "--samples", "0")[0], 2)
        self.assertEqual(run("verify", "--file", example("p32.poly"), "--tol", "-1")[0], 2)
        self.assertEqual(run("verify", "--expr", "z w + 1")[0], 3)


class Factor(unittest.TestCase):
    def test_factors_recover_input(self):
        code, doc = run_json("factor", "--file", example("p32.poly"))
        self.assertEqual(code, 0)
        self.assertEqual(doc["recovery"], "exact")
        code, prod = run_json("star", "--p-expr", doc["P1"], "--q-expr", doc["P2"])
        self.assertEqual(code, 0)
        _, original = run_json("analyze", "--file", example("p32.poly"))
        self.assertEqual(prod["product"], original["polynomial"])

    def test_error_codes(self):
        code, doc = run_json("factor", "--file", example("p32_squared.poly"))
        self.assertEqual(code, 6)
        code, doc = run_json("factor", "--file", example("jzero.poly"))
        self.assertEqual(code, 5)
        self.assertEqual(doc["error"]["kind"], "jzero")


if __name__ == "__main__":
    CLI = sys.argv[1]
    ROOT = Path(sys.argv[2])
    SCHEMA = json.loads((ROOT / "schema" / "rescorr_cli.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(SCHEMA)
    unittest.main(argv=[sys.argv[0], "-v"])
