# SPDX-License-Identifier: Apache-2.0
"""End-to-end checks of the glv executable.

usage: test_cli.py <glv> <report.schema.json> <configs dir>
"""
import json
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema

GLV, SCHEMA, CONFIGS = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
del sys.argv[1:4]


def run(*args, env=None):
    e = {k: v for k, v in os.environ.items() if k != "GLV_CONFIG"}
    e.update(env or {})
    return subprocess.run([GLV, *args], capture_output=True, text=True, env=e, timeout=600)


class Cli(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.validator = jsonschema.Draft202012Validator(json.loads(SCHEMA.read_text()))
        cls.tmp = tempfile.TemporaryDirectory()
        cls.verify = run("verify")

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    def valid(self, text):
        doc = json.loads(text)
        self.validator.validate(doc)
        return doc

    def write(self, name, text):
        p = pathlib.Path(self.tmp.name) / name
        p.write_text(text)
        return str(p)

    def test_verify_default_passes(self):
        r = self.verify
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertTrue(r.stderr.startswith("PASS"))
        doc = self.valid(r.stdout)
        self.assertEqual(doc["schema"], "glv.summation-report/1")
        self.assertTrue(doc["passed"])
        self.assertLessEqual(doc["rel_err"], 1e-6)

    def test_verify_is_deterministic(self):
        again = run("verify", "--n", "3", "--form", "sym2-delta", "--q", "1", "--a", "0",
                    "--c", "1", "--X", "4")
        self.assertEqual(again.returncode, 0)
        self.assertEqual(again.stdout, self.verify.stdout)

    def test_gcd_is_structural(self):
        r = run("verify", "--q", "4", "--a", "2")
        self.assertEqual(r.returncode, 2)
        self.assertIn("gcd(a,q) != 1", r.stderr)
        self.assertEqual(r.stdout, "")

    def test_tight_tolerance_is_numeric_failure(self):
        r = run("verify", "--tolerance", "1e-20", "--abs-floor", "0")
        self.assertEqual(r.returncode, 1)
        self.assertTrue(r.stderr.startswith("FAIL"))
        self.assertIn("rel_err=", r.stderr)
        doc = self.valid(r.stdout)
        self.assertFalse(doc["passed"])

    def test_bad_config_is_pointered(self):
        p = self.write("bad.ini", "[instance]\nq = 5\nfoo = 1\n")
        r = run("verify", "--config", p)
        self.assertEqual(r.returncode, 2)
        self.assertIn(p + ":3:1: unknown key 'foo' in section [instance]", r.stderr)
        self.assertIn("^", r.stderr)
        r = run("verify", "--config", "/nonexistent/glv.ini")
        self.assertEqual(r.returncode, 2)

    def test_bad_flags_are_structural(self):
        self.assertEqual(run("verify", "--q", "x").returncode, 2)
        self.assertEqual(run("frobnicate").returncode, 2)
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("verify", "--set", "instance.bogus=1").returncode, 2)
        self.assertEqual(run("verify", "--n", "4").returncode, 2)

    def test_env_config_and_flag_override(self):
        p = self.write("env.ini", "[instance]\nq = 4\na = 2\n")
        r = run("verify", env={"GLV_CONFIG": p})
        self.assertEqual(r.returncode, 2)
        self.assertIn("gcd(2,4)=2", r.stderr)
        # the flag wins over the file named by the environment
        r = run("verify", "--q", "1", "--set", "tolerance.rel=1e-20", "--abs-floor", "0",
                env={"GLV_CONFIG": p})
        self.assertEqual(r.returncode, 1)
        self.assertEqual(json.loads(r.stdout)["instance"]["q"], 1)

    def test_out_path(self):
        out = pathlib.Path(self.tmp.name) / "report.json"
        r = run("verify", "--out", str(out))
        self.assertEqual(r.returncode, 0)
        self.assertEqual(r.stdout, "")
        self.assertEqual(out.read_text(), self.verify.stdout)

    def test_timings_are_opt_in(self):
        self.assertNotIn("wall_time", json.loads(self.verify.stdout))
        doc = self.valid(run("verify", "--timings").stdout)
        self.assertIn("wall_time", doc)

    def test_sum(self):
        r = run("sum", "--a", "1", "--b", "1", "--q", "5", "--c", "1", "--d", "1")
        self.assertEqual(r.returncode, 0)
        self.assertTrue(r.stdout.startswith("0.381966011250 "))
        r = run("sum", "--a", "0", "--b", "0", "--q", "7", "--c", "1", "--d", "1")
        self.assertTrue(r.stdout.startswith("6.00000000000 "))
        r = run("sum", "--a", "3", "--b", "2", "--q", "12", "--c", "2", "--d", "3", "--check")
        self.assertEqual(r.returncode, 0, r.stdout + r.stderr)
        lines = r.stdout.splitlines()
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[1].endswith(" bruteforce"))
        self.assertTrue(lines[2].endswith(" ok"))
        self.assertEqual(lines[0], lines[1].removesuffix(" bruteforce"))
        r = run("sum", "--a", "1", "--b", "1", "--q", "4", "--c", "1", "--d", "3")
        self.assertEqual(r.returncode, 2)
        r = run("sum", "--a", "1", "--b", "1", "--q", "4", "--c", "1")
        self.assertEqual(r.returncode, 2)

    def test_transform(self):
        r = run("transform", "--form", "none", "--n", "1", "--X", "1", "--y", "0.5,1,2")
        self.assertEqual(r.returncode, 0, r.stderr)
        rows = r.stdout.splitlines()
        self.assertEqual(rows[0], "y,re,im,est_err")
        self.assertEqual(len(rows), 4)
        y, re, im, err = map(float, rows[2].split(","))
        self.assertEqual(y, 1.0)
        self.assertAlmostEqual(re, 0.043214, places=6)
        self.assertLess(err, 1e-9)
        r = run("transform", "--form", "none", "--n", "1")
        self.assertEqual(r.stdout, "y,re,im,est_err\n")
        r = run("transform", "--X", "3", "--grid-min", "0.1", "--grid-max", "10",
                "--nodes-per-decade", "2")
        self.assertEqual(r.returncode, 0, r.stderr)
        rows = [list(map(float, l.split(","))) for l in r.stdout.splitlines()[1:]]
        self.assertEqual(len(rows), 5)
        self.assertTrue(all(row[3] < 1e-9 for row in rows))

    def test_coeffs(self):
        r = run("coeffs", "--form", "delta", "--max", "5")
        self.assertEqual(r.returncode, 0)
        lines = r.stdout.splitlines()
        self.assertEqual(lines[0], "# glv-coefficients v1 form=delta kind=a")
        self.assertEqual(lines[1], "k1,re,im,tau")
        self.assertEqual([l.split(",")[-1] for l in lines[2:]], ["1", "-24", "252", "-1472", "4830"])
        r = run("coeffs", "--form", "sym2-delta", "--max", "2")
        self.assertIn("\n1,2,-0.71875,0\n", r.stdout)
        r = run("coeffs", "--max", "1")
        self.assertEqual(r.stdout.splitlines()[2:], ["1,1,1,0"])
        self.assertEqual(run("coeffs", "--form", "none", "--max", "2").returncode, 2)

    def test_twist_and_calibrate_reports(self):
        r = run("twist", "--config", str(CONFIGS / "twist_q4_odd.ini"))
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = self.valid(r.stdout)
        self.assertIsNone(doc["instance"]["a"])
        self.assertEqual(doc["twist"]["parity"], 1)
        self.assertTrue(doc["twist"]["collapsed_ok"])
        self.assertFalse(doc["twist"]["degenerate"])

        out = pathlib.Path(self.tmp.name) / "calibrated.ini"
        r = run("calibrate", "--write", str(out))
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = self.valid(r.stdout)
        self.assertEqual(doc["schema"], "glv.calibration-report/1")
        win = doc["entries"][doc["winner"]]
        self.assertTrue(win["passed"])
        self.assertEqual(win["params"]["delta"], [0, 0, 0])
        self.assertIn("delta = 0,0,0", out.read_text())
        failed = [e["params"]["delta"] for e in doc["entries"] if not e["passed"]]
        self.assertEqual(failed, [[1, 0, 1]])

    def test_shipped_configs_parse(self):
        files = sorted(CONFIGS.glob("*.ini"))
        self.assertGreater(len(files), 0)
        for f in files:
            # coeffs loads the whole file and resolves the parameters without verifying
            r = run("coeffs", "--config", str(f), "--max", "1")
            self.assertEqual(r.returncode, 0, f"{f}: {r.stderr}")


if __name__ == "__main__":
    unittest.main(verbosity=2)
