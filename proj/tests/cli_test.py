"""End-to-end checks of the specgeo CLI: exit codes, outputs and JSON schemas."""

import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

BINARY = Path(sys.argv.pop(1))
SCHEMAS = Path(sys.argv.pop(1))


def load_registry():
    resources = []
    for path in sorted(SCHEMAS.glob("*.schema.json")):
        schema = json.loads(path.read_text())
        resources.append((path.name, Resource.from_contents(schema)))
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


REGISTRY = load_registry()


def run(*args, env=None):
    return subprocess.run([str(BINARY), *args], capture_output=True, text=True, env=env, timeout=300)


def run_json(schema, *args):
    proc = run(*args, "--json")
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    validator = jsonschema.Draft202012Validator(
        json.loads((SCHEMAS / schema).read_text()), registry=REGISTRY)
    validator.validate(doc)
    return doc


def entries(doc):
    return [(v, m) for v, m in doc["spectrum"]["entries"]]


class SpectrumCommand(unittest.TestCase):
    def test_clifford(self):
        doc = run_json("spectrum.schema.json", "spectrum", "--clifford", "1", "2", "--cutoff", "9")
        self.assertEqual(entries(doc), [(0, 1), (2, 4), (4, 4), (8, 4)])
        self.assertEqual(doc["config"]["clifford"], [1, 2])

    def test_great_sphere(self):
        doc = run_json("spectrum.schema.json", "spectrum", "--great-sphere", "2", "--cutoff", "7")
        self.assertEqual(entries(doc), [(0, 1), (2, 3), (6, 5)])

    def test_grid(self):
        doc = run_json("spectrum.schema.json", "spectrum", "--grid", "32", "--periods", "clifford",
                       "--cutoff", "10")
        exact = [(0, 1), (2, 4), (4, 4), (8, 4)]
        got = entries(doc)[:4]
        for (v, m), (ev, em) in zip(got, exact):
            self.assertEqual(m, em)
            self.assertLess(abs(v - ev), 0.02 * max(1.0, ev))

    def test_jacobi_and_lr(self):
        doc = run_json("spectrum.schema.json", "spectrum", "--clifford", "1", "2", "--operator", "jacobi",
                       "--cutoff", "6")
        self.assertEqual(entries(doc), [(-4, 1), (-2, 4), (0, 4), (4, 4)])
        doc = run_json("spectrum.schema.json", "spectrum", "--clifford", "1", "3", "--operator", "lr",
                       "--r", "1", "--cutoff", "9")
        self.assertEqual([m for _, m in entries(doc)], [1, 5, 6])

    def test_csv(self):
        proc = run("spectrum", "--clifford", "1", "2", "--cutoff", "5", "--csv")
        self.assertEqual(proc.returncode, 0)
        self.assertEqual(proc.stdout, "value,multiplicity\n0,1\n2,4\n4,4\n")

    def test_errors(self):
        self.assertEqual(run("spectrum", "--clifford", "1", "2").returncode, 2)
        self.assertEqual(run("spectrum", "--clifford", "0", "2", "--cutoff", "3").returncode, 2)
        self.assertEqual(run("spectrum", "--grid", "65", "--cutoff", "3").returncode, 2)
        self.assertEqual(run("spectrum", "--clifford", "1", "2", "--operator", "bogus", "--cutoff", "3").returncode, 2)

    def test_model_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "model.json"
            path.write_text('{"factors": [{"dim": 1, "rad2": "1/3"}, {"dim": 2, "rad2": "2/3"}]}')
            doc = run_json("spectrum.schema.json", "spectrum", "--model", str(path), "--cutoff", "7")
            self.assertEqual(entries(doc), [(0, 1), (3, 5), (6, 6)])
            path.write_text('{"factors": [{"dim": 1, "rad2": "1/3"}]}')
            self.assertEqual(run("spectrum", "--model", str(path), "--cutoff", "7").returncode, 2)


class IndexCommand(unittest.TestCase):
    def test_clifford_torus(self):
        doc = run_json("index.schema.json", "index", "--clifford", "1", "2")
        self.assertEqual(doc["morse_index"], 5)
        self.assertEqual(doc["lambda1"], 2)
        self.assertEqual(doc["theorem12"]["bound"], 5)
        self.assertIsNone(doc["corollary13"])

    def test_great_sphere(self):
        doc = run_json("index.schema.json", "index", "--great-sphere", "4")
        self.assertEqual(doc["morse_index"], 1)
        self.assertFalse(doc["theorem12"]["fullness_witnessed"])

    def test_clifford_2_5(self):
        doc = run_json("index.schema.json", "index", "--clifford", "2", "5")
        self.assertEqual(doc["morse_index"], 8)
        self.assertEqual(doc["certificate"]["regime"], "rigidity")


class RIndexCommand(unittest.TestCase):
    def test_1_3_1(self):
        doc = run_json("r_index.schema.json", "r-index", "1", "3", "1")
        self.assertLess(abs(doc["r1_squared"] - 2.0 / 3.0), 1e-10)
        self.assertEqual(doc["r_index"], 6)
        self.assertTrue(doc["lemma44"]["passed"])

    def test_r_zero(self):
        self.assertEqual(run_json("r_index.schema.json", "r-index", "1", "2", "0")["r_index"], 5)
        self.assertEqual(run_json("r_index.schema.json", "r-index", "1", "3", "0")["r_index"], 6)

    def test_no_solution(self):
        self.assertEqual(run("r-index", "1", "3", "2").returncode, 4)
        self.assertEqual(run("r-index", "1", "3").returncode, 2)


class CompareCommand(unittest.TestCase):
    def test_nonconstant(self):
        doc = run_json("compare.schema.json", "compare", "--grid", "16", "--seeds", "100")
        self.assertEqual(doc["passed"], 100)
        self.assertTrue(doc["all_passed"])

    def test_constant(self):
        doc = run_json("compare.schema.json", "compare", "--grid", "16", "--constant-ratio", "--seeds", "50")
        self.assertEqual(doc["passed"], 50)
        self.assertLess(doc["worst_margin"], 1e-8)

    def test_deterministic(self):
        a = run("compare", "--grid", "8", "--seeds", "1", "--seed", "42", "--json")
        b = run("compare", "--grid", "8", "--seeds", "1", "--seed", "42", "--json")
        self.assertEqual(a.returncode, 0)
        self.assertEqual(a.stdout, b.stdout)


class ConvergeCommand(unittest.TestCase):
    def test_order_column(self):
        proc = run("converge", "--periods", "clifford", "--res", "8,16,32", "--csv")
        self.assertEqual(proc.returncode, 0)
        lines = proc.stdout.splitlines()
        self.assertEqual(lines[0], "resolution,mode,exact,approx,error,order")
        orders = [float(l.split(",")[5]) for l in lines[1:] if l.startswith("32,") and l.split(",")[5]]
        self.assertTrue(all(1.6 < o < 2.4 for o in orders[:3]), orders)

    def test_single_resolution(self):
        proc = run("converge", "--res", "16", "--csv")
        self.assertEqual(proc.stdout.splitlines()[0], "resolution,mode,exact,approx,error")

    def test_json(self):
        run_json("converge.schema.json", "converge", "--res", "8,16")

    def test_not_increasing(self):
        self.assertEqual(run("converge", "--res", "16,16").returncode, 2)


class ConfigAndOutput(unittest.TestCase):
    def test_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            cfg = Path(tmp) / "cfg.json"
            cfg.write_text('{"index": {"clifford": [1, 3], "json": true}}')
            proc = run("--config", str(cfg))
            self.assertEqual(proc.returncode, 0, proc.stderr)
            self.assertEqual(json.loads(proc.stdout)["morse_index"], 6)
            self.assertEqual(run("--config", str(Path(tmp) / "missing.json")).returncode, 2)

    def test_output_dir(self):
        with tempfile.TemporaryDirectory() as tmp:
            env = dict(os.environ, SPECGEO_OUTPUT_DIR=tmp)
            proc = run("converge", "--res", "8,16", "--csv", "-o", "conv/table.csv", env=env)
            self.assertEqual(proc.returncode, 0)
            self.assertTrue((Path(tmp) / "conv" / "table.csv").read_text().startswith("resolution,"))


if __name__ == "__main__":
    unittest.main()
