# Copyright 2026 The fenet Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the fenet command line tool."""

import csv
import io
import json
import os
import subprocess
import sys
import tempfile
import xml.etree.ElementTree as ET

FENET = sys.argv[1]
failures = []


def run(*args, env=None, code=0):
    full_env = dict(os.environ)
    full_env.pop("FE_SCALE", None)
    full_env.update(env or {})
    p = subprocess.run([FENET, *args], capture_output=True, text=True, env=full_env)
    if p.returncode != code:
        failures.append(f"{' '.join(args)}: exit {p.returncode}, wanted {code}\n{p.stderr}")
    return p


def expect(cond, what):
    if not cond:
        failures.append(what)


def fnv1a(data):
    h = 1469598103934665603
    for b in data:
        h ^= b
        h = (h * 1099511628211) % (1 << 64)
    return f"{h:016x}"


def read(path):
    with open(path, encoding="utf-8") as f:
        return f.read()


def check_manifest(d):
    m = json.loads(read(os.path.join(d, "manifest.json")))
    for out in m["outputs"]:
        with open(os.path.join(d, out["path"]), "rb") as f:
            data = f.read()
        expect(fnv1a(data) == out["fnv1a64"], f"checksum of {out['path']} in {d}")
        expect(len(data) == out["bytes"], f"size of {out['path']} in {d}")
    return m


with tempfile.TemporaryDirectory() as tmp:
    p = lambda *parts: os.path.join(tmp, *parts)

    # continuous line: 0.5 globally, 0.3 with the split
    run("generate", "continuous-line", "--n", "1000", "--out", p("cl"))
    check_manifest(p("cl"))
    g = json.loads(run("solve", "--instance", p("cl", "instance.json"), "--out", p("clg")).stdout)
    expect(abs(g["delay_per_unit"] - 0.5) < 0.002, f"global delay per unit {g['delay_per_unit']}")
    r = json.loads(run("solve", "--instance", p("cl", "instance.json"), "--regions",
                       p("cl", "split.regions.json"), "--out", p("clr")).stdout)
    expect(abs(r["delay_per_unit"] - 0.3) < 0.002, f"split delay per unit {r['delay_per_unit']}")
    expect(read(p("clg", "backlogs.csv")) == "fc_id,backlog\nf1,0\nf2,0.4\n", "continuous-line backlogs")
    rows = list(csv.reader(io.StringIO(read(p("clr", "regions.csv")))))
    expect(rows[-1][0] == "total" and rows[-1][6] == "300", f"regions total row {rows[-1]}")
    check_manifest(p("clr"))

    # verify: a global solution passes, a tampered one fails with exit 3
    run("verify", "--instance", p("cl", "instance.json"), "--solution", p("clg", "solution.json"))
    sol = json.loads(read(p("clg", "solution.json")))
    sol["backlogs"]["f2"] += 1
    with open(p("bad_solution.json"), "w", encoding="utf-8") as f:
        json.dump(sol, f)
    out = run("verify", "--instance", p("cl", "instance.json"), "--solution", p("bad_solution.json"), code=3)
    expect('"ok": false' in out.stdout, "tampered solution reported")

    # line-lb closed forms
    run("generate", "line-lb", "--k", "3", "--dprime", "10", "--L", "100", "--out", p("lb"))
    s = json.loads(run("solve", "--instance", p("lb", "instance.json")).stdout)
    expect(s["total_delay_scaled"] == 1233000000, f"line-lb delay {s['total_delay_scaled']}")
    c = json.loads(run("compare", "--instance", p("lb", "instance.json"), "--regions",
                       p("lb", "k-regions.regions.json"), "--out", p("lbc")).stdout)
    expect(c["regional_delay"] == "112", f"line-lb k-region delay {c['regional_delay']}")
    num, den = c["improvement_ratio"]["num"], c["improvement_ratio"]["den"]
    expect(num * 1233 == den * 1121, "improvement is (global - OPT) / global")

    # one region: no improvement
    run("regionalize", "--instance", p("lb", "instance.json"), "--method", "single", "--out", p("one"))
    c1 = json.loads(run("compare", "--instance", p("lb", "instance.json"), "--regions",
                        p("one", "regions.json")).stdout)
    expect(c1["improvement"] == "0", "single region improvement")

    # figure reconstructions through the tool
    run("generate", "tree-r", "--r", "3", "--L", "100", "--eps", "1", "--out", p("tr"))
    got = {}
    for name in ["contiguous-global-grouping", "contiguous-alternate-grouping", "noncontiguous-global-grouping"]:
        got[name] = json.loads(run("compare", "--instance", p("tr", "instance.json"), "--regions",
                                   p("tr", name + ".regions.json")).stdout)["regional_delay"]
    expect(got == {"contiguous-global-grouping": "900", "contiguous-alternate-grouping": "324",
                   "noncontiguous-global-grouping": "306"}, f"trees-r values {got}")

    # synthetic determinism and the quadrant split
    run("generate", "synthetic", "--seed", "7", "--alpha", "0.6", "--out", p("s1"))
    run("generate", "synthetic", "--seed", "7", "--alpha", "0.6", "--out", p("s2"))
    expect(read(p("s1", "instance.json")) == read(p("s2", "instance.json")), "synthetic determinism")
    m = check_manifest(p("s1"))
    expect(m["seed"] == 7, "manifest seed")
    q = json.loads(run("compare", "--instance", p("s1", "instance.json"), "--regions",
                       p("s1", "quadrants.regions.json")).stdout)
    expect(q["regions"] == 4 and q["improvement_percent"] > 0, f"quadrant improvement {q['improvement_percent']}")

    # sweep: CSV, SVG, and CSV determinism across runs
    run("sweep-alpha", "--seed", "7", "--alphas", "0,0.25,0.5,0.75,1", "--out", p("sw1"))
    run("sweep-alpha", "--seed", "7", "--alphas", "0,0.25,0.5,0.75,1", "--out", p("sw2"))
    sweep = read(p("sw1", "sweep.csv"))
    expect(sweep == read(p("sw2", "sweep.csv")), "sweep CSV is bit identical")
    rows = list(csv.DictReader(io.StringIO(sweep)))
    expect(len(rows) == 5, "five sweep rows")
    expect(rows[-1]["delay"] == rows[-1]["min_cost"], "alpha=1 delay equals min cost")
    root = ET.parse(p("sw1", "sweep.svg")).getroot()
    ns = {"s": "http://www.w3.org/2000/svg"}
    for series, col in [("delay", "delay"), ("min_cost", "min_cost")]:
        group = [g for g in root.findall("s:g", ns) if g.get("id") == series]
        expect(len(group) == 1, f"svg series {series}")
        if group:
            pts = [(c.get("data-alpha"), c.get("data-value")) for c in group[0].findall("s:circle", ns)]
            expect(pts == [(r["alpha"], r[col]) for r in rows], f"svg {series} values match CSV")
    check_manifest(p("sw1"))

    # simulate writes a trace and a summary
    run("generate", "continuous-line", "--n", "20", "--out", p("c20"))
    sim = json.loads(run("simulate", "--instance", p("c20", "instance.json"), "--steps", "2000",
                         "--sample-every", "100", "--out", p("sim")).stdout)
    expect(sim["mass"]["conservation_errors"] == 0, "simulation conserves mass")
    expect(read(p("sim", "trace.csv")).startswith("t,fc_id,backlog\n0,f1,0\n"), "trace header")

    # scale decomposition on a unit instance
    reg = json.loads(run("regionalize", "--instance", p("c20", "instance.json"), "--method", "k",
                         "--out", p("k20")).stdout)
    expect(reg["regions"] >= 1, "k regionalization")

    # FE_SCALE
    s3 = json.loads(run("solve", "--instance", p("lb", "instance.json"), env={"FE_SCALE": "1e3"}).stdout)
    expect(s3["total_delay_scaled"] == 1233000, "FE_SCALE=1e3")
    run("solve", "--instance", p("lb", "instance.json"), env={"FE_SCALE": "12"}, code=2)

    # exit codes
    run("generate", "bogus", code=2)
    run("solve", code=2)
    run("generate", "line-lb", "--n", "4", code=2)
    with open(p("infeasible.json"), "w", encoding="utf-8") as f:
        f.write('{"metric":{"type":"line"},"demands":[{"id":"a","pos":"0","d":2}],'
                '"fcs":[{"id":"f","pos":"1","c":1}]}')
    err = run("solve", "--instance", p("infeasible.json"), code=3)
    expect("supply < demand" in err.stderr, "infeasibility names the violated condition")
    with open(p("broken.json"), "w", encoding="utf-8") as f:
        f.write("{")
    run("solve", "--instance", p("broken.json"), code=3)
    bad_regions = p("bad_regions.json")
    with open(bad_regions, "w", encoding="utf-8") as f:
        f.write('{"parts":[{"demands":["i1","i2","i3"],"fcs":["j1"]}]}')
    run("compare", "--instance", p("lb", "instance.json"), "--regions", bad_regions, code=3)

if failures:
    for f in failures:
        print("FAIL:", f)
    sys.exit(1)
print("all CLI checks passed")
