"""End-to-end checks of the command-line interface and its JSON contract."""

import json
import os
import subprocess
import sys
import tempfile

QMC = sys.argv[1]
failures = []


def run(*args, env=None, expect=0):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    proc = subprocess.run([QMC, *args], capture_output=True, text=True, env=full_env)
    if proc.returncode != expect:
        failures.append(
            f"{' '.join(args)}: exit {proc.returncode}, expected {expect}\n"
            f"stdout: {proc.stdout[:400]}\nstderr: {proc.stderr[:400]}"
        )
    return proc


def check(cond, msg):
    if not cond:
        failures.append(msg)


with tempfile.TemporaryDirectory() as tmp:
    # catalog: chain documents plus per-step dimension report
    out = os.path.join(tmp, "qhg.json")
    p = run("catalog", "qhg", "--params", "q=0.4", "mu=0.7", "lambda=0.3",
            "alpha=1", "beta=1.5", "--out", out)
    doc = json.load(open(out))
    check(doc["name"] == "qhg", "catalog qhg: bad name")
    check(len(doc["stages"]) == 2, "catalog qhg: expected 2 stages")
    check(len(doc["stages"][1]["matrices"][0]) == 2, "catalog qhg: final stage not 2x2")

    p = run("catalog", "ghg3", "--out", os.path.join(tmp, "ghg3.json"))
    check("dim K=1, dim L=0, quotient=3" in p.stdout, "catalog ghg3: missing dim report")

    run("catalog", "does_not_exist", expect=2)
    run("catalog", "qhg", "--params", "lambda=0", expect=3)  # degenerate block sum

    # apply: conv doubles the block size
    tpl = os.path.join(tmp, "tuple.json")
    json.dump(json.load(open(out))["stages"][0], open(tpl, "w"))
    conv_out = os.path.join(tmp, "conv.json")
    run("apply", "conv", "--in", tpl, "--lambda", "0.5", "--out", conv_out)
    conv = json.load(open(conv_out))
    check(len(conv["matrices"][0]) == 2 * len(json.load(open(tpl))["matrices"][0]),
          "apply conv: size not doubled")

    # apply add --mu 0 is the identity up to exact float round-trip
    add_out = os.path.join(tmp, "add0.json")
    run("apply", "add", "--in", tpl, "--mu", "0", "--out", add_out)
    a = json.load(open(tpl))["matrices"]
    b = json.load(open(add_out))["matrices"]
    check(a == b, "apply add --mu 0: values changed")

    # apply mc on the order-3 chain reports quotient 3
    ghg3 = json.load(open(os.path.join(tmp, "ghg3.json")))
    added_stage = ghg3["stages"][2]
    added_path = os.path.join(tmp, "added.json")
    json.dump(added_stage, open(added_path, "w"))
    mc_out = os.path.join(tmp, "mc.json")
    p = run("apply", "mc", "--in", added_path, "--lambda", "0.55", "--out", mc_out)
    check("quotient=3" in p.stdout, "apply mc: missing quotient report")
    mc_doc = json.load(open(mc_out))
    check(mc_doc["metadata"]["quotient"] == 3, "apply mc: metadata quotient")
    check(len(mc_doc["metadata"]["proj"]) == 3, "apply mc: proj rows")

    run("apply", "conv", "--in", os.path.join(tmp, "missing.json"), expect=2)

    # verify reports: JSON contract and exit codes
    for args in (["verify", "residual"], ["verify", "integral"],
                 ["verify", "scalar", "--name", "ghg3_alt"],
                 ["verify", "additivity", "--l1", "0.3", "--l2", "0.4"],
                 ["verify", "spectral", "--name", "variant_deg2"],
                 ["verify", "limits", "--name", "ghg3"],
                 ["verify", "table1"]):
        p = run(*args)
        rep = json.loads(p.stdout[p.stdout.index("{"):]) if "{" in p.stdout else {}
        check(rep.get("pass") is True, f"{' '.join(args)}: report not passing")

    # tolerance failure propagates as exit 1
    run("verify", "residual", env={"QMC_TOL": "1e-30"}, expect=1)
    run("verify", "nonsense", expect=2)

if failures:
    print("CLI checks failed:")
    for f in failures:
        print(" -", f)
    sys.exit(1)
print("CLI checks passed")
