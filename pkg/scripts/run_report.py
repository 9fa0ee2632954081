"""Run a full experiment from a config file and print the assertion table.

    python scripts/run_report.py configs/gamma4-full.toml --out out/gamma4-full --cache-dir .cache
"""
import argparse
import sys

from hypsector.config import load_config
from hypsector.experiment import run_experiment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("config")
    ap.add_argument("--out")
    ap.add_argument("--cache-dir")
    args = ap.parse_args()
    cfg = load_config(args.config)
    bundle = run_experiment(cfg, out_dir=args.out, cache_dir=args.cache_dir)
    width = max(len(a.name) for a in bundle.assertions)
    for a in bundle.assertions:
        print(f"{a.name:<{width}}  {'PASS' if a.passed else 'FAIL'}  value={a.value}  threshold={a.threshold}")
    print(f"artifacts in {bundle.out_dir}")
    return bundle.exit_code


if __name__ == "__main__":
    sys.exit(main())
