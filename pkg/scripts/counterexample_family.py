"""Print S_n and D_n for the companion(x^(m-1) - 4^m) (+) [2] family.

Shows the preperiod: D_n repeats with period m-1, but only from n = m-1 on.

    python scripts/counterexample_family.py --m 4 --horizon 12
"""

import argparse

from snfpowers.gen import bruner_counterexample, check_oracle
from snfpowers.ntkit import int_valuation
from snfpowers.powertrace import detect_dn_periodicity, trace_powers


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--horizon", type=int, default=12)
    args = ap.parse_args()

    inst = bruner_counterexample(args.m)
    t = trace_powers(inst.matrix, max(args.horizon, 4 * (args.m - 1)))
    print(f"A =\n{inst.matrix}\n")
    print(" n  log2 S_n                log2 D_n")
    for n in range(args.horizon):
        s = [int_valuation(x, 2) for x in t.smith_seq[n].diag]
        d = [int_valuation(x, 2) for x in t.d_seq[n]]
        print(f"{n:2d}  {str(s):22s}  {d}")
    rep = detect_dn_periodicity(t)
    print(f"\ndetected n0={rep.n0} T={rep.T}; oracle check: {check_oracle(inst, t.smith_seq).status.value}")


if __name__ == "__main__":
    main()
