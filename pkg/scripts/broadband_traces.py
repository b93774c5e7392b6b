#!/usr/bin/env python3
"""Broadband traces, 300 kHz to 10 MHz.

Emulates the analyzer view of both superposition modes at RBW 100 kHz /
VBW 300 Hz, normalized to shot noise, plus the inseparability curve of the
dark-corrected detected spectra. Data only; plot with any tool, e.g.

    python scripts/broadband_traces.py --out out/broadband
"""

import argparse
from pathlib import Path

import numpy as np

from sqzsim import (
    ModeVariancePair,
    default_config,
    duan_inseparability,
    emulate_sweep,
    load_config,
    observe_corrected,
    observed_relative_to_shot,
    total_spectrum,
    write_trace_csv,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", help="JSON config (defaults otherwise)")
    ap.add_argument("--out", default="out/broadband")
    ap.add_argument("--seed", type=int, default=None)
    args = ap.parse_args()

    cfg = load_config(args.config) if args.config else default_config()
    seed = args.seed if args.seed is not None else cfg.require_seed()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    sweep = cfg.analyzer
    freqs = sweep.freqs

    detected = {}
    for k, mode in enumerate(("plus", "minus")):
        source = total_spectrum(cfg.opo, cfg.noise, mode)
        trace = emulate_sweep(
            observed_relative_to_shot(source, cfg.detection), sweep, seed + k
        )
        write_trace_csv(out / f"trace_{mode}.csv", trace)
        detected[mode] = observe_corrected(source, cfg.detection)(freqs)

    insep = duan_inseparability(
        ModeVariancePair(s_plus=detected["plus"], s_minus=detected["minus"])
    )
    rows = np.column_stack([freqs, insep])
    header = "freq_hz,inseparability"
    np.savetxt(out / "inseparability.csv", rows, delimiter=",", header=header, comments="")

    i0 = np.argmin(np.abs(freqs - 3.5e6))
    print(f"wrote {out}/trace_plus.csv, trace_minus.csv, inseparability.csv")
    print(f"inseparability at {freqs[i0]/1e6:.2f} MHz: {insep[i0]:.3f}")


if __name__ == "__main__":
    main()
