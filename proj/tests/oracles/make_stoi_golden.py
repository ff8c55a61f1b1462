#!/usr/bin/env python3
# Copyright 2026 The DeVo Engine Authors
# License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
"""Writes the STOI golden pairs and their reference scores.

Signals are synthetic speech-like utterances (voiced harmonic bursts with
syllabic envelopes and pauses) degraded by noise at fixed SNRs or simple
processing. Scores come from pystoi on the exact PCM16 values committed.

Usage: make_stoi_golden.py OUT_DIR
"""
import json
from importlib.metadata import version
import sys
from pathlib import Path

import numpy as np
import scipy.io.wavfile as wavfile
import scipy.signal as sps
from pystoi import stoi

RATE = 16000
SECONDS = 2.5


def utterance(rng, f0_lo, f0_hi):
    n = int(RATE * SECONDS)
    t = np.arange(n) / RATE
    f0 = np.interp(t, [0, SECONDS], [f0_lo, f0_hi]) * (1 + 0.05 * np.sin(2 * np.pi * 3 * t))
    phase = 2 * np.pi * np.cumsum(f0) / RATE
    voiced = sum(np.sin(k * phase) / k for k in range(1, 30))
    # Three formant resonators.
    out = np.zeros(n)
    for fc, bw in ((rng.uniform(500, 800), 90), (rng.uniform(1100, 1800), 110),
                   (rng.uniform(2300, 3000), 160)):
        r = np.exp(-np.pi * bw / RATE)
        a = [1, -2 * r * np.cos(2 * np.pi * fc / RATE), r * r]
        out += sps.lfilter([1 - r], a, voiced)
    fric = sps.lfilter(*sps.butter(4, 3500 / (RATE / 2), "high"), rng.standard_normal(n))
    env = np.clip(np.sin(2 * np.pi * rng.uniform(3, 5) * t + rng.uniform(0, 6)), 0, None) ** 1.5
    gaps = (np.sin(2 * np.pi * 0.7 * t + rng.uniform(0, 6)) > -0.6).astype(float)
    gaps = np.convolve(gaps, np.hanning(801) / np.hanning(801).sum(), mode="same")
    sig = (out * env + 0.05 * fric * (1 - env)) * gaps
    return 0.3 * sig / np.max(np.abs(sig))


def pcm16(x):
    return np.clip(np.round(x * 32768), -32768, 32767).astype(np.int16)


def decoded(q):
    return q.astype(np.float64) / 32768.0


def at_snr(clean, noise, snr_db):
    g = np.sqrt(np.sum(clean**2) / (np.sum(noise**2) * 10 ** (snr_db / 10)))
    mix = clean + g * noise
    return mix * min(1.0, 0.95 / np.max(np.abs(mix)))


def main():
    out_dir = Path(sys.argv[1])
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20260101)
    n = int(RATE * SECONDS)
    white = rng.standard_normal(n)
    pink = sps.lfilter([0.049922035, -0.095993537, 0.050612699, -0.004408786],
                       [1, -2.494956002, 2.017265875, -0.522189400], rng.standard_normal(n))
    cases = []
    for u, (lo, hi) in enumerate(((110, 150), (180, 230), (95, 130))):
        clean_q = pcm16(utterance(rng, lo, hi))
        clean = decoded(clean_q)
        clean_name = f"clean{u}.wav"
        wavfile.write(out_dir / clean_name, RATE, clean_q)
        variants = {
            "white_m5": at_snr(clean, white, -5.0),
            "white_p0": at_snr(clean, white, 0.0),
            "white_p10": at_snr(clean, white, 10.0),
            "pink_p5": at_snr(clean, pink, 5.0),
        }
        for tag, proc in variants.items():
            q = pcm16(proc)
            name = f"proc{u}_{tag}.wav"
            wavfile.write(out_dir / name, RATE, q)
            cases.append({"clean": clean_name, "processed": name,
                          "stoi": float(stoi(clean, decoded(q), RATE))})
    (out_dir / "golden.json").write_text(json.dumps({"reference": "pystoi " + version("pystoi"), "pairs": cases},
                                                    indent=2) + "\n")


if __name__ == "__main__":
    main()
