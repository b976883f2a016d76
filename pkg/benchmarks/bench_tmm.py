"""Compare the compiled and pure-numpy transfer-matrix backends.

Usage::

    python benchmarks/bench_tmm.py [--slices 4096] [--repeat 7]

Times ``chain_product`` on a representative slice chain for each available
backend, plus a full ``transmit`` call, and reports the largest difference
between the backends' outputs.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from pdmbarrier import _tmm_py
from pdmbarrier.foundation import wavenumber
from pdmbarrier.oracle import BACKEND, SliceConfig, _layer_arrays, _slice_wavenumbers, transmit
from pdmbarrier.profiles import BarrierSpec

try:
    from pdmbarrier import _tmmcore
except ImportError:  # extension not built
    _tmmcore = None


def chain_inputs(barrier: BarrierSpec, n: int, e: float):
    thickness, m, v = _layer_arrays(barrier, n)
    k = _slice_wavenumbers(m, e - v)
    g = np.ascontiguousarray(k / m)
    phase = np.ascontiguousarray(np.exp(-1j * k * thickness))
    return g, phase, wavenumber(e, barrier.m_out) / barrier.m_out


def best_time(fn, repeat: int) -> float:
    number = max(1, int(0.2 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--slices", type=int, default=4096)
    parser.add_argument("--repeat", type=int, default=7)
    parser.add_argument("--energy", type=float, default=200.0, help="meV")
    parser.add_argument("--profile", default="tanh")
    args = parser.parse_args(argv)

    barrier = BarrierSpec.build(args.profile)
    g, phase, lead = chain_inputs(barrier, args.slices, args.energy)
    backends = {"python": _tmm_py.chain_product}
    if _tmmcore is not None:
        backends["cython"] = _tmmcore.chain_product

    print(f"profile={args.profile} slices={args.slices} E={args.energy} meV (oracle default backend: {BACKEND})")
    results = {}
    for name, fn in backends.items():
        results[name] = fn(g, phase, lead)
        t = best_time(lambda fn=fn: fn(g, phase, lead), args.repeat)
        print(f"  chain_product[{name:6s}] {t * 1e6:10.1f} us")
    if len(results) == 2:
        diff = max(abs(a - b) for a, b in zip(results["python"], results["cython"]))
        t_py = best_time(lambda: _tmm_py.chain_product(g, phase, lead), args.repeat)
        t_cy = best_time(lambda: _tmmcore.chain_product(g, phase, lead), args.repeat)
        print(f"  speed-up {t_py / t_cy:.1f}x, max |dM| between backends = {diff:.2e}")
    cfg = SliceConfig(args.slices)
    t = best_time(lambda: transmit(barrier, cfg, args.energy), args.repeat)
    print(f"  transmit (end to end, {BACKEND}) {t * 1e6:10.1f} us")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
