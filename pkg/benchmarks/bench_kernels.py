"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel is called with identical inputs on both backends; the script
prints the best-of-N wall time per call and the speed-up.
"""
import argparse
import timeit

import numpy as np

from uncq import _backend, _pykernels, bounds, optimize, states
from uncq.measure import Z

try:
    from uncq import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def cases(kernels):
    rng = np.random.default_rng(0)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h = g + g.conj().T
    t = np.ascontiguousarray(np.diag([0.5, -0.2, -0.3]) + 0.05 * rng.standard_normal((3, 3)))
    t = 0.5 * (t + t.T)
    thetas, phis = optimize.sphere_grid(*optimize.DEFAULT_GRID)
    excl = np.array([0.0, 0.0, 1.0])
    n0 = np.array([1.0, 0.0, 0.0])
    return {
        "jacobi_eigh 4x4": lambda: kernels.jacobi_eigh(h),
        "scan_grid 121x240": lambda: kernels.scan_grid(t, thetas, phis, excl, 1e-6, optimize.TIE_TOL),
        "refine": lambda: kernels.refine(t, n0, excl, 1e-6, np.pi / 120, optimize.STEP_MIN,
                                         optimize.REFINE_TOL, optimize.MAX_ITER),
    }


def best_time(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def end_to_end(kernels, repeat):
    original = (_backend.scan_grid, _backend.refine)
    _backend.scan_grid, _backend.refine = kernels.scan_grid, kernels.refine
    try:
        rho = states.mmm(0.5, -0.2, -0.3)
        return best_time(lambda: bounds.fine_grained_bound(rho, Z), repeat)
    finally:
        _backend.scan_grid, _backend.refine = original


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not available; timing the Python kernels only")
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    results = {}
    for name, mod in backends:
        for label, fn in cases(mod).items():
            results[label, name] = best_time(fn, args.repeat)
        results["fine_grained_bound", name] = end_to_end(mod, args.repeat)
    labels = list(dict.fromkeys(label for label, _ in results))
    print(f"{'kernel':<22}{'python':>14}{'cython':>14}{'speed-up':>10}")
    for label in labels:
        py = results[label, "python"]
        cy = results.get((label, "cython"))
        cy_txt = f"{cy * 1e6:12.1f}us" if cy else f"{'-':>14}"
        ratio = f"{py / cy:9.1f}x" if cy else f"{'-':>10}"
        print(f"{label:<22}{py * 1e6:12.1f}us{cy_txt}{ratio}")


if __name__ == "__main__":
    main()
