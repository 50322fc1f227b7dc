"""Smoke test for the tilescale_py extension module.

Uses an installed `tilescale_py` when available; otherwise loads the shared
library built by `cargo build -p tilescale-py` from the workspace target dir.
"""

import importlib.machinery
import importlib.util
import json
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import tilescale_py

        return tilescale_py
    except ImportError:
        pass
    suffixes = (".so", ".dylib", ".pyd", ".dll")
    for profile in ("release", "debug"):
        for path in sorted((ROOT / "target" / profile).glob("*tilescale_py*")):
            if path.suffix in suffixes:
                loader = importlib.machinery.ExtensionFileLoader("tilescale_py", str(path))
                spec = importlib.util.spec_from_file_location("tilescale_py", path, loader=loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                return module
    sys.exit("tilescale_py not found; run `cargo build -p tilescale-py` first")


def main():
    ts = load()

    fib = ts.fibonacci_tiling(3)
    assert fib.is_valid() and len(fib) == 3
    cert = fib.integerize()
    assert cert.q == 3 and cert.pipeline == "square"
    assert sorted(s[0] for s in cert.sides) == [1, 1, 2]
    assert json.loads(cert.to_json())["q"] == "3"

    dehn = ts.dehn_sharpness_tiling()
    assert dehn.minimal_scale() == Fraction(4)
    assert sorted({s[0] for s in dehn.side_lengths()}) == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    assert dehn.render_svg().count("<polygon") == 17

    cube = ts.dyadic_cube_tiling(3, 2).integerize()
    assert cube.pipeline == "hypercube" and cube.q == 4

    tri = ts.dyadic_triangle_tiling(3).integerize()
    assert tri.q == 8 and tri.tiling.is_valid()

    assert ts.dirichlet(["1/3"], 4) == 3
    count, squares = ts.min_squares(2, 3)
    assert count == 3 and sorted(s for _, _, s in squares) == [1, 1, 2]

    round_trip = ts.Tiling.from_json(fib.to_json())
    assert round_trip == fib
    try:
        ts.Tiling.from_json('{"kind": "rect", "region": {"x0": "3/0"}}')
    except ValueError as e:
        assert "zero denominator" in str(e)
    else:
        raise AssertionError("malformed rational accepted")

    print("tilescale_py smoke test passed")


if __name__ == "__main__":
    main()
