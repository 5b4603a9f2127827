"""Shared fixtures and the seeds the seeded examples were searched for.

SEED_CIRCLE_MAIN: 30-point radius-2 circle whose report flags exactly
the essential component and the loop, with a tail suitable for the
reference-prefix replay.
SEED_CIRCLE_GAPPED: 30-point circle with exactly two sampling gaps of
chord length > 1.0, so the scale-0.5 subcomplex has two components.
SEED_TORUS_TAIL: small torus run (200 points, threshold 0.9) whose tail
lengths stay below the reference torus prefix.
TORUS_MAIN: 550-point torus run (threshold 0.93) whose report flags
exactly the component, the two loops, and the enclosed void; the seed
was screened so the void bar outranks every dim-1 offshoot and the
dim-0 sampling noise.
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

SEED_CIRCLE_MAIN = 64
SEED_CIRCLE_GAPPED = 40
SEED_TORUS_TAIL = 7

TORUS_MAIN_COUNT = 550
TORUS_MAIN_THRESHOLD = 0.93
SEED_TORUS_MAIN = 20
