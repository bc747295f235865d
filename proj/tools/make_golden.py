# Copyright 2026 The mgval Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes games/golden/<game>.csv: closed-form limit values on 1001 points.

Usage: python3 tools/make_golden.py [games_dir]
"""

import math
import pathlib
import sys

from scipy.optimize import brentq

POINTS = 1001


def mixed_game(p_star, mu, p0, v0):
    """Value right of p0: slide with u = 0 up to p1, then a chord to p = 1.

    On the slide phi(p) = v0 ((p0 - p*) / (p - p*))^mu. p1 is where the
    chord slope toward u(1) = 2/3 meets phi'(p1).
    """
    u1 = 2.0 / 3.0
    c = v0 * (p0 - p_star) ** mu

    def phi(p):
        return c * (p - p_star) ** (-mu)

    def dphi(p):
        return -mu * c * (p - p_star) ** (-mu - 1.0)

    def chord(p):
        return mu * (u1 - phi(p)) / (1.0 - p_star + mu * (1.0 - p))

    p1 = brentq(lambda p: dphi(p) - chord(p), p0 + 1e-9, 1.0 - 1e-9,
                xtol=1e-15)
    def v(p):
        if p <= p1:
            return phi(p)
        return phi(p1) + chord(p1) * (p - p1)

    return v, p1


def example3(p):
    pbar = (math.sqrt(13.0) - 1.0) / 6.0
    if p < 1.0 / 3.0:
        return p - 2.0 / 3.0
    if p < pbar:
        return -1.0 / (9.0 * p)
    return -1.0 / (9.0 * pbar) + (p - pbar) / (9.0 * pbar ** 2)


def example3a():
    slide, _ = mixed_game(0.25, 0.25, 1.0 / 3.0, -2.0 / 15.0)
    return lambda p: (2.0 / 15.0) * (3.0 * p - 2.0) if p <= 1.0 / 3.0 else slide(p)


def example3b(p):
    if p <= 1.0 / 3.0:
        return (2.0 / 3.0) * (p - 1.0 / 3.0)
    return (1.0 / 3.0) * (p - 1.0 / 3.0)


GAMES = {
    "example1": lambda p: 0.0,
    "example2": lambda p: p / 2.0 - p * p / 3.0,
    "example3": example3,
    "example3a": example3a(),
    "example3b": example3b,
}


def main():
    games = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "games")
    out = games / "golden"
    out.mkdir(parents=True, exist_ok=True)
    for name, v in GAMES.items():
        lines = ["p,v"]
        for i in range(POINTS):
            p = i / (POINTS - 1)
            lines.append("%.17g,%.17g" % (p, v(p)))
        (out / (name + ".csv")).write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
