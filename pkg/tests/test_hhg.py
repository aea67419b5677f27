import numpy as np
import pytest

from equibench.errors import SizeCapError
from equibench.measures import hhg


def hhg_naive(x, y):
    """Literal triple loop over (center, radius, classified point)."""
    n = len(x)
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            dx = abs(x[i] - x[j])
            dy = abs(y[i] - y[j])
            a11 = a12 = a21 = a22 = 0
            for k in range(n):
                if k == i or k == j:
                    continue
                within_x = abs(x[i] - x[k]) <= dx
                within_y = abs(y[i] - y[k]) <= dy
                if within_x and within_y:
                    a11 += 1
                elif within_x:
                    a12 += 1
                elif within_y:
                    a21 += 1
                else:
                    a22 += 1
            r1, r2 = a11 + a12, a21 + a22
            c1, c2 = a11 + a21, a12 + a22
            if r1 and r2 and c1 and c2:
                det = a11 * a22 - a12 * a21
                total += (n - 2) * det * det / (r1 * r2 * c1 * c2)
    return total


class TestHhg:
    def test_nonnegative(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            assert hhg(rng.random(30), rng.random(30)) >= 0.0

    def test_matches_naive_triple_loop(self):
        rng = np.random.default_rng(1)
        for t in range(60):
            n = int(rng.integers(4, 31))
            x = rng.random(n)
            y = rng.random(n)
            if t % 3 == 0:
                # rounding forces exact distance ties on both axes
                x = np.round(x, 1)
                y = np.round(y, 1)
            want = hhg_naive(x, y)
            assert hhg(x, y) == pytest.approx(want, rel=1e-9, abs=1e-9)

    def test_identity_exceeds_null_quantile(self):
        rng = np.random.default_rng(2)
        x = rng.random(100)
        null = np.array([hhg(x, rng.permutation(x)) for _ in range(200)])
        assert hhg(x, x) > np.quantile(null, 0.99)

    def test_size_cap(self):
        v = np.arange(600.0)
        with pytest.raises(SizeCapError):
            hhg(v, v)
        assert hhg(v[:512], v[:512]) > 0  # cap is inclusive

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            hhg(np.arange(3.0), np.arange(3.0))
