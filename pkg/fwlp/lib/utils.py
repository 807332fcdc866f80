import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import norm as sparse_norm
from scipy.special import digamma

from fwlp.lib.types import Vector

# Below this many terms the harmonic difference is summed directly.
_DIRECT_SUM_LIMIT = 64


def harmonic_gap(k0: int, k1: int) -> float:
    """Return H(k1) - H(k0) = sum of 1/(t+1) for t in [k0, k1)."""
    if k1 <= k0:
        return 0.0
    if k1 - k0 <= _DIRECT_SUM_LIMIT:
        return float(np.sum(1.0 / np.arange(k0 + 1, k1 + 1, dtype=np.float64)))
    return float(digamma(k1 + 1.0) - digamma(k0 + 1.0))


def harmonic_gaps(k0: int, k1: np.ndarray) -> Vector:
    """Vectorised `harmonic_gap` with a fixed lower end."""
    k1 = np.asarray(k1, dtype=np.float64)
    out = digamma(k1 + 1.0) - digamma(k0 + 1.0)
    return np.where(k1 > k0, out, 0.0)


def frobenius_norm(A: sp.spmatrix) -> float:
    return float(sparse_norm(A, "fro"))


def parse_generate_spec(s: str) -> tuple[int, int, int, float]:
    """Parse 'seed,m,n,density'."""
    parts = [p.strip() for p in s.split(",")]
    if len(parts) != 4:
        raise ValueError(f"Expected seed,m,n,density, got '{s}'!")
    return int(parts[0]), int(parts[1]), int(parts[2]), float(parts[3])
