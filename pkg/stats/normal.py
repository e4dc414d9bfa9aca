import numpy as np
from scipy.special import ndtr


def normal_cdf(u):
    """Standard normal CDF. Accepts a scalar or an array."""
    result = ndtr(np.asarray(u, dtype=np.float64))
    if np.ndim(result) == 0:
        return float(result)
    return result
