import numpy as np

from elastic_bands.data.series import Dataset


def random_dataset(
    rng: np.random.Generator, size: int, length: int, name: str = "random", classes: int = 2
) -> Dataset:
    values = rng.uniform(-1.0, 1.0, size=(size, length))
    labels = [int(k % classes) + 1 for k in range(size)]
    return Dataset.from_arrays(name, values, labels)


def random_walks(
    rng: np.random.Generator, size: int, length: int, name: str = "walks"
) -> Dataset:
    values = np.cumsum(rng.normal(size=(size, length)), axis=1)
    return Dataset.from_arrays(name, values, [1 + (k % 3) for k in range(size)])


def naive_dtw(q: list[float], c: list[float], squared: bool = True) -> float:
    """Full-matrix DTW recurrence without a band or a final root."""
    n, m = len(q), len(c)
    inf = float("inf")
    d = [[inf] * (m + 1) for _ in range(n + 1)]
    d[0][0] = 0.0
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            diff = q[i - 1] - c[j - 1]
            cost = diff * diff if squared else abs(diff)
            d[i][j] = cost + min(d[i - 1][j - 1], d[i - 1][j], d[i][j - 1])
    return d[n][m]


def naive_lcs(q: list[float], c: list[float], epsilon: float) -> int:
    """Full-matrix LCS under absolute matching ``|a - b| <= epsilon``."""
    n, m = len(q), len(c)
    table = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            if abs(q[i - 1] - c[j - 1]) <= epsilon:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    return table[n][m]
