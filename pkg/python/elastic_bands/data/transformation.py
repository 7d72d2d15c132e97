import logging

import numpy as np

from ..data.series import Dataset, TimeSeries

logger = logging.getLogger(__name__)

# Below this population deviation a series is treated as constant.
CONSTANT_STD = 1e-12


def znormalize(s: TimeSeries) -> TimeSeries:
    """
    Rescale a series to zero mean and unit population standard deviation.

    Args:
        s (TimeSeries): Input series.

    Returns:
        TimeSeries: Same label and id, normalized samples. Constant series map to all zeros.
    """
    values = s.values
    std = float(np.std(values))
    if std < CONSTANT_STD:
        return s.with_values(np.zeros_like(values))
    return s.with_values((values - np.mean(values)) / std)


def normalize_dataset(dataset: Dataset) -> Dataset:
    """
    Apply ``znormalize`` to every series of a dataset.

    Args:
        dataset (Dataset): Input dataset.

    Returns:
        Dataset: A new dataset flagged as normalized.
    """
    if dataset.normalized:
        return dataset
    constant = 0
    series = []
    for s in dataset.series:
        if float(np.std(s.values)) < CONSTANT_STD:
            constant += 1
        series.append(znormalize(s))
    if constant:
        logger.warning(f"{constant} constant series in {dataset.name} normalized to zeros")
    return Dataset(
        name=dataset.name,
        series=tuple(series),
        source_path=dataset.source_path,
        normalized=True,
    )
