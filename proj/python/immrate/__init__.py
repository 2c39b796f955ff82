# Copyright 2026 The immrate Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Coincidence rates of partially distinguishable bosons and fermions."""

from fractions import Fraction

from immrate._immrate import (
    ConfigError,
    DomainError,
    Error,
    NumericalError,
    PreconditionError,
    SizeLimitError,
    blocks,
    delay_matrix,
    determinant,
    distribution,
    dominates,
    gamas_vanishes,
    haar_unitary,
    immanant,
    partitions_of,
    permanent,
    rate,
    rate_fully_distinguishable,
    sample,
    standard_tableau_count,
    submatrix,
    witness_partition,
    witness_probability,
)
from immrate._immrate import delay_partition_probability as _delay_partition_probability


def delay_partition_probability(mu, bins):
    """Exact probability that uniform arrivals in `bins` bins give delay partition `mu`."""
    return Fraction(*_delay_partition_probability(list(mu), bins))


__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "NumericalError",
    "PreconditionError",
    "SizeLimitError",
    "blocks",
    "delay_matrix",
    "delay_partition_probability",
    "determinant",
    "distribution",
    "dominates",
    "gamas_vanishes",
    "haar_unitary",
    "immanant",
    "partitions_of",
    "permanent",
    "rate",
    "rate_fully_distinguishable",
    "sample",
    "standard_tableau_count",
    "submatrix",
    "witness_partition",
    "witness_probability",
]
