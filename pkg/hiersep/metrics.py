# Copyright 2026 The hiersep Authors.
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

"""hiersep diagnostics.

Defines the small value objects the fixpoint engines report: counters, maxima,
durations, and the `FixpointStats` collection attached to every engine result.
Metric objects are immutable; counters, maxima and `FixpointStats` combine
with `merge`.
"""

import dataclasses
from typing import Mapping, Optional, Tuple, Union

Scalar = Union[int, float]


@dataclasses.dataclass(frozen=True)
class Sum:
  """Computes the sum of reported values."""

  total: Scalar = 0

  @classmethod
  def from_value(cls, value: Scalar) -> 'Sum':
    return cls(total=value)

  def merge(self, other: 'Sum') -> 'Sum':
    return type(self)(total=self.total + other.total)

  def compute(self) -> Scalar:
    return self.total


@dataclasses.dataclass(frozen=True)
class Max:
  """Computes the largest reported value."""

  value: Scalar = 0

  @classmethod
  def from_value(cls, value: Scalar) -> 'Max':
    return cls(value=value)

  def merge(self, other: 'Max') -> 'Max':
    return type(self)(value=max(self.value, other.value))

  def compute(self) -> Scalar:
    return self.value


@dataclasses.dataclass(frozen=True)
class Time:
  """Wall clock duration in seconds.

  Duration must be set with `replace_duration` by the caller that measured it.
  """
  duration: Optional[float] = None

  def replace_duration(self, duration: float) -> 'Time':
    return dataclasses.replace(self, duration=duration)

  def compute(self) -> float:
    if self.duration is None:
      raise ValueError(
          '`Time` `duration` must be set by calling `replace_duration` before '
          'computing.')
    return self.duration


@dataclasses.dataclass(frozen=True)
class FixpointStats:
  """What one engine run did.

  Attributes:
    iterations: outer iterations (greatest fixpoint) or processed worklist
      items (least fixpoint).
    frontier: largest number of R[S] triples seen in one inner computation.
    inner_iterations: worklist items processed by all inner computations.
    trace: number of pairs kept, initially and after every outer iteration.
  """
  iterations: Sum = Sum()
  frontier: Max = Max()
  inner_iterations: Sum = Sum()
  trace: Tuple[int, ...] = ()

  def merge(self, other: 'FixpointStats') -> 'FixpointStats':
    return FixpointStats(
        iterations=self.iterations.merge(other.iterations),
        frontier=self.frontier.merge(other.frontier),
        inner_iterations=self.inner_iterations.merge(other.inner_iterations),
        trace=self.trace + other.trace)

  def compute(self) -> Mapping[str, Scalar]:
    return {
        'outer': self.iterations.compute(),
        'frontier': self.frontier.compute(),
        'inner': self.inner_iterations.compute(),
    }
