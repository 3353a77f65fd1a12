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

"""General utility functions and configuration for hiersep."""
import dataclasses
import json
import time
from typing import Any, Iterable, Optional, Tuple

from absl import logging


# -----------------------------------------------------------------------------
# Configurations
# -----------------------------------------------------------------------------


@dataclasses.dataclass
class Guards:
  """Resource limits shared by every engine.

  Exceeding any of them raises `GuardError`; nothing is silently truncated.
  """
  # Largest finite monoid built by any construction (transition monoids,
  # products, class morphisms).
  max_monoid: int = 512
  # Largest |N| for a rating set R = 2^N.
  max_n: int = 16
  # Largest number of (class, rating value, antichain) triples kept by one
  # R[S] computation.
  max_frontier: int = 200000
  # Wall clock budget of a single query, in seconds.
  max_wall_seconds: float = 300.0
  # Largest |M| * 2^|N| accepted by the Pol(C) saturation.
  max_pol_work: int = 2**24
  # Largest monoid of truncated subword profiles built by the k-subword
  # oracle.
  max_subword_profiles: int = 20000

  def __post_init__(self):
    for field in dataclasses.fields(self):
      value = getattr(self, field.name)
      if value <= 0:
        raise ValueError(
            f'`Guards.{field.name}` must be positive. Got {value}.')

  def deadline(self) -> 'Deadline':
    return Deadline(self.max_wall_seconds)


class GuardError(RuntimeError):
  """A configured resource limit was exceeded."""

  def __init__(self, guard: str, message: str):
    super().__init__(f'{guard}: {message}')
    self.guard = guard


def check_guard(guard: str, value: int, limit: int, what: str):
  """Raises a `GuardError` named `guard` when `value` exceeds `limit`."""
  if value > limit:
    raise GuardError(guard, f'{what} is {value}, limit is {limit}.')


class Deadline:
  """Wall clock budget checked from inside fixpoint loops."""

  def __init__(self, seconds: Optional[float]):
    self._seconds = seconds
    self._start = time.monotonic()

  def elapsed(self) -> float:
    return time.monotonic() - self._start

  def check(self, where: str):
    if self._seconds is not None and self.elapsed() > self._seconds:
      raise GuardError(
          'max_wall_seconds',
          f'{where} still running after {self.elapsed():.1f}s '
          f'(limit {self._seconds}s).')


NO_DEADLINE = Deadline(None)

# -----------------------------------------------------------------------------
# Bitsets.
# -----------------------------------------------------------------------------


def bits_of(mask: int) -> Tuple[int, ...]:
  """Returns the sorted indices of the set bits of `mask`."""
  out = []
  index = 0
  while mask:
    if mask & 1:
      out.append(index)
    mask >>= 1
    index += 1
  return tuple(out)


def mask_of(indices: Iterable[int]) -> int:
  """Returns the bitset holding `indices`."""
  mask = 0
  for i in indices:
    if i < 0:
      raise ValueError(f'Bit index must be non-negative, got {i}.')
    mask |= 1 << i
  return mask


def submasks(mask: int) -> Iterable[int]:
  """Yields every submask of `mask`, including 0 and `mask` itself."""
  sub = mask
  while True:
    yield sub
    if sub == 0:
      return
    sub = (sub - 1) & mask


# -----------------------------------------------------------------------------
# JSON helpers.
# -----------------------------------------------------------------------------


def canonical_json(value: Any) -> str:
  """Serializes `value` with sorted keys so equal inputs give equal bytes."""
  return json.dumps(value, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def write_json(path: str, value: Any):
  with open(path, 'w') as f:
    f.write(canonical_json(value))
  logging.info('Wrote %s', path)


def read_json(path: str) -> Any:
  with open(path) as f:
    return json.load(f)
