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

"""Rating maps into the idempotent semiring R = 2^N.

A rating value is a subset of the target N of a morphism η: A* → N, stored as
an int bitset. Addition is union, multiplication is the elementwise product
`{xy | x ∈ r, y ∈ s}`, and the canonical order `r ≤ s` (r + s = s) is
inclusion. The rating map of η sends a language K to `η(K)`; it is nice and
multiplicative by construction.

Downward closed sets of rating values are kept as antichains of their maximal
elements (`Downset`).
"""
import dataclasses
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from hiersep import algebra
from hiersep import automata
from hiersep import utils

RatingValue = int


def leq(r: RatingValue, s: RatingValue) -> bool:
  """The canonical order: r ≤ s iff r + s = s."""
  return r | s == s


def maximal(values: Iterable[RatingValue]) -> FrozenSet[RatingValue]:
  """Returns the maximal elements of `values`."""
  kept: List[RatingValue] = []
  for v in sorted(set(values), key=lambda v: (-bin(v).count('1'), v)):
    if not any(leq(v, k) for k in kept):
      kept.append(v)
  return frozenset(kept)


@dataclasses.dataclass(frozen=True)
class Downset:
  """A downward closed set of rating values, stored by its maximal elements.

  Values are persistent: every operation returns a new `Downset`.
  """
  maxima: FrozenSet[RatingValue] = frozenset()

  @classmethod
  def from_values(cls, values: Iterable[RatingValue]) -> 'Downset':
    return cls(maximal(values))

  def __contains__(self, r: RatingValue) -> bool:
    return any(leq(r, m) for m in self.maxima)

  def contains(self, r: RatingValue) -> bool:
    return r in self

  def __bool__(self) -> bool:
    return bool(self.maxima)

  def materialize(self) -> FrozenSet[RatingValue]:
    """Returns every member; exponential in the size of the maxima."""
    members = set()
    for m in self.maxima:
      members.update(utils.submasks(m))
    return frozenset(members)

  def add(self, r: RatingValue) -> 'Downset':
    if r in self:
      return self
    return Downset(frozenset(m for m in self.maxima if not leq(m, r)) | {r})

  def union(self, other: 'Downset') -> 'Downset':
    return Downset.from_values(self.maxima | other.maxima)

  def intersection(self, other: 'Downset') -> 'Downset':
    return Downset.from_values(
        a & b for a in self.maxima for b in other.maxima)

  def issubset(self, other: 'Downset') -> bool:
    return all(m in other for m in self.maxima)

  def __le__(self, other: 'Downset') -> bool:
    return self.issubset(other)

  def sorted_maxima(self) -> List[Tuple[int, ...]]:
    return sorted(utils.bits_of(m) for m in self.maxima)

  def to_json(self) -> List[List[int]]:
    return [list(m) for m in self.sorted_maxima()]


def downclose(values: Iterable[RatingValue]) -> Downset:
  """Returns ↓values."""
  return Downset.from_values(values)


class RatingMap:
  """The nice multiplicative rating map ρ(K) = η(K) into R = 2^N."""

  def __init__(self, eta: algebra.Morphism,
               max_n: int = utils.Guards().max_n):
    utils.check_guard('max_n', eta.size, max_n, '|N| of the rating map')
    self.eta = eta
    self.n = eta.size
    self._products: Dict[Tuple[int, int], int] = {}
    table = eta.target.table
    self._element_masks = [[1 << int(table[x, y])
                            for y in range(self.n)]
                           for x in range(self.n)]

  @property
  def alphabet(self) -> Tuple[str, ...]:
    return self.eta.alphabet

  @property
  def zero(self) -> RatingValue:
    return 0

  @property
  def one(self) -> RatingValue:
    return 1 << self.eta.target.identity

  @property
  def full(self) -> RatingValue:
    return (1 << self.n) - 1

  def add(self, r: RatingValue, s: RatingValue) -> RatingValue:
    return r | s

  def multiply(self, r: RatingValue, s: RatingValue) -> RatingValue:
    key = (r, s)
    product = self._products.get(key)
    if product is None:
      product = 0
      ys = utils.bits_of(s)
      for x in utils.bits_of(r):
        row = self._element_masks[x]
        for y in ys:
          product |= row[y]
      self._products[key] = product
    return product

  def power(self, r: RatingValue, k: int) -> RatingValue:
    result = self.one
    for _ in range(k):
      result = self.multiply(result, r)
    return result

  def is_idempotent(self, r: RatingValue) -> bool:
    return self.multiply(r, r) == r

  def idempotent_power(self, r: RatingValue) -> RatingValue:
    power = r
    while not self.is_idempotent(power):
      power = self.multiply(power, r)
    return power

  def of_word(self, word: automata.Word) -> RatingValue:
    """ρ(w) = {η(w)}."""
    return 1 << self.eta(word)

  def of_language(self, d: automata.Dfa) -> RatingValue:
    """ρ(L(d)) = η(L(d))."""
    return utils.mask_of(algebra.language_image(self.eta, d))

  def elements(self, r: RatingValue) -> Tuple[int, ...]:
    return utils.bits_of(r)

  def labels(self, r: RatingValue) -> List[str]:
    return [self.eta.target.label(x) for x in utils.bits_of(r)]

  # Products of antichains of rating values, used by the BPol engine.

  def multiply_sets(self, us: Iterable[RatingValue],
                    vs: Iterable[RatingValue]) -> FrozenSet[RatingValue]:
    """Returns the maximal elements of {uv | u ∈ us, v ∈ vs}."""
    vs = tuple(vs)
    return maximal(self.multiply(u, v) for u in us for v in vs)

  def idempotent_power_set(
      self, us: FrozenSet[RatingValue]) -> FrozenSet[RatingValue]:
    """Returns the idempotent power of ↓us in 2^R, by its maximal elements."""
    power = maximal(us)
    while True:
      square = self.multiply_sets(power, power)
      if square == power:
        return power
      power = self.multiply_sets(power, us)


def imprint(rho: RatingMap, cover: Sequence[automata.Dfa]) -> Downset:
  """Returns the ρ-imprint ↓{ρ(K) | K ∈ cover} of a cover."""
  return downclose(rho.of_language(d) for d in cover)
