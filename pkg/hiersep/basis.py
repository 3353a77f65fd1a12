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

"""Finite quotienting Boolean algebras, represented by class morphisms.

A basis C is represented by a surjective morphism c: A* → M_C whose elements
are the ∼C-classes; the languages of C are the unions of classes. Built-in
bases:

* `st0`: {∅, A*}, the trivial congruence.
* `dd0`: {∅, {ε}, A⁺, A*}, two classes.
* `at`:  the alphabet testable languages, one class per set of letters.

Custom bases come from any morphism (e.g. a monoid dump file); restricting it
to its image keeps every class non-empty.
"""
import dataclasses
from typing import FrozenSet, Sequence, Tuple

from absl import logging
from hiersep import algebra
from hiersep import automata
from hiersep import utils

BUILTIN_NAMES = ('st0', 'dd0', 'at')
CUSTOM_PREFIX = 'custom:'


@dataclasses.dataclass(frozen=True, eq=False)
class Basis:
  """A basis given by its class morphism onto M_C."""
  name: str
  class_morphism: algebra.Morphism

  @property
  def alphabet(self) -> Tuple[str, ...]:
    return self.class_morphism.alphabet

  @property
  def monoid(self) -> algebra.FiniteMonoid:
    return self.class_morphism.target

  @property
  def num_classes(self) -> int:
    return self.monoid.size

  @property
  def classes(self) -> range:
    return range(self.num_classes)

  def class_of(self, word: automata.Word) -> int:
    """Returns ⌈word⌉."""
    return self.class_morphism(word)

  def witness(self, cls: int) -> automata.Word:
    """Returns a shortest word of class `cls`."""
    return self.monoid.labels[cls]

  def __repr__(self):
    return f'Basis({self.name!r}, classes={self.num_classes})'


def builtin(name: str,
            alphabet: Sequence[str],
            max_size: int = algebra.DEFAULT_MAX_MONOID) -> Basis:
  """Returns the built-in basis `name` over `alphabet`.

  Raises:
    ValueError: if `name` is not one of `BUILTIN_NAMES`.
  """
  alphabet = tuple(alphabet)
  if name == 'st0':
    morphism, _ = algebra.generate_monoid(alphabet, (), [()] * len(alphabet),
                                          lambda u, v: (), max_size, 'st0')
  elif name == 'dd0':
    # 0 is the class of ε, 1 the class of A⁺.
    morphism, _ = algebra.generate_monoid(alphabet, 0, [1] * len(alphabet),
                                          max, max_size, 'dd0')
  elif name == 'at':
    morphism, _ = algebra.generate_monoid(
        alphabet, frozenset(), [frozenset(a) for a in alphabet],
        frozenset.union, max_size, 'at')
  else:
    raise ValueError(
        f'Unknown basis {name!r}; expected one of {BUILTIN_NAMES} or '
        f'{CUSTOM_PREFIX}<monoid.json>.')
  return Basis(name, morphism)


def from_morphism(m: algebra.Morphism,
                  name: str = 'custom',
                  max_size: int = algebra.DEFAULT_MAX_MONOID) -> Basis:
  """Returns the basis whose classes are the elements of `m`'s image."""
  table = m.target.table
  morphism, _ = algebra.generate_monoid(m.alphabet, m.target.identity,
                                        m.letter_images,
                                        lambda x, y: int(table[x, y]),
                                        max_size, name)
  return Basis(name, morphism)


def from_json(path: str,
              alphabet: Sequence[str],
              max_size: int = algebra.DEFAULT_MAX_MONOID) -> Basis:
  """Reads a custom basis from a monoid dump with letter images."""
  morphism = algebra.morphism_from_json(utils.read_json(path))
  if morphism.alphabet != tuple(alphabet):
    raise automata.AlphabetMismatchError(
        f'Basis {path} is over {morphism.alphabet}, expected '
        f'{tuple(alphabet)}.')
  logging.info('Loaded custom basis from %s (%d elements).', path,
               morphism.size)
  return from_morphism(morphism, CUSTOM_PREFIX + path, max_size)


def parse_basis_selector(selector: str,
                         alphabet: Sequence[str],
                         max_size: int = algebra.DEFAULT_MAX_MONOID) -> Basis:
  """Resolves `st0`, `dd0`, `at` or `custom:<monoid.json>`."""
  if selector.startswith(CUSTOM_PREFIX):
    return from_json(selector[len(CUSTOM_PREFIX):], alphabet, max_size)
  return builtin(selector, alphabet, max_size)


@dataclasses.dataclass(frozen=True, eq=False)
class CompatibleMorphism(algebra.ProductMorphism):
  """A C-compatible morphism α = η × c.

  `first` holds the η-component and `second` the class ⌈s⌉ of every element.
  """
  basis: Basis
  eta: algebra.Morphism

  def class_of(self, s: int) -> int:
    return self.second[s]

  def eta_of(self, s: int) -> int:
    return self.first[s]


def compatible_morphism(
    eta: algebra.Morphism,
    b: Basis,
    max_size: int = algebra.DEFAULT_MAX_MONOID) -> CompatibleMorphism:
  """Returns a C-compatible morphism recognizing every language `eta` does."""
  p = algebra.product(eta, b.class_morphism, max_size)
  return CompatibleMorphism(p.alphabet, p.target, p.letter_images, p.first,
                            p.second, b, eta)


@dataclasses.dataclass(frozen=True)
class ReachPairs:
  """The pairs (c(w), η(w)) over all words w."""
  pairs: FrozenSet[Tuple[int, int]]
  num_classes: int

  def class_image(self, cls: int) -> FrozenSet[int]:
    """Returns η(D) for the class D = `cls`."""
    return frozenset(n for d, n in self.pairs if d == cls)

  def class_image_mask(self, cls: int) -> int:
    """Returns η(D) as a rating value (bitset over the target of η)."""
    return utils.mask_of(self.class_image(cls))


def reach_pairs(b: Basis,
                eta: algebra.Morphism,
                max_size: int = algebra.DEFAULT_MAX_MONOID) -> ReachPairs:
  """Returns the image of the product morphism c × η as a set of pairs."""
  p = algebra.product(b.class_morphism, eta, max_size)
  return ReachPairs(frozenset(zip(p.first, p.second)), b.num_classes)
