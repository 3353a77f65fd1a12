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

"""Separation, covering and membership for hierarchy levels.

Each query builds η, the image-restricted product of the transition monoids
of its languages, with one accepting set per language, and the rating map
ρ(K) = η(K). Then:

* Boolean levels BPol(C): the universal optimal imprint is the union of the
  class-pointed imprint computed by `bpol_fixpoint.bpol_imprint`. L1 is
  separable from L2 iff no value of it meets both F1 and F2; (L0, {L1..Ln})
  is coverable iff no value meets every Fi.
* Polynomial levels Pol(C): the α-pointed imprint for α = η × c. L1 is
  separable from L2 iff no pair (s, T) has s mapped into F1 and T meeting F2.

Membership of L is separation of L from its complement.
"""
import dataclasses
import enum
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from absl import logging
from hiersep import algebra
from hiersep import automata
from hiersep import basis as basis_lib
from hiersep import bpol_fixpoint
from hiersep import metrics
from hiersep import pol_fixpoint
from hiersep import rating
from hiersep import utils


class UnsupportedLevelError(ValueError):
  """The query is not supported at the requested level."""


class Level(enum.Enum):
  """Levels of the Straubing-Thérien and dot-depth hierarchies."""
  ST_HALF = 'st_half'  # Pol(ST0), level 1/2.
  ST1 = 'st1'  # BPol(ST0), the piecewise testable languages.
  POL_AT = 'pol_at'  # Pol(AT).
  ST2 = 'st2'  # BPol(AT), level 2.
  DD_HALF = 'dd_half'  # Pol(DD0), dot-depth 1/2.
  DD1 = 'dd1'  # BPol(DD0), dot-depth one.

  @property
  def basis_name(self) -> str:
    return _BASES[self]

  @property
  def is_boolean(self) -> bool:
    """Whether the level is a BPol level, hence closed under complement."""
    return self in (Level.ST1, Level.ST2, Level.DD1)

  @classmethod
  def parse(cls, name: str) -> 'Level':
    """Accepts the tag in any case, with '-' or '_' separators."""
    key = name.strip().lower().replace('-', '_')
    try:
      return cls(key)
    except ValueError:
      raise ValueError(
          f'Unknown level {name!r}; expected one of '
          f'{[level.value for level in cls]}.') from None


_BASES = {
    Level.ST_HALF: 'st0',
    Level.ST1: 'st0',
    Level.POL_AT: 'at',
    Level.ST2: 'at',
    Level.DD_HALF: 'dd0',
    Level.DD1: 'dd0',
}


class Answer(enum.Enum):
  SEPARABLE = 'Separable'
  INSEPARABLE = 'Inseparable'
  COVERABLE = 'Coverable'
  UNCOVERABLE = 'Uncoverable'
  MEMBER = 'Member'
  NON_MEMBER = 'NonMember'

  @property
  def is_positive(self) -> bool:
    return self in (Answer.SEPARABLE, Answer.COVERABLE, Answer.MEMBER)


@dataclasses.dataclass(frozen=True)
class Sizes:
  """Sizes of the structures a query ran on."""
  monoid: int
  rating_base: int
  classes: int

  def to_json(self) -> Mapping[str, int]:
    return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class Verdict:
  """The answer to a query, with its diagnostics.

  Attributes:
    answer: the decision.
    level: the level the query was asked at.
    sizes: the sizes of M, N and A*/∼C.
    bad_value: for negative answers, a rating value of the optimal imprint
      meeting every accepting set in play, as a set of elements of N.
    bad_labels: shortest witness words of the elements of `bad_value`.
    stats: what the fixpoint engine did; empty for shortcut answers.
    shortcut: whether the answer came from the overlap check alone.
    dumps: JSON renderings of the computed imprints, keyed 'pol'/'bpol'.
  """
  answer: Answer
  level: Level
  sizes: Sizes
  bad_value: Optional[Tuple[int, ...]] = None
  bad_labels: Optional[Tuple[str, ...]] = None
  stats: metrics.FixpointStats = dataclasses.field(
      default=metrics.FixpointStats(), compare=False)
  shortcut: bool = False
  dumps: Mapping[str, Any] = dataclasses.field(
      default_factory=dict, compare=False)

  def to_json(self, trace: bool = False) -> Dict[str, Any]:
    stats = self.stats.compute()
    report = {
        'verdict': self.answer.value,
        'level': self.level.value,
        'sizes': self.sizes.to_json(),
        'iterations': {
            'outer': stats['outer'],
            'frontier': stats['frontier']
        },
    }
    if self.bad_value is not None:
      report['bad_value'] = list(self.bad_value)
      report['bad_labels'] = list(self.bad_labels)
    if trace:
      report['trace'] = list(self.stats.trace)
      report['iterations']['inner'] = stats['inner']
    return report


@dataclasses.dataclass(frozen=True)
class JointMorphism:
  """η recognizing several languages, with the accepting set of each."""
  eta: algebra.Morphism
  accepting: Tuple[FrozenSet[int], ...]

  def masks(self) -> List[int]:
    return [utils.mask_of(f) for f in self.accepting]


def joint_morphism(dfas: Sequence[automata.Dfa],
                   max_size: int = algebra.DEFAULT_MAX_MONOID
                  ) -> JointMorphism:
  """Returns the image-restricted product of the transition monoids."""
  if not dfas:
    raise ValueError('At least one language is required.')
  recognized = [algebra.transition_monoid(d, max_size) for d in dfas]
  eta = recognized[0].morphism
  projections = [tuple(range(eta.size))]
  for r in recognized[1:]:
    p = algebra.product(eta, r.morphism, max_size)
    projections = [tuple(proj[x] for x in p.first) for proj in projections]
    projections.append(p.second)
    eta = p
  accepting = tuple(
      frozenset(s for s, x in enumerate(proj) if x in r.accepting)
      for proj, r in zip(projections, recognized))
  return JointMorphism(eta, accepting)


def _resolve_basis(level: Level, alphabet: Sequence[str],
                   override: Optional[basis_lib.Basis],
                   guards: utils.Guards) -> basis_lib.Basis:
  if override is not None:
    if override.alphabet != tuple(alphabet):
      raise automata.AlphabetMismatchError(
          f'Basis {override.name} is over {override.alphabet}, expected '
          f'{tuple(alphabet)}.')
    return override
  return basis_lib.builtin(level.basis_name, alphabet, guards.max_monoid)


def _meeting_all(value: rating.RatingValue,
                 masks: Sequence[int]) -> Optional[Tuple[int, ...]]:
  """Shrinks `value` to one element of each mask, if it meets all of them."""
  picked = set()
  for mask in masks:
    common = value & mask
    if not common:
      return None
    picked.add(utils.bits_of(common)[0])
  return tuple(sorted(picked))


def _labels(eta: algebra.Morphism, elements: Sequence[int]) -> Tuple[str, ...]:
  return tuple(eta.target.label(x) for x in elements)


def _shortcut_sizes(level: Level, eta: algebra.Morphism, b: basis_lib.Basis,
                    guards: utils.Guards) -> Sizes:
  """The sizes the full computation at `level` would report."""
  monoid = eta.size
  if not level.is_boolean:
    monoid = basis_lib.compatible_morphism(eta, b, guards.max_monoid).size
  return Sizes(monoid, eta.size, b.num_classes)


def _overlap(dfas: Sequence[automata.Dfa]) -> Optional[automata.Word]:
  common = dfas[0]
  for d in dfas[1:]:
    common = automata.intersect(common, d)
  return automata.shortest_word(common)


def _bpol_bad_value(
    joint: JointMorphism, b: basis_lib.Basis, rho: rating.RatingMap,
    guards: utils.Guards, deadline: utils.Deadline, pretrim: bool,
    dump: bool
) -> Tuple[Optional[Tuple[int, ...]], metrics.FixpointStats, Dict[str, Any]]:
  p = bpol_fixpoint.bpol_imprint(
      b, rho, guards=guards, deadline=deadline, pretrim=pretrim)
  masks = joint.masks()
  bad = None
  for value in sorted(p.universal().maxima):
    bad = _meeting_all(value, masks)
    if bad is not None:
      break
  dumps = {'bpol': p.to_json(b)} if dump else {}
  return bad, p.stats, dumps


def separation(l1: automata.Dfa,
               l2: automata.Dfa,
               level: Level,
               *,
               guards: Optional[utils.Guards] = None,
               basis: Optional[basis_lib.Basis] = None,
               shortcut: bool = True,
               pretrim: bool = False,
               dump: bool = False) -> Verdict:
  """Decides whether some language of `level` contains L1 and misses L2.

  Args:
    l1: the language to include.
    l2: the language to exclude.
    level: the hierarchy level.
    guards: resource limits.
    basis: replaces the level's basis (e.g. a custom basis), keeping the
      operator (Pol or BPol) of `level`.
    shortcut: answer Inseparable as soon as L1 ∩ L2 ≠ ∅ without running the
      fixpoints.
    pretrim: forwarded to `bpol_fixpoint.bpol_imprint`.
    dump: keep JSON renderings of the computed imprints in the verdict.

  Returns:
    The verdict.

  Raises:
    automata.AlphabetMismatchError: if the alphabets differ.
    utils.GuardError: if a resource limit is exceeded.
  """
  guards = guards or utils.Guards()
  deadline = guards.deadline()
  if l1.alphabet != l2.alphabet:
    raise automata.AlphabetMismatchError(
        f'Alphabets differ: {l1.alphabet} vs {l2.alphabet}.')
  b = _resolve_basis(level, l1.alphabet, basis, guards)
  joint = joint_morphism([l1, l2], guards.max_monoid)
  eta = joint.eta

  if shortcut:
    word = _overlap([l1, l2])
    if word is not None:
      x = eta(word)
      logging.info('Languages overlap on %r: Inseparable at %s.', word,
                   level.value)
      return Verdict(
          Answer.INSEPARABLE,
          level,
          _shortcut_sizes(level, eta, b, guards),
          bad_value=(x,),
          bad_labels=_labels(eta, (x,)),
          shortcut=True)

  rho = rating.RatingMap(eta, guards.max_n)
  f1, f2 = joint.masks()
  dumps = {}
  if level.is_boolean:
    bad, stats, dumps = _bpol_bad_value(joint, b, rho, guards, deadline,
                                        pretrim, dump)
    sizes = Sizes(eta.size, rho.n, b.num_classes)
  else:
    alpha = basis_lib.compatible_morphism(eta, b, guards.max_monoid)
    p = pol_fixpoint.pol_saturate(alpha, rho, guards=guards, deadline=deadline)
    bad = None
    for s, value in p.maximal_pairs():
      x = alpha.eta_of(s)
      if f1 >> x & 1 and value & f2:
        bad = tuple(sorted({x, utils.bits_of(value & f2)[0]}))
        break
    stats = p.stats
    sizes = Sizes(alpha.size, rho.n, b.num_classes)
    if dump:
      dumps = {'pol': p.to_json(alpha)}

  answer = Answer.SEPARABLE if bad is None else Answer.INSEPARABLE
  logging.info('Separation at %s (basis %s): %s.', level.value, b.name,
               answer.value)
  return Verdict(
      answer,
      level,
      sizes,
      bad_value=bad,
      bad_labels=None if bad is None else _labels(eta, bad),
      stats=stats,
      dumps=dumps)


def covering(l0: automata.Dfa,
             langs: Sequence[automata.Dfa],
             level: Level,
             *,
             guards: Optional[utils.Guards] = None,
             basis: Optional[basis_lib.Basis] = None,
             shortcut: bool = True,
             pretrim: bool = False,
             dump: bool = False) -> Verdict:
  """Decides whether L0 has a cover in `level` whose pieces each miss some Li.

  Raises:
    UnsupportedLevelError: if `level` is not a Boolean level.
    automata.AlphabetMismatchError: if the alphabets differ.
    utils.GuardError: if a resource limit is exceeded.
  """
  if not level.is_boolean:
    raise UnsupportedLevelError(
        f'Covering is only decided at Boolean levels, not at {level.value}.')
  guards = guards or utils.Guards()
  deadline = guards.deadline()
  dfas = [l0] + list(langs)
  for d in dfas[1:]:
    if d.alphabet != l0.alphabet:
      raise automata.AlphabetMismatchError(
          f'Alphabets differ: {l0.alphabet} vs {d.alphabet}.')
  b = _resolve_basis(level, l0.alphabet, basis, guards)
  joint = joint_morphism(dfas, guards.max_monoid)
  eta = joint.eta

  if shortcut:
    word = _overlap(dfas)
    if word is not None:
      x = eta(word)
      logging.info('Every language contains %r: Uncoverable at %s.', word,
                   level.value)
      return Verdict(
          Answer.UNCOVERABLE,
          level,
          _shortcut_sizes(level, eta, b, guards),
          bad_value=(x,),
          bad_labels=_labels(eta, (x,)),
          shortcut=True)

  rho = rating.RatingMap(eta, guards.max_n)
  bad, stats, dumps = _bpol_bad_value(joint, b, rho, guards, deadline, pretrim,
                                      dump)
  answer = Answer.COVERABLE if bad is None else Answer.UNCOVERABLE
  logging.info('Covering at %s with %d languages: %s.', level.value,
               len(langs), answer.value)
  return Verdict(
      answer,
      level,
      Sizes(eta.size, rho.n, b.num_classes),
      bad_value=bad,
      bad_labels=None if bad is None else _labels(eta, bad),
      stats=stats,
      dumps=dumps)


def membership(l: automata.Dfa, level: Level, **kwargs) -> Verdict:
  """Decides whether L belongs to `level`.

  Takes the keyword arguments of `separation`.
  """
  verdict = separation(l, automata.complement(l), level, **kwargs)
  answer = (
      Answer.MEMBER
      if verdict.answer == Answer.SEPARABLE else Answer.NON_MEMBER)
  return dataclasses.replace(verdict, answer=answer)


@dataclasses.dataclass(frozen=True)
class OptimalImprint:
  """I_D[L, ρ] for ρ the rating map of the transition morphism of L."""
  level: Level
  eta: algebra.Morphism
  imprint: rating.Downset
  sizes: Sizes
  stats: metrics.FixpointStats = dataclasses.field(
      default=metrics.FixpointStats(), compare=False)
  dumps: Mapping[str, Any] = dataclasses.field(
      default_factory=dict, compare=False)

  def to_json(self, trace: bool = False) -> Dict[str, Any]:
    stats = self.stats.compute()
    report = {
        'imprint': self.imprint.to_json(),
        'imprint_labels': [
            list(_labels(self.eta, m)) for m in self.imprint.sorted_maxima()
        ],
        'level': self.level.value,
        'sizes': self.sizes.to_json(),
        'iterations': {
            'outer': stats['outer'],
            'frontier': stats['frontier']
        },
    }
    if trace:
      report['trace'] = list(self.stats.trace)
      report['iterations']['inner'] = stats['inner']
    return report


def optimal_imprint(l: automata.Dfa,
                    level: Level,
                    *,
                    guards: Optional[utils.Guards] = None,
                    basis: Optional[basis_lib.Basis] = None,
                    pretrim: bool = False,
                    dump: bool = False) -> OptimalImprint:
  """Computes the optimal imprint of L at `level`.

  At Boolean levels the class-pointed imprint only gives the imprints of
  unions of ∼C-classes, so L must be one.

  Raises:
    UnsupportedLevelError: if `level` is Boolean and L is not a union of
      ∼C-classes.
  """
  guards = guards or utils.Guards()
  deadline = guards.deadline()
  b = _resolve_basis(level, l.alphabet, basis, guards)
  recognized = algebra.transition_monoid(l, guards.max_monoid)
  eta = recognized.morphism
  rho = rating.RatingMap(eta, guards.max_n)
  dumps = {}
  if level.is_boolean:
    reach = basis_lib.reach_pairs(b, eta, guards.max_monoid)
    classes = []
    for d in b.classes:
      image = reach.class_image(d)
      if image <= recognized.accepting:
        classes.append(d)
      elif image & recognized.accepting:
        raise UnsupportedLevelError(
            f'The language is not a union of {b.name} classes; its '
            f'{level.value}-optimal imprint cannot be read from the '
            'class-pointed imprint.')
    p = bpol_fixpoint.bpol_imprint(
        b, rho, guards=guards, deadline=deadline, pretrim=pretrim)
    imprint = rating.Downset()
    for d in classes:
      imprint = imprint.union(p.at(d))
    sizes = Sizes(eta.size, rho.n, b.num_classes)
    stats = p.stats
    if dump:
      dumps['bpol'] = p.to_json(b)
  else:
    alpha = basis_lib.compatible_morphism(eta, b, guards.max_monoid)
    p = pol_fixpoint.pol_saturate(alpha, rho, guards=guards, deadline=deadline)
    imprint = p.image_of(
        s for s in range(alpha.size) if alpha.eta_of(s) in recognized.accepting)
    sizes = Sizes(alpha.size, rho.n, b.num_classes)
    stats = p.stats
    if dump:
      dumps['pol'] = p.to_json(alpha)
  logging.info('Optimal %s imprint: %d maximal values.', level.value,
               len(imprint.maxima))
  return OptimalImprint(level, eta, imprint, sizes, stats, dumps)
