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

r"""Tool to write a seeded random corpus of query files for batch runs.

Every query asks for the membership of one random regular language at one
level; the languages come from `hiersep.corpus` (small syntax trees, small
syntactic monoids).

Example usage:

python -m hiersep.scripts.make_corpus \
 --gin.make_corpus.output_dir=\"/tmp/corpus\"\
 --gin.make_corpus.count=50\
 --gin.make_corpus.levels=\"['st_half', 'st1']\"\
 --logtostderr

python -m hiersep.cli --batch=/tmp/corpus --batch_workers=8
"""
import os
from typing import List, Sequence

from absl import logging
from hiersep import corpus as corpus_lib
from hiersep import decide
from hiersep import utils


def make_corpus(output_dir: str,
                count: int = 50,
                seed: int = 0,
                alphabet: Sequence[str] = ('a', 'b'),
                max_regex_size: int = 8,
                max_monoid: int = 16,
                levels: Sequence[str] = ('st_half', 'st1')) -> List[str]:
  """Writes `count` languages times `levels` membership queries.

  Args:
    output_dir: directory of the query files, created if needed.
    count: number of distinct languages.
    seed: seed of the random generator.
    alphabet: the letters.
    max_regex_size: largest syntax tree of a drawn regex.
    max_monoid: largest syntactic monoid of a drawn language.
    levels: the levels every language is queried at.

  Returns:
    The written paths.
  """
  levels = [decide.Level.parse(level) for level in levels]
  os.makedirs(output_dir, exist_ok=True)
  corpus = corpus_lib.regex_corpus(seed, count, tuple(alphabet),
                                   max_regex_size, max_monoid)
  paths = []
  for i, (regex, _) in enumerate(corpus):
    for level in levels:
      path = os.path.join(output_dir, f'{i:04d}_{level.value}.json')
      utils.write_json(
          path, {
              'alphabet': list(alphabet),
              'languages': {
                  'L': {
                      'regex': regex
                  }
              },
              'task': 'member',
              'level': level.value,
              'args': ['L'],
          })
      paths.append(path)
  logging.info('Wrote %d queries to %s.', len(paths), output_dir)
  return paths


if __name__ == '__main__':
  # pylint:disable=g-import-not-at-top
  from absl import flags
  import gin
  from hiersep import gin_utils
  # pylint:enable=g-import-not-at-top

  FLAGS = flags.FLAGS

  flags.DEFINE_multi_string(
      'gin_file',
      default=None,
      help='Path to gin configuration file. Multiple paths may be passed and '
      'will be imported in the given order, with later configurations '
      'overriding earlier ones.')

  flags.DEFINE_multi_string(
      'gin_bindings', default=[], help='Individual gin bindings')

  flags.DEFINE_list(
      'gin_search_paths',
      default=['hiersep/configs'],
      help='Comma-separated list of gin config path prefixes to be prepended '
      'to suffixes given via `--gin_file`. Only the first prefix that '
      'produces a valid path for each suffix will be used.')

  def main(_):
    """True main function."""
    make_corpus_using_gin = gin.configurable(make_corpus)

    gin_utils.parse_gin_flags(FLAGS.gin_search_paths, FLAGS.gin_file,
                              FLAGS.gin_bindings)
    make_corpus_using_gin()

  gin_utils.run(main)
