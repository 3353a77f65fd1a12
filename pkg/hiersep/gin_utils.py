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

"""Utilities for using gin configurations with hiersep binaries."""
import os
from typing import Sequence

from absl import app
from absl import logging
import gin
from hiersep import utils

# Makes `Guards.<field> = ...` bindings and `@Guards()` references available
# to gin files.
Guards = gin.external_configurable(utils.Guards, name='Guards')


def parse_gin_flags(gin_search_paths: Sequence[str],
                    gin_files: Sequence[str],
                    gin_bindings: Sequence[str],
                    skip_unknown: bool = False,
                    finalize_config: bool = True):
  """Loads the guard and run configuration from gin files and bindings.

  The files usually come from `hiersep/configs` (`guards.gin` and a profile
  under `runs/`); bindings such as `Guards.max_n = 12` override them.

  Args:
    gin_search_paths: directories searched for relative `gin_files`.
    gin_files: config files, parsed in order; a later file overrides the
      bindings of an earlier one.
    gin_bindings: single bindings, applied after all files and in order, so the
      last binding of a parameter wins.
    skip_unknown: ignore bindings of unknown configurables instead of raising.
    finalize_config: lock the config once parsed.
  """
  for gin_file_path in gin_search_paths:
    gin.add_config_file_search_path(gin_file_path)

  gin.parse_config_files_and_bindings(
      gin_files,
      gin_bindings,
      skip_unknown=skip_unknown,
      finalize_config=finalize_config)
  logging.info('Gin Configuration:\n%s', gin.config_str())


def rewrite_gin_args(args: Sequence[str]) -> Sequence[str]:
  """Turns `--gin.Guards.max_n=12` into `--gin_bindings=Guards.max_n = 12`.

  Lets the CLI and `make_corpus` take gin bindings as ordinary-looking flags.
  """

  def _rewrite_gin_arg(arg):
    if not arg.startswith('--gin.'):
      return arg
    if '=' not in arg:
      raise ValueError(
          "Gin bindings must be of the form '--gin.<param>=<value>', got: " +
          arg)
    name, value = arg[len('--gin.'):].split('=', maxsplit=1)
    return f'--gin_bindings={name} = {value}'

  return [_rewrite_gin_arg(arg) for arg in args]


def save_gin_config(output_dir: str, filename: str = 'config.gin') -> str:
  """Writes the operative gin config next to the reports of a batch run."""
  os.makedirs(output_dir, exist_ok=True)
  path = os.path.join(output_dir, filename)
  with open(path, 'w') as f:
    f.write(gin.operative_config_str())
  logging.info('Wrote gin config to %s', path)
  return path


def run(main):
  """Wrapper for app.run that rewrites gin args before parsing."""
  app.run(
      main,
      flags_parser=lambda a: app.parse_flags_with_usage(rewrite_gin_args(a)))
