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

"""Import API modules."""

import hiersep.algebra
import hiersep.automata
import hiersep.basis
import hiersep.bpol_fixpoint
import hiersep.decide
import hiersep.metrics
import hiersep.oracles
import hiersep.pol_fixpoint
import hiersep.rating
import hiersep.utils

# Version number.
from hiersep.version import __version__
