// Copyright 2026 The phasesim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phasesim {

// Command-line front end over the library. `args` is the argument list
// without the program name, in natural order.
//
// Commands:
//   validate <file>                   negativity audit; exit 2 if unsamplable
//   sample <file> --shots N --seed S  outcome counts, CSV or --json
//   exact <file>                      exact outcome distribution, JSON
//   compare <file> --shots N --seed S sampled vs exact distances, JSON
//   perturb <file> --epsilon E ...    robustness experiment, JSON
//
// Shared flags: --tol (positivity tolerance, default 1e-10), --max-dense
// (dense-oracle cap), --threads (sampler fan-out; never changes output).
//
// Exit codes: 0 success, 2 negativity / unsamplable program, 3 parse or
// configuration error, 4 oracle size cap, 1 internal error. Reports go to
// `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace phasesim
