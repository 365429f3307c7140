// Copyright 2026 The clusterdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs a single X rotation on a three-site thermal line and prints the gate
// fidelity for a few decay rates, next to the closed-form prediction.

#include <cstdio>
#include <numbers>

#include "clusterdyn/clusterdyn.hpp"

using namespace clusterdyn;

int main() {
    const double theta = std::numbers::pi / 3;
    const double t = 2 * std::numbers::pi;
    std::printf("%8s %12s %12s\n", "alpha", "simulated", "closed-form");
    for (double alpha : {0.0, 0.01, 0.05, 0.1}) {
        XrotOptions opt;
        opt.kT = 0.0;
        opt.noiseless_output = true;
        XrotResult r = run_xrot_experiment(theta, 0.0, t, BathSpec::single(alpha, 0.0), 1.0, OutcomePolicy::forced(0), opt);
        std::printf("%8.3f %12.6f %12.6f\n", alpha, r.fidelity, xrot_fidelity(alpha, t, 1.0));
    }
}
