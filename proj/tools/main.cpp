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

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace clusterdyn;
using cli::RunConfig;

namespace {

// The config file is read before flags are bound, so anything given on the
// command line overrides it.
std::string find_config(int argc, char **argv) {
    for (int k = 1; k < argc; ++k) {
        std::string a = argv[k];
        if (a == "--config" && k + 1 < argc) return argv[k + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

void add_common(CLI::App *sub, RunConfig &cfg, std::string &config_path) {
    sub->add_option("--config", config_path, "JSON file with default option values");
    sub->add_option("--delta", cfg.delta, "Cluster energy gap")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed for sampled outcomes (CLUSTERDYN_SEED also works)");
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->capture_default_str();
}

void add_rates(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--alpha", cfg.alpha, "Single-bath decay rate");
    sub->add_option("--beta", cfg.beta, "Single-bath excitation rate");
    sub->add_option("--alpha-bath", cfg.alpha_bath, "Two-bath cold-bath rate");
    sub->add_option("--gamma", cfg.gamma, "Two-bath hot-bath rate");
}

}  // namespace

int main(int argc, char **argv) {
    RunConfig cfg;
    std::string config_path;
    try {
        if (const char *env = std::getenv("CLUSTERDYN_SEED")) cfg.seed = std::stoull(env);
        config_path = find_config(argc, argv);
        if (!config_path.empty()) cli::apply_config(io::read_json_file(config_path), cfg);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    CLI::App app{"Thermal cluster-state dynamics and measurement-based gates"};
    app.set_version_flag("--version", std::string("clusterdyn ") + cli::kVersion);
    app.require_subcommand(1);

    auto *fig1 = app.add_subcommand("fig1-contour", "Gate fidelity against decay rate and waiting time");
    add_common(fig1, cfg, config_path);
    fig1->add_option("--alphas", cfg.alphas, "Decay-rate grid");
    fig1->add_option("--times", cfg.times, "Time grid (default 0..4pi, 33 points)");

    auto *fig2 = app.add_subcommand("fig2-scan", "Fidelity per timestep against cold-bath coupling");
    add_common(fig2, cfg, config_path);
    fig2->add_option("--gammas", cfg.gammas, "Hot-bath rates, one curve each");
    fig2->add_option("--alpha-bath-min", cfg.alpha_bath_min);
    fig2->add_option("--alpha-bath-max", cfg.alpha_bath_max);
    fig2->add_option("--points", cfg.points, "Log-spaced grid points");
    fig2->add_option("--theta", cfg.theta, "Rotation angle");
    fig2->add_option("--ideal", cfg.ideal, "cardinal-average, equilibrium-plus or thermal-image");
    fig2->add_option("--rk4-step", cfg.rk4_step, "RK4 step (default period/2000)");
    fig2->add_option("--integrator", cfg.integrator, "rk4 or exact");

    auto *thr = app.add_subcommand("thresholds", "Fault-tolerance thresholds as JSON");
    add_common(thr, cfg, config_path);
    thr->add_option("--q-target", cfg.q_target, "Threshold error rate")->capture_default_str();

    auto *gold = app.add_subcommand("goldilocks", "Hot-bath threshold curve and its optimum");
    add_common(gold, cfg, config_path);
    gold->add_option("--q-target", cfg.q_target, "Threshold error rate")->capture_default_str();
    gold->add_option("--alpha-bath-min", cfg.alpha_bath_min);
    gold->add_option("--alpha-bath-max", cfg.alpha_bath_max);
    gold->add_option("--points", cfg.points);

    auto *chan = app.add_subcommand("channel", "Logical Pauli channel of one timestep");
    add_common(chan, cfg, config_path);
    add_rates(chan, cfg);
    chan->add_option("--w", cfg.w, "Decay parameter exp(-(alpha+beta) tau)");
    chan->add_option("--variant", cfg.variant, "line or cubic");
    chan->add_flag("--tomography", cfg.tomography, "Also extract the channel from simulation");
    chan->add_option("--integrator", cfg.integrator, "rk4 or exact");
    chan->add_option("--rk4-step", cfg.rk4_step);

    auto *sim = app.add_subcommand("simulate", "Run a measurement pattern");
    add_common(sim, cfg, config_path);
    add_rates(sim, cfg);
    sim->add_option("pattern", cfg.pattern_file, "Pattern JSON file")->required();
    sim->add_option("--t0", cfg.t0, "Time of the first measurement");
    sim->add_option("--dump-state", cfg.dump_state, "Write the output state as JSON");
    sim->add_flag("--sample", cfg.sample, "Sample outcomes instead of forcing 0");
    sim->add_option("--integrator", cfg.integrator, "rk4 or exact");
    sim->add_option("--rk4-step", cfg.rk4_step);

    auto *eom = app.add_subcommand("eom", "Equations of motion for a stabilizer expectation");
    add_common(eom, cfg, config_path);
    eom->add_option("observable", cfg.observable, "Pauli string, e.g. \"X1\" or \"Z0 X1 Z2\"")->required();
    eom->add_option("--alpha", cfg.alpha);
    eom->add_option("--beta", cfg.beta);
    eom->add_option("--lattice", cfg.lattice, "line:N, square:RxC, star:K or edges:FILE");
    eom->add_option("--context", cfg.context_file, "JSON measurement context");
    eom->add_option("--time", cfg.time, "Also print the solution at this time");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    for (auto *sub : app.get_subcommands()) cfg.command = sub->get_name();
    try {
        if (cfg.out.empty()) {
            cli::dispatch(cfg, std::cout);
        } else {
            std::ofstream f(cfg.out);
            if (!f) throw std::runtime_error("cannot write " + cfg.out);
            cli::dispatch(cfg, f);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
