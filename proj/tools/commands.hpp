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

#ifndef CLUSTERDYN_TOOLS_COMMANDS_HPP
#define CLUSTERDYN_TOOLS_COMMANDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterdyn/clusterdyn.hpp"
#include "clusterdyn/io/csv.hpp"
#include "clusterdyn/io/json.hpp"

namespace clusterdyn::cli {

inline constexpr const char *kVersion = "0.1.0";

using io::json;

struct RunConfig {
    std::string command;
    double delta = 1;
    double alpha = 0;
    double beta = 0;
    double alpha_bath = 0;
    double gamma = 0;
    double theta = std::numbers::pi / 2;
    double t0 = 0;
    double rk4_step = 0;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::string out;
    std::string format = "csv";

    // fig1-contour
    std::vector<double> alphas{0, 0.01, 0.02, 0.05, 0.1};
    std::vector<double> times;
    // fig2-scan
    std::vector<double> gammas{1e-2, 1e-3, 1e-4, 1e-5};
    double alpha_bath_min = 1e-5;
    double alpha_bath_max = 1e-1;
    int points = 33;
    std::string ideal = "cardinal-average";
    // thresholds / goldilocks
    double q_target = kDefaultQThreshold;
    // channel
    std::optional<double> w;
    std::string variant = "line";
    bool tomography = false;
    // simulate
    std::string pattern_file;
    std::string dump_state;
    bool sample = false;
    std::string integrator = "rk4";
    // eom
    std::string observable;
    std::string context_file;
    std::string lattice = "line:3";
    std::optional<double> time;

    json to_json() const {
        json j = {{"command", command}, {"delta", delta}, {"seed", seed}, {"format", format}};
        if (command == "fig1-contour") {
            j["alphas"] = alphas;
            j["times"] = times;
        } else if (command == "fig2-scan") {
            j["gammas"] = gammas;
            j["alpha-bath-min"] = alpha_bath_min;
            j["alpha-bath-max"] = alpha_bath_max;
            j["points"] = points;
            j["theta"] = theta;
            j["ideal"] = ideal;
            j["rk4-step"] = rk4_step;
        } else if (command == "thresholds" || command == "goldilocks") {
            j["q-target"] = q_target;
        } else if (command == "channel") {
            j["alpha"] = alpha;
            j["beta"] = beta;
            if (w) j["w"] = *w;
            j["variant"] = variant;
            j["tomography"] = tomography;
        } else if (command == "simulate") {
            j["pattern"] = pattern_file;
            j["alpha"] = alpha;
            j["beta"] = beta;
            j["alpha-bath"] = alpha_bath;
            j["gamma"] = gamma;
            j["t0"] = t0;
            j["sample"] = sample;
            j["integrator"] = integrator;
        } else if (command == "eom") {
            j["observable"] = observable;
            j["context"] = context_file;
            j["lattice"] = lattice;
            j["alpha"] = alpha;
            j["beta"] = beta;
        }
        return j;
    }
};

/// Copies recognised keys of a JSON config object into cfg. Keys use the
/// long flag names.
inline void apply_config(const json &j, RunConfig &cfg) {
    if (!j.is_object()) {
        throw std::invalid_argument("config file must hold a JSON object");
    }
    auto get = [&](const char *key, auto &field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("delta", cfg.delta);
    get("alpha", cfg.alpha);
    get("beta", cfg.beta);
    get("alpha-bath", cfg.alpha_bath);
    get("gamma", cfg.gamma);
    get("theta", cfg.theta);
    get("t0", cfg.t0);
    get("rk4-step", cfg.rk4_step);
    get("seed", cfg.seed);
    get("jobs", cfg.jobs);
    get("out", cfg.out);
    get("format", cfg.format);
    get("alphas", cfg.alphas);
    get("times", cfg.times);
    get("gammas", cfg.gammas);
    get("alpha-bath-min", cfg.alpha_bath_min);
    get("alpha-bath-max", cfg.alpha_bath_max);
    get("points", cfg.points);
    get("ideal", cfg.ideal);
    get("q-target", cfg.q_target);
    get("variant", cfg.variant);
    get("tomography", cfg.tomography);
    get("dump-state", cfg.dump_state);
    get("sample", cfg.sample);
    get("integrator", cfg.integrator);
    get("context", cfg.context_file);
    get("lattice", cfg.lattice);
    if (j.contains("w")) cfg.w = j.at("w").get<double>();
    if (j.contains("time")) cfg.time = j.at("time").get<double>();
}

inline void check_rates(const RunConfig &cfg) {
    if (!(cfg.delta > 0)) throw std::invalid_argument("--delta must be positive");
    for (double r : {cfg.alpha, cfg.beta, cfg.alpha_bath, cfg.gamma}) {
        if (r < 0) throw std::invalid_argument("rates must be non-negative");
    }
    if (cfg.format != "csv" && cfg.format != "json") {
        throw std::invalid_argument("--format must be csv or json");
    }
}

inline void check_grid(const std::vector<double> &g, const char *name) {
    if (g.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
    for (double x : g) {
        if (!std::isfinite(x) || x < 0) throw std::invalid_argument(std::string(name) + " grid has a bad value");
    }
}

inline EvolveOptions evolve_options(const RunConfig &cfg) {
    EvolveOptions ev;
    ev.rk4_step = cfg.rk4_step;
    if (cfg.integrator == "exact") {
        ev.integrator = Integrator::ExactKraus;
    } else if (cfg.integrator != "rk4") {
        throw std::invalid_argument("--integrator must be rk4 or exact");
    }
    return ev;
}

/// Single-bath rates unless two-bath rates are given.
inline BathSpec bath_from(const RunConfig &cfg) {
    if (cfg.alpha_bath > 0 || cfg.gamma > 0) {
        if (cfg.alpha > 0 || cfg.beta > 0) {
            throw std::invalid_argument("give either --alpha/--beta or --alpha-bath/--gamma, not both");
        }
        return BathSpec::two_bath(cfg.alpha_bath, cfg.gamma);
    }
    return BathSpec::single(cfg.alpha, cfg.beta);
}

inline void write_csv_meta(io::CsvWriter &w, const RunConfig &cfg) {
    w.meta("clusterdyn", kVersion);
    w.meta("command", cfg.command);
    w.meta("seed", std::to_string(cfg.seed));
    w.meta("config", cfg.to_json().dump());
}

inline json meta_json(const RunConfig &cfg) {
    return {{"version", kVersion}, {"seed", cfg.seed}, {"config", cfg.to_json()}};
}

// ---------------------------------------------------------------------------

inline std::vector<double> default_times() {
    std::vector<double> t;
    for (int k = 0; k <= 32; ++k) t.push_back(4 * std::numbers::pi * k / 32);
    return t;
}

inline void cmd_fig1_contour(const RunConfig &cfg, std::ostream &out) {
    check_rates(cfg);
    std::vector<double> alphas = cfg.alphas;
    std::vector<double> times = cfg.times.empty() ? default_times() : cfg.times;
    check_grid(alphas, "alpha");
    check_grid(times, "time");
    // Caption anchors: (0, pi), (0, 2 pi) and (0.1, 2 pi) in units of 1/delta.
    const double pi = std::numbers::pi / cfg.delta;
    for (double a : {0.0, 0.1})
        if (std::find(alphas.begin(), alphas.end(), a) == alphas.end()) alphas.push_back(a);
    for (double t : {pi, 2 * pi}) {
        bool present = std::any_of(times.begin(), times.end(), [&](double x) { return std::abs(x - t) < 1e-12; });
        if (!present) times.push_back(t);
    }
    std::sort(alphas.begin(), alphas.end());
    std::sort(times.begin(), times.end());
    if (cfg.format == "json") {
        json rows = json::array();
        for (double a : alphas)
            for (double t : times) rows.push_back({a, t, xrot_fidelity(a, t, cfg.delta)});
        out << json{{"meta", meta_json(cfg)}, {"columns", {"alpha", "t", "fidelity"}}, {"rows", rows}}.dump(1) << '\n';
        return;
    }
    io::CsvWriter w(out);
    write_csv_meta(w, cfg);
    w.header({"alpha", "t", "fidelity"});
    for (double a : alphas)
        for (double t : times) w.row({a, t, xrot_fidelity(a, t, cfg.delta)});
}

inline void cmd_fig2_scan(const RunConfig &cfg, std::ostream &out) {
    check_rates(cfg);
    check_grid(cfg.gammas, "gamma");
    if (cfg.points < 3) throw std::invalid_argument("--points must be at least 3");
    const IdealConvention conv = parse_convention(cfg.ideal);
    const auto grid = log_grid(cfg.alpha_bath_min, cfg.alpha_bath_max, static_cast<std::size_t>(cfg.points));
    EvolveOptions ev = evolve_options(cfg);
    std::vector<std::vector<std::pair<double, double>>> curves;
    for (double g : cfg.gammas) curves.push_back(cooling_scan(g, grid, cfg.theta, cfg.delta, conv, cfg.jobs, ev));
    if (cfg.format == "json") {
        json cs = json::array();
        for (std::size_t k = 0; k < curves.size(); ++k) {
            json pts = json::array();
            for (auto &[a, f] : curves[k]) pts.push_back({a, f});
            cs.push_back({{"gamma", cfg.gammas[k]}, {"points", pts}});
        }
        out << json{{"meta", meta_json(cfg)}, {"ideal", convention_name(conv)}, {"curves", cs}}.dump(1) << '\n';
        return;
    }
    io::CsvWriter w(out);
    write_csv_meta(w, cfg);
    w.meta("ideal", convention_name(conv));
    w.header({"gamma", "alpha_bath", "fidelity"});
    for (std::size_t k = 0; k < curves.size(); ++k)
        for (auto &[a, f] : curves[k]) w.row({cfg.gammas[k], a, f});
}

inline json thresholds_json(double q_target) {
    auto t = temperature_threshold(q_target);
    auto c = coupling_threshold(q_target);
    auto g = goldilocks(q_target);
    return {{"kT_star", t.value},
            {"coupling_star", c.value},
            {"goldilocks", {{"gamma_star", g.value}, {"alpha_bath_star", g.secondary}, {"certified", g.certified}}},
            {"q_target", q_target},
            {"residuals", {{"kT_star", t.residual}, {"coupling_star", c.residual}, {"goldilocks", g.residual}}}};
}

inline void cmd_thresholds(const RunConfig &cfg, std::ostream &out) {
    json j = thresholds_json(cfg.q_target);
    j["meta"] = meta_json(cfg);
    out << j.dump(2) << '\n';
}

inline void cmd_goldilocks(const RunConfig &cfg, std::ostream &out) {
    check_rates(cfg);
    auto g = goldilocks(cfg.q_target);
    const auto grid = log_grid(cfg.alpha_bath_min, cfg.alpha_bath_max, static_cast<std::size_t>(std::max(cfg.points, 2)));
    if (cfg.format == "json") {
        json pts = json::array();
        for (double a : grid) pts.push_back({a, gamma_threshold(a, cfg.q_target)});
        out << json{{"meta", meta_json(cfg)},
                    {"gamma_star", g.value},
                    {"alpha_bath_star", g.secondary},
                    {"certified", g.certified},
                    {"residual", g.residual},
                    {"curve", pts}}
                   .dump(1)
            << '\n';
        return;
    }
    io::CsvWriter w(out);
    write_csv_meta(w, cfg);
    w.meta("gamma_star", io::fmt9(g.value));
    w.meta("alpha_bath_star", io::fmt9(g.secondary));
    w.header({"alpha_bath", "gamma_threshold"});
    for (double a : grid) w.row({a, gamma_threshold(a, cfg.q_target)});
}

inline void cmd_channel(const RunConfig &cfg, std::ostream &out) {
    check_rates(cfg);
    BathSpec bath = bath_from(cfg);
    const double w = cfg.w ? *cfg.w : decay_parameter(bath.total(), clock_period(cfg.delta));
    LatticeVariant variant;
    if (cfg.variant == "line") {
        variant = LatticeVariant::Line;
    } else if (cfg.variant == "cubic") {
        variant = LatticeVariant::Cubic;
    } else {
        throw std::invalid_argument("--variant must be line or cubic");
    }
    PauliChannel ch = logical_channel(w, variant);
    std::optional<ChannelEstimate> est;
    if (cfg.tomography) {
        if (variant != LatticeVariant::Line) throw std::invalid_argument("--tomography needs the line variant");
        if (cfg.w) throw std::invalid_argument("--tomography takes rates, not --w");
        est = extract_channel(timestep_process(bath, cfg.delta, {}, evolve_options(cfg)));
    }
    if (cfg.format == "json") {
        json j = {{"meta", meta_json(cfg)},
                  {"w", w},
                  {"p", ch.probabilities()},
                  {"lambda", {ch.lambda_x(), ch.lambda_y(), ch.lambda_z()}}};
        if (est) {
            j["tomography"] = {{"p", est->channel.probabilities()}, {"residual", est->residual}, {"flagged", est->flagged}};
        }
        out << j.dump(2) << '\n';
        return;
    }
    io::CsvWriter wr(out);
    write_csv_meta(wr, cfg);
    wr.header({"source", "w", "p1", "p2", "p3", "p4", "lambda_x", "lambda_y", "lambda_z"});
    wr.row({0, w, ch.p1, ch.p2, ch.p3, ch.p4, ch.lambda_x(), ch.lambda_y(), ch.lambda_z()});
    if (est) {
        const PauliChannel &e = est->channel;
        wr.row({1, w, e.p1, e.p2, e.p3, e.p4, e.lambda_x(), e.lambda_y(), e.lambda_z()});
        out << "# tomography residual: " << io::fmt9(est->residual) << (est->flagged ? " (flagged)" : "") << '\n';
    }
}

inline void cmd_simulate(const RunConfig &cfg, std::ostream &out) {
    check_rates(cfg);
    if (cfg.pattern_file.empty()) throw std::invalid_argument("simulate needs a pattern file");
    Pattern p = io::read_pattern_file(cfg.pattern_file);
    if (cfg.t0 > 0) p.t0 = cfg.t0;
    BathSpec bath = bath_from(cfg);
    OutcomePolicy policy = cfg.sample ? OutcomePolicy::sampled(cfg.seed) : OutcomePolicy::forced(0);
    PatternOptions opt;
    opt.evolve = evolve_options(cfg);
    PatternRun run = run_pattern(p, bath, cfg.delta, policy, opt);
    out << "# clusterdyn " << kVersion << '\n';
    out << "# command: simulate\n";
    out << "# seed: " << cfg.seed << '\n';
    out << "# config: " << cfg.to_json().dump() << '\n';
    out << "bath: " << bath.str() << '\n';
    for (const auto &line : run.transcript) out << line << '\n';
    if (!cfg.dump_state.empty()) {
        std::ofstream f(cfg.dump_state);
        if (!f) throw std::runtime_error("cannot write " + cfg.dump_state);
        f << io::state_to_json(run.output).dump() << '\n';
    }
}

/// "line:N", "square:RxC", "star:K" or "edges:FILE".
inline Lattice parse_lattice(const std::string &spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("lattice spec must look like kind:size");
    std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "line") return Lattice::line(std::stoi(arg));
    if (kind == "star") return Lattice::star(std::stoi(arg));
    if (kind == "square") {
        auto x = arg.find('x');
        if (x == std::string::npos) throw std::invalid_argument("square lattice needs RxC");
        return Lattice::square(std::stoi(arg.substr(0, x)), std::stoi(arg.substr(x + 1)));
    }
    if (kind == "edges") return Lattice::from_edge_file(arg);
    throw std::invalid_argument("unknown lattice kind \"" + kind + "\"");
}

/// Context file: {"lattice": "line:3" | {"edges": [[i, j], ...], "sites": n},
/// "logical": [...], "measured": [{"site": s, "basis": ..., "outcome": 0}],
/// "equilibrium": [...], "logical_bloch": {"s": [x, y, z]}}. Sites left out
/// of all three sets default to equilibrium.
inline EOMContext context_from_json(const json &j) {
    EOMContext ctx;
    const json &lat = j.at("lattice");
    if (lat.is_string()) {
        ctx.lattice = parse_lattice(lat.get<std::string>());
    } else {
        std::vector<Lattice::Edge> edges;
        for (const json &e : lat.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        ctx.lattice = Lattice(lat.at("sites").get<int>(), edges);
    }
    for (const json &s : j.value("logical", json::array())) ctx.logical.insert(s.get<int>());
    for (const json &m : j.value("measured", json::array())) {
        MeasuredSite ms;
        ms.basis = io::basis_from_json(m.at("basis"));
        ms.outcome = m.value("outcome", 0);
        ctx.measured[m.at("site").get<int>()] = ms;
    }
    for (const json &s : j.value("equilibrium", json::array())) ctx.equilibrium.insert(s.get<int>());
    if (j.contains("logical_bloch")) {
        for (auto &[k, v] : j.at("logical_bloch").items()) {
            ctx.logical_bloch[std::stoi(k)] = {v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()};
        }
    }
    for (int s = 0; s < ctx.lattice.size(); ++s) {
        if (!ctx.logical.count(s) && !ctx.measured.count(s) && !ctx.equilibrium.count(s)) ctx.equilibrium.insert(s);
    }
    return ctx;
}

inline void cmd_eom(const RunConfig &cfg, std::ostream &out) {
    check_rates(cfg);
    if (cfg.observable.empty()) throw std::invalid_argument("eom needs an observable, e.g. \"X1\"");
    PauliString m = PauliString::parse(cfg.observable);
    EOMContext ctx = cfg.context_file.empty() ? EOMContext::full(parse_lattice(cfg.lattice))
                                              : context_from_json(io::read_json_file(cfg.context_file));
    EOMSystem sys = build_eom(m, ctx, cfg.alpha, cfg.beta);
    out << "# clusterdyn " << kVersion << '\n';
    out << "# command: eom\n";
    out << "# config: " << cfg.to_json().dump() << '\n';
    out << "# variables: " << sys.size() << '\n';
    out << "# decoupled: " << (sys.decoupling.decoupled ? "yes" : "no");
    for (int s : sys.decoupling.witness) out << ' ' << s;
    out << '\n';
    out << sys.str();
    if (cfg.time) {
        Eigen::VectorXd v = solve_eom(sys, *cfg.time);
        for (std::size_t k = 0; k < sys.size(); ++k) {
            out << "<" << sys.variables[k].label() << ">(" << io::fmt9(*cfg.time) << ") = " << io::fmt9(v(k)) << '\n';
        }
    }
}

inline void dispatch(const RunConfig &cfg, std::ostream &out) {
    if (cfg.command == "fig1-contour") return cmd_fig1_contour(cfg, out);
    if (cfg.command == "fig2-scan") return cmd_fig2_scan(cfg, out);
    if (cfg.command == "thresholds") return cmd_thresholds(cfg, out);
    if (cfg.command == "goldilocks") return cmd_goldilocks(cfg, out);
    if (cfg.command == "channel") return cmd_channel(cfg, out);
    if (cfg.command == "simulate") return cmd_simulate(cfg, out);
    if (cfg.command == "eom") return cmd_eom(cfg, out);
    throw std::invalid_argument("unknown command \"" + cfg.command + "\"");
}

}  // namespace clusterdyn::cli

#endif  // CLUSTERDYN_TOOLS_COMMANDS_HPP
