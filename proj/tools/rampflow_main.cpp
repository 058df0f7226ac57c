#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rampflow/config/config.hpp"
#include "rampflow/dqn/serialize.hpp"
#include "rampflow/dqn/trainer.hpp"
#include "rampflow/log.hpp"
#include "rampflow/metrics/metrics.hpp"
#include "rampflow/sim/runner.hpp"

namespace fs = std::filesystem;
using namespace rampflow;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::string model_path;
    std::optional<std::uint64_t> seed;
};

config::RunConfig load_config(const CommonArgs& args) {
    config::RunConfig cfg = args.config_path.empty()
                                ? config::RunConfig::from_json(nlohmann::json::object())
                                : config::RunConfig::load(args.config_path);
    if (args.seed) cfg.run.seed = *args.seed;
    if (!args.model_path.empty()) cfg.controller.model_path = args.model_path;
    for (const auto& warning : cfg.range_warnings()) log::warn("%s", warning.c_str());
    return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

// Every CSV carries the resolved config and seed as comment lines, so any
// output file identifies the run that produced it.
std::string csv_provenance(const config::RunConfig& cfg) {
    std::ostringstream os;
    os << "# config: " << cfg.to_json().dump() << '\n';
    os << "# seed: " << cfg.run.seed << '\n';
    return os.str();
}

void echo_config(const config::RunConfig& cfg, const fs::path& out_dir) {
    write_text(out_dir / "resolved_config.json", cfg.to_json().dump(2) + "\n");
}

std::string report_csv_header() {
    return "run,seed,controller,avg_speed,avg_delay,avg_fuel,mean_reward,spawned,completed,queued,"
           "on_road\n";
}

std::string report_csv_row(int run, std::uint64_t seed, const std::string& controller,
                           const metrics::RunReport& r) {
    std::ostringstream os;
    os << run << ',' << seed << ',' << controller << ',' << r.avg_speed << ',';
    if (r.avg_delay) os << *r.avg_delay;
    os << ',' << r.avg_fuel << ',' << r.mean_reward << ',' << r.spawned << ',' << r.completed
       << ',' << r.queued << ',' << r.on_road << '\n';
    return os.str();
}

sim::Policy policy_for(const config::RunConfig& cfg, const std::string& type,
                       const dqn::ModelBundle* bundle) {
    if (type == "dacc") {
        if (bundle == nullptr) throw std::runtime_error("dacc policy requires a model");
        return sim::Policy::greedy(bundle->net);
    }
    if (type == "fixed") return sim::Policy::fixed(cfg.controller.fixed_headway);
    if (type == "threshold") return sim::Policy::threshold_acc(cfg.controller.threshold);
    if (type == "human") return sim::Policy::human();
    throw std::runtime_error("unknown controller type: " + type);
}

std::optional<dqn::ModelBundle> maybe_load_model(const config::RunConfig& cfg, bool required) {
    if (cfg.controller.model_path.empty()) {
        if (required) throw std::runtime_error("no model path given (--model or controller.model_path)");
        return std::nullopt;
    }
    auto bundle = dqn::load_model(cfg.controller.model_path);
    const auto cfg_actions = cfg.action_set();
    if (cfg_actions.targets != bundle.actions.targets) {
        if (cfg.mdp.action_count != bundle.actions.size())
            throw std::runtime_error("model/config action-set mismatch (K differs)");
        log::warn("config action grid differs from the model file; using the model's action set");
    }
    return bundle;
}

int cmd_train(const CommonArgs& args, int episodes_override) {
    auto cfg = load_config(args);
    if (episodes_override > 0) cfg.run.episodes = episodes_override;
    fs::create_directories(args.out_dir);
    echo_config(cfg, args.out_dir);

    const auto actions = cfg.action_set();
    dqn::QNetwork net({5, 8, 12, 20, 16, actions.size()});
    Rng init(derive_seed(cfg.run.seed, "init"));
    net.init_optimistic(init, 25.0);

    dqn::LayerStack best;
    const auto result = dqn::train(
        net, cfg.dqn, sim::make_episode_runner(cfg), cfg.run.episodes, cfg.run.seed,
        [&](int episode, double reward) {
            log::info("new best 100-episode window at %d (mean reward %.3f)", episode, reward);
            best = net.params();
        });
    if (result.best_window_end > 0) {
        net.params() = best;  // keep the best sustained policy, not the final orbit
        net.sync_target();
    }

    const fs::path model_path = fs::path(args.out_dir) / "model.json";
    dqn::save_model(net, actions, cfg.normalization(), model_path.string());

    std::ostringstream curve;
    curve << csv_provenance(cfg) << "episode,mean_reward,epsilon\n";
    for (const auto& point : result.curve)
        curve << point.episode << ',' << point.mean_reward << ',' << point.epsilon << '\n';
    write_text(fs::path(args.out_dir) / "reward_curve.csv", curve.str());

    std::cout << "trained " << cfg.run.episodes << " episodes, best 100-episode window ending at "
              << result.best_window_end << " (mean reward " << result.best_window_reward << ")\n"
              << "model: " << model_path.string() << "\n";
    return 0;
}

int cmd_eval(const CommonArgs& args) {
    auto cfg = load_config(args);
    fs::create_directories(args.out_dir);
    echo_config(cfg, args.out_dir);

    const bool needs_model = cfg.controller.type == "dacc";
    const auto bundle = maybe_load_model(cfg, needs_model);
    const auto policy = policy_for(cfg, cfg.controller.type, bundle ? &*bundle : nullptr);

    std::ostringstream csv;
    csv << csv_provenance(cfg) << report_csv_header();
    double speed_sum = 0.0, speed_sq = 0.0;
    for (int i = 0; i < cfg.run.eval_seeds; ++i) {
        const std::uint64_t run_seed = derive_seed(cfg.run.seed, "eval", static_cast<std::uint64_t>(i));
        sim::RunOptions opt;
        opt.collect_grid = true;
        const auto result = sim::run_scenario(cfg, policy, run_seed, opt);
        csv << report_csv_row(i, run_seed, cfg.controller.type, result.report);
        speed_sum += result.report.avg_speed;
        speed_sq += result.report.avg_speed * result.report.avg_speed;

        std::ofstream grid_out(fs::path(args.out_dir) / ("grid_run" + std::to_string(i) + ".csv"));
        grid_out << csv_provenance(cfg);
        result.grid->write_csv(grid_out);
    }
    const double n = cfg.run.eval_seeds;
    const double mean = speed_sum / n;
    const double var = std::max(0.0, speed_sq / n - mean * mean);
    csv << "summary,,," << mean << ",,,,,,,\n";
    csv << "# avg_speed mean=" << mean << " stdev=" << std::sqrt(var) << " over " << n << " runs\n";
    write_text(fs::path(args.out_dir) / "report.csv", csv.str());
    std::cout << "eval: avg_speed mean=" << mean << " stdev=" << std::sqrt(var) << " ("
              << cfg.run.eval_seeds << " runs)\n";
    return 0;
}

struct SweepPoint {
    std::size_t index;
    double value;
    std::string controller;
    int seed_index;
};

void apply_axis(config::RunConfig& cfg, const std::string& axis, double value) {
    if (axis == "headway") cfg.controller.fixed_headway = value;
    else if (axis == "penetration") cfg.traffic.penetration = value;
    else if (axis == "ramp_rate") cfg.traffic.ramp_rate = value;
    else if (axis == "main_rate") cfg.traffic.main_rate = value;
    else if (axis == "lane_length") cfg.geometry.accel_lane_length = value;
    else if (axis == "assertiveness") cfg.traffic.assertiveness = value;
    else throw std::runtime_error("unknown sweep axis: " + axis);
}

int cmd_sweep(const CommonArgs& args, const std::string& axis, std::vector<double> values,
              std::vector<std::string> controllers, int jobs) {
    if (values.empty()) throw std::runtime_error("sweep: empty value list");
    auto cfg = load_config(args);
    fs::create_directories(args.out_dir);
    echo_config(cfg, args.out_dir);

    if (controllers.empty()) {
        controllers = axis == "headway" ? std::vector<std::string>{"fixed"}
                                        : std::vector<std::string>{"dacc", "threshold"};
    }
    const bool needs_model =
        std::find(controllers.begin(), controllers.end(), "dacc") != controllers.end();
    const auto bundle = maybe_load_model(cfg, needs_model);

    std::vector<SweepPoint> points;
    for (const auto& controller : controllers)
        for (double value : values)
            for (int s = 0; s < cfg.run.eval_seeds; ++s)
                points.push_back({points.size(), value, controller, s});

    std::vector<std::string> rows(points.size());
    std::vector<std::string> failures(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            const auto& p = points[i];
            auto point_cfg = cfg;
            apply_axis(point_cfg, axis, p.value);
            const std::uint64_t run_seed =
                derive_seed(cfg.run.seed, "sweep", static_cast<std::uint64_t>(p.seed_index));
            try {
                const auto policy = policy_for(point_cfg, p.controller, bundle ? &*bundle : nullptr);
                const auto result = sim::run_scenario(point_cfg, policy, run_seed);
                std::ostringstream os;
                os << axis << ',' << p.value << ',' << p.controller << ',' << run_seed << ','
                   << result.report.avg_speed << ',';
                if (result.report.avg_delay) os << *result.report.avg_delay;
                os << ',' << result.report.avg_fuel << ',' << result.report.mean_reward << ','
                   << result.report.spawned << ',' << result.report.completed << ','
                   << result.report.queued << '\n';
                rows[i] = os.str();
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << axis << ',' << p.value << ',' << p.controller << ',' << run_seed
                   << ",,,,,,,FAILED: " << e.what() << '\n';
                rows[i] = os.str();
                failures[i] = e.what();
            }
        }
    };
    const int worker_count = std::max(1, jobs);
    std::vector<std::thread> threads;
    for (int t = 0; t < worker_count; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    // rows are written in point order, so the file is byte-identical for any --jobs
    std::ostringstream csv;
    csv << csv_provenance(cfg)
        << "axis,value,controller,seed,avg_speed,avg_delay,avg_fuel,mean_reward,spawned,completed,"
           "queued\n";
    for (const auto& row : rows) csv << row;
    write_text(fs::path(args.out_dir) / "sweep.csv", csv.str());

    std::size_t failed = 0;
    for (const auto& f : failures)
        if (!f.empty()) ++failed;
    std::cout << "sweep: " << points.size() - failed << "/" << points.size() << " runs ok, wrote "
              << (fs::path(args.out_dir) / "sweep.csv").string() << "\n";
    return 0;
}

int cmd_latency(const CommonArgs& args, int trials) {
    auto cfg = load_config(args);
    fs::create_directories(args.out_dir);
    const auto bundle = maybe_load_model(cfg, true);

    Rng rng(derive_seed(cfg.run.seed, "latency"));
    std::vector<v2x::TrafficBulletin> inputs;
    for (int i = 0; i < trials; ++i) {
        v2x::TrafficBulletin b;
        b.main_density = rng.uniform(0.0, 150.0);
        b.main_avg_speed = rng.uniform(0.0, 33.33);
        b.ramp_density = rng.uniform(0.0, 150.0);
        b.ramp_avg_speed = rng.uniform(0.0, 22.22);
        b.ramp_length = cfg.geometry.ramp_length;
        b.segment_length = cfg.geometry.segment_length;
        b.congestion_speed = cfg.mdp.reward.congestion_speed;
        inputs.push_back(b);
    }

    int trial = 0;
    volatile int sink = 0;
    Rng select_rng(1);
    std::vector<double> per_trial;
    const auto summary = metrics::decision_latency(
        [&] {
            const auto s = mdp::featurize(inputs[static_cast<std::size_t>(trial++ % trials)], bundle->norm);
            const auto q = bundle->net.forward_values(s);
            sink = dqn::select_action(q, 0.0, select_rng);
        },
        trials, &per_trial);

    std::ostringstream csv;
    csv << csv_provenance(cfg) << "trial,latency_ms\n";
    for (std::size_t i = 0; i < per_trial.size(); ++i) csv << i << ',' << per_trial[i] << '\n';
    csv << "# mean=" << summary.mean << " p50=" << summary.p50 << " p95=" << summary.p95
        << " max=" << summary.max << " (ms)\n";
    write_text(fs::path(args.out_dir) / "latency.csv", csv.str());
    std::cout << "latency over " << trials << " trials: mean=" << summary.mean
              << " ms  p50=" << summary.p50 << "  p95=" << summary.p95 << "  max=" << summary.max
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rampflow: highway on-ramp micro-simulator with a learned headway controller"};
    app.require_subcommand(1);

    CommonArgs common;
    int episodes = 0;
    int jobs = 1;
    int trials = 100;
    std::string axis;
    std::vector<double> values;
    std::vector<std::string> controllers;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "run config JSON (defaults used if omitted)");
        cmd->add_option("--seed", common.seed, "master seed override");
        cmd->add_option("--out", common.out_dir, "output directory")->capture_default_str();
        cmd->add_option("--model", common.model_path, "model file path override");
    };

    auto* train = app.add_subcommand("train", "train the headway policy, write model + reward curve");
    add_common(train);
    train->add_option("--episodes", episodes, "episode count override");

    auto* eval = app.add_subcommand("eval", "seeded evaluation runs, write report + space-time grids");
    add_common(eval);

    auto* sweep = app.add_subcommand("sweep", "axis sweep across controllers and seeds (long CSV)");
    add_common(sweep);
    sweep->add_option("--axis", axis,
                      "headway|penetration|ramp_rate|main_rate|lane_length|assertiveness")
        ->required();
    sweep->add_option("--values", values, "axis values")->required()->delimiter(',');
    sweep->add_option("--controllers", controllers, "controllers to sweep (default depends on axis)")
        ->delimiter(',');
    sweep->add_option("--jobs", jobs, "parallel workers")->capture_default_str();

    auto* latency = app.add_subcommand("latency", "time featurize+forward+select decisions");
    add_common(latency);
    latency->add_option("--trials", trials, "number of timed decisions")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return cmd_train(common, episodes);
        if (eval->parsed()) return cmd_eval(common);
        if (sweep->parsed()) return cmd_sweep(common, axis, values, controllers, jobs);
        if (latency->parsed()) return cmd_latency(common, trials);
    } catch (const std::exception& e) {
        log::error("%s", e.what());
        return 1;
    }
    return 0;
}
