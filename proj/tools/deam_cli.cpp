#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "deam/config_file.hpp"
#include "deam/errors.hpp"
#include "deam/objectives.hpp"
#include "deam/trace_io.hpp"

namespace fs = std::filesystem;
using namespace deam;

namespace {

// Exit codes: 0 ok, 1 internal, 2 config, 3 I/O, 4 divergence, 5 check failed.
enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kIo = 3, kDivergence = 4, kCheck = 5 };

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(out + ": cannot create output directory");
    return dir;
}

void apply_overrides(ExperimentConfig& cfg, std::int64_t steps, std::int64_t seed) {
    if (steps > 0) cfg.max_steps = steps;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
}

int cmd_run(const std::string& config_path, const std::string& out, std::int64_t steps,
            std::int64_t seed) {
    ExperimentConfig cfg = load_run_config(config_path);
    apply_overrides(cfg, steps, seed);
    const fs::path dir = ensure_out_dir(out);
    const Trace trace = run(cfg);
    write_trace_jsonl(trace, dir / "trace.jsonl");
    write_summary_json(trace, dir / "summary.json");
    std::cout << "run " << cfg.effective_label() << ": " << trace.steps_run
              << " steps, final loss " << format_double(trace.final_loss) << "\n";
    return kOk;
}

int cmd_compare(const std::string& config_path, const std::string& out, std::int64_t steps,
                std::int64_t seed) {
    CompareConfig cc = load_compare_config(config_path);
    for (ExperimentConfig& cfg : cc.runs) apply_overrides(cfg, steps, seed);
    const fs::path dir = ensure_out_dir(out);
    const CompareResult result = compare(cc.runs, cc.metric);
    write_comparison_csv(result.table, dir / "comparison.csv");
    for (std::size_t i = 0; i < result.traces.size(); ++i) {
        write_trace_jsonl(result.traces[i], dir / result.table.rows[i].trace_file);
    }
    std::cout << "compare: " << result.table.rows.size() << " optimizers -> "
              << (dir / "comparison.csv").string() << "\n";
    return kOk;
}

// Adam with beta1 in {0.9, 0.0} and the angle-adaptive optimizer on
// f(x,y) = x^2 + 4y^2 from (-4,-1) at eta_1 = 1 (eta_t = 1/sqrt(t)).
// The div_guard is set to 0 so the first step lands on (-3, 0) exactly.
int cmd_repro_counterexample(const std::string& out, std::int64_t steps) {
    ExperimentConfig base;
    base.objective = QuadraticSpec{{1.0, 4.0}};
    base.init = PointInit{{-4.0, -1.0}};
    base.eta = 1.0;
    base.schedule = Schedule::InverseSqrt;
    base.max_steps = steps > 0 ? steps : 40000;
    base.eval_every = 1;
    base.snapshot_w = true;

    std::vector<ExperimentConfig> configs(3, base);
    configs[0].label = "adam_beta1_0.9";
    configs[0].optimizer = BaselineConfig{.kind = BaselineKind::Adam, .beta1 = 0.9,
                                          .div_guard = 0.0};
    configs[1].label = "adam_beta1_0.0";
    configs[1].optimizer = BaselineConfig{.kind = BaselineKind::Adam, .beta1 = 0.0,
                                          .div_guard = 0.0};
    configs[2].label = "deam";
    configs[2].optimizer = DeamHyperparams{};

    const fs::path dir = ensure_out_dir(out);
    const MetricSpec metric{Metric::StepsToThreshold, 1e-2};
    const CompareResult result = compare(configs, metric);
    write_comparison_csv(result.table, dir / "comparison.csv");
    for (std::size_t i = 0; i < result.traces.size(); ++i) {
        write_trace_jsonl(result.traces[i], dir / result.table.rows[i].trace_file);
    }

    nlohmann::json summary;
    const QuadraticObjective objective({1.0, 4.0});
    for (std::size_t i = 0; i < 2; ++i) {
        const Trace& trace = result.traces[i];
        if (trace.records.size() < 2) throw CheckFailure("repro: trace too short");
        const ParamVector& w1 = *trace.records[1].w; // iterate after the first step
        const double ex = std::abs(w1[0] - (-3.0));
        const double ey = std::abs(w1[1] - 0.0);
        if (ex > 1e-9 || ey > 1e-9) {
            throw CheckFailure("repro: " + configs[i].label + " first step landed at (" +
                               format_double(w1[0]) + ", " + format_double(w1[1]) +
                               "), expected (-3, 0) within 1e-9");
        }
        summary[configs[i].label]["w1"] = w1;
        const EvalResult at_w1 = objective.eval(w1, {});
        summary[configs[i].label]["grad_at_w1"] = at_w1.grad;
    }
    const std::int64_t hit09 = result.table.rows[0].steps_to_threshold;
    const std::int64_t hit00 = result.table.rows[1].steps_to_threshold;
    summary["first_hit_below_1e-2"] = {{"adam_beta1_0.9", hit09}, {"adam_beta1_0.0", hit00}};
    if (hit00 < 0 || (hit09 >= 0 && hit00 >= hit09)) {
        throw CheckFailure("repro: expected adam(beta1=0) to reach f < 1e-2 strictly before "
                           "adam(beta1=0.9); got steps " +
                           std::to_string(hit00) + " vs " + std::to_string(hit09));
    }
    std::ofstream sout(dir / "summary.json", std::ios::binary);
    sout << summary.dump(2) << '\n';
    if (!sout) throw IoError((dir / "summary.json").string() + ": write failed");
    std::cout << "repro-counterexample: first-step checks passed; adam(0.0) hit f<1e-2 at step "
              << hit00 << ", adam(0.9) at step " << hit09 << "\n";
    return kOk;
}

int cmd_ablate_dt(const std::string& config_path, const std::string& out, std::int64_t steps,
                  std::int64_t seed) {
    ExperimentConfig base = load_run_config(config_path);
    apply_overrides(base, steps, seed);
    const auto* hp = std::get_if<DeamHyperparams>(&base.optimizer);
    if (!hp) throw ConfigError("ablate-dt: config must use the deam optimizer");

    std::vector<ExperimentConfig> configs;
    for (BacktrackVariant v :
         {BacktrackVariant::ClampedCos, BacktrackVariant::UnclampedCos,
          BacktrackVariant::SigmoidBased, BacktrackVariant::TanhBased, BacktrackVariant::None}) {
        ExperimentConfig cfg = base;
        DeamHyperparams vhp = *hp;
        vhp.backtrack = v;
        cfg.optimizer = vhp;
        cfg.label = to_string(v);
        configs.push_back(std::move(cfg));
    }

    const fs::path dir = ensure_out_dir(out);
    const CompareResult result = compare(configs, MetricSpec{Metric::FinalLoss, 0.0});
    write_ablation_csv(result, dir / "ablate.csv");
    for (std::size_t i = 0; i < result.traces.size(); ++i) {
        write_trace_jsonl(result.traces[i], dir / result.table.rows[i].trace_file);
    }
    std::cout << "ablate-dt: 5 variants -> " << (dir / "ablate.csv").string() << "\n";
    return kOk;
}

double gradcheck_threshold(const ObjectiveSpec& spec) {
    if (std::holds_alternative<QuadraticSpec>(spec)) return 1e-8;
    if (std::holds_alternative<RosenbrockSpec>(spec)) return 1e-7;
    if (std::holds_alternative<LogRegSpec>(spec)) return 1e-5;
    return 1e-4; // MLP, checked away from ReLU kinks
}

int cmd_gradcheck(const std::string& config_path, std::int64_t seed) {
    const ExperimentConfig cfg = load_run_config(config_path);
    auto dataset = build_dataset(cfg.objective);
    auto objective = build_objective(cfg.objective, dataset);

    std::vector<std::size_t> batch;
    if (dataset) {
        Rng pick(Rng::derive(seed >= 0 ? static_cast<std::uint64_t>(seed) : cfg.seed, 3));
        for (std::size_t k = 0; k < std::min<std::size_t>(32, dataset->n); ++k) {
            batch.push_back(static_cast<std::size_t>(pick.below(dataset->n)));
        }
    }

    Rng rng(seed >= 0 ? static_cast<std::uint64_t>(seed) : cfg.seed);
    double worst = 0.0;
    for (int point = 0; point < 20; ++point) {
        const ParamVector w = objective->sample_test_point(rng);
        worst = std::max(worst, gradcheck(*objective, w, batch, 1e-5));
    }
    const double threshold = gradcheck_threshold(cfg.objective);
    std::cout << "gradcheck: max relative error " << format_double(worst) << " (threshold "
              << format_double(threshold) << ")\n";
    if (worst >= threshold) {
        throw CheckFailure("gradcheck: max relative error " + format_double(worst) +
                           " exceeds threshold " + format_double(threshold));
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic-optimization benchmark CLI (angle-adaptive momentum + baselines)"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out = "out";
    std::int64_t steps = -1;
    std::int64_t seed = -1;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config) {
            sub->add_option("--config", config_path, "experiment config file")->required();
        }
        sub->add_option("--out", out, "output directory");
        sub->add_option("--steps", steps, "override max_steps");
        sub->add_option("--seed", seed, "override seed");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "execute one experiment config");
    add_common(run_cmd, true);
    CLI::App* cmp_cmd = app.add_subcommand("compare", "run a comparison set");
    add_common(cmp_cmd, true);
    CLI::App* repro_cmd =
        app.add_subcommand("repro-counterexample", "reproduce the convex counterexample routes");
    add_common(repro_cmd, false);
    CLI::App* ablate_cmd =
        app.add_subcommand("ablate-dt", "run all backtrack-term variants of one config");
    add_common(ablate_cmd, true);
    CLI::App* gc_cmd = app.add_subcommand("gradcheck", "finite-difference gradient check");
    add_common(gc_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(config_path, out, steps, seed);
        if (cmp_cmd->parsed()) return cmd_compare(config_path, out, steps, seed);
        if (repro_cmd->parsed()) return cmd_repro_counterexample(out, steps);
        if (ablate_cmd->parsed()) return cmd_ablate_dt(config_path, out, steps, seed);
        if (gc_cmd->parsed()) return cmd_gradcheck(config_path, seed);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIo;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kDivergence;
    } catch (const CheckFailure& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kCheck;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
