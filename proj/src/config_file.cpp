#include "deam/config_file.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <string>

#include <json.hpp>

#include "deam/errors.hpp"

namespace deam {

namespace {

using nlohmann::json;

json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string() + ": cannot open config file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void check_keys(const json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        throw ConfigError(std::string(where) + ": expected a JSON object");
    }
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) known = true;
        }
        if (!known) {
            throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
        }
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("bad value for key '") + key + "'");
    }
}

template <typename T>
T get_required(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key)) {
        throw ConfigError(std::string(where) + ": missing required key '" + key + "'");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(where) + ": bad value for key '" + key + "'");
    }
}

std::string resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_absolute()) return path.string();
    return (base / path).lexically_normal().string();
}

DatasetSpec parse_dataset(const json& j, const std::filesystem::path& base) {
    const std::string kind = get_required<std::string>(j, "dataset", "kind");
    if (kind == "blobs") {
        check_keys(j, "dataset", {"kind", "n", "d", "classes", "separation", "seed"});
        BlobsSpec spec;
        spec.n = get_or<std::size_t>(j, "n", spec.n);
        spec.d = get_or<std::size_t>(j, "d", spec.d);
        spec.num_classes = get_or<std::size_t>(j, "classes", spec.num_classes);
        spec.separation = get_or<double>(j, "separation", spec.separation);
        spec.seed = get_or<std::uint64_t>(j, "seed", spec.seed);
        return spec;
    }
    if (kind == "idx") {
        check_keys(j, "dataset", {"kind", "images", "labels", "limit"});
        IdxSpec spec;
        spec.images = resolve(base, get_required<std::string>(j, "dataset", "images"));
        spec.labels = resolve(base, get_required<std::string>(j, "dataset", "labels"));
        if (j.contains("limit")) spec.limit = get_required<std::size_t>(j, "dataset", "limit");
        return spec;
    }
    if (kind == "csv") {
        check_keys(j, "dataset", {"kind", "path", "label_column"});
        CsvSpec spec;
        spec.path = resolve(base, get_required<std::string>(j, "dataset", "path"));
        spec.label_column = get_required<std::string>(j, "dataset", "label_column");
        return spec;
    }
    throw ConfigError("dataset: unknown kind '" + kind + "'");
}

ObjectiveSpec parse_objective(const json& j, const std::filesystem::path& base) {
    const std::string kind = get_required<std::string>(j, "objective", "kind");
    if (kind == "quadratic") {
        check_keys(j, "objective", {"kind", "coefficients"});
        QuadraticSpec spec;
        spec.coefficients = get_or<ParamVector>(j, "coefficients", spec.coefficients);
        return spec;
    }
    if (kind == "rosenbrock") {
        check_keys(j, "objective", {"kind"});
        return RosenbrockSpec{};
    }
    if (kind == "logreg") {
        check_keys(j, "objective", {"kind", "dataset"});
        LogRegSpec spec;
        spec.dataset = parse_dataset(get_required<json>(j, "objective", "dataset"), base);
        return spec;
    }
    if (kind == "mlp") {
        check_keys(j, "objective", {"kind", "dataset", "hidden"});
        MlpSpec spec;
        spec.dataset = parse_dataset(get_required<json>(j, "objective", "dataset"), base);
        spec.hidden = get_or<std::size_t>(j, "hidden", spec.hidden);
        return spec;
    }
    throw ConfigError("objective: unknown kind '" + kind + "'");
}

BacktrackVariant parse_variant(const std::string& name) {
    for (BacktrackVariant v :
         {BacktrackVariant::ClampedCos, BacktrackVariant::UnclampedCos,
          BacktrackVariant::SigmoidBased, BacktrackVariant::TanhBased, BacktrackVariant::None}) {
        if (name == to_string(v)) return v;
    }
    throw ConfigError("optimizer: unknown backtrack variant '" + name + "'");
}

OptimizerSpec parse_optimizer(const json& j) {
    const std::string kind = get_required<std::string>(j, "optimizer", "kind");
    if (kind == "deam") {
        check_keys(j, "optimizer",
                   {"kind", "beta2", "epsilon", "div_guard", "backtrack", "beta1_override"});
        DeamHyperparams hp;
        hp.beta2 = get_or<double>(j, "beta2", hp.beta2);
        hp.epsilon = get_or<double>(j, "epsilon", hp.epsilon);
        hp.div_guard = get_or<double>(j, "div_guard", hp.div_guard);
        if (j.contains("backtrack")) {
            hp.backtrack = parse_variant(j.at("backtrack").get<std::string>());
        }
        if (j.contains("beta1_override")) {
            hp.beta1_override = get_required<double>(j, "optimizer", "beta1_override");
        }
        return hp;
    }
    BaselineConfig cfg;
    if (kind == "sgd") {
        check_keys(j, "optimizer", {"kind"});
        cfg.kind = BaselineKind::Sgd;
    } else if (kind == "sgd_momentum") {
        check_keys(j, "optimizer", {"kind", "momentum"});
        cfg.kind = BaselineKind::SgdMomentum;
        cfg.momentum = get_or<double>(j, "momentum", cfg.momentum);
    } else if (kind == "adagrad") {
        check_keys(j, "optimizer", {"kind", "div_guard"});
        cfg.kind = BaselineKind::AdaGrad;
        cfg.div_guard = get_or<double>(j, "div_guard", cfg.div_guard);
    } else if (kind == "rmsprop") {
        check_keys(j, "optimizer", {"kind", "rho", "div_guard"});
        cfg.kind = BaselineKind::RmsProp;
        cfg.rho = get_or<double>(j, "rho", cfg.rho);
        cfg.div_guard = get_or<double>(j, "div_guard", cfg.div_guard);
    } else if (kind == "adam" || kind == "amsgrad") {
        check_keys(j, "optimizer", {"kind", "beta1", "beta2", "div_guard"});
        cfg.kind = kind == "adam" ? BaselineKind::Adam : BaselineKind::AmsGrad;
        cfg.beta1 = get_or<double>(j, "beta1", cfg.beta1);
        cfg.beta2 = get_or<double>(j, "beta2", cfg.beta2);
        cfg.div_guard = get_or<double>(j, "div_guard", cfg.div_guard);
    } else {
        throw ConfigError("optimizer: unknown kind '" + kind + "'");
    }
    return cfg;
}

InitSpec parse_init(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "default") return DefaultInit{};
        throw ConfigError("init: expected \"default\" or {\"point\": [...]}");
    }
    check_keys(j, "init", {"point"});
    PointInit init;
    init.values = get_required<ParamVector>(j, "init", "point");
    return init;
}

ExperimentConfig parse_experiment(const json& j, const std::filesystem::path& base,
                                  bool allow_optimizer) {
    std::initializer_list<const char*> keys = {
        "label",     "objective",  "optimizer", "init", "eta",        "schedule",
        "batch_size", "sampling",  "max_steps", "eval_every", "seed", "snapshot_w"};
    check_keys(j, "experiment", keys);
    if (!allow_optimizer && j.contains("optimizer")) {
        throw ConfigError("base: the optimizer is declared per run, not in the base block");
    }

    ExperimentConfig cfg;
    cfg.label = get_or<std::string>(j, "label", "");
    cfg.objective = parse_objective(get_required<json>(j, "experiment", "objective"), base);
    if (j.contains("optimizer")) cfg.optimizer = parse_optimizer(j.at("optimizer"));
    if (j.contains("init")) cfg.init = parse_init(j.at("init"));
    cfg.eta = get_or<double>(j, "eta", cfg.eta);
    if (j.contains("schedule")) {
        const std::string s = j.at("schedule").get<std::string>();
        if (s == "constant") {
            cfg.schedule = Schedule::Constant;
        } else if (s == "inverse_sqrt") {
            cfg.schedule = Schedule::InverseSqrt;
        } else {
            throw ConfigError("schedule: unknown value '" + s + "'");
        }
    }
    cfg.batch_size = get_or<std::size_t>(j, "batch_size", cfg.batch_size);
    if (j.contains("sampling")) {
        const std::string s = j.at("sampling").get<std::string>();
        if (s == "shuffle_each_epoch") {
            cfg.sampling = SamplingStrategy::ShuffleEachEpoch;
        } else if (s == "sequential_wrap") {
            cfg.sampling = SamplingStrategy::SequentialWrap;
        } else {
            throw ConfigError("sampling: unknown value '" + s + "'");
        }
    }
    cfg.max_steps = get_or<std::int64_t>(j, "max_steps", cfg.max_steps);
    cfg.eval_every = get_or<std::int64_t>(j, "eval_every", cfg.eval_every);
    cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
    cfg.snapshot_w = get_or<bool>(j, "snapshot_w", cfg.snapshot_w);
    cfg.validate();
    return cfg;
}

} // namespace

ExperimentConfig load_run_config(const std::filesystem::path& path) {
    const json j = parse_file(path);
    return parse_experiment(j, path.parent_path(), /*allow_optimizer=*/true);
}

CompareConfig load_compare_config(const std::filesystem::path& path) {
    const json j = parse_file(path);
    check_keys(j, "compare", {"base", "runs", "metric"});
    const json base = get_required<json>(j, "compare", "base");
    const ExperimentConfig shared =
        parse_experiment(base, path.parent_path(), /*allow_optimizer=*/false);

    CompareConfig out;
    if (j.contains("metric")) {
        const json m = j.at("metric");
        check_keys(m, "metric", {"kind", "threshold"});
        const std::string kind = get_required<std::string>(m, "metric", "kind");
        if (kind == "final_loss") {
            out.metric.kind = Metric::FinalLoss;
        } else if (kind == "steps_to_threshold") {
            out.metric.kind = Metric::StepsToThreshold;
            out.metric.threshold = get_required<double>(m, "metric", "threshold");
        } else {
            throw ConfigError("metric: unknown kind '" + kind + "'");
        }
    }

    const json runs = get_required<json>(j, "compare", "runs");
    if (!runs.is_array() || runs.empty()) {
        throw ConfigError("compare: 'runs' must be a non-empty array");
    }
    for (const json& entry : runs) {
        check_keys(entry, "run", {"label", "optimizer"});
        ExperimentConfig cfg = shared;
        cfg.label = get_or<std::string>(entry, "label", "");
        cfg.optimizer = parse_optimizer(get_required<json>(entry, "run", "optimizer"));
        cfg.validate();
        out.runs.push_back(std::move(cfg));
    }
    return out;
}

} // namespace deam
