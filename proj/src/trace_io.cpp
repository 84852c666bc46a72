#include "deam/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <json.hpp>

#include "deam/errors.hpp"

namespace deam {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary); // binary keeps bytes identical across re-runs
    if (!out) throw IoError(path.string() + ": cannot open file for writing");
    return out;
}

nlohmann::json record_to_json(const StepRecord& rec) {
    nlohmann::json j;
    j["t"] = rec.t;
    j["loss"] = rec.loss;
    j["grad_norm"] = rec.grad_norm;
    if (rec.theta) j["theta"] = *rec.theta;
    if (rec.beta1) j["beta1"] = *rec.beta1;
    if (rec.d) j["d"] = *rec.d;
    if (rec.w) j["w"] = *rec.w;
    return j;
}

struct Range {
    double lo = 0.0, hi = 0.0;
    bool seen = false;
    void add(double x) {
        lo = seen ? std::min(lo, x) : x;
        hi = seen ? std::max(hi, x) : x;
        seen = true;
    }
};

} // namespace

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_trace_jsonl(const Trace& trace, const std::filesystem::path& path) {
    auto out = open_out(path);
    for (const StepRecord& rec : trace.records) {
        out << record_to_json(rec).dump() << '\n';
    }
    if (!out) throw IoError(path.string() + ": write failed");
}

void write_summary_json(const Trace& trace, const std::filesystem::path& path) {
    nlohmann::json j;
    j["optimizer"] = optimizer_name(trace.config.optimizer);
    j["label"] = trace.config.effective_label();
    j["steps_run"] = trace.steps_run;
    j["records"] = trace.records.size();
    j["final_loss"] = trace.final_loss;
    j["eta"] = trace.config.eta;
    j["seed"] = trace.config.seed;

    Range theta, beta1, d, grad_norm;
    for (const StepRecord& rec : trace.records) {
        grad_norm.add(rec.grad_norm);
        if (rec.theta) theta.add(*rec.theta);
        if (rec.beta1) beta1.add(*rec.beta1);
        if (rec.d) d.add(*rec.d);
    }
    j["grad_norm_range"] = {grad_norm.lo, grad_norm.hi};
    if (theta.seen) {
        j["theta_range"] = {theta.lo, theta.hi};
        j["beta1_range"] = {beta1.lo, beta1.hi};
        j["d_range"] = {d.lo, d.hi};
    }

    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError(path.string() + ": write failed");
}

void write_comparison_csv(const ComparisonTable& table, const std::filesystem::path& path) {
    auto out = open_out(path);
    const bool with_hits = table.metric.kind == Metric::StepsToThreshold;
    out << "index,label,optimizer,final_loss";
    if (with_hits) out << ",steps_to_threshold";
    out << ",trace_file\n";
    for (const ComparisonRow& row : table.rows) {
        out << row.index << ',' << row.label << ',' << row.optimizer << ','
            << format_double(row.final_loss);
        if (with_hits) out << ',' << row.steps_to_threshold;
        out << ',' << row.trace_file << '\n';
    }
    if (!out) throw IoError(path.string() + ": write failed");
}

void write_ablation_csv(const CompareResult& result, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "index,variant,final_loss,theta_min,theta_max,beta1_min,beta1_max,d_min,d_max,"
           "trace_file\n";
    for (std::size_t i = 0; i < result.table.rows.size(); ++i) {
        const ComparisonRow& row = result.table.rows[i];
        Range theta, beta1, d;
        for (const StepRecord& rec : result.traces[i].records) {
            if (rec.theta) theta.add(*rec.theta);
            if (rec.beta1) beta1.add(*rec.beta1);
            if (rec.d) d.add(*rec.d);
        }
        out << row.index << ',' << row.label << ',' << format_double(row.final_loss) << ','
            << format_double(theta.lo) << ',' << format_double(theta.hi) << ','
            << format_double(beta1.lo) << ',' << format_double(beta1.hi) << ','
            << format_double(d.lo) << ',' << format_double(d.hi) << ',' << row.trace_file
            << '\n';
    }
    if (!out) throw IoError(path.string() + ": write failed");
}

} // namespace deam
