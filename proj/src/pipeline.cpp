#include "weaver/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "weaver/errors.hpp"
#include "weaver/io.hpp"
#include "weaver/match.hpp"
#include "weaver/trend_expr.hpp"

namespace weaver {

std::uint64_t derive_stage_seed(std::uint64_t global_seed, std::size_t stage_index) {
    // splitmix64 with the stage index riding on the increment constant
    std::uint64_t z =
        global_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(stage_index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

const std::vector<std::string> kStageKinds = {"oversample", "integral_match", "smooth",
                                              "repeat",     "trend",          "noise"};

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& path) {
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known) throw ValidationError(path + "." + item.key() + ": unknown key");
    }
}

double require_number(const json& obj, const char* key, const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_number()) throw ValidationError(path + "." + key + ": expected a number");
    return v.get<double>();
}

std::int64_t require_integer(const json& obj, const char* key, const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw ValidationError(path + "." + key + ": expected an integer");
    return v.get<std::int64_t>();
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_string()) throw ValidationError(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

}  // namespace

void check_stage_descriptor(const json& stage, const std::string& path) {
    if (!stage.is_object()) throw ValidationError(path + ": expected an object");
    if (!stage.contains("kind")) throw ValidationError(path + ".kind: missing");
    const std::string kind = require_string(stage, "kind", path);

    if (kind == "oversample") {
        check_keys(stage, {"kind", "n", "strategy", "alpha", "lambda", "gamma"}, path);
        if (!stage.contains("n")) throw ValidationError(path + ".n: missing");
        const auto n = require_integer(stage, "n", path);
        if (n < 2 || n > 1'000'000)
            throw ValidationError(path + ".n: must be in [2, 1000000], got " + std::to_string(n));
        if (stage.contains("strategy")) parse_strategy(require_string(stage, "strategy", path));
        for (const char* key : {"alpha", "lambda", "gamma"})
            if (stage.contains(key)) require_number(stage, key, path);
    } else if (kind == "integral_match") {
        check_keys(stage, {"kind", "kappa"}, path);
        if (stage.contains("kappa") && !(require_number(stage, "kappa", path) > 0.0))
            throw ValidationError(path + ".kappa: must be positive");
    } else if (kind == "smooth") {
        check_keys(stage, {"kind", "s"}, path);
        if (stage.contains("s") && !(require_number(stage, "s", path) >= 0.0))
            throw ValidationError(path + ".s: must be non-negative");
    } else if (kind == "repeat") {
        check_keys(stage, {"kind", "repeat_k"}, path);
        if (!stage.contains("repeat_k")) throw ValidationError(path + ".repeat_k: missing");
        const auto k = require_integer(stage, "repeat_k", path);
        if (k < 1 || k > 1'000'000)
            throw ValidationError(path + ".repeat_k: must be in [1, 1000000], got " +
                                  std::to_string(k));
    } else if (kind == "trend") {
        check_keys(stage, {"kind", "expr"}, path);
        if (!stage.contains("expr")) throw ValidationError(path + ".expr: missing");
        try {
            TrendExpr::parse(require_string(stage, "expr", path));
        } catch (const ValidationError& e) {
            throw ValidationError(path + ".expr: " + e.what());
        }
    } else if (kind == "noise") {
        check_keys(stage, {"kind", "snr_db", "std", "seed"}, path);
        const bool has_snr = stage.contains("snr_db");
        const bool has_std = stage.contains("std");
        if (has_snr == has_std)
            throw ValidationError(path + ": exactly one of snr_db / std is required");
        if (has_snr) {
            const json& v = stage["snr_db"];
            if (v.is_array()) {
                for (const auto& e : v)
                    if (!e.is_number())
                        throw ValidationError(path + ".snr_db: expected numbers in the sequence");
                if (v.empty()) throw ValidationError(path + ".snr_db: empty sequence");
            } else if (!v.is_number()) {
                throw ValidationError(path + ".snr_db: expected a number or a sequence");
            }
        }
        if (has_std && !(require_number(stage, "std", path) >= 0.0))
            throw ValidationError(path + ".std: must be non-negative");
        if (stage.contains("seed")) {
            const json& v = stage["seed"];
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
                throw ValidationError(path + ".seed: expected a non-negative integer");
        }
    } else {
        throw ValidationError(path + ".kind: unknown stage kind '" + kind + "'");
    }
}

namespace {

// Reference series for integral matching. When a repeat stage extended the
// domain past the original, the original is tiled by whole periods and
// clipped back to the current domain end.
TimeSeries reference_for(const TimeSeries& original, const TimeSeries& current) {
    const double tol = kUniformSpacingTol * std::max(1.0, original.span());
    if (current.x_last() <= original.x_last() + tol) return original;

    const double step = uniform_step(original);  // only uniform references tile
    const double period = static_cast<double>(original.size()) * step;
    const int copies = std::max(
        1, static_cast<int>(std::ceil((current.x_last() - original.x_first()) / period)));
    TimeSeries tiled = repeat(original, copies);

    TimeSeries ref;
    for (std::size_t i = 0; i < tiled.size(); ++i) {
        if (tiled.x[i] > current.x_last() + tol) break;
        ref.x.push_back(tiled.x[i]);
        ref.y.push_back(tiled.y[i]);
    }
    if (ref.x.back() < current.x_last() - tol) {
        // partial final interval: close it at the domain end, keeping the level
        ref.x.push_back(current.x_last());
        ref.y.push_back(ref.y.back());
    }
    return ref;
}

NoiseSpec noise_spec_from(const json& stage) {
    NoiseSpec spec;
    if (stage.contains("snr_db")) {
        const json& v = stage["snr_db"];
        if (v.is_array())
            spec.snr_db = v.get<std::vector<double>>();
        else
            spec.snr_db = std::vector<double>{v.get<double>()};
    }
    if (stage.contains("std")) spec.std_dev = stage["std"].get<double>();
    spec.seed = stage["seed"].get<std::uint64_t>();
    return spec;
}

}  // namespace

Weaver::Weaver(TimeSeries ts) : original_(std::move(ts)), current_(original_) {
    check_valid(original_);
}

Weaver& Weaver::apply_stage(const json& stage) {
    const std::size_t index = log_.size();
    std::string kind = "?";
    auto context = [&](const char* what) {
        return "stage " + std::to_string(index) + " (" + kind + "): " + what;
    };
    try {
        check_stage_descriptor(stage, "stage");
        kind = stage["kind"].get<std::string>();
        if (kind == "oversample") {
            OversampleSpec spec;
            spec.n = static_cast<int>(stage["n"].get<std::int64_t>());
            if (stage.contains("strategy"))
                spec.strategy = parse_strategy(stage["strategy"].get<std::string>());
            if (stage.contains("alpha")) spec.alpha = stage["alpha"].get<double>();
            if (stage.contains("lambda")) spec.lambda = stage["lambda"].get<double>();
            if (stage.contains("gamma")) spec.gamma = stage["gamma"].get<double>();
            current_ = weaver::oversample(current_, spec);
        } else if (kind == "integral_match") {
            MatchSpec spec;
            if (stage.contains("kappa")) spec.kappa = stage["kappa"].get<double>();
            spec.reference = reference_for(original_, current_);
            current_ = weaver::integral_match(current_, spec, &warnings_);
        } else if (kind == "smooth") {
            SmoothSpec spec;
            if (stage.contains("s")) spec.s = stage["s"].get<double>();
            current_ = weaver::smooth(current_, spec);
        } else if (kind == "repeat") {
            current_ = weaver::repeat(current_, static_cast<int>(stage["repeat_k"].get<std::int64_t>()));
        } else if (kind == "trend") {
            current_ = weaver::apply_trend(current_, parse_trend(stage["expr"].get<std::string>()));
        } else if (kind == "noise") {
            if (!stage.contains("seed"))
                throw ValidationError(
                    "noise stage needs a seed here; run_pipeline derives one from the global seed");
            current_ = weaver::add_noise(current_, noise_spec_from(stage));
        }
    } catch (const ValidationError& e) {
        throw ValidationError(context(e.what()));
    } catch (const NumericError& e) {
        throw NumericError(context(e.what()));
    } catch (const IoError& e) {
        throw IoError(context(e.what()));
    }
    log_.push_back(stage);
    return *this;
}

Weaver& Weaver::oversample(const OversampleSpec& spec) {
    return apply_stage(json{{"kind", "oversample"},
                            {"n", spec.n},
                            {"strategy", to_string(spec.strategy)},
                            {"alpha", spec.alpha},
                            {"lambda", spec.lambda},
                            {"gamma", spec.gamma}});
}

Weaver& Weaver::integral_match(double kappa) {
    return apply_stage(json{{"kind", "integral_match"}, {"kappa", kappa}});
}

Weaver& Weaver::smooth(std::optional<double> s) {
    json stage{{"kind", "smooth"}};
    if (s) stage["s"] = *s;
    return apply_stage(stage);
}

Weaver& Weaver::repeat(int k) {
    return apply_stage(json{{"kind", "repeat"}, {"repeat_k", k}});
}

Weaver& Weaver::trend(const std::string& expr) {
    return apply_stage(json{{"kind", "trend"}, {"expr", expr}});
}

Weaver& Weaver::noise(const NoiseSpec& spec) {
    json stage{{"kind", "noise"}, {"seed", spec.seed}};
    if (spec.snr_db) {
        if (spec.snr_db->size() == 1)
            stage["snr_db"] = spec.snr_db->front();
        else
            stage["snr_db"] = *spec.snr_db;
    }
    if (spec.std_dev) stage["std"] = *spec.std_dev;
    return apply_stage(stage);
}

Interpolant Weaver::to_function(InterpolantKind kind) const {
    return Interpolant(current_, kind);
}

Weaver replay(TimeSeries original, const json& stage_log) {
    if (!stage_log.is_array()) throw ValidationError("stage log must be an array");
    Weaver wv(std::move(original));
    for (const auto& stage : stage_log) wv.apply_stage(stage);
    return wv;
}

PipelineConfig parse_pipeline_config(const json& doc) {
    if (!doc.is_object()) throw ValidationError("config: root must be an object");
    check_keys(doc, {"input", "stages", "seed", "output"}, "config");

    PipelineConfig cfg;
    if (!doc.contains("input")) throw ValidationError("config.input: missing");
    const json& input = doc["input"];
    if (!input.is_object()) throw ValidationError("config.input: expected an object");
    check_keys(input, {"dataset", "csv"}, "config.input");
    const bool has_dataset = input.contains("dataset");
    const bool has_csv = input.contains("csv");
    if (has_dataset == has_csv)
        throw ValidationError("config.input: exactly one of dataset / csv is required");
    if (has_dataset) cfg.dataset = require_string(input, "dataset", "config.input");
    if (has_csv) cfg.csv_path = require_string(input, "csv", "config.input");

    if (doc.contains("seed")) {
        const json& v = doc["seed"];
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            throw ValidationError("config.seed: expected a non-negative integer");
        cfg.seed = v.get<std::uint64_t>();
    }

    if (doc.contains("stages")) {
        const json& stages = doc["stages"];
        if (!stages.is_array()) throw ValidationError("config.stages: expected an array");
        for (std::size_t i = 0; i < stages.size(); ++i) {
            check_stage_descriptor(stages[i], "config.stages[" + std::to_string(i) + "]");
            cfg.stages.push_back(stages[i]);
        }
    }

    if (doc.contains("output")) {
        const json& output = doc["output"];
        if (!output.is_object()) throw ValidationError("config.output: expected an object");
        check_keys(output, {"csv", "json", "svg", "average_n"}, "config.output");
        if (output.contains("csv")) cfg.out_csv = require_string(output, "csv", "config.output");
        if (output.contains("json")) cfg.out_json = require_string(output, "json", "config.output");
        if (output.contains("svg")) cfg.out_svg = require_string(output, "svg", "config.output");
        if (output.contains("average_n")) {
            const auto n = require_integer(output, "average_n", "config.output");
            if (n < 1 || n > 1'000'000)
                throw ValidationError("config.output.average_n: must be in [1, 1000000], got " +
                                      std::to_string(n));
            cfg.average_n = static_cast<int>(n);
        }
    }
    return cfg;
}

std::vector<json> resolved_stages(const PipelineConfig& config) {
    std::vector<json> stages = config.stages;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        if (stages[i].value("kind", "") == "noise" && !stages[i].contains("seed"))
            stages[i]["seed"] = derive_stage_seed(config.seed, i);
    }
    return stages;
}

Weaver run_pipeline(const PipelineConfig& config, const std::vector<DatasetRecord>& extra_datasets) {
    TimeSeries input = config.dataset.empty() ? read_csv_file(config.csv_path)
                                              : load_dataset(config.dataset, extra_datasets);
    Weaver wv(std::move(input));
    for (const auto& stage : resolved_stages(config)) wv.apply_stage(stage);
    return wv;
}

}  // namespace weaver
