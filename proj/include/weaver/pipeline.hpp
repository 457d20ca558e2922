#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "weaver/datasets.hpp"
#include "weaver/interpolant.hpp"
#include "weaver/oversample.hpp"
#include "weaver/time_series.hpp"
#include "weaver/transform.hpp"

namespace weaver {

using json = nlohmann::json;

/// Deterministic per-stage seed: splitmix64 of
/// global_seed + (stage_index + 1) * 0x9E3779B97F4A7C15.
std::uint64_t derive_stage_seed(std::uint64_t global_seed, std::size_t stage_index);

/// Checks one stage descriptor (an object with "kind" plus stage parameters)
/// and returns it unchanged. `path` prefixes error messages, e.g. "stages[2]".
/// Noise descriptors must already carry a seed at this level.
void check_stage_descriptor(const json& stage, const std::string& path);

/// Wraps a series and chains processing stages over it. The construction-time
/// original is never mutated; every applied stage is appended to a log that
/// replays to a bit-identical result. Integral matching always references the
/// original (tiled to cover the domain if a repeat stage extended it).
class Weaver {
public:
    explicit Weaver(TimeSeries ts);

    /// Applies one stage described as JSON and logs it. All convenience
    /// methods below funnel through here, so imperative chains and replayed
    /// logs follow the same code path.
    Weaver& apply_stage(const json& stage);

    Weaver& oversample(const OversampleSpec& spec);
    Weaver& integral_match(double kappa = 3.0);
    Weaver& smooth(std::optional<double> s = std::nullopt);
    Weaver& repeat(int k);
    Weaver& trend(const std::string& expr);
    Weaver& noise(const NoiseSpec& spec);

    const TimeSeries& get() const { return current_; }
    const TimeSeries& get_original() const { return original_; }
    Interpolant to_function(InterpolantKind kind = InterpolantKind::natural_cubic) const;

    const json& stage_log() const { return log_; }
    const Warnings& warnings() const { return warnings_; }

private:
    TimeSeries original_;
    TimeSeries current_;
    json log_ = json::array();
    Warnings warnings_;
};

/// Re-runs a stage log against a fresh original.
Weaver replay(TimeSeries original, const json& stage_log);

/// Declarative pipeline: input source, ordered stages, global seed, outputs.
struct PipelineConfig {
    std::string dataset;   // exactly one of dataset / csv_path is set
    std::string csv_path;
    std::uint64_t seed = 0;
    std::vector<json> stages;
    std::string out_csv;
    std::string out_json;
    std::string out_svg;
    std::optional<int> average_n;
};

/// Strict parse: unknown keys anywhere are rejected with the offending path.
PipelineConfig parse_pipeline_config(const json& doc);

/// Stage list with noise seeds resolved (absent seeds derived from the global
/// seed and the stage index).
std::vector<json> resolved_stages(const PipelineConfig& config);

/// Loads the input, applies all stages in order. `extra_datasets` extends the
/// bundled registry for name lookups.
Weaver run_pipeline(const PipelineConfig& config,
                    const std::vector<DatasetRecord>& extra_datasets = {});

}  // namespace weaver
