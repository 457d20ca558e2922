// weaver: recreate fine-grained semi-synthetic traffic series from averaged
// measurements, drive declarative processing pipelines, and render SVG charts.
//
// Exit codes: 0 success, 1 I/O failure, 2 validation/config error,
// 3 numeric stage failure. Errors print one line to stderr:
//   error[io|validation|numeric]: message

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "weaver/datasets.hpp"
#include "weaver/errors.hpp"
#include "weaver/io.hpp"
#include "weaver/pipeline.hpp"
#include "weaver/svg.hpp"
#include "weaver/time_series.hpp"
#include "weaver/transform.hpp"

namespace {

using weaver::json;

std::string one_line(std::string msg) {
    for (auto& c : msg)
        if (c == '\n') c = ';';
    return msg;
}

void print_warnings(const weaver::Warnings& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// Registry extension: --datasets flag first, then the WEAVER_DATASETS env var.
std::vector<weaver::DatasetRecord> extra_datasets(const std::string& flag_path) {
    std::vector<weaver::DatasetRecord> extra;
    auto merge = [&extra](const std::string& path) {
        for (auto& rec : weaver::load_patterns_file(path)) extra.push_back(std::move(rec));
    };
    if (!flag_path.empty()) merge(flag_path);
    if (const char* env = std::getenv("WEAVER_DATASETS"); env && *env) merge(env);
    return extra;
}

json load_config_file(const std::string& path) {
    const std::string text = weaver::read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw weaver::ValidationError(path + ": " + e.what());
    }
}

struct InlineStageFlags {
    std::optional<int> oversample_n;
    std::string strategy;
    std::optional<double> alpha, lambda, gamma;
    bool integral_match = false;
    std::optional<double> kappa;
    std::optional<double> s;
    bool smooth_auto = false;
    std::optional<int> repeat_k;
    std::string trend_expr;
    std::optional<double> snr_db;
    std::optional<double> std_dev;
};

// Builds the canonical chain (oversample, integral_match, smooth, repeat,
// trend, noise) from inline flags; config files express arbitrary orders.
json stages_from_flags(const InlineStageFlags& f) {
    json stages = json::array();
    if (f.oversample_n) {
        json st{{"kind", "oversample"}, {"n", *f.oversample_n}};
        if (!f.strategy.empty()) st["strategy"] = f.strategy;
        if (f.alpha) st["alpha"] = *f.alpha;
        if (f.lambda) st["lambda"] = *f.lambda;
        if (f.gamma) st["gamma"] = *f.gamma;
        stages.push_back(st);
    }
    if (f.integral_match || f.kappa) {
        json st{{"kind", "integral_match"}};
        if (f.kappa) st["kappa"] = *f.kappa;
        stages.push_back(st);
    }
    if (f.s || f.smooth_auto) {
        json st{{"kind", "smooth"}};
        if (f.s) st["s"] = *f.s;
        stages.push_back(st);
    }
    if (f.repeat_k) stages.push_back(json{{"kind", "repeat"}, {"repeat_k", *f.repeat_k}});
    if (!f.trend_expr.empty()) stages.push_back(json{{"kind", "trend"}, {"expr", f.trend_expr}});
    if (f.snr_db || f.std_dev) {
        json st{{"kind", "noise"}};
        if (f.snr_db) st["snr_db"] = *f.snr_db;
        if (f.std_dev) st["std"] = *f.std_dev;
        stages.push_back(st);
    }
    return stages;
}

std::string stage_panel_title(const std::string& kind) {
    if (kind == "oversample") return "Oversampled";
    if (kind == "integral_match") return "Matched";
    if (kind == "smooth") return "Smoothed";
    if (kind == "repeat") return "Repeated";
    if (kind == "trend") return "Trended";
    if (kind == "noise") return "Noised";
    return kind;
}

std::string lettered(std::size_t index, const std::string& title) {
    const char letter = static_cast<char>('a' + static_cast<char>(index));
    return std::string(1, letter) + ") " + title;
}

json run_metadata(const weaver::PipelineConfig& cfg, const weaver::Weaver& wv) {
    json meta;
    meta["input"] = cfg.dataset.empty() ? json{{"csv", cfg.csv_path}}
                                        : json{{"dataset", cfg.dataset}};
    meta["seed"] = cfg.seed;
    meta["rng"] = weaver::kNoiseRngAlgorithm;
    meta["stages"] = wv.stage_log();
    meta["warnings"] = wv.warnings();
    return meta;
}

int cmd_datasets_list(const std::string& datasets_flag) {
    auto names = weaver::list_datasets();
    for (const auto& rec : extra_datasets(datasets_flag)) names.push_back(rec.name);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    for (const auto& name : names) std::cout << name << "\n";
    return 0;
}

int cmd_datasets_show(const std::string& name, const std::string& datasets_flag) {
    const auto ts = weaver::load_dataset(name, extra_datasets(datasets_flag));
    for (std::size_t i = 0; i < ts.y.size(); ++i) {
        if (i) std::cout << ',';
        std::cout << weaver::format_double(ts.y[i]);
    }
    std::cout << "\n";
    return 0;
}

int cmd_generate(const weaver::PipelineConfig& cfg, const std::string& datasets_flag) {
    const auto extra = extra_datasets(datasets_flag);
    const weaver::Weaver wv = weaver::run_pipeline(cfg, extra);
    weaver::Warnings warnings = wv.warnings();

    if (cfg.out_csv.empty())
        weaver::write_csv(std::cout, wv.get());
    else
        weaver::write_csv_file(cfg.out_csv, wv.get());

    if (!cfg.out_json.empty())
        weaver::write_text_file(cfg.out_json, run_metadata(cfg, wv).dump(2) + "\n");

    if (!cfg.out_svg.empty()) {
        std::vector<weaver::SvgPanel> panels;
        panels.push_back({"a) Original", wv.get_original(), weaver::PlotStyle::steps_post});
        panels.push_back({"b) Processed", wv.get(), weaver::PlotStyle::line});
        if (cfg.average_n) {
            const auto averaged = weaver::average(wv.get(), *cfg.average_n, &warnings);
            panels.push_back({"c) Averaged", averaged, weaver::PlotStyle::steps_post});
        }
        weaver::write_text_file(cfg.out_svg, weaver::render_svg(panels));
    }
    print_warnings(warnings);
    return 0;
}

int cmd_plot(const weaver::PipelineConfig& cfg, const std::string& out_path,
             const std::string& datasets_flag) {
    const auto extra = extra_datasets(datasets_flag);
    weaver::TimeSeries input = cfg.dataset.empty()
                                   ? weaver::read_csv_file(cfg.csv_path)
                                   : weaver::load_dataset(cfg.dataset, extra);
    weaver::Weaver wv(std::move(input));

    std::vector<weaver::SvgPanel> panels;
    panels.push_back({lettered(0, "Original"), wv.get_original(), weaver::PlotStyle::steps_post});
    for (const auto& stage : weaver::resolved_stages(cfg)) {
        wv.apply_stage(stage);
        const std::string kind = stage["kind"].get<std::string>();
        panels.push_back({lettered(panels.size(), stage_panel_title(kind)), wv.get(),
                          weaver::PlotStyle::line});
    }
    weaver::Warnings warnings = wv.warnings();
    if (cfg.average_n) {
        const auto averaged = weaver::average(wv.get(), *cfg.average_n, &warnings);
        panels.push_back({lettered(panels.size(), "Averaged"), averaged,
                          weaver::PlotStyle::steps_post});
    }
    weaver::write_text_file(out_path, weaver::render_svg(panels));
    print_warnings(warnings);
    return 0;
}

int cmd_average(const std::string& input, int n, const std::string& output) {
    const auto ts = weaver::read_csv_file(input);
    weaver::Warnings warnings;
    const auto out = weaver::average(ts, n, &warnings);
    if (output.empty())
        weaver::write_csv(std::cout, out);
    else
        weaver::write_csv_file(output, out);
    print_warnings(warnings);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-synthetic traffic series generator"};
    app.require_subcommand(1);

    std::string datasets_flag;
    app.add_option("--datasets", datasets_flag,
                   "pattern file extending the bundled registry (also: WEAVER_DATASETS env var)");

    // datasets list | show <name>
    auto* datasets = app.add_subcommand("datasets", "inspect the daily pattern registry");
    datasets->require_subcommand(1);
    datasets->add_subcommand("list", "print all dataset names");
    std::string show_name;
    auto* show = datasets->add_subcommand("show", "print the 24 hourly values of one dataset");
    show->add_option("name", show_name, "dataset name")->required();

    // generate
    auto* generate = app.add_subcommand("generate", "run a pipeline and write the result");
    std::string config_path, gen_dataset, gen_csv, out_csv, out_json, out_svg;
    std::uint64_t seed = 0;
    std::optional<int> average_n;
    InlineStageFlags flags;
    generate->add_option("--config", config_path, "pipeline config (JSON)");
    generate->add_option("--dataset", gen_dataset, "input dataset name");
    generate->add_option("--input", gen_csv, "input CSV path");
    generate->add_option("--seed", seed, "global seed for derived stage seeds");
    generate->add_option("--output", out_csv, "output CSV path (default: stdout)");
    generate->add_option("--json", out_json, "write stage log and seeds as JSON");
    generate->add_option("--svg", out_svg, "write an original/processed/averaged chart");
    generate->add_option("--average_n", average_n, "verification panel group size");
    generate->add_option("--n", flags.oversample_n, "oversample: samples per interval");
    generate->add_option("--strategy", flags.strategy, "oversample strategy token");
    generate->add_option("--alpha", flags.alpha, "oversample window fraction (0,1]");
    generate->add_option("--lambda", flags.lambda, "oversample linear/exp mix [0,1]");
    generate->add_option("--gamma", flags.gamma, "oversample exponential shape");
    generate->add_flag("--integral-match", flags.integral_match, "add an integral_match stage");
    generate->add_option("--kappa", flags.kappa, "integral match weight decay (implies stage)");
    generate->add_option("--s", flags.s, "smoothing condition (implies smooth stage)");
    generate->add_flag("--smooth-auto", flags.smooth_auto, "smooth with the automatic condition");
    generate->add_option("--repeat_k", flags.repeat_k, "repeat the series k times");
    generate->add_option("--trend", flags.trend_expr, "trend expression over t");
    generate->add_option("--snr_db", flags.snr_db, "noise signal-to-noise ratio in dB");
    generate->add_option("--std", flags.std_dev, "noise standard deviation");

    // plot
    auto* plot = app.add_subcommand("plot", "render one panel per pipeline stage");
    std::string plot_config, plot_out;
    plot->add_option("--config", plot_config, "pipeline config (JSON)")->required();
    plot->add_option("--output", plot_out, "output SVG path");

    // average
    auto* avg = app.add_subcommand("average", "re-average a fine CSV series");
    std::string avg_input, avg_output;
    int avg_n = 0;
    avg->add_option("--input", avg_input, "input CSV path")->required();
    avg->add_option("--n", avg_n, "intervals per group")->required();
    avg->add_option("--output", avg_output, "output CSV path (default: stdout)");

    try {
        app.parse(argc, argv);

        if (datasets->parsed()) {
            if (show->parsed()) return cmd_datasets_show(show_name, datasets_flag);
            return cmd_datasets_list(datasets_flag);
        }

        if (generate->parsed()) {
            weaver::PipelineConfig cfg;
            if (!config_path.empty()) {
                cfg = weaver::parse_pipeline_config(load_config_file(config_path));
            } else {
                json doc;
                if (gen_dataset.empty() == gen_csv.empty())
                    throw weaver::ValidationError(
                        "generate: exactly one of --dataset / --input is required "
                        "(or use --config)");
                doc["input"] = gen_dataset.empty() ? json{{"csv", gen_csv}}
                                                   : json{{"dataset", gen_dataset}};
                doc["seed"] = seed;
                doc["stages"] = stages_from_flags(flags);
                cfg = weaver::parse_pipeline_config(doc);
            }
            // command-line output destinations extend/override the config
            if (!out_csv.empty()) cfg.out_csv = out_csv;
            if (!out_json.empty()) cfg.out_json = out_json;
            if (!out_svg.empty()) cfg.out_svg = out_svg;
            if (average_n) cfg.average_n = *average_n;
            return cmd_generate(cfg, datasets_flag);
        }

        if (plot->parsed()) {
            const auto cfg = weaver::parse_pipeline_config(load_config_file(plot_config));
            const std::string out = !plot_out.empty() ? plot_out : cfg.out_svg;
            if (out.empty())
                throw weaver::ValidationError("plot: --output or config output.svg is required");
            return cmd_plot(cfg, out, datasets_flag);
        }

        if (avg->parsed()) return cmd_average(avg_input, avg_n, avg_output);

        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error[validation]: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const weaver::IoError& e) {
        std::cerr << "error[io]: " << one_line(e.what()) << "\n";
        return 1;
    } catch (const weaver::ValidationError& e) {
        std::cerr << "error[validation]: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const weaver::NumericError& e) {
        std::cerr << "error[numeric]: " << one_line(e.what()) << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << one_line(e.what()) << "\n";
        return 1;
    }
}
