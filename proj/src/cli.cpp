// Copyright 2026 The tempannot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tempannot/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tempannot/catalog.hpp"
#include "tempannot/errors.hpp"
#include "tempannot/evaluation.hpp"
#include "tempannot/hmm.hpp"
#include "tempannot/inference.hpp"
#include "tempannot/io.hpp"
#include "tempannot/simulator.hpp"
#include "tempannot/soft_labels.hpp"

namespace tempannot::cli {
namespace {

using nlohmann::json;

// Settings shared by every subcommand.  Values come from defaults, then the
// optional --config JSON file, then explicit flags.
struct RunConfig {
    std::vector<int> periods{30, 15, 10, 5, 1};
    double delta = 0.1;
    std::vector<double> prior;
    int boundary_window = 15;
    std::uint64_t seed = 42;
    std::string out_path;

    CategoryCatalog catalog() const { return CategoryCatalog(periods); }
    InferenceOptions inference() const { return {SwitchModel{delta}, prior}; }

    void validate() const {
        const auto cat = catalog();
        SwitchModel{delta}.validate(cat.size());
        if (!prior.empty()) (void)habit_posterior(std::vector<int>{0}, cat, inference());
        EvalWindowSpec{WindowMode::kBoundary, boundary_window}.validate();
    }

    json to_json(std::string_view command) const {
        return {{"command", command},        {"catalog", periods}, {"delta", delta},
                {"prior", prior},            {"boundary_window", boundary_window},
                {"seed", seed}};
    }
};

struct RawFlags {
    std::string catalog;
    double delta = 0.1;
    std::string config_path;
    int boundary_window = 15;
    std::uint64_t seed = 42;
    std::string out_path;
};

RunConfig resolve_config(const CLI::App& app, const RawFlags& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) throw InputError("cannot open config file '" + flags.config_path + "'");
        json j;
        try {
            in >> j;
            if (j.contains("catalog")) cfg.periods = j.at("catalog").get<std::vector<int>>();
            if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
            if (j.contains("prior")) cfg.prior = j.at("prior").get<std::vector<double>>();
            if (j.contains("boundary_window")) cfg.boundary_window = j.at("boundary_window").get<int>();
            if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        } catch (const json::exception& e) {
            throw ConfigError("invalid config file: " + std::string(e.what()));
        }
    }
    if (app.count("--catalog") > 0) cfg.periods = parse_period_list(flags.catalog);
    if (app.count("--delta") > 0) cfg.delta = flags.delta;
    if (app.count("--boundary-window") > 0) cfg.boundary_window = flags.boundary_window;
    if (app.count("--seed") > 0) cfg.seed = flags.seed;
    cfg.out_path = flags.out_path;
    cfg.validate();
    return cfg;
}

std::vector<EventAnnotation> load_annotations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open annotation file '" + path + "'");
    return read_annotations_csv(in);
}

// Writes `text` to --out when given, else to the result stream.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + cfg.out_path + "'");
    file << text;
}

std::string config_comment(const RunConfig& cfg, std::string_view command) {
    return "# tempannot " + std::string(command) + " config=" + cfg.to_json(command).dump();
}

// ---------------------------------------------------------------------------

struct InferHabitArgs {
    std::string input;
    std::vector<std::string> annotators;
};

int infer_habit(const RunConfig& cfg, const InferHabitArgs& args, std::ostream& out, std::ostream& err) {
    const auto events = load_annotations(args.input);
    const auto catalog = cfg.catalog();
    const std::set<std::string> wanted(args.annotators.begin(), args.annotators.end());

    json report = {{"config", cfg.to_json("infer-habit")}, {"annotators", json::array()}};
    for (const auto& [id, evs] : group_by_annotator(events)) {
        if (!wanted.empty() && wanted.count(id) == 0) continue;
        const auto inferred = infer_annotator(annotation_set(id, evs), catalog, cfg.inference());
        report["annotators"].push_back(to_json(inferred, catalog, evs));
    }
    if (report["annotators"].empty()) err << "warning: no annotations matched the requested annotators\n";
    emit(cfg, out, report.dump(2) + "\n");
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct SoftLabelArgs {
    std::string input;
    int pad = 30;
    double bias_fraction = 0.0;
};

int soft_labels(const RunConfig& cfg, const SoftLabelArgs& args, std::ostream& out) {
    if (args.pad < 0) throw ConfigError("--pad must be non-negative");
    if (!(args.bias_fraction >= 0.0 && args.bias_fraction < 1.0)) throw ConfigError("--bias-fraction must lie in [0, 1)");
    const auto events = load_annotations(args.input);
    const auto catalog = cfg.catalog();

    json config = cfg.to_json("soft-labels");
    config["pad"] = args.pad;
    config["bias_fraction"] = args.bias_fraction;
    std::ostringstream text;
    text << "# tempannot soft-labels config=" << config.dump() << '\n';
    text << "event_id,annotator_id,event_kind,start_period_minutes,end_period_minutes,timestamp,soft,hard\n";

    std::size_t event_id = 0;
    for (const auto& [id, evs] : group_by_annotator(events)) {
        const auto inferred = infer_annotator(annotation_set(id, evs), catalog, cfg.inference());
        for (std::size_t i = 0; i < evs.size(); ++i) {
            const auto& start_cat = catalog[inferred.map_indices[2 * i]];
            const auto& end_cat = catalog[inferred.map_indices[2 * i + 1]];
            const auto window = padded_window(evs[i], args.pad);
            const auto soft = soft_label(evs[i], start_cat, end_cat, window, {args.bias_fraction});
            const auto hard = hard_label(evs[i], window);
            for (std::size_t k = 0; k < soft.size(); ++k) {
                text << event_id << ',' << id << ',' << evs[i].event_kind << ',' << start_cat.period_minutes() << ','
                     << end_cat.period_minutes() << ',' << format_timestamp(soft.slot_time(k)) << ','
                     << format_double(soft.values[k]) << ',' << format_double(hard.values[k]) << '\n';
            }
            ++event_id;
        }
    }
    emit(cfg, out, text.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvaluateArgs {
    std::string labels;
    std::string predictions;
    std::string format = "json";
};

struct LabelRow {
    std::size_t event_id;
    Timestamp t;
    double soft;
    double hard;
};

std::vector<LabelRow> read_label_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open label file '" + path + "'");
    std::vector<LabelRow> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto f = split_csv_line(line);
        if (!header_seen) {
            header_seen = true;
            if (f.size() != 8 || f[0] != "event_id" || f[6] != "soft" || f[7] != "hard") {
                throw ParseError(line_no, "not a soft-labels file");
            }
            continue;
        }
        if (f.size() != 8) throw ParseError(line_no, "expected 8 columns");
        try {
            const double soft = std::stod(f[6]);
            const double hard = std::stod(f[7]);
            if (soft < 0.0 || soft > 1.0 || (hard != 0.0 && hard != 1.0)) throw InputError("label out of range");
            rows.push_back({static_cast<std::size_t>(std::stoull(f[0])), parse_timestamp(f[5]), soft, hard});
        } catch (const InputError& e) {
            throw ParseError(line_no, e.what());
        } catch (const std::logic_error&) {
            throw ParseError(line_no, "invalid number");
        }
    }
    if (rows.empty()) throw InputError("label file has no data rows");
    return rows;
}

json matrix_json(const SoftConfusionMatrix& m) {
    const auto p = precision(m);
    const auto r = recall(m);
    const auto f = f1(m);
    // Rows are the reference label, columns the prediction.
    return {{"confusion", {{"label_no", {{"pred_no", m.tn}, {"pred_yes", m.fp}}},
                           {"label_yes", {{"pred_no", m.fn}, {"pred_yes", m.tp}}}}},
            {"tp", m.tp},
            {"fp", m.fp},
            {"fn", m.fn},
            {"tn", m.tn},
            {"precision", p.value},
            {"recall", r.value},
            {"f1", f.value},
            {"degenerate", p.degenerate || r.degenerate || f.degenerate}};
}

int evaluate(const RunConfig& cfg, const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
    if (args.format != "json" && args.format != "csv") throw ConfigError("--format must be json or csv");
    const auto rows = read_label_rows(args.labels);
    std::ifstream pin(args.predictions);
    if (!pin) throw InputError("cannot open prediction file '" + args.predictions + "'");
    const auto prediction = read_series_csv(pin);
    const auto grid = prediction.window();

    // Reference labels on the prediction grid; overlapping events take the max.
    LabelSeries soft_ref{prediction.window_start, std::vector<double>(prediction.size(), 0.0)};
    LabelSeries hard_ref = soft_ref;
    std::map<std::size_t, std::pair<Timestamp, Timestamp>> hard_span;
    std::size_t outside = 0;
    for (const auto& row : rows) {
        if (row.hard > 0.0) {
            auto [it, inserted] = hard_span.try_emplace(row.event_id, row.t, row.t + 1);
            if (!inserted) {
                it->second.first = std::min(it->second.first, row.t);
                it->second.second = std::max(it->second.second, row.t + 1);
            }
        }
        if (!grid.contains(row.t)) {
            ++outside;
            continue;
        }
        const auto k = static_cast<std::size_t>(row.t - grid.start);
        soft_ref.values[k] = std::max(soft_ref.values[k], row.soft);
        hard_ref.values[k] = std::max(hard_ref.values[k], row.hard);
    }
    if (outside > 0) err << "warning: " << outside << " label slots fall outside the prediction grid\n";

    std::vector<Timestamp> boundaries;
    for (const auto& [id, span] : hard_span) {
        boundaries.push_back(span.first);
        boundaries.push_back(span.second);
    }
    const EvalWindowSpec full{WindowMode::kFull, cfg.boundary_window};
    const EvalWindowSpec boundary{WindowMode::kBoundary, cfg.boundary_window};
    const auto boundary_selection = boundary_slots(grid, boundaries, cfg.boundary_window);

    const auto hard_m = soft_confusion(hard_ref, prediction);
    const auto soft_m = soft_confusion(soft_ref, prediction);
    json report = {{"config", cfg.to_json("evaluate")},
                   {"slots", prediction.size()},
                   {"hard", matrix_json(hard_m)},
                   {"soft", matrix_json(soft_m)}};
    report["hard"]["mse_full"] = mse(hard_ref, prediction, full);
    report["soft"]["mse_full"] = mse(soft_ref, prediction, full);
    if (boundary_selection.empty()) {
        report["hard"]["mse_boundary"] = nullptr;
        report["soft"]["mse_boundary"] = nullptr;
    } else {
        report["hard"]["mse_boundary"] = mse(hard_ref, prediction, boundary, boundaries);
        report["soft"]["mse_boundary"] = mse(soft_ref, prediction, boundary, boundaries);
    }

    if (args.format == "json") {
        emit(cfg, out, report.dump(2) + "\n");
        return kExitOk;
    }
    std::ostringstream text;
    text << config_comment(cfg, "evaluate") << '\n';
    text << "metric,value,delta,catalog,boundary_window\n";
    std::string catalog_text;
    for (int p : cfg.periods) catalog_text += (catalog_text.empty() ? "" : ";") + std::to_string(p);
    for (const char* kind : {"hard", "soft"}) {
        for (const char* metric : {"tp", "fp", "fn", "tn", "precision", "recall", "f1", "mse_full", "mse_boundary"}) {
            const auto& v = report[kind][metric];
            text << kind << '.' << metric << ',' << (v.is_null() ? "" : format_double(v.get<double>())) << ','
                 << format_double(cfg.delta) << ',' << catalog_text << ',' << cfg.boundary_window << '\n';
        }
    }
    emit(cfg, out, text.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string experiment = "all";
    int events = 500;
    int trials = 1000;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + path.string() + "'");
    file << text;
}

int simulate(const RunConfig& cfg, const SimulateArgs& args, std::ostream& out) {
    if (cfg.out_path.empty()) throw ConfigError("simulate needs --out <directory>");
    if (args.experiment != "all" && args.experiment != "mse" && args.experiment != "f1" &&
        args.experiment != "error-rate") {
        throw ConfigError("--experiment must be all, mse, f1 or error-rate");
    }
    const std::filesystem::path dir(cfg.out_path);
    std::filesystem::create_directories(dir);
    const auto catalog = cfg.catalog();

    json config = cfg.to_json("simulate");
    config["events"] = args.events;
    config["trials"] = args.trials;
    const std::string header = "# tempannot simulate seed=" + std::to_string(cfg.seed) + " config=" + config.dump() + "\n";

    ExperimentConfig exp;
    exp.sim.seed = cfg.seed;
    exp.sim.n_events = args.events;
    exp.boundary_halfwidth_minutes = cfg.boundary_window;
    exp.inference = cfg.inference();

    const bool all = args.experiment == "all";
    if (all || args.experiment == "mse") {
        std::ostringstream text;
        text << header << "resolution_minutes,mse_hard,mse_soft\n";
        for (const auto& r : run_mse_experiment(exp, catalog)) {
            text << r.resolution_minutes << ',' << format_double(r.mse_hard) << ',' << format_double(r.mse_soft) << '\n';
        }
        write_file(dir / "mse.csv", text.str());
        out << (dir / "mse.csv").string() << '\n';
    }
    if (all || args.experiment == "f1") {
        std::ostringstream text;
        text << header << "resolution_minutes,bias_fraction,f1_hard,f1_soft\n";
        for (const auto& r : run_f1_experiment(exp, catalog)) {
            text << r.resolution_minutes << ',' << format_double(r.bias_fraction) << ',' << format_double(r.f1_hard)
                 << ',' << format_double(r.f1_soft) << '\n';
        }
        write_file(dir / "f1.csv", text.str());
        out << (dir / "f1.csv").string() << '\n';
    }
    if (all || args.experiment == "error-rate") {
        ErrorRateConfig er;
        er.seed = cfg.seed;
        er.trials = args.trials;
        er.inference = cfg.inference();
        std::ostringstream text;
        text << header << "true_period_minutes,n_annotations,error_rate\n";
        for (const auto& r : run_error_rate_experiment(er, catalog)) {
            text << r.true_period_minutes << ',' << r.n_annotations << ',' << format_double(r.error_rate) << '\n';
        }
        write_file(dir / "error_rate.csv", text.str());
        out << (dir / "error_rate.csv").string() << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct DetectArgs {
    std::string input;
    std::string params_path;
    bool fit = false;
    std::string posterior_path;
};

int detect(const RunConfig& cfg, const DetectArgs& args, std::ostream& out, std::ostream& err) {
    std::ifstream in(args.input);
    if (!in) throw InputError("cannot open sensor file '" + args.input + "'");
    const auto series = read_sensor_csv(in);

    HmmParams params;
    if (!args.params_path.empty()) {
        std::ifstream pin(args.params_path);
        if (!pin) throw InputError("cannot open HMM parameter file '" + args.params_path + "'");
        json j;
        try {
            pin >> j;
        } catch (const json::exception& e) {
            throw ConfigError(std::string("invalid HMM parameter file: ") + e.what());
        }
        params = hmm_params_from_json(j);
    } else if (args.fit) {
        params = initial_guess_from(series.humidity);
    } else {
        throw ConfigError("detect needs --params, --fit, or both");
    }

    json config = cfg.to_json("detect");
    if (args.fit) {
        const auto fit = fit_emissions(series.humidity, params);
        if (fit.degenerate) throw NumericError("HMM fit collapsed onto a single state");
        params = fit.params;
        config["fit_iterations"] = fit.iterations;
        config["fit_log_likelihood"] = fit.log_likelihoods.back();
        if (!fit.converged) err << "warning: EM stopped at the iteration limit\n";
    }
    config["hmm"] = to_json(params);

    const auto decoded = viterbi(params, series);
    std::ostringstream text;
    write_series_csv(text, decoded, "tempannot detect config=" + config.dump());
    emit(cfg, out, text.str());

    if (!args.posterior_path.empty()) {
        const LabelSeries post{series.start, posterior_on(params, series.humidity)};
        std::ostringstream ptext;
        write_series_csv(ptext, post, "tempannot detect posterior config=" + config.dump());
        write_file(args.posterior_path, ptext.str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

int histogram(const RunConfig& cfg, const std::string& input, std::ostream& out) {
    const auto events = load_annotations(input);
    const auto catalog = cfg.catalog();
    std::ostringstream text;
    text << config_comment(cfg, "histogram") << '\n';
    text << "annotator_id,period_minutes,count\n";
    for (const auto& [id, evs] : group_by_annotator(events)) {
        std::vector<std::size_t> counts(catalog.size(), 0);
        for (int m : annotation_set(id, evs).minutes) ++counts[catalog.coarsest_index(m)];
        for (std::size_t c = 0; c < catalog.size(); ++c) {
            text << id << ',' << catalog[c].period_minutes() << ',' << counts[c] << '\n';
        }
    }
    emit(cfg, out, text.str());
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Annotator time-resolution inference, soft labels and evaluation", "tempannot"};
    app.require_subcommand(1);
    app.fallthrough();

    RawFlags flags;
    app.add_option("--catalog", flags.catalog, "Comma-separated category periods, coarsest first (default 30,15,10,5,1)");
    app.add_option("--delta", flags.delta, "Probability of leaving the habitual category (default 0.1)");
    app.add_option("--config", flags.config_path, "JSON run configuration");
    app.add_option("--boundary-window", flags.boundary_window, "Half-width in minutes of boundary MSE windows (default 15)");
    app.add_option("--seed", flags.seed, "Random seed (default 42)");
    app.add_option("--out", flags.out_path, "Output file (directory for simulate)");

    InferHabitArgs infer_args;
    auto* infer_cmd = app.add_subcommand("infer-habit", "Posterior over each annotator's time-resolution habit");
    infer_cmd->add_option("annotations", infer_args.input, "Annotation CSV")->required();
    infer_cmd->add_option("--annotator", infer_args.annotators, "Restrict to these annotator ids");

    SoftLabelArgs soft_args;
    auto* soft_cmd = app.add_subcommand("soft-labels", "Per-minute soft and hard labels for every event");
    soft_cmd->add_option("annotations", soft_args.input, "Annotation CSV")->required();
    soft_cmd->add_option("--pad", soft_args.pad, "Minutes of padding around each event (default 30)");
    soft_cmd->add_option("--bias-fraction", soft_args.bias_fraction,
                         "Assumed reporting delay as a fraction of the inferred period (default 0)");

    EvaluateArgs eval_args;
    auto* eval_cmd = app.add_subcommand("evaluate", "Confusion matrices, F1 and MSE of predictions against labels");
    eval_cmd->add_option("--labels", eval_args.labels, "Output of soft-labels")->required();
    eval_cmd->add_option("--predictions", eval_args.predictions, "Prediction CSV (timestamp,value)")->required();
    eval_cmd->add_option("--format", eval_args.format, "json or csv (default json)");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Run the synthetic experiments");
    sim_cmd->add_option("--experiment", sim_args.experiment, "all, mse, f1 or error-rate (default all)");
    sim_cmd->add_option("--events", sim_args.events, "Simulated events per configuration (default 500)");
    sim_cmd->add_option("--trials", sim_args.trials, "Trials per point of the error-rate sweep (default 1000)");

    DetectArgs detect_args;
    auto* detect_cmd = app.add_subcommand("detect", "Decode shower on/off from humidity with a two-state HMM");
    detect_cmd->add_option("sensor", detect_args.input, "Sensor CSV (timestamp,humidity)")->required();
    detect_cmd->add_option("--params", detect_args.params_path, "HMM parameter JSON");
    detect_cmd->add_flag("--fit", detect_args.fit, "Fit the HMM with EM before decoding");
    detect_cmd->add_option("--posterior", detect_args.posterior_path, "Also write P(on) per minute to this CSV");

    std::string hist_input;
    auto* hist_cmd = app.add_subcommand("histogram", "Count annotated minutes by coarsest containing category");
    hist_cmd->add_option("annotations", hist_input, "Annotation CSV")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const auto cfg = resolve_config(app, flags);
        if (*infer_cmd) return infer_habit(cfg, infer_args, out, err);
        if (*soft_cmd) return soft_labels(cfg, soft_args, out);
        if (*eval_cmd) return evaluate(cfg, eval_args, out, err);
        if (*sim_cmd) return simulate(cfg, sim_args, out);
        if (*detect_cmd) return detect(cfg, detect_args, out, err);
        if (*hist_cmd) return histogram(cfg, hist_input, out);
    } catch (const NumericError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace tempannot::cli
