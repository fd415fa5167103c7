#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "entailguard/demo_model.hpp"
#include "entailguard/detector.hpp"
#include "entailguard/local_backend.hpp"
#include "entailguard/manifest.hpp"
#include "entailguard/metrics.hpp"
#include "entailguard/mock_backend.hpp"
#include "entailguard/predictions.hpp"
#include "entailguard/remote_backend.hpp"
#include "entailguard/report.hpp"
#include "entailguard/version.hpp"

namespace eg = entailguard;
namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw eg::ParseError("cannot open file " + path);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw eg::ParseError("cannot write file " + path);
    out << content;
}

std::string six_places(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// Flags shared by detect and compare.
struct BackendFlags {
    std::string backend = "mock";
    std::string backend_dm, backend_mt, backend_pg;  // per-task overrides
    std::string mock_table;
    std::string model_dir;
    std::string endpoint;
    bool multilingual = false;  // declared capability for remote backends
};

struct DetectionFlags {
    std::string mode = "bi";
    double threshold = 0.5;
    std::string direction = "hyp2src";
    std::string decision = "threshold";
    int jobs = 1;
    bool lenient = false;
};

void add_backend_flags(CLI::App* cmd, BackendFlags& flags) {
    cmd->add_option("--backend", flags.backend,
                    "Backend: mock|local|remote, optionally kind:detail "
                    "(mock:table.json, local:model-dir, remote:http://host:port)");
    cmd->add_option("--backend-dm", flags.backend_dm, "Backend override for DM samples");
    cmd->add_option("--backend-mt", flags.backend_mt, "Backend override for MT samples");
    cmd->add_option("--backend-pg", flags.backend_pg, "Backend override for PG samples");
    cmd->add_option("--mock-table", flags.mock_table, "Judgment table for the mock backend");
    cmd->add_option("--model-dir", flags.model_dir,
                    "Model directory for the local backend (env ENTAIL_GUARD_MODEL_DIR)");
    cmd->add_option("--endpoint", flags.endpoint, "URL for the remote backend");
    cmd->add_flag("--multilingual", flags.multilingual,
                  "Declare the remote endpoint's model multilingual");
}

void add_detection_flags(CLI::App* cmd, DetectionFlags& flags) {
    cmd->add_option("--threshold", flags.threshold, "Decision threshold in (0,1)")
        ->default_val(0.5);
    cmd->add_option("--direction", flags.direction, "Unidirectional direction: hyp2src|src2hyp")
        ->check(CLI::IsMember({"hyp2src", "src2hyp"}));
    cmd->add_option("--decision", flags.decision, "Decision rule: threshold|argmax")
        ->check(CLI::IsMember({"threshold", "argmax"}));
    cmd->add_option("--jobs", flags.jobs, "Parallel backend queries")->check(CLI::Range(1, 256));
    cmd->add_flag("--lenient", flags.lenient,
                  "Record failure verdicts instead of aborting on backend errors");
}

std::shared_ptr<eg::NliBackend> build_backend(const std::string& spec, const BackendFlags& flags) {
    std::string kind = spec, detail;
    if (const auto colon = spec.find(':'); colon != std::string::npos) {
        kind = spec.substr(0, colon);
        detail = spec.substr(colon + 1);
    }

    if (kind == "mock") {
        std::string table_path = !detail.empty() ? detail : flags.mock_table;
        if (table_path.empty()) return std::make_shared<eg::MockBackend>();
        return std::make_shared<eg::MockBackend>(
            eg::MockBackend::from_json(read_file(table_path), "mock:" + table_path));
    }
    if (kind == "local") {
        std::string dir = !detail.empty() ? detail : flags.model_dir;
        if (dir.empty())
            if (const char* env = std::getenv("ENTAIL_GUARD_MODEL_DIR")) dir = env;
        if (dir.empty())
            throw eg::ConfigError(
                "local backend needs a model directory (local:<dir>, --model-dir, or "
                "ENTAIL_GUARD_MODEL_DIR)");
        return std::shared_ptr<eg::NliBackend>(eg::LocalBackend::load(dir));
    }
    if (kind == "remote") {
        std::string url = !detail.empty() ? detail : flags.endpoint;
        if (url.empty())
            throw eg::ConfigError("remote backend needs an endpoint (remote:<url> or --endpoint)");
        eg::RemoteBackend::Options options;
        options.multilingual = flags.multilingual;
        return std::make_shared<eg::RemoteBackend>(url, options);
    }
    throw eg::ConfigError("unknown backend kind '" + kind + "' (expected mock, local, or remote)");
}

struct BackendSet {
    std::map<eg::TaskKind, std::shared_ptr<eg::NliBackend>> by_task;

    eg::NliBackend& resolve(eg::TaskKind task) const { return *by_task.at(task); }

    std::map<eg::TaskKind, eg::BackendDescriptor> descriptors() const {
        std::map<eg::TaskKind, eg::BackendDescriptor> out;
        for (const auto& [task, backend] : by_task) out[task] = backend->descriptor();
        return out;
    }
};

BackendSet build_backend_set(const BackendFlags& flags) {
    BackendSet set;
    auto base = build_backend(flags.backend, flags);
    // Per-task overrides reuse the base instance when they match its spec,
    // so the cache sees one identity.
    auto pick = [&](const std::string& task_spec) {
        if (task_spec.empty() || task_spec == flags.backend) return base;
        return build_backend(task_spec, flags);
    };
    set.by_task[eg::TaskKind::DM] = pick(flags.backend_dm);
    set.by_task[eg::TaskKind::MT] = pick(flags.backend_mt);
    set.by_task[eg::TaskKind::PG] = pick(flags.backend_pg);
    return set;
}

eg::DetectionConfig build_config(const DetectionFlags& flags, const BackendSet& backends) {
    eg::DetectionConfig config;
    config.mode = eg::parse_mode(flags.mode);
    config.threshold = flags.threshold;
    config.unidirectional_direction =
        flags.direction == "src2hyp" ? eg::Direction::SrcToHyp : eg::Direction::HypToSrc;
    config.decision =
        flags.decision == "argmax" ? eg::Decision::Argmax : eg::Decision::Threshold;
    config.backend_by_task = backends.descriptors();
    config.validate();
    return config;
}

void print_stats(const eg::DetectStats& stats, std::size_t cache_entries) {
    std::cout << "query_instances=" << stats.query_instances << "\n";
    std::cout << "cache_unique_pairs=" << cache_entries << "\n";
    std::cout << "backend_calls=" << stats.backend_calls << "\n";
    std::cout << "cache_hits=" << stats.cache_hits << "\n";
}

void fill_manifest_common(eg::RunManifest& manifest, const DetectionFlags& det,
                          const eg::DetectionConfig& config, const BackendSet& backends) {
    manifest.tool_version = eg::kVersion;
    manifest.timestamp = eg::iso_timestamp_utc();
    manifest.mode = to_string(config.mode);
    manifest.threshold = config.threshold;
    manifest.direction = to_string(config.unidirectional_direction);
    manifest.decision = to_string(config.decision);
    manifest.jobs = det.jobs;
    manifest.strict = !det.lenient;
    for (const auto& [task, backend] : backends.by_task)
        manifest.backends[eg::to_string(task)] = backend->descriptor();
}

int run_detect(const std::string& input, const std::string& output, std::string manifest_path,
               const BackendFlags& backend_flags, const DetectionFlags& detection_flags,
               bool show_stats) {
    eg::ParseStats parse_stats;
    const auto samples =
        eg::parse_dataset(read_file(input), /*strict=*/!detection_flags.lenient, &parse_stats);

    BackendSet backends = build_backend_set(backend_flags);
    eg::DetectionConfig config = build_config(detection_flags, backends);
    for (const auto& w : eg::config_warnings(config, samples))
        std::cerr << "warning: " << w << "\n";

    eg::DetectStats stats;
    eg::QueryCache cache;
    const auto verdicts = eg::detect_all(
        samples, [&](eg::TaskKind t) -> eg::NliBackend& { return backends.resolve(t); }, config,
        {detection_flags.jobs, !detection_flags.lenient}, &cache, &stats);

    std::vector<eg::Verdict> ok_verdicts;
    for (const auto& v : verdicts) {
        if (v.ok())
            ok_verdicts.push_back(v);
        else
            std::cerr << "warning: sample " << v.sample_id << " failed: " << *v.error << "\n";
    }
    write_file(output, eg::serialize_predictions(ok_verdicts));

    eg::RunManifest manifest;
    manifest.command = "detect";
    manifest.input_path = input;
    manifest.output_path = output;
    manifest.records = parse_stats.records;
    manifest.dropped = parse_stats.dropped;
    manifest.verdicts = ok_verdicts.size();
    manifest.failures = verdicts.size() - ok_verdicts.size();
    manifest.cache_stats = stats;
    manifest.warnings = eg::config_warnings(config, samples);
    fill_manifest_common(manifest, detection_flags, config, backends);
    if (manifest_path.empty())
        manifest_path = (fs::path(output).parent_path() / "run-manifest.json").string();
    manifest.save(manifest_path);

    if (show_stats) print_stats(stats, cache.size());
    std::cout << "wrote " << ok_verdicts.size() << " verdicts to " << output << "\n";
    return 0;
}

void print_bundle(const eg::MetricsBundle& bundle) {
    std::cout << "n=" << bundle.n << "\n";
    std::cout << "accuracy=" << six_places(bundle.accuracy) << "\n";
    if (bundle.spearman_rho)
        std::cout << "spearman=" << six_places(*bundle.spearman_rho) << "\n";
    else
        std::cout << "spearman=unavailable (" << bundle.spearman_unavailable_reason << ")\n";
}

int run_evaluate(const std::string& pred_path, const std::string& gold_path,
                 const std::string& report_path, const std::string& format_name) {
    const auto verdicts = eg::parse_predictions(read_file(pred_path));
    const auto gold = eg::parse_dataset(read_file(gold_path), /*strict=*/true);
    eg::EvalReport report = eg::evaluate(verdicts, gold);

    print_bundle(report.overall);
    for (const auto& [task, bundle] : report.per_task) {
        if (bundle.n == 0) continue;
        std::cout << "accuracy=" << six_places(bundle.accuracy) << " task=" << to_string(task)
                  << " n=" << bundle.n << "\n";
    }

    if (!report_path.empty()) {
        const std::string row_label = fs::path(pred_path).stem().string();
        std::map<std::pair<std::string, eg::TaskKind>, eg::EvalReport> per_task;
        for (const auto& [task, bundle] : report.per_task) {
            if (bundle.n == 0) continue;
            eg::EvalReport task_report;
            task_report.overall = bundle;
            per_task[{row_label, task}] = task_report;
        }
        const auto table = eg::build_task_comparison(per_task, "Accuracy by task");
        write_file(report_path, eg::render(table, eg::parse_report_format(format_name)));
        std::cout << "wrote report to " << report_path << "\n";
    }
    return 0;
}

int run_compare(const std::string& input, const std::string& gold_path, const std::string& output,
                const std::string& format_name, std::string manifest_path,
                const BackendFlags& backend_flags, DetectionFlags detection_flags,
                bool show_stats) {
    const auto samples = eg::parse_dataset(read_file(input), /*strict=*/true);
    const auto gold = eg::parse_dataset(read_file(gold_path), /*strict=*/true);

    BackendSet backends = build_backend_set(backend_flags);
    auto resolve = [&](eg::TaskKind t) -> eg::NliBackend& { return backends.resolve(t); };
    const std::string row_label =
        backends.by_task.at(eg::TaskKind::DM).get()->descriptor().identity;

    // One cache across both modes: DM pairs and any direction shared between
    // modes are judged once.
    eg::QueryCache cache;
    eg::DetectStats total;
    std::map<std::pair<std::string, eg::Mode>, eg::EvalReport> reports;
    for (eg::Mode mode : {eg::Mode::Unidirectional, eg::Mode::Bidirectional}) {
        detection_flags.mode = mode == eg::Mode::Unidirectional ? "uni" : "bi";
        eg::DetectionConfig config = build_config(detection_flags, backends);
        for (const auto& w : eg::config_warnings(config, samples))
            std::cerr << "warning: " << w << "\n";
        eg::DetectStats stats;
        const auto verdicts = eg::detect_all(samples, resolve, config,
                                             {detection_flags.jobs, !detection_flags.lenient},
                                             &cache, &stats);
        total.query_instances += stats.query_instances;
        total.unique_pairs += stats.unique_pairs;
        total.backend_calls += stats.backend_calls;
        total.cache_hits += stats.cache_hits;

        std::vector<eg::Verdict> ok_verdicts;
        for (const auto& v : verdicts)
            if (v.ok()) ok_verdicts.push_back(v);
        eg::EvalReport report = eg::evaluate(ok_verdicts, gold);
        std::cout << "accuracy=" << six_places(report.overall.accuracy)
                  << " mode=" << to_string(mode) << "\n";
        reports[{row_label, mode}] = std::move(report);
    }

    const auto table = eg::build_mode_comparison(reports, "Accuracy by entailment mode");
    write_file(output, eg::render(table, eg::parse_report_format(format_name)));
    std::cout << "wrote comparison to " << output << "\n";

    eg::RunManifest manifest;
    manifest.command = "compare";
    manifest.input_path = input;
    manifest.gold_path = gold_path;
    manifest.output_path = output;
    manifest.records = samples.size();
    manifest.verdicts = samples.size() * 2;
    manifest.cache_stats = total;
    fill_manifest_common(manifest, detection_flags, build_config(detection_flags, backends),
                         backends);
    manifest.mode = "uni+bi";
    if (manifest_path.empty())
        manifest_path = (fs::path(output).parent_path() / "run-manifest.json").string();
    manifest.save(manifest_path);

    if (show_stats) print_stats(total, cache.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zero-shot hallucination detection for NLG outputs via task-routed "
                 "entailment checks"};
    app.set_version_flag("--version", eg::kVersion);
    app.require_subcommand(1);

    // detect
    auto* detect = app.add_subcommand("detect", "Classify samples and write a prediction file");
    std::string detect_input, detect_output, detect_manifest;
    BackendFlags detect_backend;
    DetectionFlags detect_flags;
    bool detect_stats = false;
    detect->add_option("--input", detect_input, "Input dataset (JSON array)")->required();
    detect->add_option("--output", detect_output, "Prediction file to write")->required();
    detect->add_option("--mode", detect_flags.mode, "Entailment mode for MT/PG: uni|bi")
        ->check(CLI::IsMember({"uni", "bi", "unidirectional", "bidirectional"}));
    detect->add_option("--manifest", detect_manifest,
                       "Manifest path (default: run-manifest.json next to --output)");
    detect->add_flag("--stats", detect_stats, "Print cache statistics");
    add_backend_flags(detect, detect_backend);
    add_detection_flags(detect, detect_flags);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Score a prediction file against gold labels");
    std::string eval_pred, eval_gold, eval_report, eval_format = "md";
    evaluate->add_option("--pred", eval_pred, "Prediction file")->required();
    evaluate->add_option("--gold", eval_gold, "Gold dataset with labels")->required();
    evaluate->add_option("--report", eval_report, "Per-task report file to write");
    evaluate->add_option("--format", eval_format, "Report format: md|csv|json")
        ->check(CLI::IsMember({"md", "csv", "json"}));

    // compare
    auto* compare = app.add_subcommand(
        "compare", "Run unidirectional and bidirectional modes and tabulate accuracy");
    std::string cmp_input, cmp_gold, cmp_output, cmp_format = "md", cmp_manifest;
    BackendFlags cmp_backend;
    DetectionFlags cmp_flags;
    bool cmp_stats = false;
    compare->add_option("--input", cmp_input, "Input dataset (JSON array)")->required();
    compare->add_option("--gold", cmp_gold, "Gold dataset with labels")->required();
    compare->add_option("--output", cmp_output, "Comparison table to write")->required();
    compare->add_option("--format", cmp_format, "Table format: md|csv|json")
        ->check(CLI::IsMember({"md", "csv", "json"}));
    compare->add_option("--manifest", cmp_manifest,
                        "Manifest path (default: run-manifest.json next to --output)");
    compare->add_flag("--stats", cmp_stats, "Print cache statistics");
    add_backend_flags(compare, cmp_backend);
    add_detection_flags(compare, cmp_flags);

    // make-demo-model
    auto* demo = app.add_subcommand("make-demo-model",
                                    "Write a small random-weight local model for smoke tests");
    std::string demo_output;
    unsigned demo_seed = 7;
    std::vector<std::string> demo_order;
    demo->add_option("--output", demo_output, "Directory to create")->required();
    demo->add_option("--seed", demo_seed, "Weight RNG seed");
    demo->add_option("--label-order", demo_order,
                     "Classifier label order, e.g. contradiction neutral entailment")
        ->expected(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        std::cout << eg::kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (detect->parsed())
            return run_detect(detect_input, detect_output, detect_manifest, detect_backend,
                              detect_flags, detect_stats);
        if (evaluate->parsed()) return run_evaluate(eval_pred, eval_gold, eval_report, eval_format);
        if (compare->parsed())
            return run_compare(cmp_input, cmp_gold, cmp_output, cmp_format, cmp_manifest,
                               cmp_backend, cmp_flags, cmp_stats);
        if (demo->parsed()) {
            eg::DemoModelSpec spec;
            spec.seed = demo_seed;
            if (!demo_order.empty()) spec.label_order = {demo_order[0], demo_order[1], demo_order[2]};
            eg::write_demo_model(demo_output, spec);
            std::cout << "wrote demo model to " << demo_output << "\n";
            return 0;
        }
    } catch (const eg::BackendError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
