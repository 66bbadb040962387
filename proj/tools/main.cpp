// Command-line front end: run the exact / streaming / submodular passes on
// JSON instances, query the brute-force optimum, verify kernel extraction,
// probe the k-matroid stacks, and fan out benchmark manifests.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mstream/errors.hpp"
#include "mstream/io.hpp"
#include "mstream/kernel.hpp"
#include "mstream/oracles.hpp"
#include "mstream/rng.hpp"
#include "mstream/streaming.hpp"
#include "mstream/submodular.hpp"

using namespace mstream;
using nlohmann::json;

namespace {

struct RunArgs {
    std::string instance_path;
    std::string algo = "exact";
    std::string order_mode = "file";
    std::string epsilon, alpha, y, q, delta;
    std::uint64_t seed = 0;
    bool with_opt = false;
    std::string out_path;
};

void write_output(const std::string& out_path, const std::string& bytes) {
    if (out_path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write output file: " + out_path);
    out << bytes;
}

StreamParams stream_params_from(const Instance& inst, const RunArgs& args) {
    if (!args.epsilon.empty()) {
        if (!args.alpha.empty() || !args.y.empty()) {
            throw InputError("--epsilon and --alpha/--y are mutually exclusive");
        }
        return StreamParams::from_epsilon(inst, parse_decimal(args.epsilon));
    }
    Rat alpha = args.alpha.empty() ? Rat(1) : parse_decimal(args.alpha);
    std::optional<Rat> y;
    if (!args.y.empty() && args.y != "inf") y = parse_decimal(args.y);
    return StreamParams::explicit_params(alpha, y);
}

RunReport execute_run(const Instance& inst, const RunArgs& args) {
    auto order = resolve_order(inst, args.order_mode);
    RunReport report;
    report.fixture = inst.name;
    report.seed = args.seed;

    auto started = std::chrono::steady_clock::now();
    if (args.algo == "exact") {
        StreamParams params = stream_params_from(inst, args);
        if (params.y) throw InputError("the exact pass takes no deletion threshold");
        SelectionState state = run_local_ratio(inst, order, params.alpha);
        report.algo = "exact";
        report.alpha = params.alpha;
        report.stream = finish_stream_report(std::move(state), params);
    } else if (args.algo == "streaming" || args.algo == "streaming-k") {
        StreamParams params = stream_params_from(inst, args);
        report.alpha = params.alpha;
        report.y = params.y;
        if (!args.epsilon.empty()) report.epsilon = params.epsilon;
        if (args.algo == "streaming") {
            report.algo = "streaming";
            report.stream = run_streaming(inst, order, params);
        } else {
            report.algo = "streaming_k";
            report.stream = run_streaming_k(inst, order, params);
        }
    } else if (args.algo == "submodular") {
        if (args.alpha.empty() && args.epsilon.empty()) {
            throw InputError("submodular runs need --alpha or --epsilon");
        }
        SubmodularParams params;
        params.alpha = !args.alpha.empty() ? parse_decimal(args.alpha)
                                           : 1 + parse_decimal(args.epsilon);
        params.q = args.q.empty() ? Rat(1) : parse_decimal(args.q);
        params.delta = args.delta.empty() ? make_rat(1, 10) : parse_decimal(args.delta);
        params.seed = args.seed;
        if (!args.y.empty()) {
            if (args.y != "inf") params.y = parse_decimal(args.y);
        } else {
            params = SubmodularParams::with_schedule(inst, params.alpha, params.q,
                                                     params.delta, params.seed);
        }
        SubmodularReport sub = run_submodular(inst, order, params);
        report.algo = "submodular";
        report.alpha = params.alpha;
        report.y = params.y;
        report.q = params.q;
        report.delta = params.delta;
        report.deterministic = sub.deterministic;
        report.stream = std::move(sub.stream);
    } else {
        throw InputError("unknown algorithm '" + args.algo + "'");
    }

    if (args.with_opt) {
        auto [opt_set, opt] = brute_force_intersection_opt(inst, OracleBudget::from_env());
        report.opt_weight = opt;
        auto ratio = approximation_ratio(opt, report.stream.objective_value);
        if (!ratio.infinite) report.stream.ratio_vs_opt = ratio.value;
    }
    auto elapsed = std::chrono::steady_clock::now() - started;
    report.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    return report;
}

int cmd_run(const RunArgs& args) {
    Instance inst = load_instance(args.instance_path);
    RunReport report = execute_run(inst, args);
    write_output(args.out_path, emit_report(inst, report));
    return 0;
}

int cmd_opt(const std::string& instance_path) {
    Instance inst = load_instance(instance_path);
    auto [opt_set, opt] = brute_force_intersection_opt(inst, OracleBudget::from_env());
    json out;
    std::vector<std::string> ids;
    for (ElementIndex e : opt_set) ids.push_back(inst.elements[e].id);
    std::sort(ids.begin(), ids.end());
    out["opt"] = ids;
    out["weight"] = to_fraction_string(opt);
    out["weight_approx"] = to_approx_string(opt);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_verify_kernel(const std::string& instance_path, const std::string& order_mode) {
    Instance inst = load_instance(instance_path);
    auto order = resolve_order(inst, order_mode);
    SelectionState state = run_local_ratio(inst, order);
    ElementSet ground = state.alive_elements();
    std::sort(ground.begin(), ground.end());
    auto oms = ordered_matroids_from_state(state);
    KernelResult kr;
    if (!ground.empty()) kr = find_kernel(oms[0], oms[1], ground);
    auto check = verify_kernel(oms[0], oms[1], ground, kr.kernel);

    json out;
    std::vector<std::string> ids;
    Rat weight = 0;
    for (ElementIndex e : kr.kernel) {
        ids.push_back(inst.elements[e].id);
        weight += inst.elements[e].weight;
    }
    std::sort(ids.begin(), ids.end());
    out["kernel"] = ids;
    out["weight"] = to_fraction_string(weight);
    out["g_alive"] = to_fraction_string(state.stats.total_gain_alive);
    out["verified"] = check.ok;
    out["rounds"] = kr.rounds;

    OracleBudget budget = OracleBudget::from_env();
    // the kernel enumeration has its own hard 20-element cap
    if (ground.size() <= std::min<std::size_t>(budget.max_elements, 20)) {
        auto all = brute_force_kernel(oms[0], oms[1], ground);
        out["kernel_count"] = all.size();
        out["in_enumeration"] =
            std::find(all.begin(), all.end(), kr.kernel) != all.end();
    }
    std::cout << out.dump(2) << "\n";
    if (!check.ok) throw InvariantError("kernel verification failed");
    return 0;
}

int cmd_probe(const std::string& instance_path, std::size_t n_orders, std::uint64_t seed,
              const std::string& alpha_text) {
    Instance inst = load_instance(instance_path);
    std::vector<std::vector<ElementIndex>> orders{inst.default_order()};
    Rng rng(seed);
    for (std::size_t i = 0; i < n_orders; ++i) {
        auto order = inst.default_order();
        fisher_yates(order, rng);
        orders.push_back(std::move(order));
    }
    StreamParams params;
    params.alpha = alpha_text.empty() ? Rat(1) : parse_decimal(alpha_text);
    auto report = conjecture_probe(inst, orders, params, OracleBudget::from_env());

    json out;
    out["orders_run"] = report.orders_run;
    out["opt_weight"] = to_fraction_string(report.opt_weight);
    out["counterexample_found"] = report.counterexample_found;
    if (report.worst_scaled_ratio) {
        out["worst_scaled_ratio"] = to_fraction_string(*report.worst_scaled_ratio);
        out["worst_scaled_ratio_approx"] = to_approx_string(*report.worst_scaled_ratio);
        out["worst_best_subset_weight"] =
            to_fraction_string(report.worst_best_subset_weight);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

RunArgs cell_args(const json& cell, const std::string& path) {
    RunArgs args;
    if (!cell.contains("instance")) {
        throw InputError("bench cell " + path + " is missing an instance");
    }
    args.instance_path = cell["instance"].get<std::string>();
    args.algo = cell.value("algo", std::string("exact"));
    args.order_mode = cell.value("order", std::string("file"));
    args.epsilon = cell.value("epsilon", std::string());
    args.alpha = cell.value("alpha", std::string());
    args.y = cell.value("y", std::string());
    args.q = cell.value("q", std::string());
    args.delta = cell.value("delta", std::string());
    args.seed = cell.value("seed", std::uint64_t{0});
    args.with_opt = cell.value("opt", false);
    return args;
}

int cmd_bench(const std::string& manifest_path, std::size_t jobs,
              const std::string& out_path) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw InputError("cannot open manifest: " + manifest_path);
    json manifest;
    try {
        manifest = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid manifest JSON: ") + e.what());
    }
    if (!manifest.contains("cells") || !manifest["cells"].is_array()) {
        throw InputError("manifest needs a cells array");
    }
    const json& cells = manifest["cells"];
    if (jobs == 0) jobs = manifest.value("jobs", std::size_t{1});
    if (jobs == 0) jobs = 1;

    std::vector<json> results(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;

    // instance paths inside a manifest are relative to the manifest itself
    std::filesystem::path manifest_dir =
        std::filesystem::path(manifest_path).parent_path();

    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            std::string path = "/cells/" + std::to_string(i);
            try {
                RunArgs args = cell_args(cells[i], path);
                if (!std::filesystem::path(args.instance_path).is_absolute()) {
                    args.instance_path = (manifest_dir / args.instance_path).string();
                }
                Instance inst = load_instance(args.instance_path);
                RunReport report = execute_run(inst, args);
                json entry = json::parse(emit_report(inst, report));
                entry["cell"] = i;
                if (cells[i].contains("name")) entry["name"] = cells[i]["name"];
                results[i] = std::move(entry);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) first_error = path + ": " + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min<std::size_t>(jobs, cells.size()); ++t) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) t.join();
    if (!first_error.empty()) throw InputError("bench cell failed at " + first_error);

    json out = json::array();
    for (auto& r : results) out.push_back(std::move(r));
    write_output(out_path, out.dump(2) + "\n");
    std::cerr << "bench: " << cells.size() << " cells, "
              << std::min<std::size_t>(jobs, cells.size()) << " worker(s)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-streaming matroid intersection toolkit"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "run a selection pass on an instance");
    run->add_option("--instance", run_args.instance_path, "instance JSON file")->required();
    run->add_option("--algo", run_args.algo,
                    "exact | streaming | streaming-k | submodular");
    run->add_option("--order", run_args.order_mode, "file | reverse | shuffle:<seed>");
    run->add_option("--epsilon", run_args.epsilon,
                    "schedule parameter: alpha = 1+eps, y = min(r1,r2)/eps^2");
    run->add_option("--alpha", run_args.alpha, "selection slack (>= 1)");
    run->add_option("--y", run_args.y, "deletion ratio bound, or 'inf'");
    run->add_option("--q", run_args.q, "submodular keep probability in (0,1]");
    run->add_option("--delta", run_args.delta, "submodular schedule parameter");
    run->add_option("--seed", run_args.seed, "random seed for the submodular coin");
    run->add_flag("--opt", run_args.with_opt, "also brute-force the optimum");
    run->add_option("--out", run_args.out_path, "write the report here (default stdout)");

    std::string opt_instance;
    auto* opt = app.add_subcommand("opt", "brute-force the exact optimum");
    opt->add_option("--instance", opt_instance, "instance JSON file")->required();

    std::string vk_instance, vk_order = "file";
    auto* vk = app.add_subcommand("verify-kernel",
                                  "run the exact pass and verify kernel extraction");
    vk->add_option("--instance", vk_instance, "instance JSON file")->required();
    vk->add_option("--order", vk_order, "file | reverse | shuffle:<seed>");

    std::string probe_instance, probe_alpha;
    std::size_t probe_orders = 100;
    std::uint64_t probe_seed = 0;
    auto* probe = app.add_subcommand("probe-conjecture",
                                     "search stream orders for stacks missing a "
                                     "k-approximation");
    probe->add_option("--instance", probe_instance, "instance JSON file")->required();
    probe->add_option("--orders", probe_orders, "number of shuffled orders");
    probe->add_option("--seed", probe_seed, "shuffle seed");
    probe->add_option("--alpha", probe_alpha, "selection slack (default 1)");

    std::string bench_manifest, bench_out;
    std::size_t bench_jobs = 0;
    auto* bench = app.add_subcommand("bench", "run every cell of a manifest");
    bench->add_option("--manifest", bench_manifest, "manifest JSON file")->required();
    bench->add_option("--jobs", bench_jobs, "worker threads");
    bench->add_option("--out", bench_out, "write the report array here");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_args);
        if (opt->parsed()) return cmd_opt(opt_instance);
        if (vk->parsed()) return cmd_verify_kernel(vk_instance, vk_order);
        if (probe->parsed()) return cmd_probe(probe_instance, probe_orders, probe_seed,
                                              probe_alpha);
        if (bench->parsed()) return cmd_bench(bench_manifest, bench_jobs, bench_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InvariantError& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "oracle budget exceeded: " << e.what() << "\n";
        return 4;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
