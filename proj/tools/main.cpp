#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kcmpc/constants.hpp"
#include "kcmpc/geohash.hpp"
#include "kcmpc/highdim_rs.hpp"
#include "kcmpc/io.hpp"
#include "kcmpc/kcenter.hpp"
#include "kcmpc/lowdim_mds.hpp"
#include "kcmpc/lowdim_rs.hpp"
#include "kcmpc/luby.hpp"
#include "kcmpc/oracles.hpp"

using nlohmann::json;
using namespace kcmpc;

namespace {

json dataset_json(const Dataset& D) {
    json a = json::array();
    for (const auto& p : D.points) a.push_back(p);
    return a;
}

json report_json(const ResourceReport& r) { return json::parse(r.to_json()); }

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw usage_error("cannot open output file '" + out_path + "'");
        f << j.dump(2) << "\n";
    }
}

struct CommonOpts {
    std::string input, output;
    MpcConfig cfg;

    void attach(CLI::App* cmd, bool needs_input = true) {
        auto* in = cmd->add_option("-i,--input", input, "point file (one point per line)");
        if (needs_input) in->required();
        cmd->add_option("-o,--output", output, "write the JSON report here (default stdout)");
        cmd->add_option("--seed", cfg.seed, "root RNG seed (env MPC_KC_SEED overrides)");
        cmd->add_option("--local-memory", cfg.local_memory_s, "memory units per machine")
            ->default_val(std::size_t{4096});
        cmd->add_option("--machines", cfg.machine_count, "machine count")->default_val(std::size_t{1});
        cmd->add_flag_callback("--no-enforce", [this] { cfg.enforce_limits = false; },
                               "disable limit enforcement (debugging)");
        cmd->add_option("--c-msg", cfg.c_msg, "message-volume constant");
        cmd->add_option("--c-sort", cfg.c_sort, "sort round constant");
        cmd->add_option("--c-b", cfg.c_b, "broadcast round constant");
        cmd->add_option("--memory-floor", cfg.memory_floor, "minimum legal local memory");
    }

    void finalize() {
        if (const char* env = std::getenv("MPC_KC_SEED")) {
            try {
                std::size_t used = 0;
                cfg.seed = std::stoull(env, &used);
                if (used != std::string(env).size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw usage_error("MPC_KC_SEED must be an unsigned integer");
            }
        }
    }

    json base_json(const std::string& subcommand) const {
        return json{{"schema", 1},
                    {"subcommand", subcommand},
                    {"seed", cfg.seed},
                    {"config",
                     {{"local_memory_s", cfg.local_memory_s},
                      {"machine_count", cfg.machine_count},
                      {"enforce_limits", cfg.enforce_limits},
                      {"c_msg", cfg.c_msg},
                      {"c_sort", cfg.c_sort},
                      {"c_b", cfg.c_b}}}};
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euclidean k-center on a metered MPC simulator"};
    app.require_subcommand(1);

    // kcenter
    CommonOpts kc_opts;
    std::size_t kc_k = 0;
    double kc_eps = 0.25;
    std::string kc_mode = "rs-lowdim", kc_csv;
    auto* kc = app.add_subcommand("kcenter", "solve k-center");
    kc_opts.attach(kc);
    kc->add_option("--k", kc_k, "number of centers")->required();
    kc->add_option("--eps", kc_eps, "approximation slack")->default_val(0.25);
    kc->add_option("--mode", kc_mode, "rs-lowdim | rs-highdim | mds")->default_val("rs-lowdim");
    kc->add_option("--emit-assignments", kc_csv, "CSV of per-point assigned distances");

    // rs
    CommonOpts rs_opts;
    double rs_tau = 0, rs_eps = 0.25;
    std::string rs_mode = "lowdim";
    std::size_t rs_chains = 0;
    auto* rs = app.add_subcommand("rs", "compute a ruling set");
    rs_opts.attach(rs);
    rs->add_option("--tau", rs_tau, "independence radius")->required();
    rs->add_option("--eps", rs_eps, "domination slack")->default_val(0.25);
    rs->add_option("--mode", rs_mode, "lowdim | highdim")->default_val("lowdim");
    rs->add_option("--measure-chains", rs_chains, "replay N assignment chains (highdim)");

    // mds
    CommonOpts mds_opts;
    double mds_tau = 0, mds_eps = 0.25;
    auto* mds = app.add_subcommand("mds", "approximate minimum dominating set");
    mds_opts.attach(mds);
    mds->add_option("--tau", mds_tau, "domination radius")->required();
    mds->add_option("--eps", mds_eps, "size slack")->default_val(0.25);

    // oracle
    CommonOpts or_opts;
    std::string or_op = "mds-size";
    double or_tau = 0;
    std::size_t or_k = 1;
    auto* orc = app.add_subcommand("oracle", "brute-force ground truth (desk scale)");
    or_opts.attach(orc);
    orc->add_option("--op", or_op, "mds-size | kcenter-opt")->default_val("mds-size");
    orc->add_option("--tau", or_tau, "radius for mds-size");
    orc->add_option("--k", or_k, "k for kcenter-opt");

    // luby
    CommonOpts luby_opts;
    std::string luby_graph;
    std::size_t luby_trials = 100;
    auto* lb = app.add_subcommand("luby", "one-round Luby experiments");
    luby_opts.attach(lb, false);
    lb->add_option("--graph", luby_graph, "edge-list file or lowerbound:m:copies")->required();
    lb->add_option("--trials", luby_trials, "label draws")->default_val(std::size_t{100});

    // hash-check
    CommonOpts hc_opts;
    std::size_t hc_d = 2;
    double hc_beta = 1.0, hc_ell = 0.0, hc_tau = -1.0;
    std::size_t hc_samples = 10000;
    auto* hc = app.add_subcommand("hash-check", "sample the face-hash properties");
    hc_opts.attach(hc, false);
    hc->add_option("--d", hc_d, "dimension")->default_val(std::size_t{2});
    hc->add_option("--beta", hc_beta, "beta")->default_val(1.0);
    hc->add_option("--ell", hc_ell, "ell (default 2 d^1.5 beta, or larger for the annulus window)");
    hc->add_option("--tau", hc_tau, "annulus radius (default beta)");
    hc->add_option("--samples", hc_samples, "sample count")->default_val(std::size_t{10000});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (kc->parsed()) {
            kc_opts.finalize();
            const Dataset P = ingest_points(kc_opts.input);
            const auto sol = solve_kcenter(P, kc_k, kc_eps,
                                           kcenter_mode_from_string(kc_mode), kc_opts.cfg);
            json j = kc_opts.base_json("kcenter");
            j["k"] = kc_k;
            j["eps"] = kc_eps;
            j["mode"] = to_string(sol.mode);
            j["centers"] = dataset_json(sol.centers);
            j["assignment"] = sol.assignment;
            j["cost"] = sol.cost;
            j["tau_star"] = sol.tau_star;
            j["resource_report"] = report_json(sol.report);
            emit(j, kc_opts.output);
            if (!kc_csv.empty()) {
                std::ofstream f(kc_csv);
                if (!f) throw usage_error("cannot open CSV file '" + kc_csv + "'");
                f << "point_index,center_index,distance\n";
                for (std::size_t i = 0; i < P.size(); ++i)
                    f << i << "," << sol.assignment[i] << ","
                      << dist(P[i], sol.centers[sol.assignment[i]]) << "\n";
            }
        } else if (rs->parsed()) {
            rs_opts.finalize();
            const Dataset P = ingest_points(rs_opts.input);
            json j = rs_opts.base_json("rs");
            j["tau"] = rs_tau;
            j["eps"] = rs_eps;
            j["mode"] = rs_mode;
            if (rs_mode == "lowdim") {
                auto [r, rep] = lowdim_ruling_set(P, rs_tau, rs_eps, rs_opts.cfg);
                j["selected"] = dataset_json(r.selected);
                j["independence_radius"] = r.independence_radius;
                j["domination_radius"] = r.domination_radius;
                j["resource_report"] = report_json(rep);
            } else if (rs_mode == "highdim") {
                auto [r, rep] = highdim_ruling_set(P, rs_tau, rs_eps, rs_opts.cfg);
                j["selected"] = dataset_json(r.selected);
                j["independence_radius"] = r.independence_radius;
                j["domination_radius"] = r.domination_radius;
                j["resource_report"] = report_json(rep);
                if (rs_chains > 0) {
                    const double beta = std::max(1.0, constants::c_agg / rs_eps);
                    const auto L = preprocess_reps(P, rs_tau, beta, rs_opts.cfg);
                    const auto oracle = build_approx_ball_oracle(L.reps, rs_tau, L.hash);
                    std::map<std::size_t, std::size_t> hist;
                    for (std::size_t i = 0; i < std::min(rs_chains, L.reps.size()); ++i)
                        ++hist[measure_chain(L, oracle, i).length()];
                    json h = json::object();
                    for (auto [len, cnt] : hist) h[std::to_string(len)] = cnt;
                    j["chain_length_histogram"] = h;
                }
            } else {
                throw usage_error("rs --mode must be lowdim or highdim");
            }
            emit(j, rs_opts.output);
        } else if (mds->parsed()) {
            mds_opts.finalize();
            const Dataset P = ingest_points(mds_opts.input);
            auto [r, rep] = approx_mds(P, mds_tau, mds_eps, mds_opts.cfg);
            json j = mds_opts.base_json("mds");
            j["tau"] = mds_tau;
            j["eps"] = mds_eps;
            j["centers"] = dataset_json(r.centers);
            j["size"] = r.size;
            j["radius_certified"] = r.radius_certified;
            j["chosen_shift"] = r.chosen_shift;
            j["resource_report"] = report_json(rep);
            emit(j, mds_opts.output);
        } else if (orc->parsed()) {
            or_opts.finalize();
            const Dataset P = ingest_points(or_opts.input);
            json j = or_opts.base_json("oracle");
            j["op"] = or_op;
            if (or_op == "mds-size") {
                j["tau"] = or_tau;
                j["value"] = oracle_mds_size(P, or_tau);
            } else if (or_op == "kcenter-opt") {
                j["k"] = or_k;
                j["value"] = oracle_kcenter_opt(P, or_k);
            } else {
                throw usage_error("oracle --op must be mds-size or kcenter-opt");
            }
            emit(j, or_opts.output);
        } else if (lb->parsed()) {
            luby_opts.finalize();
            json j = luby_opts.base_json("luby");
            j["trials"] = luby_trials;
            if (luby_graph.rfind("lowerbound:", 0) == 0) {
                std::size_t m = 0, copies = 0;
                if (std::sscanf(luby_graph.c_str(), "lowerbound:%zu:%zu", &m, &copies) != 2)
                    throw usage_error("--graph lowerbound:m:copies malformed");
                std::map<std::size_t, std::size_t> hist;
                std::size_t event_hits = 0, copy_trials = 0;
                for (std::size_t t = 0; t < luby_trials; ++t) {
                    const auto trial = lower_bound_trial(m, copies, luby_opts.cfg.seed + t);
                    for (std::size_t c = 0; c < copies; ++c) {
                        ++hist[trial.radius[c]];
                        event_hits += trial.event[c];
                        ++copy_trials;
                    }
                }
                json h = json::object();
                for (auto [r, cnt] : hist) h[std::to_string(r)] = cnt;
                j["m"] = m;
                j["copies"] = copies;
                j["radius_histogram"] = h;
                j["event_frequency"] =
                    static_cast<double>(event_hits) / static_cast<double>(copy_trials);
                j["analytic_prediction"] = chain_event_probability(m);
            } else {
                std::ifstream f(luby_graph);
                if (!f) throw usage_error("cannot open graph file '" + luby_graph + "'");
                std::size_t n = 0;
                if (!(f >> n)) throw usage_error("graph file: missing vertex count");
                std::vector<std::pair<std::size_t, std::size_t>> edges;
                std::size_t u, v;
                while (f >> u >> v) edges.push_back({u, v});
                const Graph G(n, std::move(edges));
                std::map<std::size_t, std::size_t> hist;
                for (std::size_t t = 0; t < luby_trials; ++t) {
                    const auto S = luby_one_round(G, luby_opts.cfg.seed + t);
                    ++hist[ruling_radius(G, S)];
                }
                json h = json::object();
                for (auto [r, cnt] : hist) h[std::to_string(r)] = cnt;
                j["radius_histogram"] = h;
            }
            emit(j, luby_opts.output);
        } else if (hc->parsed()) {
            hc_opts.finalize();
            if (hc_ell <= 0)
                hc_ell = constants::c_hash * std::pow(static_cast<double>(hc_d), 1.5) * hc_beta;
            if (hc_tau < 0) hc_tau = hc_beta;
            const FaceHashParams params(hc_d, hc_beta, hc_ell);
            json j = hc_opts.base_json("hash-check");
            j["d"] = hc_d;
            j["beta"] = hc_beta;
            j["ell"] = hc_ell;
            j["tau"] = hc_tau;
            j["samples"] = hc_samples;
            j["annulus_window_nonempty"] = params.annulus_applicable(hc_tau);
            if (params.annulus_applicable(hc_tau))
                j["annulus_ok"] =
                    annulus_free_region_check(params, hc_tau, hc_samples, hc_opts.cfg.seed);
            emit(j, hc_opts.output);
        }
        return 0;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const estimator_error& e) {
        std::cerr << "estimator error: " << e.what() << "\n";
        return 3;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
