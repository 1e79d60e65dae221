// skeletal: command-line driver for the hypergraph toolkit.
//
// Subcommands: gen, degeneracy, validate, brute-ex, brute-ramsey, prune,
// embed, turan-lb, ramsey. Every randomized run is fully determined by
// --seed; artifacts are JSON with the configuration echoed back.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "skeletal/coloring.hpp"
#include "skeletal/defect.hpp"
#include "skeletal/degeneracy.hpp"
#include "skeletal/drc.hpp"
#include "skeletal/embedding.hpp"
#include "skeletal/generators.hpp"
#include "skeletal/hypergraph.hpp"
#include "skeletal/json_io.hpp"
#include "skeletal/oracle.hpp"
#include "skeletal/ramsey.hpp"
#include "skeletal/turan.hpp"

namespace {

using nlohmann::json;
using namespace skeletal;

void emit(const json& artifact, const std::string& out_path)
{
    if (out_path.empty())
        std::cout << artifact.dump(2) << "\n";
    else
        save_json(artifact, out_path);
}

json config_echo(std::uint64_t seed, int retries, std::uint64_t cap)
{
    json c;
    c["seed"] = seed;
    c["retries"] = retries;
    c["cap"] = cap;
    return c;
}

json wrap(const json& config, const json& result)
{
    json j;
    j["version"] = kLibraryVersion;
    j["config"] = config;
    j["result"] = result;
    return j;
}

std::vector<int> parse_int_list(const std::string& s)
{
    std::vector<int> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty())
        out.push_back(std::stoi(cur));
    return out;
}

json trace_to_json(const PruneTrace& trace)
{
    json stages = json::array();
    for (const auto& st : trace.stages) {
        json s;
        s["part"] = st.part;
        s["d_t"] = st.d_t;
        s["u"] = st.u;
        s["sample"] = st.sample;
        s["edges_before"] = st.edges_before;
        s["edges_after"] = st.edges_after;
        stages.push_back(s);
    }
    json t;
    t["stages"] = stages;
    t["epsilons"] = trace.epsilons;
    t["attempts"] = trace.attempts;
    t["subasymptotic"] = trace.subasymptotic;
    t["failure"] = trace.failure;
    return t;
}

json report_to_json(const DeletionReport& r)
{
    json j;
    j["sampled_edges"] = r.sampled_edges;
    j["removed"] = r.removed;
    j["final_edges"] = r.final_edges;
    j["clique_count_before"] = r.clique_count_before;
    j["clique_count_after"] = r.clique_count_after;
    j["hfree_verified"] = r.hfree_verified == VerifyState::Verified
                              ? "verified"
                              : (r.hfree_verified == VerifyState::Failed ? "failed" : "skipped");
    j["budget_exhausted"] = r.budget_exhausted;
    j["regime"] = r.regime;
    j["paper_floor"] = r.paper_floor;
    return j;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"skeletal: hypergraph degeneracy, pruning, and embedding toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    int retries = 16;
    std::uint64_t cap = 2'000'000;
    std::string out_path;
    std::string format = "json";
    bool paper_constants = false;
    app.add_option("--seed", seed, "root seed; per-stage seeds derive from it")->capture_default_str();
    app.add_option("--retries", retries)->capture_default_str();
    app.add_option("--cap", cap, "enumeration budget for exhaustive helpers")->capture_default_str();
    app.add_option("--out", out_path, "artifact path (stdout when omitted)");
    app.add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--paper-constants", paper_constants, "use the paper-default constants");

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a hypergraph family");
    std::string family;
    std::string sizes_arg = "2,2";
    int gk = 3, gd = 2, gn = 12;
    double gp = 0.5;
    int gell = 0;
    bool glatin_random = false;
    std::string gin;
    gen->add_option("family", family, "complete | hedgehog | random | latin | anchors | lift | equipartition")
        ->required();
    gen->add_option("--sizes", sizes_arg, "part sizes for `complete`, comma separated");
    gen->add_option("--k", gk);
    gen->add_option("--d", gd);
    gen->add_option("--n", gn);
    gen->add_option("--p", gp);
    gen->add_option("--ell", gell, "target uniformity for `lift`");
    gen->add_flag("--random-square", glatin_random, "random Latin square instead of cyclic");
    gen->add_option("--in", gin, "input hypergraph for anchors/lift/equipartition");

    // ---- degeneracy ---------------------------------------------------
    auto* deg = app.add_subcommand("degeneracy", "skeletal degeneracy with certificate");
    std::string deg_in;
    int deg_i = 1;
    deg->add_option("--in", deg_in)->required();
    deg->add_option("--i", deg_i, "skeleton index (1 = skeletal degeneracy)");

    // ---- validate -----------------------------------------------------
    auto* val = app.add_subcommand("validate", "validate a hypergraph or coloring file");
    std::string val_in;
    val->add_option("file", val_in)->required();

    // ---- brute-ex -----------------------------------------------------
    auto* bex = app.add_subcommand("brute-ex", "exact Turan number by exhaustive search");
    std::string bex_pattern;
    int bex_n = 4;
    std::uint64_t bex_budget = 0;
    bex->add_option("--pattern", bex_pattern)->required();
    bex->add_option("--n", bex_n)->required();
    bex->add_option("--budget", bex_budget, "branch-and-bound node budget (0 = require small case)");

    // ---- brute-ramsey -------------------------------------------------
    auto* brm = app.add_subcommand("brute-ramsey", "exact Ramsey number by exhaustive search");
    std::string brm_pattern;
    int brm_q = 2, brm_nmax = 6;
    brm->add_option("--pattern", brm_pattern)->required();
    brm->add_option("--q", brm_q);
    brm->add_option("--nmax", brm_nmax);

    // ---- prune --------------------------------------------------------
    auto* prn = app.add_subcommand("prune", "dependent-random-choice pruning");
    std::string prn_in, prn_mode = "simultaneous";
    int prn_d = 1, prn_t = 1;
    prn->add_option("--in", prn_in)->required();
    prn->add_option("--mode", prn_mode)->check(CLI::IsMember({"pipeline", "simultaneous"}));
    prn->add_option("--d", prn_d);
    prn->add_option("--t", prn_t);

    // ---- embed --------------------------------------------------------
    auto* emb = app.add_subcommand("embed", "random greedy embedding pipeline");
    std::string emb_host, emb_pattern, emb_theta;
    int emb_t = 0;
    emb->add_option("--host", emb_host)->required();
    emb->add_option("--pattern", emb_pattern)->required();
    emb->add_option("--theta", emb_theta, "threshold override, rational (e.g. 8 or 17/2)");
    emb->add_option("--t", emb_t, "pruning tuple length override");

    // ---- turan-lb -----------------------------------------------------
    auto* tlb = app.add_subcommand("turan-lb", "deletion-method lower-bound constructions");
    std::string tlb_family = "complete", tlb_pattern;
    int tlb_k = 2, tlb_d = 2, tlb_n = 16, tlb_i = 1;
    std::string tlb_seeds = "0..0";
    tlb->add_option("--family", tlb_family)->check(CLI::IsMember({"complete", "skeletal"}));
    tlb->add_option("--k", tlb_k);
    tlb->add_option("--d", tlb_d);
    tlb->add_option("--n", tlb_n);
    tlb->add_option("--i", tlb_i);
    tlb->add_option("--pattern", tlb_pattern, "pattern file for `skeletal`");
    tlb->add_option("--seeds", tlb_seeds, "seed range S0..S1 inclusive");

    // ---- ramsey -------------------------------------------------------
    auto* rms = app.add_subcommand("ramsey", "Ramsey experiment harness");
    std::string rms_pattern, rms_strategy = "oracle", rms_route = "drc";
    int rms_q = 2, rms_N = 6, rms_trials = 20, rms_ell = 0;
    bool rms_exhaustive = false;
    rms->add_option("--pattern", rms_pattern)->required();
    rms->add_option("--q", rms_q);
    rms->add_option("--N", rms_N);
    rms->add_option("--strategy", rms_strategy)->check(CLI::IsMember({"oracle", "pipeline"}));
    rms->add_option("--route", rms_route)->check(CLI::IsMember({"drc", "linear"}));
    rms->add_option("--trials", rms_trials);
    rms->add_option("--ell", rms_ell);
    rms->add_flag("--exhaustive", rms_exhaustive);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage errors exit 1; --help exits 0
    }

    try {
        const json config = config_echo(seed, retries, cap);

        if (gen->parsed()) {
            Hypergraph g;
            if (family == "complete") {
                g = complete_kpartite(parse_int_list(sizes_arg));
            } else if (family == "hedgehog") {
                g = bipartite_hedgehog(gk, gd);
            } else if (family == "random") {
                g = erdos_renyi(gk, gn, gp, seed);
            } else if (family == "latin") {
                LatinSquare L = glatin_random ? LatinSquare::random(gd, seed) : LatinSquare::cyclic(gd);
                g = latin_square_hypergraph(L);
            } else if (family == "anchors") {
                g = augment_with_anchors(load_hypergraph(gin));
            } else if (family == "lift") {
                Hypergraph h = load_hypergraph(gin);
                g = lift_to_uniformity(h, gell, greedy_coloring(skeleton(h, std::min(1, h.uniformity() - 1))));
            } else if (family == "equipartition") {
                g = random_equipartition(load_hypergraph(gin), gk, seed).first;
            } else {
                std::cerr << "unknown family: " << family << "\n";
                return 1;
            }
            emit(to_json(g), out_path);
            return 0;
        }

        if (deg->parsed()) {
            Hypergraph h = load_hypergraph(deg_in);
            DegeneracyCertificate cert = skeletal_degeneracy(h, deg_i);
            json r;
            r["i"] = deg_i;
            r["value"] = cert.value;
            r["order"] = cert.order;
            r["witness"] = cert.witness;
            emit(wrap(config, r), out_path);
            return 0;
        }

        if (val->parsed()) {
            std::ifstream in(val_in);
            if (!in) {
                std::cerr << "cannot open " << val_in << "\n";
                return 1;
            }
            json j;
            json r;
            r["diagnostics"] = json::array();
            try {
                in >> j;
            } catch (const json::parse_error& e) {
                r["diagnostics"].push_back({{"path", "$"}, {"message", e.what()}});
                emit(wrap(config, r), out_path);
                return 2;
            }
            if (j.contains("colors")) {
                try {
                    coloring_from_json(j);
                } catch (const Error& e) {
                    r["diagnostics"].push_back({{"path", "$"}, {"message", e.what()}});
                }
            } else {
                for (const auto& dgn : validate_hypergraph_json(j))
                    r["diagnostics"].push_back({{"path", dgn.path}, {"message", dgn.message}});
            }
            emit(wrap(config, r), out_path);
            return r["diagnostics"].empty() ? 0 : 2;
        }

        if (bex->parsed()) {
            Hypergraph pattern = load_hypergraph(bex_pattern);
            std::optional<std::uint64_t> budget;
            if (bex_budget > 0)
                budget = bex_budget;
            TuranResult res = brute_force_turan(bex_n, pattern, budget);
            json r;
            r["value"] = res.value;
            r["exhaustive"] = res.exhaustive;
            std::string witness_file = out_path.empty() ? "" : out_path + ".witness.json";
            if (!witness_file.empty()) {
                save_hypergraph(res.witness, witness_file);
                r["witness_file"] = witness_file;
            } else {
                r["witness"] = to_json(res.witness);
            }
            emit(wrap(config, r), out_path);
            return 0;
        }

        if (brm->parsed()) {
            Hypergraph pattern = load_hypergraph(brm_pattern);
            RamseyResult res = brute_force_ramsey(pattern, brm_q, brm_nmax);
            json r;
            r["n_max"] = res.n_max;
            r["value"] = res.value ? json(*res.value) : json(nullptr);
            r["exhaustive"] = res.value.has_value();
            if (res.witness)
                r["failing_witness"] = to_json(*res.witness);
            emit(wrap(config, r), out_path);
            return 0;
        }

        if (prn->parsed()) {
            Hypergraph g = load_hypergraph(prn_in);
            json r;
            if (prn_mode == "simultaneous") {
                SimulPruneResult res = simultaneous_prune(g, prn_t, seed);
                r["mode"] = "simultaneous";
                r["tuples"] = res.tuples;
                r["kept_edges"] = res.kept_edges;
                r["survivor"] = to_json(res.pruned);
                r["to_old"] = res.to_old;
                emit(wrap(config, r), out_path);
                return 0;
            }
            PipelineConfig cfg;
            cfg.retries = retries;
            cfg.extension_cap = cap;
            PruneOutcome res = prune_pipeline(g, prn_d, seed, cfg);
            r["mode"] = "pipeline";
            r["ok"] = res.ok;
            r["trace"] = trace_to_json(res.trace);
            if (res.survivor)
                r["survivor"] = to_json(*res.survivor);
            emit(wrap(config, r), out_path);
            return res.ok ? 0 : 2;
        }

        if (emb->parsed()) {
            Hypergraph host = load_hypergraph(emb_host);
            Hypergraph pattern = load_hypergraph(emb_pattern);
            PipelineOverrides ov;
            ov.embed_retries = retries;
            ov.gpart_retries = retries;
            if (!paper_constants) {
                if (!emb_theta.empty())
                    ov.theta = parse_rational(emb_theta);
                if (emb_t > 0)
                    ov.t = static_cast<unsigned>(emb_t);
            }
            PipelineRun res = linear_turan_pipeline(host, pattern, ov, seed);
            json r;
            r["ok"] = res.ok;
            r["failed_stage"] = res.failed_stage;
            r["diagnostics"] = res.diagnostics;
            if (res.embedding)
                r["embedding"] = res.embedding->map;
            emit(wrap(config, r), out_path);
            return res.ok ? 0 : 2;
        }

        if (tlb->parsed()) {
            auto dots = tlb_seeds.find("..");
            std::uint64_t s0 = std::stoull(tlb_seeds.substr(0, dots));
            std::uint64_t s1 = dots == std::string::npos ? s0 : std::stoull(tlb_seeds.substr(dots + 2));
            json rows = json::array();
            std::optional<Hypergraph> pattern;
            if (tlb_family == "skeletal")
                pattern = load_hypergraph(tlb_pattern);
            for (std::uint64_t s = s0; s <= s1; ++s) {
                json row;
                row["seed"] = s;
                if (tlb_family == "complete") {
                    auto [g, rep] = deletion_construction_complete(tlb_k, tlb_d, tlb_n, s);
                    row["report"] = report_to_json(rep);
                } else {
                    auto [g, rep] = deletion_construction_skeletal(*pattern, tlb_i, tlb_d, tlb_n, s);
                    row["report"] = report_to_json(rep);
                }
                rows.push_back(row);
            }
            if (format == "csv") {
                std::string csv = "seed,sampled_edges,removed,final_edges,hfree\n";
                for (const auto& row : rows)
                    csv += std::to_string(row["seed"].get<std::uint64_t>()) + "," +
                           std::to_string(row["report"]["sampled_edges"].get<long long>()) + "," +
                           std::to_string(row["report"]["removed"].get<long long>()) + "," +
                           std::to_string(row["report"]["final_edges"].get<long long>()) + "," +
                           row["report"]["hfree_verified"].get<std::string>() + "\n";
                if (out_path.empty())
                    std::cout << csv;
                else {
                    std::ofstream of(out_path);
                    of << csv;
                }
                return 0;
            }
            emit(wrap(config, rows), out_path);
            return 0;
        }

        if (rms->parsed()) {
            Hypergraph pattern = load_hypergraph(rms_pattern);
            RamseyExperimentOptions opt;
            opt.exhaustive = rms_exhaustive;
            opt.trials = rms_trials;
            opt.route = rms_route;
            if (rms_ell > 0)
                opt.ell = rms_ell;
            RamseyStrategy strategy =
                rms_strategy == "oracle" ? RamseyStrategy::Oracle : RamseyStrategy::Pipeline;
            json r = ramsey_experiment(pattern, rms_q, rms_N, strategy, seed, opt);
            emit(wrap(config, r), out_path);
            return 0;
        }
    } catch (const FileFormatError& e) {
        std::cerr << "file error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
