// dunkl: decide, certify, and explain Dunkl metrics for weighted complex
// hyperplane arrangements.
//
// Subcommands: catalog, analyze, stability, qform, balance, dunkl,
// find-weights, langer. Every command reads the shared arrangement JSON
// format and emits a RunReport envelope on stdout (or --out).
//
// Exit codes: 0 success (dunkl / feasible / converged), 1 negative verdict,
// 2 not applicable (essential/irreducible or dimension gate failed),
// 64 usage, 65 invalid input, 70 internal inconsistency or numeric failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dunkl/json_io.hpp"

namespace {

using namespace dunkl;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_not_applicable = 2;
constexpr int exit_usage = 64;
constexpr int exit_bad_input = 65;
constexpr int exit_internal = 70;

struct CommonOpts {
    std::string arrangement_file;
    std::string weights_file;
    std::string out_file;
    std::string mode_override;
    bool timing = false;
};

class StageClock {
  public:
    explicit StageClock(bool enabled) : enabled_(enabled) { last_ = clock::now(); }

    void mark(const std::string& stage) {
        if (!enabled_) return;
        auto now = clock::now();
        stages_[stage] = std::chrono::duration<double>(now - last_).count();
        last_ = now;
    }

    const json* result() {
        if (!enabled_) return nullptr;
        return &stages_;
    }

  private:
    using clock = std::chrono::steady_clock;
    bool enabled_;
    clock::time_point last_;
    json stages_ = json::object();
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::bad_input, "cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::bad_input, what + " is not valid JSON");
    return j;
}

void emit(const json& report, const std::string& out_file) {
    std::string text = report.dump(2);
    text.push_back('\n');
    if (out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) fail(errc::bad_input, "cannot write file '" + out_file + "'");
        out << text;
    }
}

Arrangement<double> downcast(const Arrangement<Rational>& arr) {
    std::vector<CVec<double>> normals;
    for (const auto& v : arr.normals) {
        CVec<double> w;
        for (const auto& z : v) w.push_back(Cx<double>{to_double(z.re), to_double(z.im)});
        normals.push_back(std::move(w));
    }
    return validate_arrangement(arr.dim, std::move(normals), arr.labels);
}

struct LoadedInput {
    ArrangementVariant arr;
    json digest = json::object();
};

LoadedInput load_arrangement(const CommonOpts& opts) {
    if (opts.arrangement_file.empty()) fail(errc::bad_input, "missing arrangement file argument");
    std::string bytes = read_file(opts.arrangement_file);
    LoadedInput in{parse_arrangement_json(parse_json_text(bytes, "arrangement file")),
                   json::object()};
    in.digest["arrangement"] = fnv1a64_hex(bytes);
    if (!opts.mode_override.empty()) {
        if (opts.mode_override == "exact" && std::holds_alternative<Arrangement<double>>(in.arr))
            fail(errc::bad_params, "cannot promote a float arrangement to exact mode");
        if (opts.mode_override == "float" && std::holds_alternative<Arrangement<Rational>>(in.arr))
            in.arr = downcast(std::get<Arrangement<Rational>>(in.arr));
    }
    return in;
}

template <class K>
WeightVector<K> load_weights(const CommonOpts& opts, int n, json& digest) {
    if (opts.weights_file.empty()) fail(errc::bad_input, "this command needs --weights FILE");
    std::string bytes = read_file(opts.weights_file);
    digest["weights"] = fnv1a64_hex(bytes);
    return parse_weights_json<K>(parse_json_text(bytes, "weights file"), n);
}

// ---------------------------------------------------------------------------

int cmd_catalog(const CommonOpts& opts, const std::string& family, int param, int dim,
                std::uint64_t seed) {
    ArrangementVariant arr = [&]() -> ArrangementVariant {
        if (family == "braid") return catalog::braid(param);
        if (family == "full_monomial_B") return catalog::full_monomial_B(param);
        if (family == "dihedral_lines") return catalog::dihedral_lines(param);
        if (family == "generic") return catalog::generic(param, dim, seed);
        fail(errc::bad_params, "unknown family '" + family +
                                   "' (expected braid, full_monomial_B, dihedral_lines, generic)");
    }();
    if (opts.mode_override == "float" && std::holds_alternative<Arrangement<Rational>>(arr))
        arr = downcast(std::get<Arrangement<Rational>>(arr));
    if (opts.mode_override == "exact" && std::holds_alternative<Arrangement<double>>(arr))
        fail(errc::bad_params, "family '" + family + "' only exists in float mode");
    // catalog emits the bare arrangement object: its output is the input
    // format of every other command
    return std::visit(
        [&](const auto& a) {
            emit(arrangement_to_json(a), opts.out_file);
            return exit_ok;
        },
        arr);
}

int cmd_analyze(const CommonOpts& opts) {
    StageClock clock(opts.timing);
    LoadedInput in = load_arrangement(opts);
    clock.mark("parse");
    return std::visit(
        [&](const auto& arr) {
            IntersectionPoset poset = enumerate_flats(arr);
            clock.mark("enumerate_flats");
            emit(run_report("analyze", std::decay_t<decltype(arr)>::mode, in.digest,
                            poset_to_json(poset), clock.result()),
                 opts.out_file);
            return exit_ok;
        },
        in.arr);
}

int cmd_stability(const CommonOpts& opts) {
    StageClock clock(opts.timing);
    LoadedInput in = load_arrangement(opts);
    clock.mark("parse");
    return std::visit(
        [&]<class K>(const Arrangement<K>& arr) {
            WeightVector<K> w = load_weights<K>(opts, arr.n(), in.digest);
            IntersectionPoset poset = enumerate_flats(arr);
            clock.mark("enumerate_flats");
            StabilityReport<K> rep = stability_report(poset, w);
            clock.mark("stability");
            emit(run_report("stability", Arrangement<K>::mode, in.digest,
                            stability_to_json(poset, rep), clock.result()),
                 opts.out_file);
            return rep.stable ? exit_ok : exit_negative;
        },
        in.arr);
}

int cmd_qform(const CommonOpts& opts) {
    StageClock clock(opts.timing);
    LoadedInput in = load_arrangement(opts);
    clock.mark("parse");
    return std::visit(
        [&]<class K>(const Arrangement<K>& arr) {
            WeightVector<K> w = load_weights<K>(opts, arr.n(), in.digest);
            IntersectionPoset poset = enumerate_flats(arr);
            clock.mark("enumerate_flats");
            QEvaluation<K> ev = q_evaluate(poset, w);
            clock.mark("qform");
            emit(run_report("qform", Arrangement<K>::mode, in.digest, qform_to_json(poset, ev),
                            clock.result()),
                 opts.out_file);
            return exit_ok;
        },
        in.arr);
}

int cmd_balance(const CommonOpts& opts, double tol, int max_iter, bool no_precheck) {
    StageClock clock(opts.timing);
    LoadedInput in = load_arrangement(opts);
    clock.mark("parse");
    return std::visit(
        [&]<class K>(const Arrangement<K>& arr) {
            WeightVector<K> w = load_weights<K>(opts, arr.n(), in.digest);
            IntersectionPoset poset = enumerate_flats(arr);
            clock.mark("enumerate_flats");
            BalanceOptions bopts;
            bopts.tol = tol;
            bopts.max_iter = max_iter;
            bopts.precheck = !no_precheck;
            BalanceResult res = balance(arr, poset, w, bopts);
            clock.mark("balance");
            emit(run_report("balance", Arrangement<K>::mode, in.digest, balance_to_json(res),
                            clock.result()),
                 opts.out_file);
            return res.converged() ? exit_ok : exit_negative;
        },
        in.arr);
}

int cmd_dunkl(const CommonOpts& opts, double tol, int max_iter, bool no_precheck) {
    StageClock clock(opts.timing);
    LoadedInput in = load_arrangement(opts);
    clock.mark("parse");
    return std::visit(
        [&]<class K>(const Arrangement<K>& arr) {
            WeightVector<K> w = load_weights<K>(opts, arr.n(), in.digest);
            IntersectionPoset poset = enumerate_flats(arr);
            clock.mark("enumerate_flats");
            DecisionOptions dopts;
            dopts.tol_balance = tol;
            dopts.max_iter = max_iter;
            dopts.precheck = !no_precheck;
            DunklVerdict<K> v = dunkl_decision(arr, poset, w, dopts);
            clock.mark("decision");
            emit(run_report("dunkl", Arrangement<K>::mode, in.digest, verdict_to_json(poset, v),
                            clock.result()),
                 opts.out_file);
            if (!v.consistent()) return exit_internal;
            switch (v.decision) {
                case Decision::dunkl: return exit_ok;
                case Decision::not_dunkl: return exit_negative;
                case Decision::not_applicable: return exit_not_applicable;
            }
            return exit_internal;
        },
        in.arr);
}

int cmd_find_weights(const CommonOpts& opts, int samples, std::uint64_t seed) {
    StageClock clock(opts.timing);
    LoadedInput in = load_arrangement(opts);
    clock.mark("parse");
    return std::visit(
        [&]<class K>(const Arrangement<K>& arr) {
            IntersectionPoset poset = enumerate_flats(arr);
            clock.mark("enumerate_flats");
            FeasibilityResult<K> res = find_dunkl_weights<K>(poset);
            clock.mark("lp");
            json payload = feasibility_to_json(poset, res);
            if (samples > 0 && res.feasible) {
                json arrs = json::array();
                for (const auto& w : sample_feasible(poset, res, samples, seed))
                    arrs.push_back(weights_to_json(w));
                payload["samples"] = std::move(arrs);
                clock.mark("sampling");
            }
            emit(run_report("find-weights", Arrangement<K>::mode, in.digest, payload,
                            clock.result()),
                 opts.out_file);
            return res.feasible ? exit_ok : exit_negative;
        },
        in.arr);
}

int cmd_langer(const CommonOpts& opts) {
    StageClock clock(opts.timing);
    LoadedInput in = load_arrangement(opts);
    clock.mark("parse");
    return std::visit(
        [&](const auto& arr) {
            IntersectionPoset poset = enumerate_flats(arr);
            LangerStatistic st = langer_statistic(poset);
            clock.mark("langer");
            emit(run_report("langer", std::decay_t<decltype(arr)>::mode, in.digest,
                            langer_to_json(poset.n, st), clock.result()),
                 opts.out_file);
            return exit_ok;
        },
        in.arr);
}

int exit_code_for(const error& e) {
    switch (e.code()) {
        case errc::not_essential_or_reducible:
        case errc::wrong_dimension:
            return exit_not_applicable;
        case errc::lp_numerical_failure:
        case errc::not_converged:
        case errc::not_positive_definite:
            return exit_internal;
        default:
            return exit_bad_input;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dunkl metrics for weighted complex hyperplane arrangements"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string family = "braid";
    int param = 4;
    int dim = 3;
    std::uint64_t seed = 1;
    int samples = 0;
    double tol = 1e-12;
    int max_iter = 10000;
    bool no_precheck = false;

    auto add_common = [&](CLI::App* cmd, bool needs_arr, bool needs_weights) {
        if (needs_arr)
            cmd->add_option("arrangement", opts.arrangement_file, "arrangement JSON file")
                ->required();
        if (needs_weights)
            cmd->add_option("--weights", opts.weights_file, "weights JSON file {\"weights\": [...]}");
        cmd->add_option("--out", opts.out_file, "write the report here instead of stdout");
        cmd->add_option("--mode", opts.mode_override, "force exact|float processing")
            ->check(CLI::IsMember({"exact", "float"}));
        cmd->add_flag("--timing", opts.timing, "include per-stage wall-clock seconds");
    };

    CLI::App* c_catalog = app.add_subcommand("catalog", "emit a catalog arrangement");
    c_catalog->add_option("--family", family, "braid | full_monomial_B | dihedral_lines | generic")
        ->required();
    c_catalog->add_option("--param", param, "m / d / k / n per family")->required();
    c_catalog->add_option("--dim", dim, "ambient dimension (generic only)");
    c_catalog->add_option("--seed", seed, "random seed (generic only)");
    add_common(c_catalog, false, false);

    CLI::App* c_analyze = app.add_subcommand("analyze", "intersection poset and classifications");
    add_common(c_analyze, true, false);

    CLI::App* c_stab = app.add_subcommand("stability", "stability report for (H, a)");
    add_common(c_stab, true, true);

    CLI::App* c_qform = app.add_subcommand("qform", "Hirzebruch quadratic form evaluation");
    add_common(c_qform, true, true);

    CLI::App* c_balance = app.add_subcommand("balance", "balanced-metric scaling solver");
    add_common(c_balance, true, true);
    c_balance->add_option("--tol", tol, "relative residual tolerance");
    c_balance->add_option("--max-iter", max_iter, "iteration cap");
    c_balance->add_flag("--no-precheck", no_precheck, "skip the stability precheck");

    CLI::App* c_dunkl = app.add_subcommand("dunkl", "full Dunkl-metric decision pipeline");
    add_common(c_dunkl, true, true);
    c_dunkl->add_option("--tol", tol, "balance residual tolerance");
    c_dunkl->add_option("--max-iter", max_iter, "balance iteration cap");
    c_dunkl->add_flag("--no-precheck", no_precheck, "skip the stability precheck");

    CLI::App* c_find = app.add_subcommand("find-weights", "Dunkl weight feasibility (critQ ∩ cone)");
    add_common(c_find, true, false);
    c_find->add_option("--samples", samples, "also draw N verified interior samples");
    c_find->add_option("--seed", seed, "sampling seed");

    CLI::App* c_langer = app.add_subcommand("langer", "line-arrangement multiplicity bound (d = 3)");
    add_common(c_langer, true, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (c_catalog->parsed()) return cmd_catalog(opts, family, param, dim, seed);
        if (c_analyze->parsed()) return cmd_analyze(opts);
        if (c_stab->parsed()) return cmd_stability(opts);
        if (c_qform->parsed()) return cmd_qform(opts);
        if (c_balance->parsed()) return cmd_balance(opts, tol, max_iter, no_precheck);
        if (c_dunkl->parsed()) return cmd_dunkl(opts, tol, max_iter, no_precheck);
        if (c_find->parsed()) return cmd_find_weights(opts, samples, seed);
        if (c_langer->parsed()) return cmd_langer(opts);
        return exit_usage;
    } catch (const error& e) {
        json err{{"command", command},
                 {"version", tool_version},
                 {"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        json err{{"command", command},
                 {"version", tool_version},
                 {"error", {{"code", "Unexpected"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return exit_internal;
    }
}
