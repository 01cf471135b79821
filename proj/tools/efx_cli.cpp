// Copyright 2026 The efxgraph Authors
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

// efx: command-line front end. One JSON document on stdout per run.
//
// Exit codes: 0 ok, 1 usage/IO/parse, 2 verification failed,
// 3 oracle budget exceeded, 4 method/structure mismatch.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "efx/efx.hpp"

namespace {

using efx::Json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;
constexpr int kBudget = 3;
constexpr int kStructure = 4;

efx::Instance read_instance(const std::string& source) {
    if (source == "-") return efx::load_instance(std::cin);
    return efx::load_instance(source);
}

void emit(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

std::vector<long> parse_set(const std::string& text) {
    std::vector<long> out;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            std::size_t used = 0;
            const long value = std::stol(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            out.push_back(value);
        } catch (const std::exception&) {
            throw efx::InputError("bad partition entry '" + token + "'");
        }
    }
    if (out.empty()) throw efx::InputError("partition set is empty");
    return out;
}

Json alpha_list(const efx::Instance& inst, const efx::Allocation& x) {
    Json out = Json::array();
    for (efx::Agent a = 0; a < inst.agents(); ++a) out.push_back(efx::achieved_alpha(inst, x, a).str());
    return out;
}

struct SolveArgs {
    std::string instance;
    std::string method = "auto";
    bool trace = false;
};

int run_solve(const SolveArgs& args) {
    const auto inst = read_instance(args.instance);
    const auto report = efx::analyze_structure(inst);
    std::string method = args.method;
    if (method == "auto") {
        switch (report.family) {
            case efx::Family::multi_star: method = "star"; break;
            case efx::Family::multi_cycle: {
                bool triangle = false;
                for (const auto& comp : efx::components(inst)) triangle = triangle || comp.size() == 3;
                method = triangle ? "oracle" : "cycle";
                break;
            }
            case efx::Family::multi_tree:
                method = report.diameter <= 4 && report.q <= 2 ? "tree4" : "bipartite";
                break;
            case efx::Family::bipartite: method = "bipartite"; break;
            case efx::Family::general:
                std::cerr << "efx: no algorithm for general multi-graphs; EFX existence there is an open conjecture\n";
                return kStructure;
        }
    }

    Json out;
    efx::Allocation x;
    efx::PipelineTrace trace;
    if (method == "bipartite") {
        x = efx::complete_efx(inst, args.trace ? &trace : nullptr);
    } else if (method == "star") {
        x = efx::solve_multistar(inst);
    } else if (method == "tree4") {
        x = efx::solve_multitree_d4_q2(inst);
    } else if (method == "cycle") {
        x = efx::solve_multicycle(inst);
    } else {
        auto result = efx::decide_efx_allocation(inst);
        if (!result.witness) {
            std::cerr << "efx: oracle found no EFX allocation\n";
            return kVerifyFailed;
        }
        x = *result.witness;
    }
    out["bundles"] = efx::bundles_json(x);
    out["method"] = method;
    if (args.trace) {
        if (method != "bipartite") throw efx::StructureError("--trace is only available for the bipartite method");
        out["trace"] = efx::to_json(trace);
    }
    emit(out);
    return kOk;
}

int run_orient(const std::string& source, const std::string& method) {
    const auto inst = read_instance(source);
    efx::Allocation x;
    if (method == "star") {
        x = efx::solve_multistar(inst);
    } else if (method == "tree4") {
        x = efx::solve_multitree_d4_q2(inst);
    } else {
        x = efx::half_efx_orientation(inst);
    }
    emit(Json{{"bundles", efx::bundles_json(x)}, {"method", method}, {"alpha", alpha_list(inst, x)}});
    return kOk;
}

int run_verify(const std::string& source, const std::string& alloc_path, const std::string& alpha_text,
               bool orientation) {
    if (source == "-" && alloc_path == "-") throw efx::InputError("only one input may come from stdin");
    const auto inst = read_instance(source);
    const auto x = alloc_path == "-" ? efx::load_allocation(inst, std::cin) : efx::load_allocation(inst, alloc_path);
    efx::Rational alpha;
    try {
        alpha = efx::Rational::parse(alpha_text);
    } catch (const std::exception& ex) {
        throw efx::InputError(std::string("bad --alpha: ") + ex.what());
    }
    if (!alpha.is_positive() || alpha > efx::Rational(1)) throw efx::InputError("--alpha must lie in (0, 1]");
    const auto verdict = efx::check_efx(inst, x, alpha);
    Json out = efx::to_json(verdict);
    bool pass = verdict.pass;
    if (orientation) {
        const bool is_orient = x.is_orientation(inst) && x.complete();
        out["orientation"] = is_orient;
        pass = pass && is_orient;
        out["pass"] = pass;
    }
    emit(out);
    return pass ? kOk : kVerifyFailed;
}

struct DecideArgs {
    std::string instance;
    std::string target = "orientation";
    bool count = false;
    bool no_prune = false;
    std::uint64_t budget = 0;
    unsigned jobs = 1;
};

int run_decide(const DecideArgs& args) {
    const auto inst = read_instance(args.instance);
    efx::OracleOptions opt;
    if (args.budget != 0) opt.budget = args.budget;
    opt.count = args.count;
    opt.prune = !args.no_prune;
    opt.jobs = args.jobs;
    if (args.target == "allocation") {
        if (args.count) throw efx::InputError("--count applies to orientations only");
        emit(efx::to_json(efx::decide_efx_allocation(inst, opt)));
    } else {
        emit(efx::to_json(efx::decide_efx_orientation(inst, opt)));
    }
    return kOk;
}

struct GenArgs {
    std::string family;
    std::string eps = "1/100";
    std::string delta = "1/1000000";
    std::size_t q = 4;
    std::string set;
    std::uint64_t seed = 0;
    std::size_t n = 6;
    std::size_t m = 10;
    std::size_t q_max = 3;
    std::string shape = "bipartite";
    long num_max = 1000;
    long den_max = 1;
    bool symmetric = false;
};

efx::Rational parse_param(const std::string& text, const char* name) {
    try {
        return efx::Rational::parse(text);
    } catch (const std::exception& ex) {
        throw efx::InputError(std::string("bad --") + name + ": " + ex.what());
    }
}

int run_gen(const GenArgs& args) {
    if (args.family == "random") {
        efx::RandomSpec spec;
        spec.n = args.n;
        spec.m = args.m;
        spec.q_max = args.q_max;
        spec.numerator_max = args.num_max;
        spec.denominator_max = args.den_max;
        spec.seed = args.seed;
        spec.symmetric = args.symmetric;
        if (args.shape == "tree") {
            spec.family = efx::RandomFamily::tree;
        } else if (args.shape == "cycle") {
            spec.family = efx::RandomFamily::cycle;
        } else if (args.shape == "star") {
            spec.family = efx::RandomFamily::star;
        }
        emit(efx::to_json(efx::random_instance(spec)));
        return kOk;
    }
    efx::FamilySpec spec;
    spec.family = args.family;
    spec.eps = parse_param(args.eps, "eps");
    spec.delta = parse_param(args.delta, "delta");
    spec.q = args.q;
    if (!args.set.empty()) spec.partition = parse_set(args.set);
    emit(efx::to_json(efx::generate(spec)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EFX allocations and orientations on multi-graph instances"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "complete EFX allocation");
    solve_cmd->add_option("instance", solve.instance, "instance JSON path or - for stdin")->required();
    solve_cmd->add_option("--method", solve.method)
        ->check(CLI::IsMember({"auto", "bipartite", "star", "tree4", "cycle", "oracle"}));
    solve_cmd->add_flag("--trace", solve.trace, "embed stage snapshots (bipartite only)");

    std::string orient_source;
    std::string orient_method;
    auto* orient_cmd = app.add_subcommand("orient", "EFX or 1/2-EFX orientation");
    orient_cmd->add_option("instance", orient_source)->required();
    orient_cmd->add_option("--method", orient_method)->required()->check(CLI::IsMember({"star", "tree4", "half-efx"}));

    std::string verify_source;
    std::string verify_alloc;
    std::string verify_alpha = "1";
    bool verify_orientation = false;
    auto* verify_cmd = app.add_subcommand("verify", "check (alpha-)EFX of an allocation");
    verify_cmd->add_option("instance", verify_source)->required();
    verify_cmd->add_option("allocation", verify_alloc)->required();
    verify_cmd->add_option("--alpha", verify_alpha, "p/q in (0, 1]");
    verify_cmd->add_flag("--orientation", verify_orientation, "also require a complete orientation");

    DecideArgs decide;
    auto* decide_cmd = app.add_subcommand("decide", "exhaustive existence oracle");
    decide_cmd->add_option("instance", decide.instance)->required();
    decide_cmd->add_option("--target", decide.target)->check(CLI::IsMember({"orientation", "allocation"}));
    decide_cmd->add_flag("--count", decide.count, "count all EFX orientations");
    decide_cmd->add_option("--budget", decide.budget, "maximum search states");
    decide_cmd->add_option("--jobs", decide.jobs, "worker threads")->check(CLI::PositiveNumber);
    decide_cmd->add_flag("--no-prune", decide.no_prune, "check only complete assignments");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate an instance family");
    std::vector<std::string> families(efx::family_names().begin(), efx::family_names().end());
    families.emplace_back("random");
    gen_cmd->add_option("--family", gen.family)->required()->check(CLI::IsMember(families));
    gen_cmd->add_option("--eps", gen.eps);
    gen_cmd->add_option("--delta", gen.delta);
    gen_cmd->add_option("--q", gen.q, "p4-qn multiplicity");
    gen_cmd->add_option("--set", gen.set, "np-gadget multiset, comma separated");
    gen_cmd->add_option("--seed", gen.seed);
    gen_cmd->add_option("--n", gen.n);
    gen_cmd->add_option("--m", gen.m);
    gen_cmd->add_option("--q-max", gen.q_max);
    gen_cmd->add_option("--shape", gen.shape)->check(CLI::IsMember({"bipartite", "tree", "cycle", "star"}));
    gen_cmd->add_option("--num-max", gen.num_max);
    gen_cmd->add_option("--den-max", gen.den_max);
    gen_cmd->add_flag("--symmetric", gen.symmetric);

    std::string reduce_set;
    std::string reduce_eps = "1/100";
    std::string reduce_delta = "1/1000000";
    auto* reduce_cmd = app.add_subcommand("reduce-partition", "Partition gadget instance");
    reduce_cmd->add_option("--set", reduce_set)->required();
    reduce_cmd->add_option("--eps", reduce_eps);
    reduce_cmd->add_option("--delta", reduce_delta);

    std::string analyze_source;
    auto* analyze_cmd = app.add_subcommand("analyze", "structure report");
    analyze_cmd->add_option("instance", analyze_source)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*solve_cmd) return run_solve(solve);
        if (*orient_cmd) return run_orient(orient_source, orient_method);
        if (*verify_cmd) return run_verify(verify_source, verify_alloc, verify_alpha, verify_orientation);
        if (*decide_cmd) return run_decide(decide);
        if (*gen_cmd) return run_gen(gen);
        if (*reduce_cmd) {
            emit(efx::to_json(efx::reduce_partition(parse_set(reduce_set), parse_param(reduce_eps, "eps"),
                                                    parse_param(reduce_delta, "delta"))));
            return kOk;
        }
        if (*analyze_cmd) {
            emit(efx::to_json(efx::analyze_structure(read_instance(analyze_source))));
            return kOk;
        }
    } catch (const efx::BudgetExceeded& e) {
        std::cerr << "efx: " << e.what() << '\n';
        return kBudget;
    } catch (const efx::StructureError& e) {
        std::cerr << "efx: " << e.what() << '\n';
        return kStructure;
    } catch (const std::exception& e) {
        std::cerr << "efx: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
