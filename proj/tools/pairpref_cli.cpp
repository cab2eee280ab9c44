#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pairpref/frontier.hpp"
#include "pairpref/gadgets.hpp"
#include "pairpref/oracle.hpp"
#include "pairpref/sat.hpp"

namespace {

using namespace pairpref;

constexpr int kExitStable = 0;
constexpr int kExitNoStable = 1;
constexpr int kExitInputError = 2;
constexpr int kExitLimit = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::SyntaxError, "cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

StabilityNotion parse_notion(const std::string& s) {
    auto n = notion_from_name(s);
    if (!n) fail(Errc::SyntaxError, "unknown notion '" + s + "' (use weak, strong or super)");
    return *n;
}

OrderClass parse_class(const std::string& s) {
    auto c = order_class_from_name(s);
    if (!c) fail(Errc::SyntaxError, "unknown preference class '" + s + "'");
    return *c;
}

int error_exit(const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::SizeGuard ? kExitLimit : kExitInputError;
}

int cmd_classify(const std::string& path) {
    Instance inst = parse_instance(read_file(path));
    auto [cm, cw] = classify_sides(inst);
    nlohmann::json doc;
    doc["men"] = order_class_name(cm);
    doc["women"] = order_class_name(cw);
    doc["agents"] = nlohmann::json::object();
    for (int m = 0; m < inst.man_count(); ++m) doc["agents"][inst.men[m]] = order_class_name(inst.men_class[m]);
    for (int w = 0; w < inst.woman_count(); ++w)
        doc["agents"][inst.women[w]] = order_class_name(inst.women_class[w]);
    std::cout << doc.dump(2) << "\n";
    return kExitStable;
}

int cmd_solve(const std::string& notion_str, const std::string& path, const std::string& trace_path) {
    StabilityNotion notion = parse_notion(notion_str);
    Instance inst = parse_instance(read_file(path));
    DispatchResult r = solve_dispatch(notion, inst);
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) fail(Errc::SyntaxError, "cannot write trace file '" + trace_path + "'");
        if (notion == StabilityNotion::Strong)
            write_trace(out, r.strong_trace);
        else if (notion == StabilityNotion::Super)
            write_trace(out, r.super_trace);
    }
    if (!r.matching) {
        std::cout << "NONE\n";
        return kExitNoStable;
    }
    std::cout << serialize_matching(*r.matching, inst);
    return kExitStable;
}

int cmd_check(const std::string& notion_str, const std::string& path, const std::string& matching_path) {
    StabilityNotion notion = parse_notion(notion_str);
    Instance inst = parse_instance(read_file(path));
    Matching m = parse_matching(read_file(matching_path), inst);
    auto witness = find_blocking(notion, inst, m);
    if (!witness) {
        std::cout << "STABLE\n";
        return kExitStable;
    }
    nlohmann::json doc;
    doc["edge"] = {inst.men[witness->edge.first], inst.women[witness->edge.second]};
    doc["notion"] = notion_name(notion);
    doc["man_side"] = relation_token(witness->man_side);
    doc["woman_side"] = relation_token(witness->woman_side);
    std::cout << doc.dump(2) << "\n";
    return kExitNoStable;
}

int cmd_oracle(const std::string& notion_str, const std::string& path, const OracleLimits& limits) {
    StabilityNotion notion = parse_notion(notion_str);
    Instance inst = parse_instance(read_file(path));
    OracleAnswer a = enumerate_stable(inst, notion, limits);
    nlohmann::json doc;
    doc["verdict"] = verdict_name(a.verdict);
    doc["nodes_expanded"] = a.nodes_expanded;
    doc["count"] = a.matchings.size();
    doc["matchings"] = nlohmann::json::array();
    for (const auto& m : a.matchings) {
        nlohmann::json pairs = nlohmann::json::array();
        for (auto [mi, wi] : m.pairs) pairs.push_back({inst.men[mi], inst.women[wi]});
        doc["matchings"].push_back(std::move(pairs));
    }
    std::cout << doc.dump(2) << "\n";
    switch (a.verdict) {
        case OracleAnswer::Verdict::Exists: return kExitStable;
        case OracleAnswer::Verdict::NotExists: return kExitNoStable;
        case OracleAnswer::Verdict::LimitExceeded: return kExitLimit;
    }
    return kExitInputError;
}

int cmd_generate(const GeneratorParams& params) {
    std::cout << serialize_instance(generate_instance(params));
    return kExitStable;
}

int cmd_reduce(const std::string& notion_str, const std::string& cnf_path, const std::string& provenance_path) {
    StabilityNotion notion = parse_notion(notion_str);
    if (notion == StabilityNotion::Strong)
        fail(Errc::SyntaxError, "reductions exist for the weak and super notions only");
    Formula f = parse_dimacs(read_file(cnf_path));
    GadgetInstance g = notion == StabilityNotion::Weak ? build_weak_gadget(f) : build_super_gadget(f);
    if (!provenance_path.empty()) {
        std::ofstream out(provenance_path);
        if (!out) fail(Errc::SyntaxError, "cannot write provenance file '" + provenance_path + "'");
        out << provenance_json(g).dump(2) << "\n";
    }
    std::cout << serialize_instance(g.instance);
    return kExitStable;
}

int cmd_verify_reduction(const std::string& notion_str, const std::string& cnf_path, const OracleLimits& limits) {
    StabilityNotion notion = parse_notion(notion_str);
    if (notion == StabilityNotion::Strong)
        fail(Errc::SyntaxError, "reductions exist for the weak and super notions only");
    Formula f = parse_dimacs(read_file(cnf_path));
    auto violations = validate_22e3(f);
    if (!violations.empty()) fail(Errc::NotTwoTwoE3, violations.front());
    GadgetInstance g = notion == StabilityNotion::Weak ? build_weak_gadget(f) : build_super_gadget(f);

    nlohmann::json doc;
    auto assignment = sat_brute(f);
    doc["sat"] = assignment.has_value();
    if (assignment) {
        Matching m = assignment_to_matching(g, *assignment, notion);
        doc["forward_sound"] = !find_blocking(notion, g.instance, m).has_value();
    }
    OracleAnswer a = enumerate_stable(g.instance, notion, limits);
    if (a.verdict == OracleAnswer::Verdict::LimitExceeded) {
        doc["stable_exists"] = "limit";
        doc["agree"] = "unknown";
        std::cout << doc.dump(2) << "\n";
        return kExitLimit;
    }
    bool exists = a.verdict == OracleAnswer::Verdict::Exists;
    doc["stable_exists"] = exists;
    bool agree = exists == assignment.has_value();
    doc["agree"] = agree;
    std::cout << doc.dump(2) << "\n";
    return agree ? kExitStable : kExitNoStable;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stable marriage under pairwise preferences"};
    app.require_subcommand(1);

    std::string notion = "weak", instance_path, matching_path, trace_path, cnf_path, provenance_path;
    OracleLimits limits;
    double time_budget_s = 600.0;
    GeneratorParams gen;
    std::string men_class = "Strict", women_class = "Strict";

    auto add_limits = [&](CLI::App* cmd) {
        cmd->add_option("--max-edges", limits.max_edges, "refuse instances with more edges");
        cmd->add_option("--max-nodes", limits.max_nodes, "search node budget");
        cmd->add_option("--time-budget", time_budget_s, "search time budget in seconds");
        cmd->add_option("--jobs", limits.jobs, "worker threads for the search");
    };

    auto* classify_cmd = app.add_subcommand("classify", "per-agent and per-side preference classes");
    classify_cmd->add_option("instance", instance_path, "instance JSON file")->required();

    auto* solve_cmd = app.add_subcommand("solve", "run the polynomial solver owning the instance's cell");
    solve_cmd->add_option("--notion", notion, "weak, strong or super")->required();
    solve_cmd->add_option("instance", instance_path, "instance JSON file")->required();
    solve_cmd->add_option("--trace", trace_path, "write solver trace as JSON lines");

    auto* check_cmd = app.add_subcommand("check", "verify a matching against an instance");
    check_cmd->add_option("--notion", notion, "weak, strong or super")->required();
    check_cmd->add_option("instance", instance_path, "instance JSON file")->required();
    check_cmd->add_option("--matching", matching_path, "matching JSON file")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "enumerate all stable matchings exhaustively");
    oracle_cmd->add_option("--notion", notion, "weak, strong or super")->required();
    oracle_cmd->add_option("instance", instance_path, "instance JSON file")->required();
    add_limits(oracle_cmd);

    auto* generate_cmd = app.add_subcommand("generate", "random instance with per-side preference classes");
    generate_cmd->add_option("--men", gen.men_count, "number of men")->required();
    generate_cmd->add_option("--women", gen.women_count, "number of women")->required();
    generate_cmd->add_option("--density", gen.edge_density, "edge probability");
    generate_cmd->add_option("--men-class", men_class, "preference class of the men side");
    generate_cmd->add_option("--women-class", women_class, "preference class of the women side");
    generate_cmd->add_option("--seed", gen.seed, "random seed");

    auto* reduce_cmd = app.add_subcommand("reduce", "build the hardness gadget of a (2,2)-E3-SAT formula");
    reduce_cmd->add_option("--notion", notion, "weak or super")->required();
    reduce_cmd->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
    reduce_cmd->add_option("--provenance", provenance_path, "write formula-to-vertex maps here");

    auto* verify_cmd = app.add_subcommand("verify-reduction", "compare SAT brute force with the gadget oracle");
    verify_cmd->add_option("--notion", notion, "weak or super")->required();
    verify_cmd->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
    add_limits(verify_cmd);

    CLI11_PARSE(app, argc, argv);
    limits.time_budget = std::chrono::milliseconds(static_cast<long long>(time_budget_s * 1000.0));

    try {
        if (app.got_subcommand(classify_cmd)) return cmd_classify(instance_path);
        if (app.got_subcommand(solve_cmd)) return cmd_solve(notion, instance_path, trace_path);
        if (app.got_subcommand(check_cmd)) return cmd_check(notion, instance_path, matching_path);
        if (app.got_subcommand(oracle_cmd)) return cmd_oracle(notion, instance_path, limits);
        if (app.got_subcommand(generate_cmd)) {
            gen.men_class = parse_class(men_class);
            gen.women_class = parse_class(women_class);
            return cmd_generate(gen);
        }
        if (app.got_subcommand(reduce_cmd)) return cmd_reduce(notion, cnf_path, provenance_path);
        if (app.got_subcommand(verify_cmd)) return cmd_verify_reduction(notion, cnf_path, limits);
    } catch (const Error& e) {
        return error_exit(e);
    }
    return kExitInputError;
}
