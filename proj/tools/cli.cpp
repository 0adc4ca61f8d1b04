#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <set>

#include "cwcsp/classifier.hpp"
#include "cwcsp/gadget.hpp"
#include "cwcsp/json_io.hpp"

namespace cwcsp::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string input;
    std::string lang_path;
    std::string out_path;
    bool json_output = false;
    int closure_atoms = 3;
    int closure_bound_vars = 2;
    std::uint64_t cap = 0;
    std::string u_prime_weights = "1,2";
    std::vector<std::string> pins;
};

std::pair<Rational, Rational> parse_weight_pair(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--u-prime-weights expects a,b");
    Rational a, b;
    try {
        a = Rational::parse(text.substr(0, comma));
        b = Rational::parse(text.substr(comma + 1));
    } catch (const Error&) {
        throw UsageError("--u-prime-weights expects two rationals");
    }
    if (a.is_zero() || b.is_zero() || a == b) throw UsageError("--u-prime-weights needs distinct positive values");
    return {a, b};
}

CloneBounds bounds_of(const Config& c) {
    CloneBounds b;
    b.max_atoms = c.closure_atoms;
    b.max_bound_vars = c.closure_bound_vars;
    if (c.cap) b.max_candidates = c.cap;
    return b;
}

EvalLimits eval_limits_of(const Config& c) {
    EvalLimits l;
    if (c.cap) l.max_nodes = c.cap;
    return l;
}

SearchLimits search_limits_of(const Config& c) {
    SearchLimits l;
    if (c.cap) l.max_nodes = c.cap;
    return l;
}

struct Loaded {
    Language lang;
    Formula inst;
};

Language load_language(const Config& c) { return parse_language(read_file(c.input)); }

Loaded load_instance(const Config& c) {
    std::string text = read_file(c.input);
    Language lang = parse_language(c.lang_path.empty() ? text : read_file(c.lang_path));
    Formula inst = parse_instance(text, lang);
    if (!inst.is_instance()) throw PreconditionError("expected an instance without bound variables");
    return {std::move(lang), std::move(inst)};
}

json function_json(const WeightFunction& f) {
    json table = json::array();
    for (const auto& r : f.table()) table.push_back(r.str());
    return {{"arity", f.arity()}, {"domain_size", f.domain_size()}, {"table", table}};
}

std::string cmd_classify(const Config& c) {
    ClassifyOptions options;
    options.bounds = bounds_of(c);
    options.u_prime_weights = parse_weight_pair(c.u_prime_weights);
    options.search_limits = search_limits_of(c);
    return serialize(classify(load_language(c), options));
}

std::string cmd_solve(const Config& c) {
    auto [lang, inst] = load_instance(c);
    Rational z = partition_function(inst, lang, eval_limits_of(c));
    if (c.json_output) return json{{"Z", z.str()}}.dump(2) + "\n";
    return z.str() + "\n";
}

std::string cmd_mincost(const Config& c) {
    auto [lang, inst] = load_instance(c);
    Cost cost = min_cost(inst, to_cost_language(lambda_scale(lang)), lang.domain_size, eval_limits_of(c));
    if (c.json_output) return json{{"cost", cost.str()}, {"weight", cost.weight().str()}}.dump(2) + "\n";
    return cost.str() + "\n";
}

std::string cmd_feasible(const Config& c) {
    auto [lang, inst] = load_instance(c);
    CostLanguage crisp;
    for (auto& [name, f] : to_cost_language(lambda_scale(lang))) crisp.emplace(name, underlying_relation(f));
    std::vector<std::optional<int>> pins(static_cast<std::size_t>(inst.num_vars()));
    for (const auto& p : c.pins) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw UsageError("--pin expects VAR=VALUE");
        int var = 0, value = 0;
        try {
            var = std::stoi(p.substr(0, eq));
            value = std::stoi(p.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("--pin expects integers VAR=VALUE");
        }
        if (var < 0 || var >= inst.num_vars() || value < 0 || value >= lang.domain_size)
            throw PreconditionError("pin " + p + " out of range");
        pins[static_cast<std::size_t>(var)] = value;
    }
    bool result = feasible(inst, crisp, lang.domain_size, pins, eval_limits_of(c));
    if (c.json_output) return json{{"feasible", result}}.dump(2) + "\n";
    return std::string(result ? "true" : "false") + "\n";
}

std::string cmd_multimorphism(const Config& c) {
    Language lang = load_language(c);
    std::vector<CostFunction> costs;
    for (auto& [name, f] : to_cost_language(lambda_scale(lang))) costs.push_back(f);
    auto mm = find_stp_mjn(costs, lang.domain_size, search_limits_of(c));
    json out = {{"found", mm.has_value()}};
    if (mm) out["multimorphism"] = json::parse(serialize(*mm));
    return out.dump(2) + "\n";
}

BooleanEncoding encode(const Config& c) {
    auto [lang, inst] = load_instance(c);
    CostLanguage costs = to_cost_language(lambda_scale(lang));
    auto mm = find_multisorted_total_order_mm(inst, costs, lang.domain_size, search_limits_of(c));
    if (!mm) throw PreconditionError("no multisorted min/max multimorphism in the total-order family");
    return boolean_encode(inst, *mm, costs, lang.domain_size);
}

std::string cmd_reduce_boolean(const Config& c) {
    BooleanEncoding enc = encode(c);
    return serialize(enc.language, enc.instance);
}

std::string cmd_reduce_imp(const Config& c) {
    GadgetInstance g = imp_gadgetize(encode(c));
    return serialize(g.language, g.instance);
}

std::string cmd_clone_scan(const Config& c) {
    Language lang = load_language(c);
    Language extended = extend_with_u_prime(lang, parse_weight_pair(c.u_prime_weights));
    std::set<std::vector<Rational>> seen;
    json wlm = nullptr, wlsm = nullptr;
    auto examined = for_each_binary_clone_candidate(
        extended, bounds_of(c), [&](const Formula& formula, const WeightFunction& table) {
            seen.insert(normalize_scalar(table).table());
            if (wlm.is_null())
                if (auto v = check_weak_logmodular(table))
                    wlm = {{"function", function_json(table)}, {"a", v->a}, {"b", v->b},
                           {"formula", json::parse(serialize(formula))}};
            if (wlsm.is_null())
                if (auto v = check_weak_logsupermodular(table))
                    wlsm = {{"function", function_json(table)}, {"a", v->a}, {"b", v->b},
                            {"formula", json::parse(serialize(formula))}};
            return true;
        });
    json out = {{"candidates_examined", examined},
                {"distinct_functions", seen.size()},
                {"wlm_violation", wlm},
                {"wlsm_violation", wlsm}};
    return out.dump(2) + "\n";
}

void emit(const Config& c, const std::string& text, std::ostream& out) {
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + c.out_path + "'");
    file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classification and exact solvers for conservative weighted counting CSPs", "cwcsp"};
    app.require_subcommand(1);
    Config c;

    auto add_common = [&](CLI::App* sub, bool instance) {
        sub->add_option("input", c.input, instance ? "Instance JSON (with language unless --lang)" : "Language JSON")
            ->required();
        if (instance) sub->add_option("--lang", c.lang_path, "Separate language JSON");
        sub->add_option("--out", c.out_path, "Write output to a file");
        sub->add_flag("--json", c.json_output, "JSON output");
        sub->add_option("--cap", c.cap, "Resource cap for searches and enumeration")->check(CLI::PositiveNumber);
    };
    auto add_closure = [&](CLI::App* sub) {
        sub->add_option("--closure-atoms", c.closure_atoms, "Atoms per pps-formula")->check(CLI::PositiveNumber);
        sub->add_option("--closure-bound-vars", c.closure_bound_vars, "Bound variables per pps-formula")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--u-prime-weights", c.u_prime_weights, "Two distinct positive weights a,b");
    };

    std::vector<std::pair<CLI::App*, std::string (*)(const Config&)>> commands;
    auto add = [&](const char* name, const char* help, bool instance, bool closure, std::string (*fn)(const Config&)) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, instance);
        if (closure) add_closure(sub);
        commands.emplace_back(sub, fn);
        return sub;
    };
    add("classify", "Classify a language (JSON verdict)", false, true, cmd_classify);
    add("solve", "Partition function of an instance", true, false, cmd_solve);
    add("mincost", "Minimum cost of the scaled cost instance", true, false, cmd_mincost);
    auto* feas = add("feasible", "Crisp feasibility with optional pins", true, false, cmd_feasible);
    feas->add_option("--pin", c.pins, "Pin VAR=VALUE");
    add("multimorphism", "Search for an STP/MJN multimorphism", false, false, cmd_multimorphism);
    add("reduce-boolean", "Nested-set Boolean encoding of an instance", true, false, cmd_reduce_boolean);
    add("reduce-imp", "IMP and unary gadget form of an instance", true, false, cmd_reduce_imp);
    add("clone-scan", "Bounded binary clone scan for weak log-(super)modularity violations", false, true, cmd_clone_scan);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    try {
        for (auto& [sub, fn] : commands)
            if (sub->parsed()) emit(c, fn(c), out);
        return ok;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    } catch (const InconclusiveError& e) {
        err << "inconclusive: " << e.what() << "\n";
        return inconclusive;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return resource_limit;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return precondition;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
}

}  // namespace cwcsp::cli
