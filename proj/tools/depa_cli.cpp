#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "depa/degeneration.hpp"
#include "depa/parse.hpp"
#include "depa/preprojective.hpp"
#include "depa/repvariety.hpp"
#include "depa/rewrite.hpp"

using json = nlohmann::ordered_json;
using namespace depa;

namespace {

struct RunConfig {
    std::string field_name = "rationals";
    long long field = 0;
    int cutoff = -1;
    std::string signs = "plus";
    unsigned seed = 0;
    std::string json_path;
    bool s_at_1 = false;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--field", cfg.field_name, "rationals or gf:<p>");
    cmd->add_option("--cutoff", cfg.cutoff, "path-degree cutoff");
    cmd->add_option("--signs", cfg.signs)->check(CLI::IsMember({"signed", "plus"}));
    cmd->add_option("--seed", cfg.seed, "seed for randomized checks");
    cmd->add_option("--json", cfg.json_path, "write the JSON report to this path");
}

long long resolve_field(const std::string& name) {
    if (name == "rationals" || name.empty()) return 0;
    if (name.rfind("gf:", 0) == 0) {
        long long p = std::stoll(name.substr(3));
        if (p < 2) throw Error("BadField", name);
        for (long long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw Error("BadField", name + " is not prime");
        return p;
    }
    throw Error("BadField", name);
}

SignConvention resolve_signs(const std::string& s) {
    return s == "signed" ? SignConvention::Signed : SignConvention::AllPlus;
}

DecoratedQuiver load_quiver(const std::string& path, long long field) {
    std::ifstream in(path);
    if (!in) throw Error("InputError", "cannot open " + path);
    return parse_quiver_spec(in, field);
}

void emit(const json& j, const std::string& path) {
    std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(path);
        out << text;
    }
}

std::string s_str(int s2) {
    if (s2 == 0) return "";
    if (s2 == 2) return "s";
    if (s2 % 2 == 0) return "s^" + std::to_string(s2 / 2);
    return "s^{" + std::to_string(s2) + "/2}";
}

std::string term_str(long long dim, int t, int s2) {
    std::string vars;
    if (t == 1) vars = "t";
    else if (t > 1) vars = "t^" + std::to_string(t);
    std::string s = s_str(s2);
    if (!s.empty()) vars += (vars.empty() ? s : " " + s);
    if (vars.empty()) return std::to_string(dim);
    if (dim == 1) return vars;
    return std::to_string(dim) + vars;
}

std::string poly_str(const std::map<std::pair<int, int>, long long>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [key, dim] : terms) {
        if (!out.empty()) out += " + ";
        out += term_str(dim, key.first, key.second);
    }
    return out;
}

json series_json(const HilbertSeries& h) {
    std::set<std::pair<int, int>> blocks;
    for (const auto& level : h.coeffs)
        for (const auto& [b, m] : level) blocks.insert(b);
    json jblocks = json::array();
    json order = json::array();
    for (auto [i, j] : blocks) {
        order.push_back({i, j});
        json terms = json::array();
        for (int n = 0; n < static_cast<int>(h.coeffs.size()); ++n)
            for (const auto& [s2, dim] : h.bidims(n, i, j))
                if (dim) terms.push_back({{"t", n}, {"s_half", s2}, {"dim", dim}});
        jblocks.push_back(terms);
    }
    json out;
    out["blocks"] = jblocks;
    out["block_order"] = order;
    out["stabilized"] = h.stabilized;
    out["total"] = h.stabilized ? json(h.total()) : json(nullptr);
    return out;
}

void print_series_table(const HilbertSeries& h, bool s_at_1) {
    if (s_at_1) {
        // total over blocks, s evaluated at 1: terms keyed by t only
        std::map<std::pair<int, int>, long long> total;
        for (int n = 0; n < static_cast<int>(h.coeffs.size()); ++n)
            if (h.dim(n)) total[{n, 0}] += h.dim(n);
        std::cout << poly_str(total) << "\n";
        return;
    }
    std::set<std::pair<int, int>> blocks;
    for (const auto& level : h.coeffs)
        for (const auto& [b, m] : level) blocks.insert(b);
    std::cout << "h(t, s):\n";
    for (auto [i, j] : blocks) {
        std::map<std::pair<int, int>, long long> terms;
        for (int n = 0; n < static_cast<int>(h.coeffs.size()); ++n)
            for (const auto& [s2, dim] : h.bidims(n, i, j))
                if (dim) terms[{n, s2}] += dim;
        std::cout << "  (" << i << "," << j << "): " << poly_str(terms) << "\n";
    }
    if (h.stabilized)
        std::cout << "total dimension: " << h.total() << "\n";
    else
        std::cout << "series truncated at degree " << h.coeffs.size() - 1 << "\n";
}

int cmd_hilbert(const std::string& spec, const RunConfig& cfg) {
    auto dq = load_quiver(spec, cfg.field);
    PiContext pi(dq, resolve_signs(cfg.signs), cfg.cutoff);
    auto h = pi.hilbert();
    print_series_table(h, cfg.s_at_1);
    if (!cfg.json_path.empty()) emit(series_json(h), cfg.json_path);
    return 0;
}

int cmd_flatness(const std::string& left, const std::string& right, const RunConfig& cfg) {
    auto dl = load_quiver(left, cfg.field);
    auto dr = load_quiver(right, cfg.field);
    FlatnessReport rep;
    json out;
    try {
        rep = flatness_check(dl, dr, cfg.cutoff);
    } catch (const Error& e) {
        if (e.kind != "NotComparable") throw;
        std::cerr << e.what() << "\n";
        return 2;
    }
    out["quiver"] = {{"vertices", dl.quiver.vertices.size()},
                     {"arrows", dl.quiver.arrows.size()},
                     {"blockwise", rep.blockwise}};
    out["left"] = left;
    out["right"] = right;
    out["cutoff"] = rep.cutoff;
    out["flat"] = rep.flat;
    if (rep.first_difference) {
        const auto& d = *rep.first_difference;
        out["first_difference"] = {{"t", d.t},      {"s_half", d.s_half},
                                   {"i", d.i},      {"j", d.j},
                                   {"left_dim", d.left_dim}, {"right_dim", d.right_dim}};
    }
    emit(out, cfg.json_path);
    std::cout << (rep.flat ? "flat\n" : "not flat\n");
    return rep.flat ? 0 : 1;
}

int cmd_confluence(const std::string& rulefile, const RunConfig& cfg) {
    std::ifstream in(rulefile);
    if (!in) throw Error("InputError", "cannot open " + rulefile);
    auto rs = parse_rule_system(in, cfg.field, cfg.cutoff);
    bool confluent = true;
    json out;
    try {
        rs = rs.completed();
    } catch (const Error& e) {
        if (e.kind != "NonTerminatingWithinBound") throw;
        confluent = false;
    }
    out["confluent"] = confluent;
    json rules = json::array();
    for (const auto& r : rs.rules())
        if (!r.builtin) rules.push_back(rs.rule_str(r));
    out["rules"] = rules;
    json by_degree = json::array();
    long long total = 0;
    if (confluent) {
        for (int n = 0; n <= rs.degree_bound(); ++n) {
            long long level = 0;
            for (const auto& [b, m] : rs.irreducible_count(n))
                for (const auto& [x, c] : m) level += c;
            by_degree.push_back(level);
            total += level;
        }
        out["by_degree"] = by_degree;
        out["irreducible_total"] = total;
        std::cout << "confluent, " << rs.rules().size() << " rules, " << total
                  << " irreducible words\n";
    } else {
        std::cout << "not confluent within bound\n";
    }
    if (!cfg.json_path.empty()) emit(out, cfg.json_path);
    return confluent ? 0 : 1;
}

int cmd_moment_check(const std::string& spec, const std::string& dims, int seeds,
                     const RunConfig& cfg) {
    auto dq = load_quiver(spec, cfg.field);
    auto dd = double_quiver(dq);
    std::map<int, int> d;
    {
        std::istringstream in(dims);
        std::string tok;
        size_t i = 0;
        while (std::getline(in, tok, ',')) {
            if (i >= dq.quiver.vertices.size())
                throw Error("InputError", "more dimensions than vertices");
            d[dq.quiver.vertices[i++]] = std::stoi(tok);
        }
        if (i != dq.quiver.vertices.size())
            throw Error("InputError", "need one dimension per vertex");
    }
    TensorContext ctx(dd);
    WordCombo r = relation_element(ctx, SignConvention::Signed);
    bool all_equal = true;
    int first_mismatch = -1;
    for (int s = 0; s < seeds; ++s) {
        auto rep = random_representation(dd, d, cfg.seed + static_cast<unsigned>(s));
        if (!(evaluate_relation(dd, rep, ctx, r) == moment_map_via_pairing(dd, rep))) {
            all_equal = false;
            first_mismatch = s;
            break;
        }
    }
    json out;
    out["case"] = spec;
    out["seeds"] = seeds;
    out["all_equal"] = all_equal;
    if (!all_equal) out["first_mismatch"] = {{"seed", first_mismatch}};
    emit(out, cfg.json_path);
    return all_equal ? 0 : 1;
}

long long pi_total(const DecoratedQuiver& dq) {
    PiContext pi(dq);
    return total_dimension(pi);
}

int run_suite(const std::string& name, const RunConfig& cfg) {
    long long f = cfg.field;
    int failures = 0;
    auto item = [&](const std::string& label, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << label << "\n";
        if (!ok) ++failures;
    };
    if (name == "dynkin") {
        item("G_2 total 28", pi_total(g2_quiver(f)) == 28);
        item("F_4 total 156", pi_total(f4_quiver(f)) == 156);
        for (int n = 2; n <= 5; ++n) {
            long long expect = static_cast<long long>(n) * (2 * n - 1) * (2 * n + 1) / 3;
            long long bn = pi_total(b_family(n, f));
            item("B_" + std::to_string(n) + " total " + std::to_string(expect),
                 bn == expect && bn == pi_total(path_quiver_constant_k(2 * n - 1, f)));
        }
        for (int n = 4; n <= 6; ++n) {
            long long expect = static_cast<long long>(n) * (n + 1) * (2 * n + 1) / 3;
            item("C_" + std::to_string(n) + " total " + std::to_string(expect),
                 pi_total(c_family(n, f)) == expect);
        }
    } else if (name == "star") {
        auto ground = standard_algebra("ground", f);
        for (int n = 2; n <= 8; ++n) {
            auto z = standard_algebra("z_algebra", f, n);
            auto rep = flatness_check(star_quiver_constant_k(n, f), a2_decorated(ground, z), 5);
            item("star " + std::to_string(n) + " leaves vs Z_" + std::to_string(n), rep.flat);
        }
    } else if (name == "matrix") {
        auto ground = standard_algebra("ground", f);
        for (int n = 2; n <= 3; ++n) {
            auto m = standard_algebra("matrix_algebra", f, n);
            auto z = standard_algebra("z_algebra", f, n * n);
            auto rep = flatness_check(a2_decorated(ground, m), a2_decorated(ground, z), 5);
            item("Mat_" + std::to_string(n) + " vs Z_" + std::to_string(n * n), rep.flat);
        }
    } else if (name == "moment") {
        auto check = [&](const std::string& label, const DecoratedQuiver& dq) {
            auto dd = double_quiver(dq);
            TensorContext ctx(dd);
            WordCombo r = relation_element(ctx, SignConvention::Signed);
            bool ok = true;
            for (int d1 = 1; d1 <= 2 && ok; ++d1)
                for (int d2 = 1; d2 <= 2 && ok; ++d2)
                    for (int s = 0; s < 20 && ok; ++s) {
                        std::map<int, int> d{{1, d1}, {2, d2}};
                        auto rep = random_representation(dd, d, cfg.seed + static_cast<unsigned>(s));
                        ok = evaluate_relation(dd, rep, ctx, r) == moment_map_via_pairing(dd, rep);
                    }
            item(label, ok);
        };
        auto ground = standard_algebra("ground", f);
        auto S = standard_algebra("truncated_poly", f, 2);
        check("constant-k A_2", path_quiver_constant_k(2, f));
        {
            Quiver q;
            q.vertices = {1, 2};
            q.arrows = {{1, 1, 2}};
            auto dec = std::make_shared<DecAlgebra>(DecAlgebra{S.algebra, S.form});
            check("identification on S",
                  build_decorated_quiver(q, {{1, dec}, {2, dec}},
                                         {{1, ArrowKind::Identification}}));
        }
        check("tensor S to k", a2_decorated(S, ground));
        check("tensor S' to k", a2_decorated(standard_algebra("truncated_poly", f, 3), ground));
        check("tensor Z_4 to k", a2_decorated(standard_algebra("z_algebra", f, 4), ground));
    } else if (name == "forms") {
        auto series_of = [&](const DecoratedQuiver& dq, SignConvention sc) {
            PiContext pi(dq, sc);
            return pi.hilbert().coeffs;
        };
        {
            auto dq = b_family(2, f);
            auto dq2 = dq;
            const auto& dec = dq.at(2);
            Vec u = dec.alg.unit;
            u[1] += Scalar::one(f);  // 1 + x is a unit of S
            dq2.vertex_algebra[2] = std::make_shared<DecAlgebra>(
                DecAlgebra{dec.alg, change_form(dec.alg, dec.form, u)});
            item("B_2 series unchanged under a unit form change",
                 series_of(dq, SignConvention::AllPlus) == series_of(dq2, SignConvention::AllPlus));
        }
        item("B_2 series independent of the sign convention",
             series_of(b_family(2, f), SignConvention::Signed) ==
                 series_of(b_family(2, f), SignConvention::AllPlus));
        item("A_3 series independent of the sign convention",
             series_of(path_quiver_constant_k(3, f), SignConvention::Signed) ==
                 series_of(path_quiver_constant_k(3, f), SignConvention::AllPlus));
    } else {
        std::cerr << "unknown suite '" << name << "'\n";
        return 2;
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decorated preprojective algebra workbench"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string spec, left, right, rulefile, dims = "1,1", suite;
    int seeds = 20;

    auto* hilbert = app.add_subcommand("hilbert", "bigraded Hilbert series of a quotient");
    hilbert->add_option("spec", spec, "quiver spec file")->required();
    hilbert->add_flag("--s-at-1", cfg.s_at_1, "total series with s evaluated at 1");
    add_common(hilbert, cfg);

    auto* flat = app.add_subcommand("flatness", "compare series across a degeneration");
    flat->add_option("left", left, "deformed-side spec")->required();
    flat->add_option("right", right, "degenerate-side spec")->required();
    add_common(flat, cfg);

    auto* conf = app.add_subcommand("confluence", "complete a rewrite system");
    conf->add_option("rules", rulefile, "rule file")->required();
    add_common(conf, cfg);

    auto* moment = app.add_subcommand("moment-check", "moment map against relation evaluation");
    moment->add_option("spec", spec, "quiver spec file")->required();
    moment->add_option("--d", dims, "dimension vector, comma separated");
    moment->add_option("--seeds", seeds, "number of seeded representations");
    add_common(moment, cfg);

    auto* repro = app.add_subcommand("reproduce", "run a named verification suite");
    repro->add_option("suite", suite, "dynkin | star | matrix | moment | forms")->required();
    add_common(repro, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.field = resolve_field(cfg.field_name);
        if (hilbert->parsed()) return cmd_hilbert(spec, cfg);
        if (flat->parsed()) return cmd_flatness(left, right, cfg);
        if (conf->parsed()) return cmd_confluence(rulefile, cfg);
        if (moment->parsed()) return cmd_moment_check(spec, dims, seeds, cfg);
        if (repro->parsed()) return run_suite(suite, cfg);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        std::string k = e.kind;
        if (k == "ParseError" || k == "InputError" || k == "BadField" ||
            k == "UnknownAlgebra" || k == "NotComparable" || k == "UnknownGenerator" ||
            k == "BadWord")
            return 2;
        return 1;
    }
    return 2;
}
