#include "depa/parse.hpp"

#include <cctype>
#include <sstream>

namespace depa {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

[[noreturn]] void fail(int lineno, const std::string& msg) {
    throw Error("ParseError", "line " + std::to_string(lineno) + ": " + msg);
}

int parse_int(const std::string& s, int lineno) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) fail(lineno, "bad integer '" + s + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(lineno, "bad integer '" + s + "'");
    }
}

/// `xweight=<k>/2` or an integral `xweight=<k>`; stored doubled.
int parse_xweight2(const std::string& v, int lineno) {
    if (auto slash = v.find("/2"); slash != std::string::npos && slash + 2 == v.size())
        return parse_int(v.substr(0, slash), lineno);
    return 2 * parse_int(v, lineno);
}

/// Bracket body `[a, b, ...]` -> item strings; tuples keep their parens.
std::vector<std::string> bracket_items(const std::string& body, int lineno) {
    std::string inner = trim(body);
    if (inner.size() < 2 || inner.front() != '[' || inner.back() != ']')
        fail(lineno, "expected [...] in '" + body + "'");
    inner = inner.substr(1, inner.size() - 2);
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : inner) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

Vec parse_vec(const std::string& body, int dim, long long field, int lineno) {
    auto items = bracket_items(body, lineno);
    if (static_cast<int>(items.size()) != dim) fail(lineno, "expected " + std::to_string(dim) + " entries");
    Vec v;
    for (const auto& it : items) v.push_back(parse_scalar(it, field));
    return v;
}

/// key=value tokens where values may contain brackets but not spaces.
std::map<std::string, std::string> keyvals(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        out[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return out;
}

StandardAlgebra parse_inline_algebra(const std::string& text, long long field, int lineno) {
    auto kv = keyvals(text);
    if (!kv.count("dim") || !kv.count("sc") || !kv.count("unit") || !kv.count("form"))
        fail(lineno, "inline algebra needs dim=, sc=, unit=, form=");
    int dim = parse_int(kv["dim"], lineno);
    Vec zero(dim, Scalar::zero(field));
    std::vector<std::vector<Vec>> sc(dim, std::vector<Vec>(dim, zero));
    for (const auto& entry : bracket_items(kv["sc"], lineno)) {
        std::string t = trim(entry);
        if (t.size() < 2 || t.front() != '(' || t.back() != ')')
            fail(lineno, "sc entry '" + entry + "'");
        auto parts = split(t.substr(1, t.size() - 2), ',');
        if (parts.size() != 4) fail(lineno, "sc entry needs (i,j,k,c)");
        int i = parse_int(parts[0], lineno), j = parse_int(parts[1], lineno),
            k = parse_int(parts[2], lineno);
        if (i < 0 || i >= dim || j < 0 || j >= dim || k < 0 || k >= dim)
            fail(lineno, "sc index out of range");
        sc[i][j][k] = parse_scalar(parts[3], field);
    }
    Vec unit = parse_vec(kv["unit"], dim, field, lineno);
    Vec form = parse_vec(kv["form"], dim, field, lineno);
    std::vector<int> xdeg2;
    if (kv.count("xdeg"))
        for (const auto& it : bracket_items(kv["xdeg"], lineno))
            xdeg2.push_back(2 * parse_int(it, lineno));
    auto A = make_algebra(dim, std::move(sc), std::move(unit), {}, std::move(xdeg2));
    return StandardAlgebra{A, FrobeniusForm{form}, {}};
}

/// `(1 3)(2 4)` or `1 3` -> permutation map (identity elsewhere).
std::map<int, int> parse_cycles(const std::string& text, int lineno) {
    std::map<int, int> perm;
    std::vector<std::vector<int>> cycles;
    std::string t = trim(text);
    if (t.empty()) return perm;
    if (t.front() != '(') t = "(" + t + ")";
    size_t pos = 0;
    while (pos < t.size()) {
        if (std::isspace(static_cast<unsigned char>(t[pos]))) {
            ++pos;
            continue;
        }
        if (t[pos] != '(') fail(lineno, "expected cycle '(...)'");
        auto close = t.find(')', pos);
        if (close == std::string::npos) fail(lineno, "unclosed cycle");
        std::istringstream in(t.substr(pos + 1, close - pos - 1));
        std::vector<int> cyc;
        int v;
        while (in >> v) cyc.push_back(v);
        if (!cyc.empty()) cycles.push_back(cyc);
        pos = close + 1;
    }
    for (const auto& cyc : cycles)
        for (size_t i = 0; i < cyc.size(); ++i) perm[cyc[i]] = cyc[(i + 1) % cyc.size()];
    return perm;
}

}  // namespace

StandardAlgebra parse_algebra_expr(const std::string& expr, long long field) {
    std::string e = trim(expr);
    if (e == "k" || e == "ground") return standard_algebra("ground", field);
    auto open = e.find('(');
    if (open != std::string::npos && e.back() == ')') {
        std::string kind = trim(e.substr(0, open));
        std::string arg = trim(e.substr(open + 1, e.size() - open - 2));
        int n = 0;
        try {
            n = std::stoi(arg);
        } catch (const std::exception&) {
            throw Error("UnknownAlgebra", "bad parameter in '" + expr + "'");
        }
        if (kind == "clifford") {
            Matrix I = Matrix::identity(n, field);
            return standard_algebra("clifford", field, n, &I);
        }
        for (const char* k : {"sum_of_ground", "truncated_poly", "z_algebra",
                              "matrix_algebra", "group_like", "exterior"})
            if (kind == k) return standard_algebra(kind, field, n);
    }
    throw Error("UnknownAlgebra", "'" + expr + "'");
}

DecoratedQuiver parse_quiver_spec(std::istream& in, long long field) {
    Quiver q;
    std::map<std::string, DecAlgebraPtr> named;
    std::map<int, DecAlgebraPtr> decorations;
    std::map<int, ArrowKind> kinds;
    std::map<int, int> xweights;
    std::vector<QuiverAutomorphism> folds;

    auto algebra_by = [&](const std::string& name, int lineno) -> DecAlgebraPtr {
        if (auto it = named.find(trim(name)); it != named.end()) return it->second;
        try {
            auto sa = parse_algebra_expr(name, field);
            auto ptr = std::make_shared<DecAlgebra>(DecAlgebra{sa.algebra, sa.form});
            named.emplace(trim(name), ptr);
            return ptr;
        } catch (const Error& e) {
            fail(lineno, e.what());
        }
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        if (line.rfind("algebra ", 0) == 0) {
            std::string rest = trim(line.substr(8));
            auto eq = rest.find('=');
            if (eq != std::string::npos && rest.find("dim=") > eq) {
                std::string name = trim(rest.substr(0, eq));
                named[name] = algebra_by(rest.substr(eq + 1), lineno);
            } else {
                std::istringstream hdr(rest);
                std::string name;
                hdr >> name;
                auto sa = parse_inline_algebra(rest.substr(name.size()), field, lineno);
                named[name] = std::make_shared<DecAlgebra>(DecAlgebra{sa.algebra, sa.form});
            }
        } else if (line.rfind("vertex ", 0) == 0) {
            auto colon = line.find(':');
            if (colon == std::string::npos) fail(lineno, "vertex needs ':'");
            int id = parse_int(trim(line.substr(7, colon - 7)), lineno);
            q.vertices.push_back(id);
            decorations[id] = algebra_by(line.substr(colon + 1), lineno);
        } else if (line.rfind("arrow ", 0) == 0) {
            auto colon = line.find(':');
            auto arr = line.find("->");
            if (colon == std::string::npos || arr == std::string::npos || arr < colon)
                fail(lineno, "arrow needs '<id> : <src> -> <tgt>'");
            int id = parse_int(trim(line.substr(6, colon - 6)), lineno);
            int src = parse_int(trim(line.substr(colon + 1, arr - colon - 1)), lineno);
            std::istringstream tail(line.substr(arr + 2));
            std::string tok;
            tail >> tok;
            int tgt = parse_int(tok, lineno);
            bool kind_seen = false;
            while (tail >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) fail(lineno, "bad arrow option '" + tok + "'");
                std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "kind") {
                    if (val == "tensor")
                        kinds[id] = ArrowKind::TensorUnit;
                    else if (val == "ident")
                        kinds[id] = ArrowKind::Identification;
                    else
                        fail(lineno, "kind must be tensor or ident");
                    kind_seen = true;
                } else if (key == "xweight") {
                    xweights[id] = parse_xweight2(val, lineno);
                } else {
                    fail(lineno, "unknown arrow option '" + key + "'");
                }
            }
            if (!kind_seen) fail(lineno, "arrow needs kind=");
            q.arrows.push_back({id, src, tgt});
        } else if (line.rfind("fold by", 0) == 0) {
            std::string body = trim(line.substr(7));
            if (body.size() < 2 || body.front() != '(' || body.back() != ')')
                fail(lineno, "fold needs '(vertex cycles; arrow cycles)'");
            auto parts = split(body.substr(1, body.size() - 2), ';');
            if (parts.size() != 2) fail(lineno, "fold needs a ';' separator");
            QuiverAutomorphism f;
            f.vmap = parse_cycles(parts[0], lineno);
            f.amap = parse_cycles(parts[1], lineno);
            folds.push_back(std::move(f));
        } else {
            fail(lineno, "unrecognized declaration");
        }
    }
    for (auto& f : folds) {
        for (const auto& [id, src, tgt] : q.arrows)
            f.amap.try_emplace(id, id);
        for (int v : q.vertices) f.vmap.try_emplace(v, v);
    }
    auto dq = build_decorated_quiver(std::move(q), std::move(decorations),
                                     std::move(kinds), std::move(xweights));
    if (!folds.empty()) dq = fold(dq, folds);
    return dq;
}

RewriteSystem parse_rule_system(std::istream& in, long long field, int degree_bound) {
    std::map<int, RwGen> gens;
    std::ostringstream rest;
    int next_id = 1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string bare = line;
        if (auto h = bare.find('#'); h != std::string::npos) bare.resize(h);
        bare = trim(bare);
        if (bare.rfind("gen ", 0) == 0) {
            auto colon = bare.find(':');
            auto arr = bare.find("->");
            if (colon == std::string::npos || arr == std::string::npos)
                fail(lineno, "gen needs '<name> : <src> -> <tgt>'");
            RwGen g;
            g.name = trim(bare.substr(4, colon - 4));
            g.src = parse_int(trim(bare.substr(colon + 1, arr - colon - 1)), lineno);
            std::istringstream tail(bare.substr(arr + 2));
            std::string tok;
            tail >> tok;
            g.tgt = parse_int(tok, lineno);
            while (tail >> tok) {
                if (tok.rfind("xweight=", 0) == 0)
                    g.xdeg2 = parse_xweight2(tok.substr(8), lineno);
                else
                    fail(lineno, "unknown gen option '" + tok + "'");
            }
            gens.emplace(next_id++, std::move(g));
        } else if (bare.rfind("xgen ", 0) == 0) {
            auto colon = bare.find(':');
            if (colon == std::string::npos) fail(lineno, "xgen needs '<name> : <vertex>'");
            RwGen g;
            g.name = trim(bare.substr(5, colon - 5));
            g.src = g.tgt = parse_int(trim(bare.substr(colon + 1)), lineno);
            g.xdeg2 = 2;
            g.is_x = true;
            gens.emplace(2000000 + g.src, std::move(g));
        } else if (bare.rfind("bound ", 0) == 0) {
            degree_bound = parse_int(trim(bare.substr(6)), lineno);
        } else {
            rest << line << "\n";
        }
    }
    if (gens.empty()) throw Error("ParseError", "rule file declares no generators");
    if (degree_bound <= 0) degree_bound = 24;
    RewriteSystem rs(std::move(gens), field, degree_bound);
    std::istringstream tail(rest.str());
    apply_rule_file(rs, tail);
    return rs;
}

}  // namespace depa
