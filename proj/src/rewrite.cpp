#include "depa/rewrite.hpp"

#include <algorithm>
#include <sstream>

namespace depa {

namespace {

bool subrange_at(const std::vector<int>& hay, int pos, const std::vector<int>& needle) {
    if (pos + needle.size() > hay.size()) return false;
    return std::equal(needle.begin(), needle.end(), hay.begin() + pos);
}

}  // namespace

RewriteSystem::RewriteSystem(std::map<int, RwGen> gens, long long field,
                             int degree_bound)
    : gens_(std::move(gens)), field_(field), bound_(degree_bound) {
    if (bound_ <= 0) throw Error("BadDegreeBound", "degree bound must be positive");
    // default ranking per vertex: x first, then arrows by ascending target
    std::map<int, std::vector<int>> by_vertex;
    for (auto& [id, g] : gens_) by_vertex[g.src].push_back(id);
    for (auto& [v, ids] : by_vertex) {
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            const RwGen& ga = gens_.at(a), &gb = gens_.at(b);
            if (ga.is_x != gb.is_x) return ga.is_x;
            if (ga.tgt != gb.tgt) return ga.tgt < gb.tgt;
            return a < b;
        });
        set_order(v, ids);
    }
}

void RewriteSystem::set_order(int vertex, std::vector<int> ranked) {
    rankpos_[vertex].clear();
    for (size_t i = 0; i < ranked.size(); ++i) {
        const RwGen& g = gens_.at(ranked[i]);
        if (g.src != vertex)
            throw Error("BadOrder", g.name + " does not start at vertex " +
                                        std::to_string(vertex));
        rankpos_[vertex][ranked[i]] = static_cast<int>(i);
    }
    rank_[vertex] = std::move(ranked);
}

int RewriteSystem::plen(const RwWord& w) const {
    int n = 0;
    for (int g : w.gens) n += gens_.at(g).is_x ? 0 : 1;
    return n;
}

int RewriteSystem::xdeg2(const RwWord& w) const {
    int n = 0;
    for (int g : w.gens) n += gens_.at(g).xdeg2;
    return n;
}

int RewriteSystem::tgt(const RwWord& w) const {
    return w.gens.empty() ? w.src : gens_.at(w.gens.back()).tgt;
}

bool RewriteSystem::less(const RwWord& a, const RwWord& b) const {
    int la = plen(a), lb = plen(b);
    if (la != lb) return la < lb;
    int xa = xdeg2(a), xb = xdeg2(b);
    if (xa != xb) return xa < xb;
    if (a.src != b.src) return a.src < b.src;
    size_t n = std::min(a.gens.size(), b.gens.size());
    for (size_t i = 0; i < n; ++i) {
        if (a.gens[i] == b.gens[i]) continue;
        int v = gens_.at(a.gens[i]).src;
        const auto& pos = rankpos_.at(v);
        // higher rank (smaller position) means the bigger monomial
        return pos.at(a.gens[i]) > pos.at(b.gens[i]);
    }
    return a.gens.size() < b.gens.size();
}

RewriteSystem::Match RewriteSystem::first_match(const RwWord& w) const {
    for (int pos = 0; pos <= static_cast<int>(w.gens.size()); ++pos)
        for (int r = 0; r < static_cast<int>(rules_.size()); ++r)
            if (!rules_[r].lhs.gens.empty() &&
                subrange_at(w.gens, pos, rules_[r].lhs.gens))
                return {r, pos};
    return {};
}

std::vector<RewriteSystem::Match> RewriteSystem::all_matches(const RwWord& w) const {
    std::vector<Match> out;
    for (int pos = 0; pos <= static_cast<int>(w.gens.size()); ++pos)
        for (int r = 0; r < static_cast<int>(rules_.size()); ++r)
            if (!rules_[r].lhs.gens.empty() &&
                subrange_at(w.gens, pos, rules_[r].lhs.gens))
                out.push_back({r, pos});
    return out;
}

RwElem RewriteSystem::apply_at(const RwWord& w, int rule, int pos) const {
    const RwRule& r = rules_[rule];
    RwElem out;
    for (const auto& [m, c] : r.rhs) {
        RwWord nw{w.src, {}};
        nw.gens.reserve(w.gens.size() - r.lhs.gens.size() + m.gens.size());
        nw.gens.insert(nw.gens.end(), w.gens.begin(), w.gens.begin() + pos);
        nw.gens.insert(nw.gens.end(), m.gens.begin(), m.gens.end());
        nw.gens.insert(nw.gens.end(), w.gens.begin() + pos + r.lhs.gens.size(),
                       w.gens.end());
        auto [it, fresh] = out.try_emplace(nw, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

void RewriteSystem::reduce_elem(RwElem& acc, std::mt19937* rng) const {
    std::vector<std::pair<RwWord, Scalar>> stack(acc.begin(), acc.end());
    acc.clear();
    long long steps = 0;
    while (!stack.empty()) {
        auto [w, c] = std::move(stack.back());
        stack.pop_back();
        if (c.is_zero()) continue;
        if (plen(w) > bound_)
            throw Error("DegreeBoundExceeded",
                        "word of length " + std::to_string(plen(w)) +
                            " exceeds bound " + std::to_string(bound_));
        if (++steps > 5000000)
            throw Error("ReductionRunaway", "reduction did not terminate");
        Match m;
        if (rng) {
            auto ms = all_matches(w);
            if (!ms.empty())
                m = ms[std::uniform_int_distribution<size_t>(0, ms.size() - 1)(*rng)];
        } else {
            m = first_match(w);
        }
        if (m.rule < 0) {
            auto [it, fresh] = acc.try_emplace(w, c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) acc.erase(it);
            }
            continue;
        }
        for (auto& [nw, nc] : apply_at(w, m.rule, m.pos))
            stack.emplace_back(nw, c * nc);
    }
}

RwElem RewriteSystem::normal_form(const RwElem& e) const {
    RwElem acc = e;
    reduce_elem(acc, nullptr);
    return acc;
}

RwElem RewriteSystem::normal_form(const RwWord& w) const {
    RwElem e{{w, Scalar::one(field_)}};
    reduce_elem(e, nullptr);
    return e;
}

RwElem RewriteSystem::normal_form_shuffled(const RwElem& e, std::mt19937& rng) const {
    RwElem acc = e;
    reduce_elem(acc, &rng);
    return acc;
}

bool RewriteSystem::add_rule(const RwElem& relation, const std::string& origin) {
    RwElem e = normal_form(relation);
    if (e.empty()) return false;
    auto lead = e.begin();
    for (auto it = std::next(e.begin()); it != e.end(); ++it)
        if (less(lead->first, it->first)) lead = it;
    RwRule r;
    r.lhs = lead->first;
    r.builtin = origin == "x-move";
    r.origin = origin;
    Scalar cinv = lead->second.inv();
    for (auto& [m, c] : e) {
        if (m == r.lhs) continue;
        if (!less(m, r.lhs))
            throw Error("BadOrder", "order not total on relation monomials");
        r.rhs[m] = -(c * cinv);
    }
    rules_.push_back(std::move(r));
    // restore inter-reduction: pull out rules whose lhs became reducible
    std::vector<std::pair<RwElem, std::string>> readd;
    for (size_t k = 0; k + 1 < rules_.size();) {
        const RwWord& lk = rules_[k].lhs;
        bool hit = false;
        for (size_t j = 0; j < rules_.size() && !hit; ++j) {
            if (j == k || rules_[j].lhs.gens.size() >= lk.gens.size()) continue;
            for (int p = 0;
                 p + rules_[j].lhs.gens.size() <= lk.gens.size() && !hit; ++p)
                hit = subrange_at(lk.gens, p, rules_[j].lhs.gens);
        }
        if (hit) {
            RwElem rel = rules_[k].rhs;
            for (auto& [m, c] : rel) rel[m] = -c;
            rel[lk] = Scalar::one(field_);
            readd.emplace_back(std::move(rel), rules_[k].origin);
            rules_.erase(rules_.begin() + k);
        } else {
            ++k;
        }
    }
    for (auto& [rel, org] : readd) add_rule(rel, org);
    return true;
}

std::vector<Ambiguity> RewriteSystem::find_ambiguities() const {
    std::vector<Ambiguity> out;
    int nr = static_cast<int>(rules_.size());
    for (int i = 0; i < nr; ++i) {
        const auto& li = rules_[i].lhs.gens;
        for (int j = 0; j < nr; ++j) {
            const auto& lj = rules_[j].lhs.gens;
            // overlap: proper suffix of lhs_i equals proper prefix of lhs_j
            int maxov = static_cast<int>(std::min(li.size(), lj.size())) - 1;
            for (int ov = 1; ov <= maxov; ++ov) {
                if (!std::equal(lj.begin(), lj.begin() + ov, li.end() - ov))
                    continue;
                Ambiguity a;
                a.r1 = i;
                a.r2 = j;
                a.pos = static_cast<int>(li.size()) - ov;
                a.word.src = rules_[i].lhs.src;
                a.word.gens = li;
                a.word.gens.insert(a.word.gens.end(), lj.begin() + ov, lj.end());
                if (plen(a.word) <= bound_) out.push_back(std::move(a));
            }
            // inclusion: lhs_j strictly inside lhs_i
            if (i == j || lj.size() >= li.size()) continue;
            for (int p = 0; p + lj.size() <= li.size(); ++p) {
                if (!subrange_at(li, p, lj)) continue;
                Ambiguity a;
                a.r1 = i;
                a.r2 = j;
                a.pos = p;
                a.word = rules_[i].lhs;
                a.inclusion = true;
                out.push_back(std::move(a));
            }
        }
    }
    return out;
}

RwElem RewriteSystem::resolve(const Ambiguity& amb) const {
    RwElem b1 = normal_form(apply_at(amb.word, amb.r1, 0));
    RwElem b2 = normal_form(apply_at(amb.word, amb.r2, amb.pos));
    for (auto& [m, c] : b2) {
        auto [it, fresh] = b1.try_emplace(m, -c);
        if (!fresh) {
            it->second -= c;
            if (it->second.is_zero()) b1.erase(it);
        }
    }
    return b1;
}

RewriteSystem RewriteSystem::completed() const {
    RewriteSystem rs = *this;
    for (int guard = 0; guard < 500; ++guard) {
        bool added = false;
        for (const auto& amb : rs.find_ambiguities()) {
            RwElem w = rs.resolve(amb);
            if (!w.empty()) {
                rs.add_rule(w, "completion");
                added = true;
                break;
            }
        }
        if (!added) return rs;
    }
    int pending = 0;
    for (const auto& amb : find_ambiguities())
        if (!resolve(amb).empty()) ++pending;
    throw Error("NonTerminatingWithinBound",
                std::to_string(pending) + " ambiguities pending at bound " +
                    std::to_string(bound_));
}

bool RewriteSystem::is_confluent() const {
    for (const auto& amb : find_ambiguities())
        if (!resolve(amb).empty()) return false;
    return true;
}

std::map<std::pair<int, int>, std::map<int, int>> RewriteSystem::irreducible_count(
    int degree) const {
    std::map<std::pair<int, int>, std::map<int, int>> counts;
    std::map<int, std::vector<int>> outgoing;
    for (auto& [id, g] : gens_) outgoing[g.src].push_back(id);
    std::vector<int> word;
    std::vector<int> vertices;
    for (auto& [v, r] : rank_) vertices.push_back(v);
    for (auto& [id, g] : gens_) {
        if (std::find(vertices.begin(), vertices.end(), g.src) == vertices.end())
            vertices.push_back(g.src);
        if (std::find(vertices.begin(), vertices.end(), g.tgt) == vertices.end())
            vertices.push_back(g.tgt);
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

    auto reducible_tail = [&](const std::vector<int>& w) {
        for (const auto& r : rules_) {
            size_t L = r.lhs.gens.size();
            if (L == 0 || L > w.size()) continue;
            if (std::equal(r.lhs.gens.begin(), r.lhs.gens.end(), w.end() - L))
                return true;
        }
        return false;
    };

    int cap = degree + 64;
    auto dfs = [&](auto&& self, int src, int cur, int arrows, int xd) -> void {
        if (static_cast<int>(word.size()) > cap)
            throw Error("ReductionRunaway", "unbounded x chain in enumeration");
        if (arrows == degree) counts[{src, cur}][xd] += 1;
        auto it = outgoing.find(cur);
        if (it == outgoing.end()) return;
        for (int id : it->second) {
            const RwGen& g = gens_.at(id);
            if (!g.is_x && arrows == degree) continue;
            word.push_back(id);
            if (!reducible_tail(word))
                self(self, src, g.tgt, arrows + (g.is_x ? 0 : 1), xd + g.xdeg2);
            word.pop_back();
        }
    };
    for (int v : vertices) dfs(dfs, v, v, 0, 0);
    return counts;
}

long long RewriteSystem::irreducible_total(int max_degree) const {
    long long total = 0;
    for (int d = 0; d <= max_degree; ++d)
        for (auto& [blk, by_x] : irreducible_count(d))
            for (auto& [x, c] : by_x) total += c;
    return total;
}

std::string RewriteSystem::word_str(const RwWord& w) const {
    if (w.gens.empty()) return "e" + std::to_string(w.src);
    std::string out;
    for (size_t i = 0; i < w.gens.size(); ++i) {
        if (i) out += '.';
        out += gens_.at(w.gens[i]).name;
    }
    return out;
}

std::string RewriteSystem::rule_str(const RwRule& r) const {
    std::string out = word_str(r.lhs) + " -> ";
    if (r.rhs.empty()) return out + "0";
    bool first = true;
    for (auto& [m, c] : r.rhs) {
        if (!first) out += " + ";
        first = false;
        if (!c.is_one()) out += c.str() + "*";
        out += word_str(m);
    }
    return out;
}

namespace {

// recognizes k[x]/(x^m) on the monomial basis 1, x, ..., x^{m-1} with the
// top-coefficient form, the only shape the token engine models
bool monomial_truncated(const FiniteDimAlgebra& A, const FrobeniusForm& f) {
    int m = A.dim;
    for (int i = 0; i < m; ++i) {
        if (!A.unit[i].is_zero() == (i != 0)) return false;
        if (!f.lambda[i].is_zero() == (i != m - 1)) return false;
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const Scalar& c = A.sc[i][j][k];
                bool expect = i + j == k;
                if (expect != !c.is_zero()) return false;
                if (expect && !c.is_one()) return false;
            }
    }
    return true;
}

int x_gen_id(int vertex) { return 2000000 + vertex; }

}  // namespace

RewriteSystem rewrite_system_for(const DecoratedQuiver& dq, SignConvention sc,
                                 int degree_bound) {
    DecoratedQuiver dd = dq.doubled ? dq : double_quiver(dq);
    int dimsum = 0;
    for (int v : dd.quiver.vertices) {
        const DecAlgebra& da = dd.at(v);
        if (!monomial_truncated(da.alg, da.form))
            throw Error("UnsupportedVertexAlgebra",
                        "vertex " + std::to_string(v) +
                            " is not k[x]/(x^m) with the top-coefficient form");
        dimsum += da.alg.dim;
    }
    if (degree_bound <= 0) degree_bound = 2 * dimsum;

    std::map<int, RwGen> gens;
    for (const auto& a : dd.quiver.arrows) {
        RwGen g;
        g.src = a.src;
        g.tgt = a.tgt;
        g.xdeg2 = dd.arrow_xweight2.at(a.id);
        g.name = a.id >= dual_arrow_offset
                     ? "a" + std::to_string(a.id - dual_arrow_offset) + "*"
                     : "a" + std::to_string(a.id);
        gens[a.id] = g;
    }
    for (int v : dd.quiver.vertices)
        if (dd.at(v).alg.dim >= 2) {
            RwGen g;
            g.src = g.tgt = v;
            g.xdeg2 = 2;
            g.is_x = true;
            g.name = "x" + std::to_string(v);
            gens[x_gen_id(v)] = g;
        }

    RewriteSystem rs(std::move(gens), dd.field, degree_bound);
    Scalar one = Scalar::one(dd.field);

    for (int v : dd.quiver.vertices) {
        int m = dd.at(v).alg.dim;
        if (m < 2) continue;
        RwWord w{v, std::vector<int>(m, x_gen_id(v))};
        rs.add_rule({{w, one}}, "nilpotent");
    }
    for (const auto& a : dd.quiver.arrows) {
        if (dd.arrow_kind.at(a.id) != ArrowKind::Identification) continue;
        if (dd.at(a.src).alg.dim < 2) continue;
        RwElem move{{RwWord{a.src, {x_gen_id(a.src), a.id}}, one},
                    {RwWord{a.src, {a.id, x_gen_id(a.tgt)}}, -one}};
        rs.add_rule(move, "x-move");
    }

    std::map<int, RwElem> rel;
    for (const auto& a : dd.quiver.arrows) {
        if (!dd.is_positive(a.id)) continue;
        int dual = a.id + dual_arrow_offset;
        int i = a.src, j = a.tgt;
        Scalar at_tgt = sc == SignConvention::Signed ? -one : one;
        if (dd.arrow_kind.at(a.id) == ArrowKind::Identification) {
            combo_add_rw(rel[i], RwWord{i, {a.id, dual}}, one);
            combo_add_rw(rel[j], RwWord{j, {dual, a.id}}, at_tgt);
        } else {
            int mi = dd.at(i).alg.dim, mj = dd.at(j).alg.dim;
            for (int p = 0; p < mi; ++p) {
                RwWord w{i, {}};
                w.gens.insert(w.gens.end(), p, x_gen_id(i));
                w.gens.push_back(a.id);
                w.gens.push_back(dual);
                w.gens.insert(w.gens.end(), mi - 1 - p, x_gen_id(i));
                combo_add_rw(rel[i], w, one);
            }
            for (int p = 0; p < mj; ++p) {
                RwWord w{j, {}};
                w.gens.insert(w.gens.end(), p, x_gen_id(j));
                w.gens.push_back(dual);
                w.gens.push_back(a.id);
                w.gens.insert(w.gens.end(), mj - 1 - p, x_gen_id(j));
                combo_add_rw(rel[j], w, at_tgt);
            }
        }
    }
    for (auto& [v, e] : rel) rs.add_rule(e, "input");
    return rs;
}

void combo_add_rw(RwElem& acc, const RwWord& w, const Scalar& c) {
    auto [it, fresh] = acc.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

WordCombo rw_to_path(const RewriteSystem& rs, TensorContext& ctx, const RwWord& w) {
    long long field = rs.field();
    WordCombo acc{{PathWord{w.src, {}, {0}}, Scalar::one(field)}};
    for (int id : w.gens) {
        const RwGen& g = rs.gens().at(id);
        PathWord step;
        if (g.is_x) {
            step = PathWord{g.src, {}, {1}};
        } else {
            step.source = g.src;
            step.arrows = {id};
            step.slots = {0};
            if (ctx.dq().arrow_kind.at(id) == ArrowKind::TensorUnit)
                step.slots.push_back(0);
        }
        acc = ctx.mul(acc, WordCombo{{step, Scalar::one(field)}});
    }
    return acc;
}

WordCombo rw_to_path(const RewriteSystem& rs, TensorContext& ctx, const RwElem& e) {
    WordCombo out;
    for (auto& [w, c] : e) combo_add(out, rw_to_path(rs, ctx, w), c);
    return out;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(trim(part));
    return out;
}

}  // namespace

void apply_rule_file(RewriteSystem& rs, std::istream& in) {
    std::map<std::string, int> by_name;
    for (auto& [id, g] : rs.gens()) by_name[g.name] = id;

    auto parse_word = [&](const std::string& text) {
        RwWord w;
        bool first = true;
        for (const std::string& tok : split(text, '.')) {
            auto it = by_name.find(tok);
            if (it == by_name.end())
                throw Error("UnknownGenerator", tok);
            const RwGen& g = rs.gens().at(it->second);
            if (first) {
                w.src = g.src;
                first = false;
            } else if (rs.gens().at(w.gens.back()).tgt != g.src) {
                throw Error("BadWord", text + " is not composable");
            }
            w.gens.push_back(it->second);
        }
        if (first) throw Error("BadWord", "empty word");
        return w;
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        if (line.rfind("order vertex", 0) == 0) {
            auto colon = line.find(':');
            if (colon == std::string::npos)
                throw Error("ParseError", "line " + std::to_string(lineno));
            int vertex = std::stoi(trim(line.substr(12, colon - 12)));
            std::vector<int> ranked;
            for (const std::string& name : split(line.substr(colon + 1), '>')) {
                auto it = by_name.find(name);
                if (it == by_name.end()) throw Error("UnknownGenerator", name);
                ranked.push_back(it->second);
            }
            rs.set_order(vertex, ranked);
        } else if (line.rfind("rule:", 0) == 0) {
            auto arrow = line.find("->");
            if (arrow == std::string::npos)
                throw Error("ParseError", "line " + std::to_string(lineno));
            RwWord lhs = parse_word(trim(line.substr(5, arrow - 5)));
            std::string rhs_text = trim(line.substr(arrow + 2));
            RwElem rel{{lhs, Scalar::one(rs.field())}};
            if (rhs_text != "0") {
                // split into signed terms
                std::vector<std::pair<int, std::string>> terms;
                std::string cur;
                int sign = 1;
                for (char ch : rhs_text) {
                    if (ch == '+' || ch == '-') {
                        if (!trim(cur).empty()) terms.emplace_back(sign, trim(cur));
                        sign = ch == '-' ? -1 : 1;
                        cur.clear();
                    } else {
                        cur += ch;
                    }
                }
                if (!trim(cur).empty()) terms.emplace_back(sign, trim(cur));
                for (auto& [sgn, term] : terms) {
                    Scalar c = Scalar::of(sgn, rs.field());
                    std::string word_text = term;
                    if (auto star = term.find('*'); star != std::string::npos) {
                        c = c * parse_scalar(trim(term.substr(0, star)), rs.field());
                        word_text = trim(term.substr(star + 1));
                    }
                    // move the rhs across: lhs - rhs is the relation
                    combo_add_rw(rel, parse_word(word_text), -c);
                }
            }
            rs.add_rule(rel, "input");
        } else {
            throw Error("ParseError",
                        "line " + std::to_string(lineno) + ": " + line);
        }
    }
}

}  // namespace depa
