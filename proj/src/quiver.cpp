#include "depa/quiver.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace depa {

int Quiver::vertex_index(int v) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == v) return static_cast<int>(i);
    throw Error("DanglingArrow", "unknown vertex " + std::to_string(v));
}

const Arrow& Quiver::arrow(int id) const {
    for (const auto& a : arrows)
        if (a.id == id) return a;
    throw Error("DanglingArrow", "unknown arrow " + std::to_string(id));
}

int DecoratedQuiver::arrow_dim(int id) const {
    const Arrow& a = quiver.arrow(id);
    int ds = at(a.src).alg.dim, dt = at(a.tgt).alg.dim;
    return arrow_kind.at(id) == ArrowKind::TensorUnit ? ds * dt : ds;
}

namespace {

bool same_algebra(const DecAlgebraPtr& a, const DecAlgebraPtr& b) {
    if (a == b) return true;
    return a->alg.dim == b->alg.dim && a->alg.sc == b->alg.sc &&
           a->alg.xdeg2 == b->alg.xdeg2 && a->form.lambda == b->form.lambda;
}

}  // namespace

DecoratedQuiver build_decorated_quiver(Quiver q,
                                       std::map<int, DecAlgebraPtr> vertex_algebra,
                                       std::map<int, ArrowKind> arrow_kind,
                                       std::map<int, int> arrow_xweight2) {
    DecoratedQuiver dq;
    dq.quiver = std::move(q);
    dq.vertex_algebra = std::move(vertex_algebra);
    dq.arrow_kind = std::move(arrow_kind);
    dq.arrow_xweight2 = std::move(arrow_xweight2);
    if (dq.quiver.vertices.empty()) throw Error("ConditionFViolation", "no vertices");
    dq.field = dq.vertex_algebra.begin()->second->alg.field;

    for (int v : dq.quiver.vertices) {
        auto it = dq.vertex_algebra.find(v);
        if (it == dq.vertex_algebra.end())
            throw Error("ConditionFViolation", "vertex " + std::to_string(v) + " undecorated");
        auto rep = validate_frobenius(it->second->alg, it->second->form);
        if (!rep.nondegenerate || !rep.symmetric)
            throw Error("ConditionFViolation",
                        "vertex " + std::to_string(v) + " form not symmetric Frobenius");
    }
    for (const auto& a : dq.quiver.arrows) {
        dq.quiver.vertex_index(a.src);
        dq.quiver.vertex_index(a.tgt);
        if (!dq.arrow_kind.count(a.id))
            throw Error("ConditionFViolation", "arrow " + std::to_string(a.id) + " untagged");
        if (dq.arrow_kind.at(a.id) == ArrowKind::Identification &&
            !same_algebra(dq.vertex_algebra.at(a.src), dq.vertex_algebra.at(a.tgt)))
            throw Error("ConditionFViolation",
                        "identification arrow " + std::to_string(a.id) +
                            " between different algebras");
        if (!dq.arrow_xweight2.count(a.id)) {
            int w = 0;
            if (dq.arrow_kind.at(a.id) == ArrowKind::Identification) {
                int top = dq.at(a.src).alg.max_xdeg2();
                if (top % 2) throw Error("ConditionFViolation", "odd top degree split");
                w = top / 2;
            }
            dq.arrow_xweight2[a.id] = w;
        }
    }
    return dq;
}

DecoratedQuiver double_quiver(const DecoratedQuiver& dq) {
    if (dq.doubled) return dq;
    DecoratedQuiver out = dq;
    out.doubled = true;
    for (const auto& a : dq.quiver.arrows) {
        int did = a.id + dual_arrow_offset;
        out.quiver.arrows.push_back({did, a.tgt, a.src});
        out.arrow_kind[did] = dq.arrow_kind.at(a.id);
        out.arrow_xweight2[did] = dq.arrow_xweight2.at(a.id);
        out.arrow_positive[a.id] = true;
        out.arrow_positive[did] = false;
        out.dual_of[a.id] = did;
        out.dual_of[did] = a.id;
    }
    return out;
}

namespace {

void validate_automorphism(const DecoratedQuiver& dq, const QuiverAutomorphism& f) {
    std::set<int> vimg, aimg;
    for (int v : dq.quiver.vertices) {
        if (!f.vmap.count(v)) throw Error("NotAnAutomorphism", "vertex unmapped");
        vimg.insert(f.vmap.at(v));
        if (!same_algebra(dq.vertex_algebra.at(v), dq.vertex_algebra.at(f.vmap.at(v))))
            throw Error("NotAnAutomorphism", "decoration not preserved at vertex " +
                                                 std::to_string(v));
    }
    if (vimg.size() != dq.quiver.vertices.size())
        throw Error("NotAnAutomorphism", "vertex map not a bijection");
    for (const auto& a : dq.quiver.arrows) {
        if (!f.amap.count(a.id)) throw Error("NotAnAutomorphism", "arrow unmapped");
        const Arrow& b = dq.quiver.arrow(f.amap.at(a.id));
        aimg.insert(b.id);
        if (b.src != f.vmap.at(a.src) || b.tgt != f.vmap.at(a.tgt))
            throw Error("NotAnAutomorphism",
                        "witness arrow " + std::to_string(a.id) + " endpoints");
        if (dq.arrow_kind.at(a.id) != dq.arrow_kind.at(b.id) ||
            dq.arrow_xweight2.at(a.id) != dq.arrow_xweight2.at(b.id))
            throw Error("NotAnAutomorphism",
                        "witness arrow " + std::to_string(a.id) + " decoration");
    }
    if (aimg.size() != dq.quiver.arrows.size())
        throw Error("NotAnAutomorphism", "arrow map not a bijection");
}

std::vector<std::vector<int>> orbits_of(const std::vector<int>& items,
                                        const std::vector<std::map<int, int>>& maps) {
    std::map<int, int> root;
    for (int it : items) root[it] = it;
    std::function<int(int)> find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (const auto& m : maps)
        for (auto& [a, b] : m) {
            int ra = find(a), rb = find(b);
            if (ra != rb) root[std::max(ra, rb)] = std::min(ra, rb);
        }
    std::map<int, std::vector<int>> grouped;
    for (int it : items) grouped[find(it)].push_back(it);
    std::vector<std::vector<int>> out;
    for (auto& [r, v] : grouped) {
        std::sort(v.begin(), v.end());
        out.push_back(v);
    }
    return out;
}

}  // namespace

DecoratedQuiver fold(const DecoratedQuiver& dq,
                     const std::vector<QuiverAutomorphism>& generators) {
    if (dq.doubled) throw Error("UnsupportedParams", "fold before doubling");
    for (const auto& g : generators) validate_automorphism(dq, g);
    std::vector<std::map<int, int>> vmaps, amaps;
    for (const auto& g : generators) {
        vmaps.push_back(g.vmap);
        amaps.push_back(g.amap);
    }
    auto vorbits = orbits_of(dq.quiver.vertices, vmaps);
    std::vector<int> arrow_ids;
    for (const auto& a : dq.quiver.arrows) arrow_ids.push_back(a.id);
    auto aorbits = orbits_of(arrow_ids, amaps);

    std::map<int, int> vertex_orbit_rep;  // vertex -> min id of its orbit
    std::map<int, DecAlgebraPtr> folded_alg;
    Quiver fq;
    for (const auto& orb : vorbits) {
        int rep = orb.front();
        for (int v : orb) vertex_orbit_rep[v] = rep;
        fq.vertices.push_back(rep);
        if (orb.size() == 1) {
            folded_alg[rep] = dq.vertex_algebra.at(rep);
        } else {
            StandardAlgebra acc{dq.at(orb[0]).alg, dq.at(orb[0]).form, {}};
            for (size_t i = 1; i < orb.size(); ++i) {
                StandardAlgebra next{dq.at(orb[i]).alg, dq.at(orb[i]).form, {}};
                acc = standard_algebra("product", dq.field, 0, nullptr, &acc, &next);
            }
            folded_alg[rep] = std::make_shared<DecAlgebra>(
                DecAlgebra{std::move(acc.algebra), std::move(acc.form)});
        }
    }

    std::map<int, ArrowKind> fkinds;
    for (const auto& orb : aorbits) {
        int rep = orb.front();
        const Arrow& a0 = dq.quiver.arrow(rep);
        int so = vertex_orbit_rep.at(a0.src), to = vertex_orbit_rep.at(a0.tgt);
        std::vector<int> sorb, torb;
        for (int v : dq.quiver.vertices) {
            if (vertex_orbit_rep.at(v) == so) sorb.push_back(v);
            if (vertex_orbit_rep.at(v) == to) torb.push_back(v);
        }
        auto vpos = [](const std::vector<int>& xs, int v) {
            return std::find(xs.begin(), xs.end(), v) - xs.begin();
        };
        // Identification case: orbit arrows pair the endpoint orbits bijectively
        // (in matching component order) and every member is an identification
        // bimodule up to the 1-dimensional case.
        bool ident_ok = orb.size() == sorb.size() && orb.size() == torb.size();
        std::set<int> seen_src, seen_tgt;
        bool monotone = true;
        for (int id : orb) {
            const Arrow& a = dq.quiver.arrow(id);
            seen_src.insert(a.src);
            seen_tgt.insert(a.tgt);
            if (vpos(sorb, a.src) != vpos(torb, a.tgt)) monotone = false;
            bool member_ident =
                dq.arrow_kind.at(id) == ArrowKind::Identification ||
                (dq.at(a.src).alg.dim == 1 && dq.at(a.tgt).alg.dim == 1);
            if (!member_ident) ident_ok = false;
        }
        ident_ok = ident_ok && monotone && seen_src.size() == orb.size() &&
                   seen_tgt.size() == orb.size() &&
                   same_algebra(folded_alg.at(so), folded_alg.at(to));
        if (ident_ok) {
            fq.arrows.push_back({rep, so, to});
            fkinds[rep] = ArrowKind::Identification;
            continue;
        }
        // TensorUnit case: orbit covers sorb x torb exactly once and every
        // member bimodule is A_src (x) A_tgt (needs a 1-dim side for
        // identification members).
        std::set<std::pair<int, int>> pairs;
        bool tensor_ok = orb.size() == sorb.size() * torb.size();
        for (int id : orb) {
            const Arrow& a = dq.quiver.arrow(id);
            pairs.insert({a.src, a.tgt});
            if (dq.arrow_kind.at(id) == ArrowKind::Identification &&
                dq.at(a.src).alg.dim != 1)
                tensor_ok = false;
        }
        tensor_ok = tensor_ok && pairs.size() == orb.size();
        if (!tensor_ok)
            throw Error("ConditionFViolation",
                        "arrow orbit at arrow " + std::to_string(rep) +
                            " folds to a non-(F) bimodule");
        fq.arrows.push_back({rep, so, to});
        fkinds[rep] = ArrowKind::TensorUnit;
    }
    return build_decorated_quiver(std::move(fq), std::move(folded_alg), std::move(fkinds));
}

std::vector<QuiverAutomorphism> automorphism_group(const DecoratedQuiver& dq) {
    size_t nv = dq.quiver.vertices.size();
    if (nv > 10) throw Error("UnsupportedParams", "automorphism search limited to 10 vertices");
    std::vector<int> vs = dq.quiver.vertices;
    // arrows grouped by (src,tgt,kind,weight), mapped in id order
    auto key = [&](const Arrow& a) {
        return std::tuple(a.src, a.tgt, static_cast<int>(dq.arrow_kind.at(a.id)),
                          dq.arrow_xweight2.at(a.id));
    };
    std::map<std::tuple<int, int, int, int>, std::vector<int>> buckets;
    for (const auto& a : dq.quiver.arrows) buckets[key(a)].push_back(a.id);
    for (auto& [k, v] : buckets) std::sort(v.begin(), v.end());

    std::vector<QuiverAutomorphism> group;
    std::map<int, int> vmap;
    std::vector<bool> used(nv, false);
    std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == nv) {
            QuiverAutomorphism f;
            f.vmap = vmap;
            for (auto& [k, ids] : buckets) {
                auto [s, t, kind, w] = k;
                auto it = buckets.find(std::tuple(vmap.at(s), vmap.at(t), kind, w));
                if (it == buckets.end() || it->second.size() != ids.size()) return;
                for (size_t i = 0; i < ids.size(); ++i) f.amap[ids[i]] = it->second[i];
            }
            try {
                validate_automorphism(dq, f);
                group.push_back(std::move(f));
            } catch (const Error&) {
            }
            return;
        }
        int v = vs[pos];
        for (size_t j = 0; j < nv; ++j) {
            if (used[j]) continue;
            int w = vs[j];
            if (!same_algebra(dq.vertex_algebra.at(v), dq.vertex_algebra.at(w))) continue;
            // degree pruning
            auto deg = [&](int u) {
                int in = 0, out = 0;
                for (const auto& a : dq.quiver.arrows) {
                    if (a.src == u) ++out;
                    if (a.tgt == u) ++in;
                }
                return std::pair(in, out);
            };
            if (deg(v) != deg(w)) continue;
            used[j] = true;
            vmap[v] = w;
            rec(pos + 1);
            vmap.erase(v);
            used[j] = false;
        }
    };
    rec(0);
    return group;
}

CartanData cartan_data(const DecoratedQuiver& dq) {
    DecoratedQuiver d = double_quiver(dq);
    size_t n = d.quiver.vertices.size();
    CartanData cd;
    cd.A.assign(n, std::vector<long long>(n, 0));
    cd.A_s.assign(n, std::vector<SPoly>(n));
    cd.D.assign(n, 0);
    cd.D_s.assign(n, SPoly{});
    cd.B_s.assign(n, SPoly{});
    auto h_of = [](const FiniteDimAlgebra& A) {
        SPoly p;
        for (int i = 0; i < A.dim; ++i) p.c[A.xdeg2_of(i)] += 1;
        return p;
    };
    for (size_t i = 0; i < n; ++i) {
        const auto& A = d.at(d.quiver.vertices[i]).alg;
        cd.D[i] = A.dim;
        cd.D_s[i] = h_of(A);
    }
    std::vector<std::set<int>> bexp(n);
    for (const auto& a : d.quiver.arrows) {
        int i = d.quiver.vertex_index(a.src);
        int j = d.quiver.vertex_index(a.tgt);
        int w = d.arrow_xweight2.at(a.id);
        int wdual = d.arrow_xweight2.at(d.dual_of.at(a.id));
        if (d.arrow_kind.at(a.id) == ArrowKind::TensorUnit) {
            cd.A[i][j] += d.at(a.tgt).alg.dim;
            cd.A_s[i][j] = cd.A_s[i][j] + h_of(d.at(a.tgt).alg) * SPoly::monomial(w);
            bexp[i].insert(d.at(a.src).alg.max_xdeg2() + w + wdual);
        } else {
            cd.A[i][j] += 1;
            cd.A_s[i][j] = cd.A_s[i][j] + SPoly::monomial(w);
            bexp[i].insert(w + wdual);
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (bexp[i].empty()) continue;
        if (bexp[i].size() > 1)
            throw Error("InhomogeneousRelation",
                        "relation at vertex " + std::to_string(d.quiver.vertices[i]) +
                            " mixes x-degrees");
        cd.B_s[i] = SPoly::monomial(*bexp[i].begin());
    }
    return cd;
}

bool is_dynkin(const DecoratedQuiver& dq) {
    CartanData cd = cartan_data(dq);
    size_t n = cd.A.size();
    // leading principal minors of 2I - A, exact rational elimination
    for (size_t m = 1; m <= n; ++m) {
        Matrix M(static_cast<int>(m), static_cast<int>(m), 0);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j)
                M.at(i, j) = Scalar::rational((i == j ? 2 : 0) - cd.A[i][j]);
        // determinant via elimination
        mpq_class det = 1;
        for (size_t col = 0; col < m; ++col) {
            int sel = -1;
            for (size_t r = col; r < m; ++r)
                if (!M.at(r, col).is_zero()) { sel = static_cast<int>(r); break; }
            if (sel < 0) { det = 0; break; }
            if (sel != static_cast<int>(col)) {
                for (size_t j = 0; j < m; ++j)
                    std::swap(M.at(sel, j), M.at(static_cast<int>(col), j));
                det = -det;
            }
            det *= M.at(static_cast<int>(col), static_cast<int>(col)).rat();
            Scalar inv = M.at(static_cast<int>(col), static_cast<int>(col)).inv();
            for (size_t r = col + 1; r < m; ++r) {
                Scalar f = M.at(static_cast<int>(r), static_cast<int>(col)) * inv;
                if (f.is_zero()) continue;
                for (size_t j = col; j < m; ++j)
                    M.at(static_cast<int>(r), j) -=
                        f * M.at(static_cast<int>(col), j);
            }
        }
        if (det <= 0) return false;
    }
    return true;
}

DecoratedQuiver path_quiver_constant_k(int n, long long field) {
    auto k = std::make_shared<DecAlgebra>();
    auto g = standard_algebra("ground", field);
    k->alg = g.algebra;
    k->form = g.form;
    Quiver q;
    std::map<int, DecAlgebraPtr> va;
    std::map<int, ArrowKind> kinds;
    for (int i = 1; i <= n; ++i) {
        q.vertices.push_back(i);
        va[i] = k;
    }
    for (int i = 1; i < n; ++i) {
        q.arrows.push_back({i, i, i + 1});
        kinds[i] = ArrowKind::TensorUnit;
    }
    return build_decorated_quiver(std::move(q), std::move(va), std::move(kinds));
}

DecoratedQuiver star_quiver_constant_k(int leaves, long long field) {
    auto k = std::make_shared<DecAlgebra>();
    auto g = standard_algebra("ground", field);
    k->alg = g.algebra;
    k->form = g.form;
    Quiver q;
    std::map<int, DecAlgebraPtr> va;
    std::map<int, ArrowKind> kinds;
    q.vertices.push_back(0);
    va[0] = k;
    for (int i = 1; i <= leaves; ++i) {
        q.vertices.push_back(i);
        va[i] = k;
        q.arrows.push_back({i, i, 0});
        kinds[i] = ArrowKind::TensorUnit;
    }
    return build_decorated_quiver(std::move(q), std::move(va), std::move(kinds));
}

DecoratedQuiver a2_decorated(const StandardAlgebra& src, const StandardAlgebra& tgt) {
    Quiver q;
    q.vertices = {1, 2};
    q.arrows.push_back({1, 1, 2});
    std::map<int, DecAlgebraPtr> va{
        {1, std::make_shared<DecAlgebra>(DecAlgebra{src.algebra, src.form})},
        {2, std::make_shared<DecAlgebra>(DecAlgebra{tgt.algebra, tgt.form})}};
    std::map<int, ArrowKind> kinds{{1, ArrowKind::TensorUnit}};
    return build_decorated_quiver(std::move(q), std::move(va), std::move(kinds));
}

DecoratedQuiver b_family(int n, long long field) {
    if (n < 2) throw Error("UnsupportedParams", "b_family needs n >= 2");
    auto k = standard_algebra("ground", field);
    auto S = standard_algebra("truncated_poly", field, 2);
    auto kp = std::make_shared<DecAlgebra>(DecAlgebra{k.algebra, k.form});
    auto Sp = std::make_shared<DecAlgebra>(DecAlgebra{S.algebra, S.form});
    Quiver q;
    std::map<int, DecAlgebraPtr> va;
    std::map<int, ArrowKind> kinds;
    for (int v = 1; v <= n; ++v) {
        q.vertices.push_back(v);
        va[v] = v == 1 ? kp : Sp;
    }
    for (int i = 1; i < n; ++i) {
        q.arrows.push_back({i, i, i + 1});
        kinds[i] = i == 1 ? ArrowKind::TensorUnit : ArrowKind::Identification;
    }
    return build_decorated_quiver(std::move(q), std::move(va), std::move(kinds));
}

DecoratedQuiver c_family(int n, long long field) {
    if (n < 2) throw Error("UnsupportedParams", "c_family needs n >= 2");
    auto k = standard_algebra("ground", field);
    auto S = standard_algebra("truncated_poly", field, 2);
    auto kp = std::make_shared<DecAlgebra>(DecAlgebra{k.algebra, k.form});
    auto Sp = std::make_shared<DecAlgebra>(DecAlgebra{S.algebra, S.form});
    Quiver q;
    std::map<int, DecAlgebraPtr> va;
    std::map<int, ArrowKind> kinds;
    for (int v = 1; v <= n; ++v) {
        q.vertices.push_back(v);
        va[v] = v == n ? Sp : kp;
    }
    for (int i = 1; i < n; ++i) {
        q.arrows.push_back({i, i, i + 1});
        kinds[i] = i == n - 1 ? ArrowKind::TensorUnit : ArrowKind::Identification;
    }
    return build_decorated_quiver(std::move(q), std::move(va), std::move(kinds));
}

DecoratedQuiver f4_quiver(long long field) {
    auto k = standard_algebra("ground", field);
    auto S = standard_algebra("truncated_poly", field, 2);
    auto kp = std::make_shared<DecAlgebra>(DecAlgebra{k.algebra, k.form});
    auto Sp = std::make_shared<DecAlgebra>(DecAlgebra{S.algebra, S.form});
    Quiver q;
    q.vertices = {1, 2, 3, 4};
    q.arrows = {{1, 1, 2}, {2, 2, 3}, {3, 3, 4}};
    std::map<int, DecAlgebraPtr> va{{1, kp}, {2, kp}, {3, Sp}, {4, Sp}};
    std::map<int, ArrowKind> kinds{{1, ArrowKind::Identification},
                                   {2, ArrowKind::TensorUnit},
                                   {3, ArrowKind::Identification}};
    return build_decorated_quiver(std::move(q), std::move(va), std::move(kinds));
}

DecoratedQuiver g2_quiver(long long field) {
    auto k = standard_algebra("ground", field);
    auto S3 = standard_algebra("truncated_poly", field, 3);
    return a2_decorated(k, S3);
}

}  // namespace depa
