#include "depa/preprojective.hpp"

#include <algorithm>

namespace depa {

WordCombo relation_element(TensorContext& ctx, SignConvention sc) {
    const auto& dq = ctx.dq();
    long long F = dq.field;
    Scalar one = Scalar::one(F);
    Scalar neg = sc == SignConvention::AllPlus ? one : Scalar::of(-1, F);
    WordCombo r;
    // Casimir loop e_l (x) 1 (x) f_l at vertex v, through the arrow pair
    auto add_tensor_loop = [&](int v, int first, int second, int midv,
                               const Scalar& sign) {
        const auto& A = dq.at(v);
        const auto& M = dq.at(midv).alg;
        auto duals = frobenius_dual_basis(A.alg, A.form);
        for (int l = 0; l < A.alg.dim; ++l)
            for (int m = 0; m < M.dim; ++m) {
                if (M.unit[m].is_zero()) continue;
                for (int f = 0; f < A.alg.dim; ++f) {
                    Scalar c = sign * M.unit[m] * duals[l][f];
                    combo_add(r, PathWord{v, {first, second}, {l, m, f}}, c);
                }
            }
    };
    for (const auto& a : dq.quiver.arrows) {
        if (!dq.is_positive(a.id)) continue;
        int dual = dq.dual_of.at(a.id);
        if (dq.arrow_kind.at(a.id) == ArrowKind::TensorUnit) {
            add_tensor_loop(a.src, a.id, dual, a.tgt, one);
            add_tensor_loop(a.tgt, dual, a.id, a.src, neg);
        } else {
            const auto& Ai = dq.at(a.src).alg;
            const auto& Aj = dq.at(a.tgt).alg;
            for (int f = 0; f < Ai.dim; ++f)
                combo_add(r, PathWord{a.src, {a.id, dual}, {f}}, Ai.unit[f]);
            for (int f = 0; f < Aj.dim; ++f)
                combo_add(r, PathWord{a.tgt, {dual, a.id}, {f}}, neg * Aj.unit[f]);
        }
    }
    return r;
}

int HilbertSeries::dim(int n) const {
    if (n < 0 || n >= static_cast<int>(coeffs.size())) return 0;
    int t = 0;
    for (auto& [blk, bd] : coeffs[n])
        for (auto& [x, d] : bd) t += d;
    return t;
}

std::map<int, int> HilbertSeries::bidims(int n, int i, int j) const {
    if (n < 0 || n >= static_cast<int>(coeffs.size())) return {};
    auto it = coeffs[n].find({i, j});
    return it == coeffs[n].end() ? std::map<int, int>{} : it->second;
}

int HilbertSeries::block_total(int i, int j) const {
    int t = 0;
    for (auto& deg : coeffs) {
        auto it = deg.find({i, j});
        if (it == deg.end()) continue;
        for (auto& [x, d] : it->second) t += d;
    }
    return t;
}

long long HilbertSeries::total() const {
    if (!stabilized) throw Error("NotFiniteDimensional", "series did not stabilize");
    long long t = 0;
    for (int n = 0; n < static_cast<int>(coeffs.size()); ++n) t += dim(n);
    return t;
}

PiContext::PiContext(const DecoratedQuiver& dq, SignConvention sc, int cutoff)
    : ctx_(dq), sc_(sc), cutoff_(cutoff) {
    if (cutoff_ < 0) {
        int s = 0;
        for (int v : ctx_.dq().quiver.vertices) s += ctx_.dq().at(v).alg.dim;
        cutoff_ = 2 * s;
    }
    relation_ = relation_element(ctx_, sc_);
    for (int v : ctx_.dq().quiver.vertices) {
        WordCombo rv = relation_at(v);
        if (rv.empty()) continue;
        const auto& A = ctx_.dq().at(v).alg;
        for (int b = 0; b < A.dim; ++b) {
            WordCombo unitb{{PathWord{v, {}, {b}}, Scalar::one(ctx_.dq().field)}};
            WordCombo m = ctx_.mul(rv, unitb);
            if (!m.empty()) relation_right_multiples_[v].push_back(std::move(m));
        }
    }
}

WordCombo PiContext::relation_at(int v) const {
    WordCombo out;
    for (auto& [w, c] : relation_)
        if (w.source == v) out.emplace(w, c);
    return out;
}

const std::vector<PathWord>& PiContext::basis(int n) {
    while (static_cast<int>(basis_.size()) <= n)
        extend(static_cast<int>(basis_.size()));
    return basis_[n];
}

void PiContext::extend(int n) {
    long long F = ctx_.dq().field;
    basis_.resize(n + 1);
    cand_index_.resize(n + 1);
    cand_to_basis_.resize(n + 1);
    red_memo_.resize(n + 1);
    if (n == 0) {
        for (auto& [blk, words] : ctx_.piece(0).blocks)
            for (const auto& w : words) {
                red_memo_[0][w] = {{static_cast<int>(basis_[0].size()), Scalar::one(F)}};
                basis_[0].push_back(w);
            }
        return;
    }
    const auto& dq = ctx_.dq();
    std::vector<PathWord> cands;
    for (const auto& w : basis_[n - 1]) {
        int t = ctx_.target(w);
        for (const auto& a : dq.quiver.arrows) {
            if (a.src != t) continue;
            PathWord nw = w;
            nw.arrows.push_back(a.id);
            if (dq.arrow_kind.at(a.id) == ArrowKind::TensorUnit) {
                for (int q = 0; q < dq.at(a.tgt).alg.dim; ++q) {
                    PathWord nw2 = nw;
                    nw2.slots.push_back(q);
                    cand_index_[n][nw2] = static_cast<int>(cands.size());
                    cands.push_back(std::move(nw2));
                }
            } else {
                cand_index_[n][nw] = static_cast<int>(cands.size());
                cands.push_back(nw);
            }
        }
    }
    RowSpan span(F);
    if (n >= 2) {
        for (const auto& w : basis_[n - 2]) {
            auto it = relation_right_multiples_.find(ctx_.target(w));
            if (it == relation_right_multiples_.end()) continue;
            WordCombo wc{{w, Scalar::one(F)}};
            for (const auto& rm : it->second) {
                WordCombo prod = ctx_.mul(wc, rm);
                Vec row(cands.size(), Scalar::zero(F));
                for (auto& [z, c] : prod) {
                    PathWord prefix = z;
                    int aid = prefix.arrows.back();
                    prefix.arrows.pop_back();
                    int q = -1;
                    if (dq.arrow_kind.at(aid) == ArrowKind::TensorUnit) {
                        q = prefix.slots.back();
                        prefix.slots.pop_back();
                    }
                    for (auto& [bi, cc] : reduce_word(prefix)) {
                        PathWord cw = basis_[n - 1][bi];
                        cw.arrows.push_back(aid);
                        if (q >= 0) cw.slots.push_back(q);
                        row[cand_index_[n].at(cw)] += c * cc;
                    }
                }
                span.insert(std::move(row));
            }
        }
    }
    std::vector<bool> is_pivot(cands.size(), false);
    std::vector<int> pivot_row(cands.size(), -1);
    for (size_t k = 0; k < span.pivots().size(); ++k) {
        is_pivot[span.pivots()[k]] = true;
        pivot_row[span.pivots()[k]] = static_cast<int>(k);
    }
    std::vector<int> nb(cands.size(), -1);
    for (size_t ci = 0; ci < cands.size(); ++ci)
        if (!is_pivot[ci]) {
            nb[ci] = static_cast<int>(basis_[n].size());
            basis_[n].push_back(cands[ci]);
        }
    cand_to_basis_[n].resize(cands.size());
    for (size_t ci = 0; ci < cands.size(); ++ci) {
        if (!is_pivot[ci]) {
            cand_to_basis_[n][ci] = {{nb[ci], Scalar::one(F)}};
            continue;
        }
        const Vec& row = span.rows()[pivot_row[ci]];
        for (size_t cj = 0; cj < cands.size(); ++cj)
            if (!is_pivot[cj] && !row[cj].is_zero())
                cand_to_basis_[n][ci][nb[cj]] = Scalar::zero(F) - row[cj];
    }
}

std::map<int, Scalar> PiContext::reduce_word(const PathWord& w) {
    int n = w.length();
    basis(n);
    auto memo = red_memo_[n].find(w);
    if (memo != red_memo_[n].end()) return memo->second;
    PathWord prefix = w;
    int aid = prefix.arrows.back();
    prefix.arrows.pop_back();
    int q = -1;
    if (ctx_.dq().arrow_kind.at(aid) == ArrowKind::TensorUnit) {
        q = prefix.slots.back();
        prefix.slots.pop_back();
    }
    std::map<int, Scalar> out;
    for (auto& [bi, c] : reduce_word(prefix)) {
        PathWord cw = basis_[n - 1][bi];
        cw.arrows.push_back(aid);
        if (q >= 0) cw.slots.push_back(q);
        for (auto& [ti, tc] : cand_to_basis_[n][cand_index_[n].at(cw)]) {
            auto it = out.find(ti);
            if (it == out.end()) {
                Scalar v = c * tc;
                if (!v.is_zero()) out.emplace(ti, v);
            } else {
                it->second += c * tc;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    red_memo_[n][w] = out;
    return out;
}

WordCombo PiContext::reduce(const WordCombo& c) {
    WordCombo out;
    for (auto& [w, cf] : c)
        for (auto& [bi, cc] : reduce_word(w))
            combo_add(out, basis_[w.length()][bi], cf * cc);
    return out;
}

WordCombo PiContext::mul(const WordCombo& a, const WordCombo& b) {
    return reduce(ctx_.mul(a, b));
}

HilbertSeries PiContext::hilbert() {
    HilbertSeries h;
    h.cutoff = cutoff_;
    int zero_run = 0;
    for (int n = 0;; ++n) {
        if (n > cutoff_) break;
        const auto& B = basis(n);
        std::map<std::pair<int, int>, std::map<int, int>> blocks;
        for (const auto& w : B)
            blocks[{w.source, ctx_.target(w)}][ctx_.xdeg2(w)] += 1;
        h.coeffs.push_back(std::move(blocks));
        if (B.empty()) {
            if (++zero_run == 2) {
                h.stabilized = true;
                h.coeffs.resize(h.top_degree + 1);
                break;
            }
        } else {
            zero_run = 0;
            h.top_degree = n;
        }
    }
    return h;
}

std::vector<Vec> ideal_degree_span(TensorContext& ctx, const WordCombo& r, int n) {
    if (n < 2) return {};
    const auto& dq = ctx.dq();
    long long F = dq.field;
    Scalar one = Scalar::one(F);
    auto coords = [&](int deg, const WordCombo& c) {
        const auto& p = ctx.piece(deg);
        std::map<PathWord, int> gidx;
        int off = 0;
        for (auto& [blk, words] : p.blocks) {
            for (auto& [w, i] : p.index.at(blk)) gidx[w] = off + i;
            off += static_cast<int>(words.size());
        }
        Vec v(off, Scalar::zero(F));
        for (auto& [w, cf] : c) v[gidx.at(w)] += cf;
        return v;
    };
    // degree 2: all two-sided degree-0 multiples of r
    std::vector<WordCombo> span;
    std::vector<WordCombo> deg0;
    for (auto& [blk, words] : ctx.piece(0).blocks)
        for (const auto& w : words) deg0.push_back({{w, one}});
    for (const auto& a : deg0)
        for (const auto& b : deg0) {
            WordCombo m = ctx.mul(ctx.mul(a, r), b);
            if (!m.empty()) span.push_back(std::move(m));
        }
    std::vector<WordCombo> deg1;
    for (auto& [blk, words] : ctx.piece(1).blocks)
        for (const auto& w : words) deg1.push_back({{w, one}});
    for (int m = 3; m <= n; ++m) {
        std::vector<WordCombo> next;
        RowSpan rs(F);
        auto push = [&](WordCombo c) {
            if (c.empty()) return;
            if (rs.insert(coords(m, c))) next.push_back(std::move(c));
        };
        for (const auto& s : span)
            for (const auto& g : deg1) {
                push(ctx.mul(g, s));
                push(ctx.mul(s, g));
            }
        span = std::move(next);
    }
    RowSpan rs(F);
    for (const auto& s : span) rs.insert(coords(n, s));
    return rs.rows();
}

int ideal_degree_dim(TensorContext& ctx, const WordCombo& r, int n) {
    return static_cast<int>(ideal_degree_span(ctx, r, n).size());
}

long long total_dimension(PiContext& pi) { return pi.hilbert().total(); }

namespace {

using SMat = std::vector<std::vector<SPoly>>;

SMat smat_zero(size_t n) { return SMat(n, std::vector<SPoly>(n)); }

SMat smat_mul(const SMat& a, const SMat& b) {
    size_t n = a.size();
    SMat out = smat_zero(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j)
                out[i][j] = out[i][j] + a[i][k] * b[k][j];
        }
    return out;
}

SMat smat_sub(const SMat& a, const SMat& b) {
    SMat out = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) out[i][j] = out[i][j] - b[i][j];
    return out;
}

bool smat_is_zero(const SMat& a) {
    for (auto& row : a)
        for (auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

// series coefficients of D_s (I - A_s t + B_s t^2)^{-1}:
// G_0 = D_s, G_m = G_{m-1} A_s - G_{m-2} B_s
std::vector<SMat> recursion_terms(const CartanData& cd, int nmax) {
    size_t n = cd.D_s.size();
    SMat D = smat_zero(n), B = smat_zero(n);
    for (size_t i = 0; i < n; ++i) {
        D[i][i] = cd.D_s[i];
        B[i][i] = cd.B_s[i];
    }
    std::vector<SMat> G{D};
    for (int m = 1; m <= nmax; ++m) {
        SMat g = smat_mul(G[m - 1], cd.A_s);
        if (m >= 2) g = smat_sub(g, smat_mul(G[m - 2], B));
        G.push_back(std::move(g));
    }
    return G;
}

// actual series coefficients as SPoly matrices, zero beyond the top degree
std::vector<SMat> actual_terms(PiContext& pi, const HilbertSeries& h, int nmax) {
    const auto& verts = pi.dq().quiver.vertices;
    size_t n = verts.size();
    std::vector<SMat> H;
    for (int m = 0; m <= nmax; ++m) {
        SMat hm = smat_zero(n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (auto& [x, d] : h.bidims(m, verts[i], verts[j]))
                    hm[i][j] = hm[i][j] + SPoly::monomial(x, d);
        H.push_back(std::move(hm));
    }
    return H;
}

void top_bidegree_data(PiContext& pi, const HilbertSeries& h, int& max_s2,
                       std::vector<std::vector<long long>>& P) {
    const auto& verts = pi.dq().quiver.vertices;
    size_t n = verts.size();
    max_s2 = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (auto& [x, d] : h.bidims(h.top_degree, verts[i], verts[j]))
                max_s2 = std::max(max_s2, x);
    P.assign(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto bd = h.bidims(h.top_degree, verts[i], verts[j]);
            auto it = bd.find(max_s2);
            if (it != bd.end()) P[i][j] = it->second;
        }
}

}  // namespace

HilbertSeries conjectured_series(PiContext& pi, int cutoff) {
    if (cutoff < 0) cutoff = pi.cutoff();
    CartanData cd = cartan_data(pi.dq());
    const auto& verts = pi.dq().quiver.vertices;
    size_t nv = verts.size();
    std::vector<SMat> G = recursion_terms(cd, cutoff);
    bool dynkin = is_dynkin(pi.dq());
    int max_s2 = 0, shift = 0;
    std::vector<std::vector<long long>> P;
    if (dynkin) {
        HilbertSeries actual = pi.hilbert();
        if (actual.stabilized) {
            top_bidegree_data(pi, actual, max_s2, P);
            shift = actual.top_degree + 2;
        } else {
            dynkin = false;
        }
    }
    HilbertSeries out;
    out.cutoff = cutoff;
    for (int m = 0; m <= cutoff; ++m) {
        SMat hm = G[m];
        if (dynkin && m >= shift) {
            // correction term s^max_s2 P G_{m-shift}
            for (size_t i = 0; i < nv; ++i)
                for (size_t j = 0; j < nv; ++j) {
                    SPoly acc;
                    for (size_t k = 0; k < nv; ++k)
                        if (P[i][k])
                            acc = acc + SPoly::constant(P[i][k]) * G[m - shift][k][j];
                    hm[i][j] = hm[i][j] + SPoly::monomial(max_s2) * acc;
                }
        }
        std::map<std::pair<int, int>, std::map<int, int>> blocks;
        bool nonzero = false;
        for (size_t i = 0; i < nv; ++i)
            for (size_t j = 0; j < nv; ++j)
                for (auto& [x, d] : hm[i][j].c)
                    if (d) {
                        blocks[{verts[i], verts[j]}][x] = static_cast<int>(d);
                        nonzero = true;
                    }
        out.coeffs.push_back(std::move(blocks));
        if (nonzero) out.top_degree = m;
    }
    out.stabilized = dynkin && out.top_degree + 2 <= cutoff;
    if (out.stabilized) out.coeffs.resize(out.top_degree + 1);
    return out;
}

ConjectureReport check_conjecture(PiContext& pi) {
    ConjectureReport rep;
    HilbertSeries h = pi.hilbert();
    CartanData cd = cartan_data(pi.dq());
    size_t nv = cd.D_s.size();
    rep.dynkin = is_dynkin(pi.dq());
    rep.top_degree = h.top_degree;
    int nmax = h.stabilized ? h.top_degree + 2
                            : static_cast<int>(h.coeffs.size()) - 1;
    std::vector<SMat> H = actual_terms(pi, h, nmax);
    SMat D = smat_zero(nv), B = smat_zero(nv);
    for (size_t i = 0; i < nv; ++i) {
        D[i][i] = cd.D_s[i];
        B[i][i] = cd.B_s[i];
    }
    // residual R_m of h(s,t) (I - A_s t + B_s t^2), expected D at t^0 and the
    // correction at t^{top+2}
    auto residual = [&](int m) {
        SMat r = H[m];
        if (m >= 1) r = smat_sub(r, smat_mul(H[m - 1], cd.A_s));
        if (m >= 2) {
            SMat add = smat_mul(H[m - 2], B);
            for (size_t i = 0; i < nv; ++i)
                for (size_t j = 0; j < nv; ++j) r[i][j] = r[i][j] + add[i][j];
        }
        return r;
    };
    rep.recursion_matches = smat_is_zero(smat_sub(residual(0), D));
    int clean_through = h.stabilized ? h.top_degree + 1 : nmax;
    for (int m = 1; m <= clean_through && rep.recursion_matches; ++m)
        if (!smat_is_zero(residual(m))) rep.recursion_matches = false;
    if (rep.dynkin && h.stabilized) {
        top_bidegree_data(pi, h, rep.max_s2, rep.P);
        SMat expect = smat_zero(nv);
        for (size_t i = 0; i < nv; ++i)
            for (size_t j = 0; j < nv; ++j)
                if (rep.P[i][j])
                    expect[i][j] = SPoly::monomial(rep.max_s2, rep.P[i][j]) * cd.D_s[j];
        rep.correction_matches =
            smat_is_zero(smat_sub(residual(h.top_degree + 2), expect));
    }
    return rep;
}

PairingReport frobenius_pairing(PiContext& pi) {
    HilbertSeries h = pi.hilbert();
    if (!h.stabilized)
        throw Error("NotFiniteDimensional", "series did not stabilize");
    long long F = pi.dq().field;
    PairingReport pr;
    std::map<PathWord, int> gidx;
    for (int n = 0; n <= h.top_degree; ++n)
        for (const auto& w : pi.basis(n)) {
            gidx[w] = static_cast<int>(pr.basis.size());
            pr.basis.push_back(w);
        }
    pr.dim = static_cast<int>(pr.basis.size());
    // Y: per diagonal block, the maximal-x words in the top path degree
    std::map<int, int> block_max;
    for (const auto& w : pi.basis(h.top_degree)) {
        if (w.source != pi.tensor().target(w)) continue;
        int x = pi.tensor().xdeg2(w);
        auto it = block_max.find(w.source);
        if (it == block_max.end() || x > it->second) block_max[w.source] = x;
    }
    for (const auto& w : pi.basis(h.top_degree))
        if (w.source == pi.tensor().target(w) &&
            pi.tensor().xdeg2(w) == block_max.at(w.source))
            pr.y_set.push_back(w);
    auto lambda = [&](const WordCombo& c) {
        Scalar s = Scalar::zero(F);
        for (const auto& y : pr.y_set) {
            auto it = c.find(y);
            if (it != c.end()) s += it->second;
        }
        return s;
    };
    pr.gram = Matrix(pr.dim, pr.dim, F);
    Scalar one = Scalar::one(F);
    for (int a = 0; a < pr.dim; ++a) {
        const PathWord& u = pr.basis[a];
        for (int b = 0; b < pr.dim; ++b) {
            const PathWord& w = pr.basis[b];
            if (pi.tensor().target(u) != w.source) continue;
            if (u.length() + w.length() > h.top_degree) continue;
            pr.gram.at(a, b) = lambda(pi.mul({{u, one}}, {{w, one}}));
        }
    }
    pr.rank = pr.gram.rank();
    pr.nondegenerate = pr.rank == pr.dim;
    pr.symmetric = true;
    for (int a = 0; a < pr.dim && pr.symmetric; ++a)
        for (int b = 0; b < pr.dim; ++b)
            if (!(pr.gram.at(a, b) == pr.gram.at(b, a))) {
                pr.symmetric = false;
                break;
            }
    return pr;
}

Scalar pairing_value(PiContext& pi, const PairingReport& pr, const WordCombo& a,
                     const WordCombo& b) {
    WordCombo prod = pi.mul(a, b);
    Scalar s = Scalar::zero(pi.dq().field);
    for (const auto& y : pr.y_set) {
        auto it = prod.find(y);
        if (it != prod.end()) s += it->second;
    }
    return s;
}

std::map<int, int> center_dims(PiContext& pi) {
    HilbertSeries h = pi.hilbert();
    if (!h.stabilized)
        throw Error("NotFiniteDimensional", "series did not stabilize");
    long long F = pi.dq().field;
    Scalar one = Scalar::one(F);
    std::vector<std::pair<PathWord, int>> gens;  // generator, degree
    for (const auto& g : pi.basis(0)) gens.push_back({g, 0});
    for (const auto& g : pi.basis(1)) gens.push_back({g, 1});
    std::map<int, int> out;
    for (int n = 0; n <= h.top_degree; ++n) {
        int d = static_cast<int>(pi.basis(n).size());
        if (d == 0) continue;
        int rows = 0;
        for (auto& [g, e] : gens)
            if (n + e <= h.top_degree) rows += static_cast<int>(pi.basis(n + e).size());
        Matrix M(rows, d, F);
        int off = 0;
        for (auto& [g, e] : gens) {
            if (n + e > h.top_degree) continue;
            const auto& tgt = pi.basis(n + e);
            std::map<PathWord, int> tidx;
            for (size_t i = 0; i < tgt.size(); ++i) tidx[tgt[i]] = static_cast<int>(i);
            WordCombo gc{{g, one}};
            for (int k = 0; k < d; ++k) {
                WordCombo wc{{pi.basis(n)[k], one}};
                WordCombo comm = pi.mul(wc, gc);
                combo_add(comm, pi.mul(gc, wc), Scalar::of(-1, F));
                for (auto& [z, c] : comm) M.at(off + tidx.at(z), k) = c;
            }
            off += static_cast<int>(tgt.size());
        }
        int dim = d - M.rank();
        if (dim > 0) out[n] = dim;
    }
    return out;
}

}  // namespace depa
