#include "depa/tensor.hpp"

namespace depa {

int GradedPiece::block_dim(int i, int j) const {
    auto it = blocks.find({i, j});
    return it == blocks.end() ? 0 : static_cast<int>(it->second.size());
}

int GradedPiece::total_dim() const {
    int t = 0;
    for (auto& [k, v] : blocks) t += static_cast<int>(v.size());
    return t;
}

std::map<int, int> GradedPiece::bidims(int i, int j, const TensorContext& ctx) const {
    std::map<int, int> out;
    auto it = blocks.find({i, j});
    if (it == blocks.end()) return out;
    for (const auto& w : it->second) out[ctx.xdeg2(w)] += 1;
    return out;
}

void combo_add(WordCombo& acc, const PathWord& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = acc.find(w);
    if (it == acc.end()) {
        acc.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

void combo_add(WordCombo& acc, const WordCombo& other, const Scalar& scale) {
    for (auto& [w, c] : other) combo_add(acc, w, scale * c);
}

TensorContext::TensorContext(DecoratedQuiver doubled) : dq_(std::move(doubled)) {
    if (!dq_.doubled) dq_ = double_quiver(dq_);
}

int TensorContext::target(const PathWord& w) const {
    return w.arrows.empty() ? w.source : dq_.quiver.arrow(w.arrows.back()).tgt;
}

int TensorContext::xdeg2(const PathWord& w) const {
    int d = dq_.at(w.source).alg.xdeg2_of(w.slots[0]);
    size_t slot = 1;
    for (int id : w.arrows) {
        d += dq_.arrow_xweight2.at(id);
        if (dq_.arrow_kind.at(id) == ArrowKind::TensorUnit)
            d += dq_.at(dq_.quiver.arrow(id).tgt).alg.xdeg2_of(w.slots[slot++]);
    }
    return d;
}

const GradedPiece& TensorContext::piece(int n) {
    while (static_cast<int>(memo_.size()) <= n) {
        int deg = static_cast<int>(memo_.size());
        GradedPiece p;
        p.degree = deg;
        if (deg == 0) {
            for (int v : dq_.quiver.vertices)
                for (int i = 0; i < dq_.at(v).alg.dim; ++i)
                    p.blocks[{v, v}].push_back(PathWord{v, {}, {i}});
        } else {
            const GradedPiece& prev = memo_[deg - 1];
            for (const auto& [blk, words] : prev.blocks) {
                for (const auto& a : dq_.quiver.arrows) {
                    if (a.src != blk.second) continue;
                    for (const PathWord& w : words) {
                        PathWord nw = w;
                        nw.arrows.push_back(a.id);
                        if (dq_.arrow_kind.at(a.id) == ArrowKind::TensorUnit) {
                            for (int q = 0; q < dq_.at(a.tgt).alg.dim; ++q) {
                                PathWord nw2 = nw;
                                nw2.slots.push_back(q);
                                p.blocks[{blk.first, a.tgt}].push_back(std::move(nw2));
                            }
                        } else {
                            p.blocks[{blk.first, a.tgt}].push_back(std::move(nw));
                        }
                    }
                }
            }
        }
        for (auto& [blk, words] : p.blocks) {
            auto& idx = p.index[blk];
            for (size_t i = 0; i < words.size(); ++i)
                idx[words[i]] = static_cast<int>(i);
        }
        memo_.push_back(std::move(p));
    }
    return memo_[n];
}

WordCombo TensorContext::right_action(const PathWord& u, const Vec& a) const {
    WordCombo out;
    if (u.arrows.empty()) {
        const auto& A = dq_.at(u.source).alg;
        Vec prod = A.multiply(A.basis_vec(u.slots[0]), a);
        for (int k = 0; k < A.dim; ++k)
            combo_add(out, PathWord{u.source, {}, {k}}, prod[k]);
        return out;
    }
    int last = u.arrows.back();
    const Arrow& arr = dq_.quiver.arrow(last);
    if (dq_.arrow_kind.at(last) == ArrowKind::TensorUnit) {
        const auto& A = dq_.at(arr.tgt).alg;
        Vec prod = A.multiply(A.basis_vec(u.slots.back()), a);
        for (int k = 0; k < A.dim; ++k) {
            if (prod[k].is_zero()) continue;
            PathWord w = u;
            w.slots.back() = k;
            combo_add(out, w, prod[k]);
        }
        return out;
    }
    // identification: content passes leftward through the tensor
    PathWord prefix = u;
    prefix.arrows.pop_back();
    WordCombo rec = right_action(prefix, a);
    for (auto& [w, c] : rec) {
        PathWord ext = w;
        ext.arrows.push_back(last);
        combo_add(out, ext, c);
    }
    return out;
}

WordCombo TensorContext::left_action(const Vec& a, const PathWord& u) const {
    const auto& A = dq_.at(u.source).alg;
    Vec prod = A.multiply(a, A.basis_vec(u.slots[0]));
    WordCombo out;
    for (int k = 0; k < A.dim; ++k) {
        if (prod[k].is_zero()) continue;
        PathWord w = u;
        w.slots[0] = k;
        combo_add(out, w, prod[k]);
    }
    return out;
}

WordCombo TensorContext::mul(const PathWord& u, const PathWord& w) const {
    if (target(u) != w.source) return {};
    const auto& A = dq_.at(w.source).alg;
    WordCombo acted = right_action(u, A.basis_vec(w.slots[0]));
    WordCombo out;
    for (auto& [p, c] : acted) {
        PathWord r = p;
        r.arrows.insert(r.arrows.end(), w.arrows.begin(), w.arrows.end());
        r.slots.insert(r.slots.end(), w.slots.begin() + 1, w.slots.end());
        combo_add(out, r, c);
    }
    return out;
}

WordCombo TensorContext::mul(const WordCombo& u, const WordCombo& w) const {
    WordCombo out;
    for (auto& [a, ca] : u)
        for (auto& [b, cb] : w) combo_add(out, mul(a, b), ca * cb);
    return out;
}

std::string TensorContext::word_str(const PathWord& w) const {
    const auto& A0 = dq_.at(w.source).alg;
    auto lab = [](const FiniteDimAlgebra& A, int i) {
        return A.labels.empty() ? "e" + std::to_string(i) : A.labels[i];
    };
    std::string out = "[" + std::to_string(w.source) + ":" + lab(A0, w.slots[0]) + "]";
    size_t slot = 1;
    for (int id : w.arrows) {
        const Arrow& a = dq_.quiver.arrow(id);
        out += " -" + std::to_string(id) + "-> " + std::to_string(a.tgt);
        if (dq_.arrow_kind.at(id) == ArrowKind::TensorUnit)
            out += ":" + lab(dq_.at(a.tgt).alg, w.slots[slot++]);
    }
    return out;
}

std::vector<std::pair<int, int>> bimodule_tensor_basis(
    int dimM, int dimN, const std::vector<Matrix>& right_on_M,
    const std::vector<Matrix>& left_on_N) {
    if (right_on_M.size() != left_on_N.size())
        throw Error("ActionMismatch", "middle algebra dimensions differ");
    long long field = right_on_M.empty() ? 0 : right_on_M[0].field();
    RowSpan relations(field);
    auto flat = [&](int m, int n) { return m * dimN + n; };
    for (size_t b = 0; b < right_on_M.size(); ++b) {
        for (int m = 0; m < dimM; ++m)
            for (int n = 0; n < dimN; ++n) {
                Vec rel(static_cast<size_t>(dimM) * dimN, Scalar::zero(field));
                for (int m2 = 0; m2 < dimM; ++m2)
                    rel[flat(m2, n)] += right_on_M[b].at(m2, m);
                for (int n2 = 0; n2 < dimN; ++n2)
                    rel[flat(m, n2)] -= left_on_N[b].at(n2, n);
                relations.insert(std::move(rel));
            }
    }
    std::vector<bool> pivot(static_cast<size_t>(dimM) * dimN, false);
    for (int p : relations.pivots()) pivot[p] = true;
    std::vector<std::pair<int, int>> basis;
    for (int m = 0; m < dimM; ++m)
        for (int n = 0; n < dimN; ++n)
            if (!pivot[flat(m, n)]) basis.push_back({m, n});
    return basis;
}

}  // namespace depa
