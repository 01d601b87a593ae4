#include "depa/degeneration.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace depa {

namespace {

std::vector<Vec> kernel_basis(const FiniteDimAlgebra& A, const FrobeniusForm& f) {
    Matrix row(1, A.dim, A.field);
    for (int i = 0; i < A.dim; ++i) row.at(0, i) = f.lambda[i];
    Matrix ns = row.nullspace();
    std::vector<Vec> out;
    for (int r = 0; r < ns.rows(); ++r) {
        Vec v(A.dim, Scalar::zero(A.field));
        for (int c = 0; c < A.dim; ++c) v[c] = ns.at(r, c);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

FrobeniusForm form_vanishing_on_unit(const FiniteDimAlgebra& A, const FrobeniusForm& f) {
    if (A.eval(f, A.unit).is_zero()) return f;
    if (A.dim <= 1) throw Error("NoSuchForm", "ground field has no unit in ker(lambda)");
    auto ker = kernel_basis(A, f);
    int r = static_cast<int>(ker.size());
    auto assemble = [&](const std::vector<long long>& c) {
        Vec v(A.dim, Scalar::zero(A.field));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < A.dim; ++j)
                v[j] += ker[i][j] * Scalar::of(c[i], A.field);
        return v;
    };

    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(-3, 3);
    for (int t = 0; t < 1000; ++t) {
        std::vector<long long> c(r);
        for (auto& x : c) x = pick(rng);
        Vec v = assemble(c);
        if (A.is_unit_element(v)) return change_form(A, f, v);
    }
    // deterministic sweep over {0, 1, -1, 2, -2}^r
    static const long long vals[5] = {0, 1, -1, 2, -2};
    long long total = 1;
    for (int i = 0; i < r && total <= 2000000; ++i) total *= 5;
    for (long long idx = 1; idx < total; ++idx) {
        std::vector<long long> c(r);
        long long rem = idx;
        for (int i = 0; i < r; ++i) {
            c[i] = vals[rem % 5];
            rem /= 5;
        }
        Vec v = assemble(c);
        if (A.is_unit_element(v)) return change_form(A, f, v);
    }
    if (A.field == 2)
        throw Error("NoSuchForm", "no unit vanishes on lambda over F_2");
    throw Error("SearchExhausted", "no unit found in ker(lambda)");
}

DegenerateAlgebra most_degenerate(const FiniteDimAlgebra& A, const FrobeniusForm& f) {
    if (!A.eval(f, A.unit).is_zero())
        throw Error("FormNonVanishingOnUnit", "apply form_vanishing_on_unit first");
    RowSpan acc(A.field);
    acc.insert(A.unit);
    std::vector<Vec> mid;
    for (const Vec& v : kernel_basis(A, f))
        if (acc.insert(v)) mid.push_back(v);
    int m = static_cast<int>(mid.size());
    Matrix M(m, m, A.field);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            M.at(i, j) = A.eval(f, A.multiply(mid[i], mid[j]));
    DegenerateAlgebra out{standard_algebra("bilinear_form_algebra", A.field, m, &M), M};
    return out;
}

FiniteDimAlgebra associated_graded(const FiniteDimAlgebra& A, const Filtration& filt) {
    if (filt.layers.empty()) throw Error("BadFiltration", "no layers");
    RowSpan acc(A.field);
    std::vector<Vec> reps;
    std::vector<int> grade;
    for (size_t i = 0; i < filt.layers.size(); ++i)
        for (const Vec& v : filt.layers[i])
            if (acc.insert(v)) {
                reps.push_back(v);
                grade.push_back(static_cast<int>(i));
            }
    if (acc.rank() != A.dim) throw Error("BadFiltration", "chain does not exhaust the algebra");
    {
        RowSpan bottom(A.field);
        for (const Vec& v : filt.layers[0]) bottom.insert(v);
        if (!bottom.contains(A.unit)) throw Error("BadFiltration", "unit not in F_0");
    }

    // coordinates in the adapted basis
    Matrix P(A.dim, A.dim, A.field);
    for (int c = 0; c < A.dim; ++c)
        for (int rrow = 0; rrow < A.dim; ++rrow) P.at(rrow, c) = reps[c][rrow];
    Matrix Pinv = *P.inverse();

    std::vector<std::vector<Vec>> sc(A.dim, std::vector<Vec>(A.dim, Vec(A.dim, Scalar::zero(A.field))));
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            Vec coords = Pinv.apply(A.multiply(reps[i], reps[j]));
            for (int c = 0; c < A.dim; ++c) {
                if (coords[c].is_zero()) continue;
                if (grade[c] > grade[i] + grade[j])
                    throw Error("NotMultiplicative",
                                "product of layer " + std::to_string(grade[i]) + " x " +
                                    std::to_string(grade[j]) + " basis pair (" +
                                    std::to_string(i) + ", " + std::to_string(j) +
                                    ") leaves F_" + std::to_string(grade[i] + grade[j]));
                if (grade[c] == grade[i] + grade[j]) sc[i][j][c] = coords[c];
            }
        }
    std::vector<int> xdeg2(A.dim);
    for (int i = 0; i < A.dim; ++i) xdeg2[i] = 2 * grade[i];
    Vec unit = Pinv.apply(A.unit);
    return make_algebra(A.dim, sc, unit, {}, xdeg2,
                        A.name.empty() ? "gr" : "gr(" + A.name + ")");
}

namespace {

long long series_dim(const HilbertSeries& h, int n, int i, int j, int s2) {
    if (n >= static_cast<int>(h.coeffs.size())) return 0;
    auto bit = h.coeffs[n].find({i, j});
    if (bit == h.coeffs[n].end()) return 0;
    if (s2 < 0) {
        long long t = 0;
        for (const auto& [d, k] : bit->second) t += k;
        return t;
    }
    auto sit = bit->second.find(s2);
    return sit == bit->second.end() ? 0 : sit->second;
}

long long series_total(const HilbertSeries& h, int n) {
    return n < static_cast<int>(h.coeffs.size()) ? h.dim(n) : 0;
}

}  // namespace

FlatnessReport flatness_check(const DecoratedQuiver& deformed,
                              const DecoratedQuiver& degenerate, int cutoff) {
    bool same_shape = deformed.quiver.vertices == degenerate.quiver.vertices &&
                      deformed.quiver.arrows.size() == degenerate.quiver.arrows.size();
    if (same_shape)
        for (size_t k = 0; k < deformed.quiver.arrows.size(); ++k) {
            const Arrow& a = deformed.quiver.arrows[k];
            const Arrow& b = degenerate.quiver.arrows[k];
            if (a.src != b.src || a.tgt != b.tgt) same_shape = false;
        }
    long long tl = 0, tr = 0;
    for (const auto& [v, dec] : deformed.vertex_algebra) tl += dec->alg.dim;
    for (const auto& [v, dec] : degenerate.vertex_algebra) tr += dec->alg.dim;
    bool same_dims = same_shape;
    if (same_shape)
        for (const auto& [v, dec] : deformed.vertex_algebra)
            if (dec->alg.dim != degenerate.at(v).alg.dim) same_dims = false;
    if (!same_dims && tl != tr)
        throw Error("NotComparable",
                    "decorations have total dimensions " + std::to_string(tl) + " and " +
                        std::to_string(tr));

    FlatnessReport rep;
    rep.blockwise = same_dims;
    if (same_dims) {
        rep.bigraded = true;
        auto eff = [](const FiniteDimAlgebra& a) {
            return a.graded() ? a.xdeg2 : std::vector<int>(a.dim, 0);
        };
        for (const auto& [v, dec] : deformed.vertex_algebra)
            if (eff(dec->alg) != eff(degenerate.at(v).alg)) rep.bigraded = false;
    }

    PiContext pl(deformed, SignConvention::AllPlus, cutoff);
    PiContext pr(degenerate, SignConvention::AllPlus, cutoff);
    HilbertSeries hl = pl.hilbert();
    HilbertSeries hr = pr.hilbert();
    rep.cutoff = std::max(hl.cutoff, hr.cutoff);
    rep.stabilization_match = hl.stabilized == hr.stabilized;

    int top = std::max(static_cast<int>(hl.coeffs.size()), static_cast<int>(hr.coeffs.size()));
    auto record = [&](int t, int s2, int i, int j, long long l, long long r) {
        if (l == r) return;
        if (r > l)
            throw Error("EngineError",
                        "degenerate side exceeds deformed side at degree " + std::to_string(t));
        if (!rep.first_difference)
            rep.first_difference = FirstDifference{t, s2, i, j, l, r};
    };
    for (int t = 0; t < top; ++t) {
        if (!rep.blockwise) {
            record(t, -1, -1, -1, series_total(hl, t), series_total(hr, t));
            continue;
        }
        std::set<std::pair<int, int>> blocks;
        if (t < static_cast<int>(hl.coeffs.size()))
            for (const auto& [b, m] : hl.coeffs[t]) blocks.insert(b);
        if (t < static_cast<int>(hr.coeffs.size()))
            for (const auto& [b, m] : hr.coeffs[t]) blocks.insert(b);
        for (auto [i, j] : blocks) {
            if (!rep.bigraded) {
                record(t, -1, i, j, series_dim(hl, t, i, j, -1), series_dim(hr, t, i, j, -1));
                continue;
            }
            std::set<int> degs;
            if (t < static_cast<int>(hl.coeffs.size())) {
                auto it = hl.coeffs[t].find({i, j});
                if (it != hl.coeffs[t].end())
                    for (const auto& [d, k] : it->second) degs.insert(d);
            }
            if (t < static_cast<int>(hr.coeffs.size())) {
                auto it = hr.coeffs[t].find({i, j});
                if (it != hr.coeffs[t].end())
                    for (const auto& [d, k] : it->second) degs.insert(d);
            }
            for (int d : degs)
                record(t, d, i, j, series_dim(hl, t, i, j, d), series_dim(hr, t, i, j, d));
        }
    }
    rep.flat = !rep.first_difference && rep.stabilization_match;
    return rep;
}

}  // namespace depa
