#include "depa/repvariety.hpp"

#include <random>

namespace depa {

namespace {

void require_doubled(const DecoratedQuiver& dd) {
    if (!dd.doubled) throw Error("NotDoubled", "representation needs the doubled quiver");
}

void require_symmetric_forms(const DecoratedQuiver& dd) {
    for (const auto& [v, dec] : dd.vertex_algebra) {
        auto rep = validate_frobenius(dec->alg, dec->form);
        if (!rep.nondegenerate)
            throw Error("DegenerateForm", "vertex " + std::to_string(v));
        if (!rep.symmetric)
            throw Error("NonSymmetricForm", "vertex " + std::to_string(v));
    }
}

Matrix scaled(const Matrix& m, const Scalar& c) {
    Matrix r = m;
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) r.at(i, j) *= c;
    return r;
}

Scalar trace(const Matrix& m) {
    Scalar t = Scalar::zero(m.field());
    for (int i = 0; i < m.rows(); ++i) t += m.at(i, i);
    return t;
}

/// A-matrix diagonal entry sum of an A-linear map on A^d, evaluated through
/// the unit columns.
Vec a_trace(const FiniteDimAlgebra& A, int d, const Matrix& m) {
    Vec t(A.dim, Scalar::zero(A.field));
    for (int p = 0; p < d; ++p) {
        Vec v(static_cast<size_t>(d) * A.dim, Scalar::zero(A.field));
        for (int b = 0; b < A.dim; ++b) v[p * A.dim + b] = A.unit[b];
        Vec w = m.apply(v);
        for (int b = 0; b < A.dim; ++b) t[b] += w[p * A.dim + b];
    }
    return t;
}

}  // namespace

int module_dim(const DecoratedQuiver& dd, const std::map<int, int>& d, int v) {
    return d.at(v) * dd.at(v).alg.dim;
}

int hom_space_dim(const DecoratedQuiver& dd, const std::map<int, int>& d, int arrow) {
    const Arrow& a = dd.quiver.arrow(arrow);
    if (dd.arrow_kind.at(arrow) == ArrowKind::TensorUnit)
        return module_dim(dd, d, a.src) * module_dim(dd, d, a.tgt);
    return d.at(a.src) * d.at(a.tgt) * dd.at(a.src).alg.dim;
}

Matrix right_action_matrix(const FiniteDimAlgebra& A, int d, const Vec& a) {
    Matrix r = A.right_mult(a);
    Matrix m(d * A.dim, d * A.dim, A.field);
    for (int p = 0; p < d; ++p)
        for (int i = 0; i < A.dim; ++i)
            for (int j = 0; j < A.dim; ++j)
                m.at(p * A.dim + i, p * A.dim + j) = r.at(i, j);
    return m;
}

Matrix amatrix_unit(const FiniteDimAlgebra& A, int d, int p, int q, const Vec& a) {
    Matrix l = A.left_mult(a);
    Matrix m(d * A.dim, d * A.dim, A.field);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) m.at(p * A.dim + i, q * A.dim + j) = l.at(i, j);
    return m;
}

bool is_a_linear(const FiniteDimAlgebra& A, int d, const Matrix& m) {
    for (int b = 0; b < A.dim; ++b) {
        Matrix r = right_action_matrix(A, d, A.basis_vec(b));
        if (!(m * r == r * m)) return false;
    }
    return true;
}

Representation random_representation(const DecoratedQuiver& dd,
                                     const std::map<int, int>& d, unsigned seed,
                                     int spread) {
    require_doubled(dd);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(-spread, spread);
    Representation rep;
    rep.d = d;
    for (const Arrow& a : dd.quiver.arrows) {
        const auto& As = dd.at(a.src).alg;
        int ms = module_dim(dd, d, a.src), mt = module_dim(dd, d, a.tgt);
        if (dd.arrow_kind.at(a.id) == ArrowKind::TensorUnit) {
            Matrix m(mt, ms, dd.field);
            for (int i = 0; i < mt; ++i)
                for (int j = 0; j < ms; ++j)
                    m.at(i, j) = Scalar::of(pick(rng), dd.field);
            rep.rho.emplace(a.id, std::move(m));
        } else {
            int dmax = std::max(d.at(a.src), d.at(a.tgt));
            Matrix sq(dmax * As.dim, dmax * As.dim, dd.field);
            for (int p = 0; p < d.at(a.tgt); ++p)
                for (int q = 0; q < d.at(a.src); ++q) {
                    Vec entry(As.dim, Scalar::zero(dd.field));
                    for (int b = 0; b < As.dim; ++b)
                        entry[b] = Scalar::of(pick(rng), dd.field);
                    sq = sq + amatrix_unit(As, dmax, p, q, entry);
                }
            // amatrix_unit is square; crop to the actual shape
            Matrix m(mt, ms, dd.field);
            for (int i = 0; i < mt; ++i)
                for (int j = 0; j < ms; ++j) m.at(i, j) = sq.at(i, j);
            rep.rho.emplace(a.id, std::move(m));
        }
    }
    return rep;
}

std::map<int, Matrix> random_group_element(const DecoratedQuiver& dd,
                                           const std::map<int, int>& d,
                                           unsigned seed, int spread) {
    require_doubled(dd);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(-spread, spread);
    std::map<int, Matrix> g;
    for (int v : dd.quiver.vertices) {
        const auto& A = dd.at(v).alg;
        int dv = d.at(v);
        Matrix m(dv * A.dim, dv * A.dim, dd.field);
        for (int p = 0; p < dv; ++p)
            for (int q = 0; q < dv; ++q) {
                Vec entry(A.dim, Scalar::zero(dd.field));
                for (int b = 0; b < A.dim; ++b) entry[b] = Scalar::of(pick(rng), dd.field);
                m = m + amatrix_unit(A, dv, p, q, entry);
            }
        // nudge toward the identity until invertible
        while (!m.inverse())
            m = m + Matrix::identity(dv * A.dim, dd.field);
        g.emplace(v, std::move(m));
    }
    return g;
}

namespace {

/// Word acts left to right: slot contents by the right A-action, arrows by
/// their maps.
Matrix word_matrix(const DecoratedQuiver& dd, const Representation& rep,
                   const PathWord& w) {
    int v = w.source;
    const auto& As = dd.at(v).alg;
    Matrix m = right_action_matrix(As, rep.d.at(v), As.basis_vec(w.slots[0]));
    size_t slot = 1;
    for (int aid : w.arrows) {
        const Arrow& a = dd.quiver.arrow(aid);
        m = rep.rho.at(aid) * m;
        v = a.tgt;
        if (dd.arrow_kind.at(aid) == ArrowKind::TensorUnit) {
            const auto& At = dd.at(v).alg;
            m = right_action_matrix(At, rep.d.at(v), At.basis_vec(w.slots[slot++])) * m;
        }
    }
    return m;
}

}  // namespace

LieElement evaluate_relation(const DecoratedQuiver& dd, const Representation& rep,
                             TensorContext& ctx, const WordCombo& r) {
    require_doubled(dd);
    require_symmetric_forms(dd);
    LieElement out;
    for (int v : dd.quiver.vertices)
        out.blocks.emplace(v, Matrix(module_dim(dd, rep.d, v), module_dim(dd, rep.d, v),
                                     dd.field));
    for (const auto& [w, c] : r) {
        int t = ctx.target(w);
        if (t != w.source)
            throw Error("BadRelation", "off-diagonal relation word");
        out.blocks.at(t) = out.blocks.at(t) + scaled(word_matrix(dd, rep, w), c);
    }
    for (int v : dd.quiver.vertices)
        if (!is_a_linear(dd.at(v).alg, rep.d.at(v), out.blocks.at(v)))
            throw Error("NotALinearResult", "block at vertex " + std::to_string(v));
    return out;
}

Vec phi_element(const FiniteDimAlgebra& A, const FrobeniusForm& f,
                const Matrix& varphi) {
    auto dual = frobenius_dual_basis(A, f);
    Vec z(A.dim, Scalar::zero(A.field));
    for (int i = 0; i < A.dim; ++i) {
        Vec img = varphi.apply(A.basis_vec(i));
        Vec prod = A.multiply(img, dual[i]);
        for (int b = 0; b < A.dim; ++b) z[b] += prod[b];
    }
    if (trace(varphi) != A.eval(f, z))
        throw Error("EngineError", "transported trace identity failed");
    return z;
}

Matrix phi_endo(const FiniteDimAlgebra& A, const FrobeniusForm& f,
                const Matrix& varphi) {
    return A.left_mult(phi_element(A, f, varphi));
}

Matrix mat_phi(const FiniteDimAlgebra& A, const FrobeniusForm& f, int d,
               const Matrix& varphi) {
    Matrix out(d * A.dim, d * A.dim, A.field);
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
            Matrix block(A.dim, A.dim, A.field);
            for (int i = 0; i < A.dim; ++i)
                for (int j = 0; j < A.dim; ++j)
                    block.at(i, j) = varphi.at(p * A.dim + i, q * A.dim + j);
            out = out + amatrix_unit(A, d, p, q, phi_element(A, f, block));
        }
    return out;
}

Scalar lambda_tr(const FiniteDimAlgebra& A, const FrobeniusForm& f, int d,
                 const Matrix& m) {
    return A.eval(f, a_trace(A, d, m));
}

LieElement moment_map_via_pairing(const DecoratedQuiver& dd,
                                  const Representation& rep) {
    require_doubled(dd);
    require_symmetric_forms(dd);
    LieElement out;
    for (int v : dd.quiver.vertices) {
        const auto& A = dd.at(v).alg;
        const FrobeniusForm& f = dd.at(v).form;
        int dv = rep.d.at(v);
        int n = dv * dv * A.dim;
        // basis X_{p,q,b} of the A-matrices at v
        std::vector<Matrix> basis;
        basis.reserve(n);
        for (int p = 0; p < dv; ++p)
            for (int q = 0; q < dv; ++q)
                for (int b = 0; b < A.dim; ++b)
                    basis.push_back(amatrix_unit(A, dv, p, q, A.basis_vec(b)));

        Vec rhs(n, Scalar::zero(dd.field));
        for (int k = 0; k < n; ++k) {
            Scalar val = Scalar::zero(dd.field);
            for (const Arrow& a : dd.quiver.arrows) {
                if (!dd.is_positive(a.id)) continue;
                if (a.src != v && a.tgt != v) continue;
                const Matrix& pa = rep.rho.at(a.id);
                const Matrix& pd = rep.rho.at(dd.dual_of.at(a.id));
                Matrix psi(pa.rows(), pa.cols(), dd.field);
                if (a.tgt == v) psi = psi + basis[k] * pa;
                if (a.src == v) psi = psi - pa * basis[k];
                Matrix prod = pd * psi;  // endo of V_{src}
                if (dd.arrow_kind.at(a.id) == ArrowKind::TensorUnit)
                    val -= trace(prod);
                else
                    val -= lambda_tr(dd.at(a.src).alg, dd.at(a.src).form,
                                     rep.d.at(a.src), prod);
            }
            rhs[k] = val;
        }

        Matrix gram(n, n, dd.field);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                gram.at(i, j) = lambda_tr(A, f, dv, basis[i] * basis[j]);
        auto y = gram.solve(rhs);
        if (!y) throw Error("DegenerateForm", "trace pairing not invertible");
        Matrix Y(dv * A.dim, dv * A.dim, dd.field);
        for (int k = 0; k < n; ++k) Y = Y + scaled(basis[k], (*y)[k]);
        out.blocks.emplace(v, std::move(Y));
    }
    return out;
}

Representation act(const DecoratedQuiver& dd, const std::map<int, Matrix>& g,
                   const Representation& rep) {
    require_doubled(dd);
    std::map<int, Matrix> ginv;
    for (const auto& [v, m] : g) {
        if (!is_a_linear(dd.at(v).alg, rep.d.at(v), m))
            throw Error("NotALinearResult", "group element at vertex " + std::to_string(v));
        auto inv = m.inverse();
        if (!inv) throw Error("NotInvertible", "group element at vertex " + std::to_string(v));
        ginv.emplace(v, std::move(*inv));
    }
    Representation out;
    out.d = rep.d;
    for (const Arrow& a : dd.quiver.arrows)
        out.rho.emplace(a.id, g.at(a.tgt) * rep.rho.at(a.id) * ginv.at(a.src));
    return out;
}

}  // namespace depa
