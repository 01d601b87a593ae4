#include "depa/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace depa {

namespace {

Vec zero_vec(int dim, long long field) { return Vec(dim, Scalar::zero(field)); }

std::string triple_str(int i, int j, int k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

}  // namespace

Vec FiniteDimAlgebra::multiply(const Vec& u, const Vec& v) const {
    if (static_cast<int>(u.size()) != dim || static_cast<int>(v.size()) != dim)
        throw Error("DimensionMismatch", "multiply operands");
    Vec out = zero_vec(dim, field);
    for (int i = 0; i < dim; ++i) {
        if (u[i].is_zero()) continue;
        for (int j = 0; j < dim; ++j) {
            if (v[j].is_zero()) continue;
            Scalar c = u[i] * v[j];
            const Vec& prod = sc[i][j];
            for (int k = 0; k < dim; ++k)
                if (!prod[k].is_zero()) out[k] += c * prod[k];
        }
    }
    return out;
}

Matrix FiniteDimAlgebra::left_mult(const Vec& u) const {
    Matrix m(dim, dim, field);
    for (int j = 0; j < dim; ++j) {
        Vec col = multiply(u, basis_vec(j));
        for (int k = 0; k < dim; ++k) m.at(k, j) = col[k];
    }
    return m;
}

Matrix FiniteDimAlgebra::right_mult(const Vec& u) const {
    Matrix m(dim, dim, field);
    for (int j = 0; j < dim; ++j) {
        Vec col = multiply(basis_vec(j), u);
        for (int k = 0; k < dim; ++k) m.at(k, j) = col[k];
    }
    return m;
}

bool FiniteDimAlgebra::is_unit_element(const Vec& u) const {
    return left_mult(u).rank() == dim;
}

Vec FiniteDimAlgebra::basis_vec(int i) const {
    Vec v = zero_vec(dim, field);
    v[i] = Scalar::one(field);
    return v;
}

int FiniteDimAlgebra::max_xdeg2() const {
    int m = 0;
    for (int d : xdeg2) m = std::max(m, d);
    return m;
}

Scalar FiniteDimAlgebra::eval(const FrobeniusForm& f, const Vec& v) const {
    Scalar out = Scalar::zero(field);
    for (int i = 0; i < dim; ++i)
        if (!v[i].is_zero()) out += f.lambda[i] * v[i];
    return out;
}

FiniteDimAlgebra make_algebra(int dim, std::vector<std::vector<Vec>> sc, Vec unit,
                              std::vector<std::string> labels,
                              std::vector<int> xdeg2, std::string name) {
    if (dim <= 0) throw Error("UnsupportedParams", "dim must be positive");
    FiniteDimAlgebra A;
    A.dim = dim;
    A.field = unit.empty() ? 0 : unit[0].field();
    A.sc = std::move(sc);
    A.unit = std::move(unit);
    A.labels = std::move(labels);
    A.xdeg2 = std::move(xdeg2);
    A.name = std::move(name);
    if (static_cast<int>(A.sc.size()) != dim) throw Error("UnsupportedParams", "sc shape");
    for (auto& row : A.sc) {
        if (static_cast<int>(row.size()) != dim) throw Error("UnsupportedParams", "sc shape");
        for (auto& v : row)
            if (static_cast<int>(v.size()) != dim) throw Error("UnsupportedParams", "sc shape");
    }

    for (int i = 0; i < dim; ++i) {
        Vec ei = A.basis_vec(i);
        if (A.multiply(A.unit, ei) != ei || A.multiply(ei, A.unit) != ei)
            throw Error("BadUnit", "1*e_" + std::to_string(i) + " != e_" + std::to_string(i));
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Vec eij = A.sc[i][j];
            for (int k = 0; k < dim; ++k) {
                Vec lhs = A.multiply(eij, A.basis_vec(k));
                Vec rhs = A.multiply(A.basis_vec(i), A.sc[j][k]);
                if (lhs != rhs)
                    throw Error("NonAssociative", "witness triple " + triple_str(i, j, k));
            }
        }
    if (!A.xdeg2.empty()) {
        if (static_cast<int>(A.xdeg2.size()) != dim)
            throw Error("NotGraded", "xdeg length mismatch");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k)
                    if (!A.sc[i][j][k].is_zero() && A.xdeg2[k] != A.xdeg2[i] + A.xdeg2[j])
                        throw Error("NotGraded", "witness pair (" + std::to_string(i) +
                                                     "," + std::to_string(j) + ")");
    }
    return A;
}

Matrix gram_matrix(const FiniteDimAlgebra& A, const FrobeniusForm& f) {
    Matrix g(A.dim, A.dim, A.field);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            g.at(i, j) = A.eval(f, A.sc[i][j]);
    return g;
}

std::vector<Vec> frobenius_dual_basis(const FiniteDimAlgebra& A, const FrobeniusForm& f) {
    Matrix g = gram_matrix(A, f);
    auto inv = g.inverse();
    if (!inv) throw Error("DegenerateForm", "Gram matrix singular");
    // f_j = sum_k (G^-1)_{kj} e_k gives lambda(e_i f_j) = delta_ij
    std::vector<Vec> duals(A.dim);
    for (int j = 0; j < A.dim; ++j) {
        Vec v(A.dim, Scalar::zero(A.field));
        for (int k = 0; k < A.dim; ++k) v[k] = inv->at(k, j);
        duals[j] = std::move(v);
    }
    return duals;
}

FrobeniusReport validate_frobenius(const FiniteDimAlgebra& A, const FrobeniusForm& f) {
    FrobeniusReport rep;
    Matrix g = gram_matrix(A, f);
    rep.nondegenerate = g.rank() == A.dim;
    rep.symmetric = true;
    for (int i = 0; i < A.dim && rep.symmetric; ++i)
        for (int j = 0; j < A.dim; ++j)
            if (g.at(i, j) != g.at(j, i)) {
                rep.symmetric = false;
                rep.witness = {i, j};
                break;
            }
    return rep;
}

FrobeniusForm change_form(const FiniteDimAlgebra& A, const FrobeniusForm& f, const Vec& u) {
    if (!A.is_unit_element(u)) throw Error("NotAUnit", "change_form element not invertible");
    FrobeniusForm out;
    out.lambda.resize(A.dim);
    for (int i = 0; i < A.dim; ++i)
        out.lambda[i] = A.eval(f, A.multiply(u, A.basis_vec(i)));
    return out;
}

namespace {

StandardAlgebra finish(FiniteDimAlgebra alg, Vec lambda) {
    StandardAlgebra out;
    out.algebra = std::move(alg);
    out.form.lambda = std::move(lambda);
    return out;
}

StandardAlgebra make_ground(long long field) {
    std::vector<std::vector<Vec>> sc{{{Scalar::one(field)}}};
    auto A = make_algebra(1, sc, {Scalar::one(field)}, {"1"}, {}, "k");
    return finish(std::move(A), {Scalar::one(field)});
}

StandardAlgebra make_sum_of_ground(long long field, int n) {
    if (n < 1) throw Error("UnsupportedParams", "sum_of_ground needs n >= 1");
    std::vector<std::vector<Vec>> sc(n, std::vector<Vec>(n, zero_vec(n, field)));
    Vec unit = zero_vec(n, field);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        sc[i][i][i] = Scalar::one(field);
        unit[i] = Scalar::one(field);
        labels.push_back("e" + std::to_string(i + 1));
    }
    Vec lam(n, Scalar::one(field));
    auto A = make_algebra(n, sc, unit, labels, {}, "k^" + std::to_string(n));
    return finish(std::move(A), lam);
}

StandardAlgebra make_truncated_poly(long long field, int n) {
    if (n < 1) throw Error("UnsupportedParams", "truncated_poly needs n >= 1");
    std::vector<std::vector<Vec>> sc(n, std::vector<Vec>(n, zero_vec(n, field)));
    std::vector<std::string> labels;
    std::vector<int> xdeg2;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (i + j < n) sc[i][j][i + j] = Scalar::one(field);
        labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
        xdeg2.push_back(2 * i);
    }
    Vec unit = zero_vec(n, field);
    unit[0] = Scalar::one(field);
    Vec lam = zero_vec(n, field);
    lam[n - 1] = Scalar::one(field);
    auto A = make_algebra(n, sc, unit, labels, xdeg2, "k[x]/x^" + std::to_string(n));
    return finish(std::move(A), lam);
}

// k + V + k*w with v_i v_j = M_ij w; Z_n is the identity-form case.
StandardAlgebra make_bilinear(long long field, const Matrix& M, const std::string& name) {
    int m = M.rows();
    if (M.cols() != m) throw Error("UnsupportedParams", "bilinear form matrix not square");
    int dim = m + 2;
    std::vector<std::vector<Vec>> sc(dim, std::vector<Vec>(dim, zero_vec(dim, field)));
    std::vector<std::string> labels{"1"};
    std::vector<int> xdeg2{0};
    for (int i = 0; i < m; ++i) {
        labels.push_back("x" + std::to_string(i + 1));
        xdeg2.push_back(2);
    }
    labels.push_back("w");
    xdeg2.push_back(4);
    for (int i = 0; i < dim; ++i) {
        sc[0][i][i] = Scalar::one(field);
        sc[i][0][i] = Scalar::one(field);
    }
    sc[0][0] = zero_vec(dim, field);
    sc[0][0][0] = Scalar::one(field);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) sc[i + 1][j + 1][dim - 1] = M.at(i, j);
    Vec unit = zero_vec(dim, field);
    unit[0] = Scalar::one(field);
    Vec lam = zero_vec(dim, field);
    lam[dim - 1] = Scalar::one(field);
    auto A = make_algebra(dim, sc, unit, labels, xdeg2, name);
    return finish(std::move(A), lam);
}

StandardAlgebra make_z_algebra(long long field, int n) {
    if (n < 2) throw Error("UnsupportedParams", "z_algebra needs n >= 2");
    return make_bilinear(field, Matrix::identity(n - 2, field), "Z_" + std::to_string(n));
}

// Clifford algebra of a symmetric bilinear form B: e_i e_j + e_j e_i = 2 B_ij.
StandardAlgebra make_clifford(long long field, const Matrix& B, bool graded_exterior) {
    int n = B.rows();
    if (B.cols() != n) throw Error("UnsupportedParams", "clifford matrix not square");
    int dim = 1 << n;
    // product of basis monomials by moving generators into sorted position
    auto mono_mul = [&](int S, int T, long long /*f*/) {
        // combination over subset monomials, start with concatenated word
        std::vector<std::pair<std::vector<int>, Scalar>> terms;
        std::vector<int> word;
        for (int i = 0; i < n; ++i) if (S & (1 << i)) word.push_back(i);
        for (int i = 0; i < n; ++i) if (T & (1 << i)) word.push_back(i);
        terms.push_back({word, Scalar::one(field)});
        Vec out = zero_vec(dim, field);
        Scalar two = Scalar::of(2, field);
        while (!terms.empty()) {
            auto [w, c] = terms.back();
            terms.pop_back();
            bool reduced = false;
            for (size_t i = 0; i + 1 < w.size(); ++i) {
                if (w[i] == w[i + 1]) {
                    std::vector<int> rest(w.begin(), w.begin() + i);
                    rest.insert(rest.end(), w.begin() + i + 2, w.end());
                    Scalar q = c * B.at(w[i], w[i]);
                    if (!q.is_zero()) terms.push_back({rest, q});
                    reduced = true;
                    break;
                }
                if (w[i] > w[i + 1]) {
                    std::vector<int> swapped = w;
                    std::swap(swapped[i], swapped[i + 1]);
                    terms.push_back({swapped, -c});
                    Scalar q = c * two * B.at(w[i], w[i + 1]);
                    if (!q.is_zero()) {
                        std::vector<int> rest(w.begin(), w.begin() + i);
                        rest.insert(rest.end(), w.begin() + i + 2, w.end());
                        terms.push_back({rest, q});
                    }
                    reduced = true;
                    break;
                }
            }
            if (reduced) continue;
            int mask = 0;
            for (int g : w) mask |= 1 << g;
            out[mask] += c;
        }
        return out;
    };
    std::vector<std::vector<Vec>> sc(dim, std::vector<Vec>(dim));
    for (int S = 0; S < dim; ++S)
        for (int T = 0; T < dim; ++T) sc[S][T] = mono_mul(S, T, field);
    Vec unit = zero_vec(dim, field);
    unit[0] = Scalar::one(field);
    std::vector<std::string> labels;
    std::vector<int> xdeg2;
    for (int S = 0; S < dim; ++S) {
        std::string l = S == 0 ? "1" : "";
        for (int i = 0; i < n; ++i)
            if (S & (1 << i)) l += "e" + std::to_string(i + 1);
        labels.push_back(l);
        xdeg2.push_back(2 * __builtin_popcount(S));
    }
    Vec lam = zero_vec(dim, field);
    lam[dim - 1] = Scalar::one(field);  // top monomial coefficient
    auto A = make_algebra(dim, sc, unit, labels,
                          graded_exterior ? xdeg2 : std::vector<int>{},
                          graded_exterior ? "Ext_" + std::to_string(n)
                                          : "Cl_" + std::to_string(n));
    return finish(std::move(A), lam);
}

StandardAlgebra make_matrix_algebra(long long field, int n) {
    if (n < 1) throw Error("UnsupportedParams", "matrix_algebra needs n >= 1");
    int dim = n * n;
    auto idx = [n](int i, int j) { return i * n + j; };
    std::vector<std::vector<Vec>> sc(dim, std::vector<Vec>(dim, zero_vec(dim, field)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (j == k) sc[idx(i, j)][idx(k, l)][idx(i, l)] = Scalar::one(field);
    Vec unit = zero_vec(dim, field);
    std::vector<std::string> labels(dim);
    for (int i = 0; i < n; ++i) unit[idx(i, i)] = Scalar::one(field);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            labels[idx(i, j)] = "E" + std::to_string(i + 1) + std::to_string(j + 1);
    Vec trace = zero_vec(dim, field);
    Vec anti = zero_vec(dim, field);
    for (int i = 0; i < n; ++i) {
        trace[idx(i, i)] = Scalar::one(field);
        anti[idx(i, n - 1 - i)] = Scalar::one(field);
    }
    auto A = make_algebra(dim, sc, unit, labels, {}, "Mat_" + std::to_string(n));
    auto out = finish(std::move(A), trace);
    out.alt_forms["antidiagonal"] = FrobeniusForm{anti};
    return out;
}

StandardAlgebra make_group_like(long long field, int n) {
    if (n < 1) throw Error("UnsupportedParams", "group_like needs n >= 1");
    std::vector<std::vector<Vec>> sc(n, std::vector<Vec>(n, zero_vec(n, field)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sc[i][j][(i + j) % n] = Scalar::one(field);
    Vec unit = zero_vec(n, field);
    unit[0] = Scalar::one(field);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g^" + std::to_string(i)));
    Vec lam = zero_vec(n, field);
    lam[n - 1] = Scalar::one(field);
    auto A = make_algebra(n, sc, unit, labels, {}, "k[Z/" + std::to_string(n) + "]");
    return finish(std::move(A), lam);
}

StandardAlgebra make_product(const StandardAlgebra& a, const StandardAlgebra& b) {
    const auto& A = a.algebra;
    const auto& B = b.algebra;
    if (A.field != B.field) throw Error("FieldMismatch", "product over different fields");
    int dim = A.dim + B.dim;
    long long field = A.field;
    std::vector<std::vector<Vec>> sc(dim, std::vector<Vec>(dim, zero_vec(dim, field)));
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k) sc[i][j][k] = A.sc[i][j][k];
    for (int i = 0; i < B.dim; ++i)
        for (int j = 0; j < B.dim; ++j)
            for (int k = 0; k < B.dim; ++k) sc[A.dim + i][A.dim + j][A.dim + k] = B.sc[i][j][k];
    Vec unit = zero_vec(dim, field);
    Vec lam = zero_vec(dim, field);
    std::vector<std::string> labels;
    for (int i = 0; i < A.dim; ++i) {
        unit[i] = A.unit[i];
        lam[i] = a.form.lambda[i];
        labels.push_back("l." + (A.labels.empty() ? std::to_string(i) : A.labels[i]));
    }
    for (int i = 0; i < B.dim; ++i) {
        unit[A.dim + i] = B.unit[i];
        lam[A.dim + i] = b.form.lambda[i];
        labels.push_back("r." + (B.labels.empty() ? std::to_string(i) : B.labels[i]));
    }
    std::vector<int> xdeg2;
    if (A.graded() && B.graded()) {
        xdeg2 = A.xdeg2;
        xdeg2.insert(xdeg2.end(), B.xdeg2.begin(), B.xdeg2.end());
    }
    auto alg = make_algebra(dim, sc, unit, labels, xdeg2, A.name + "x" + B.name);
    return finish(std::move(alg), lam);
}

}  // namespace

std::vector<Vec> group_like_idempotents(long long field, int n) {
    // primitive n-th root of unity: 1 (n=1), -1 (n=2), else search GF(p)
    Scalar zeta = Scalar::one(field);
    if (n == 2) {
        zeta = -Scalar::one(field);
    } else if (n > 2) {
        if (field == 0)
            throw Error("FieldLacksRoots", "rationals lack primitive roots for n > 2");
        if ((field - 1) % n != 0)
            throw Error("FieldLacksRoots", "n does not divide p-1");
        bool found = false;
        for (long long c = 2; c < field && !found; ++c) {
            Scalar z = Scalar::mod(c, field), acc = Scalar::one(field);
            bool primitive = true;
            for (int k = 1; k < n; ++k) {
                acc *= z;
                if (acc.is_one()) { primitive = false; break; }
            }
            if (primitive && (acc * z).is_one()) {
                zeta = z;
                found = true;
            }
        }
        if (!found) throw Error("FieldLacksRoots", "no primitive root found");
    }
    if (field != 0 && n % field == 0)
        throw Error("FieldLacksRoots", "n not invertible in the field");
    Scalar ninv = Scalar::of(n, field).inv();
    std::vector<Vec> eps(n, Vec(n, Scalar::zero(field)));
    Scalar zinv = zeta.inv();
    for (int j = 0; j < n; ++j) {
        Scalar step = Scalar::one(field);  // zeta^{-j}
        for (int t = 0; t < j; ++t) step *= zinv;
        Scalar w = Scalar::one(field);  // zeta^{-ij}
        for (int i = 0; i < n; ++i) {
            eps[j][i] = ninv * w;
            w *= step;
        }
    }
    return eps;
}

StandardAlgebra standard_algebra(const std::string& kind, long long field, int n,
                                 const Matrix* M, const StandardAlgebra* a,
                                 const StandardAlgebra* b) {
    if (kind == "ground") return make_ground(field);
    if (kind == "sum_of_ground") return make_sum_of_ground(field, n);
    if (kind == "truncated_poly") return make_truncated_poly(field, n);
    if (kind == "z_algebra") return make_z_algebra(field, n);
    if (kind == "bilinear_form_algebra") {
        if (!M) throw Error("UnsupportedParams", "bilinear_form_algebra needs a matrix");
        return make_bilinear(field, *M, "A(V," + std::to_string(M->rows()) + ")");
    }
    if (kind == "clifford") {
        if (!M) throw Error("UnsupportedParams", "clifford needs a matrix");
        return make_clifford(field, *M, false);
    }
    if (kind == "exterior") return make_clifford(field, Matrix(n, n, field), true);
    if (kind == "matrix_algebra") return make_matrix_algebra(field, n);
    if (kind == "group_like") return make_group_like(field, n);
    if (kind == "product") {
        if (!a || !b) throw Error("UnsupportedParams", "product needs two algebras");
        return make_product(*a, *b);
    }
    throw Error("UnsupportedParams", "unknown algebra kind '" + kind + "'");
}

}  // namespace depa
