#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "depa/algebra.hpp"

using namespace depa;

namespace {

Vec qv(std::initializer_list<int> xs) {
    Vec v;
    for (int x : xs) v.push_back(Scalar::rational(x));
    return v;
}

// independent check of the dual-basis defining property
void check_dual(const FiniteDimAlgebra& A, const FrobeniusForm& f) {
    auto duals = frobenius_dual_basis(A, f);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            Scalar v = A.eval(f, A.multiply(A.basis_vec(i), duals[j]));
            CHECK(v == (i == j ? Scalar::one(A.field) : Scalar::zero(A.field)));
        }
}

}  // namespace

TEST_CASE("truncated_poly(2) is S with dual basis {x,1}") {
    auto S = standard_algebra("truncated_poly", 0, 2);
    CHECK(S.algebra.dim == 2);
    CHECK(S.algebra.multiply(qv({0, 1}), qv({0, 1})) == qv({0, 0}));  // x*x = 0
    CHECK(S.form.lambda == qv({0, 1}));
    auto duals = frobenius_dual_basis(S.algebra, S.form);
    CHECK(duals[0] == qv({0, 1}));  // dual of 1 is x
    CHECK(duals[1] == qv({1, 0}));  // dual of x is 1
    check_dual(S.algebra, S.form);
}

TEST_CASE("F2[x]/(x^2) with lambda2 has duals {x, 1+x}") {
    auto S = standard_algebra("truncated_poly", 2, 2);
    FrobeniusForm l2{{Scalar::mod(1, 2), Scalar::mod(1, 2)}};
    auto duals = frobenius_dual_basis(S.algebra, l2);
    // matches c2 = 1 (x) x + x (x) (1+x)
    CHECK(duals[0] == Vec{Scalar::mod(0, 2), Scalar::mod(1, 2)});
    CHECK(duals[1] == Vec{Scalar::mod(1, 2), Scalar::mod(1, 2)});
    // the two forms are related by the unit 1+x
    auto l1 = change_form(S.algebra, l2, {Scalar::mod(1, 2), Scalar::mod(1, 2)});
    CHECK(l1.lambda == Vec{Scalar::mod(0, 2), Scalar::mod(1, 2)});
}

TEST_CASE("ground field and matrix_algebra(1)") {
    auto k = standard_algebra("ground", 0);
    CHECK(k.algebra.dim == 1);
    check_dual(k.algebra, k.form);
    CHECK(standard_algebra("matrix_algebra", 0, 1).algebra.dim == 1);
}

TEST_CASE("non-associative structure constants are rejected with a witness") {
    // dim 3, e1*e1 = e2, e1*e2 = 1, e2*e1 = 0: (e1 e1) e1 != e1 (e1 e1)
    std::vector<std::vector<Vec>> sc(3, std::vector<Vec>(3, qv({0, 0, 0})));
    for (int i = 0; i < 3; ++i) {
        sc[0][i][i] = Scalar::rational(1);
        sc[i][0][i] = Scalar::rational(1);
    }
    sc[1][1] = qv({0, 0, 1});
    sc[1][2] = qv({1, 0, 0});
    try {
        make_algebra(3, sc, qv({1, 0, 0}));
        FAIL("expected NonAssociative");
    } catch (const Error& e) {
        CHECK(e.kind == "NonAssociative");
    }
}

TEST_CASE("bad unit rejected") {
    std::vector<std::vector<Vec>> sc(2, std::vector<Vec>(2, qv({0, 0})));
    sc[0][0] = qv({1, 0});
    try {
        make_algebra(2, sc, qv({1, 0}));
        FAIL("expected BadUnit");
    } catch (const Error& e) {
        CHECK(e.kind == "BadUnit");
    }
}

TEST_CASE("z_algebra(4) structure and symmetric form") {
    auto Z = standard_algebra("z_algebra", 0, 4);
    CHECK(Z.algebra.dim == 4);
    // basis 1, x1, x2, w
    CHECK(Z.algebra.multiply(qv({0, 1, 0, 0}), qv({0, 1, 0, 0})) == qv({0, 0, 0, 1}));
    CHECK(Z.algebra.multiply(qv({0, 1, 0, 0}), qv({0, 0, 1, 0})) == qv({0, 0, 0, 0}));
    CHECK(Z.algebra.multiply(qv({0, 1, 0, 0}), qv({0, 0, 0, 1})) == qv({0, 0, 0, 0}));
    auto rep = validate_frobenius(Z.algebra, Z.form);
    CHECK(rep.nondegenerate);
    CHECK(rep.symmetric);
    check_dual(Z.algebra, Z.form);
}

TEST_CASE("matrix algebra forms") {
    auto M2 = standard_algebra("matrix_algebra", 0, 2);
    auto rep1 = validate_frobenius(M2.algebra, M2.form);
    CHECK(rep1.nondegenerate);
    CHECK(rep1.symmetric);
    auto rep2 = validate_frobenius(M2.algebra, M2.alt_forms.at("antidiagonal"));
    CHECK(rep2.nondegenerate);
    CHECK_FALSE(rep2.symmetric);
    REQUIRE(rep2.witness.has_value());
    check_dual(M2.algebra, M2.form);
    check_dual(M2.algebra, M2.alt_forms.at("antidiagonal"));
}

TEST_CASE("degenerate form detected") {
    auto S = standard_algebra("truncated_poly", 0, 2);
    FrobeniusForm bad{qv({1, 0})};  // lambda(s+tx)=s kills the ideal (x)
    auto rep = validate_frobenius(S.algebra, bad);
    CHECK_FALSE(rep.nondegenerate);
    CHECK_THROWS_AS(frobenius_dual_basis(S.algebra, bad), Error);
}

TEST_CASE("change_form by a unit preserves nondegeneracy") {
    auto S = standard_algebra("truncated_poly", 0, 2);
    auto mu = change_form(S.algebra, S.form, qv({1, 1}));
    CHECK(mu.lambda == qv({1, 1}));
    CHECK(validate_frobenius(S.algebra, mu).nondegenerate);
    try {
        change_form(S.algebra, S.form, qv({0, 1}));  // x is not a unit
        FAIL("expected NotAUnit");
    } catch (const Error& e) {
        CHECK(e.kind == "NotAUnit");
    }
}

TEST_CASE("exterior forms: symmetric exactly in odd rank") {
    auto E3 = standard_algebra("exterior", 0, 3);
    auto rep3 = validate_frobenius(E3.algebra, E3.form);
    CHECK(rep3.nondegenerate);
    CHECK(rep3.symmetric);
    // rank 2 top form is graded-antisymmetric, not symmetric
    auto E2 = standard_algebra("exterior", 0, 2);
    auto rep2 = validate_frobenius(E2.algebra, E2.form);
    CHECK(rep2.nondegenerate);
    CHECK_FALSE(rep2.symmetric);
}

TEST_CASE("clifford squares to the form") {
    Matrix B = Matrix::identity(2, 0);
    auto Cl = standard_algebra("clifford", 0, 0, &B);
    CHECK(Cl.algebra.dim == 4);
    // e1*e1 = 1, e1e2 = -e2e1
    Vec e1 = Cl.algebra.basis_vec(1), e2 = Cl.algebra.basis_vec(2);
    CHECK(Cl.algebra.multiply(e1, e1) == Cl.algebra.unit);
    Vec ab = Cl.algebra.multiply(e1, e2), ba = Cl.algebra.multiply(e2, e1);
    for (int i = 0; i < 4; ++i) CHECK(ab[i] == -ba[i]);
}

TEST_CASE("group_like idempotents over GF(5), n=4") {
    auto G = standard_algebra("group_like", 5, 4);
    // x^n = 1
    Vec x = G.algebra.basis_vec(1), acc = G.algebra.unit;
    for (int i = 0; i < 4; ++i) acc = G.algebra.multiply(acc, x);
    CHECK(acc == G.algebra.unit);
    auto eps = group_like_idempotents(5, 4);
    Vec sum(4, Scalar::zero(5));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Vec prod = G.algebra.multiply(eps[i], eps[j]);
            CHECK(prod == (i == j ? eps[i] : Vec(4, Scalar::zero(5))));
        }
        for (int c = 0; c < 4; ++c) sum[c] += eps[i][c];
    }
    CHECK(sum == G.algebra.unit);
    CHECK_THROWS_AS(group_like_idempotents(0, 3), Error);
}

TEST_CASE("product algebra") {
    auto S = standard_algebra("truncated_poly", 0, 2);
    auto P = standard_algebra("product", 0, 0, nullptr, &S, &S);
    CHECK(P.algebra.dim == 4);
    auto rep = validate_frobenius(P.algebra, P.form);
    CHECK(rep.nondegenerate);
    CHECK(rep.symmetric);
    check_dual(P.algebra, P.form);
}

TEST_CASE("sum_of_ground") {
    auto K2 = standard_algebra("sum_of_ground", 0, 2);
    CHECK(K2.algebra.multiply(K2.algebra.basis_vec(0), K2.algebra.basis_vec(1)) ==
          qv({0, 0}));
    auto rep = validate_frobenius(K2.algebra, K2.form);
    CHECK(rep.nondegenerate);
    CHECK(rep.symmetric);
}
