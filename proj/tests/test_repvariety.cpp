#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "depa/repvariety.hpp"

using namespace depa;

namespace {

DecoratedQuiver ident_a2(const StandardAlgebra& A) {
    Quiver q;
    q.vertices = {1, 2};
    q.arrows = {{1, 1, 2}};
    auto dec = std::make_shared<DecAlgebra>(DecAlgebra{A.algebra, A.form});
    return build_decorated_quiver(q, {{1, dec}, {2, dec}},
                                  {{1, ArrowKind::Identification}});
}

void check_moment_matches_evaluation(const DecoratedQuiver& dq, int seeds) {
    auto dd = double_quiver(dq);
    TensorContext ctx(dd);
    WordCombo r = relation_element(ctx, SignConvention::Signed);
    for (int d1 = 1; d1 <= 2; ++d1)
        for (int d2 = 1; d2 <= 2; ++d2) {
            std::map<int, int> d{{1, d1}, {2, d2}};
            for (int seed = 0; seed < seeds; ++seed) {
                auto rep = random_representation(dd, d, static_cast<unsigned>(seed));
                auto ev = evaluate_relation(dd, rep, ctx, r);
                auto mu = moment_map_via_pairing(dd, rep);
                CHECK(ev == mu);
            }
        }
}

Matrix random_matrix(int rows, int cols, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(-3, 3);
    Matrix m(rows, cols, 0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = Scalar::rational(pick(rng));
    return m;
}

Matrix random_a_linear(const FiniteDimAlgebra& A, int d, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(-3, 3);
    Matrix m(d * A.dim, d * A.dim, A.field);
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
            Vec entry(A.dim, Scalar::zero(A.field));
            for (int b = 0; b < A.dim; ++b) entry[b] = Scalar::rational(pick(rng));
            m = m + amatrix_unit(A, d, p, q, entry);
        }
    return m;
}

Scalar mtrace(const Matrix& m) {
    Scalar t = Scalar::zero(m.field());
    for (int i = 0; i < m.rows(); ++i) t += m.at(i, i);
    return t;
}

}  // namespace

TEST_CASE("free parameter counts") {
    auto dq = b_family(2, 0);
    std::map<int, int> d{{1, 1}, {2, 1}};
    // the k-linear maps k -> S carry two free scalars
    CHECK(hom_space_dim(dq, d, dq.quiver.arrows[0].id) == 2);
    auto dq3 = b_family(3, 0);
    std::map<int, int> d3{{1, 1}, {2, 1}, {3, 1}};
    CHECK(hom_space_dim(dq3, d3, dq3.quiver.arrows[1].id) == 2);
    std::map<int, int> d3b{{1, 2}, {2, 2}, {3, 2}};
    CHECK(hom_space_dim(dq3, d3b, dq3.quiver.arrows[0].id) == 8);
    CHECK(hom_space_dim(dq3, d3b, dq3.quiver.arrows[1].id) == 8);
}

TEST_CASE("evaluation on the constant-k A_2 quiver is the commutator pair") {
    auto dd = double_quiver(path_quiver_constant_k(2, 0));
    TensorContext ctx(dd);
    WordCombo r = relation_element(ctx, SignConvention::Signed);
    int aid = 0;
    for (const auto& a : dd.quiver.arrows)
        if (dd.is_positive(a.id)) aid = a.id;
    Representation rep;
    rep.d = {{1, 1}, {2, 1}};
    Matrix ma(1, 1, 0), mb(1, 1, 0);
    ma.at(0, 0) = Scalar::rational(2);
    mb.at(0, 0) = Scalar::rational(3);
    rep.rho.emplace(aid, ma);
    rep.rho.emplace(dd.dual_of.at(aid), mb);
    auto ev = evaluate_relation(dd, rep, ctx, r);
    CHECK(ev.blocks.at(1).at(0, 0) == Scalar::rational(6));
    CHECK(ev.blocks.at(2).at(0, 0) == Scalar::rational(-6));
    CHECK(moment_map_via_pairing(dd, rep) == ev);
}

TEST_CASE("moment map equals relation evaluation") {
    SUBCASE("constant-k A_2") {
        check_moment_matches_evaluation(path_quiver_constant_k(2, 0), 20);
    }
    SUBCASE("identification arrow on S") {
        check_moment_matches_evaluation(ident_a2(standard_algebra("truncated_poly", 0, 2)), 20);
    }
    SUBCASE("tensor arrow S to k") {
        check_moment_matches_evaluation(
            a2_decorated(standard_algebra("truncated_poly", 0, 2),
                         standard_algebra("ground", 0)),
            20);
    }
    SUBCASE("tensor arrow S' to k") {
        check_moment_matches_evaluation(
            a2_decorated(standard_algebra("truncated_poly", 0, 3),
                         standard_algebra("ground", 0)),
            20);
    }
    SUBCASE("tensor arrow Z_4 to k") {
        check_moment_matches_evaluation(
            a2_decorated(standard_algebra("z_algebra", 0, 4),
                         standard_algebra("ground", 0)),
            20);
    }
}

TEST_CASE("zero sampling range gives the zero representation and zero moment") {
    auto dd = double_quiver(b_family(2, 0));
    std::map<int, int> d{{1, 2}, {2, 2}};
    auto rep = random_representation(dd, d, 7, 0);
    for (const auto& [id, m] : rep.rho)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) CHECK(m.at(i, j).is_zero());
    auto mu = moment_map_via_pairing(dd, rep);
    for (const auto& [v, m] : mu.blocks) CHECK(m == Matrix(m.rows(), m.cols(), 0));
    // determinism
    auto rep2 = random_representation(dd, d, 11);
    auto rep3 = random_representation(dd, d, 11);
    CHECK(rep2.rho == rep3.rho);
}

TEST_CASE("transported endomorphisms") {
    auto S = standard_algebra("truncated_poly", 0, 2);
    auto S3 = standard_algebra("truncated_poly", 0, 3);
    auto Z4 = standard_algebra("z_algebra", 0, 4);

    SUBCASE("identity on S transports to multiplication by 2x") {
        Vec z = phi_element(S.algebra, S.form, Matrix::identity(2, 0));
        CHECK(z[0] == Scalar::rational(0));
        CHECK(z[1] == Scalar::rational(2));
    }
    SUBCASE("multiplication by x on S' transports to zero") {
        Vec x(3, Scalar::zero(0));
        x[1] = Scalar::rational(1);
        Vec z = phi_element(S3.algebra, S3.form, S3.algebra.left_mult(x));
        for (const auto& c : z) CHECK(c.is_zero());
    }
    SUBCASE("trace of phi against right multiplications, 50 random phi") {
        std::mt19937 rng(5);
        for (const auto* A : {&S, &S3, &Z4}) {
            const auto& alg = A->algebra;
            for (int t = 0; t < 50; ++t) {
                Matrix phi = random_matrix(alg.dim, alg.dim, rng);
                Vec z = phi_element(alg, A->form, phi);
                CHECK(is_a_linear(alg, 1, alg.left_mult(z)));
                for (int b = 0; b < alg.dim; ++b) {
                    Scalar lhs = mtrace(phi * alg.left_mult(alg.basis_vec(b)));
                    Scalar rhs = alg.eval(A->form, alg.multiply(z, alg.basis_vec(b)));
                    CHECK(lhs == rhs);
                }
            }
        }
    }
    SUBCASE("k-trace against lambda-trace through blockwise transport") {
        std::mt19937 rng(9);
        for (const auto* A : {&S, &S3, &Z4}) {
            const auto& alg = A->algebra;
            for (int d = 1; d <= 3; ++d)
                for (int t = 0; t < 10; ++t) {
                    Matrix phi = random_matrix(d * alg.dim, d * alg.dim, rng);
                    Matrix psi = random_a_linear(alg, d, rng);
                    Scalar lhs = mtrace(phi * psi);
                    Scalar rhs =
                        lambda_tr(alg, A->form, d, mat_phi(alg, A->form, d, phi) * psi);
                    CHECK(lhs == rhs);
                }
        }
    }
}

TEST_CASE("equivariance of evaluation and moment map") {
    for (const auto& dq :
         {ident_a2(standard_algebra("truncated_poly", 0, 2)),
          a2_decorated(standard_algebra("truncated_poly", 0, 2),
                       standard_algebra("ground", 0))}) {
        auto dd = double_quiver(dq);
        TensorContext ctx(dd);
        WordCombo r = relation_element(ctx, SignConvention::Signed);
        std::map<int, int> d{{1, 2}, {2, 2}};
        for (int seed = 0; seed < 5; ++seed) {
            auto rep = random_representation(dd, d, static_cast<unsigned>(seed));
            auto g = random_group_element(dd, d, static_cast<unsigned>(100 + seed));
            auto moved = act(dd, g, rep);
            auto ev = evaluate_relation(dd, rep, ctx, r);
            auto evg = evaluate_relation(dd, moved, ctx, r);
            auto mug = moment_map_via_pairing(dd, moved);
            for (int v : dd.quiver.vertices) {
                Matrix conj = g.at(v) * ev.blocks.at(v) * *g.at(v).inverse();
                CHECK(evg.blocks.at(v) == conj);
                CHECK(mug.blocks.at(v) == conj);
            }
        }
    }
}

TEST_CASE("boundary checks") {
    SUBCASE("nonsymmetric vertex form is rejected") {
        auto M2 = standard_algebra("matrix_algebra", 0, 2);
        FrobeniusForm bad = M2.form;
        bool found = false;
        for (int b = 0; b < 4 && !found; ++b) {
            Vec u = M2.algebra.unit;
            u[b] += Scalar::rational(1);
            if (!M2.algebra.is_unit_element(u)) continue;
            auto cand = change_form(M2.algebra, M2.form, u);
            auto rep = validate_frobenius(M2.algebra, cand);
            if (rep.nondegenerate && !rep.symmetric) {
                bad = cand;
                found = true;
            }
        }
        REQUIRE(found);
        auto dd = double_quiver(a2_decorated(M2, standard_algebra("ground", 0)));
        std::map<int, int> d{{1, 1}, {2, 1}};
        auto rep = random_representation(dd, d, 1);
        // quiver construction rejects such forms, so splice one in directly
        dd.vertex_algebra[1] =
            std::make_shared<DecAlgebra>(DecAlgebra{M2.algebra, bad});
        CHECK_THROWS_WITH_AS(moment_map_via_pairing(dd, rep),
                             doctest::Contains("NonSymmetricForm"), Error);
        TensorContext ctx(dd);
        CHECK_THROWS_WITH_AS(evaluate_relation(dd, rep, ctx, WordCombo{}),
                             doctest::Contains("NonSymmetricForm"), Error);
    }
    SUBCASE("singular group element") {
        auto dd = double_quiver(path_quiver_constant_k(2, 0));
        std::map<int, int> d{{1, 1}, {2, 1}};
        auto rep = random_representation(dd, d, 3);
        std::map<int, Matrix> g{{1, Matrix(1, 1, 0)}, {2, Matrix::identity(1, 0)}};
        CHECK_THROWS_WITH_AS(act(dd, g, rep), doctest::Contains("NotInvertible"), Error);
    }
    SUBCASE("non-A-linear identification data is caught at evaluation") {
        auto dd = double_quiver(ident_a2(standard_algebra("truncated_poly", 0, 2)));
        TensorContext ctx(dd);
        WordCombo r = relation_element(ctx, SignConvention::Signed);
        Representation rep;
        rep.d = {{1, 1}, {2, 1}};
        Matrix proj(2, 2, 0);
        proj.at(0, 0) = Scalar::rational(1);  // kills x, not S-linear
        for (const auto& a : dd.quiver.arrows) rep.rho.emplace(a.id, proj);
        CHECK_THROWS_WITH_AS(evaluate_relation(dd, rep, ctx, r),
                             doctest::Contains("NotALinearResult"), Error);
    }
}
