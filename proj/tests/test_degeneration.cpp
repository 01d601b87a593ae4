#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "depa/degeneration.hpp"

using namespace depa;

namespace {

DecoratedQuiver no_arrow_pair(long long field) {
    Quiver q;
    q.vertices = {1, 2};
    auto k = standard_algebra("ground", field);
    auto dec = std::make_shared<DecAlgebra>(DecAlgebra{k.algebra, k.form});
    return build_decorated_quiver(q, {{1, dec}, {2, dec}}, {});
}

}  // namespace

TEST_CASE("form vanishing on the unit") {
    SUBCASE("S with the all-ones form") {
        auto S = standard_algebra("truncated_poly", 0, 2);
        FrobeniusForm f{{Scalar::rational(1), Scalar::rational(1)}};
        auto g = form_vanishing_on_unit(S.algebra, f);
        CHECK(S.algebra.eval(g, S.algebra.unit).is_zero());
        CHECK(validate_frobenius(S.algebra, g).nondegenerate);
    }
    SUBCASE("split pair of ground fields") {
        auto A = standard_algebra("sum_of_ground", 0, 2);
        FrobeniusForm f{{Scalar::rational(1), Scalar::rational(1)}};
        auto g = form_vanishing_on_unit(A.algebra, f);
        CHECK(A.algebra.eval(g, A.algebra.unit).is_zero());
        CHECK(validate_frobenius(A.algebra, g).nondegenerate);
    }
    SUBCASE("already vanishing form is returned unchanged") {
        auto S = standard_algebra("truncated_poly", 0, 2);
        auto g = form_vanishing_on_unit(S.algebra, S.form);
        CHECK(g.lambda == S.form.lambda);
    }
    SUBCASE("pure idempotent case over F_2 has no such form") {
        auto A = standard_algebra("sum_of_ground", 2, 3);
        FrobeniusForm f{{Scalar::mod(1, 2), Scalar::mod(1, 2), Scalar::mod(1, 2)}};
        REQUIRE(!A.algebra.eval(f, A.algebra.unit).is_zero());
        CHECK_THROWS_WITH_AS(form_vanishing_on_unit(A.algebra, f),
                             doctest::Contains("NoSuchForm"), Error);
    }
}

TEST_CASE("most degenerate Frobenius structure") {
    SUBCASE("four split points degenerate to the dimension-4 Z shape") {
        auto A = standard_algebra("sum_of_ground", 0, 4);
        auto f = form_vanishing_on_unit(A.algebra, A.form);
        auto out = most_degenerate(A.algebra, f);
        CHECK(out.algebra.algebra.dim == 4);
        CHECK(out.algebra.algebra.xdeg2 == standard_algebra("z_algebra", 0, 4).algebra.xdeg2);
        CHECK(out.induced_form.rank() == 2);
        CHECK(validate_frobenius(out.algebra.algebra, out.algebra.form).nondegenerate);
    }
    SUBCASE("bilinear-form algebras are fixed points") {
        Matrix M(2, 2, 0);
        M.at(0, 0) = Scalar::rational(1);
        M.at(0, 1) = Scalar::rational(2);
        M.at(1, 0) = Scalar::rational(3);
        M.at(1, 1) = Scalar::rational(4);
        auto B = standard_algebra("bilinear_form_algebra", 0, 2, &M);
        auto out = most_degenerate(B.algebra, B.form);
        CHECK(out.induced_form == M);
        CHECK(out.algebra.algebra.sc == B.algebra.sc);
    }
    SUBCASE("2x2 matrices with the signed diagonal form give the skew shape") {
        auto M2 = standard_algebra("matrix_algebra", 0, 2);
        Vec u(4, Scalar::rational(0));
        u[0] = Scalar::rational(1);   // E11
        u[3] = Scalar::rational(-1);  // E22
        auto l2 = change_form(M2.algebra, M2.form, u);
        REQUIRE(M2.algebra.eval(l2, M2.algebra.unit).is_zero());
        auto out = most_degenerate(M2.algebra, l2);
        CHECK(out.algebra.algebra.dim == 4);
        CHECK(out.algebra.algebra.xdeg2 == std::vector<int>{0, 2, 2, 4});
        CHECK(out.induced_form.rank() == 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(out.induced_form.at(i, j) == -out.induced_form.at(j, i));
    }
    SUBCASE("rejects a form with lambda(1) != 0") {
        auto M2 = standard_algebra("matrix_algebra", 0, 2);
        CHECK_THROWS_WITH_AS(most_degenerate(M2.algebra, M2.form),
                             doctest::Contains("FormNonVanishingOnUnit"), Error);
    }
}

TEST_CASE("associated graded algebras") {
    SUBCASE("Clifford algebra degenerates to the exterior algebra") {
        Matrix Q = Matrix::identity(2, 0);
        auto Cl = standard_algebra("clifford", 0, 0, &Q);
        const auto& A = Cl.algebra;
        Filtration filt{{{A.unit}, {A.basis_vec(1), A.basis_vec(2)}, {A.basis_vec(3)}}};
        auto gr = associated_graded(A, filt);
        auto ext = standard_algebra("exterior", 0, 2);
        CHECK(gr.dim == A.dim);
        CHECK(gr.sc == ext.algebra.sc);
        CHECK(gr.xdeg2 == ext.algebra.xdeg2);
    }
    SUBCASE("group algebra of a cycle degenerates to a truncated polynomial ring") {
        auto G = standard_algebra("group_like", 0, 4);
        Filtration filt{{{G.algebra.unit},
                         {G.algebra.basis_vec(1)},
                         {G.algebra.basis_vec(2)},
                         {G.algebra.basis_vec(3)}}};
        auto gr = associated_graded(G.algebra, filt);
        CHECK(gr.dim == 4);
        CHECK(gr.sc == standard_algebra("truncated_poly", 0, 4).algebra.sc);
    }
    SUBCASE("trivial filtration returns the algebra itself") {
        auto A = standard_algebra("truncated_poly", 0, 3).algebra;
        Filtration filt{{{A.basis_vec(0), A.basis_vec(1), A.basis_vec(2)}}};
        auto gr = associated_graded(A, filt);
        CHECK(gr.sc == A.sc);
        CHECK(gr.xdeg2 == std::vector<int>{0, 0, 0});
    }
    SUBCASE("non-multiplicative chain is rejected with a witness") {
        auto A = standard_algebra("truncated_poly", 0, 3).algebra;
        Filtration filt{{{A.basis_vec(0), A.basis_vec(1)}, {A.basis_vec(2)}}};
        CHECK_THROWS_WITH_AS(associated_graded(A, filt),
                             doctest::Contains("NotMultiplicative"), Error);
    }
    SUBCASE("incomplete chains are rejected") {
        auto A = standard_algebra("truncated_poly", 0, 3).algebra;
        CHECK_THROWS_WITH_AS(associated_graded(A, Filtration{{{A.basis_vec(0)}}}),
                             doctest::Contains("BadFiltration"), Error);
        CHECK_THROWS_WITH_AS(
            associated_graded(A, Filtration{{{A.basis_vec(1)}, {A.basis_vec(0)},
                                             {A.basis_vec(2)}}}),
            doctest::Contains("BadFiltration"), Error);
    }
}

TEST_CASE("flatness harness") {
    auto ground = standard_algebra("ground", 0);
    SUBCASE("split pair against the dual numbers") {
        auto left = a2_decorated(ground, standard_algebra("sum_of_ground", 0, 2));
        auto rep = flatness_check(left, b_family(2, 0));
        CHECK(rep.blockwise);
        CHECK(!rep.bigraded);
        CHECK(rep.flat);
        PiContext pi(left);
        CHECK(total_dimension(pi) == 10);
    }
    SUBCASE("identical decorations are flat") {
        auto rep = flatness_check(b_family(2, 0), b_family(2, 0));
        CHECK(rep.blockwise);
        CHECK(rep.bigraded);
        CHECK(rep.flat);
    }
    SUBCASE("star quivers against the Z-shaped decorations") {
        for (int n = 2; n <= 4; ++n) {
            auto rep = flatness_check(star_quiver_constant_k(n, 0),
                                      a2_decorated(ground, standard_algebra("z_algebra", 0, n)),
                                      5);
            CHECK(!rep.blockwise);
            CHECK(rep.flat);
        }
    }
    SUBCASE("2x2 matrices against the dimension-4 Z shape") {
        auto rep = flatness_check(a2_decorated(ground, standard_algebra("matrix_algebra", 0, 2)),
                                  a2_decorated(ground, standard_algebra("z_algebra", 0, 4)), 5);
        CHECK(rep.blockwise);
        CHECK(rep.flat);
    }
    SUBCASE("mismatched total dimensions are not comparable") {
        CHECK_THROWS_WITH_AS(flatness_check(b_family(2, 0), g2_quiver(0)),
                             doctest::Contains("NotComparable"), Error);
    }
    SUBCASE("strict degenerations report the first difference") {
        auto rep = flatness_check(path_quiver_constant_k(2, 0), no_arrow_pair(0));
        CHECK(!rep.flat);
        REQUIRE(rep.first_difference.has_value());
        CHECK(rep.first_difference->t == 1);
        CHECK(rep.first_difference->left_dim == 2);
        CHECK(rep.first_difference->right_dim == 0);
    }
    SUBCASE("a degenerate side that grows is an engine error") {
        CHECK_THROWS_WITH_AS(flatness_check(no_arrow_pair(0), path_quiver_constant_k(2, 0)),
                             doctest::Contains("EngineError"), Error);
    }
}
