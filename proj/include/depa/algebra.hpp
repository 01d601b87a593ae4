#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "depa/matrix.hpp"

namespace depa {

/// Linear functional A -> k given by its coefficient vector on the basis.
struct FrobeniusForm {
    Vec lambda;
};

/// Finite-dimensional associative unital algebra via structure constants.
/// x-degrees are stored doubled (half-unit resolution).
struct FiniteDimAlgebra {
    int dim = 0;
    long long field = 0;
    std::vector<std::vector<Vec>> sc;  // sc[i][j] = coefficients of e_i * e_j
    Vec unit;
    std::vector<std::string> labels;
    std::vector<int> xdeg2;  // empty when ungraded
    std::string name;

    Vec multiply(const Vec& u, const Vec& v) const;
    Matrix left_mult(const Vec& u) const;
    Matrix right_mult(const Vec& u) const;
    bool is_unit_element(const Vec& u) const;  // invertibility via left-mult rank
    Vec basis_vec(int i) const;
    int xdeg2_of(int i) const { return xdeg2.empty() ? 0 : xdeg2[i]; }
    int max_xdeg2() const;
    bool graded() const { return !xdeg2.empty(); }

    /// Applies the form to an element.
    Scalar eval(const FrobeniusForm& f, const Vec& v) const;
};

struct FrobeniusReport {
    bool nondegenerate = false;
    bool symmetric = false;
    std::optional<std::pair<int, int>> witness;  // basis pair violating symmetry
};

/// Algebra together with its canonical Frobenius form and named alternatives.
struct StandardAlgebra {
    FiniteDimAlgebra algebra;
    FrobeniusForm form;
    std::map<std::string, FrobeniusForm> alt_forms;
};

/// Validates and returns the algebra. Throws NonAssociative / BadUnit /
/// NotGraded with a witness in the message.
FiniteDimAlgebra make_algebra(int dim, std::vector<std::vector<Vec>> sc, Vec unit,
                              std::vector<std::string> labels = {},
                              std::vector<int> xdeg2 = {},
                              std::string name = {});

/// kind: ground | sum_of_ground | truncated_poly | z_algebra |
/// bilinear_form_algebra | clifford | exterior | matrix_algebra | group_like |
/// product. Integer parameter in n; matrix parameter in M; product parts in parts.
StandardAlgebra standard_algebra(const std::string& kind, long long field,
                                 int n = 0, const Matrix* M = nullptr,
                                 const StandardAlgebra* a = nullptr,
                                 const StandardAlgebra* b = nullptr);

Matrix gram_matrix(const FiniteDimAlgebra& A, const FrobeniusForm& f);
/// Solves lambda(e_i f_j) = delta_ij; throws DegenerateForm.
std::vector<Vec> frobenius_dual_basis(const FiniteDimAlgebra& A, const FrobeniusForm& f);
FrobeniusReport validate_frobenius(const FiniteDimAlgebra& A, const FrobeniusForm& f);
/// lambda compose L_u; throws NotAUnit.
FrobeniusForm change_form(const FiniteDimAlgebra& A, const FrobeniusForm& f, const Vec& u);

/// Orthogonal idempotents of group_like(n) by root-of-unity interpolation.
/// Throws FieldLacksRoots when the field has no primitive n-th root of unity.
std::vector<Vec> group_like_idempotents(long long field, int n);

}  // namespace depa
