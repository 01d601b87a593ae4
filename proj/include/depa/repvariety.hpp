#pragma once

#include "depa/preprojective.hpp"

namespace depa {

/// Representation of a doubled decorated quiver on free modules V_i = A_i^{d_i}
/// (right modules; the Lie algebra of A_i-matrices acts from the left). Each
/// arrow map is stored as its full k-matrix on the (module slot, algebra basis)
/// coordinates; identification arrows additionally commute with the right
/// A-action.
struct Representation {
    std::map<int, int> d;
    std::map<int, Matrix> rho;  // doubled arrow id -> matrix V_src -> V_tgt
};

/// Per-vertex A_i-linear endomorphism, as a k-matrix on V_i.
struct LieElement {
    std::map<int, Matrix> blocks;

    bool operator==(const LieElement&) const = default;
};

int module_dim(const DecoratedQuiver& dd, const std::map<int, int>& d, int v);
/// Free parameters of the arrow's Hom space.
int hom_space_dim(const DecoratedQuiver& dd, const std::map<int, int>& d, int arrow);

/// k-matrix of the right action of a on A^d.
Matrix right_action_matrix(const FiniteDimAlgebra& A, int d, const Vec& a);
/// k-matrix of the A-linear map with the single A-matrix entry a at (p, q).
Matrix amatrix_unit(const FiniteDimAlgebra& A, int d, int p, int q, const Vec& a);
bool is_a_linear(const FiniteDimAlgebra& A, int d, const Matrix& m);

/// Deterministic representation with entries in [-spread, spread]; bimodule
/// conditions hold by construction (only free parameters are sampled).
Representation random_representation(const DecoratedQuiver& dd,
                                     const std::map<int, int>& d, unsigned seed,
                                     int spread = 2);

/// Seeded per-vertex invertible A-linear matrices.
std::map<int, Matrix> random_group_element(const DecoratedQuiver& dd,
                                           const std::map<int, int>& d,
                                           unsigned seed, int spread = 2);

/// Extends rho multiplicatively and evaluates a degree-2 relation combo.
/// Throws NotALinearResult if a block fails A-linearity and NonSymmetricForm
/// if a vertex form is not symmetric.
LieElement evaluate_relation(const DecoratedQuiver& dd, const Representation& rep,
                             TensorContext& ctx, const WordCombo& r);

/// The transported element z = sum phi(e_i) f_i, so that Phi(phi) = L_z.
/// Asserts tr(phi) = lambda(z); throws DegenerateForm via the dual basis.
Vec phi_element(const FiniteDimAlgebra& A, const FrobeniusForm& f,
                const Matrix& varphi);
Matrix phi_endo(const FiniteDimAlgebra& A, const FrobeniusForm& f,
                const Matrix& varphi);
/// Blockwise Phi on a k-endomorphism of A^d; output is A-linear.
Matrix mat_phi(const FiniteDimAlgebra& A, const FrobeniusForm& f, int d,
               const Matrix& varphi);
/// lambda(tr_A(m)) for an A-linear m.
Scalar lambda_tr(const FiniteDimAlgebra& A, const FrobeniusForm& f, int d,
                 const Matrix& m);

/// Moment map from the cotangent pairings: the functional
/// X -> -sum_alpha <rho_{alpha*}, (X.rho)_alpha>, converted to a LieElement
/// through the nondegenerate pairing (X, Y) -> sum_i lambda_i(tr_{A_i}(X Y)).
/// Tensor-unit arrows pair by the k-trace, identifications by lambda o tr_A.
LieElement moment_map_via_pairing(const DecoratedQuiver& dd,
                                  const Representation& rep);

/// g_{t(alpha)} rho_alpha g_{s(alpha)}^{-1}; throws NotInvertible.
Representation act(const DecoratedQuiver& dd, const std::map<int, Matrix>& g,
                   const Representation& rep);

}  // namespace depa
