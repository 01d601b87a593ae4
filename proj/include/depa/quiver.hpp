#pragma once

#include <map>
#include <memory>
#include <vector>

#include "depa/algebra.hpp"
#include "depa/spoly.hpp"

namespace depa {

struct Arrow {
    int id, src, tgt;
};

struct Quiver {
    std::vector<int> vertices;
    std::vector<Arrow> arrows;

    int vertex_index(int v) const;
    const Arrow& arrow(int id) const;
};

enum class ArrowKind { TensorUnit, Identification };

/// Vertex decoration: algebra plus its chosen symmetric Frobenius form.
struct DecAlgebra {
    FiniteDimAlgebra alg;
    FrobeniusForm form;
};
using DecAlgebraPtr = std::shared_ptr<const DecAlgebra>;

struct DecoratedQuiver {
    Quiver quiver;
    std::map<int, DecAlgebraPtr> vertex_algebra;
    std::map<int, ArrowKind> arrow_kind;
    std::map<int, int> arrow_xweight2;  // doubled half-units
    bool doubled = false;
    std::map<int, int> dual_of;        // doubled only: arrow id <-> partner id
    std::map<int, bool> arrow_positive;  // doubled only
    long long field = 0;

    const DecAlgebra& at(int v) const { return *vertex_algebra.at(v); }
    int arrow_dim(int id) const;  // dim_k of M^alpha
    bool is_positive(int id) const { return !doubled || arrow_positive.at(id); }
};

/// One automorphism: vertex permutation + compatible arrow permutation.
struct QuiverAutomorphism {
    std::map<int, int> vmap;
    std::map<int, int> amap;
};

struct CartanData {
    std::vector<std::vector<long long>> A;  // doubled-arrow counts a_ij
    std::vector<long long> D;               // dim A_i
    std::vector<std::vector<SPoly>> A_s;
    std::vector<SPoly> B_s;
    std::vector<SPoly> D_s;                 // graded dims h_{A_i}(s)
};

/// Validates condition (F) plus referential integrity; assigns default arrow
/// x-weights (Identification: half the top x-degree of the algebra; TensorUnit:
/// 0) where none are given. Throws ConditionFViolation / DanglingArrow.
DecoratedQuiver build_decorated_quiver(Quiver q,
                                       std::map<int, DecAlgebraPtr> vertex_algebra,
                                       std::map<int, ArrowKind> arrow_kind,
                                       std::map<int, int> arrow_xweight2 = {});

/// Adds a reversed dual arrow per arrow (ids offset by dual_arrow_offset).
DecoratedQuiver double_quiver(const DecoratedQuiver& dq);
constexpr int dual_arrow_offset = 1000000;

/// Quotient by the group generated by the given automorphisms.
DecoratedQuiver fold(const DecoratedQuiver& dq,
                     const std::vector<QuiverAutomorphism>& generators);

/// All decoration-preserving graph automorphisms, brute force (|Q_0| <= 10).
std::vector<QuiverAutomorphism> automorphism_group(const DecoratedQuiver& dq);

CartanData cartan_data(const DecoratedQuiver& dq);
bool is_dynkin(const DecoratedQuiver& dq);

/// Shorthand for constant-k decorations of common shapes (tests + suites).
DecoratedQuiver path_quiver_constant_k(int n, long long field);     // A_n
DecoratedQuiver star_quiver_constant_k(int leaves, long long field);  // Q_{n+1}
/// A_2-shape decoration src --(tensor)--> tgt.
DecoratedQuiver a2_decorated(const StandardAlgebra& src, const StandardAlgebra& tgt);

/// Standard non-simply-laced decorations with S = k[x]/(x^2), S' = k[x]/(x^3):
/// B_n: k -(tensor)-> S -(ident)-> ... -(ident)-> S, half-unit weights inside
/// C_n: k -(ident)-> ... -(ident)-> k -(tensor)-> S
/// F_4: k -(ident)-> k -(tensor)-> S -(ident)-> S
/// G_2: k -(tensor)-> S'
DecoratedQuiver b_family(int n, long long field);
DecoratedQuiver c_family(int n, long long field);
DecoratedQuiver f4_quiver(long long field);
DecoratedQuiver g2_quiver(long long field);

}  // namespace depa
