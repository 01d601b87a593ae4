#pragma once

#include <map>
#include <utility>
#include <vector>

#include "depa/quiver.hpp"

namespace depa {

/// Basis monomial of the decorated path algebra of a doubled quiver.
/// Normal form: a degree-0 slot in the source algebra, then per arrow either a
/// slot in the target algebra (TensorUnit, the "1 (x) e_q" representative) or
/// nothing (Identification, the "(x) 1" representative); algebra content is
/// always pushed leftward through identification tensors.
struct PathWord {
    int source = 0;
    std::vector<int> arrows;  // arrow ids in the doubled quiver
    std::vector<int> slots;   // slots[0] in A_source, then one per TensorUnit arrow

    auto operator<=>(const PathWord&) const = default;
    int length() const { return static_cast<int>(arrows.size()); }
};

using WordCombo = std::map<PathWord, Scalar>;

struct GradedPiece {
    int degree = 0;
    std::map<std::pair<int, int>, std::vector<PathWord>> blocks;
    std::map<std::pair<int, int>, std::map<PathWord, int>> index;

    int block_dim(int i, int j) const;
    int total_dim() const;
    /// per-block map xdeg2 -> dimension
    std::map<int, int> bidims(int i, int j, const class TensorContext& ctx) const;
};

/// Graded pieces of T_{\oplus A_i}(\oplus M^alpha) with memoized levels and the
/// concatenate-then-normalize product.
class TensorContext {
public:
    explicit TensorContext(DecoratedQuiver doubled);

    const DecoratedQuiver& dq() const { return dq_; }
    const GradedPiece& piece(int n);

    int target(const PathWord& w) const;
    int xdeg2(const PathWord& w) const;

    /// u * a for a coefficient vector a in the algebra at target(u).
    WordCombo right_action(const PathWord& u, const Vec& a) const;
    /// a * u in the algebra at source(u).
    WordCombo left_action(const Vec& a, const PathWord& u) const;
    WordCombo mul(const PathWord& u, const PathWord& w) const;
    WordCombo mul(const WordCombo& u, const WordCombo& w) const;

    std::string word_str(const PathWord& w) const;

private:
    DecoratedQuiver dq_;
    std::vector<GradedPiece> memo_;
};

void combo_add(WordCombo& acc, const PathWord& w, const Scalar& c);
void combo_add(WordCombo& acc, const WordCombo& other, const Scalar& scale);

/// Basis of M (x)_B N computed by row-reducing the balancing relations
/// m.b (x) n - m (x) b.n out of the pure-tensor space. The action arguments
/// give, per basis element of B, the matrices of the right action on M and the
/// left action on N. Returns surviving pure-tensor index pairs.
std::vector<std::pair<int, int>> bimodule_tensor_basis(
    int dimM, int dimN, const std::vector<Matrix>& right_on_M,
    const std::vector<Matrix>& left_on_N);

}  // namespace depa
