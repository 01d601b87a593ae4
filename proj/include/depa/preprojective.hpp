#pragma once

#include "depa/tensor.hpp"

namespace depa {

/// Signed: each positive arrow contributes + to its source block and - to its
/// target block. AllPlus drops the minus (same quotient for bipartite shapes).
enum class SignConvention { Signed, AllPlus };

/// The canonical degree-2 relation r as a combination of path words. TensorUnit
/// arrows contribute the Casimir of the vertex form on each side, Identification
/// arrows the commutator of the two unit tensors.
WordCombo relation_element(TensorContext& ctx, SignConvention sc);

struct HilbertSeries {
    // coeffs[n][{i,j}][xdeg2] = dim of the (i,j) block in path degree n
    std::vector<std::map<std::pair<int, int>, std::map<int, int>>> coeffs;
    bool stabilized = false;
    int top_degree = -1;
    int cutoff = 0;

    int dim(int n) const;
    std::map<int, int> bidims(int n, int i, int j) const;
    int block_total(int i, int j) const;
    long long total() const;  // throws NotFiniteDimensional when not stabilized
};

/// Graded quotient of the path algebra by the two-sided ideal (r). Degrees are
/// built incrementally: degree n is spanned by one-arrow extensions of the
/// degree n-1 representatives, modulo reductions of basis(n-2) * r * A.
class PiContext {
public:
    explicit PiContext(const DecoratedQuiver& dq,
                       SignConvention sc = SignConvention::AllPlus,
                       int cutoff = -1);

    TensorContext& tensor() { return ctx_; }
    const DecoratedQuiver& dq() const { return ctx_.dq(); }
    SignConvention convention() const { return sc_; }
    int cutoff() const { return cutoff_; }
    const WordCombo& relation() const { return relation_; }
    WordCombo relation_at(int v) const;

    /// Representative words spanning degree n of the quotient.
    const std::vector<PathWord>& basis(int n);
    /// Coordinates of a path word over basis(word length).
    std::map<int, Scalar> reduce_word(const PathWord& w);
    /// Rewrites a combination onto representative words.
    WordCombo reduce(const WordCombo& c);
    /// Product in the quotient.
    WordCombo mul(const WordCombo& a, const WordCombo& b);

    HilbertSeries hilbert();

private:
    void extend(int n);

    TensorContext ctx_;
    SignConvention sc_;
    int cutoff_;
    WordCombo relation_;
    std::map<int, std::vector<WordCombo>> relation_right_multiples_;
    std::vector<std::vector<PathWord>> basis_;
    std::vector<std::map<PathWord, int>> cand_index_;
    std::vector<std::vector<std::map<int, Scalar>>> cand_to_basis_;
    std::vector<std::map<PathWord, std::map<int, Scalar>>> red_memo_;
};

/// Degree-n piece of the two-sided ideal (r) computed directly inside the full
/// tensor power, as a reduced row basis in piece(n) coordinates. Slow; the
/// independent cross-check for PiContext.
std::vector<Vec> ideal_degree_span(TensorContext& ctx, const WordCombo& r, int n);
int ideal_degree_dim(TensorContext& ctx, const WordCombo& r, int n);

long long total_dimension(PiContext& pi);

/// Coefficients of D_s (1 - A_s t + B_s t^2)^{-1}, with the Dynkin correction
/// factor (1 + s^max_s t^{top+2} P) applied when the shape is Dynkin. The
/// correction parameters are read off the computed series, not predicted.
HilbertSeries conjectured_series(PiContext& pi, int cutoff = -1);

struct ConjectureReport {
    bool dynkin = false;
    int top_degree = -1;
    int max_s2 = 0;                         // top x-degree (doubled) at top_degree
    std::vector<std::vector<long long>> P;  // block dims at the top bidegree
    bool recursion_matches = false;
    bool correction_matches = false;  // Dynkin branch only
};

/// Verifies h(s,t) * (I - A_s t + B_s t^2) = (I + s^max_s t^{top+2} P) D_s
/// against the computed series.
ConjectureReport check_conjecture(PiContext& pi);

struct PairingReport {
    std::vector<PathWord> basis;  // all representatives, ordered by degree
    std::vector<PathWord> y_set;
    Matrix gram;
    int dim = 0;
    int rank = 0;
    bool nondegenerate = false;
    bool symmetric = false;
};

/// Pairing (a, b) = sum of coefficients of a*b over the top-bidegree cycle set
/// Y (per diagonal block: its maximal x-degree words in the top path degree).
PairingReport frobenius_pairing(PiContext& pi);

/// Graded dimensions of the center, solved from [z, g] = 0 over the degree-0
/// and degree-1 generators.
std::map<int, int> center_dims(PiContext& pi);

/// Value of the pairing from frobenius_pairing on two explicit elements.
Scalar pairing_value(PiContext& pi, const PairingReport& pr, const WordCombo& a,
                     const WordCombo& b);

}  // namespace depa
