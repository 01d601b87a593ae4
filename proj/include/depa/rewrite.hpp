#pragma once

#include <iosfwd>
#include <random>

#include "depa/preprojective.hpp"

namespace depa {

/// Token of the rewriting alphabet: an arrow step, or an x insertion at a
/// vertex whose algebra is a truncated polynomial ring (a length-0 loop).
struct RwGen {
    int src = 0, tgt = 0;
    int xdeg2 = 0;  // arrow weight, or 2 for an x token
    bool is_x = false;
    std::string name;
};

struct RwWord {
    int src = 0;
    std::vector<int> gens;

    auto operator<=>(const RwWord&) const = default;
};

using RwElem = std::map<RwWord, Scalar>;

void combo_add_rw(RwElem& acc, const RwWord& w, const Scalar& c);

struct RwRule {
    RwWord lhs;
    RwElem rhs;          // strictly smaller monomials
    bool builtin = false;  // x-moving identity, not an ideal relation
    std::string origin;    // input | nilpotent | x-move | completion
};

struct Ambiguity {
    int r1 = -1, r2 = -1;
    RwWord word;  // superposition; rule r1 applies at offset 0, r2 at pos
    int pos = 0;
    bool inclusion = false;
};

/// Reduction system over token words with the (length, x-degree, lex) order.
/// Lex compares per-vertex generator rankings, highest first.
class RewriteSystem {
public:
    RewriteSystem(std::map<int, RwGen> gens, long long field, int degree_bound);

    void set_order(int vertex, std::vector<int> ranked);
    /// Orients a relation: normal form, largest monomial becomes the lhs.
    /// Returns false when the relation reduces to zero. Rules whose lhs
    /// becomes reducible are re-added, keeping the system inter-reduced.
    bool add_rule(const RwElem& relation, const std::string& origin = "input");

    int plen(const RwWord& w) const;
    int xdeg2(const RwWord& w) const;
    int tgt(const RwWord& w) const;
    bool less(const RwWord& a, const RwWord& b) const;

    RwElem normal_form(const RwElem& e) const;
    RwElem normal_form(const RwWord& w) const;
    /// Applies applicable reductions in random order; used to witness
    /// confluence (the fixed point must not depend on the choices).
    RwElem normal_form_shuffled(const RwElem& e, std::mt19937& rng) const;

    std::vector<Ambiguity> find_ambiguities() const;
    /// Difference of the two reduction branches; empty means resolved.
    RwElem resolve(const Ambiguity& amb) const;

    /// Buchberger loop: orient every unresolved witness as a new rule until
    /// no ambiguity within the degree bound remains. Throws
    /// NonTerminatingWithinBound with the pending count.
    RewriteSystem completed() const;
    bool is_confluent() const;

    /// counts[{src,tgt}][xdeg2] over irreducible words with `degree` arrows.
    std::map<std::pair<int, int>, std::map<int, int>> irreducible_count(
        int degree) const;
    long long irreducible_total(int max_degree) const;

    const std::map<int, RwGen>& gens() const { return gens_; }
    const std::vector<RwRule>& rules() const { return rules_; }
    const std::vector<int>& ranking(int vertex) const { return rank_.at(vertex); }
    long long field() const { return field_; }
    int degree_bound() const { return bound_; }

    std::string word_str(const RwWord& w) const;
    std::string rule_str(const RwRule& r) const;

private:
    struct Match {
        int rule = -1, pos = -1;
    };
    Match first_match(const RwWord& w) const;
    std::vector<Match> all_matches(const RwWord& w) const;
    RwElem apply_at(const RwWord& w, int rule, int pos) const;
    void reduce_elem(RwElem& acc, std::mt19937* rng) const;

    std::map<int, RwGen> gens_;
    std::map<int, std::vector<int>> rank_;      // vertex -> gen ids, highest first
    std::map<int, std::map<int, int>> rankpos_;  // vertex -> gen id -> position
    std::vector<RwRule> rules_;
    long long field_;
    int bound_;
};

/// Initial system for the preprojective presentation of a decorated quiver:
/// one oriented relation per vertex, nilpotency rules x^m -> 0, and x-moving
/// identities across identification arrows. Vertex algebras must be k or
/// k[x]/(x^m) with the top-coefficient form; throws UnsupportedVertexAlgebra
/// otherwise. Generator names: arrows "a<id>" / "a<id>*", x tokens "x<vertex>".
RewriteSystem rewrite_system_for(const DecoratedQuiver& dq, SignConvention sc,
                                 int degree_bound = -1);

/// Image of a token word in the decorated path algebra of the doubled quiver.
WordCombo rw_to_path(const RewriteSystem& rs, TensorContext& ctx, const RwWord& w);
WordCombo rw_to_path(const RewriteSystem& rs, TensorContext& ctx, const RwElem& e);

/// Lines: `order vertex <i>: g1 > g2 > ...` and
/// `rule: <word> -> <coeff>*<word> + ...` with dot-separated generator names;
/// rhs `0` for monomial relations. `#` starts a comment.
void apply_rule_file(RewriteSystem& rs, std::istream& in);

}  // namespace depa
