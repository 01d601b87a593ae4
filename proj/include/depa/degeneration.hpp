#pragma once

#include "depa/preprojective.hpp"

namespace depa {

/// Exhaustive multiplicative filtration 0 = F_{-1} <= F_0 <= ... <= F_m = A.
/// layers[i] spans F_i cumulatively with the earlier layers.
struct Filtration {
    std::vector<std::vector<Vec>> layers;
};

/// A unit-twisted form lambda o L_u with u invertible in ker(lambda); returns
/// the input unchanged when lambda(1) = 0 already. Search: seeded small-integer
/// samples in ker(lambda), then a deterministic coefficient sweep. Throws
/// NoSuchForm (characteristic 2 exceptional case) or SearchExhausted.
FrobeniusForm form_vanishing_on_unit(const FiniteDimAlgebra& A, const FrobeniusForm& f);

struct DegenerateAlgebra {
    StandardAlgebra algebra;  // k + V + k of bilinear-form shape, canonical form
    Matrix induced_form;      // (v, w) -> lambda(v w) on V = ker(lambda)/k1
};

/// Associated graded of the filtration k1 < ker(lambda) < A. Requires
/// lambda(1) = 0 (FormNonVanishingOnUnit otherwise). The raw induced form is
/// kept; no diagonalization.
DegenerateAlgebra most_degenerate(const FiniteDimAlgebra& A, const FrobeniusForm& f);

/// Graded algebra on layer representatives; products project to their layer
/// sum. Throws NotMultiplicative with a witness pair, BadFiltration when the
/// chain misses the unit or does not exhaust A.
FiniteDimAlgebra associated_graded(const FiniteDimAlgebra& A, const Filtration& filt);

struct FirstDifference {
    int t = 0;
    int s_half = -1;  // -1 when the comparison is not x-graded
    int i = 0, j = 0;  // block, or -1/-1 for a totals-level comparison
    long long left_dim = 0, right_dim = 0;
};

struct FlatnessReport {
    bool blockwise = false;  // same shape and vertex dims: per-block comparison
    bool bigraded = false;   // both sides x-graded: s-resolved comparison
    bool stabilization_match = false;
    bool flat = false;
    int cutoff = 0;
    std::optional<FirstDifference> first_difference;
};

/// Compares the Hilbert series of a deformed decoration (left) against a
/// degenerate one (right). Same quiver shape with equal vertex dimensions
/// compares per block; otherwise equal total decoration dimension compares
/// per-degree totals; anything else throws NotComparable. A coefficient where
/// the degenerate side exceeds the deformed side throws EngineError: the
/// dimension inequality guarantees it cannot happen.
FlatnessReport flatness_check(const DecoratedQuiver& deformed,
                              const DecoratedQuiver& degenerate, int cutoff = -1);

}  // namespace depa
