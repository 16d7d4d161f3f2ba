#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bcleak/ineq.hpp"
#include "bcleak/pmf.hpp"
#include "bcleak/polytope.hpp"

namespace bcleak {

// Fourier-Motzkin projection of one variable; a combined row is strict if either parent is.
IneqSystem fme_eliminate(const IneqSystem& sys, std::string_view var);

struct PruneOptions {
  // Drop rows implied by a nonnegative combination of the others (exact LP).
  bool implication = true;
};

// Rewrites right-hand sides in chain-rule atoms, then removes tautologies, duplicates,
// dominated rows and (optionally) LP-implied rows. Implication uses nonnegativity of
// every atom and ignores strictness, so the result is exact up to closure.
IneqSystem prune_redundant(const IneqSystem& sys, PruneOptions opts = {});

IneqSystem eliminate_all(const IneqSystem& sys, const std::vector<std::string>& order,
                         bool prune_each_step = true);

// Equality up to pruning, chain-rule rewriting, positive row scaling and row order.
bool canonical_equal(const IneqSystem& a, const IneqSystem& b);

// Rate constraints of the layered binning scheme over R0,R1,R2 and the partial rates
// R10,R20,R11,R22,Rp1,Rp2,Rt1,Rt2.
IneqSystem achievability_system();
std::vector<std::string> achievability_elimination_order();
// The closed-form inner bound over (R0,R1,R2), with the min term split into two rows.
IneqSystem inner_bound_system();
// inner_bound_system() plus the distribution-only row that the elimination also produces.
IneqSystem inner_bound_reference_system();

using SymbolValues = std::map<InfoSymbol, double>;

SymbolValues evaluate_symbols(const IneqSystem& sys, InfoEvaluator& ev, LeakagePair leak);
// Numeric instantiation. Rows whose right side is +inf are dropped; a row without rate
// variables becomes a zero-coefficient halfspace (violated rows make the polytope empty).
RatePolytope substitute(const IneqSystem& sys, const SymbolValues& values, std::string label = {});

}  // namespace bcleak
