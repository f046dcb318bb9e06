#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lowenergy/count.hpp"
#include "lowenergy/poly.hpp"
#include "lowenergy/regularize.hpp"
#include "lowenergy/report.hpp"
#include "lowenergy/sets.hpp"

namespace lowenergy {

/// Popular subset of X used as one extraction step. X must lie in A and f
/// must be non-degenerate (Degenerate otherwise).
PopularSubset extract_low_Ef_subset(const FSet& x, const FSet& a, const BivariateQuadratic& f);

/// max{E_f(X*, Y), E_f(Y, X*)} against |X*|^4 |Y|^{3/2} |A|^{3/2} / E(X)^{3/2}.
BoundReport extraction_report(const PopularSubset& ps, const FSet& x, const FSet& a, const FSet& y,
                              const BivariateQuadratic& f, double constant = 64.0);

struct DecompRound {
  std::size_t index = 0;
  std::size_t S_size = 0;   // |S_i| before the extraction
  Count E_S = 0;            // E(S_i)
  std::size_t B_size = 0;
  bool safeguard = false;   // B_i came from the fallback, not the extraction
};

struct Decomposition {
  FSet S;
  FSet T;
  double M = 1.0;
  long double threshold = 0;  // |A|^3 / M
  std::vector<DecompRound> rounds;
  BivariateQuadratic f;
  Count E_S = 0;
  Count Ef_T = 0;
  bool p_constraint = true;  // |A| <= p^{5/8}
  std::size_t safeguard_events = 0;
  std::vector<std::string> warnings;
  std::vector<BoundReport> reports;
};

struct DecomposeOptions {
  std::optional<double> M;
  /// Emit an extraction report (Y = A) for every round.
  bool round_reports = true;
  double constant = 64.0;
};

/// Iteratively removes popular subsets from S while E(S) > |A|^3 / M. On exit
/// S and T partition A and E(S) <= |A|^3 / M, rechecked through a second
/// energy route (Internal if it fails). Default M = |A|^{1/5}.
Decomposition balog_wooley_decompose(const FSet& a, const BivariateQuadratic& f, const DecomposeOptions& opt = {});

enum class LargeSetMode { multiplicative, image };

struct SubsetPair {
  FSet B;
  FSet C;
  std::map<std::string, Count> measured;
  RegularTriple reg;
  std::vector<BoundReport> reports;
};

/// Regularizes A and measures E(B) together with E^x(C) or E(f(C)). The image
/// mode needs rational_nondeg_sufficient(f) = pass (InsufficientNondegeneracy).
SubsetPair large_set_subsets(const FSet& a, LargeSetMode mode, const std::optional<RationalFunction>& f = {},
                             double constant = 64.0);

/// Two-set regularization of A against V, measuring E(B, V) and E_f(C, X).
/// SizeImbalance when |V| or |X| is below |A| / size_ratio.
SubsetPair mixed_energy_subsets(const FSet& a, const FSet& v, const FSet& x, const BivariateQuadratic& f,
                                double constant = 64.0, double size_ratio = 4.0);

}  // namespace lowenergy
