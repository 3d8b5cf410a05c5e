#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lip/derivation.hpp"

namespace lip {

struct SearchBudget {
  int max_depth = 12;
  std::vector<Term> term_candidates;
  std::size_t max_nodes = 200000;
};

struct SearchOptions {
  // Treat second-order quantified formulas as opaque atoms instead of
  // rejecting them; they can then only be closed by Id.
  bool opaque_second_order = false;
};

struct SearchResult {
  std::optional<Derivation> derivation;
  std::size_t nodes = 0;
  bool budget_exhausted = false;
};

// Bounded backward search for a cut-free LI derivation: invertible rules
// first, then OrR / ExR / ImpL / AllL alternatives in a fixed order, with
// iterative deepening and a loop check on each branch.
SearchResult search(const Sequent& goal, const SearchBudget& budget, const SearchOptions& options = {});
std::optional<Derivation> search_cutfree(const Sequent& goal, const SearchBudget& budget);

struct OmegaVerdict {
  bool member = false;
  Sequent goal;  // the defining sequent that was searched
  std::string eigen;
  std::optional<Derivation> certificate;
};

// For q = All X. phi: Delta => phi(Y) with Y fresh. For q = Ex X. phi:
// phi(Y), Delta => Lambda with Y fresh for Delta and Lambda.
OmegaVerdict omega_membership(const Formula& q, const std::vector<Formula>& delta, const SearchBudget& budget,
                              const std::optional<Formula>& lambda = std::nullopt);

struct OmegaCutConfig {
  std::vector<Formula> gamma;
  Formula q;
  Derivation left;
  std::vector<std::pair<std::vector<Formula>, Derivation>> premise_table;
};

// Replaces the cut of (All X R) against (Omega Left) by the premise indexed
// by Gamma, after certifying Gamma as a member through `left`.
Derivation omega_cut_reduce(const OmegaCutConfig& config);

}  // namespace lip
