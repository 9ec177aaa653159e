#pragma once

#include "mcsp/enumerate.hpp"

#include <vector>

namespace mcsp {

/// Largest violation of the CB cover equalities and [0,1] bounds by x
/// (indexed in canonical block order).
double max_cb_violation(const std::vector<double>& x, const BlockSet& blocks, int n);

/// Largest violation of the CS cover equalities, linking equalities and
/// bounds by y (y1 block first, then y2 block, catalog order).
double max_cs_violation(const std::vector<double>& y, const SubstringCatalog& catalog, int n);

/// Maps a CB-feasible point into the CS variable space by summing block
/// mass per (string, start position). Preserves the objective exactly and
/// lands inside the CS polytope.
std::vector<double> project_cb_to_cs(const std::vector<double>& x, const BlockSet& blocks,
                                     const SubstringCatalog& catalog, double tol_feas = 1e-7);

/// Inverse direction: distributes each entry's y1 mass over its y2 mass on
/// the occurrence-pair grid in northwest-corner order, giving a CB-feasible
/// point whose projection reproduces y.
std::vector<double> lift_cs_to_cb(const std::vector<double>& y, const SubstringCatalog& catalog,
                                  const BlockSet& blocks, double tol_feas = 1e-7);

} // namespace mcsp
