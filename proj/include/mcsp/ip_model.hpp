#pragma once

#include "mcsp/enumerate.hpp"

#include <string>
#include <vector>

namespace mcsp {

/// Which of the two formulations to build or solve.
enum class ModelKind { cb, cs };

/// Variable provenance: which model object a column stands for.
enum class VarKind {
    block, // CB: x_i, selection of block i
    sub1,  // CS: y1_{t,k}, occurrence of entry t at position k in s1
    sub2,  // CS: y2_{t,k}, occurrence of entry t at position k in s2
};

struct VarMeta {
    VarKind kind = VarKind::block;
    long long block = -1; // canonical block index (VarKind::block)
    int entry = -1;       // catalog entry index (sub1/sub2)
    int pos = 0;          // start position k (sub1/sub2)
};

struct IpVariable {
    std::string name;
    double lower = 0.0;
    double upper = 1.0;
    bool is_integer = true;
    double objective = 0.0;
};

struct IpTerm {
    int var = 0;
    double coeff = 0.0;
};

/// Linear equality: sum of terms == rhs. Both models use equalities only.
struct IpConstraint {
    std::string name;
    double rhs = 0.0;
    std::vector<IpTerm> terms;
};

/// Solver-agnostic minimization program over bounded variables.
struct IpModel {
    std::vector<IpVariable> variables;
    std::vector<IpConstraint> constraints;
    std::vector<VarMeta> meta; // parallel to variables; empty for imported models

    int num_vars() const { return static_cast<int>(variables.size()); }
    int num_constraints() const { return static_cast<int>(constraints.size()); }
};

/// Common blocks model: objective sum x_i, one cover equality per position
/// of each string, all x binary.
struct CbModel {
    IpModel ip;
    BlockSet blocks;
    int n = 0;
};

/// Common substrings model: cover equalities per position plus one linking
/// equality per catalog entry (selected equally often in s1 and s2).
struct CsModel {
    IpModel ip;
    SubstringCatalog catalog;
    int n = 0;
};

CbModel build_cb(const BlockSet& blocks, int n);

CsModel build_cs(const SubstringCatalog& catalog, int n);

} // namespace mcsp
