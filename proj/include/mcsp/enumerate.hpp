#pragma once

#include "mcsp/instance.hpp"

#include <string>
#include <vector>

namespace mcsp {

/// One common substring with all of its occurrence positions (1-based).
struct CatalogEntry {
    std::string t;
    std::vector<int> q1; // start positions in s1, strictly increasing
    std::vector<int> q2; // start positions in s2, strictly increasing
};

/// All unique strings occurring in both inputs, canonically ordered by
/// (length desc, lexicographic asc); position lists are complete.
struct SubstringCatalog {
    std::vector<CatalogEntry> entries;
    int n = 0;
};

/// A string t occurring at position k1 in s1 and k2 in s2 (1-based).
struct CommonBlock {
    std::string t;
    int k1 = 0;
    int k2 = 0;

    int length() const { return static_cast<int>(t.size()); }
};

/// Cartesian expansion of the catalog: one block per occurrence pair,
/// ordered by (length desc, t lex asc, k1 asc, k2 asc).
struct BlockSet {
    std::vector<CommonBlock> blocks;
    int n = 0;

    long long size() const { return static_cast<long long>(blocks.size()); }
};

struct VariableCounts {
    long long cb = 0; // m = sum |Q1_t| * |Q2_t|
    long long cs = 0; // sum (|Q1_t| + |Q2_t|)
};

SubstringCatalog build_catalog(const Instance& inst);

BlockSet build_blocks(const SubstringCatalog& catalog);

VariableCounts count_variables(const SubstringCatalog& catalog);

/// Flat index maps for the canonical variable orderings. Blocks of catalog
/// entry e occupy the contiguous range starting at block_offset(e); the y1
/// variables of entry e start at y1_offset(e) and all y2 variables follow
/// the complete y1 range.
class CatalogIndex {
  public:
    explicit CatalogIndex(const SubstringCatalog& catalog);

    int entries() const { return static_cast<int>(y1_off_.size()) - 1; }

    // CB space (block index, canonical order)
    long long block_offset(int entry) const { return blk_off_[entry]; }
    long long blocks_total() const { return blk_off_.back(); }
    long long block_index(int entry, int i1, int i2) const;

    // CS space (y1 block first, then y2 block)
    int y1_offset(int entry) const { return y1_off_[entry]; }
    int y2_offset(int entry) const { return y1_total() + y2_off_[entry]; }
    int y1_total() const { return y1_off_.back(); }
    int y2_total() const { return y2_off_.back(); }
    int cs_total() const { return y1_total() + y2_total(); }

  private:
    std::vector<long long> blk_off_;
    std::vector<int> y1_off_;
    std::vector<int> y2_off_;
    std::vector<int> q2_sizes_;
};

} // namespace mcsp
