#pragma once

#include <map>
#include <memory>
#include <optional>

#include "semicrit/clebsch.hpp"
#include "semicrit/sparse_elim.hpp"
#include "semicrit/states.hpp"

namespace semicrit {

// Finite truncation of a charge-graded complex: per-charge cell bases plus
// the differential matrices over Q. A cell (mono, apow) stands for
// a^apow * mono; the slice is the quotient modulo a^N intersected with the
// combined-energy bound, which d never raises.
struct SliceParams {
    int charge_lo = 0;
    int charge_hi = 0;
    int energy_bound = 0;
    int apow_bound = 1;
    SliceFilter filter = SliceFilter::Full;
    bool tilde = false;       // restrict to the tilde submodule basis
    bool with_chi_dstd = false;  // also assemble chi and d_std matrices
    int jobs = 1;
};

struct ChargeBlock {
    std::vector<BasisKey> cells;   // canonical order
    std::map<BasisKey, int> index;
    std::vector<int> level;        // combined energy: mode energy - apow
    std::vector<int> qdeg2;        // doubled bidegree q component

    int size() const { return int(cells.size()); }
};

struct ComplexSlice {
    ModuleId id;
    SliceParams params;
    std::map<int, ChargeBlock> blocks;   // charge -> basis block
    std::map<int, SparseMatQ> d;         // charge n -> n+1; rows over block n+1
    std::map<int, SparseMatQ> chi;
    std::map<int, SparseMatQ> dstd;
    std::shared_ptr<ClebschGordan> cg;   // set for tilde slices

    const ChargeBlock& block(int charge) const { return blocks.at(charge); }
    bool has_charge(int charge) const { return blocks.count(charge) != 0; }

    // expand a vector into cell coordinates of its charge block, truncating
    // a-powers at the bound; throws on cells outside the slice
    std::vector<std::pair<int, Rational>> coords_of(const Vector& v, int charge) const;
};

// Assemble the slice. Verifies closure: every image term must land inside the
// target block.
ComplexSlice build_slice(const ModuleId& id, const SliceParams& params);

// Tilde basis enumeration: cells (word, adapted ground column, apow) with
// apow >= summand index. The monomial ground field gj holds the adapted
// column index.
std::vector<BasisKey> enumerate_tilde_basis(const ModuleId& id, const ClebschGordan& cg,
                                            int charge, int energy_bound, int apow_bound);

// column order grouped by combined energy level; returns the permutation and
// group boundaries (one per level in ascending order) plus the level values
struct LadderOrder {
    std::vector<int> order;      // column permutation
    std::vector<int> group_end;  // prefix sizes per level
    std::vector<int> levels;     // level value per group
};
LadderOrder ladder_by_level(const ChargeBlock& block);
// groups by descending bidegree q (subcomplexes are q >= q0)
LadderOrder ladder_by_qdeg(const ChargeBlock& block);

}  // namespace semicrit
